"""Batch front end: simulate, verify, scan, repair.

Five subcommands over the library with file-friendly output: CSV for
time series, JSON for verification reports, orbit tables and repair
certificates.  A run is reproducible byte for byte from its flags (or
a JSON config file; explicit flags win) and the seed.  Exit codes are
0 for success, 1 for a failed verification or an aborted integration,
2 for unusable flags or config.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import ladder, orbits
from .cas import repair as cas_repair
from .cas import suites
from .dynamics import (BarrierCollisionError, DivergenceError, bracket,
                       drift_report, integrate_leapfrog, integrate_rk4)
from .model import (CHARTS, Observable, ParamsHolo, ParamsTTW, PhasePoint,
                    RationalIndex, SingularPointError, convert, make_holo_h,
                    make_holo_l, make_ttw_h, make_ttw_l2)
from .report import VerificationReport

__all__ = ["main"]

_DEFAULT_SEED = 20260815


class _UsageError(Exception):
    """Bad flags or config; maps to exit code 2."""


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_rational(text) -> RationalIndex:
    if isinstance(text, RationalIndex):
        return text
    if isinstance(text, int):
        return RationalIndex(text, 1)
    s = str(text).strip()
    try:
        if "/" in s:
            p_s, q_s = s.split("/", 1)
            return RationalIndex(int(p_s), int(q_s))
        return RationalIndex(int(s), 1)
    except (ValueError, TypeError) as err:
        raise _UsageError("k must be a positive rational 'P/Q' in lowest "
                          "terms, got %r (%s)" % (text, err)) from err


def _parse_param(value):
    """Coupling value: JSON number, or string 're+imi'."""
    if isinstance(value, (int, float)):
        return float(value)
    s = str(value).strip().replace(" ", "")
    try:
        z = complex(s.replace("i", "j"))
    except ValueError as err:
        raise _UsageError("bad parameter %r; use a number or 're+imi'"
                          % (value,)) from err
    return z.real if z.imag == 0 else z


def _parse_start(value):
    if isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        parts = str(value).split(",")
    if len(parts) != 4:
        raise _UsageError("start point needs exactly 4 coordinates")
    try:
        return tuple(float(p) for p in parts)
    except (ValueError, TypeError) as err:
        raise _UsageError("bad start point %r" % (value,)) from err


def _fmt_num(x) -> str:
    """Repr-exact scalar for CSV cells; complex rendered as 're+imi'."""
    xc = complex(x)
    if xc.imag == 0:
        return repr(xc.real)
    sign = "+" if xc.imag >= 0 else "-"
    return "%r%s%ri" % (xc.real, sign, abs(xc.imag))


def _merged(args, defaults: dict) -> dict:
    """Config-file values under explicit flags, over built-in defaults."""
    data = dict(defaults)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise _UsageError("cannot read config %s: %s" % (path, err))
        unknown = sorted(set(loaded) - set(defaults))
        if unknown:
            raise _UsageError("unknown config keys: %s" % ", ".join(unknown))
        data.update(loaded)
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    return data


def _require(data: dict, key: str, flag: str):
    if data.get(key) is None:
        raise _UsageError("missing --%s" % flag)
    return data[key]


def _write_text(path, text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(rep: VerificationReport, out_path) -> int:
    _write_text(out_path, rep.to_json() + "\n")
    for line in rep.summary_lines():
        print(line, file=sys.stderr)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------
# simulate


_SIM_DEFAULTS = {
    "family": "ttw", "k": None, "a": 1.0, "b": 1.0, "c": 1.0,
    "start": "1.0,0.5,0.2,0.8", "chart": "polar",
    "dt": 1e-3, "steps": 1000, "record_every": 1,
    "constants": True, "out": None,
}


def cmd_simulate(args) -> int:
    cfg = _merged(args, _SIM_DEFAULTS)
    k = _parse_rational(_require(cfg, "k", "k"))
    family = cfg["family"]
    a, b, c = (_parse_param(cfg[key]) for key in ("a", "b", "c"))
    start = PhasePoint(cfg["chart"], *_parse_start(cfg["start"]))
    dt, steps = float(cfg["dt"]), int(cfg["steps"])
    if steps < 0 or dt <= 0:
        raise _UsageError("need steps >= 0 and dt > 0")

    if family == "ttw":
        params = ParamsTTW(a, b, c)
        h = make_ttw_h(params, k)
        l2 = make_ttw_l2(params, k)
        run_chart = "cartesian"
        integrate = lambda: integrate_leapfrog(
            h, start, dt, steps, record_every=int(cfg["record_every"]))
    elif family == "holo":
        params = ParamsHolo(a)
        h = make_holo_h(params, k)
        l2 = make_holo_l(params, k)
        run_chart = "logpolar"
        integrate = lambda: integrate_rk4(
            h, start, dt, steps, chart=run_chart,
            record_every=int(cfg["record_every"]))
    else:
        raise _UsageError("family must be 'ttw' or 'holo', got %r"
                          % (family,))

    try:
        traj = integrate()
        rows = []
        labels = None
        for t, state in zip(traj.times, traj.states):
            state = convert(state, run_chart)
            hv, lv = complex(h(state)), complex(l2(state))
            row = [repr(float(t)), run_chart] \
                + [_fmt_num(co) for co in state.coords] \
                + [repr(hv.real), repr(hv.imag), repr(lv.real),
                   repr(lv.imag)]
            if cfg["constants"]:
                pair = ladder.extract_constants(family, state, params, k)
                if labels is None:
                    labels = [ec.label for ec in pair]
                for ec in pair:
                    v = complex(ec.value)
                    row += [repr(v.real), repr(v.imag)]
            rows.append(row)
    except (SingularPointError, BarrierCollisionError,
            DivergenceError) as err:
        print("integration aborted: %s" % err, file=sys.stderr)
        return 1

    header = ["t", "chart", "q1", "q2", "p1", "p2",
              "H_re", "H_im", "L2_re", "L2_im"]
    for lab in labels or []:
        header += ["%s_re" % lab, "%s_im" % lab]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(cfg["out"], buf.getvalue())
    return 0


# ---------------------------------------------------------------------------
# verify-constants


_VC_DEFAULTS = {
    "family": "ttw", "k": None, "a": 1.0, "b": 1.0, "c": 1.0,
    "points": 100, "seed": _DEFAULT_SEED,
    "pair_tol": 1e-10, "bracket_tol": 1e-9, "out": None,
}


def _sample_points(family, k, n, rng):
    kf = k.as_float
    pts = []
    for _ in range(n):
        R = rng.uniform(-0.3, 0.3)
        if family == "ttw":
            theta = rng.uniform(0.4, 2.6) / (2.0 * kf)   # wedge interior
        else:
            theta = rng.uniform(0.1, 2.8) / (2.0 * kf)
        pts.append(PhasePoint.logpolar(R, theta, rng.uniform(0.4, 1.4),
                                       rng.uniform(0.4, 1.4)))
    return pts


def _const_observable(family, params, k, which, label):
    def fn(q1, q2, p1, p2):
        pt = PhasePoint.logpolar(q1, q2, p1, p2)
        return ladder.extract_constants(family, pt, params, k)[which].value
    return Observable(label, "logpolar", fn)


def _corrupted_extraction(family, point, params, k):
    # deliberately mis-normalize with a stray rho1 factor: every parity
    # component lands on the wrong mask and the purity check must trip
    a_pair = ladder.pair_A(family, point, params, k)
    b_pair = ladder.pair_B(family, point, params, k)
    total = ladder.compose_sum(ladder.compose_multiple(a_pair, k.q),
                               ladder.compose_multiple(b_pair, k.p))
    basis = total.c.basis
    norm = (ladder.RadicalValue.radical(basis, 1) ** k.q
            * ladder.RadicalValue.radical(basis, 2) ** k.p
            * ladder.RadicalValue.radical(basis, 0))
    cosh_mask = 0 if (k.p + k.q) % 2 == 0 else 1
    return ladder._extract_one(total.c * norm, cosh_mask)


def cmd_verify_constants(args) -> int:
    cfg = _merged(args, _VC_DEFAULTS)
    k = _parse_rational(_require(cfg, "k", "k"))
    family = cfg["family"]
    if family not in ("ttw", "holo"):
        raise _UsageError("family must be 'ttw' or 'holo', got %r"
                          % (family,))
    a, b, c = (_parse_param(cfg[key]) for key in ("a", "b", "c"))
    params = ParamsTTW(a, b, c) if family == "ttw" else ParamsHolo(a)
    n = int(cfg["points"])
    pair_tol = float(cfg["pair_tol"])
    br_tol = float(cfg["bracket_tol"])
    rng = np.random.default_rng(int(cfg["seed"]))
    pts = _sample_points(family, k, n, rng)

    rep = VerificationReport(
        "verify-constants",
        conventions={
            "family": family, "k": str(k), "points": str(n),
            "seed": str(int(cfg["seed"])),
            "purity tolerance": "1e-10 (extraction engine default)",
        })

    h = make_ttw_h(params, k) if family == "ttw" else make_holo_h(params, k)
    l2 = make_ttw_l2(params, k) if family == "ttw" \
        else make_holo_l(params, k)

    worst_pair = 0.0
    purity_ok = True
    purity_msg = "all %d points pure" % n
    values = {}
    for pt in pts:
        worst_pair = max(worst_pair,
                         ladder.pair_A(family, pt, params, k)
                         .identity_residual(),
                         ladder.pair_B(family, pt, params, k)
                         .identity_residual())
        try:
            if getattr(args, "corrupt_normalizer", False):
                _corrupted_extraction(family, pt, params, k)
            pair = ladder.extract_constants(family, pt, params, k)
        except ladder.PurityViolationError as err:
            purity_ok = False
            purity_msg = str(err)
            break
        for ec in pair:
            values.setdefault(ec.label, []).append(ec.value)
    rep.add("pair identities at %d points" % n,
            "pass" if worst_pair <= pair_tol else "fail",
            "%.3e" % worst_pair)
    rep.add("parity purity", "pass" if purity_ok else "fail", purity_msg)
    if not purity_ok:
        _emit_report(rep, cfg["out"])
        return 1

    labels = sorted(values)
    for which, label in enumerate(labels):
        obs = _const_observable(family, params, k, which, label)
        worst = 0.0
        for pt in pts:
            val = complex(bracket(obs, h, pt))
            scale = max(1.0, abs(complex(obs(pt))))
            worst = max(worst, abs(val) / scale)
        rep.add("{%s, H} residual at %d points" % (label, n),
                "pass" if worst <= br_tol else "fail", "%.3e" % worst)
        indep, witness = ladder.independence_check(obs, l2, pts)
        rep.add("independence witness {%s, L2} != 0" % label,
                "pass" if indep else "fail",
                "witness found" if indep else "bracket below 1e-6 "
                "at all sampled points")
    return _emit_report(rep, cfg["out"])


# ---------------------------------------------------------------------------
# verify-algebra


_SUITES = ("ttw-k2-classical", "ttw-k2-quantum", "holo-k3-classical",
           "holo-k3-quantum", "ttw-general", "models")


def cmd_verify_algebra(args) -> int:
    name = args.suite
    if name != "ttw-general" and args.index:
        raise _UsageError("index pairs only apply to ttw-general")
    if name == "ttw-k2-classical":
        rep = suites.suite_ttw_k2_classical()
    elif name == "ttw-k2-quantum":
        rep = suites.suite_quantum("ttw-k2")
    elif name == "holo-k3-classical":
        rep = suites.suite_holo_k3_classical()
    elif name == "holo-k3-quantum":
        rep = suites.suite_quantum("holo-k3")
    elif name == "models":
        rep = suites.suite_models()
    else:
        if args.index:
            if len(args.index) % 2:
                raise _UsageError("ttw-general takes index pairs: P Q "
                                  "[P Q ...]")
            try:
                ints = [int(v) for v in args.index]
            except ValueError as err:
                raise _UsageError("bad index pair: %s" % err) from err
            pairs = tuple(zip(ints[::2], ints[1::2]))
            for p, q in pairs:
                _parse_rational("%d/%d" % (p, q))
        else:
            pairs = suites.LADDER_PAIRS
        rep = suites.suite_ttw_general(pairs=pairs)
    return _emit_report(rep, args.out)


# ---------------------------------------------------------------------------
# scan-orbits


_SCAN_DEFAULTS = {
    "k_list": None, "a": 1.0, "b": 1.0, "c": 1.0,
    "n_starts": 5, "dt": 1e-3, "horizon": 50.0, "tol": 1e-4,
    "seed": _DEFAULT_SEED, "out": None,
}


def cmd_scan_orbits(args) -> int:
    cfg = _merged(args, _SCAN_DEFAULTS)
    raw = _require(cfg, "k_list", "k-list")
    tokens = [t.strip() for t in raw.split(",")] \
        if isinstance(raw, str) else [str(t) for t in raw]
    tokens = [t for t in tokens if t]
    if not tokens:
        raise _UsageError("empty k list")
    indices = []
    for tok in tokens:
        if "." in tok:
            indices.append((tok, float(tok), False))
        else:
            ki = _parse_rational(tok)
            indices.append((tok, ki, True))
    a, b, c = (_parse_param(cfg[key]) for key in ("a", "b", "c"))
    params = ParamsTTW(a, b, c)

    cells = []
    n_err = 0
    for tok, ki, rational in indices:
        res_list = orbits.scan_k(
            [ki], params, n_starts=int(cfg["n_starts"]),
            dt=float(cfg["dt"]), horizon=float(cfg["horizon"]),
            tol=float(cfg["tol"]), seed=int(cfg["seed"]))
        for start_idx, res in enumerate(res_list):
            dist = res.distance if math.isfinite(res.distance) else None
            cell = {
                "k": tok, "k_float": res.k, "rational": rational,
                "start": start_idx, "closed": res.closed,
                "period": res.period, "distance": dist,
                "error": res.error,
            }
            if res.error is not None:
                n_err += 1
            cells.append(cell)
    table = {"suite": "scan-orbits", "version": "1",
             "params": {"a": str(a), "b": str(b), "c": str(c)},
             "cells": cells}
    _write_text(cfg["out"], json.dumps(table, indent=2) + "\n")
    return 1 if n_err * 2 > len(cells) else 0


# ---------------------------------------------------------------------------
# repair


def cmd_repair(args) -> int:
    out = cas_repair.derive_repair(args.target)
    _write_text(args.out, json.dumps(out, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="superint",
        description="Constants of motion of two superintegrable plane "
                    "Hamiltonian families: simulation, verification, "
                    "orbit scans and coefficient repair.")
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="integrate one orbit to CSV")
    sim.add_argument("--family", choices=("ttw", "holo"))
    sim.add_argument("--k", help="rational index 'P/Q'")
    for name in ("a", "b", "c"):
        sim.add_argument("--%s" % name, help="coupling (number or 're+imi')")
    sim.add_argument("--start", help="q1,q2,p1,p2")
    sim.add_argument("--chart", choices=CHARTS)
    sim.add_argument("--dt", type=float)
    sim.add_argument("--steps", type=int)
    sim.add_argument("--record-every", dest="record_every", type=int)
    sim.add_argument("--no-constants", dest="constants",
                     action="store_false", default=None)
    sim.add_argument("--config", help="JSON config file; flags override")
    sim.add_argument("--out", help="CSV path (default stdout)")
    sim.set_defaults(fn=cmd_simulate)

    vc = sub.add_parser("verify-constants",
                        help="point-sampled ladder checks to JSON")
    vc.add_argument("--family", choices=("ttw", "holo"))
    vc.add_argument("--k", help="rational index 'P/Q'")
    for name in ("a", "b", "c"):
        vc.add_argument("--%s" % name, help="coupling")
    vc.add_argument("--points", type=int)
    vc.add_argument("--seed", type=int)
    vc.add_argument("--pair-tol", dest="pair_tol", type=float)
    vc.add_argument("--bracket-tol", dest="bracket_tol", type=float)
    vc.add_argument("--corrupt-normalizer", action="store_true",
                    help=argparse.SUPPRESS)
    vc.add_argument("--config", help="JSON config file; flags override")
    vc.add_argument("--out", help="JSON path (default stdout)")
    vc.set_defaults(fn=cmd_verify_constants)

    va = sub.add_parser("verify-algebra",
                        help="run one exact verification suite")
    va.add_argument("suite", choices=_SUITES)
    va.add_argument("index", nargs="*",
                    help="for ttw-general: index pairs P Q [P Q ...]")
    va.add_argument("--out", help="JSON path (default stdout)")
    va.set_defaults(fn=cmd_verify_algebra)

    sc = sub.add_parser("scan-orbits",
                        help="orbit-closure scan over a k grid")
    sc.add_argument("--k-list", dest="k_list",
                    help="comma list; 'P/Q' rational, decimals allowed "
                         "here as irrational proxies")
    for name in ("a", "b", "c"):
        sc.add_argument("--%s" % name, help="coupling")
    sc.add_argument("--n-starts", dest="n_starts", type=int)
    sc.add_argument("--dt", type=float)
    sc.add_argument("--horizon", type=float)
    sc.add_argument("--tol", type=float)
    sc.add_argument("--seed", type=int)
    sc.add_argument("--config", help="JSON config file; flags override")
    sc.add_argument("--out", help="JSON path (default stdout)")
    sc.set_defaults(fn=cmd_scan_orbits)

    rp = sub.add_parser("repair",
                        help="re-derive one garbled printed coefficient")
    rp.add_argument("target", choices=cas_repair.REPAIR_TARGETS)
    rp.add_argument("--out", help="JSON path (default stdout)")
    rp.set_defaults(fn=cmd_repair)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except _UsageError as err:
        print("error: %s" % err, file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
