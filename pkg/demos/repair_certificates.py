"""Re-derive the three corrupted printed coefficients from scratch.

Each repair poses an ansatz with unknown coefficients, demands exact
conservation ({., H} = 0 classically, [., H] = 0 quantum), and solves
the resulting linear system over Gaussian rationals.  A negative
control shows the system is inconsistent without the repaired term, so
the certificate is not vacuous.
"""

import json

from superint.cas.repair import REPAIR_TARGETS, derive_repair

for target in REPAIR_TARGETS:
    cert = derive_repair(target)
    print(json.dumps(cert, indent=2))
    print()
