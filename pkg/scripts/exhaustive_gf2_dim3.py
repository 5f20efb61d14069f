"""Full sweep: every left Leibniz algebra structure on GF(2)^3.

Not part of the default test run. Enumerates all 806 tables with pruning, then
checks kernel recognition for each lattice and for every isomorphic pair.
"""

import json
import sys
import time

from leibniz_lattice.verify import EXHAUSTIVE, CatalogSpec, run_verification


def main() -> int:
    t = time.perf_counter()
    report = run_verification([CatalogSpec(2, 3, EXHAUSTIVE, allow_large=True)], log=print)
    summary = {k: v for k, v in report.to_dict().items() if k != "violations"}
    summary["violations"] = len(report.violations)
    print(json.dumps(summary, indent=2, sort_keys=True))
    print(f"done in {time.perf_counter() - t:.1f}s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
