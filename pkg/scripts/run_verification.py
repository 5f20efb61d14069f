"""Run the kernel-recognition harness over a spec file and write the JSON report.

    python scripts/run_verification.py --spec data/acceptance_specs.json --out report.json
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from leibniz_lattice.verify import CatalogSpec, run_verification

log = logging.getLogger("verify")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", default=str(Path(__file__).parent.parent / "data" / "acceptance_specs.json"))
    parser.add_argument("--out", default="verification_report.json")
    parser.add_argument("--stable", action="store_true", help="omit runtime from the report")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    raw = json.loads(Path(args.spec).read_text())
    specs = [CatalogSpec.from_dict(d) for d in raw["specs"]]
    report = run_verification(specs, log=log.info)
    Path(args.out).write_text(json.dumps(report.to_dict(include_runtime=not args.stable),
                                         indent=2, sort_keys=True) + "\n")
    log.info("algebras %d, pairs %d (%d isomorphic), violations %d, diamond exceptions %d, %.1fs",
             report.algebras_checked, report.pairs_checked, report.isomorphic_pairs,
             len(report.violations), report.diamond_exceptions, report.runtime_seconds)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
