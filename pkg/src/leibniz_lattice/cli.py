"""Command-line front end.

Algebra files are JSON::

    {"field": {"p": 2}, "dim": 2, "labels": ["b", "v"],
     "products": [[0, 1, [0, 1]]]}

Each product entry ``[i, j, vector]`` sets e_i e_j; omitted products are zero.
Exit codes: 0 success, 1 negative verdict, 2 usage or budget error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stdout
from pathlib import Path

from .algebra import (
    LeibnizAlgebra,
    LeibnizIdentityError,
    check_left_leibniz,
    leibniz_kernel,
    nilpotent_generator,
    one_generator_algebra,
    signature,
)
from .exactalg import Polynomial, PrimeField
from .lattice import (
    BudgetExceeded,
    _basis_text,
    build_lattice,
    find_isomorphisms,
    find_pentagon,
    maximal_subalgebras,
    to_dot,
    to_json,
)
from .verify import CatalogSpec, algebra_to_dict, run_verification, verify_onegen_classification


class AlgebraFileError(ValueError):
    pass


class UsageError(Exception):
    pass


def load_algebra(text: str, check: bool = True) -> LeibnizAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    try:
        p = int(data["field"]["p"])
        n = int(data["dim"])
        labels = data.get("labels")
        raw = data.get("products", [])
    except (KeyError, TypeError) as exc:
        raise AlgebraFileError(f"missing or malformed field: {exc}")
    try:
        PrimeField(p)
    except ValueError as exc:
        raise AlgebraFileError(str(exc))
    entries = {}
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise AlgebraFileError(f"product entry {entry!r} is not [i, j, vector]")
        i, j, v = entry
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
            raise AlgebraFileError(f"product index ({i}, {j}) out of range for dim {n}")
        if not (isinstance(v, list) and len(v) == n and all(isinstance(x, int) and 0 <= x < p for x in v)):
            raise AlgebraFileError(f"product ({i}, {j}) needs {n} entries in [0, {p})")
        entries[(i, j)] = v
    L = LeibnizAlgebra.from_entries(p, n, entries, labels)
    if check:
        result = check_left_leibniz(L)
        if not result:
            raise LeibnizIdentityError(result.triple, L.labels)
    return L


def parse_algebra_file(text: str) -> LeibnizAlgebra:
    return load_algebra(text, check=True)


def dump_algebra(L: LeibnizAlgebra) -> str:
    return json.dumps(algebra_to_dict(L), sort_keys=True) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc))


def _vector_text(v, L: LeibnizAlgebra) -> str:
    parts = [L.label(i) if c == 1 else f"{c}{L.label(i)}" for i, c in enumerate(v) if c]
    return "+".join(parts) or "0"


def _table_text(L: LeibnizAlgebra) -> list[str]:
    lines = []
    for i in range(L.dim):
        for j in range(L.dim):
            v = L.products[i][j]
            if any(v):
                lines.append(f"  {L.label(i)} * {L.label(j)} = {_vector_text(v, L)}")
    return lines or ["  (all products zero)"]


def _parse_poly(args) -> Polynomial:
    try:
        PrimeField(args.p)
        return Polynomial.parse(args.poly, args.p)
    except ValueError as exc:
        raise UsageError(str(exc))


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    L = load_algebra(_read(args.file), check=False)
    result = check_left_leibniz(L)
    if result:
        print(f"left Leibniz identity holds (p={L.p}, dim={L.dim})")
        return 0
    names = tuple(L.label(i) for i in result.triple)
    print(f"left Leibniz identity fails at triple ({', '.join(names)})")
    return 1


def cmd_kernel(args) -> int:
    L = parse_algebra_file(_read(args.file))
    K = leibniz_kernel(L)
    print(f"Leib(L): dim {K.dim}")
    for v in K.basis:
        print(f"  {_vector_text(v, L)}")
    return 0


def cmd_lattice(args) -> int:
    L = parse_algebra_file(_read(args.file))
    lat = build_lattice(L)
    print(f"{lat.size} subalgebras, {len(lat.covers)} covers, length {lat.length}")
    for i, S in enumerate(lat.nodes):
        mark = "  <- Leib(L)" if i == lat.kernel_node else ""
        print(f"  [{i}] dim {S.dim}  {_basis_text(S, L)}{mark}")
    print("covers: " + " ".join(f"{a}<{b}" for a, b in sorted(lat.covers)))
    print("maximal subalgebras: " + " ".join(f"[{i}]" for i in maximal_subalgebras(lat)))
    pent = find_pentagon(lat)
    if pent is None:
        print("modular: yes")
    else:
        print("modular: no (pentagon on nodes " + " ".join(f"[{i}]" for i in pent.nodes()) + ")")
    if args.dot:
        Path(args.dot).write_text(to_dot(lat))
    if args.json:
        Path(args.json).write_text(json.dumps(to_json(lat), indent=2, sort_keys=True) + "\n")
    return 0


def cmd_signature(args) -> int:
    f = _parse_poly(args)
    try:
        D = one_generator_algebra(args.p, f)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(signature(D))
    return 0


def cmd_onegen(args) -> int:
    f = _parse_poly(args)
    try:
        D = one_generator_algebra(args.p, f)
    except ValueError as exc:
        raise UsageError(str(exc))
    L = D.algebra
    print(f"one-generator algebra over GF({args.p}) for f = {D.f}, dim {L.dim}")
    print("\n".join(_table_text(L)))
    print(f"signature: {signature(D)}")
    print(f"nilpotent generator b = {_vector_text(nilpotent_generator(D), L)}")
    if args.verify:
        ok, rep = verify_onegen_classification(D)
        print(f"subalgebras not in V: {len(rep.off_V_enumerated)} enumerated, "
              f"{len(rep.off_V_predicted)} predicted")
        print(f"classification: {'ok' if ok else 'FAILED'}")
        return 0 if ok else 1
    return 0


def cmd_iso(args) -> int:
    L1 = parse_algebra_file(_read(args.file1))
    L2 = parse_algebra_file(_read(args.file2))
    lat1, lat2 = build_lattice(L1), build_lattice(L2)
    maps = find_isomorphisms(lat1, lat2, limit=1)
    if not maps:
        print("not isomorphic")
        return 1
    m = maps[0]
    print("isomorphic")
    for i, S in enumerate(lat1.nodes):
        print(f"  {_basis_text(S, L1)} -> {_basis_text(lat2.nodes[m(i)], L2)}")
    k1 = lat1.kernel_node
    print(f"Leib maps to Leib: {'yes' if m(k1) == lat2.kernel_node else 'no'}")
    return 0


def cmd_verify(args) -> int:
    try:
        data = json.loads(_read(args.spec))
        raw = data["specs"] if isinstance(data, dict) else data
        specs = [CatalogSpec.from_dict(d) for d in raw]
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad spec file: {exc}")
    report = run_verification(specs)
    text = json.dumps(report.to_dict(include_runtime=not args.stable), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"algebras: {report.algebras_checked}, violations: {len(report.violations)}, "
              f"diamond exceptions: {report.diamond_exceptions}")
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leibniz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the left Leibniz identity")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kernel", help="basis of the Leibniz kernel")
    p.add_argument("file")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("lattice", help="subalgebra lattice")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_lattice)

    for name, func in (("signature", cmd_signature), ("onegen", cmd_onegen)):
        p = sub.add_parser(name)
        p.add_argument("--poly", required=True, help='monic polynomial such as "x^2+1"')
        p.add_argument("--p", type=int, required=True)
        if name == "onegen":
            p.add_argument("--verify", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("iso", help="lattice isomorphism between two algebras")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify", help="run the verification harness")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--stable", action="store_true", help="omit runtime for byte-stable output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, AlgebraFileError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LeibnizIdentityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run(argv: list[str]) -> tuple[int, str]:
    """Run a command and capture its standard output."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
