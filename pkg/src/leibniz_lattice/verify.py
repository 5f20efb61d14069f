"""Empirical harnesses for the one-generator classification and kernel recognition.

Catalogs of small algebras are generated from a ``CatalogSpec``; every algebra of
dimension >= 3 has its lattice automorphisms checked against the Leibniz kernel,
and algebras with isomorphic lattices are compared pairwise.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import (
    LeibnizAlgebra,
    OneGeneratorData,
    Signature,
    analyze_one_generator,
    check_left_leibniz,
    classify_subalgebras_onegen,
    diamond_witness,
    generated_subalgebra,
    nilpotent_generator,
    one_generator_algebra,
    signature,
)
from .exactalg import Subspace, monic_polynomials
from .lattice import (
    BudgetExceeded,
    LatticeMap,
    SubalgebraLattice,
    build_lattice,
    find_isomorphisms,
    is_chain_product,
    refine_colors,
)

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"
ONE_GENERATOR = "one_generator"

ISOMORPHISM_CAP = 10**4


@dataclass(frozen=True)
class CatalogSpec:
    p: int
    dim: int = 0
    mode: str = EXHAUSTIVE
    count: int | None = None
    seed: int | None = None
    max_deg: int | None = None
    allow_large: bool = False

    def __post_init__(self):
        if self.mode == EXHAUSTIVE:
            if self.dim > 2 and self.p ** (self.dim**3) > 2**28:
                raise ValueError(f"exhaustive catalog over GF({self.p}) dim {self.dim} is too large")
            if self.dim > 2 and not self.allow_large:
                raise ValueError("exhaustive catalogs above dimension 2 need allow_large=True")
        elif self.mode == SAMPLED:
            if self.count is None or self.seed is None:
                raise ValueError("sampled catalogs need an explicit count and seed")
        elif self.mode == ONE_GENERATOR:
            if self.max_deg is None or self.max_deg < 1:
                raise ValueError("one-generator catalogs need max_deg >= 1")
        else:
            raise ValueError(f"unknown catalog mode {self.mode!r}")

    @classmethod
    def from_dict(cls, d: dict) -> CatalogSpec:
        return cls(p=int(d["p"]), dim=int(d.get("dim", 0)), mode=d.get("mode", EXHAUSTIVE).lower(),
                   count=d.get("count"), seed=d.get("seed"), max_deg=d.get("max_deg"),
                   allow_large=bool(d.get("allow_large", False)))

    def to_dict(self) -> dict:
        d = {"p": self.p, "mode": self.mode}
        if self.mode != ONE_GENERATOR:
            d["dim"] = self.dim
        for k in ("count", "seed", "max_deg"):
            if getattr(self, k) is not None:
                d[k] = getattr(self, k)
        return d

    def label(self) -> str:
        if self.mode == ONE_GENERATOR:
            return f"one_generator(p={self.p}, max_deg={self.max_deg})"
        if self.mode == SAMPLED:
            return f"sampled(p={self.p}, n={self.dim}, {self.count}, seed={self.seed})"
        return f"exhaustive(p={self.p}, n={self.dim})"


# ---------------------------------------------------------------------------
# catalog generation


class _TableSearch:
    """Cell-by-cell construction of structure tables with early identity pruning.

    Cells (i, j) are filled in row-major order; after each assignment every basis
    triple whose three terms are already determined is checked.
    """

    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.cells = list(itertools.product(range(n), repeat=2))
        self.values = list(itertools.product(range(p), repeat=n))
        self.table: list[list[tuple | None]] = [[None] * n for _ in range(n)]

    def _left(self, i, w):
        """e_i w, or None if a needed cell is unfilled."""
        acc = [0] * self.n
        row = self.table[i]
        for l, c in enumerate(w):
            if c:
                v = row[l]
                if v is None:
                    return None
                for k, t in enumerate(v):
                    acc[k] += c * t
        return acc

    def _right(self, u, k):
        """u e_k, or None if a needed cell is unfilled."""
        acc = [0] * self.n
        for l, c in enumerate(u):
            if c:
                v = self.table[l][k]
                if v is None:
                    return None
                for m, t in enumerate(v):
                    acc[m] += c * t
        return acc

    def triple_state(self, i, j, k) -> bool | None:
        """True/False once the identity on (i, j, k) is decidable, else None."""
        T = self.table
        jk, ij, ik = T[j][k], T[i][j], T[i][k]
        if jk is None or ij is None or ik is None:
            return None
        lhs = self._left(i, jk)
        if lhs is None:
            return None
        r1 = self._right(ij, k)
        if r1 is None:
            return None
        r2 = self._left(j, ik)
        if r2 is None:
            return None
        p = self.p
        return all((a - b - c) % p == 0 for a, b, c in zip(lhs, r1, r2))

    def consistent(self, open_triples: set) -> tuple[bool, set]:
        still_open = set()
        for t in open_triples:
            s = self.triple_state(*t)
            if s is None:
                still_open.add(t)
            elif not s:
                return False, open_triples
        return True, still_open

    def all_tables(self) -> Iterator[LeibnizAlgebra]:
        all_triples = set(itertools.product(range(self.n), repeat=3))
        yield from self._dfs(0, all_triples, None)

    def _dfs(self, depth, open_triples, rng):
        if depth == len(self.cells):
            yield LeibnizAlgebra(self.p, self.n, tuple(tuple(r) for r in self.table))
            return
        i, j = self.cells[depth]
        values = self.values
        if rng is not None:
            values = list(values)
            rng.shuffle(values)
        for v in values:
            self.table[i][j] = v
            ok, remaining = self.consistent(open_triples)
            if ok:
                yield from self._dfs(depth + 1, remaining, rng)
        self.table[i][j] = None

    def random_table(self, rng: random.Random, max_restarts: int = 10**5) -> LeibnizAlgebra:
        """Fill cells in order with a random value consistent so far; restart at dead ends."""
        all_triples = set(itertools.product(range(self.n), repeat=3))
        try:
            for _ in range(max_restarts):
                self.table = [[None] * self.n for _ in range(self.n)]
                open_triples = all_triples
                for i, j in self.cells:
                    for v in rng.sample(self.values, len(self.values)):
                        self.table[i][j] = v
                        ok, remaining = self.consistent(open_triples)
                        if ok:
                            open_triples = remaining
                            break
                    else:
                        break
                else:
                    return LeibnizAlgebra(self.p, self.n, tuple(tuple(r) for r in self.table))
            raise RuntimeError("sampler found no consistent table")
        finally:
            self.table = [[None] * self.n for _ in range(self.n)]


def naive_catalog(p: int, n: int) -> list[LeibnizAlgebra]:
    """Every table filtered after the fact; only for tiny p, n."""
    out = []
    vals = list(itertools.product(range(p), repeat=n))
    for choice in itertools.product(vals, repeat=n * n):
        table = tuple(tuple(choice[i * n:(i + 1) * n]) for i in range(n))
        L = LeibnizAlgebra(p, n, table)
        if check_left_leibniz(L):
            out.append(L)
    return out


def one_generator_catalog(p: int, max_deg: int) -> list[OneGeneratorData]:
    return [one_generator_algebra(p, f)
            for d in range(1, max_deg + 1) for f in monic_polynomials(p, d)]


def generate_catalog(spec: CatalogSpec) -> list[LeibnizAlgebra]:
    if spec.mode == ONE_GENERATOR:
        algebras = [D.algebra for D in one_generator_catalog(spec.p, spec.max_deg)]
    elif spec.mode == EXHAUSTIVE:
        algebras = list(_TableSearch(spec.p, spec.dim).all_tables())
    else:
        rng = random.Random(spec.seed)
        search = _TableSearch(spec.p, spec.dim)
        seen: dict[bytes, LeibnizAlgebra] = {}
        attempts = 0
        while len(seen) < spec.count and attempts < 50 * spec.count:
            L = search.random_table(rng)
            seen.setdefault(L.to_bytes(), L)
            attempts += 1
        algebras = list(seen.values())
    unique: dict[bytes, LeibnizAlgebra] = {}
    for L in algebras:
        unique.setdefault(L.to_bytes(), L)
    return list(unique.values())


# ---------------------------------------------------------------------------
# individual checks


@dataclass
class ClassificationReport:
    signature: Signature
    off_V_enumerated: list[Subspace]
    off_V_predicted: list[Subspace]
    sets_agree: bool
    chain_product: bool
    all_contain_B: bool

    @property
    def ok(self) -> bool:
        return self.sets_agree and self.chain_product and self.all_contain_B


def verify_onegen_classification(D: OneGeneratorData,
                                 lat: SubalgebraLattice | None = None) -> tuple[bool, ClassificationReport]:
    L = D.algebra
    lat = lat or build_lattice(L)
    off_V = [S for S in lat.nodes if not S.issubspace(D.V)]
    predicted = classify_subalgebras_onegen(D)
    B = generated_subalgebra(L, [nilpotent_generator(D)])
    sig = signature(D)
    chain_ok = is_chain_product(lat.interval(lat.top, lat.node_of(B)), sig.chain_lengths)
    report = ClassificationReport(
        signature=sig,
        off_V_enumerated=off_V,
        off_V_predicted=predicted,
        sets_agree=set(off_V) == set(predicted),
        chain_product=chain_ok,
        all_contain_B=all(B.issubspace(S) for S in off_V),
    )
    return report.ok, report


@dataclass
class KernelReport:
    kernel_node: int | None
    candidate_images: list[int]
    moving_maps: list[LatticeMap]
    searches: int
    automorphisms_sampled: int = 0
    cap_reached: bool = False

    @property
    def ok(self) -> bool:
        return not self.moving_maps


def _kernel_targets(lat1, lat2, fixed_kernel: int | None = None) -> list[int] | None:
    """Nodes of lat2 that could be the image of lat1's kernel under some isomorphism."""
    colors = refine_colors(lat1, lat2)
    if colors is None:
        return None
    c1, c2 = colors
    return [v for v in range(lat2.size) if c2[v] == c1[lat1.kernel_node]]


def kernel_images(lat1: SubalgebraLattice, lat2: SubalgebraLattice) -> tuple[list[LatticeMap], int]:
    """One witness isomorphism for every node the kernel of lat1 can be sent to.

    Exhaustive over targets, so the answer does not depend on enumerating the
    (possibly huge) set of all isomorphisms.
    """
    targets = _kernel_targets(lat1, lat2)
    if targets is None:
        return [], 0
    witnesses = []
    for t in targets:
        found = find_isomorphisms(lat1, lat2, limit=1, fixed={lat1.kernel_node: t})
        witnesses.extend(found)
    return witnesses, len(targets)


def verify_kernel_fixed(L: LeibnizAlgebra, lat: SubalgebraLattice | None = None,
                        sample: int = 0) -> tuple[bool, KernelReport]:
    """Every lattice automorphism fixes the Leibniz kernel node.

    The verdict comes from a targeted search per candidate image of the kernel.
    ``sample`` additionally enumerates up to that many automorphisms (capped at
    ISOMORPHISM_CAP) and records whether the cap was hit.
    """
    lat = lat or build_lattice(L)
    sample = min(sample, ISOMORPHISM_CAP)
    witnesses, searches = kernel_images(lat, lat)
    moving = [m for m in witnesses if m(lat.kernel_node) != lat.kernel_node]
    report = KernelReport(lat.kernel_node, sorted(m(lat.kernel_node) for m in witnesses),
                          moving, searches)
    if sample:
        autos = find_isomorphisms(lat, lat, limit=sample)
        report.automorphisms_sampled = len(autos)
        report.cap_reached = autos.limit_reached
        report.moving_maps += [m for m in autos
                               if m(lat.kernel_node) != lat.kernel_node and m not in moving]
    return report.ok, report


@dataclass
class PairReport:
    isomorphic: bool
    moving_maps: list[LatticeMap]
    searches: int
    signatures: tuple[Signature, Signature] | None = None
    signature_mismatch: bool = False
    second_is_one_generator: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.moving_maps and not self.signature_mismatch


def find_one_generator(L: LeibnizAlgebra) -> tuple[int, ...] | None:
    """Some x with alg<x> = L, by exhaustion over GF(p)^n."""
    for x in itertools.product(range(L.p), repeat=L.dim):
        if any(x) and generated_subalgebra(L, [x]).dim == L.dim:
            return x
    return None


def verify_kernel_pair(L1: LeibnizAlgebra, L2: LeibnizAlgebra,
                       lat1: SubalgebraLattice | None = None,
                       lat2: SubalgebraLattice | None = None,
                       onegen1: OneGeneratorData | None = None,
                       onegen2: OneGeneratorData | None = None) -> tuple[bool, PairReport]:
    """Every lattice isomorphism L1 -> L2 sends Leib(L1) to Leib(L2)."""
    lat1 = lat1 or build_lattice(L1)
    lat2 = lat2 or build_lattice(L2)
    if not find_isomorphisms(lat1, lat2, limit=1):
        return True, PairReport(False, [], 1)
    witnesses, searches = kernel_images(lat1, lat2)
    moving = [m for m in witnesses if m(lat1.kernel_node) != lat2.kernel_node]
    report = PairReport(True, moving, searches + 1)
    if (onegen1 is None) != (onegen2 is None):
        # one side is known to be one-generator; its partner must be one too
        other = L2 if onegen2 is None else L1
        if other.dim <= 4 and other.p <= 3:
            x = find_one_generator(other)
            report.second_is_one_generator = x is not None
            if x is None:
                report.signature_mismatch = True
            elif onegen2 is None:
                onegen2 = analyze_one_generator(L2, x)
            else:
                onegen1 = analyze_one_generator(L1, x)
    if onegen1 is not None and onegen2 is not None:
        s1, s2 = signature(onegen1), signature(onegen2)
        report.signatures = (s1, s2)
        report.signature_mismatch = s1 != s2
    return report.ok, report


def diamond_algebra(p: int) -> LeibnizAlgebra:
    """b v = v, all other products zero, on the basis (b, v)."""
    return LeibnizAlgebra.from_entries(p, 2, {(0, 1): (0, 1)}, labels=("b", "v"))


def is_diamond_lattice(lat) -> bool:
    return lat.size == 4 and is_chain_product(lat, (1, 1))


def kernel_moves(L: LeibnizAlgebra, lat: SubalgebraLattice | None = None) -> bool:
    lat = lat or build_lattice(L)
    witnesses, _ = kernel_images(lat, lat)
    return any(m(lat.kernel_node) != lat.kernel_node for m in witnesses)


def verify_diamond_exception(L: LeibnizAlgebra | None = None) -> bool | None:
    """True iff the diamond algebra's lattice has an automorphism moving its kernel.

    Returns None when the given algebra is not a diamond algebra.
    """
    L = diamond_algebra(2) if L is None else L
    if L.dim != 2 or diamond_witness(L) is None:
        return None
    return kernel_moves(L)


# ---------------------------------------------------------------------------
# aggregate run


@dataclass
class Violation:
    kind: str
    algebras: list[LeibnizAlgebra]
    mapping: LatticeMap | None
    expected_node: int | None
    mapped_node: int | None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "algebras": [algebra_to_dict(L) for L in self.algebras],
            "mapping": list(self.mapping.mapping) if self.mapping else None,
            "expected_node": self.expected_node,
            "mapped_node": self.mapped_node,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    specs: list[CatalogSpec] = field(default_factory=list)
    algebras_checked: int = 0
    isomorphisms_checked: int = 0
    classifications_checked: int = 0
    classification_failures: list[str] = field(default_factory=list)
    pairs_checked: int = 0
    isomorphic_pairs: int = 0
    violations: list[Violation] = field(default_factory=list)
    diamond_exceptions: int = 0
    diamond_algebra_exception: bool | None = None
    catalog_sizes: dict[str, int] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return (not self.violations and not self.classification_failures
                and self.diamond_algebra_exception is not False)

    def to_dict(self, include_runtime: bool = True) -> dict:
        d = {
            "specs": [s.to_dict() for s in self.specs],
            "seeds": [s.seed for s in self.specs if s.seed is not None],
            "catalog_sizes": dict(sorted(self.catalog_sizes.items())),
            "algebras_checked": self.algebras_checked,
            "isomorphisms_checked": self.isomorphisms_checked,
            "classifications_checked": self.classifications_checked,
            "classification_failures": sorted(self.classification_failures),
            "pairs_checked": self.pairs_checked,
            "isomorphic_pairs": self.isomorphic_pairs,
            "violations": [v.to_dict() for v in self.violations],
            "diamond_exceptions": self.diamond_exceptions,
            "diamond_algebra_exception": self.diamond_algebra_exception,
            "errors": sorted(self.errors),
        }
        if include_runtime:
            d["runtime_seconds"] = round(self.runtime_seconds, 3)
        return d


def algebra_to_dict(L: LeibnizAlgebra) -> dict:
    products = [[i, j, list(L.products[i][j])]
                for i in range(L.dim) for j in range(L.dim) if any(L.products[i][j])]
    d = {"field": {"p": L.p}, "dim": L.dim, "products": products}
    if L.labels:
        d["labels"] = list(L.labels)
    return d


@dataclass
class _Item:
    algebra: LeibnizAlgebra
    lattice: SubalgebraLattice
    onegen: OneGeneratorData | None


def run_verification(specs: Sequence[CatalogSpec], log=None) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(specs=list(specs))
    items: dict[bytes, _Item] = {}

    for spec in specs:
        try:
            if spec.mode == ONE_GENERATOR:
                entries = [(D.algebra, D) for D in one_generator_catalog(spec.p, spec.max_deg)]
            else:
                entries = [(L, None) for L in generate_catalog(spec)]
        except (BudgetExceeded, ValueError) as exc:
            report.errors.append(f"{spec.label()}: {exc}")
            continue
        report.catalog_sizes[spec.label()] = len(entries)
        if log:
            log(f"{spec.label()}: {len(entries)} algebras")
        for L, D in entries:
            key = L.to_bytes()
            if key in items:
                if D is not None and items[key].onegen is None:
                    items[key].onegen = D
                continue
            try:
                lat = build_lattice(L, check=False)
            except BudgetExceeded as exc:
                report.errors.append(f"{spec.label()}: {exc}")
                continue
            items[key] = _Item(L, lat, D)

    for key in sorted(items):
        item = items[key]
        L, lat = item.algebra, item.lattice
        report.algebras_checked += 1
        if item.onegen is not None:
            ok, cls = verify_onegen_classification(item.onegen, lat)
            report.classifications_checked += 1
            if not ok:
                report.classification_failures.append(
                    f"p={L.p} f={item.onegen.f}: sets_agree={cls.sets_agree} "
                    f"chain_product={cls.chain_product} contains_B={cls.all_contain_B}")
        if L.dim >= 3:
            ok, kr = verify_kernel_fixed(L, lat)
            report.isomorphisms_checked += kr.searches
            for m in kr.moving_maps:
                report.violations.append(Violation("automorphism", [L], m, lat.kernel_node,
                                                   m(lat.kernel_node)))
        elif L.dim == 2 and kernel_moves(L, lat):
            report.diamond_exceptions += 1
            if not is_diamond_lattice(lat):
                report.violations.append(Violation(
                    "non-diamond exception", [L], None, lat.kernel_node, None,
                    "kernel-moving automorphism on a dim-2 lattice that is not the diamond"))

    buckets: dict[tuple, list[bytes]] = {}
    for key in sorted(items):
        item = items[key]
        if item.algebra.dim >= 3:
            buckets.setdefault((item.algebra.p, item.lattice.fingerprint()), []).append(key)
    for keys in buckets.values():
        for k1, k2 in itertools.combinations(keys, 2):
            a, b = items[k1], items[k2]
            ok, pr = verify_kernel_pair(a.algebra, b.algebra, a.lattice, b.lattice,
                                        a.onegen, b.onegen)
            report.pairs_checked += 1
            report.isomorphisms_checked += pr.searches
            report.isomorphic_pairs += pr.isomorphic
            for m in pr.moving_maps:
                report.violations.append(Violation("pair", [a.algebra, b.algebra], m,
                                                   b.lattice.kernel_node, m(a.lattice.kernel_node)))
            if pr.signature_mismatch:
                report.violations.append(Violation(
                    "signature", [a.algebra, b.algebra], None, None, None,
                    f"signatures {pr.signatures} one_generator={pr.second_is_one_generator}"))

    report.diamond_algebra_exception = verify_diamond_exception()
    report.runtime_seconds = time.perf_counter() - start
    return report
