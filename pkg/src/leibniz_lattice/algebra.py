"""Left Leibniz algebras given by structure constants, and one-generator theory.

An algebra of dimension n over GF(p) is stored as the n x n table of basis
products ``products[i][j] = e_i e_j``. The left Leibniz identity is

    x(yz) = (xy)z + y(xz).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exactalg import (
    DimensionMismatch,
    Matrix,
    Polynomial,
    PrimeField,
    PrimePowerFactorization,
    Subspace,
    Vector,
    canonicalize,
    companion_matrix,
    contains,
    factor,
    kernel,
    minimal_polynomial,
    solve_combination,
    subspace_sum,
    unit_vector,
    vec_add,
    vec_scale,
    zero_vector,
)


class LeibnizIdentityError(ValueError):
    def __init__(self, triple, labels=None):
        self.triple = triple
        names = [str(labels[i]) if labels else f"e{i}" for i in triple]
        super().__init__(f"left Leibniz identity fails at basis triple ({', '.join(names)})")


@dataclass(frozen=True)
class LeibnizAlgebra:
    p: int
    dim: int
    products: tuple[tuple[Vector, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        PrimeField(self.p)
        if len(self.products) != self.dim or any(len(r) != self.dim for r in self.products):
            raise DimensionMismatch("products table must be dim x dim")
        for row in self.products:
            for v in row:
                if len(v) != self.dim or any(not 0 <= x < self.p for x in v):
                    raise ValueError(f"bad product vector {v}")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ValueError("one label per basis vector")

    @classmethod
    def from_entries(cls, p: int, dim: int, entries: Mapping[tuple[int, int], Sequence[int]],
                     labels: Sequence[str] | None = None) -> LeibnizAlgebra:
        """Build from a sparse map (i, j) -> e_i e_j; omitted products are zero."""
        table = [[zero_vector(dim)] * dim for _ in range(dim)]
        for (i, j), v in entries.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"product index ({i}, {j}) out of range")
            if len(v) != dim:
                raise DimensionMismatch(f"product ({i}, {j}) has length {len(v)}")
            table[i][j] = tuple(x % p for x in v)
        return cls(p, dim, tuple(tuple(r) for r in table),
                   tuple(labels) if labels is not None else None)

    @classmethod
    def abelian(cls, p: int, dim: int) -> LeibnizAlgebra:
        return cls.from_entries(p, dim, {})

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def to_bytes(self) -> bytes:
        return bytes([self.p % 256, self.p // 256, self.dim]) + b"".join(
            x.to_bytes(2, "big") for row in self.products for v in row for x in v)

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return multiply(self, x, y)

    def left_multiplication(self, x: Sequence[int]) -> Matrix:
        """Matrix of y -> x y in the standard basis."""
        n = self.dim
        cols = [self.multiply(x, unit_vector(n, j)) for j in range(n)]
        return Matrix.from_columns(cols, self.p, n)

    def power(self, x: Sequence[int], k: int) -> Vector:
        """Left-normed power x^k = x (x (... x))."""
        if k < 1:
            raise ValueError("powers start at 1")
        out = tuple(x)
        for _ in range(k - 1):
            out = self.multiply(x, out)
        return out

    def is_lie(self) -> bool:
        return leibniz_kernel(self).dim == 0


class IdentityCheck(NamedTuple):
    holds: bool
    triple: tuple[int, int, int] | None

    def __bool__(self):
        return self.holds


def multiply(L: LeibnizAlgebra, x: Sequence[int], y: Sequence[int]) -> Vector:
    n, p = L.dim, L.p
    if len(x) != n or len(y) != n:
        raise DimensionMismatch("operands must have length dim")
    acc = [0] * n
    for i, xi in enumerate(x):
        if not xi % p:
            continue
        row = L.products[i]
        for j, yj in enumerate(y):
            c = xi * yj % p
            if c:
                for k, t in enumerate(row[j]):
                    if t:
                        acc[k] += c * t
    return tuple(a % p for a in acc)


def _identity_defect(L: LeibnizAlgebra, i: int, j: int, k: int) -> Vector:
    e = L.basis_vector
    lhs = multiply(L, e(i), L.products[j][k])
    rhs = vec_add(multiply(L, L.products[i][j], e(k)), multiply(L, e(j), L.products[i][k]), L.p)
    return tuple((a - b) % L.p for a, b in zip(lhs, rhs))


def check_left_leibniz(L: LeibnizAlgebra) -> IdentityCheck:
    """Verify e_i(e_j e_k) = (e_i e_j)e_k + e_j(e_i e_k) on all basis triples."""
    for i, j, k in itertools.product(range(L.dim), repeat=3):
        if any(_identity_defect(L, i, j, k)):
            return IdentityCheck(False, (i, j, k))
    return IdentityCheck(True, None)


def require_leibniz(L: LeibnizAlgebra) -> LeibnizAlgebra:
    check = check_left_leibniz(L)
    if not check:
        raise LeibnizIdentityError(check.triple, L.labels)
    return L


def leibniz_kernel(L: LeibnizAlgebra) -> Subspace:
    # Polarization: (x+y)^2 = x^2 + y^2 + (xy + yx), so these finitely many
    # vectors span every square, also in characteristic 2.
    gens = [L.products[i][i] for i in range(L.dim)]
    gens += [vec_add(L.products[i][j], L.products[j][i], L.p)
             for i in range(L.dim) for j in range(i + 1, L.dim)]
    return canonicalize(gens, L.p, L.dim)


def is_closed(L: LeibnizAlgebra, S: Subspace) -> bool:
    return all(contains(S, multiply(L, u, w)) for u in S.basis for w in S.basis)


def generated_subalgebra(L: LeibnizAlgebra, vectors: Iterable[Sequence[int]]) -> Subspace:
    S = canonicalize(list(vectors), L.p, L.dim)
    while True:
        products = [multiply(L, u, w) for u in S.basis for w in S.basis]
        T = canonicalize(S.basis + tuple(products), L.p, L.dim)
        if T == S:
            return S
        S = T


def quotient(L: LeibnizAlgebra, ideal: Subspace) -> LeibnizAlgebra:
    """Structure table of L / ideal on the standard basis vectors at non-pivot columns."""
    if ideal.ambient_dim != L.dim:
        raise DimensionMismatch("ideal lives in a different space")
    pivots = set(ideal.pivots)
    keep = [i for i in range(L.dim) if i not in pivots]
    table = []
    for i in keep:
        row = []
        for j in keep:
            r = ideal.reduce(L.products[i][j])
            row.append(tuple(r[c] for c in keep))
        table.append(tuple(row))
    return LeibnizAlgebra(L.p, len(keep), tuple(table))


# ---------------------------------------------------------------------------
# one-generator algebras


@dataclass(frozen=True)
class Signature:
    r: int
    chain_lengths: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.chain_lengths) != len(self.degrees):
            raise ValueError("chain lengths and degrees must pair up")
        if any(x < 1 for x in self.chain_lengths + self.degrees) or self.r < 0:
            raise ValueError("signature entries must be positive")

    @property
    def k(self) -> int:
        return len(self.chain_lengths)

    def __str__(self):
        return "[{}|{}|{}]".format(self.r, ",".join(map(str, self.chain_lengths)),
                                   ",".join(map(str, self.degrees)))


@dataclass(frozen=True)
class OneGeneratorData:
    """The algebra alg<a> together with the action theta of a on V = <a^2, a^3, ...>.

    ``krylov`` is the basis a^2, a^3, ..., a^(m+1) of V in ambient coordinates;
    ``theta`` is left multiplication by a on V written in that basis.
    """

    algebra: LeibnizAlgebra
    generator: Vector
    V: Subspace
    krylov: tuple[Vector, ...]
    theta: Matrix
    f: Polynomial
    r: int
    g: Polynomial
    V1: Subspace
    factorization: PrimePowerFactorization

    def act(self, q: Polynomial, v: Sequence[int]) -> Vector:
        """q(theta) applied to an ambient vector of V."""
        L = self.algebra
        out = zero_vector(L.dim)
        term = tuple(v)
        for c in q.coeffs:
            if c:
                out = vec_add(out, vec_scale(c, term, L.p), L.p)
            term = multiply(L, self.generator, term)
        return out

    def act_on_space(self, q: Polynomial) -> Subspace:
        """q(theta) V."""
        return canonicalize([self.act(q, v) for v in self.krylov], self.algebra.p, self.algebra.dim)


def analyze_one_generator(L: LeibnizAlgebra, a: Sequence[int]) -> OneGeneratorData:
    """Extract V, theta, f = x^r g and the factorization of g for L = alg<a>."""
    p = L.p
    a = tuple(x % p for x in a)
    if generated_subalgebra(L, [a]).dim != L.dim:
        raise ValueError("element does not generate the algebra")
    krylov: list[Vector] = []
    nxt = multiply(L, a, a)
    while any(nxt) and solve_combination(krylov, nxt, p) is None:
        krylov.append(nxt)
        nxt = multiply(L, a, nxt)
    m = len(krylov)
    V = canonicalize(krylov, p, L.dim)
    cols = []
    for w in krylov:
        c = solve_combination(krylov, multiply(L, a, w), p)
        if c is None:
            raise ValueError("V is not invariant under left multiplication by a")
        cols.append(c)
    theta = Matrix.from_columns(cols, p, m)
    f = minimal_polynomial(theta)
    r = next(i for i, c in enumerate(f.coeffs) if c)
    g = Polynomial(p, f.coeffs[r:])
    data = OneGeneratorData(
        algebra=L, generator=a, V=V, krylov=tuple(krylov), theta=theta, f=f, r=r, g=g,
        V1=canonicalize([], p, L.dim), factorization=factor(g))
    V1 = data.act_on_space(Polynomial.x(p) ** r)
    return OneGeneratorData(**{**data.__dict__, "V1": V1})


def one_generator_algebra(p: int, f: Polynomial) -> OneGeneratorData:
    """The algebra <a, a^2, ..., a^(m+1)> where theta acts on V as the companion matrix of f.

    Basis order: e0 = a, e_k = a^(k+1). Products: a a^k = a^(k+1) for k <= m, the
    last one reduced by f, and every product with a left factor in V is zero.
    """
    if f.p != p:
        raise ValueError("polynomial is over a different field")
    if f.degree < 1:
        raise ValueError("f must have degree at least 1")
    if not f.is_monic():
        raise ValueError("f must be monic")
    m = f.degree
    n = m + 1
    C = companion_matrix(f)
    entries = {(0, 0): unit_vector(n, 1)}
    for k in range(m):
        entries[(0, k + 1)] = (0,) + C.column(k)
    labels = ["a"] + [f"a^{k + 2}" for k in range(m)]
    L = LeibnizAlgebra.from_entries(p, n, entries, labels)
    return analyze_one_generator(L, unit_vector(n, 0))


def nilpotent_generator(D: OneGeneratorData) -> Vector:
    """b = a + h(theta) a^2 with h(x) = (g(x) - g(0)) / (x g(0))."""
    p = D.algebra.p
    g0 = D.g.coeffs[0]
    inv = pow(g0, p - 2, p)
    h = Polynomial(p, tuple(c * inv for c in D.g.coeffs[1:]))
    a2 = multiply(D.algebra, D.generator, D.generator)
    return vec_add(D.generator, D.act(h, a2), p)


def signature(D: OneGeneratorData) -> Signature:
    """Signature with the (chain length, degree) pairs sorted by degree, then length.

    The pairs are unordered data, so sorting makes equality meaningful.
    """
    pairs = sorted(((q.degree, e) for q, e in D.factorization.factors))
    return Signature(D.r, tuple(e for _, e in pairs), tuple(d for d, _ in pairs))


def invariant_subspace(D: OneGeneratorData, s: Sequence[int]) -> Subspace:
    """V_s = theta^r prod p_i^(r_i - s_i)(theta) V."""
    p = D.algebra.p
    q = Polynomial.x(p) ** D.r
    for (pi, ri), si in zip(D.factorization.factors, s):
        if not 0 <= si <= ri:
            raise ValueError(f"exponent {si} outside [0, {ri}]")
        q = q * pi ** (ri - si)
    return D.act_on_space(q)


def invariant_subspace_by_kernel(D: OneGeneratorData, s: Sequence[int]) -> Subspace:
    """{v in V : prod p_i^(s_i)(theta) v = 0}, computed as a null space."""
    L = D.algebra
    q = Polynomial.constant(1, L.p)
    for (pi, _), si in zip(D.factorization.factors, s):
        q = q * pi ** si
    images = [D.act(q, v) for v in D.krylov]
    # solve sum c_i images_i = 0 in coordinates of the krylov basis
    m = len(D.krylov)
    null = []
    cols = [D.V.coordinates(w) for w in images]
    M = Matrix.from_columns(cols, L.p, D.V.dim) if m else Matrix.zero(0, 0, L.p)
    for c in kernel(M).basis:
        v = zero_vector(L.dim)
        for ci, w in zip(c, D.krylov):
            v = vec_add(v, vec_scale(ci, w, L.p), L.p)
        null.append(v)
    return canonicalize(null, L.p, L.dim)


def chain_tuples(D: OneGeneratorData) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(e + 1) for _, e in D.factorization.factors)))


def classify_subalgebras_onegen(D: OneGeneratorData) -> list[Subspace]:
    """The subalgebras U_s = B + V_s, one per exponent tuple s, sorted canonically."""
    B = generated_subalgebra(D.algebra, [nilpotent_generator(D)])
    out = {subspace_sum(B, invariant_subspace(D, s)) for s in chain_tuples(D)}
    return sorted(out, key=Subspace.sort_key)


# ---------------------------------------------------------------------------
# diamond algebras


@dataclass(frozen=True)
class DiamondWitness:
    b: Vector
    v: Vector


def diamond_witness(L: LeibnizAlgebra) -> DiamondWitness | None:
    """For a 2-dimensional diamond algebra, return b, v with b^2 = v^2 = vb = 0, bv = v."""
    if L.dim != 2:
        raise DimensionMismatch("diamond algebras are 2-dimensional")
    p = L.p
    lines = [(1, c) for c in range(p)] + [(0, 1)]
    lines = sorted(canonicalize([u], p, 2).basis[0] for u in lines)
    closed = [u for u in lines if contains(canonicalize([u], p, 2), multiply(L, u, u))]
    K = leibniz_kernel(L)
    if len(closed) != 2 or K.dim != 1:
        return None
    v = K.basis[0]
    b = next(u for u in closed if u != v)
    bv = multiply(L, b, v)
    lam = K.coordinates(bv)
    if lam is None or lam[0] == 0:
        return None
    b = vec_scale(pow(lam[0], p - 2, p), b, p)
    return DiamondWitness(b, v)
