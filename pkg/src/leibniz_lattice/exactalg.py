"""Exact linear algebra and polynomial arithmetic over prime fields GF(p).

Vectors are plain tuples of ints reduced mod p. Subspaces carry their basis in
reduced row echelon form so that equal subspaces compare (and hash) equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]

MAX_PRIME = 2**16


class DimensionMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime in [2, {MAX_PRIME}]")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(v, self) for v in range(self.p)]


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"residue {self.value} out of range for GF({self.field.p})")

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return self.field(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self.field(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self.field(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        return self * inverse(self.field(self._coerce(other)))

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        return self.field(pow(self.value, k, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def inverse(a: FieldElement) -> FieldElement:
    return a.field(a.field.inv(a.value))


# ---------------------------------------------------------------------------
# vectors and matrices


def _check_len(v: Sequence[int], n: int) -> None:
    if len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")


def vec(values: Iterable[int], p: int) -> Vector:
    return tuple(int(x) % p for x in values)


def vec_add(u: Vector, w: Vector, p: int) -> Vector:
    return tuple((a + b) % p for a, b in zip(u, w))


def vec_sub(u: Vector, w: Vector, p: int) -> Vector:
    return tuple((a - b) % p for a, b in zip(u, w))


def vec_scale(c: int, u: Vector, p: int) -> Vector:
    return tuple((c * a) % p for a in u)


def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


@dataclass(frozen=True)
class Matrix:
    """Dense matrix over GF(p); acts on column vectors via ``apply``."""

    p: int
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> Matrix:
        rows = tuple(vec(r, p) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(p, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], p: int, rows: int) -> Matrix:
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], p, len(columns))

    @classmethod
    def identity(cls, n: int, p: int) -> Matrix:
        return cls(p, n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int, p: int) -> Matrix:
        return cls(p, rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def apply(self, v: Sequence[int]) -> Vector:
        _check_len(v, self.cols)
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.entries)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        p = self.p
        cols = [other.column(j) for j in range(other.cols)]
        return Matrix(p, self.rows, other.cols,
                      tuple(tuple(sum(a * b for a, b in zip(row, c)) % p for c in cols)
                            for row in self.entries))

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shapes differ")
        return Matrix(self.p, self.rows, self.cols,
                      tuple(vec_add(a, b, self.p) for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int) -> Matrix:
        return Matrix(self.p, self.rows, self.cols,
                      tuple(vec_scale(c, r, self.p) for r in self.entries))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def transpose(self) -> Matrix:
        return Matrix(self.p, self.cols, self.rows,
                      tuple(self.column(j) for j in range(self.cols)))


def rref(rows: Iterable[Sequence[int]], p: int, n: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Row reduce; returns (nonzero RREF rows, pivot columns)."""
    work = []
    for r in rows:
        _check_len(r, n)
        work.append([x % p for x in r])
    pivots = []
    row = 0
    for col in range(n):
        pr = next((i for i in range(row, len(work)) if work[i][col]), None)
        if pr is None:
            continue
        work[row], work[pr] = work[pr], work[row]
        inv = pow(work[row][col], p - 2, p)
        work[row] = [(x * inv) % p for x in work[row]]
        piv = work[row]
        for i in range(len(work)):
            if i != row and work[i][col]:
                c = work[i][col]
                work[i] = [(a - c * b) % p for a, b in zip(work[i], piv)]
        pivots.append(col)
        row += 1
        if row == len(work):
            break
    return tuple(tuple(r) for r in work[:row]), tuple(pivots)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^n stored by its RREF basis (zero rows removed)."""

    p: int
    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    def sort_key(self):
        return (self.dim, self.basis)

    def __lt__(self, other: Subspace) -> bool:
        return self.sort_key() < other.sort_key()

    def to_bytes(self) -> bytes:
        return bytes([self.dim]) + b"".join(
            x.to_bytes(2, "big") for r in self.basis for x in r)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Remainder of v after clearing the pivot columns of the basis."""
        _check_len(v, self.ambient_dim)
        p = self.p
        w = [x % p for x in v]
        for row, col in zip(self.basis, self.pivots):
            c = w[col]
            if c:
                w = [(a - c * b) % p for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def issubspace(self, other: Subspace) -> bool:
        _check_same(self, other)
        return self.dim <= other.dim and all(not any(other.reduce(r)) for r in self.basis)

    def elements(self) -> Iterator[Vector]:
        p, n = self.p, self.ambient_dim
        for coeffs in itertools.product(range(p), repeat=self.dim):
            v = [0] * n
            for c, r in zip(coeffs, self.basis):
                if c:
                    for i, x in enumerate(r):
                        v[i] = (v[i] + c * x) % p
            yield tuple(v)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Coefficients of v in the RREF basis, or None if v is not in the subspace."""
        if any(self.reduce(v)):
            return None
        return tuple(v[c] % self.p for c in self.pivots)

    def __repr__(self):
        return f"Subspace(p={self.p}, n={self.ambient_dim}, basis={list(self.basis)})"


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def canonicalize(vectors: Iterable[Sequence[int]], p: int, n: int) -> Subspace:
    basis, _ = rref(vectors, p, n)
    return Subspace(p, n, basis)


def zero_subspace(p: int, n: int) -> Subspace:
    return Subspace(p, n, ())


def full_space(p: int, n: int) -> Subspace:
    return Subspace(p, n, tuple(unit_vector(n, i) for i in range(n)))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return canonicalize(a.basis + b.basis, a.p, a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    # Zassenhaus: rows [a|a] and [b|0]; rows with zero left half span a ∩ b on the right.
    _check_same(a, b)
    n, p = a.ambient_dim, a.p
    rows = [r + r for r in a.basis] + [r + zero_vector(n) for r in b.basis]
    reduced, _ = rref(rows, p, 2 * n)
    return canonicalize([r[n:] for r in reduced if not any(r[:n])], p, n)


def contains(a: Subspace, v: Sequence[int]) -> bool:
    return not any(a.reduce(v))


def image(m: Matrix, s: Subspace) -> Subspace:
    return canonicalize([m.apply(r) for r in s.basis], s.p, m.rows)


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0}."""
    p, n = m.p, m.cols
    red, pivots = rref(m.entries, p, n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[f]) % p
        basis.append(v)
    return canonicalize(basis, p, n)


def solve_combination(vectors: Sequence[Vector], target: Sequence[int], p: int) -> Vector | None:
    """Coefficients c with sum c_i vectors_i = target, or None if target is outside the span."""
    n = len(target)
    k = len(vectors)
    # Augment each vector with a tag recording the combination that produced it.
    rows = [tuple(v) + unit_vector(k, i) for i, v in enumerate(vectors)]
    red, pivots = rref(rows, p, n + k)
    w = list(x % p for x in target)
    combo = [0] * k
    for row, col in zip(red, pivots):
        if col >= n:
            break
        c = w[col]
        if c:
            w = [(a - c * b) % p for a, b in zip(w, row[:n])]
            combo = [(a + c * b) % p for a, b in zip(combo, row[n:])]
    if any(w):
        return None
    return tuple(combo)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(p: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def enumerate_subspaces(p: int, n: int, dim: int | None = None) -> Iterator[Subspace]:
    """Every subspace of GF(p)^n exactly once, ordered by (dim, RREF basis)."""
    dims = range(n + 1) if dim is None else [dim]
    for d in dims:
        found = []
        for pivots in itertools.combinations(range(n), d):
            # free slots: columns right of each pivot that are not pivots themselves
            slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n)
                     if c not in pivots]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * n for _ in range(d)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, c), x in zip(slots, values):
                    rows[i][c] = x
                found.append(Subspace(p, n, tuple(tuple(r) for r in rows)))
        found.sort(key=Subspace.sort_key)
        yield from found


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over GF(p), coefficients lowest degree first, trailing zeros stripped."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [x % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls, p: int) -> Polynomial:
        return cls(p, (0, 1))

    @classmethod
    def constant(cls, c: int, p: int) -> Polynomial:
        return cls(p, (c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> Polynomial:
        f = cls.constant(1, p)
        for a in roots:
            f = f * cls(p, (-a, 1))
        return f

    @classmethod
    def parse(cls, text: str, p: int) -> Polynomial:
        """Parse strings such as ``"x^3+2x+1"`` or ``"x^2 - 1"``."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = []
        i = 0
        while i < len(s):
            j = i + 1
            while j < len(s) and s[j] not in "+-":
                j += 1
            terms.append(s[i:j])
            i = j
        coeffs: dict[int, int] = {}
        for t in terms:
            sign, body = (-1 if t[0] == "-" else 1), t[1:]
            if not body:
                raise ValueError(f"malformed polynomial {text!r}")
            if "x" in body:
                head, _, tail = body.partition("x")
                c = int(head) if head else 1
                if tail == "":
                    e = 1
                elif tail.startswith("^") and tail[1:].isdigit():
                    e = int(tail[1:])
                else:
                    raise ValueError(f"malformed term {t!r} in {text!r}")
            else:
                if not body.isdigit():
                    raise ValueError(f"malformed term {t!r} in {text!r}")
                c, e = int(body), 0
            coeffs[e] = coeffs.get(e, 0) + sign * c
        deg = max(coeffs)
        return cls(p, tuple(coeffs.get(k, 0) for k in range(deg + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        inv = pow(self.lead, self.p - 2, self.p)
        return Polynomial(self.p, tuple(c * inv for c in self.coeffs))

    def __call__(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    def _same(self, other: Polynomial) -> None:
        if self.p != other.p:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._same(other)
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return Polynomial(self.p, tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                        for i in range(m)))

    def __neg__(self) -> Polynomial:
        return Polynomial(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return Polynomial(self.p, tuple(other * c for c in self.coeffs))
        self._same(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(self.p, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial.constant(1, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: Polynomial):
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        inv = pow(other.lead, p - 2, p)
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] * inv % p
            if c:
                quot[k - db] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - db + i] = (rem[k - db + i] - c * b) % p
        return Polynomial(p, tuple(quot)), Polynomial(p, tuple(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: Polynomial) -> bool:
        return (other % self).is_zero()

    def powmod(self, k: int, modulus: Polynomial) -> Polynomial:
        result = Polynomial.constant(1, self.p) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            k >>= 1
        return result

    def of_matrix(self, m: Matrix) -> Matrix:
        if not m.is_square:
            raise DimensionMismatch("polynomial of a non-square matrix")
        acc = Matrix.zero(m.rows, m.cols, self.p)
        ident = Matrix.identity(m.rows, self.p)
        for c in reversed(self.coeffs):
            acc = (acc @ m) + ident.scale(c)
        return acc

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                mono = "x" if e == 1 else f"x^{e}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero() or b.is_zero():
        return Polynomial(a.p, ())
    return ((a * b) // poly_gcd(a, b)).monic()


def monic_polynomials(p: int, degree: int) -> Iterator[Polynomial]:
    """All monic polynomials of the given degree, lexicographic in the low coefficients."""
    for low in itertools.product(range(p), repeat=degree):
        yield Polynomial(p, tuple(reversed(low)) + (1,))


def is_irreducible(f: Polynomial) -> bool:
    """No monic divisor of positive degree at most deg f / 2 (brute force)."""
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for q in monic_irreducibles(f.p, d):
            if q.divides(f):
                return False
    return True


@lru_cache(maxsize=None)
def monic_irreducibles(p: int, degree: int) -> tuple[Polynomial, ...]:
    return tuple(q for q in monic_polynomials(p, degree) if is_irreducible(q))


@dataclass(frozen=True)
class PrimePowerFactorization:
    """f = unit * x^x_power * prod(p_i ^ r_i) with the p_i monic, irreducible, distinct and not x."""

    x_power: int
    factors: tuple[tuple[Polynomial, int], ...]
    unit: FieldElement

    def expand(self) -> Polynomial:
        p = self.unit.p
        out = Polynomial.x(p) ** self.x_power
        for q, e in self.factors:
            out = out * q ** e
        return out * self.unit.value

    def cofactor(self) -> Polynomial:
        """The monic x-free part g."""
        p = self.unit.p
        out = Polynomial.constant(1, p)
        for q, e in self.factors:
            out = out * q ** e
        return out


def factor(f: Polynomial) -> PrimePowerFactorization:
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    p = f.p
    unit = PrimeField(p)(f.lead)
    g = f.monic()
    r = 0
    while g.coeffs[0] == 0:
        g = g // Polynomial.x(p)
        r += 1
    found: list[tuple[Polynomial, int]] = []
    x = Polynomial.x(p)
    d = 1
    while 2 * d <= g.degree:
        # product of the distinct degree-d irreducible factors (those dividing x^(p^d) - x)
        probe = poly_gcd(g, x.powmod(p**d, g) - x)
        if probe.degree > 0:
            for q in monic_irreducibles(p, d):
                if q == x or not q.divides(probe):
                    continue
                e = 0
                while q.divides(g):
                    g = g // q
                    e += 1
                found.append((q, e))
        d += 1
    if g.degree > 0:
        found.append((g, 1))
    found.sort(key=lambda qe: qe[0].sort_key())
    return PrimePowerFactorization(r, tuple(found), unit)


# ---------------------------------------------------------------------------
# minimal and characteristic polynomials


def _krylov_relation(m: Matrix, v: Vector) -> Polynomial:
    p = m.p
    seq = [tuple(x % p for x in v)]
    while True:
        nxt = m.apply(seq[-1])
        combo = solve_combination(seq, nxt, p)
        if combo is not None:
            return Polynomial(p, tuple(-c for c in combo) + (1,))
        seq.append(nxt)


def minimal_polynomial(m: Matrix, generator: Sequence[int] | None = None) -> Polynomial:
    """Monic annihilator of least degree for m, or for the cyclic orbit of ``generator``."""
    if not m.is_square:
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    p, n = m.p, m.rows
    if generator is not None:
        _check_len(generator, n)
        if not any(x % p for x in generator):
            return Polynomial.constant(1, p)
        return _krylov_relation(m, tuple(generator))
    out = Polynomial.constant(1, p)
    for i in range(n):
        out = poly_lcm(out, _krylov_relation(m, unit_vector(n, i)))
    return out


def characteristic_polynomial(m: Matrix) -> Polynomial:
    """det(xI - m) via reduction to upper Hessenberg form."""
    if not m.is_square:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    p, n = m.p, m.rows
    h = [list(r) for r in m.entries]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = pow(h[j + 1][j], p - 2, p)
        for i in range(j + 2, n):
            c = h[i][j] * inv % p
            if c:
                h[i] = [(a - c * b) % p for a, b in zip(h[i], h[j + 1])]
                for r in h:
                    r[j + 1] = (r[j + 1] + c * r[i]) % p
    # charpolys of leading principal submatrices
    polys = [Polynomial.constant(1, p)]
    x = Polynomial.x(p)
    for k in range(1, n + 1):
        acc = (x - Polynomial.constant(h[k - 1][k - 1], p)) * polys[k - 1]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * h[i][i - 1] % p
            term = polys[i - 1] * (prod * h[i - 1][k - 1] % p)
            acc = acc - term
        polys.append(acc)
    return polys[n]


def companion_matrix(f: Polynomial) -> Matrix:
    """Companion matrix of a monic f acting on the basis 1, x, ..., x^(m-1)."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of positive degree")
    m, p = f.degree, f.p
    rows = [[0] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = 1
    for i in range(m):
        rows[i][m - 1] = -f.coeffs[i] % p
    return Matrix.from_rows(rows, p, m)
