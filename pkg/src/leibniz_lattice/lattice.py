"""Subalgebra lattices, intervals, named lattice shapes and lattice isomorphisms.

Lattices are finite posets given by their down-sets as int bitsets
(bit j of ``down[i]`` is set iff j <= i). Node indices follow a linear
extension of the order; for subalgebra lattices the canonical order is
(dimension, RREF basis).
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import LeibnizAlgebra, leibniz_kernel, multiply
from .exactalg import Subspace, count_subspaces, enumerate_subspaces

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


class NotALattice(ValueError):
    pass


def subspace_budget() -> int:
    return int(os.environ.get("LEIBNIZ_BUDGET", DEFAULT_BUDGET))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """A finite lattice on nodes 0..size-1 with cover relation and meet/join."""

    def __init__(self, down: Sequence[int], labels: Sequence | None = None, check: bool = True):
        self.size = len(down)
        self.down = list(down)
        self.labels = list(labels) if labels is not None else list(range(self.size))
        self.up = [0] * self.size
        for i, d in enumerate(self.down):
            if not (d >> i) & 1:
                raise NotALattice("order must be reflexive")
            for j in _bits(d):
                self.up[j] |= 1 << i
        self.lower_covers: list[list[int]] = []
        for i, d in enumerate(self.down):
            strict = d & ~(1 << i)
            below = 0
            for j in _bits(strict):
                below |= self.down[j] & ~(1 << j)
            self.lower_covers.append(list(_bits(strict & ~below)))
        self.upper_covers: list[list[int]] = [[] for _ in range(self.size)]
        for i, lows in enumerate(self.lower_covers):
            for j in lows:
                self.upper_covers[j].append(i)
        full = (1 << self.size) - 1
        bottoms = [i for i in range(self.size) if self.up[i] == full]
        tops = [i for i in range(self.size) if self.down[i] == full]
        if self.size == 0 or len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice("a lattice needs a unique bottom and top")
        self.bottom, self.top = bottoms[0], tops[0]
        order = sorted(range(self.size), key=lambda i: bin(self.down[i]).count("1"))
        self.height = [0] * self.size
        for i in order:
            self.height[i] = max((self.height[j] + 1 for j in self.lower_covers[i]), default=0)
        self.coheight = [0] * self.size
        for i in reversed(order):
            self.coheight[i] = max((self.coheight[j] + 1 for j in self.upper_covers[i]), default=0)
        if check:
            self.check_lattice()

    # -- order ---------------------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool((self.down[j] >> i) & 1)

    @property
    def covers(self) -> set[tuple[int, int]]:
        return {(j, i) for i, lows in enumerate(self.lower_covers) for j in lows}

    @property
    def length(self) -> int:
        return self.height[self.top]

    def meet(self, i: int, j: int) -> int:
        common = self.down[i] & self.down[j]
        for m in _bits(common):
            if self.down[m] == common:
                return m
        raise NotALattice(f"nodes {i} and {j} have no meet")

    def join(self, i: int, j: int) -> int:
        common = self.up[i] & self.up[j]
        for m in _bits(common):
            if self.up[m] == common:
                return m
        raise NotALattice(f"nodes {i} and {j} have no join")

    def check_lattice(self) -> None:
        for i in range(self.size):
            for j in range(i + 1, self.size):
                self.meet(i, j)
                self.join(i, j)

    def is_chain(self) -> bool:
        return all(len(c) <= 1 for c in self.lower_covers)

    def fingerprint(self) -> tuple:
        return tuple(sorted((self.height[i], len(self.upper_covers[i]), len(self.lower_covers[i]))
                            for i in range(self.size)))

    def sublattice_nodes(self, top: int, bottom: int) -> list[int]:
        if not self.leq(bottom, top):
            raise ValueError("interval endpoints are not comparable")
        return sorted(_bits(self.down[top] & self.up[bottom]))

    def restrict(self, nodes: Sequence[int]) -> FiniteLattice:
        index = {v: k for k, v in enumerate(nodes)}
        down = []
        for v in nodes:
            d = 0
            for w in _bits(self.down[v]):
                if w in index:
                    d |= 1 << index[w]
            down.append(d)
        return FiniteLattice(down, [self.labels[v] for v in nodes], check=False)

    def interval(self, top: int, bottom: int) -> FiniteLattice:
        return self.restrict(self.sublattice_nodes(top, bottom))


class SubalgebraLattice(FiniteLattice):
    """Lattice of subalgebras of a Leibniz algebra; labels are the Subspace nodes."""

    def __init__(self, algebra: LeibnizAlgebra, nodes: Sequence[Subspace], down: Sequence[int],
                 kernel_node: int | None, check: bool = True):
        super().__init__(down, nodes, check=check)
        self.algebra = algebra
        self.nodes: list[Subspace] = list(nodes)
        self.kernel_node = kernel_node
        self.index = {s: i for i, s in enumerate(self.nodes)}

    def node_of(self, s: Subspace) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise ValueError(f"{s} is not a node of this lattice") from None

    def restrict(self, nodes: Sequence[int]) -> SubalgebraLattice:
        sub = FiniteLattice.restrict(self, nodes)
        subspaces = [self.nodes[v] for v in nodes]
        kernel = None
        if self.kernel_node is not None and self.kernel_node in nodes:
            kernel = list(nodes).index(self.kernel_node)
        return SubalgebraLattice(self.algebra, subspaces, sub.down, kernel, check=False)

    def interval(self, top, bottom) -> SubalgebraLattice:
        if isinstance(top, Subspace):
            top = self.node_of(top)
        if isinstance(bottom, Subspace):
            bottom = self.node_of(bottom)
        return self.restrict(self.sublattice_nodes(top, bottom))


# ---------------------------------------------------------------------------
# construction


def enumerate_subalgebras(L: LeibnizAlgebra, budget: int | None = None) -> list[Subspace]:
    budget = subspace_budget() if budget is None else budget
    total = count_subspaces(L.p, L.dim)
    if total > budget:
        raise BudgetExceeded(
            f"GF({L.p})^{L.dim} has {total} subspaces, over the budget of {budget}")
    products = {}

    def closed(S: Subspace) -> bool:
        for u in S.basis:
            for w in S.basis:
                key = (u, w)
                if key not in products:
                    products[key] = multiply(L, u, w)
                if any(S.reduce(products[key])):
                    return False
        return True

    return [S for S in enumerate_subspaces(L.p, L.dim) if closed(S)]


def _member_masks(nodes: Sequence[Subspace]) -> list[int] | None:
    if not nodes:
        return []
    p, n = nodes[0].p, nodes[0].ambient_dim
    if p**n > 2**16:
        return None
    weights = [p ** (n - 1 - i) for i in range(n)]
    masks = []
    for S in nodes:
        m = 0
        for v in S.elements():
            m |= 1 << sum(w * x for w, x in zip(weights, v))
        masks.append(m)
    return masks


def inclusion_downsets(nodes: Sequence[Subspace]) -> list[int]:
    """down[i] has bit j set iff nodes[j] is contained in nodes[i]."""
    masks = _member_masks(nodes)
    down = []
    for i, A in enumerate(nodes):
        d = 0
        for j, B in enumerate(nodes):
            if masks is not None:
                inside = (masks[j] & masks[i]) == masks[j]
            else:
                inside = B.issubspace(A)
            if inside:
                d |= 1 << j
        down.append(d)
    return down


def build_lattice(L: LeibnizAlgebra, budget: int | None = None,
                  check: bool = True) -> SubalgebraLattice:
    nodes = enumerate_subalgebras(L, budget)
    kernel = leibniz_kernel(L)
    index = {s: i for i, s in enumerate(nodes)}
    return SubalgebraLattice(L, nodes, inclusion_downsets(nodes), index.get(kernel), check=check)


def interval(lat: SubalgebraLattice, A, B) -> SubalgebraLattice:
    """The interval A ÷ B: every node C with B ⊆ C ⊆ A."""
    return lat.interval(A, B)


def chain_product(lengths: Sequence[int]) -> FiniteLattice:
    """Product of chains with the given lengths (a chain of length l has l + 1 nodes)."""
    points = sorted(itertools.product(*(range(l + 1) for l in lengths)), key=lambda t: (sum(t), t))
    index = {t: i for i, t in enumerate(points)}
    down = []
    for t in points:
        d = 0
        for s in itertools.product(*(range(x + 1) for x in t)):
            d |= 1 << index[s]
        down.append(d)
    return FiniteLattice(down, points, check=False)


def chain(length: int) -> FiniteLattice:
    return chain_product([length])


def subspace_lattice(p: int, d: int) -> FiniteLattice:
    nodes = list(enumerate_subspaces(p, d))
    return FiniteLattice(inclusion_downsets(nodes), nodes, check=False)


def maximal_subalgebras(lat: FiniteLattice) -> list[int]:
    return sorted(lat.lower_covers[lat.top])


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass(frozen=True)
class LatticeMap:
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> LatticeMap:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return LatticeMap(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


class IsomorphismResult(list):
    """List of LatticeMaps with a ``limit_reached`` flag."""

    def __init__(self, maps=(), limit_reached: bool = False):
        super().__init__(maps)
        self.limit_reached = limit_reached


def _node_invariants(lat: FiniteLattice) -> list[tuple]:
    return [(lat.height[i], lat.coheight[i], len(lat.upper_covers[i]), len(lat.lower_covers[i]),
             bin(lat.up[i]).count("1"), bin(lat.down[i]).count("1"))
            for i in range(lat.size)]


def refine_colors(lat1: FiniteLattice, lat2: FiniteLattice,
                  fixed: dict[int, int] | None = None) -> tuple[list[int], list[int]] | None:
    """Joint colour refinement on both Hasse diagrams; None if the colourings disagree."""
    fixed = fixed or {}
    inv1, inv2 = _node_invariants(lat1), _node_invariants(lat2)
    tag1 = {u: k for k, u in enumerate(sorted(fixed))}
    tag2 = {v: tag1[u] for u, v in fixed.items()}
    c1 = [(inv1[i], tag1.get(i, -1)) for i in range(lat1.size)]
    c2 = [(inv2[i], tag2.get(i, -1)) for i in range(lat2.size)]
    classes = -1
    while True:
        palette = {c: k for k, c in enumerate(sorted(set(c1) | set(c2)))}
        n1 = [palette[c] for c in c1]
        n2 = [palette[c] for c in c2]
        if sorted(n1) != sorted(n2):
            return None
        if len(palette) == classes:
            return n1, n2
        classes = len(palette)
        c1 = [(n1[i], tuple(sorted(n1[j] for j in lat1.upper_covers[i])),
               tuple(sorted(n1[j] for j in lat1.lower_covers[i]))) for i in range(lat1.size)]
        c2 = [(n2[i], tuple(sorted(n2[j] for j in lat2.upper_covers[i])),
               tuple(sorted(n2[j] for j in lat2.lower_covers[i]))) for i in range(lat2.size)]


def iter_isomorphisms(lat1: FiniteLattice, lat2: FiniteLattice,
                      fixed: dict[int, int] | None = None) -> Iterator[LatticeMap]:
    """Yield every order isomorphism lat1 -> lat2 extending ``fixed``, deterministically.

    A bijection preserving the cover relation in both directions is an order
    isomorphism, so consistency is checked on Hasse-diagram neighbours only.
    """
    if lat1.size != lat2.size:
        return
    fixed = dict(fixed or {})
    colors = refine_colors(lat1, lat2, fixed)
    if colors is None:
        return
    col1, col2 = colors
    by_color: dict[int, list[int]] = {}
    for v in range(lat2.size):
        by_color.setdefault(col2[v], []).append(v)
    ups1 = [set(x) for x in lat1.upper_covers]
    downs1 = [set(x) for x in lat1.lower_covers]
    ups2 = [set(x) for x in lat2.upper_covers]
    downs2 = [set(x) for x in lat2.lower_covers]

    # Assignment order: greedily take the node with most already-ordered neighbours.
    order: list[int] = []
    placed = [False] * lat1.size
    score = [0] * lat1.size
    start = sorted(fixed) or [lat1.bottom]
    for u in start:
        placed[u] = True
        order.append(u)
        for w in ups1[u] | downs1[u]:
            score[w] += 1
    while len(order) < lat1.size:
        u = max((i for i in range(lat1.size) if not placed[i]),
                key=lambda i: (score[i], -len(by_color[col1[i]]), -i))
        placed[u] = True
        order.append(u)
        for w in ups1[u] | downs1[u]:
            score[w] += 1

    phi = [-1] * lat1.size
    used = [False] * lat2.size

    def candidates(u: int) -> list[int]:
        pool = {fixed[u]} if u in fixed else None
        for w in ups1[u]:
            if phi[w] >= 0:
                pool = downs2[phi[w]] if pool is None else pool & downs2[phi[w]]
        for w in downs1[u]:
            if phi[w] >= 0:
                pool = ups2[phi[w]] if pool is None else pool & ups2[phi[w]]
        pool = sorted(pool) if pool is not None else by_color[col1[u]]
        n_up = sum(1 for w in ups1[u] if phi[w] >= 0)
        n_down = sum(1 for w in downs1[u] if phi[w] >= 0)
        out = []
        for v in pool:
            if used[v] or col2[v] != col1[u]:
                continue
            if sum(1 for x in ups2[v] if used[x]) != n_up:
                continue
            if sum(1 for x in downs2[v] if used[x]) != n_down:
                continue
            out.append(v)
        return out

    depth = 0
    stack = [iter(candidates(order[0]))]
    while stack:
        u = order[depth]
        if phi[u] >= 0:
            used[phi[u]] = False
            phi[u] = -1
        v = next(stack[-1], None)
        if v is None:
            stack.pop()
            depth -= 1
            continue
        phi[u] = v
        used[v] = True
        if depth + 1 == lat1.size:
            yield LatticeMap(tuple(phi))
            continue
        depth += 1
        stack.append(iter(candidates(order[depth])))


def find_isomorphisms(lat1: FiniteLattice, lat2: FiniteLattice, limit: int | None = None,
                      fixed: dict[int, int] | None = None) -> IsomorphismResult:
    maps = []
    for m in iter_isomorphisms(lat1, lat2, fixed):
        if limit is not None and len(maps) >= limit:
            return IsomorphismResult(maps, limit_reached=True)
        maps.append(m)
    return IsomorphismResult(maps)


def is_isomorphism(lat1: FiniteLattice, lat2: FiniteLattice, m: LatticeMap) -> bool:
    """Order isomorphism check straight from the down-sets (independent of the search)."""
    if lat1.size != lat2.size or sorted(m.mapping) != list(range(lat2.size)):
        return False
    return all(lat1.leq(i, j) == lat2.leq(m(i), m(j))
               for i in range(lat1.size) for j in range(lat1.size))


def is_chain_product(lat: FiniteLattice, lengths: Sequence[int]) -> bool:
    return bool(find_isomorphisms(lat, chain_product(lengths), limit=1))


def is_vector_space_lattice(lat: FiniteLattice, p: int) -> tuple[bool, int | None]:
    d = lat.length
    if count_subspaces(p, d) != lat.size:
        return False, None
    if find_isomorphisms(lat, subspace_lattice(p, d), limit=1):
        return True, d
    return False, None


# ---------------------------------------------------------------------------
# modularity


@dataclass(frozen=True)
class Pentagon:
    """Nodes of an N5 sublattice: bottom < low < high < top and bottom < side < top."""

    bottom: int
    low: int
    high: int
    side: int
    top: int

    def nodes(self) -> tuple[int, ...]:
        return (self.bottom, self.low, self.high, self.side, self.top)


def is_pentagon(lat: FiniteLattice, low: int, high: int, side: int) -> Pentagon | None:
    if low == high or not lat.leq(low, high):
        return None
    if lat.leq(side, high) or lat.leq(low, side):
        return None
    bottom, top = lat.meet(side, high), lat.join(side, low)
    if lat.meet(side, low) != bottom or lat.join(side, high) != top:
        return None
    return Pentagon(bottom, low, high, side, top)


def find_pentagon(lat: FiniteLattice) -> Pentagon | None:
    """First N5 in node order, or None when the lattice is modular."""
    for c in range(lat.size):
        groups: dict[tuple[int, int], list[int]] = {}
        for a in range(lat.size):
            if lat.leq(a, c) or lat.leq(c, a):
                continue
            groups.setdefault((lat.meet(a, c), lat.join(a, c)), []).append(a)
        best = None
        for members in groups.values():
            for a, b in itertools.permutations(members, 2):
                if lat.leq(a, b) and (best is None or (a, b) < best[:2]):
                    best = (a, b)
        if best is not None:
            pent = is_pentagon(lat, best[0], best[1], c)
            if pent is not None:
                return pent
    return None


# ---------------------------------------------------------------------------
# output


def _basis_text(S: Subspace, L: LeibnizAlgebra) -> str:
    if S.dim == 0:
        return "0"
    terms = []
    for v in S.basis:
        parts = []
        for i, c in enumerate(v):
            if c:
                parts.append(L.label(i) if c == 1 else f"{c}{L.label(i)}")
        terms.append("+".join(parts))
    return "<" + ", ".join(terms) + ">"


def to_dot(lat: SubalgebraLattice, name: str = "lattice") -> str:
    lines = [f"graph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, S in enumerate(lat.nodes):
        label = f"{S.dim}: {_basis_text(S, lat.algebra)}"
        style = ', style=filled, fillcolor="lightblue", penwidth=2' if i == lat.kernel_node else ""
        lines.append(f'  n{i} [label="{label}"{style}];')
    for lo, hi in sorted(lat.covers):
        lines.append(f"  n{lo} -- n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(lat: SubalgebraLattice) -> dict:
    return {
        "p": lat.algebra.p,
        "dim": lat.algebra.dim,
        "nodes": [{"index": i, "dim": S.dim, "basis": [list(v) for v in S.basis],
                   "text": _basis_text(S, lat.algebra), "kernel": i == lat.kernel_node}
                  for i, S in enumerate(lat.nodes)],
        "covers": [list(c) for c in sorted(lat.covers)],
        "bottom": lat.bottom,
        "top": lat.top,
        "kernel_node": lat.kernel_node,
    }


def dumps(lat: SubalgebraLattice) -> str:
    return json.dumps(to_json(lat), indent=2, sort_keys=True)
