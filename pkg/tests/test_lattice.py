import itertools
import json
import random

import pytest

from leibniz_lattice.algebra import (
    LeibnizAlgebra,
    generated_subalgebra,
    is_closed,
    nilpotent_generator,
    one_generator_algebra,
    signature,
)
from leibniz_lattice.exactalg import (
    Polynomial,
    canonicalize,
    count_subspaces,
    enumerate_subspaces,
    full_space,
    intersect,
    zero_subspace,
)
from leibniz_lattice.lattice import (
    BudgetExceeded,
    FiniteLattice,
    LatticeMap,
    NotALattice,
    build_lattice,
    chain,
    chain_product,
    enumerate_subalgebras,
    find_isomorphisms,
    find_pentagon,
    interval,
    is_chain_product,
    is_isomorphism,
    is_pentagon,
    is_vector_space_lattice,
    maximal_subalgebras,
    to_dot,
    to_json,
)
from leibniz_lattice.verify import CatalogSpec, SAMPLED, generate_catalog, one_generator_catalog

from conftest import diamond, single_chain


def span(vectors, p=2, n=3):
    return canonicalize(vectors, p, n)


B, V1, V2, V12 = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)


def closed_by_elements(L, S):
    """Oracle: closure checked on every pair of elements, not just basis vectors."""
    els = set(S.elements())
    return all(L.multiply(x, y) in els for x in els for y in els)


# -- enumeration -------------------------------------------------------------

def test_enumerate_examples():
    assert enumerate_subalgebras(diamond()) == sorted(
        [zero_subspace(2, 2), span([(1, 0)], 2, 2), span([(0, 1)], 2, 2), full_space(2, 2)],
        key=lambda S: S.sort_key())
    assert len(enumerate_subalgebras(LeibnizAlgebra.abelian(2, 2))) == 5
    L = single_chain()
    oracle = {S for S in enumerate_subspaces(2, 3) if closed_by_elements(L, S)}
    expected = {span([]), span([V1]), span([V2]), span([V12]), span([V1, V2]), span([B]),
                span([B, V2]), full_space(2, 3)}
    assert oracle == expected
    assert set(enumerate_subalgebras(L)) == expected


def test_enumerate_matches_elementwise_oracle(small_catalogs):
    algs = small_catalogs[(2, 2)] + small_catalogs[(3, 2)]
    algs += generate_catalog(CatalogSpec(2, 3, SAMPLED, count=40, seed=1))
    for L in algs:
        oracle = sorted((S for S in enumerate_subspaces(L.p, L.dim) if closed_by_elements(L, S)),
                        key=lambda S: S.sort_key())
        assert enumerate_subalgebras(L) == oracle


def test_budget_is_explicit(monkeypatch):
    with pytest.raises(BudgetExceeded):
        enumerate_subalgebras(LeibnizAlgebra.abelian(2, 4), budget=10)
    monkeypatch.setenv("LEIBNIZ_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        build_lattice(diamond())


# -- lattice structure -------------------------------------------------------

def test_build_lattice_diamond():
    lat = build_lattice(diamond())
    assert lat.size == 4 and lat.length == 2
    b, v = lat.node_of(span([(1, 0)], 2, 2)), lat.node_of(span([(0, 1)], 2, 2))
    assert sorted(lat.upper_covers[lat.bottom]) == sorted([b, v])
    assert lat.covers == {(lat.bottom, b), (lat.bottom, v), (b, lat.top), (v, lat.top)}
    assert lat.kernel_node == v


def test_build_lattice_one_dimensional():
    lat = build_lattice(LeibnizAlgebra.abelian(5, 1))
    assert lat.size == 2 and lat.is_chain()


def test_build_lattice_single_chain():
    lat = build_lattice(single_chain())
    assert lat.size == 8
    V = lat.node_of(span([V1, V2]))
    assert sorted(lat.lower_covers[V]) == sorted(lat.node_of(span([x])) for x in (V1, V2, V12))
    assert sorted(maximal_subalgebras(lat)) == sorted([V, lat.node_of(span([B, V2]))])
    assert lat.kernel_node == V


def test_maximal_subalgebras_examples():
    lat = build_lattice(diamond())
    assert maximal_subalgebras(lat) == sorted(lat.lower_covers[lat.top])
    assert len(maximal_subalgebras(lat)) == 2
    assert len(maximal_subalgebras(chain(3))) == 1


def test_interval_examples():
    lat = build_lattice(single_chain())
    whole = interval(lat, full_space(2, 3), zero_subspace(2, 3))
    assert whole.size == lat.size and whole.covers == lat.covers
    top = interval(lat, full_space(2, 3), span([B]))
    assert top.is_chain() and top.size == 3 and top.length == 2
    assert is_chain_product(top, [2])
    assert is_chain_product(build_lattice(diamond()), [1, 1])
    with pytest.raises(ValueError):
        interval(lat, span([B]), span([V1]))
    with pytest.raises(ValueError):
        interval(lat, full_space(2, 3), span([(1, 1, 0)]))


def test_chain_product_shapes():
    assert chain(4).size == 5 and chain(4).is_chain()
    g = chain_product([2, 3])
    assert g.size == 12 and g.length == 5
    assert is_chain_product(g, [3, 2]) and not is_chain_product(g, [5])


def test_not_a_lattice():
    # two incomparable maximal elements with no top
    with pytest.raises(NotALattice):
        FiniteLattice([0b001, 0b011, 0b101])
    # 0 < a, b < c, d < 1: a and b have two minimal upper bounds
    down = [0b000001, 0b000011, 0b000101, 0b001111, 0b010111, 0b111111]
    with pytest.raises(NotALattice):
        FiniteLattice(down)


def catalog_lattices(small_catalogs):
    algs = small_catalogs[(2, 2)] + small_catalogs[(3, 2)]
    algs += generate_catalog(CatalogSpec(2, 3, SAMPLED, count=80, seed=5))
    algs += generate_catalog(CatalogSpec(3, 3, SAMPLED, count=30, seed=6))
    algs += [D.algebra for D in one_generator_catalog(2, 4)]
    algs += [D.algebra for D in one_generator_catalog(3, 3)]
    return [build_lattice(L) for L in algs]


@pytest.fixture(scope="module")
def lattices(small_catalogs):
    return catalog_lattices(small_catalogs)


def test_meet_and_join_are_intersection_and_generation(lattices):
    for lat in lattices:
        L = lat.algebra
        for i, j in itertools.combinations(range(lat.size), 2):
            Si, Sj = lat.nodes[i], lat.nodes[j]
            assert lat.nodes[lat.meet(i, j)] == intersect(Si, Sj)
            assert lat.nodes[lat.join(i, j)] == generated_subalgebra(L, Si.basis + Sj.basis)
        assert all(is_closed(L, S) for S in lat.nodes)


def test_covers_are_transitive_reduction(lattices):
    for lat in lattices:
        n = lat.size
        less = {(i, j) for i in range(n) for j in range(n) if i != j and lat.nodes[i].issubspace(lat.nodes[j])}
        reduced = {(i, j) for (i, j) in less
                   if not any((i, k) in less and (k, j) in less for k in range(n))}
        assert lat.covers == reduced


def test_isomorphisms_preserve_meet_and_join(lattices):
    rng = random.Random(2)
    for lat in rng.sample(lattices, 60):
        perm = list(range(lat.size))
        rng.shuffle(perm)
        # relabel the lattice by a random permutation and search back
        down = [0] * lat.size
        for i in range(lat.size):
            for j in range(lat.size):
                if lat.leq(j, i):
                    down[perm[i]] |= 1 << perm[j]
        other = FiniteLattice(down)
        maps = find_isomorphisms(lat, other, limit=20)
        assert maps and LatticeMap(tuple(perm)) in maps or maps.limit_reached
        for m in maps:
            assert is_isomorphism(lat, other, m)
            for i, j in itertools.combinations(range(lat.size), 2):
                assert m(lat.meet(i, j)) == other.meet(m(i), m(j))
                assert m(lat.join(i, j)) == other.join(m(i), m(j))


# -- isomorphisms ------------------------------------------------------------

def test_isomorphism_examples():
    lat = build_lattice(diamond())
    autos = find_isomorphisms(lat, lat)
    assert len(autos) == 2 and sum(m.is_identity() for m in autos) == 1
    assert len(find_isomorphisms(chain(3), chain(3))) == 1
    assert not find_isomorphisms(chain(3), lat)


def test_automorphism_counts_by_brute_force():
    # oracle: all permutations preserving the order
    for lat in [build_lattice(single_chain()), build_lattice(diamond(3)), chain_product([1, 2])]:
        brute = [perm for perm in itertools.permutations(range(lat.size))
                 if all(lat.leq(i, j) == lat.leq(perm[i], perm[j])
                        for i in range(lat.size) for j in range(lat.size))]
        found = sorted(m.mapping for m in find_isomorphisms(lat, lat))
        assert found == sorted(brute)


def test_fixed_nodes_restrict_search():
    lat = build_lattice(diamond())
    k = lat.kernel_node
    maps = find_isomorphisms(lat, lat, fixed={k: k})
    assert len(maps) == 1 and maps[0].is_identity()


def test_vector_space_lattice():
    assert is_vector_space_lattice(build_lattice(LeibnizAlgebra.abelian(2, 2)), 2) == (True, 2)
    assert is_vector_space_lattice(build_lattice(diamond()), 2) == (False, None)
    lat = build_lattice(single_chain())
    sub = interval(lat, span([V1, V2]), zero_subspace(2, 3))
    assert is_vector_space_lattice(sub, 2) == (True, 2)


# -- modularity --------------------------------------------------------------

def test_pentagon_single_chain():
    lat = build_lattice(single_chain())
    n = lat.node_of
    pent = find_pentagon(lat)
    assert pent is not None
    assert is_pentagon(lat, pent.low, pent.high, pent.side) == pent
    assert pent.nodes() == (n(span([])), n(span([B])), n(span([B, V2])), n(span([V1])),
                            n(full_space(2, 3)))
    # the chain <v1> < V against <b> also gives a pentagon
    other = is_pentagon(lat, n(span([V1])), n(span([V1, V2])), n(span([B])))
    assert other is not None and other.top == n(full_space(2, 3))


def test_modular_lattices_have_no_pentagon():
    assert find_pentagon(chain(4)) is None
    assert find_pentagon(build_lattice(diamond())) is None
    assert find_pentagon(build_lattice(LeibnizAlgebra.abelian(2, 3))) is None
    assert find_pentagon(chain_product([2, 2])) is None


def test_pentagon_agrees_with_modular_law(lattices):
    for lat in lattices[:150]:
        modular = all(
            lat.join(a, lat.meet(b, c)) == lat.meet(b, lat.join(a, c))
            for a in range(lat.size) for b in range(lat.size) if lat.leq(a, b)
            for c in range(lat.size))
        assert (find_pentagon(lat) is None) == modular


# -- one-generator lattice shapes ---------------------------------------------

def test_onegen_interval_is_chain_product():
    rng = random.Random(8)
    for _ in range(100):
        p = rng.choice([2, 3])
        deg = rng.randint(1, 5 if p == 2 else 3)
        f = Polynomial(p, tuple(rng.randrange(p) for _ in range(deg)) + (1,))
        D = one_generator_algebra(p, f)
        lat = build_lattice(D.algebra)
        Bsp = generated_subalgebra(D.algebra, [nilpotent_generator(D)])
        sig = signature(D)
        assert is_chain_product(interval(lat, full_space(p, D.algebra.dim), Bsp), sig.chain_lengths)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_nilpotent_one_generator_shape(p, r):
    D = one_generator_algebra(p, Polynomial.x(p) ** r)
    lat = build_lattice(D.algebra)
    assert lat.size == 1 + count_subspaces(p, D.algebra.dim - 1)
    assert maximal_subalgebras(lat) == [lat.kernel_node]
    assert lat.nodes[lat.kernel_node] == D.V
    below = interval(lat, D.V, zero_subspace(p, D.algebra.dim))
    assert is_vector_space_lattice(below, p) == (True, r)


def test_equal_signatures_give_isomorphic_lattices():
    data = one_generator_catalog(2, 4) + one_generator_catalog(3, 3)
    lats = [(D.algebra.p, str(signature(D)), build_lattice(D.algebra)) for D in data]
    groups = {}
    for p, sig, lat in lats:
        groups.setdefault((p, sig), []).append(lat)
    for group in groups.values():
        for lat in group[1:]:
            maps = find_isomorphisms(group[0], lat, limit=1)
            assert maps
    # different signature over the same field: lattices never isomorphic
    reps = [(key, group[0]) for key, group in groups.items()]
    for (k1, l1), (k2, l2) in itertools.combinations(reps, 2):
        if k1[0] == k2[0] and l1.size == l2.size:
            assert not find_isomorphisms(l1, l2, limit=1)


# -- output ------------------------------------------------------------------

def test_dot_output():
    lat = build_lattice(diamond())
    dot = to_dot(lat)
    assert dot.startswith("graph lattice {") and dot.rstrip().endswith("}")
    assert dot.count(" -- ") == 4
    assert 'n2 [label="1: <v>", style=filled' in dot or "fillcolor" in dot
    assert dot == to_dot(build_lattice(diamond()))


def test_json_output():
    lat = build_lattice(single_chain())
    d = to_json(lat)
    json.dumps(d)
    assert d["p"] == 2 and d["dim"] == 3 and len(d["nodes"]) == 8
    assert sum(n["kernel"] for n in d["nodes"]) == 1
    assert d["nodes"][d["kernel_node"]]["text"] == "<v1, v2>"
    assert sorted(map(tuple, d["covers"])) == sorted(lat.covers)
