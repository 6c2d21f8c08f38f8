import itertools
import json
from fractions import Fraction

import pytest

from getk.boxes import (
    BipartiteBoxState,
    BoxState,
    InfeasibleError,
    Relabeling,
    SignallingError,
    VertexClass,
    affine_dimension,
    all_relabelings,
    canonical_entangled_vertex,
    canonical_product_vertex,
    classify_extremal,
    deterministic_boxes,
    enumerate_vertices,
    in_convex_hull,
    in_separable_tensor_product,
    is_extremal,
    is_generalized_unentangled_box,
    local_relabeling,
    marginals,
    no_signalling_polytope,
    relabeling_orbit,
)

F = Fraction
HALF = F(1, 2)

_SQUARE_PAIR_CACHE = {}


def square_pair():
    """Shared cone + vertex list for the (2,2)x(2,2) pair (enumeration is the slow part)."""
    if "v" not in _SQUARE_PAIR_CACHE:
        cone = no_signalling_polytope(2, 2, 2, 2)
        _SQUARE_PAIR_CACHE["v"] = (cone, enumerate_vertices(cone))
    return _SQUARE_PAIR_CACHE["v"]


def oracle_vertices():
    """Independent construction: deterministic tables and correlated boxes.

    Deterministic: i = alpha*k xor beta, j = gamma*l xor delta.
    Correlated: p = 1/2 on i xor j = k*l xor alpha*k xor beta*l xor gamma.
    """
    out = set()
    for alpha, beta, gamma, delta in itertools.product((0, 1), repeat=4):
        probs = []
        for k in range(2):
            for i in range(2):
                for l in range(2):
                    for j in range(2):
                        hit = i == (alpha * k) ^ beta and j == (gamma * l) ^ delta
                        probs.append(F(1) if hit else F(0))
        out.add(tuple(probs))
    assert len(out) == 16
    for alpha, beta, gamma in itertools.product((0, 1), repeat=3):
        probs = []
        for k in range(2):
            for i in range(2):
                for l in range(2):
                    for j in range(2):
                        hit = (i ^ j) == (k & l) ^ (alpha & k) ^ (beta & l) ^ gamma
                        probs.append(HALF if hit else F(0))
        out.add(tuple(probs))
    assert len(out) == 24
    return out


def displayed_entangled_matrix():
    return BipartiteBoxState.from_matrix([
        ["1/2", 0, "1/2", 0],
        [0, "1/2", 0, "1/2"],
        ["1/2", 0, 0, "1/2"],
        [0, "1/2", "1/2", 0],
    ])


def displayed_product_matrix():
    return BipartiteBoxState.from_matrix([
        [1, 0, 1, 0],
        [0, 0, 0, 0],
        [1, 0, 1, 0],
        [0, 0, 0, 0],
    ])


class TestBoxState:
    def test_valid(self):
        box = BoxState(2, 2, (F(1), F(0), HALF, HALF))
        assert box.prob(0, 0) == 1
        assert box.prob(1, 1) == HALF

    def test_normalization_enforced(self):
        with pytest.raises(InfeasibleError):
            BoxState(2, 2, (F(1), F(1), F(1), F(0)))

    def test_nonnegativity(self):
        with pytest.raises(InfeasibleError):
            BoxState(1, 2, (F(2), F(-1)))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            BoxState(1, 2, (0.5, 0.5))

    def test_extremality_is_determinism(self):
        assert BoxState(2, 2, (F(1), F(0), F(0), F(1))).is_extremal()
        assert not BoxState(2, 2, (HALF, HALF, F(1), F(0))).is_extremal()

    def test_deterministic_census(self):
        assert len(deterministic_boxes(2, 2)) == 4
        assert len(deterministic_boxes(2, 3)) == 9

    def test_tensor_factorizes(self):
        a = BoxState(2, 2, (F(1), F(0), HALF, HALF))
        b = BoxState(2, 2, (F(0), F(1), F(1), F(0)))
        prod = a.tensor(b)
        for i, j, k, l in itertools.product(range(2), repeat=4):
            assert prod.prob(i, j, k, l) == a.prob(i, k) * b.prob(j, l)


class TestBipartiteBoxState:
    def test_block_normalization_enforced(self):
        bad = [[1, 0, 1, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 0]]
        with pytest.raises(InfeasibleError):
            BipartiteBoxState.from_matrix(bad)

    def test_displayed_states_feasible(self):
        ent = displayed_entangled_matrix()
        assert ent.is_no_signalling()
        prod = displayed_product_matrix()
        assert prod.is_no_signalling()

    def test_canonical_constructors_match_displayed(self):
        assert canonical_entangled_vertex().probs == displayed_entangled_matrix().probs
        assert canonical_product_vertex().probs == displayed_product_matrix().probs

    def test_json_round_trip(self):
        ent = displayed_entangled_matrix()
        blob = json.dumps(ent.to_json_dict())
        back = BipartiteBoxState.from_json_dict(json.loads(blob))
        assert back.probs == ent.probs and back.shape == ent.shape


class TestMarginals:
    def test_product_vertex(self):
        a, b = marginals(displayed_product_matrix())
        assert a.probs == (F(1), F(0), F(1), F(0))
        assert b.probs == (F(1), F(0), F(1), F(0))

    def test_entangled_vertex(self):
        a, b = marginals(displayed_entangled_matrix())
        assert a.probs == (HALF,) * 4
        assert b.probs == (HALF,) * 4

    def test_product_recovers_factors(self):
        a = BoxState(2, 2, (F(1, 3), F(2, 3), HALF, HALF))
        b = BoxState(2, 2, (F(1), F(0), F(1, 4), F(3, 4)))
        got_a, got_b = marginals(a.tensor(b))
        assert got_a.probs == a.probs and got_b.probs == b.probs

    def test_signalling_detected(self):
        # Bob's outcome distribution depends on Alice's input
        bad = BipartiteBoxState.from_matrix([
            [1, 0, 1, 0],
            [0, 0, 0, 0],
            [0, 1, 1, 0],
            [0, 0, 0, 0],
        ])
        with pytest.raises(SignallingError):
            marginals(bad)
        assert not bad.is_no_signalling()


class TestPolytope:
    def test_affine_dimension(self):
        cone = no_signalling_polytope(2, 2, 2, 2)
        assert affine_dimension(cone) == 8

    def test_sizes_capped(self):
        with pytest.raises(ValueError):
            no_signalling_polytope(11, 10, 2, 2)

    def test_enumeration_matches_oracle(self):
        cone, verts = square_pair()
        assert len(verts) == 24
        assert {v.probs for v in verts} == oracle_vertices()

    def test_every_vertex_is_extremal_and_unique(self):
        cone, verts = square_pair()
        assert len({v.probs for v in verts}) == len(verts)
        for v in verts:
            assert is_extremal(v, cone)

    def test_enumeration_is_exact(self):
        for v in square_pair()[1]:
            assert all(isinstance(p, Fraction) for p in v.probs)

    def test_trivial_second_side_gives_square(self):
        cone = no_signalling_polytope(2, 2, 1, 1)
        verts = enumerate_vertices(cone)
        assert len(verts) == 4
        for v in verts:
            assert all(p in (F(0), F(1)) for p in v.probs)

    def test_classical_bit_pair_gives_simplex(self):
        cone = no_signalling_polytope(1, 2, 1, 2)
        verts = enumerate_vertices(cone)
        assert len(verts) == 4
        for v in verts:
            assert classify_extremal(v, cone) is VertexClass.PRODUCT


class TestExtremality:
    def test_displayed_entangled_is_extremal(self):
        assert is_extremal(displayed_entangled_matrix())

    def test_mixture_not_extremal(self):
        verts = square_pair()[1]
        mix = tuple((a + b) / 2 for a, b in zip(verts[0].probs, verts[1].probs))
        state = BipartiteBoxState(shape=(2, 2, 2, 2), probs=mix)
        assert not is_extremal(state)

    def test_uniform_interior_not_extremal(self):
        uniform = BipartiteBoxState(shape=(2, 2, 2, 2), probs=(F(1, 4),) * 16)
        assert not is_extremal(uniform)

    def test_signalling_input_rejected(self):
        bad = BipartiteBoxState.from_matrix([
            [1, 0, 1, 0],
            [0, 0, 0, 0],
            [0, 1, 1, 0],
            [0, 0, 0, 0],
        ])
        with pytest.raises(SignallingError):
            is_extremal(bad)


class TestClassification:
    def test_census(self):
        cone, verts = square_pair()
        classes = [classify_extremal(v, cone) for v in verts]
        assert sum(1 for c in classes if c is VertexClass.PRODUCT) == 16
        assert sum(1 for c in classes if c is VertexClass.ENTANGLED) == 8

    def test_displayed_states(self):
        assert classify_extremal(displayed_product_matrix()) is VertexClass.PRODUCT
        assert classify_extremal(displayed_entangled_matrix()) is VertexClass.ENTANGLED

    def test_product_vertices_factorize(self):
        cone, verts = square_pair()
        for v in verts:
            if classify_extremal(v, cone) is VertexClass.PRODUCT:
                a, b = marginals(v)
                assert a.tensor(b).probs == v.probs

    def test_either_marginal_extremal_implies_product(self):
        # for every enumerated vertex: one deterministic marginal forces factorization
        for v in square_pair()[1]:
            a, b = marginals(v)
            if a.is_extremal() or b.is_extremal():
                assert a.tensor(b).probs == v.probs

    def test_non_extremal_rejected(self):
        uniform = BipartiteBoxState(shape=(2, 2, 2, 2), probs=(F(1, 4),) * 16)
        with pytest.raises(ValueError):
            classify_extremal(uniform)


class TestRelabeling:
    def test_identity(self):
        st = displayed_entangled_matrix()
        ident = Relabeling.identity(2, 2)
        assert local_relabeling(st, ident, ident).probs == st.probs

    def test_group_size(self):
        assert len(list(all_relabelings(2, 2))) == 8

    def test_orbit_sizes(self):
        assert len(relabeling_orbit(canonical_entangled_vertex())) == 8
        assert len(relabeling_orbit(canonical_product_vertex())) == 16

    def test_orbits_partition_the_vertices(self):
        verts = {v.probs for v in square_pair()[1]}
        ent = {v.probs for v in relabeling_orbit(canonical_entangled_vertex())}
        prod = {v.probs for v in relabeling_orbit(canonical_product_vertex())}
        assert ent | prod == verts and not ent & prod

    def test_preserves_class_and_extremality(self):
        cone = no_signalling_polytope(2, 2, 2, 2)
        for st, cls in ((canonical_entangled_vertex(), VertexClass.ENTANGLED),
                        (canonical_product_vertex(), VertexClass.PRODUCT)):
            for ra in all_relabelings(2, 2):
                for rb in all_relabelings(2, 2):
                    moved = local_relabeling(st, ra, rb)
                    assert is_extremal(moved, cone)
                    assert classify_extremal(moved, cone) is cls

    def test_preserves_no_signalling(self):
        st = displayed_entangled_matrix()
        for ra in all_relabelings(2, 2):
            moved = local_relabeling(st, ra, Relabeling.identity(2, 2))
            assert moved.is_no_signalling()

    def test_malformed_spec(self):
        with pytest.raises(ValueError):
            Relabeling((0, 0), ((0, 1), (0, 1)))
        with pytest.raises(ValueError):
            local_relabeling(displayed_entangled_matrix(),
                             Relabeling((0,), ((0, 1),)), Relabeling.identity(2, 2))


class TestSeparability:
    def test_products_are_separable(self):
        a = BoxState(2, 2, (F(1, 3), F(2, 3), HALF, HALF))
        b = BoxState(2, 2, (F(1), F(0), F(1, 4), F(3, 4)))
        assert in_separable_tensor_product(a.tensor(b))

    def test_entangled_vertex_is_not(self):
        assert not in_separable_tensor_product(displayed_entangled_matrix())

    def test_mixture_of_product_vertices(self):
        cone, all_verts = square_pair()
        verts = [v for v in all_verts if classify_extremal(v, cone) is VertexClass.PRODUCT]
        mix = tuple(sum(v.probs[r] for v in verts[:4]) / 4 for r in range(16))
        assert in_separable_tensor_product(BipartiteBoxState(shape=(2, 2, 2, 2), probs=mix))

    def test_uniform_mixture_of_entangled_vertices_recorded(self):
        # no reference value exists; the exact LP decides (it is the uniform
        # table, a product of uniform marginals, hence separable)
        orbit = relabeling_orbit(canonical_entangled_vertex())
        mix = tuple(sum(v.probs[r] for v in orbit) / len(orbit) for r in range(16))
        state = BipartiteBoxState(shape=(2, 2, 2, 2), probs=mix)
        assert mix == (F(1, 4),) * 16
        assert in_separable_tensor_product(state)


class TestConvexHullMembership:
    def test_vertex_in_full_hull(self):
        cone, verts = square_pair()
        assert in_convex_hull(displayed_entangled_matrix(), verts)

    def test_entangled_vertex_outside_product_hull(self):
        dets = deterministic_boxes(2, 2)
        products = [a.tensor(b) for a in dets for b in dets]
        assert not in_convex_hull(displayed_entangled_matrix(), products)

    def test_mixture_in_two_vertex_hull(self):
        cone, verts = square_pair()
        mix = tuple((a + b) / 2 for a, b in zip(verts[0].probs, verts[5].probs))
        state = BipartiteBoxState(shape=(2, 2, 2, 2), probs=mix)
        assert in_convex_hull(state, [verts[0], verts[5]])
        # a vertex is never a mixture of the others
        assert not in_convex_hull(verts[0], verts[1:])

    def test_shape_mismatch(self):
        small = deterministic_boxes(1, 2)[0].tensor(deterministic_boxes(1, 2)[0])
        with pytest.raises(ValueError):
            in_convex_hull(displayed_entangled_matrix(), [small])

    def test_empty_hull(self):
        assert not in_convex_hull(displayed_entangled_matrix(), [])


class TestGeneralizedUnentangledBox:
    def test_product_vertices(self):
        assert is_generalized_unentangled_box(canonical_product_vertex())

    def test_entangled_vertices(self):
        for v in relabeling_orbit(canonical_entangled_vertex()):
            assert not is_generalized_unentangled_box(v)

    def test_mixture_of_two_product_vertices(self):
        dets = deterministic_boxes(2, 2)
        v1 = dets[0].tensor(dets[1])
        v2 = dets[2].tensor(dets[3])
        mix = tuple((a + b) / 2 for a, b in zip(v1.probs, v2.probs))
        assert is_generalized_unentangled_box(BipartiteBoxState(shape=(2, 2, 2, 2), probs=mix))
