"""Simplicial spaces, labeled simplices, spines, reduction, O-(co)limits."""

import pytest

from segalcat.nerves import nerve_free_monoid, nerve_monoid
from segalcat.simplicial import generate, make_map
from segalcat.spaces import (
    Diagram,
    as_precategory,
    collapse_degree_zero,
    colimit_O,
    constant_space,
    discrete_space,
    g_object,
    generating_object,
    identity_space_map,
    labeled_simplex,
    limit_O,
    make_space_map,
    outer_vertex_labels,
    reduce_space,
    space_iso_check,
    space_maps_equal,
    space_product,
    transpose,
    validate_space,
    validate_space_map,
)
from segalcat.theories import cyclic_monoid


class TestTranspose:
    def test_point(self):
        T = transpose(generate("simplex", 0, trunc=2))
        assert all(len(T.grid(m, b)) == 1 for m in range(3) for b in range(3))
        assert validate_space(T).ok

    def test_row_sizes_constant_in_inner_degree(self):
        X = generate("simplex", 1, trunc=2)
        T = transpose(X)
        for m in range(3):
            for b in range(3):
                assert len(T.grid(m, b)) == len(X.level(m))

    def test_nerve_z2_transposed(self):
        N = nerve_monoid(cyclic_monoid(2), 2)
        T = transpose(N.space, inner_trunc=2)
        assert all(len(T.grid(2, b)) == 4 for b in range(3))
        assert validate_space(T).ok


class TestLabeledSimplex:
    def test_point_object(self):
        P = labeled_simplex(0, ("*",), ("*",), 1)
        assert P.object_set == ("*",)
        assert all(len(P.grid(m, b)) == 1 for m in range(2) for b in range(2))

    def test_edge_with_extra_object(self):
        P = labeled_simplex(1, ("a", "b"), ("a", "b", "c"), 2)
        assert set(P.grid(0, 0)) == {"a", "b", "c"}
        assert P.outer_nondegenerate_counts() == (3, 1, 0)
        assert validate_space(P).ok

    def test_reduced_triangle_counts(self):
        P = labeled_simplex(2, ("a", "a", "a"), ("a",), 2)
        assert P.outer_nondegenerate_counts() == (1, 3, 1)
        assert validate_space(P).ok

    def test_label_outside_object_set(self):
        with pytest.raises(ValueError):
            labeled_simplex(1, ("a", "z"), ("a", "b"), 1)

    def test_vertex_labels(self):
        P = labeled_simplex(2, ("a", "b", "a"), ("a", "b"), 2)
        tops = [z for z in P.outer_nondegenerate(2, 0)]
        assert len(tops) == 1
        assert outer_vertex_labels(P, 2, 0, tops[0]) == ("a", "b", "a")


class TestSpine:
    def test_spine_of_edge_is_everything(self):
        G = g_object(1, ("a", "b"), ("a", "b"), 2)
        res = space_iso_check(G.precategory, G.ambient)
        assert res.found

    def test_reduced_spine_counts(self):
        G = g_object(2, ("*", "*", "*"), ("*",), 2)
        assert G.precategory.outer_nondegenerate_counts() == (1, 2, 0)
        assert validate_space(G.precategory).ok
        assert validate_space_map(G.inclusion).ok

    def test_alternating_labels(self):
        G = g_object(3, ("a", "b", "a", "b"), ("a", "b"), 3)
        edges = G.precategory.outer_nondegenerate(1, 0)
        assert len(edges) == 3
        labels = sorted(outer_vertex_labels(G.precategory, 1, 0, e) for e in edges)
        assert labels == [("a", "b"), ("a", "b"), ("b", "a")]

    def test_spine_needs_positive_length(self):
        with pytest.raises(ValueError):
            g_object(0, ("a",), ("a",), 1)


class TestReduce:
    def test_constant_space_on_edge(self):
        C = constant_space(generate("simplex", 1, trunc=1), 1)
        red = reduce_space(C)
        assert len(red.precategory.object_set) == 1
        assert validate_space(red.precategory).ok

    def test_idempotent_on_precategories(self):
        P = labeled_simplex(1, ("a", "b"), ("a", "b"), 2)
        red = reduce_space(P)
        assert space_iso_check(red.precategory, P).found

    def test_unit_is_a_space_map(self):
        C = constant_space(generate("boundary", 2, trunc=2), 2)
        red = reduce_space(C)
        assert validate_space_map(red.unit).ok
        assert len(red.precategory.object_set) == 1


class TestGeneratingObjects:
    def test_q00_over_point_is_point(self):
        Q = generating_object("Q", 0, 0, ("*",), ("*",), outer_trunc=1, inner_trunc=1)
        assert all(len(Q.grid(m, b)) == 1 for m in range(2) for b in range(2))

    def test_p11_degree_zero_is_objects(self):
        P = generating_object("P", 1, 1, ("a", "b"), ("a", "b"), outer_trunc=2, inner_trunc=2)
        assert set(P.grid(0, 0)) == {"a", "b"}
        assert validate_space(P).ok

    def test_q11_matches_direct_pushout_count(self):
        # independent oracle: |Q at (1,1)| from the defining pushout formula.
        # Q(1,1) = (Delta[1]_1 x B(1,1)) with pairs over the degree-zero part
        # collapsed to the object set.
        B = labeled_simplex(1, ("a", "b"), ("a", "b"), 2, inner_trunc=2)
        S = generate("simplex", 1, trunc=2)
        b11 = B.grid(1, 1)
        s1 = S.level(1)
        # elements of the degree-zero part inside row 1: outer degeneracies
        degenerate_of_labels = {
            B.outer_degeneracies[(0, 0)].components[1][o] for o in B.grid(0, 1)
        }
        collapsed = {(s, z) for s in s1 for z in b11 if z in degenerate_of_labels}
        expected = len(s1) * len(b11) - len(collapsed) + len(degenerate_of_labels & b11)
        Q = generating_object("Q", 1, 1, ("a", "b"), ("a", "b"), outer_trunc=2, inner_trunc=2)
        assert len(Q.grid(1, 1)) == expected
        assert validate_space(Q).ok

    def test_r_index_range(self):
        with pytest.raises(ValueError):
            generating_object("R", 1, 0, ("a",), ("a",), k=0)
        with pytest.raises(ValueError):
            generating_object("R", 2, 1, ("a", "b"), ("a", "b"), k=5)

    def test_r_validates(self):
        R = generating_object(
            "R", 2, 1, ("a", "b"), ("a", "b"), k=1, outer_trunc=2, inner_trunc=2
        )
        assert set(R.grid(0, 0)) == {"a", "b"}
        assert validate_space(R).ok


def _edge_diagram(copies, O=("a", "b")):
    objects = {f"e{i}": labeled_simplex(1, ("a", "b"), O, 2) for i in range(copies)}
    return Diagram(objects, [])


class TestLimitColimitO:
    def test_single_object_limit(self):
        D = Diagram({"x": labeled_simplex(1, ("a", "b"), ("a", "b"), 2)}, [])
        lim = limit_O(D)
        assert space_iso_check(lim.space, D.objects["x"]).found

    def test_product_degree_zero_is_diagonal(self):
        D = _edge_diagram(2)
        lim = limit_O(D)
        assert set(lim.space.grid(0, 0)) == {"a", "b"}
        assert validate_space(lim.space).ok
        for name, proj in lim.projections.items():
            assert validate_space_map(proj).ok

    def test_coproduct_of_two_edges(self):
        D = _edge_diagram(2)
        colim = colimit_O(D)
        assert set(colim.space.grid(0, 0)) == {"a", "b"}
        assert colim.space.outer_nondegenerate_counts() == (2, 2, 0)
        assert validate_space(colim.space).ok
        for inj in colim.injections.values():
            assert validate_space_map(inj).ok

    def test_single_object_colimit(self):
        D = Diagram({"x": labeled_simplex(1, ("a", "b"), ("a", "b"), 2)}, [])
        colim = colimit_O(D)
        assert space_iso_check(colim.space, D.objects["x"]).found

    def test_mismatched_object_sets_rejected(self):
        D = Diagram(
            {
                "x": labeled_simplex(1, ("a", "b"), ("a", "b"), 2),
                "y": labeled_simplex(1, ("a", "a"), ("a",), 2),
            },
            [],
        )
        with pytest.raises(ValueError):
            limit_O(D)

    def test_pushout_with_shared_edge_agrees_with_plain_colimit(self):
        # span whose legs are identity on objects: glue two triangles on an edge
        E = labeled_simplex(1, ("a", "b"), ("a", "b"), 2)
        T = labeled_simplex(2, ("a", "b", "b"), ("a", "b"), 2)
        # map E -> T onto the 01 edge: vertices a,b -> a,b
        comp_rows = []
        for m in range(3):
            comps = []
            for b in range(3):
                table = {}
                for z in E.grid(m, b):
                    table[z] = _edge_image(E, T, m, b, z)
                comps.append(table)
            comp_rows.append(make_map(E.rows[m], T.rows[m], comps))
        f = make_space_map(E, T, comp_rows)
        assert validate_space_map(f).ok
        D = Diagram({"e": E, "t1": T, "t2": T}, [("e", "t1", f), ("e", "t2", f)])
        colim = colimit_O(D)
        assert validate_space(colim.space).ok
        assert set(colim.space.grid(0, 0)) == {"a", "b"}


def _edge_image(E, T, m, b, z):
    """Send the labeled edge into the 01-edge of a labeled triangle."""
    if m == 0 or z in ("a", "b"):
        return z
    core = z
    # identifiers of labeled simplices are either labels or quotient classes
    # of monotone tuples; the 01 edge keeps monotone tuples unchanged
    return core


class TestSpaceProduct:
    def test_grid_sizes(self):
        A = discrete_space(("u", "v"), 1, 1)
        B = labeled_simplex(1, ("a", "b"), ("a", "b"), 1, inner_trunc=1)
        P, pa, pb = space_product(A, B)
        for m in range(2):
            for bb in range(2):
                assert len(P.grid(m, bb)) == 2 * len(B.grid(m, bb))
        assert validate_space(P).ok
        assert validate_space_map(pa).ok and validate_space_map(pb).ok


class TestSpaceIso:
    def test_identity_iso(self):
        P = labeled_simplex(2, ("a", "b", "a"), ("a", "b"), 2)
        res = space_iso_check(P, P)
        assert res.found
        assert space_maps_equal(res.map, identity_space_map(P))

    def test_mismatch_reported(self):
        P = labeled_simplex(1, ("a", "b"), ("a", "b"), 2)
        Q = labeled_simplex(1, ("a", "a"), ("a", "b"), 2)
        res = space_iso_check(P, Q)
        assert not res.found
        assert res.reason

    def test_transposed_nerves_iso_after_relabel(self):
        N = nerve_free_monoid(1, 2, 2)
        T1 = transpose(N.space, inner_trunc=1)
        T2 = transpose(N.space, inner_trunc=1)
        assert space_iso_check(T1, T2).found
