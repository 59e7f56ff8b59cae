"""Nerve constructions against independent counting oracles."""

from math import comb

from segalcat.nerves import nerve_category, nerve_free_monoid, nerve_monoid
from segalcat.simplicial import validate
from segalcat.theories import cyclic_monoid, free_category, linear_category


class TestNerveMonoid:
    def test_trivial_monoid(self):
        N = nerve_monoid(cyclic_monoid(1), 3)
        assert N.space.cardinalities() == (1, 1, 1, 1)

    def test_z2_level_sizes(self):
        N = nerve_monoid(cyclic_monoid(2), 3)
        assert N.space.cardinalities() == (1, 2, 4, 8)
        assert validate(N.space).ok

    def test_inner_face_multiplies(self):
        M = cyclic_monoid(2)
        N = nerve_monoid(M, 3)
        for a in M.elements:
            for b in M.elements:
                assert N.space.face(2, 1, (a, b)) == (M.multiply(a, b),)

    def test_matches_direct_bar_identities(self):
        # independent check: outer faces drop ends, s inserts identity
        M = cyclic_monoid(3)
        N = nerve_monoid(M, 2)
        for a, b in [(x, y) for x in M.elements for y in M.elements]:
            assert N.space.face(2, 0, (a, b)) == (b,)
            assert N.space.face(2, 2, (a, b)) == (a,)
        for a in M.elements:
            assert N.space.degeneracy(1, 0, (a,)) == (M.identity, a)
            assert N.space.degeneracy(1, 1, (a,)) == (a, M.identity)


class TestNerveFreeMonoid:
    def test_stars_and_bars_counts(self):
        for L in range(1, 5):
            N = nerve_free_monoid(1, 3, L)
            for j in range(4):
                assert len(N.space.level(j)) == comb(j + L, j)

    def test_level_two_enumeration(self):
        N = nerve_free_monoid(1, 2, 2)
        pairs = N.space.level(2)
        assert len(pairs) == 6  # (n1, n2) with n1 + n2 <= 2

    def test_zero_generators(self):
        N = nerve_free_monoid(0, 3, 4)
        assert N.space.cardinalities() == (1, 1, 1, 1)

    def test_validates_and_weights(self):
        N = nerve_free_monoid(2, 3, 3)
        assert validate(N.space).ok
        for j in range(4):
            for t in N.space.level(j):
                assert N.weights[j][t] == sum(w.length for w in t) <= 3


class TestNerveCategory:
    def test_linear_graph_counts(self):
        C = free_category((0, 1, 2), [(0, 1), (1, 2)], 4)
        N = nerve_category(C, 3)
        assert len(N.space.level(1)) == 6
        assert len(N.space.level(2)) == 10
        assert validate(N.space).ok

    def test_level_two_composable_oracle(self):
        # brute-force composable pairs independently of the nerve code
        C = free_category((0, 1, 2), [(0, 1), (1, 2)], 4)
        morphisms = C.all_morphisms()
        pairs = [
            (p, q)
            for p in morphisms
            for q in morphisms
            if C.path_target(p) == q.start and p.length + q.length <= 4
        ]
        N = nerve_category(C, 2)
        assert len(N.space.level(2)) == len(pairs)

    def test_discrete_graph_constant(self):
        C = free_category(("a", "b"), [], 3)
        N = nerve_category(C, 3)
        assert N.space.cardinalities() == (2, 2, 2, 2)
        assert validate(N.space).ok

    def test_one_loop_matches_free_monoid(self):
        C = free_category(("a",), [("a", "a")], 3)
        Nc = nerve_category(C, 3)
        Nm = nerve_free_monoid(1, 3, 3)
        assert Nc.space.cardinalities() == Nm.space.cardinalities()
        assert validate(Nc.space).ok

    def test_zigzag_graph(self):
        C = linear_category(("a", "b", "a"), ("a", "b"), 3)
        N = nerve_category(C, 2)
        assert validate(N.space).ok

    def test_bar_strings(self):
        N = nerve_free_monoid(1, 2, 3)
        lbl = {N.bar_string(2, t) for t in N.space.level(2)}
        assert "(x1|x1)" in lbl or "(x1|x1^2)" in lbl
