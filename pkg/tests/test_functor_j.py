"""The cosimplicial family, Yoneda compatibility, restriction, Kan jobs."""

import pytest

from segalcat.functor_j import (
    ConstructionError,
    KanBounds,
    build_J,
    build_J_O,
    degeneracy_morphism,
    face_morphism,
    j_morphism,
    jo_morphism,
    kan_extend,
    kan_unit,
    restrict,
    restrict_O,
    yoneda_compat,
)
from segalcat.nerves import nerve_category, nerve_free_monoid, nerve_monoid
from segalcat.simplicial import iso_check, validate
from segalcat.spaces import (
    labeled_simplex,
    space_iso_check,
    transpose,
    validate_space,
)
from segalcat.theories import (
    Word,
    algebra_of_monoid,
    compose_theory,
    cyclic_monoid,
    enumerate_words,
    evaluate_word,
    linear_category,
    make_monoid,
    represented_diagram_C,
    represented_diagram_M,
    sort_of_tuple,
)
from segalcat.util import monotone_maps


class TestBuildJ:
    def test_identities_up_to_five(self):
        build_J(5)  # raises ConstructionError on any failure

    def test_paper_coface_values(self):
        # multiplying coface on the one-generator free monoid
        d1 = face_morphism(2, 1)
        assert d1.components == (Word(2, (1, 2)),)
        # the outer coface keeps the single generator
        d2 = face_morphism(2, 2)
        assert d2.components == (Word(2, (1,)),)
        d0 = face_morphism(2, 0)
        assert d0.components == (Word(2, (2,)),)

    def test_codegeneracy_values(self):
        s0 = degeneracy_morphism(1, 0)
        assert s0.components == (Word(1, ()), Word(1, (1,)))

    def test_codegeneracy_search_is_unique(self):
        # derive the codegeneracy rule instead of trusting the formula: the
        # unique pair of generator images of length <= 1 whose precomposition
        # reproduces the nerve degeneracy s_0 on every monoid in a probe set
        monoids = [cyclic_monoid(2), cyclic_monoid(3)]
        candidates = []
        words = [w for w in enumerate_words(1, 1)]
        for w1 in words:
            for w2 in words:
                ok = True
                for M in monoids:
                    nerve = nerve_monoid(M, 2)
                    for a in M.elements:
                        got = (
                            evaluate_word(w1, M, (a,)),
                            evaluate_word(w2, M, (a,)),
                        )
                        if got != nerve.space.degeneracy(1, 0, (a,)):
                            ok = False
                if ok:
                    candidates.append((w1, w2))
        assert candidates == [(Word(1, ()), Word(1, (1,)))]
        assert degeneracy_morphism(1, 0).components == candidates[0]

    def test_j_morphism_functorial(self):
        # composition of monotone maps matches substitution composition
        for m in range(3):
            for mid in range(3):
                for last in range(3):
                    for a in monotone_maps(mid, m):
                        for b in monotone_maps(last, mid):
                            composite = tuple(a[v] for v in b)
                            lhs = j_morphism(composite, m)
                            rhs = compose_theory(j_morphism(a, m), j_morphism(b, mid))
                            assert lhs == rhs


class TestYoneda:
    def test_trivial_monoid(self):
        rep = yoneda_compat(cyclic_monoid(1), 3)
        assert rep.orientation == "ambiguous"

    def test_z2_standard_orientation(self):
        rep = yoneda_compat(cyclic_monoid(2), 3)
        assert rep.orientation == "standard"
        assert all(i in m for (n, i), m in rep.face_pairing.items())

    def test_idempotent_monoid(self):
        # three-element commutative idempotent monoid: max(a, b)
        elems = (0, 1, 2)
        table = {(a, b): max(a, b) for a in elems for b in elems}
        M = make_monoid(elems, 0, table)
        rep = yoneda_compat(M, 3)
        assert rep.orientation == "standard"


class TestRestrict:
    def test_restrict_algebra_is_transposed_nerve(self):
        M = cyclic_monoid(2)
        alg = algebra_of_monoid(M, 3, inner_trunc=1)
        R = restrict(alg)
        T = transpose(nerve_monoid(M, 3).space, inner_trunc=1)
        assert space_iso_check(R, T).found

    def test_restrict_represented_is_transposed_free_nerve(self):
        for k in (0, 1, 2):
            D = represented_diagram_M(k, 3, 3, inner_trunc=1)
            R = restrict(D)
            T = transpose(nerve_free_monoid(k, 3, 3).space, inner_trunc=1)
            res = space_iso_check(R, T)
            assert res.found, res.reason

    def test_restrict_terminal(self):
        D = represented_diagram_M(0, 2, 2, inner_trunc=1)
        R = restrict(D)
        assert all(len(R.grid(m, b)) == 1 for m in range(3) for b in range(2))

    def test_rows_validate(self):
        D = represented_diagram_M(2, 3, 3, inner_trunc=1)
        R = restrict(D)
        assert validate_space(R).ok


class TestKan:
    def test_terminal_gives_terminal_certified(self):
        X = labeled_simplex(0, ("*",), ("*",), 3, inner_trunc=1)
        job = kan_extend(X, KanBounds(2, 2, 2))
        assert job.certified
        for n in range(3):
            assert len(job.value(n).level(0)) == 1
            assert validate(job.value(n)).ok

    def test_degenerate_rows_give_terminal(self):
        # reduced object with nothing nondegenerate above degree zero
        X = labeled_simplex(0, ("*",), ("*",), 3, inner_trunc=1)
        job = kan_extend(X, KanBounds(2, 2, 2))
        assert all(len(job.value(n).level(b)) == 1 for n in range(3) for b in range(2))

    def test_unit_exists_and_commutes(self):
        X = labeled_simplex(1, ("*", "*"), ("*",), 3, inner_trunc=1)
        job = kan_extend(X, KanBounds(2, 2, 2))
        rows = kan_unit(X, job)
        for m, rm in enumerate(rows):
            report_ok = all(
                rm.components[b][xi] in job.value(m).level(b)
                for b in range(X.inner_truncation + 1)
                for xi in X.grid(m, b)
            )
            assert report_ok
        # naturality with respect to the outer faces within range
        for m in range(1, 3):
            for i in range(m + 1):
                f = face_morphism(m, i)
                action = job.act_partial(f)
                for b in range(X.inner_truncation + 1):
                    for xi in X.grid(m, b):
                        lhs = action[b].get(rows[m].components[b][xi])
                        rhs = rows[m - 1].components[b][X.outer_face(m, i, b, xi)]
                        if lhs is not None:
                            assert lhs == rhs

    def test_truncation_guard(self):
        X = labeled_simplex(1, ("*", "*"), ("*",), 2, inner_trunc=1)
        with pytest.raises(ValueError):
            kan_extend(X, KanBounds(2, 4, 2), certify=False)


class TestBuildJO:
    def test_one_object_reduces_to_monoid_case(self):
        JO = build_J_O(("*",), 3)
        J = build_J(3)
        for (n, x, i), phi in JO.face.items():
            words = tuple(
                Word(n, tuple(e + 1 for e in p.edges)) for p in phi.components
            )
            assert words == J.face[(n, i)].components

    def test_two_object_identities(self):
        build_J_O(("a", "b"), 3)  # verification happens inside

    def test_face_acts_by_edge_composition(self):
        JO = build_J_O(("a", "b", "c"), 2)
        phi = JO.face[(2, ("a", "b", "c"), 1)]
        src_sort, _ = sort_of_tuple(("a", "b", "c"))
        tgt_sort, _ = sort_of_tuple(("a", "c"))
        assert phi.source_sort == src_sort
        assert phi.target_sort == tgt_sort
        (path,) = phi.components
        assert path.start == "a" and len(path.edges) == 2

    def test_restrict_represented_C_matches_nerve(self):
        O = ("a", "b")
        x = ("a", "b", "a")
        D = represented_diagram_C(2, x, O, 3, arity_max=2, inner_trunc=1)
        R = restrict_O(D, 2)
        assert validate_space(R).ok
        Nerve = nerve_category(linear_category(x, O, 3), 2)
        T = transpose(Nerve.space, inner_trunc=1)
        res = space_iso_check(R, T)
        assert res.found, res.reason
