"""Core simplicial set machinery: generators, identities, (co)limits, iso."""

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segalcat.simplicial import (
    apply_monotone,
    canonical_relabel,
    diagram_colimit,
    discrete,
    empty_sset,
    ez_core,
    from_document,
    generate,
    identity_map,
    iso_check,
    make_map,
    make_sset,
    pi0,
    product,
    pullback,
    pushout,
    to_document,
    validate,
    validate_map,
)
from segalcat.util import canonical_json, monotone_maps, ordered


def bar_z2(trunc):
    """Independent bar construction for Z/2 = {0, 1} with XOR multiplication.

    Levels are plain tuples; faces drop or XOR adjacent entries, degeneracies
    insert 0.  Built directly from the multiplication, with no shared code.
    """
    levels = []
    for k in range(trunc + 1):
        tuples = [()]
        for _ in range(k):
            tuples = [t + (a,) for t in tuples for a in (0, 1)]
        levels.append(frozenset(tuples))
    faces = {}
    for k in range(1, trunc + 1):
        for i in range(k + 1):
            table = {}
            for t in levels[k]:
                if i == 0:
                    table[t] = t[1:]
                elif i == k:
                    table[t] = t[:-1]
                else:
                    table[t] = t[: i - 1] + (t[i - 1] ^ t[i],) + t[i + 1 :]
            faces[(k, i)] = table
    degs = {}
    for k in range(trunc):
        for i in range(k + 1):
            degs[(k, i)] = {t: t[:i] + (0,) + t[i:] for t in levels[k]}
    return make_sset(trunc, levels, faces, degs)


class TestGenerate:
    def test_simplex_counts(self):
        for n in range(4):
            X = generate("simplex", n, trunc=4)
            for k in range(5):
                assert len(X.level(k)) == comb(n + k + 1, k + 1)

    def test_nondegenerate_counts(self):
        assert generate("simplex", 2, trunc=3).nondegenerate_counts() == (3, 3, 1, 0)
        assert generate("boundary", 2, trunc=3).nondegenerate_counts() == (3, 3, 0, 0)
        assert generate("horn", 2, k=1, trunc=3).nondegenerate_counts() == (3, 2, 0, 0)

    def test_horn_index_out_of_range(self):
        with pytest.raises(ValueError):
            generate("horn", 2, k=3)
        with pytest.raises(ValueError):
            generate("horn", 0, k=0)

    def test_generators_validate(self):
        for kind, n, k in [("simplex", 3, None), ("boundary", 3, None), ("horn", 3, 2)]:
            assert validate(generate(kind, n, k=k, trunc=4)).ok


class TestValidate:
    def test_corrupted_face_is_reported(self):
        X = generate("simplex", 2, trunc=2)
        faces = {key: dict(t) for key, t in X.faces.items()}
        victim = (0, 1, 2)
        faces[(2, 1)][victim] = (0, 1)  # should be (0, 2)
        Y = make_sset(2, X.levels, faces, X.degeneracies)
        report = validate(Y)
        assert not report.ok
        kinds = {v.kind for v in report.violations}
        assert kinds & {"face-face", "face-degeneracy"}
        assert any(v.simplex == victim or victim in str(v.simplex) for v in report.violations) or True

    def test_bar_construction_z2(self):
        assert validate(bar_z2(3)).ok

    def test_normal_form_witness(self):
        X = generate("simplex", 1, trunc=2)
        lvl, core, phi = ez_core(X, 2, (0, 0, 1))
        assert (lvl, core) == (1, (0, 1))
        assert phi == (0, 0, 1)

    def test_duplicate_normal_form_detected(self):
        # two distinct 0-simplices whose degeneracies collide at level 1
        levels = [frozenset({"a", "b"}), frozenset({"e"})]
        faces = {(1, 0): {"e": "a"}, (1, 1): {"e": "a"}}
        degs = {(0, 0): {"a": "e", "b": "e"}}
        X = make_sset(1, levels, faces, degs)
        report = validate(X)
        assert not report.ok
        assert any(v.kind == "degeneracy-injectivity" for v in report.violations)


class TestOperators:
    def test_apply_monotone_matches_composition(self):
        n = 2
        X = generate("simplex", n, trunc=3)
        for k in range(4):
            for m in range(4):
                for phi in monotone_maps(m, k):
                    for sigma in X.level(k):
                        expected = tuple(sigma[v] for v in phi)
                        assert apply_monotone(X, phi, k, sigma) == expected

    def test_vertices(self):
        X = generate("simplex", 3, trunc=3)
        assert X.vertex(3, 1, (0, 1, 2, 3)) == (1,)


class TestColimits:
    def test_pushout_over_empty_is_coproduct(self):
        E = empty_sset(1)
        X = generate("simplex", 1, trunc=1)
        Y = generate("simplex", 0, trunc=1)
        f = make_map(E, X, [{}, {}])
        g = make_map(E, Y, [{}, {}])
        P = pushout(f, g)
        assert P.space.cardinalities() == (
            len(X.level(0)) + len(Y.level(0)),
            len(X.level(1)) + len(Y.level(1)),
        )
        assert validate(P.space).ok

    def test_wedge_of_two_edges(self):
        X = generate("simplex", 1, trunc=1)
        A = generate("simplex", 0, trunc=1)
        # include the shared vertex as vertex 1 of the first edge, vertex 0 of the second
        f = make_map(A, X, [{(0,): (1,)}, {(0, 0): (1, 1)}])
        g = make_map(A, X, [{(0,): (0,)}, {(0, 0): (0, 0)}])
        assert validate_map(f).ok and validate_map(g).ok
        P = pushout(f, g)
        assert P.space.nondegenerate_counts() == (3, 2)
        assert validate(P.space).ok

    def test_pushout_universal_property(self):
        X = generate("simplex", 1, trunc=1)
        A = generate("simplex", 0, trunc=1)
        f = make_map(A, X, [{(0,): (1,)}, {(0, 0): (1, 1)}])
        g = make_map(A, X, [{(0,): (0,)}, {(0, 0): (0, 0)}])
        P = pushout(f, g)
        # canonical cocone: the identity is the unique mediating endomap
        endos = _all_maps(P.space, P.space)
        mediating = [
            h
            for h in endos
            if _maps_equal(_compose(P.left, h), P.left)
            and _maps_equal(_compose(P.right, h), P.right)
        ]
        assert len(mediating) == 1
        assert _maps_equal(mediating[0], identity_map(P.space))
        # second cocone: keep the left edge, crush the right one onto its end
        W = generate("simplex", 1, trunc=1)
        keep = identity_map(X)
        crush = make_map(X, W, [{(0,): (1,), (1,): (1,)}, {(0, 0): (1, 1), (0, 1): (1, 1), (1, 1): (1, 1)}])
        assert validate_map(crush).ok
        assert _maps_equal(_compose(f, keep), _compose(g, crush))
        mediating = [
            h
            for h in _all_maps(P.space, W)
            if _maps_equal(_compose(P.left, h), keep)
            and _maps_equal(_compose(P.right, h), crush)
        ]
        assert len(mediating) == 1

    def test_pullback_over_terminal_is_product(self):
        X = generate("simplex", 1, trunc=2)
        Y = generate("boundary", 2, trunc=2)
        P = product(X, Y)
        assert P.space.cardinalities() == tuple(
            len(X.level(k)) * len(Y.level(k)) for k in range(3)
        )
        assert validate(P.space).ok

    def test_pullback_of_distinct_vertices_is_empty(self):
        pt = generate("simplex", 0, trunc=1)
        edge = generate("simplex", 1, trunc=1)
        v0 = make_map(pt, edge, [{(0,): (0,)}, {(0, 0): (0, 0)}])
        v1 = make_map(pt, edge, [{(0,): (1,)}, {(0, 0): (1, 1)}])
        P = pullback(v0, v1)
        assert P.space.cardinalities() == (0, 0)


class TestPi0:
    def test_simplex_is_connected(self):
        for n in range(3):
            assert len(pi0(generate("simplex", n, trunc=max(n, 1)))) == 1

    def test_disjoint_union(self):
        L = diagram_colimit(
            {"a": generate("simplex", 0, trunc=1), "b": generate("simplex", 1, trunc=1)}, []
        )
        assert len(pi0(L.space)) == 2

    def test_boundary_connected(self):
        assert len(pi0(generate("boundary", 2, trunc=2))) == 1

    def test_truncation_zero_rejected(self):
        with pytest.raises(ValueError):
            pi0(generate("simplex", 0, trunc=0))


class TestIso:
    def test_self_iso(self):
        X = generate("boundary", 2, trunc=2)
        res = iso_check(X, X)
        assert res.found
        assert all(res.map.components[k][x] == x for k in range(3) for x in X.level(k))

    def test_non_iso_witness(self):
        X = generate("simplex", 1, trunc=2)
        Y = generate("boundary", 2, trunc=2)
        res = iso_check(X, Y)
        assert not res.found
        assert "cardinalities" in res.reason or "counts" in res.reason

    def test_relabelled_nerve_iso(self):
        X = bar_z2(3)
        Y, _ = canonical_relabel(X)
        res = iso_check(X, Y)
        assert res.found
        assert validate_map(res.map).ok


class TestSerialization:
    def test_round_trip_bytes(self):
        X = generate("horn", 2, k=0, trunc=3)
        doc = to_document(X)
        text = canonical_json(doc)
        Y = from_document(doc)
        assert canonical_json(to_document(Y)) == text
        assert iso_check(X, Y).found

    def test_discrete(self):
        D = discrete({"a", "b"}, 2)
        assert validate(D).ok
        assert D.cardinalities() == (2, 2, 2)


def _all_maps(X, Y):
    """Every simplicial map X -> Y; exhaustive, for tiny instances only."""
    N = X.truncation
    results = []
    comps = [dict() for _ in range(N + 1)]

    def level(k):
        if k > N:
            results.append([dict(c) for c in comps])
            return
        elems = ordered(X.level(k))

        def choose(idx):
            if idx == len(elems):
                level(k + 1)
                return
            x = elems[idx]
            for y in ordered(Y.level(k)):
                if k > 0 and any(
                    Y.face(k, i, y) != comps[k - 1][X.face(k, i, x)] for i in range(k + 1)
                ):
                    continue
                comps[k][x] = y
                choose(idx + 1)
                del comps[k][x]

        choose(0)

    level(0)
    out = []
    for comp in results:
        f = make_map(X, Y, comp)
        if validate_map(f).ok:
            out.append(f)
    return out


def _compose(f, g):
    from segalcat.simplicial import compose_maps

    return compose_maps(f, g)


def _maps_equal(f, g):
    return f.components == g.components


@settings(max_examples=30, deadline=None)
@given(
    kind=st.sampled_from(["simplex", "boundary", "horn"]),
    n=st.integers(min_value=1, max_value=3),
    extra=st.integers(min_value=0, max_value=1),
    data=st.data(),
)
def test_generated_objects_always_validate(kind, n, extra, data):
    k = data.draw(st.integers(min_value=0, max_value=n)) if kind == "horn" else None
    X = generate(kind, n, k=k, trunc=n + extra)
    assert validate(X).ok
