"""Finite, level-truncated simplicial sets.

A truncated simplicial set stores explicit finite sets of simplex
identifiers for each level 0..N together with total face and degeneracy
maps between adjacent levels.  Degenerate simplices are stored explicitly;
nothing is reconstructed on demand.  All operations are pure and return
new objects; identifiers are opaque and compared with ``util.sort_key``.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .util import UnionFind, monotone_maps, ordered, sort_key


@dataclass(eq=False)
class TruncatedSimplicialSet:
    """Levels 0..truncation with faces d_i (k>=1) and degeneracies s_i (k<N).

    faces[(k, i)] maps level k to level k-1 for 0 <= i <= k.
    degeneracies[(k, i)] maps level k to level k+1 for 0 <= i <= k.
    """

    truncation: int
    levels: tuple
    faces: dict
    degeneracies: dict

    def level(self, k):
        return self.levels[k]

    def face(self, k, i, x):
        return self.faces[(k, i)][x]

    def degeneracy(self, k, i, x):
        return self.degeneracies[(k, i)][x]

    def cardinalities(self):
        return tuple(len(s) for s in self.levels)

    def degenerate_ids(self, k):
        """Identifiers at level k that are hit by some degeneracy map."""
        if k == 0:
            return frozenset()
        hit = set()
        for i in range(k):
            hit.update(self.degeneracies[(k - 1, i)].values())
        return frozenset(hit)

    def nondegenerate(self, k):
        return ordered(self.levels[k] - self.degenerate_ids(k))

    def nondegenerate_counts(self):
        return tuple(len(self.nondegenerate(k)) for k in range(self.truncation + 1))

    def vertex(self, k, j, x):
        """The j-th vertex of a level-k simplex (image of [0] -> [k] at j)."""
        return apply_monotone(self, (j,), k, x)


@dataclass(eq=False)
class SimplicialMap:
    """Levelwise map between truncated simplicial sets of equal truncation."""

    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    components: tuple  # components[k] : dict id -> id

    def apply(self, k, x):
        return self.components[k][x]


class MapError(ValueError):
    pass


def _check_shapes(trunc, levels, faces, degeneracies):
    if trunc < 0:
        raise ValueError("truncation must be nonnegative")
    if len(levels) != trunc + 1:
        raise ValueError("levels length does not match truncation")
    for k in range(1, trunc + 1):
        for i in range(k + 1):
            if (k, i) not in faces:
                raise ValueError(f"missing face map ({k},{i})")
    for k in range(trunc):
        for i in range(k + 1):
            if (k, i) not in degeneracies:
                raise ValueError(f"missing degeneracy map ({k},{i})")


def make_sset(trunc, levels, faces, degeneracies):
    levels = tuple(frozenset(s) for s in levels)
    _check_shapes(trunc, levels, faces, degeneracies)
    return TruncatedSimplicialSet(trunc, levels, dict(faces), dict(degeneracies))


def discrete(points, trunc):
    """Constant simplicial set: the set `points` at every level, identity maps."""
    pts = frozenset(points)
    ident = {x: x for x in pts}
    levels = [pts for _ in range(trunc + 1)]
    faces = {(k, i): dict(ident) for k in range(1, trunc + 1) for i in range(k + 1)}
    degs = {(k, i): dict(ident) for k in range(trunc) for i in range(k + 1)}
    return make_sset(trunc, levels, faces, degs)


def empty_sset(trunc):
    return make_sset(
        trunc,
        [frozenset() for _ in range(trunc + 1)],
        {(k, i): {} for k in range(1, trunc + 1) for i in range(k + 1)},
        {(k, i): {} for k in range(trunc) for i in range(k + 1)},
    )


def generate(kind, n, k=None, trunc=None):
    """Standard generators: full simplex, its boundary, or a horn.

    Simplices at level j are the monotone maps [j] -> [n], stored as value
    tuples.  The boundary drops every simplex whose image is all of [n]; the
    horn with index k additionally drops those whose image is [n] minus {k}.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if trunc is None:
        trunc = n
    if kind == "horn":
        if n < 1:
            raise ValueError("horn needs n >= 1")
        if k is None or not 0 <= k <= n:
            raise ValueError(f"horn index k={k} out of range for n={n}")

    def keep(t):
        image = set(t)
        if kind == "simplex":
            return True
        missing = set(range(n + 1)) - image
        if kind == "boundary":
            return bool(missing)
        if kind == "horn":
            return bool(missing - {k})
        raise ValueError(f"unknown kind {kind!r}")

    levels = [frozenset(t for t in monotone_maps(j, n) if keep(t)) for j in range(trunc + 1)]
    faces = {}
    for j in range(1, trunc + 1):
        for i in range(j + 1):
            faces[(j, i)] = {t: t[:i] + t[i + 1 :] for t in levels[j]}
    degs = {}
    for j in range(trunc):
        for i in range(j + 1):
            degs[(j, i)] = {t: t[: i + 1] + t[i:] for t in levels[j]}
    return make_sset(trunc, levels, faces, degs)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    level: int
    indices: tuple
    simplex: object
    detail: str = ""


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, level, indices, simplex, detail=""):
        self.violations.append(Violation(kind, level, tuple(indices), simplex, detail))

    def summary(self):
        if self.ok:
            return "valid"
        lines = [f"{len(self.violations)} violation(s):"]
        for v in self.violations[:20]:
            lines.append(f"  {v.kind} at level {v.level}, indices {v.indices}, simplex {v.simplex!r} {v.detail}")
        if len(self.violations) > 20:
            lines.append(f"  ... and {len(self.violations) - 20} more")
        return "\n".join(lines)


def _map_total(report, X, table, k, i, src_level, dst_level, name):
    mapping = table[(k, i)]
    for x in ordered(X.levels[src_level]):
        if x not in mapping:
            report.add(f"{name}-missing", src_level, (k, i), x)
        elif mapping[x] not in X.levels[dst_level]:
            report.add(f"{name}-target", src_level, (k, i), x, f"-> {mapping[x]!r}")


def validate(X):
    """Check totality, simplicial identities, degeneracy injectivity and
    uniqueness of the degenerate normal form, within the truncation."""
    report = ValidationReport()
    N = X.truncation

    for k in range(1, N + 1):
        for i in range(k + 1):
            _map_total(report, X, X.faces, k, i, k, k - 1, "face")
    for k in range(N):
        for i in range(k + 1):
            _map_total(report, X, X.degeneracies, k, i, k, k + 1, "degeneracy")
    if not report.ok:
        return report  # identities would only cascade the same defects

    # d_i d_j = d_{j-1} d_i for i < j
    for k in range(2, N + 1):
        for j in range(1, k + 1):
            for i in range(j):
                for x in X.levels[k]:
                    if X.face(k - 1, i, X.face(k, j, x)) != X.face(k - 1, j - 1, X.face(k, i, x)):
                        report.add("face-face", k, (i, j), x)

    # s_i s_j = s_{j+1} s_i for i <= j
    for k in range(N - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                for x in X.levels[k]:
                    if X.degeneracy(k + 1, i, X.degeneracy(k, j, x)) != X.degeneracy(
                        k + 1, j + 1, X.degeneracy(k, i, x)
                    ):
                        report.add("degeneracy-degeneracy", k, (i, j), x)

    # d_i s_j: three cases
    for k in range(N):
        for j in range(k + 1):
            for i in range(k + 2):
                for x in X.levels[k]:
                    lhs = X.face(k + 1, i, X.degeneracy(k, j, x))
                    if i == j or i == j + 1:
                        rhs = x
                    elif i < j:
                        rhs = X.degeneracy(k - 1, j - 1, X.face(k, i, x))
                    else:
                        rhs = X.degeneracy(k - 1, j, X.face(k, i - 1, x))
                    if lhs != rhs:
                        report.add("face-degeneracy", k, (i, j), x)

    for k in range(N):
        for i in range(k + 1):
            seen = {}
            for x in ordered(X.levels[k]):
                y = X.degeneracy(k, i, x)
                if y in seen:
                    report.add("degeneracy-injectivity", k, (i,), x, f"collides with {seen[y]!r}")
                seen[y] = x

    if report.ok:
        _check_unique_normal_form(X, report)
    return report


def _sigma(k, i):
    """The surjection [k] -> [k-1] hitting i twice, as a value tuple."""
    return tuple(min(j, i) if j <= i + 1 else j - 1 for j in range(k + 1))


def _compose_monotone(f, g):
    """f after g: g : [a] -> [b], f : [b] -> [c]."""
    return tuple(f[v] for v in g)


def normal_forms(X):
    """Every (core_level, core_id, surjection) presentation of each simplex
    as an iterated degeneracy of a nondegenerate one, computed bottom-up.

    Returns dict (k, x) -> frozenset of presentations.  A well-formed object
    has exactly one per simplex.
    """
    N = X.truncation
    inverse = {}
    for k in range(N):
        for i in range(k + 1):
            inv = {}
            for y, image in X.degeneracies[(k, i)].items():
                inv.setdefault(image, []).append(y)
            inverse[(k, i)] = inv
    forms = {}
    for k in range(N + 1):
        for x in X.levels[k]:
            witnesses = []
            if k >= 1:
                for i in range(k):
                    for y in inverse[(k - 1, i)].get(x, ()):
                        witnesses.append((i, y))
            if not witnesses:
                forms[(k, x)] = frozenset({(k, x, tuple(range(k + 1)))})
            else:
                result = set()
                for i, y in witnesses:
                    for lvl, core, phi in forms[(k - 1, y)]:
                        result.add((lvl, core, _compose_monotone(phi, _sigma(k, i))))
                forms[(k, x)] = frozenset(result)
    return forms


def _check_unique_normal_form(X, report):
    forms = normal_forms(X)
    for k in range(X.truncation + 1):
        for x in ordered(X.levels[k]):
            decs = forms[(k, x)]
            if len(decs) != 1:
                report.add(
                    "normal-form",
                    k,
                    (),
                    x,
                    f"{len(decs)} distinct degeneracy presentations",
                )


def ez_core(X, k, x, _forms=None):
    """The unique (core_level, core_id, surjection) normal form of x."""
    forms = _forms if _forms is not None else normal_forms(X)
    decs = forms[(k, x)]
    if len(decs) != 1:
        raise ValueError(f"simplex {x!r} at level {k} has {len(decs)} normal forms")
    return next(iter(decs))


# ---------------------------------------------------------------------------
# simplicial maps


def make_map(source, target, components):
    if source.truncation != target.truncation:
        raise MapError("source and target truncations differ")
    return SimplicialMap(source, target, tuple(dict(c) for c in components))


def identity_map(X):
    return make_map(X, X, [{x: x for x in lvl} for lvl in X.levels])


def compose_maps(f, g):
    """g after f (first f, then g)."""
    if f.target is not g.source and f.target.levels != g.source.levels:
        raise MapError("maps do not compose")
    comps = [
        {x: g.components[k][y] for x, y in f.components[k].items()}
        for k in range(f.source.truncation + 1)
    ]
    return make_map(f.source, g.target, comps)


def validate_map(f):
    """Totality plus commutation with every face and degeneracy map."""
    report = ValidationReport()
    X, Y = f.source, f.target
    if X.truncation != Y.truncation:
        report.add("truncation", 0, (), None, "source/target truncations differ")
        return report
    N = X.truncation
    for k in range(N + 1):
        for x in ordered(X.levels[k]):
            if x not in f.components[k]:
                report.add("map-missing", k, (), x)
            elif f.components[k][x] not in Y.levels[k]:
                report.add("map-target", k, (), x, f"-> {f.components[k][x]!r}")
    if not report.ok:
        return report
    for k in range(1, N + 1):
        for i in range(k + 1):
            for x in X.levels[k]:
                if f.components[k - 1][X.face(k, i, x)] != Y.face(k, i, f.components[k][x]):
                    report.add("map-face", k, (i,), x)
    for k in range(N):
        for i in range(k + 1):
            for x in X.levels[k]:
                if f.components[k + 1][X.degeneracy(k, i, x)] != Y.degeneracy(
                    k, i, f.components[k][x]
                ):
                    report.add("map-degeneracy", k, (i,), x)
    return report


def apply_monotone(X, phi, k, x):
    """Action of a monotone map phi: [m] -> [k] on a level-k simplex.

    Factors phi as faces (for skipped values, largest first) followed by
    degeneracies (for repeats), matching the usual structure-map calculus.
    """
    m = len(phi) - 1
    if not all(0 <= v <= k for v in phi) or any(phi[i] > phi[i + 1] for i in range(m)):
        raise ValueError(f"not a monotone map into [{k}]: {phi}")
    image = sorted(set(phi))
    cur, lvl = x, k
    for v in sorted(set(range(k + 1)) - set(image), reverse=True):
        cur = X.face(lvl, v, cur)
        lvl -= 1
    # now cur sits at level len(image)-1; re-index phi through the image
    rank = {v: i for i, v in enumerate(image)}
    pi = tuple(rank[v] for v in phi)
    # peel duplicates from the right so earlier indices stay valid
    ops = []
    work = list(pi)
    while len(work) - 1 > len(set(work)) - 1:
        for j in range(len(work) - 1):
            if work[j] == work[j + 1]:
                ops.append(j)
                del work[j + 1]
                break
    for j in reversed(ops):
        cur = X.degeneracy(lvl, j, cur)
        lvl += 1
    return cur


# ---------------------------------------------------------------------------
# limits and colimits


@dataclass(eq=False)
class Pushout:
    space: TruncatedSimplicialSet
    left: SimplicialMap
    right: SimplicialMap


@dataclass(eq=False)
class Pullback:
    space: TruncatedSimplicialSet
    left: SimplicialMap
    right: SimplicialMap


def pushout(f, g):
    """Pushout of X <-f- A -g-> Y, computed levelwise by a union-find quotient
    of the tagged disjoint union.  Returns the space with both cocone maps."""
    if f.source is not g.source and f.source.levels != g.source.levels:
        raise ValueError("pushout legs must share a source")
    X, Y = f.target, g.target
    if X.truncation != Y.truncation or X.truncation != f.source.truncation:
        raise ValueError("mismatched truncations")
    result = diagram_colimit(
        {"A": f.source, "X": X, "Y": Y},
        [("A", "X", f), ("A", "Y", g)],
    )
    return Pushout(result.space, result.injections["X"], result.injections["Y"])


def pullback(f, g):
    """Pullback of X -f-> Z <-g- Y: levelwise pairs with equal images."""
    X, Y, Z = f.source, g.source, f.target
    if g.target is not Z and g.target.levels != Z.levels:
        raise ValueError("pullback legs must share a target")
    if X.truncation != Y.truncation or X.truncation != Z.truncation:
        raise ValueError("mismatched truncations")
    N = X.truncation
    levels = []
    for k in range(N + 1):
        levels.append(
            frozenset(
                (x, y)
                for x in X.levels[k]
                for y in Y.levels[k]
                if f.components[k][x] == g.components[k][y]
            )
        )
    faces = {
        (k, i): {(x, y): (X.face(k, i, x), Y.face(k, i, y)) for (x, y) in levels[k]}
        for k in range(1, N + 1)
        for i in range(k + 1)
    }
    degs = {
        (k, i): {(x, y): (X.degeneracy(k, i, x), Y.degeneracy(k, i, y)) for (x, y) in levels[k]}
        for k in range(N)
        for i in range(k + 1)
    }
    P = make_sset(N, levels, faces, degs)
    left = make_map(P, X, [{p: p[0] for p in lvl} for lvl in P.levels])
    right = make_map(P, Y, [{p: p[1] for p in lvl} for lvl in P.levels])
    return Pullback(P, left, right)


def product(X, Y):
    """Binary product: levelwise pairs with componentwise structure maps."""
    term = discrete({"*"}, X.truncation)
    to_term_x = make_map(X, term, [{x: "*" for x in lvl} for lvl in X.levels])
    to_term_y = make_map(Y, term, [{y: "*" for y in lvl} for lvl in Y.levels])
    return pullback(to_term_x, to_term_y)


@dataclass(eq=False)
class Colimit:
    space: TruncatedSimplicialSet
    injections: dict  # object name -> SimplicialMap


@dataclass(eq=False)
class Limit:
    space: TruncatedSimplicialSet
    projections: dict  # object name -> SimplicialMap


def diagram_colimit(objects, arrows):
    """Colimit of a finite diagram of simplicial sets.

    objects: name -> TruncatedSimplicialSet; arrows: (src, dst, map) triples.
    Elements are tagged (name, id) pairs merged by the arrow relations; class
    representatives are canonical minima, so output is deterministic.
    """
    truncs = {X.truncation for X in objects.values()}
    if len(truncs) != 1:
        raise ValueError("mismatched truncations in diagram")
    N = truncs.pop()
    reps = []
    for k in range(N + 1):
        uf = UnionFind()
        for name, X in objects.items():
            for x in X.levels[k]:
                uf.find((name, x))
        for src, dst, h in arrows:
            for x in objects[src].levels[k]:
                uf.union((src, x), (dst, h.components[k][x]))
        reps.append(uf)
    levels = [frozenset(uf.find(t) for t in uf.parent) for uf in reps]
    faces = {}
    for k in range(1, N + 1):
        for i in range(k + 1):
            table = {}
            for rep in levels[k]:
                name, x = rep
                table[rep] = reps[k - 1].find((name, objects[name].face(k, i, x)))
            faces[(k, i)] = table
    degs = {}
    for k in range(N):
        for i in range(k + 1):
            table = {}
            for rep in levels[k]:
                name, x = rep
                table[rep] = reps[k + 1].find((name, objects[name].degeneracy(k, i, x)))
            degs[(k, i)] = table
    space = make_sset(N, levels, faces, degs)
    injections = {}
    for name, X in objects.items():
        injections[name] = make_map(
            X, space, [{x: reps[k].find((name, x)) for x in X.levels[k]} for k in range(N + 1)]
        )
    return Colimit(space, injections)


def diagram_limit(objects, arrows):
    """Limit of a finite diagram: compatible tuples indexed in sorted name order."""
    truncs = {X.truncation for X in objects.values()}
    if len(truncs) != 1:
        raise ValueError("mismatched truncations in diagram")
    N = truncs.pop()
    names = sorted(objects)
    levels = []
    for k in range(N + 1):
        tuples = [()]
        for name in names:
            tuples = [t + (x,) for t in tuples for x in ordered(objects[name].levels[k])]
        good = []
        for t in tuples:
            assign = dict(zip(names, t))
            if all(
                h.components[k][assign[src]] == assign[dst] for src, dst, h in arrows
            ):
                good.append(t)
        levels.append(frozenset(good))
    faces = {}
    for k in range(1, N + 1):
        for i in range(k + 1):
            faces[(k, i)] = {
                t: tuple(objects[name].face(k, i, x) for name, x in zip(names, t))
                for t in levels[k]
            }
    degs = {}
    for k in range(N):
        for i in range(k + 1):
            degs[(k, i)] = {
                t: tuple(objects[name].degeneracy(k, i, x) for name, x in zip(names, t))
                for t in levels[k]
            }
    space = make_sset(N, levels, faces, degs)
    projections = {
        name: make_map(
            space, objects[name], [{t: t[idx] for t in lvl} for lvl in space.levels]
        )
        for idx, name in enumerate(names)
    }
    return Limit(space, projections)


# ---------------------------------------------------------------------------
# components


@dataclass(eq=False)
class Pi0:
    component: dict  # vertex -> canonical representative
    classes: tuple  # frozensets of vertices, deterministically ordered

    def __len__(self):
        return len(self.classes)


def pi0(X):
    """Components of the 1-skeleton: level 0 modulo d_0(e) ~ d_1(e)."""
    if X.truncation < 1:
        raise ValueError("pi0 needs truncation >= 1")
    uf = UnionFind()
    for v in X.levels[0]:
        uf.find(v)
    for e in X.levels[1]:
        uf.union(X.face(1, 0, e), X.face(1, 1, e))
    classes = uf.classes()
    component = {v: uf.find(v) for v in X.levels[0]}
    keys = ordered(classes)
    return Pi0(component, tuple(classes[k] for k in keys))


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass(eq=False)
class IsoResult:
    map: SimplicialMap | None
    reason: str | None = None

    @property
    def found(self):
        return self.map is not None


def _face_signature(X, k, x):
    return tuple(X.face(k, i, x) for i in range(k + 1))


def iso_check(X, Y):
    """Search for a levelwise bijection commuting with all structure maps.

    Degenerate simplices are forced by lower levels; nondegenerate ones are
    matched by their face signatures with backtracking.  Candidates are tried
    in (level, identifier) order so the result is deterministic.
    """
    if X.truncation != Y.truncation:
        raise ValueError("mismatched truncations")
    if X.cardinalities() != Y.cardinalities():
        return IsoResult(None, f"level cardinalities {X.cardinalities()} vs {Y.cardinalities()}")
    if X.nondegenerate_counts() != Y.nondegenerate_counts():
        return IsoResult(
            None,
            f"nondegenerate counts {X.nondegenerate_counts()} vs {Y.nondegenerate_counts()}",
        )
    N = X.truncation
    phi = [dict() for _ in range(N + 1)]
    nondeg_X = [X.nondegenerate(k) for k in range(N + 1)]
    nondeg_Y = [Y.nondegenerate(k) for k in range(N + 1)]

    def assign_level(k):
        if k > N:
            return True
        # degenerate simplices are forced by the level below
        forced = {}
        if k >= 1:
            for i in range(k):
                for y, image in X.degeneracies[(k - 1, i)].items():
                    target = Y.degeneracy(k - 1, i, phi[k - 1][y])
                    prev = forced.get(image)
                    if prev is not None and prev != target:
                        return False
                    forced[image] = target
        if len(set(forced.values())) != len(forced):
            return False
        phi[k].update(forced)
        used = set(forced.values())
        free = [x for x in nondeg_X[k] if x not in forced]
        buckets = {}
        for y in nondeg_Y[k]:
            key = _face_signature(Y, k, y) if k > 0 else ()
            buckets.setdefault(key, []).append(y)

        def place(idx):
            if idx == len(free):
                return assign_level(k + 1)
            x = free[idx]
            key = tuple(phi[k - 1][X.face(k, i, x)] for i in range(k + 1)) if k > 0 else ()
            for y in buckets.get(key, []):
                if y in used:
                    continue
                phi[k][x] = y
                used.add(y)
                if place(idx + 1):
                    return True
                used.discard(y)
                del phi[k][x]
            return False

        ok = place(0)
        if not ok:
            phi[k].clear()
        return ok

    if assign_level(0):
        f = make_map(X, Y, phi)
        report = validate_map(f)
        if not report.ok:
            raise AssertionError("iso search produced a non-simplicial map: " + report.summary())
        return IsoResult(f)
    return IsoResult(None, "backtracking search exhausted")


# ---------------------------------------------------------------------------
# canonical serialization


def canonical_relabel(X):
    """Rename identifiers to stable strings 'k:index' in sort_key order.

    Returns (relabelled set, per-level old->new dicts)."""
    renames = []
    for k in range(X.truncation + 1):
        # zero-padded so the canonical names themselves sort in assignment
        # order, making relabelling idempotent (export/import round trips
        # are byte-identical)
        renames.append(
            {x: f"{k}:{idx:06d}" for idx, x in enumerate(ordered(X.levels[k]))}
        )
    levels = [frozenset(r.values()) for r in renames]
    faces = {
        (k, i): {renames[k][x]: renames[k - 1][y] for x, y in X.faces[(k, i)].items()}
        for k in range(1, X.truncation + 1)
        for i in range(k + 1)
    }
    degs = {
        (k, i): {renames[k][x]: renames[k + 1][y] for x, y in X.degeneracies[(k, i)].items()}
        for k in range(X.truncation)
        for i in range(k + 1)
    }
    return make_sset(X.truncation, levels, faces, degs), renames


def to_document(X):
    """Plain JSON-ready document with canonical identifiers and ordering."""
    C, _ = canonical_relabel(X)
    doc = {
        "format": "simplicial_set",
        "truncation": C.truncation,
        "levels": [sorted(lvl, key=sort_key) for lvl in C.levels],
        "faces": {
            f"{k},{i}": {x: C.faces[(k, i)][x] for x in sorted(C.levels[k], key=sort_key)}
            for k in range(1, C.truncation + 1)
            for i in range(k + 1)
        },
        "degeneracies": {
            f"{k},{i}": {x: C.degeneracies[(k, i)][x] for x in sorted(C.levels[k], key=sort_key)}
            for k in range(C.truncation)
            for i in range(k + 1)
        },
    }
    return doc


def from_document(doc):
    if doc.get("format") != "simplicial_set":
        raise ValueError("not a simplicial_set document")
    trunc = doc["truncation"]
    levels = [frozenset(lvl) for lvl in doc["levels"]]
    faces = {}
    for key, table in doc["faces"].items():
        k, i = (int(p) for p in key.split(","))
        faces[(k, i)] = dict(table)
    degs = {}
    for key, table in doc["degeneracies"].items():
        k, i = (int(p) for p in key.split(","))
        degs[(k, i)] = dict(table)
    return make_sset(trunc, levels, faces, degs)
