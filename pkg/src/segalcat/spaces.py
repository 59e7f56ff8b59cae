"""Truncated bisimplicial sets and Segal precategories over a fixed object set.

A simplicial space is stored as a tuple of rows (each row an inner
simplicial set, one per outer degree) with outer faces and degeneracies as
simplicial maps between rows; bisimplicial commutation is exactly the
statement that those maps are simplicial.  A Segal precategory additionally
has its degree-zero row equal to the discrete simplicial set on the object
set, with the objects themselves as identifiers.
"""

from dataclasses import dataclass

from .simplicial import (
    ValidationReport,
    diagram_colimit,
    diagram_limit,
    discrete,
    generate,
    make_map,
    make_sset,
    pi0,
    pullback,
    validate,
    validate_map,
)
from .util import UnionFind, ordered, sort_key


@dataclass(eq=False)
class TruncatedSimplicialSpace:
    outer_truncation: int
    inner_truncation: int
    rows: tuple  # TruncatedSimplicialSet per outer degree
    outer_faces: dict  # (m, i) -> SimplicialMap rows[m] -> rows[m-1]
    outer_degeneracies: dict  # (m, i) -> SimplicialMap rows[m] -> rows[m+1]

    def grid(self, m, b):
        return self.rows[m].level(b)

    def grid_cardinalities(self):
        return tuple(row.cardinalities() for row in self.rows)

    def outer_face(self, m, i, b, x):
        return self.outer_faces[(m, i)].components[b][x]

    def outer_degeneracy(self, m, i, b, x):
        return self.outer_degeneracies[(m, i)].components[b][x]

    def outer_degenerate_ids(self, m, b):
        if m == 0:
            return frozenset()
        hit = set()
        for i in range(m):
            hit.update(self.outer_degeneracies[(m - 1, i)].components[b].values())
        return frozenset(hit)

    def outer_nondegenerate(self, m, b=0):
        return ordered(self.grid(m, b) - self.outer_degenerate_ids(m, b))

    def outer_nondegenerate_counts(self, b=0):
        return tuple(
            len(self.outer_nondegenerate(m, b)) for m in range(self.outer_truncation + 1)
        )

    def total_size(self):
        return sum(len(lvl) for row in self.rows for lvl in row.levels)


@dataclass(eq=False)
class SegalPrecategory(TruncatedSimplicialSpace):
    object_set: tuple = ()


@dataclass(eq=False)
class SpaceMap:
    source: TruncatedSimplicialSpace
    target: TruncatedSimplicialSpace
    row_maps: tuple  # SimplicialMap per outer degree

    def apply(self, m, b, x):
        return self.row_maps[m].components[b][x]


def make_space(outer_trunc, inner_trunc, rows, outer_faces, outer_degeneracies):
    rows = tuple(rows)
    if len(rows) != outer_trunc + 1:
        raise ValueError("row count must be outer truncation + 1")
    for row in rows:
        if row.truncation != inner_trunc:
            raise ValueError("rows must share the inner truncation")
    return TruncatedSimplicialSpace(outer_trunc, inner_trunc, rows, dict(outer_faces), dict(outer_degeneracies))


def as_precategory(space):
    """Check the degree-zero row is discrete with itself as the object set."""
    row0 = space.rows[0]
    objects = tuple(ordered(row0.level(0)))
    D = discrete(objects, space.inner_truncation)
    if tuple(row0.levels) != tuple(D.levels):
        raise ValueError("degree-zero row is not the discrete set of its vertices")
    for key, table in D.faces.items():
        if row0.faces[key] != table:
            raise ValueError("degree-zero inner faces are not the identity")
    for key, table in D.degeneracies.items():
        if row0.degeneracies[key] != table:
            raise ValueError("degree-zero inner degeneracies are not the identity")
    return SegalPrecategory(
        space.outer_truncation,
        space.inner_truncation,
        space.rows,
        space.outer_faces,
        space.outer_degeneracies,
        objects,
    )


def validate_space(X):
    """Rows, bisimplicial commutation (outer maps are simplicial maps), and
    the outer simplicial identities."""
    report = ValidationReport()
    for m, row in enumerate(X.rows):
        sub = validate(row)
        for v in sub.violations:
            report.add(f"inner-{v.kind}", v.level, (m,) + v.indices, v.simplex, v.detail)
    M = X.outer_truncation
    for m in range(1, M + 1):
        for i in range(m + 1):
            sub = validate_map(X.outer_faces[(m, i)])
            for v in sub.violations:
                report.add(f"outer-face-{v.kind}", v.level, (m, i), v.simplex, v.detail)
    for m in range(M):
        for i in range(m + 1):
            sub = validate_map(X.outer_degeneracies[(m, i)])
            for v in sub.violations:
                report.add(f"outer-degeneracy-{v.kind}", v.level, (m, i), v.simplex, v.detail)
    if not report.ok:
        return report

    N = X.inner_truncation
    for b in range(N + 1):
        for m in range(2, M + 1):
            for j in range(1, m + 1):
                for i in range(j):
                    for x in X.grid(m, b):
                        lhs = X.outer_face(m - 1, i, b, X.outer_face(m, j, b, x))
                        rhs = X.outer_face(m - 1, j - 1, b, X.outer_face(m, i, b, x))
                        if lhs != rhs:
                            report.add("outer-face-face", m, (i, j, b), x)
        for m in range(M - 1):
            for j in range(m + 1):
                for i in range(j + 1):
                    for x in X.grid(m, b):
                        lhs = X.outer_degeneracy(m + 1, i, b, X.outer_degeneracy(m, j, b, x))
                        rhs = X.outer_degeneracy(m + 1, j + 1, b, X.outer_degeneracy(m, i, b, x))
                        if lhs != rhs:
                            report.add("outer-degeneracy-degeneracy", m, (i, j, b), x)
        for m in range(M):
            for j in range(m + 1):
                for i in range(m + 2):
                    for x in X.grid(m, b):
                        lhs = X.outer_face(m + 1, i, b, X.outer_degeneracy(m, j, b, x))
                        if i == j or i == j + 1:
                            rhs = x
                        elif i < j:
                            rhs = X.outer_degeneracy(m - 1, j - 1, b, X.outer_face(m, i, b, x))
                        else:
                            rhs = X.outer_degeneracy(m - 1, j, b, X.outer_face(m, i - 1, b, x))
                        if lhs != rhs:
                            report.add("outer-face-degeneracy", m, (i, j, b), x)
    return report


def make_space_map(source, target, row_maps):
    return SpaceMap(source, target, tuple(row_maps))


def validate_space_map(f):
    report = ValidationReport()
    X, Y = f.source, f.target
    for m, rm in enumerate(f.row_maps):
        sub = validate_map(rm)
        for v in sub.violations:
            report.add(f"row-{v.kind}", v.level, (m,) + v.indices, v.simplex, v.detail)
    if not report.ok:
        return report
    N = X.inner_truncation
    for m in range(1, X.outer_truncation + 1):
        for i in range(m + 1):
            for b in range(N + 1):
                for x in X.grid(m, b):
                    lhs = f.row_maps[m - 1].components[b][X.outer_face(m, i, b, x)]
                    rhs = Y.outer_face(m, i, b, f.row_maps[m].components[b][x])
                    if lhs != rhs:
                        report.add("space-map-outer-face", m, (i, b), x)
    for m in range(X.outer_truncation):
        for i in range(m + 1):
            for b in range(N + 1):
                for x in X.grid(m, b):
                    lhs = f.row_maps[m + 1].components[b][X.outer_degeneracy(m, i, b, x)]
                    rhs = Y.outer_degeneracy(m, i, b, f.row_maps[m].components[b][x])
                    if lhs != rhs:
                        report.add("space-map-outer-degeneracy", m, (i, b), x)
    return report


def identity_space_map(X):
    from .simplicial import identity_map

    return make_space_map(X, X, [identity_map(row) for row in X.rows])


def compose_space_maps(f, g):
    from .simplicial import compose_maps

    return make_space_map(
        f.source, g.target, [compose_maps(a, b) for a, b in zip(f.row_maps, g.row_maps)]
    )


def space_maps_equal(f, g):
    return all(a.components == b.components for a, b in zip(f.row_maps, g.row_maps))


def apply_outer_monotone(X, phi, m, b, x):
    """Outer structure-map calculus: phi : [m'] -> [m] acting on grid (m, b)."""
    mp = len(phi) - 1
    if any(phi[i] > phi[i + 1] for i in range(mp)) or not all(0 <= v <= m for v in phi):
        raise ValueError(f"not monotone into [{m}]: {phi}")
    image = sorted(set(phi))
    cur, lvl = x, m
    for v in sorted(set(range(m + 1)) - set(image), reverse=True):
        cur = X.outer_face(lvl, v, b, cur)
        lvl -= 1
    rank = {v: i for i, v in enumerate(image)}
    pi = list(rank[v] for v in phi)
    ops = []
    while len(pi) > len(set(pi)):
        for j in range(len(pi) - 1):
            if pi[j] == pi[j + 1]:
                ops.append(j)
                del pi[j + 1]
                break
    for j in reversed(ops):
        cur = X.outer_degeneracy(lvl, j, b, cur)
        lvl += 1
    return cur


def outer_vertex_labels(X, m, b, x):
    """The tuple of degree-zero identifiers under the m+1 vertex operators."""
    return tuple(apply_outer_monotone(X, (j,), m, b, x) for j in range(m + 1))


# ---------------------------------------------------------------------------
# constructors


def constant_space(S, outer_trunc):
    """The same inner simplicial set at every outer degree, identities between."""
    from .simplicial import identity_map

    rows = [S for _ in range(outer_trunc + 1)]
    ident = identity_map(S)
    faces = {(m, i): ident for m in range(1, outer_trunc + 1) for i in range(m + 1)}
    degs = {(m, i): ident for m in range(outer_trunc) for i in range(m + 1)}
    return make_space(outer_trunc, S.truncation, rows, faces, degs)


def discrete_space(points, outer_trunc, inner_trunc):
    return constant_space(discrete(points, inner_trunc), outer_trunc)


def transpose(X, inner_trunc=None):
    """Row m is the constant (discrete) inner simplicial set on X_m; the outer
    structure maps are those of X, extended levelwise."""
    if inner_trunc is None:
        inner_trunc = X.truncation
    M = X.truncation
    rows = [discrete(X.level(m), inner_trunc) for m in range(M + 1)]
    faces = {}
    for m in range(1, M + 1):
        for i in range(m + 1):
            table = dict(X.faces[(m, i)])
            faces[(m, i)] = make_map(
                rows[m], rows[m - 1], [dict(table) for _ in range(inner_trunc + 1)]
            )
    degs = {}
    for m in range(M):
        for i in range(m + 1):
            table = dict(X.degeneracies[(m, i)])
            degs[(m, i)] = make_map(
                rows[m], rows[m + 1], [dict(table) for _ in range(inner_trunc + 1)]
            )
    return make_space(M, inner_trunc, rows, faces, degs)


def iterated_outer_degeneracy(X, m):
    """The canonical map row 0 -> row m (all composites agree)."""
    from .simplicial import compose_maps, identity_map

    f = identity_map(X.rows[0])
    for lvl in range(m):
        f = compose_maps(f, X.outer_degeneracies[(lvl, 0)])
    return f


def relabel_rows(X, renames):
    """Rename identifiers rowwise; renames[m] is a dict or None to keep."""
    new_rows = []
    for m, row in enumerate(X.rows):
        r = renames[m]
        if r is None:
            new_rows.append(row)
            continue
        levels = [frozenset(r.get(x, x) for x in lvl) for lvl in row.levels]
        faces = {
            key: {r.get(x, x): r.get(y, y) for x, y in table.items()}
            for key, table in row.faces.items()
        }
        degs = {
            key: {r.get(x, x): r.get(y, y) for x, y in table.items()}
            for key, table in row.degeneracies.items()
        }
        new_rows.append(make_sset(row.truncation, levels, faces, degs))
    out_faces = {}
    for (m, i), f in X.outer_faces.items():
        ra = renames[m] or {}
        rb = renames[m - 1] or {}
        out_faces[(m, i)] = make_map(
            new_rows[m],
            new_rows[m - 1],
            [
                {ra.get(x, x): rb.get(y, y) for x, y in comp.items()}
                for comp in f.components
            ],
        )
    out_degs = {}
    for (m, i), f in X.outer_degeneracies.items():
        ra = renames[m] or {}
        rb = renames[m + 1] or {}
        out_degs[(m, i)] = make_map(
            new_rows[m],
            new_rows[m + 1],
            [
                {ra.get(x, x): rb.get(y, y) for x, y in comp.items()}
                for comp in f.components
            ],
        )
    return make_space(X.outer_truncation, X.inner_truncation, new_rows, out_faces, out_degs)


# ---------------------------------------------------------------------------
# products, limits, colimits of spaces


def space_product(A, B):
    """Gridwise product with componentwise structure maps and projections."""
    if (A.outer_truncation, A.inner_truncation) != (B.outer_truncation, B.inner_truncation):
        raise ValueError("mismatched truncations")
    from .simplicial import product as sproduct

    rows, projsA, projsB = [], [], []
    for ra, rb in zip(A.rows, B.rows):
        P = sproduct(ra, rb)
        rows.append(P.space)
        projsA.append(P.left)
        projsB.append(P.right)
    faces = {}
    for (m, i), fa in A.outer_faces.items():
        fb = B.outer_faces[(m, i)]
        faces[(m, i)] = make_map(
            rows[m],
            rows[m - 1],
            [
                {
                    (x, y): (fa.components[b][x], fb.components[b][y])
                    for (x, y) in rows[m].level(b)
                }
                for b in range(A.inner_truncation + 1)
            ],
        )
    degs = {}
    for (m, i), fa in A.outer_degeneracies.items():
        fb = B.outer_degeneracies[(m, i)]
        degs[(m, i)] = make_map(
            rows[m],
            rows[m + 1],
            [
                {
                    (x, y): (fa.components[b][x], fb.components[b][y])
                    for (x, y) in rows[m].level(b)
                }
                for b in range(A.inner_truncation + 1)
            ],
        )
    space = make_space(A.outer_truncation, A.inner_truncation, rows, faces, degs)
    pa = make_space_map(space, A, projsA)
    pb = make_space_map(space, B, projsB)
    return space, pa, pb


@dataclass(eq=False)
class SpaceColimit:
    space: TruncatedSimplicialSpace
    injections: dict


@dataclass(eq=False)
class SpaceLimit:
    space: TruncatedSimplicialSpace
    projections: dict


def space_colimit(objects, arrows):
    """Rowwise colimit of a finite diagram of spaces, with induced outer maps."""
    shapes = {(X.outer_truncation, X.inner_truncation) for X in objects.values()}
    if len(shapes) != 1:
        raise ValueError("mismatched truncations in diagram")
    M, N = shapes.pop()
    row_colimits = []
    for m in range(M + 1):
        row_objects = {name: X.rows[m] for name, X in objects.items()}
        row_arrows = [(src, dst, h.row_maps[m]) for src, dst, h in arrows]
        row_colimits.append(diagram_colimit(row_objects, row_arrows))
    rows = [rc.space for rc in row_colimits]
    faces = {}
    for m in range(1, M + 1):
        for i in range(m + 1):
            comps = []
            for b in range(N + 1):
                table = {}
                for rep in rows[m].level(b):
                    name, x = rep
                    y = objects[name].outer_face(m, i, b, x)
                    table[rep] = row_colimits[m - 1].injections[name].components[b][y]
                comps.append(table)
            faces[(m, i)] = make_map(rows[m], rows[m - 1], comps)
    degs = {}
    for m in range(M):
        for i in range(m + 1):
            comps = []
            for b in range(N + 1):
                table = {}
                for rep in rows[m].level(b):
                    name, x = rep
                    y = objects[name].outer_degeneracy(m, i, b, x)
                    table[rep] = row_colimits[m + 1].injections[name].components[b][y]
                comps.append(table)
            degs[(m, i)] = make_map(rows[m], rows[m + 1], comps)
    space = make_space(M, N, rows, faces, degs)
    injections = {
        name: make_space_map(
            objects[name], space, [row_colimits[m].injections[name] for m in range(M + 1)]
        )
        for name in objects
    }
    return SpaceColimit(space, injections)


def space_limit(objects, arrows):
    """Rowwise limit (tuples in sorted name order) with componentwise outer maps."""
    shapes = {(X.outer_truncation, X.inner_truncation) for X in objects.values()}
    if len(shapes) != 1:
        raise ValueError("mismatched truncations in diagram")
    M, N = shapes.pop()
    names = sorted(objects)
    row_limits = []
    for m in range(M + 1):
        row_objects = {name: X.rows[m] for name, X in objects.items()}
        row_arrows = [(src, dst, h.row_maps[m]) for src, dst, h in arrows]
        row_limits.append(diagram_limit(row_objects, row_arrows))
    rows = [rl.space for rl in row_limits]
    faces = {}
    for m in range(1, M + 1):
        for i in range(m + 1):
            comps = []
            for b in range(N + 1):
                comps.append(
                    {
                        t: tuple(
                            objects[name].outer_face(m, i, b, x)
                            for name, x in zip(names, t)
                        )
                        for t in rows[m].level(b)
                    }
                )
            faces[(m, i)] = make_map(rows[m], rows[m - 1], comps)
    degs = {}
    for m in range(M):
        for i in range(m + 1):
            comps = []
            for b in range(N + 1):
                comps.append(
                    {
                        t: tuple(
                            objects[name].outer_degeneracy(m, i, b, x)
                            for name, x in zip(names, t)
                        )
                        for t in rows[m].level(b)
                    }
                )
            degs[(m, i)] = make_map(rows[m], rows[m + 1], comps)
    space = make_space(M, N, rows, faces, degs)
    projections = {
        name: make_space_map(
            space, objects[name], [row_limits[m].projections[name] for m in range(M + 1)]
        )
        for name in names
    }
    return SpaceLimit(space, projections)


def subspace(X, keep):
    """Subobject on keep[(m, b)] identifier sets; checks closure under all
    structure maps and returns (space, inclusion)."""
    M, N = X.outer_truncation, X.inner_truncation
    rows = []
    for m in range(M + 1):
        row = X.rows[m]
        levels = [frozenset(keep[(m, b)]) for b in range(N + 1)]
        for b, lvl in enumerate(levels):
            if not lvl <= row.level(b):
                raise ValueError(f"keep set at ({m},{b}) is not a subset")
        faces = {}
        for (k, i), table in row.faces.items():
            sub = {}
            for x in levels[k]:
                y = table[x]
                if y not in levels[k - 1]:
                    raise ValueError(f"not closed under inner face ({k},{i}) at {x!r}")
                sub[x] = y
            faces[(k, i)] = sub
        degs = {}
        for (k, i), table in row.degeneracies.items():
            sub = {}
            for x in levels[k]:
                y = table[x]
                if y not in levels[k + 1]:
                    raise ValueError(f"not closed under inner degeneracy ({k},{i}) at {x!r}")
                sub[x] = y
            degs[(k, i)] = sub
        rows.append(make_sset(N, levels, faces, degs))
    out_faces = {}
    for (m, i), f in X.outer_faces.items():
        comps = []
        for b in range(N + 1):
            sub = {}
            for x in rows[m].level(b):
                y = f.components[b][x]
                if y not in rows[m - 1].level(b):
                    raise ValueError(f"not closed under outer face ({m},{i}) at {x!r}")
                sub[x] = y
            comps.append(sub)
        out_faces[(m, i)] = make_map(rows[m], rows[m - 1], comps)
    out_degs = {}
    for (m, i), f in X.outer_degeneracies.items():
        comps = []
        for b in range(N + 1):
            sub = {}
            for x in rows[m].level(b):
                y = f.components[b][x]
                if y not in rows[m + 1].level(b):
                    raise ValueError(f"not closed under outer degeneracy ({m},{i}) at {x!r}")
                sub[x] = y
            comps.append(sub)
        out_degs[(m, i)] = make_map(rows[m], rows[m + 1], comps)
    S = make_space(M, N, rows, out_faces, out_degs)
    incl = make_space_map(
        S, X, [make_map(rows[m], X.rows[m], [{x: x for x in lvl} for lvl in rows[m].levels]) for m in range(M + 1)]
    )
    return S, incl


# ---------------------------------------------------------------------------
# collapsing the degree-zero space


def collapse_degree_zero(X, labeling, labels):
    """Pushout that replaces the degree-zero row by the discrete set `labels`.

    labeling maps the vertices of row 0 to labels and must be constant on
    the components of row 0 (checked).  Returns the resulting Segal
    precategory together with the structure map from X and the inclusion of
    the discrete label space.
    """
    M, N = X.outer_truncation, X.inner_truncation
    row0 = X.rows[0]
    if N >= 1:
        for e in row0.level(1):
            a, b = row0.face(1, 0, e), row0.face(1, 1, e)
            if labeling[a] != labeling[b]:
                raise ValueError("labeling is not constant on components of the degree-zero row")
    C = constant_space(row0, M)
    into_X = make_space_map(C, X, [iterated_outer_degeneracy(X, m) for m in range(M + 1)])
    D = discrete_space(labels, M, N)
    label_of = {}
    for b in range(N + 1):
        for sigma in row0.level(b):
            from .simplicial import apply_monotone

            label_of[(b, sigma)] = labeling[apply_monotone(row0, (0,), b, sigma)]
    label_row = make_map(
        row0,
        D.rows[0],
        [{sigma: label_of[(b, sigma)] for sigma in row0.level(b)} for b in range(N + 1)],
    )
    into_D = make_space_map(C, D, [label_row for _ in range(M + 1)])
    colim = space_colimit(
        {"X": X, "D": D, "C": C},
        [("C", "X", into_X), ("C", "D", into_D)],
    )
    # rename degree-zero classes (and label-degeneracies in higher rows) back
    # to the plain labels so the object set is visible in the identifiers
    renames = []
    for m in range(M + 1):
        r = {}
        inj = colim.injections["D"].row_maps[m]
        for b in range(N + 1):
            for label in D.rows[m].level(b):
                r[inj.components[b][label]] = label
        renames.append(r)
    space = relabel_rows(colim.space, renames)
    precat = as_precategory(space)
    unit_rows = []
    for m in range(M + 1):
        comp = colim.injections["X"].row_maps[m].components
        unit_rows.append(
            make_map(
                X.rows[m],
                precat.rows[m],
                [
                    {x: renames[m].get(y, y) for x, y in comp[b].items()}
                    for b in range(N + 1)
                ],
            )
        )
    unit = make_space_map(X, precat, unit_rows)
    point_rows = []
    for m in range(M + 1):
        comp = colim.injections["D"].row_maps[m].components
        point_rows.append(
            make_map(
                D.rows[m],
                precat.rows[m],
                [
                    {x: renames[m].get(y, y) for x, y in comp[b].items()}
                    for b in range(N + 1)
                ],
            )
        )
    points = make_space_map(D, precat, point_rows)
    return precat, unit, points


@dataclass(eq=False)
class Reduction:
    precategory: SegalPrecategory
    unit: SpaceMap


def reduce_space(X):
    """Collapse the degree-zero row to its set of components (the left
    adjoint to including Segal precategories into simplicial spaces)."""
    if X.inner_truncation < 1:
        raise ValueError("reduction needs inner truncation >= 1 to see components")
    comps = pi0(X.rows[0])
    labeling = dict(comps.component)
    labels = [min(cls, key=sort_key) for cls in comps.classes]
    precat, unit, _ = collapse_degree_zero(X, labeling, labels)
    return Reduction(precat, unit)


def labeled_simplex_maps(n, x, object_set, trunc, inner_trunc=None):
    """labeled_simplex together with the collapse map from the transposed
    simplex and the inclusion of the isolated points."""
    x = tuple(x)
    object_set = tuple(ordered(set(object_set)))
    if len(x) != n + 1:
        raise ValueError("label tuple length must be n+1")
    for o in x:
        if o not in object_set:
            raise ValueError(f"label {o!r} is not in the object set")
    if inner_trunc is None:
        inner_trunc = trunc
    T = transpose(generate("simplex", n, trunc=trunc), inner_trunc)
    labeling = {(v,): x[v] for v in range(n + 1)}
    precat, unit, points = collapse_degree_zero(T, labeling, object_set)
    return precat, unit, points


def labeled_simplex(n, x, object_set, trunc, inner_trunc=None):
    """The transposed n-simplex with vertex i carrying the label x[i], plus
    every remaining object as an isolated point (degeneracies only)."""
    return labeled_simplex_maps(n, x, object_set, trunc, inner_trunc)[0]


@dataclass(eq=False)
class SpineObject:
    precategory: SegalPrecategory
    ambient: SegalPrecategory
    inclusion: SpaceMap
    transpose_unit: SpaceMap = None  # collapse map from the transposed simplex
    points: SpaceMap = None  # inclusion of the isolated object points


def g_object(k, x, object_set, trunc, inner_trunc=None):
    """The spine of the labeled k-simplex: the union of its k consecutive
    labeled edges, with the inclusion into the full labeled simplex."""
    if k < 1:
        raise ValueError("the spine needs k >= 1")
    x = tuple(x)
    object_set = tuple(ordered(set(object_set)))
    if len(x) != k + 1:
        raise ValueError("label tuple length must be k+1")
    if inner_trunc is None:
        inner_trunc = trunc
    T = transpose(generate("simplex", k, trunc=trunc), inner_trunc)
    labeling = {(v,): x[v] for v in range(k + 1)}
    ambient, unit, points = collapse_degree_zero(T, labeling, object_set)
    keep = {}
    for m in range(trunc + 1):
        for b in range(inner_trunc + 1):
            cell = set()
            for label in object_set:
                cell.add(points.apply(m, b, label))
            for sigma in T.grid(m, b):
                values = set(sigma)
                if any(values <= {i, i + 1} for i in range(k)):
                    cell.add(unit.apply(m, b, sigma))
            keep[(m, b)] = cell
    space, incl = subspace(ambient, keep)
    return SpineObject(as_precategory(space), ambient, incl, unit, points)


def generating_object(kind, m, n, x, object_set, k=None, outer_trunc=None, inner_trunc=None):
    """The pushout objects pairing an inner simplex/boundary/horn with a
    labeled outer simplex, degree zero collapsed back to the object set.

    kind "Q" pairs the full m-simplex, "P" its boundary, "R" the horn with
    index k.  The inner factor is the constant space on the generator, the
    outer factor the labeled transposed n-simplex.
    """
    if kind in ("Q", "P"):
        if m < 0 or n < 0:
            raise ValueError(f"{kind} needs m, n >= 0")
    elif kind == "R":
        if m < 1 or n < 1:
            raise ValueError("R needs m, n >= 1")
        if k is None or not 0 <= k <= m:
            raise ValueError(f"horn index {k} out of range for m={m}")
    else:
        raise ValueError(f"unknown generating kind {kind!r}")
    if outer_trunc is None:
        outer_trunc = max(n, 1)
    if inner_trunc is None:
        inner_trunc = max(m, 1)
    S = generate(
        {"Q": "simplex", "P": "boundary", "R": "horn"}[kind], m, k=k, trunc=inner_trunc
    )
    A = constant_space(S, outer_trunc)
    B = labeled_simplex(n, x, object_set, outer_trunc, inner_trunc)
    Z = discrete_space(B.object_set, outer_trunc, inner_trunc)
    incl_rows = []
    for mm in range(outer_trunc + 1):
        comp = iterated_outer_degeneracy(B, mm)
        incl_rows.append(
            make_map(
                Z.rows[mm],
                B.rows[mm],
                [
                    {o: comp.components[b][o] for o in Z.rows[mm].level(b)}
                    for b in range(inner_trunc + 1)
                ],
            )
        )
    incl = make_space_map(Z, B, incl_rows)
    AB, _, _ = space_product(A, B)
    AZ, az_projA, az_projZ = space_product(A, Z)
    top_rows = []
    for mm in range(outer_trunc + 1):
        top_rows.append(
            make_map(
                AZ.rows[mm],
                AB.rows[mm],
                [
                    {
                        (s, o): (s, incl.row_maps[mm].components[b][o])
                        for (s, o) in AZ.rows[mm].level(b)
                    }
                    for b in range(inner_trunc + 1)
                ],
            )
        )
    top = make_space_map(AZ, AB, top_rows)
    colim = space_colimit(
        {"AB": AB, "Z": Z, "AZ": AZ},
        [("AZ", "AB", top), ("AZ", "Z", az_projZ)],
    )
    renames = []
    for mm in range(outer_trunc + 1):
        r = {}
        inj = colim.injections["Z"].row_maps[mm]
        for b in range(inner_trunc + 1):
            for label in Z.rows[mm].level(b):
                r[inj.components[b][label]] = label
        renames.append(r)
    return as_precategory(relabel_rows(colim.space, renames))


# ---------------------------------------------------------------------------
# limits and colimits over a fixed object set


@dataclass(eq=False)
class Diagram:
    """Finite diagram of Segal precategories over a common object set."""

    objects: dict  # name -> SegalPrecategory
    arrows: list  # (src, dst, SpaceMap)

    def check(self):
        object_sets = {X.object_set for X in self.objects.values()}
        if len(object_sets) != 1:
            raise ValueError("diagram objects must share the object set")
        for src, dst, h in self.arrows:
            row0 = h.row_maps[0]
            if any(row0.components[b][o] != o for b in range(h.source.inner_truncation + 1) for o in h.source.grid(0, b)):
                raise ValueError(f"arrow {src}->{dst} is not the identity on objects")
        return object_sets.pop()

    def shape_components(self):
        uf = UnionFind()
        for name in self.objects:
            uf.find(name)
        for src, dst, _ in self.arrows:
            uf.union(src, dst)
        return len(uf.classes())


def limit_O(diagram):
    """Limit in the fixed-object-set category: the ordinary limit restricted
    to the tuples whose outer vertex labels agree in every component."""
    O = diagram.check()
    lim = space_limit(diagram.objects, diagram.arrows)
    names = sorted(diagram.objects)
    M, N = lim.space.outer_truncation, lim.space.inner_truncation
    keep = {}
    for m in range(M + 1):
        for b in range(N + 1):
            cell = set()
            for t in lim.space.grid(m, b):
                tuples = {
                    outer_vertex_labels(diagram.objects[name], m, b, x)
                    for name, x in zip(names, t)
                }
                if len(tuples) == 1:
                    cell.add(t)
            keep[(m, b)] = cell
    space, incl = subspace(lim.space, keep)
    renames = [dict() for _ in range(M + 1)]
    for m in range(M + 1):
        for b in range(N + 1):
            for t in space.grid(m, b):
                if m == 0:
                    renames[0][t] = t[0]
    space = relabel_rows(space, renames)
    precat = as_precategory(space)
    projections = {}
    for pos, name in enumerate(names):
        row_maps = []
        for m in range(M + 1):
            comps = []
            for b in range(N + 1):
                comps.append(
                    {t: (t if m == 0 else t[pos]) for t in precat.grid(m, b)}
                )
            row_maps.append(make_map(precat.rows[m], diagram.objects[name].rows[m], comps))
        projections[name] = make_space_map(precat, diagram.objects[name], row_maps)
    return SpaceLimit(precat, projections)


def colimit_O(diagram):
    """Colimit in the fixed-object-set category: the ordinary colimit with
    the copies of the object set folded back together."""
    O = diagram.check()
    colim = space_colimit(diagram.objects, diagram.arrows)
    space = colim.space
    labeling = {}
    for rep in space.grid(0, 0):
        name, o = rep
        labeling[rep] = o
    precat, unit, _ = collapse_degree_zero(space, labeling, O)
    injections = {
        name: compose_space_maps(colim.injections[name], unit) for name in diagram.objects
    }
    return SpaceColimit(precat, injections)


# ---------------------------------------------------------------------------
# isomorphism of spaces


@dataclass(eq=False)
class SpaceIsoResult:
    map: SpaceMap | None
    reason: str | None = None

    @property
    def found(self):
        return self.map is not None


def _space_color_refinement(spaces, rounds=None):
    """Joint structural coloring of the elements of several spaces.

    Starts from degeneracy status and refines by the colors of faces,
    degeneracy images and co-faces until stable.  Isomorphic elements always
    share a color, so color classes bound the isomorphism search.
    """
    elems = []
    for s_idx, X in enumerate(spaces):
        for m in range(X.outer_truncation + 1):
            for b in range(X.inner_truncation + 1):
                for z in X.rows[m].level(b):
                    elems.append((s_idx, m, b, z))
    color = {}
    for (s_idx, m, b, z) in elems:
        X = spaces[s_idx]
        color[(s_idx, m, b, z)] = (
            z in X.outer_degenerate_ids(m, b),
            z in X.rows[m].degenerate_ids(b),
        )
    parents_outer = {el: [] for el in elems}
    parents_inner = {el: [] for el in elems}
    for (s_idx, m, b, z) in elems:
        X = spaces[s_idx]
        if m > 0:
            for i in range(m + 1):
                parents_outer[(s_idx, m - 1, b, X.outer_face(m, i, b, z))].append(
                    (i, (s_idx, m, b, z))
                )
        if b > 0:
            for i in range(b + 1):
                parents_inner[(s_idx, m, b - 1, X.rows[m].face(b, i, z))].append(
                    (i, (s_idx, m, b, z))
                )
    if rounds is None:
        rounds = sum(X.outer_truncation + X.inner_truncation + 2 for X in spaces)
    for _ in range(rounds):
        keys = {}
        for el in elems:
            s_idx, m, b, z = el
            X = spaces[s_idx]
            face_part = []
            if m > 0:
                faces = [X.outer_face(m, i, b, z) for i in range(m + 1)]
                face_part.append(tuple(color[(s_idx, m - 1, b, f)] for f in faces))
                face_part.append(_equality_pattern(faces))
            if b > 0:
                faces = [X.rows[m].face(b, i, z) for i in range(b + 1)]
                face_part.append(tuple(color[(s_idx, m, b - 1, f)] for f in faces))
                face_part.append(_equality_pattern(faces))
            up_outer = tuple(sorted((i, color[p]) for i, p in parents_outer[el]))
            up_inner = tuple(sorted((i, color[p]) for i, p in parents_inner[el]))
            keys[el] = (color[el], tuple(face_part), up_outer, up_inner)
        palette = {key: idx for idx, key in enumerate(sorted(set(keys.values())))}
        new_color = {el: palette[keys[el]] for el in elems}
        # refinement only ever splits classes; stable when the count stops growing
        if len(set(new_color.values())) == len(set(color.values())):
            color = new_color
            break
        color = new_color
    return color


def space_iso_check(X, Y):
    """Gridwise bijection commuting with inner and outer structure maps.

    Cells are processed in row-major order; inner and outer degeneracy images
    are forced, the rest matched on combined face signatures refined by a
    joint structural coloring, and resolved by deterministic backtracking.
    """
    if (X.outer_truncation, X.inner_truncation) != (Y.outer_truncation, Y.inner_truncation):
        raise ValueError("mismatched truncations")
    if X.grid_cardinalities() != Y.grid_cardinalities():
        return SpaceIsoResult(
            None, f"grid cardinalities {X.grid_cardinalities()} vs {Y.grid_cardinalities()}"
        )
    for m in range(X.outer_truncation + 1):
        for b in range(X.inner_truncation + 1):
            if len(X.rows[m].level(b) - _degenerate_cell(X, m, b)) != len(
                Y.rows[m].level(b) - _degenerate_cell(Y, m, b)
            ):
                return SpaceIsoResult(None, f"nondegenerate counts differ at cell ({m},{b})")
    color = _space_color_refinement([X, Y])
    for m in range(X.outer_truncation + 1):
        for b in range(X.inner_truncation + 1):
            x_hist = sorted(color[(0, m, b, z)] for z in X.rows[m].level(b))
            y_hist = sorted(color[(1, m, b, z)] for z in Y.rows[m].level(b))
            if x_hist != y_hist:
                return SpaceIsoResult(
                    None, f"structural color histograms differ at cell ({m},{b})"
                )
    M, N = X.outer_truncation, X.inner_truncation
    cells = [(m, b) for m in range(M + 1) for b in range(N + 1)]
    phi = {cell: dict() for cell in cells}

    def signature(space, m, b, z):
        sig = []
        if m > 0:
            sig.extend(space.outer_face(m, i, b, z) for i in range(m + 1))
        if b > 0:
            sig.extend(space.rows[m].face(b, i, z) for i in range(b + 1))
        return tuple(sig)

    def forced_images(m, b):
        forced = {}
        if b > 0:
            for i in range(b):
                table = X.rows[m].degeneracies[(b - 1, i)]
                for y, image in table.items():
                    target = Y.rows[m].degeneracy(b - 1, i, phi[(m, b - 1)][y])
                    if forced.get(image, target) != target:
                        return None
                    forced[image] = target
        if m > 0:
            for i in range(m):
                table = X.outer_degeneracies[(m - 1, i)].components[b]
                for y, image in table.items():
                    target = Y.outer_degeneracy(m - 1, i, b, phi[(m - 1, b)][y])
                    if forced.get(image, target) != target:
                        return None
                    forced[image] = target
        if len(set(forced.values())) != len(forced):
            return None
        return forced

    def assign(idx):
        if idx == len(cells):
            return True
        m, b = cells[idx]
        forced = forced_images(m, b)
        if forced is None:
            return False
        phi[(m, b)].update(forced)
        used = set(forced.values())
        free = [z for z in ordered(X.rows[m].level(b)) if z not in forced]
        buckets = {}
        for y in ordered(Y.rows[m].level(b)):
            if y in used:
                continue
            buckets.setdefault(
                (color[(1, m, b, y)], signature(Y, m, b, y)), []
            ).append(y)

        def place(j):
            if j == len(free):
                return assign(idx + 1)
            z = free[j]
            sig = []
            if m > 0:
                sig.extend(phi[(m - 1, b)][X.outer_face(m, i, b, z)] for i in range(m + 1))
            if b > 0:
                sig.extend(phi[(m, b - 1)][X.rows[m].face(b, i, z)] for i in range(b + 1))
            for y in buckets.get((color[(0, m, b, z)], tuple(sig)), []):
                if y in used:
                    continue
                phi[(m, b)][z] = y
                used.add(y)
                if place(j + 1):
                    return True
                used.discard(y)
                del phi[(m, b)][z]
            return False

        ok = place(0)
        if not ok:
            phi[(m, b)].clear()
        return ok

    if assign(0):
        row_maps = [
            make_map(
                X.rows[m], Y.rows[m], [dict(phi[(m, b)]) for b in range(N + 1)]
            )
            for m in range(M + 1)
        ]
        f = make_space_map(X, Y, row_maps)
        report = validate_space_map(f)
        if not report.ok:
            raise AssertionError("space iso search produced a non-map: " + report.summary())
        return SpaceIsoResult(f)
    return SpaceIsoResult(None, "backtracking search exhausted")


def _degenerate_cell(X, m, b):
    hit = set(X.outer_degenerate_ids(m, b))
    hit.update(X.rows[m].degenerate_ids(b))
    return hit


def _equality_pattern(items):
    """First-occurrence index pattern, e.g. (a, b, a) -> (0, 1, 0)."""
    seen = {}
    out = []
    for item in items:
        out.append(seen.setdefault(item, len(seen)))
    return tuple(out)
