"""Exhaustive enumeration of structure-preserving maps on small instances.

Used by the verification suites: universal properties are checked by listing
every candidate mediating map, and the restriction/extension adjunction by
listing both mapping sets.  Everything here is backtracking over identifier
order, so results are deterministic.
"""

from .simplicial import make_map, validate_map
from .spaces import make_space_map, validate_space_map
from .util import ordered


def enumerate_simplicial_maps(X, Y, limit=None):
    """All simplicial maps X -> Y (tiny instances only)."""
    N = X.truncation
    out = []
    comps = [dict() for _ in range(N + 1)]

    def level(k):
        if limit is not None and len(out) >= limit:
            return
        if k > N:
            f = make_map(X, Y, [dict(c) for c in comps])
            if validate_map(f).ok:
                out.append(f)
            return
        elems = ordered(X.level(k))

        def choose(idx):
            if limit is not None and len(out) >= limit:
                return
            if idx == len(elems):
                level(k + 1)
                return
            x = elems[idx]
            for y in ordered(Y.level(k)):
                if k > 0 and any(
                    Y.face(k, i, y) != comps[k - 1][X.face(k, i, x)]
                    for i in range(k + 1)
                ):
                    continue
                comps[k][x] = y
                choose(idx + 1)
                del comps[k][x]

        choose(0)

    level(0)
    return out


def enumerate_space_maps(X, Y, identity_on_objects=False, limit=None):
    """All maps of simplicial spaces X -> Y; optionally fixed on degree zero.

    Backtracks over cells in row-major order; inner and outer degeneracy
    images are forced, faces prune the candidate lists.
    """
    M, N = X.outer_truncation, X.inner_truncation
    if (Y.outer_truncation, Y.inner_truncation) != (M, N):
        raise ValueError("mismatched truncations")
    cells = [(m, b) for m in range(M + 1) for b in range(N + 1)]
    phi = {cell: dict() for cell in cells}
    out = []

    def forced_images(m, b):
        forced = {}
        if b > 0:
            for i in range(b):
                for y, image in X.rows[m].degeneracies[(b - 1, i)].items():
                    target = Y.rows[m].degeneracy(b - 1, i, phi[(m, b - 1)][y])
                    if forced.get(image, target) != target:
                        return None
                    forced[image] = target
        if m > 0:
            for i in range(m):
                for y, image in X.outer_degeneracies[(m - 1, i)].components[b].items():
                    target = Y.outer_degeneracy(m - 1, i, b, phi[(m - 1, b)][y])
                    if forced.get(image, target) != target:
                        return None
                    forced[image] = target
        return forced

    def faces_ok(m, b, z, y):
        if m > 0:
            for i in range(m + 1):
                if Y.outer_face(m, i, b, y) != phi[(m - 1, b)][X.outer_face(m, i, b, z)]:
                    return False
        if b > 0:
            for i in range(b + 1):
                if Y.rows[m].face(b, i, y) != phi[(m, b - 1)][X.rows[m].face(b, i, z)]:
                    return False
        return True

    def assign(idx):
        if limit is not None and len(out) >= limit:
            return
        if idx == len(cells):
            row_maps = [
                make_map(X.rows[m], Y.rows[m], [dict(phi[(m, b)]) for b in range(N + 1)])
                for m in range(M + 1)
            ]
            f = make_space_map(X, Y, row_maps)
            if validate_space_map(f).ok:
                out.append(f)
            return
        m, b = cells[idx]
        forced = forced_images(m, b)
        if forced is None:
            return
        if identity_on_objects and m == 0:
            ident = {z: z for z in X.grid(0, b)}
            if any(z not in Y.grid(0, b) for z in ident):
                return
            if forced and any(forced[z] != ident[z] for z in forced):
                return
            phi[(m, b)].update(ident)
            assign(idx + 1)
            phi[(m, b)].clear()
            return
        phi[(m, b)].update(forced)
        free = [z for z in ordered(X.grid(m, b)) if z not in forced]

        def place(j):
            if limit is not None and len(out) >= limit:
                return
            if j == len(free):
                assign(idx + 1)
                return
            z = free[j]
            for y in ordered(Y.grid(m, b)):
                if not faces_ok(m, b, z, y):
                    continue
                phi[(m, b)][z] = y
                place(j + 1)
                del phi[(m, b)][z]

        place(0)
        phi[(m, b)].clear()

    assign(0)
    return out


def mediating_maps(candidates, legs, composites_equal):
    """Filter candidate maps h so that composing with each leg reproduces the
    given cone/cocone data; legs is a list of (compose_fn, expected)."""
    out = []
    for h in candidates:
        if all(composites_equal(compose(h), expected) for compose, expected in legs):
            out.append(h)
    return out
