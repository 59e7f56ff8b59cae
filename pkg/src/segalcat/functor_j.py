"""The cosimplicial family of free monoids behind the nerve construction,
its multi-object analogue for free categories, restriction of theory
diagrams to simplicial spaces, and truncated pointwise left Kan extension
over enumerated comma categories.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .simplicial import make_map, make_sset
from .spaces import (
    SegalPrecategory,
    apply_outer_monotone,
    as_precategory,
    make_space,
    make_space_map,
)
from .theories import (
    CatPath,
    OCatMorphism,
    TheoryMorphism,
    Word,
    compose_ocat,
    compose_theory,
    enumerate_morphisms,
    identity_morphism,
    ocat_identity,
    sort_of_tuple,
)
from .util import monotone_maps, ordered, sort_key


class ConstructionError(Exception):
    """A structural identity failed while building a cosimplicial object."""


# ---------------------------------------------------------------------------
# the monoid-theory cosimplicial object


def j_morphism(theta, m):
    """Theory morphism T_m -> T_{m'} induced by a monotone map [m'] -> [m].

    In the monoid direction this is the map of free monoids sending the j-th
    generator to the product of generators theta(j-1)+1 .. theta(j); that is
    the unique assignment making precomposition reproduce the bar-style
    structure maps of nerves.
    """
    mp = len(theta) - 1
    if any(theta[i] > theta[i + 1] for i in range(mp)) or not all(
        0 <= v <= m for v in theta
    ):
        raise ValueError(f"not monotone into [{m}]: {theta}")
    comps = tuple(
        Word(m, tuple(range(theta[j - 1] + 1, theta[j] + 1))) for j in range(1, mp + 1)
    )
    return TheoryMorphism(m, mp, comps)


def _delta(n, i):
    """The injection [n-1] -> [n] skipping i."""
    return tuple(t if t < i else t + 1 for t in range(n))


def _sigma(n, i):
    """The surjection [n+1] -> [n] repeating i."""
    return tuple(t if t <= i else t - 1 for t in range(n + 2))


def face_morphism(n, i):
    """T_n -> T_{n-1}; acting on hom-sets it realizes the nerve face d_i."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"face index ({n},{i}) out of range")
    return j_morphism(_delta(n, i), n)


def degeneracy_morphism(n, i):
    """T_n -> T_{n+1}; acting on hom-sets it realizes the nerve degeneracy s_i."""
    if not 0 <= i <= n:
        raise ValueError(f"degeneracy index ({n},{i}) out of range")
    return j_morphism(_sigma(n, i), n)


@dataclass(eq=False)
class CosimplicialTheoryObject:
    n_max: int
    face: dict  # (n, i) -> TheoryMorphism T_n -> T_{n-1}
    degeneracy: dict  # (n, i) -> TheoryMorphism T_n -> T_{n+1}


def build_J(n_max):
    """Assemble and verify the cosimplicial family up to arity n_max.

    All simplicial identities of the induced operators are checked by word
    substitution; a violation raises ConstructionError naming the instance.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    face = {(n, i): face_morphism(n, i) for n in range(1, n_max + 1) for i in range(n + 1)}
    deg = {(n, i): degeneracy_morphism(n, i) for n in range(n_max) for i in range(n + 1)}
    J = CosimplicialTheoryObject(n_max, face, deg)
    _verify_cosimplicial(J)
    return J


def _verify_cosimplicial(J):
    n_max = J.n_max
    for n in range(2, n_max + 1):
        for j in range(1, n + 1):
            for i in range(j):
                lhs = compose_theory(J.face[(n, j)], J.face[(n - 1, i)])
                rhs = compose_theory(J.face[(n, i)], J.face[(n - 1, j - 1)])
                if lhs != rhs:
                    raise ConstructionError(f"face-face identity fails at n={n}, i={i}, j={j}")
    for n in range(n_max - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                lhs = compose_theory(J.degeneracy[(n, j)], J.degeneracy[(n + 1, i)])
                rhs = compose_theory(J.degeneracy[(n, i)], J.degeneracy[(n + 1, j + 1)])
                if lhs != rhs:
                    raise ConstructionError(
                        f"degeneracy-degeneracy identity fails at n={n}, i={i}, j={j}"
                    )
    for n in range(n_max):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = compose_theory(J.degeneracy[(n, j)], J.face[(n + 1, i)])
                if i == j or i == j + 1:
                    rhs = identity_morphism(n)
                elif i < j:
                    rhs = compose_theory(J.face[(n, i)], J.degeneracy[(n - 1, j - 1)])
                else:
                    rhs = compose_theory(J.face[(n, i - 1)], J.degeneracy[(n - 1, j)])
                if lhs != rhs:
                    raise ConstructionError(
                        f"face-degeneracy identity fails at n={n}, i={i}, j={j}"
                    )


# ---------------------------------------------------------------------------
# Yoneda compatibility of nerves with the cosimplicial family


@dataclass(eq=False)
class YonedaReport:
    n_max: int
    face_pairing: dict  # (n, i) -> tuple of matching indices i'
    degeneracy_pairing: dict
    orientation: str  # standard | reversed | ambiguous

    def consistent(self, rule):
        for (n, i), matches in self.face_pairing.items():
            if rule(n, i) not in matches:
                return False
        for (n, i), matches in self.degeneracy_pairing.items():
            if rule(n, i) not in matches:
                return False
        return True


def yoneda_compat(monoid, n_max):
    """Match every nerve face/degeneracy against precomposition with the
    cosimplicial maps, and record the index pairing that works."""
    from .nerves import nerve_monoid
    from .theories import algebra_of_monoid

    J = build_J(n_max)
    nerve = nerve_monoid(monoid, n_max)
    algebra = algebra_of_monoid(monoid, n_max, inner_trunc=0)
    face_pairing = {}
    for n in range(1, n_max + 1):
        for i in range(n + 1):
            nerve_table = nerve.space.faces[(n, i)]
            matches = []
            for ip in range(n + 1):
                action = algebra.act(J.face[(n, ip)]).components[0]
                if all(action[t] == nerve_table[t] for t in nerve_table):
                    matches.append(ip)
            if not matches:
                raise ConstructionError(
                    f"no cosimplicial map matches nerve face d_{i} at level {n}: "
                    + _mismatch_table(nerve_table, algebra, J, n)
                )
            face_pairing[(n, i)] = tuple(matches)
    deg_pairing = {}
    for n in range(n_max):
        for i in range(n + 1):
            nerve_table = nerve.space.degeneracies[(n, i)]
            matches = []
            for ip in range(n + 1):
                action = algebra.act(J.degeneracy[(n, ip)]).components[0]
                if all(action[t] == nerve_table[t] for t in nerve_table):
                    matches.append(ip)
            if not matches:
                raise ConstructionError(
                    f"no cosimplicial map matches nerve degeneracy s_{i} at level {n}"
                )
            deg_pairing[(n, i)] = tuple(matches)
    report = YonedaReport(n_max, face_pairing, deg_pairing, "ambiguous")
    standard = report.consistent(lambda n, i: i)
    reversed_ = report.consistent(lambda n, i: n - i)
    if standard and reversed_:
        report.orientation = "ambiguous"
    elif standard:
        report.orientation = "standard"
    elif reversed_:
        report.orientation = "reversed"
    else:
        raise ConstructionError("no consistent index orientation across levels")
    return report


def _mismatch_table(nerve_table, algebra, J, n):
    rows = []
    for t in list(nerve_table)[:4]:
        actions = {
            ip: algebra.act(J.face[(n, ip)]).components[0][t] for ip in range(n + 1)
        }
        rows.append(f"{t} -> nerve {nerve_table[t]}, candidates {actions}")
    return "; ".join(rows)


# ---------------------------------------------------------------------------
# restriction of theory diagrams to simplicial spaces


def restrict(A, outer_trunc=None):
    """The simplicial space with row n the value at arity n and structure
    maps given by the cosimplicial family's action."""
    if outer_trunc is None:
        outer_trunc = A.arity_max
    if outer_trunc > A.arity_max:
        raise ValueError("diagram does not carry values up to the requested truncation")
    rows = [A.value(n) for n in range(outer_trunc + 1)]
    faces = {}
    for n in range(1, outer_trunc + 1):
        for i in range(n + 1):
            faces[(n, i)] = A.act(face_morphism(n, i))
    degs = {}
    for n in range(outer_trunc):
        for i in range(n + 1):
            degs[(n, i)] = A.act(degeneracy_morphism(n, i))
    space = make_space(outer_trunc, rows[0].truncation, rows, faces, degs)
    if len(rows[0].level(0)) == 1:
        return as_precategory(space)
    return space


# ---------------------------------------------------------------------------
# truncated pointwise left Kan extension


@dataclass(frozen=True)
class KanBounds:
    target_arity_max: int
    source_degree_max: int
    length_bound: int

    def grown(self):
        return KanBounds(self.target_arity_max, self.source_degree_max + 1, self.length_bound + 1)


@dataclass(eq=False)
class CommaColimitJob:
    bounds: KanBounds
    inner_trunc: int
    values: dict  # n -> TruncatedSimplicialSet of colimit classes
    component: dict  # n -> per-inner-level dict member -> class representative
    generator_counts: dict  # n -> number of enumerated comma objects
    relation_counts: dict  # n -> number of enumerated identifications
    certified: bool
    rerun_bounds: KanBounds | None

    def value(self, n):
        return self.values[n]

    def class_of(self, n, b, member):
        return self.component[n][b][member]

    def act_partial(self, f):
        """Postcomposition action on classes, where some member of the class
        admits a composite inside the length bound."""
        table = {}
        L = self.bounds.length_bound
        for b in range(self.inner_trunc + 1):
            lvl = {}
            for member, rep in self.component[f.source][b].items():
                m, comps, xi = member
                g = TheoryMorphism(m, f.source, comps)
                h = compose_theory(g, f)
                if h.total_length > L:
                    continue
                target = self.component[f.target][b][(m, h.components, xi)]
                if rep in lvl and lvl[rep] != target:
                    raise AssertionError("kan action inconsistent across class members")
                lvl[rep] = target
            table[b] = lvl
        return table


def _comma_objects(n, bounds):
    out = []
    for m in range(bounds.source_degree_max + 1):
        for f in enumerate_morphisms(m, n, bounds.length_bound):
            out.append((m, f))
    return out


def _kan_once(X, bounds):
    from .util import UnionFind

    if X.outer_truncation < bounds.source_degree_max:
        raise ValueError("source space truncation is below the comma degree bound")
    N = X.inner_truncation
    values, component, gen_counts, rel_counts = {}, {}, {}, {}
    for n in range(bounds.target_arity_max + 1):
        commas = _comma_objects(n, bounds)
        gen_counts[n] = len(commas)
        by_key = {(m, f.components): (m, f) for m, f in commas}
        ufs = [UnionFind() for _ in range(N + 1)]
        for b in range(N + 1):
            for m, f in commas:
                for xi in X.grid(m, b):
                    ufs[b].find((m, f.components, xi))
        relations = 0
        for mp, fp in commas:
            for m in range(bounds.source_degree_max + 1):
                for theta in monotone_maps(mp, m):
                    jm = j_morphism(theta, m)
                    f = compose_theory(jm, fp)
                    if f.total_length > bounds.length_bound:
                        continue
                    if (m, f.components) not in by_key:
                        continue
                    relations += 1
                    for b in range(N + 1):
                        for xi in X.grid(m, b):
                            image = apply_outer_monotone(X, theta, m, b, xi)
                            ufs[b].union((m, f.components, xi), (mp, fp.components, image))
        rel_counts[n] = relations
        levels = [frozenset(ufs[b].find(t) for t in ufs[b].parent) for b in range(N + 1)]
        faces = {}
        for b in range(1, N + 1):
            for i in range(b + 1):
                table = {}
                for rep in levels[b]:
                    m, comps, xi = rep
                    table[rep] = ufs[b - 1].find((m, comps, X.rows[m].face(b, i, xi)))
                faces[(b, i)] = table
        degs = {}
        for b in range(N):
            for i in range(b + 1):
                table = {}
                for rep in levels[b]:
                    m, comps, xi = rep
                    table[rep] = ufs[b + 1].find((m, comps, X.rows[m].degeneracy(b, i, xi)))
                degs[(b, i)] = table
        values[n] = make_sset(N, levels, faces, degs)
        component[n] = [
            {t: ufs[b].find(t) for t in ufs[b].parent} for b in range(N + 1)
        ]
    return values, component, gen_counts, rel_counts


def kan_extend(X, bounds, certify=True):
    """Pointwise left Kan extension of a reduced Segal precategory along the
    cosimplicial family, as an enumerated comma-category colimit.

    The colimit at each target arity is a union-find quotient of the values
    over all enumerated comma objects; when certify is set, the computation
    is re-run with both source bounds raised by one and certified stable if
    the canonical comparison is a levelwise bijection.
    """
    if isinstance(X, SegalPrecategory) and len(X.object_set) != 1:
        raise ValueError("the Kan extension is defined here for reduced objects only")
    values, component, gen_counts, rel_counts = _kan_once(X, bounds)
    certified = False
    rerun = None
    if certify:
        rerun = bounds.grown()
        values2, component2, _, _ = _kan_once(X, rerun)
        certified = True
        for n in range(bounds.target_arity_max + 1):
            for b in range(X.inner_truncation + 1):
                image = {}
                for member, rep in component[n][b].items():
                    rep2 = component2[n][b][member]
                    if rep in image and image[rep] != rep2:
                        certified = False
                    image[rep] = rep2
                if len(set(image.values())) != len(image):
                    certified = False
                if set(image.values()) != set(values2[n].level(b)):
                    certified = False
    return CommaColimitJob(
        bounds,
        X.inner_truncation,
        values,
        component,
        gen_counts,
        rel_counts,
        certified,
        rerun,
    )


def kan_unit(X, job):
    """The natural comparison X -> restrict of the Kan extension values."""
    M = min(X.outer_truncation, job.bounds.target_arity_max)
    L = job.bounds.length_bound
    row_maps = []
    for m in range(M + 1):
        if m > L or m > job.bounds.source_degree_max:
            raise ValueError("identity morphism falls outside the bounds; raise them")
        ident = identity_morphism(m)
        comps = []
        for b in range(X.inner_truncation + 1):
            comps.append(
                {xi: job.class_of(m, b, (m, ident.components, xi)) for xi in X.grid(m, b)}
            )
        row_maps.append(make_map(X.rows[m], job.values[m], comps))
    return row_maps


def restrict_job(job, outer_trunc=None):
    """Restriction of a certified Kan extension job along the cosimplicial
    family (rows are the job values)."""

    class _JobDiagram:
        arity_max = job.bounds.target_arity_max

        @staticmethod
        def value(n):
            return job.values[n]

        @staticmethod
        def act(f):
            table = job.act_partial(f)
            comps = []
            for b in range(job.inner_trunc + 1):
                lvl = table[b]
                missing = set(job.values[f.source].level(b)) - set(lvl)
                if missing:
                    raise ValueError("action not total on classes; raise the bounds")
                comps.append(lvl)
            return make_map(job.values[f.source], job.values[f.target], comps)

    return restrict(_JobDiagram, outer_trunc)


def kan_map(X, Y, f, job_X, job_Y):
    """Functoriality of the Kan extension on a map of reduced spaces."""
    out = {}
    for n in range(job_X.bounds.target_arity_max + 1):
        comps = []
        for b in range(X.inner_truncation + 1):
            table = {}
            for member, rep in job_X.component[n][b].items():
                m, comps_f, xi = member
                image = job_Y.class_of(n, b, (m, comps_f, f.apply(m, b, xi)))
                if rep in table and table[rep] != image:
                    raise AssertionError("kan map inconsistent across class members")
                table[rep] = image
            comps.append(table)
        out[n] = make_map(job_X.values[n], job_Y.values[n], comps)
    return out


# ---------------------------------------------------------------------------
# the multi-object cosimplicial family


def jo_morphism(theta, x, object_set):
    """O-category theory morphism T(sort of x) -> T(sort of x . theta) for a
    monotone theta; generators map to the interval paths, mirroring the
    monoid case."""
    m = len(x) - 1
    mp = len(theta) - 1
    if any(theta[i] > theta[i + 1] for i in range(mp)) or not all(
        0 <= v <= m for v in theta
    ):
        raise ValueError(f"not monotone into [{m}]: {theta}")
    y = tuple(x[v] for v in theta)
    src_sort, src_perm = sort_of_tuple(x)
    tgt_sort, tgt_perm = sort_of_tuple(y)
    comps = [None] * len(tgt_sort)
    for j in range(1, mp + 1):
        edges = tuple(src_perm[t - 1] for t in range(theta[j - 1] + 1, theta[j] + 1))
        comps[tgt_perm[j - 1]] = CatPath(y[j - 1], edges)
    return OCatMorphism(tuple(object_set), src_sort, tgt_sort, tuple(comps))


@dataclass(eq=False)
class OCatCosimplicial:
    object_set: tuple
    n_max: int
    face: dict  # (n, x, i) -> OCatMorphism
    degeneracy: dict  # (n, x, i) -> OCatMorphism


def build_J_O(object_set, n_max):
    """The object-set indexed analogue of the cosimplicial family, with the
    simplicial identities of the index category verified on every tuple."""
    object_set = tuple(ordered(set(object_set)))
    if not object_set:
        raise ValueError("object set must be nonempty")
    face, deg = {}, {}
    for n in range(1, n_max + 1):
        for x in iproduct(object_set, repeat=n + 1):
            for i in range(n + 1):
                face[(n, x, i)] = jo_morphism(_delta(n, i), x, object_set)
    for n in range(n_max):
        for x in iproduct(object_set, repeat=n + 1):
            for i in range(n + 1):
                deg[(n, x, i)] = jo_morphism(_sigma(n, i), x, object_set)
    JO = OCatCosimplicial(object_set, n_max, face, deg)
    _verify_ocat_cosimplicial(JO)
    return JO


def _drop(x, i):
    return x[:i] + x[i + 1 :]


def _double(x, i):
    return x[: i + 1] + x[i:]


def _verify_ocat_cosimplicial(JO):
    n_max = JO.n_max
    for n in range(2, n_max + 1):
        for x in iproduct(JO.object_set, repeat=n + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = compose_ocat(JO.face[(n, x, j)], JO.face[(n - 1, _drop(x, j), i)])
                    rhs = compose_ocat(JO.face[(n, x, i)], JO.face[(n - 1, _drop(x, i), j - 1)])
                    if lhs != rhs:
                        raise ConstructionError(
                            f"face-face identity fails at n={n}, x={x}, i={i}, j={j}"
                        )
    for n in range(n_max - 1):
        for x in iproduct(JO.object_set, repeat=n + 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = compose_ocat(
                        JO.degeneracy[(n, x, j)], JO.degeneracy[(n + 1, _double(x, j), i)]
                    )
                    rhs = compose_ocat(
                        JO.degeneracy[(n, x, i)], JO.degeneracy[(n + 1, _double(x, i), j + 1)]
                    )
                    if lhs != rhs:
                        raise ConstructionError(
                            f"degeneracy-degeneracy identity fails at n={n}, x={x}"
                        )
    for n in range(n_max):
        for x in iproduct(JO.object_set, repeat=n + 1):
            for j in range(n + 1):
                xj = _double(x, j)
                for i in range(n + 2):
                    lhs = compose_ocat(JO.degeneracy[(n, x, j)], JO.face[(n + 1, xj, i)])
                    if i == j or i == j + 1:
                        sort, _ = sort_of_tuple(x)
                        rhs = ocat_identity(JO.object_set, sort)
                    elif i < j:
                        rhs = compose_ocat(
                            JO.face[(n, x, i)], JO.degeneracy[(n - 1, _drop(x, i), j - 1)]
                        )
                    else:
                        rhs = compose_ocat(
                            JO.face[(n, x, i - 1)], JO.degeneracy[(n - 1, _drop(x, i - 1), j)]
                        )
                    if lhs != rhs:
                        raise ConstructionError(
                            f"face-degeneracy identity fails at n={n}, x={x}, i={i}, j={j}"
                        )


def restrict_O(D, outer_trunc, JO=None):
    """Assemble a multi-sorted represented diagram into a Segal precategory:
    row m is the disjoint union over (m+1)-tuples of the value at their sort."""
    object_set = D.object_set
    if JO is None:
        JO = build_J_O(object_set, outer_trunc)
    N = D.inner_trunc
    from .simplicial import discrete

    rows = []
    for m in range(outer_trunc + 1):
        ids = set()
        for y in iproduct(object_set, repeat=m + 1):
            sort, _ = sort_of_tuple(y)
            for t in D.value(sort).level(0):
                ids.add((y, t))
        rows.append(discrete(ids, N))
    faces = {}
    for m in range(1, outer_trunc + 1):
        for i in range(m + 1):
            table = {}
            for y in iproduct(object_set, repeat=m + 1):
                action = D.act(JO.face[(m, y, i)]).components[0]
                target_y = _drop(y, i)
                for t in action:
                    table[(y, t)] = (target_y, action[t])
            faces[(m, i)] = make_map(
                rows[m], rows[m - 1], [dict(table) for _ in range(N + 1)]
            )
    degs = {}
    for m in range(outer_trunc):
        for i in range(m + 1):
            table = {}
            for y in iproduct(object_set, repeat=m + 1):
                action = D.act(JO.degeneracy[(m, y, i)]).components[0]
                target_y = _double(y, i)
                for t in action:
                    table[(y, t)] = (target_y, action[t])
            degs[(m, i)] = make_map(
                rows[m], rows[m + 1], [dict(table) for _ in range(N + 1)]
            )
    space = make_space(outer_trunc, N, rows, faces, degs)
    renames = [{((o,), ()): o for o in object_set}] + [None] * outer_trunc
    from .spaces import relabel_rows

    return as_precategory(relabel_rows(space, renames))
