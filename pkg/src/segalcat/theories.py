"""The algebraic theory of monoids and the multi-sorted theory of
O-categories, truncated to explicit length bounds.

Morphisms between free monoids are tuples of words; morphisms between free
categories on a fixed object set are tuples of paths.  Every hom-set valued
computation carries an explicit length bound, since the untruncated hom-sets
are infinite.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .simplicial import SimplicialMap, discrete, make_map
from .util import ordered, sort_key


# ---------------------------------------------------------------------------
# free monoid words


@dataclass(frozen=True)
class Word:
    """Word in generators x_1..x_arity; letters are 1-based indices."""

    arity: int
    letters: tuple

    def __post_init__(self):
        if any(not 1 <= i <= self.arity for i in self.letters):
            raise ValueError(f"letter out of range for arity {self.arity}: {self.letters}")

    @property
    def length(self):
        return len(self.letters)

    @property
    def sort_token(self):
        return (self.arity, self.letters)

    def __str__(self):
        if not self.letters:
            return "e"
        parts = []
        for i in self.letters:
            if parts and parts[-1][0] == i:
                parts[-1][1] += 1
            else:
                parts.append([i, 1])
        return "".join(f"x{i}" + (f"^{p}" if p > 1 else "") for i, p in parts)


def identity_word(arity):
    return Word(arity, ())


def generator_word(arity, i):
    return Word(arity, (i,))


def concat(u, v):
    if u.arity != v.arity:
        raise ValueError("cannot concatenate words of different arities")
    return Word(u.arity, u.letters + v.letters)


def enumerate_words(n, L):
    """All words of length <= L in n generators, length-then-lex order.

    Counts: (n^(L+1)-1)/(n-1) for n >= 2, L+1 for n = 1, and 1 for n = 0.
    """
    if n < 0 or L < 0:
        raise ValueError("arity and length bound must be nonnegative")
    out = [Word(n, ())]
    frontier = [()]
    for _ in range(L):
        frontier = [t + (i,) for t in frontier for i in range(1, n + 1)]
        out.extend(Word(n, t) for t in frontier)
    return out


def substitute(word, images, arity=None):
    """Replace letter i by images[i-1]; images are words of a common arity.

    The ambient arity must be passed explicitly when images is empty (a word
    of arity 0 still lands in a free monoid of some arity)."""
    if len(images) != word.arity:
        raise ValueError("image count must equal the word arity")
    if images:
        arity = images[0].arity
    elif arity is None:
        raise ValueError("ambient arity required when substituting into arity 0")
    letters = []
    for i in word.letters:
        letters.extend(images[i - 1].letters)
    return Word(arity, tuple(letters))


# ---------------------------------------------------------------------------
# morphisms of the theory of monoids


@dataclass(frozen=True)
class TheoryMorphism:
    """Morphism T_source -> T_target: a target-tuple of words in source letters.

    Equivalently a monoid map from the free monoid on `target` generators to
    the free monoid on `source` generators.
    """

    source: int
    target: int
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.target:
            raise ValueError("component count must equal target arity")
        for w in self.components:
            if w.arity != self.source:
                raise ValueError("component arity must equal source arity")

    @property
    def total_length(self):
        return sum(w.length for w in self.components)

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.components) + ")"


def identity_morphism(n):
    return TheoryMorphism(n, n, tuple(generator_word(n, i) for i in range(1, n + 1)))


def projection(n, i):
    """p_{n,i}: T_n -> T_1 selecting the i-th coordinate (1-based)."""
    if not 1 <= i <= n:
        raise ValueError(f"projection index {i} out of range for arity {n}")
    return TheoryMorphism(n, 1, (generator_word(n, i),))


def compose_theory(f, g):
    """Composite of f: T_a -> T_b then g: T_b -> T_c, by substitution."""
    if f.target != g.source:
        raise ValueError(f"arities do not chain: {f.source}->{f.target} then {g.source}->{g.target}")
    comps = tuple(substitute(w, f.components, f.source) for w in g.components)
    return TheoryMorphism(f.source, g.target, comps)


def enumerate_morphisms(a, b, L):
    """All morphisms T_a -> T_b of total component length <= L."""
    words = enumerate_words(a, L)
    out = []

    def extend(prefix, remaining):
        if len(prefix) == b:
            out.append(TheoryMorphism(a, b, tuple(prefix)))
            return
        for w in words:
            if w.length <= remaining:
                prefix.append(w)
                extend(prefix, remaining - w.length)
                prefix.pop()

    extend([], L)
    return out


# ---------------------------------------------------------------------------
# finite monoids


@dataclass(frozen=True, eq=False)
class Monoid:
    elements: tuple
    identity: object
    table: dict  # (a, b) -> a*b

    def multiply(self, a, b):
        return self.table[(a, b)]


def make_monoid(elements, identity, table):
    """Validate associativity and the two-sided identity eagerly."""
    elements = tuple(elements)
    if identity not in elements:
        raise ValueError("identity must be an element")
    for a, b in iproduct(elements, repeat=2):
        if (a, b) not in table:
            raise ValueError(f"table missing product {(a, b)}")
        if table[(a, b)] not in elements:
            raise ValueError(f"product {(a, b)} falls outside the element set")
    for a in elements:
        if table[(identity, a)] != a or table[(a, identity)] != a:
            raise ValueError(f"identity fails at {a!r}")
    for a, b, c in iproduct(elements, repeat=3):
        if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
            raise ValueError(f"associativity fails at {(a, b, c)}")
    return Monoid(elements, identity, dict(table))


def cyclic_monoid(n):
    elems = tuple(range(n))
    table = {(a, b): (a + b) % n for a in elems for b in elems}
    return make_monoid(elems, 0, table)


def evaluate_word(word, monoid, args):
    """Evaluate a word at a tuple of monoid elements (empty word = identity)."""
    if len(args) != word.arity:
        raise ValueError("argument count must equal word arity")
    acc = monoid.identity
    for i in word.letters:
        acc = monoid.multiply(acc, args[i - 1])
    return acc


# ---------------------------------------------------------------------------
# strict algebras of the monoid theory


@dataclass(eq=False)
class StrictAlgebra:
    """Product-preserving values of the monoid theory on a finite monoid.

    Carrier at arity n is the discrete simplicial set on n-tuples of monoid
    elements; carriers are exact products, no truncation involved.
    """

    monoid: Monoid
    arity_max: int
    inner_trunc: int
    carriers: dict  # n -> TruncatedSimplicialSet

    def value(self, n):
        return self.carriers[n]

    def act(self, f):
        """The carrier map of f: T_a -> T_b (evaluation of each component)."""
        src, dst = self.carriers[f.source], self.carriers[f.target]
        table = {
            t: tuple(evaluate_word(w, self.monoid, t) for w in f.components)
            for t in src.level(0)
        }
        comps = [dict(table) for _ in range(self.inner_trunc + 1)]
        return make_map(src, dst, comps)


def algebra_of_monoid(monoid, arity_max, inner_trunc=1):
    carriers = {}
    for n in range(arity_max + 1):
        tuples = [()]
        for _ in range(n):
            tuples = [t + (a,) for t in tuples for a in monoid.elements]
        carriers[n] = discrete(tuples, inner_trunc)
    return StrictAlgebra(monoid, arity_max, inner_trunc, carriers)


def check_product_preservation(algebra):
    """Exact preservation: carrier(T_n) ids are precisely the n-fold tuples of
    carrier(T_1) entries, and projections act by coordinate selection."""
    singles = sorted(algebra.carriers[1].level(0), key=sort_key)
    for n in range(algebra.arity_max + 1):
        expected = {()}
        for _ in range(n):
            expected = {t + s for t in expected for s in singles}
        if set(algebra.carriers[n].level(0)) != expected:
            return False
        for i in range(1, n + 1):
            proj = algebra.act(projection(n, i))
            for t in algebra.carriers[n].level(0):
                if proj.components[0][t] != (t[i - 1],):
                    return False
    return True


# ---------------------------------------------------------------------------
# represented diagrams of the monoid theory


@dataclass(eq=False)
class TheoryDiagram:
    """Truncated functor from the monoid theory to finite simplicial sets.

    Values are discrete simplicial sets whose points are hom-tuples bounded
    by total word length; the action of a theory morphism is substitution
    and is only defined where it stays inside the bound.
    """

    hom_arity: int  # the representing arity k
    length_bound: int
    arity_max: int
    inner_trunc: int
    values: dict  # n -> TruncatedSimplicialSet

    def value(self, n):
        return self.values[n]

    def act(self, f):
        """Action of f: T_a -> T_b by postcomposition.  Raises if any image
        escapes the length bound (cosimplicial structure maps never do)."""
        src, dst = self.values[f.source], self.values[f.target]
        table = {}
        for t in src.level(0):
            g = TheoryMorphism(self.hom_arity, f.source, t)
            h = compose_theory(g, f)
            if h.total_length > self.length_bound:
                raise ValueError(
                    f"action of {f} escapes length bound {self.length_bound} at {t}"
                )
            table[t] = h.components
        comps = [dict(table) for _ in range(self.inner_trunc + 1)]
        return make_map(src, dst, comps)

    def act_partial(self, f):
        """Substitution action restricted to inputs staying inside the bound."""
        table = {}
        for t in self.values[f.source].level(0):
            g = TheoryMorphism(self.hom_arity, f.source, t)
            h = compose_theory(g, f)
            if h.total_length <= self.length_bound:
                table[t] = h.components
        return table


def represented_diagram_M(k, L, arity_max, inner_trunc=1):
    """The functor represented at arity k: arity n maps to the n-tuples of
    words in k letters of total length <= L (its truncated hom-set)."""
    if k < 0:
        raise ValueError("representing arity must be nonnegative")
    values = {}
    for n in range(arity_max + 1):
        homs = enumerate_morphisms(k, n, L)
        values[n] = discrete({h.components for h in homs}, inner_trunc)
    return TheoryDiagram(k, L, arity_max, inner_trunc, values)


# ---------------------------------------------------------------------------
# free categories on directed graphs over a fixed object set


@dataclass(frozen=True)
class CatPath:
    """Path in a directed graph: a start object and a chain of edge indices."""

    start: object
    edges: tuple

    @property
    def length(self):
        return len(self.edges)

    @property
    def sort_token(self):
        return (self.start, self.edges)


@dataclass(eq=False)
class FreeCategory:
    objects: tuple
    edges: tuple  # (src, dst) pairs; generator j is edges[j]
    length_bound: int
    hom: dict  # (a, b) -> tuple of CatPath

    def identity(self, o):
        if o not in self.objects:
            raise ValueError(f"unknown object {o!r}")
        return CatPath(o, ())

    def path_target(self, p):
        return p.start if not p.edges else self.edges[p.edges[-1]][1]

    def path_source(self, p):
        return p.start

    def compose(self, p, q):
        """p then q; None when the composite exceeds the length bound."""
        if self.path_target(p) != q.start:
            raise ValueError("paths do not compose")
        if p.length + q.length > self.length_bound:
            return None
        return CatPath(p.start, p.edges + q.edges)

    def all_morphisms(self):
        out = []
        for key in sorted(self.hom, key=sort_key):
            out.extend(self.hom[key])
        return out


def free_category(objects, edges, L):
    """Free category on a directed graph: hom(a, b) holds the paths a -> b of
    length <= L, identities included."""
    objects = tuple(objects)
    edges = tuple(tuple(e) for e in edges)
    for src, dst in edges:
        if src not in objects or dst not in objects:
            raise ValueError(f"edge ({src!r}, {dst!r}) has a dangling endpoint")
    hom = {(a, b): [] for a in objects for b in objects}
    outgoing = {o: [j for j, e in enumerate(edges) if e[0] == o] for o in objects}
    for a in objects:
        frontier = [CatPath(a, ())]
        hom[(a, a)].append(CatPath(a, ()))
        for _ in range(L):
            nxt = []
            for p in frontier:
                tail = a if not p.edges else edges[p.edges[-1]][1]
                for j in outgoing[tail]:
                    q = CatPath(a, p.edges + (j,))
                    hom[(a, edges[j][1])].append(q)
                    nxt.append(q)
            frontier = nxt
    hom = {key: tuple(sorted(ps, key=lambda p: sort_key((p.length, p.edges)))) for key, ps in hom.items()}
    return FreeCategory(objects, edges, L, hom)


def linear_category(x, object_set, L):
    """Free category on the linear graph of the tuple x over object_set."""
    edges = [(x[i - 1], x[i]) for i in range(1, len(x))]
    for o in x:
        if o not in object_set:
            raise ValueError(f"label {o!r} outside the object set")
    return free_category(tuple(object_set), edges, L)


# ---------------------------------------------------------------------------
# the multi-sorted theory of O-categories


def canonical_sort(pairs):
    """Canonical key of a sort sequence: pairs sorted lexicographically,
    with the permutation sending positional index -> canonical index."""
    pairs = tuple(tuple(p) for p in pairs)
    order = sorted(range(len(pairs)), key=lambda j: (sort_key(pairs[j]), j))
    perm = [0] * len(pairs)
    for canon_idx, j in enumerate(order):
        perm[j] = canon_idx
    return tuple(pairs[j] for j in order), tuple(perm)


def sort_of_tuple(x):
    """The (canonical sort, permutation) of the linear object on the tuple x."""
    return canonical_sort([(x[i - 1], x[i]) for i in range(1, len(x))])


@dataclass(frozen=True)
class OCatMorphism:
    """Morphism T_source_sort -> T_target_sort of the O-category theory.

    Components assign to each generator of the target sort a path in the
    graph of the source sort (a functor between the free categories, going
    the other way, identity on objects).
    """

    object_set: tuple
    source_sort: tuple
    target_sort: tuple
    components: tuple  # CatPath per target generator, edges indexing source_sort

    @property
    def total_length(self):
        return sum(p.length for p in self.components)


def _sort_category(object_set, sort, L):
    return free_category(object_set, list(sort), L)


def compose_ocat(f, g, L=None):
    """f: T_a -> T_b then g: T_b -> T_c, by path substitution."""
    if f.target_sort != g.source_sort:
        raise ValueError("sorts do not chain")
    src_sort = f.source_sort
    comps = []
    for path in g.components:
        edges = []
        cursor = path.start
        for j in path.edges:
            piece = f.components[j]
            if piece.start != cursor:
                raise ValueError("substituted paths do not chain")
            edges.extend(piece.edges)
            cursor = piece.start if not piece.edges else src_sort[piece.edges[-1]][1]
        comps.append(CatPath(path.start, tuple(edges)))
    return OCatMorphism(f.object_set, f.source_sort, g.target_sort, tuple(comps))


def ocat_identity(object_set, sort):
    comps = tuple(CatPath(sort[j][0], (j,)) for j in range(len(sort)))
    return OCatMorphism(tuple(object_set), tuple(sort), tuple(sort), comps)


@dataclass(eq=False)
class MultiSortedDiagram:
    """Truncated represented functor of the O-category theory.

    Values are keyed by canonical sorts; the value at a sort is the discrete
    set of path tuples (one per generator, endpoints matching the sort) in
    the representing linear category, bounded by total path length.
    """

    object_set: tuple
    base_tuple: tuple  # the representing tuple x
    length_bound: int
    inner_trunc: int
    category: FreeCategory  # linear category of the base tuple
    values: dict  # canonical sort -> TruncatedSimplicialSet

    def value(self, sort):
        return self.values[sort]

    def act(self, f):
        """Action of an O-category theory morphism by substitution."""
        src, dst = self.values[f.source_sort], self.values[f.target_sort]
        table = {}
        for t in src.level(0):
            images = []
            total = 0
            for path in f.components:
                edges = []
                cursor = path.start
                for j in path.edges:
                    piece = t[j]
                    edges.extend(piece.edges)
                    cursor = self.category.path_target(piece)
                img = CatPath(path.start, tuple(edges))
                images.append(img)
                total += img.length
            if total > self.length_bound:
                raise ValueError("action escapes the length bound")
            table[t] = tuple(images)
        comps = [dict(table) for _ in range(self.inner_trunc + 1)]
        return make_map(src, dst, comps)


def represented_diagram_C(n, x, object_set, L, arity_max=None, inner_trunc=1):
    """Represented functor of the theory of O-categories at the linear object
    on x; values enumerated at every linear sort of arity <= arity_max."""
    x = tuple(x)
    object_set = tuple(object_set)
    if len(x) != n + 1:
        raise ValueError("tuple length must be n+1")
    for o in x:
        if o not in object_set:
            raise ValueError(f"label {o!r} outside the object set")
    if arity_max is None:
        arity_max = n
    cat = linear_category(x, object_set, L)
    values = {}
    sorts = set()
    for m in range(arity_max + 1):
        for y in iproduct(object_set, repeat=m + 1):
            sort, _ = sort_of_tuple(y)
            sorts.add(sort)
    for sort in sorted(sorts, key=sort_key):
        tuples = [((), 0)]
        for a, b in sort:
            tuples = [
                (t + (p,), used + p.length)
                for t, used in tuples
                for p in cat.hom[(a, b)]
                if used + p.length <= L
            ]
        values[sort] = discrete({t for t, _ in tuples}, inner_trunc)
    return MultiSortedDiagram(object_set, x, L, inner_trunc, cat, values)
