"""Nerves of finite monoids, truncated free monoids and free categories.

Level k of a nerve is the set of composable k-tuples; the outer faces drop
an end or multiply/compose adjacent entries, and degeneracies insert an
identity.  Free objects are truncated by TOTAL word/path length so that the
multiplying faces never escape the truncation.
"""

from dataclasses import dataclass

from .simplicial import make_sset
from .theories import CatPath, Word, concat, evaluate_word


@dataclass(eq=False)
class NerveObject:
    space: object  # TruncatedSimplicialSet
    provenance: tuple
    weights: tuple | None  # per level: dict id -> total length, or None

    def decode(self, k, x):
        """The bar entries of a level-k simplex."""
        if self.provenance[0] == "category" and k == 0:
            return (x,)
        return x

    def bar_string(self, k, x):
        entries = self.decode(k, x)
        if self.provenance[0] == "monoid":
            parts = [str(e) for e in entries]
        elif self.provenance[0] == "free_monoid":
            parts = [str(w) for w in entries]
        else:
            parts = [
                e if isinstance(e, str) else "*".join(f"e{j}" for j in e.edges) or f"id_{e.start}"
                for e in entries
            ]
        return "(" + "|".join(parts) + ")" if parts else "()"


def _bar_faces(levels, trunc, multiply, unit_at):
    """Structure maps of a bar-style nerve given a multiplication on entries.

    multiply(t, i): merge entries i-1 and i (1-based inner face).
    unit_at(t, i): identity entry to insert at slot i of tuple t.
    """
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
                    table[t] = multiply(t, i)
            faces[(k, i)] = table
    degs = {}
    for k in range(trunc):
        for i in range(k + 1):
            degs[(k, i)] = {t: t[:i] + (unit_at(t, i),) + t[i:] for t in levels[k]}
    return faces, degs


def nerve_monoid(monoid, trunc):
    """Nerve of a finite monoid: level k is the set of k-tuples of elements."""
    levels = [frozenset({()})]
    for k in range(1, trunc + 1):
        prev = levels[-1]
        levels.append(frozenset(t + (a,) for t in prev for a in monoid.elements))
    multiply = lambda t, i: t[: i - 1] + (monoid.multiply(t[i - 1], t[i]),) + t[i + 1 :]
    unit_at = lambda t, i: monoid.identity
    faces, degs = _bar_faces(levels, trunc, multiply, unit_at)
    space = make_sset(trunc, levels, faces, degs)
    return NerveObject(space, ("monoid", monoid), None)


def nerve_free_monoid(n, trunc, L):
    """Nerve of the free monoid on n generators, truncated by total length.

    Level j holds the j-tuples of words whose lengths sum to at most L, so
    the face maps (which concatenate adjacent entries) stay inside."""
    if n < 0:
        raise ValueError("generator count must be nonnegative")
    levels = [frozenset({()})]
    words = []
    frontier = [()]
    words.append(Word(n, ()))
    for _ in range(L):
        frontier = [t + (i,) for t in frontier for i in range(1, n + 1)]
        words.extend(Word(n, t) for t in frontier)
    for j in range(1, trunc + 1):
        prev = levels[-1]
        nxt = set()
        for t in prev:
            used = sum(w.length for w in t)
            for w in words:
                if used + w.length <= L:
                    nxt.add(t + (w,))
        levels.append(frozenset(nxt))
    multiply = lambda t, i: t[: i - 1] + (concat(t[i - 1], t[i]),) + t[i + 1 :]
    unit_at = lambda t, i: Word(n, ())
    faces, degs = _bar_faces(levels, trunc, multiply, unit_at)
    space = make_sset(trunc, levels, faces, degs)
    weights = tuple(
        {t: sum(w.length for w in t) for t in lvl} for lvl in levels
    )
    return NerveObject(space, ("free_monoid", n, L), weights)


def nerve_category(cat, trunc):
    """Nerve of a free category value: level 0 is the object set, level k the
    composable k-tuples of paths with total length within the category bound."""
    L = cat.length_bound
    levels = [frozenset(cat.objects)]
    chains = [[(o, (), 0) for o in cat.objects]]  # (end object, tuple, used)
    for k in range(1, trunc + 1):
        nxt = []
        for end, t, used in chains[-1]:
            for key, paths in cat.hom.items():
                if key[0] != end:
                    continue
                for p in paths:
                    if used + p.length <= L:
                        nxt.append((key[1], t + (p,), used + p.length))
        chains.append(nxt)
        levels.append(frozenset(t for _, t, _ in nxt))

    def multiply(t, i):
        merged = cat.compose(t[i - 1], t[i])
        if merged is None:
            raise AssertionError("composite escaped the length bound")
        return t[: i - 1] + (merged,) + t[i + 1 :]

    faces = {}
    for k in range(1, trunc + 1):
        for i in range(k + 1):
            table = {}
            for t in levels[k]:
                if k == 1:
                    # faces to level 0 pick out objects
                    table[t] = cat.path_target(t[0]) if i == 0 else t[0].start
                elif i == 0:
                    table[t] = t[1:]
                elif i == k:
                    table[t] = t[:-1]
                else:
                    table[t] = multiply(t, i)
            faces[(k, i)] = table
    degs = {}
    for k in range(trunc):
        for i in range(k + 1):
            table = {}
            for t in levels[k]:
                if k == 0:
                    table[t] = (CatPath(t, ()),)
                else:
                    obj = cat.path_target(t[i - 1]) if i > 0 else t[0].start
                    table[t] = t[:i] + (CatPath(obj, ()),) + t[i:]
            degs[(k, i)] = table
    space = make_sset(trunc, levels, faces, degs)
    weights = [None if trunc < 0 else {o: 0 for o in cat.objects}]
    for k in range(1, trunc + 1):
        weights.append({t: sum(p.length for p in t) for t in levels[k]})
    return NerveObject(space, ("category", cat), tuple(weights))
