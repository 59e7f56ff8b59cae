"""Shared helpers: deterministic ordering, union-find, canonical JSON."""

import json


def sort_key(x):
    """Total order key for heterogeneous simplex identifiers.

    Identifiers may be ints, strings, tuples, frozensets (quotients and
    products nest them) or objects exposing a `sort_token` tuple.  Python 3
    refuses to compare across types, so every value is mapped to a
    comparable tagged tree.
    """
    if isinstance(x, tuple):
        return (2, tuple(sort_key(e) for e in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(sort_key(e) for e in x)))
    if isinstance(x, bool):
        return (0, "bool", str(x))
    if isinstance(x, int):
        return (0, "int", "", x)
    token = getattr(x, "sort_token", None)
    if token is not None:
        return (4, type(x).__name__, sort_key(token))
    return (1, type(x).__name__, str(x))


def ordered(items):
    """Deterministically sorted list of identifiers."""
    return sorted(items, key=sort_key)


class UnionFind:
    """Disjoint sets over arbitrary hashable elements.

    Representatives are canonical: the sort_key-least member of each class.
    """

    def __init__(self):
        self.parent = {}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            return x
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        px, py = self.find(x), self.find(y)
        if px == py:
            return px
        rep = min(px, py, key=sort_key)
        self.parent[px] = self.parent[py] = rep
        return rep

    def classes(self):
        """Map representative -> frozenset of members (seen elements only)."""
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return {rep: frozenset(members) for rep, members in out.items()}


def canonical_json(obj):
    """Byte-stable JSON text: sorted keys, fixed separators, newline at end."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def monotone_maps(m, n):
    """All order-preserving maps [m] -> [n] as (m+1)-tuples of values."""
    out = []

    def extend(prefix, low):
        if len(prefix) == m + 1:
            out.append(tuple(prefix))
            return
        for v in range(low, n + 1):
            prefix.append(v)
            extend(prefix, v)
            prefix.pop()

    if m < 0 or n < 0:
        return out
    extend([], 0)
    return out


def is_monotone(phi, n):
    return all(0 <= v <= n for v in phi) and all(
        phi[i] <= phi[i + 1] for i in range(len(phi) - 1)
    )
