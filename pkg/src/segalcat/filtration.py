"""The word-length filtration of the transposed nerve of a free monoid,
built two ways: directly from the length grading, and by attaching top
simplices along the part already present.  Agreement of the two routes is
the strict shadow of the localization argument they support.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .nerves import nerve_free_monoid
from .simplicial import make_map
from .spaces import (
    Diagram,
    SpaceMap,
    as_precategory,
    colimit_O,
    g_object,
    labeled_simplex_maps,
    make_space_map,
    transpose,
)
from .theories import Word
from .util import ordered, sort_key


@dataclass(eq=False)
class FiltrationStage:
    generators: int
    stage: int
    space: object  # SegalPrecategory, reduced
    construction: str  # formula | pushout
    inclusion: SpaceMap | None  # from the previous stage
    bar: dict  # (m, b) -> {id: tuple of Words}, the classifying values

    def level_count(self, m, b=0):
        return len(self.space.grid(m, b))

    def capped_count(self, m, cap, b=0):
        return sum(
            1
            for z in self.space.grid(m, b)
            if sum(w.length for w in self.bar[(m, b)][z]) <= cap
        )


def _formula_stage(n, k, j_max, inner_trunc):
    nerve = nerve_free_monoid(n, j_max, k)
    space = as_precategory(transpose(nerve.space, inner_trunc=inner_trunc))
    bar = {}
    for m in range(j_max + 1):
        for b in range(inner_trunc + 1):
            bar[(m, b)] = {t: t for t in space.grid(m, b)}
    return space, bar


def psi_formula(n, k, j_max, inner_trunc=1):
    """Stage k by the grading: level j holds the j-tuples of words in n
    letters of total length at most k."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 generators and stage k >= 1")
    space, bar = _formula_stage(n, k, j_max, inner_trunc)
    inclusion = None
    if k > 1:
        prev, _ = _formula_stage(n, k - 1, j_max, inner_trunc)
        rows = []
        for m in range(j_max + 1):
            comps = [
                {t: t for t in prev.grid(m, b)} for b in range(inner_trunc + 1)
            ]
            rows.append(make_map(prev.rows[m], space.rows[m], comps))
        inclusion = make_space_map(prev, space, rows)
    return FiltrationStage(n, k, space, "formula", inclusion, bar)


def _cell_bar(word, sigma):
    """Bar entries of a simplex of the top cell attached along `word`: the
    monotone tuple sigma carves the letters into consecutive blocks."""
    return tuple(
        Word(word.arity, word.letters[sigma[t - 1] : sigma[t]])
        for t in range(1, len(sigma))
    )


def _spine_stage(n, j_max, inner_trunc):
    """Stage 1: the spine of the reduced n-simplex, with its bar values."""
    G = g_object(n, ("*",) * (n + 1), ("*",), j_max, inner_trunc=inner_trunc)
    word = Word(n, tuple(range(1, n + 1)))
    bar = {}
    for m in range(j_max + 1):
        for b in range(inner_trunc + 1):
            table = {}
            unit = G.transpose_unit.row_maps[m].components[b]
            for sigma, image in unit.items():
                if image in G.precategory.grid(m, b):
                    value = _cell_bar(word, sigma)
                    if table.get(image, value) != value:
                        raise AssertionError("inconsistent bar value on the spine")
                    table[image] = value
            pt = G.points.apply(m, b, "*")
            if pt in G.precategory.grid(m, b):
                table[pt] = tuple(Word(n, ()) for _ in range(m))
            bar[(m, b)] = table
    for m in range(j_max + 1):
        for b in range(inner_trunc + 1):
            missing = set(G.precategory.grid(m, b)) - set(bar[(m, b)])
            if missing:
                raise AssertionError(f"unlabelled spine simplices at ({m},{b})")
    return G.precategory, bar


def psi_pushout(n, k, j_max, inner_trunc=1):
    """Stage k by attachment: starting from the spine, stage i+1 glues one
    reduced (i+1)-simplex per word of length i+1 along the part of its
    boundary already present (the two big faces sharing the middle)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 generators and stage k >= 1")
    space, bar = _spine_stage(n, j_max, inner_trunc)
    inclusion = None
    for stage in range(2, k + 1):
        space, bar, inclusion = _attach_stage(n, stage, j_max, inner_trunc, space, bar)
    if k == 1:
        return FiltrationStage(n, 1, space, "pushout", None, bar)
    return FiltrationStage(n, k, space, "pushout", inclusion, bar)


def _attach_stage(n, stage, j_max, inner_trunc, prev_space, prev_bar):
    inverse = {}
    for key, table in prev_bar.items():
        inv = {}
        for z, value in table.items():
            if value in inv:
                raise AssertionError("bar classifying map is not injective")
            inv[value] = z
        inverse[key] = inv
    objects = {"prev": prev_space}
    arrows = []
    cells = {}
    for letters in iproduct(range(1, n + 1), repeat=stage):
        word = Word(n, tuple(letters))
        name = "w" + "_".join(str(i) for i in letters)
        cell, unit, points = labeled_simplex_maps(
            stage, ("*",) * (stage + 1), ("*",), j_max, inner_trunc=inner_trunc
        )
        cell_bar = {}
        for m in range(j_max + 1):
            for b in range(inner_trunc + 1):
                table = {}
                comp = unit.row_maps[m].components[b]
                for sigma, image in comp.items():
                    table[image] = _cell_bar(word, sigma)
                pt = points.apply(m, b, "*")
                table.setdefault(pt, tuple(Word(n, ()) for _ in range(m)))
                cell_bar[(m, b)] = table
        # region already present: simplices whose letter span stays below the
        # stage (the two big faces glued along their shared one)
        keep = {}
        for m in range(j_max + 1):
            for b in range(inner_trunc + 1):
                cellkeep = set()
                comp = unit.row_maps[m].components[b]
                for sigma, image in comp.items():
                    if max(sigma) - min(sigma) <= stage - 1:
                        cellkeep.add(image)
                cellkeep.add(points.apply(m, b, "*"))
                keep[(m, b)] = cellkeep
        from .spaces import subspace

        region, region_incl = subspace(cell, keep)
        attach_rows = []
        for m in range(j_max + 1):
            comps = []
            for b in range(inner_trunc + 1):
                table = {}
                for z in region.grid(m, b):
                    value = cell_bar[(m, b)][z]
                    table[z] = inverse[(m, b)][value]
                comps.append(table)
            attach_rows.append(make_map(region.rows[m], prev_space.rows[m], comps))
        attach = make_space_map(region, prev_space, attach_rows)
        objects[name] = as_precategory(cell)
        objects["r" + name] = as_precategory(region)
        arrows.append(("r" + name, "prev", attach))
        arrows.append(("r" + name, name, region_incl))
        cells[name] = cell_bar
    colim = colimit_O(Diagram(objects, arrows))
    new_space = colim.space
    new_bar = {}
    for m in range(j_max + 1):
        for b in range(inner_trunc + 1):
            table = {}
            for name in objects:
                if name.startswith("r"):
                    continue
                source_bar = prev_bar if name == "prev" else cells[name]
                inj = colim.injections[name].row_maps[m].components[b]
                for z, image in inj.items():
                    value = source_bar[(m, b)][z]
                    if table.get(image, value) != value:
                        raise AssertionError("bar values disagree after attachment")
                    table[image] = value
            if set(table) != set(new_space.grid(m, b)):
                raise AssertionError("bar map does not cover the new stage")
            new_bar[(m, b)] = table
    return as_precategory_passthrough(new_space), new_bar, colim.injections["prev"]


def as_precategory_passthrough(space):
    if hasattr(space, "object_set"):
        return space
    return as_precategory(space)


@dataclass(eq=False)
class StabilizationReport:
    generators: int
    length_bound: int
    rows: list  # (k, j, stage_count, capped_count, nerve_count, stabilized)
    thresholds: dict  # level j -> smallest k with capped stage = nerve level

    def to_rows(self):
        return [
            {
                "k": k,
                "j": j,
                "stage_count": sc,
                "capped_count": cc,
                "nerve_count": nc,
                "stabilized": st,
            }
            for k, j, sc, cc, nc, st in self.rows
        ]


def stabilization_check(n, j_max, L, k_max=None, inner_trunc=1):
    """For each level j, find the smallest stage k whose part of total length
    within the ambient bound already equals the nerve level.

    The stage contains the nerve level inside the bound once k >= L; levels
    j >= 1 grow strictly until then, so their threshold is exactly L.  Level
    zero is a single point throughout and stabilizes immediately.
    """
    if k_max is None:
        k_max = L + 1
    nerve = nerve_free_monoid(n, j_max, L)
    nerve_counts = [len(nerve.space.level(j)) for j in range(j_max + 1)]
    rows = []
    thresholds = {}
    for k in range(1, k_max + 1):
        stage = psi_formula(n, k, j_max, inner_trunc=inner_trunc)
        for j in range(j_max + 1):
            capped = stage.capped_count(j, L)
            stabilized = capped == nerve_counts[j]
            rows.append((k, j, stage.level_count(j), capped, nerve_counts[j], stabilized))
            if stabilized and j not in thresholds:
                thresholds[j] = k
    return StabilizationReport(n, L, rows, thresholds)


def stage_counts_table(n, k_max, j_max, inner_trunc=1, compare=True):
    """Counting table rows (k, j, count_formula, count_pushout, nerve, match)."""
    nerve = nerve_free_monoid(n, j_max, k_max)
    out = []
    for k in range(1, k_max + 1):
        formula = psi_formula(n, k, j_max, inner_trunc=inner_trunc)
        pushout = psi_pushout(n, k, j_max, inner_trunc=inner_trunc) if compare else None
        for j in range(j_max + 1):
            cf = formula.level_count(j)
            cp = pushout.level_count(j) if compare else None
            nerve_count = sum(
                1
                for t in nerve.space.level(j)
                if sum(w.length for w in t) <= k
            )
            out.append(
                {
                    "k": k,
                    "j": j,
                    "count_formula": cf,
                    "count_pushout": cp,
                    "nerve_count": nerve_count,
                    "match": (cf == nerve_count) and (cp is None or cp == cf),
                }
            )
    return out
