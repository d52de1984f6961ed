"""Finite multisemigroups and their Green's relations.

A multisemigroup is a finite set with a set-valued product ``x * y`` that is
associative as sets.  Empty products are allowed; they model composites that
vanish.

Relations are kept as lists of Python ``int`` bitsets: ``rel[x]`` has bit ``y``
set when ``x rel y``.
"""

from __future__ import annotations

import csv
import html
import io
import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence


class InvalidMultisemigroup(ValueError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"associativity fails at {triple}")


class UnknownCell(KeyError):
    pass


class Multisemigroup:
    """Elements are named; products are stored by element index."""

    def __init__(self, elements: Sequence[str], table: Mapping[tuple[int, int], Iterable[int]]):
        self.elements = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element names must be distinct")
        n = len(self.elements)
        self._table = [[frozenset() for _ in range(n)] for _ in range(n)]
        for (x, y), zs in table.items():
            zs = frozenset(zs)
            if not (0 <= x < n and 0 <= y < n) or any(not 0 <= z < n for z in zs):
                raise ValueError(f"product ({x},{y}) -> {sorted(zs)} refers to unknown elements")
            self._table[x][y] = zs
        self._masks = [[_mask(self._table[x][y]) for y in range(n)] for x in range(n)]

    def __len__(self):
        return len(self.elements)

    def mul(self, x: int, y: int) -> frozenset[int]:
        return self._table[x][y]

    def mul_mask(self, x: int, y: int) -> int:
        return self._masks[x][y]

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def __eq__(self, other):
        return isinstance(other, Multisemigroup) and self.elements == other.elements and self._table == other._table

    # -- JSON ------------------------------------------------------------
    @classmethod
    def from_json(cls, data: dict) -> "Multisemigroup":
        names = [str(e) for e in data["elements"]]
        idx = {name: i for i, name in enumerate(names)}
        table = {}
        for key, value in data.get("table", {}).items():
            parts = key.split(",")
            if len(parts) != 2:
                raise ValueError(f"table key {key!r} is not of the form 'x,y'")
            x, y = (p.strip() for p in parts)
            for name in (x, y, *value):
                if name not in idx:
                    raise ValueError(f"table entry {key!r} names unknown element {name!r}")
            table[(idx[x], idx[y])] = [idx[z] for z in value]
        return cls(names, table)

    def to_json(self) -> dict:
        table = {}
        for x, y in product(range(len(self)), repeat=2):
            zs = self._table[x][y]
            if zs:
                table[f"{self.elements[x]},{self.elements[y]}"] = [self.elements[z] for z in sorted(zs)]
        return {"elements": list(self.elements), "table": table}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _mask(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _set_times(ms: Multisemigroup, left: int, right: int) -> int:
    """Product of two subsets given as bitmasks."""
    out = 0
    for x in _bits(left):
        for y in _bits(right):
            out |= ms.mul_mask(x, y)
    return out


@dataclass(frozen=True)
class Validation:
    ok: bool
    triple: tuple[int, int, int] | None = None
    lhs: frozenset[int] | None = None
    rhs: frozenset[int] | None = None

    def __bool__(self):
        return self.ok

    def describe(self, ms: Multisemigroup) -> str:
        if self.ok:
            return "associative"
        x, y, z = (ms.elements[i] for i in self.triple)
        show = lambda s: "{" + ", ".join(ms.elements[i] for i in sorted(s)) + "}"
        return f"(({x}*{y})*{z}) = {show(self.lhs)} but ({x}*({y}*{z})) = {show(self.rhs)}"


def validate(ms: Multisemigroup) -> Validation:
    """Check set-wise associativity; report the first violating triple."""
    n = len(ms)
    for x, y, z in product(range(n), repeat=3):
        lhs = _set_times(ms, ms.mul_mask(x, y), 1 << z)
        rhs = _set_times(ms, 1 << x, ms.mul_mask(y, z))
        if lhs != rhs:
            return Validation(False, (x, y, z), frozenset(_bits(lhs)), frozenset(_bits(rhs)))
    return Validation(True)


# -- relations as bitset rows ------------------------------------------------


def _closure(step: list[int]) -> list[int]:
    """Reflexive-transitive closure of a one-step relation."""
    n = len(step)
    reach = [step[x] | (1 << x) for x in range(n)]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            acc = reach[x]
            for y in _bits(reach[x]):
                acc |= reach[y]
            if acc != reach[x]:
                reach[x] = acc
                changed = True
    return reach


def _symmetric_part(rel: list[int]) -> list[int]:
    n = len(rel)
    return [sum(1 << y for y in _bits(rel[x]) if rel[y] >> x & 1) for x in range(n)]


def _compose(r1: list[int], r2: list[int]) -> list[int]:
    """x (r1 o r2) z iff x r1 y and y r2 z for some y."""
    out = []
    for x in range(len(r1)):
        acc = 0
        for y in _bits(r1[x]):
            acc |= r2[y]
        out.append(acc)
    return out


def _partition(equiv: list[int]) -> tuple[tuple[int, ...], ...]:
    seen = 0
    cells = []
    for x in range(len(equiv)):
        if seen >> x & 1:
            continue
        cells.append(tuple(_bits(equiv[x])))
        seen |= equiv[x]
    return tuple(cells)


@dataclass(frozen=True)
class GreenStructure:
    """Preorders are upward bitsets: ``leq_L[x]`` holds every y with x <=_L y."""

    size: int
    leq_L: tuple[int, ...]
    leq_R: tuple[int, ...]
    leq_J: tuple[int, ...]
    cells_L: tuple[tuple[int, ...], ...]
    cells_R: tuple[tuple[int, ...], ...]
    cells_J: tuple[tuple[int, ...], ...]
    cells_H: tuple[tuple[int, ...], ...]
    cells_D: tuple[tuple[int, ...], ...]
    d_rounds: int = 0

    def cell_of(self, kind: str, x: int) -> tuple[int, ...]:
        for cell in self.cells(kind):
            if x in cell:
                return cell
        raise UnknownCell(x)

    def cells(self, kind: str) -> tuple[tuple[int, ...], ...]:
        try:
            return getattr(self, f"cells_{kind}")
        except AttributeError:
            raise ValueError(f"unknown relation {kind!r}") from None

    def relation(self, kind: str) -> list[int]:
        """Equivalence relation of a partition as bitset rows."""
        rows = [0] * self.size
        for cell in self.cells(kind):
            m = _mask(cell)
            for x in cell:
                rows[x] = m
        return rows

    def leq(self, kind: str, x: int, y: int) -> bool:
        return bool(getattr(self, f"leq_{kind}")[x] >> y & 1)

    def j_cell(self, jcell) -> tuple[int, ...]:
        """Resolve a J-cell id (its least element) or an explicit member list."""
        if isinstance(jcell, int):
            for cell in self.cells_J:
                if cell[0] == jcell:
                    return cell
            raise UnknownCell(f"no J-cell with id {jcell}")
        cell = tuple(sorted(jcell))
        if cell not in self.cells_J:
            raise UnknownCell(f"{cell} is not a J-cell")
        return cell


def _one_step(ms: Multisemigroup):
    n = len(ms)
    left = [0] * n
    right = [0] * n
    for s, x in product(range(n), repeat=2):
        left[x] |= ms.mul_mask(s, x)
        right[x] |= ms.mul_mask(x, s)
    both = []
    for x in range(n):
        acc = left[x] | right[x]
        for s in range(n):
            acc |= _set_times(ms, ms.mul_mask(s, x), (1 << n) - 1)
        both.append(acc)
    return left, right, both


def d_fixpoint(rel_L: list[int], rel_R: list[int]) -> tuple[list[int], list[list[int]]]:
    """D as the union of the powers of L o R; returns D and the iterate history.

    Iterates X <- X | X o (L o R) from X = L | R.  Each iterate contains the
    previous one, and at most |S| rounds are needed.
    """
    lr = _compose(rel_L, rel_R)
    current = [a | b for a, b in zip(rel_L, rel_R)]
    history = [current]
    for _ in range(len(rel_L) + 1):
        nxt = [a | b for a, b in zip(current, _compose(current, lr))]
        if nxt == current:
            return current, history
        current = nxt
        history.append(current)
    raise RuntimeError("D iteration failed to stabilise")


def green_cells(ms: Multisemigroup, check: bool = True) -> GreenStructure:
    if check:
        v = validate(ms)
        if not v:
            raise InvalidMultisemigroup(v.triple, v.describe(ms))
    left, right, both = _one_step(ms)
    leq_L, leq_R, leq_J = _closure(left), _closure(right), _closure(both)
    # multisemigroup associativity already makes one step transitive
    for step, closed in ((left, leq_L), (right, leq_R), (both, leq_J)):
        for x in range(len(ms)):
            if closed[x] != step[x] | (1 << x):
                raise AssertionError("one-step ideal is not closed; table is not associative")
    L, R, J = _symmetric_part(leq_L), _symmetric_part(leq_R), _symmetric_part(leq_J)
    H = [a & b for a, b in zip(L, R)]
    D, history = d_fixpoint(L, R)
    return GreenStructure(
        size=len(ms),
        leq_L=tuple(leq_L),
        leq_R=tuple(leq_R),
        leq_J=tuple(leq_J),
        cells_L=_partition(L),
        cells_R=_partition(R),
        cells_J=_partition(J),
        cells_H=_partition(H),
        cells_D=_partition(D),
        d_rounds=len(history),
    )


def cells_oracle(ms: Multisemigroup) -> GreenStructure:
    """Naive Green's structure: materialise principal ideals and compare sets.

    Shares no code with :func:`green_cells` beyond the table itself.
    """
    n = len(ms)
    elems = range(n)
    left_ideal, right_ideal, two_ideal = [], [], []
    for x in elems:
        lx = {x}
        rx = {x}
        for s in elems:
            lx |= ms.mul(s, x)
            rx |= ms.mul(x, s)
        jx = set(lx) | rx
        for s in elems:
            for u in ms.mul(s, x):
                for t in elems:
                    jx |= ms.mul(u, t)
        left_ideal.append(frozenset(lx))
        right_ideal.append(frozenset(rx))
        two_ideal.append(frozenset(jx))

    def preorder(ideals):
        # x <= y iff the ideal of y sits inside the ideal of x
        return tuple(sum(1 << y for y in elems if ideals[y] <= ideals[x]) for x in elems)

    def classes(key):
        groups: dict = {}
        for x in elems:
            groups.setdefault(key(x), []).append(x)
        return tuple(sorted(tuple(g) for g in groups.values()))

    cells_L = classes(lambda x: left_ideal[x])
    cells_R = classes(lambda x: right_ideal[x])
    cells_J = classes(lambda x: two_ideal[x])
    cells_H = classes(lambda x: (left_ideal[x], right_ideal[x]))

    # D is the join of L and R: connected components of the union graph
    parent = list(elems)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in elems:
        for y in elems:
            if left_ideal[x] == left_ideal[y] or right_ideal[x] == right_ideal[y]:
                parent[find(x)] = find(y)
    cells_D = classes(find)

    return GreenStructure(
        size=n,
        leq_L=preorder(left_ideal),
        leq_R=preorder(right_ideal),
        leq_J=preorder(two_ideal),
        cells_L=cells_L,
        cells_R=cells_R,
        cells_J=cells_J,
        cells_H=cells_H,
        cells_D=cells_D,
    )


def same_structure(a: GreenStructure, b: GreenStructure) -> bool:
    fields = ("leq_L", "leq_R", "leq_J", "cells_L", "cells_R", "cells_J", "cells_H", "cells_D")
    return all(getattr(a, f) == getattr(b, f) for f in fields)


@dataclass(frozen=True)
class JDCheck:
    holds: bool
    hypothesis: bool

    def __bool__(self):
        return self.holds


def _restrict(rel: list[int], cell_mask: int, cell: Sequence[int]) -> dict[int, int]:
    return {x: rel[x] & cell_mask for x in cell}


def check_J_equals_D(ms: Multisemigroup, gs: GreenStructure, jcell) -> JDCheck:
    """On a J-cell, compare L o R, R o L, D and J.

    The hypothesis is that every L-cell meets every R-cell inside the J-cell;
    when it fails the comparison is still reported, flagged.
    """
    cell = gs.j_cell(jcell)
    mask = _mask(cell)
    hypothesis = all(
        set(l) & set(r)
        for l in gs.cells_L
        if l[0] in cell
        for r in gs.cells_R
        if r[0] in cell
    )
    L, R = gs.relation("L"), gs.relation("R")
    lr = _restrict(_compose(L, R), mask, cell)
    rl = _restrict(_compose(R, L), mask, cell)
    d = _restrict(gs.relation("D"), mask, cell)
    j = _restrict(gs.relation("J"), mask, cell)
    return JDCheck(lr == rl == d == j, bool(hypothesis))


def _cells_within(cells, cell):
    members = set(cell)
    return [c for c in cells if c[0] in members]


def is_strongly_regular(ms: Multisemigroup, gs: GreenStructure, jcell) -> bool:
    cell = gs.j_cell(jcell)
    lcells = _cells_within(gs.cells_L, cell)
    rcells = _cells_within(gs.cells_R, cell)
    for a in lcells:
        for b in lcells:
            if a != b and gs.leq("L", a[0], b[0]):
                return False
    return all(len(set(l) & set(r)) == 1 for l in lcells for r in rcells)


def eggbox(ms: Multisemigroup, gs: GreenStructure, jcell) -> list[list[list[str]]]:
    """Rows are R-cells, columns L-cells, entries the intersections by name."""
    cell = gs.j_cell(jcell)
    lcells = _cells_within(gs.cells_L, cell)
    rcells = _cells_within(gs.cells_R, cell)
    return [[[ms.elements[x] for x in sorted(set(r) & set(l))] for l in lcells] for r in rcells]


def eggbox_dot(ms: Multisemigroup, gs: GreenStructure, jcells=None) -> str:
    """All requested J-cells as DOT nodes with HTML-like tables."""
    if jcells is None:
        jcells = [c[0] for c in gs.cells_J]
    lines = ["digraph eggbox {", "  node [shape=plaintext];"]
    for jc in jcells:
        cell = gs.j_cell(jc)
        grid = eggbox(ms, gs, cell)
        rows = []
        for row in grid:
            tds = "".join(
                f"<TD>{html.escape(', '.join(entry)) if entry else '&nbsp;'}</TD>" for entry in row
            )
            rows.append(f"<TR>{tds}</TR>")
        label = "".join(rows)
        lines.append(
            f'  J{cell[0]} [label=<<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">{label}</TABLE>>];'
        )
    # J-order edges between cells, covering relations only
    ids = [gs.j_cell(jc) for jc in jcells]
    for a in ids:
        for b in ids:
            if a == b or not gs.leq("J", a[0], b[0]):
                continue
            between = any(
                c not in (a, b) and gs.leq("J", a[0], c[0]) and gs.leq("J", c[0], b[0]) for c in ids
            )
            if not between:
                lines.append(f"  J{a[0]} -> J{b[0]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def eggbox_csv(ms: Multisemigroup, gs: GreenStructure, jcells=None) -> str:
    """One row per egg-box entry: jcell, row (R-cell), column (L-cell), elements."""
    if jcells is None:
        jcells = [c[0] for c in gs.cells_J]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["jcell", "row", "col", "elements"])
    for jc in jcells:
        cell = gs.j_cell(jc)
        for r, row in enumerate(eggbox(ms, gs, cell)):
            for c, entry in enumerate(row):
                writer.writerow([ms.elements[cell[0]], r, c, " ".join(entry)])
    return buf.getvalue()


def report(ms: Multisemigroup, gs: GreenStructure) -> dict:
    name = lambda cell: [ms.elements[x] for x in cell]
    jcells = []
    for cell in gs.cells_J:
        jd = check_J_equals_D(ms, gs, cell)
        jcells.append(
            {
                "id": ms.elements[cell[0]],
                "elements": name(cell),
                "strongly_regular": is_strongly_regular(ms, gs, cell),
                "j_equals_d": jd.holds,
                "all_h_nonempty": jd.hypothesis,
                "eggbox": eggbox(ms, gs, cell),
            }
        )
    return {
        "elements": list(ms.elements),
        "L": [name(c) for c in gs.cells_L],
        "R": [name(c) for c in gs.cells_R],
        "H": [name(c) for c in gs.cells_H],
        "D": [name(c) for c in gs.cells_D],
        "J": [name(c) for c in gs.cells_J],
        "j_cells": jcells,
    }
