"""Finite distance spaces and their derived constructions.

A :class:`FiniteSpace` is a labelled square matrix of exact distances.
Nothing here assumes symmetry or zero self-distance; the triangle law is
the only structural property, and it is checked, never presumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .extreal import INF, ZERO, ExtReal, ext_min


class SpaceError(ValueError):
    """Malformed space data (ragged matrix, unknown label, mismatched sets)."""


@dataclass(frozen=True)
class Validation:
    """Outcome of the structural checks on a space.

    ``violations`` holds label tuples: ``("triangle", i, k, j)`` for a
    failing triple, ``("self_distance", i)`` for a nonzero diagonal entry.
    """

    is_distance: bool
    is_hemimetric: bool
    is_symmetric: bool
    is_metric: bool
    violations: tuple = ()


@dataclass(frozen=True)
class FiniteSpace:
    labels: tuple
    matrix: tuple

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise SpaceError("duplicate point labels")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise SpaceError("matrix shape does not match label count")

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> ExtReal:
        return self.matrix[i][j]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SpaceError(f"unknown point {label!r}") from None

    @cached_property
    def validation(self) -> Validation:
        return _validate(self)

    @cached_property
    def zero_up(self) -> tuple:
        """Bitmask per point i of all j with d(i,j) = 0 (the up-set of i)."""
        masks = []
        for i in range(self.n):
            m = 0
            row = self.matrix[i]
            for j in range(self.n):
                if row[j].is_zero():
                    m |= 1 << j
            masks.append(m)
        return tuple(masks)

    @cached_property
    def zero_down(self) -> tuple:
        """Bitmask per point j of all i with d(i,j) = 0."""
        masks = [0] * self.n
        for i in range(self.n):
            row = self.matrix[i]
            for j in range(self.n):
                if row[j].is_zero():
                    masks[j] |= 1 << i
        return tuple(masks)

    def leq(self, i: int, j: int) -> bool:
        """The specialization order: d(i,j) = 0."""
        return self.matrix[i][j].is_zero()

    @cached_property
    def distinct_values(self) -> tuple:
        vals = {v for row in self.matrix for v in row}
        return tuple(sorted(vals))

    def __repr__(self):
        return f"FiniteSpace({len(self.labels)} points)"


def space_from_rows(labels, rows) -> FiniteSpace:
    """Build a space from label list and rows of ExtReal/str/int entries."""
    def conv(v):
        if isinstance(v, ExtReal):
            return v
        if isinstance(v, int):
            return ExtReal(v)
        return ExtReal.parse(str(v))
    matrix = tuple(tuple(conv(v) for v in row) for row in rows)
    return FiniteSpace(tuple(labels), matrix)


def _validate(space: FiniteSpace) -> Validation:
    n = space.n
    m = space.matrix
    violations = []
    is_distance = True
    for i in range(n):
        for j in range(n):
            dij = m[i][j]
            for k in range(n):
                if dij > m[i][k] + m[k][j]:
                    is_distance = False
                    violations.append(
                        ("triangle", space.labels[i], space.labels[k], space.labels[j]))
    is_hemimetric = is_distance
    for i in range(n):
        if not m[i][i].is_zero():
            is_hemimetric = False
            if is_distance:
                violations.append(("self_distance", space.labels[i]))
    is_symmetric = all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))
    # A metric additionally separates points: mutual distance 0 forces equality.
    separated = all(not (m[i][j].is_zero() and m[j][i].is_zero())
                    for i in range(n) for j in range(n) if i != j)
    is_metric = is_hemimetric and is_symmetric and separated
    return Validation(is_distance, is_hemimetric, is_symmetric, is_metric,
                      tuple(violations))


def validate(space: FiniteSpace) -> Validation:
    """Triangle-law and shape flags for a space (cached on the instance)."""
    return space.validation


def derive(space: FiniteSpace, which: str, other: FiniteSpace | None = None) -> FiniteSpace:
    """Derived space: ``opposite``, ``join``, ``leq_order`` or ``compose``.

    ``compose`` is the min-plus composition with ``other`` over the shared
    point set; its result need not satisfy the triangle law, so callers
    should consult ``validation`` on the result.
    """
    n = space.n
    m = space.matrix
    if which == "opposite":
        rows = tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
    elif which == "join":
        rows = tuple(tuple(max(m[i][j], m[j][i]) for j in range(n)) for i in range(n))
    elif which == "leq_order":
        rows = tuple(tuple(m[i][j].scale_inf() for j in range(n)) for i in range(n))
    elif which == "compose":
        if other is None:
            raise SpaceError("compose requires a second space")
        if other.labels != space.labels:
            raise SpaceError("compose requires matching point sets")
        o = other.matrix
        rows = tuple(
            tuple(ext_min(m[i][k] + o[k][j] for k in range(n)) for j in range(n))
            for i in range(n))
    else:
        raise SpaceError(f"unknown derivation {which!r}")
    return FiniteSpace(space.labels, rows)


@dataclass(frozen=True)
class BallsAndHoles:
    upper_ball: frozenset
    lower_ball: frozenset
    upper_hole: frozenset
    lower_hole: frozenset


def balls_and_holes(space: FiniteSpace, center: str, epsilon: ExtReal) -> BallsAndHoles:
    """The four open sets with the given center and radius, as label sets."""
    if not (ZERO < epsilon):
        raise SpaceError("radius must be positive")
    c = space.index(center)
    up_b, low_b, up_h, low_h = [], [], [], []
    for j, lbl in enumerate(space.labels):
        if space.d(c, j) < epsilon:
            up_b.append(lbl)
        if space.d(j, c) < epsilon:
            low_b.append(lbl)
        if space.d(j, c) > epsilon:
            up_h.append(lbl)
        if space.d(c, j) > epsilon:
            low_h.append(lbl)
    return BallsAndHoles(frozenset(up_b), frozenset(low_b),
                         frozenset(up_h), frozenset(low_h))


def minplus_closure(rows, labels=None) -> FiniteSpace:
    """Largest triangle-law matrix below the input, by min-plus relaxation.

    Repeated sweeps of d[i][j] <- min(d[i][j], d[i][k] + d[k][j]) until a
    fixpoint; with nonnegative entries at most n sweeps are needed.
    """
    work = [list(r) for r in rows]
    n = len(work)
    if any(len(r) != n for r in work):
        raise SpaceError("matrix is not square")
    changed = True
    while changed:
        changed = False
        for k in range(n):
            col_k = [work[i][k] for i in range(n)]
            row_k = work[k]
            for i in range(n):
                dik = col_k[i]
                if dik.is_inf:
                    continue
                wi = work[i]
                for j in range(n):
                    cand = dik + row_k[j]
                    if cand < wi[j]:
                        wi[j] = cand
                        changed = True
    if labels is None:
        labels = tuple(f"p{i}" for i in range(n))
    return FiniteSpace(tuple(labels), tuple(tuple(r) for r in work))


@dataclass(frozen=True)
class ThresholdRel:
    """The relation x < y at scale epsilon: d(x,y) < epsilon.

    These relations generate the whole filter of uniform relations of the
    space: every member of the filter contains one of them, so monotone
    quantifications over the filter reduce to the finite grid below.
    """

    space: FiniteSpace
    epsilon: ExtReal

    def __post_init__(self):
        if not ZERO < self.epsilon:
            raise SpaceError("threshold radii are positive")

    def holds(self, i: int, j: int) -> bool:
        return self.space.d(i, j) < self.epsilon

    @cached_property
    def masks(self) -> tuple:
        n = self.space.n
        out = []
        for i in range(n):
            m = 0
            for j in range(n):
                if self.space.d(i, j) < self.epsilon:
                    m |= 1 << j
            out.append(m)
        return tuple(out)


def threshold_grid(space: FiniteSpace) -> tuple:
    """Radii generating every distinct threshold relation of the space.

    Distinct positive finite matrix values, midpoints between consecutive
    ones, one value above the largest finite entry, and infinity.  The
    smallest grid entry generates the minimal relation {d = 0}.
    """
    finite = sorted({v for v in space.distinct_values if not v.is_inf and not v.is_zero()})
    grid = []
    prev = ZERO
    for v in finite:
        mid_num = v.num * prev.den + prev.num * v.den
        mid_den = 2 * v.den * prev.den
        mid = ExtReal(mid_num, mid_den)
        if mid.is_zero():
            mid = ExtReal(v.num, 2 * v.den)
        if not mid.is_zero():
            grid.append(mid)
        grid.append(v)
        prev = v
    if finite:
        top = finite[-1]
        grid.append(ExtReal(top.num + top.den, top.den))
    else:
        grid.append(ExtReal(1))
    grid.append(INF)
    return tuple(dict.fromkeys(grid))


def threshold_relations(space: FiniteSpace) -> tuple:
    return tuple(ThresholdRel(space, eps) for eps in threshold_grid(space))


def space_to_dict(space: FiniteSpace) -> dict:
    return {
        "points": list(space.labels),
        "matrix": [[str(v) for v in row] for row in space.matrix],
    }


def space_from_dict(data: dict) -> FiniteSpace:
    try:
        labels = data["points"]
        rows = data["matrix"]
    except (KeyError, TypeError):
        raise SpaceError("space file needs 'points' and 'matrix'") from None
    return space_from_rows(labels, rows)


def load_space(path: str) -> FiniteSpace:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise SpaceError(f"invalid JSON in {path}: {e}") from None
    return space_from_dict(data)
