"""Seeded random instance generation for audits and fuzzing.

Matrix entries come from a small value grid rich in collisions (zero
cliques and thick order structure are what exercise the completeness
logic), then a min-plus closure enforces the triangle law.  Value-based
pairs realize the composition of a metric with an order: the truncated
difference of point values together with their absolute difference.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .extreal import INF, ZERO, ExtReal
from .space import FiniteSpace, minplus_closure, space_from_rows

VALUE_GRID = (ZERO, ExtReal(1, 4), ExtReal(1, 2), ExtReal(1), ExtReal(2), INF)
POSITIVE_GRID = (ExtReal(1, 4), ExtReal(1, 2), ExtReal(1), ExtReal(2))
RATIONAL_GRID = tuple(Fraction(k, 4) for k in range(0, 13))


def random_space(rng: Random, n: int, hemimetric: bool = False) -> FiniteSpace:
    """Random validated distance: grid entries, min-plus closed.

    Hemimetric mode zeroes the diagonal before the closure (the closure
    keeps it zero).
    """
    rows = [[rng.choice(VALUE_GRID) for _ in range(n)] for _ in range(n)]
    if hemimetric:
        for i in range(n):
            rows[i][i] = ZERO
    return minplus_closure(rows)


def random_metric(rng: Random, n: int) -> FiniteSpace:
    """Random metric: symmetric positive off-diagonal entries, closed."""
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.choice(POSITIVE_GRID)
            rows[i][j] = v
            rows[j][i] = v
    return minplus_closure(rows)


def random_value_pair(rng: Random, n: int):
    """A two-distance instance (d, e) of composed order-metric shape.

    Points carry rational values v; d(x,y) = (v_x - v_y)+ and
    e(x,y) = s|v_x - v_y| for a scale s in {1, 2}.  Then e is a symmetric
    hemimetric, d arises from e composed with the value order, and the
    filter chain hypotheses hold non-vacuously; s = 2 separates e from the
    symmetric join of d.
    """
    vals = [rng.choice(RATIONAL_GRID) for _ in range(n)]
    scale = rng.choice((1, 1, 2))
    labels = [f"p{i}" for i in range(n)]
    d_rows = [[ExtReal.from_fraction(max(a - b, Fraction(0))) for b in vals] for a in vals]
    e_rows = [[ExtReal.from_fraction(scale * abs(a - b)) for b in vals] for a in vals]
    return space_from_rows(labels, d_rows), space_from_rows(labels, e_rows)


def instance_stream(seed: int, n: int, count: int):
    """Deterministic stream of (index, kind, space, second-or-None).

    Kinds rotate through plain distances, hemimetrics, metrics, and
    value-based two-distance pairs so every audited statement gets
    non-vacuous instances.
    """
    master = Random(seed)
    for i in range(count):
        inst_rng = Random(master.getrandbits(63))
        kind = ("plain", "hemimetric", "metric", "value_pair")[i % 4]
        if kind == "plain":
            yield i, kind, random_space(inst_rng, n, hemimetric=False), None
        elif kind == "hemimetric":
            yield i, kind, random_space(inst_rng, n, hemimetric=True), None
        elif kind == "metric":
            yield i, kind, random_metric(inst_rng, n), None
        else:
            d_space, e_space = random_value_pair(inst_rng, n)
            yield i, kind, d_space, e_space
