"""Eventually periodic sequences and their exact tail analysis.

An :class:`EpSeq` is a sequence of points given by a finite preperiod and a
repeating cycle.  Every limit inferior/superior over the tail is then a
finite min/max over cycle positions, which makes the three net classes and
all convergence predicates decidable with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extreal import ExtReal, ext_max, ext_min
from .space import FiniteSpace, SpaceError


class PreconditionError(ValueError):
    """An operation was called outside its stated precondition."""


def _primitive_cycle(cycle: tuple) -> tuple:
    """Shortest word whose repetition gives the cycle."""
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            return cycle[:p]
    return cycle


@dataclass(frozen=True)
class EpSeq:
    """Canonical eventually periodic sequence of point indices.

    Canonical form: the cycle is not a proper power, and the preperiod has
    no trailing element that could be absorbed by rotating the cycle.
    Construct through :func:`epseq` to get canonicalization.
    """

    pre: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise SpaceError("cycle must be nonempty")

    def term(self, k: int) -> int:
        if k < len(self.pre):
            return self.pre[k]
        return self.cycle[(k - len(self.pre)) % len(self.cycle)]

    @property
    def cycle_set(self) -> frozenset:
        return frozenset(self.cycle)


def epseq(pre, cycle) -> EpSeq:
    pre = tuple(pre)
    cycle = _primitive_cycle(tuple(cycle))
    if not cycle:
        raise SpaceError("cycle must be nonempty")
    while pre and pre[-1] == cycle[-1]:
        pre = pre[:-1]
        cycle = cycle[-1:] + cycle[:-1]
    return EpSeq(pre, cycle)


def epseq_from_labels(space: FiniteSpace, pre, cycle) -> EpSeq:
    return epseq([space.index(x) for x in pre], [space.index(x) for x in cycle])


def seq_from_dict(space: FiniteSpace, data: dict) -> EpSeq:
    """Parse the sequence literal {"pre": [...], "cycle": [...]}."""
    try:
        return epseq_from_labels(space, data.get("pre", []), data["cycle"])
    except (KeyError, TypeError):
        raise SpaceError("sequence literal needs a 'cycle' list") from None


def seq_to_labels(space: FiniteSpace, seq: EpSeq) -> dict:
    return {"pre": [space.labels[i] for i in seq.pre],
            "cycle": [space.labels[i] for i in seq.cycle]}


@dataclass(frozen=True)
class NetClasses:
    reflexive: bool
    pre_cauchy: bool
    cauchy: bool


def check_ids(space: FiniteSpace, seq: EpSeq) -> None:
    """All sequence ids must name points of the ambient space."""
    for i in seq.pre + seq.cycle:
        if not 0 <= i < space.n:
            raise SpaceError(f"point id {i} outside the space")


def classify(space: FiniteSpace, seq: EpSeq) -> NetClasses:
    """The three net classes, decided on the cycle.

    reflexive: from every cycle position some later position is arbitrarily
    close, i.e. min over the cycle of d(c_i, .) is 0 for each i.
    pre_cauchy: all later positions get close, i.e. the max is 0.
    cauchy: d vanishes on the whole cycle square.  On eventually periodic
    data pre_cauchy and cauchy coincide; both are kept for the record.
    """
    check_ids(space, seq)
    cyc = seq.cycle
    reflexive = True
    pre_cauchy = True
    cauchy = True
    for i in cyc:
        row_min = ext_min(space.d(i, j) for j in cyc)
        row_max = ext_max(space.d(i, j) for j in cyc)
        if not row_min.is_zero():
            reflexive = False
        if not row_max.is_zero():
            pre_cauchy = False
            cauchy = False
    return NetClasses(reflexive, pre_cauchy, cauchy)


def is_zero_clique(space: FiniteSpace, points) -> bool:
    """d vanishes on points x points (the tail shape of a Cauchy sequence)."""
    pts = list(points)
    return all(space.d(i, j).is_zero() for i in pts for j in pts)


def zero_cliques(space: FiniteSpace):
    """All nonempty subsets on which d vanishes, as bitmasks.

    Only points with zero self-distance can participate, so the search is
    restricted to that subset before the exponential sweep.
    """
    n = space.n
    core = [i for i in range(n) if space.d(i, i).is_zero()]
    up = space.zero_up
    down = space.zero_down
    out = []
    m = len(core)
    for bits in range(1, 1 << m):
        members = [core[t] for t in range(m) if bits >> t & 1]
        mask = 0
        for i in members:
            mask |= 1 << i
        if all((up[i] & mask) == mask and (down[i] & mask) == mask for i in members):
            out.append(mask)
    return out


def cauchy_subsequence(space: FiniteSpace, seq: EpSeq) -> EpSeq:
    """A Cauchy subsequence of a pre-Cauchy sequence.

    On eventually periodic input pre-Cauchy already implies Cauchy, so the
    sequence itself is returned.  (Family sequences have their own
    extraction; see :mod:`qmlib.family`.)
    """
    cls = classify(space, seq)
    if not cls.pre_cauchy:
        raise PreconditionError("sequence is not pre-Cauchy")
    return seq


def net_distance(space: FiniteSpace, s: EpSeq, t: EpSeq) -> ExtReal:
    """Distance between sequences: limsup over s of liminf over t of d.

    Exact on cycles: the inner liminf is a min over t's cycle, the outer
    limsup a max over s's cycle of those minima.
    """
    check_ids(space, s)
    check_ids(space, t)
    return ext_max(
        ext_min(space.d(i, j) for j in t.cycle) for i in s.cycle)


@dataclass(frozen=True)
class SeqLimits:
    """Limits of d(x_k, y) and d(y, x_k); None when the tail oscillates."""

    forward: ExtReal | None
    backward: ExtReal | None


def seq_limits_against(space: FiniteSpace, seq: EpSeq, y: int) -> SeqLimits:
    """The forward and backward distance limits of the sequence against y.

    For a pre-Cauchy sequence over a valid distance both limits exist (the
    cycle values are forced equal by the triangle law); otherwise a
    non-constant cycle reads as "does not converge" (None).
    """
    fwd_vals = {space.d(i, y) for i in seq.cycle}
    bwd_vals = {space.d(y, i) for i in seq.cycle}
    fwd = next(iter(fwd_vals)) if len(fwd_vals) == 1 else None
    bwd = next(iter(bwd_vals)) if len(bwd_vals) == 1 else None
    return SeqLimits(fwd, bwd)
