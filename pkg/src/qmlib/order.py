"""Suprema in the metric and order senses, directedness, and their links.

A d-supremum of Y is a point x with sup_y d(y, z) = d(x, z) for every z
and d(y, x) = 0 for every y in Y: it must reproduce the metric data of Y,
not just bound it.  Order suprema only use the specialization order, so
the two notions can disagree; the halfopen gallery fixture realizes the
gap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .extreal import ext_max, ext_min
from .nets import EpSeq, PreconditionError, classify
from .space import FiniteSpace
from .topology import convergence


@dataclass(frozen=True)
class SupremumResult:
    d_sups: frozenset
    leq_sups: frozenset
    # Partition of leq_sups under mutual specialization (x <= y <= x).
    classes: tuple

    def to_dict(self) -> dict:
        return {"d_sups": sorted(self.d_sups),
                "leq_sups": sorted(self.leq_sups),
                "classes": [sorted(c) for c in self.classes]}


def suprema(space: FiniteSpace, Y) -> SupremumResult:
    """d-suprema and order suprema of a nonempty point set (indices)."""
    pts = sorted(set(Y))
    if not pts:
        raise PreconditionError("Y must be nonempty")
    n = space.n
    upper = [x for x in range(n) if all(space.leq(y, x) for y in pts)]
    upper_set = set(upper)
    leq_sups = [x for x in upper if all(space.leq(x, z) for z in upper_set)]
    d_sups = []
    for x in upper:
        if all(ext_max(space.d(y, z) for y in pts) == space.d(x, z) for z in range(n)):
            d_sups.append(x)
    classes = []
    seen = set()
    for x in leq_sups:
        if x in seen:
            continue
        cls = frozenset(z for z in leq_sups if space.leq(x, z) and space.leq(z, x))
        seen |= cls
        classes.append(frozenset(space.labels[i] for i in cls))
    return SupremumResult(frozenset(space.labels[i] for i in d_sups),
                          frozenset(space.labels[i] for i in leq_sups),
                          tuple(classes))


def is_directed(space: FiniteSpace, Y, sense: str = "d") -> bool:
    """Directedness of a nonempty set, in the metric or order sense.

    The metric sense quantifies over pairs only; by the triangle law that
    already covers all finite subsets (the exhaustive version is the test
    oracle).  On a finite carrier the pairwise infimum is attained, so the
    metric sense reduces to the same common-upper-bound-in-Y test as the
    order sense; the two notions only diverge on infinite carriers.
    """
    if sense not in ("d", "leq"):
        raise ValueError(f"unknown sense {sense!r}")
    pts = sorted(set(Y))
    if not pts:
        raise PreconditionError("Y must be nonempty")
    up0 = space.zero_up
    ymask = 0
    for p in pts:
        ymask |= 1 << p
    return all(up0[a] & up0[b] & ymask
               for a, b in itertools.combinations_with_replacement(pts, 2))


def directed_oracle(space: FiniteSpace, Y) -> bool:
    """Exhaustive form of metric directedness over all finite subsets."""
    pts = sorted(set(Y))
    for size in range(1, len(pts) + 1):
        for F in itertools.combinations(pts, size):
            best = ext_min(ext_max(space.d(f, y) for f in F) for y in pts)
            if not best.is_zero():
                return False
    return True


@dataclass(frozen=True)
class EdCompletenessReport:
    complete: bool
    failing_Y: tuple | None = None
    subsets_checked: int = 0
    sampled: bool = False

    def to_dict(self) -> dict:
        return {"complete": self.complete,
                "failing_Y": list(self.failing_Y) if self.failing_Y else None,
                "subsets_checked": self.subsets_checked,
                "sampled": self.sampled}


def check_ed_complete(space_e: FiniteSpace, space_d: FiniteSpace,
                      cap: int = 12, rng=None, samples: int = 2000) -> EdCompletenessReport:
    """Every e-directed subset has a d-supremum.

    Exhaustive up to ``cap`` points; beyond that a seeded random sample of
    subsets is used and the report is flagged as sampled.
    """
    if space_e.labels != space_d.labels:
        raise PreconditionError("the two distances must share a point set")
    n = space_d.n
    checked = 0
    if n <= cap:
        subsets = _all_subsets(n)
        sampled = False
    else:
        if rng is None:
            raise PreconditionError(f"{n} points exceeds the cap {cap}; pass rng for sampled mode")
        subsets = _sampled_subsets(n, rng, samples)
        sampled = True
    for pts in subsets:
        if not is_directed(space_e, pts, "d"):
            continue
        checked += 1
        if not _has_d_sup(space_d, pts):
            return EdCompletenessReport(False, tuple(space_d.labels[i] for i in pts),
                                        checked, sampled)
    return EdCompletenessReport(True, None, checked, sampled)


def _has_d_sup(space: FiniteSpace, pts) -> bool:
    """Existence-only d-supremum test (matches suprema().d_sups != empty)."""
    n = space.n
    down0 = space.zero_down
    ymask = 0
    for p in pts:
        ymask |= 1 << p
    profile = [ext_max(space.d(y, z) for y in pts) for z in range(n)]
    for x in range(n):
        if down0[x] & ymask != ymask:
            continue
        if all(space.d(x, z) == profile[z] for z in range(n)):
            return True
    return False


def _all_subsets(n: int):
    for bits in range(1, 1 << n):
        yield [i for i in range(n) if bits >> i & 1]


def _sampled_subsets(n: int, rng, samples: int):
    for _ in range(samples):
        bits = rng.getrandbits(n)
        if bits:
            yield [i for i in range(n) if bits >> i & 1]


@dataclass(frozen=True)
class DirectedSequenceReport:
    """Exact audit of the three supremum/limit biconditionals for a set Y
    below an enumerating sequence, plus the tail-order equivalence for
    directed Y under a pre-Cauchy sequence."""

    Y_leq_seq: bool
    seq_in_Y: bool
    biconditional_violations: tuple
    tail_order_equiv: bool | None

    @property
    def ok(self) -> bool:
        return not self.biconditional_violations and self.tail_order_equiv is not False


def link_directed_sequence(space: FiniteSpace, Y, seq: EpSeq) -> DirectedSequenceReport:
    """Check the supremum/limit correspondences for Y and a sequence.

    When Y sits below the sequence and the sequence stays inside Y, every
    point x must satisfy exactly:

    * lower-hole limit  iff Y <= x,
    * upper-hole limit  iff forward data of x is dominated by Y's,
    * double-hole limit iff x is a d-supremum of Y.

    Independently, for metric-sense directed Y and pre-Cauchy sequences,
    Y <= seq iff the backward limits of the sequence are below inf over Y.
    """
    pts = sorted(set(Y))
    if not pts:
        raise PreconditionError("Y must be nonempty")
    n = space.n
    y_leq_seq = all(space.d(y, c).is_zero() for y in pts for c in seq.cycle)
    terms = set(seq.pre) | set(seq.cycle)
    seq_in_Y = terms <= set(pts)
    violations = []
    if y_leq_seq and seq_in_Y:
        sup_result = suprema(space, pts)
        for x in range(n):
            rep = convergence(space, seq, x)
            lbl = space.labels[x]
            lhs5 = rep.lower_hole
            rhs5 = all(space.leq(y, x) for y in pts)
            if lhs5 != rhs5:
                violations.append((lbl, "lower_hole_vs_upper_bound"))
            lhs6 = rep.upper_hole
            rhs6 = all(space.d(x, z) <= ext_max(space.d(y, z) for y in pts)
                       for z in range(n))
            if lhs6 != rhs6:
                violations.append((lbl, "upper_hole_vs_forward_domination"))
            lhs7 = rep.double_hole
            rhs7 = lbl in sup_result.d_sups
            if lhs7 != rhs7:
                violations.append((lbl, "double_hole_vs_d_sup"))
    tail_equiv = None
    if is_directed(space, pts, "d") and classify(space, seq).pre_cauchy:
        lhs = y_leq_seq
        rhs = all(
            # backward limit of the sequence at z, constant on a Cauchy cycle
            space.d(z, seq.cycle[0]) <= ext_min(space.d(z, y) for y in pts)
            for z in range(n))
        tail_equiv = lhs == rhs
    return DirectedSequenceReport(y_leq_seq, seq_in_Y, tuple(violations), tail_equiv)
