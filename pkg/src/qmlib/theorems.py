"""Audit harness: each completeness statement runs as an exact
hypothesis-check followed by an exact conclusion-check on an instance.

A statement's entry is *vacuous* when some hypothesis fails; a non-vacuous
entry with an unverified conclusion is a released-bug signal and is
surfaced loudly by the CLI exit code.  Conclusions quantifying over all
Cauchy sequences are decided by quantifying over zero cliques, which are
exactly the possible tails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .derived import (DerivedFunctions, derived_functions, dist_subequiv,
                      leq_identity, sub_identity)
from .extreal import INF, ZERO, ExtReal, ext_min
from .nets import EpSeq, PreconditionError, classify, epseq, zero_cliques
from .order import check_ed_complete, is_directed, suprema
from .space import FiniteSpace, derive, threshold_grid
from .topology import is_complete

STATEMENTS = (
    "sup_upgrade",
    "complete_implies_directed_complete",
    "ball_functions_coincide",
    "symmetric_companion",
    "two_distance_transfer",
    "completeness_criterion_1",
    "completeness_criterion_2",
    "completeness_criterion_3",
    "completeness_criterion_4",
    "cauchy_to_directed",
)


@dataclass(frozen=True)
class AuditEntry:
    statement: str
    hypotheses: dict
    hypotheses_met: bool
    conclusion_verified: bool | None   # None when vacuous
    witness: dict = field(default_factory=dict)

    @property
    def vacuous(self) -> bool:
        return not self.hypotheses_met

    @property
    def failed(self) -> bool:
        return self.hypotheses_met and self.conclusion_verified is False

    def to_dict(self) -> dict:
        return {"statement": self.statement,
                "hypotheses": dict(sorted(self.hypotheses.items())),
                "hypotheses_met": self.hypotheses_met,
                "vacuous": self.vacuous,
                "conclusion_verified": self.conclusion_verified,
                "witness": self.witness}


@dataclass(frozen=True)
class AuditReport:
    entries: tuple

    @property
    def failures(self) -> tuple:
        return tuple(e for e in self.entries if e.failed)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"ok": self.ok, "entries": [e.to_dict() for e in self.entries]}


@dataclass(frozen=True)
class AuditOptions:
    statements: tuple = STATEMENTS
    second: FiniteSpace | None = None    # the distance e for two-distance audits
    subset_cap: int = 12
    include_vacuous: bool = True


def compose_with_order(e_space: FiniteSpace, d_space: FiniteSpace) -> FiniteSpace:
    """e composed with the specialization order of d:
    (x, y) -> min over z below y of e(x, z)."""
    return derive(e_space, "compose", derive(d_space, "leq_order"))


def compose_with_filter(e_space: FiniteSpace, d_space: FiniteSpace) -> FiniteSpace:
    """e composed through every generator of d's relation filter:
    (x, y) -> sup over radii of min over {z : d(z,y) < eps} of e(x, z)."""
    n = d_space.n
    grid = threshold_grid(d_space)
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            best = ZERO
            for eps in grid:
                val = ext_min((e_space.d(x, z) for z in range(n)
                               if d_space.d(z, y) < eps), INF)
                if best < val:
                    best = val
            row.append(best)
        rows.append(tuple(row))
    return FiniteSpace(d_space.labels, tuple(rows))


def forward_profile(space: FiniteSpace, clique) -> tuple:
    """d(c, z) for all z, constant over clique members by the triangle law."""
    c0 = clique[0]
    return tuple(space.d(c0, z) for z in range(space.n))


class AuditContext:
    """Shared exact subresults for one audited instance."""

    def __init__(self, space: FiniteSpace, e_space: FiniteSpace, cap: int):
        self.space = space
        self.e_space = e_space
        self.cap = max(cap, space.n)

    @cached_property
    def dfs(self) -> DerivedFunctions:
        return derived_functions(self.space)

    @cached_property
    def cliques(self) -> list:
        return [[i for i in range(self.space.n) if mask >> i & 1]
                for mask in zero_cliques(self.space)]

    @cached_property
    def complete(self) -> bool:
        return bool(is_complete(self.space).complete)

    @cached_property
    def join_space(self) -> FiniteSpace:
        return derive(self.space, "join")

    @cached_property
    def join_complete(self) -> bool:
        return bool(is_complete(self.join_space).complete)

    @cached_property
    def leq_space(self) -> FiniteSpace:
        return derive(self.space, "leq_order")

    @cached_property
    def order_directed_complete_report(self):
        return check_ed_complete(self.leq_space, self.space, cap=self.cap)

    @cached_property
    def metric_directed_complete_report(self):
        return check_ed_complete(self.space, self.space, cap=self.cap)

    @cached_property
    def e_complete(self) -> bool:
        return bool(is_complete(self.e_space).complete)

    @cached_property
    def e_separable(self) -> bool:
        n = self.space.n
        return all(ext_min(self.e_space.d(x, y) for y in range(n)).is_zero()
                   for x in range(n))

    @cached_property
    def filter_composition(self) -> FiniteSpace:
        return compose_with_filter(self.e_space, self.space)

    @cached_property
    def filter_chain(self) -> bool:
        return (dist_subequiv(self.filter_composition, self.space)
                and dist_subequiv(self.space, self.e_space)
                and self.e_space.validation.is_symmetric)


# ---------------------------------------------------------------------------
# Statement implementations: each returns (hypotheses, conclusion, witness).
# ---------------------------------------------------------------------------

def _stmt_sup_upgrade(ctx: AuditContext):
    space = ctx.space
    hyp = {"d_low_leq_identity": leq_identity(ctx.dfs.d_low)}
    if not all(hyp.values()):
        return hyp, None, {}
    n = space.n
    for bits in range(1, 1 << min(n, ctx.cap)):
        pts = [i for i in range(n) if bits >> i & 1]
        res = suprema(space, pts)
        if not res.leq_sups <= res.d_sups:
            return hyp, False, {"Y": sorted(space.labels[i] for i in pts)}
    return hyp, True, {}


def _stmt_complete_implies_dd(ctx: AuditContext):
    hyp = {"complete": ctx.complete}
    if not ctx.complete:
        return hyp, None, {}
    rep = ctx.metric_directed_complete_report
    if rep.complete:
        return hyp, True, {}
    return hyp, False, {"Y": list(rep.failing_Y)}


def _stmt_ball_functions_coincide(ctx: AuditContext):
    hyp = {
        "hemimetric": ctx.space.validation.is_hemimetric,
        "join_complete": ctx.join_complete,
        "d_phi_sub_identity": sub_identity(ctx.dfs.d_Phi),
    }
    if not all(hyp.values()):
        return hyp, None, {}
    return hyp, ctx.dfs.d_F == ctx.dfs.d_Phi, {}


def _stmt_symmetric_companion(ctx: AuditContext):
    space = ctx.space
    hyp = {
        "order_directed_complete": ctx.order_directed_complete_report.complete,
        "d_F_leq_identity": leq_identity(ctx.dfs.d_F),
    }
    if not all(hyp.values()):
        return hyp, None, {}
    n = space.n
    for clique in ctx.cliques:
        fwd = forward_profile(space, clique)
        # the companion's tail clique can be thinned to any one element, so
        # a singleton search is complete
        found = any(
            space.d(w, w).is_zero()
            and all(space.d(w, z) == fwd[z] for z in range(n))
            and all(space.d(c, w).is_zero() for c in clique)
            for w in range(n))
        if not found:
            return hyp, False, {"cycle": sorted(space.labels[i] for i in clique)}
    return hyp, True, {}


def _stmt_two_distance_transfer(ctx: AuditContext):
    space = ctx.space
    hyp = {
        "e_complete": ctx.e_complete,
        "e_symmetric": ctx.e_space.validation.is_symmetric,
        "compose_filter_below_d": dist_subequiv(ctx.filter_composition, space),
        "d_below_e": dist_subequiv(space, ctx.e_space),
    }
    if not all(hyp.values()):
        return hyp, None, {}
    eo = compose_with_order(ctx.e_space, space)
    if ctx.filter_composition.matrix != eo.matrix:
        return hyp, False, {"reason": "filter and order compositions differ"}
    n = space.n
    for clique in ctx.cliques:
        fwd = forward_profile(space, clique)
        bwd = tuple(space.d(z, clique[0]) for z in range(n))
        if not _directed_set_with_profiles(space, clique, fwd, bwd, "d"):
            return hyp, False, {"cycle": sorted(space.labels[i] for i in clique),
                                "missing": "metric-directed Y"}
        if ctx.e_separable and not _directed_set_with_profiles(space, clique,
                                                               fwd, bwd, "leq"):
            return hyp, False, {"cycle": sorted(space.labels[i] for i in clique),
                                "missing": "order-directed Y"}
    return hyp, True, {}


def _directed_set_with_profiles(space, clique, fwd, bwd, sense) -> bool:
    """Bounded search for a directed Y reproducing the sequence's limit
    profiles; the tail clique itself is always a candidate."""
    n = space.n
    candidates = [clique]
    for size in (1, 2):
        candidates.extend(list(c) for c in itertools.combinations(range(n), size))
    for Y in candidates:
        if not is_directed(space, Y, sense):
            continue
        if all(max(space.d(y, z) for y in Y) == fwd[z] for z in range(n)) and \
                all(min(space.d(z, y) for y in Y) == bwd[z] for z in range(n)):
            return True
    return False


def _stmt_completeness_criteria(ctx: AuditContext):
    """The four sufficient-condition audits, sharing subresults."""
    hyps = {
        "completeness_criterion_1": {
            "order_directed_complete": ctx.order_directed_complete_report.complete,
            "d_up_sub_identity": sub_identity(ctx.dfs.d_up)},
        "completeness_criterion_2": {
            "order_directed_complete": ctx.order_directed_complete_report.complete,
            "join_complete": ctx.join_complete,
            "d_F_leq_identity": leq_identity(ctx.dfs.d_F)},
        "completeness_criterion_3": {
            "metric_directed_complete": ctx.metric_directed_complete_report.complete,
            "e_complete": ctx.e_complete,
            "filter_chain": ctx.filter_chain},
        "completeness_criterion_4": {
            "order_directed_complete": ctx.order_directed_complete_report.complete,
            "e_complete": ctx.e_complete,
            "e_separable": ctx.e_separable,
            "filter_chain": ctx.filter_chain},
    }
    out = {}
    for stmt, hyp in hyps.items():
        if all(hyp.values()):
            out[stmt] = (hyp, ctx.complete, {} if ctx.complete else {"reason": "incomplete"})
        else:
            out[stmt] = (hyp, None, {})
    return out


def _stmt_cauchy_to_directed(ctx: AuditContext):
    space = ctx.space
    hyp = {"d_up_sub_identity": sub_identity(ctx.dfs.d_up)}
    if not all(hyp.values()):
        return hyp, None, {}
    for clique in ctx.cliques:
        seq = epseq([], sorted(clique))
        res = construct_directed_from_cauchy(space, seq, ctx.dfs)
        if not res.ok:
            return hyp, False, {"cycle": sorted(space.labels[i] for i in clique),
                                "construction": res.to_dict()}
    return hyp, True, {}


def audit(space: FiniteSpace, options: AuditOptions = AuditOptions(),
          ctx: AuditContext | None = None) -> AuditReport:
    """Run the selected statement audits on one instance.

    ``options.second`` supplies the distance e for the two-distance
    statements; when absent, the symmetric join of d stands in (the
    canonical symmetric companion).  A prebuilt context may be passed to
    share subresults with the caller.
    """
    if not space.validation.is_distance:
        raise PreconditionError("audit requires a validated distance")
    e_space = options.second if options.second is not None else derive(space, "join")
    if e_space.labels != space.labels:
        raise PreconditionError("second distance must share the point set")
    if ctx is None:
        ctx = AuditContext(space, e_space, options.subset_cap)
    entries = []

    def add(stmt, result):
        hyp, concl, witness = result
        entries.append(AuditEntry(stmt, hyp, all(hyp.values()), concl, witness))

    wanted = set(options.statements)
    if "sup_upgrade" in wanted:
        add("sup_upgrade", _stmt_sup_upgrade(ctx))
    if "complete_implies_directed_complete" in wanted:
        add("complete_implies_directed_complete", _stmt_complete_implies_dd(ctx))
    if "ball_functions_coincide" in wanted:
        add("ball_functions_coincide", _stmt_ball_functions_coincide(ctx))
    if "symmetric_companion" in wanted:
        add("symmetric_companion", _stmt_symmetric_companion(ctx))
    if "two_distance_transfer" in wanted:
        add("two_distance_transfer", _stmt_two_distance_transfer(ctx))
    crit = {s for s in wanted if s.startswith("completeness_criterion_")}
    if crit:
        results = _stmt_completeness_criteria(ctx)
        for stmt in sorted(crit):
            add(stmt, results[stmt])
    if "cauchy_to_directed" in wanted:
        add("cauchy_to_directed", _stmt_cauchy_to_directed(ctx))
    if not options.include_vacuous:
        entries = [e for e in entries if not e.vacuous]
    return AuditReport(tuple(entries))


# ---------------------------------------------------------------------------
# Constructive replay: directed set from a Cauchy sequence.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectedConstruction:
    Y: tuple                      # labels, in construction order
    directed: bool
    forward_match: bool
    backward_match: bool
    radii: tuple                  # the shrinking radius schedule used

    @property
    def ok(self) -> bool:
        return self.directed and self.forward_match and self.backward_match

    def to_dict(self) -> dict:
        return {"Y": list(self.Y), "directed": self.directed,
                "forward_match": self.forward_match,
                "backward_match": self.backward_match,
                "radii": [str(r) for r in self.radii]}


def construct_directed_from_cauchy(space: FiniteSpace, seq: EpSeq,
                                   dfs: DerivedFunctions | None = None) -> DirectedConstruction:
    """Replay the recursion that turns a Cauchy sequence into an
    order-directed set with the same forward and backward limit data.

    Radii halve from just below the smallest positive matrix value, so all
    radius constraints collapse to exact zero-distance constraints after
    the first step; each step exhaustively searches for a point bounding
    the ball around the current tail term from below while staying at
    distance zero from it.  Search exhaustion would contradict the ball
    bound hypothesis and raises.
    """
    cls = classify(space, seq)
    if not cls.cauchy:
        raise PreconditionError("sequence is not Cauchy")
    if dfs is None:
        dfs = derived_functions(space)
    if not sub_identity(dfs.d_up):
        raise PreconditionError("upper-ball bound function is not uniformly below identity")
    n = space.n
    positive = [v for v in space.distinct_values if not v.is_zero() and not v.is_inf]
    v_min = positive[0] if positive else ExtReal(1)
    cyc = seq.cycle
    p = len(cyc)
    ys = []
    radii = []
    r_prev = ExtReal(v_min.num, 2 * v_min.den)       # r_1 = v_min / 2
    for step in range(p + 2):
        r_cur = ExtReal(r_prev.num, 2 * r_prev.den)  # halving schedule
        radii.append(r_cur)
        x_f = cyc[step % p]
        two_r = r_cur + r_cur
        ball = [z for z in range(n) if space.d(x_f, z) < two_r]
        found = None
        for y in range(n):
            if space.d(x_f, y) < r_prev and all(space.leq(y, z) for z in ball):
                found = y
                break
        if found is None:
            raise PreconditionError(
                f"ball bound hypothesis violated: no witness at step {step} (bug signal)")
        if found not in ys:
            ys.append(found)
        r_prev = r_cur
    directed = is_directed(space, ys, "leq")
    c0 = cyc[0]
    forward_match = all(
        max(space.d(y, z) for y in ys) == space.d(c0, z) for z in range(n))
    backward_match = all(
        min(space.d(z, y) for y in ys) == space.d(z, c0) for z in range(n))
    return DirectedConstruction(tuple(space.labels[i] for i in ys),
                                directed, forward_match, backward_match,
                                tuple(radii))
