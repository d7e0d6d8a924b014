"""Formal balls: the extension of a space by nonpositive radii.

A formal ball is a pair (point, radius <= 0) with distance
(d(x, y) + r - s)+.  The extension is never materialized: everything goes
through the distance formula, radius grids for enumeration, and exact
algebraic identities relating closed balls to order cones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .extreal import INF, ZERO, ExtReal
from .nets import EpSeq, PreconditionError, is_zero_clique
from .space import FiniteSpace, SpaceError
from .topology import double_hole_limits_of_clique, is_complete

DEFAULT_RADIUS_GRID = (Fraction(0), Fraction(-1, 2), Fraction(-1))


@dataclass(frozen=True)
class FormalBall:
    point: int
    radius: Fraction

    def __post_init__(self):
        if self.radius > 0:
            raise SpaceError("formal-ball radii are nonpositive")

    def label(self, space: FiniteSpace) -> dict:
        return {"point": space.labels[self.point], "radius": str(self.radius)}


def formal_ball(space: FiniteSpace, point: str, radius) -> FormalBall:
    return FormalBall(space.index(point), Fraction(radius))


def formal_ball_from_dict(space: FiniteSpace, data: dict) -> FormalBall:
    """Parse the literal {"point": "a", "radius": "-1/3"}."""
    try:
        return formal_ball(space, data["point"], data["radius"])
    except (KeyError, TypeError):
        raise SpaceError("formal ball literal needs 'point' and 'radius'") from None


def fb_distance_raw(space: FiniteSpace, x: int, r: Fraction,
                    y: int, s: Fraction) -> ExtReal:
    """(d(x,y) + r - s)+ for arbitrary rational radii."""
    base = space.d(x, y)
    if base.is_inf:
        return INF
    total = base.as_fraction() + r - s
    return ExtReal.from_fraction(total) if total > 0 else ZERO


def fb_distance(space: FiniteSpace, a: FormalBall, b: FormalBall) -> ExtReal:
    return fb_distance_raw(space, a.point, a.radius, b.point, b.radius)


def fb_leq(space: FiniteSpace, a: FormalBall, b: FormalBall) -> bool:
    return fb_distance(space, a, b).is_zero()


@dataclass(frozen=True)
class BallIdentityReport:
    tuples_checked: int
    identity_violations: int
    # sampled "closed balls have extremal bounds at distance exactly t";
    # None when the base is not a hemimetric (the witnesses then sit at
    # distance d(x,x) + t instead).
    d_up_leq_identity: bool | None
    d_low_leq_identity: bool | None

    @property
    def ok(self) -> bool:
        return self.identity_violations == 0

    def to_dict(self) -> dict:
        return {"tuples_checked": self.tuples_checked,
                "identity_violations": self.identity_violations,
                "d_up_leq_identity": self.d_up_leq_identity,
                "d_low_leq_identity": self.d_low_leq_identity}


def _random_radius(rng) -> Fraction:
    return Fraction(-rng.randrange(0, 9), rng.choice((1, 2, 3, 4)))


def ball_identities(space: FiniteSpace, rng, count: int = 200) -> BallIdentityReport:
    """Verify, on sampled tuples, the three equivalent readings of
    d((x,r),(y,s)) <= t: shifting the left radius down by t, or the right
    radius up by t, lands exactly on the order cone.

    When the base is a hemimetric the sampled witnesses also pin the ball
    bound functions of the extension below the identity: the shifted balls
    sit at distance exactly t from their cones' tips.
    """
    violations = 0
    hemimetric = space.validation.is_hemimetric
    up_ok = True if hemimetric else None
    low_ok = True if hemimetric else None
    for _ in range(count):
        x = rng.randrange(space.n)
        y = rng.randrange(space.n)
        r = _random_radius(rng)
        s = _random_radius(rng)
        t_num = rng.randrange(0, 9)
        t = Fraction(t_num, rng.choice((1, 2, 4)))
        lhs = fb_distance_raw(space, x, r, y, s) <= ExtReal.from_fraction(t) \
            if t >= 0 else False
        mid = fb_distance_raw(space, x, r - t, y, s).is_zero()
        rhs = fb_distance_raw(space, x, r, y, t + s).is_zero()
        if not (lhs == mid == rhs):
            violations += 1
        if hemimetric:
            if fb_distance_raw(space, x, r, x, r - t) != ExtReal.from_fraction(t):
                up_ok = False
            if fb_distance_raw(space, y, t + s, y, s) != ExtReal.from_fraction(t):
                low_ok = False
    return BallIdentityReport(count, violations, up_ok, low_ok)


@dataclass(frozen=True)
class RadiusSeq:
    """Radius sequences from a closed catalog with exact limits.

    ``constant``: r_k = value.  ``harmonic``: r_k = value - scale/k, which
    converges to ``value`` from below.  ``periodic``: cycles through the
    given rationals; convergent only when the cycle is constant.
    """

    kind: str
    value: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)
    cycle: tuple = ()

    def __post_init__(self):
        if self.kind not in ("constant", "harmonic", "periodic"):
            raise SpaceError(f"unknown radius kind {self.kind!r}")
        if self.kind == "periodic" and not self.cycle:
            raise SpaceError("periodic radii need a cycle")
        if self.kind == "harmonic" and self.scale <= 0:
            raise SpaceError("harmonic radii need a positive scale")

    def term(self, k: int) -> Fraction:
        if self.kind == "constant":
            return self.value
        if self.kind == "harmonic":
            return self.value - self.scale / k
        return self.cycle[(k - 1) % len(self.cycle)]

    def limit(self) -> Fraction | None:
        if self.kind == "constant":
            return self.value
        if self.kind == "harmonic":
            return self.value
        distinct = set(self.cycle)
        return next(iter(distinct)) if len(distinct) == 1 else None


@dataclass(frozen=True)
class KwLimitResult:
    limit: dict | None      # {"point": label, "radius": str}
    verified: bool
    undecidable: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        return {"limit": self.limit, "verified": self.verified,
                "undecidable": self.undecidable, "note": self.note}


def kw_limit(space: FiniteSpace, points: EpSeq, radii: RadiusSeq,
             grid=DEFAULT_RADIUS_GRID) -> KwLimitResult:
    """Limit of a Cauchy formal-ball sequence: radius limit paired with a
    double-hole limit of the point part.

    Verification checks the two double-hole liminf inequalities exactly
    against every center in X x grid, using the cycle structure of the
    point part and the certified radius limit.
    """
    r_star = radii.limit()
    if r_star is None:
        return KwLimitResult(None, False, undecidable=True,
                             note="radii not convergent at cutoff")
    if r_star > 0:
        raise SpaceError("radius limit must stay nonpositive")
    if not is_zero_clique(space, points.cycle):
        raise PreconditionError("point part is not Cauchy in the extension")
    limits = double_hole_limits_of_clique(space, sorted(set(points.cycle)))
    if not limits:
        return KwLimitResult(None, False, note="no double-hole limit in the base")
    x_star = limits[0]
    verified = True
    cyc = sorted(set(points.cycle))
    for c in range(space.n):
        for u in grid:
            lim_toward = min(fb_distance_raw(space, c, u, i, r_star) for i in cyc)
            need_toward = fb_distance_raw(space, c, u, x_star, r_star)
            lim_away = min(fb_distance_raw(space, i, r_star, c, u) for i in cyc)
            need_away = fb_distance_raw(space, x_star, r_star, c, u)
            if lim_toward < need_toward or lim_away < need_away:
                verified = False
    ball = FormalBall(x_star, r_star)
    return KwLimitResult(ball.label(space), verified)


@dataclass(frozen=True)
class KwAuditReport:
    base_complete: bool
    cauchy_sequences_checked: int
    cauchy_sequences_verified: int
    directed_subsets_checked: int
    directed_subsets_with_sup: int
    chain_d_low_leq_identity: bool | None
    equivalence_confirmed: bool

    def to_dict(self) -> dict:
        return {"base_complete": self.base_complete,
                "cauchy_sequences_checked": self.cauchy_sequences_checked,
                "cauchy_sequences_verified": self.cauchy_sequences_verified,
                "directed_subsets_checked": self.directed_subsets_checked,
                "directed_subsets_with_sup": self.directed_subsets_with_sup,
                "chain_d_low_leq_identity": self.chain_d_low_leq_identity,
                "equivalence_confirmed": self.equivalence_confirmed}


def _sample_cauchy_fb_sequences(space: FiniteSpace, rng, count: int):
    from .nets import zero_cliques, epseq
    cliques = zero_cliques(space)
    if not cliques:
        return
    for _ in range(count):
        mask = cliques[rng.randrange(len(cliques))]
        members = [i for i in range(space.n) if mask >> i & 1]
        rng.shuffle(members)
        pre = [rng.randrange(space.n)] if rng.random() < 0.5 else []
        pts = epseq(pre, members)
        kind = rng.choice(("constant", "harmonic"))
        if kind == "constant":
            radii = RadiusSeq("constant", Fraction(-rng.randrange(0, 4), 3))
        else:
            radii = RadiusSeq("harmonic", Fraction(0), Fraction(1, rng.choice((1, 2))))
        yield pts, radii


def directed_fb_subsets_have_sups(space: FiniteSpace, rng, grid=DEFAULT_RADIUS_GRID,
                                  samples: int = 200, max_size: int = 4):
    """Sample order-directed subsets of X x grid and find their suprema.

    A finite directed set has a member above all members (transitivity of
    the order); that member stays the least upper bound in the whole
    extension because every upper bound must dominate it.  Returns
    (checked, with_sup).
    """
    carrier = [FormalBall(i, u) for i in range(space.n) for u in grid]
    checked = 0
    with_sup = 0
    for _ in range(samples):
        size = rng.randrange(1, max_size + 1)
        subset = [carrier[rng.randrange(len(carrier))] for _ in range(size)]
        subset = list({(b.point, b.radius): b for b in subset}.values())
        directed = all(
            any(fb_leq(space, a, c) and fb_leq(space, b, c) for c in subset)
            for a, b in itertools.combinations_with_replacement(subset, 2))
        if not directed:
            continue
        checked += 1
        tops = [m for m in subset if all(fb_leq(space, e, m) for e in subset)]
        if tops:
            with_sup += 1
    return checked, with_sup


def kw_audit(space: FiniteSpace, rng, grid=DEFAULT_RADIUS_GRID,
             cauchy_samples: int = 100, subset_samples: int = 200) -> KwAuditReport:
    """Three-way completeness equivalence at finite scale.

    (1) the base is complete; (2) sampled Cauchy formal-ball sequences all
    acquire verified limits; (3) sampled directed subsets of the radius
    grid extension have suprema.  On a finite base all three sides hold,
    and the chain from (3) back to (2) is re-verified through the sampled
    lower-ball bound identities.
    """
    base = is_complete(space)
    checked = verified = 0
    for pts, radii in _sample_cauchy_fb_sequences(space, rng, cauchy_samples):
        res = kw_limit(space, pts, radii, grid)
        checked += 1
        if res.verified:
            verified += 1
    d_checked, d_with = directed_fb_subsets_have_sups(space, rng, grid, subset_samples)
    ids = ball_identities(space, rng, 200)
    confirmed = (bool(base.complete) and checked == verified
                 and d_checked == d_with and ids.ok)
    return KwAuditReport(bool(base.complete), checked, verified,
                         d_checked, d_with, ids.d_low_leq_identity, confirmed)
