"""Derived step functions on [0, inf] measuring ball boundability.

For each radius r the four functions ask how well balls of radius r can be
bounded from below (d_up) or above (d_low, d_F, d_Phi) by nearby points.
On a finite space each is piecewise constant between consecutive distinct
matrix values, so it is computed exactly as a :class:`StepFn`.

Pieces follow the right-closed convention: the stored value holds on
(prev_cut, cut], with an explicit value at 0 (empty ball) and the last cut
at infinity.  This matches closed-threshold semantics of sup over
{x : g(x) <= r}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extreal import INF, ZERO, ExtReal, ext_min
from .space import FiniteSpace, threshold_grid


@dataclass(frozen=True)
class StepFn:
    """Piecewise constant nondecreasing-or-not function on [0, inf]."""

    at_zero: ExtReal
    cuts: tuple      # ascending, last is inf
    values: tuple    # value on (cuts[i-1], cuts[i]]

    def __post_init__(self):
        if len(self.cuts) != len(self.values) or not self.cuts:
            raise ValueError("cuts and values must align and be nonempty")
        if self.cuts[-1] != INF:
            raise ValueError("last cut must be inf")
        if any(not (self.cuts[i] < self.cuts[i + 1]) for i in range(len(self.cuts) - 1)):
            raise ValueError("cuts must be strictly ascending")

    def __call__(self, r: ExtReal) -> ExtReal:
        if r.is_zero():
            return self.at_zero
        for cut, val in zip(self.cuts, self.values):
            if r <= cut:
                return val
        return self.values[-1]

    @property
    def first_positive_value(self) -> ExtReal:
        """The constant value on the interval just above 0."""
        return self.values[0]

    def is_monotone(self) -> bool:
        prev = self.at_zero
        for v in self.values:
            if v < prev:
                return False
            prev = v
        return True

    def to_dict(self) -> dict:
        return {"at_zero": str(self.at_zero),
                "cuts": [str(c) for c in self.cuts],
                "values": [str(v) for v in self.values]}


@dataclass(frozen=True)
class DerivedFunctions:
    d_up: StepFn
    d_low: StepFn
    d_F: StepFn
    d_Phi: StepFn

    def to_dict(self) -> dict:
        return {"d_up": self.d_up.to_dict(), "d_low": self.d_low.to_dict(),
                "d_F": self.d_F.to_dict(), "d_Phi": self.d_Phi.to_dict()}


def derived_functions(space: FiniteSpace) -> DerivedFunctions:
    """Compute d_up, d_low, d_F and d_Phi exactly.

    d_up(r):  worst over x of how far x is from a lower bound of its upper
              ball of radius r.
    d_low(r): worst over x of how far above x an upper bound of its lower
              ball must sit.
    d_F(r):   like d_low but through finite subsets of the ball; on a
              finite carrier the sup over subsets is attained at the whole
              ball (adding points only shrinks the bound candidates), so
              the whole-ball formula is exact.
    d_Phi(r): like d_F with bounds taken through every generator of the
              relation filter; the sup over generators is evaluated on the
              whole threshold grid.

    Empty candidate sets contribute inf.
    """
    n = space.n
    finite_vals = [v for v in space.distinct_values if not v.is_inf and not v.is_zero()]
    cuts = tuple(finite_vals) + (INF,)
    grid = threshold_grid(space)
    up0 = space.zero_up
    down0 = space.zero_down
    # per-generator relation rows: rel[g][z] = bitmask {y : d(z, y) < eps_g}
    rel = []
    for eps in grid:
        rows = []
        for z in range(n):
            m = 0
            drow = space.matrix[z]
            for y in range(n):
                if drow[y] < eps:
                    m |= 1 << y
            rows.append(m)
        rel.append(rows)
    full = (1 << n) - 1

    def piece_values(r: ExtReal | None):
        # r=None encodes radius 0 (empty balls)
        up_worst = ZERO
        low_worst = ZERO
        phi_worst = ZERO
        for x in range(n):
            if r is None:
                upper_ball = []
                lower_ball = []
            else:
                upper_ball = [z for z in range(n) if space.d(x, z) < r]
                lower_ball = [z for z in range(n) if space.d(z, x) < r]
            ball_up_mask = 0
            for z in upper_ball:
                ball_up_mask |= 1 << z
            ball_low_mask = 0
            for z in lower_ball:
                ball_low_mask |= 1 << z
            lb = [y for y in range(n) if up0[y] & ball_up_mask == ball_up_mask]
            up_here = ext_min((space.d(x, y) for y in lb), INF)
            ub = [y for y in range(n) if down0[y] & ball_low_mask == ball_low_mask]
            low_here = ext_min((space.d(y, x) for y in ub), INF)
            # Generators are nested, so the sup over them is attained at the
            # smallest one; the loop keeps the quantification explicit.
            phi_here = ZERO
            for g in range(len(grid)):
                rows = rel[g]
                cand = full
                for z in lower_ball:
                    cand &= rows[z]
                    if not cand:
                        break
                val = ext_min((space.d(y, x) for y in range(n) if cand >> y & 1), INF)
                if phi_here < val:
                    phi_here = val
            if up_worst < up_here:
                up_worst = up_here
            if low_worst < low_here:
                low_worst = low_here
            if phi_worst < phi_here:
                phi_worst = phi_here
        # d_F shares the whole-ball evaluation with d_low (sup over finite
        # subsets of the ball is attained at the ball itself)
        return up_worst, low_worst, low_worst, phi_worst

    z_up, z_low, z_f, z_phi = piece_values(None)
    ups, lows, fs, phis = [], [], [], []
    for cut in cuts:
        u, l, f, p = piece_values(cut)
        ups.append(u)
        lows.append(l)
        fs.append(f)
        phis.append(p)
    return DerivedFunctions(
        StepFn(z_up, cuts, tuple(ups)),
        StepFn(z_low, cuts, tuple(lows)),
        StepFn(z_f, cuts, tuple(fs)),
        StepFn(z_phi, cuts, tuple(phis)),
    )


def _sample_points(f: StepFn, g: StepFn) -> list:
    """Arguments covering every constancy piece of f and g: zero plus the
    right endpoint of each merged piece."""
    return [ZERO] + sorted(set(f.cuts) | set(g.cuts))


def ratio_at(f: StepFn, g: StepFn, r: ExtReal) -> ExtReal:
    """sup of f over the sublevel set {x : g(x) <= r}."""
    best = ZERO
    for x in _sample_points(f, g):
        if g(x) <= r:
            best = max(best, f(x))
    return best


def subequiv(f: StepFn, g: StepFn) -> bool:
    """f is uniformly below g: sup{f(x) : g(x) <= r} -> 0 as r -> 0+.

    Step data makes the limit exact: below the smallest positive value of
    g the sublevel set is frozen at {g = 0}, so the limit is the sup of f
    there.
    """
    return all(f(x).is_zero() for x in _sample_points(f, g) if g(x).is_zero())


def sub_identity(f: StepFn) -> bool:
    """f is uniformly below the identity: lim_{r->0+} sup_{[0,r]} f = 0."""
    return f.at_zero.is_zero() and f.first_positive_value.is_zero()


def leq_identity(f: StepFn) -> bool:
    """f(r) <= r for every r in [0, inf]."""
    if not f.at_zero.is_zero():
        return False
    prev = ZERO
    for cut, val in zip(f.cuts, f.values):
        # the piece (prev, cut] must sit below every r it contains
        if not val <= prev:
            return False
        prev = cut
    return True


def weak_threshold_condition(f: StepFn) -> bool:
    """Some interval (0, b) on which f(r) < r throughout.

    The exact finite reading of "0 is in the closure of the good radii":
    the first positive piece must carry the value 0.
    """
    return f.first_positive_value.is_zero()


def dist_subequiv(f_space: FiniteSpace, g_space: FiniteSpace) -> bool:
    """Uniform subequivalence of two distances on the same points.

    f below g means sup{f(x,y) : g(x,y) <= r} -> 0, which on finite data is
    exactly: g(x,y) = 0 forces f(x,y) = 0.
    """
    n = f_space.n
    return all(f_space.d(i, j).is_zero()
               for i in range(n) for j in range(n)
               if g_space.d(i, j).is_zero())
