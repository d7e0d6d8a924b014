"""Finitely presented infinite spaces, analyzed at a cutoff with certificates.

A :class:`FamilySpace` has countably many indexed points (plus named extra
points) and a distance rule from a closed catalog.  Infinite claims about
such a space are never guessed: each analyzer first verifies a closed-form
certificate against every in-window instance, and only then uses the
analytic tail meaning of that certificate.  Claims come back tri-state
(True / False / None for undecidable-at-cutoff).

Catalog of rules:

* ``coordinate-projection``      d(x, y) = value(y)
* ``truncated-difference``       d(x, y) = (value(x) - value(y))+
* ``order-characteristic``       d(x, y) = 0 if value(x) <= value(y) else inf
* ``sup-truncated-difference``   d over coordinate vectors, sup of
  truncated coordinate differences up to a coordinate window

Catalog of value forms for indexed points: ``one_minus_unit``
(n -> 1 - 1/(n+1), an increasing chain with supremum 1) and ``natural``
(n -> n).  The ``sup-truncated-difference`` rule uses the built-in
vector family n -> (inf, ..., inf, 0, 1/(n+1), 1/(n+2), ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .extreal import INF, ZERO, ExtReal
from .space import SpaceError

VALUE_RULES = ("coordinate-projection", "truncated-difference", "order-characteristic")
RULES = VALUE_RULES + ("sup-truncated-difference",)
VALUE_FORMS = ("one_minus_unit", "natural")
SEQ_KINDS = ("identity", "swap-pairs", "constant", "swap-odd")


class CertificateError(AssertionError):
    """A certificate failed its in-window verification (bug signal)."""


class UndecidableAtCutoff(ValueError):
    """No certificate covers the requested claim for this rule/sequence."""


@dataclass(frozen=True, eq=False)
class FamilySpace:
    rule: str
    cutoff: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rule not in RULES:
            raise SpaceError(f"unknown family rule {self.rule!r}")
        if self.cutoff < 4:
            raise SpaceError("cutoff must be at least 4")
        if self.rule in VALUE_RULES:
            form = self.params.get("values", "one_minus_unit")
            if form not in VALUE_FORMS:
                raise SpaceError(f"unknown value form {form!r}")

    # -- points ------------------------------------------------------------

    @property
    def prefix(self) -> str:
        return self.params.get("prefix", "x")

    @property
    def extras(self) -> dict:
        return {k: Fraction(v) for k, v in self.params.get("extras", {}).items()}

    def indexed(self, n: int):
        return ("i", n)

    def extra(self, label: str):
        if label not in self.params.get("extras", {}):
            raise SpaceError(f"unknown extra point {label!r}")
        return ("e", label)

    def points(self) -> list:
        """All in-window point descriptors: extras first, then indexed."""
        pts = [("e", k) for k in self.params.get("extras", {})]
        pts += [("i", n) for n in range(1, self.cutoff + 1)]
        return pts

    def label(self, pt) -> str:
        kind, v = pt
        if kind == "e":
            return v
        if self.rule in VALUE_RULES:
            return str(self.value(pt))
        return f"{self.prefix}{v}"

    def point_by_label(self, label: str):
        for pt in self.points():
            if self.label(pt) == label:
                return pt
        raise SpaceError(f"unknown point {label!r}")

    # -- values and distances ----------------------------------------------

    def value(self, pt) -> Fraction:
        """Rational value of a point (value-based rules only)."""
        kind, v = pt
        if kind == "e":
            return self.extras[v]
        form = self.params.get("values", "one_minus_unit")
        if form == "one_minus_unit":
            return 1 - Fraction(1, v + 1)
        return Fraction(v)

    @cached_property
    def _unit_fractions(self) -> tuple:
        return (None,) + tuple(ExtReal(1, j) for j in range(1, self.coordinate_cutoff + 1))

    def coord(self, pt, j: int) -> ExtReal:
        """Coordinate j of an indexed vector point (sup-trunc-diff rule)."""
        kind, m = pt
        if kind != "i":
            raise SpaceError("vector rules have no extra points")
        if j < m:
            return INF
        if j == m:
            return ZERO
        return self._unit_fractions[j] if j <= self.coordinate_cutoff else ExtReal(1, j)

    @property
    def coordinate_cutoff(self) -> int:
        return int(self.params.get("coordinate_cutoff", max(64, self.cutoff + 2)))

    @cached_property
    def _dist_cache(self) -> dict:
        return {}

    def dist(self, p, q) -> ExtReal:
        if self.rule == "coordinate-projection":
            return ExtReal.from_fraction(self.value(q))
        if self.rule == "truncated-difference":
            diff = self.value(p) - self.value(q)
            return ExtReal.from_fraction(diff) if diff > 0 else ZERO
        if self.rule == "order-characteristic":
            return ZERO if self.value(p) <= self.value(q) else INF
        # sup-truncated-difference: the window must cover both indices for
        # the finite sup to be exact (beyond max(p,q) the coordinates agree).
        hit = self._dist_cache.get((p, q))
        if hit is not None:
            return hit
        k = self.coordinate_cutoff
        if max(p[1], q[1]) > k:
            raise SpaceError("coordinate window too small for these indices")
        best = ZERO
        for j in range(1, k + 1):
            v = self.coord(p, j).tsub(self.coord(q, j))
            if best < v:
                best = v
        self._dist_cache[(p, q)] = best
        return best

    def to_dict(self) -> dict:
        return {"rule": self.rule, "cutoff": self.cutoff, "params": self.params}


def family_from_dict(data: dict) -> FamilySpace:
    try:
        return FamilySpace(data["rule"], int(data["cutoff"]), dict(data.get("params", {})))
    except (KeyError, TypeError):
        raise SpaceError("family file needs 'rule' and 'cutoff'") from None


@dataclass(frozen=True, eq=False)
class FamilySeq:
    """Catalog-form sequence k -> point over a family space (k >= 1)."""

    space: FamilySpace
    kind: str
    point: str | None = None  # for kind "constant": a point label

    def __post_init__(self):
        if self.kind not in SEQ_KINDS:
            raise SpaceError(f"unknown sequence kind {self.kind!r}")
        if self.kind == "constant" and self.point is None:
            raise SpaceError("constant sequences need a point")

    def term(self, k: int):
        if k < 1:
            raise ValueError("positions start at 1")
        if self.kind == "identity":
            return self.space.indexed(k)
        if self.kind == "swap-pairs":
            return self.space.indexed(k + 1 if k % 2 == 1 else k - 1)
        if self.kind == "swap-odd":
            return self.space.indexed(2 * k)
        return self.space.point_by_label(self.point)

    def window(self) -> int:
        n = self.space.cutoff
        if self.kind == "swap-pairs":
            return n - 1 if n % 2 == 1 else n
        if self.kind == "swap-odd":
            return n // 2
        return n


@dataclass(frozen=True)
class Claim:
    """Tri-state verdict: True/False with certificates, or None (undecidable)."""

    value: bool | None
    certificates: tuple = ()
    note: str = ""

    def to_dict(self) -> dict:
        return {"value": self.value, "certificates": list(self.certificates),
                "note": self.note}


@dataclass(frozen=True)
class FamilyClasses:
    reflexive: Claim
    pre_cauchy: Claim
    cauchy: Claim


@dataclass(frozen=True)
class CandidateRejection:
    """Finite witness that a candidate point is not a double-hole limit."""

    candidate: str
    center: str
    topology: str       # which hole inequality fails
    limit: str          # exact liminf along the sequence
    required: str       # the distance the liminf would need to reach

    def to_dict(self) -> dict:
        return {"candidate": self.candidate, "center": self.center,
                "topology": self.topology, "limit": self.limit,
                "required": self.required}


@dataclass(frozen=True)
class FamilyCompleteness:
    """Never claims completeness: False with witnesses, or None."""

    complete: bool | None
    seq_kind: str | None = None
    rejections: tuple = ()
    certificates: tuple = ()

    def to_dict(self) -> dict:
        return {"complete": self.complete, "seq_kind": self.seq_kind,
                "rejections": [r.to_dict() for r in self.rejections],
                "certificates": list(self.certificates)}


# ---------------------------------------------------------------------------
# Certificates: each is a named finite verification over the whole window.
# ---------------------------------------------------------------------------

def _check_vector_pairwise(space: FamilySpace) -> bool:
    """d(x_m, x_k) is 0 on the diagonal, 1/k for m < k, inf for m > k."""
    for m in range(1, space.cutoff + 1):
        for k in range(1, space.cutoff + 1):
            got = space.dist(space.indexed(m), space.indexed(k))
            if m == k:
                want = ZERO
            elif m < k:
                want = ExtReal(1, k)
            else:
                want = INF
            if got != want:
                return False
    return True


def _check_chain_increasing(space: FamilySpace) -> bool:
    """Indexed values strictly increase and stay below 1."""
    vals = [space.value(space.indexed(n)) for n in range(1, space.cutoff + 2)]
    return all(a < b for a, b in zip(vals, vals[1:])) and all(v < 1 for v in vals)


def _check_natural_values(space: FamilySpace) -> bool:
    return all(space.value(space.indexed(n)) == n for n in range(1, space.cutoff + 2))


_CERT_CHECKS = {
    "fm.pairwise": _check_vector_pairwise,
    "chain.increasing_below_one": _check_chain_increasing,
    "naturals.values": _check_natural_values,
}


class Analyzer:
    """Shared certificate bookkeeping for family analyses."""

    def __init__(self, space: FamilySpace):
        self.space = space
        self._verified: dict = {}

    def cert(self, cert_id: str) -> str:
        ok = self._verified.get(cert_id)
        if ok is None:
            check = _CERT_CHECKS[cert_id]
            ok = check(self.space)
            self._verified[cert_id] = ok
        if not ok:
            raise CertificateError(f"certificate {cert_id} failed in-window verification")
        return cert_id


class VectorFamilyAnalyzer(Analyzer):
    """The sup-truncated-difference family of all-but-finitely-agreeing
    vectors.  Everything reduces to the verified pairwise closed form."""

    def classify_identity(self) -> FamilyClasses:
        c = self.cert("fm.pairwise")
        # d(x_m, x_k) = 1/k for m < k, so tail sups vanish in the limit:
        # Cauchy, hence pre-Cauchy and reflexive.
        claim = Claim(True, (c,))
        return FamilyClasses(claim, claim, claim)

    def limits_against(self, j: int):
        """Exact (forward, backward, certs) limits of the identity sequence
        against x_j: d(x_m, x_j) = inf for all m > j, and d(x_j, x_m) = 1/m
        which tends to 0."""
        c = self.cert("fm.pairwise")
        return INF, ZERO, (c,)

    def discrete_order(self) -> Claim:
        c = self.cert("fm.pairwise")
        # off-diagonal distances are 1/k or inf, never 0, in both directions
        return Claim(True, (c,), "specialization order and symmetric join are discrete")

    def trivially_order_directed_complete(self) -> Claim:
        c = self.cert("fm.pairwise")
        return Claim(True, (c,), "directed sets are singletons with zero self-distance")

    def trivially_join_complete(self) -> Claim:
        c = self.cert("fm.pairwise")
        return Claim(True, (c,), "join distance is discrete: Cauchy nets are eventually constant")

    def rejections(self) -> list:
        c = self.cert("fm.pairwise")
        out = []
        for j in range(1, self.space.cutoff + 1):
            # liminf_m d(x_{j+1}, x_m) = lim 1/m = 0 < inf = d(x_{j+1}, x_j)
            out.append(CandidateRejection(
                candidate=self.space.label(self.space.indexed(j)),
                center=self.space.label(self.space.indexed(j + 1)),
                topology="lower_hole", limit="0", required="inf"))
        return out

    def completeness(self) -> FamilyCompleteness:
        return FamilyCompleteness(False, "identity", tuple(self.rejections()),
                                  (self.cert("fm.pairwise"),))


class ChainAnalyzer(Analyzer):
    """Truncated-difference space over an increasing chain with extras.

    The chain values increase strictly to 1 without attaining it, so the
    tail limits of (value(c) - value(x_n))+ and (value(x_n) - value(c))+
    are (value(c) - 1)+ and (1 - value(c))+ exactly.
    """

    CERT = "chain.increasing_below_one"

    def __init__(self, space: FamilySpace):
        if space.rule != "truncated-difference":
            raise SpaceError("chain analysis needs the truncated-difference rule")
        super().__init__(space)

    def _dist(self, a: Fraction, b: Fraction) -> ExtReal:
        d = a - b
        return ExtReal.from_fraction(d) if d > 0 else ZERO

    def classify_identity(self) -> FamilyClasses:
        c = self.cert(self.CERT)
        # the chain is increasing: d(x_m, x_k) = 0 for m <= k, so every
        # tail sup is 0 and the sequence is Cauchy.
        claim = Claim(True, (c,))
        return FamilyClasses(claim, claim, claim)

    def tail_limits_at(self, center_value: Fraction):
        """Exact (lim d(c, x_n), lim d(x_n, c)) for the chain sequence."""
        self.cert(self.CERT)
        toward = self._dist(center_value, Fraction(1))
        away = self._dist(Fraction(1), center_value)
        return toward, away

    def candidates(self) -> list:
        return self.space.points()

    def is_upper_bound_of_chain(self, pt) -> Claim:
        c = self.cert(self.CERT)
        v = self.space.value(pt)
        if v >= 1:
            return Claim(True, (c,))
        # some in-window or next chain point already exceeds v
        return Claim(False, (c,), "chain values approach 1")

    def chain_suprema(self):
        """Order suprema and metric suprema of the whole chain.

        Upper bounds are the points with value >= 1 (certified: the chain
        approaches 1 without attaining it); metric suprema must also
        reproduce sup_y d(y, z), which tops out at values below 1, so any
        candidate with value above 1 overshoots.
        """
        c = self.cert(self.CERT)
        ubs = [pt for pt in self.candidates() if self.is_upper_bound_of_chain(pt).value]
        leq_sups = [pt for pt in ubs
                    if all(self._dist(self.space.value(pt), self.space.value(z)).is_zero()
                           for z in ubs)]
        d_sups = []
        evidence = {}
        for pt in ubs:
            v = self.space.value(pt)
            ok = True
            for z in self.candidates():
                w = self.space.value(z)
                # sup over the chain of (value(y) - w)+ equals (1 - w)+ in the
                # limit; the candidate must match it exactly.
                need = self._dist(Fraction(1), w)
                got = self._dist(v, w)
                if got != need:
                    ok = False
                    evidence[self.space.label(pt)] = {
                        "z": self.space.label(z),
                        "chain_sup": str(need), "candidate": str(got)}
                    break
            if ok:
                d_sups.append(pt)
        return {
            "leq_sups": sorted(self.space.label(p) for p in leq_sups),
            "d_sups": sorted(self.space.label(p) for p in d_sups),
            "in_window_sup_to_zero": str(self._dist(
                self.space.value(self.space.indexed(self.space.cutoff)), Fraction(0))),
            "evidence": evidence,
            "certificates": [c],
        }

    def chain_directed(self) -> Claim:
        c = self.cert(self.CERT)
        # any finite subset of the chain is bounded by its largest member
        return Claim(True, (c,))

    def hole_limit_sets(self):
        """Exact single/double hole limit points of the chain sequence."""
        c = self.cert(self.CERT)
        lower, upper, double = [], [], []
        for pt in self.candidates():
            v = self.space.value(pt)
            lbl = self.space.label(pt)
            # lower hole: (value(c)-1)+ >= (value(c)-v)+ for every point c,
            # including tail chain points; fails iff v < 1.
            lh = v >= 1
            # upper hole: (1-value(c))+ >= (v-value(c))+ for every c; with
            # c = the least extra (or chain bottom) this forces v <= 1.
            uh = all(self._dist(Fraction(1), self.space.value(z)) >=
                     self._dist(v, self.space.value(z)) for z in self.candidates())
            if lh:
                lower.append(lbl)
            if uh:
                upper.append(lbl)
            if lh and uh:
                double.append(lbl)
        return {"lower_hole": sorted(lower), "upper_hole": sorted(upper),
                "double_hole": sorted(double), "certificates": [c]}

    def lower_ball_bound_failure(self):
        """Witness that d_low(1) exceeds 1.

        The lower ball of the first chain point at radius 1 contains the
        whole chain (in-window members checked, tail by the chain
        certificate), so its true upper bounds are the points with value
        at least 1; the nearest sits at distance 2 - value(chain_1) > 1.
        """
        c = self.cert(self.CERT)
        x = self.space.indexed(1)
        vx = self.space.value(x)
        one = ExtReal(1)
        in_window_ball = [pt for pt in self.candidates()
                          if self._dist(self.space.value(pt), vx) < one]
        if any(pt[0] == "i" and pt not in in_window_ball for pt in self.candidates()):
            raise CertificateError("chain certificate broke: some chain point left the ball")
        # ball values approach 1, so upper bounds must carry value >= 1
        ubs = [pt for pt in self.candidates() if self.space.value(pt) >= 1]
        best = min((self._dist(self.space.value(u), vx) for u in ubs), default=INF)
        return {"x": self.space.label(x), "r": "1", "value": str(best),
                "exceeds_radius": best > one, "certificates": [c]}

    def completeness(self) -> FamilyCompleteness:
        c = self.cert(self.CERT)
        rejections = []
        for pt in self.candidates():
            v = self.space.value(pt)
            lbl = self.space.label(pt)
            if v >= 1:
                # upper-hole failure against the bottom of the chain
                z = min(self.candidates(), key=lambda p: self.space.value(p))
                rejections.append(CandidateRejection(
                    lbl, self.space.label(z), "upper_hole",
                    str(self._dist(Fraction(1), self.space.value(z))),
                    str(self._dist(v, self.space.value(z)))))
            else:
                nxt = self._strictly_above(v)
                rejections.append(CandidateRejection(
                    lbl, self.space.label(nxt), "lower_hole",
                    "0", str(self._dist(self.space.value(nxt), v))))
        return FamilyCompleteness(False, "identity", tuple(rejections), (c,))

    def _strictly_above(self, v: Fraction):
        for n in range(1, self.space.cutoff + 2):
            pt = self.space.indexed(n)
            if self.space.value(pt) > v:
                return pt
        raise CertificateError("chain certificate should provide a larger element")


class NaturalOrderAnalyzer(Analyzer):
    """Order-characteristic distance on the naturals; carries the swapped
    pair sequence 2,1,4,3,... whose values still escape to infinity."""

    CERT = "naturals.values"

    def __init__(self, space: FamilySpace):
        if space.rule != "order-characteristic" or \
                space.params.get("values") != "natural" or space.params.get("extras"):
            raise SpaceError("natural-order analysis needs bare naturals")
        super().__init__(space)

    def _seq_value(self, seq: FamilySeq, k: int) -> int:
        return seq.term(k)[1]

    def classify(self, seq: FamilySeq) -> FamilyClasses:
        c = self.cert(self.CERT)
        if seq.kind == "constant":
            return FamilyClasses(Claim(True, (c,)), Claim(True, (c,)), Claim(True, (c,)))
        if seq.kind in ("identity", "swap-odd"):
            # strictly increasing values: all three classes hold
            claim = Claim(True, (c,), "values strictly increase")
            return FamilyClasses(claim, claim, claim)
        if seq.kind == "swap-pairs":
            # values exceed every bound eventually, so tails dominate each
            # fixed term: reflexive and pre-Cauchy.  Adjacent swapped pairs
            # give d = inf at every odd position: not Cauchy.
            w = seq.window()
            witnesses = [(k, k + 1) for k in range(1, w) if k % 2 == 1
                         if self.space.dist(seq.term(k), seq.term(k + 1)).is_inf]
            if not witnesses:
                raise CertificateError("swap sequence lost its inversion pattern")
            ok = Claim(True, (c,), "tail values dominate every fixed term")
            return FamilyClasses(ok, ok, Claim(False, (c,),
                                 f"adjacent inversions at {len(witnesses)} odd positions"))
        raise UndecidableAtCutoff(seq.kind)

    def cauchy_subsequence(self, seq: FamilySeq) -> FamilySeq:
        """Increasing-index extraction of a Cauchy subsequence.

        Greedy replay of the finite-subset recursion: repeatedly pick the
        first later position within the stated bound of every selected
        term; since the tail sups vanish, the bound at step t is 2^-t,
        which for a 0/inf distance means "comparable upward".
        """
        cls = self.classify(seq)
        if not cls.pre_cauchy.value:
            from .nets import PreconditionError
            raise PreconditionError("sequence is not pre-Cauchy")
        if cls.cauchy.value:
            return seq
        c = self.cert(self.CERT)
        w = seq.window()
        selected = []
        k = 1
        while k <= w:
            if all(self.space.dist(seq.term(s), seq.term(k)).is_zero() for s in selected):
                selected.append(k)
            k += 1
        # verify the selection is exactly the odd positions, whose induced
        # sequence is the increasing even values: that is the catalog kind
        if selected != list(range(1, w + 1, 2)):
            raise CertificateError("greedy extraction deviated from the odd positions")
        sub = FamilySeq(self.space, "swap-odd")
        sub_cls = self.classify(sub)
        if sub_cls.cauchy.value is not True:
            raise CertificateError("extracted subsequence failed to certify Cauchy")
        return sub

    def hole_flags(self, seq: FamilySeq):
        """The four single-topology limit predicates, as candidate sets.

        Sequence values escape upward, so for every center c the tail of
        d(c, x_k) is 0 and the tail of d(x_k, c) is inf:

        * upper_ball/upper_hole hold for every candidate,
        * lower_ball/lower_hole hold for none (witness center x+1 / any c).
        """
        c = self.cert(self.CERT)
        # in-window verification of the growth bound value(x_k) >= k - 1,
        # which is what makes both tails eventually constant
        w = seq.window()
        for k in range(1, w + 1):
            if self._seq_value(seq, k) < k - 1:
                raise CertificateError("sequence values stopped growing")
        n_cands = self.space.cutoff
        every = sorted(self.space.label(self.space.indexed(i)) for i in range(1, n_cands + 1))
        return {"upper_ball": every, "upper_hole": every,
                "lower_ball": [], "lower_hole": [], "certificates": [c]}

    def subnet_equiv(self, seq: FamilySeq) -> Claim:
        sub = self.cauchy_subsequence(seq)
        a = self.hole_flags(seq)
        b = self.hole_flags(sub)
        same = all(a[t] == b[t] for t in ("upper_ball", "lower_ball",
                                          "upper_hole", "lower_hole"))
        return Claim(same, (self.cert(self.CERT),))


def analyzer_for(space: FamilySpace):
    if space.rule == "sup-truncated-difference":
        return VectorFamilyAnalyzer(space)
    if space.rule == "truncated-difference" and \
            space.params.get("values", "one_minus_unit") == "one_minus_unit":
        return ChainAnalyzer(space)
    if space.rule == "order-characteristic" and space.params.get("values") == "natural":
        return NaturalOrderAnalyzer(space)
    return None


def classify_family(seq: FamilySeq) -> FamilyClasses:
    """Tri-state net classes of a family sequence.

    Constant sequences are decided directly from the (exact) self-distance;
    everything else needs a certified analyzer, and absent one every claim
    is undecidable rather than guessed.
    """
    space = seq.space
    if seq.kind == "constant":
        p = space.point_by_label(seq.point)
        zero = space.dist(p, p).is_zero()
        claim = Claim(zero, (), "constant sequence: self-distance decides")
        return FamilyClasses(claim, claim, claim)
    an = analyzer_for(space)
    if an is None:
        missing = Claim(None, (), "no certificate for this rule")
        return FamilyClasses(missing, missing, missing)
    if isinstance(an, VectorFamilyAnalyzer) and seq.kind == "identity":
        return an.classify_identity()
    if isinstance(an, ChainAnalyzer) and seq.kind == "identity":
        return an.classify_identity()
    if isinstance(an, NaturalOrderAnalyzer):
        return an.classify(seq)
    missing = Claim(None, (), f"no certificate for sequence kind {seq.kind}")
    return FamilyClasses(missing, missing, missing)


def cauchy_subsequence_family(seq: FamilySeq) -> FamilySeq:
    """Cauchy subsequence of a pre-Cauchy family sequence (itself if the
    input already certifies Cauchy)."""
    from .nets import PreconditionError
    cls = classify_family(seq)
    if cls.pre_cauchy.value is None:
        raise UndecidableAtCutoff("pre-Cauchy status undecidable at this cutoff")
    if not cls.pre_cauchy.value:
        raise PreconditionError("sequence is not pre-Cauchy")
    if cls.cauchy.value:
        return seq
    an = analyzer_for(seq.space)
    if isinstance(an, NaturalOrderAnalyzer):
        return an.cauchy_subsequence(seq)
    raise UndecidableAtCutoff("no extraction certificate for this rule")


def family_is_complete(space: FamilySpace) -> FamilyCompleteness:
    an = analyzer_for(space)
    if isinstance(an, VectorFamilyAnalyzer):
        return an.completeness()
    if isinstance(an, ChainAnalyzer):
        return an.completeness()
    return FamilyCompleteness(None)


def family_limits_against(seq: FamilySeq, target_label: str):
    """Certified (forward, backward, certificates) limits of d(x_k, y) and
    d(y, x_k) for a family sequence against a named point."""
    space = seq.space
    target = space.point_by_label(target_label)
    if seq.kind == "constant":
        p = space.point_by_label(seq.point)
        return space.dist(p, target), space.dist(target, p), ()
    an = analyzer_for(space)
    if isinstance(an, VectorFamilyAnalyzer) and seq.kind == "identity":
        return an.limits_against(target[1])
    if isinstance(an, ChainAnalyzer) and seq.kind == "identity":
        toward, away = an.tail_limits_at(space.value(target))
        return away, toward, (an.CERT,)
    raise UndecidableAtCutoff(f"no limit certificate for {space.rule}/{seq.kind}")


def family_subnet_equiv(seq: FamilySeq) -> Claim:
    """Single-topology convergence agrees between a pre-Cauchy family
    sequence and its extracted Cauchy subsequence."""
    cls = classify_family(seq)
    if cls.pre_cauchy.value is None:
        raise UndecidableAtCutoff("pre-Cauchy status undecidable at this cutoff")
    if not cls.pre_cauchy.value:
        from .nets import PreconditionError
        raise PreconditionError("sequence is not pre-Cauchy")
    if cls.cauchy.value:
        return Claim(True, cls.cauchy.certificates, "subsequence is the sequence itself")
    an = analyzer_for(seq.space)
    if isinstance(an, NaturalOrderAnalyzer):
        return an.subnet_equiv(seq)
    raise UndecidableAtCutoff("no extraction certificate for this rule")
