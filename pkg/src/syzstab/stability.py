"""Slope stability checks for syzygy bundles of powers of an ample divisor.

For a globally generated line bundle O(D) the syzygy bundle is the kernel
of the evaluation map H0(O(D)) (x) O -> O(D); its slope with respect to a
polarization A is -(D.A)/(h0(D) - 1).  Given an ample D, a candidate
effective divisor S and a polarization A, the sign of

    q(d) = alpha*d^2 + beta*d,
    alpha = 2(D.A)(D.S) - (S.A)(D^2),
    beta  = -(D.A)(S^2 + S.K) + (S.A)(D.K),

controls the slope comparison between the subbundle built from d*D - S
and the ambient bundle built from d*D for large d: the subbundle slope is
the larger one exactly when q(d) < 0, provided the Euler characteristic
computes both section counts.  On toric surfaces that identity holds for
nef divisors, and every verdict produced here is re-verified with exact
lattice-count slopes before it is reported.

Everything below is exact rational arithmetic on immutable inputs; there
is no floating point and no hidden state, so all functions are safe to
call concurrently, including grid sweeps over parameter tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional

from .divisors import (
    AbstractSurface,
    Divisor,
    SurfaceModel,
    ToricSurface,
    basis_divisor,
)
from .errors import (
    ConstructionFailedError,
    DegenerateBundleError,
    HypothesesViolatedError,
    InternalError,
    NotAmpleError,
    NotEffectiveError,
    NotNefError,
    OutOfTheoremScopeError,
    PreconditionError,
)
from .fan import Fan, HIRZEBRUCH, OTHER, PROJECTIVE_PLANE

GREATER = "greater"
EQUAL = "equal"
LESS = "less"

UNSTABLE_EVENTUALLY = "UnstableEventually"
UNSTABLE_BOUNDARY = "UnstableBoundary"
STABLE_POSSIBLE = "StablePossible"

UNSTABLE_FOR_LARGE_D = "UnstableForLargeD"
NOT_COVERED = "NotCovered"

NOT_SEMISTABLE = "NotSemistable"
NOT_STABLE = "NotStable"
NO_DESTABILIZER = "NoDestabilizerFound"

CHI_ASSUMPTION = (
    "h0 computed as the Euler characteristic "
    "(vanishing higher cohomology assumed)"
)
NEGATIVE_GENERATOR_NOTE = (
    "candidate generators restricted to curves of negative self-intersection"
)
LOW_RANK_NOTE = (
    "Picard rank below 3: outside the construction's hypotheses, "
    "result is informational"
)

# how far d_threshold walks candidate d values with exact slope
# comparisons before trusting the sign polynomial for minimality
_EXHAUSTIVE_SCAN_LIMIT = 64


def _require_ample(X: SurfaceModel, D: Divisor, what: str) -> None:
    if not X.is_ample(D):
        raise NotAmpleError(f"{what} is not ample")


def syzygy_slope(X: SurfaceModel, D: Divisor, A: Divisor) -> Fraction:
    """Slope -(D.A)/(h0(D) - 1) of the syzygy bundle of O(D).

    D must be nef with at least two sections and A ample.  On a toric
    surface h0 is the exact lattice count; on an abstract surface it is
    the Euler characteristic and the caller must track that assumption.
    """
    _require_ample(X, A, "polarization")
    if not X.is_nef(D):
        raise NotNefError("divisor defining the bundle is not nef")
    h = X.h0(D)
    if h <= 1:
        raise DegenerateBundleError(
            f"h0 = {h} <= 1: no syzygy bundle slope"
        )
    return -X.pair(D, A) / (h - 1)


def slope_compare(
    X: SurfaceModel, D: Divisor, S: Divisor, A: Divisor, d: int
) -> str:
    """Exact order of the subbundle slope against the ambient slope.

    Compares the syzygy bundle of O(d*D - S) sitting inside the one of
    O(d*D).  Returns ``greater``, ``equal`` or ``less`` (subbundle
    relative to ambient).  Both divisors must be nef and S effective.
    """
    ambient = d * D
    sub = ambient - S
    if isinstance(X, ToricSurface) and not X.is_effective(S):
        raise NotEffectiveError("candidate S is not effective")
    mu_ambient = syzygy_slope(X, ambient, A)
    mu_sub = syzygy_slope(X, sub, A)
    if mu_sub > mu_ambient:
        return GREATER
    if mu_sub == mu_ambient:
        return EQUAL
    return LESS


@dataclass(frozen=True)
class AlphaBeta:
    """Leading coefficients of the slope-difference numerator q(d)."""

    alpha: Fraction
    beta: Fraction

    def q(self, d: int) -> Fraction:
        return self.alpha * d * d + self.beta * d


def alpha_beta(
    X: SurfaceModel, D: Divisor, S: Divisor, A: Divisor
) -> AlphaBeta:
    """Degree-2 and degree-1 coefficients of q(d), exact rationals."""
    K = X.canonical
    DA = X.pair(D, A)
    DS = X.pair(D, S)
    SA = X.pair(S, A)
    D2 = X.pair(D, D)
    alpha = 2 * DA * DS - SA * D2
    beta = -DA * (X.pair(S, S) + X.pair(S, K)) + SA * X.pair(D, K)
    return AlphaBeta(Fraction(alpha), Fraction(beta))


@dataclass(frozen=True)
class AsymptoticVerdict:
    """Sign analysis of q(d) for large d.

    ``UnstableEventually``: alpha < 0, the subbundle wins for all large d.
    ``UnstableBoundary``: alpha == 0 and beta <= 0, the subbundle ties or
    wins for all d.  ``StablePossible``: this candidate never
    destabilizes for large d.
    """

    kind: str
    coefficients: AlphaBeta

    @property
    def unstable(self) -> bool:
        return self.kind != STABLE_POSSIBLE


def asymptotic_condition(
    X: SurfaceModel, D: Divisor, S: Divisor, A: Divisor
) -> AsymptoticVerdict:
    """Classify the candidate (D, S, A) by the sign of q(d) for large d."""
    _require_ample(X, D, "divisor D")
    _require_ample(X, A, "polarization")
    if isinstance(X, ToricSurface) and not X.is_effective(S):
        raise NotEffectiveError("candidate S is not effective")
    ab = alpha_beta(X, D, S, A)
    if ab.alpha < 0:
        return AsymptoticVerdict(UNSTABLE_EVENTUALLY, ab)
    if ab.alpha == 0 and ab.beta <= 0:
        return AsymptoticVerdict(UNSTABLE_BOUNDARY, ab)
    return AsymptoticVerdict(STABLE_POSSIBLE, ab)


@dataclass(frozen=True)
class Threshold:
    """Smallest verified exponent where the slope violation holds.

    ``strict`` distinguishes a strict violation (not semistable) from a
    permanent tie (not stable).  ``first_nef_d`` records where d*D - S
    enters the nef cone.
    """

    d0: int
    strict: bool
    first_nef_d: int
    coefficients: AlphaBeta


def _first_nef_multiple(X: SurfaceModel, D: Divisor, S: Divisor) -> int:
    """Smallest d >= 1 with d*D - S nef, for ample D."""
    d = 1
    for i in X.effective_generators:
        dc = X.pair_generator(D, i)
        sc = X.pair_generator(S, i)
        if dc <= 0:
            raise NotAmpleError("divisor D is not ample")
        # need d >= (S.C)/(D.C) against every generator C
        d = max(d, math.ceil(Fraction(sc) / dc))
    return d


def d_threshold(
    X: SurfaceModel, D: Divisor, S: Divisor, A: Divisor
) -> Threshold:
    """Smallest d >= 1 with d*D - S nef and the subbundle slope >= the
    ambient slope, with strictness where attainable.

    The roots of q(d) seed the search; every returned d is confirmed by
    exact slope comparison (and, for small thresholds, so is minimality,
    one d at a time).  Requires an unstable asymptotic verdict.
    """
    verdict = asymptotic_condition(X, D, S, A)
    if not verdict.unstable:
        raise PreconditionError(
            "asymptotic condition is StablePossible: no threshold exists "
            "for this candidate"
        )
    ab = verdict.coefficients
    d_nef = _first_nef_multiple(X, D, S)

    if ab.alpha == 0 and ab.beta == 0:
        # q vanishes identically: permanent tie from the first nef power
        d0 = d_nef
        while (d0 * D - S).is_zero:
            d0 += 1
        order = slope_compare(X, D, S, A, d0)
        if order != EQUAL:
            raise InternalError(
                f"expected slope tie at d = {d0}, got {order}"
            )
        return Threshold(d0, False, d_nef, ab)

    if ab.alpha < 0:
        # q(d) < 0 exactly when d > -beta/alpha (for d > 0)
        root = -ab.beta / ab.alpha
        d_sign = max(1, root.numerator // root.denominator + 1)
    else:
        # alpha == 0, beta < 0: q(d) < 0 for every d >= 1
        d_sign = 1
    d0 = max(d_nef, d_sign)
    while (d0 * D - S).is_zero:
        d0 += 1

    if d0 - d_nef <= _EXHAUSTIVE_SCAN_LIMIT:
        d = d_nef
        while d < d0:
            if not (d * D - S).is_zero:
                order = slope_compare(X, D, S, A, d)
                if order == GREATER:
                    raise InternalError(
                        f"sign polynomial predicted no violation at d = {d}, "
                        "exact comparison disagrees"
                    )
            d += 1
    else:
        check = d0 - 1
        if check >= d_nef and not (check * D - S).is_zero:
            if slope_compare(X, D, S, A, check) == GREATER:
                raise InternalError(
                    f"threshold not minimal: violation already at d = {check}"
                )
    order = slope_compare(X, D, S, A, d0)
    if order != GREATER:
        raise InternalError(
            f"sign polynomial predicted a violation at d = {d0}, "
            f"exact comparison returned {order}"
        )
    return Threshold(d0, True, d_nef, ab)


@dataclass(frozen=True)
class Destabilizer:
    """A verified destabilizing candidate at a fixed exponent."""

    shift: Divisor  # the effective S with subbundle from d*D - S
    subbundle_slope: Fraction
    ambient_slope: Fraction
    strict: bool


def find_destabilizer(
    X: SurfaceModel,
    D: Divisor,
    A: Divisor,
    d: int,
    max_generators: int = 2,
) -> Optional[Destabilizer]:
    """Scan sums of up to ``max_generators`` effective-cone generators S
    for a subbundle of slope >= the ambient slope at exponent d.

    Candidates must leave d*D - S nef and nonzero.  Returns the first
    strict violator in scan order, falling back to the first tie; None
    when no candidate of this shape works.
    """
    ambient = d * D
    _require_ample(X, ambient, "d*D")
    mu_ambient = syzygy_slope(X, ambient, A)
    tie: Optional[Destabilizer] = None
    for r in range(1, max_generators + 1):
        for combo in combinations_with_replacement(
            X.effective_generators, r
        ):
            S = Divisor([0] * X.n)
            for i in combo:
                S = S + basis_divisor(X.n, i)
            sub = ambient - S
            if sub.is_zero or not X.is_nef(sub):
                continue
            try:
                mu_sub = syzygy_slope(X, sub, A)
            except DegenerateBundleError:
                continue
            if mu_sub > mu_ambient:
                return Destabilizer(S, mu_sub, mu_ambient, True)
            if mu_sub == mu_ambient and tie is None:
                tie = Destabilizer(S, mu_sub, mu_ambient, False)
    return tie


def hirzebruch_region(ell: int, a: Fraction, b: Fraction) -> str:
    """Region test for polarization slope a = A2/A1 and bundle slope
    b = B2/B1 on the ell-th Hirzebruch surface, ell >= 1.

    Returns ``UnstableForLargeD`` when a > 2b(b-ell)/ell + ell, or when
    equality holds and b is at least the larger root of
    b^2 - (3 ell/2) b + (ell^2 - ell)/2; that root comparison is done via
    the sign of the integer-coefficient quadratic 2b^2 - 3 ell b +
    (ell^2 - ell), so no radicals appear.  Otherwise ``NotCovered``.
    """
    if ell < 1:
        raise PreconditionError("ell must be a positive integer")
    a = Fraction(a)
    b = Fraction(b)
    if a <= ell or b <= ell:
        raise NotAmpleError(
            f"ampleness needs a > {ell} and b > {ell}, got a={a}, b={b}"
        )
    bound = Fraction(2) * b * (b - ell) / ell + ell
    if a > bound:
        return UNSTABLE_FOR_LARGE_D
    if a == bound:
        quad = 2 * b * b - 3 * ell * b + ell * (ell - 1)
        # for b > ell this sign decides b against the larger root
        if quad >= 0:
            return UNSTABLE_FOR_LARGE_D
    return NOT_COVERED


@dataclass(frozen=True)
class Polarization:
    """Boundary-plus-epsilon polarization with its exact witnesses."""

    polarization: Divisor  # rational A = (D - t E) + eps E
    polarization_integral: Divisor  # same ray, primitive integral
    generator_index: int
    generator: Divisor
    epsilon: Fraction
    threshold: Fraction  # nef threshold t of D against E
    alpha: Fraction  # alpha for (D, S=E, A): negative by construction
    notes: tuple[str, ...] = field(default_factory=tuple)


def construct_polarization(
    X: SurfaceModel, D: Divisor, allow_low_rank: bool = False
) -> Polarization:
    """Build a polarization destabilizing the syzygy bundles of powers of D.

    Picks the negative generator E minimizing D.E (ties to the lowest
    index), moves D to the nef boundary along E and perturbs back inside
    by the largest epsilon in 1, 1/2, 1/4, ... that keeps the result
    ample with alpha < 0, all verified exactly.

    Requires Picard rank >= 3 (abstract surfaces must also pass
    ``check_hypotheses``).  ``allow_low_rank`` skips the rank gate for
    informational runs on rank-2 surfaces; the result then carries a
    note saying so.
    """
    notes: list[str] = []
    if isinstance(X, AbstractSurface):
        ok, problems = X.check_hypotheses()
        if not ok:
            low_rank_only = all("rank" in p or "generators declared" in p for p in problems)
            if not (allow_low_rank and low_rank_only):
                raise HypothesesViolatedError(problems)
            notes.append(LOW_RANK_NOTE)
    else:
        if X.picard_rank < 3:
            if not allow_low_rank:
                raise HypothesesViolatedError(
                    [
                        f"Picard rank {X.picard_rank} < 3; the plane and "
                        "Hirzebruch surfaces need the region test instead"
                    ]
                )
            notes.append(LOW_RANK_NOTE)
        notes.append(NEGATIVE_GENERATOR_NOTE)
    _require_ample(X, D, "divisor D")

    negatives = X.negative_generator_indices()
    if not negatives:
        raise ConstructionFailedError(
            "no effective generator of negative self-intersection"
        )
    e_idx = min(negatives, key=lambda i: (X.pair_generator(D, i), i))
    E = X.generator(e_idx)
    t = X.nef_threshold(D, E)
    d_dot_e = X.pair_generator(D, e_idx)
    if not allow_low_rank and t < d_dot_e:
        raise InternalError(
            f"nef threshold {t} fell below D.E = {d_dot_e}; the "
            "generator hypotheses cannot all hold"
        )

    eps = Fraction(1)
    for _ in range(21):
        A = D - (t - eps) * E
        if X.is_ample(A):
            alpha = (
                2 * X.pair(D, A) * d_dot_e
                - X.pair_generator(A, e_idx) * X.pair(D, D)
            )
            if alpha < 0:
                return Polarization(
                    A,
                    A.scaled_primitive(),
                    e_idx,
                    E,
                    eps,
                    t,
                    Fraction(alpha),
                    tuple(notes),
                )
        eps = eps / 2
    raise ConstructionFailedError(
        "no epsilon in 1, 1/2, ..., 2^-20 gives an ample polarization "
        "with alpha < 0"
    )


@dataclass(frozen=True)
class Certificate:
    """Re-verifiable witness of a slope violation at exponent d0."""

    polarization: Divisor  # primitive integral A
    shift: Divisor  # effective S; the subbundle comes from d0*D - S
    d0: int
    subbundle_slope: Fraction
    ambient_slope: Fraction


@dataclass(frozen=True)
class StabilityReport:
    """Verdict plus certificate (when found) and recorded assumptions."""

    verdict: str
    certificate: Optional[Certificate]
    assumptions: tuple[str, ...] = ()
    echo: dict = field(default_factory=dict)


def _certified_report(
    X: SurfaceModel,
    D: Divisor,
    S: Divisor,
    A: Divisor,
    assumptions: list[str],
    echo: dict,
) -> StabilityReport:
    th = d_threshold(X, D, S, A)
    ambient = th.d0 * D
    mu_ambient = syzygy_slope(X, ambient, A)
    mu_sub = syzygy_slope(X, ambient - S, A)
    # re-verify the certificate independently of d_threshold's bookkeeping
    order = slope_compare(X, D, S, A, th.d0)
    expected = GREATER if th.strict else EQUAL
    if order != expected:
        raise InternalError(
            f"certificate failed re-verification: expected {expected}, "
            f"got {order} at d = {th.d0}"
        )
    verdict = NOT_SEMISTABLE if th.strict else NOT_STABLE
    if X.uses_chi_for_h0:
        assumptions = assumptions + [CHI_ASSUMPTION]
    return StabilityReport(
        verdict,
        Certificate(A, S, th.d0, mu_sub, mu_ambient),
        tuple(assumptions),
        echo,
    )


def scan_candidates(
    X: SurfaceModel,
    D: Divisor,
    A: Divisor,
    max_generators: int = 2,
) -> StabilityReport:
    """Asymptotic candidate scan for a fixed polarization.

    Walks shifts S over sums of up to ``max_generators`` effective-cone
    generators; the first one with an unstable asymptotic verdict is
    turned into a verified threshold certificate.  When every candidate
    admits stability asymptotically the verdict is NoDestabilizerFound
    (which never claims stability, only that this family is exhausted).
    """
    _require_ample(X, D, "divisor D")
    _require_ample(X, A, "polarization")
    for r in range(1, max_generators + 1):
        for combo in combinations_with_replacement(
            X.effective_generators, r
        ):
            S = Divisor([0] * X.n)
            for i in combo:
                S = S + basis_divisor(X.n, i)
            verdict = asymptotic_condition(X, D, S, A)
            if verdict.unstable:
                return _certified_report(X, D, S, A, [], {})
    assumptions = [
        "every scanned candidate shift admits stability asymptotically"
    ]
    if X.uses_chi_for_h0:
        assumptions.append(CHI_ASSUMPTION)
    return StabilityReport(NO_DESTABILIZER, None, tuple(assumptions), {})


def _smallest_exceeding_rational(bound: Fraction, max_denominator: int) -> Fraction:
    """Smallest p/q > bound with 1 <= q <= max_denominator."""
    best = None
    for q in range(1, max_denominator + 1):
        p = (bound.numerator * q) // bound.denominator + 1
        cand = Fraction(p, q)
        if best is None or cand < best:
            best = cand
    return best


def _echo_divisor(D: Divisor) -> list:
    return [
        int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        for c in D.coeffs
    ]


def toric_driver(fan_or_surface: Fan | ToricSurface, D: Divisor) -> StabilityReport:
    """End-to-end instability certificate for an ample divisor on a toric
    surface other than the plane and the quadric.

    Hirzebruch surfaces get the polarization S + a*F with a the smallest
    rational of denominator at most 8 beyond the region bound, scaled to
    a primitive integral divisor; higher Picard rank delegates to
    :func:`construct_polarization`.  The certificate is re-verified by
    exact slope comparison before it is returned.
    """
    X = (
        fan_or_surface
        if isinstance(fan_or_surface, ToricSurface)
        else ToricSurface(fan_or_surface)
    )
    st = X.fan.surface_type()
    if st.kind == PROJECTIVE_PLANE or (st.kind == HIRZEBRUCH and st.ell == 0):
        raise OutOfTheoremScopeError(
            f"no destabilizing polarization is constructed for {st}"
        )
    _require_ample(X, D, "divisor D")
    echo = {"rays": [list(r) for r in X.fan.rays], "D": _echo_divisor(D)}
    assumptions: list[str] = []

    if st.kind == HIRZEBRUCH:
        ell, s_idx, f_idx = X.hirzebruch_presentation()
        b1, b2 = X.to_section_fiber(D)
        b = b2 / b1
        bound = Fraction(2) * b * (b - ell) / ell + ell
        a = _smallest_exceeding_rational(bound, 8)
        if hirzebruch_region(ell, a, b) != UNSTABLE_FOR_LARGE_D:
            raise InternalError(
                f"chosen polarization slope a = {a} is not in the "
                "instability region"
            )
        A = X.from_section_fiber(a.denominator, a.numerator)
        S = X.generator(s_idx)
        assumptions.append(
            f"polarization slope a = {a} chosen with denominator <= 8 "
            f"just beyond the region bound {bound}"
        )
    else:
        pol = construct_polarization(X, D)
        A = pol.polarization_integral
        S = pol.generator
        assumptions.extend(pol.notes)
    return _certified_report(X, D, S, A, assumptions, echo)


def abstract_driver(X: AbstractSurface, D: Divisor) -> StabilityReport:
    """Instability certificate on an abstract surface model.

    Delegates to :func:`construct_polarization`; the slope comparisons
    behind the certificate use the Euler characteristic for section
    counts, and the report records that assumption.
    """
    pol = construct_polarization(X, D)
    echo = {"labels": list(X.labels), "D": _echo_divisor(D)}
    return _certified_report(
        X, D, pol.generator, pol.polarization_integral, list(pol.notes), echo
    )
