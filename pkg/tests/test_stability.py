"""Slopes, asymptotics, thresholds, destabilizer search and the drivers."""

from fractions import Fraction

import pytest

from syzstab import (
    CHI_ASSUMPTION,
    EQUAL,
    GREATER,
    LESS,
    NOT_COVERED,
    NOT_SEMISTABLE,
    NO_DESTABILIZER,
    STABLE_POSSIBLE,
    UNSTABLE_EVENTUALLY,
    UNSTABLE_FOR_LARGE_D,
    AbstractSurface,
    DegenerateBundleError,
    Divisor,
    Fan,
    HypothesesViolatedError,
    NotAmpleError,
    NotNefError,
    OutOfTheoremScopeError,
    PreconditionError,
    ToricSurface,
    abstract_driver,
    alpha_beta,
    asymptotic_condition,
    construct_polarization,
    d_threshold,
    find_destabilizer,
    hirzebruch_region,
    scan_candidates,
    slope_compare,
    syzygy_slope,
    toric_driver,
)
from syzstab.stability import LOW_RANK_NOTE

from conftest import BL2P2_ABSTRACT, BL2P2_RAYS, DP6_RAYS, hirzebruch_rays


def sf(X, s, f):
    return X.from_section_fiber(s, f)


@pytest.fixture(scope="module")
def power_family(f1):
    """The blown-up plane data: D = 6H - E, shift = E, A = -K."""
    return f1, sf(f1, 5, 6), f1.generator(1), sf(f1, 2, 3)


class TestSyzygySlope:
    def test_golden_values(self, f1):
        A = sf(f1, 2, 3)
        assert syzygy_slope(f1, sf(f1, 8, 9), A) == Fraction(-26, 53)
        assert syzygy_slope(f1, sf(f1, 7, 9), A) == Fraction(-25, 51)

    def test_plane_hyperplane(self, p2):
        H = Divisor([1, 0, 0])
        assert syzygy_slope(p2, H, H) == Fraction(-1, 2)

    def test_degenerate_bundle(self, p2):
        H = Divisor([1, 0, 0])
        with pytest.raises(DegenerateBundleError):
            syzygy_slope(p2, Divisor([0, 0, 0]), H)

    def test_polarization_must_be_ample(self, f1):
        with pytest.raises(NotAmpleError):
            syzygy_slope(f1, sf(f1, 8, 9), sf(f1, 0, 1))

    def test_bundle_divisor_must_be_nef(self, f1):
        with pytest.raises(NotNefError):
            syzygy_slope(f1, sf(f1, 1, -1), sf(f1, 2, 3))


class TestSlopeCompare:
    def test_destabilized_beyond_threshold(self, power_family):
        X, D, S, A = power_family
        assert slope_compare(X, D, S, A, 18) == GREATER

    def test_tie_at_threshold(self, power_family):
        X, D, S, A = power_family
        assert slope_compare(X, D, S, A, 17) == EQUAL
        assert syzygy_slope(X, 17 * D, A) == Fraction(-1, 18)
        assert syzygy_slope(X, 17 * D - S, A) == Fraction(-1, 18)

    def test_stable_side_below(self, power_family):
        X, D, S, A = power_family
        assert slope_compare(X, D, S, A, 10) == LESS


class TestAlphaBeta:
    def test_power_family_coefficients(self, power_family):
        X, D, S, A = power_family
        ab = alpha_beta(X, D, S, A)
        assert (ab.alpha, ab.beta) == (-1, 17)
        assert ab.q(17) == 0
        assert ab.q(18) == -18

    def test_plane_diagonal_data(self, p2):
        H = Divisor([1, 0, 0])
        ab = alpha_beta(p2, H, H, H)
        assert ab.alpha == 1

    def test_linear_in_polarization(self, f1):
        D = sf(f1, 8, 9)
        S = f1.generator(1)
        A1 = sf(f1, 2, 3)
        A2 = sf(f1, 1, 2)
        left = alpha_beta(f1, D, S, A1 + A2)
        r1 = alpha_beta(f1, D, S, A1)
        r2 = alpha_beta(f1, D, S, A2)
        assert left.alpha == r1.alpha + r2.alpha
        assert left.beta == r1.beta + r2.beta


class TestAsymptoticCondition:
    def test_power_family_unstable(self, power_family):
        X, D, S, A = power_family
        verdict = asymptotic_condition(X, D, S, A)
        assert verdict.kind == UNSTABLE_EVENTUALLY
        assert verdict.unstable

    def test_example_data_unstable(self, f1):
        verdict = asymptotic_condition(
            f1, sf(f1, 8, 9), f1.generator(1), sf(f1, 2, 3)
        )
        assert verdict.kind == UNSTABLE_EVENTUALLY

    def test_plane_stable_possible(self, p2):
        H = Divisor([1, 0, 0])
        verdict = asymptotic_condition(p2, H, H, H)
        assert verdict.kind == STABLE_POSSIBLE
        assert not verdict.unstable


class TestThreshold:
    def test_power_family_threshold_18(self, power_family):
        X, D, S, A = power_family
        th = d_threshold(X, D, S, A)
        assert th.d0 == 18
        assert th.strict
        assert th.first_nef_d == 1

    def test_example_threshold_1(self, f1):
        th = d_threshold(f1, sf(f1, 8, 9), f1.generator(1), sf(f1, 2, 3))
        assert th.d0 == 1
        assert th.strict

    def test_stable_possible_is_precondition_error(self, p2):
        H = Divisor([1, 0, 0])
        with pytest.raises(PreconditionError):
            d_threshold(p2, H, H, H)

    def test_threshold_respects_nef_entry(self, f1):
        # shift by two sections: 2S needs d*D - 2S nef before anything else
        D = sf(f1, 8, 9)
        A = sf(f1, 2, 3)
        S2 = 2 * f1.generator(1)
        verdict = asymptotic_condition(f1, D, S2, A)
        if verdict.unstable:
            th = d_threshold(f1, D, S2, A)
            assert th.d0 >= th.first_nef_d
            assert slope_compare(f1, D, S2, A, th.d0) == GREATER


class TestFindDestabilizer:
    def test_example_at_d_1(self, f1):
        found = find_destabilizer(f1, sf(f1, 8, 9), sf(f1, 2, 3), 1)
        assert found is not None
        assert found.strict
        assert found.shift == f1.generator(1)
        assert found.subbundle_slope == Fraction(-25, 51)
        assert found.ambient_slope == Fraction(-26, 53)

    def test_plane_has_no_candidate(self, p2):
        H = Divisor([1, 0, 0])
        assert find_destabilizer(p2, 3 * H, H, 1) is None

    def test_power_family_at_threshold(self, power_family):
        X, D, S, A = power_family
        found = find_destabilizer(X, D, A, 18)
        assert found is not None
        assert found.shift == S
        assert found.strict

    def test_requires_ample_multiple(self, f1):
        with pytest.raises(NotAmpleError):
            find_destabilizer(f1, sf(f1, 0, 1), sf(f1, 2, 3), 1)


class TestHirzebruchRegion:
    def test_example_point(self):
        assert (
            hirzebruch_region(1, Fraction(3, 2), Fraction(9, 8))
            == UNSTABLE_FOR_LARGE_D
        )

    def test_equality_branch_below_root(self):
        # a sits exactly on the bound; b = 5/4 lies below the root 3/2
        assert (
            hirzebruch_region(1, Fraction(13, 8), Fraction(5, 4))
            == NOT_COVERED
        )

    def test_equality_branch_at_root(self):
        # the root for ell = 1 is exactly 3/2, included in the region
        b = Fraction(3, 2)
        a = 2 * b * (b - 1) + 1
        assert hirzebruch_region(1, a, b) == UNSTABLE_FOR_LARGE_D

    def test_higher_degree_point(self):
        assert hirzebruch_region(2, Fraction(6), Fraction(3)) == UNSTABLE_FOR_LARGE_D

    def test_ampleness_guard(self):
        with pytest.raises(NotAmpleError):
            hirzebruch_region(2, Fraction(3, 2), Fraction(3))
        with pytest.raises(NotAmpleError):
            hirzebruch_region(1, Fraction(2), Fraction(1))

    def test_ell_must_be_positive(self):
        with pytest.raises(PreconditionError):
            hirzebruch_region(0, Fraction(2), Fraction(2))


class TestConstructPolarization:
    def test_bl2p2_anticanonical(self):
        X = ToricSurface(Fan(BL2P2_RAYS))
        pol = construct_polarization(X, -1 * X.canonical)
        assert pol.generator_index == 1
        assert pol.threshold == 1
        assert pol.epsilon == Fraction(1, 8)
        assert pol.alpha == Fraction(-7, 8)
        assert pol.polarization_integral == Divisor([8, 1, 8, 8, 8])
        # the witness re-checks through the asymptotic classifier
        verdict = asymptotic_condition(
            X, -1 * X.canonical, pol.generator, pol.polarization_integral
        )
        assert verdict.kind == UNSTABLE_EVENTUALLY

    def test_rank_two_rejected(self, f1):
        with pytest.raises(HypothesesViolatedError):
            construct_polarization(f1, sf(f1, 5, 6))

    def test_rank_two_informational_mode(self, f1):
        pol = construct_polarization(f1, sf(f1, 5, 6), allow_low_rank=True)
        assert pol.generator_index == 1  # the section
        assert pol.threshold == 5
        assert pol.epsilon == 1
        assert pol.polarization == sf(f1, 1, 6)
        assert pol.alpha == -113  # -150 + 37 * eps at eps = 1
        assert LOW_RANK_NOTE in pol.notes


class TestToricDriver:
    def test_blown_up_plane_power_family(self, f1):
        report = toric_driver(f1, sf(f1, 5, 6))
        assert report.verdict == NOT_SEMISTABLE
        cert = report.certificate
        assert cert.polarization == sf(f1, 2, 3)
        assert cert.shift == f1.generator(1)
        assert cert.d0 == 18

    def test_plane_out_of_scope(self, p2):
        with pytest.raises(OutOfTheoremScopeError):
            toric_driver(p2, Divisor([1, 0, 0]))

    def test_quadric_out_of_scope(self, surfaces):
        X = surfaces["f0"]
        with pytest.raises(OutOfTheoremScopeError):
            toric_driver(X, Divisor([1, 1, 1, 1]))

    def test_bl2p2_anticanonical(self):
        fan = Fan(BL2P2_RAYS)
        X = ToricSurface(fan)
        report = toric_driver(fan, -1 * X.canonical)
        assert report.verdict == NOT_SEMISTABLE
        cert = report.certificate
        assert cert.d0 == 1
        # round-trip: the certificate re-verifies by exact comparison
        assert (
            slope_compare(
                X, -1 * X.canonical, cert.shift, cert.polarization, cert.d0
            )
            == GREATER
        )

    def test_del_pezzo_six(self):
        fan = Fan(DP6_RAYS)
        X = ToricSurface(fan)
        report = toric_driver(fan, -1 * X.canonical)
        assert report.verdict == NOT_SEMISTABLE
        assert report.certificate.d0 == 1

    def test_driver_requires_ample(self, f1):
        with pytest.raises(NotAmpleError):
            toric_driver(f1, sf(f1, 1, 0))


class TestAbstractDriver:
    def test_bl2p2_model(self):
        X = AbstractSurface(
            BL2P2_ABSTRACT["labels"],
            BL2P2_ABSTRACT["pairing"],
            BL2P2_ABSTRACT["canonical"],
            BL2P2_ABSTRACT["effective_generators"],
        )
        report = abstract_driver(X, -1 * X.canonical)
        assert report.verdict == NOT_SEMISTABLE
        assert CHI_ASSUMPTION in report.assumptions
        cert = report.certificate
        assert cert.d0 == 1
        # same slope values as the toric model of the same surface
        assert cert.subbundle_slope == Fraction(-34, 5)
        assert cert.ambient_slope == -7

    def test_hypotheses_gate(self):
        X = AbstractSurface(
            ["S", "F"], [[-1, 1], [1, 0]], [-2, -3], [0, 1]
        )
        with pytest.raises(HypothesesViolatedError):
            abstract_driver(X, Divisor([1, 2]))


class TestScanCandidates:
    def test_finds_section_shift(self, f1):
        report = scan_candidates(f1, sf(f1, 8, 9), sf(f1, 2, 3))
        assert report.verdict == NOT_SEMISTABLE
        assert report.certificate.shift == f1.generator(1)
        assert report.certificate.d0 == 1

    def test_plane_has_no_candidates(self, p2):
        H = Divisor([1, 0, 0])
        report = scan_candidates(p2, H, H)
        assert report.verdict == NO_DESTABILIZER
        assert report.certificate is None
