"""Invariants and certificates: cdim, kappa, purity, equivalence, buckets."""

from fractions import Fraction
from math import inf

import pytest

from cuntzlab import (
    EquivalentToCuntz,
    EventuallyPeriodicWord,
    GridRepresentation,
    LowerBoundOnly,
    Minimal,
    ProperlyInfinite,
    ShiftPeriod,
    ShiftRepresentation,
    cdim,
    decompose_spectrum_bucket,
    endo_invariants,
    equivalent,
    gen,
    hat_parameter,
    kappa,
    kappa_rep,
    make_cuntz,
    make_geometric_progression,
    make_induced_product,
    make_mixture,
    make_prefix_code_state,
    make_split_series_sandwich,
    make_sub_cuntz,
    monomial,
    pure,
    transform_gauge,
    transform_sandwich,
    vector_state,
    verify_minimality_certificate,
    verify_properly_infinite,
)

from conftest import fr, q

Z35 = [q(fr(3, 5)), q(fr(4, 5))]
ROT = [
    [q(fr(3, 5)), q(fr(-4, 5))],
    [q(fr(4, 5)), q(fr(3, 5))],
]


def ep(pre, per, n=2):
    return EventuallyPeriodicWord(tuple(pre), tuple(per), n)


def shift_state(pre, per, n=2):
    x = ep(pre, per, n)
    return vector_state(ShiftRepresentation(x), x)


class TestCdim:
    def test_cuntz_state_is_one_dimensional(self):
        r = cdim(make_cuntz(Z35))
        assert (r.value, r.status) == (1, "stabilized")
        assert r.level_ranks == (1, 1)
        assert r.pivot_words == ((),)

    def test_word_state_dimension_two(self):
        r = cdim(make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2))
        assert (r.value, r.status) == (2, "stabilized")
        assert r.level_ranks == (1, 2, 2)
        assert r.pivot_words == ((), (1,))

    def test_compressed_state_dimension_two(self):
        w = transform_sandwich(make_cuntz([q(1), q(0)]), [(1, gen(2, 2))])
        r = cdim(w)
        assert (r.value, r.status) == (2, "stabilized")

    def test_shift_state_counts_tails(self):
        r = cdim(shift_state((1,), (1, 2)))
        assert (r.value, r.status) == (3, "stabilized")

    def test_growing_state_reports_lower_bound(self):
        r = cdim(make_split_series_sandwich(), L_max=4)
        assert r.status == "lower_bound"
        assert r.value == 13
        assert r.level_ranks == (1, 3, 6, 9, 13)


class TestKappaCertificates:
    def test_word_state_minimal(self):
        k = kappa(make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2))
        assert k.value == 2
        assert isinstance(k.certificate, Minimal)
        assert k.certificate.u == monomial(2, (1, 2))

    def test_shift_state_period(self):
        k = kappa(shift_state((1,), (1, 2)))
        assert k.value == 2
        assert k.certificate == ShiftPeriod(d=2)

    def test_grid_state_properly_infinite(self):
        k = kappa(vector_state(GridRepresentation(2), (1, 0)))
        assert k.value == inf
        assert isinstance(k.certificate, ProperlyInfinite)
        assert k.certificate.status == "proved"

    def test_lazy_shift_state_evidence_only(self):
        from cuntzlab import LAZY_PRESETS

        w = vector_state(ShiftRepresentation(LAZY_PRESETS["thue_morse"](2, 64)), ((), 0))
        k = kappa(w)
        assert k.value == inf
        assert isinstance(k.certificate, ProperlyInfinite)
        assert k.certificate.status == "evidence"

    def test_sandwich_without_user_equivalence_is_unresolved(self):
        w = transform_sandwich(make_cuntz([q(1), q(0)]), [(1, gen(2, 2))])
        k = kappa(w)
        assert k.value is None
        assert isinstance(k.certificate, LowerBoundOnly)
        assert (k.certificate.low, k.certificate.high) == (1, 2)

    def test_sandwich_with_user_equivalence_closes(self):
        w = transform_sandwich(
            make_cuntz([q(1), q(0)]), [(1, gen(2, 2))], equivalent_to_cuntz=[1, 0]
        )
        k = kappa(w)
        assert k.value == 1
        assert isinstance(k.certificate, EquivalentToCuntz)
        assert k.certificate.provenance == "user"

    def test_series_state_closes_by_family(self):
        k = kappa(make_split_series_sandwich())
        assert k.value == 1
        assert isinstance(k.certificate, EquivalentToCuntz)
        assert k.certificate.provenance == "family"

    def test_hat_parameter_progression_closes(self):
        w = make_geometric_progression(2, hat_parameter(Z35, 2), 2)
        k = kappa(w)
        assert k.value == 1
        assert isinstance(k.certificate, EquivalentToCuntz)
        assert tuple(k.certificate.z) == tuple(Z35)

    def test_gauge_transport(self):
        k = kappa(transform_gauge(make_cuntz(Z35), [[0, 1], [1, 0]]))
        assert k.value == 1
        assert isinstance(k.certificate, EquivalentToCuntz)
        assert tuple(k.certificate.z) == (q(fr(4, 5)), q(fr(3, 5)))

    def test_cuntz_state_kappa_one(self):
        k = kappa(make_cuntz(Z35))
        assert k.value == 1
        assert isinstance(k.certificate, EquivalentToCuntz)


class TestMinimalityVerifier:
    def test_word_isometry_accepted(self):
        w = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
        assert verify_minimality_certificate(w, monomial(2, (1, 2)))

    def test_wrong_isometry_rejected(self):
        w = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
        assert not verify_minimality_certificate(w, gen(2, 1))


class TestProperlyInfiniteVerifier:
    def test_grid_delta_table(self):
        w = vector_state(GridRepresentation(2), (1, 0))
        chk = verify_properly_infinite(w, cutoff=4)
        assert chk.ok and chk.status == "proved"
        assert chk.cutoff == 4
        for l in range(1, 5):
            for k in range(1, 5):
                assert chk.table[l - 1][k - 1] == (1 if l == k else 0), (l, k)

    def test_induced_product_delta_table(self):
        w = make_induced_product([], [Z35, [q(0), q(1)]], 2)
        chk = verify_properly_infinite(w, cutoff=3)
        assert chk.ok and chk.status == "proved"
        assert chk.table[0][0] == 1
        assert chk.table[0][1] == 0

    def test_state_without_sequence_cannot_be_checked(self):
        from cuntzlab import SchemaError

        with pytest.raises(SchemaError):
            verify_properly_infinite(make_cuntz(Z35), cutoff=3)


class TestPurity:
    def test_cuntz_states_are_pure(self):
        d = pure(make_cuntz(Z35))
        assert d.verdict == "Pure"
        assert "irreducible" in d.reason

    def test_determined_sub_cuntz_is_pure(self):
        d = pure(make_sub_cuntz(2, {(1, 2): 1}, 2))
        assert d.verdict == "Pure"

    def test_tensor_square_is_a_twisted_mixture(self):
        from itertools import product

        zz = {}
        for J in product((1, 2), repeat=2):
            zz[J] = Z35[J[0] - 1] * Z35[J[1] - 1]
        d = pure(make_sub_cuntz(2, zz, 2))
        assert d.verdict == "NotPure"

    def test_induced_products_decompose(self):
        d = pure(make_induced_product([], [Z35, [q(0), q(1)]], 2))
        assert d.verdict == "NotPure"

    def test_mixtures_are_not_pure(self):
        m = make_mixture(
            [make_cuntz([q(1), q(0)]), make_cuntz([q(0), q(1)])],
            [fr(1, 2), fr(1, 2)],
        )
        assert pure(m).verdict == "NotPure"

    def test_series_state_is_pure(self):
        assert pure(make_split_series_sandwich()).verdict == "Pure"

    def test_word_state_purity_unknown(self):
        d = pure(make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2))
        assert d.verdict == "Unknown"

    def test_gauge_delegates_to_base(self):
        d = pure(transform_gauge(make_cuntz(Z35), ROT))
        assert d.verdict == "Pure"

    def test_compression_of_a_pure_state_stays_pure(self):
        d = pure(transform_sandwich(make_cuntz([q(1), q(0)]), [(1, gen(2, 2))]))
        assert d.verdict == "Pure"
        assert "unit vector state" in d.reason


class TestEquivalence:
    def test_same_cuntz_parameters(self):
        assert equivalent(make_cuntz(Z35), make_cuntz(Z35)).verdict == "Equivalent"

    def test_different_cuntz_parameters(self):
        assert (
            equivalent(make_cuntz(Z35), make_cuntz([q(1), q(0)])).verdict
            == "Inequivalent"
        )

    def test_conjugate_words_share_a_tail_class(self):
        w12 = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
        w21 = make_prefix_code_state([(2, 1)], {(2, 1): 1}, 2)
        d = equivalent(w12, w21)
        assert d.verdict == "Equivalent"
        assert "tail" in d.reason

    def test_word_vs_disjoint_tail(self):
        w12 = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
        d = equivalent(w12, make_cuntz([q(1), q(0)]))
        assert d.verdict == "Inequivalent"

    def test_exact_vs_float_superposition_pair(self):
        # same depth-2 family, one basis word vs a two-word superposition:
        # the conjugacy scan separates them even across exact/float inputs
        w12 = make_sub_cuntz(2, {(1, 2): q(1)}, 2)
        v = 2 ** -0.5
        wf = make_sub_cuntz(2, [v, v, 0.0, 0.0], 2)
        assert equivalent(w12, wf).verdict == "Inequivalent"

    def test_word_state_and_shift_state_agree(self):
        w12 = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
        d = equivalent(w12, shift_state((), (1, 2)))
        assert d.verdict == "Equivalent"

    def test_mirror_periods_are_inequivalent_shifts(self):
        d = equivalent(shift_state((), (1, 1, 2)), shift_state((), (2, 2, 1)))
        assert d.verdict == "Inequivalent"

    def test_purity_separates_sandwich_from_mixture(self):
        w = transform_sandwich(make_cuntz([q(1), q(0)]), [(1, gen(2, 2))])
        m = make_mixture(
            [make_cuntz([q(1), q(0)]), make_cuntz([q(0), q(1)])],
            [fr(1, 2), fr(1, 2)],
        )
        d = equivalent(w, m)
        assert d.verdict == "Inequivalent"
        assert "purity" in d.reason

    def test_unknown_when_no_rule_applies(self):
        w = transform_sandwich(make_cuntz([q(1), q(0)]), [(1, gen(2, 2))])
        w12 = make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2)
        d = equivalent(w, w12)
        assert d.verdict == "Unknown"
        assert "no decision rule" in d.reason


class TestSpectrumBuckets:
    def test_finite_buckets(self):
        assert decompose_spectrum_bucket(make_cuntz(Z35)) == 1
        assert (
            decompose_spectrum_bucket(make_prefix_code_state([(1, 2)], {(1, 2): 1}, 2))
            == 2
        )

    def test_infinite_bucket(self):
        assert decompose_spectrum_bucket(vector_state(GridRepresentation(2), (1, 0))) == inf

    def test_unresolved_bucket(self):
        w = transform_sandwich(make_cuntz([q(1), q(0)]), [(1, gen(2, 2))])
        assert decompose_spectrum_bucket(w) == "unresolved"


class TestRepresentationInvariants:
    def test_grid_rep_is_properly_infinite(self):
        k = kappa_rep(GridRepresentation(2))
        assert k.value == inf
        assert isinstance(k.certificate, ProperlyInfinite)

    def test_shift_rep_period(self):
        k = kappa_rep(ShiftRepresentation(ep((), (1, 2))))
        assert k.value == 2
        assert k.certificate == ShiftPeriod(d=2)

    def test_endo_invariants(self):
        inv = endo_invariants(GridRepresentation(2))
        assert inv.powers_index == 2
        assert inv.kappa == inf

    def test_shift_endo_invariants(self):
        inv = endo_invariants(ShiftRepresentation(ep((), (1, 2))))
        assert inv.kappa == 2
