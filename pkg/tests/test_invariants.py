import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from strategies import configurations
from valuation_lab.bounds import tono_family
from valuation_lab.configurations import build_configuration, classify_points
from valuation_lab.errors import ReconstructionError
from valuation_lab.invariants import (
    curvette_vector,
    from_maximal_contact,
    invariant_record,
    maximal_contact_values,
    multiplicity_sequence,
    noether_pairing,
    normalized_volume,
    puiseux_exponents,
    semigroup_values,
    tangent_value,
    volume,
)

TONO30_MULTIPLICITIES = (6,) + (3,) * 7 + (1,) * 9


def cfg3():
    return build_configuration([[], [1], [2, 1]])


class TestMultiplicitySequence:
    def test_single_point(self):
        assert multiplicity_sequence(build_configuration([[]])).values == (1,)

    def test_three_points(self):
        assert multiplicity_sequence(cfg3()).values == (2, 1, 1)

    def test_tono(self):
        cfg = tono_family(3, 0).bundle.cfg
        v = multiplicity_sequence(cfg).values
        assert v == TONO30_MULTIPLICITIES
        assert sum(x * x for x in v) == 108

    @given(configurations())
    def test_proximity_equalities_hold(self, cfg):
        v = multiplicity_sequence(cfg).values
        assert v[-1] == 1
        for i in range(1, cfg.size):
            incoming = [
                p.index for p in cfg.points if i in p.proximate_to
            ]
            assert v[i - 1] == sum(v[j - 1] for j in incoming)

    @given(configurations())
    def test_values_positive_and_non_increasing(self, cfg):
        v = multiplicity_sequence(cfg).values
        assert all(x >= 1 for x in v)
        assert all(a >= b for a, b in zip(v, v[1:]))


class TestCurvetteVector:
    def test_first_point(self):
        assert curvette_vector(cfg3(), 1) == (1, 0, 0)

    def test_full_chain_equals_multiplicities(self):
        cfg = cfg3()
        assert curvette_vector(cfg, 3) == multiplicity_sequence(cfg).values

    def test_smooth_germ_through_two_points(self):
        assert curvette_vector(cfg3(), 2) == (1, 1, 0)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            curvette_vector(cfg3(), 4)

    @given(configurations())
    def test_truncated_recursion_by_direct_summation(self, cfg):
        for k in range(1, cfg.size + 1):
            w = curvette_vector(cfg, k)
            assert w[k - 1] == 1
            assert all(x == 0 for x in w[k:])
            for i in range(1, k):
                expected = sum(
                    w[p.index - 1]
                    for p in cfg.points
                    if p.index <= k and i in p.proximate_to
                )
                assert w[i - 1] == expected


class TestNoetherPairing:
    def test_tono_self_pairing(self):
        cfg = tono_family(3, 0).bundle.cfg
        v = multiplicity_sequence(cfg).values
        assert noether_pairing(cfg, v, v) == 108

    def test_curvette_against_multiplicities(self):
        cfg = cfg3()
        v = multiplicity_sequence(cfg).values
        assert noether_pairing(cfg, curvette_vector(cfg, 2), v) == 3

    def test_zero_vector(self):
        cfg = cfg3()
        v = multiplicity_sequence(cfg).values
        assert noether_pairing(cfg, (0, 0, 0), v) == 0

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            noether_pairing(cfg3(), (1, 2), (1, 2, 3))


class TestMaximalContactValues:
    def test_single_point(self):
        contact = maximal_contact_values(build_configuration([[]]))
        assert contact.beta_bar == (1, 1)

    def test_three_points(self):
        contact = maximal_contact_values(cfg3())
        assert contact.beta_bar == (2, 3, 6)
        assert contact.gcd_chain == (2, 1, 1)

    def test_tono_values(self):
        assert tono_family(3, 0).bundle.record.beta_bar == (6, 9, 34, 108)
        assert tono_family(4, 1).bundle.record.beta_bar == (12, 16, 73, 640)

    @given(configurations())
    def test_final_value_is_sum_of_squares(self, cfg):
        v = multiplicity_sequence(cfg).values
        contact = maximal_contact_values(cfg)
        assert contact.beta_bar[-1] == sum(x * x for x in v)

    @given(configurations())
    def test_gcd_chain_non_increasing_and_divides_last(self, cfg):
        contact = maximal_contact_values(cfg)
        chain = contact.gcd_chain
        assert all(a >= b for a, b in zip(chain, chain[1:]))
        assert contact.beta_bar[-1] % chain[-2 if len(chain) > 1 else -1] == 0

    @given(configurations())
    def test_values_strictly_increase(self, cfg):
        beta = maximal_contact_values(cfg).beta_bar
        if cfg.size == 1:
            assert beta == (1, 1)
        else:
            assert all(a < b for a, b in zip(beta, beta[1:]))


class TestPuiseuxExponents:
    def test_three_points(self):
        exps = puiseux_exponents(cfg3())
        assert exps.beta_prime == (1, Fraction(3, 2), 1)
        assert exps.run_length_tables == ((1, 2), (1,))

    def test_two_free_points(self):
        exps = puiseux_exponents(build_configuration([[], [1]]))
        assert exps.beta_prime == (1, 2)
        assert exps.run_length_tables == ((2,),)

    def test_tono_blocks(self):
        exps = puiseux_exponents(tono_family(3, 0).bundle.cfg)
        assert exps.beta_prime == (1, Fraction(3, 2), Fraction(19, 3), 7)
        assert exps.run_length_tables == ((1, 2), (6, 3), (7,))

    @given(configurations())
    def test_first_exponent_matches_contact_ratio(self, cfg):
        contact = maximal_contact_values(cfg).beta_bar
        exps = puiseux_exponents(cfg).beta_prime
        if len(contact) >= 3:
            assert exps[1] == Fraction(contact[1], contact[0])

    @given(configurations())
    def test_middle_exponents_non_integral(self, cfg):
        exps = puiseux_exponents(cfg).beta_prime
        assert exps[0] == 1
        assert exps[-1].denominator == 1
        for middle in exps[1:-1]:
            assert middle > 1
            assert middle.denominator > 1


class TestVolumes:
    def test_single_point(self):
        cfg = build_configuration([[]])
        assert volume(cfg) == 1
        assert normalized_volume(cfg) == 1

    def test_three_points(self):
        assert volume(cfg3()) == Fraction(1, 6)
        assert normalized_volume(cfg3()) == Fraction(2, 3)

    def test_tono(self):
        cfg = tono_family(4, 1).bundle.cfg
        assert volume(cfg) == Fraction(1, 640)
        assert normalized_volume(cfg) == Fraction(9, 40)

    @given(configurations())
    def test_normalization(self, cfg):
        contact = maximal_contact_values(cfg).beta_bar
        assert normalized_volume(cfg) == contact[0] ** 2 * volume(cfg)


class TestTangentValue:
    def test_single_point_convention(self):
        assert tangent_value(build_configuration([[]])) == 1

    def test_three_points(self):
        assert tangent_value(cfg3()) == 3

    def test_tono(self):
        assert tangent_value(tono_family(3, 0).bundle.cfg) == 9

    @given(configurations())
    def test_range(self, cfg):
        t = tangent_value(cfg)
        contact = maximal_contact_values(cfg).beta_bar
        if cfg.size == 1:
            assert t == 1
        else:
            assert contact[0] < t <= contact[1]

    def test_second_value_when_third_point_is_satellite(self):
        # With p_3 satellite the tangent line stops at p_2, so its value is
        # the second contact value.
        cfg = cfg3()
        assert tangent_value(cfg) == maximal_contact_values(cfg).beta_bar[1]

    @given(configurations())
    def test_invariant_under_free_extension(self, cfg):
        from valuation_lab.configurations import append_free_chain

        extended = append_free_chain(cfg, 3)
        if cfg.size >= 2:
            assert tangent_value(extended) == tangent_value(cfg)


class TestFromMaximalContact:
    def test_single_point(self):
        assert from_maximal_contact((1, 1)).size == 1

    def test_three_points(self):
        cfg = from_maximal_contact((2, 3, 6))
        assert cfg.proximity_lists() == [[], [1], [1, 2]]

    def test_tono_resolution_plus_free_chain(self):
        cfg = from_maximal_contact((6, 9, 34), trailing_free=6)
        assert multiplicity_sequence(cfg).values == TONO30_MULTIPLICITIES
        assert maximal_contact_values(cfg).beta_bar == (6, 9, 34, 108)

    def test_prefix_input_leaves_last_value_implied(self):
        cfg = from_maximal_contact((6, 9, 34))
        assert maximal_contact_values(cfg).beta_bar == (6, 9, 34, 102)

    def test_free_chain(self):
        cfg = from_maximal_contact((1, 5))
        assert cfg.size == 5
        assert classify_points(cfg) == ["free"] * 5

    @pytest.mark.parametrize(
        "sequence",
        [
            (2,),  # too short
            (4, 6),  # terminates at multiplicity 2
            (2, 2),  # no chain realizes it
            (6, 9, 21),  # middle block cannot close
            (2, 4, 7),  # gcd chain stalls
            (2, 3, 5),  # too small to open a block
            (6, 9, 34, 101),  # below the minimal closing value 102
        ],
    )
    def test_rejects_unrealizable_sequences(self, sequence):
        with pytest.raises(ReconstructionError):
            from_maximal_contact(sequence)

    @given(configurations())
    @settings(max_examples=150)
    def test_round_trip_reproduces_the_chain(self, cfg):
        contact = maximal_contact_values(cfg).beta_bar
        rebuilt = from_maximal_contact(contact)
        assert multiplicity_sequence(rebuilt).values == (
            multiplicity_sequence(cfg).values
        )
        assert rebuilt.proximity_lists() == cfg.proximity_lists()


class TestSemigroupValues:
    def test_single_point(self):
        assert semigroup_values(build_configuration([[]]), 3) == [0, 1, 2, 3]

    def test_three_points(self):
        assert semigroup_values(cfg3(), 7) == [0, 2, 3, 4, 5, 6, 7]

    def test_limit_zero(self):
        assert semigroup_values(cfg3(), 0) == [0]

    def test_rejects_negative_limit(self):
        with pytest.raises(ValueError):
            semigroup_values(cfg3(), -1)

    @given(configurations(max_points=8))
    @settings(max_examples=50)
    def test_generators_are_members(self, cfg):
        contact = maximal_contact_values(cfg).beta_bar
        members = set(semigroup_values(cfg, max(contact)))
        assert set(contact) <= members


class TestInvariantRecord:
    def test_bundles_everything(self):
        record = invariant_record(cfg3())
        assert record.multiplicities.values == (2, 1, 1)
        assert record.beta_bar == (2, 3, 6)
        assert record.volume == Fraction(1, 6)
        assert record.tangent_value == 3
        assert not record.is_m_adic

    def test_m_adic_flag(self):
        assert invariant_record(build_configuration([[]])).is_m_adic

    @given(configurations())
    def test_gcd_chain_matches_math_gcd(self, cfg):
        record = invariant_record(cfg)
        beta = record.beta_bar
        expected = []
        g = 0
        for b in beta:
            g = math.gcd(g, b)
            expected.append(g)
        assert record.contact.gcd_chain == tuple(expected)
