import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import configurations
from valuation_lab.bounds import tono_family
from valuation_lab.configurations import (
    FREE,
    SATELLITE,
    append_free_chain,
    block_decomposition,
    build_configuration,
    classify_points,
    extend_with_satellite_tail,
    max_tangent_count,
    with_tangent_count,
)
from valuation_lab.errors import InvalidConfigurationError
from valuation_lab.invariants import from_maximal_contact


def cfg3():
    return build_configuration([[], [1], [2, 1]])


class TestBuildConfiguration:
    def test_single_point(self):
        cfg = build_configuration([[]])
        assert cfg.size == 1
        assert cfg.points[0].on_tangent

    def test_three_points_with_satellite(self):
        cfg = cfg3()
        assert cfg.proximity_lists() == [[], [1], [1, 2]]
        assert cfg.tangent_count == 2

    def test_satellite_target_of_satellite_is_admissible(self):
        # p_4 -> {3, 1} is fine because p_3 is itself proximate to p_1.
        cfg = build_configuration([[], [1], [2, 1], [3, 1]])
        assert classify_points(cfg) == [FREE, FREE, SATELLITE, SATELLITE]

    def test_rejects_unreachable_satellite_target(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[], [1], [2], [3, 1]])

    def test_rejects_missing_predecessor(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[], [1], [1]])

    def test_rejects_self_or_forward_targets(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[], [2]])

    def test_rejects_more_than_two_targets(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[], [1], [2, 1], [3, 2, 1]])

    def test_rejects_nonempty_first_point(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[1]])

    def test_rejects_tangent_count_two_on_single_point(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[]], tangent_count=2)

    def test_rejects_tangent_count_one_on_longer_chain(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[], [1]], tangent_count=1)

    def test_rejects_tangent_through_satellite(self):
        with pytest.raises(InvalidConfigurationError):
            build_configuration([[], [1], [2, 1]], tangent_count=3)

    def test_tangent_can_follow_free_run(self):
        cfg = build_configuration([[], [1], [2], [3]], tangent_count=4)
        assert cfg.tangent_count == 4

    @given(configurations())
    def test_round_trip_through_proximity_lists(self, cfg):
        rebuilt = build_configuration(
            cfg.proximity_lists(), tangent_count=cfg.tangent_count
        )
        assert rebuilt.points == cfg.points


class TestClassifyPoints:
    def test_single_point_is_free(self):
        assert classify_points(build_configuration([[]])) == [FREE]

    def test_cardinality_rule(self):
        assert classify_points(cfg3()) == [FREE, FREE, SATELLITE]

    def test_tono_satellites(self):
        # Forced by the closed-form contact values of the family: the block
        # structure puts the satellites at 3, 10 and 11.
        cfg = tono_family(3, 0).bundle.cfg
        satellites = [
            i + 1 for i, kind in enumerate(classify_points(cfg)) if kind == SATELLITE
        ]
        assert satellites == [3, 10, 11]


class TestBlockDecomposition:
    def test_single_point(self):
        decomposition = block_decomposition(build_configuration([[]]))
        assert decomposition.genus_count == 0
        assert decomposition.blocks == ((1, 1),)

    def test_three_points(self):
        decomposition = block_decomposition(cfg3())
        assert decomposition.genus_count == 1
        assert decomposition.blocks == ((1, 3), (3, 3))
        assert decomposition.last_free_indices == (2,)

    def test_tono(self):
        decomposition = block_decomposition(tono_family(3, 0).bundle.cfg)
        assert decomposition.genus_count == 2
        assert decomposition.blocks == ((1, 3), (3, 11), (11, 17))

    @given(configurations())
    def test_blocks_cover_chain_and_overlap_at_endpoints(self, cfg):
        decomposition = block_decomposition(cfg)
        blocks = decomposition.blocks
        assert blocks[0][0] == 1
        assert blocks[-1][1] == cfg.size
        for (_, right), (left, _) in zip(blocks, blocks[1:]):
            assert right == left

    @given(configurations())
    def test_free_and_satellite_ranges_within_blocks(self, cfg):
        decomposition = block_decomposition(cfg)
        labels = classify_points(cfg)
        for (lo, hi), r in zip(decomposition.blocks, decomposition.last_free_indices):
            assert all(labels[i - 1] == FREE for i in range(lo + 1, r + 1))
            assert all(labels[i - 1] == SATELLITE for i in range(r + 1, hi + 1))
        tail_start = decomposition.boundaries[-2]
        assert all(
            labels[i - 1] == FREE for i in range(tail_start + 1, cfg.size + 1)
        )


class TestAppendFreeChain:
    def test_zero_is_identity(self):
        cfg = cfg3()
        assert append_free_chain(cfg, 0) is cfg

    def test_one_point_plus_one(self):
        cfg = append_free_chain(build_configuration([[]]), 1)
        assert cfg.proximity_lists() == [[], [1]]
        assert cfg.tangent_count == 2

    def test_appended_points_are_free_and_off_tangent(self):
        cfg = append_free_chain(cfg3(), 3)
        assert cfg.size == 6
        assert classify_points(cfg)[3:] == [FREE, FREE, FREE]
        assert cfg.tangent_count == 2

    def test_rejects_negative(self):
        with pytest.raises(InvalidConfigurationError):
            append_free_chain(cfg3(), -1)

    def test_completes_the_example_family_member(self):
        resolution = from_maximal_contact((6, 9, 34))
        assert resolution.size == 11
        extended = append_free_chain(resolution, 6)
        expected = tono_family(3, 0).bundle.cfg
        assert extended.proximity_lists() == expected.proximity_lists()


class TestSatelliteTail:
    def test_forced_first_point(self):
        cfg = extend_with_satellite_tail(build_configuration([[], [1]]), [1])
        assert cfg.proximity_lists() == [[], [1], [1, 2]]

    def test_two_point_tail_choosing_second_target(self):
        cfg = extend_with_satellite_tail(build_configuration([[], [1]]), [1, 2])
        assert cfg.proximity_lists() == [[], [1], [1, 2], [2, 3]]

    def test_first_choice_must_be_the_forced_one(self):
        with pytest.raises(InvalidConfigurationError):
            extend_with_satellite_tail(build_configuration([[], [1]]), [2])

    def test_rejects_tail_after_satellite(self):
        with pytest.raises(InvalidConfigurationError):
            extend_with_satellite_tail(cfg3(), [2])

    def test_rejects_single_point_base(self):
        with pytest.raises(InvalidConfigurationError):
            extend_with_satellite_tail(build_configuration([[]]), [0])

    def test_tono_tail_is_forced(self):
        cfg = tono_family(3, 0).bundle.cfg
        extended = extend_with_satellite_tail(cfg, [16])
        assert extended.size == 18
        assert sorted(extended.points[-1].proximate_to) == [16, 17]

    def test_empty_tail_is_identity(self):
        cfg = build_configuration([[], [1]])
        assert extend_with_satellite_tail(cfg, []) is cfg

    @given(configurations(max_points=10), st.integers(1, 4))
    @settings(max_examples=60)
    def test_tail_adds_exactly_one_block(self, cfg, length):
        if len(cfg.points[-1].proximate_to) == 2 or cfg.size < 2:
            return
        # Re-choosing the same oldest target stays admissible along the tail.
        choices = [cfg.size - 1] * length
        extended = extend_with_satellite_tail(cfg, choices)
        before = block_decomposition(cfg).genus_count
        after = block_decomposition(extended).genus_count
        assert after == before + 1


class TestTangentHandling:
    @given(configurations())
    def test_classification_ignores_tangent_flags(self, cfg):
        if cfg.size == 1:
            return
        other = with_tangent_count(cfg, 2)
        assert classify_points(other) == classify_points(cfg)
        assert block_decomposition(other) == block_decomposition(cfg)

    @given(configurations())
    def test_max_tangent_count_is_admissible_and_maximal(self, cfg):
        k = max_tangent_count(cfg)
        with_tangent_count(cfg, k)
        if k < cfg.size:
            with pytest.raises(InvalidConfigurationError):
                with_tangent_count(cfg, k + 1)
