import random

from hypothesis import given, settings
from hypothesis import strategies as st

import valuation_lab.checks as checks
from valuation_lab.bounds import tono_family
from valuation_lab.checks import (
    CheckResult,
    fuzz,
    identity_checks,
    random_configuration,
    random_tail_choices,
)
from valuation_lab.configurations import (
    SATELLITE,
    build_configuration,
    classify_points,
    extend_with_satellite_tail,
)


class TestRandomConfiguration:
    @given(st.integers(0, 10**9), st.integers(1, 15))
    @settings(max_examples=80)
    def test_generates_valid_configurations(self, seed, max_points):
        cfg = random_configuration(random.Random(seed), max_points)
        assert 1 <= cfg.size <= max_points
        rebuilt = build_configuration(
            cfg.proximity_lists(), tangent_count=cfg.tangent_count
        )
        assert rebuilt.points == cfg.points

    def test_deterministic_for_fixed_seed(self):
        a = random_configuration(random.Random(99), 12)
        b = random_configuration(random.Random(99), 12)
        assert a == b

    def test_satellite_bias_reaches_deep_structures(self):
        rng = random.Random(5)
        seen_satellite = any(
            SATELLITE in classify_points(random_configuration(rng, 12))
            for _ in range(50)
        )
        assert seen_satellite


class TestRandomTailChoices:
    @given(st.integers(0, 10**6), st.integers(1, 6))
    @settings(max_examples=60)
    def test_choices_are_admissible(self, seed, length):
        rng = random.Random(seed)
        cfg = random_configuration(rng, 10)
        if cfg.size < 2 or len(cfg.points[-1].proximate_to) == 2:
            return
        choices = random_tail_choices(cfg, length, rng)
        assert len(choices) == length
        extended = extend_with_satellite_tail(cfg, choices)
        assert extended.size == cfg.size + length


class TestIdentityChecks:
    def test_all_pass_on_handpicked_configurations(self):
        for cfg in (
            build_configuration([[]]),
            build_configuration([[], [1]]),
            build_configuration([[], [1], [2, 1]]),
            tono_family(3, 0).bundle.cfg,
        ):
            results = identity_checks(cfg)
            assert all(r.passed for r in results), [r for r in results if not r.passed]

    def test_check_names_cover_the_documented_identities(self):
        names = {r.name for r in identity_checks(build_configuration([[], [1], [2, 1]]))}
        assert {
            "last-contact-value",
            "contact-round-trip",
            "delta0-threshold",
            "nef-generator-pairings",
            "remark-dominance",
        } <= names


class TestFuzz:
    def test_deterministic(self):
        assert fuzz(12, 50, 42) == fuzz(12, 50, 42)

    def test_different_seeds_differ(self):
        assert fuzz(12, 50, 1) != fuzz(12, 50, 2)

    def test_corpus_is_clean(self):
        summary = fuzz(12, 200, 7)
        assert summary.ok
        assert summary.checks_failed == 0
        assert summary.first_failure is None

    def test_m_adic_only(self):
        summary = fuzz(1, 10, 3)
        assert summary.ok

    def test_reports_first_counterexample(self, monkeypatch):
        real = checks.identity_checks

        def broken(cfg, deltas=checks.NEF_DELTAS):
            results = real(cfg, deltas)
            if cfg.size >= 3:
                results.append(CheckResult("injected", False, "synthetic"))
            return results

        monkeypatch.setattr(checks, "identity_checks", broken)
        summary = checks.fuzz(12, 50, 42)
        assert not summary.ok
        assert summary.first_failure is not None
        assert summary.first_failure.check == "injected"
        assert len(summary.first_failure.proximity_lists) >= 3
