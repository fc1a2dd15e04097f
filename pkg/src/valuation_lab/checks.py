"""Randomized configuration generator and the built-in identity suite.

The same identity suite backs the ``check`` command (run on parsed files)
and the ``fuzz`` command (run on random configurations); failures are
reported as findings, never raised.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .bounds import combinatorial_lambda_bound, delta0
from .configurations import (
    Configuration,
    build_configuration,
    max_tangent_count,
)
from .invariants import (
    curvette_vector,
    from_maximal_contact,
    invariant_record,
    multiplicity_sequence,
    noether_pairing,
)
from .surface import intersect_hirzebruch, lambda_divisor, nef_on_generators, npi_check

# Fraction of growth steps steered toward satellite points, to exercise
# deep block structures.
SATELLITE_BIAS = 0.3

NEF_DELTAS = (0, 1, 2, 3)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FuzzFailure:
    trial: int
    proximity_lists: tuple[tuple[int, ...], ...]
    tangent_count: int
    check: str
    detail: str


@dataclass(frozen=True)
class FuzzSummary:
    max_points: int
    trials: int
    seed: int
    checks_passed: int
    checks_failed: int
    first_failure: FuzzFailure | None

    @property
    def ok(self) -> bool:
        return self.checks_failed == 0


def random_configuration(
    rng: random.Random, max_points: int, satellite_bias: float = SATELLITE_BIAS
) -> Configuration:
    """Uniform random size, then admissible growth steps with satellite bias."""
    if max_points < 1:
        raise ValueError("max_points must be at least 1")
    n = rng.randint(1, max_points)
    prox: list[list[int]] = [[]]
    for i in range(2, n + 1):
        targets = [i - 1]
        if i >= 3 and rng.random() < satellite_bias:
            options = sorted(prox[i - 2])
            targets.append(rng.choice(options))
        prox.append(targets)
    draft = build_configuration(prox)
    if n == 1:
        return draft
    tangent = rng.randint(2, max_tangent_count(draft))
    return build_configuration(prox, tangent_count=tangent)


def random_tail_choices(
    cfg: Configuration, length: int, rng: random.Random
) -> list[int]:
    """Admissible older-target sequence for a satellite tail of given length.

    The first target is forced to n-1; after appending a point proximate to
    {prev, c}, the next older target is either of those two.
    """
    if length < 1:
        return []
    choices = [cfg.size - 1]
    prev = cfg.size
    pair = (prev, choices[0])
    for _ in range(length - 1):
        c = rng.choice(sorted(pair))
        choices.append(c)
        prev += 1
        pair = (prev, c)
    return choices


def identity_checks(
    cfg: Configuration, deltas: tuple[int, ...] = NEF_DELTAS
) -> list[CheckResult]:
    """Run every built-in identity on one configuration."""
    results: list[CheckResult] = []
    n = cfg.size
    record = invariant_record(cfg)
    v = record.multiplicities.values
    contact = record.beta_bar

    incoming: list[list[int]] = [[] for _ in range(n + 1)]
    for p in cfg.points:
        for target in p.proximate_to:
            incoming[target].append(p.index)
    equal = v[n - 1] == 1 and all(
        v[i - 1] == sum(v[j - 1] for j in incoming[i]) for i in range(1, n)
    )
    results.append(
        CheckResult("proximity-equalities", equal, "" if equal else f"v={v}")
    )

    direct = sum(x * x for x in v)
    via_curvette = noether_pairing(cfg, v, curvette_vector(cfg, n))
    ok = direct == via_curvette == contact[-1]
    results.append(
        CheckResult(
            "last-contact-value",
            ok,
            "" if ok else f"direct={direct} curvette={via_curvette} "
            f"recorded={contact[-1]}",
        )
    )

    try:
        rebuilt = from_maximal_contact(contact)
        ok = multiplicity_sequence(rebuilt).values == v
        detail = "" if ok else f"rebuilt {multiplicity_sequence(rebuilt).values}"
    except Exception as exc:  # reported, not raised
        ok, detail = False, f"reconstruction failed: {exc}"
    results.append(CheckResult("contact-round-trip", ok, detail))

    d0 = delta0(cfg)
    if n == 1:
        ok = d0 == -1 and npi_check(cfg, 0).non_positive_at_infinity
        results.append(CheckResult("delta0-threshold", ok))
    else:
        first = 0
        while not npi_check(cfg, first).non_positive_at_infinity:
            first += 1
        ok = first == d0 and (
            d0 == 0 or not npi_check(cfg, d0 - 1).non_positive_at_infinity
        )
        results.append(
            CheckResult(
                "delta0-threshold", ok, "" if ok else f"delta0={d0} first={first}"
            )
        )

    ok = True
    detail = ""
    for delta in deltas:
        pairings = nef_on_generators(cfg, delta)
        for gp in pairings:
            expected = 1 if gp.name == f"E{n}" else 0
            if gp.value != expected:
                ok, detail = False, f"delta={delta} {gp.name} -> {gp.value}"
                break
        lam = lambda_divisor(cfg, delta)
        witness = npi_check(cfg, delta).witness
        if witness != intersect_hirzebruch(lam, lam):
            ok, detail = False, f"witness mismatch at delta={delta}"
        if not ok:
            break
    results.append(CheckResult("nef-generator-pairings", ok, detail))

    ok = record.normalized_volume == contact[0] ** 2 * record.volume
    results.append(CheckResult("normalized-volume-scaling", ok))

    if n >= 2:
        t = record.tangent_value
        ok = contact[0] < t <= contact[1]
        results.append(
            CheckResult("tangent-range", ok, "" if ok else f"t={t} contact={contact}")
        )

        inverse_normalized = Fraction(contact[-1], contact[0] ** 2)
        comb = combinatorial_lambda_bound(cfg)
        ok = comb >= 1 - math.ceil(inverse_normalized) >= 1 - n
        results.append(
            CheckResult(
                "remark-dominance",
                ok,
                ""
                if ok
                else f"comb={comb} ceil={math.ceil(inverse_normalized)} n={n}",
            )
        )

    if len(contact) >= 3:  # at least one satellite block
        ok = record.puiseux.beta_prime[1] * contact[0] == contact[1]
        results.append(CheckResult("first-puiseux-ratio", ok))

    return results


def _trial_rng(seed: int, trial: int) -> random.Random:
    # Seed splitting: derive one independent stream per trial from the
    # master seed, deterministically.
    return random.Random(f"{seed}:{trial}")


def fuzz(max_points: int, trials: int, seed: int) -> FuzzSummary:
    """Generate ``trials`` random configurations and run the identity suite."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    passed = 0
    failed = 0
    first_failure: FuzzFailure | None = None
    for trial in range(trials):
        cfg = random_configuration(_trial_rng(seed, trial), max_points)
        for result in identity_checks(cfg):
            if result.passed:
                passed += 1
                continue
            failed += 1
            if first_failure is None:
                first_failure = FuzzFailure(
                    trial=trial,
                    proximity_lists=tuple(
                        tuple(ts) for ts in cfg.proximity_lists()
                    ),
                    tangent_count=cfg.tangent_count,
                    check=result.name,
                    detail=result.detail,
                )
    return FuzzSummary(
        max_points=max_points,
        trials=trials,
        seed=seed,
        checks_passed=passed,
        checks_failed=failed,
        first_failure=first_failure,
    )


__all__ = [
    "CheckResult",
    "FuzzFailure",
    "FuzzSummary",
    "NEF_DELTAS",
    "SATELLITE_BIAS",
    "fuzz",
    "identity_checks",
    "random_configuration",
    "random_tail_choices",
]
