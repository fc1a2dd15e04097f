"""Degree, Seshadri-type, and negativity bounds attached to valuations.

All bounds are exact integers or ``Fraction`` values.  The unicuspidal
example family (``tono_family``) doubles as a regression suite: every
closed-form invariant it claims is re-verified against the constructed
configuration before the bundle is returned.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .configurations import (
    Configuration,
    extend_with_satellite_tail,
)
from .errors import VerificationError
from .invariants import (
    InvariantRecord,
    from_maximal_contact,
    invariant_record,
    maximal_contact_values,
)


def ceil_plus(x: Fraction | int) -> int:
    """Ceiling clamped to zero: ceil(x) for x >= 0, else 0."""
    return max(math.ceil(x), 0)


@dataclass(frozen=True)
class ValuationBundle:
    """A configuration with its derived invariants and threshold index."""

    cfg: Configuration
    record: InvariantRecord
    delta0: int


@dataclass(frozen=True)
class MultiValuation:
    """Several valuations blown up together, plus their aligned-point count."""

    bundles: tuple[ValuationBundle, ...]
    aligned_mu: int


@dataclass(frozen=True)
class BoundEntry:
    value: int | Fraction
    source: str


@dataclass(frozen=True)
class BoundReport:
    """Every bound for one valuation, tagged with what produced it."""

    degree_bound: BoundEntry
    mu_hat_upper: BoundEntry
    ratio_bound: BoundEntry
    multi_ratio_bound: BoundEntry
    lambda_bound: BoundEntry
    combinatorial_lambda_bound: BoundEntry | None
    trivial_bound: BoundEntry


@dataclass(frozen=True)
class TailComparison:
    """Exact effect of a satellite tail on the threshold index."""

    delta0_before: int
    delta0_after: int
    difference: Fraction

    @property
    def delta0_non_increasing(self) -> bool:
        return self.delta0_after <= self.delta0_before

    @property
    def difference_in_unit_interval(self) -> bool:
        return 0 < self.difference < 1


@dataclass(frozen=True)
class TonoValuation:
    """One member of the unicuspidal example family, fully verified."""

    a: int
    e: int
    bundle: ValuationBundle
    curve_degree: int
    curve_value: int
    mu_hat: Fraction
    mu_hat_bound: int
    ratio: Fraction
    trailing_free: int


def _threshold_index(record: InvariantRecord) -> int:
    """delta0 of an already-computed record."""
    if record.is_m_adic:
        return -1
    contact = record.beta_bar
    t = record.tangent_value
    return ceil_plus(Fraction(contact[-1] - 2 * contact[0] * t, t * t))


def valuation_bundle(cfg: Configuration) -> ValuationBundle:
    record = invariant_record(cfg)
    return ValuationBundle(cfg=cfg, record=record, delta0=_threshold_index(record))


def delta0(cfg: Configuration) -> int:
    """Least ruled-surface index at which the valuation is non-positive at
    infinity; -1 by convention for a single point."""
    return _threshold_index(invariant_record(cfg))


def degree_lower_bound(cfg: Configuration, m: Sequence[int]) -> Fraction:
    """Lower bound on the degree of a plane curve with multiplicities >= m."""
    record = invariant_record(cfg)
    v = record.multiplicities.values
    if len(m) != len(v):
        raise ValueError(f"expected {len(v)} multiplicities, got {len(m)}")
    if any(x < 0 for x in m):
        raise ValueError("prescribed multiplicities must be non-negative")
    weighted = sum(a * b for a, b in zip(v, m))
    denominator = (
        record.beta_bar[0] + (1 + _threshold_index(record)) * record.tangent_value
    )
    return Fraction(weighted, denominator)


def mu_hat_upper_bound(cfg: Configuration) -> int:
    """Upper bound on the Seshadri-type constant of the valuation."""
    record = invariant_record(cfg)
    return record.beta_bar[0] + (1 + _threshold_index(record)) * record.tangent_value


def supraminimal_certificate(
    cfg: Configuration, curve_value: int, curve_degree: int
) -> Fraction | None:
    """Certify curve_value/curve_degree as the exact Seshadri-type constant.

    The certificate fires when the curve beats the square root of the
    inverse volume strictly; the caller asserts the curve is integral and
    has the stated value and degree.
    """
    if curve_value < 1 or curve_degree < 1:
        raise ValueError("curve value and degree must be positive")
    last = maximal_contact_values(cfg).beta_bar[-1]
    if curve_value * curve_value > last * curve_degree * curve_degree:
        return Fraction(curve_value, curve_degree)
    return None


def ratio_bound(cfg: Configuration) -> int:
    """Lower bound on (strict transform)^2 / degree^2 for curves other than
    the tangent line."""
    return -(1 + delta0(cfg))


def default_aligned_mu(bundles: Sequence[ValuationBundle]) -> int:
    """Aligned-point count for valuations at mutually general centers.

    Any two distinct points of the plane lie on a line, so the count is at
    least 2 once two points exist anywhere; within one valuation only the
    tangent-flagged points can be aligned.
    """
    best = max(b.cfg.tangent_count for b in bundles)
    total = sum(b.cfg.size for b in bundles)
    if total >= 2:
        best = max(best, 2)
    return best


def multi_valuation(
    bundles: Sequence[ValuationBundle], aligned_mu: int | None = None
) -> MultiValuation:
    if not bundles:
        raise ValueError("need at least one valuation")
    mu = default_aligned_mu(bundles) if aligned_mu is None else int(aligned_mu)
    if mu < max(b.cfg.tangent_count for b in bundles):
        raise ValueError(
            "aligned_mu cannot be smaller than a tangent segment of one "
            "of the valuations"
        )
    if sum(b.cfg.size for b in bundles) >= 2 and mu < 2:
        raise ValueError("aligned_mu must be at least 2 once two points exist")
    return MultiValuation(bundles=tuple(bundles), aligned_mu=mu)


def multi_ratio_bound(mv: MultiValuation) -> int:
    """Ratio bound on the surface dominating all the valuations at once."""
    n = len(mv.bundles)
    return -sum(b.delta0 for b in mv.bundles) - 2 * n + 1


def lambda_lower_bound(mv: MultiValuation) -> int:
    """Lower bound for the asymptotic negativity of the joint blowup."""
    return min(1 - mv.aligned_mu, multi_ratio_bound(mv))


def combinatorial_lambda_bound(cfg: Configuration) -> int:
    """Negativity bound from the first, second, and last contact values only.

    When p_3 is a satellite the tangent value is pinned to the second
    contact value and the threshold index can be rewritten accordingly;
    otherwise the tangent value is squeezed between twice the first and
    the second contact value, which bounds both terms of the minimum.
    """
    if cfg.size < 2:
        raise ValueError("the bound needs a tangent line, hence two points")
    contact = invariant_record(cfg).beta_bar
    b0, b1, last = contact[0], contact[1], contact[-1]
    inverse_normalized_volume = Fraction(last, b0 * b0)
    shrink = Fraction(b0, b1)
    p3_satellite = cfg.size >= 3 and len(cfg.points[2].proximate_to) == 2
    if p3_satellite:
        return -1 - ceil_plus(shrink * shrink * inverse_normalized_volume - 2 * shrink)
    return min(
        1 - math.ceil(Fraction(b1, b0)),
        -1 - ceil_plus(inverse_normalized_volume / 4 - 2 * shrink),
    )


def satellite_tail_comparison(
    cfg: Configuration, choices: Sequence[int]
) -> TailComparison:
    """Extend by a satellite tail and recompute the threshold data exactly.

    Returns both threshold indices and the exact difference of the
    pre-ceiling terms; the expected behavior (difference in (0, 1), index
    never increasing) is exposed as properties so violations can be
    reported rather than raised.
    """
    if cfg.size < 2:
        raise ValueError("tail comparison needs at least two points")

    def term(record: InvariantRecord) -> Fraction:
        t = record.tangent_value
        return Fraction(record.beta_bar[-1] - 2 * record.beta_bar[0] * t, t * t)

    before = invariant_record(cfg)
    after = invariant_record(extend_with_satellite_tail(cfg, choices))
    return TailComparison(
        delta0_before=_threshold_index(before),
        delta0_after=_threshold_index(after),
        difference=term(before) - term(after),
    )


def tono_family(a: int, e: int) -> TonoValuation:
    """Valuation of the unicuspidal curve family with parameters (a, e).

    The cusp resolution is rebuilt from the contact values (a^2 - a, a^2,
    a^3 + 2a + 1) and extended by (e+1)a^4 - 2a^3 - 2a^2 - a free points
    on the curve.  Every closed-form value is re-verified before returning.
    """
    if a < 3:
        raise ValueError("the family needs a >= 3")
    if e < 0:
        raise ValueError("the family needs e >= 0")

    expected_contact = (a * a - a, a * a, a**3 + 2 * a + 1, (e + 2) * a**4 - 2 * a**3)
    trailing = (e + 1) * a**4 - 2 * a**3 - 2 * a * a - a
    cfg = from_maximal_contact(
        expected_contact[:3], trailing_free=trailing, name=f"tono-a{a}-e{e}"
    )
    bundle = valuation_bundle(cfg)

    if bundle.record.beta_bar != expected_contact:
        raise VerificationError(
            f"contact values {bundle.record.beta_bar} differ from the "
            f"closed form {expected_contact}"
        )
    if bundle.record.tangent_value != a * a:
        raise VerificationError(
            f"tangent value {bundle.record.tangent_value} differs from {a * a}"
        )
    if bundle.delta0 != e:
        raise VerificationError(f"threshold index {bundle.delta0} differs from {e}")

    curve_degree = a * a + 1
    curve_value = expected_contact[-1]
    if curve_value**2 <= bundle.record.beta_bar[-1] * curve_degree**2:
        raise VerificationError("the family curve must certify the constant")
    certificate = Fraction(curve_value, curve_degree)
    expected_bound = (e + 2) * a * a - a
    actual_bound = (
        bundle.record.beta_bar[0]
        + (1 + bundle.delta0) * bundle.record.tangent_value
    )
    if actual_bound != expected_bound:
        raise VerificationError(
            f"upper bound {actual_bound} differs from the closed form "
            f"{expected_bound}"
        )
    ratio = Fraction(curve_degree**2 - curve_value, curve_degree**2)
    return TonoValuation(
        a=a,
        e=e,
        bundle=bundle,
        curve_degree=curve_degree,
        curve_value=curve_value,
        mu_hat=certificate,
        mu_hat_bound=actual_bound,
        ratio=ratio,
        trailing_free=trailing,
    )


_DEGREE_TAG = "nef pairing on the ruled model"
_MU_HAT_TAG = "limit of the degree bound"
_RATIO_TAG = "self-intersection of strict transforms"
_MULTI_TAG = "fibred product over the plane"
_LAMBDA_TAG = "aligned-points minimum"
_COMBINATORIAL_TAG = "dual-graph data only"
_TRIVIAL_TAG = "point count"


def bound_report(
    bundle: ValuationBundle, aligned_mu: int | None = None
) -> BoundReport:
    """All bounds for a single valuation, treated as a one-element ensemble.

    The degree bound is evaluated at the valuation's own multiplicity
    sequence (a curve through every center with those multiplicities).
    """
    cfg = bundle.cfg
    mv = multi_valuation([bundle], aligned_mu)
    combinatorial = None
    if cfg.size >= 2:
        combinatorial = BoundEntry(
            combinatorial_lambda_bound(cfg), _COMBINATORIAL_TAG
        )
    return BoundReport(
        degree_bound=BoundEntry(
            degree_lower_bound(cfg, bundle.record.multiplicities.values), _DEGREE_TAG
        ),
        mu_hat_upper=BoundEntry(mu_hat_upper_bound(cfg), _MU_HAT_TAG),
        ratio_bound=BoundEntry(ratio_bound(cfg), _RATIO_TAG),
        multi_ratio_bound=BoundEntry(multi_ratio_bound(mv), _MULTI_TAG),
        lambda_bound=BoundEntry(lambda_lower_bound(mv), _LAMBDA_TAG),
        combinatorial_lambda_bound=combinatorial,
        trivial_bound=BoundEntry(1 - cfg.size, _TRIVIAL_TAG),
    )


__all__ = [
    "BoundEntry",
    "BoundReport",
    "MultiValuation",
    "TailComparison",
    "TonoValuation",
    "ValuationBundle",
    "bound_report",
    "ceil_plus",
    "combinatorial_lambda_bound",
    "default_aligned_mu",
    "degree_lower_bound",
    "delta0",
    "lambda_lower_bound",
    "mu_hat_upper_bound",
    "multi_ratio_bound",
    "multi_valuation",
    "ratio_bound",
    "satellite_tail_comparison",
    "supraminimal_certificate",
    "tono_family",
    "valuation_bundle",
]
