"""Exact intersection theory on the blown-up plane and ruled surfaces.

Classes are written additively against total transforms with the sign
convention ``class = a*F + b*M - sum(m_i * E_i)`` (ruled model) or
``class = d*L - sum(m_i * E_i)`` (plane model).  The pairing table on the
ruled model of index ``delta`` is F.M = 1, F.F = 0, M.M = delta, with the
exceptional classes orthonormal of square -1.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .configurations import Configuration
from .invariants import (
    maximal_contact_values,
    multiplicity_sequence,
    tangent_value,
)


@dataclass(frozen=True)
class PlaneClass:
    """Divisor class d*L - sum(m_i * E_i) on a blown-up plane."""

    degree: int
    mults: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))


@dataclass(frozen=True)
class HirzebruchClass:
    """Divisor class a*F + b*M - sum(m_i * E_i) on a blown-up ruled surface."""

    a: int
    b: int
    mults: tuple[int, ...]
    delta: int

    def __post_init__(self) -> None:
        if self.delta < 0:
            raise ValueError("ruled surface index must be non-negative")
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))


@dataclass(frozen=True)
class AffinePolynomial:
    """Support of an affine curve equation; coefficients are irrelevant here."""

    support: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        pairs = frozenset((int(i), int(j)) for i, j in self.support)
        if not pairs:
            raise ValueError("polynomial support must be non-empty")
        if any(i < 0 or j < 0 for i, j in pairs):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "support", pairs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "AffinePolynomial":
        return cls(support=frozenset(pairs))

    @property
    def degree_u(self) -> int:
        return max(i for i, _ in self.support)

    @property
    def degree_v(self) -> int:
        return max(j for _, j in self.support)


@dataclass(frozen=True)
class NpiResult:
    """Outcome of the non-positivity-at-infinity test with its witness."""

    non_positive_at_infinity: bool
    witness: int


@dataclass(frozen=True)
class GeneratorPairing:
    name: str
    divisor: HirzebruchClass
    value: int


def intersect_plane(x: PlaneClass, y: PlaneClass) -> int:
    if len(x.mults) != len(y.mults):
        raise ValueError(
            f"ambient size mismatch: {len(x.mults)} vs {len(y.mults)}"
        )
    return x.degree * y.degree - sum(a * b for a, b in zip(x.mults, y.mults))


def intersect_hirzebruch(x: HirzebruchClass, y: HirzebruchClass) -> int:
    if x.delta != y.delta:
        raise ValueError(f"ruled surface index mismatch: {x.delta} vs {y.delta}")
    if len(x.mults) != len(y.mults):
        raise ValueError(
            f"ambient size mismatch: {len(x.mults)} vs {len(y.mults)}"
        )
    exceptional = sum(a * b for a, b in zip(x.mults, y.mults))
    return x.a * y.b + y.a * x.b + x.delta * x.b * y.b - exceptional


def lambda_divisor(cfg: Configuration, delta: int) -> HirzebruchClass:
    """The nef candidate attached to the valuation on the ruled model.

    Its fiber coefficient is the first contact value, its section
    coefficient is the tangent value, and it subtracts the multiplicity
    sequence over the exceptional classes.
    """
    contact = maximal_contact_values(cfg)
    return HirzebruchClass(
        a=contact.beta_bar[0],
        b=tangent_value(cfg),
        mults=multiplicity_sequence(cfg).values,
        delta=delta,
    )


def npi_check(cfg: Configuration, delta: int) -> NpiResult:
    """Non-positivity at infinity on the ruled model of the given index.

    The witness is the self-intersection of the nef candidate, computed
    from the closed formula 2*b0*t + t^2*delta - b_last rather than the
    pairing (the two paths are compared in tests).
    """
    if delta < 0:
        raise ValueError("ruled surface index must be non-negative")
    contact = maximal_contact_values(cfg).beta_bar
    t = tangent_value(cfg)
    witness = 2 * contact[0] * t + t * t * delta - contact[-1]
    return NpiResult(non_positive_at_infinity=(witness >= 0), witness=witness)


def nef_on_generators(cfg: Configuration, delta: int) -> list[GeneratorPairing]:
    """Pair the nef candidate with every claimed generator of the curve cone.

    Generators: the strict transform of the fiber through the center (it
    passes through exactly the tangent-flagged points), the strict
    transform of the special section (through p_1 only), and the strict
    transforms of the exceptional divisors.
    """
    n = cfg.size
    lam = lambda_divisor(cfg, delta)

    fiber = HirzebruchClass(
        a=1,
        b=0,
        mults=tuple(1 if p.on_tangent else 0 for p in cfg.points),
        delta=delta,
    )
    section = HirzebruchClass(
        a=-delta,
        b=1,
        mults=(1,) + (0,) * (n - 1),
        delta=delta,
    )
    pairings = [
        GeneratorPairing("fiber", fiber, intersect_hirzebruch(lam, fiber)),
        GeneratorPairing(
            "special_section", section, intersect_hirzebruch(lam, section)
        ),
    ]
    incoming: list[list[int]] = [[] for _ in range(n + 1)]
    for p in cfg.points:
        for target in p.proximate_to:
            incoming[target].append(p.index)
    for i in range(1, n + 1):
        mults = [0] * n
        mults[i - 1] = -1
        for j in incoming[i]:
            mults[j - 1] = 1
        exceptional = HirzebruchClass(a=0, b=0, mults=tuple(mults), delta=delta)
        pairings.append(
            GeneratorPairing(
                f"E{i}", exceptional, intersect_hirzebruch(lam, exceptional)
            )
        )
    return pairings


def hirzebruch_class_of_polynomial(
    f: AffinePolynomial, delta: int
) -> tuple[int, int]:
    """Bidegree (a, b) of the closure of {f = 0} on the ruled surface.

    b is the v-degree and a = max(i - delta*j) over the support: the unique
    exponents for which the bihomogenized equation is divisible by neither
    coordinate at infinity.  Multi-monomial supports sharing a common u- or
    v-factor are rejected, since the closure would then contain the fiber
    through the center or the special section as a component.
    """
    if delta < 0:
        raise ValueError("ruled surface index must be non-negative")
    support = f.support
    if len(support) > 1:
        if min(i for i, _ in support) > 0:
            raise ValueError("every monomial is divisible by u; divide it out first")
        if min(j for _, j in support) > 0:
            raise ValueError("every monomial is divisible by v; divide it out first")
    a = max(i - delta * j for i, j in support)
    b = max(j for _, j in support)
    return a, b


def strict_transform_plane(
    degree: int,
    mults: Sequence[int],
    cfg: Configuration | None = None,
    check_proximity: bool = False,
) -> PlaneClass:
    """Class of a plane curve of the given degree and point multiplicities.

    With a configuration and ``check_proximity``, enforce the proximity
    inequalities m_i >= sum of m_j over the points proximate to p_i.
    """
    if degree < 0:
        raise ValueError("a curve has non-negative degree")
    mults = tuple(int(m) for m in mults)
    if cfg is not None:
        if len(mults) != cfg.size:
            raise ValueError(
                f"expected {cfg.size} multiplicities, got {len(mults)}"
            )
        if check_proximity:
            incoming: list[list[int]] = [[] for _ in range(cfg.size + 1)]
            for p in cfg.points:
                for target in p.proximate_to:
                    incoming[target].append(p.index)
            for i in range(1, cfg.size + 1):
                required = sum(mults[j - 1] for j in incoming[i])
                if mults[i - 1] < required:
                    raise ValueError(
                        f"proximity inequality fails at p_{i}: "
                        f"{mults[i - 1]} < {required}"
                    )
    return PlaneClass(degree=degree, mults=mults)


__all__ = [
    "AffinePolynomial",
    "GeneratorPairing",
    "HirzebruchClass",
    "NpiResult",
    "PlaneClass",
    "hirzebruch_class_of_polynomial",
    "intersect_hirzebruch",
    "intersect_plane",
    "lambda_divisor",
    "nef_on_generators",
    "npi_check",
    "strict_transform_plane",
]
