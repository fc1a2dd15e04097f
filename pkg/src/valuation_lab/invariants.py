"""Numerical invariants of a valuation read off its configuration.

Everything here is exact: multiplicities and contact values are Python
integers, volumes and Puiseux exponents are ``fractions.Fraction``.  The
inverse construction (``from_maximal_contact``) expands each contact
value into a block of multiplicities by the subtractive Euclidean
algorithm, recovers proximities greedily from the multiplicity sequence,
and then verifies itself by recomputing the contact values from scratch.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .configurations import (
    Configuration,
    append_free_chain,
    block_decomposition,
    build_configuration,
)
from .errors import ReconstructionError


@dataclass(frozen=True)
class MultiplicityVector:
    """Values of the maximal ideals along the chain; v_n = 1."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class MaximalContactValues:
    """Generators of the value semigroup together with their gcd chain."""

    beta_bar: tuple[int, ...]
    gcd_chain: tuple[int, ...]


@dataclass(frozen=True)
class PuiseuxExponents:
    """Block-wise continued fractions of multiplicity run lengths."""

    beta_prime: tuple[Fraction, ...]
    run_length_tables: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class InvariantRecord:
    """The full derived-invariant bundle of one configuration."""

    multiplicities: MultiplicityVector
    contact: MaximalContactValues
    puiseux: PuiseuxExponents
    volume: Fraction
    normalized_volume: Fraction
    tangent_value: int
    is_m_adic: bool

    @property
    def beta_bar(self) -> tuple[int, ...]:
        return self.contact.beta_bar


def _incoming(cfg: Configuration) -> list[list[int]]:
    """incoming[i] = indices proximate to p_i (1-based, entry 0 unused)."""
    incoming: list[list[int]] = [[] for _ in range(cfg.size + 1)]
    for p in cfg.points:
        for target in p.proximate_to:
            incoming[target].append(p.index)
    return incoming


def multiplicity_sequence(cfg: Configuration) -> MultiplicityVector:
    """Backward recursion v_n = 1, v_i = sum of v_j over points proximate to p_i."""
    n = cfg.size
    incoming = _incoming(cfg)
    v = [0] * (n + 1)
    v[n] = 1
    for i in range(n - 1, 0, -1):
        v[i] = sum(v[j] for j in incoming[i])
    return MultiplicityVector(values=tuple(v[1:]))


def curvette_vector(cfg: Configuration, k: int) -> tuple[int, ...]:
    """Multiplicities of a smooth germ through p_1..p_k, transversal at stage k."""
    n = cfg.size
    if not 1 <= k <= n:
        raise ValueError(f"curvette index must lie in 1..{n}, got {k}")
    incoming: list[list[int]] = [[] for _ in range(k + 1)]
    for p in cfg.points[1:k]:
        for target in p.proximate_to:
            incoming[target].append(p.index)
    w = [0] * (k + 1)
    w[k] = 1
    for i in range(k - 1, 0, -1):
        w[i] = sum(w[j] for j in incoming[i])
    return tuple(w[1:]) + (0,) * (n - k)


def noether_pairing(cfg: Configuration, m: Sequence[int], m2: Sequence[int]) -> int:
    """Intersection pairing of two multiplicity vectors over the chain."""
    if len(m) != cfg.size or len(m2) != cfg.size:
        raise ValueError(
            f"vectors must have length {cfg.size}, got {len(m)} and {len(m2)}"
        )
    return sum(a * b for a, b in zip(m, m2))


def maximal_contact_values(cfg: Configuration) -> MaximalContactValues:
    """Contact values via curvette pairings; the last one pairs the chain with itself."""
    v = multiplicity_sequence(cfg).values
    decomposition = block_decomposition(cfg)
    beta = [v[0]]
    for r in decomposition.last_free_indices:
        beta.append(noether_pairing(cfg, v, curvette_vector(cfg, r)))
    beta.append(noether_pairing(cfg, v, curvette_vector(cfg, cfg.size)))
    gcds = []
    g = 0
    for b in beta:
        g = math.gcd(g, b)
        gcds.append(g)
    return MaximalContactValues(beta_bar=tuple(beta), gcd_chain=tuple(gcds))


def _continued_fraction(digits: Sequence[int]) -> Fraction:
    value = Fraction(digits[-1])
    for d in reversed(digits[:-1]):
        value = d + 1 / value
    return value


def _run_lengths(values: Sequence[int]) -> list[int]:
    runs: list[int] = []
    previous = None
    for x in values:
        if x == previous:
            runs[-1] += 1
        else:
            runs.append(1)
            previous = x
    return runs


def puiseux_exponents(cfg: Configuration) -> PuiseuxExponents:
    """Per block, the continued fraction of the multiplicity run lengths.

    Blocks are read as closed ranges, so the shared endpoint of consecutive
    blocks contributes to the first run of the later block.
    """
    v = multiplicity_sequence(cfg).values
    decomposition = block_decomposition(cfg)
    exponents = [Fraction(1)]
    tables = []
    for lo, hi in decomposition.blocks:
        digits = _run_lengths(v[lo - 1 : hi])
        tables.append(tuple(digits))
        exponents.append(_continued_fraction(digits))
    return PuiseuxExponents(
        beta_prime=tuple(exponents), run_length_tables=tuple(tables)
    )


def volume(cfg: Configuration) -> Fraction:
    """Reciprocal of the last maximal contact value."""
    return Fraction(1, maximal_contact_values(cfg).beta_bar[-1])


def normalized_volume(cfg: Configuration) -> Fraction:
    contact = maximal_contact_values(cfg).beta_bar
    return Fraction(contact[0] ** 2, contact[-1])


def tangent_value(cfg: Configuration) -> int:
    """Value of the tangent line: sum of multiplicities over flagged points.

    A single point has no tangent line; its value is 1 by convention.
    """
    if cfg.size == 1:
        return 1
    v = multiplicity_sequence(cfg).values
    return sum(v[p.index - 1] for p in cfg.points if p.on_tangent)


def invariant_record(cfg: Configuration) -> InvariantRecord:
    contact = maximal_contact_values(cfg)
    return InvariantRecord(
        multiplicities=multiplicity_sequence(cfg),
        contact=contact,
        puiseux=puiseux_exponents(cfg),
        volume=Fraction(1, contact.beta_bar[-1]),
        normalized_volume=Fraction(contact.beta_bar[0] ** 2, contact.beta_bar[-1]),
        tangent_value=tangent_value(cfg),
        is_m_adic=(cfg.size == 1),
    )


def semigroup_values(cfg: Configuration, limit: int) -> list[int]:
    """Values up to ``limit`` of the semigroup generated by the contact values."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    generators = maximal_contact_values(cfg).beta_bar
    reachable = [False] * (limit + 1)
    reachable[0] = True
    for g in generators:
        if g == 0 or g > limit:
            continue
        for x in range(g, limit + 1):
            if reachable[x - g]:
                reachable[x] = True
    return [x for x, ok in enumerate(reachable) if ok]


def _euclid_block_values(small: int, large: int) -> list[int]:
    """Minima of the subtractive gcd process on (small, large), in order.

    These are exactly the multiplicities contributed by one block; the run
    lengths equal the continued-fraction digits of large/small.
    """
    out: list[int] = []
    s, big = small, large
    while True:
        q, r = divmod(big, s)
        out.extend([s] * q)
        if r == 0:
            return out
        s, big = r, s


def _proximities_from_multiplicities(values: Sequence[int]) -> list[list[int]]:
    """Recover proximity lists from a multiplicity sequence.

    The points proximate to p_i form a consecutive range starting at p_{i+1}
    whose multiplicities sum to v_i exactly; any mismatch means no
    configuration realizes the sequence.
    """
    n = len(values)
    prox: list[set[int]] = [set() for _ in range(n)]
    for i in range(1, n):
        target = values[i - 1]
        acc = 0
        j = i + 1
        while acc < target:
            if j > n:
                raise ReconstructionError(
                    f"multiplicity {target} at position {i} cannot be matched "
                    "by the points that follow"
                )
            prox[j - 1].add(i)
            acc += values[j - 1]
            j += 1
        if acc != target:
            raise ReconstructionError(
                f"multiplicities after position {i} overshoot the proximity "
                f"equality ({acc} > {target})"
            )
    return [sorted(s) for s in prox]


def from_maximal_contact(
    beta_bar: Sequence[int],
    trailing_free: int = 0,
    name: str | None = None,
) -> Configuration:
    """Build the configuration whose contact values start with ``beta_bar``.

    Block j expands the pair (e_{j-1}, y_j) by the subtractive Euclidean
    algorithm, where y_j = beta_j - n_{j-1} beta_{j-1} + e_{j-1} and the
    shared block endpoint is emitted only once.  The result is verified by
    recomputing its contact values; ``trailing_free`` extra free points are
    appended afterwards (each adds 1 to the final contact value).
    """
    b = [int(x) for x in beta_bar]
    if len(b) < 2:
        raise ReconstructionError(
            "need at least two contact values (the one-point chain has (1, 1))"
        )
    if b[0] < 1:
        raise ReconstructionError("contact values must be positive")
    if b[1] < b[0]:
        raise ReconstructionError("the second contact value cannot be smaller "
                                  "than the first")
    if trailing_free < 0:
        raise ReconstructionError("trailing_free must be non-negative")

    values = _euclid_block_values(b[0], b[1])
    gcd_prev = b[0]
    gcd_here = math.gcd(b[0], b[1])
    for j in range(2, len(b)):
        if gcd_here >= gcd_prev:
            raise ReconstructionError(
                f"gcd chain must strictly decrease before entry {j} "
                f"(stuck at {gcd_here})"
            )
        multiplier = gcd_prev // gcd_here
        y = b[j] - multiplier * b[j - 1] + gcd_here
        if y < gcd_here:
            raise ReconstructionError(
                f"contact value {b[j]} at position {j} is too small to open "
                "a new block"
            )
        segment = _euclid_block_values(gcd_here, y)
        values.extend(segment[1:])
        gcd_prev, gcd_here = gcd_here, math.gcd(gcd_here, y)

    if values[-1] != 1:
        raise ReconstructionError(
            "sequence does not terminate: the final multiplicity would be "
            f"{values[-1]}, not 1"
        )

    prox = _proximities_from_multiplicities(values)
    cfg = build_configuration(prox, name=name)
    rebuilt = multiplicity_sequence(cfg).values
    if rebuilt != tuple(values):
        raise ReconstructionError("reconstructed chain does not reproduce the "
                                  "expected multiplicities")
    recomputed = maximal_contact_values(cfg).beta_bar
    if len(b) > len(recomputed) or list(recomputed[: len(b)]) != b:
        raise ReconstructionError(
            f"no configuration reproduces {tuple(b)}; the closest candidate "
            f"has contact values {recomputed}"
        )
    if trailing_free:
        cfg = append_free_chain(cfg, trailing_free)
    return cfg


__all__ = [
    "InvariantRecord",
    "MaximalContactValues",
    "MultiplicityVector",
    "PuiseuxExponents",
    "curvette_vector",
    "from_maximal_contact",
    "invariant_record",
    "maximal_contact_values",
    "multiplicity_sequence",
    "noether_pairing",
    "normalized_volume",
    "puiseux_exponents",
    "semigroup_values",
    "tangent_value",
    "volume",
]
