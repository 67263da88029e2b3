"""Sinusoidal (harmonic) bit-value representations and their degeneracies.

Frequencies are exact integer multiples of the base frequency f0 (with
f0 = 1), so collision analysis is integer arithmetic with no tolerances:
the product of complex-exponential factors sums their integer exponents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hyperspace import EnumerationCapError, ProductString

__all__ = [
    "LINEAR",
    "EXPONENTIAL",
    "SinusRepresentation",
    "CollisionGroup",
    "DegeneracyReport",
    "value_frequency",
    "product_frequency",
    "find_degeneracies",
    "max_system_frequency",
    "readout_sample_count",
    "realize_sinus_product",
    "DEGENERACY_SCAN_CAP",
]

LINEAR = "linear"
EXPONENTIAL = "exponential"
DEGENERACY_SCAN_CAP = 16


@dataclass(frozen=True)
class SinusRepresentation:
    """Assignment of integer harmonics to the 2N bit values.

    linear: L_r -> (2r-1) f0, H_r -> 2r f0 (consecutive harmonics).
    exponential: L_r -> 2^(2r-2) f0, H_r -> 2^(2r-1) f0 (powers of two).
    """

    kind: str
    n_bits: int

    def __post_init__(self) -> None:
        if self.kind not in (LINEAR, EXPONENTIAL):
            raise ValueError(f"kind must be {LINEAR!r} or {EXPONENTIAL!r}, got {self.kind!r}")
        if self.n_bits < 0:
            raise ValueError("bit count must be non-negative")

    def frequency(self, r: int, value: str) -> int:
        return value_frequency(self, r, value)


def value_frequency(rep: SinusRepresentation, r: int, value: str) -> int:
    """Harmonic index (multiple of f0) assigned to bit r's L or H value."""
    if not 1 <= r <= rep.n_bits:
        raise ValueError(f"bit index {r} out of range 1..{rep.n_bits}")
    if value not in ("L", "H"):
        raise ValueError(f"value must be 'L' or 'H', got {value!r}")
    if rep.kind == LINEAR:
        return 2 * r - 1 if value == "L" else 2 * r
    return 1 << (2 * r - 2) if value == "L" else 1 << (2 * r - 1)


def product_frequency(rep: SinusRepresentation, ps: ProductString) -> int:
    """Frequency of the realized product string: the sum of its factors'
    harmonics (multiplying complex exponentials adds exponents)."""
    if ps.n_bits != rep.n_bits:
        raise ValueError(f"product string has {ps.n_bits} bits, representation has {rep.n_bits}")
    return sum(value_frequency(rep, r, ps.selection(r)) for r in range(1, rep.n_bits + 1))


@dataclass(frozen=True)
class CollisionGroup:
    """Product strings sharing one product frequency."""

    frequency: int
    members: tuple[ProductString, ...]


@dataclass(frozen=True)
class DegeneracyReport:
    """All frequency collisions among the 2^N product strings."""

    kind: str
    n_bits: int
    groups: tuple[CollisionGroup, ...]

    @property
    def total_collided(self) -> int:
        return sum(len(g.members) for g in self.groups)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "N": self.n_bits,
            "groups": [
                {"frequency": g.frequency, "members": [str(ps) for ps in g.members]}
                for g in self.groups
            ],
        }


def find_degeneracies(rep: SinusRepresentation) -> DegeneracyReport:
    """Group all 2^N product strings by product frequency and report every
    frequency carrying two or more strings."""
    if rep.n_bits > DEGENERACY_SCAN_CAP:
        raise EnumerationCapError("degeneracy scan", rep.n_bits, DEGENERACY_SCAN_CAP)
    by_frequency: dict[int, list[ProductString]] = {}
    for ps in ProductString.all_strings(rep.n_bits):
        by_frequency.setdefault(product_frequency(rep, ps), []).append(ps)
    groups = tuple(
        CollisionGroup(freq, tuple(sorted(members)))
        for freq, members in sorted(by_frequency.items())
        if len(members) >= 2
    )
    return DegeneracyReport(rep.kind, rep.n_bits, groups)


def max_system_frequency(rep: SinusRepresentation) -> int:
    """Highest frequency in the system: N(2N+1) linear, 2^(2N)-1 exponential.

    A product may combine every one of the 2N reference signals, so the
    highest achievable frequency is the sum of all assigned harmonics;
    both closed forms equal that sum."""
    n = rep.n_bits
    if rep.kind == LINEAR:
        return n * (2 * n + 1)
    return (1 << (2 * n)) - 1


def readout_sample_count(rep: SinusRepresentation) -> int:
    """Samples needed over one 1/f0 window to resolve every product
    frequency at the Nyquist rate: 2 * f_max + 1 (including the DC bin).

    Any constant factor here preserves the scaling conclusion; the
    factor-2-plus-DC choice is this package's convention."""
    return 2 * max_system_frequency(rep) + 1


def realize_sinus_product(rep: SinusRepresentation, ps: ProductString, samples: int) -> np.ndarray:
    """Complex-exponential realization of a product string over one window
    of length 1/f0: s[k] = exp(j 2π F k / samples), F = product frequency."""
    if samples < 1:
        raise ValueError("need at least one sample")
    frequency = product_frequency(rep, ps)
    k = np.arange(samples)
    return np.exp(2j * np.pi * frequency * k / samples)
