"""Hyperspace product states: basis product strings, binary superpositions,
and the low-cost product-form synthesis of the full-universe superposition.

Operation counting is built into the synthesis paths so complexity claims
can be asserted on actual executed work rather than wall-clock time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .rtw import ClockedWave, IntegerWave, ReferenceSystem

__all__ = [
    "EnumerationCapError",
    "ProductString",
    "Superposition",
    "OpCounter",
    "realize_product",
    "realize_superposition",
    "synthesize_universe",
    "expand_universe",
    "enumerate_superpositions",
    "PRODUCT_STRING_CAP",
    "SUPERPOSITION_COUNT_CAP",
]

# Desk-scale enumeration limits: 2^N product strings and 2^(2^N) superpositions.
PRODUCT_STRING_CAP = 16
SUPERPOSITION_COUNT_CAP = 4


class EnumerationCapError(ValueError):
    """Raised when a request would exceed an explicit enumeration cap."""

    def __init__(self, what: str, requested: int, cap: int):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what}: N={requested} exceeds cap {cap}")


@dataclass(frozen=True, order=True)
class ProductString:
    """One hyperspace basis vector: an L/H selection for each of N bits.

    Bit r of *mask* (0-indexed r-1 for bit index r) selects H_r when set,
    L_r when clear.  Canonical ordering is by mask value.
    """

    n_bits: int
    mask: int

    def __post_init__(self) -> None:
        if self.n_bits < 0:
            raise ValueError("bit count must be non-negative")
        if not 0 <= self.mask < (1 << self.n_bits):
            raise ValueError(f"mask {self.mask} out of range for {self.n_bits} bits")

    @classmethod
    def from_string(cls, text: str) -> "ProductString":
        """Parse "LHH"-style notation (position 1 first)."""
        mask = 0
        for r, ch in enumerate(text):
            if ch == "H":
                mask |= 1 << r
            elif ch != "L":
                raise ValueError(f"selection characters must be 'L' or 'H', got {ch!r}")
        return cls(len(text), mask)

    @classmethod
    def all_strings(cls, n_bits: int) -> Iterator["ProductString"]:
        """All 2^N product strings in canonical (mask) order."""
        if n_bits > PRODUCT_STRING_CAP:
            raise EnumerationCapError("product-string enumeration", n_bits, PRODUCT_STRING_CAP)
        for mask in range(1 << n_bits):
            yield cls(n_bits, mask)

    def selection(self, r: int) -> str:
        """'L' or 'H' for bit index r in 1..N."""
        if not 1 <= r <= self.n_bits:
            raise ValueError(f"bit index {r} out of range 1..{self.n_bits}")
        return "H" if (self.mask >> (r - 1)) & 1 else "L"

    def __str__(self) -> str:
        return "".join(self.selection(r) for r in range(1, self.n_bits + 1))


@dataclass(frozen=True)
class Superposition:
    """A set of product strings, each with an on/off coefficient fixed to on."""

    n_bits: int
    members: frozenset[ProductString] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        for ps in self.members:
            if ps.n_bits != self.n_bits:
                raise ValueError(f"member {ps} does not have {self.n_bits} bits")

    @classmethod
    def of(cls, n_bits: int, members: Iterable[ProductString] = ()) -> "Superposition":
        return cls(n_bits, frozenset(members))

    def with_member(self, ps: ProductString) -> "Superposition":
        """Set-semantics add: a duplicate member is a no-op."""
        return Superposition(self.n_bits, self.members | {ps})

    def sorted_members(self) -> list[ProductString]:
        return sorted(self.members)

    def to_json_list(self) -> list[str]:
        """Canonically ordered "LH..." member strings, as used in reports."""
        return [str(ps) for ps in self.sorted_members()]

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class OpCounter:
    """Tally of scalar additions/multiplications performed by a synthesis path."""

    additions: int = 0
    multiplications: int = 0

    def count_add(self, n: int = 1) -> None:
        self.additions += n

    def count_mul(self, n: int = 1) -> None:
        self.multiplications += n

    def per_clock(self, clocks: int) -> tuple[float, float]:
        """(additions, multiplications) per clock period."""
        if clocks == 0:
            return (0.0, 0.0)
        return (self.additions / clocks, self.multiplications / clocks)


def realize_product(ps: ProductString, refsys: ReferenceSystem,
                    counter: OpCounter | None = None) -> ClockedWave:
    """Samplewise product of the selected reference wave for each bit.

    Folds from the all-ones identity, so the per-clock cost is exactly N
    multiplications; N = 0 yields the all-ones wave.
    """
    if ps.n_bits != refsys.n_bits:
        raise ValueError(f"product string has {ps.n_bits} bits, system has {refsys.n_bits}")
    clocks = refsys.clocks
    acc = np.ones(clocks, dtype=np.int8)
    for r in range(1, ps.n_bits + 1):
        acc = acc * refsys.wave(r, ps.selection(r)).samples
        if counter is not None:
            counter.count_mul(clocks)
    return ClockedWave._wrap(acc)


def realize_superposition(s: Superposition, refsys: ReferenceSystem,
                          counter: OpCounter | None = None) -> IntegerWave:
    """Samplewise sum of the realized members; empty superposition is all zeros."""
    if s.n_bits != refsys.n_bits:
        raise ValueError(f"superposition has {s.n_bits} bits, system has {refsys.n_bits}")
    acc = np.zeros(refsys.clocks, dtype=np.int64)
    for ps in s.sorted_members():
        acc = acc + realize_product(ps, refsys, counter).samples
        if counter is not None:
            counter.count_add(refsys.clocks)
    return IntegerWave._wrap(acc)


def synthesize_universe(refsys: ReferenceSystem,
                        counter: OpCounter | None = None) -> IntegerWave:
    """Product-form synthesis of the uniform superposition of all 2^N strings.

    Evaluates the per-clock product over r of (L_r + H_r): exactly N
    additions and N-1 multiplications per clock period, yet samplewise
    equal to summing all 2^N realized product strings.
    """
    n_bits, clocks = refsys.n_bits, refsys.clocks
    # Factor samples lie in {-2, 0, +2}; the running product can reach
    # ±2^N, so fall back to Python integers beyond the int64 range.
    dtype = np.int64 if n_bits <= 62 else object
    factors = []
    for r in range(1, n_bits + 1):
        low = refsys.low(r).samples.astype(dtype)
        factors.append(low + refsys.high(r).samples)
        if counter is not None:
            counter.count_add(clocks)
    if not factors:
        return IntegerWave._wrap(np.ones(clocks, dtype=np.int64))
    acc = factors[0]
    for factor in factors[1:]:
        acc = acc * factor
        if counter is not None:
            counter.count_mul(clocks)
    return IntegerWave._wrap(acc)


def expand_universe(n_bits: int, cap: int = PRODUCT_STRING_CAP) -> Superposition:
    """The superposition of all 2^N product strings (explicit enumeration)."""
    if n_bits > cap:
        raise EnumerationCapError("universe expansion", n_bits, cap)
    return Superposition.of(n_bits, (ProductString(n_bits, m) for m in range(1 << n_bits)))


def enumerate_superpositions(n_bits: int) -> int:
    """Exhaustively build every superposition over N bits and count them.

    The count equals 2^(2^N): every subset of the 2^N product strings is a
    distinct logic value.
    """
    if n_bits > SUPERPOSITION_COUNT_CAP:
        raise EnumerationCapError("superposition enumeration", n_bits, SUPERPOSITION_COUNT_CAP)
    strings = [ProductString(n_bits, m) for m in range(1 << n_bits)]
    seen = set()
    for subset in range(1 << len(strings)):
        members = frozenset(ps for i, ps in enumerate(strings) if (subset >> i) & 1)
        seen.add(Superposition(n_bits, members))
    return len(seen)
