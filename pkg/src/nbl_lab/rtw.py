"""Random telegraph waves: deterministic generation and waveform algebra.

A random telegraph wave (RTW) holds a fresh fair draw from {-1, +1} for
each clock period.  Everything downstream (product strings, universes,
readout experiments) is built from the immutable wave types defined here.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "SeedSpec",
    "ClockedWave",
    "IntegerWave",
    "ReferenceSystem",
    "generate_rtw",
    "make_reference_system",
    "multiply",
    "time_average_product",
    "save_wave_file",
    "load_wave_file",
]

_STREAM_DOMAIN = b"nbl-lab/rtw-stream/v1"
_BLOCK_BYTES = 64  # blake2b max digest; 512 wave samples per block

PathElement = Union[int, str]


def _encode_path_element(element: PathElement) -> bytes:
    if isinstance(element, bool):  # bool is an int subclass; reject explicitly
        raise TypeError("path elements must be int or str, not bool")
    if isinstance(element, int):
        return b"i" + element.to_bytes(8, "big", signed=True)
    if isinstance(element, str):
        raw = element.encode("utf-8")
        return b"s" + len(raw).to_bytes(4, "big") + raw
    raise TypeError(f"path elements must be int or str, got {type(element).__name__}")


@dataclass(frozen=True)
class SeedSpec:
    """Addressable substream of a master seed.

    Identical (master_seed, path) pairs always produce the identical
    sample stream; distinct paths produce independent streams.  Streams
    are counter-based (keyed blake2b over a block counter), so a shorter
    draw is always a prefix of a longer one.
    """

    master_seed: int
    path: tuple[PathElement, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "path", tuple(self.path))
        for element in self.path:
            _encode_path_element(element)

    def child(self, *elements: PathElement) -> "SeedSpec":
        """Extend the derivation path."""
        return SeedSpec(self.master_seed, self.path + elements)

    def stream_key(self) -> bytes:
        """32-byte key identifying this substream."""
        h = hashlib.blake2b(digest_size=32)
        h.update(_STREAM_DOMAIN)
        h.update(self.master_seed.to_bytes(8, "big"))
        for element in self.path:
            h.update(_encode_path_element(element))
        return h.digest()

    def derive_seed(self) -> int:
        """Collapse this substream to a fresh 64-bit master seed."""
        return int.from_bytes(self.stream_key()[:8], "big")

    def bits(self, count: int) -> np.ndarray:
        """First *count* bits of the substream as a uint8 0/1 array."""
        if count < 0:
            raise ValueError("bit count must be non-negative")
        if count == 0:
            return np.zeros(0, dtype=np.uint8)
        key = self.stream_key()
        n_blocks = -(-count // (_BLOCK_BYTES * 8))
        buf = b"".join(
            hashlib.blake2b(i.to_bytes(8, "big"), key=key, digest_size=_BLOCK_BYTES).digest()
            for i in range(n_blocks)
        )
        return np.unpackbits(np.frombuffer(buf, dtype=np.uint8))[:count]


class ClockedWave:
    """Immutable sequence of bipolar unit samples, one per clock period."""

    __slots__ = ("_samples",)

    def __init__(self, samples: Iterable[int]):
        raw = np.asarray(samples)
        if raw.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        # Validate before any narrowing cast (int8 would wrap 255 to -1).
        if raw.size and not np.all((raw == 1) | (raw == -1)):
            raise ValueError("every ClockedWave sample must be -1 or +1")
        arr = raw.astype(np.int8)
        arr.setflags(write=False)
        self._samples = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "ClockedWave":
        # Trusted constructor for arrays already known to be bipolar int8.
        wave = object.__new__(cls)
        arr.setflags(write=False)
        wave._samples = arr
        return wave

    @classmethod
    def all_ones(cls, length: int) -> "ClockedWave":
        return cls._wrap(np.ones(length, dtype=np.int8))

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    def __len__(self) -> int:
        return self._samples.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClockedWave):
            return NotImplemented
        return np.array_equal(self._samples, other._samples)

    def __hash__(self) -> int:
        return hash((ClockedWave, self._samples.tobytes()))

    def __neg__(self) -> "ClockedWave":
        return ClockedWave._wrap(-self._samples)

    def __mul__(self, other: "ClockedWave") -> "ClockedWave":
        return multiply(self, other)

    def __repr__(self) -> str:
        return f"ClockedWave(K={len(self)})"


class IntegerWave:
    """Immutable integer-valued waveform (sums of clocked waves)."""

    __slots__ = ("_samples",)

    def __init__(self, samples: Iterable[int]):
        arr = np.asarray(samples)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if arr.size == 0:
            arr = np.zeros(0, dtype=np.int64)
        elif arr.dtype == object:
            arr = arr.copy()
            if not all(isinstance(s, (int, np.integer)) for s in arr):
                raise ValueError("samples must be integers")
        elif np.issubdtype(arr.dtype, np.integer):
            arr = arr.astype(np.int64)
        else:
            raise ValueError(f"samples must be integers, got dtype {arr.dtype}")
        arr.setflags(write=False)
        self._samples = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "IntegerWave":
        wave = object.__new__(cls)
        arr.setflags(write=False)
        wave._samples = arr
        return wave

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    def __len__(self) -> int:
        return self._samples.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerWave):
            return NotImplemented
        return len(self) == len(other) and bool(np.all(self._samples == other._samples))

    def __hash__(self) -> int:
        return hash((IntegerWave, tuple(int(s) for s in self._samples)))

    def __repr__(self) -> str:
        return f"IntegerWave(K={len(self)})"


def generate_rtw(seed: SeedSpec, clocks: int) -> ClockedWave:
    """Generate a random telegraph wave of *clocks* fair ±1 samples.

    Bit-reproducible for equal (seed, clocks); a shorter call returns a
    prefix of a longer call with the same seed.
    """
    if clocks < 0:
        raise ValueError("clock count must be non-negative")
    bits = seed.bits(clocks)
    samples = (2 * bits.astype(np.int8) - 1)
    return ClockedWave._wrap(samples)


class ReferenceSystem:
    """The 2N independent reference waves {L_r, H_r} for N noise-bits."""

    __slots__ = ("_n_bits", "_clocks", "_l_waves", "_h_waves")

    def __init__(self, l_waves: Sequence[ClockedWave], h_waves: Sequence[ClockedWave], clocks: int):
        if len(l_waves) != len(h_waves):
            raise ValueError("need one L wave and one H wave per bit")
        for wave in (*l_waves, *h_waves):
            if len(wave) != clocks:
                raise ValueError("all reference waves must have the system clock length")
        self._n_bits = len(l_waves)
        self._clocks = clocks
        self._l_waves = tuple(l_waves)
        self._h_waves = tuple(h_waves)

    @property
    def n_bits(self) -> int:
        return self._n_bits

    @property
    def clocks(self) -> int:
        return self._clocks

    def low(self, r: int) -> ClockedWave:
        """L_r for bit index r in 1..N."""
        self._check_bit(r)
        return self._l_waves[r - 1]

    def high(self, r: int) -> ClockedWave:
        """H_r for bit index r in 1..N."""
        self._check_bit(r)
        return self._h_waves[r - 1]

    def wave(self, r: int, role: str) -> ClockedWave:
        if role == "L":
            return self.low(r)
        if role == "H":
            return self.high(r)
        raise ValueError(f"role must be 'L' or 'H', got {role!r}")

    def all_waves(self) -> tuple[ClockedWave, ...]:
        """All 2N waves, L_1..L_N then H_1..H_N."""
        return self._l_waves + self._h_waves

    def _check_bit(self, r: int) -> None:
        if not 1 <= r <= self._n_bits:
            raise ValueError(f"bit index {r} out of range 1..{self._n_bits}")

    def __repr__(self) -> str:
        return f"ReferenceSystem(N={self._n_bits}, K={self._clocks})"


def make_reference_system(master_seed: int, n_bits: int, clocks: int) -> ReferenceSystem:
    """Build the 2N reference waves from distinct substreams of one seed."""
    if n_bits < 0:
        raise ValueError("bit count must be non-negative")
    root = SeedSpec(master_seed)
    l_waves = [generate_rtw(root.child("bit", r, "L"), clocks) for r in range(1, n_bits + 1)]
    h_waves = [generate_rtw(root.child("bit", r, "H"), clocks) for r in range(1, n_bits + 1)]
    return ReferenceSystem(l_waves, h_waves, clocks)


def multiply(a: ClockedWave, b: ClockedWave) -> ClockedWave:
    """Samplewise product of two equal-length waves (again bipolar)."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return ClockedWave._wrap(a.samples * b.samples)


def time_average_product(a: ClockedWave, b: ClockedWave) -> float:
    """(1/K)·Σ a(t)b(t); exactly 1.0 for identical waves, -1.0 for a and -a."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise ValueError("time average undefined for empty waves")
    total = int(np.dot(a.samples.astype(np.int64), b.samples.astype(np.int64)))
    return total / len(a)


def save_wave_file(path, wave: ClockedWave) -> None:
    """Write one "+1"/"-1" line per sample, newline-terminated."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for sample in wave.samples:
            fh.write("+1\n" if sample == 1 else "-1\n")


def load_wave_file(path) -> ClockedWave:
    """Read a wave file written by :func:`save_wave_file`."""
    samples = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            token = line.strip()
            if token == "+1":
                samples.append(1)
            elif token == "-1":
                samples.append(-1)
            else:
                raise ValueError(f"{path}:{line_no}: expected '+1' or '-1', got {token!r}")
    return ClockedWave(samples)
