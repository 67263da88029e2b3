"""Named, seed-deterministic experiments with CSV/JSON report emission.

Every report (minus the wall-time field) is a pure function of its
ExperimentConfig: records are assembled in canonical order and floats are
serialized with shortest round-trip repr, so reruns are byte-identical.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field

from ._version import __version__
from .hyperspace import OpCounter, expand_universe, realize_superposition, synthesize_universe
from .readout import count_failures, stacho_clock_bound, timeshifted_readout_steps
from .rtw import SeedSpec, generate_rtw, make_reference_system, time_average_product
from .sinus import (
    EXPONENTIAL,
    LINEAR,
    SinusRepresentation,
    find_degeneracies,
    max_system_frequency,
    readout_sample_count,
    value_frequency,
)

__all__ = [
    "DEFAULT_MASTER_SEED",
    "SCHEMA_VERSION",
    "UNIVERSE_CHECK_CAP",
    "SINUS_COMPARISON_CAP",
    "ExperimentConfig",
    "ExperimentReport",
    "run_orthogonality",
    "run_universe_check",
    "run_readout_scaling",
    "run_sinus_comparison",
    "run_bounds_table",
    "EXPERIMENTS",
]

DEFAULT_MASTER_SEED = 0xD1CEBA5E
SCHEMA_VERSION = 1
UNIVERSE_CHECK_CAP = 12
SINUS_COMPARISON_CAP = 16

_KIND_ORDER = {LINEAR: 0, EXPONENTIAL: 1}


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of one experiment run; reports echo it verbatim."""

    experiment: str
    bits: tuple[int, ...] = ()
    clocks: tuple[int, ...] = ()
    trials: int = 100
    master_seed: int = DEFAULT_MASTER_SEED
    epsilons: tuple[float, ...] = (0.0,)
    p_targets: tuple[float, ...] = (0.001,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(int(n) for n in self.bits))
        object.__setattr__(self, "clocks", tuple(int(k) for k in self.clocks))
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "p_targets", tuple(float(p) for p in self.p_targets))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if any(n < 0 for n in self.bits):
            raise ValueError("bit counts must be non-negative")
        if any(k < 0 for k in self.clocks):
            raise ValueError("clock counts must be non-negative")

    def echo(self) -> dict:
        return {
            "experiment": self.experiment,
            "bits": list(self.bits),
            "clocks": list(self.clocks),
            "trials": self.trials,
            "master_seed": self.master_seed,
            "epsilons": list(self.epsilons),
            "p_targets": list(self.p_targets),
        }


@dataclass
class ExperimentReport:
    """Experiment output: canonical records plus provenance."""

    experiment: str
    config: dict
    columns: list[str]
    records: list[dict]
    summary: dict = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION
    wall_time_s: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "experiment": self.experiment,
            "config": self.config,
            "columns": self.columns,
            "records": self.records,
            "summary": self.summary,
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        """Records table only; provenance columns are part of the records.

        UTF-8, comma-separated, header row, LF line endings.  The column
        list may be a projection of the record keys (the JSON form always
        carries every key)."""
        lines = [",".join(self.columns)]
        for record in self.records:
            lines.append(",".join(_csv_cell(record[c]) for c in self.columns))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _report(config: ExperimentConfig, columns: list[str], records: list[dict],
            summary: dict, started: float) -> ExperimentReport:
    return ExperimentReport(
        experiment=config.experiment,
        config=config.echo(),
        columns=columns,
        records=records,
        summary=summary,
        wall_time_s=time.perf_counter() - started,
    )


def run_orthogonality(config: ExperimentConfig) -> ExperimentReport:
    """Finite-clock convergence of the cross-correlation of independent waves.

    For each clock count K: median and max |time-average product| over
    *trials* independent wave pairs, next to the 4/sqrt(K) reference bound
    and an identical-wave self check (always exactly 1.0).
    """
    started = time.perf_counter()
    if not config.clocks:
        raise ValueError("orthogonality requires at least one clock count")
    if any(k < 1 for k in config.clocks):
        raise ValueError("orthogonality requires clock counts >= 1")
    root = SeedSpec(config.master_seed)
    records = []
    for clocks in sorted(config.clocks):
        values = []
        self_check = None
        for pair in range(config.trials):
            a = generate_rtw(root.child("pair", pair, 0), clocks)
            b = generate_rtw(root.child("pair", pair, 1), clocks)
            values.append(abs(time_average_product(a, b)))
            if self_check is None:
                self_check = time_average_product(a, a)
        records.append({
            "K": clocks,
            "pairs": config.trials,
            "median_abs": float(statistics.median(values)),
            "max_abs": max(values),
            "bound": 4.0 / clocks**0.5,
            "identical_check": self_check,
            "master_seed": config.master_seed,
        })
    columns = ["K", "pairs", "median_abs", "max_abs", "bound", "identical_check", "master_seed"]
    return _report(config, columns, records, {"points": len(records)}, started)


def run_universe_check(config: ExperimentConfig) -> ExperimentReport:
    """Product-form universe synthesis vs the expanded-sum oracle, with
    instrumented per-clock operation counts for both paths."""
    started = time.perf_counter()
    if any(n > UNIVERSE_CHECK_CAP for n in config.bits):
        raise ValueError(f"universe check: bit count exceeds cap {UNIVERSE_CHECK_CAP}")
    if len(config.clocks) != 1:
        raise ValueError("universe check takes exactly one clock count")
    clocks = config.clocks[0]
    if clocks < 1:
        raise ValueError("universe check requires clocks >= 1")
    records = []
    for n_bits in sorted(config.bits):
        refsys = make_reference_system(config.master_seed, n_bits, clocks)
        direct_ops = OpCounter()
        direct = synthesize_universe(refsys, direct_ops)
        oracle_ops = OpCounter()
        oracle = realize_superposition(expand_universe(n_bits), refsys, oracle_ops)
        direct_total = direct_ops.additions + direct_ops.multiplications
        oracle_total = oracle_ops.additions + oracle_ops.multiplications
        records.append({
            "N": n_bits,
            "K": clocks,
            "equal": direct == oracle,
            "direct_adds_per_clock": direct_ops.additions // clocks,
            "direct_muls_per_clock": direct_ops.multiplications // clocks,
            "oracle_adds_per_clock": oracle_ops.additions // clocks,
            "oracle_muls_per_clock": oracle_ops.multiplications // clocks,
            "op_ratio": oracle_total / direct_total if direct_total else 1.0,
            "master_seed": config.master_seed,
        })
    columns = ["N", "K", "equal", "direct_adds_per_clock", "direct_muls_per_clock",
               "oracle_adds_per_clock", "oracle_muls_per_clock", "op_ratio", "master_seed"]
    summary = {"all_equal": all(r["equal"] for r in records)}
    return _report(config, columns, records, summary, started)


def run_readout_scaling(config: ExperimentConfig) -> ExperimentReport:
    """Monte Carlo failure rate of the fast readout over an (N, K) grid.

    The CSV projection carries the canonical sweep columns; the JSON
    records additionally hold the 2^-(K-N) reference rate."""
    started = time.perf_counter()
    if not config.bits or not config.clocks:
        raise ValueError("readout scaling requires bit and clock counts")
    records = []
    for n_bits in sorted(config.bits):
        for clocks in sorted(config.clocks):
            failures = count_failures(n_bits, clocks, config.trials, config.master_seed)
            records.append({
                "N": n_bits,
                "K": clocks,
                "trials": config.trials,
                "failures": failures,
                "rate": failures / config.trials,
                "master_seed": config.master_seed,
                "ref_rate": 2.0 ** (n_bits - clocks),
            })
    columns = ["N", "K", "trials", "failures", "rate", "master_seed"]
    return _report(config, columns, records, {"grid_points": len(records)}, started)


def run_sinus_comparison(config: ExperimentConfig) -> ExperimentReport:
    """Bandwidth and degeneracy of the two harmonic representations per N,
    with the per-bit frequency assignment table embedded in the summary."""
    started = time.perf_counter()
    if not config.bits:
        raise ValueError("sinus comparison requires at least one bit count")
    if any(n > SINUS_COMPARISON_CAP for n in config.bits):
        raise ValueError(f"sinus comparison: bit count exceeds cap {SINUS_COMPARISON_CAP}")
    records = []
    for n_bits in sorted(config.bits):
        for kind in (LINEAR, EXPONENTIAL):
            rep = SinusRepresentation(kind, n_bits)
            report = find_degeneracies(rep)
            records.append({
                "kind": kind,
                "N": n_bits,
                "f_max": max_system_frequency(rep),
                "samples": readout_sample_count(rep),
                "degeneracy_groups": len(report.groups),
                "collided_strings": report.total_collided,
            })
    records.sort(key=lambda r: (r["N"], _KIND_ORDER[r["kind"]]))
    max_bits = max(config.bits)
    table = [
        {
            "r": r,
            "linear_L": value_frequency(SinusRepresentation(LINEAR, max_bits), r, "L"),
            "linear_H": value_frequency(SinusRepresentation(LINEAR, max_bits), r, "H"),
            "exponential_L": value_frequency(SinusRepresentation(EXPONENTIAL, max_bits), r, "L"),
            "exponential_H": value_frequency(SinusRepresentation(EXPONENTIAL, max_bits), r, "H"),
        }
        for r in range(1, max_bits + 1)
    ]
    columns = ["kind", "N", "f_max", "samples", "degeneracy_groups", "collided_strings"]
    return _report(config, columns, records, {"frequency_table": table}, started)


def run_bounds_table(config: ExperimentConfig) -> ExperimentReport:
    """Closed-form clock-budget calculators across (N, epsilon, P) grids."""
    started = time.perf_counter()
    if not config.bits:
        raise ValueError("bounds table requires at least one bit count")
    if any(n < 2 for n in config.bits):
        raise ValueError("bounds table requires bit counts >= 2")
    records = []
    for n_bits in sorted(config.bits):
        for epsilon in config.epsilons:
            for p_target in config.p_targets:
                records.append({
                    "N": n_bits,
                    "epsilon": epsilon,
                    "stacho_bound": stacho_clock_bound(n_bits, epsilon),
                    "p_target": p_target,
                    "timeshifted_steps": timeshifted_readout_steps(n_bits, p_target),
                })
    columns = ["N", "epsilon", "stacho_bound", "p_target", "timeshifted_steps"]
    return _report(config, columns, records, {"points": len(records)}, started)


EXPERIMENTS = {
    "orthogonality": run_orthogonality,
    "universe-check": run_universe_check,
    "readout-scaling": run_readout_scaling,
    "sinus-comparison": run_sinus_comparison,
    "bounds-table": run_bounds_table,
}
