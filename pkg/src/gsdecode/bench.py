"""Seeded Monte-Carlo benchmark harness.

Every trial draws a random message, corrupts a fixed number of positions
with nonzero error values, decodes with the requested algorithms, and
records timing plus interpolation counters.  Instances are derived
deterministically from (seed, trial), so two runs with the same seed are
identical except for wall-clock columns.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .field import COEFF_DTYPE, GF2m, DEFAULT_PRIMITIVE_POLY
from .unipoly import UniPoly, _trim
from .decoder import ALGORITHMS, CodeSpec, list_decode
from .interpolation import InterpolationStats, RngStream, interpolate, reencode_interpolate
from .modulebasis import InterpPoints

BENCH_CSV_HEADER = (
    "algorithm,n,k,r,trial,seed,wall_time,"
    "merge_random_iterations,reduce_steps,list_size,success"
)
ITERHIST_CSV_HEADER = "r,extra_iterations,count"


@dataclass(frozen=True)
class BenchConfig:
    n: int
    k: int
    m: int
    r_list: tuple[int, ...]
    algorithms: tuple[str, ...] = ("binary",)
    trials: int = 10
    seed: int = 1
    error_weight: int | None = None  # default: decoding radius n - tau
    primitive_poly: int | None = None
    out: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.error_weight is not None and self.error_weight > self.n:
            raise ValueError("error weight cannot exceed the code length")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")


@dataclass
class BenchRecord:
    algorithm: str
    n: int
    k: int
    r: int
    trial: int
    seed: int
    wall_time: float
    merge_random_iterations: int
    reduce_steps: int
    list_size: int
    success: bool

    def csv_row(self) -> str:
        return (
            f"{self.algorithm},{self.n},{self.k},{self.r},{self.trial},{self.seed},"
            f"{self.wall_time:.6f},{self.merge_random_iterations},{self.reduce_steps},"
            f"{self.list_size},{int(self.success)}"
        )


def make_code(config: BenchConfig) -> CodeSpec:
    poly = config.primitive_poly
    if poly is None:
        poly = DEFAULT_PRIMITIVE_POLY[config.m]
    return CodeSpec.standard(GF2m(config.m, poly), config.n, config.k)


def random_message(code: CodeSpec, rng: RngStream) -> UniPoly:
    coeffs = np.array(
        [rng.element(code.field) for _ in range(code.k)], dtype=COEFF_DTYPE
    )
    return UniPoly._raw(code.field, _trim(coeffs))


def corrupt(codeword: np.ndarray, weight: int, code: CodeSpec, rng: RngStream) -> np.ndarray:
    """Flip `weight` distinct positions by nonzero error values."""
    received = codeword.copy()
    positions: set[int] = set()
    while len(positions) < weight:
        positions.add(rng.next_u64() % code.n)
    for pos in sorted(positions):
        received[pos] ^= rng.next_u64() % (code.field.q - 1) + 1
    return received


def make_instance(code: CodeSpec, weight: int, seed: int, trial: int):
    """Deterministic (message, received) pair for one trial."""
    inst_rng = RngStream(seed).derive(trial)
    msg = random_message(code, inst_rng)
    received = corrupt(msg.eval_many(code.locators), weight, code, inst_rng)
    return msg, received


def default_error_weight(config: BenchConfig) -> int:
    from .decoder import gs_params

    if config.error_weight is not None:
        return config.error_weight
    tau = min(gs_params(config.n, config.k, r).tau for r in config.r_list)
    return config.n - tau


def run_bench(config: BenchConfig) -> list[BenchRecord]:
    code = make_code(config)
    weight = default_error_weight(config)
    records = []
    for r in config.r_list:
        for trial in range(config.trials):
            msg, received = make_instance(code, weight, config.seed, trial)
            trial_seed = RngStream(config.seed).derive(trial).seed
            for algorithm in config.algorithms:
                start = time.perf_counter()
                result = list_decode(received, code, r, algorithm, seed=trial_seed)
                elapsed = time.perf_counter() - start
                records.append(
                    BenchRecord(
                        algorithm=algorithm,
                        n=config.n,
                        k=config.k,
                        r=r,
                        trial=trial,
                        seed=trial_seed,
                        wall_time=elapsed,
                        merge_random_iterations=result.stats.random_iterations,
                        reduce_steps=result.stats.reduce_steps,
                        list_size=len(result.candidates),
                        success=msg in result.messages,
                    )
                )
    return records


def write_bench_csv(records: list[BenchRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(BENCH_CSV_HEADER + "\n")
        for record in records:
            handle.write(record.csv_row() + "\n")


def merge_stats_for_trials(config: BenchConfig, algorithm: str) -> dict[int, list]:
    """Per-r list of MergeStats for every merge call across all trials."""
    if algorithm not in ("binary", "binary_reencoded"):
        raise ValueError("iteration histograms need a merge-based algorithm")
    code = make_code(config)
    weight = default_error_weight(config)
    calls: dict[int, list] = {r: [] for r in config.r_list}
    for r in config.r_list:
        for trial in range(config.trials):
            _, received = make_instance(code, weight, config.seed, trial)
            pts = InterpPoints(code.field, code.locators, received)
            rng = RngStream(config.seed).derive(trial)
            if algorithm == "binary":
                _, stats = interpolate(pts, r, code.k, rng)
            else:
                _, stats = reencode_interpolate(pts, r, code.k, rng)
            calls[r].extend(stats.merge_calls)
    return calls


def run_iterhist(config: BenchConfig, algorithm: str) -> list[tuple[int, int, int]]:
    """(r, extra_iterations, count) histogram rows over all merge calls."""
    calls = merge_stats_for_trials(config, algorithm)
    rows = []
    for r in config.r_list:
        histogram = Counter(ms.random_iterations for ms in calls[r])
        for extra in sorted(histogram):
            rows.append((r, extra, histogram[extra]))
    return rows


def write_iterhist_csv(rows: list[tuple[int, int, int]], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(ITERHIST_CSV_HEADER + "\n")
        for r, extra, count in rows:
            handle.write(f"{r},{extra},{count}\n")
