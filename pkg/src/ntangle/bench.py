"""Timing and operation-count records for the quadratic and quartic tangles.

Wall times are environment noise; the operation counts are exact formulas:
the quadratic even measure needs 2**(n-1) complex multiplications, the
quartic contraction 3 * 2**(4n). Nothing here asserts absolute speed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import DomainError
from .measures import DEFAULT_WONG_CAP, _tau_even, _wong_tangle
from .state import DEFAULT_MAX_QUBITS, random_state

__all__ = ["BenchRecord", "op_count", "run_bench", "records_to_csv", "CSV_HEADER"]

CSV_HEADER = "n,measure,median_ns,min_ns,op_count"


@dataclass(frozen=True)
class BenchRecord:
    n: int
    measure: str  # quadratic | quartic
    median_ns: int
    min_ns: int
    op_count: int


def op_count(measure: str, n: int) -> int:
    if measure == "quadratic":
        return 1 << (n - 1)
    if measure == "quartic":
        return 3 * (1 << (4 * n))
    raise DomainError(f"unknown bench measure {measure!r}")


def _time_call(fn, repetitions: int) -> tuple[int, int]:
    samples = []
    for _ in range(repetitions):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    samples.sort()
    return samples[len(samples) // 2], samples[0]


def run_bench(ns, measures=("quadratic",), repetitions: int = 5, seed: int = 7,
              oracle_cap: int = DEFAULT_WONG_CAP,
              max_qubits: int = DEFAULT_MAX_QUBITS) -> list:
    """Time the requested measures on seeded random states of each even size."""
    records = []
    for n in ns:
        if n < 2 or n % 2 != 0:
            raise DomainError(f"bench sizes must be even and >= 2, got n={n}")
        if n > max_qubits:
            raise DomainError(f"bench size n={n} exceeds capacity {max_qubits}")
        if "quartic" in measures and n > oracle_cap:
            raise DomainError(
                f"quartic bench at n={n} exceeds the oracle cap of {oracle_cap}"
            )
        psi = random_state(n, seed + n, max_qubits=max_qubits)
        for measure in measures:
            if measure == "quadratic":
                median_ns, min_ns = _time_call(lambda: _tau_even(psi.amps, psi.n), repetitions)
            elif measure == "quartic":
                median_ns, min_ns = _time_call(lambda: _wong_tangle(psi.amps, psi.n), repetitions)
            else:
                raise DomainError(f"unknown bench measure {measure!r}")
            records.append(BenchRecord(n=n, measure=measure, median_ns=median_ns,
                                       min_ns=min_ns, op_count=op_count(measure, n)))
    return records


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(f"{r.n},{r.measure},{r.median_ns},{r.min_ns},{r.op_count}")
    return "\n".join(lines) + "\n"


def records_to_text(records) -> str:
    lines = [f"{'n':>4} {'measure':<10} {'median':>12} {'min':>12} {'op_count':>16}"]
    for r in records:
        lines.append(
            f"{r.n:>4} {r.measure:<10} {r.median_ns / 1e6:>10.3f}ms {r.min_ns / 1e6:>10.3f}ms"
            f" {r.op_count:>16}"
        )
    by_kind = {}
    for r in records:
        by_kind.setdefault(r.n, {})[r.measure] = r.op_count
    for n, kinds in sorted(by_kind.items()):
        if {"quadratic", "quartic"} <= kinds.keys():
            lines.append(f"op-count ratio at n={n}: quartic/quadratic ="
                         f" {kinds['quartic'] // kinds['quadratic']}")
    return "\n".join(lines) + "\n"
