"""Compare the compiled and pure evaluation kernels on oracle workloads.

Usage:  python3 benchmarks/bench_backends.py [--max-n 3] [--repeat 3]

The workload is the full correspondence oracle: for each benchmark
inequality, run the rewrite pipeline once, then check the inequality
against its own first-order output on every frame with up to --max-n
worlds.  Frame validity (admissible-valuation enumeration) and
first-order truth both run in the selected kernel, so the comparison
isolates kernel speed from pipeline overhead.
"""

from __future__ import annotations

import argparse
import statistics
import time

from alba import kernels
from alba.engine import run
from alba.fol import simplify, st_quasi
from alba.semantics import correspondence_check
from alba.syntax import parse_inequality

INPUTS = [
    "box p <= p",
    "box p <= box box p",
    "p <= box p",
    "T <= box(box p -> p)",
    "box p /\\ box q <= box(p /\\ q)",
    "box(q -> p) /\\ box q <= p",
]


def prepare():
    jobs = []
    for text in INPUTS:
        ineq = parse_inequality(text)
        result = run(ineq)
        sentences = [simplify(st_quasi(q)) for q in result.quasis]
        jobs.append((text, ineq, sentences))
    return jobs


def time_backend(name: str, jobs, max_n: int, repeat: int) -> list[float]:
    kernels.use(name)
    samples = []
    for _ in range(repeat):
        started = time.perf_counter()
        for _, ineq, sentences in jobs:
            report = correspondence_check(ineq, sentences, max_n=max_n)
            if not report.agree:
                raise AssertionError(f"oracle disagreement under {name}: {report}")
        samples.append(time.perf_counter() - started)
    return samples


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=3, help="largest frame size")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    args = parser.parse_args()

    jobs = prepare()
    print(f"workload: {len(jobs)} inequalities, frames up to {args.max_n} worlds")

    results: dict[str, float] = {}
    for name in kernels.available():
        samples = time_backend(name, jobs, args.max_n, args.repeat)
        best = min(samples)
        results[name] = best
        print(
            f"{name:>9}: best {best * 1000:8.1f} ms   "
            f"median {statistics.median(samples) * 1000:8.1f} ms   "
            f"({args.repeat} runs)"
        )

    if {"pure", "compiled"} <= results.keys():
        print(f"  speedup: compiled is {results['pure'] / results['compiled']:.1f}x faster")


if __name__ == "__main__":
    main()
