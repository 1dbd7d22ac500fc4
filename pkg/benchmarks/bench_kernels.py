"""Time the compiled kernels against the pure-Python reference.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends are run on identical inputs and their outputs compared before
any timing is reported.
"""
import argparse
import time

import numpy as np

from configprob._backend import compiled_kernels, python_kernels
from configprob.degrees import DegreeDistributionSpec, sample_degree_sequence, validate_directed, validate_undirected


def cases():
    small = validate_undirected([2, 2, 1, 1]).stubs()
    dense = validate_undirected([3, 3, 2, 2, 1, 1]).stubs()
    big = sample_degree_sequence(DegreeDistributionSpec.power_law(2.5, 1, 100), 1000, seed=0).stubs()
    d = validate_directed([2, 1, 2, 1, 1], [1, 2, 1, 2, 1])
    outs, ins = d.out_stubs(), d.in_stubs()
    return [
        ("mc pair [2,2,1,1] x 20k", lambda k: k.count_pair_events(small, 0, 1, 1, 0, 20_000)),
        ("mc directed L=7 x 20k", lambda k: k.count_directed_events(outs, ins, 0, 1, 1, 0, 20_000)),
        ("shuffle N=1000 power law x 200", lambda k: k.shuffled_batch(big, 3, 0, 200).sum()),
        ("oracle pair 2L=12", lambda k: k.oracle_pair(dense, 2, 3)),
        ("oracle directed L=7", lambda k: k.oracle_directed(outs, ins, 0, 1)),
    ]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if compiled_kernels is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"{'kernel':34s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, run in cases():
        assert np.all(run(python_kernels) == run(compiled_kernels)), name
        py = best_time(lambda: run(python_kernels), args.repeat)
        cy = best_time(lambda: run(compiled_kernels), args.repeat)
        print(f"{name:34s} {py:11.4f} {cy:11.5f} {py / cy:7.0f}x")


if __name__ == "__main__":
    main()
