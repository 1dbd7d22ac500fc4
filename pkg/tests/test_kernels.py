import os
import subprocess
import sys
from collections import Counter
from itertools import permutations

import numpy as np
import pytest
from scipy.stats import chisquare

from configprob import _backend
from configprob._backend import compiled_kernels, python_kernels

BACKENDS = [python_kernels] + ([compiled_kernels] if compiled_kernels is not None else [])
needs_compiled = pytest.mark.skipif(compiled_kernels is None, reason="extension not built")

# Reference SplitMix64 outputs for seed 1234567 (Vigna's splitmix64.c)
SPLITMIX_1234567 = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]


@pytest.mark.parametrize("k", BACKENDS, ids=lambda k: k.BACKEND)
def test_splitmix_reference_vector(k):
    assert k.random_u64(1234567, 5) == SPLITMIX_1234567


@pytest.mark.parametrize("k", BACKENDS, ids=lambda k: k.BACKEND)
def test_shuffle_is_permutation(k):
    stubs = np.repeat(np.arange(5), [3, 0, 2, 4, 1])
    for seed in range(50):
        out = k.shuffle_stubs(stubs, seed)
        assert sorted(out.tolist()) == sorted(stubs.tolist())
    assert k.shuffle_stubs(np.array([], dtype=np.int64), 1).size == 0


@pytest.mark.parametrize("k", BACKENDS, ids=lambda k: k.BACKEND)
def test_shuffle_uniform_over_permutations(k):
    items = np.arange(4)
    trials = 24_000
    batch = k.shuffled_batch(items, 99, 0, trials)
    counts = Counter(map(tuple, batch.tolist()))
    assert set(counts) == set(permutations(range(4)))
    assert chisquare(list(counts.values())).pvalue > 1e-4


@needs_compiled
def test_backends_agree():
    stubs = np.repeat(np.arange(6), [2, 3, 1, 1, 4, 1])
    for seed in (0, 1, 2**63 + 5, 2**64 - 1):
        assert python_kernels.child_seed(seed, 17) == compiled_kernels.child_seed(seed, 17)
        assert np.array_equal(python_kernels.shuffle_stubs(stubs, seed),
                              compiled_kernels.shuffle_stubs(stubs, seed))
        assert np.array_equal(python_kernels.shuffled_batch(stubs, seed, 3, 40),
                              compiled_kernels.shuffled_batch(stubs, seed, 3, 40))
        for m, n in [(0, 1), (4, 4), (1, 4)]:
            assert (python_kernels.count_pair_events(stubs, m, n, seed, 0, 500)
                    == compiled_kernels.count_pair_events(stubs, m, n, seed, 0, 500))
    outs = np.repeat(np.arange(4), [2, 1, 0, 3])
    ins = np.repeat(np.arange(4), [1, 1, 3, 1])
    for m, n in [(0, 2), (3, 3), (2, 0)]:
        assert (python_kernels.count_directed_events(outs, ins, m, n, 8, 10, 600)
                == compiled_kernels.count_directed_events(outs, ins, m, n, 8, 10, 600))
        assert (python_kernels.oracle_directed(outs, ins, m, n)
                == compiled_kernels.oracle_directed(outs, ins, m, n))
    for m, n in [(0, 1), (4, 4), (2, 3)]:
        assert python_kernels.oracle_pair(stubs, m, n) == compiled_kernels.oracle_pair(stubs, m, n)


@pytest.mark.parametrize("k", BACKENDS, ids=lambda k: k.BACKEND)
def test_batch_rows_replay_child_seeds(k):
    stubs = np.repeat(np.arange(3), [2, 2, 2])
    batch = k.shuffled_batch(stubs, 5, 10, 20)
    for row, t in zip(batch, range(10, 20)):
        assert np.array_equal(row, k.shuffle_stubs(stubs, k.child_seed(5, t)))


def test_oracle_falls_back_beyond_compiled_limit():
    # 36 stubs overflow the compiled counters; event decided at the first stub
    stubs = np.array([0] + [1] * 35)
    fav, total = _backend.oracle_pair(stubs, 0, 1)
    assert fav == total == 35 * 33 * 31 * 29 * 27 * 25 * 23 * 21 * 19 * 17 * 15 * 13 * 11 * 9 * 7 * 5 * 3


def test_pure_python_switch_gives_same_answers():
    script = (
        "import configprob as c\n"
        "s = c.validate_undirected([3, 2, 2, 1])\n"
        "print(c.BACKEND)\n"
        "print(c.estimate_connection_probability(s, 0, 1, 3000, seed=4).successes)\n"
        "print(c.sample_configuration(s, 9).edge_list())\n"
        "print(c.exact_self_loop_probability(s, 0).probability)\n"
    )
    env = dict(os.environ, CONFIGPROB_PURE_PYTHON="1")
    pure = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    env.pop("CONFIGPROB_PURE_PYTHON")
    default = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    assert pure.stdout.splitlines()[0] == "python"
    assert pure.stdout.splitlines()[1:] == default.stdout.splitlines()[1:]
