"""Pure-Python kernels. Reference behaviour for the compiled ``_kernels`` module.

Random numbers come from SplitMix64; bounded draws use rejection on the low
end so every index is exactly equiprobable. The compiled module reproduces
these streams bit for bit.
"""
import numpy as np

MASK = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
_C1 = 0xBF58476D1CE4E5B9
_C2 = 0x94D049BB133111EB

BACKEND = "python"


def mix64(z):
    z = ((z ^ (z >> 30)) * _C1) & MASK
    z = ((z ^ (z >> 27)) * _C2) & MASK
    return z ^ (z >> 31)


def child_seed(seed, index):
    """Seed of stream ``index`` derived from ``seed``: mix64(mix64(seed) + (index+1)*GOLDEN)."""
    return mix64((mix64(seed & MASK) + (index + 1) * GOLDEN) & MASK)


def random_u64(seed, count):
    """First ``count`` outputs of SplitMix64 started at ``seed``."""
    state = seed & MASK
    out = []
    for _ in range(count):
        state = (state + GOLDEN) & MASK
        out.append(mix64(state))
    return out


def _shuffle(items, state):
    # Fisher-Yates, descending; returns the advanced generator state
    for i in range(len(items) - 1, 0, -1):
        bound = i + 1
        threshold = (MASK + 1 - bound) % bound
        while True:
            state = (state + GOLDEN) & MASK
            r = mix64(state)
            if r >= threshold:
                break
        j = r % bound
        items[i], items[j] = items[j], items[i]
    return state


def shuffle_stubs(stubs, seed):
    items = [int(s) for s in stubs]
    _shuffle(items, seed & MASK)
    return np.array(items, dtype=np.int64)


def shuffled_batch(stubs, seed, start, stop):
    base = [int(s) for s in stubs]
    out = np.empty((max(stop - start, 0), len(base)), dtype=np.int64)
    for row, t in enumerate(range(start, stop)):
        items = list(base)
        _shuffle(items, child_seed(seed, t))
        out[row] = items
    return out


def count_pair_events(stubs, m, n, seed, start, stop):
    """Trials in [start, stop) whose stub matching pairs a stub of m with one of n.

    ``m == n`` counts self-loops at m.
    """
    base = [int(s) for s in stubs]
    hits = 0
    for t in range(start, stop):
        items = list(base)
        _shuffle(items, child_seed(seed, t))
        for i in range(0, len(items) - 1, 2):
            a, b = items[i], items[i + 1]
            if (a == m and b == n) or (a == n and b == m):
                hits += 1
                break
    return hits


def count_directed_events(out_stubs, in_stubs, m, n, seed, start, stop):
    """Trials in [start, stop) whose out->in bijection contains an edge m->n."""
    outs = [int(s) for s in out_stubs]
    base = [int(s) for s in in_stubs]
    hits = 0
    for t in range(start, stop):
        items = list(base)
        _shuffle(items, child_seed(seed, t))
        for a, b in zip(outs, items):
            if a == m and b == n:
                hits += 1
                break
    return hits


def _double_factorials(size):
    # table[r] = (r-1)!! for even r: number of perfect matchings of r stubs
    table = [1] * (size + 1)
    for r in range(2, size + 1, 2):
        table[r] = table[r - 2] * (r - 1)
    return table


def oracle_pair(stubs, m, n):
    """(favorable, total) over all perfect matchings of the labelled stubs."""
    owners = [int(s) for s in stubs]
    size = len(owners)
    used = [False] * size
    completions = _double_factorials(size)

    def rec(lo, remaining):
        if remaining == 0:
            return 0
        while used[lo]:
            lo += 1
        used[lo] = True
        a = owners[lo]
        fav = 0
        for j in range(lo + 1, size):
            if used[j]:
                continue
            b = owners[j]
            if (a == m and b == n) or (a == n and b == m):
                fav += completions[remaining - 2]
            else:
                used[j] = True
                fav += rec(lo + 1, remaining - 2)
                used[j] = False
        used[lo] = False
        return fav

    return rec(0, size), completions[size]


def oracle_directed(out_stubs, in_stubs, m, n):
    """(favorable, total) over all bijections from out-stubs to in-stubs."""
    outs = [int(s) for s in out_stubs]
    ins = [int(s) for s in in_stubs]
    size = len(outs)
    used = [False] * size
    fact = [1] * (size + 1)
    for r in range(1, size + 1):
        fact[r] = fact[r - 1] * r

    def rec(k):
        if k == size:
            return 0
        a = outs[k]
        fav = 0
        for j in range(size):
            if used[j]:
                continue
            if a == m and ins[j] == n:
                fav += fact[size - k - 1]
            else:
                used[j] = True
                fav += rec(k + 1)
                used[j] = False
        return fav

    return rec(0), fact[size]
