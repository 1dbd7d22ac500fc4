# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Must match ``_kernels_py`` output exactly for every input."""
import numpy as np

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

BACKEND = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t C1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t C2 = 0x94D049BB133111EBULL
MASK = 0xFFFFFFFFFFFFFFFF

# uint64 counters overflow beyond these sizes; the dispatcher falls back to Python ints
cdef enum:
    PAIR_LIMIT = 34
    DIRECTED_LIMIT = 20

MAX_PAIR_STUBS = PAIR_LIMIT
MAX_DIRECTED_STUBS = DIRECTED_LIMIT


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * C1
    z = (z ^ (z >> 27)) * C2
    return z ^ (z >> 31)


cdef inline uint64_t _child(uint64_t seed, uint64_t index) noexcept nogil:
    return _mix64(_mix64(seed) + (index + 1) * GOLDEN)


cdef uint64_t _shuffle(int64_t* items, Py_ssize_t size, uint64_t state) noexcept nogil:
    cdef Py_ssize_t i
    cdef uint64_t bound, threshold, r, j
    cdef int64_t tmp
    i = size - 1
    while i > 0:
        bound = <uint64_t>(i + 1)
        threshold = (0 - bound) % bound
        while True:
            state = state + GOLDEN
            r = _mix64(state)
            if r >= threshold:
                break
        j = r % bound
        tmp = items[i]
        items[i] = items[j]
        items[j] = tmp
        i -= 1
    return state


def mix64(z):
    return _mix64(<uint64_t>(z & MASK))


def child_seed(seed, index):
    return _child(<uint64_t>(seed & MASK), <uint64_t>(index & MASK))


def random_u64(seed, Py_ssize_t count):
    cdef uint64_t state = <uint64_t>(seed & MASK)
    out = []
    for _ in range(count):
        state = state + GOLDEN
        out.append(_mix64(state))
    return out


def shuffle_stubs(stubs, seed):
    cdef int64_t[::1] items = np.ascontiguousarray(stubs, dtype=np.int64).copy()
    if items.shape[0] > 1:
        _shuffle(&items[0], items.shape[0], <uint64_t>(seed & MASK))
    return np.asarray(items)


def shuffled_batch(stubs, seed, Py_ssize_t start, Py_ssize_t stop):
    cdef const int64_t[::1] base = np.ascontiguousarray(stubs, dtype=np.int64)
    cdef Py_ssize_t size = base.shape[0]
    cdef Py_ssize_t rows = max(stop - start, 0)
    out_arr = np.empty((rows, size), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    cdef uint64_t s = <uint64_t>(seed & MASK)
    cdef Py_ssize_t row
    if size == 0 or rows == 0:
        return out_arr
    with nogil:
        for row in range(rows):
            memcpy(&out[row, 0], &base[0], size * sizeof(int64_t))
            _shuffle(&out[row, 0], size, _child(s, <uint64_t>(start + row)))
    return out_arr


def count_pair_events(stubs, int64_t m, int64_t n, seed, Py_ssize_t start, Py_ssize_t stop):
    cdef const int64_t[::1] base = np.ascontiguousarray(stubs, dtype=np.int64)
    cdef Py_ssize_t size = base.shape[0]
    cdef uint64_t s = <uint64_t>(seed & MASK)
    cdef Py_ssize_t t, i
    cdef int64_t a, b
    cdef long long hits = 0
    cdef int64_t* work
    if size == 0 or stop <= start:
        return 0
    work = <int64_t*>malloc(size * sizeof(int64_t))
    if work == NULL:
        raise MemoryError()
    with nogil:
        for t in range(start, stop):
            memcpy(work, &base[0], size * sizeof(int64_t))
            _shuffle(work, size, _child(s, <uint64_t>t))
            i = 0
            while i + 1 < size:
                a = work[i]
                b = work[i + 1]
                if (a == m and b == n) or (a == n and b == m):
                    hits += 1
                    break
                i += 2
    free(work)
    return hits


def count_directed_events(out_stubs, in_stubs, int64_t m, int64_t n, seed,
                          Py_ssize_t start, Py_ssize_t stop):
    cdef const int64_t[::1] outs = np.ascontiguousarray(out_stubs, dtype=np.int64)
    cdef const int64_t[::1] base = np.ascontiguousarray(in_stubs, dtype=np.int64)
    cdef Py_ssize_t size = base.shape[0]
    cdef uint64_t s = <uint64_t>(seed & MASK)
    cdef Py_ssize_t t, i
    cdef long long hits = 0
    cdef int64_t* work
    if size == 0 or stop <= start:
        return 0
    work = <int64_t*>malloc(size * sizeof(int64_t))
    if work == NULL:
        raise MemoryError()
    with nogil:
        for t in range(start, stop):
            memcpy(work, &base[0], size * sizeof(int64_t))
            _shuffle(work, size, _child(s, <uint64_t>t))
            for i in range(size):
                if outs[i] == m and work[i] == n:
                    hits += 1
                    break
    free(work)
    return hits


cdef uint64_t _rec_pair(const int64_t* owners, char* used, Py_ssize_t size,
                        Py_ssize_t lo, Py_ssize_t remaining, int64_t m, int64_t n,
                        const uint64_t* completions) noexcept nogil:
    cdef Py_ssize_t j
    cdef int64_t a, b
    cdef uint64_t fav = 0
    if remaining == 0:
        return 0
    while used[lo]:
        lo += 1
    used[lo] = 1
    a = owners[lo]
    for j in range(lo + 1, size):
        if used[j]:
            continue
        b = owners[j]
        if (a == m and b == n) or (a == n and b == m):
            fav += completions[remaining - 2]
        else:
            used[j] = 1
            fav += _rec_pair(owners, used, size, lo + 1, remaining - 2, m, n, completions)
            used[j] = 0
    used[lo] = 0
    return fav


def oracle_pair(stubs, int64_t m, int64_t n):
    cdef const int64_t[::1] owners = np.ascontiguousarray(stubs, dtype=np.int64)
    cdef Py_ssize_t size = owners.shape[0]
    cdef uint64_t completions[PAIR_LIMIT + 1]
    cdef char used[PAIR_LIMIT]
    cdef Py_ssize_t r
    cdef uint64_t fav
    if size > PAIR_LIMIT:
        raise OverflowError(f"{size} stubs exceed the compiled enumeration limit")
    completions[0] = 1
    for r in range(1, size + 1):
        completions[r] = completions[r - 2] * (r - 1) if r % 2 == 0 else 0
    if size == 0:
        return 0, 1
    memset(used, 0, PAIR_LIMIT)
    with nogil:
        fav = _rec_pair(&owners[0], used, size, 0, size, m, n, completions)
    return int(fav), int(completions[size])


cdef uint64_t _rec_directed(const int64_t* outs, const int64_t* ins, char* used,
                            Py_ssize_t size, Py_ssize_t k, int64_t m, int64_t n,
                            const uint64_t* fact) noexcept nogil:
    cdef Py_ssize_t j
    cdef int64_t a
    cdef uint64_t fav = 0
    if k == size:
        return 0
    a = outs[k]
    for j in range(size):
        if used[j]:
            continue
        if a == m and ins[j] == n:
            fav += fact[size - k - 1]
        else:
            used[j] = 1
            fav += _rec_directed(outs, ins, used, size, k + 1, m, n, fact)
            used[j] = 0
    return fav


def oracle_directed(out_stubs, in_stubs, int64_t m, int64_t n):
    cdef const int64_t[::1] outs = np.ascontiguousarray(out_stubs, dtype=np.int64)
    cdef const int64_t[::1] ins = np.ascontiguousarray(in_stubs, dtype=np.int64)
    cdef Py_ssize_t size = outs.shape[0]
    cdef uint64_t fact[DIRECTED_LIMIT + 1]
    cdef char used[DIRECTED_LIMIT]
    cdef Py_ssize_t r
    cdef uint64_t fav
    if size > DIRECTED_LIMIT:
        raise OverflowError(f"{size} stubs exceed the compiled enumeration limit")
    fact[0] = 1
    for r in range(1, size + 1):
        fact[r] = fact[r - 1] * r
    if size == 0:
        return 0, 1
    memset(used, 0, DIRECTED_LIMIT)
    with nogil:
        fav = _rec_directed(&outs[0], &ins[0], used, size, 0, m, n, fact)
    return int(fav), int(fact[size])
