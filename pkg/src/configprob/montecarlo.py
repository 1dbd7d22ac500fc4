"""Monte Carlo estimates of connection and self-loop probabilities.

Trial ``t`` is the sample drawn with ``child_seed(seed, t)``, so a run is a
pure function of its arguments and any split of ``range(trials)`` into
batches merges (by integer addition) to the same success count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ._backend import kernels
from .degrees import DegreeSequence, DirectedDegreeSequence
from .errors import InvalidSpec, SameVertex

# two-sided 95% Clopper-Pearson tail used when the normal approximation degenerates
_CP_TAIL = 0.025


@dataclass(frozen=True)
class MonteCarloEstimate:
    event: str
    trials: int
    successes: int

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials

    @property
    def std_error(self) -> float:
        """Normal-approximation standard error.

        With 0 or ``trials`` successes this would be 0, so the distance from
        ``p_hat`` to the far end of the 95% Clopper-Pearson interval,
        ``1 - 0.025**(1/T)``, is reported instead.
        """
        if self.successes in (0, self.trials):
            return 1.0 - _CP_TAIL ** (1.0 / self.trials)
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.trials)

    def merge(self, other: MonteCarloEstimate) -> MonteCarloEstimate:
        if other.event != self.event:
            raise ValueError(f"cannot merge {self.event!r} with {other.event!r}")
        return MonteCarloEstimate(self.event, self.trials + other.trials,
                                  self.successes + other.successes)


def batches(trials: int, batch_size: int):
    """Consecutive ``(start, stop)`` ranges covering ``range(trials)``."""
    return [(lo, min(lo + batch_size, trials)) for lo in range(0, trials, batch_size)]


def _run(count, trials, workers, batch_size):
    if trials < 1:
        raise InvalidSpec(f"trials must be >= 1, got {trials}")
    if workers <= 1:
        return count(0, trials)
    size = batch_size or max(1, -(-trials // (4 * workers)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda r: count(*r), batches(trials, size)))


def count_pair_successes(seq: DegreeSequence, m: int, n: int, seed: int, start: int, stop: int) -> int:
    """Successes among trials ``start..stop-1``; ``m == n`` counts self-loops."""
    return kernels.count_pair_events(seq.stubs(), m, n, seed, start, stop)


def count_directed_successes(dseq: DirectedDegreeSequence, m: int, n: int, seed: int,
                             start: int, stop: int) -> int:
    return kernels.count_directed_events(dseq.out_stubs(), dseq.in_stubs(), m, n, seed, start, stop)


def estimate_connection_probability(seq: DegreeSequence, m: int, n: int, trials: int,
                                    seed: int = 0, workers: int = 1,
                                    batch_size: int | None = None) -> MonteCarloEstimate:
    m = seq.check_vertex(m)
    n = seq.check_vertex(n)
    if m == n:
        raise SameVertex(f"m = n = {m}; use estimate_self_loop_probability")
    stubs = seq.stubs()
    successes = _run(lambda lo, hi: kernels.count_pair_events(stubs, m, n, seed, lo, hi),
                     trials, workers, batch_size)
    return MonteCarloEstimate(f"pair({m},{n})", trials, successes)


def estimate_self_loop_probability(seq: DegreeSequence, s: int, trials: int, seed: int = 0,
                                   workers: int = 1, batch_size: int | None = None) -> MonteCarloEstimate:
    s = seq.check_vertex(s)
    stubs = seq.stubs()
    successes = _run(lambda lo, hi: kernels.count_pair_events(stubs, s, s, seed, lo, hi),
                     trials, workers, batch_size)
    return MonteCarloEstimate(f"self({s})", trials, successes)


def estimate_directed_connection_probability(dseq: DirectedDegreeSequence, m: int, n: int,
                                             trials: int, seed: int = 0, workers: int = 1,
                                             batch_size: int | None = None) -> MonteCarloEstimate:
    m = dseq.check_vertex(m)
    n = dseq.check_vertex(n)
    outs, ins = dseq.out_stubs(), dseq.in_stubs()
    successes = _run(lambda lo, hi: kernels.count_directed_events(outs, ins, m, n, seed, lo, hi),
                     trials, workers, batch_size)
    return MonteCarloEstimate(f"directed({m}->{n})", trials, successes)
