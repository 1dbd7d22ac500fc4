"""Exhaustive enumeration of stub matchings for tiny instances.

Undirected: every perfect matching of the 2L labelled stubs, (2L-1)!! in
total. Directed: every bijection from out-stubs to in-stubs, L! in total.
These are the sample spaces the stub samplers draw from uniformly.

Caps default to 2L <= 14 (undirected) and L <= 8 (directed). The environment
variable ``CONFIGPROB_ORACLE_CAP`` overrides them: ``"U"`` sets the
undirected stub cap, ``"U,D"`` sets both.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import _backend
from .degrees import DegreeSequence, DirectedDegreeSequence
from .errors import InvalidSpec, SameVertex, TooLarge

DEFAULT_STUB_CAP = 14
DEFAULT_DIRECTED_CAP = 8


@dataclass(frozen=True)
class OracleReport:
    total_configurations: int
    favorable: int

    @property
    def probability(self) -> Fraction:
        return Fraction(self.favorable, self.total_configurations)


def oracle_caps() -> tuple[int, int]:
    """(undirected stub cap, directed edge cap), honouring CONFIGPROB_ORACLE_CAP."""
    raw = os.environ.get("CONFIGPROB_ORACLE_CAP", "").strip()
    if not raw:
        return DEFAULT_STUB_CAP, DEFAULT_DIRECTED_CAP
    parts = raw.split(",")
    try:
        stub_cap = int(parts[0])
        directed_cap = int(parts[1]) if len(parts) > 1 else DEFAULT_DIRECTED_CAP
    except ValueError:
        raise InvalidSpec(f"bad CONFIGPROB_ORACLE_CAP {raw!r}") from None
    return stub_cap, directed_cap


def _check_undirected(seq, cap):
    cap = oracle_caps()[0] if cap is None else cap
    if seq.num_stubs > cap:
        raise TooLarge(f"2L = {seq.num_stubs} exceeds the enumeration cap {cap}")


def _check_directed(dseq, cap):
    cap = oracle_caps()[1] if cap is None else cap
    if dseq.num_edges > cap:
        raise TooLarge(f"L = {dseq.num_edges} exceeds the directed enumeration cap {cap}")


def exact_connection_probability(seq: DegreeSequence, m: int, n: int, cap: int | None = None) -> OracleReport:
    """Fraction of perfect stub matchings pairing some stub of m with some stub of n."""
    m = seq.check_vertex(m)
    n = seq.check_vertex(n)
    if m == n:
        raise SameVertex(f"m = n = {m}; use exact_self_loop_probability")
    _check_undirected(seq, cap)
    favorable, total = _backend.oracle_pair(seq.stubs(), m, n)
    return OracleReport(total, favorable)


def exact_self_loop_probability(seq: DegreeSequence, s: int, cap: int | None = None) -> OracleReport:
    """Fraction of perfect stub matchings pairing two stubs of s together."""
    s = seq.check_vertex(s)
    _check_undirected(seq, cap)
    favorable, total = _backend.oracle_pair(seq.stubs(), s, s)
    return OracleReport(total, favorable)


def exact_directed_connection_probability(dseq: DirectedDegreeSequence, m: int, n: int,
                                          cap: int | None = None) -> OracleReport:
    """Fraction of out->in stub bijections sending an out-stub of m to an in-stub of n."""
    m = dseq.check_vertex(m)
    n = dseq.check_vertex(n)
    _check_directed(dseq, cap)
    favorable, total = _backend.oracle_directed(dseq.out_stubs(), dseq.in_stubs(), m, n)
    return OracleReport(total, favorable)


def iter_matchings(stubs):
    """Yield every perfect matching of ``stubs`` as a list of owner pairs.

    Plain recursion without pruning: the lowest remaining stub is paired
    with each other remaining stub in turn.
    """
    items = list(stubs)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in iter_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + tail


def multigraph_distribution(seq: DegreeSequence, cap: int | None = None) -> Counter:
    """Number of stub matchings inducing each multigraph.

    Keys are canonical edge tuples (``u <= v``, sorted), matching
    :attr:`MultiGraph.key`.
    """
    _check_undirected(seq, cap)
    counts = Counter()
    for matching in iter_matchings(int(s) for s in seq.stubs()):
        counts[tuple(sorted((min(a, b), max(a, b)) for a, b in matching))] += 1
    return counts
