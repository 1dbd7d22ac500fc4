"""Degree sequences: validation, file I/O and sampling from distributions.

Vertices are labelled ``0 .. n-1`` everywhere in this package.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    InvalidSpec,
    LengthMismatch,
    NegativeDegree,
    OddStubTotal,
    UnbalancedStubs,
    VertexOutOfRange,
)


def _as_int_tuple(raw, what):
    try:
        values = tuple(operator.index(k) for k in raw)
    except TypeError as exc:
        raise InvalidSpec(f"{what} must contain integers only") from exc
    if not values:
        raise InvalidSpec(f"{what} must be nonempty")
    for i, k in enumerate(values):
        if k < 0:
            raise NegativeDegree(f"{what}[{i}] = {k} is negative")
    return values


@dataclass(frozen=True)
class DegreeSequence:
    """Undirected degree sequence; ``degrees[i]`` is the stub count of vertex i."""

    degrees: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    @property
    def num_stubs(self) -> int:
        return sum(self.degrees)

    def __getitem__(self, v: int) -> int:
        return self.degrees[v]

    def __len__(self) -> int:
        return len(self.degrees)

    def check_vertex(self, v: int) -> int:
        v = operator.index(v)
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")
        return v

    def stubs(self) -> np.ndarray:
        """Stub owner array: vertex ``v`` repeated ``degrees[v]`` times."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)


@dataclass(frozen=True)
class DirectedDegreeSequence:
    in_degrees: tuple[int, ...]
    out_degrees: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.in_degrees)

    @property
    def num_edges(self) -> int:
        return sum(self.out_degrees)

    def __len__(self) -> int:
        return len(self.in_degrees)

    def check_vertex(self, v: int) -> int:
        v = operator.index(v)
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")
        return v

    def out_stubs(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), self.out_degrees)

    def in_stubs(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), self.in_degrees)


def validate_undirected(raw) -> DegreeSequence:
    """Build a :class:`DegreeSequence`, rejecting negative entries and odd totals."""
    degrees = _as_int_tuple(raw, "degrees")
    total = sum(degrees)
    if total % 2:
        raise OddStubTotal(f"stub total {total} is odd; no perfect matching of stubs exists")
    return DegreeSequence(degrees)


def validate_directed(in_raw, out_raw) -> DirectedDegreeSequence:
    ins = _as_int_tuple(in_raw, "in_degrees")
    outs = _as_int_tuple(out_raw, "out_degrees")
    if len(ins) != len(outs):
        raise LengthMismatch(f"{len(ins)} in-degrees but {len(outs)} out-degrees")
    if sum(ins) != sum(outs):
        raise UnbalancedStubs(f"in-stub total {sum(ins)} != out-stub total {sum(outs)}")
    return DirectedDegreeSequence(ins, outs)


# -- distributions ----------------------------------------------------------

@dataclass(frozen=True)
class DegreeDistributionSpec:
    """One of ``constant(k)``, ``poisson(lam)`` or ``power_law(gamma, k_min, k_max)``."""

    kind: str
    k: int = 0
    lam: float = 0.0
    gamma: float = 0.0
    k_min: int = 1
    k_max: int = 1

    @classmethod
    def constant(cls, k):
        return cls("constant", k=k)

    @classmethod
    def poisson(cls, lam):
        return cls("poisson", lam=lam)

    @classmethod
    def power_law(cls, gamma, k_min, k_max):
        return cls("power_law", gamma=gamma, k_min=k_min, k_max=k_max)

    def validate(self):
        if self.kind == "constant":
            if self.k < 0:
                raise InvalidSpec(f"constant degree must be >= 0, got {self.k}")
        elif self.kind == "poisson":
            if not self.lam > 0:
                raise InvalidSpec(f"poisson mean must be > 0, got {self.lam}")
        elif self.kind == "power_law":
            if not self.gamma > 1:
                raise InvalidSpec(f"power-law exponent must be > 1, got {self.gamma}")
            if not 1 <= self.k_min <= self.k_max:
                raise InvalidSpec(f"need 1 <= k_min <= k_max, got {self.k_min}, {self.k_max}")
        else:
            raise InvalidSpec(f"unknown distribution kind {self.kind!r}")
        return self

    def __str__(self):
        if self.kind == "constant":
            return f"constant:{self.k}"
        if self.kind == "poisson":
            return f"poisson:{self.lam!r}"
        return f"power_law:{self.gamma!r},{self.k_min},{self.k_max}"


def parse_distribution(text: str) -> DegreeDistributionSpec:
    """Parse ``constant:K``, ``poisson:LAM`` or ``power_law:GAMMA,KMIN,KMAX``."""
    kind, _, args = text.strip().partition(":")
    kind = kind.strip().replace("-", "_")
    parts = [a.strip() for a in args.split(",")] if args else []
    try:
        if kind == "constant" and len(parts) == 1:
            spec = DegreeDistributionSpec.constant(int(parts[0]))
        elif kind == "poisson" and len(parts) == 1:
            spec = DegreeDistributionSpec.poisson(float(parts[0]))
        elif kind == "power_law" and len(parts) == 3:
            spec = DegreeDistributionSpec.power_law(float(parts[0]), int(parts[1]), int(parts[2]))
        else:
            raise InvalidSpec(f"cannot parse distribution {text!r}")
    except ValueError as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(f"cannot parse distribution {text!r}: {exc}") from exc
    return spec.validate()


def power_law_pmf(gamma, k_min, k_max):
    """Support and probabilities of the discrete power law truncated to [k_min, k_max]."""
    support = np.arange(k_min, k_max + 1)
    weights = support.astype(float) ** (-gamma)
    return support, weights / weights.sum()


def sample_degree_sequence(spec: DegreeDistributionSpec, n: int, seed: int = 0) -> DegreeSequence:
    """Draw ``n`` i.i.d. degrees from ``spec`` and repair parity if needed.

    Uses numpy's PCG64 seeded with ``seed mod 2**64``. When the raw total is odd,
    one uniformly chosen vertex gets one extra stub; for power laws the choice is
    redrawn among vertices still below ``k_max``.
    """
    spec.validate()
    if n < 1:
        raise InvalidSpec(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(int(seed) % 2**64)
    if spec.kind == "constant":
        degrees = np.full(n, spec.k, dtype=np.int64)
    elif spec.kind == "poisson":
        degrees = rng.poisson(spec.lam, size=n).astype(np.int64)
    else:
        support, pmf = power_law_pmf(spec.gamma, spec.k_min, spec.k_max)
        cdf = np.cumsum(pmf)
        idx = np.searchsorted(cdf, rng.random(n), side="right")
        degrees = support[np.minimum(idx, len(support) - 1)].astype(np.int64)

    if degrees.sum() % 2:
        if spec.kind == "power_law":
            below = np.flatnonzero(degrees < spec.k_max)
            if below.size:
                # redraw until a vertex below the cap is hit
                while True:
                    v = rng.integers(n)
                    if degrees[v] < spec.k_max:
                        break
                degrees[v] += 1
            elif spec.k_max > spec.k_min:
                degrees[rng.integers(n)] -= 1
            else:
                raise InvalidSpec(
                    f"n={n} vertices of fixed degree {spec.k_max} give an odd stub total"
                )
        else:
            degrees[rng.integers(n)] += 1
    return validate_undirected(degrees.tolist())


# -- file formats -----------------------------------------------------------

def _data_lines(text):
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def parse_degrees(text: str) -> DegreeSequence:
    """Undirected degree file: one integer per line, ``#`` lines ignored."""
    raw = []
    for lineno, line in _data_lines(text):
        try:
            raw.append(int(line))
        except ValueError:
            raise InvalidSpec(f"line {lineno}: expected one integer, got {line!r}") from None
    if not raw:
        raise InvalidSpec("degree file contains no degrees")
    return validate_undirected(raw)


def parse_directed_degrees(text: str) -> DirectedDegreeSequence:
    """Directed degree file: ``in out`` per line, ``#`` lines ignored."""
    ins, outs = [], []
    for lineno, line in _data_lines(text):
        fields = line.split()
        try:
            if len(fields) != 2:
                raise ValueError
            ins.append(int(fields[0]))
            outs.append(int(fields[1]))
        except ValueError:
            raise InvalidSpec(f"line {lineno}: expected 'in out', got {line!r}") from None
    if not ins:
        raise InvalidSpec("degree file contains no degrees")
    return validate_directed(ins, outs)


def read_degrees(path) -> DegreeSequence:
    return parse_degrees(Path(path).read_text())


def read_directed_degrees(path) -> DirectedDegreeSequence:
    return parse_directed_degrees(Path(path).read_text())


def format_degrees(seq, header=()) -> str:
    lines = [f"# {h}" for h in header]
    if isinstance(seq, DirectedDegreeSequence):
        lines += [f"{i} {o}" for i, o in zip(seq.in_degrees, seq.out_degrees)]
    else:
        lines += [str(k) for k in seq.degrees]
    return "\n".join(lines) + "\n"
