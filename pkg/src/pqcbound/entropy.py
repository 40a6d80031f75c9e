"""Exact joint entropies of quadratic monomials of i.i.d. uniform field symbols.

A monomial X^(k,l) is the product of two distinct symbols drawn uniformly
from the prime field F_q.  The joint law of any monomial subset is obtained
by enumerating all q^f symbol assignments and tallying outcome vectors, so
probabilities are exact integer counts over q^f until the final logarithm.
All entropies are in q-ary units (log base q): a uniform F_q symbol has
entropy 1.

Entropy accumulation uses math.fsum, which is exactly rounded; identical
count multisets therefore produce bit-identical entropies regardless of
tally order, and vertex relabelings leave every entropy unchanged to the
last bit.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    EdgeAlreadyConditioned,
    EnumerationTooLarge,
    InvalidFieldSize,
)
from .graphs import all_edges, check_edge, check_vertex_count, edge_count, edge_index

# hard ceiling on the q^f assignment enumeration
ENUMERATION_GUARD = 1 << 34
# materialize the full assignment/outcome table below this many assignments,
# stream in chunks above it
_TABLE_LIMIT = 1 << 22
_CHUNK = 1 << 18


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_q."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or not is_prime(self.q):
            raise InvalidFieldSize(f"field size must be prime, got {self.q!r}")


def field_mul(a: int, b: int, spec: FieldSpec) -> int:
    """Product in F_q; inputs must already be reduced."""
    if not (0 <= a < spec.q and 0 <= b < spec.q):
        raise ValueError(f"field elements must lie in [0, {spec.q}), got {a}, {b}")
    return (a * b) % spec.q


def _as_spec(spec_or_q) -> FieldSpec:
    return spec_or_q if isinstance(spec_or_q, FieldSpec) else FieldSpec(spec_or_q)


@dataclass(frozen=True)
class JointDistribution:
    """Exact joint law of a monomial tuple: outcome vectors with rational mass."""

    support: tuple

    def as_dict(self) -> dict:
        return dict(self.support)

    def probability(self, outcome) -> Fraction:
        return self.as_dict().get(tuple(outcome), Fraction(0))


def joint_distribution(edges, f: int, spec_or_q) -> JointDistribution:
    """Joint distribution of the monomials named by edges, for f symbols.

    Enumerates all q^f assignments; counts sum exactly to q^f.
    """
    spec = _as_spec(spec_or_q)
    check_vertex_count(f)
    edges = [check_edge(e, f) for e in edges]
    total = spec.q ** f
    if total > ENUMERATION_GUARD:
        raise EnumerationTooLarge(f"q^f = {total} exceeds the enumeration guard {ENUMERATION_GUARD}")
    cache = EntropyCache(f, spec)
    if not edges:
        return JointDistribution(support=(((), Fraction(1)),))
    rows, counts = cache._outcome_rows([edge_index(e, f) for e in edges])
    support = tuple(
        (tuple(int(x) for x in row), Fraction(int(c), total))
        for row, c in zip(rows, counts)
    )
    assert sum(c for _, c in support) == 1
    return JointDistribution(support=support)


class EntropyCache:
    """Memoized joint entropies for all monomial subsets at a fixed (f, q).

    Subsets are keyed by their edge-index bitmask.  H(empty) = 0 is always
    present, and every cached value equals recomputation bit for bit.
    """

    def __init__(self, f: int, spec_or_q):
        check_vertex_count(f)
        self.spec = _as_spec(spec_or_q)
        self.f = f
        self.q = self.spec.q
        self.total = self.q ** f
        if self.total > ENUMERATION_GUARD:
            raise EnumerationTooLarge(
                f"q^f = {self.total} exceeds the enumeration guard {ENUMERATION_GUARD}"
            )
        self.mu = edge_count(f)
        self._entropies: dict[int, float] = {0: 0.0}
        self._ln_q = math.log(self.q)
        self._table: np.ndarray | None = None
        # largest column count whose base-q codes fit into 63 bits
        self._pack_limit = 0
        while self.q ** (self._pack_limit + 1) <= 1 << 63:
            self._pack_limit += 1

    def _assignments(self, lo: int, hi: int) -> np.ndarray:
        idx = np.arange(lo, hi, dtype=np.int64)
        w = np.empty((hi - lo, self.f), dtype=np.uint8)
        for j in range(self.f):
            w[:, j] = (idx // self.q ** j) % self.q
        return w

    def _monomial_columns(self, w: np.ndarray, indices) -> np.ndarray:
        cols = np.empty((w.shape[0], len(indices)), dtype=np.uint8)
        edges = all_edges(self.f)
        for j, i in enumerate(indices):
            k, l = edges[i]
            cols[:, j] = (w[:, k - 1].astype(np.uint16) * w[:, l - 1]) % self.q
        return cols

    def _full_table(self) -> np.ndarray:
        if self._table is None:
            w = self._assignments(0, self.total)
            self._table = self._monomial_columns(w, range(self.mu))
        return self._table

    def _pack(self, cols: np.ndarray) -> np.ndarray:
        m = cols.shape[1]
        code = np.zeros(cols.shape[0], dtype=np.uint64)
        mult = np.uint64(1)
        for j in range(m):
            code += cols[:, j].astype(np.uint64) * mult
            mult *= np.uint64(self.q)
        return code

    def _counts(self, indices) -> np.ndarray:
        """Exact outcome counts for the monomial subset given by edge indices."""
        m = len(indices)
        if self.total <= _TABLE_LIMIT:
            cols = self._full_table()[:, indices]
            if m <= self._pack_limit:
                return np.unique(self._pack(cols), return_counts=True)[1]
            return np.unique(cols, axis=0, return_counts=True)[1]
        # streamed tally for very large q^f
        acc: Counter = Counter()
        for lo in range(0, self.total, _CHUNK):
            w = self._assignments(lo, min(lo + _CHUNK, self.total))
            cols = self._monomial_columns(w, indices)
            if m <= self._pack_limit:
                codes, counts = np.unique(self._pack(cols), return_counts=True)
                acc.update(dict(zip(codes.tolist(), counts.tolist())))
            else:
                rows, counts = np.unique(cols, axis=0, return_counts=True)
                acc.update(dict(zip(map(tuple, rows.tolist()), counts.tolist())))
        return np.fromiter(acc.values(), dtype=np.int64)

    def _outcome_rows(self, indices):
        """Distinct outcome vectors with exact counts (distribution support)."""
        if self.total <= _TABLE_LIMIT:
            cols = self._full_table()[:, indices]
            rows, counts = np.unique(cols, axis=0, return_counts=True)
            return rows.tolist(), counts.tolist()
        acc: Counter = Counter()
        for lo in range(0, self.total, _CHUNK):
            w = self._assignments(lo, min(lo + _CHUNK, self.total))
            cols = self._monomial_columns(w, indices)
            rows, counts = np.unique(cols, axis=0, return_counts=True)
            acc.update(dict(zip(map(tuple, rows.tolist()), counts.tolist())))
        items = sorted(acc.items())
        return [list(r) for r, _ in items], [c for _, c in items]

    def _mask_of(self, edges_or_mask) -> int:
        if isinstance(edges_or_mask, int):
            if edges_or_mask < 0 or edges_or_mask >> self.mu:
                raise ValueError(f"mask {edges_or_mask:#x} out of range for f={self.f}")
            return edges_or_mask
        mask = 0
        for e in edges_or_mask:
            mask |= 1 << edge_index(e, self.f)
        return mask

    def joint_entropy(self, edges_or_mask) -> float:
        """H of the monomial subset in q-ary units; memoized."""
        mask = self._mask_of(edges_or_mask)
        h = self._entropies.get(mask)
        if h is not None:
            return h
        indices = [i for i in range(self.mu) if (mask >> i) & 1]
        counts = self._counts(indices)
        # H = log_q(q^f) - sum c/q^f * log_q c, with the count sum exact
        s = math.fsum(c * math.log(c) for c in counts.tolist() if c > 1)
        h = self.f - s / (self.total * self._ln_q)
        self._entropies[mask] = h
        return h

    def conditional_entropy(self, edge, given=()) -> float:
        """H(X^edge | monomials in given); value in [0, 1]."""
        e = check_edge(edge, self.f)
        bit = 1 << edge_index(e, self.f)
        given_mask = self._mask_of(given)
        if given_mask & bit:
            raise EdgeAlreadyConditioned(f"edge {edge!r} is already in the conditioning set")
        h = self.joint_entropy(given_mask | bit) - self.joint_entropy(given_mask)
        # exact difference can dip a hair below zero in floating point
        return 0.0 if -1e-12 < h < 0.0 else h

    def marginal_entropy(self) -> float:
        """Entropy of any single monomial (all mu marginals are equal)."""
        return self.joint_entropy(1)

    def __len__(self) -> int:
        return len(self._entropies)
