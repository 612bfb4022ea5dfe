"""Oriented primitive closed geodesics as even-length cyclic continued-fraction words.

A word (a1, ..., a2n) names the conjugacy class of A_{a1} ... A_{a2n} with
A_a = (a 1; 1 0).  Conjugation acts by rotation through an even offset, so the
canonical representative is the lexicographically minimal even rotation.
Enumeration is a pruned depth-first walk over canonical words; the brute-force
matrix scan is the independent oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import (
    CapExceeded,
    NonPositiveEntry,
    NotHyperbolic,
    NotPrimitive,
    OddLength,
)
from .matrices import Mat2, floor_quadratic, geodesic_length, isqrt_checked

__all__ = [
    "CyclicWord",
    "GeodesicRecord",
    "EnumerationConfig",
    "MAX_LENGTH_BOUND",
    "validate_entries",
    "canonical_form",
    "is_primitive",
    "word_to_matrix",
    "matrix_to_word",
    "trace_cap_for_length",
    "enumerate_geodesics",
    "enumerate_by_trace",
    "brute_force_classes",
]

MAX_LENGTH_BOUND = 20.0
_BRUTE_FORCE_TRACE_LIMIT = 50
_LENGTH_SLACK = 1e-12


def validate_entries(entries: Sequence[int]) -> None:
    if len(entries) % 2 != 0 or len(entries) == 0:
        raise OddLength(f"word length {len(entries)} is not a positive even number")
    for a in entries:
        if a < 1:
            raise NonPositiveEntry(f"entry {a} < 1")


def _min_even_rotation(entries: Tuple[int, ...]) -> Tuple[int, ...]:
    best = entries
    n = len(entries)
    for k in range(2, n, 2):
        rot = entries[k:] + entries[:k]
        if rot < best:
            best = rot
    return best


@dataclass(frozen=True)
class CyclicWord:
    """Even-length positive word stored in its canonical (minimal even) rotation."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        validate_entries(self.entries)
        if self.entries != _min_even_rotation(self.entries):
            raise ValueError(f"{self.entries} is not in canonical rotation")

    def reversed(self) -> "CyclicWord":
        return canonical_form(tuple(reversed(self.entries)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def canonical_form(entries: Sequence[int]) -> CyclicWord:
    """Canonical representative: lexicographically minimal even rotation."""
    validate_entries(entries)
    return CyclicWord(_min_even_rotation(tuple(entries)))


def is_primitive(word) -> bool:
    """False iff the word is u^k with k >= 2 and |u| even.

    Doubled odd blocks are primitive; they encode the inert geodesics.
    """
    entries = tuple(getattr(word, "entries", word))
    n = len(entries)
    for block in range(2, n, 2):
        if n % block == 0 and entries == entries[:block] * (n // block):
            return False
    return True


def word_to_matrix(word) -> Mat2:
    """Product of the factors (a 1; 1 0) over the word entries."""
    entries = tuple(getattr(word, "entries", word))
    validate_entries(entries)
    p, q, r, s = 1, 0, 0, 1
    for a in entries:
        p, q, r, s = p * a + q, p, r * a + s, r
    return Mat2(p, q, r, s)


def _word_product_entries(entries: Sequence[int]) -> Tuple[int, int, int, int]:
    p, q, r, s = 1, 0, 0, 1
    for a in entries:
        p, q, r, s = p * a + q, p, r * a + s, r
    return p, q, r, s


# class cache: even-parity walk states -> canonical word of their class
_CLASS_CACHE: Dict[Tuple[int, int, int, int], CyclicWord] = {}
_CLASS_CACHE_MAX = 1 << 20


def matrix_to_word(gamma: Mat2) -> CyclicWord:
    """Cyclic word of the conjugacy class of a primitive hyperbolic matrix, trace > 2.

    Walks gamma along the continued-fraction map of its attracting fixed point
    by exact conjugation steps sigma -> A_a^{-1} sigma A_a.  A single step
    conjugates by a determinant -1 matrix, so cycle detection keys on
    (state, step parity): the extracted cycle is then an even-length word whose
    product is SL(2,Z)-conjugate to gamma.  Everything is exact integer
    arithmetic; no floating point is used.
    """
    t = gamma.trace
    if t <= 2:
        raise NotHyperbolic(f"trace {t} (need trace > 2)")
    D = t * t - 4
    sqrt_floor = isqrt_checked(D)

    p, q, r, s = gamma.entries()
    seen: Dict[Tuple[int, int, int, int, int], int] = {}
    path: List[Tuple[int, int, int, int]] = []
    digits: List[int] = []
    step = 0
    while True:
        state = (p, q, r, s)
        if step % 2 == 0:
            cached = _CLASS_CACHE.get(state)
            if cached is not None:
                return cached
        key = state + (step % 2,)
        if key in seen:
            start = seen[key]
            if start % 2 == 1:
                # the cycle product must sit at even conjugation distance from
                # gamma; the walk is deterministic, so rotating the entry point
                # one step forward stays inside the cycle
                cycle = tuple(digits[start + 1 :]) + (digits[start],)
                cycle_state = path[start + 1]
            else:
                cycle = tuple(digits[start:])
                cycle_state = path[start]
            break
        seen[key] = step
        path.append(state)
        # attracting fixed point is (p - s + sqrt(D)) / (2 r) since trace > 2
        a = floor_quadratic(p - s, 2 * r, sqrt_floor)
        # sigma' = A_a^{-1} sigma A_a
        p, q, r, s = r * a + s, r, p * a + q - a * (r * a + s), p - a * r
        digits.append(a)
        step += 1
        if step > 100000:
            raise RuntimeError(f"continued-fraction walk did not cycle for {gamma}")

    for a in cycle:
        if a < 1:
            raise RuntimeError(f"non-positive digit {a} in cycle for {gamma}")
    prod = _word_product_entries(cycle)
    if prod != cycle_state:
        # cycle_state must then be a proper power of the cycle product
        raise NotPrimitive(f"{gamma} is a proper power")
    word = canonical_form(cycle)
    if not is_primitive(word):
        raise NotPrimitive(f"{gamma} is a proper power")
    if len(_CLASS_CACHE) < _CLASS_CACHE_MAX:
        for i, st in enumerate(path):
            if i % 2 == 0:
                _CLASS_CACHE.setdefault(st, word)
    return word


@dataclass(frozen=True)
class GeodesicRecord:
    """One oriented primitive closed geodesic."""

    word: CyclicWord
    trace: int
    length: float
    psi: int


@dataclass(frozen=True)
class EnumerationConfig:
    max_length: float
    thread_count: int = 1
    trace_cap: int = 0  # 0 means: derive from max_length

    def __post_init__(self):
        if not (0 < self.max_length <= MAX_LENGTH_BOUND):
            raise CapExceeded(
                f"max_length {self.max_length} outside (0, {MAX_LENGTH_BOUND}]"
            )
        if self.thread_count < 1:
            raise ValueError("thread_count must be positive")


def trace_cap_for_length(max_length: float) -> int:
    """Largest matrix trace whose geodesic fits the length bound: floor(2 cosh(T/2))."""
    return math.floor(2.0 * math.cosh(max_length / 2.0))


def _record(entries: Tuple[int, ...], trace: int) -> GeodesicRecord:
    word = CyclicWord(entries)
    psi = sum(a if i % 2 == 0 else -a for i, a in enumerate(entries))
    return GeodesicRecord(word=word, trace=trace, length=geodesic_length(trace), psi=psi)


def _dfs_first_entry(a1: int, cap: int, max_length: float) -> List[Tuple[Tuple[int, ...], int]]:
    """All canonical primitive words starting with a1, trace <= cap.

    Partial products of positive A-factors have non-negative entries that are
    monotone in every digit and non-decreasing under extension, so a branch is
    pruned as soon as the trace of its minimal even completion exceeds the cap.
    Canonical words satisfy entries[0] <= entries[i] for every even i, which
    prunes even positions below a1.
    """
    out: List[Tuple[Tuple[int, ...], int]] = []
    # stack frames: (entries, p, q, r, s, next_digit)
    m0 = (a1, 1, 1, 0)
    if a1 + 1 + 1 > cap:  # trace of minimal completion A_{a1} A_1 is p + q + r
        return out
    stack = [([a1], *m0, 1)]
    while stack:
        entries, p, q, r, s, a = stack.pop()
        depth = len(entries)
        even_pos = depth % 2 == 0  # next digit lands at even index (0-based)
        if even_pos and a < a1:
            a = a1
        # child product
        np_, nq, nr, ns = p * a + q, p, r * a + s, r
        child_len = depth + 1
        if child_len % 2 == 0:
            # completions of the child (if any) only grow the trace
            if np_ + ns > cap:
                continue  # larger a only increases the trace: drop frame
            stack.append((entries, p, q, r, s, a + 1))
            centries = entries + [a]
            trace = np_ + ns
            if geodesic_length(trace) <= max_length + _LENGTH_SLACK:
                tup = tuple(centries)
                if tup == _min_even_rotation(tup) and is_primitive(tup):
                    out.append((tup, trace))
            stack.append((centries, np_, nq, nr, ns, 1))
        else:
            # minimal even completion of the child is child * A_1
            if np_ + nq + nr > cap:
                continue
            stack.append((entries, p, q, r, s, a + 1))
            stack.append((entries + [a], np_, nq, nr, ns, 1))
    return out


def enumerate_by_trace(cap: int, thread_count: int = 1) -> List[GeodesicRecord]:
    """All oriented primitive classes with trace <= cap, sorted (trace, word)."""
    max_length = 2.0 * math.acosh(cap / 2.0) if cap > 2 else 0.0
    if cap <= 2:
        return []
    first_entries = [a1 for a1 in range(1, cap) if a1 + 2 <= cap]
    if thread_count > 1:
        with ThreadPoolExecutor(max_workers=thread_count) as pool:
            chunks = pool.map(
                lambda a1: _dfs_first_entry(a1, cap, max_length), first_entries
            )
            found = [item for chunk in chunks for item in chunk]
    else:
        found = [
            item for a1 in first_entries for item in _dfs_first_entry(a1, cap, max_length)
        ]
    found.sort(key=lambda item: (item[1], item[0]))
    return [_record(entries, trace) for entries, trace in found]


def enumerate_geodesics(config: EnumerationConfig) -> List[GeodesicRecord]:
    """Every oriented primitive class with length <= max_length, deterministic order."""
    cap = config.trace_cap or trace_cap_for_length(config.max_length)
    records = enumerate_by_trace(cap, config.thread_count)
    return [
        rec for rec in records if rec.length <= config.max_length + _LENGTH_SLACK
    ]


def brute_force_classes(trace_max: int) -> List[CyclicWord]:
    """Independent oracle: scan SL(2,Z) matrices with entries bounded by trace_max^2,
    keep 2 < trace <= trace_max, reduce each through matrix_to_word, deduplicate.
    """
    if trace_max > _BRUTE_FORCE_TRACE_LIMIT:
        raise CapExceeded(f"trace_max {trace_max} > {_BRUTE_FORCE_TRACE_LIMIT}")
    import numpy as np

    bound = trace_max * trace_max
    words = set()
    c_vals = np.concatenate(
        [np.arange(-bound, 0, dtype=np.int64), np.arange(1, bound + 1, dtype=np.int64)]
    )
    for t in range(3, trace_max + 1):
        a_lo, a_hi = max(-bound, t - bound), min(bound, t + bound)
        a_vals = np.arange(a_lo, a_hi + 1, dtype=np.int64)
        n_vals = a_vals * (t - a_vals) - 1  # b*c must equal a*d - 1
        n_grid = n_vals[:, None]
        with np.errstate(all="ignore"):
            b_grid = n_grid // c_vals[None, :]
        mask = (b_grid * c_vals[None, :] == n_grid) & (np.abs(b_grid) <= bound)
        ai, ci = np.nonzero(mask)
        for i, j in zip(ai.tolist(), ci.tolist()):
            a = int(a_vals[i])
            c = int(c_vals[j])
            b = int(b_grid[i, j])
            try:
                words.add(matrix_to_word(Mat2(a, b, c, t - a)))
            except NotPrimitive:
                continue
    return sorted(words, key=lambda w: (word_to_matrix(w).trace, w.entries))
