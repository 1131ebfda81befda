"""s-inversion sequences, their ascent/descent statistics, and the polynomials
they generate: the s-Eulerian polynomial and the s-derangement polynomial.

Ratios ``e_i / s_i`` are never built; comparisons cross-multiply
``e_i * s_{i+1}`` against ``e_{i+1} * s_i``.  Statistics always use the
padded view ``e_0 = e_{n+1} = 0`` with ``s_0 = s_{n+1} = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .polynomial import IntPolynomial, ZERO

__all__ = [
    "SSequence",
    "InversionSequence",
    "enumerate_all",
    "ascent_set",
    "descent_set",
    "s_eulerian",
    "complement_involution",
    "enumerate_restricted",
    "s_derangement_enum",
    "s_derangement_recursive",
    "interlacing_certificate",
]


@dataclass(frozen=True)
class SSequence:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        if not entries:
            raise ValueError("an s-sequence needs at least one entry")
        if any(x < 1 for x in entries):
            raise ValueError(f"s-sequence entries must be positive: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> SSequence:
        """Parse a comma-separated list such as ``"2,3,4"``."""
        try:
            values = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise ValueError(f"not a comma-separated integer list: {text!r}") from None
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def padded(self) -> tuple[int, ...]:
        return (1, *self.entries, 1)

    def product(self) -> int:
        out = 1
        for x in self.entries:
            out *= x
        return out

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return ",".join(map(str, self.entries))


def _as_sseq(s) -> SSequence:
    return s if isinstance(s, SSequence) else SSequence(tuple(s))


@dataclass(frozen=True)
class InversionSequence:
    entries: tuple[int, ...]
    bound: SSequence

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        bound = _as_sseq(self.bound)
        if len(entries) != bound.n:
            raise ValueError(f"length {len(entries)} does not match s of length {bound.n}")
        for e, s in zip(entries, bound.entries):
            if not 0 <= e < s:
                raise ValueError(f"entry {e} outside [0, {s})")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "bound", bound)

    @property
    def padded(self) -> tuple[int, ...]:
        return (0, *self.entries, 0)

    def ascent_set(self) -> frozenset[int]:
        return ascent_set(self)

    def descent_set(self) -> frozenset[int]:
        return descent_set(self)

    @property
    def asc(self) -> int:
        return _count_stat(self.entries, self.bound.entries, ascent=True)

    @property
    def des(self) -> int:
        return _count_stat(self.entries, self.bound.entries, ascent=False)

    def is_restricted(self) -> bool:
        e, s = self.padded, self.bound.padded
        return all(e[i] * s[i + 1] != e[i + 1] * s[i] for i in range(len(e) - 1))


def _count_stat(e: Sequence[int], s: Sequence[int], ascent: bool) -> int:
    pe, ps = (0, *e, 0), (1, *s, 1)
    count = 0
    for i in range(len(pe) - 1):
        left, right = pe[i] * ps[i + 1], pe[i + 1] * ps[i]
        if (left < right) if ascent else (left > right):
            count += 1
    return count


def ascent_set(e: InversionSequence) -> frozenset[int]:
    """Indices ``i`` in ``0..n`` with ``e_i/s_i < e_{i+1}/s_{i+1}``."""
    pe, ps = e.padded, e.bound.padded
    return frozenset(i for i in range(len(pe) - 1) if pe[i] * ps[i + 1] < pe[i + 1] * ps[i])


def descent_set(e: InversionSequence) -> frozenset[int]:
    pe, ps = e.padded, e.bound.padded
    return frozenset(i for i in range(len(pe) - 1) if pe[i] * ps[i + 1] > pe[i + 1] * ps[i])


def enumerate_all(s) -> Iterator[InversionSequence]:
    """All of ``I_n^s`` in lexicographic order."""
    s = _as_sseq(s)
    for entries in product(*(range(x) for x in s.entries)):
        yield InversionSequence(entries, s)


def s_eulerian(s, statistic: str = "asc") -> IntPolynomial:
    """Sum of ``z**asc(e)`` (or ``des``) over every s-inversion sequence.

    Sequences sharing a last entry are merged level by level, so the work is
    ``O(n * max(s)**2)`` rather than ``prod(s)``; the sum is the same.
    """
    s = _as_sseq(s)
    ascent = statistic == "asc"
    if statistic not in ("asc", "des"):
        raise ValueError(f"unknown statistic {statistic!r}")
    # state: last entry value -> coefficient list of the running statistic
    states = {0: [1]}
    prev_s = 1
    for cur_s in (*s.entries, 1):
        nxt: dict[int, list[int]] = {}
        for v in range(cur_s):
            for u, poly in states.items():
                left, right = u * cur_s, v * prev_s
                bump = (left < right) if ascent else (left > right)
                acc = nxt.setdefault(v, [])
                shift = 1 if bump else 0
                need = len(poly) + shift
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for k, c in enumerate(poly):
                    acc[k + shift] += c
        states = nxt
        prev_s = cur_s
    return IntPolynomial(states[0])


def complement_involution(e: InversionSequence) -> InversionSequence:
    """Entrywise ``-e_i mod s_i``; swaps the ascent and descent counts."""
    return InversionSequence(tuple(-x % s for x, s in zip(e.entries, e.bound.entries)), e.bound)


def _restricted_tuples(s: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Pruned depth-first search over sequences with no padded ratio tie."""
    n = len(s)
    ps = (1, *s, 1)
    prefix = [0] * n

    def rec(i: int, prev: int) -> Iterator[tuple[int, ...]]:
        # position i (1-based) is being filled; prev = e_{i-1}
        si, sp = ps[i], ps[i - 1]
        for v in range(1 if i == n else 0, si):
            if prev * si == v * sp:
                continue
            prefix[i - 1] = v
            if i == n:
                yield tuple(prefix)
            else:
                yield from rec(i + 1, v)

    if all(x > 1 for x in (s[0], s[-1])):
        yield from rec(1, 0)


def enumerate_restricted(s) -> Iterator[InversionSequence]:
    """Sequences whose padded ratios ``e_i/s_i`` never repeat between neighbours.

    In particular ``e_1`` and ``e_n`` are nonzero and no two zeros are adjacent.
    """
    s = _as_sseq(s)
    for t in _restricted_tuples(s.entries):
        yield InversionSequence(t, s)


@lru_cache(maxsize=1 << 16)
def _restricted_counts(s: tuple[int, ...], ascent: bool) -> tuple[int, ...]:
    # same search as _restricted_tuples, tallying the statistic on the way down
    n = len(s)
    if s[0] < 2 or s[-1] < 2:
        return ()
    counts = [0] * (n + 2)
    ps = (1, *s)

    def rec(i: int, prev: int, stat: int) -> None:
        si, sp = ps[i], ps[i - 1]
        last = i == n
        for v in range(1 if last else 0, si):
            left, right = prev * si, v * sp
            if left == right:
                continue
            step = (left < right) if ascent else (left > right)
            # the final step down to e_{n+1} = 0 is always a descent
            total = stat + step
            if last:
                counts[total + (0 if ascent else 1)] += 1
            else:
                rec(i + 1, v, total)

    rec(1, 0, 0)
    return tuple(counts)


def s_derangement_enum(s, statistic: str = "asc") -> IntPolynomial:
    """Sum of ``z**asc(e)`` (or ``des``) over the restricted inversion sequences."""
    s = _as_sseq(s)
    if statistic not in ("asc", "des"):
        raise ValueError(f"unknown statistic {statistic!r}")
    return IntPolynomial(_restricted_counts(s.entries, statistic == "asc"))


def interlacing_certificate(s) -> list[IntPolynomial]:
    """The family ``p_{n,k}`` for ``k = 0..s_n - 1``.

    ``p_{n,k}`` sums ``z**asc`` over sequences ending in ``e_n = k`` with no
    ratio tie among ``e_0..e_n``.  Built from ``p_{1,0} = 0`` and
    ``p_{1,k} = z`` by splitting on whether ``e_{n-1}`` sits below, at, or
    above the threshold ``t_k = ceil(k * s_{n-1} / s_n)``.
    """
    s = _as_sseq(s).entries
    family = [ZERO] + [IntPolynomial([0, 1])] * (s[0] - 1)
    for j in range(1, len(s)):
        prev_s, cur_s = s[j - 1], s[j]
        # prefix sums of the previous family for the two range sums
        prefix = [ZERO]
        for f in family:
            prefix.append(prefix[-1] + f)
        total = prefix[-1]
        nxt = []
        for k in range(cur_s):
            t = -(-k * prev_s // cur_s)
            below = prefix[min(t, prev_s)]
            above = total - prefix[min(t + 1, prev_s)]
            poly = below.shift(1) + above
            if (k * prev_s) % cur_s != 0 and t < prev_s:
                poly = poly + family[t]
            nxt.append(poly)
        family = nxt
    return family


def s_derangement_recursive(s) -> IntPolynomial:
    """``sum_{k=1}^{s_n - 1} p_{n,k}``, built by the threshold recursion."""
    family = interlacing_certificate(s)
    total = ZERO
    for f in family[1:]:
        total = total + f
    return total
