"""Classical and colored permutations, Smirnoff words, and the bijections that
carry their statistics onto inversion sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _perms, product
from math import comb, factorial
from typing import Iterable, Iterator

from .errors import HasFixedPoint, NotRestricted, TooLarge
from .inversions import InversionSequence, SSequence
from .polynomial import IntPolynomial, ZERO

__all__ = [
    "Permutation",
    "ColoredPermutation",
    "SmirnoffWord",
    "descent_count",
    "excedance_count",
    "is_derangement",
    "lehmer_code",
    "eulerian_poly",
    "derangement_poly",
    "inversion_to_derangement",
    "derangement_to_inversion",
    "smirnoff_words",
    "smirnoff_descent_poly",
    "colored_descent_count",
    "colored_excedance_count",
    "is_colored_derangement",
    "colored_permutations",
    "colored_eulerian",
    "colored_excedance_poly",
    "colored_derangement_poly",
    "colored_derangement_formula",
    "psi_map",
    "psi_inverse",
    "bad_numbers",
    "insert_bad",
    "remove_bad",
]

MAX_PERMUTATION_N = 9
MAX_COLORED = 10**7


@dataclass(frozen=True)
class Permutation:
    """One-line notation ``values[i-1] = pi(i)``."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{values} is not a permutation of 1..{len(values)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Accept ``"34521"`` for n < 10 or a comma/space separated list."""
        text = text.strip()
        if "," in text or " " in text:
            return cls(tuple(int(t) for t in text.replace(",", " ").split()))
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def __len__(self):
        return len(self.values)

    def __str__(self):
        if self.n < 10:
            return "".join(map(str, self.values))
        return " ".join(map(str, self.values))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles starting at their minima, ordered by minima."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int) -> Permutation:
        values = list(range(1, n + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                values[a - 1] = b
        return cls(tuple(values))


def _as_perm(p) -> Permutation:
    return p if isinstance(p, Permutation) else Permutation(tuple(p))


def descent_count(p) -> int:
    v = _as_perm(p).values
    return sum(v[i] > v[i + 1] for i in range(len(v) - 1))


def excedance_count(p) -> int:
    v = _as_perm(p).values
    return sum(x > i for i, x in enumerate(v, 1))


def is_derangement(p) -> bool:
    v = _as_perm(p).values
    return all(x != i for i, x in enumerate(v, 1))


def lehmer_code(p) -> tuple[int, ...]:
    """``t_i = #{j > i : pi_j < pi_i}``."""
    v = _as_perm(p).values
    return tuple(sum(v[j] < v[i] for j in range(i + 1, len(v))) for i in range(len(v)))


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_PERMUTATION_N:
        raise TooLarge(f"brute force over {n}! permutations exceeds the cap n <= {MAX_PERMUTATION_N}")


def _tally(values: Iterable[int]) -> IntPolynomial:
    counts: list[int] = []
    for k in values:
        if k >= len(counts):
            counts.extend([0] * (k + 1 - len(counts)))
        counts[k] += 1
    return IntPolynomial(counts)


def eulerian_poly(n: int) -> IntPolynomial:
    """Descent generating polynomial over all of ``S_n``; ``A_0 = 1``."""
    _check_n(n)
    return _tally(descent_count(p) for p in _perms(range(1, n + 1)))


def derangement_poly(n: int) -> IntPolynomial:
    """Excedance generating polynomial over the derangements of ``[n]``; ``d_0 = 1``."""
    _check_n(n)
    return _tally(excedance_count(p) for p in _perms(range(1, n + 1)) if is_derangement(p))


def _classical_s(n: int) -> SSequence:
    return SSequence(tuple(range(2, n + 1)))


def inversion_to_derangement(e: InversionSequence) -> Permutation:
    """Build cycles from ``e_n, ..., e_1, e_0`` (padded, ``s = (2, ..., n)``).

    A zero closes the running cycle and opens a new one at the smallest
    unused number; a nonzero ``e_i`` appends the ``e_i``-th smallest unused
    number.  Excedances of the result equal descents of ``e``.
    """
    n = e.bound.n + 1
    if e.bound.entries != tuple(range(2, n + 1)):
        raise ValueError(f"expected s = (2, ..., {n}), got {e.bound}")
    if not e.is_restricted():
        raise NotRestricted(f"{e.entries} has a ratio tie and would yield a fixed point")
    available = list(range(1, n + 1))
    cycles: list[list[int]] = []
    current: list[int] = []
    for x in reversed(e.padded):
        if x == 0:
            if current:
                cycles.append(current)
                current = []
            if available:
                current = [available.pop(0)]
        else:
            current.append(available.pop(x - 1))
    return Permutation.from_cycles(cycles, n)


def derangement_to_inversion(p) -> InversionSequence:
    """Inverse of :func:`inversion_to_derangement`."""
    p = _as_perm(p)
    if not is_derangement(p):
        raise HasFixedPoint(f"{p} has a fixed point")
    n = p.n
    available = list(range(1, n + 1))
    reading = []
    for cyc in p.cycles():
        reading.append(0)
        available.remove(cyc[0])
        for x in cyc[1:]:
            reading.append(available.index(x) + 1)
            available.remove(x)
    reading.append(0)
    padded = reading[::-1]
    return InversionSequence(tuple(padded[1:-1]), _classical_s(n))


@dataclass(frozen=True)
class SmirnoffWord:
    letters: tuple[int, ...]
    r: int

    def __post_init__(self):
        w = tuple(int(x) for x in self.letters)
        if len(w) < 2 or w[0] != 0 or w[-1] != 0:
            raise ValueError("a Smirnoff word starts and ends with 0")
        if any(not 0 <= x < self.r for x in w):
            raise ValueError(f"letters must lie in 0..{self.r - 1}")
        if any(a == b for a, b in zip(w, w[1:])):
            raise ValueError("adjacent letters must differ")
        object.__setattr__(self, "letters", w)

    @property
    def n(self) -> int:
        return len(self.letters) - 1

    @property
    def des(self) -> int:
        w = self.letters
        return sum(w[i] > w[i + 1] for i in range(len(w) - 1))

    @property
    def asc(self) -> int:
        w = self.letters
        return sum(w[i] < w[i + 1] for i in range(len(w) - 1))

    def reversed(self) -> SmirnoffWord:
        return SmirnoffWord(self.letters[::-1], self.r)


def smirnoff_words(n: int, r: int) -> Iterator[SmirnoffWord]:
    """Words ``w_0 ... w_n`` over ``0..r-1`` with zero ends and no equal neighbours."""
    if n < 1:
        return

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            if prefix[-1] != 0:
                yield (*prefix, 0)
            return
        for x in range(r):
            if x != prefix[-1]:
                prefix.append(x)
                yield from rec(prefix)
                prefix.pop()

    for w in rec([0]):
        yield SmirnoffWord(w, r)


def smirnoff_descent_poly(n: int, r: int) -> IntPolynomial:
    return _tally(w.des for w in smirnoff_words(n, r))


@dataclass(frozen=True)
class ColoredPermutation:
    """A permutation with a color in ``0..r-1`` attached to each position."""

    perm: Permutation
    colors: tuple[int, ...]
    r: int

    def __post_init__(self):
        perm = _as_perm(self.perm)
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != perm.n:
            raise ValueError("one color per position is required")
        if self.r < 1 or any(not 0 <= c < self.r for c in colors):
            raise ValueError(f"colors must lie in 0..{self.r - 1}")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "colors", colors)

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> ColoredPermutation:
        """Parse ``"2^2 1^1 3^0"``; ``r`` defaults to one more than the largest color."""
        values, colors = [], []
        for tok in text.split():
            v, _, c = tok.partition("^")
            values.append(int(v))
            colors.append(int(c) if c else 0)
        if r is None:
            r = max(colors, default=0) + 1
        return cls(Permutation(tuple(values)), tuple(colors), r)

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def values(self) -> tuple[int, ...]:
        return self.perm.values

    def __str__(self):
        return " ".join(f"{v}^{c}" for v, c in zip(self.values, self.colors))


def colored_descent_count(sigma: ColoredPermutation) -> int:
    """Descents at ``i = 1..n`` with the boundary ``pi_{n+1} = n+1``, ``c_{n+1} = 0``."""
    v = (*sigma.values, sigma.n + 1)
    c = (*sigma.colors, 0)
    return sum(
        c[i] > c[i + 1] or (c[i] == c[i + 1] and v[i] > v[i + 1]) for i in range(sigma.n)
    )


def colored_excedance_count(sigma: ColoredPermutation) -> int:
    return sum(
        v > i or (v == i and c > 0) for i, (v, c) in enumerate(zip(sigma.values, sigma.colors), 1)
    )


def is_colored_derangement(sigma: ColoredPermutation) -> bool:
    return all(not (v == i and c == 0) for i, (v, c) in enumerate(zip(sigma.values, sigma.colors), 1))


def _check_colored(n: int, r: int, cap: int) -> None:
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    size = r**n * factorial(n)
    if size > cap:
        raise TooLarge(f"{size} colored permutations exceed the cap {cap}")


def colored_permutations(n: int, r: int, cap: int = MAX_COLORED) -> Iterator[ColoredPermutation]:
    _check_colored(n, r, cap)
    for p in _perms(range(1, n + 1)):
        perm = Permutation(p)
        for colors in product(range(r), repeat=n):
            yield ColoredPermutation(perm, colors, r)


@lru_cache(maxsize=64)
def _colored_tallies(n: int, r: int) -> tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
    # one pass: descents over all, excedances over all, excedances over derangements
    des, exc, der = [], [], []
    for x in colored_permutations(n, r, cap=r**n * factorial(n)):
        k = colored_excedance_count(x)
        des.append(colored_descent_count(x))
        exc.append(k)
        if is_colored_derangement(x):
            der.append(k)
    return _tally(des), _tally(exc), _tally(der)


def colored_eulerian(n: int, r: int, cap: int = MAX_COLORED) -> IntPolynomial:
    """Descent generating polynomial over all ``r``-colored permutations of ``[n]``."""
    _check_colored(n, r, cap)
    return _colored_tallies(n, r)[0]


def colored_excedance_poly(n: int, r: int, cap: int = MAX_COLORED) -> IntPolynomial:
    _check_colored(n, r, cap)
    return _colored_tallies(n, r)[1]


def colored_derangement_poly(n: int, r: int, cap: int = MAX_COLORED) -> IntPolynomial:
    """Excedance generating polynomial over colored derangements."""
    _check_colored(n, r, cap)
    return _colored_tallies(n, r)[2]


def colored_derangement_formula(n: int, r: int, cap: int = MAX_COLORED) -> IntPolynomial:
    """``sum_k (-1)^(n-k) C(n,k) A_{k,r}`` with ``A_{0,r} = 1``."""
    total = ZERO
    for k in range(n + 1):
        a = colored_eulerian(k, r, cap) if k else IntPolynomial([1])
        total = total + a * ((-1) ** (n - k) * comb(n, k))
    return total


def _colored_s(n: int, r: int) -> SSequence:
    return SSequence(tuple(k * r for k in range(1, n + 1)))


def psi_map(sigma: ColoredPermutation) -> InversionSequence:
    """``(c_n + t_n, 2 c_{n-1} + t_{n-1}, ..., n c_1 + t_1)`` under ``s = (r, 2r, ..., nr)``.

    ``t`` is the Lehmer code.  Ascents of the image equal colored descents.
    """
    n, r = sigma.n, sigma.r
    t = lehmer_code(sigma.perm)
    c = sigma.colors
    entries = tuple(k * c[n - k] + t[n - k] for k in range(1, n + 1))
    return InversionSequence(entries, _colored_s(n, r))


def psi_inverse(e: InversionSequence, r: int) -> ColoredPermutation:
    n = e.bound.n
    if e.bound.entries != _colored_s(n, r).entries:
        raise ValueError(f"expected s = (r, 2r, ..., nr) with r = {r}")
    colors = [0] * n
    code = [0] * n
    for k in range(1, n + 1):
        colors[n - k], code[n - k] = divmod(e.entries[k - 1], k)
    # decode the Lehmer code
    pool = list(range(1, n + 1))
    values = tuple(pool.pop(t) for t in code)
    return ColoredPermutation(Permutation(values), tuple(colors), r)


def bad_numbers(sigma: ColoredPermutation) -> frozenset[int]:
    """Values ``pi_j`` with ``pi_j`` and ``pi_{j-1}`` below everything to the right
    and ``c_j = c_{j-1}``; ``pi_0 = 0`` and ``c_0 = 0``.
    """
    v = (0, *sigma.values)
    c = (0, *sigma.colors)
    n = sigma.n
    # suffix minima: suf[j] = min(v[j:]) over positions j..n
    suf = [0] * (n + 2)
    suf[n + 1] = n + 1
    for j in range(n, 0, -1):
        suf[j] = min(v[j], suf[j + 1])
    out = set()
    for j in range(1, n + 1):
        if v[j] < suf[j + 1] and v[j - 1] < suf[j] and c[j] == c[j - 1]:
            out.add(v[j])
    return frozenset(out)


def insert_bad(sigma: ColoredPermutation, T: Iterable[int], n: int) -> ColoredPermutation:
    """Relabel ``sigma`` onto ``[n] - T`` and insert each ``i`` in ``T`` so it becomes bad.

    Numbers go in increasing order: 1 goes to the front with color 0, any
    other ``i`` goes right after the rightmost entry below ``i`` that is also
    below everything to its right, and copies that entry's color.
    """
    T = sorted(set(T))
    if any(not 1 <= i <= n for i in T):
        raise ValueError(f"T must be a subset of 1..{n}")
    if sigma.n + len(T) != n:
        raise ValueError(f"sigma has length {sigma.n}, expected {n - len(T)}")
    keep = [x for x in range(1, n + 1) if x not in set(T)]
    values = [keep[v - 1] for v in sigma.values]
    colors = list(sigma.colors)
    for i in T:
        if i == 1:
            values.insert(0, 1)
            colors.insert(0, 0)
            continue
        pos = None
        running = n + 1
        for j in range(len(values) - 1, -1, -1):
            if values[j] < running:
                running = values[j]
                if values[j] < i:
                    pos = j
                    break
        if pos is None:
            raise ValueError(f"no insertion point for {i}")
        values.insert(pos + 1, i)
        colors.insert(pos + 1, colors[pos])
    return ColoredPermutation(Permutation(tuple(values)), tuple(colors), sigma.r)


def remove_bad(sigma: ColoredPermutation, T: Iterable[int]) -> ColoredPermutation:
    """Delete the values in ``T`` and relabel the rest onto ``1..n-|T|``."""
    T = set(T)
    kept = [(v, c) for v, c in zip(sigma.values, sigma.colors) if v not in T]
    rank = {v: k for k, v in enumerate(sorted(v for v, _ in kept), 1)}
    return ColoredPermutation(
        Permutation(tuple(rank[v] for v, _ in kept)), tuple(c for _, c in kept), sigma.r
    )
