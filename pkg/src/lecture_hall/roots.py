"""Exact real-root analysis for integer polynomials.

Everything here runs on integers and ``Fraction``: greatest common divisors
by primitive pseudo-remainder sequences, Sturm chains for counting distinct
real roots, bisection for isolating them, and the interlacing test built on
top of the isolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2

from .errors import NotRealRooted
from .polynomial import IntPolynomial

__all__ = [
    "poly_gcd",
    "squarefree_part",
    "squarefree_factorization",
    "sturm_sequence",
    "count_real_roots",
    "is_real_rooted",
    "RootIsolation",
    "isolate_real_roots",
    "interlaces",
    "is_interlacing_sequence",
]


def _pseudo_remainder(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    """Remainder of ``|lc(b)|**k * a`` by ``b``, a positive multiple of the true remainder."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    scale = abs(lead)
    sign = 1 if lead > 0 else -1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        # r <- |lead| * r - sign * c * z^shift * b
        r = [x * scale for x in r]
        f = sign * c
        for j, bj in enumerate(b):
            r[shift + j] -= f * bj
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(coeffs: list[int]) -> tuple[int, ...]:
    """Divide by the positive content; keeps signs."""
    from math import gcd

    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g > 1:
        return tuple(c // g for c in coeffs)
    return tuple(coeffs)


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient; ``gcd(0, 0) = 0``."""
    a, b = p.primitive().coeffs, q.primitive().coeffs
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _primitive(_pseudo_remainder(a, b))
        a, b = b, r
    return IntPolynomial(a).primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return (p.primitive() // g).primitive()


def squarefree_factorization(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: pairs ``(f_k, k)`` with ``p = c * prod f_k**k``, each ``f_k`` squarefree."""
    if p.degree <= 0:
        return []
    out = []
    a = p.primitive()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    k = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z) if not z.is_zero else w
        if g.degree > 0:
            out.append((g.primitive(), k))
        w = w // g
        y = z // g
        k += 1
    return out


def sturm_sequence(p: IntPolynomial) -> list[tuple[int, ...]]:
    """Sturm chain of ``p`` with each member rescaled by a positive constant."""
    seq = [_primitive(list(p.coeffs))]
    dp = p.derivative()
    if dp.is_zero:
        return seq
    seq.append(_primitive(list(dp.coeffs)))
    while len(seq[-1]) > 1:
        r = _pseudo_remainder(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_primitive([-c for c in r]))
    return seq


def _eval_sign(coeffs: tuple[int, ...], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    d = len(coeffs) - 1
    acc = 0
    for i, c in enumerate(coeffs):
        if c:
            acc += c * num**i * den ** (d - i)
    return (acc > 0) - (acc < 0)


def _variations(signs) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _variations_at(seq, x: Fraction) -> int:
    return _variations(_eval_sign(c, x) for c in seq)


def _variations_at_infinity(seq, sign: int) -> int:
    out = []
    for c in seq:
        lead = 1 if c[-1] > 0 else -1
        if sign < 0 and (len(c) - 1) % 2:
            lead = -lead
        out.append(lead)
    return _variations(out)


def count_real_roots(p: IntPolynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means infinite."""
    q = squarefree_part(p)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    v_lo = _variations_at_infinity(seq, -1) if lo is None else _variations_at(seq, Fraction(lo))
    v_hi = _variations_at_infinity(seq, 1) if hi is None else _variations_at(seq, Fraction(hi))
    return v_lo - v_hi


def is_real_rooted(p: IntPolynomial) -> bool:
    """True iff every complex root of ``p`` is real; the zero polynomial counts as real-rooted."""
    if p.degree <= 0:
        return True
    q = squarefree_part(p)
    return count_real_roots(q) == q.degree


def _cauchy_bound(p: IntPolynomial) -> int:
    lead = abs(p.leading)
    return 1 + max(-(-abs(c) // lead) for c in p.coeffs[:-1]) if p.degree > 0 else 1


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint sorted intervals ``(lo, hi]``, each holding one distinct real root.

    When ``lo == hi`` the root is exactly that rational number.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)


def _separation_depth(q: IntPolynomial, width: Fraction) -> int:
    # bisections needed to get below a Mahler-type root separation bound
    d = q.degree
    norm = sum(c * c for c in q.coeffs) ** 0.5
    log_sep = 0.5 * log2(3) - (d + 2) / 2 * log2(max(d, 2)) - (d - 1) * log2(max(norm, 1.0))
    return max(10 * d, ceil(log2(max(float(width), 1.0)) - log_sep) + 4)


def _isolate_squarefree(q: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    bound = Fraction(_cauchy_bound(q))
    cap = _separation_depth(q, 2 * bound)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _variations_at(seq, -bound) - _variations_at(seq, bound), 0)]
    while stack:
        lo, hi, count, depth = stack.pop()
        if count == 0:
            continue
        if count == 1:
            if _eval_sign(q.coeffs, hi) == 0:
                out.append((hi, hi))
            else:
                out.append((lo, hi))
            continue
        if depth > cap:
            raise RuntimeError("root isolation exceeded its refinement cap")
        mid = (lo + hi) / 2
        v_mid = _variations_at(seq, mid)
        left = _variations_at(seq, lo) - v_mid
        stack.append((mid, hi, count - left, depth + 1))
        stack.append((lo, mid, left, depth + 1))
    out.sort()
    return out


def isolate_real_roots(p: IntPolynomial) -> RootIsolation:
    """Isolate the distinct real roots of ``p`` and attach their multiplicities."""
    if p.degree <= 0:
        return RootIsolation((), ())
    intervals = _isolate_squarefree(squarefree_part(p))
    factors = squarefree_factorization(p)
    mults = []
    for lo, hi in intervals:
        mults.append(_multiplicity_in(factors, lo, hi))
    return RootIsolation(tuple(intervals), tuple(mults))


def _multiplicity_in(factors, lo: Fraction, hi: Fraction) -> int:
    """Multiplicity of the unique root in ``(lo, hi]`` (or at ``lo == hi``); 0 if absent."""
    for f, k in factors:
        if lo == hi:
            if _eval_sign(f.coeffs, hi) == 0:
                return k
        elif count_real_roots(f, lo, hi):
            return k
    return 0


def _roots_descending(iso_common, factors) -> list[int]:
    """Ranks (0 = largest) of the common isolation, repeated by multiplicity."""
    out = []
    for rank, (lo, hi) in enumerate(reversed(iso_common)):
        k = _multiplicity_in(factors, lo, hi)
        out.extend([rank] * k)
    return out


def interlaces(q: IntPolynomial, p: IntPolynomial) -> bool:
    """True iff ``q`` interlaces ``p``: roots alternate ``a1 >= b1 >= a2 >= b2 >= ...``.

    ``a`` are the roots of ``p`` and ``b`` those of ``q``, with multiplicity.
    The zero polynomial interlaces and is interlaced by everything.
    """
    for name, f in (("q", q), ("p", p)):
        if not is_real_rooted(f):
            raise NotRealRooted(f"{name} = {f} is not real-rooted")
    if q.is_zero or p.is_zero:
        return True
    product = p * q
    common = _isolate_squarefree(squarefree_part(product))
    alpha = _roots_descending(common, squarefree_factorization(p))
    beta = _roots_descending(common, squarefree_factorization(q))
    if len(beta) not in (len(alpha), len(alpha) - 1):
        return False
    # ranks grow as roots shrink, so "x >= y" on roots means rank(x) <= rank(y)
    for i, b in enumerate(beta):
        if not alpha[i] <= b:
            return False
        if i + 1 < len(alpha) and not b <= alpha[i + 1]:
            return False
    return True


def is_interlacing_sequence(polys, consecutive_only: bool = False) -> bool:
    """``f_i`` interlaces ``f_j`` for all ``i <= j`` (or just consecutive pairs)."""
    polys = list(polys)
    for i in range(len(polys)):
        js = [i + 1] if consecutive_only else range(i + 1, len(polys))
        for j in js:
            if j < len(polys) and not interlaces(polys[i], polys[j]):
                return False
    return True
