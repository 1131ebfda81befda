"""Exact univariate integer polynomials and their distributional properties.

A polynomial is stored as a tuple of Python ints, index ``i`` holding the
coefficient of ``z**i``, with trailing zeros trimmed.  The zero polynomial
is the empty tuple and has degree ``-1``.

>>> p = IntPolynomial([0, 1, 7, 1])
>>> p.degree, p(1)
(3, 9)
>>> is_symmetric(p, 4), gamma_vector(p, 4).entries
(True, (0, 1, 5))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegreeTooHigh, NotSymmetric

__all__ = [
    "IntPolynomial",
    "GammaVector",
    "ZERO",
    "ONE",
    "Z",
    "is_symmetric",
    "is_unimodal",
    "is_log_concave",
    "gamma_vector",
    "is_gamma_nonnegative",
    "symmetric_decomposition",
    "binomial_power",
]

_INT64_MAX = 2**63 - 1


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPolynomial:
    """Immutable dense polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        values = []
        for c in coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"coefficient {c!r} is not an integer")
            values.append(int(c))
        object.__setattr__(self, "coeffs", _trim(values))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int], lead: int = 1) -> IntPolynomial:
        """Return ``lead * prod(z - r)``."""
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient_list(self, length: int | None = None) -> list[int]:
        """Coefficients padded with zeros up to ``length`` entries."""
        out = list(self.coeffs)
        if length is not None:
            out.extend([0] * (length - len(out)))
        return out

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                body = mag + ("z" if k == 1 else f"z^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coerce(other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial([other])
        raise TypeError(f"cannot combine IntPolynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial([c * other for c in self.coeffs])
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for ints and Fractions."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by ``z**k``."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def derivative(self) -> IntPolynomial:
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def reversed(self, d: int) -> IntPolynomial:
        """Return ``z**d * p(1/z)``; requires ``degree <= d``."""
        if self.degree > d:
            raise DegreeTooHigh(f"degree {self.degree} exceeds {d}")
        return IntPolynomial(self.coefficient_list(d + 1)[::-1])

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def divmod_exact(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division over the rationals; raises if the quotient is not integral."""
        q, r = rational_divmod(self.coeffs, divisor.coeffs)
        if any(c.denominator != 1 for c in q) or any(c.denominator != 1 for c in r):
            raise ArithmeticError("division is not exact over the integers")
        return IntPolynomial(int(c) for c in q), IntPolynomial(int(c) for c in r)

    def __floordiv__(self, divisor):
        q, r = self.divmod_exact(self._coerce(divisor))
        if r:
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def to_json(self) -> list:
        """Coefficients as JSON values; integers beyond 64 bits become strings."""
        return [c if abs(c) <= _INT64_MAX else str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> IntPolynomial:
        return cls(int(c) for c in data)


def rational_divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    if not b or all(c == 0 for c in b):
        raise ZeroDivisionError("polynomial division by zero")
    b = list(b)
    while b[-1] == 0:
        b.pop()
    rem = [Fraction(c) for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - db)
    lead = Fraction(b[-1])
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] / lead
        quot[k - db] = c
        if c:
            for j, bj in enumerate(b):
                rem[k - db + j] -= c * bj
    rem = rem[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


ZERO = IntPolynomial()
ONE = IntPolynomial([1])
Z = IntPolynomial([0, 1])


def binomial_power(k: int) -> IntPolynomial:
    """``(1 + z)**k``."""
    from math import comb

    return IntPolynomial([comb(k, i) for i in range(k + 1)])


def is_symmetric(p: IntPolynomial, d: int) -> bool:
    """True iff ``p_k == p_{d-k}`` for every ``0 <= k <= d``."""
    if p.degree > d:
        return False
    c = p.coefficient_list(d + 1)
    return all(c[k] == c[d - k] for k in range(d // 2 + 1))


def is_unimodal(p: IntPolynomial) -> bool:
    """Weakly rising then weakly falling over indices ``0..degree``."""
    c = p.coeffs
    i = 1
    while i < len(c) and c[i] >= c[i - 1]:
        i += 1
    while i < len(c) and c[i] <= c[i - 1]:
        i += 1
    return i >= len(c)


def is_log_concave(p: IntPolynomial) -> bool:
    c = p.coeffs
    return all(c[k] * c[k] >= c[k - 1] * c[k + 1] for k in range(1, len(c) - 1))


@dataclass(frozen=True)
class GammaVector:
    """Coefficients of a symmetric polynomial in the basis ``z^i (1+z)^(d-2i)``."""

    entries: tuple[int, ...]
    declared_degree: int

    def rebuild(self) -> IntPolynomial:
        d = self.declared_degree
        total = ZERO
        for i, g in enumerate(self.entries):
            if g:
                total = total + (binomial_power(d - 2 * i) * g).shift(i)
        return total

    @property
    def nonnegative(self) -> bool:
        return all(g >= 0 for g in self.entries)


def gamma_vector(p: IntPolynomial, d: int) -> GammaVector:
    if not is_symmetric(p, d):
        raise NotSymmetric(f"{p} is not symmetric with respect to degree {d}")
    rest = p.coefficient_list(d + 1)
    gammas = []
    for i in range(d // 2 + 1):
        g = rest[i]
        gammas.append(g)
        if g:
            for j, b in enumerate(binomial_power(d - 2 * i).coeffs):
                rest[i + j] -= g * b
    if any(rest):  # cannot happen for symmetric input
        raise ArithmeticError("gamma expansion left a nonzero remainder")
    return GammaVector(tuple(gammas), d)


def is_gamma_nonnegative(p: IntPolynomial, d: int) -> bool:
    """False for polynomials that are not symmetric with respect to ``d``."""
    if not is_symmetric(p, d):
        return False
    return gamma_vector(p, d).nonnegative


def symmetric_decomposition(p: IntPolynomial, d: int) -> tuple[IntPolynomial, IntPolynomial]:
    """Unique ``(a, b)`` with ``p = a + z*b``, ``a`` symmetric w.r.t. ``d`` and ``b`` w.r.t. ``d-1``.

    Uses ``a + b = z^d p(1/z)`` and ``a + z b = p``, so ``(1 - z) b`` equals
    the difference of the two.
    """
    if p.degree > d:
        raise DegreeTooHigh(f"degree {p.degree} exceeds {d}")
    diff = p.reversed(d) - p
    b = diff // IntPolynomial([1, -1])
    a = p - b.shift(1)
    return a, b
