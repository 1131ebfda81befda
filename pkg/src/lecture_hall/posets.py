"""Naturally labeled posets, their s-lecture hall order polytopes, and the
canonical triangulation by chains of order filters.

Order filters (up-closed subsets) are bitmasks: bit ``i - 1`` stands for
element ``i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from math import comb, prod
from typing import Iterable, Iterator, Sequence

from .errors import FaceNotInComplex, NotPure, NotRanked, TooLarge
from .inversions import SSequence, _as_sseq
from .lattice import LatticeSimplex, local_hstar
from .permutations import Permutation
from .polynomial import IntPolynomial, ZERO, is_symmetric, is_unimodal
from .roots import is_real_rooted

__all__ = [
    "Poset",
    "OrderPolytope",
    "SimplicialComplex",
    "linear_extensions",
    "order_filters",
    "count_dilate_points",
    "ehrhart_hstar",
    "canonical_triangulation",
    "complex_h_polynomial",
    "link",
    "betke_mcmullen_hstar",
    "rank_sequence",
    "is_reflexive",
    "BoxRow",
    "BoxReport",
    "box_unimodality_report",
    "nonisomorphic_posets",
]

MAX_DILATE_LOOP = 10**8


@dataclass(frozen=True)
class Poset:
    """Poset on ``1..n`` given by relations ``(a, b)`` meaning ``a < b``.

    Any generating set of relations is accepted; ``covers`` is normalized to
    the transitive reduction.  Labels must be natural.
    """

    n: int
    covers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        rels = set()
        for a, b in self.covers:
            a, b = int(a), int(b)
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"relation ({a}, {b}) outside 1..{self.n}")
            if a >= b:
                raise ValueError(f"relation ({a}, {b}) is not naturally labeled")
            rels.add((a, b))
        up = [0] * (self.n + 1)
        # natural labels: close from the top element down
        for a in range(self.n, 0, -1):
            mask = 0
            for x, b in rels:
                if x == a:
                    mask |= (1 << (b - 1)) | up[b]
            up[a] = mask
        reduction = tuple(
            sorted(
                (a, b)
                for a in range(1, self.n + 1)
                for b in range(a + 1, self.n + 1)
                if up[a] >> (b - 1) & 1
                and not any(up[a] >> (c - 1) & 1 and up[c] >> (b - 1) & 1 for c in range(a + 1, b))
            )
        )
        object.__setattr__(self, "covers", reduction)
        object.__setattr__(self, "_up", tuple(up))

    def above(self, i: int) -> int:
        """Bitmask of the elements strictly greater than ``i``."""
        return self._up[i]

    def leq(self, a: int, b: int) -> bool:
        return a == b or bool(self._up[a] >> (b - 1) & 1)

    def relations(self) -> list[tuple[int, int]]:
        """All strict relations of the transitive closure."""
        return [
            (a, b) for a in range(1, self.n + 1) for b in range(a + 1, self.n + 1) if self.leq(a, b)
        ]

    def below(self, i: int) -> list[int]:
        return [a for a in range(1, i) if self.leq(a, i)]

    def minimal_elements(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if not self.below(i)]

    def maximal_elements(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if not self._up[i]]

    def restrict_above_minimum(self) -> Poset:
        """Delete element 1 (assumed the unique minimum) and relabel ``i -> i - 1``."""
        return Poset(self.n - 1, tuple((a - 1, b - 1) for a, b in self.covers if a != 1))

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data) -> Poset:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["n"]), tuple(tuple(c) for c in data.get("covers", [])))

    @classmethod
    def chain(cls, n: int) -> Poset:
        return cls(n, tuple((i, i + 1) for i in range(1, n)))

    @classmethod
    def antichain(cls, n: int) -> Poset:
        return cls(n)


def linear_extensions(P: Poset) -> Iterator[Permutation]:
    """Orderings ``pi`` of ``1..n`` in which every element precedes the ones above it."""
    n = P.n
    full = (1 << n) - 1
    below = [0] * (n + 1)
    for a, b in P.relations():
        below[b] |= 1 << (a - 1)

    def rec(used: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if used == full:
            yield tuple(prefix)
            return
        for i in range(1, n + 1):
            bit = 1 << (i - 1)
            if not used & bit and below[i] & used == below[i]:
                prefix.append(i)
                yield from rec(used | bit, prefix)
                prefix.pop()

    for ext in rec(0, []):
        yield Permutation(ext)


def order_filters(P: Poset) -> list[int]:
    """Up-closed subsets as bitmasks, sorted by size then value."""
    out = []
    for mask in range(1 << P.n):
        if all(P.above(i) & mask == P.above(i) for i in range(1, P.n + 1) if mask >> (i - 1) & 1):
            out.append(mask)
    out.sort(key=lambda m: (bin(m).count("1"), m))
    return out


@dataclass(frozen=True)
class OrderPolytope:
    """``0 <= x_i <= s_i`` and ``x_i / s_i <= x_j / s_j`` whenever ``i <= j`` in ``P``."""

    poset: Poset
    s: SSequence

    def __post_init__(self):
        s = _as_sseq(self.s)
        if s.n != self.poset.n:
            raise ValueError(f"s has length {s.n} but the poset has {self.poset.n} elements")
        object.__setattr__(self, "s", s)

    def contains(self, x: Sequence[int], t: int = 1) -> bool:
        s = self.s.entries
        if any(not 0 <= x[i] <= t * s[i] for i in range(len(s))):
            return False
        return all(s[b - 1] * x[a - 1] <= s[a - 1] * x[b - 1] for a, b in self.poset.relations())


def _dilate_guard(O: OrderPolytope, t: int) -> None:
    bound = prod(t * x + 1 for x in O.s.entries)
    if bound > MAX_DILATE_LOOP:
        raise TooLarge(f"dilate {t} needs up to {bound} loop steps, cap is {MAX_DILATE_LOOP}")


def count_dilate_points(O: OrderPolytope, t: int, method: str = "dfs") -> int:
    """Number of integer points in the ``t``-th dilate.

    The default walks coordinates in label order; since labels are natural,
    every lower bound is known when a coordinate is reached, and the last
    coordinate is counted in closed form.  ``method="box"`` checks every
    point of the bounding box.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = O.poset.n
    s = O.s.entries
    if n == 0:
        return 1
    if method == "box":
        _dilate_guard(O, t)
        return sum(
            1 for x in product(*(range(t * si + 1) for si in s)) if O.contains(x, t)
        )
    if method != "dfs":
        raise ValueError(f"unknown method {method!r}")
    below = [O.poset.below(j) for j in range(1, n + 1)]
    x = [0] * n

    def lower(j: int) -> int:
        lo = 0
        sj = s[j]
        for a in below[j]:
            i = a - 1
            need = -(-x[i] * sj // s[i])
            if need > lo:
                lo = need
        return lo

    def rec(j: int) -> int:
        lo, hi = lower(j), t * s[j]
        if j == n - 1:
            return max(0, hi - lo + 1)
        total = 0
        for v in range(lo, hi + 1):
            x[j] = v
            total += rec(j + 1)
        return total

    return rec(0)


def ehrhart_hstar(O: OrderPolytope) -> IntPolynomial:
    """``h*_i = sum_{j <= i} (-1)^j C(n+1, j) L(i - j)`` from the counts ``L(0..n)``."""
    n = O.poset.n
    if n:
        _dilate_guard(O, n)
    counts = [count_dilate_points(O, t) for t in range(n + 1)]
    coeffs = [
        sum((-1) ** j * comb(n + 1, j) * counts[i - j] for j in range(i + 1)) for i in range(n + 1)
    ]
    if any(c < 0 for c in coeffs):
        raise ArithmeticError(f"negative h* coefficient in {coeffs}")
    return IntPolynomial(coeffs)


@dataclass
class SimplicialComplex:
    """Faces are frozensets of vertex labels; every subset of a face is a face."""

    faces: frozenset[frozenset]
    points: dict = field(default_factory=dict)

    def __post_init__(self):
        faces = {frozenset(f) for f in self.faces}
        faces.add(frozenset())
        closed = set(faces)
        for f in faces:
            for k in range(len(f)):
                closed.update(frozenset(c) for c in combinations(f, k))
        self.faces = frozenset(closed)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], points: dict | None = None) -> SimplicialComplex:
        return cls(frozenset(frozenset(f) for f in facets), dict(points or {}))

    @cached_property
    def facets(self) -> list[frozenset]:
        faces = sorted(self.faces, key=len, reverse=True)
        out: list[frozenset] = []
        for f in faces:
            if not any(f < g for g in out):
                out.append(f)
        return out

    @property
    def vertices(self) -> list:
        return sorted({v for f in self.faces for v in f})

    def f_vector(self) -> list[int]:
        """``[f_{-1}, f_0, f_1, ...]``."""
        top = max(len(f) for f in self.faces)
        out = [0] * (top + 1)
        for f in self.faces:
            out[len(f)] += 1
        return out

    def sorted_faces(self) -> list[tuple]:
        return sorted((tuple(sorted(f)) for f in self.faces), key=lambda f: (len(f), f))

    def simplex(self, face) -> LatticeSimplex:
        return LatticeSimplex(tuple(self.points[v] for v in sorted(face)))


def complex_h_polynomial(K: SimplicialComplex) -> IntPolynomial:
    """``sum_i f_{i-1} z^i (1 - z)^(d - i)`` where ``d`` is the facet size."""
    sizes = {len(f) for f in K.facets}
    if len(sizes) > 1:
        raise NotPure(f"facets have sizes {sorted(sizes)}")
    d = sizes.pop()
    f = K.f_vector()
    one_minus = IntPolynomial([1, -1])
    total = ZERO
    for i, fi in enumerate(f):
        if fi:
            total = total + (one_minus ** (d - i)).shift(i) * fi
    return total


def link(K: SimplicialComplex, face) -> SimplicialComplex:
    face = frozenset(face)
    if face not in K.faces:
        raise FaceNotInComplex(f"{sorted(face)} is not a face")
    return SimplicialComplex(
        frozenset(g - face for g in K.faces if face <= g), dict(K.points)
    )


def canonical_triangulation(O: OrderPolytope) -> SimplicialComplex:
    """Chains of order filters; filter ``F`` sits at ``s_i`` on ``F`` and 0 elsewhere."""
    P, s = O.poset, O.s.entries
    n = P.n
    points = {F: tuple(s[i] if F >> i & 1 else 0 for i in range(n)) for F in order_filters(P)}
    facets = []
    for ext in linear_extensions(P):
        # drop elements from the bottom of the extension one at a time
        F = (1 << n) - 1
        chain = [F]
        for i in ext.values:
            F &= ~(1 << (i - 1))
            chain.append(F)
        facets.append(frozenset(chain))
    return SimplicialComplex.from_facets(facets, points)


_LINK_CACHE: dict[Poset, dict[frozenset, IntPolynomial]] = {}


def _link_h_table(P: Poset, T: SimplicialComplex) -> dict[frozenset, IntPolynomial]:
    # link h-polynomials only see the combinatorics, which does not depend on s
    table = _LINK_CACHE.get(P)
    if table is None:
        table = {face: complex_h_polynomial(link(T, face)) for face in T.faces}
        _LINK_CACHE[P] = table
    return table


def betke_mcmullen_hstar(O: OrderPolytope) -> IntPolynomial:
    """``sum_Delta h(link Delta) * local h*(Delta)`` over every face, the empty one included."""
    T = canonical_triangulation(O)
    hs = _link_h_table(O.poset, T)
    total = ZERO
    for face in T.faces:
        ell = IntPolynomial([1]) if not face else local_hstar(T.simplex(face))
        if ell:
            total = total + hs[face] * ell
    return total


def rank_sequence(P: Poset) -> SSequence:
    """``rank(i) + 1`` for a ranked poset."""
    shortest = [0] * (P.n + 1)
    longest = [0] * (P.n + 1)
    lower_covers: dict[int, list[int]] = {i: [] for i in range(1, P.n + 1)}
    for a, b in P.covers:
        lower_covers[b].append(a)
    for i in range(1, P.n + 1):
        cs = lower_covers[i]
        if cs:
            shortest[i] = 1 + min(shortest[a] for a in cs)
            longest[i] = 1 + max(longest[a] for a in cs)
    bad = [i for i in range(1, P.n + 1) if shortest[i] != longest[i]]
    if bad:
        raise NotRanked(f"saturated chains below {bad[0]} have different lengths")
    return SSequence(tuple(r + 1 for r in longest[1:]))


def is_reflexive(p: IntPolynomial, d: int) -> bool:
    """Symmetry of the h*-polynomial with respect to ``d``."""
    return is_symmetric(p, d)


@dataclass(frozen=True)
class BoxRow:
    face: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...]
    local_hstar: IntPolynomial
    unimodal: bool
    real_rooted: bool


@dataclass(frozen=True)
class BoxReport:
    rows: tuple[BoxRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.unimodal and r.real_rooted for r in self.rows)


@lru_cache(maxsize=4096)
def _real_rooted(p: IntPolynomial) -> bool:
    return is_real_rooted(p)


def box_unimodality_report(O: OrderPolytope) -> BoxReport:
    """Local h*-polynomial of every nonempty face of the canonical triangulation."""
    T = canonical_triangulation(O)
    rows = []
    for face in T.sorted_faces():
        if not face:
            continue
        simplex = T.simplex(face)
        ell = local_hstar(simplex)
        rows.append(BoxRow(face, simplex.vertices, ell, is_unimodal(ell), _real_rooted(ell)))
    return BoxReport(tuple(rows))


def _closed_relation_sets(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    for bits in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if bits >> k & 1}
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c):
            yield frozenset(rel)


def nonisomorphic_posets(n: int) -> list[Poset]:
    """One naturally labeled representative per isomorphism class on ``n`` elements."""
    seen: set[frozenset] = set()
    out = []
    perms = list(permutations(range(1, n + 1)))
    for rel in _closed_relation_sets(n):
        if rel in seen:
            continue
        for p in perms:
            image = frozenset((p[a - 1], p[b - 1]) for a, b in rel)
            if all(a < b for a, b in image):
                seen.add(image)
        out.append(Poset(n, tuple(sorted(rel))))
    return out
