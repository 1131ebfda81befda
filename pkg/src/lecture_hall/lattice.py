"""Lattice simplices and the lattice points of their fundamental parallelepipeds.

Each vertex ``v_i`` is lifted to ``w_i = (v_i, 1)``.  A lattice point of
the half-open parallelepiped is ``sum lambda_i w_i`` with ``0 <= lambda_i < 1``,
and its height is the last coordinate.  The points are enumerated as the
quotient of the integer points of ``span(w)`` by the lattice ``Z w``:

    diagonalize ``L W R = D`` with ``L``, ``R`` unimodular; then
    ``lambda W`` is integral iff ``(lambda L^{-1})_k`` lies in ``(1/d_k) Z``,
    so ``lambda = y D^{-1} L  (mod 1)`` for ``0 <= y_k < d_k``.

Only the row transform ``L`` and the diagonal are needed.  Lower-dimensional
simplices need no special treatment: the quotient automatically lives in the
lattice of their span.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product, repeat
from math import gcd, lcm
from operator import sub
from typing import Sequence

import numpy as np

from .errors import SingleVertex, VolumeTooLarge
from .inversions import InversionSequence, SSequence, _as_sseq
from .polynomial import IntPolynomial

__all__ = [
    "LatticeSimplex",
    "ParallelepipedPoint",
    "default_max_points",
    "diagonal_form",
    "lecture_hall_simplex",
    "enumerate_fundamental_domain",
    "half_open_points",
    "open_points",
    "hstar",
    "local_hstar",
    "rem_map",
    "face",
    "face_mu",
]

DEFAULT_MAX_POINTS = 10**7
_VECTOR_THRESHOLD = 24


def default_max_points() -> int:
    """The point cap, overridable through ``LHL_MAX_POINTS``."""
    value = os.environ.get("LHL_MAX_POINTS")
    return int(value) if value else DEFAULT_MAX_POINTS


def diagonal_form(rows: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Return ``(diag, L)`` with ``L @ rows @ R`` diagonal for some unimodular ``R``.

    ``L`` is unimodular, ``diag`` holds positive entries.  Raises ``ValueError``
    when the rows are linearly dependent.
    """
    a = [list(r) for r in rows]
    m = len(a)
    ncols = len(a[0]) if m else 0
    left = [[int(i == j) for j in range(m)] for i in range(m)]
    diag = []
    for t in range(m):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, ncols):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                raise ValueError("rows are linearly dependent")
            _, pi, pj = best
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                left[t], left[pi] = left[pi], left[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
            piv = a[t][t]
            if piv < 0:
                a[t] = [-x for x in a[t]]
                left[t] = [-x for x in left[t]]
                piv = -piv
            clean = True
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // piv
                    if q:
                        ra, rt = a[i], a[t]
                        for j in range(t, ncols):
                            ra[j] -= q * rt[j]
                        la, lt = left[i], left[t]
                        for j in range(m):
                            la[j] -= q * lt[j]
                    if a[i][t]:
                        clean = False
            rt = a[t]
            for j in range(t + 1, ncols):
                x = rt[j]
                if x:
                    q = x // piv
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if rt[j]:
                        clean = False
            if clean:
                break
        diag.append(a[t][t])
    return diag, left


@dataclass(frozen=True)
class ParallelepipedPoint:
    coordinates: tuple[int, ...]
    height: int
    lam: tuple[Fraction, ...]


@dataclass(frozen=True)
class _Quotient:
    diag: tuple[int, ...]
    denom: int
    # generator rows: lambda * denom (mod denom) contributed by y_k = 1
    gens: tuple[tuple[int, ...], ...]
    volume: int


def _reduced(vertices: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    # translating by a vertex and dropping coordinates that are then constant
    # zero is a lattice isomorphism of the span, so box points are unchanged
    base = vertices[-1]
    cols = [tuple(map(sub, col, repeat(b))) for col, b in zip(zip(*vertices), base)]
    cols = [c for c in cols if any(c)]
    if not cols:
        return tuple(() for _ in vertices)
    return tuple(zip(*cols))


@lru_cache(maxsize=1 << 18)
def _quotient_for(vertices: tuple[tuple[int, ...], ...]) -> _Quotient:
    lifted = [(*v, 1) for v in vertices]
    try:
        diag, left = diagonal_form(lifted)
    except ValueError:
        raise ValueError("vertices are not affinely independent") from None
    denom = 1
    for d in diag:
        denom = lcm(denom, d)
    gens = []
    volume = 1
    for k, d in enumerate(diag):
        volume *= d
        if d > 1:
            f = denom // d
            gens.append((d, tuple((f * x) % denom for x in left[k])))
    return _Quotient(
        diag=tuple(d for d, _ in gens),
        denom=denom,
        gens=tuple(g for _, g in gens),
        volume=volume,
    )


@dataclass(frozen=True)
class LatticeSimplex:
    """Convex hull of affinely independent integer points."""

    vertices: tuple[tuple[int, ...], ...]
    _key: tuple = field(init=False, repr=False, compare=False)
    _quotient: _Quotient = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(tuple(map(int, v)) for v in self.vertices)
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        dims = {len(v) for v in verts}
        if len(dims) != 1:
            raise ValueError("vertices have different dimensions")
        object.__setattr__(self, "vertices", verts)
        key = _reduced(verts)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_quotient", _quotient_for(key))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def normalized_volume(self) -> int:
        """Index of ``Z w`` inside the integer points of its span."""
        return self._quotient.volume

    def lifted(self) -> list[tuple[int, ...]]:
        return [(*v, 1) for v in self.vertices]

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]

    @classmethod
    def from_json(cls, data) -> LatticeSimplex:
        return cls(tuple(tuple(v) for v in data))


def lecture_hall_simplex(s) -> LatticeSimplex:
    """Vertices ``v_i = (0, ..., 0, s_{i+1}, ..., s_n)`` for ``i = 0..n``."""
    s = _as_sseq(s).entries
    n = len(s)
    return LatticeSimplex(tuple(tuple(0 if j < i else s[j] for j in range(n)) for i in range(n + 1)))


def _check_cap(simplex: LatticeSimplex, max_points: int | None) -> None:
    cap = default_max_points() if max_points is None else max_points
    if simplex.normalized_volume > cap:
        raise VolumeTooLarge(
            f"normalized volume {simplex.normalized_volume} exceeds the point cap {cap}"
        )


def _lambda_rows(simplex: LatticeSimplex):
    """Yield ``lambda * denom`` (entries reduced mod denom) for every coset."""
    q = simplex._quotient
    m = simplex.dim + 1
    if not q.gens:
        yield (0,) * m
        return
    for ys in product(*(range(d) for d in q.diag)):
        acc = [0] * m
        for y, g in zip(ys, q.gens):
            if y:
                for i in range(m):
                    acc[i] += y * g[i]
        yield tuple(x % q.denom for x in acc)


def enumerate_fundamental_domain(
    simplex: LatticeSimplex, max_points: int | None = None
) -> list[ParallelepipedPoint]:
    """One half-open parallelepiped point per coset, sorted canonically."""
    _check_cap(simplex, max_points)
    denom = simplex._quotient.denom
    lifted = simplex.lifted()
    points = []
    for lam in _lambda_rows(simplex):
        coords = []
        for j in range(len(lifted[0])):
            total = sum(l * w[j] for l, w in zip(lam, lifted))
            coords.append(total // denom)
        points.append(
            ParallelepipedPoint(
                coordinates=tuple(coords),
                height=coords[-1],
                lam=tuple(Fraction(l, denom) for l in lam),
            )
        )
    points.sort(key=lambda p: (p.height, p.coordinates))
    return points


def _box_points(simplex: LatticeSimplex, max_points: int | None) -> list[ParallelepipedPoint]:
    """Bounding-box scan with exact barycentric membership; cross-check only."""
    _check_cap(simplex, max_points)
    lifted = simplex.lifted()
    m = len(lifted)
    dim = len(lifted[0])
    lo = [sum(min(0, w[j]) for w in lifted) for j in range(dim)]
    hi = [sum(max(0, w[j]) for w in lifted) for j in range(dim)]
    box = 1
    for a, b in zip(lo, hi):
        box *= b - a + 1
    cap = default_max_points() if max_points is None else max_points
    if box > 100 * cap:
        raise VolumeTooLarge(f"bounding box of {box} points exceeds the scan cap")
    # choose m independent coordinates and invert that square block
    cols = _independent_columns(lifted)
    block = [[Fraction(w[j]) for j in cols] for w in lifted]
    inv = _invert(block)
    out = []
    ranges = [range(lo[j], hi[j] + 1) for j in range(dim)]
    for x in product(*ranges):
        lam = [sum(x[cols[c]] * inv[c][i] for c in range(m)) for i in range(m)]
        if not all(0 <= l < 1 for l in lam):
            continue
        if any(sum(l * w[j] for l, w in zip(lam, lifted)) != x[j] for j in range(dim)):
            continue
        out.append(ParallelepipedPoint(tuple(x), x[-1], tuple(lam)))
    out.sort(key=lambda p: (p.height, p.coordinates))
    return out


def _independent_columns(rows) -> list[int]:
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    m = len(rows)
    for j in range(len(rows[0])):
        vec = [Fraction(r[j]) for r in rows]
        for piv, b in basis:
            if vec[piv]:
                f = vec[piv] / b[piv]
                vec = [x - f * y for x, y in zip(vec, b)]
        nz = next((i for i, x in enumerate(vec) if x), None)
        if nz is not None:
            basis.append((nz, vec))
            chosen.append(j)
            if len(chosen) == m:
                break
    return chosen


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def half_open_points(
    simplex: LatticeSimplex, max_points: int | None = None, method: str = "normal_form"
) -> list[ParallelepipedPoint]:
    """Lattice points of the half-open parallelepiped.

    ``method="box"`` scans the bounding box instead; it is slow and exists to
    cross-validate the quotient enumeration.
    """
    if method == "normal_form":
        return enumerate_fundamental_domain(simplex, max_points)
    if method == "box":
        return _box_points(simplex, max_points)
    raise ValueError(f"unknown method {method!r}")


def open_points(
    simplex: LatticeSimplex, max_points: int | None = None, method: str = "normal_form"
) -> list[ParallelepipedPoint]:
    return [p for p in half_open_points(simplex, max_points, method) if all(l > 0 for l in p.lam)]


def _height_counts(simplex: LatticeSimplex, open_only: bool) -> list[int]:
    q = simplex._quotient
    m = simplex.dim + 1
    counts = [0] * (m + 1)
    denom = q.denom
    if q.volume <= _VECTOR_THRESHOLD or m * denom * denom >= 2**62:
        for lam in _lambda_rows(simplex):
            if open_only and not all(lam):
                continue
            counts[sum(lam) // denom] += 1
        return counts
    grids = np.meshgrid(*(np.arange(d, dtype=np.int64) for d in q.diag), indexing="ij")
    ys = np.stack([g.ravel() for g in grids], axis=1)
    gens = np.array(q.gens, dtype=np.int64)
    lam = (ys @ gens) % denom
    if open_only:
        lam = lam[(lam != 0).all(axis=1)]
    heights = lam.sum(axis=1) // denom
    binc = np.bincount(heights, minlength=m + 1)
    return [int(c) for c in binc]


def hstar(simplex: LatticeSimplex, max_points: int | None = None) -> IntPolynomial:
    """Height generating polynomial of the half-open parallelepiped."""
    _check_cap(simplex, max_points)
    return IntPolynomial(_height_counts(simplex, open_only=False))


@lru_cache(maxsize=1 << 18)
def _local_hstar_cached(vertices: tuple[tuple[int, ...], ...]) -> IntPolynomial:
    return IntPolynomial(_height_counts(LatticeSimplex(vertices), open_only=True))


def local_hstar(simplex: LatticeSimplex, max_points: int | None = None) -> IntPolynomial:
    """Box polynomial: height generating polynomial of the open parallelepiped."""
    _check_cap(simplex, max_points)
    return _local_hstar_cached(simplex._key)


def rem_map(x: ParallelepipedPoint, s) -> InversionSequence:
    """Entrywise remainder ``x_i mod s_i`` of the first ``n`` coordinates."""
    s = _as_sseq(s)
    return InversionSequence(tuple(x.coordinates[i] % s[i] for i in range(s.n)), s)


def face(simplex: LatticeSimplex, indices) -> LatticeSimplex:
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("a face needs at least one vertex")
    return LatticeSimplex(tuple(simplex.vertices[i] for i in idx))


def face_mu(s, indices) -> SSequence:
    """``mu_j = gcd(s_{i_{j-1}+1}, ..., s_{i_j})`` for sorted vertex indices ``i_0 < ... < i_m``."""
    s = _as_sseq(s).entries
    idx = sorted(set(indices))
    if any(not 0 <= i <= len(s) for i in idx):
        raise ValueError(f"vertex indices must lie in 0..{len(s)}")
    if len(idx) < 2:
        raise SingleVertex("a single vertex has no mu sequence; its box polynomial is 0")
    mu = []
    for a, b in zip(idx, idx[1:]):
        g = 0
        for x in s[a:b]:
            g = gcd(g, x)
        mu.append(g)
    return SSequence(tuple(mu))
