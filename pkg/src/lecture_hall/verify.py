"""Verification suites: each one recomputes a family of identities two
independent ways and records every comparison as a check.
"""

from __future__ import annotations

import csv
import inspect
import io
import json
import os
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial
from typing import Callable

from .errors import NotRanked
from .inversions import (
    InversionSequence,
    enumerate_restricted,
    s_derangement_enum,
    s_derangement_recursive,
    s_eulerian,
)
from .lattice import face, face_mu, lecture_hall_simplex, local_hstar
from .permutations import (
    ColoredPermutation,
    _tally,
    bad_numbers,
    colored_derangement_formula,
    colored_derangement_poly,
    colored_descent_count,
    colored_eulerian,
    colored_excedance_poly,
    colored_permutations,
    derangement_poly,
    derangement_to_inversion,
    excedance_count,
    insert_bad,
    inversion_to_derangement,
    is_derangement,
    psi_inverse,
    psi_map,
    remove_bad,
    smirnoff_descent_poly,
)
from .polynomial import (
    IntPolynomial,
    ZERO,
    is_gamma_nonnegative,
    is_log_concave,
    is_symmetric,
    is_unimodal,
    symmetric_decomposition,
)
from .posets import (
    OrderPolytope,
    Poset,
    betke_mcmullen_hstar,
    box_unimodality_report,
    ehrhart_hstar,
    linear_extensions,
    nonisomorphic_posets,
    rank_sequence,
)
from .roots import is_real_rooted

__all__ = [
    "Check",
    "VerificationReport",
    "emit_table",
    "run_suite",
    "SUITES",
    "random_s_corpus",
    "poset_corpus",
]

COLORED_CAP = 10**5


@dataclass(frozen=True)
class Check:
    id: str
    params: dict
    expected: object
    actual: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        }


def _check(id: str, params: dict, expected, actual) -> Check:
    if isinstance(expected, IntPolynomial):
        expected = expected.to_json()
    if isinstance(actual, IntPolynomial):
        actual = actual.to_json()
    return Check(id, params, expected, actual, expected == actual)


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    duration_ms: int = 0

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: c.id)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "duration_ms": self.duration_ms,
            "checks": [c.to_json() for c in self.checks],
        }

    @classmethod
    def from_json(cls, data) -> VerificationReport:
        if isinstance(data, str):
            data = json.loads(data)
        checks = [
            Check(c["id"], c["params"], c["expected"], c["actual"], c["passed"])
            for c in data["checks"]
        ]
        return cls(data["suite"], checks, int(data.get("duration_ms", 0)))


CSV_HEADER = ["suite", "id", "params", "expected", "actual", "passed"]


def emit_table(report: VerificationReport, fmt: str = "json") -> str:
    """Serialize a report; CSV puts one check per row with JSON-encoded cells."""
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2)
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for c in report.checks:
        writer.writerow(
            [
                report.suite,
                c.id,
                json.dumps(c.params, sort_keys=True),
                json.dumps(c.expected),
                json.dumps(c.actual),
                "true" if c.passed else "false",
            ]
        )
    return buf.getvalue()


def _sid(s) -> str:
    return ",".join(str(x) for x in s)


def _pid(P: Poset) -> str:
    rel = " ".join(f"{a}<{b}" for a, b in P.covers) or "-"
    return f"n={P.n}[{rel}]"


def random_s_corpus(count: int, max_n: int, max_entry: int, seed: int = 0) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    return [
        tuple(rng.randint(1, max_entry) for _ in range(rng.randint(1, max_n)))
        for _ in range(count)
    ]


def poset_corpus(max_n: int, per_poset: int, max_entry: int, seed: int = 0):
    """Pairs ``(P, s)``: every poset up to isomorphism, each with random ``s``."""
    rng = random.Random(seed)
    out = []
    for n in range(1, max_n + 1):
        for P in nonisomorphic_posets(n):
            for _ in range(per_poset):
                out.append((P, tuple(rng.randint(1, max_entry) for _ in range(n))))
    return out


# suites ---------------------------------------------------------------------


def suite_derangements(max_n=7, **_) -> list[Check]:
    out = []
    for n in range(2, max_n + 1):
        s = tuple(range(2, n + 1))
        out.append(
            _check(f"n={n:02d}", {"n": n, "s": list(s)}, derangement_poly(n), s_derangement_enum(s))
        )
    return out


def suite_derangement_bijection(max_n=6, **_) -> list[Check]:
    out = []
    e = InversionSequence((1, 0, 3, 2), (2, 3, 4, 5))
    p = inversion_to_derangement(e)
    out.append(_check("example", {"padded": [0, 1, 0, 3, 2, 0]}, "34521", str(p)))
    out.append(_check("example-cycles", {}, [[1, 3, 5], [2, 4]], [list(c) for c in p.cycles()]))
    for n in range(2, max_n + 1):
        s = tuple(range(2, n + 1))
        seqs = list(enumerate_restricted(s))
        images = set()
        ok = True
        for e in seqs:
            p = inversion_to_derangement(e)
            images.add(p.values)
            ok &= is_derangement(p) and excedance_count(p) == e.des
            ok &= derangement_to_inversion(p) == e
        derangements = {q for q in _all_perms(n) if is_derangement(q)}
        out.append(
            _check(
                f"n={n:02d}",
                {"n": n},
                {"bijective": True, "statistic": True},
                {"bijective": images == derangements, "statistic": ok},
            )
        )
    return out


def _all_perms(n: int):
    from itertools import permutations

    return permutations(range(1, n + 1))


def suite_colored_bijection(max_n=4, max_entry=3, **_) -> list[Check]:
    out = []
    sigma = ColoredPermutation.parse("2^2 1^1 3^0", r=3)
    out.append(
        _check(
            "example",
            {"n": 6, "r": 3, "T": [1, 3, 4], "sigma": str(sigma)},
            "1^0 5^2 2^1 3^1 4^1 6^0",
            str(insert_bad(sigma, {1, 3, 4}, 6)),
        )
    )
    target = ColoredPermutation.parse("1^0 5^2 2^1 3^1 4^1 6^0", r=3)
    out.append(_check("example-bad", {}, [1, 3, 4], sorted(bad_numbers(target))))
    for n in range(1, min(max_n, 3) + 1):
        for r in range(1, min(max_entry, 2) + 1):
            ok = True
            seen = set()
            for x in colored_permutations(n, r):
                e = psi_map(x)
                seen.add(e.entries)
                ok &= e.asc == colored_descent_count(x) and psi_inverse(e, r) == x
            total = r**n * factorial(n)
            out.append(
                _check(f"psi/n={n}/r={r}", {"n": n, "r": r}, [total, True], [len(seen), ok])
            )
    for n in range(1, max_n + 1):
        r = 2
        ok = True
        for k in range(n + 1):
            for T in combinations(range(1, n + 1), k):
                images = set()
                for x in colored_permutations(n - k, r):
                    y = insert_bad(x, T, n)
                    ok &= set(T) <= bad_numbers(y)
                    ok &= colored_descent_count(y) == colored_descent_count(x)
                    ok &= remove_bad(y, T) == x
                    images.add(y)
                target = {y for y in colored_permutations(n, r) if set(T) <= bad_numbers(y)}
                ok &= images == target
        out.append(_check(f"insert/n={n}/r={r}", {"n": n, "r": r}, True, ok))
    for n in range(1, max_n + 1):
        for r in range(1, max_entry + 1):
            good = _tally(
                colored_descent_count(x) for x in colored_permutations(n, r) if not bad_numbers(x)
            )
            out.append(
                _check(f"no-bad/n={n}/r={r}", {"n": n, "r": r}, _colored_split(n, r), good)
            )
    return out


def _colored_s(n: int, r: int, start: int = 1) -> tuple[int, ...]:
    return tuple(k * r for k in range(start, n + 1))


def _colored_parts(n: int, r: int) -> tuple[IntPolynomial, IntPolynomial]:
    """``(d^s_{n-1}, d^mu_n)`` with ``s = (2r, ..., nr)`` and ``mu = (r, ..., nr)``."""
    ds = s_derangement_enum(_colored_s(n, r, 2)) if n > 1 else ZERO
    return ds, s_derangement_enum(_colored_s(n, r))


def _colored_split(n: int, r: int) -> IntPolynomial:
    a, b = _colored_parts(n, r)
    return a + b


def _colored_range(max_n: int, max_entry: int):
    for n in range(1, max_n + 1):
        for r in range(1, max_entry + 1):
            if r**n * factorial(n) <= COLORED_CAP:
                yield n, r


def suite_box_polynomial(max_n=5, max_entry=6, **_) -> list[Check]:
    out = []
    for n in range(1, max_n + 1):
        for s in product(range(1, max_entry + 1), repeat=n):
            heights = local_hstar(lecture_hall_simplex(s))
            asc = s_derangement_enum(s, "asc")
            des = s_derangement_enum(s, "des")
            out.append(
                _check(
                    f"s={_sid(s)}",
                    {"s": list(s)},
                    [heights.to_json()] * 2,
                    [asc.to_json(), des.to_json()],
                )
            )
    return out


def suite_recursion(max_n=6, max_entry=6, seed=0, count=500, **_) -> list[Check]:
    return [
        _check(f"{k:03d}/s={_sid(s)}", {"s": list(s)}, s_derangement_enum(s), s_derangement_recursive(s))
        for k, s in enumerate(random_s_corpus(count, max_n, max_entry, seed))
    ]


def distribution_flags(p: IntPolynomial, d: int) -> dict:
    return {
        "real_rooted": is_real_rooted(p),
        "symmetric": is_symmetric(p, d),
        "unimodal": is_unimodal(p),
        "log_concave": is_log_concave(p),
        "gamma_nonnegative": is_gamma_nonnegative(p, d),
    }


def suite_distribution(max_n=6, max_entry=6, seed=0, count=500, **_) -> list[Check]:
    out = []
    expected = {k: True for k in distribution_flags(ZERO, 0)}
    for k, s in enumerate(random_s_corpus(count, max_n, max_entry, seed)):
        p = s_derangement_enum(s)
        out.append(
            _check(f"{k:03d}/s={_sid(s)}", {"s": list(s)}, expected, distribution_flags(p, len(s) + 1))
        )
    return out


def suite_edgewise(max_n=5, max_entry=4, **_) -> list[Check]:
    return [
        _check(
            f"n={n}/r={r}",
            {"n": n, "r": r},
            s_derangement_enum((r,) * n),
            smirnoff_descent_poly(n + 1, r),
        )
        for n in range(1, max_n + 1)
        for r in range(1, max_entry + 1)
    ]


def suite_colored(max_n=5, max_entry=3, **_) -> list[Check]:
    out = []
    for n, r in _colored_range(max_n, max_entry):
        p = {"n": n, "r": r}
        d = colored_derangement_poly(n, r)
        a, b = _colored_parts(n, r)
        tag = f"n={n}/r={r}"
        out.append(_check(f"{tag}/formula", p, d, colored_derangement_formula(n, r)))
        out.append(_check(f"{tag}/eulerian", p, s_eulerian(_colored_s(n, r)), colored_eulerian(n, r)))
        out.append(_check(f"{tag}/equidistribution", p, colored_eulerian(n, r), colored_excedance_poly(n, r)))
        out.append(_check(f"{tag}/sum", p, d, a + b))
        da, db = symmetric_decomposition(d, n)
        out.append(_check(f"{tag}/decomposition", p, [a.to_json(), b.to_json()], [da.to_json(), db.shift(1).to_json()]))
    return out


def suite_decomposition_real_rooted(max_n=5, max_entry=3, **_) -> list[Check]:
    out = []
    for n, r in _colored_range(max_n, max_entry):
        a, zb = symmetric_decomposition(colored_derangement_poly(n, r), n)
        out.append(
            _check(
                f"n={n}/r={r}",
                {"n": n, "r": r},
                [True, True],
                [is_real_rooted(a), is_real_rooted(zb)],
            )
        )
    return out


def suite_faces(max_n=5, max_entry=6, **_) -> list[Check]:
    out = []
    for n in range(1, max_n + 1):
        for s in product(range(1, max_entry + 1), repeat=n):
            S = lecture_hall_simplex(s)
            bad = []
            count = 0
            for k in range(2, n + 2):
                for idx in combinations(range(n + 1), k):
                    count += 1
                    if local_hstar(face(S, idx)) != s_derangement_enum(face_mu(s, idx)):
                        bad.append(list(idx))
            out.append(_check(f"s={_sid(s)}", {"s": list(s), "faces": count}, [], bad))
    return out


def suite_betke_mcmullen(max_n=4, max_entry=3, seed=0, per_poset=20, **_) -> list[Check]:
    out = []
    for k, (P, s) in enumerate(poset_corpus(max_n, per_poset, max_entry, seed)):
        O = OrderPolytope(P, s)
        out.append(
            _check(
                f"{_pid(P)}/{k:03d}/s={_sid(s)}",
                {"poset": P.to_json(), "s": list(s)},
                ehrhart_hstar(O),
                betke_mcmullen_hstar(O),
            )
        )
    return out


def suite_box_unimodal(max_n=4, max_entry=3, seed=0, per_poset=20, **_) -> list[Check]:
    out = []
    for k, (P, s) in enumerate(poset_corpus(max_n, per_poset, max_entry, seed)):
        report = box_unimodality_report(OrderPolytope(P, s))
        failing = [list(r.face) for r in report.rows if not (r.unimodal and r.real_rooted)]
        out.append(
            _check(
                f"{_pid(P)}/{k:03d}/s={_sid(s)}",
                {"poset": P.to_json(), "s": list(s), "faces": len(report.rows)},
                [],
                failing,
            )
        )
    return out


REMARK_CASES = [
    (Poset(2), (1, 2)),
    (Poset(2), (2, 1)),
    (Poset.chain(2), (1, 4)),
    (Poset.chain(2), (4, 1)),
    (Poset.chain(2), (2, 2)),
]


def suite_remark(**_) -> list[Check]:
    P = Poset(3, ((1, 3), (2, 3)))
    s = rank_sequence(P)
    h = ehrhart_hstar(OrderPolytope(P, s))
    out = [
        _check("P/s", {"poset": P.to_json()}, [1, 1, 2], list(s.entries)),
        _check("P/hstar", {"s": [1, 1, 2]}, [1, 2, 1], h),
        _check(
            "P/properties",
            {},
            {"symmetric": True, "degree": 2, "unimodal": True},
            {"symmetric": is_symmetric(h, 2), "degree": h.degree, "unimodal": is_unimodal(h)},
        ),
    ]
    for Q, mu in REMARK_CASES:
        h = ehrhart_hstar(OrderPolytope(Q, mu))
        out.append(_check(f"Q/{_pid(Q)}/mu={_sid(mu)}", {"poset": Q.to_json(), "mu": list(mu)}, [1, 3], h))
    return out


def suite_branden_leander(max_n=5, **_) -> list[Check]:
    out = []
    for n in range(1, max_n + 1):
        for P in nonisomorphic_posets(n):
            try:
                s = rank_sequence(P)
            except NotRanked:
                continue
            h = ehrhart_hstar(OrderPolytope(P, s))
            expected = {"symmetric": True, "volume": len(list(linear_extensions(P))) * s.product()}
            actual = {"symmetric": is_symmetric(h, n - 1), "volume": h(1)}
            if len(P.minimal_elements()) == 1:
                expected["unimodal"] = True
                actual["unimodal"] = is_unimodal(h)
                if n > 1:
                    reduced = ehrhart_hstar(OrderPolytope(P.restrict_above_minimum(), s.entries[1:]))
                    expected["reduction"] = True
                    actual["reduction"] = reduced == h
            out.append(_check(_pid(P), {"poset": P.to_json(), "s": list(s.entries)}, expected, actual))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "derangements": suite_derangements,
    "derangement-bijection": suite_derangement_bijection,
    "colored-bijection": suite_colored_bijection,
    "box-polynomial": suite_box_polynomial,
    "recursion": suite_recursion,
    "distribution": suite_distribution,
    "edgewise": suite_edgewise,
    "colored": suite_colored,
    "decomposition-real-rooted": suite_decomposition_real_rooted,
    "faces": suite_faces,
    "betke-mcmullen": suite_betke_mcmullen,
    "remark": suite_remark,
    "branden-leander": suite_branden_leander,
    "box-unimodal": suite_box_unimodal,
}

# lighter defaults for `verify --suite all`; explicit flags override them
QUICK_DEFAULTS: dict[str, dict] = {
    "box-polynomial": {"max_n": 4, "max_entry": 6},
    "faces": {"max_n": 4, "max_entry": 6},
    "recursion": {"max_n": 6, "max_entry": 6},
    "distribution": {"max_n": 6, "max_entry": 6},
}


def env_max_n() -> int | None:
    value = os.environ.get("LHL_MAX_N")
    return int(value) if value else None


def run_suite(name: str, **params) -> VerificationReport:
    """Run one suite; ``None`` parameters fall back to the suite defaults."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = {k: v for k, v in params.items() if v is not None}
    start = time.perf_counter()
    checks = SUITES[name](**params)
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return VerificationReport(name, checks, elapsed)


def _defaults(name: str) -> dict:
    sig = inspect.signature(SUITES[name])
    out = {k: v.default for k, v in sig.parameters.items() if v.default is not inspect.Parameter.empty}
    out.update(QUICK_DEFAULTS.get(name, {}))
    return out


def run_all(max_n: int | None = None, max_entry: int | None = None, seed: int | None = None) -> VerificationReport:
    """Every suite in one report, with ids prefixed by the suite name.

    ``max_n`` and ``max_entry`` only ever lower a suite's own defaults.
    """
    start = time.perf_counter()
    checks = []
    for name in SUITES:
        params = {}
        defaults = _defaults(name)
        for key, cap in (("max_n", max_n), ("max_entry", max_entry)):
            if key in defaults:
                params[key] = defaults[key] if cap is None else min(cap, defaults[key])
        if seed is not None:
            params["seed"] = seed
        for c in run_suite(name, **params).checks:
            checks.append(Check(f"{name}/{c.id}", c.params, c.expected, c.actual, c.passed))
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return VerificationReport("all", checks, elapsed)
