"""Exact and statistical verification of pseudorandom objects.

Exhaustive checks enumerate every seed and compare laws as maps of exact
rationals, so a pass is an equality rather than a tolerance.  Reports print
as ``CHECK <name> PASS|FAIL`` followed by tab-separated detail lines.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from ._validation import exact
from .bits import BitSource
from .errors import SizeExceedsCap
from .expander import WalkPlan, see_bound, walk_pro
from .hashfam import HashFunction, hash_pro
from .pro import Pro, list_pro, nat_pro
from .spectral import lambda_a

DEFAULT_CAP = 2**20
CHERNOFF_SLACK = 1e-12


def render_element(x) -> str:
    """Canonical text of an element: ints plain, rationals ``a/b``, functions as value tables."""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, HashFunction):
        return "[" + ",".join(render_element(v) for v in x.table()) + "]"
    if isinstance(x, tuple):
        return "(" + ",".join(render_element(v) for v in x) + ")"
    if isinstance(x, float):
        return repr(x)
    return str(x)


class ExactDist(Mapping):
    """Finite law with exact rational probabilities summing to one."""

    def __init__(self, probs: Mapping):
        self._p = {}
        for x, pr in probs.items():
            pr = Fraction(pr)
            if pr < 0:
                raise ValueError("negative probability")
            if pr:
                self._p[x] = pr
        if sum(self._p.values()) != 1:
            raise ValueError("probabilities do not sum to 1")

    @classmethod
    def from_counts(cls, counts: Mapping, total: Optional[int] = None) -> "ExactDist":
        total = sum(counts.values()) if total is None else total
        return cls({x: Fraction(c, total) for x, c in counts.items()})

    def __getitem__(self, x):
        return self._p[x]

    def __iter__(self):
        return iter(self._p)

    def __len__(self):
        return len(self._p)

    def __eq__(self, other):
        if isinstance(other, ExactDist):
            return self._p == other._p
        return NotImplemented

    __hash__ = None

    def prob(self, event: Callable) -> Fraction:
        return sum((p for x, p in self._p.items() if event(x)), Fraction(0))

    def mean(self, f: Callable = None) -> Fraction:
        f = f or (lambda x: x)
        return sum((p * f(x) for x, p in self._p.items()), Fraction(0))

    def variance(self, f: Callable = None) -> Fraction:
        f = f or (lambda x: x)
        mu = self.mean(f)
        return sum((p * (f(x) - mu) ** 2 for x, p in self._p.items()), Fraction(0))

    def map(self, f: Callable) -> "ExactDist":
        out = Counter()
        for x, p in self._p.items():
            out[f(x)] += p
        return ExactDist(out)

    def tsv_lines(self) -> list[str]:
        """``element<TAB>num/den`` lines sorted by the element's rendering."""
        rows = sorted((render_element(x), p) for x, p in self._p.items())
        return [f"{r}\t{p.numerator}/{p.denominator}" for r, p in rows]

    def __repr__(self):
        return f"ExactDist({dict(self._p)!r})"


def product_dist(dists: Iterable[ExactDist]) -> ExactDist:
    out = {(): Fraction(1)}
    for d in dists:
        out = {xs + (x,): p * q for xs, p in out.items() for x, q in d.items()}
    return ExactDist(out)


def _require_cap(size: int, cap: int):
    if size > cap:
        raise SizeExceedsCap(f"{size} states exceeds the enumeration cap {cap}")


def exhaustive_dist(P: Pro, cap: int = DEFAULT_CAP) -> ExactDist:
    """Law of ``sample_pro(P)``: multiplicity over size, by enumerating every seed."""
    _require_cap(P.size, cap)
    sel = P.selector
    counts = Counter(sel(i) for i in range(P.size))
    return ExactDist.from_counts(counts, P.size)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'}"]
        out += ["\t".join(render_detail(v) for v in row) for row in self.details]
        return out


def render_detail(v) -> str:
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    if isinstance(v, float):
        return f"{v:.12g}"
    return render_element(v)


# ---------------------------------------------------------------------------
# hash family laws


def _tables(family: Pro, cap: int) -> list[tuple]:
    _require_cap(family.size, cap)
    sel = family.selector
    return [sel(i).table() for i in range(family.size)]


def check_k_indep(k: int, n: int, inner: Pro, cap: int = DEFAULT_CAP,
                  family: Optional[Pro] = None) -> CheckResult:
    """Every restriction to ``J``, ``|J| <= k``, is distributed as ``|J|`` independent inner draws.

    ``family`` defaults to ``hash_pro(k, n, inner)``; pass a randomized-modulus
    family to check it modulus by modulus.
    """
    family = family if family is not None else hash_pro(k, n, inner)
    _require_cap(inner.size ** min(k, n), cap)
    tables = _tables(family, cap)
    base = exhaustive_dist(inner, cap)
    details, ok = [], True
    for size in range(1, min(k, n) + 1):
        want = product_dist([base] * size)
        subsets = list(itertools.combinations(range(n), size))
        good = sum(
            ExactDist.from_counts(Counter(tuple(t[x] for x in J) for t in tables)) == want
            for J in subsets)
        ok &= good == len(subsets)
        details.append(("|J|", size, "subsets", len(subsets), "equal", good))
    if k < n:
        details.append(("|J|>k", "not checked"))
    return CheckResult(f"k-indep H({k},{n},{inner.label})", ok, details)


def check_component(k: int, n: int, inner: Pro, i: int, cap: int = DEFAULT_CAP,
                    family: Optional[Pro] = None) -> CheckResult:
    """The value at point ``i`` is distributed exactly as the inner object."""
    if not 0 <= i < n:
        raise ValueError(f"component {i} outside [0, {n})")
    family = family if family is not None else hash_pro(k, n, inner)
    _require_cap(family.size, cap)
    sel = family.selector
    got = ExactDist.from_counts(Counter(sel(s)(i) for s in range(family.size)))
    ok = got == exhaustive_dist(inner, cap)
    return CheckResult(f"component H({k},{n},{inner.label})[{i}]", ok, [("point", i, ok)])


def check_bienayme(k: int, n: int, inner: Pro, value: Callable = None,
                   cap: int = DEFAULT_CAP) -> CheckResult:
    """Variance of ``sum_x value(h(x))`` equals the sum of per-point variances, exactly.

    Holds for every pairwise independent family, i.e. ``k >= 2``.
    """
    value = value or (lambda v: v)
    family = hash_pro(k, n, inner)
    tables = _tables(family, cap)
    vals = [[Fraction(value(v)) for v in t] for t in tables]
    total = ExactDist.from_counts(Counter(sum(row) for row in vals))
    parts = [ExactDist.from_counts(Counter(row[x] for row in vals)).variance() for x in range(n)]
    lhs, rhs = total.variance(), sum(parts, Fraction(0))
    return CheckResult(f"bienayme H({k},{n},{inner.label})", lhs == rhs,
                       [("var(sum)", lhs), ("sum(var)", rhs)])


# ---------------------------------------------------------------------------
# expander walks


@lru_cache(maxsize=64)
def _walk_census(l: int, lam: Fraction, n: int, cap: int) -> tuple[Counter, int, WalkPlan]:
    plan = walk_pro(l, float(lam), nat_pro(n)).meta
    _require_cap(plan.size, cap)
    census = Counter(plan.vertices(i) for i in range(plan.size))
    return census, plan.size, plan


def walk_census(l: int, lam, inner: Pro, cap: int = DEFAULT_CAP):
    """Multiplicity of every vertex sequence over all walk seeds of ``E(l, lam, inner)``."""
    return _walk_census(l, exact(lam), inner.size, cap)


def walk_marginals(l: int, lam, inner: Pro, cap: int = DEFAULT_CAP) -> list[ExactDist]:
    """Exact law of each walk coordinate, as inner elements."""
    census, total, _ = walk_census(l, lam, inner, cap)
    sel = inner.selector
    out = []
    for j in range(l):
        counts = Counter()
        for walk, c in census.items():
            counts[sel(walk[j])] += c
        out.append(ExactDist.from_counts(counts, total))
    return out


@dataclass(frozen=True)
class WalkTail:
    mu: Fraction
    threshold: Fraction
    tail: Fraction
    bound: float
    passed: bool


@lru_cache(maxsize=1024)
def _mark_sum_law(l: int, lam: Fraction, marks: tuple, cap: int) -> ExactDist:
    census, total, _ = _walk_census(l, lam, len(marks), cap)
    counts = Counter()
    for walk, cnt in census.items():
        counts[sum(marks[v] for v in walk)] += cnt
    return ExactDist.from_counts(counts, total)


def walk_tail_exact(l: int, lam, inner: Pro, marking: Callable, c, cap: int = DEFAULT_CAP,
                    deviation_lambda=None) -> WalkTail:
    """Exact ``P(|mean of marking along the walk - mu| >= c + lam')`` against ``2 exp(-l c^2)``.

    ``lam'`` is ``deviation_lambda`` when given (e.g. the walk graph's certified
    spectral bound), otherwise ``lam``.  ``mu`` is the marking's mean under the inner law.
    """
    sel = inner.selector
    marks = tuple(marking(sel(v)) for v in range(inner.size))
    if any(m not in (0, 1) for m in marks):
        raise ValueError("marking must take values in {0, 1}")
    law = _mark_sum_law(l, exact(lam), marks, cap)
    mu = Fraction(sum(marks), inner.size)
    c = exact(c)
    threshold = c + exact(lam if deviation_lambda is None else deviation_lambda)
    tail = law.prob(lambda k: abs(Fraction(k, l) - mu) >= threshold)
    bound = 2 * math.exp(-l * float(c) ** 2)
    return WalkTail(mu, threshold, tail, bound, float(tail) <= bound + CHERNOFF_SLACK)


# ---------------------------------------------------------------------------
# F2 oracles


def f2_oracle_dist(n: int, xs) -> ExactDist:
    """Law of ``(sum_x h(x))**2`` over all ``2**n`` sign functions ``h``."""
    if not 1 <= n <= 16:
        raise ValueError("the sign-function oracle supports 1 <= n <= 16")
    counts = Counter(xs)
    if any(not 0 <= x < n for x in counts):
        raise ValueError("stream value outside the universe")
    out = Counter()
    for signs in itertools.product((1, -1), repeat=n):
        out[sum(c * signs[u] for u, c in counts.items()) ** 2] += 1
    return ExactDist.from_counts(out, 2**n)


@dataclass(frozen=True)
class MonteCarloReport:
    trials: int
    failures: int
    rate: float
    half_width: float
    ci_low: float
    ci_high: float

    def lines(self) -> list[str]:
        return [f"trials\t{self.trials}", f"failures\t{self.failures}",
                f"rate\t{self.rate:.12g}",
                f"hoeffding99\t[{self.ci_low:.12g}, {self.ci_high:.12g}]"]


def hoeffding_half_width(trials: int, confidence: float = 0.99) -> float:
    """Two-sided Hoeffding radius for the mean of ``trials`` values in [0, 1]."""
    return math.sqrt(math.log(2 / (1 - confidence)) / (2 * trials))


def monte_carlo_failure(estimator: Callable[[BitSource], Fraction], truth, eps,
                        trials: int, base_seed: int = 0) -> MonteCarloReport:
    """Fraction of seeds ``base_seed .. base_seed+trials-1`` with ``|est - truth| > eps*truth``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    truth, eps = Fraction(truth), exact(eps)
    failures = sum(abs(Fraction(estimator(BitSource(base_seed + j))) - truth) > eps * truth
                   for j in range(trials))
    rate = failures / trials
    hw = hoeffding_half_width(trials)
    return MonteCarloReport(trials, failures, rate, hw, max(0.0, rate - hw), min(1.0, rate + hw))


# ---------------------------------------------------------------------------
# standard batteries

HASH_BATTERY = ((2, 2, nat_pro(2)), (4, 2, list_pro([1, -1])), (2, 3, nat_pro(3)),
                (2, 4, nat_pro(4)), (3, 3, nat_pro(3)), (2, 5, nat_pro(5)))
WALK_LAMBDA = Fraction(95, 100)
C_GRID = tuple(Fraction(i, 10) for i in range(10))


def walk_graph_lambda(n: int, lam=WALK_LAMBDA) -> float:
    """Measured ``lambda_a`` of the graph that ``E(l, lam, N(n))`` walks on."""
    graph, _ = see_bound(n, float(exact(lam)))
    return lambda_a(graph)


def check_walk_chernoff(n: int, l: int, lam=WALK_LAMBDA, cs=C_GRID,
                        certified: bool = True) -> CheckResult:
    """Tail bound for every 0/1 marking of ``N(n)`` and every ``c`` in ``cs``.

    Deviations are measured against ``c + lam`` and, with ``certified``, also
    against ``c + lambda_a`` of the actual walk graph, which is the sharper test.
    """
    inner = nat_pro(n)
    lams = [exact(lam)] + ([exact(walk_graph_lambda(n, lam))] if certified else [])
    worst, cases, ok = -math.inf, 0, True
    for mask in range(1 << n):
        marking = lambda v, mask=mask: (mask >> v) & 1
        for c in cs:
            for dev in lams:
                r = walk_tail_exact(l, lam, inner, marking, c, deviation_lambda=dev)
                worst = max(worst, float(r.tail) - r.bound)
                ok &= r.passed
                cases += 1
    return CheckResult(f"chernoff E({l},{render_element(exact(lam))},N({n}))", ok,
                       [("cases", cases), ("max(tail-bound)", worst)])


def check_walk_marginals(n: int, l: int, lam=WALK_LAMBDA) -> CheckResult:
    inner = nat_pro(n)
    want = exhaustive_dist(inner)
    got = walk_marginals(l, lam, inner)
    good = sum(d == want for d in got)
    return CheckResult(f"walk-marginals E({l},{render_element(exact(lam))},N({n}))",
                       good == l, [("coordinates", l, "uniform", good)])
