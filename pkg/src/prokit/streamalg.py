"""Second frequency moment estimators built from pseudorandom objects.

All randomized estimators here average and take medians of the basic
tug-of-war estimate ``(sum_x h(x))**2`` with ``h`` drawn from ``H(4, n, L[1,-1])``.
They differ only in how the basic seeds are chosen:

``basic``    one seed
``mean``     ``s`` seeds, either independent or the values of one ``H(2, s, .)`` function
``median``   ``t`` rows of ``s`` seeds, rows read off one walk of ``E(t, 1/8, H(2, s, .))``

Each estimator is therefore a pseudorandom object whose elements are ``t x s``
grids of basic seeds; sampling it, enumerating it exhaustively and running it
as a one-pass sketch (:class:`F2Sketch`) all go through the same index layout.
Sums are exact integers and averages exact fractions.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_open_unit, check_positive_int, check_stream, exact
from .bits import BitSource, uniform_index
from .expander import walk_pro
from .hashfam import hash_pro, hash_pro_rand
from .pro import Pro, list_pro

METHODS = ("exact", "basic", "mean", "median")
MODES = ("hashed", "independent")
WALK_LAMBDA = Fraction(1, 8)


@dataclass(frozen=True, eq=False)
class Stream:
    """A finite sequence over the universe ``[0, n)``."""

    n: int
    xs: tuple
    counts: dict = field(init=False, repr=False)
    _memo: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        check_positive_int("n", self.n)
        object.__setattr__(self, "xs", check_stream(self.xs, self.n))
        object.__setattr__(self, "counts", dict(sorted(Counter(self.xs).items())))

    @classmethod
    def from_text(cls, text: str, n: int) -> "Stream":
        """Parse whitespace-separated decimal naturals."""
        xs = []
        for tok in text.split():
            if not tok.isdigit():
                raise ValueError(f"not a decimal natural: {tok!r}")
            xs.append(int(tok))
        return cls(n, tuple(xs))

    @property
    def m(self) -> int:
        return len(self.xs)


def as_stream(stream, n: Optional[int] = None) -> Stream:
    if isinstance(stream, Stream):
        if n is not None and n != stream.n:
            raise ValueError("universe size disagrees with the stream's")
        return stream
    if n is None:
        raise ValueError("a universe size n is required")
    return Stream(n, tuple(stream))


@dataclass(frozen=True)
class EstimatorParams:
    """Accuracy ``eps`` and failure probability ``delta``, with the derived
    repetition counts ``s = ceil(8/eps^2)`` and ``t = ceil(32 ln(1/delta))``."""

    eps: float
    delta: float
    lambda_walk: Fraction = WALK_LAMBDA

    def __post_init__(self):
        if not float(self.eps) > 0:
            raise ValueError(f"eps must be positive, got {self.eps!r}")
        check_open_unit("delta", self.delta)

    @property
    def s(self) -> int:
        return math.ceil(8 / exact(self.eps) ** 2)

    @property
    def t(self) -> int:
        return math.ceil(32 * math.log(1 / float(self.delta)))


def f2_exact(stream, n: Optional[int] = None) -> int:
    return sum(c * c for c in as_stream(stream, n).counts.values())


def median(values: Sequence):
    """Lower median: the element at index ``(len - 1) // 2`` after sorting.

    If more than half of the values lie in an interval, so does the result.
    """
    if not len(values):
        raise ValueError("median of an empty sequence")
    return sorted(values)[(len(values) - 1) // 2]


# ---------------------------------------------------------------------------
# seed grids


def basic_family(n: int, bits: Optional[BitSource] = None, rand_field: bool = False) -> Pro:
    """``H(4, n, L[1,-1])``, or ``H_P`` with the modulus drawn from ``bits``."""
    signs = list_pro([1, -1])
    if rand_field:
        return hash_pro_rand(4, n, signs, bits)
    return hash_pro(4, n, signs)


def _row(g, s):
    return tuple(g.inner_index(j) for j in range(s))


def grid_pro(basic: Pro, method: str, s: int = 1, t: int = 1, mode: str = "hashed",
             lam=WALK_LAMBDA) -> Pro:
    """Pseudorandom object of ``t x s`` grids of seeds into ``basic``."""
    if method == "basic":
        return Pro(basic.size, lambda i: ((i,),), "tuple", f"grid({basic.label})")
    check_positive_int("s", s)
    if method == "mean" and mode == "independent":
        b = basic.size

        def select(i):
            row = []
            for _ in range(s):
                i, d = divmod(i, b)
                row.append(d)
            return (tuple(row),)

        return Pro(b ** s, select, "tuple", f"prod^{s}({basic.label})")
    if mode != "hashed":
        raise ValueError(f"unknown mode {mode!r}")
    outer = hash_pro(2, s, basic)
    if method == "mean":
        fam = outer.meta
        return Pro(outer.size, lambda i: (_row(fam.function(i), s),), "tuple", outer.label)
    if method == "median":
        check_positive_int("t", t)
        plan = walk_pro(t, float(lam), outer).meta
        return Pro(plan.size, lambda i: tuple(_row(g, s) for g in plan.select(i)), "tuple",
                   f"E({t},{lam},{outer.label})")
    raise ValueError(f"unknown method {method!r}")


def basic_values(stream: Stream, basic: Pro):
    """Memoized ``seed -> (sum_x h_seed(x))**2`` for one stream and one basic family."""
    fam = basic.meta
    key = (fam.ctx.modulus, fam.n)
    memo = stream._memo.setdefault(key, {})
    items = tuple(stream.counts.items())

    def value(seed):
        v = memo.get(seed)
        if v is None:
            h = fam.function(seed)
            acc = 0
            for u, c in items:
                acc += c * h(u)
            v = memo[seed] = acc * acc
        return v

    return value


def combine(grid, value) -> Fraction:
    """Median over rows of the row means of ``value(seed)``."""
    means = [Fraction(sum(value(seed) for seed in row), len(row)) for row in grid]
    return median(means)


def _resolve(method, eps, delta, s, t):
    if method in ("mean", "median") and s is None:
        if eps is None:
            raise ValueError("give either eps or an explicit s")
        s = EstimatorParams(eps, delta if delta is not None else 0.5).s
    if method == "median" and t is None:
        if delta is None:
            raise ValueError("give either delta or an explicit t")
        t = EstimatorParams(eps if eps is not None else 1, delta).t
    return s or 1, t or 1


def estimator_pro(stream, method: str, *, n: Optional[int] = None, eps=None, delta=None,
                  s: Optional[int] = None, t: Optional[int] = None, mode: str = "hashed",
                  lam=WALK_LAMBDA, basic: Optional[Pro] = None) -> Pro:
    """The estimator as a pseudorandom object whose elements are exact estimates.

    Enumerating it gives the estimator's exact output distribution.
    """
    stream = as_stream(stream, n)
    if method not in METHODS[1:]:
        raise ValueError(f"method must be one of {METHODS[1:]}, got {method!r}")
    s, t = _resolve(method, eps, delta, s, t)
    basic = basic if basic is not None else basic_family(stream.n)
    grid = grid_pro(basic, method, s, t, mode, lam)
    value = basic_values(stream, basic)
    sel = grid.selector
    return Pro(grid.size, lambda i: combine(sel(i), value), "real", f"{method}({grid.label})",
               meta=grid)


def _estimate(stream, method, bits, n=None, rand_field=False, **kw) -> Fraction:
    stream = as_stream(stream, n)
    basic = basic_family(stream.n, bits, rand_field)
    P = estimator_pro(stream, method, basic=basic, **kw)
    return P.selector(uniform_index(P.size, bits))


def estimate_basic(stream, bits: BitSource, n: Optional[int] = None,
                   rand_field: bool = False) -> Fraction:
    """One tug-of-war estimate: mean ``F2``, variance at most ``2 F2^2``."""
    return _estimate(stream, "basic", bits, n, rand_field)


def estimate_mean(stream, bits: BitSource, n: Optional[int] = None, eps=None,
                  s: Optional[int] = None, mode: str = "hashed",
                  rand_field: bool = False) -> Fraction:
    """Mean of ``s`` basic estimates; relative error ``eps`` with probability >= 3/4."""
    return _estimate(stream, "mean", bits, n, rand_field, eps=eps, s=s, mode=mode)


def estimate_median_expander(stream, bits: BitSource, n: Optional[int] = None, eps=None,
                             delta=None, s: Optional[int] = None, t: Optional[int] = None,
                             lam=WALK_LAMBDA, rand_field: bool = False) -> Fraction:
    """Median of ``t`` hashed means read along one expander walk; fails with probability <= delta."""
    return _estimate(stream, "median", bits, n, rand_field, eps=eps, delta=delta, s=s, t=t,
                     lam=lam)


# ---------------------------------------------------------------------------
# one-pass sketch


class F2Sketch(BaseEstimator):
    """Streaming F2 estimator with an estimator-style interface.

    ``fit`` / ``partial_fit`` consume stream values and keep one integer
    register per grid cell, ``sum_x h(x)``; ``estimate_`` squares, averages
    and takes the median.  Given the same ``random_state`` the estimate equals
    the one returned by :func:`estimate_basic`, :func:`estimate_mean` or
    :func:`estimate_median_expander` on the whole stream.

    Parameters
    ----------
    method : {"exact", "basic", "mean", "median"}
    eps, delta : float
        Accuracy targets; set ``s`` and ``t`` unless given explicitly.
    s, t : int, optional
        Overrides for the number of averaged estimates and of walk rows.
    mode : {"hashed", "independent"}
        Seed choice for ``method="mean"``.
    lam : float
        Spectral bound of the walk graph for ``method="median"``.
    rand_field : bool
        Draw the field modulus of the basic family at random.
    n_values : int, optional
        Universe size; inferred from the first batch when omitted.
    random_state : int
        Seed of the :class:`~prokit.bits.BitSource`.
    """

    def __init__(self, method="median", eps=0.5, delta=0.2, s=None, t=None, mode="hashed",
                 lam=0.125, rand_field=False, n_values=None, random_state=0):
        self.method = method
        self.eps = eps
        self.delta = delta
        self.s = s
        self.t = t
        self.mode = mode
        self.lam = lam
        self.rand_field = rand_field
        self.n_values = n_values
        self.random_state = random_state

    def _initialize(self, n):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        self.n_values_ = check_positive_int("n_values", n)
        if self.method == "exact":
            self.functions_ = None
            self.registers_ = np.zeros(self.n_values_, dtype=object)
            return
        bits = BitSource(self.random_state)
        basic = basic_family(self.n_values_, bits, self.rand_field)
        s, t = _resolve(self.method, self.eps, self.delta, self.s, self.t)
        grid = grid_pro(basic, self.method, s, t, self.mode, exact(self.lam))
        self.grid_ = grid.selector(uniform_index(grid.size, bits))
        fam = basic.meta
        self.functions_ = [[fam.function(seed) for seed in row] for row in self.grid_]
        self.registers_ = np.zeros((len(self.grid_), len(self.grid_[0])), dtype=object)

    def partial_fit(self, X, y=None):
        if not hasattr(self, "registers_"):
            xs = check_stream(X, self.n_values)
            n = self.n_values if self.n_values is not None else max(xs, default=0) + 1
            self._initialize(n)
        else:
            xs = check_stream(X, self.n_values_)
        batch = Counter(xs)
        if self.functions_ is None:
            for u, c in batch.items():
                self.registers_[u] += c
        else:
            for i, row in enumerate(self.functions_):
                for j, h in enumerate(row):
                    self.registers_[i, j] += sum(c * h(u) for u, c in batch.items())
        self.n_seen_ = getattr(self, "n_seen_", 0) + len(xs)
        return self

    def fit(self, X, y=None):
        for attr in ("registers_", "functions_", "grid_", "n_seen_", "n_values_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X)

    @property
    def estimate_(self) -> Fraction:
        if not hasattr(self, "registers_"):
            raise AttributeError("estimate_ is available after fit")
        if self.functions_ is None:
            return Fraction(sum(int(c) ** 2 for c in self.registers_))
        rows = [Fraction(sum(int(r) ** 2 for r in row), len(row)) for row in self.registers_]
        return median(rows)

    def predict(self, X=None) -> float:
        """The current estimate as a float (``X`` is ignored)."""
        return float(self.estimate_)
