"""Pseudorandom objects: a non-empty indexed multiset with a pure selector.

A :class:`Pro` is ``size`` together with ``select: [0, size) -> element``.
Sampling draws an index uniformly and selects, so the induced law puts mass
``multiplicity(x) / size`` on each element ``x``.  Sizes are Python ints and
may be astronomically large (hash and walk objects routinely exceed 2**64).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .bits import BitSource, uniform_index

KINDS = ("integer", "signed-integer", "pair", "function", "tuple", "real")


@dataclass(frozen=True, eq=False)
class Pro:
    """A pseudorandom object.

    Attributes
    ----------
    size : int
        Number of seeds, at least 1.
    selector : callable
        Pure map from a seed in ``[0, size)`` to an element.
    kind : str
        Rendering tag, one of :data:`KINDS`.
    label : str
        Human-readable description, e.g. ``"N(4)"``.
    meta : object
        Structure behind composite objects (a hash family, a walk plan), or None.
    """

    size: int
    selector: Callable[[int], Any]
    kind: str = "integer"
    label: str = ""
    meta: Any = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a pseudorandom object has at least one element")
        if self.kind not in KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")

    @property
    def last(self) -> int:
        return self.size - 1

    def select(self, i: int):
        if not 0 <= i < self.size:
            raise IndexError(f"seed {i} out of range [0, {self.size})")
        return self.selector(i)

    def __repr__(self):
        return f"Pro({self.label or '?'}, size={self.size})"


def sample_index(P: Pro, bits: BitSource) -> int:
    return uniform_index(P.size, bits)


def sample_pro(P: Pro, bits: BitSource):
    """Select at a uniformly drawn seed."""
    return P.selector(uniform_index(P.size, bits))


def list_pro(xs: Sequence) -> Pro:
    xs = tuple(xs)
    if not xs:
        raise ValueError("L needs a non-empty list")
    kind = "signed-integer" if any(isinstance(x, int) and x < 0 for x in xs) else "integer"
    return Pro(len(xs), xs.__getitem__, kind, "L[" + ",".join(map(str, xs)) + "]")


def nat_pro(n: int) -> Pro:
    if n < 1:
        raise ValueError("N(n) needs n >= 1")
    return Pro(n, _identity, "integer", f"N({n})")


def _identity(i):
    return i


def trailing_ones(i: int) -> int:
    return ((i + 1) & -(i + 1)).bit_length() - 1


def geom_pro(nmax: int) -> Pro:
    """Geometric primitive: ``P(v) = 2**-(v+1)`` for ``v < nmax`` and ``P(nmax) = 2**-nmax``.

    Seed ``i`` maps to the number of trailing one-bits of its ``nmax``-bit binary
    form, so the all-ones seed carries the leftover tail mass.
    """
    if nmax < 1:
        raise ValueError("G(nmax) needs nmax >= 1")
    return Pro(1 << nmax, trailing_ones, "integer", f"G({nmax})")


def prod_pro(P: Pro, Q: Pro) -> Pro:
    """Product object; the first component takes the high digits of the seed."""
    qs = Q.size
    ps, qsel = P.selector, Q.selector

    def select(i):
        a, b = divmod(i, qs)
        return ps(a), qsel(b)

    return Pro(P.size * qs, select, "pair", f"{P.label} x {Q.label}")


def map_pro(P: Pro, f: Callable, kind: str = "real", label: str = "") -> Pro:
    """Push ``f`` through the selector; the seed space is unchanged."""
    sel = P.selector
    return Pro(P.size, lambda i: f(sel(i)), kind, label or f"map({P.label})")
