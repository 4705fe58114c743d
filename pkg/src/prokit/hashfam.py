"""Carter-Wegman k-independent hash families as chainable pseudorandom objects.

``H(k, n, P)`` is the family of polynomials of degree below ``k`` over GF(q),
restricted to the domain ``[0, n)`` and composed with ``P``'s selector: a seed
``s`` in ``[0, q**k)`` spells the coefficients ``c_0 .. c_{k-1}`` in base ``q``
(least significant digit first) and the selected function is

    h(x) = P.select(index(c_0 + c_1*x + ... + c_{k-1}*x**(k-1)) mod m)

where ``m = |P|`` must be a prime power ``p**j`` and ``q = p**max(ceil(log_p n), j)``.
Since ``m`` divides ``q`` and field indices biject onto ``[0, q)``, the reduction
is uniform.  The seed space ``q**k`` is again a power of ``p``, so families chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bits import BitSource
from .errors import MissingBitSource, NotPrimePower
from .gf import FieldCtx, ceil_log, field_new, prime_power
from .pro import Pro


@dataclass(frozen=True, eq=False)
class HashFamily:
    k: int
    n: int
    inner: Pro
    ctx: FieldCtx
    m: int = field(init=False)
    q: int = field(init=False)
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "m", self.inner.size)
        object.__setattr__(self, "q", self.ctx.order)
        object.__setattr__(self, "size", self.ctx.order ** self.k)

    @property
    def p(self) -> int:
        return self.ctx.p

    def coefficients(self, seed: int) -> tuple[int, ...]:
        q = self.q
        out = []
        for _ in range(self.k):
            seed, c = divmod(seed, q)
            out.append(c)
        return tuple(out)

    def function(self, seed: int) -> "HashFunction":
        return HashFunction(self, self.coefficients(seed))


class HashFunction:
    """One member of a hash family, stored as its coefficient indices.

    Calling it evaluates the polynomial on demand; nothing is tabulated.
    Equality is extensional (same family shape, same values on the domain).
    """

    __slots__ = ("family", "coeffs", "_table")

    def __init__(self, family: HashFamily, coeffs: tuple[int, ...]):
        self.family = family
        self.coeffs = coeffs
        self._table = None

    def inner_index(self, x: int) -> int:
        """Seed of the inner object selected at domain point ``x``."""
        fam = self.family
        if not 0 <= x < fam.n:
            raise ValueError(f"point {x} outside the domain [0, {fam.n})")
        return fam.ctx.idx_poly_eval(self.coeffs, x) % fam.m

    def __call__(self, x: int):
        return self.family.inner.selector(self.inner_index(x))

    def table(self) -> tuple:
        if self._table is None:
            self._table = tuple(self(x) for x in range(self.family.n))
        return self._table

    def __eq__(self, other):
        if not isinstance(other, HashFunction):
            return NotImplemented
        return self.family.n == other.family.n and self.table() == other.table()

    def __hash__(self):
        return hash(self.table())

    def __repr__(self):
        return f"HashFunction(coeffs={self.coeffs}, q={self.family.q})"


def family_field_params(n: int, inner_size: int) -> tuple[int, int]:
    """``(p, e)`` such that the family's field is GF(p**e)."""
    pp = prime_power(inner_size)
    if pp is None:
        raise NotPrimePower(inner_size)
    p, j = pp
    return p, max(ceil_log(p, n), j)


def _build(k, n, inner, ctx, tag):
    fam = HashFamily(k, n, inner, ctx)
    return Pro(fam.size, fam.function, "function", f"{tag}({k},{n},{inner.label})", meta=fam)


def hash_pro(k: int, n: int, inner: Pro) -> Pro:
    """Deterministic family ``H(k, n, inner)`` over the lexicographically first field modulus."""
    if k < 1 or n < 1:
        raise ValueError("hash families need k >= 1 and n >= 1")
    p, e = family_field_params(n, inner.size)
    return _build(k, n, inner, field_new(p, e), "H")


def hash_pro_rand(k: int, n: int, inner: Pro, bits: Optional[BitSource]) -> Pro:
    """``H_P(k, n, inner)``: same law, field modulus drawn from ``bits``."""
    if k < 1 or n < 1:
        raise ValueError("hash families need k >= 1 and n >= 1")
    p, e = family_field_params(n, inner.size)
    if bits is None:
        raise MissingBitSource("H_P needs a bit source to pick its field modulus")
    return _build(k, n, inner, field_new(p, e, bits), "HP")
