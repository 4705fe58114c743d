"""Exact arithmetic over GF(p)[X] and GF(p^n).

Polynomials are little-endian coefficient tuples with no trailing zeros, so
``(1, 0, 1)`` is ``X^2 + 1`` and the zero polynomial is ``()``.  The heavy
lifting happens in module-private helpers that work on bare tuples; the
:class:`Poly`, :class:`FieldCtx` and :class:`FieldElem` classes are thin
validated wrappers around them.

Extension fields are built as quotient rings GF(p)[X]/(f) for a monic
irreducible ``f`` found either deterministically (smallest enumeration index)
or by rejection sampling with Rabin's test.  Field elements can also be
addressed by index, ``sum(c_j * p**j)`` over the residue coefficients, which
is how the hash families turn field values into numbers.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import isqrt
from typing import Optional

from .bits import BitSource, uniform_index
from .errors import IterationCapExceeded

# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(m: int) -> Optional[tuple[int, int]]:
    """Return ``(p, j)`` with ``m == p**j`` and ``j >= 1``, or ``None``."""
    if m < 2:
        return None
    factors = prime_factors(m)
    if len(factors) != 1:
        return None
    p = factors[0]
    j = 0
    while m > 1:
        m //= p
        j += 1
    return p, j


def ceil_log(base: int, n: int) -> int:
    """Smallest ``e >= 0`` with ``base**e >= n``."""
    e, acc = 0, 1
    while acc < n:
        acc *= base
        e += 1
    return e


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# tuple-level polynomial arithmetic over GF(p)


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _add(p, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _neg(p, a):
    return tuple((-x) % p for x in a)


def _sub(p, a, b):
    out = list(a)
    if len(b) > len(out):
        out += [0] * (len(b) - len(out))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _trim(out)


def _scale(p, a, c):
    c %= p
    if not c:
        return ()
    return tuple(x * c % p for x in a)


def _mul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def _divmod(p, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    inv_lead = 1 if b[-1] == 1 else pow(b[-1], p - 2, p)
    rem = list(a)
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i] * inv_lead % p
        if c:
            quot[i - db] = c
            off = i - db
            for j in range(db + 1):
                rem[off + j] = (rem[off + j] - c * b[j]) % p
    return _trim(quot), _trim(rem[:db])


def _mod(p, a, m):
    if len(a) < len(m):
        return a
    return _divmod(p, a, m)[1]


def _monic(p, a):
    if not a or a[-1] == 1:
        return a
    return _scale(p, a, pow(a[-1], p - 2, p))


def _gcd(p, a, b):
    while b:
        a, b = b, _mod(p, a, b)
    return _monic(p, a)


def _xgcd_inverse(p, a, m):
    """``s`` with ``s*a == 1 (mod m)``; raises if ``gcd(a, m) != 1``."""
    r0, r1 = m, _mod(p, a, m)
    s0, s1 = (), (1,)
    while r1:
        q, r = _divmod(p, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(p, s0, _mul(p, q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo m")
    return _mod(p, _scale(p, s0, pow(r0[0], p - 2, p)), m)


def _powmod(p, a, e, m):
    if e < 0:
        raise ValueError("negative exponent")
    if len(m) == 1:
        return ()
    a = _mod(p, a, m)
    if len(a) <= 1:
        # constants form the prime subfield; no reduction needed
        if e == 0:
            return (1,)
        return (pow(a[0], e, p),) if a else ()
    result = (1,)
    while e:
        if e & 1:
            result = _mod(p, _mul(p, result, a), m)
        e >>= 1
        if e:
            a = _mod(p, _mul(p, a, a), m)
    return result


# ---------------------------------------------------------------------------
# polynomial wrapper


class Poly:
    """Polynomial over GF(p) with normalized little-endian coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        self.p = p
        self.coeffs = _trim([int(c) % p for c in coeffs])

    @classmethod
    def _raw(cls, p, coeffs):
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        return obj

    @classmethod
    def x(cls, p):
        return cls._raw(p, (0, 1))

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"Poly({self.p}, {str(self)!r})"

    def __str__(self):
        return render_poly(self)

    def _check(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mismatched moduli: GF({self.p}) vs GF({other.p})")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Poly._raw(self.p, _add(self.p, self.coeffs, other.coeffs))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Poly._raw(self.p, _sub(self.p, self.coeffs, other.coeffs))

    def __neg__(self):
        return Poly._raw(self.p, _neg(self.p, self.coeffs))

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Poly._raw(self.p, _mul(self.p, self.coeffs, other.coeffs))

    def __divmod__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        q, r = _divmod(self.p, self.coeffs, other.coeffs)
        return Poly._raw(self.p, q), Poly._raw(self.p, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        """Evaluate at a point of GF(p)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc


def render_poly(f: Poly) -> str:
    """Render in descending powers, e.g. ``X^2+2*X+1``; zero renders as ``0``."""
    if not f.coeffs:
        return "0"
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"([+-]?)(?:(\d+)(?:\*?(X)(?:\^(\d+))?)?|(X)(?:\^(\d+))?)")


def parse_poly(p: int, text: str) -> Poly:
    """Inverse of :func:`render_poly`; also accepts ``-`` terms and repeated powers."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return Poly(p, ())
    acc = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos and not m.group(1)):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(5):
            coef, exp = 1, int(m.group(6) or 1)
        else:
            coef = int(m.group(2))
            exp = int(m.group(4) or 1) if m.group(3) else 0
        acc[exp] = acc.get(exp, 0) + sign * coef
        pos = m.end()
    coeffs = [0] * (max(acc) + 1)
    for e, c in acc.items():
        coeffs[e] = c
    return Poly(p, coeffs)


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_mod(a: Poly, m: Poly) -> Poly:
    return a % m


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    a._check(b)
    return Poly._raw(a.p, _gcd(a.p, a.coeffs, b.coeffs))


def poly_powmod(a: Poly, e: int, m: Poly) -> Poly:
    """``a**e mod m`` by binary exponentiation."""
    a._check(m)
    if not m:
        raise ZeroDivisionError("modulus is the zero polynomial")
    return Poly._raw(a.p, _powmod(a.p, a.coeffs, e, m.coeffs))


def poly_arith(p: int, op: str, a: Poly, b: Optional[Poly] = None, e: Optional[int] = None,
               m: Optional[Poly] = None) -> Poly:
    """Dispatch one of ``add``, ``mul``, ``mod``, ``gcd``, ``powmod`` over GF(p)[X]."""
    for arg in (a, b, m):
        if arg is not None and arg.p != p:
            raise ValueError(f"operand over GF({arg.p}) used with p={p}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "mod":
        return a % (m if m is not None else b)
    if op == "gcd":
        return poly_gcd(a, b)
    if op == "powmod":
        if e is None or m is None:
            raise ValueError("powmod needs an exponent e and a modulus m")
        return poly_powmod(a, e, m)
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# irreducibility


def count_irreducible(p: int, k: int) -> int:
    """Number of monic irreducible polynomials of degree ``k`` over GF(p) (Gauss)."""
    _require_prime(p)
    if k < 1:
        raise ValueError("degree must be at least 1")
    total = sum(mobius(d) * p ** (k // d) for d in range(1, k + 1) if k % d == 0)
    count, rest = divmod(total, k)
    assert rest == 0
    return count


def _rabin(p, f):
    n = len(f) - 1
    x = (0, 1)
    # frob[m] = X^(p^m) mod f
    frob = [_mod(p, x, f)]
    for _ in range(n):
        frob.append(_powmod(p, frob[-1], p, f))
    if _mod(p, _sub(p, frob[n], x), f):
        return False
    for r in prime_factors(n):
        if len(_gcd(p, f, _sub(p, frob[n // r], x))) != 1:
            return False
    return True


def rabin_test(p: int, f: Poly) -> bool:
    """Rabin's irreducibility test for a monic ``f`` of degree at least 1.

    ``f`` is irreducible iff it divides ``X^(p^n) - X`` and is coprime to
    ``X^(p^(n/r)) - X`` for every prime ``r`` dividing ``n = deg f``.  The
    powers are only ever formed modulo ``f``.
    """
    if f.p != p:
        raise ValueError(f"polynomial over GF({f.p}) tested with p={p}")
    if not f.is_monic or f.degree < 1:
        raise ValueError("rabin_test needs a monic polynomial of degree >= 1")
    return _rabin(p, f.coeffs)


def is_irreducible_trial(p: int, f: Poly) -> bool:
    """Irreducibility by trial division with every monic polynomial of degree 1..deg/2.

    Slow; kept as an independent oracle for :func:`rabin_test`.
    """
    n = f.degree
    if n is None or n < 1:
        raise ValueError("need a polynomial of degree >= 1")
    for d in range(1, n // 2 + 1):
        for i in range(p ** d):
            g = enum_monic_poly(p, d, i).coeffs
            if not _divmod(p, f.coeffs, g)[1]:
                return False
    return True


def enum_monic_poly(p: int, deg: int, index: int) -> Poly:
    """Monic degree-``deg`` polynomial whose lower coefficients are the base-p digits of ``index``."""
    if not 0 <= index < p ** deg:
        raise ValueError(f"index {index} out of range [0, {p}^{deg})")
    coeffs = []
    for _ in range(deg):
        index, c = divmod(index, p)
        coeffs.append(c)
    coeffs.append(1)
    return Poly._raw(p, tuple(coeffs))


def monic_poly_index(f: Poly) -> int:
    """Inverse of :func:`enum_monic_poly`."""
    if not f.is_monic:
        raise ValueError("polynomial is not monic")
    return sum(c * f.p ** i for i, c in enumerate(f.coeffs[:-1]))


@lru_cache(maxsize=None)
def find_irreducible_det(p: int, deg: int) -> Poly:
    """The monic irreducible polynomial of degree ``deg`` with the smallest enumeration index."""
    _require_prime(p)
    if deg < 1:
        raise ValueError("degree must be at least 1")
    for i in range(p ** deg):
        f = enum_monic_poly(p, deg, i)
        if _rabin(p, f.coeffs):
            return f
    raise AssertionError("unreachable: every degree has an irreducible polynomial")


def sample_irreducible(p: int, deg: int, bits: BitSource) -> tuple[Poly, int]:
    """Draw monic degree-``deg`` polynomials uniformly until one is irreducible.

    Returns the polynomial and the number of trials.  Each trial succeeds with
    probability at least ``1/(2*deg)``, so the cap of ``128*deg`` trials is only
    hit by a broken bit source.
    """
    _require_prime(p)
    if deg < 1:
        raise ValueError("degree must be at least 1")
    cap = 128 * deg
    space = p ** deg
    for trial in range(1, cap + 1):
        f = enum_monic_poly(p, deg, uniform_index(space, bits))
        if _rabin(p, f.coeffs):
            return f, trial
    raise IterationCapExceeded(f"no irreducible polynomial after {cap} trials (p={p}, deg={deg})")


# ---------------------------------------------------------------------------
# extension fields

_TABLE_MAX_ORDER = 256


class FieldCtx:
    """GF(p^n) realised as GF(p)[X] modulo a monic irreducible polynomial.

    Besides the :class:`FieldElem` interface the context offers ``idx_*``
    operations that work directly on element indices; the hash families use
    those on their hot path.
    """

    def __init__(self, p: int, modulus: Poly):
        if modulus.p != p:
            raise ValueError("modulus lives over a different prime field")
        if not modulus.is_monic or modulus.degree < 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if not rabin_test(p, modulus):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.n = modulus.degree
        self.modulus = modulus
        self.order = p ** self.n
        self._m = modulus.coeffs
        self._bitmod = monic_poly_index(modulus) | (1 << self.n) if p == 2 else None
        self._add_table = None
        self._mul_table = None

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.n}) mod {self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    # -- element construction -------------------------------------------------

    def elem(self, coeffs) -> "FieldElem":
        c = coeffs.coeffs if isinstance(coeffs, Poly) else _trim([int(x) % self.p for x in coeffs])
        return FieldElem(self, _mod(self.p, c, self._m))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, ())

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, (1,))

    def from_index(self, i: int) -> "FieldElem":
        return FieldElem(self, self._digits(i))

    def index(self, a: "FieldElem") -> int:
        self._own(a)
        return self._undigits(a.residue)

    def elements(self):
        return [self.from_index(i) for i in range(self.order)]

    def _own(self, a):
        if a.ctx != self:
            raise ValueError("element belongs to a different field")

    def _digits(self, i):
        if not 0 <= i < self.order:
            raise ValueError(f"index {i} out of range [0, {self.order})")
        p = self.p
        out = []
        while i:
            i, c = divmod(i, p)
            out.append(c)
        return tuple(out)

    def _undigits(self, coeffs):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * self.p + c
        return acc

    # -- residue arithmetic ----------------------------------------------------

    def add(self, a, b):
        self._own(a), self._own(b)
        return FieldElem(self, _add(self.p, a.residue, b.residue))

    def sub(self, a, b):
        self._own(a), self._own(b)
        return FieldElem(self, _sub(self.p, a.residue, b.residue))

    def neg(self, a):
        self._own(a)
        return FieldElem(self, _neg(self.p, a.residue))

    def mul(self, a, b):
        self._own(a), self._own(b)
        return FieldElem(self, _mod(self.p, _mul(self.p, a.residue, b.residue), self._m))

    def inv(self, a):
        self._own(a)
        if not a.residue:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(self, _xgcd_inverse(self.p, a.residue, self._m))

    def pow(self, a, e: int):
        self._own(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        return FieldElem(self, _powmod(self.p, a.residue, e, self._m))

    # -- index arithmetic (hot path) ------------------------------------------

    def _tables(self):
        if self._mul_table is None:
            q = self.order
            digits = [self._digits(i) for i in range(q)]
            p, m = self.p, self._m
            undig = self._undigits
            self._add_table = [[undig(_add(p, a, b)) for b in digits] for a in digits]
            self._mul_table = [[undig(_mod(p, _mul(p, a, b), m)) for b in digits] for a in digits]
        return self._add_table, self._mul_table

    def idx_add(self, a: int, b: int) -> int:
        if self._bitmod is not None:
            return a ^ b
        if self.order <= _TABLE_MAX_ORDER:
            return self._tables()[0][a][b]
        return self._undigits(_add(self.p, self._digits(a), self._digits(b)))

    def idx_mul(self, a: int, b: int) -> int:
        if self._bitmod is not None:
            n, mod = self.n, self._bitmod
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> n:
                    a ^= mod
            return r
        if self.order <= _TABLE_MAX_ORDER:
            return self._tables()[1][a][b]
        prod = _mod(self.p, _mul(self.p, self._digits(a), self._digits(b)), self._m)
        return self._undigits(prod)

    def idx_poly_eval(self, coeffs, x: int) -> int:
        """Evaluate ``sum(coeffs[t] * x**t)`` with all values given as indices (Horner)."""
        if self._bitmod is not None:
            mul = self.idx_mul
            acc = 0
            for c in reversed(coeffs):
                acc = mul(acc, x) ^ c
            return acc
        if self.order <= _TABLE_MAX_ORDER:
            add_t, mul_t = self._tables()
            acc = 0
            for c in reversed(coeffs):
                acc = add_t[mul_t[acc][x]][c]
            return acc
        acc = 0
        for c in reversed(coeffs):
            acc = self.idx_add(self.idx_mul(acc, x), c)
        return acc


class FieldElem:
    """Element of a :class:`FieldCtx`, stored as a reduced residue polynomial."""

    __slots__ = ("ctx", "residue")

    def __init__(self, ctx: FieldCtx, residue: tuple):
        self.ctx = ctx
        self.residue = residue

    @property
    def poly(self) -> Poly:
        return Poly._raw(self.ctx.p, self.residue)

    def __repr__(self):
        return f"FieldElem({render_poly(self.poly)})"

    def __str__(self):
        return render_poly(self.poly)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.residue == other.residue
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.residue))

    def __int__(self):
        return self.ctx.index(self)

    def __bool__(self):
        return bool(self.residue)

    def __add__(self, other):
        return self.ctx.add(self, other)

    def __sub__(self, other):
        return self.ctx.sub(self, other)

    def __neg__(self):
        return self.ctx.neg(self)

    def __mul__(self, other):
        return self.ctx.mul(self, other)

    def __truediv__(self, other):
        return self.ctx.mul(self, self.ctx.inv(other))

    def __pow__(self, e):
        return self.ctx.pow(self, e)

    def inverse(self):
        return self.ctx.inv(self)


def field_new(p: int, n: int, bits: Optional[BitSource] = None) -> FieldCtx:
    """Construct GF(p^n).

    Without ``bits`` the modulus is :func:`find_irreducible_det`; with a bit
    source it is drawn by :func:`sample_irreducible`.  For ``n == 1`` the
    modulus is always ``X`` and no bits are consumed.
    """
    _require_prime(p)
    if n < 1:
        raise ValueError("extension degree must be at least 1")
    if n == 1:
        return _prime_field(p)
    if bits is None:
        return _det_field(p, n)
    modulus, _ = sample_irreducible(p, n, bits)
    return FieldCtx(p, modulus)


@lru_cache(maxsize=None)
def _prime_field(p):
    return FieldCtx(p, Poly.x(p))


@lru_cache(maxsize=None)
def _det_field(p, n):
    return FieldCtx(p, find_irreducible_det(p, n))


def fe_arith(ctx: FieldCtx, op: str, a: FieldElem, b: Optional[FieldElem] = None,
             e: Optional[int] = None) -> FieldElem:
    if op == "add":
        return ctx.add(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "inv":
        return ctx.inv(a)
    if op == "pow":
        if e is None:
            raise ValueError("pow needs an exponent")
        return ctx.pow(a, e)
    raise ValueError(f"unknown field operation {op!r}")


def fe_index(ctx: FieldCtx, a: FieldElem) -> int:
    return ctx.index(a)


def fe_from_index(ctx: FieldCtx, i: int) -> FieldElem:
    return ctx.from_index(i)
