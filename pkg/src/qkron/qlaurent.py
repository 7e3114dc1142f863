"""Exact Laurent polynomials in q^(1/2) and q-combinatorial quantities.

Exponents are stored doubled: the integer key k stands for q^(k/2), so all
bookkeeping stays in plain (arbitrary-precision) integers.  Instances are
immutable; arithmetic returns new objects.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    InvalidParameter,
    NonIntegralEvaluation,
    NotAPowerSeriesInQr,
    NotSupported,
)

try:  # GMP-backed integers multiply far faster at the sizes packing produces
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised via an explicit test stub
    def _mpz(x):
        return x

# Coefficient products of this many nonzero terms or fewer go through the
# plain dict loop; larger dense operands are multiplied via big-integer
# (Kronecker) packing, which is much faster for the polynomials that appear
# in cluster-variable recursions.
_SCHOOLBOOK_LIMIT = 96


class QLaurent:
    """Sparse Laurent polynomial in q^(1/2) with integer coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for k2, c in items:
                if not isinstance(k2, int) or not isinstance(c, int):
                    raise InvalidParameter("exponents and coefficients must be int")
                if c:
                    nc = t.get(k2, 0) + c
                    if nc:
                        t[k2] = nc
                    else:
                        del t[k2]
        self._t = t

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, t: dict) -> "QLaurent":
        """Wrap an already-normalized dict without copying (internal)."""
        p = cls.__new__(cls)
        p._t = t
        return p

    @classmethod
    def zero(cls) -> "QLaurent":
        return cls._raw({})

    @classmethod
    def one(cls) -> "QLaurent":
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c: int) -> "QLaurent":
        return cls._raw({0: c} if c else {})

    @classmethod
    def q_power(cls, k2: int, c: int = 1) -> "QLaurent":
        """c * q^(k2/2); k2 is the doubled exponent."""
        return cls._raw({k2: c} if c else {})

    # -- inspection --------------------------------------------------------

    def items2(self):
        """Sorted (doubled exponent, coefficient) pairs."""
        return sorted(self._t.items())

    def coeff2(self, k2: int) -> int:
        return self._t.get(k2, 0)

    def min2(self) -> int:
        return min(self._t)

    def max2(self) -> int:
        return max(self._t)

    def num_terms(self) -> int:
        return len(self._t)

    def max_coeff_bits(self) -> int:
        return max((abs(c).bit_length() for c in self._t.values()), default=0)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_integral(self) -> bool:
        """True when no genuine half-exponent q^(odd/2) occurs."""
        return all(k2 % 2 == 0 for k2 in self._t)

    def is_poly(self) -> bool:
        """True for an honest polynomial in q (integral exponents >= 0)."""
        return all(k2 % 2 == 0 and k2 >= 0 for k2 in self._t)

    def has_negative_coeff(self) -> bool:
        return any(c < 0 for c in self._t.values())

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, int):
            return QLaurent.const(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted(self._t.items())))

    def __neg__(self) -> "QLaurent":
        return QLaurent._raw({k: -c for k, c in self._t.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t = dict(a)
        for k, c in b.items():
            nc = t.get(k, 0) + c
            if nc:
                t[k] = nc
            else:
                del t[k]
        return QLaurent._raw(t)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return QLaurent.zero()
        if len(a) * len(b) <= _SCHOOLBOOK_LIMIT:
            t = {}
            for ka, ca in a.items():
                for kb, cb in b.items():
                    k = ka + kb
                    nc = t.get(k, 0) + ca * cb
                    if nc:
                        t[k] = nc
                    else:
                        t.pop(k, None)
            return QLaurent._raw(t)
        return self._mul_packed(a, b)

    __rmul__ = __mul__

    @staticmethod
    def _mul_packed(a: dict, b: dict) -> "QLaurent":
        """Exact product via evaluation at a large power of two.

        Both operands are packed densely over their exponent span, evaluated
        at 2^bits, multiplied as Python integers, and the product digits are
        decoded in balanced form (so signed coefficients are handled).
        """
        amin, amax = min(a), max(a)
        bmin, bmax = min(b), max(b)
        la = amax - amin + 1
        lb = bmax - bmin + 1
        if la * lb > 64 * len(a) * len(b):
            # Very sparse with huge gaps: fall back to the dict loop.
            t = {}
            for ka, ca in a.items():
                for kb, cb in b.items():
                    k = ka + kb
                    nc = t.get(k, 0) + ca * cb
                    if nc:
                        t[k] = nc
                    else:
                        t.pop(k, None)
            return QLaurent._raw(t)
        maxa = max(abs(c) for c in a.values())
        maxb = max(abs(c) for c in b.values())
        bound = maxa * maxb * min(len(a), len(b))
        bits = ((bound.bit_length() + 2 + 7) // 8) * 8
        width = bits // 8

        def pack(terms, kmin, length):
            pos = bytearray(length * width)
            neg = bytearray(length * width)
            for k, c in terms.items():
                off = (k - kmin) * width
                if c > 0:
                    pos[off : off + width] = c.to_bytes(width, "little")
                else:
                    neg[off : off + width] = (-c).to_bytes(width, "little")
            return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

        prod = _mpz(pack(a, amin, la)) * _mpz(pack(b, bmin, lb))
        # Balanced-digit decode in one pass: adding `half` to every digit
        # makes all digits nonnegative without carries (|digit| < half), so
        # the byte string of the shifted product can be read windowwise.
        length = la + lb - 1
        half = 1 << (bits - 1)
        offset = int.from_bytes((b"\x00" * (width - 1) + b"\x80") * length, "little")
        shifted = int(prod + offset)
        if shifted < 0:
            raise AssertionError("packed multiplication exceeded its digit bound")
        raw = shifted.to_bytes(length * width, "little")
        t = {}
        kmin = amin + bmin
        for i in range(length):
            c = int.from_bytes(raw[i * width : (i + 1) * width], "little") - half
            if c:
                t[kmin + i] = c
        return QLaurent._raw(t)

    def __pow__(self, e: int) -> "QLaurent":
        if not isinstance(e, int) or e < 0:
            raise InvalidParameter("exponent must be a nonnegative integer")
        out = QLaurent.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def shift2(self, k2: int) -> "QLaurent":
        """Multiply by q^(k2/2)."""
        if k2 == 0:
            return self
        return QLaurent._raw({k + k2: c for k, c in self._t.items()})

    def scale(self, c: int) -> "QLaurent":
        if c == 0:
            return QLaurent.zero()
        if c == 1:
            return self
        return QLaurent._raw({k: cc * c for k, cc in self._t.items()})

    # -- evaluation and substitutions ---------------------------------------

    def evaluate(self, v) -> Fraction:
        """Exact value at q = v (v rational).

        When half-integer exponents are present, v must be the square of a
        rational (so that q^(1/2) is itself rational).
        """
        v = Fraction(v)
        if not self._t:
            return Fraction(0)
        if not self.is_integral():
            if v <= 0:
                raise NonIntegralEvaluation(
                    "half-integer exponents require a positive perfect square"
                )
            ns = math.isqrt(v.numerator)
            ds = math.isqrt(v.denominator)
            if ns * ns != v.numerator or ds * ds != v.denominator:
                raise NonIntegralEvaluation(
                    f"{v} is not the square of a rational"
                )
            root = Fraction(ns, ds)
            if min(self._t) < 0 and root == 0:
                raise InvalidParameter("negative exponent at q = 0")
            return sum((c * root**k2 for k2, c in self._t.items()), Fraction(0))
        if v == 0 and min(self._t) < 0:
            raise InvalidParameter("negative exponent at q = 0")
        return sum((c * v ** (k2 // 2) for k2, c in self._t.items()), Fraction(0))

    def compress_power(self, r: int) -> "QLaurent":
        """Return P with P(q^r) equal to this polynomial.

        Every exponent must be a nonnegative integral multiple of r.
        """
        if not isinstance(r, int) or r < 1:
            raise InvalidParameter("power must be a positive integer")
        t = {}
        for k2, c in self._t.items():
            if k2 % 2 or k2 < 0 or (k2 // 2) % r:
                raise NotAPowerSeriesInQr(
                    f"exponent q^({k2}/2) is not a nonnegative multiple of {r}"
                )
            t[k2 // r] = c
        return QLaurent._raw(t)

    def substitute_power(self, r: int) -> "QLaurent":
        """Return the polynomial with q replaced by q^r (inverse of
        compress_power on its image)."""
        if not isinstance(r, int) or r < 1:
            raise InvalidParameter("power must be a positive integer")
        return QLaurent._raw({k2 * r: c for k2, c in self._t.items()})

    # -- rendering -----------------------------------------------------------

    @staticmethod
    def _exp_str(k2: int) -> str:
        if k2 == 0:
            return ""
        if k2 % 2 == 0:
            e = k2 // 2
            return "q" if e == 1 else f"q^{e}"
        return f"q^({k2}/2)"

    def __str__(self) -> str:
        """Canonical text form: terms by ascending exponent."""
        if not self._t:
            return "0"
        parts = []
        for k2, c in self.items2():
            base = self._exp_str(k2)
            mag = abs(c)
            if not base:
                body = str(mag)
            elif mag == 1:
                body = base
            else:
                body = f"{mag}*{base}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def format_descending(self) -> str:
        """Compact descending form, e.g. ``q^73+2q^72-5q^58+...+q+1``."""
        if not self._t:
            return "0"
        out = []
        for k2, c in sorted(self._t.items(), reverse=True):
            base = self._exp_str(k2)
            mag = abs(c)
            if not base:
                body = str(mag)
            elif mag == 1:
                body = base
            else:
                body = f"{mag}{base}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("-" if c < 0 else "+") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"QLaurent({self})"

    def to_obj(self):
        return {"coeffs": [{"q2": k2, "c": str(c)} for k2, c in self.items2()]}

    @classmethod
    def from_obj(cls, obj) -> "QLaurent":
        return cls((int(e["q2"]), int(e["c"])) for e in obj["coeffs"])


ZERO = QLaurent.zero()
ONE = QLaurent.one()
q = QLaurent.q_power(2)
qh = QLaurent.q_power(1)  # q^(1/2)


def c_sequence(r: int, n: int) -> int:
    """n-th term of the dimension sequence c_1 = 0, c_2 = 1,
    c_k = r*c_{k-1} - c_{k-2}."""
    if not isinstance(r, int) or r < 2:
        raise InvalidParameter(f"r must be an integer >= 2, got {r}")
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"n must be an integer >= 1, got {n}")
    a, b = 0, 1  # c_1, c_2
    if n == 1:
        return a
    for _ in range(n - 2):
        a, b = b, r * b - a
    return b


_QBINOM_CACHE: dict[tuple[int, int], QLaurent] = {}


def q_binomial(m: int, n: int) -> QLaurent:
    """Gaussian binomial coefficient as a polynomial in q.

    Conventions: n = 0 gives 1 for every m (including negative m, which is
    forced by the closed-strata formula at its lowest corner); n < 0 gives 0;
    n > m >= 0 gives 0.  Negative m with positive n is not supported.
    """
    if not isinstance(m, int) or not isinstance(n, int):
        raise InvalidParameter("q_binomial arguments must be integers")
    if n == 0:
        return ONE
    if n < 0:
        return ZERO
    if m < 0:
        raise NotSupported(f"q_binomial({m}, {n}) with m < 0 and n > 0")
    if n > m:
        return ZERO
    key = (m, n)
    got = _QBINOM_CACHE.get(key)
    if got is not None:
        return got
    # q-Pascal: binom(m, n) = binom(m-1, n-1) + q^n * binom(m-1, n)
    out = q_binomial(m - 1, n - 1) + q_binomial(m - 1, n).shift2(2 * n)
    _QBINOM_CACHE[key] = out
    return out


def q_int(n: int) -> QLaurent:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise InvalidParameter("q_int needs n >= 0")
    return QLaurent._raw({2 * i: 1 for i in range(n)})
