"""Exact arithmetic for rational combinations of half-integer powers of pi.

Every closed-form constant produced by this package lives in the ring

    Q[sqrt(pi), 1/sqrt(pi)] = { sum_h c_h * pi^(h/2) : c_h rational, h integer },

because the gamma function at half-integer arguments contributes exactly one
factor of sqrt(pi).  A :class:`PiPolynomial` stores the finite map h -> c_h in
canonical form (no zero coefficients), so equality of values is structural
equality of representations.

Numeric output (decimal strings, signs, comparisons) is certified with
interval arithmetic: pi is enclosed at a working precision that escalates
until the result is unambiguous, so no printed digit or comparison can be
wrong by rounding.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping

import mpmath

# Rational values: arbitrary-precision numerator, positive denominator,
# gcd-reduced.  Fraction maintains exactly these invariants.
Rational = Fraction

_ZERO = Fraction(0)

#: Starting precision (significant decimal digits) for certified comparisons.
DEFAULT_COMPARISON_DIGITS = 50
#: Hard cap on escalation.  A nonzero element of the ring is a nonzero value
#: (pi is transcendental), so escalation terminates; the cap guards bugs.
MAX_COMPARISON_DIGITS = 1000

_IV_LOCK = threading.Lock()


class PrecisionError(ArithmeticError):
    """Raised when a certified comparison exhausts the precision cap."""


def _fraction_from_mpf_tuple(t) -> Fraction:
    sign, man, exp, _bc = t
    if man == 0:
        if exp == 0:
            return _ZERO
        raise PrecisionError("non-finite interval endpoint")
    val = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -val if sign else val


def _coerce(value) -> "PiPolynomial | None":
    if isinstance(value, PiPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return PiPolynomial({0: Fraction(value)})
    return None


class PiPolynomial:
    """A number of the form sum_h coef(h) * pi^(h/2), held exactly.

    Instances are immutable and hashable; all arithmetic returns new values.
    ints and Fractions mix freely as operands.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        canon: dict[int, Fraction] = {}
        if terms:
            for h, c in terms.items():
                c = Fraction(c)
                if c:
                    h = int(h)
                    acc = canon.get(h, _ZERO) + c
                    if acc:
                        canon[h] = acc
                    else:
                        canon.pop(h, None)
        object.__setattr__(self, "_terms", canon)

    def __setattr__(self, name, value):
        raise AttributeError("PiPolynomial is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_rational(cls, value: Fraction | int) -> "PiPolynomial":
        return cls({0: Fraction(value)})

    @classmethod
    def zero(cls) -> "PiPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "PiPolynomial":
        return cls({0: 1})

    # -- structure -----------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        """Canonical terms as a fresh dict mapping h to the coefficient of pi^(h/2)."""
        return dict(self._terms)

    def half_powers(self) -> list[int]:
        return sorted(self._terms)

    def coefficient(self, h: int) -> Fraction:
        return self._terms.get(h, _ZERO)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def to_rational(self) -> Fraction:
        """The value as a Fraction; raises if a pi power is present."""
        if not self._terms:
            return _ZERO
        if set(self._terms) == {0}:
            return self._terms[0]
        raise ValueError(f"{self} is not rational")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "PiPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for h, c in other._terms.items():
            merged[h] = merged.get(h, _ZERO) + c
        return PiPolynomial(merged)

    __radd__ = __add__

    def __neg__(self) -> "PiPolynomial":
        return PiPolynomial({h: -c for h, c in self._terms.items()})

    def __sub__(self, other) -> "PiPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PiPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PiPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        prod: dict[int, Fraction] = {}
        for ha, ca in self._terms.items():
            for hb, cb in other._terms.items():
                h = ha + hb
                prod[h] = prod.get(h, _ZERO) + ca * cb
        return PiPolynomial(prod)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PiPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("PiPolynomial division by zero")
        if len(other._terms) != 1:
            raise ValueError("PiPolynomial division requires a single-term divisor")
        (hd, cd), = other._terms.items()
        return PiPolynomial({h - hd: c / cd for h, c in self._terms.items()})

    def __rtruediv__(self, other) -> "PiPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "PiPolynomial":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (PiPolynomial.one() / self) ** (-n)
        result = PiPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- equality and ordering -----------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.to_rational())
        return hash(tuple(sorted(self._terms.items())))

    def sign(self) -> int:
        """Certified sign: -1, 0 or +1.

        Zero is decided structurally; otherwise interval evaluation escalates
        precision until the enclosure excludes zero.
        """
        if not self._terms:
            return 0
        if self.is_rational:
            q = self._terms[0]
            return (q > 0) - (q < 0)
        digits = DEFAULT_COMPARISON_DIGITS
        while True:
            lo, hi = self.evaluate_interval(digits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if digits >= MAX_COMPARISON_DIGITS:
                raise PrecisionError(
                    f"sign of {self} undecided at {digits} digits"
                )
            digits = min(2 * digits, MAX_COMPARISON_DIGITS)

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    # -- numeric evaluation ----------------------------------------------------

    def evaluate_interval(self, digits: int) -> tuple[Fraction, Fraction]:
        """A guaranteed enclosure [lo, hi] of the value, as exact Fractions.

        Endpoints come from directed-rounding interval arithmetic at the given
        working precision, so lo <= value <= hi holds unconditionally.
        """
        if not self._terms:
            return (_ZERO, _ZERO)
        with _IV_LOCK:
            iv = mpmath.iv
            saved = iv.prec
            try:
                iv.dps = digits + 5
                total = iv.mpf(0)
                pi_iv = +iv.pi
                sqrt_pi = iv.sqrt(pi_iv)
                for h, c in self._terms.items():
                    q, r = divmod(h, 2)
                    power = pi_iv ** q if q else iv.mpf(1)
                    if r:
                        power = power * sqrt_pi
                    coef = iv.mpf(c.numerator) / iv.mpf(c.denominator)
                    total = total + coef * power
                a, b = total._mpi_
            finally:
                iv.prec = saved
        return (_fraction_from_mpf_tuple(a), _fraction_from_mpf_tuple(b))

    def to_decimal(self, digits: int) -> str:
        """Decimal string with the first ``digits`` significant digits certified.

        Truncates the exact decimal expansion toward zero; every printed digit
        is a true digit of the value.  Zero prints as "0." followed by
        ``digits`` zeros.
        """
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if not self._terms:
            return "0." + "0" * digits
        if self.is_rational:
            return _truncate_rational(self._terms[0], digits)
        prec = max(digits + 10, DEFAULT_COMPARISON_DIGITS)
        while True:
            lo, hi = self.evaluate_interval(prec)
            if (lo > 0) == (hi > 0) and lo != 0 and hi != 0:
                s_lo = _truncate_rational(lo, digits)
                s_hi = _truncate_rational(hi, digits)
                if s_lo == s_hi:
                    return s_lo
            if prec >= MAX_COMPARISON_DIGITS + digits:
                raise PrecisionError(
                    f"decimal expansion of {self} undecided at {prec} digits"
                )
            prec = 2 * prec

    def to_float(self) -> float:
        """Nearest double, via a 30-significant-digit certified decimal."""
        if self.is_rational:
            return float(self._terms.get(0, _ZERO))
        return float(self.to_decimal(30))

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        """JSON form: {"terms": [{"h": int, "num": str, "den": str}]}, h ascending."""
        return {
            "terms": [
                {
                    "h": h,
                    "num": str(self._terms[h].numerator),
                    "den": str(self._terms[h].denominator),
                }
                for h in sorted(self._terms)
            ]
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PiPolynomial":
        terms = {
            int(t["h"]): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return cls(terms)

    # -- display ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for h in sorted(self._terms):
            c = self._terms[h]
            mag = _format_term(abs(c), h)
            if not parts:
                parts.append(mag if c > 0 else f"-{mag}")
            else:
                parts.append(f"+ {mag}" if c > 0 else f"- {mag}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"PiPolynomial({self._terms!r})"

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))


def _format_term(coef: Fraction, h: int) -> str:
    if h == 0:
        return str(coef)
    if h == 2:
        p = "pi"
    elif h % 2 == 0:
        p = f"pi^{h // 2}"
    else:
        p = f"pi^({h}/2)"
    if coef == 1:
        return p
    return f"{coef}*{p}"


def _truncate_rational(q: Fraction, digits: int) -> str:
    """First ``digits`` significant digits of q, truncated toward zero."""
    if q == 0:
        return "0." + "0" * digits
    sign = "-" if q < 0 else ""
    p, d = abs(q).numerator, abs(q).denominator
    # decimal exponent e with 10^e <= p/d < 10^(e+1)
    e = len(str(p)) - len(str(d))
    while p * 10 ** max(0, -e) < d * 10 ** max(0, e):
        e -= 1
    while p * 10 ** max(0, -(e + 1)) >= d * 10 ** max(0, e + 1):
        e += 1
    shift = digits - 1 - e
    if shift >= 0:
        mant = p * 10**shift // d
    else:
        mant = p // (d * 10**-shift)
    s = str(mant)
    if e < 0:
        return f"{sign}0." + "0" * (-e - 1) + s
    if e + 1 >= digits:
        return sign + s + "0" * (e + 1 - digits)
    return sign + s[: e + 1] + "." + s[e + 1 :]


def to_decimal(value: PiPolynomial, digits: int) -> str:
    """Certified truncated decimal of ``value`` to ``digits`` significant digits."""
    coerced = _coerce(value)
    if coerced is None:
        raise TypeError(f"cannot render {value!r}")
    return coerced.to_decimal(digits)


PI = PiPolynomial({2: 1})
SQRT_PI = PiPolynomial({1: 1})


def pi_power(h: int) -> PiPolynomial:
    """pi^(h/2) as an exact single-term value."""
    return PiPolynomial({h: 1})


def gamma_half(two_n: int) -> PiPolynomial:
    """Gamma(two_n / 2), exact.

    Even arguments give (two_n/2 - 1)!.  Odd arguments give
    Gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi) with m = (two_n - 1)/2.
    """
    if two_n <= 0:
        raise ValueError(f"gamma_half requires a positive argument, got {two_n}")
    if two_n % 2 == 0:
        return PiPolynomial({0: factorial(two_n // 2 - 1)})
    m = (two_n - 1) // 2
    return PiPolynomial({1: Fraction(factorial(2 * m), 4**m * factorial(m))})


def kappa(d: int) -> PiPolynomial:
    """Volume of the d-dimensional unit ball: pi^(d/2) / Gamma(1 + d/2)."""
    if d <= 0:
        raise ValueError(f"kappa requires dimension >= 1, got {d}")
    return pi_power(d) / gamma_half(d + 2)


def omega(d: int) -> PiPolynomial:
    """Surface measure of the (d-1)-sphere bounding the unit d-ball: d * kappa(d)."""
    if d <= 0:
        raise ValueError(f"omega requires dimension >= 1, got {d}")
    return kappa(d) * d
