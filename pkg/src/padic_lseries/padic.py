"""Finite-precision p-adic numbers and the Haar-measure geometry of Q_p.

A p-adic number is stored as a prime, a valuation, and a finite digit
expansion of its unit part: x = p^v * (d_0 + d_1 p + d_2 p^2 + ...), with
d_0 != 0 for nonzero x.  Every stored value is therefore an exact rational,
and norms, measures, and coset bookkeeping stay in exact rational
arithmetic throughout; only transcendental quantities (roots of unity,
complex powers of p) become floats.

The geometry helpers describe circles C_n = {|xi|_p = p^(-n)}: their Haar
measure and a coset decomposition into representatives at a chosen depth.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CosetCapError, PrimeMismatchError

DEFAULT_PRECISION = 32
COSET_CAP = 10**6

_TWO_PI = 2.0 * math.pi


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs here are small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PadicNumber:
    """One element of Q_p, exact to its stored digit count.

    ``digits`` is little-endian in powers of p and its length is the
    precision.  The zero element carries the flag, an empty digit tuple,
    and a conventional valuation of 0.
    """

    prime: int
    valuation: int
    digits: tuple[int, ...]
    is_zero: bool = False

    @property
    def precision(self) -> int:
        return len(self.digits)

    @property
    def norm(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.prime) ** (-self.valuation)

    def as_fraction(self) -> Fraction:
        """The exact rational this expansion denotes."""
        if self.is_zero:
            return Fraction(0)
        unit = 0
        for i in reversed(range(len(self.digits))):
            unit = unit * self.prime + self.digits[i]
        return Fraction(self.prime) ** self.valuation * unit

    def unit_part(self) -> int:
        """The integer d_0 + d_1 p + ... (0 for zero)."""
        unit = 0
        for i in reversed(range(len(self.digits))):
            unit = unit * self.prime + self.digits[i]
        return unit


@dataclass(frozen=True)
class PadicBall:
    """The set {xi : |xi - center|_p <= p^radius_exponent}; measure p^r."""

    prime: int
    center: PadicNumber
    radius_exponent: int

    @property
    def measure(self) -> Fraction:
        return Fraction(self.prime) ** self.radius_exponent

    def contains(self, x: PadicNumber) -> bool:
        diff = x.as_fraction() - self.center.as_fraction()
        if diff == 0:
            return True
        return rational_valuation(diff, self.prime) >= -self.radius_exponent


def make_padic(p: int, valuation: int, digits) -> PadicNumber:
    """Validate and build a p-adic number; an empty digit list builds zero."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    digits = tuple(int(d) for d in digits)
    if not digits:
        return PadicNumber(p, 0, (), is_zero=True)
    for d in digits:
        if not 0 <= d < p:
            raise ValueError(f"digit {d} outside [0, {p - 1}]")
    if digits[0] == 0:
        raise ValueError("leading digit must be nonzero for a nonzero value")
    return PadicNumber(p, int(valuation), digits)


def padic_zero(p: int) -> PadicNumber:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    return PadicNumber(p, 0, (), is_zero=True)


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(q: Fraction, p: int) -> int:
    """v_p of a nonzero rational."""
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def _digits_of(u: int, p: int, length: int) -> tuple[int, ...]:
    # u must be a positive unit mod p; pad with trailing zeros to length
    out = []
    for _ in range(length):
        out.append(u % p)
        u //= p
    return tuple(out)


def padic_from_fraction(p: int, q: Fraction, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Encode an exact rational to ``precision`` digits of its unit part."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    q = Fraction(q)
    if q == 0:
        return padic_zero(p)
    v = rational_valuation(q, p)
    unit = q / Fraction(p) ** v
    a, b = unit.numerator, unit.denominator  # both prime to p
    u = (a * pow(b, -1, p**precision)) % p**precision
    return PadicNumber(p, v, _digits_of(u, p, precision))


def _require_same_prime(x: PadicNumber, y: PadicNumber) -> None:
    if x.prime != y.prime:
        raise PrimeMismatchError(f"cannot combine Q_{x.prime} and Q_{y.prime} values")


def _negate(y: PadicNumber) -> PadicNumber:
    if y.is_zero:
        return y
    p, w = y.prime, y.precision
    s = (-y.unit_part()) % p**w
    return PadicNumber(p, y.valuation, _digits_of(s, p, w))


def _add_sub(x: PadicNumber, y: PadicNumber, sign: int) -> PadicNumber:
    p = x.prime
    if x.is_zero and y.is_zero:
        return x
    if y.is_zero:
        return x
    if x.is_zero:
        return y if sign > 0 else _negate(y)
    w = min(x.precision, y.precision)
    vmin = min(x.valuation, y.valuation)
    total = x.unit_part() * p ** (x.valuation - vmin) + sign * y.unit_part() * p ** (
        y.valuation - vmin
    )
    if total == 0:
        return padic_zero(p)
    t = _int_valuation(total, p)
    s = (total // p**t) % p**w  # unit part, truncated to the min precision
    return PadicNumber(p, vmin + t, _digits_of(s, p, w))


def _mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    p = x.prime
    if x.is_zero or y.is_zero:
        return padic_zero(p)
    w = min(x.precision, y.precision)
    s = (x.unit_part() * y.unit_part()) % p**w
    return PadicNumber(p, x.valuation + y.valuation, _digits_of(s, p, w))


def arithmetic(x: PadicNumber, y: PadicNumber, op: str) -> PadicNumber:
    """Exact digit arithmetic, result truncated to the lesser input precision."""
    _require_same_prime(x, y)
    if op == "add":
        return _add_sub(x, y, 1)
    if op == "sub":
        return _add_sub(x, y, -1)
    if op == "mul":
        return _mul(x, y)
    raise ValueError(f"unknown operation {op!r}; expected add, sub, or mul")


def rational_fractional_part(q: Fraction, p: int) -> Fraction:
    """The p-adic fractional part of an exact rational, in [0, 1).

    Only the p-part of the denominator matters: with q = a / (m p^t) and
    gcd(m, p) = 1, the result is (a * m^(-1) mod p^t) / p^t.
    """
    q = Fraction(q)
    den = q.denominator
    t = 0
    while den % p == 0:
        den //= p
        t += 1
    if t == 0:
        return Fraction(0)
    pt = p**t
    r = (q.numerator * pow(den, -1, pt)) % pt
    return Fraction(r, pt)


def fractional_part(x: PadicNumber) -> Fraction:
    """Sum of the negative-power digit terms of x, reduced mod 1."""
    if x.is_zero or x.valuation >= 0:
        return Fraction(0)
    return rational_fractional_part(x.as_fraction(), x.prime)


def unit_phase(angle: Fraction) -> complex:
    """exp(2 pi i angle) for an exact rational angle."""
    if angle == 0:
        return complex(1.0, 0.0)
    return cmath.exp(complex(0.0, _TWO_PI * float(angle)))


def additive_character(x: PadicNumber) -> complex:
    """exp(2 pi i {x}_p); identically 1 on Z_p."""
    return unit_phase(fractional_part(x))


def circle_measure(p: int, n: int) -> Fraction:
    """Haar measure of {|xi|_p = p^(-n)}: (1 - 1/p) p^(-n)."""
    return Fraction(p - 1, p) * Fraction(p) ** (-n)


def circle_representatives(p: int, n: int, depth: int, cap: int = COSET_CAP) -> list[PadicNumber]:
    """One representative per coset of p^(n+depth) Z_p inside {|xi|_p = p^(-n)}.

    Returns (p-1) p^(depth-1) numbers with valuation n and digit prefixes
    (xi_0, ..., xi_{depth-1}), xi_0 nonzero; each coset has measure
    p^(-n-depth).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    count = (p - 1) * p ** (depth - 1)
    if count > cap:
        raise CosetCapError(
            f"{count} representatives at depth {depth} exceed the cap of {cap}"
        )
    reps = []
    digits = [0] * depth
    for index in range(count):
        rem = index
        digits[0] = 1 + rem % (p - 1)
        rem //= p - 1
        for i in range(1, depth):
            digits[i] = rem % p
            rem //= p
        reps.append(PadicNumber(p, n, tuple(digits)))
    return reps
