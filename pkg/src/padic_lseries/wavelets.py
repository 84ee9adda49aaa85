"""Kozyrev wavelets and the twisted pseudodifferential operators on them.

The wavelet with index (n, m, j) is

    psi(xi) = p^(-n/2) exp(2 pi i {j p^(n-1) xi}) Omega(|p^n xi - m|),

supported on the ball of radius p^n around m p^(-n) and constant on cosets
of p^(1-n) Z_p.  Kets are labeled by the eigenvalue exponent: |l> is the
wavelet with n = 1 - l, m = 0, j = 1, and the raising operator annihilates
the label-0 ground state of that family.

An operator is applied two ways.  Spectrally, eigenvalue() multiplies a ket
by (T p^alpha)^label, where T is the twist value at p (1 for the plain
derivative, chi(p) for a character twist, one root of the local Hecke
quadratic for the modular twists).  Through the kernel, apply_kernel()
evaluates the defining singular integral by exact shell decomposition:
shells finer than the wavelet's constancy level cancel exactly, the shell
at the support radius is a finite coset sum, and coarser shells contribute
closed-form terms, so the only truncation is the outer radius p^R, whose
discarded tail is returned as a certified bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import DirichletCharacter, character_angle, extend_character, extended_char
from .errors import ConvergenceError, CosetCapError, PrimeMismatchError
from .padic import (
    COSET_CAP,
    PadicBall,
    PadicNumber,
    is_prime,
    padic_from_fraction,
    rational_fractional_part,
    rational_valuation,
    unit_phase,
)
from .quadrature import (
    CHARACTER_TWISTED,
    MODULAR_A1,
    MODULAR_A2,
    STANDARD,
    GammaSpec,
    gamma_closed_form,
)

PLAIN = "plain"

_OPERATOR_KINDS = (PLAIN, CHARACTER_TWISTED, MODULAR_A1, MODULAR_A2)

RAISE = "+"
LOWER = "-"


@dataclass(frozen=True)
class WaveletIndex:
    """Scale n, translation m (a representative of Q_p/Z_p), and twist j."""

    prime: int
    n: int
    m: Fraction
    j: int

    @property
    def ket_label(self) -> int:
        return 1 - self.n

    @property
    def center(self) -> Fraction:
        return self.m * Fraction(self.prime) ** (-self.n)


def wavelet_index(p: int, n: int, m=0, j: int = 1) -> WaveletIndex:
    """Validate and build an index; m is canonicalized as a/p^t in [0, 1)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not 1 <= j <= p - 1:
        raise ValueError(f"j = {j} outside [1, {p - 1}]")
    m = Fraction(m)
    if not 0 <= m < 1:
        raise ValueError(f"m = {m} is not a canonical representative in [0, 1)")
    if m != 0:
        den = m.denominator
        while den % p == 0:
            den //= p
        if den != 1:
            raise ValueError(f"m = {m} must have a pure power of {p} as denominator")
    return WaveletIndex(p, int(n), m, j)


def ket(p: int, label: int) -> WaveletIndex:
    """The basis ket |label>: wavelet (n = 1 - label, m = 0, j = 1)."""
    if label < 0:
        raise ValueError("kets carry nonnegative labels")
    return wavelet_index(p, 1 - label, 0, 1)


def support(idx: WaveletIndex) -> PadicBall:
    return PadicBall(
        idx.prime,
        padic_from_fraction(idx.prime, idx.center),
        idx.n,
    )


def indicator(x: PadicNumber) -> int:
    """1 on Z_p, else 0."""
    if x.is_zero:
        return 1
    return 1 if x.valuation >= 0 else 0


def _eval_at_fraction(idx: WaveletIndex, xi: Fraction) -> complex:
    p, n = idx.prime, idx.n
    diff = xi - idx.center
    if diff != 0 and rational_valuation(diff, p) < -n:
        return complex(0.0, 0.0)
    phase = rational_fractional_part(idx.j * Fraction(p) ** (n - 1) * xi, p)
    return p ** (-n / 2) * unit_phase(phase)


def wavelet_eval(idx: WaveletIndex, xi: PadicNumber) -> complex:
    """psi_{n,m,j}(xi); exactly zero off the support ball."""
    if idx.prime != xi.prime:
        raise PrimeMismatchError(
            f"wavelet over Q_{idx.prime} evaluated at a Q_{xi.prime} point"
        )
    return _eval_at_fraction(idx, xi.as_fraction())


def raise_lower(idx: WaveletIndex, direction: str) -> WaveletIndex | None:
    """a_+/a_- on the ket family; returns None for the annihilated ground state.

    Only the m = 0, j = 1 wavelets form the ladder.  In ket labels the
    raising operator moves |l> to |l-1> and kills |0>; lowering moves
    |l> to |l+1>.
    """
    if idx.m != 0 or idx.j != 1:
        raise ValueError("the ladder is defined on the m = 0, j = 1 family only")
    if direction == RAISE:
        if idx.ket_label == 0:
            return None
        return WaveletIndex(idx.prime, idx.n + 1, idx.m, idx.j)
    if direction == LOWER:
        return WaveletIndex(idx.prime, idx.n - 1, idx.m, idx.j)
    raise ValueError(f"direction must be {RAISE!r} or {LOWER!r}, got {direction!r}")


@dataclass(frozen=True)
class OperatorSpec:
    """A twisted derivative of order alpha at a prime.

    kind is ``plain``, ``character_twisted`` (with ``character``), or
    ``modular_a1``/``modular_a2`` (with ``coefficient`` holding the root).
    """

    kind: str
    prime: int
    alpha: complex
    character: DirichletCharacter | None = None
    coefficient: complex | None = None

    def __post_init__(self) -> None:
        if self.kind not in _OPERATOR_KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind == CHARACTER_TWISTED and self.character is None:
            raise ValueError("character_twisted operator needs a character")
        if self.kind in (MODULAR_A1, MODULAR_A2) and self.coefficient is None:
            raise ValueError("modular operator needs a coefficient")


def twist_value(spec: OperatorSpec) -> complex:
    if spec.kind == PLAIN:
        return complex(1.0, 0.0)
    if spec.kind == CHARACTER_TWISTED:
        theta = character_angle(spec.character, spec.prime)
        return complex(0.0, 0.0) if theta is None else unit_phase(theta)
    return complex(spec.coefficient)


def twist_power(spec: OperatorSpec, n: int) -> complex:
    """twist(p)^n with exact angle arithmetic for unimodular twists."""
    if spec.kind == PLAIN:
        return complex(1.0, 0.0)
    if spec.kind == CHARACTER_TWISTED:
        return extended_char(extend_character(spec.character, spec.prime), n)
    return complex(spec.coefficient) ** n


def is_degenerate(spec: OperatorSpec) -> bool:
    """True when the twist vanishes and the operator is the identity."""
    return spec.kind != PLAIN and twist_value(spec) == 0


def _gamma_spec(spec: OperatorSpec, s: complex) -> GammaSpec:
    if spec.kind == PLAIN:
        return GammaSpec(STANDARD, spec.prime, s)
    if spec.kind == CHARACTER_TWISTED:
        return GammaSpec(CHARACTER_TWISTED, spec.prime, s, character=spec.character)
    return GammaSpec(spec.kind, spec.prime, s, coefficient=spec.coefficient)


def eigenvalue(spec: OperatorSpec, ket_label: int) -> complex:
    """(T p^alpha)^label; 1 for every label when the twist degenerates."""
    if is_degenerate(spec):
        return complex(1.0, 0.0)
    scale = cmath.exp(complex(spec.alpha) * ket_label * math.log(spec.prime))
    return twist_power(spec, ket_label) * scale


def apply_kernel(
    spec: OperatorSpec,
    idx: WaveletIndex,
    xi: PadicNumber,
    R: int,
    cap: int = COSET_CAP,
) -> tuple[complex, float]:
    """Apply the operator through its integral kernel, truncated at |xi'| <= p^R.

    Evaluates (1/Gamma(-alpha)) times the integral of
    (g(xi') - g(xi)) |xi' - xi|^(-(alpha+1)) twist(|xi' - xi|^(-1)) over the
    ball |xi'| <= p^R, for g the wavelet.  The integrand is summed shell by
    shell in z = xi' - xi; every shell is either identically zero (finer than
    the wavelet's constancy level), a finite coset sum (the support radius),
    or a closed-form multiple of g(xi) (coarser shells), so the computation
    is exact up to the returned tail bound:

        |g(xi)| (1 - 1/p) sum_{t > R} p^(-t Re alpha) / |Gamma(-alpha)|,

    plus the measure of any support cosets falling outside the truncation
    ball.  A degenerate twist makes the operator the identity: the wavelet
    value is returned with a zero bound.

    Returns (value, tail_bound).
    """
    if idx.prime != xi.prime or idx.prime != spec.prime:
        raise PrimeMismatchError("operator, wavelet, and point must share a prime")
    alpha = complex(spec.alpha)
    if alpha.real <= 0:
        raise ConvergenceError(
            f"kernel application needs Re(alpha) > 0 for the outer shells; got {alpha}"
        )
    psi_xi_direct = wavelet_eval(idx, xi)
    if is_degenerate(spec):
        return psi_xi_direct, 0.0

    p, n = spec.prime, idx.n
    if R < n:
        raise ValueError(
            f"truncation radius p^{R} is smaller than the support radius p^{n}"
        )
    if p > cap:
        raise CosetCapError(f"{p} shell cosets exceed the cap of {cap}")
    xif = xi.as_fraction()
    if xif != 0 and -rational_valuation(xif, p) > R:
        raise ValueError("evaluation point lies outside the truncation ball")

    log_p = math.log(p)
    gamma_norm = gamma_closed_form(_gamma_spec(spec, -alpha))
    diff = xif - idx.center
    inside = diff == 0 or rational_valuation(diff, p) >= -n
    psi_xi = _eval_at_fraction(idx, xif) if inside else complex(0.0, 0.0)

    acc = complex(0.0, 0.0)
    missed = 0.0
    if inside:
        # shell |z| = p^n: both endpoints stay in the support, (p-1) cosets
        coset_measure = float(Fraction(p) ** (n - 1))
        shell_weight = cmath.exp(-(alpha + 1) * n * log_p) * twist_power(spec, -n)
        step = Fraction(p) ** (-n)
        for d in range(1, p):
            acc += (
                (_eval_at_fraction(idx, xif + d * step) - psi_xi)
                * coset_measure
                * shell_weight
            )
        # shells p^(n+1) .. p^R: g vanishes there, closed form per shell
        for t in range(n + 1, R + 1):
            acc -= (
                psi_xi
                * (1 - 1 / p)
                * cmath.exp(-alpha * t * log_p)
                * twist_power(spec, -t)
            )
    else:
        # |xi' - xi| is constant over the whole support ball
        t0 = -rational_valuation(diff, p)
        weight = cmath.exp(-(alpha + 1) * t0 * log_p) * twist_power(spec, -t0)
        coset_measure = float(Fraction(p) ** (n - 1))
        step = Fraction(p) ** (-n)
        for d in range(p):
            rep = idx.center + d * step
            if rep == 0 or -rational_valuation(rep, p) <= R:
                acc += _eval_at_fraction(idx, rep) * coset_measure * weight
            else:
                missed += (
                    p ** (-n / 2)
                    * coset_measure
                    * p ** (-t0 * (alpha.real + 1))
                    * abs(twist_power(spec, -t0))
                )

    decay = p**-alpha.real
    tail = abs(psi_xi) * (1 - 1 / p) * decay ** (R + 1) / (1 - decay)
    return acc / gamma_norm, (tail + missed) / abs(gamma_norm)


def inner_product(
    idx1: WaveletIndex,
    idx2: WaveletIndex,
    R: int,
    cap: int = COSET_CAP,
) -> complex:
    """Exact L2 pairing <psi1, psi2> over the ball |xi| <= p^R.

    Disjoint supports pair to zero outright.  Otherwise the smaller support
    ball sits inside the larger one and splits into p cosets on which both
    wavelets are constant; representatives outside the truncation ball are
    dropped, matching the integration region.
    """
    if idx1.prime != idx2.prime:
        raise PrimeMismatchError("wavelets over different fields cannot be paired")
    p = idx1.prime
    c1, c2 = idx1.center, idx2.center
    separation = c1 - c2
    if separation != 0 and -rational_valuation(separation, p) > max(idx1.n, idx2.n):
        return complex(0.0, 0.0)

    small = idx1 if idx1.n <= idx2.n else idx2
    level = 1 - small.n  # both wavelets are constant on cosets of p^level Z_p
    if p > cap:
        raise CosetCapError(f"{p} coset representatives exceed the cap of {cap}")
    coset_measure = float(Fraction(p) ** (-level))
    step = Fraction(p) ** (-small.n)
    total = complex(0.0, 0.0)
    for d in range(p):
        rep = small.center + d * step
        if rep != 0 and -rational_valuation(rep, p) > R:
            continue
        total += (
            _eval_at_fraction(idx1, rep)
            * _eval_at_fraction(idx2, rep).conjugate()
            * coset_measure
        )
    return total
