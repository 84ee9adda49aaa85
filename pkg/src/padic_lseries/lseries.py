"""Local Euler factors as operator traces, and the global objects they build.

The local factor of a Dirichlet L-function at p is the trace of the twisted
derivative of order -s over the wavelet subspace H_-: a geometric series in
eigenvalues.  The modular factor is a trace over a tensor square, summed
here over the triangular lattice region m1 + m2 <= M so the discarded part
has a clean closed-form bound.  Global values come either from the Euler
product over sieved primes or from partial Dirichlet series, each carrying
a certified remainder: geometric tails for traces, integral comparison for
products and series, and the alternating next-term bound where a real
character genuinely alternates.

Every result is a SeriesResult (value, remainder_bound, terms_used); the
remainder bounds are upper bounds, never estimates, because the test suite
compares methods against each other through them.

One convergence subtlety is load-bearing everywhere: the modular root pairs
satisfy |a_i| = p^((k-1)/2), so traces converge only for Re(s) beyond
(k-1)/2 and the root and scale factors are combined as a_i p^(-s) before
powering; powering them separately would overflow and underflow float range
long before the products stop being representable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import DirichletCharacter, character_angle, evaluate
from .errors import ConvergenceError, DegenerateTwistError, PoleError
from .modular import CoefficientProvider, coefficient, factorize_local
from .padic import is_prime
from .quadrature import POLE_EPSILON
from .wavelets import CHARACTER_TWISTED, PLAIN, OperatorSpec, eigenvalue

ZETA_LOCAL = "zeta_local"
DIRICHLET_LOCAL = "dirichlet_local"
MODULAR_LOCAL = "modular_local"
HECKE_CONJUGATED = "hecke_conjugated"

_TRACE_KINDS = (ZETA_LOCAL, DIRICHLET_LOCAL, MODULAR_LOCAL, HECKE_CONJUGATED)

DEFAULT_TRUNCATION = 64
PRIME_BOUND_CAP = 10**7


@dataclass(frozen=True)
class TraceRequest:
    """One local trace: which L-function, at which prime and argument."""

    kind: str
    prime: int
    s: complex
    truncation: int = DEFAULT_TRUNCATION
    character: DirichletCharacter | None = None
    provider: CoefficientProvider | None = None
    shift: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _TRACE_KINDS:
            raise ValueError(f"unknown trace kind {self.kind!r}")
        if not is_prime(self.prime):
            raise ValueError(f"prime must be prime, got {self.prime}")
        if self.kind == DIRICHLET_LOCAL and self.character is None:
            raise ValueError("dirichlet_local needs a character")
        if self.kind in (MODULAR_LOCAL, HECKE_CONJUGATED) and self.provider is None:
            raise ValueError(f"{self.kind} needs a coefficient provider")
        if self.truncation < 1:
            raise ValueError("truncation must be positive")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    remainder_bound: float
    terms_used: int


def primes_up_to(bound: int) -> list[int]:
    """Deterministic byte-array sieve."""
    if bound > PRIME_BOUND_CAP:
        raise ValueError(f"prime bound {bound} exceeds the cap {PRIME_BOUND_CAP}")
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, math.isqrt(bound) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(sieve[q * q :: q]))
    return [i for i, flag in enumerate(sieve) if flag]


def _geometric_unimodular_trace(spec: OperatorSpec, p: int, s: complex, M: int) -> SeriesResult:
    ratio = p ** (-s.real)
    if ratio >= 1.0:
        raise ConvergenceError(
            f"trace at p = {p} needs Re(s) > 0 to converge; got s = {s}"
        )
    total = complex(0.0)
    for m in range(M + 1):
        total += eigenvalue(spec, m)
    tail = ratio ** (M + 1) / (1.0 - ratio)
    return SeriesResult(total, tail, M + 1)


def _triangular_lattice_sum(q1: complex, q2: complex, M: int) -> complex:
    """sum over m1 + m2 <= M of q1^m1 q2^m2, by total degree."""
    e1, e2 = q1 + q2, q1 * q2
    previous, current = complex(0.0), complex(1.0)
    total = complex(1.0)
    for _ in range(M):
        previous, current = current, e1 * current - e2 * previous
        total += current
    return total


def _triangular_tail(ratio: float, M: int) -> float:
    """sum over m > M of (m+1) ratio^m in closed form."""
    return ratio ** (M + 1) * ((M + 2) - (M + 1) * ratio) / (1.0 - ratio) ** 2


def _modular_ratios(provider: CoefficientProvider, p: int, s: complex) -> tuple[complex, complex, float]:
    fac = factorize_local(provider, p)
    scale = cmath.exp(-complex(s) * math.log(p))
    q1, q2 = fac.a1 * scale, fac.a2 * scale
    ratio = max(abs(q1), abs(q2))
    if ratio >= 1.0:
        raise ConvergenceError(
            f"modular trace at p = {p} needs max|a_i| p^(-Re s) < 1; got {ratio:.6g} at s = {s}"
        )
    return q1, q2, ratio


def local_trace(req: TraceRequest) -> SeriesResult:
    """The truncated trace realizing one local L-factor, with its tail bound."""
    p, s, M = req.prime, complex(req.s), req.truncation
    if req.kind == ZETA_LOCAL:
        return _geometric_unimodular_trace(OperatorSpec(PLAIN, p, -s), p, s, M)
    if req.kind == DIRICHLET_LOCAL:
        if character_angle(req.character, p) is None:
            raise DegenerateTwistError(
                f"p = {p} divides the modulus {req.character.modulus}: the twist "
                "degenerates to the identity and its trace diverges; the closed "
                "local factor there is exactly 1"
            )
        spec = OperatorSpec(CHARACTER_TWISTED, p, -s, character=req.character)
        return _geometric_unimodular_trace(spec, p, s, M)
    if req.kind == MODULAR_LOCAL:
        q1, q2, ratio = _modular_ratios(req.provider, p, s)
        total = _triangular_lattice_sum(q1, q2, M)
        return SeriesResult(total, _triangular_tail(ratio, M), (M + 1) * (M + 2) // 2)
    return hecke_conjugated_trace(req.provider, p, s, req.shift, M)


def local_factor_closed(req: TraceRequest, pole_epsilon: float = POLE_EPSILON) -> complex:
    """The closed local factor the trace converges to."""
    p, s = req.prime, complex(req.s)
    scale = cmath.exp(-s * math.log(p))
    if req.kind == ZETA_LOCAL:
        denom = 1.0 - scale
    elif req.kind == DIRICHLET_LOCAL:
        denom = 1.0 - evaluate(req.character, p) * scale
    elif req.kind == MODULAR_LOCAL:
        fac = factorize_local(req.provider, p)
        denom = 1.0 - fac.a_p * scale + fac.chi_pk * scale * scale
    else:
        raise ValueError("the conjugated trace has no single closed factor; "
                         "compare it against a(p^l) p^(-s l) times the modular factor")
    if abs(denom) < pole_epsilon:
        raise PoleError(
            f"local factor denominator {abs(denom):.3e} at p = {p}, s = {s} "
            f"is inside the pole epsilon {pole_epsilon:.1e}"
        )
    return 1.0 / denom


def _series_exponent_shift(twist) -> float:
    # convergence abscissa moves right by (k-1)/2 for a weight-k form
    if isinstance(twist, CoefficientProvider):
        return (twist.weight - 1) / 2.0
    return 0.0


def euler_product(twist, s: complex, prime_bound: int) -> SeriesResult:
    """Product of closed local factors over sieved primes, with a tail bound.

    ``twist`` is a DirichletCharacter or a CoefficientProvider.  The bound
    on the dropped primes integrates sum p^(-sigma') for the shifted
    abscissa sigma'; for providers it assumes the root pairs satisfy
    |a_i| <= p^((k-1)/2), which holds whenever the coefficients obey the
    Ramanujan-Petersson size |a(p)| <= 2 p^((k-1)/2).
    """
    s = complex(s)
    sigma = s.real - _series_exponent_shift(twist)
    if sigma <= 1.0:
        raise ConvergenceError(
            f"Euler product needs Re(s) > {1.0 + _series_exponent_shift(twist)}; got s = {s}"
        )
    modular = isinstance(twist, CoefficientProvider)
    primes = primes_up_to(prime_bound)
    value = complex(1.0)
    for p in primes:
        if modular:
            req = TraceRequest(MODULAR_LOCAL, p, s, provider=twist)
        else:
            req = TraceRequest(DIRICHLET_LOCAL, p, s, character=twist)
        value *= local_factor_closed(req)

    # |log factor| <= c p^(-sigma) per unimodular twist, twice that for the
    # two modular roots; then sum_{p > P} p^(-sigma) < P^(1-sigma)/(sigma-1)
    c = 1.0 / (1.0 - 2.0**-sigma)
    log_tail = (2.0 if modular else 1.0) * c * prime_bound ** (1.0 - sigma) / (sigma - 1.0)
    return SeriesResult(value, abs(value) * math.expm1(log_tail), len(primes))


def _is_alternating(chi: DirichletCharacter) -> bool:
    """True for a real nonprincipal character whose nonzero values alternate."""
    k = chi.modulus
    if k == 1:
        return False
    signs = []
    for n in range(1, 2 * k + 1):
        theta = character_angle(chi, n)
        if theta is None:
            continue
        if theta == 0:
            signs.append(1)
        elif theta == Fraction(1, 2):
            signs.append(-1)
        else:
            return False  # complex values never alternate in the real sense
    if all(sign == 1 for sign in signs):
        return False
    return all(a != b for a, b in zip(signs, signs[1:]))


def dirichlet_series(twist, s: complex, N: int) -> SeriesResult:
    """Partial sum of chi(n)/n^s or a(n)/n^s with a certified remainder.

    Needs Re(s) past the convergence abscissa, except that a genuinely
    alternating real character admits any real s > 0 with the next-term
    bound of the alternating series test.
    """
    s = complex(s)
    if N < 1:
        raise ValueError("the partial sum needs N >= 1")
    real_s = s.imag == 0.0
    if isinstance(twist, CoefficientProvider):
        sigma = s.real - _series_exponent_shift(twist) - 0.5  # |a(n)| <= 2 n^(k/2)
        if sigma <= 1.0:
            raise ConvergenceError(
                f"modular series needs Re(s) > {1.5 + _series_exponent_shift(twist)}; got s = {s}"
            )
        total = complex(0.0)
        if real_s:
            x = s.real
            for n in range(1, N + 1):
                total += complex(coefficient(twist, n)) * n**-x
        else:
            for n in range(1, N + 1):
                total += complex(coefficient(twist, n)) * cmath.exp(-s * math.log(n))
        tail = 2.0 * N ** (1.0 - sigma) / (sigma - 1.0)
        return SeriesResult(total, tail, N)

    chi: DirichletCharacter = twist
    alternating = _is_alternating(chi) and real_s and s.real > 0.0
    if s.real <= 1.0 and not alternating:
        raise ConvergenceError(
            f"Dirichlet series needs Re(s) > 1 (or an alternating real character "
            f"with real s > 0); got s = {s}"
        )
    k = chi.modulus
    table = [evaluate(chi, r) for r in range(max(k, 1))]
    total = complex(0.0)
    if real_s:
        x = s.real
        for n in range(1, N + 1):
            value = table[n % k] if k > 1 else table[0]
            if value != 0:
                total += value * n**-x
    else:
        for n in range(1, N + 1):
            value = table[n % k] if k > 1 else table[0]
            if value != 0:
                total += value * cmath.exp(-s * math.log(n))

    bounds = []
    if s.real > 1.0:
        bounds.append(N ** (1.0 - s.real) / (s.real - 1.0))
    if alternating:
        nxt = N + 1
        while character_angle(chi, nxt) is None:
            nxt += 1
        bounds.append(nxt ** (-s.real))
    return SeriesResult(total, min(bounds), N)


def hecke_conjugated_trace(
    provider: CoefficientProvider,
    p: int,
    s: complex,
    shift: int,
    M: int = DEFAULT_TRUNCATION,
) -> SeriesResult:
    """Trace of the modular operator conjugated by the l-th ladder shift.

    Conjugation translates the (m1, m2) lattice quadrant; splitting the
    shift l between the two tensor factors gives l + 1 translated quadrants,
    each a copy of the full triangular sum weighted by q1^i q2^(l-i).  The
    weights sum to a(p^l) p^(-s l), which is why this trace reproduces the
    shifted local factor.
    """
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    if M < shift:
        raise ValueError(f"truncation M = {M} cannot be below the shift {shift}")
    q1, q2, ratio = _modular_ratios(provider, p, complex(s))
    weight = complex(0.0)
    for i in range(shift + 1):
        weight += q1**i * q2 ** (shift - i)
    inner = M - shift
    value = weight * _triangular_lattice_sum(q1, q2, inner)
    tail = abs(weight) * _triangular_tail(ratio, inner)
    return SeriesResult(value, tail, (shift + 1) * (inner + 1) * (inner + 2) // 2)
