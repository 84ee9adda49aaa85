"""Dirichlet characters mod k, their enumeration, and prime-power extension.

The unit group (Z/kZ)* is decomposed through its prime-power parts: each odd
prime power gets its smallest primitive root, 2^e gets the classical pair
{3, 2^e - 1} (e >= 3) or {3} (e = 2), and the local generators are CRT-lifted
to mod k, ordered by ascending prime power.  A character is an exponent
vector against that fixed generator list, so the enumeration (and hence the
index of any character) is deterministic.

Character values are held as exact rational angles theta with
chi(m) = exp(2 pi i theta); all the group law, conjugation, and integer
powers of values happen on the angles, so no unimodularity is lost to
floating point until the final exponential.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .padic import unit_phase


def _factorize(k: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            e = 0
            while k % d == 0:
                k //= d
                e += 1
            out.append((d, e))
        d += 1
    if k > 1:
        out.append((k, 1))
    return out


def euler_phi(k: int) -> int:
    phi = 1
    for q, e in _factorize(k):
        phi *= (q - 1) * q ** (e - 1)
    return phi


def _multiplicative_order(g: int, n: int) -> int:
    order, x = 1, g % n
    while x != 1:
        x = x * g % n
        order += 1
    return order


def _primitive_root(q: int, e: int) -> int:
    # smallest generator of the cyclic group (Z/q^e Z)*, q odd
    modulus = q**e
    target = (q - 1) * q ** (e - 1)
    for g in range(2, modulus):
        if g % q == 0:
            continue
        if _multiplicative_order(g, modulus) == target:
            return g
    raise ValueError(f"no primitive root mod {modulus}")  # unreachable for odd q


@dataclass(frozen=True)
class UnitGroup:
    """(Z/kZ)* presented by independent generators with known orders."""

    modulus: int
    generators: tuple[int, ...]
    generator_orders: tuple[int, ...]
    totient: int
    discrete_logs: dict[int, tuple[int, ...]] = field(compare=False, repr=False)


def unit_group(k: int) -> UnitGroup:
    """Generators, orders, and a full discrete-log table for (Z/kZ)*."""
    if k < 1:
        raise ValueError("modulus must be positive")
    if k <= 2:
        residue = 0 if k == 1 else 1
        return UnitGroup(k, (), (), 1, {residue: ()})

    local: list[tuple[int, int, int]] = []  # (prime_power, generator mod k, order)
    for q, e in sorted(_factorize(k)):
        qe = q**e
        cofactor = k // qe
        inv = pow(cofactor, -1, qe)

        def lift(g: int) -> int:
            # CRT: congruent to g mod q^e and to 1 mod k/q^e
            return (1 + cofactor * inv * (g - 1)) % k

        if q == 2:
            if e == 2:
                local.append((qe, lift(3), 2))
            elif e >= 3:
                local.append((qe, lift(3), 2 ** (e - 2)))
                local.append((qe, lift(qe - 1), 2))
        else:
            local.append((qe, lift(_primitive_root(q, e)), (q - 1) * q ** (e - 1)))

    local.sort(key=lambda t: t[0])
    generators = tuple(g for _, g, _ in local)
    orders = tuple(d for _, _, d in local)
    phi = euler_phi(k)

    logs: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(d) for d in orders)):
        residue = 1
        for g, a in zip(generators, exps):
            residue = residue * pow(g, a, k) % k
        logs[residue] = exps
    if len(logs) != phi:
        raise ValueError(f"generator set for k={k} does not span the unit group")
    return UnitGroup(k, generators, orders, phi, logs)


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod k as an exponent vector over the standard generators.

    ``angles`` caches, for every unit residue r, the exact rational theta_r
    with chi(r) = exp(2 pi i theta_r).  Index 0 in the enumeration order is
    always the principal character.
    """

    modulus: int
    index: int
    exponents: tuple[int, ...]
    group: UnitGroup = field(compare=False, repr=False)
    angles: dict[int, Fraction] = field(compare=False, repr=False)

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)


def _angle_table(group: UnitGroup, exponents: tuple[int, ...]) -> dict[int, Fraction]:
    table = {}
    for residue, logs in group.discrete_logs.items():
        theta = Fraction(0)
        for a, e, d in zip(logs, exponents, group.generator_orders):
            theta += Fraction(a * e, d)
        table[residue] = theta % 1
    return table


def _index_of(exponents: tuple[int, ...], orders: tuple[int, ...]) -> int:
    idx = 0
    for e, d in zip(exponents, orders):
        idx = idx * d + e
    return idx


def enumerate_characters(k: int) -> list[DirichletCharacter]:
    """All phi(k) characters mod k in deterministic exponent order."""
    group = unit_group(k)
    chars = []
    for idx, exps in enumerate(itertools.product(*(range(d) for d in group.generator_orders))):
        chars.append(DirichletCharacter(k, idx, exps, group, _angle_table(group, exps)))
    return chars


def character_angle(chi: DirichletCharacter, m: int) -> Fraction | None:
    """Exact angle of chi(m), or None where chi vanishes."""
    if chi.modulus == 1:
        return Fraction(0)
    return chi.angles.get(m % chi.modulus)


def evaluate(chi: DirichletCharacter, m: int) -> complex:
    """chi(m); zero off the units, exp(2 pi i theta) on them."""
    theta = character_angle(chi, m)
    if theta is None:
        return complex(0.0, 0.0)
    return unit_phase(theta)


def conjugate_character(chi: DirichletCharacter) -> DirichletCharacter:
    """The inverse in the character group: every exponent negated mod its order."""
    orders = chi.group.generator_orders
    exps = tuple((-e) % d for e, d in zip(chi.exponents, orders))
    angles = {r: (-theta) % 1 for r, theta in chi.angles.items()}
    return DirichletCharacter(chi.modulus, _index_of(exps, orders), exps, chi.group, angles)


@dataclass(frozen=True)
class ExtendedCharacter:
    """chi carried to all integer powers of a fixed prime p.

    Values are chi(p)^n; negative n uses the inverse of the unimodular value
    chi(p).  When p divides the modulus the extension vanishes at every
    nonzero n (and is 1 at n = 0, as an empty product).
    """

    character: DirichletCharacter
    prime: int
    p_divides_k: bool


def extend_character(chi: DirichletCharacter, p: int) -> ExtendedCharacter:
    degenerate = chi.modulus > 1 and math.gcd(p, chi.modulus) > 1
    return ExtendedCharacter(chi, p, degenerate)


def extended_char(x: ExtendedCharacter, n: int) -> complex:
    """x(p^n) = chi(p)^n, computed on exact angles."""
    if n == 0:
        return complex(1.0, 0.0)
    if x.p_divides_k:
        return complex(0.0, 0.0)
    theta = character_angle(x.character, x.prime)
    return unit_phase((n * theta) % 1)
