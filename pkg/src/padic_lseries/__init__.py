"""Character-twisted pseudodifferential operators on the p-adic line.

The package computes local gamma factors by exact coset quadrature, applies
twisted Vladimirov kernels to wavelet states, and assembles Euler factors of
Dirichlet and modular L-functions as operator traces, each with a certified
remainder bound.
"""

from __future__ import annotations

from .characters import (
    DirichletCharacter,
    ExtendedCharacter,
    UnitGroup,
    character_angle,
    conjugate_character,
    enumerate_characters,
    euler_phi,
    evaluate,
    extend_character,
    extended_char,
    unit_group,
)
from .errors import (
    ConvergenceError,
    CosetCapError,
    DegenerateTwistError,
    LocalityError,
    PadicLseriesError,
    PoleError,
    PrimeMismatchError,
)
from .lseries import (
    DIRICHLET_LOCAL,
    HECKE_CONJUGATED,
    MODULAR_LOCAL,
    ZETA_LOCAL,
    SeriesResult,
    TraceRequest,
    dirichlet_series,
    euler_product,
    hecke_conjugated_trace,
    local_factor_closed,
    local_trace,
    primes_up_to,
)
from .modular import (
    CoefficientProvider,
    LocalFactorization,
    binomial_side,
    coefficient,
    delta_expansion,
    delta_provider,
    factorize_local,
    symmetric_power_sum,
    table_provider,
    verify_recursion,
)
from .padic import (
    PadicBall,
    PadicNumber,
    additive_character,
    arithmetic,
    circle_measure,
    circle_representatives,
    fractional_part,
    make_padic,
    padic_from_fraction,
    padic_zero,
    rational_fractional_part,
    unit_phase,
)
from .quadrature import (
    CHARACTER_TWISTED,
    MODULAR_A1,
    MODULAR_A2,
    STANDARD,
    CircleIntegrand,
    GammaSpec,
    QuadratureResult,
    gamma_by_quadrature,
    gamma_closed_form,
    gamma_regions,
    integrate_circle,
)
from .selftest import run_selftest
from .wavelets import (
    LOWER,
    PLAIN,
    RAISE,
    OperatorSpec,
    WaveletIndex,
    apply_kernel,
    eigenvalue,
    indicator,
    inner_product,
    ket,
    raise_lower,
    support,
    wavelet_eval,
    wavelet_index,
)

__version__ = "0.1.0"

__all__ = [
    "CHARACTER_TWISTED",
    "CircleIntegrand",
    "CoefficientProvider",
    "ConvergenceError",
    "CosetCapError",
    "DIRICHLET_LOCAL",
    "DegenerateTwistError",
    "DirichletCharacter",
    "ExtendedCharacter",
    "GammaSpec",
    "HECKE_CONJUGATED",
    "LOWER",
    "LocalFactorization",
    "LocalityError",
    "MODULAR_A1",
    "MODULAR_A2",
    "MODULAR_LOCAL",
    "OperatorSpec",
    "PLAIN",
    "PadicBall",
    "PadicLseriesError",
    "PadicNumber",
    "PoleError",
    "PrimeMismatchError",
    "QuadratureResult",
    "RAISE",
    "STANDARD",
    "SeriesResult",
    "TraceRequest",
    "UnitGroup",
    "WaveletIndex",
    "ZETA_LOCAL",
    "additive_character",
    "apply_kernel",
    "arithmetic",
    "binomial_side",
    "character_angle",
    "circle_measure",
    "circle_representatives",
    "coefficient",
    "conjugate_character",
    "delta_expansion",
    "delta_provider",
    "dirichlet_series",
    "eigenvalue",
    "enumerate_characters",
    "euler_phi",
    "euler_product",
    "evaluate",
    "extend_character",
    "extended_char",
    "factorize_local",
    "fractional_part",
    "gamma_by_quadrature",
    "gamma_closed_form",
    "gamma_regions",
    "hecke_conjugated_trace",
    "indicator",
    "inner_product",
    "integrate_circle",
    "ket",
    "local_factor_closed",
    "local_trace",
    "make_padic",
    "padic_from_fraction",
    "padic_zero",
    "primes_up_to",
    "raise_lower",
    "rational_fractional_part",
    "run_selftest",
    "support",
    "symmetric_power_sum",
    "table_provider",
    "unit_group",
    "unit_phase",
    "verify_recursion",
    "wavelet_eval",
    "wavelet_index",
]
