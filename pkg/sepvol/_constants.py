import math
from typing import NamedTuple


class _TOLERANCES_NT(NamedTuple):
    TRACE: float = 1e-12
    PSD: float = 1e-10
    UNIT_NORM: float = 1e-12
    PPT: float = 1e-10
    EIG_RESIDUAL: float = 1e-9
    RELATIVE: float = 1e-12


class _CONSTANTS_NT(NamedTuple):
    # vrad(Σ) against vrad(𝒟)
    c: float = 1 / math.sqrt(6)
    C: float = 4.4
    # Löwner-ellipsoid refinement
    c_prime: float = 0.3
    C_prime: float = 4.4
    # tensor powers of Euclidean balls
    C0: float = 3.0
    C1: float = 1.673
    # PPT volume fraction
    c0: float = 1 / 8
    c0_asymptotic: float = math.exp(-0.25) / 4
    # asymptotic values, reported but never asserted
    c_prime_asymptotic: float = math.exp(0.75) / math.sqrt(2 * math.pi)
    C_asymptotic: float = math.sqrt(2) * math.exp(0.25)
    # Σ ⊃ (1/d_N) Δ with d_N ≤ DN_COEF · 6^{N/2}
    DN_COEF: float = 2 / 3


TOLERANCES = _TOLERANCES_NT()
CONSTANTS = _CONSTANTS_NT()
