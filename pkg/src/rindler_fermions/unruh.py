"""Dispersion, squeezing parameter, Unruh temperature and the Rindler-side vacua.

Natural units throughout (c = hbar = k_B = 1). The Bogoliubov phase is fixed
to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .fock import (
    ANTIPARTICLE,
    PARTICLE,
    RINDLER_I,
    RINDLER_II,
    ModeLabel,
    ModeRegister,
    OperatorMatrix,
    StateVector,
    annihilation,
    creation,
)

R_MAX = math.pi / 4


class DomainError(ValueError):
    """Physical parameter outside the range where a formula applies."""


def mode_frequency(k: float, k_perp: float = 0.0, m: float = 0.0) -> float:
    """Relativistic dispersion ``sqrt(k^2 + k_perp^2 + m^2)``.

    Returns 0 for the all-zero mode; callers that need a finite ratio must
    reject that case themselves.
    """
    if m < 0:
        raise DomainError(f"mass must be non-negative, got {m}")
    if k_perp < 0:
        raise DomainError(f"transverse momentum magnitude must be non-negative, got {k_perp}")
    return math.sqrt(k * k + k_perp * k_perp + m * m)


def squeezing_parameter(omega: float, a: float) -> float:
    """Bogoliubov angle ``r`` for a mode of frequency ``omega`` at acceleration ``a``.

    Defined by ``cos r = exp(pi w / 2a) / sqrt(2 cosh(pi w / a))``. The
    equivalent form ``tan r = exp(-pi w / a)`` is used because it cannot
    overflow; far in the tail ``r`` underflows gracefully towards 0.
    """
    if not a > 0:
        raise DomainError(f"acceleration must be positive, got {a}")
    if omega < 0:
        raise DomainError(f"frequency must be non-negative, got {omega}")
    if omega == 0:
        return R_MAX
    return math.atan(math.exp(-math.pi * omega / a))


def unruh_temperature(a: float) -> float:
    if not a > 0:
        raise DomainError(f"acceleration must be positive, got {a}")
    return a / (2 * math.pi)


def fermi_dirac_occupation(omega: float, a: float) -> float:
    """Mean Rindler particle number ``1 / (exp(2 pi w / a) + 1)`` in the Minkowski vacuum."""
    if not a > 0:
        raise DomainError(f"acceleration must be positive, got {a}")
    if omega < 0:
        raise DomainError(f"frequency must be non-negative, got {omega}")
    x = 2 * math.pi * omega / a
    # exp(-x) / (1 + exp(-x)) never overflows for x >= 0
    e = math.exp(-x)
    return e / (1.0 + e)


@dataclass(frozen=True)
class UnruhParams:
    """Physical inputs for one detected mode and the derived ``omega`` and ``r``.

    ``omega == 0`` (massless, zero momentum) is the infinite-acceleration
    limit and is only accepted with ``limit=True``.
    """

    a: float
    k: float = 0.0
    k_perp: float = 0.0
    m: float = 0.0
    limit: bool = False

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"acceleration must be positive, got {self.a}")
        omega = mode_frequency(self.k, self.k_perp, self.m)
        if omega == 0 and not self.limit:
            raise DomainError("zero-frequency mode requires limit=True")

    @property
    def omega(self) -> float:
        return mode_frequency(self.k, self.k_perp, self.m)

    @property
    def ratio(self) -> float:
        return self.omega / self.a

    @property
    def r(self) -> float:
        return squeezing_parameter(self.omega, self.a)

    @property
    def temperature(self) -> float:
        return unruh_temperature(self.a)


def _check_r(r: float, *, allow_zero: bool = True) -> None:
    lo_ok = r >= 0 if allow_zero else r > 0
    if not (lo_ok and r <= R_MAX):
        bound = "[0, pi/4]" if allow_zero else "(0, pi/4]"
        raise DomainError(f"squeezing parameter must lie in {bound}, got {r}")


def bogoliubov_matrix(r: float, sector: str = PARTICLE) -> np.ndarray:
    """2x2 real rotation relating Minkowski to Rindler mode operators.

    The particle sector maps ``(a_I, b_II^dag)`` onto ``(c_k, d_{-k}^dag)``;
    the antiparticle sector is its transpose.
    """
    _check_r(r)
    c, s = math.cos(r), math.sin(r)
    if sector == PARTICLE:
        return np.array([[c, -s], [s, c]])
    if sector == ANTIPARTICLE:
        return np.array([[c, s], [-s, c]])
    raise ValueError(f"unknown sector {sector!r}")


def particle_pair_register(momentum: str = "k") -> ModeRegister:
    """Rindler-side pair for the particle sector: region-I particle k, region-II antiparticle -k."""
    return ModeRegister((
        ModeLabel(momentum, PARTICLE, RINDLER_I),
        ModeLabel(_negate(momentum), ANTIPARTICLE, RINDLER_II),
    ))


def antiparticle_pair_register(momentum: str = "k") -> ModeRegister:
    """Rindler-side pair for the antiparticle sector: region-I antiparticle k, region-II particle -k."""
    return ModeRegister((
        ModeLabel(momentum, ANTIPARTICLE, RINDLER_I),
        ModeLabel(_negate(momentum), PARTICLE, RINDLER_II),
    ))


def _negate(momentum: str) -> str:
    momentum = str(momentum)
    return momentum[1:] if momentum.startswith("-") else "-" + momentum


def pair_creation(register: ModeRegister, pair: tuple[int, int]) -> OperatorMatrix:
    """``a^dag_i a^dag_j`` for a pair of distinct modes."""
    i, j = pair
    register.check_index(i)
    register.check_index(j)
    if i == j:
        raise ValueError(f"pair indices must differ, got ({i}, {j})")
    return creation(register, i) @ creation(register, j)


def squeezing_unitary(r: float, register: ModeRegister, pair: tuple[int, int]) -> OperatorMatrix:
    """``exp(r (a^dag_i a^dag_j - a_j a_i))`` on the full Fock space.

    Conjugation reproduces the particle-sector Bogoliubov rotation:
    ``U a_i U^dag = cos r a_i - sin r a^dag_j``. Negative ``r`` gives the
    antiparticle-sector squeezer.
    """
    _check_r(abs(r))
    gen = pair_creation(register, pair)
    gen = gen - gen.dag
    return OperatorMatrix(register, expm(r * gen.matrix))


def minkowski_particle_vacuum(r: float, momentum: str = "k") -> StateVector:
    """``cos r |00> + sin r |11>`` on the particle-sector Rindler pair.

    The pair-creation exponential truncates after the linear term because
    ``(a^dag b^dag)^2 = 0``.
    """
    _check_r(r)
    return StateVector.from_bits(
        particle_pair_register(momentum), {"00": math.cos(r), "11": math.sin(r)}
    )


def minkowski_antiparticle_vacuum(r: float, momentum: str = "k") -> StateVector:
    """``cos r |00> - sin r |11>`` on the antiparticle-sector Rindler pair."""
    _check_r(r)
    return StateVector.from_bits(
        antiparticle_pair_register(momentum), {"00": math.cos(r), "11": -math.sin(r)}
    )


def rindler_number_expectation(state: StateVector, mode_index: int) -> float:
    """``<N_i>`` computed on the Fock space (used to cross-check the thermal occupation)."""
    n_op = creation(state.register, mode_index) @ annihilation(state.register, mode_index)
    return float(np.vdot(state.amplitudes, n_op.matrix @ state.amplitudes).real)
