"""Density matrices, fermionic partial traces and base-2 entanglement entropies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .fock import ModeRegister, ShapeError, StateVector, permutation_operator
from .unruh import DomainError, _check_r, mode_frequency, squeezing_parameter

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
CLAMP_TOL = 1e-12
POSITIVITY_TOL = 1e-10
STATE_NORM_TOL = 1e-8

# Below this r the printed closed form loses digits to cancellation between
# log2(csc^2 r) and cos^2 r log2(tan^2 r).
_SMALL_R = 1e-4

ASYMPTOTIC_COEFF = math.pi**2 / (2 * math.log(2))


class NormalizationError(ValueError):
    pass


class PositivityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on a register."""

    register: ModeRegister
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        dim = self.register.dim
        if mat.shape != (dim, dim):
            raise ShapeError(f"expected a {dim}x{dim} matrix, got shape {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(mat) - 1.0) > TRACE_TOL:
            raise NormalizationError(f"density matrix trace {np.trace(mat).real} != 1")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order, tiny negative round-off clamped to zero."""
        evals = np.linalg.eigvalsh(self.matrix)
        if evals[0] < -POSITIVITY_TOL:
            raise PositivityError(f"negative eigenvalue {evals[0]:.3e}")
        return np.where(evals < CLAMP_TOL, np.maximum(evals, 0.0), evals)


def density_matrix(state: StateVector) -> DensityMatrix:
    if abs(state.norm - 1.0) > STATE_NORM_TOL:
        raise NormalizationError(f"state norm {state.norm} is not 1")
    psi = state.amplitudes
    return DensityMatrix(state.register, np.outer(psi, psi.conj()))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state of the modes in ``keep``.

    The register is first reordered (with fermionic signs) so the kept modes
    lead, then the trailing modes are traced out. Kept modes retain their
    original relative order.

    Complementary reductions of a pure state share their spectrum only when
    the state has definite fermion parity; parity-mixed superpositions are
    unphysical and the reordering sign can then entangle them.
    """
    register = rho.register
    keep = sorted(set(keep))
    for i in keep:
        register.check_index(i)
    if not keep or len(keep) == register.size:
        raise DomainError("keep must be a nonempty proper subset of the register")
    traced = [i for i in range(register.size) if i not in keep]
    order = ModeRegister(tuple(register[i] for i in keep + traced))
    perm = permutation_operator(register, order)
    mat = perm @ rho.matrix @ perm.T
    dk, dt = 1 << len(keep), 1 << len(traced)
    reduced = np.einsum("ajbj->ab", mat.reshape(dk, dt, dk, dt))
    return DensityMatrix(ModeRegister(order.modes[: len(keep)]), reduced)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """``-sum(l log2 l)`` over eigenvalues, with ``0 log 0 = 0``."""
    evals = rho.eigenvalues()
    evals = evals[evals > 0]
    return float(max(-np.sum(evals * np.log2(evals)), 0.0))


def entanglement_entropy(state: StateVector, keep: Iterable[int]) -> float:
    return von_neumann_entropy(partial_trace(density_matrix(state), keep))


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits of a two-outcome distribution ``(p, 1 - p)``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability outside [0, 1]: {p}")
    total = 0.0
    if p > 0:
        total -= p * math.log2(p)
    if p < 1:
        total -= (1 - p) * math.log1p(-p) / math.log(2)
    return total


def closed_form_entropy(r: float) -> float:
    """Entanglement entropy of the post-measurement pair as a function of ``r``.

    Evaluates ``log2(csc^2 r) + cos^2 r log2(tan^2 r)``; for ``r < 1e-4`` the
    algebraically identical binary-entropy form of ``sin^2 r`` is used instead
    to avoid cancellation.
    """
    if r == 0:
        raise DomainError("r = 0 has no detection outcome; take the limit r -> 0+")
    _check_r(r, allow_zero=False)
    if r < _SMALL_R:
        return binary_entropy(math.sin(r) ** 2)
    return math.log2(1 / math.sin(r) ** 2) + math.cos(r) ** 2 * math.log2(math.tan(r) ** 2)


def exact_entropy(omega: float, a: float) -> float:
    """Entropy of the pair produced by detecting a mode of frequency ``omega``."""
    r = squeezing_parameter(omega, a)
    if r == 0:
        return 0.0
    return closed_form_entropy(r)


def asymptotic_entropy(omega: float, a: float) -> float:
    """Small-``omega/a`` truncation ``1 - pi^2 omega^2 / (2 ln2 a^2)``; remainder is fourth order."""
    if not a > 0:
        raise DomainError(f"acceleration must be positive, got {a}")
    if omega < 0:
        raise DomainError(f"frequency must be non-negative, got {omega}")
    return 1.0 - ASYMPTOTIC_COEFF * (omega / a) ** 2


def asymptotic_post_state_coefficients(ratio: float) -> tuple[float, float]:
    """Second-order expansions of ``(sin r, cos r)`` in ``x = pi omega / a``.

    ``sin r ~ (1 - x/2 - x^2/8) / sqrt2`` and ``cos r ~ (1 + x/2 - x^2/8) / sqrt2``.
    """
    if ratio < 0:
        raise DomainError(f"ratio must be non-negative, got {ratio}")
    x = math.pi * ratio
    root2 = math.sqrt(2)
    return (1 - x / 2 - x * x / 8) / root2, (1 + x / 2 - x * x / 8) / root2


def bell_fidelity(state: StateVector) -> float:
    """``|<Phi+|psi>|^2`` with ``Phi+ = (|00> + |11>)/sqrt2``."""
    if state.register.size != 2:
        raise ShapeError(f"Bell fidelity needs a 2-mode state, got {state.register.size} modes")
    overlap = (state.amplitude("00") + state.amplitude("11")) / math.sqrt(2)
    return abs(overlap) ** 2


def entropy_curve(rs: Iterable[float]) -> np.ndarray:
    """Closed-form entropy sampled at each ``r``; the data behind the entropy-vs-r figure."""
    return np.array([closed_form_entropy(r) for r in rs])


def find_mode_for_entropy(target: float, a: float, m: float = 0.0,
                          tol: float = 1e-12, max_iter: int = 200) -> float:
    """Bisect for a frequency whose detection yields entropy above ``target``.

    Frequencies range over ``omega >= m`` (the rest-frame minimum). Returns
    an ``omega`` with ``exact_entropy(omega, a) > target``. Raises
    :class:`DomainError` when even the lowest available mode falls short,
    which is the massive case once ``target`` exceeds ``S(m)``.
    """
    if not 0 <= target < 1:
        raise DomainError(f"target entropy must lie in [0, 1), got {target}")
    lo = mode_frequency(0.0, 0.0, m)
    if exact_entropy(lo, a) <= target:
        raise DomainError(
            f"no mode reaches S > {target}: supremum is S(omega=m) = {exact_entropy(lo, a):.9g}"
        )
    hi = max(lo, a)
    while exact_entropy(hi, a) > target:
        hi *= 2
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if exact_entropy(mid, a) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, hi):
            break
    return lo

