"""Accelerated projective measurements and the resulting inertial-frame states.

Writing ``C = x^dag y^dag`` for the pair creator of a sector (``x`` the
region-I mode at k, ``y`` the region-II mode at -k), detecting a Rindler
particle acts on the particle-sector pair with

    P = sec r  C  exp(-tan r C)

and detecting an antiparticle acts on the antiparticle-sector pair with

    A = -sec r  C  exp(+tan r C).

Neither is an orthogonal projector: each maps its Minkowski vacuum onto a unit-norm
Rindler pair state. Re-expressed in Minkowski occupations the outcomes are
``sin r |00> + cos r |11>`` and ``sin r |00> - cos r |11>``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .fock import (
    ANTIPARTICLE,
    MINKOWSKI,
    PARTICLE,
    LabelCollisionError,
    ModeLabel,
    ModeRegister,
    OperatorMatrix,
    StateVector,
    identity,
    tensor_product,
)
from .unruh import (
    DomainError,
    _check_r,
    _negate,
    antiparticle_pair_register,
    minkowski_antiparticle_vacuum,
    minkowski_particle_vacuum,
    pair_creation,
    particle_pair_register,
    squeezing_unitary,
)


@dataclass(frozen=True)
class MeasurementOutcome:
    """Rob detects one quantum of ``species`` in the mode with momentum tag ``momentum``."""

    momentum: str = "k"
    species: str = PARTICLE

    def __post_init__(self):
        object.__setattr__(self, "momentum", str(self.momentum))
        if self.species not in (PARTICLE, ANTIPARTICLE):
            raise ValueError(f"unknown species {self.species!r}")


def _check_outcome_r(r: float) -> None:
    if r == 0:
        raise DomainError("r = 0: the detected quantum has zero probability in the inertial limit")
    _check_r(r, allow_zero=False)


def projector_particle(r: float, register: ModeRegister | None = None,
                       pair: tuple[int, int] = (0, 1)) -> OperatorMatrix:
    """Particle-detection operator ``P`` on ``pair`` (region-I particle, region-II antiparticle)."""
    _check_outcome_r(r)
    if register is None:
        register = particle_pair_register()
    create_pair = pair_creation(register, pair)
    damping = expm(-math.tan(r) * create_pair.matrix)
    return OperatorMatrix(register, create_pair.matrix @ damping / math.cos(r))


def projector_antiparticle(r: float, register: ModeRegister | None = None,
                           pair: tuple[int, int] = (0, 1)) -> OperatorMatrix:
    """Antiparticle-detection operator ``A`` on ``pair`` (region-I antiparticle, region-II particle)."""
    _check_outcome_r(r)
    if register is None:
        register = antiparticle_pair_register()
    create_pair = pair_creation(register, pair)
    growth = expm(math.tan(r) * create_pair.matrix)
    return OperatorMatrix(register, -create_pair.matrix @ growth / math.cos(r))


def minkowski_pair_register(momentum: str = "k", species: str = PARTICLE) -> ModeRegister:
    """Inertial pair produced by a detection: the detected species at ``k``, its partner at ``-k``."""
    partner = ANTIPARTICLE if species == PARTICLE else PARTICLE
    return ModeRegister((
        ModeLabel(momentum, species, MINKOWSKI),
        ModeLabel(_negate(momentum), partner, MINKOWSKI),
    ))


def post_state_particle(r: float, momentum: str = "k") -> StateVector:
    """Inertial state after a particle detection: ``sin r |00> + cos r |11>``."""
    _check_outcome_r(r)
    return StateVector.from_bits(
        minkowski_pair_register(momentum, PARTICLE), {"00": math.sin(r), "11": math.cos(r)}
    )


def post_state_antiparticle(r: float, momentum: str = "k") -> StateVector:
    """Inertial state after an antiparticle detection: ``sin r |00> - cos r |11>``."""
    _check_outcome_r(r)
    return StateVector.from_bits(
        minkowski_pair_register(momentum, ANTIPARTICLE), {"00": math.sin(r), "11": -math.cos(r)}
    )


def post_state(outcome: MeasurementOutcome, r: float) -> StateVector:
    if outcome.species == PARTICLE:
        return post_state_particle(r, outcome.momentum)
    return post_state_antiparticle(r, outcome.momentum)


def _check_distinct(outcomes: Sequence[MeasurementOutcome], rs: Sequence[float]) -> None:
    if len(outcomes) != len(rs):
        raise ValueError(f"{len(outcomes)} outcomes but {len(rs)} squeezing parameters")
    if not outcomes:
        raise ValueError("at least one outcome is required")
    tags = [o.momentum for o in outcomes]
    if len(set(tags)) != len(tags):
        raise LabelCollisionError(f"duplicate momentum tags in outcomes: {tags}")


def multi_mode_post_state(outcomes: Sequence[MeasurementOutcome],
                          rs: Sequence[float]) -> StateVector:
    """Product of the single-mode post-measurement states, pairs in outcome order."""
    _check_distinct(outcomes, rs)
    state = post_state(outcomes[0], rs[0])
    for outcome, r in zip(outcomes[1:], rs[1:]):
        state = tensor_product(state, post_state(outcome, r))
    return state


def _to_minkowski(state: StateVector) -> StateVector:
    labels = tuple(ModeLabel(m.momentum, m.species, MINKOWSKI) for m in state.register)
    return StateVector(ModeRegister(labels), state.amplitudes)


def rindler_oracle(outcomes: Sequence[MeasurementOutcome], rs: Sequence[float],
                   order: Sequence[int] | None = None) -> StateVector:
    """Brute-force post-measurement state built entirely on the Rindler side.

    Starts from the product of Minkowski vacua written in Rindler occupations,
    applies the detection operators in ``order`` (default: outcome order), and
    undoes the Bogoliubov squeezing of every pair to read off Minkowski
    occupations. No closed-form post-measurement amplitudes are used.
    """
    _check_distinct(outcomes, rs)
    for r in rs:
        _check_outcome_r(r)
    vacua = [
        minkowski_particle_vacuum(r, o.momentum) if o.species == PARTICLE
        else minkowski_antiparticle_vacuum(r, o.momentum)
        for o, r in zip(outcomes, rs)
    ]
    state = vacua[0]
    for vac in vacua[1:]:
        state = tensor_product(state, vac)
    register = state.register

    detections = []
    squeeze = identity(register)
    for n, (outcome, r) in enumerate(zip(outcomes, rs)):
        pair = (2 * n, 2 * n + 1)
        if outcome.species == PARTICLE:
            detections.append(projector_particle(r, register, pair))
            squeeze = squeeze @ squeezing_unitary(r, register, pair)
        else:
            detections.append(projector_antiparticle(r, register, pair))
            squeeze = squeeze @ squeezing_unitary(-r, register, pair)

    for n in (range(len(outcomes)) if order is None else order):
        state = detections[n] @ state
    return _to_minkowski(squeeze.dag @ state)


def rindler_oracle_particle(r: float) -> StateVector:
    """Single particle detection via :func:`rindler_oracle`."""
    return rindler_oracle([MeasurementOutcome("k", PARTICLE)], [r])


def rindler_oracle_antiparticle(r: float) -> StateVector:
    return rindler_oracle([MeasurementOutcome("k", ANTIPARTICLE)], [r])


def phase_aligned_deviation(x: StateVector, y: StateVector) -> tuple[float, complex]:
    """Max componentwise deviation between ``x`` and ``y`` after removing a global phase.

    Returns ``(deviation, phase)`` with ``phase`` the unit complex number that
    best maps ``y`` onto ``x``. Both states must share a register.
    """
    if x.register != y.register:
        raise ValueError("states live on different registers")
    overlap = np.vdot(y.amplitudes, x.amplitudes)
    phase = cmath.exp(1j * cmath.phase(overlap)) if abs(overlap) > 0 else 1.0 + 0j
    deviation = float(np.max(np.abs(x.amplitudes - phase * y.amplitudes)))
    return deviation, phase
