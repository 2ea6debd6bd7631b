"""Self-check suite run by ``rindler-fermions verify``.

Each check reports its worst deviation against a fixed tolerance. The quick
level covers single-pair physics; the full level adds four-mode registers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import entanglement as ent
from . import fock, measurement, unruh
from .fock import PARTICLE, ANTIPARTICLE

R_GRID = np.linspace(0.05, math.pi / 4, 15)
RATIO_GRID = np.geomspace(1e-4, 1e2, 50)


@dataclass
class CheckResult:
    name: str
    tolerance: float
    max_deviation: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _result(name: str, tolerance: float, deviation: float) -> CheckResult:
    deviation = float(deviation)
    return CheckResult(name, tolerance, deviation, bool(deviation <= tolerance))


def check_car(size: int) -> CheckResult:
    register = fock.generic_register(size)
    a = [fock.annihilation(register, i) for i in range(size)]
    ad = [fock.creation(register, i) for i in range(size)]
    eye = np.eye(register.dim)
    worst = 0.0
    for i, j in itertools.product(range(size), repeat=2):
        delta = eye if i == j else 0 * eye
        worst = max(
            worst,
            np.max(np.abs(fock.anticommutator(a[i], ad[j]).matrix - delta)),
            np.max(np.abs(fock.anticommutator(a[i], a[j]).matrix)),
            np.max(np.abs(fock.anticommutator(ad[i], ad[j]).matrix)),
        )
    return _result(f"car_{size}_modes", 1e-12, worst)


def check_nilpotent_adjoint(size: int = 3) -> CheckResult:
    register = fock.generic_register(size)
    worst = 0.0
    for i in range(size):
        c = fock.creation(register, i)
        d = fock.annihilation(register, i)
        worst = max(
            worst,
            np.max(np.abs((c @ c).matrix)),
            np.max(np.abs((d @ d).matrix)),
            np.max(np.abs(d.matrix - c.matrix.conj().T)),
        )
    return _result("nilpotency_and_adjointness", 0.0, worst)


def check_apply_matches_matrix(size: int = 3) -> CheckResult:
    register = fock.generic_register(size)
    worst = 0.0
    for i in range(size):
        c = fock.creation(register, i)
        d = fock.annihilation(register, i)
        for n in range(register.dim):
            basis = fock.basis_state(register, fock.index_to_bits(n, size))
            worst = max(
                worst,
                np.max(np.abs(fock.apply_creation(basis, i).amplitudes - (c @ basis).amplitudes)),
                np.max(np.abs(fock.apply_annihilation(basis, i).amplitudes - (d @ basis).amplitudes)),
            )
    return _result("apply_matches_matrix", 0.0, worst)


def check_squeezing_identity() -> CheckResult:
    worst = max(
        abs(math.sin(unruh.squeezing_parameter(x, 1.0)) ** 2 - 1 / (math.exp(2 * math.pi * x) + 1))
        for x in RATIO_GRID
    )
    return _result("squeezing_parameter_identity", 1e-12, worst)


def check_squeezing_monotone() -> CheckResult:
    rs = np.array([unruh.squeezing_parameter(x, 1.0) for x in RATIO_GRID])
    # deviation counts grid steps where r fails to decrease
    return _result("squeezing_parameter_monotone", 0.0, np.sum(np.diff(rs) >= 0))


def check_bogoliubov_conjugation() -> CheckResult:
    register = unruh.particle_pair_register()
    a_i, a_j = fock.annihilation(register, 0), fock.annihilation(register, 1)
    worst = 0.0
    for r in (0.1, 0.3, math.pi / 4):
        u = unruh.squeezing_unitary(r, register, (0, 1))
        row1 = math.cos(r) * a_i - math.sin(r) * a_j.dag
        row2 = math.sin(r) * a_i + math.cos(r) * a_j.dag
        worst = max(
            worst,
            np.max(np.abs((u @ a_i @ u.dag).matrix - row1.matrix)),
            np.max(np.abs((u @ a_j.dag @ u.dag).matrix - row2.matrix)),
            np.max(np.abs((u.dag @ u).matrix - np.eye(register.dim))),
        )
    return _result("bogoliubov_conjugation", 1e-12, worst)


def check_vacuum_is_squeezed() -> CheckResult:
    register = unruh.particle_pair_register()
    worst = 0.0
    for r in R_GRID:
        u = unruh.squeezing_unitary(r, register, (0, 1))
        squeezed = u @ fock.vacuum(register)
        worst = max(worst, np.max(np.abs(squeezed.amplitudes - unruh.minkowski_particle_vacuum(r).amplitudes)))
    return _result("vacuum_is_squeezed_state", 1e-12, worst)


def check_fermi_dirac() -> CheckResult:
    worst = 0.0
    a = 1.0
    for x in np.geomspace(1e-3, 5, 20):
        vac = unruh.minkowski_particle_vacuum(unruh.squeezing_parameter(x * a, a))
        expected = 1 / (math.exp(x * a / unruh.unruh_temperature(a)) + 1)
        worst = max(worst, abs(unruh.rindler_number_expectation(vac, 0) - expected))
    return _result("fermi_dirac_occupation", 1e-12, worst)


def check_oracle_equivalence() -> CheckResult:
    worst = 0.0
    for r in R_GRID:
        dev_p, _ = measurement.phase_aligned_deviation(
            measurement.rindler_oracle_particle(r), measurement.post_state_particle(r))
        dev_a, _ = measurement.phase_aligned_deviation(
            measurement.rindler_oracle_antiparticle(r), measurement.post_state_antiparticle(r))
        worst = max(worst, dev_p, dev_a)
    return _result("oracle_matches_closed_form", 1e-10, worst)


def check_entropy_identities() -> CheckResult:
    worst = 0.0
    for r in np.linspace(0.01, math.pi / 4, 20):
        state = measurement.post_state_particle(r)
        worst = max(
            worst,
            abs(ent.closed_form_entropy(r) - ent.entanglement_entropy(state, [1])),
            abs(ent.closed_form_entropy(r) - ent.binary_entropy(math.sin(r) ** 2)),
            abs(ent.entanglement_entropy(state, [0]) - ent.entanglement_entropy(state, [1])),
        )
    return _result("entropy_closed_form_vs_eigenvalues", 1e-10, worst)


def check_entropy_monotone() -> CheckResult:
    rs = np.linspace(math.pi / 4 / 1000, math.pi / 4, 1000)
    s = ent.entropy_curve(rs)
    violations = np.sum(np.diff(s) <= 0) + np.sum(s <= 0)
    return _result("entropy_monotone_positive", 0.0, violations)


def _four_mode_register():
    return unruh.particle_pair_register("k1").concat(unruh.antiparticle_pair_register("k2"))


def check_commutation() -> CheckResult:
    register = _four_mode_register()
    p = measurement.projector_particle(0.2, register, (0, 1))
    a = measurement.projector_antiparticle(0.5, register, (2, 3))
    return _result("measurement_commutation", 1e-12, np.max(np.abs((p @ a - a @ p).matrix)))


def check_multi_mode() -> CheckResult:
    outcomes = [measurement.MeasurementOutcome("k1", PARTICLE),
                measurement.MeasurementOutcome("k2", ANTIPARTICLE)]
    rs = [0.2, 0.5]
    product = measurement.multi_mode_post_state(outcomes, rs)
    swapped = measurement.multi_mode_post_state(outcomes[::-1], rs[::-1])
    worst = measurement.phase_aligned_deviation(product, fock.reorder(swapped, product.register))[0]
    for order in ([0, 1], [1, 0]):
        oracle = measurement.rindler_oracle(outcomes, rs, order=order)
        worst = max(worst, measurement.phase_aligned_deviation(oracle, product)[0])
    return _result("multi_mode_product_order_independent", 1e-10, worst)


QUICK_CHECKS = (
    lambda: check_car(1),
    lambda: check_car(2),
    lambda: check_car(3),
    check_nilpotent_adjoint,
    check_apply_matches_matrix,
    check_squeezing_identity,
    check_squeezing_monotone,
    check_bogoliubov_conjugation,
    check_vacuum_is_squeezed,
    check_fermi_dirac,
    check_oracle_equivalence,
    check_entropy_identities,
    check_entropy_monotone,
)

FULL_CHECKS = QUICK_CHECKS + (
    lambda: check_car(4),
    check_commutation,
    check_multi_mode,
)


def run_checks(level: str = "quick") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    checks = QUICK_CHECKS if level == "quick" else FULL_CHECKS
    return [check() for check in checks]


def report(results: list[CheckResult], level: str) -> dict:
    return {
        "level": level,
        "passed": all(r.passed for r in results),
        "checks": [r.as_dict() for r in results],
    }
