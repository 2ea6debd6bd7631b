"""Exit criteria for the package, one test per criterion with its tolerance and time budget."""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from rindler_fermions import cli, fock, unruh
from rindler_fermions.entanglement import (
    asymptotic_entropy,
    closed_form_entropy,
    entanglement_entropy,
    entropy_curve,
    exact_entropy,
    find_mode_for_entropy,
)
from rindler_fermions.measurement import (
    MeasurementOutcome,
    multi_mode_post_state,
    phase_aligned_deviation,
    post_state_antiparticle,
    post_state_particle,
    projector_antiparticle,
    projector_particle,
    rindler_oracle_particle,
)

PI_4 = math.pi / 4
BELL = np.array([1, 0, 0, 1]) / math.sqrt(2)


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


@pytest.mark.acceptance(1, title="Bell endpoint: S(pi/4) = 1, post-state is (|00>+|11>)/sqrt2")
def test_bell_endpoint():
    with budget(1):
        assert abs(closed_form_entropy(PI_4) - 1) <= 1e-12
        assert np.max(np.abs(post_state_particle(PI_4).amplitudes - BELL)) <= 1e-12


@pytest.mark.acceptance(2, title="Entropy curve on 1000 points strictly increasing and positive")
def test_entropy_curve_shape():
    with budget(5):
        rs = np.linspace(PI_4 / 1000, PI_4, 1000)
        s = entropy_curve(rs)
        assert np.all(np.diff(s) > 0)
        assert np.all(s > 0)


@pytest.mark.acceptance(3, title="Rindler-side oracle equals closed-form post-state up to phase")
def test_oracle_equivalence():
    with budget(5):
        grid = np.linspace(0.05, PI_4, 12)
        for r in grid:
            dev, _ = phase_aligned_deviation(rindler_oracle_particle(r), post_state_particle(r))
            assert dev <= 1e-10, f"r={r}: deviation {dev}"


@pytest.mark.acceptance(4, title="CAR identities on 3-mode registers")
def test_car_suite():
    with budget(5):
        register = fock.generic_register(3)
        a = [fock.annihilation(register, i).matrix for i in range(3)]
        ad = [fock.creation(register, i).matrix for i in range(3)]
        eye = np.eye(8)
        worst = 0.0
        for i in range(3):
            for j in range(3):
                worst = max(
                    worst,
                    np.max(np.abs(a[i] @ ad[j] + ad[j] @ a[i] - (i == j) * eye)),
                    np.max(np.abs(a[i] @ a[j] + a[j] @ a[i])),
                    np.max(np.abs(ad[i] @ ad[j] + ad[j] @ ad[i])),
                )
        assert worst <= 1e-12


@pytest.mark.acceptance(5, title="Rindler number in Minkowski vacuum is Fermi-Dirac at T = a/2pi")
def test_fermi_dirac_consistency():
    with budget(2):
        a = 1.0
        temperature = a / (2 * math.pi)
        for ratio in np.geomspace(1e-3, 5, 20):
            omega = ratio * a
            vac = unruh.minkowski_particle_vacuum(unruh.squeezing_parameter(omega, a))
            n = unruh.rindler_number_expectation(vac, 0)
            assert abs(n - 1 / (math.exp(omega / temperature) + 1)) <= 1e-12


@pytest.mark.acceptance(6, title="Asymptotic entropy error scales as fourth order")
def test_asymptotic_expansion_order():
    with budget(1):
        def err(x):
            return abs(exact_entropy(x, 1.0) - asymptotic_entropy(x, 1.0))

        assert 14 <= err(0.02) / err(0.01) <= 18


@pytest.mark.acceptance(7, title="Disjoint P and A commute; multi-mode state is order independent")
def test_commuting_measurements():
    with budget(10):
        register = unruh.particle_pair_register("k1").concat(unruh.antiparticle_pair_register("k2"))
        p = projector_particle(0.2, register, (0, 1))
        a = projector_antiparticle(0.5, register, (2, 3))
        assert np.max(np.abs((p @ a - a @ p).matrix)) <= 1e-12

        outcomes = [MeasurementOutcome("k1", "particle"), MeasurementOutcome("k2", "antiparticle")]
        forward = multi_mode_post_state(outcomes, [0.2, 0.5])
        backward = multi_mode_post_state(outcomes[::-1], [0.5, 0.2])
        dev, _ = phase_aligned_deviation(forward, fock.reorder(backward, forward.register))
        assert dev <= 1e-12


@pytest.mark.acceptance(8, title="Antiparticle branch: (|00>-|11>)/sqrt2 limit, same entropy as particle")
def test_antiparticle_branch():
    with budget(2):
        expected = np.array([1, 0, 0, -1]) / math.sqrt(2)
        assert np.max(np.abs(post_state_antiparticle(PI_4).amplitudes - expected)) <= 1e-12
        for r in np.linspace(PI_4 / 100, PI_4, 100):
            s_a = entanglement_entropy(post_state_antiparticle(r), [1])
            s_p = entanglement_entropy(post_state_particle(r), [1])
            assert abs(s_a - s_p) <= 1e-12


@pytest.mark.acceptance(9, title="Massless modes reach S > 0.999; massive supremum is S(omega = m) < 1")
def test_massless_versus_massive():
    with budget(2):
        omega = find_mode_for_entropy(0.999, a=1.0, m=0.0)
        assert exact_entropy(omega, 1.0) > 0.999

        m = 1.0
        ceiling = exact_entropy(m, 1.0)
        omegas = np.linspace(m, 50.0, 2000)
        sup = max(exact_entropy(w, 1.0) for w in omegas)
        assert sup == ceiling
        assert 1 - sup >= 1 - ceiling > 0.9
        with pytest.raises(unruh.DomainError):
            find_mode_for_entropy(0.999, a=1.0, m=m)


@pytest.mark.acceptance(10, title="entropy-curve --no-meta output is byte identical across runs")
def test_determinism(tmp_path, capsys):
    with budget(5):
        argv = ["entropy-curve", "--r-min", "0.01", "--r-max", repr(PI_4), "--steps", "500", "--no-meta"]
        paths = [tmp_path / "run1.csv", tmp_path / "run2.csv"]
        for path in paths:
            assert cli.main(argv + ["--output", str(path)]) == 0
        capsys.readouterr()
        assert paths[0].read_bytes() == paths[1].read_bytes()
