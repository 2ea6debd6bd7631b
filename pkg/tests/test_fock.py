import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rindler_fermions import fock
from rindler_fermions.fock import (
    LabelCollisionError,
    ModeLabel,
    ModeRegister,
    RegisterMismatchError,
    StateVector,
    apply_annihilation,
    apply_creation,
    basis_state,
    generic_register,
    inner_product,
    operator_matrix,
    tensor_product,
)

REG2 = generic_register(2)


def jw_creation(size, i):
    """Independent Kronecker-product construction: Z^(i) x sigma^+ x I^(size-i-1)."""
    z = np.diag([1.0, -1.0])
    up = np.array([[0.0, 0.0], [1.0, 0.0]])
    factors = [z] * i + [up] + [np.eye(2)] * (size - i - 1)
    return reduce(np.kron, factors)


def test_creation_on_vacuum():
    out = apply_creation(basis_state(REG2, "00"), 0)
    assert np.array_equal(out.amplitudes, basis_state(REG2, "10").amplitudes)


def test_creation_picks_up_parity_sign():
    out = apply_creation(basis_state(REG2, "10"), 1)
    assert np.array_equal(out.amplitudes, -basis_state(REG2, "11").amplitudes)


def test_creation_pauli_blocked():
    out = apply_creation(basis_state(REG2, "10"), 0)
    assert out.is_zero
    assert out.norm == 0.0


def test_zero_vector_distinct_from_vacuum():
    zero = apply_creation(basis_state(REG2, "10"), 0)
    vac = fock.vacuum(REG2)
    assert zero.is_zero and not vac.is_zero
    assert not zero.is_normalized and vac.is_normalized


def test_annihilation_examples():
    assert np.array_equal(apply_annihilation(basis_state(REG2, "10"), 0).amplitudes,
                          basis_state(REG2, "00").amplitudes)
    assert np.array_equal(apply_annihilation(basis_state(REG2, "11"), 1).amplitudes,
                          -basis_state(REG2, "10").amplitudes)
    assert apply_annihilation(basis_state(REG2, "00"), 0).is_zero


@pytest.mark.parametrize("fn", [apply_creation, apply_annihilation])
@pytest.mark.parametrize("index", [-1, 2, 7])
def test_ladder_index_out_of_range(fn, index):
    with pytest.raises(IndexError):
        fn(fock.vacuum(REG2), index)


def test_operator_matrix_single_mode():
    mat = operator_matrix(generic_register(1), 0, "creation").matrix
    assert np.array_equal(mat, np.array([[0, 0], [1, 0]]))


def test_operator_matrix_column_action():
    op = operator_matrix(REG2, 1, "creation")
    out = op @ basis_state(REG2, "10")
    assert np.array_equal(out.amplitudes, -basis_state(REG2, "11").amplitudes)


def test_operator_matrix_rejects_bad_kind_and_index():
    with pytest.raises(ValueError):
        operator_matrix(REG2, 0, "number")
    with pytest.raises(IndexError):
        operator_matrix(REG2, 2, "creation")


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_operator_matrix_matches_kronecker_construction(size):
    register = generic_register(size)
    for i in range(size):
        assert np.array_equal(operator_matrix(register, i, "creation").matrix, jw_creation(size, i))


@pytest.mark.parametrize("size", [1, 2, 3])
def test_car_identities(size):
    register = generic_register(size)
    a = [fock.annihilation(register, i).matrix for i in range(size)]
    ad = [fock.creation(register, i).matrix for i in range(size)]
    eye = np.eye(register.dim)
    for i, j in itertools.product(range(size), repeat=2):
        assert np.max(np.abs(a[i] @ ad[j] + ad[j] @ a[i] - (i == j) * eye)) <= 1e-12
        assert np.max(np.abs(a[i] @ a[j] + a[j] @ a[i])) <= 1e-12
        assert np.max(np.abs(ad[i] @ ad[j] + ad[j] @ ad[i])) <= 1e-12


@pytest.mark.parametrize("size", [1, 2, 3])
def test_nilpotent_and_adjoint(size):
    register = generic_register(size)
    for i in range(size):
        c = fock.creation(register, i).matrix
        d = fock.annihilation(register, i).matrix
        assert not np.any(c @ c)
        assert not np.any(d @ d)
        assert np.array_equal(d, c.conj().T)


@pytest.mark.parametrize("size", [1, 2, 3])
def test_apply_agrees_with_matrix_on_basis(size):
    register = generic_register(size)
    for i in range(size):
        c = fock.creation(register, i)
        d = fock.annihilation(register, i)
        for n in range(register.dim):
            basis = basis_state(register, fock.index_to_bits(n, size))
            assert np.array_equal(apply_creation(basis, i).amplitudes, (c @ basis).amplitudes)
            assert np.array_equal(apply_annihilation(basis, i).amplitudes, (d @ basis).amplitudes)


def test_inner_product_examples():
    assert inner_product(basis_state(REG2, "00"), basis_state(REG2, "00")) == 1
    assert inner_product(basis_state(REG2, "00"), basis_state(REG2, "11")) == 0
    bell = StateVector.from_bits(REG2, {"00": 2**-0.5, "11": 2**-0.5})
    assert inner_product(bell, bell) == pytest.approx(1.0, abs=1e-15)


def test_inner_product_conjugate_linear_in_first_argument():
    x = StateVector.from_bits(REG2, {"01": 1j})
    y = StateVector.from_bits(REG2, {"01": 1.0})
    assert inner_product(x, y) == -1j
    assert inner_product(y, x) == 1j


def test_inner_product_register_mismatch():
    with pytest.raises(RegisterMismatchError):
        inner_product(fock.vacuum(REG2), fock.vacuum(generic_register(3)))


def test_tensor_product_examples():
    one = ModeRegister((ModeLabel("p"),))
    two = ModeRegister((ModeLabel("q"),))
    out = tensor_product(basis_state(one, "0"), basis_state(two, "0"))
    assert out.register.modes == (ModeLabel("p"), ModeLabel("q"))
    assert np.array_equal(out.amplitudes, [1, 0, 0, 0])

    alpha, beta = 0.6, 0.8j
    x = StateVector.from_bits(one, {"0": alpha, "1": beta})
    out = tensor_product(x, basis_state(two, "1"))
    assert out.amplitude("01") == alpha
    assert out.amplitude("11") == beta
    assert out.amplitude("00") == out.amplitude("10") == 0


def test_tensor_product_label_collision():
    with pytest.raises(LabelCollisionError):
        tensor_product(fock.vacuum(REG2), fock.vacuum(REG2))


def test_tensor_product_matches_creation_strings():
    # |10> (x) |1> built from operators: a0^dag a2^dag |000>
    reg3 = generic_register(3)
    left = ModeRegister(reg3.modes[:2])
    right = ModeRegister(reg3.modes[2:])
    product = tensor_product(basis_state(left, "10"), basis_state(right, "1"))
    built = apply_creation(apply_creation(fock.vacuum(reg3), 2), 0)
    assert np.array_equal(product.amplitudes, built.amplitudes)


complex_amp = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.lists(complex_amp, min_size=4, max_size=4), st.lists(complex_amp, min_size=4, max_size=4))
def test_tensor_product_norm_multiplies(xs, ys):
    left = ModeRegister((ModeLabel("a"), ModeLabel("b")))
    right = ModeRegister((ModeLabel("c"), ModeLabel("d")))
    x, y = StateVector(left, xs), StateVector(right, ys)
    # oracle: expand the double sum over basis pairs by hand
    expanded = sum(abs(xv * yv) ** 2 for xv in xs for yv in ys) ** 0.5
    assert tensor_product(x, y).norm == pytest.approx(expanded, rel=1e-12, abs=1e-12)
    assert tensor_product(x, y).norm == pytest.approx(x.norm * y.norm, rel=1e-12, abs=1e-12)


def test_register_rejects_duplicate_labels():
    with pytest.raises(LabelCollisionError):
        ModeRegister((ModeLabel("k"), ModeLabel("k")))


def test_register_is_immutable():
    with pytest.raises(AttributeError):
        REG2.modes = ()


def test_state_amplitudes_are_read_only():
    state = fock.vacuum(REG2)
    with pytest.raises(ValueError):
        state.amplitudes[0] = 5


def test_reorder_swaps_with_fermionic_sign():
    swapped = ModeRegister(REG2.modes[::-1])
    out = fock.reorder(basis_state(REG2, "11"), swapped)
    # a0^dag a1^dag = -a1^dag a0^dag
    assert out.amplitude("11") == -1
    out = fock.reorder(basis_state(REG2, "10"), swapped)
    assert out.amplitude("01") == 1


def test_permutation_operator_is_orthogonal():
    reg = generic_register(4)
    target = ModeRegister((reg[2], reg[0], reg[3], reg[1]))
    perm = fock.permutation_operator(reg, target)
    assert np.array_equal(perm @ perm.T, np.eye(16))


def test_reorder_conjugates_operators():
    reg = generic_register(3)
    target = ModeRegister((reg[2], reg[0], reg[1]))
    perm = fock.permutation_operator(reg, target)
    for i, label in enumerate(reg):
        moved = perm @ fock.creation(reg, i).matrix @ perm.T
        assert np.array_equal(moved, fock.creation(target, target.index(label)).matrix)


def test_state_dump_round_trip():
    state = StateVector.from_bits(REG2, {"00": 0.6, "11": -0.8j})
    data = fock.state_to_dict(state)
    assert data["register"] == ["minkowski/particle/0", "minkowski/particle/1"]
    assert data["amplitudes"] == [
        {"bits": "00", "re": 0.6, "im": 0.0},
        {"bits": "11", "re": -0.0, "im": -0.8},
    ]
    back = fock.loads_state(fock.dumps_state(state))
    assert back.register == state.register
    assert np.array_equal(back.amplitudes, state.amplitudes)


def test_state_dump_prunes_tiny_amplitudes():
    state = StateVector.from_bits(REG2, {"00": 1.0, "01": 1e-16})
    assert [e["bits"] for e in fock.state_to_dict(state)["amplitudes"]] == ["00"]


def test_mode_label_parse_round_trip():
    label = ModeLabel("-k", "antiparticle", "rindler_ii")
    assert ModeLabel.parse(str(label)) == label
    with pytest.raises(ValueError):
        ModeLabel.parse("nonsense")
    with pytest.raises(ValueError):
        ModeLabel("k", "boson")
