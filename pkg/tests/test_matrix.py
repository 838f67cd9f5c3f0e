import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramcat.core import ArityError, Param, ParamSpace
from paramcat.matrix import (
    CONSTANT_GATES, GateError, HADAMARD, I2, PAULI_X, PAULI_Y, AffineExpr,
    MatrixBackend, ShapeError, affine_eval, approx_eq, check_dim,
    commutation_matrix, format_entry, format_matrix, gate, is_unitary,
    mat_compose, mat_identity, mat_tensor, matrix_from_record, matrix_record,
    normalize_phase, rx, ry, rz, structural)

angles = st.floats(min_value=-10, max_value=10, allow_nan=False)


def naive_kron(a, b):
    """Kronecker product by explicit index arithmetic."""
    (p, q), (r, s) = a.shape, b.shape
    out = np.zeros((p * r, q * s), dtype=complex)
    for i, j, k, l in itertools.product(range(p), range(q), range(r), range(s)):
        out[i * r + k, j * s + l] = a[i, j] * b[k, l]
    return out


def naive_matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            out[i, j] = sum(a[i, k] * b[k, j] for k in range(a.shape[1]))
    return out


def rand_c(rng, r, c):
    return rng.normal(size=(r, c)) + 1j * rng.normal(size=(r, c))


def basis(n, i):
    e = np.zeros(n, dtype=complex)
    e[i] = 1
    return e


def test_compose_involution():
    assert np.array_equal(mat_compose(PAULI_X, PAULI_X), I2)


def test_compose_shape_mismatch():
    with pytest.raises(ShapeError):
        mat_compose(np.eye(2), np.eye(3))


@given(angles, angles)
def test_rz_additive(a, b):
    expected = np.diag([cmath.exp(1j * (a + b)), cmath.exp(-1j * (a + b))])
    assert approx_eq(mat_compose(rz(a), rz(b)), expected, 1e-12)[0]


def test_flip_conjugates_rz():
    t = 0.731
    lhs = PAULI_X @ np.diag([cmath.exp(1j * t), cmath.exp(-1j * t)]) @ PAULI_X
    assert approx_eq(lhs, np.diag([cmath.exp(-1j * t), cmath.exp(1j * t)]),
                     1e-15)[0]


def test_tensor_ix_identity():
    expected = np.array([[0, 0, 1j, 0],
                         [0, 0, 0, 1j],
                         [1j, 0, 0, 0],
                         [0, 1j, 0, 0]])
    assert np.array_equal(mat_tensor(1j * PAULI_X, I2), expected)


def test_tensor_identities():
    assert np.array_equal(mat_tensor(I2, I2), np.eye(4))


def test_tensor_matches_naive(rng):
    for shape_a, shape_b in [((2, 3), (3, 1)), ((1, 1), (2, 2)), ((3, 2), (2, 3))]:
        a, b = rand_c(rng, *shape_a), rand_c(rng, *shape_b)
        assert approx_eq(mat_tensor(a, b), naive_kron(a, b), 1e-14)[0]


def test_mixed_product_law(rng):
    for _ in range(20):
        a, b, c, d = (rand_c(rng, 2, 2) for _ in range(4))
        lhs = naive_matmul(naive_kron(a, b), naive_kron(c, d))
        assert approx_eq(mat_compose(mat_tensor(a, b), mat_tensor(c, d)), lhs,
                         1e-12)[0]
        assert approx_eq(mat_tensor(a @ c, b @ d), lhs, 1e-12)[0]


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
       st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
       st.integers(0, 2**32 - 1))
def test_mixed_product_random_dims(p, q, r, s, t, u, seed):
    rng = np.random.default_rng(seed)
    a, c = rand_c(rng, p, q), rand_c(rng, q, r)
    b, d = rand_c(rng, s, t), rand_c(rng, t, u)
    lhs = mat_compose(mat_tensor(a, b), mat_tensor(c, d))
    assert approx_eq(lhs, mat_tensor(a @ c, b @ d), 1e-12)[0]


def test_identity_and_structural():
    assert np.array_equal(mat_identity(1), [[1]])
    assert np.array_equal(structural("alpha", (2, 3, 4)), np.eye(24))
    assert np.array_equal(structural("lambda", (5,)), np.eye(5))
    assert np.array_equal(structural("rho", (3,)), np.eye(3))
    with pytest.raises(ValueError):
        structural("beta", (2,))


@pytest.mark.parametrize("bad", [0, -1, 2.0, True])
def test_zero_dimensional_objects_rejected(bad):
    with pytest.raises(ShapeError):
        check_dim(bad)


def test_commutation_small():
    assert np.array_equal(commutation_matrix(1, 1), [[1]])
    assert np.array_equal(commutation_matrix(2, 2), np.eye(4)[[0, 2, 1, 3]])


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (3, 2), (4, 2), (3, 3)])
def test_commutation_brute_force_basis(n, m):
    k = commutation_matrix(n, m)
    for i in range(n):
        for j in range(m):
            src = np.kron(basis(n, i), basis(m, j))
            dst = np.kron(basis(m, j), basis(n, i))
            assert np.array_equal(k @ src, dst)


def test_commutation_conjugation(rng):
    for _ in range(30):
        n, m = rng.integers(1, 5, size=2)
        a, b = rand_c(rng, n, n), rand_c(rng, m, m)
        k = commutation_matrix(n, m)
        assert approx_eq(k @ naive_kron(a, b) @ k.T, naive_kron(b, a), 1e-12)[0]


@pytest.mark.parametrize("n,m", [(1, 1), (2, 3), (4, 1), (3, 4)])
def test_commutation_inverse_exact(n, m):
    prod = commutation_matrix(m, n) @ commutation_matrix(n, m)
    assert np.array_equal(prod, np.eye(n * m))


def test_gate_rx_half_pi(cat2):
    g = gate(cat2, "rx", AffineExpr.param(0))
    assert approx_eq(g((math.pi / 2, 0)), 1j * PAULI_X, 1e-12)[0]


def test_gate_rz_zero(cat1):
    assert approx_eq(gate(cat1, "rz", AffineExpr.param(0))((0,)), I2, 0)[0]


def test_gate_ry_quarter_pi(cat1):
    m = gate(cat1, "ry", AffineExpr.param(0))((math.pi / 4,))
    expected = math.cos(math.pi / 4) * I2 + 1j * math.sin(math.pi / 4) * PAULI_Y
    assert approx_eq(m, expected, 1e-15)[0]
    assert is_unitary(m)


def test_gate_errors(cat1):
    with pytest.raises(GateError):
        gate(cat1, "rx")
    with pytest.raises(GateError):
        gate(cat1, "h", AffineExpr.param(0))
    with pytest.raises(GateError):
        gate(cat1, "toffoli")
    with pytest.raises(ArityError):
        gate(cat1, "rx", AffineExpr.param(1))


def test_constant_gates_are_included(cat1):
    h = gate(cat1, "h")
    assert h.constant
    assert np.array_equal(h((5.0,)), HADAMARD)
    assert gate(cat1, "cnot").dom == 4 and gate(cat1, "swap2").cod == 4


@given(angles)
def test_shipped_gates_unitary(a):
    for m in (rx(a), ry(a), rz(a), *CONSTANT_GATES.values()):
        assert is_unitary(m, 1e-12)


@given(angles, angles)
def test_rx_additive(a, b):
    assert approx_eq(rx(a) @ rx(b), rx(a + b), 1e-12)[0]


def test_affine_eval():
    assert affine_eval(AffineExpr.param(0), (math.pi / 2, 0)) == math.pi / 2
    assert affine_eval(AffineExpr.param(1, 2.0), (math.pi / 2, 0)) == 0.0
    e = AffineExpr.build(1.5, [(0, -0.5), (1, 2.0)])
    assert affine_eval(e, (2.0, 1.0)) == 2.5
    with pytest.raises(ArityError):
        affine_eval(AffineExpr.param(2), (1.0, 2.0))


def test_affine_canonical_form():
    e = AffineExpr.build(0.0, [(1, 2.0), (0, 1.0), (1, -2.0)])
    assert e.coefficients == ((0, 1.0),)
    with pytest.raises(ValueError):
        AffineExpr(0.0, ((1, 1.0), (0, 1.0)))
    with pytest.raises(ValueError):
        AffineExpr(0.0, ((0, 1.0), (0, 2.0)))


def test_approx_eq_examples():
    assert approx_eq(I2, I2, 0) == (True, 0.0, "")
    assert approx_eq(rx(0.3) @ rx(0.4), rx(0.7), 1e-12)[0]
    ok, dev, _ = approx_eq(rz(0.1), rz(-0.1), 1e-10)
    assert not ok
    assert dev == pytest.approx(2 * math.sin(0.1), abs=1e-15)
    ok, dev, reason = approx_eq(np.eye(2), np.eye(3), 1.0)
    assert not ok and dev == math.inf and "shape" in reason


def test_normalize_phase():
    u = rx(0.4)
    assert approx_eq(normalize_phase(cmath.exp(0.9j) * u), normalize_phase(u),
                     1e-14)[0]


def test_format_entry():
    assert format_entry(0j) == "0+0i"
    assert format_entry(-0.0 - 0.0j) == "0+0i"
    assert format_entry(1.5 - 2j) == "1.5-2i"
    assert format_entry(1 / 3 + 0j) == "0.333333333333+0i"
    assert format_matrix(1j * PAULI_X) == "0+0i\t0+1i\n0+1i\t0+0i"


def test_record_round_trip(rng):
    m = rand_c(rng, 2, 3)
    rec = matrix_record(m)
    assert rec["rows"] == 2 and rec["cols"] == 3 and len(rec["re"]) == 6
    assert np.array_equal(matrix_from_record(rec), m)


def test_backend_objects():
    b = MatrixBackend()
    assert b.unit() == 1
    assert b.tensor_obj(2, 3) == 6
    m = np.zeros((3, 2))
    assert (b.dom(m), b.cod(m)) == (2, 3)
    cat = Param(ParamSpace(0), b)
    with pytest.raises(ShapeError):
        cat.identity(0)
