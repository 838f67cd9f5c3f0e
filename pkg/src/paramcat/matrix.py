"""Finite-dimensional complex matrices under the Kronecker product.

Objects are positive integer dimensions and a morphism ``n -> m`` is an
``m x n`` complex matrix, so ``compose(g, f)`` is the matrix product
``g @ f``. The presentation is skeletal and strict: associators and unitors
are identity matrices. The braiding is the commutation matrix.

Rotation gates follow the convention ``R_X(a) = cos(a) I + i sin(a) X`` and
``R_Z(a) = diag(e^{ia}, e^{-ia})`` rather than the half-angle textbook form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import ArityError, ParamError, Param, ParamMor, ParamSpace

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)


class ShapeError(ParamError):
    pass


class GateError(ParamError):
    pass


def check_dim(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ShapeError(f"dimension must be an integer, got {n!r}")
    if n < 1:
        raise ShapeError(f"dimension must be >= 1, got {n}")
    return int(n)


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or 0 in m.shape:
        raise ShapeError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix has non-finite entries")
    return m


def mat_compose(g: np.ndarray, f: np.ndarray) -> np.ndarray:
    """``g`` after ``f``."""
    if g.shape[1] != f.shape[0]:
        raise ShapeError(
            f"cannot compose {g.shape[0]}x{g.shape[1]} after "
            f"{f.shape[0]}x{f.shape[1]}")
    return g @ f


def mat_tensor(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return np.kron(f, g)


def mat_identity(n: int) -> np.ndarray:
    return np.eye(check_dim(n), dtype=complex)


def structural(kind: str, dims: Sequence[int]) -> np.ndarray:
    """Associator/unitor matrices; all identities in the strict presentation."""
    dims = [check_dim(d) for d in dims]
    expected = {"alpha": 3, "lambda": 1, "rho": 1}
    if kind not in expected:
        raise ValueError(f"unknown structural morphism {kind!r}")
    if len(dims) != expected[kind]:
        raise ValueError(f"{kind} takes {expected[kind]} dimension(s)")
    return mat_identity(math.prod(dims))


def commutation_matrix(n: int, m: int) -> np.ndarray:
    """The ``nm x nm`` permutation sending ``e_i (x) e_j`` to ``e_j (x) e_i``.

    ``K @ np.kron(A, B) @ K.T == np.kron(B, A)`` for ``A`` of size ``n`` and
    ``B`` of size ``m``.
    """
    n, m = check_dim(n), check_dim(m)
    k = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(m):
            k[j * n + i, i * m + j] = 1
    return k


def approx_eq(a, b, tol: float = 1e-12):
    """Return ``(equal, max_deviation, reason)``.

    The deviation is the largest entrywise modulus of ``a - b``; shape
    mismatches compare unequal with infinite deviation.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False, math.inf, f"shape mismatch {a.shape} vs {b.shape}"
    dev = float(np.max(np.abs(a - b))) if a.size else 0.0
    return dev <= tol, dev, ""


def normalize_phase(m: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    """Divide out the phase of the first entry with modulus above ``eps``."""
    flat = m.ravel()
    idx = np.flatnonzero(np.abs(flat) > eps)
    if idx.size == 0:
        return m
    z = flat[idx[0]]
    return m * (abs(z) / z)


# affine angle expressions ----------------------------------------------------

@dataclass(frozen=True)
class AffineExpr:
    """``constant + sum(coeff * theta[index])`` in radians."""

    constant: float = 0.0
    coefficients: tuple = ()  # ((index, coeff), ...), strictly increasing

    def __post_init__(self):
        idx = [i for i, _ in self.coefficients]
        if any(i < 0 for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(
                "parameter indices must be non-negative and strictly increasing")

    @classmethod
    def build(cls, constant: float = 0.0, terms=()) -> "AffineExpr":
        """Merge duplicate indices and drop zero coefficients."""
        acc: dict[int, float] = {}
        for i, c in terms:
            acc[i] = acc.get(i, 0.0) + float(c)
        coeffs = tuple((i, c) for i, c in sorted(acc.items()) if c != 0.0)
        return cls(float(constant), coeffs)

    @classmethod
    def param(cls, index: int, coeff: float = 1.0) -> "AffineExpr":
        return cls.build(0.0, [(index, coeff)])

    def max_index(self) -> int:
        return self.coefficients[-1][0] if self.coefficients else -1

    def __call__(self, theta: Sequence[float]) -> float:
        return affine_eval(self, theta)

    def __str__(self):
        parts = []
        if self.constant != 0.0 or not self.coefficients:
            parts.append(repr(self.constant))
        for i, c in self.coefficients:
            mag = abs(c)
            term = f"t{i}" if mag == 1.0 else f"{mag!r}*t{i}"
            if parts:
                parts.append(("- " if c < 0 else "+ ") + term)
            else:
                parts.append(("-" if c < 0 else "") + term)
        return " ".join(parts)


def affine_eval(e: AffineExpr, theta: Sequence[float]) -> float:
    if e.max_index() >= len(theta):
        raise ArityError(
            f"expression uses t{e.max_index()} but only {len(theta)} "
            "parameter(s) were given")
    return e.constant + sum(c * theta[i] for i, c in e.coefficients)


def rx(a: float) -> np.ndarray:
    return math.cos(a) * I2 + 1j * math.sin(a) * PAULI_X


def ry(a: float) -> np.ndarray:
    return math.cos(a) * I2 + 1j * math.sin(a) * PAULI_Y


def rz(a: float) -> np.ndarray:
    return np.diag([np.exp(1j * a), np.exp(-1j * a)])


ROTATIONS = {"rx": rx, "ry": ry, "rz": rz}
CONSTANT_GATES = {
    "h": HADAMARD,
    "x": PAULI_X,
    "y": PAULI_Y,
    "z": PAULI_Z,
    "cnot": CNOT,
    "swap2": commutation_matrix(2, 2),
}
GATE_NAMES = tuple(ROTATIONS) + tuple(CONSTANT_GATES)


# backend ---------------------------------------------------------------------

class MatrixBackend:
    """Strict skeletal FVect: dimensions, complex matrices, Kronecker product."""

    name = "matrix"

    def check_object(self, x):
        return check_dim(x)

    def unit(self):
        return 1

    def tensor_obj(self, x, y):
        return check_dim(x) * check_dim(y)

    def dom(self, m):
        return int(m.shape[1])

    def cod(self, m):
        return int(m.shape[0])

    def compose(self, g, f):
        return mat_compose(g, f)

    def identity(self, x):
        return mat_identity(x)

    def tensor(self, f, g):
        return mat_tensor(f, g)

    def associator(self, x, y, z):
        return structural("alpha", (x, y, z))

    associator_inv = associator

    def left_unitor(self, x):
        return structural("lambda", (x,))

    left_unitor_inv = left_unitor

    def right_unitor(self, x):
        return structural("rho", (x,))

    right_unitor_inv = right_unitor

    def braiding(self, x, y):
        return commutation_matrix(x, y)

    def deviation(self, a, b):
        return approx_eq(a, b, 0.0)[1]

    # random data for the law suite

    def random_object(self, rng: np.random.Generator, max_dim: int) -> int:
        return int(rng.integers(1, max_dim + 1))

    def random_family(self, rng: np.random.Generator, dom: int, cod: int,
                      arity: int):
        """A smooth family ``A0 + sum_k cos(t_k) A_k + sin(t_k) B_k``."""
        def draw():
            return (rng.normal(size=(cod, dom))
                    + 1j * rng.normal(size=(cod, dom))) / math.sqrt(2 * dom)
        base = draw()
        cos_terms = [draw() for _ in range(arity)]
        sin_terms = [draw() for _ in range(arity)]

        def fn(theta):
            m = base.copy()
            for t, a, b in zip(theta, cos_terms, sin_terms):
                m = m + math.cos(t) * a + math.sin(t) * b
            return m

        return fn

    def random_morphism(self, rng, dom, cod):
        return self.random_family(rng, dom, cod, 0)(())


class ExactMatrixBackend(MatrixBackend):
    """Matrix backend whose random morphisms are 0/1 partial permutations.

    Products and Kronecker products of such matrices are computed exactly in
    floating point, so every law holds with deviation exactly zero.
    """

    name = "matrix-exact"

    def random_morphism(self, rng, dom, cod):
        m = np.zeros((cod, dom), dtype=complex)
        rows = rng.permutation(cod)
        cols = rng.permutation(dom)
        for r, c in zip(rows, cols):
            m[r, c] = 1
        return m

    def random_family(self, rng, dom, cod, arity):
        choices = [self.random_morphism(rng, dom, cod) for _ in range(3)]
        if arity == 0:
            return lambda theta: choices[0]

        def fn(theta):
            k = int((theta[0] % (2 * math.pi)) / (2 * math.pi) * 3) % 3
            return choices[k]

        return fn


class SwappedTensorBackend(MatrixBackend):
    """Deliberately broken backend used to show the law suite can fail.

    The Kronecker product orders the output legs as ``g (x) f`` but the input
    legs as ``f (x) g``. (Swapping both is just the opposite monoidal product
    and would pass every law.)
    """

    name = "matrix-swapped-tensor"

    def tensor(self, f, g):
        k = commutation_matrix(f.shape[0], g.shape[0])
        return k @ np.kron(f, g)


# gates -----------------------------------------------------------------------

def gate(cat: Param, name: str, angle: Optional[AffineExpr] = None) -> ParamMor:
    """A named gate as a family in ``cat`` (whose backend must be matrices)."""
    if name in ROTATIONS:
        if angle is None:
            raise GateError(f"gate {name} requires an angle")
        if angle.max_index() >= cat.space.arity:
            raise ArityError(
                f"parameter t{angle.max_index()} out of range "
                f"(params {cat.space.arity})")
        rot = ROTATIONS[name]
        return cat.make(2, 2, lambda theta: rot(affine_eval(angle, theta)))
    if name in CONSTANT_GATES:
        if angle is not None:
            raise GateError(f"gate {name} takes no angle")
        return cat.include(CONSTANT_GATES[name])
    raise GateError(f"unknown gate {name!r}")


def matrix_category(arity: int) -> Param:
    return Param(ParamSpace(arity), MatrixBackend())


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    n = u.shape[0]
    return u.shape == (n, n) and approx_eq(u @ u.conj().T, np.eye(n), tol)[0]


# rendering -------------------------------------------------------------------

def _num(x: float) -> float:
    return 0.0 if x == 0 else float(x)


def format_entry(z: complex) -> str:
    return f"{_num(z.real):.12g}{_num(z.imag):+.12g}i"


def format_matrix(m: np.ndarray) -> str:
    """One row per line, tab-separated ``a+bi`` entries."""
    return "\n".join("\t".join(format_entry(z) for z in row) for row in m)


def matrix_record(m: np.ndarray) -> dict:
    flat = m.ravel()
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [_num(z.real) for z in flat],
        "im": [_num(z.imag) for z in flat],
    }


def matrix_from_record(rec: dict) -> np.ndarray:
    re = np.asarray(rec["re"], dtype=float)
    im = np.asarray(rec["im"], dtype=float)
    return (re + 1j * im).reshape(rec["rows"], rec["cols"])


def dumps_matrix(m: np.ndarray) -> str:
    return json.dumps(matrix_record(m), sort_keys=True)
