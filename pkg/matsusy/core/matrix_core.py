"""小维度复厄米/幺正矩阵运算与固定矩阵常量（Pauli 与自旋 1）"""

from typing import Optional, Tuple

import numpy as np
from scipy.linalg import expm

from matsusy.core.errors import DimensionError

HERMITIAN_TOL = 1e-12

_PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_SPIN1_CARTESIAN = (
    np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]], dtype=complex),
    np.array([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]], dtype=complex),
    np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex),
)

_SQRT2 = np.sqrt(2.0)
_SPIN1_GT = (
    np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _SQRT2,
    1j * np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]], dtype=complex) / _SQRT2,
    np.diag([1.0, 0.0, -1.0]).astype(complex),
)

SPIN1_BASES = ("cartesian", "gelfand_tsetlin")


def pauli(index: int) -> np.ndarray:
    """σ₀ (单位阵), σ₁, σ₂, σ₃"""
    if index not in (0, 1, 2, 3):
        raise IndexError(f"Pauli index must be 0..3, got {index}")
    return _PAULI[index].copy()


def sigma_plus() -> np.ndarray:
    """投影 σ₊ = (σ₀ + σ₃)/2"""
    return (_PAULI[0] + _PAULI[3]) / 2


def sigma_minus() -> np.ndarray:
    """投影 σ₋ = (σ₀ − σ₃)/2"""
    return (_PAULI[0] - _PAULI[3]) / 2


def spin1(index: int, basis: str = "cartesian") -> np.ndarray:
    """自旋 1 矩阵 S₁, S₂, S₃"""
    if index not in (1, 2, 3):
        raise IndexError(f"spin-1 index must be 1..3, got {index}")
    if basis == "cartesian":
        return _SPIN1_CARTESIAN[index - 1].copy()
    if basis == "gelfand_tsetlin":
        return _SPIN1_GT[index - 1].copy()
    raise ValueError(f"unknown spin-1 basis: {basis} (expected one of {SPIN1_BASES})")


def _check_same_dim(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """{A, B} = AB + BA"""
    _check_same_dim(a, b)
    return a @ b + b @ a


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[A, B] = AB − BA"""
    _check_same_dim(a, b)
    return a @ b - b @ a


def hermitize(a: np.ndarray) -> np.ndarray:
    """(A + A†)/2"""
    return (a + a.conj().T) / 2


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """厄米性检查"""
    return a.ndim == 2 and a.shape[0] == a.shape[1] and bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def is_unitary(u: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """幺正性检查 U·U† = I"""
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol)


def conjugate(u: np.ndarray, a: np.ndarray) -> np.ndarray:
    """U A U†"""
    _check_same_dim(u, a)
    return u @ a @ u.conj().T


def conjugate_field(u: np.ndarray, values: np.ndarray) -> np.ndarray:
    """对网格上的矩阵场 (npts, n, n) 逐点做 U A U†"""
    return np.einsum("ij,pjk,lk->pil", u, values, u.conj())


def hermitian_eigen(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """厄米矩阵特征分解

    特征值升序；每个特征向量的最大模分量取为正实数，保证输出可复现。
    """
    w, v = np.linalg.eigh(hermitize(np.asarray(a, dtype=complex)))
    for k in range(v.shape[1]):
        col = v[:, k]
        pivot = col[np.argmax(np.abs(col))]
        v[:, k] = col * (abs(pivot) / pivot)
    return w, v


def rotation(generator: np.ndarray, angle: float) -> np.ndarray:
    """常数幺正矩阵 exp(i·angle·G)"""
    return expm(1j * angle * np.asarray(generator, dtype=complex))


def half_turn(generator: np.ndarray, sign: int = 1) -> np.ndarray:
    """(1 ± iG)/√2，G 为 Pauli 矩阵时等于 exp(±iπG/4)"""
    n = generator.shape[0]
    return (np.eye(n) + sign * 1j * generator) / _SQRT2


def gelfand_tsetlin_transform() -> np.ndarray:
    """返回幺正 V，使 V S_a(cartesian) V† = S_a(Gelfand-Tsetlin)"""
    s1, s3 = _SPIN1_CARTESIAN[0], _SPIN1_CARTESIAN[2]
    w, e = hermitian_eigen(s3)
    # columns for m = +1, 0, -1
    e = e[:, ::-1].copy()
    z_up = e[:, 0].conj() @ s1 @ e[:, 1]
    e[:, 0] *= z_up / abs(z_up)
    z_down = e[:, 1].conj() @ s1 @ e[:, 2]
    e[:, 2] *= np.conj(z_down) / abs(z_down)
    return e.conj().T


def random_hermitian(dim: int, rng: Optional[np.random.Generator] = None, scale: float = 1.0) -> np.ndarray:
    """随机厄米矩阵"""
    rng = rng if rng is not None else np.random.default_rng()
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * hermitize(m)


def random_unitary(dim: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """随机幺正矩阵（QR 分解）"""
    rng = rng if rng is not None else np.random.default_rng()
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    d = np.diag(r)
    return q * (d / np.abs(d))
