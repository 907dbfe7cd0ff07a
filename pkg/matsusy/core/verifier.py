"""形状不变性与确定方程的数值验证"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from matsusy.core.catalog import Decomposition, MatrixField, SuperpotentialSpec
from matsusy.core.errors import DimensionError, ParameterGuardError
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_COUNT = 50
DEFAULT_MARGIN = 0.05
DEFAULT_SPAN = 10.0


@dataclass
class ResidualReport:
    """各方程在采样网格上的最大残差与拟合常数"""

    residuals: Dict[str, float]
    fitted: Dict[str, float]
    sample_count: int
    grid: Dict[str, float]
    scale: float = 1.0
    predicted: Dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def passed(self, tol: float) -> bool:
        return self.max_residual <= tol

    def to_dict(self) -> Dict[str, Any]:
        return {
            "residuals": dict(self.residuals),
            "fitted": dict(self.fitted),
            "predicted": dict(self.predicted),
            "sample_count": self.sample_count,
            "grid": dict(self.grid),
            "scale": self.scale,
        }


def sample_grid(
    w: Any,
    count: int = DEFAULT_COUNT,
    margin: float = DEFAULT_MARGIN,
    span: float = DEFAULT_SPAN,
) -> np.ndarray:
    """主定义域内的均匀采样点，两端各留出 margin 比例"""
    lo, hi = w.principal
    if np.isfinite(lo) and np.isfinite(hi):
        width = hi - lo
        a, b = lo + margin * width, hi - margin * width
    elif np.isfinite(lo):
        a, b = lo + margin * span, lo + span
    elif np.isfinite(hi):
        a, b = hi - span, hi - margin * span
    else:
        a, b = -span / 2, span / 2
    return np.linspace(a, b, count)


def _grid_info(xs: np.ndarray) -> Dict[str, float]:
    return {"start": float(xs[0]), "stop": float(xs[-1]), "count": int(xs.size)}


def _fit_identity(D: np.ndarray) -> float:
    """最小二乘拟合 D ≈ c·I 中的 c"""
    n = D.shape[-1]
    return float(np.mean(np.trace(D, axis1=-2, axis2=-1).real) / n)


def _max_norm(D: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(D, axis=(-2, -1)))) if D.size else 0.0


def partner_potentials(w: Any, kappa: float, grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """V⁻ = W² − W'，V⁺ = W² + W'"""
    xs = np.asarray(grid, dtype=float)
    W = w.values(kappa, xs)
    dW = w.derivatives(kappa, xs)
    W2 = W @ W
    return W2 - dW, W2 + dW


def shape_residual(w: Any, kappa: float, grid: np.ndarray) -> ResidualReport:
    """拟合 C_κ 并报告 max‖V⁺_κ − V⁻_{κ+1} − C_κ I‖"""
    xs = np.asarray(grid, dtype=float)
    _, v_plus = partner_potentials(w, kappa, xs)
    v_next, _ = partner_potentials(w, kappa + 1, xs)
    D = v_plus - v_next
    C = _fit_identity(D)
    n = D.shape[-1]
    residual = _max_norm(D - C * np.eye(n))
    report = ResidualReport(
        residuals={"shape": residual},
        fitted={"C_kappa": C},
        sample_count=int(xs.size),
        grid=_grid_info(xs),
        scale=max(1.0, _max_norm(v_plus)),
    )
    if hasattr(w, "decompose"):
        report.predicted["C_kappa"] = w.decompose().predicted_shift(kappa)
    logger.debug(f"shape residual kappa={kappa}: C={C!r}, residual={residual:.3e}")
    return report


def determining_residuals(dec: Decomposition, grid: np.ndarray) -> ResidualReport:
    """Q' = Q² + νI；P' − ½{Q,P} + ϰI = 0；{R,P} + λI = 0；R² = ω²I"""
    xs = np.asarray(grid, dtype=float)
    Q, dQ, P, dP = dec.Q(xs), dec.dQ(xs), dec.P(xs), dec.dP(xs)
    R = dec.R
    n = R.shape[0]
    eye = np.eye(n)

    riccati = dQ - Q @ Q
    nu = _fit_identity(riccati)

    linear = dP - 0.5 * (Q @ P + P @ Q)
    varkappa = -_fit_identity(linear)

    anti = R[None, :, :] @ P + P @ R[None, :, :]
    lam = -_fit_identity(anti)

    r2 = R @ R
    omega2 = float(np.trace(r2).real / n)

    return ResidualReport(
        residuals={
            "riccati": _max_norm(riccati - nu * eye),
            "linear": _max_norm(linear + varkappa * eye),
            "anticommutator": _max_norm(anti + lam * eye),
            "r_square": float(np.linalg.norm(r2 - omega2 * eye)),
        },
        fitted={"nu": nu, "varkappa": varkappa, "lambda_anticomm": lam, "omega_squared": omega2},
        sample_count=int(xs.size),
        grid=_grid_info(xs),
        predicted={"nu": dec.nu, "varkappa": dec.varkappa, "omega_squared": dec.omega ** 2},
    )


@dataclass(frozen=True)
class BlockField:
    """分块矩阵函数及其导数（均为网格向量化）"""

    value: MatrixField
    derivative: MatrixField


def block_residuals(
    A: BlockField,
    B: BlockField,
    C: BlockField,
    P_hat: BlockField,
    nu: float,
    tau: float,
    mu_bar: float,
    grid: np.ndarray,
) -> ResidualReport:
    """R = ω·diag(I_n, −I_m) 下的六个分块方程"""
    xs = np.asarray(grid, dtype=float)
    a, da = A.value(xs), A.derivative(xs)
    b, db = B.value(xs), B.derivative(xs)
    c, dc = C.value(xs), C.derivative(xs)
    p, dp = P_hat.value(xs), P_hat.derivative(xs)
    n, m = a.shape[-1], c.shape[-1]
    if a.shape[-2:] != (n, n) or c.shape[-2:] != (m, m) or b.shape[-2:] != (n, m) or p.shape[-2:] != (n, m):
        raise DimensionError(
            f"inconsistent blocks: A{a.shape[-2:]}, B{b.shape[-2:]}, C{c.shape[-2:]}, P{p.shape[-2:]}"
        )

    def h(x: np.ndarray) -> np.ndarray:
        return np.conj(np.swapaxes(x, -1, -2))

    In, Im = np.eye(n), np.eye(m)
    residuals = {
        "A": _max_norm(da - (a @ a + b @ h(b) + nu * In)),
        "C": _max_norm(dc - (c @ c + h(b) @ b + nu * Im)),
        "B": _max_norm(db - (a @ b + b @ c)),
        "P": _max_norm(dp - 0.5 * (a @ p + p @ c)),
        "AB": _max_norm(2 * tau * a + b @ h(p) + p @ h(b) - 2 * mu_bar * In),
        "CB": _max_norm(-2 * tau * c + h(b) @ p + h(p) @ b - 2 * mu_bar * Im),
    }
    return ResidualReport(
        residuals=residuals,
        fitted={"nu": nu, "tau": tau, "mu_bar": mu_bar},
        sample_count=int(xs.size),
        grid=_grid_info(xs),
    )


def split_blocks(spec: SuperpotentialSpec, n: int) -> Tuple[BlockField, BlockField, BlockField, BlockField]:
    """按 R = ω·diag(I_n, −I_m) 拆出 A, B, C, P̂"""
    dec = spec.decompose()
    R = dec.R
    dim = R.shape[0]
    if not 0 < n < dim:
        raise DimensionError(f"block split n={n} invalid for dimension {dim}")
    omega = R[0, 0].real
    expected = omega * np.diag([1.0] * n + [-1.0] * (dim - n))
    if not np.allclose(R, expected, atol=1e-12):
        raise ParameterGuardError([f"R is not of the form omega*diag(I_{n}, -I_{dim - n})"])

    def block(field_fn: MatrixField, rows: slice, cols: slice) -> MatrixField:
        return lambda x: field_fn(x)[:, rows, cols]

    top, bottom = slice(0, n), slice(n, dim)
    A = BlockField(block(dec.Q, top, top), block(dec.dQ, top, top))
    B = BlockField(block(dec.Q, top, bottom), block(dec.dQ, top, bottom))
    C = BlockField(block(dec.Q, bottom, bottom), block(dec.dQ, bottom, bottom))
    P_hat = BlockField(block(dec.P, top, bottom), block(dec.dP, top, bottom))
    return A, B, C, P_hat


def verify_spec(
    spec: SuperpotentialSpec,
    kappa: float,
    count: int = DEFAULT_COUNT,
    margin: float = DEFAULT_MARGIN,
    span: float = DEFAULT_SPAN,
) -> Dict[str, ResidualReport]:
    """一次跑完形状不变性与确定方程"""
    xs = sample_grid(spec, count, margin, span)
    return {
        "shape": shape_residual(spec, kappa, xs),
        "determining": determining_residuals(spec.decompose(), xs),
    }
