"""标量 Riccati 解目录 q' = α(q² + ν) 及常数本征基矩阵 Riccati 解"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad

from matsusy.core.errors import DomainError, NumericalError, ParameterGuardError
from matsusy.core.matrix_core import hermitian_eigen, hermitize, is_hermitian
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

POLE_TOL = 1e-12
KIND_TAGS = ("zero", "inverse", "tan", "tanh", "coth", "const_neg")


@dataclass(frozen=True)
class RiccatiKind:
    """Riccati 解的分支：tag + (λ, c, α)"""

    tag: str
    lam: float = 1.0
    c: float = 0.0
    alpha: float = 1.0

    def __post_init__(self):
        errors = []
        if self.tag not in KIND_TAGS:
            errors.append(f"unknown Riccati kind: {self.tag}")
        if self.alpha == 0:
            errors.append("alpha must be nonzero")
        if self.tag in ("tan", "tanh", "coth", "const_neg") and not self.lam > 0:
            errors.append(f"lambda must be positive for {self.tag}, got {self.lam}")
        if errors:
            raise ParameterGuardError(errors)

    @property
    def nu(self) -> float:
        if self.tag in ("zero", "inverse"):
            return 0.0
        ratio = (self.lam / self.alpha) ** 2
        return ratio if self.tag == "tan" else -ratio

    def poles(self) -> Tuple[float, ...]:
        """实轴上的奇点（tan 的周期极点除外）"""
        if self.tag == "inverse":
            return (-self.c / self.alpha,)
        if self.tag == "coth":
            return (-self.c / self.lam,)
        return ()

    def principal_interval(self) -> Tuple[float, float]:
        """自身的主连通分支"""
        if self.tag == "tan":
            k = np.round(self.c / np.pi)
            lo = (-np.pi / 2 + k * np.pi - self.c) / self.lam
            hi = (np.pi / 2 + k * np.pi - self.c) / self.lam
            return (float(lo), float(hi))
        p = self.poles()
        if p:
            return (p[0], np.inf)
        return (-np.inf, np.inf)

    def to_dict(self):
        return {"tag": self.tag, "lambda": self.lam, "c": self.c, "alpha": self.alpha}


def _denominator(kind: RiccatiKind, x: np.ndarray) -> Optional[np.ndarray]:
    if kind.tag == "inverse":
        return kind.alpha * x + kind.c
    if kind.tag == "tan":
        return np.cos(kind.lam * x + kind.c)
    if kind.tag == "coth":
        return np.sinh(kind.lam * x + kind.c)
    return None


def _check_poles(kind: RiccatiKind, x: np.ndarray) -> Optional[np.ndarray]:
    den = _denominator(kind, x)
    if den is not None:
        bad = np.abs(den) < POLE_TOL
        if np.any(bad):
            x_bad = float(np.atleast_1d(x)[np.argmax(np.atleast_1d(bad))])
            raise DomainError(f"{kind.tag} branch has a pole at x={x_bad!r}", x=x_bad)
    return den


def _wrap(x: ArrayLike, values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(x) == 0 else values


def q_eval(kind: RiccatiKind, x: ArrayLike) -> ArrayLike:
    """q(x)"""
    xa = np.asarray(x, dtype=float)
    den = _check_poles(kind, xa)
    s = kind.lam / kind.alpha
    if kind.tag == "zero":
        out = np.zeros_like(xa)
    elif kind.tag == "inverse":
        out = -1.0 / den
    elif kind.tag == "tan":
        out = s * np.sin(kind.lam * xa + kind.c) / den
    elif kind.tag == "tanh":
        out = -s * np.tanh(kind.lam * xa + kind.c)
    elif kind.tag == "coth":
        out = -s * np.cosh(kind.lam * xa + kind.c) / den
    else:
        out = np.full_like(xa, -s)
    return _wrap(x, out)


def q_prime(kind: RiccatiKind, x: ArrayLike) -> ArrayLike:
    """闭式导数 q'(x)"""
    xa = np.asarray(x, dtype=float)
    den = _check_poles(kind, xa)
    s = kind.lam / kind.alpha
    if kind.tag in ("zero", "const_neg"):
        out = np.zeros_like(xa)
    elif kind.tag == "inverse":
        out = kind.alpha / den ** 2
    elif kind.tag == "tan":
        out = s * kind.lam / den ** 2
    elif kind.tag == "tanh":
        out = -s * kind.lam / np.cosh(kind.lam * xa + kind.c) ** 2
    else:
        out = s * kind.lam / den ** 2
    return _wrap(x, out)


def q_antiderivative(kind: RiccatiKind, x: ArrayLike) -> ArrayLike:
    """∫q dx，取绝对值对数使 exp(α∫q) 在所在连通分支上为正"""
    xa = np.asarray(x, dtype=float)
    den = _check_poles(kind, xa)
    a = kind.alpha
    if kind.tag == "zero":
        out = np.zeros_like(xa)
    elif kind.tag in ("inverse", "tan", "coth"):
        out = -np.log(np.abs(den)) / a
    elif kind.tag == "tanh":
        u = np.abs(kind.lam * xa + kind.c)
        # log cosh without overflow
        out = -(u + np.log1p(np.exp(-2 * u)) - np.log(2.0)) / a
    else:
        out = -(kind.lam / a) * xa
    return _wrap(x, out)


def q_residual(kind: RiccatiKind, x: ArrayLike, q_value: Optional[ArrayLike] = None) -> ArrayLike:
    """|q' − α(q² + ν)|，可传入替代的 q 值做反例检测"""
    q = q_eval(kind, x) if q_value is None else q_value
    res = np.abs(np.asarray(q_prime(kind, x)) - kind.alpha * (np.asarray(q) ** 2 + kind.nu))
    return _wrap(x, res)


@dataclass
class MatrixRiccatiSolution:
    """Q(x) = M(x) + q(x)I，M⁻¹ = ρI + θC，C 为常数厄米矩阵"""

    base: RiccatiKind
    C: np.ndarray
    x0: Optional[float] = None
    rho0: float = 1.0
    _eigvals: np.ndarray = field(init=False, repr=False)
    _eigvecs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.C = np.asarray(self.C, dtype=complex)
        if not is_hermitian(self.C, 1e-10):
            raise ParameterGuardError(["C must be hermitian"])
        self.C = hermitize(self.C)
        if self.x0 is None:
            self.x0 = _default_anchor(self.base)
        self._eigvals, self._eigvecs = hermitian_eigen(self.C)

    def F(self, x: float) -> float:
        """F(x) = exp(2α(∫q(x) − ∫q(x₀)))"""
        a = self.base.alpha
        return float(np.exp(2 * a * (q_antiderivative(self.base, x) - q_antiderivative(self.base, self.x0))))

    def theta(self, x: float) -> float:
        return 1.0 / self.F(x)

    def rho(self, x: float) -> float:
        integral, _ = quad(self.F, self.x0, x, epsabs=1e-13, epsrel=1e-13, limit=200)
        return (self.rho0 - self.base.alpha * integral) / self.F(x)

    def evaluate(self, x: float) -> np.ndarray:
        rho, theta = self.rho(x), self.theta(x)
        denom = rho + theta * self._eigvals
        if np.any(np.abs(denom) < POLE_TOL):
            raise NumericalError(f"M^-1 is singular at x={x!r}")
        v = self._eigvecs
        m = (v * (1.0 / denom)) @ v.conj().T
        return hermitize(m) + q_eval(self.base, x) * np.eye(self.C.shape[0])

    @property
    def nu(self) -> float:
        return self.base.nu


def _default_anchor(kind: RiccatiKind) -> float:
    lo, hi = kind.principal_interval()
    if np.isfinite(lo) and np.isfinite(hi):
        return 0.5 * (lo + hi)
    if np.isfinite(lo):
        return lo + 1.0
    return 0.0


def matrix_riccati_solve(
    base: RiccatiKind,
    C: np.ndarray,
    x: float,
    x0: Optional[float] = None,
    rho0: float = 1.0,
) -> np.ndarray:
    """在 x 处求 Q(x)"""
    return MatrixRiccatiSolution(base, C, x0=x0, rho0=rho0).evaluate(x)
