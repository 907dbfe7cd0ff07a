"""物理模型：由目录中的族经参数代入与常数幺正变换得到的矩阵势

每个模型给出：超势（族 + 代入 + U）、闭式势、解析能级间隔、
束缚态条件，以及默认的数值网格。
"""

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from matsusy.core.catalog import Decomposition, SuperpotentialSpec, make_spec
from matsusy.core.errors import DomainError, NoSuchBoundStateError, ParameterGuardError
from matsusy.core.ladder import annihilation_residual, ladder_selector
from matsusy.core.matrix_core import (
    conjugate,
    conjugate_field,
    gelfand_tsetlin_transform,
    half_turn,
    pauli,
    rotation,
    sigma_minus,
    sigma_plus,
    spin1,
)
from matsusy.core.spectral import (
    DEFAULT_MEMORY_MB,
    GridSpec,
    SpectrumReport,
    bound_state_count,
    continuum_threshold,
    refine_and_extrapolate,
)
from matsusy.core.verifier import sample_grid
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

I2 = pauli(0)
S1 = pauli(1)
S3 = pauli(3)
SP = sigma_plus()
SM = sigma_minus()
I3 = np.eye(3, dtype=complex)

DECAY_DEPTH = 30.0
# radial Dirichlet wall at lo + ε·L
RADIAL_EPSILON_RATIO = 1e-3


def _field(xs: np.ndarray, *terms: Tuple[Any, np.ndarray]) -> np.ndarray:
    """Σ coef(x)·M，coef 可为标量或与 xs 同形的数组"""
    n = terms[0][1].shape[0]
    out = np.zeros((xs.size, n, n), dtype=complex)
    for coef, mat in terms:
        out += np.broadcast_to(np.asarray(coef, dtype=float), xs.shape)[:, None, None] * mat
    return out


def _logcosh(y: np.ndarray) -> np.ndarray:
    return np.logaddexp(y, -y) - np.log(2.0)


@dataclass
class ModelParams:
    """模型参数（各模型只使用其中一部分）"""

    kappa: Optional[float] = None
    omega: Optional[float] = None
    lam: Optional[float] = None
    mu: Optional[float] = None
    c: Optional[float] = None
    m: Optional[float] = None
    j: Optional[float] = None

    def to_dict(self) -> Dict[str, float]:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ModelParams":
        names = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ParameterGuardError([f"unknown model parameter: {k}" for k in unknown])
        return cls(**{k: (None if v is None else float(v)) for k, v in data.items()})


@dataclass(frozen=True, eq=False)
class ModelSuperpotential:
    """W_model(κ, x) = U·W_family(κ, x)·U†"""

    model: str
    spec: SuperpotentialSpec
    U: np.ndarray
    kappa: float

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def principal(self) -> Tuple[float, float]:
        return self.spec.principal

    @property
    def family(self) -> str:
        return self.spec.family

    def contains(self, x: np.ndarray) -> bool:
        return self.spec.contains(x)

    def values(self, kappa: float, x: np.ndarray) -> np.ndarray:
        return conjugate_field(self.U, self.spec.values(kappa, x))

    def derivatives(self, kappa: float, x: np.ndarray) -> np.ndarray:
        return conjugate_field(self.U, self.spec.derivatives(kappa, x))

    def potentials(self, kappa: float, x: np.ndarray, convention: str = "minus") -> np.ndarray:
        W = self.values(kappa, x)
        dW = self.derivatives(kappa, x)
        if convention == "minus":
            return W @ W - dW
        if convention == "plus":
            return W @ W + dW
        raise ValueError(f"convention must be 'minus' or 'plus', got {convention!r}")

    def decompose(self) -> Decomposition:
        dec = self.spec.decompose()
        U = self.U
        return Decomposition(
            Q=lambda x: conjugate_field(U, dec.Q(x)),
            dQ=lambda x: conjugate_field(U, dec.dQ(x)),
            P=lambda x: conjugate_field(U, dec.P(x)),
            dP=lambda x: conjugate_field(U, dec.dP(x)),
            R=conjugate(U, dec.R),
            nu=dec.nu,
            varkappa=dec.varkappa,
            omega=dec.omega,
            lambda_anticomm=dec.lambda_anticomm,
        )


class PhysicalModel(ABC):
    """模型基类"""

    tag: str = ""
    family: str = ""
    summary: str = ""
    dim: int = 2
    defaults: Dict[str, float] = {}
    geometry: str = "radial"
    gap_rule: str = ""

    @property
    def threshold_sides(self) -> Tuple[str, ...]:
        return ("right",) if self.geometry == "radial" else ("left", "right")

    def resolve(self, params: Optional[Dict[str, Any]] = None) -> Dict[str, float]:
        given = ModelParams.from_dict(dict(params or {})).to_dict()
        unused = sorted(set(given) - set(self.defaults))
        if unused:
            logger.warning(f"{self.tag} ignores parameters: {', '.join(unused)}")
        p = {k: float(given.get(k, v)) for k, v in self.defaults.items()}
        errors = self.validate(p)
        if errors:
            raise ParameterGuardError(errors)
        return p

    def validate(self, p: Dict[str, float]) -> List[str]:
        return []

    def bound_errors(self, p: Dict[str, float], n: int) -> List[str]:
        """第 n 能级的束缚态条件"""
        return [] if n >= 0 else [f"level index must be >= 0, got {n}"]

    def bound_count(self, p: Dict[str, float]) -> Optional[int]:
        """束缚态个数，None 表示无穷多"""
        return None

    @abstractmethod
    def kappa(self, p: Dict[str, float]) -> float:
        ...

    @abstractmethod
    def superpotential(self, p: Dict[str, float]) -> ModelSuperpotential:
        ...

    @abstractmethod
    def potential(self, p: Dict[str, float], xs: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def gap(self, p: Dict[str, float], n: int) -> float:
        ...

    def offset(self, p: Dict[str, float]) -> float:
        """W² − W' 与闭式势之差（常数）"""
        return 0.0

    @abstractmethod
    def default_length(self, p: Dict[str, float], levels: int) -> float:
        ...

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tag": self.tag,
            "family": self.family,
            "dim": self.dim,
            "summary": self.summary,
            "parameters": dict(self.defaults),
            "geometry": self.geometry,
            "gap": self.gap_rule,
        }


def _coulomb_length(strength: float, kappa: float, levels: int) -> float:
    rate = abs(strength) / abs(kappa + max(levels, 1) - 1)
    return float(min(400.0, DECAY_DEPTH / rate)) if rate > 0 else 400.0


def _half_integer_errors(name: str, value: float, minimum: float) -> List[str]:
    errors = []
    if abs(2 * value - round(2 * value)) > 1e-12:
        errors.append(f"{name} must be an integer or half-integer, got {value!r}")
    if value < minimum:
        errors.append(f"{name} must be >= {minimum}, got {value!r}")
    return errors


class HydrogenLike(PhysicalModel):
    tag = "hydrogenlike"
    family = "W8"
    summary = "κ(κ−1)σ₊/x² + ωσ₁/x + ω²/κ²"
    defaults = {"kappa": 1.0, "omega": 1.0}
    gap_rule = "ω²/κ² − ω²/(κ+n)²"

    def validate(self, p):
        errors = []
        if not p["kappa"] > 0:
            errors.append(f"kappa must be positive, got {p['kappa']!r}")
        if p["omega"] == 0:
            errors.append("omega must be nonzero")
        return errors

    def kappa(self, p):
        return p["kappa"]

    def superpotential(self, p):
        spec = make_spec("W8", mu=0.0, r3=0.0, r2=p["omega"], omega=p["omega"])
        return ModelSuperpotential(self.tag, spec, half_turn(pauli(3), -1), p["kappa"])

    def potential(self, p, xs):
        k, w = p["kappa"], p["omega"]
        return _field(xs, (k * (k - 1) / xs ** 2, SP), (w / xs, S1), (w ** 2 / k ** 2, I2))

    def gap(self, p, n):
        k, w = p["kappa"], p["omega"]
        return w ** 2 / k ** 2 - w ** 2 / (k + n) ** 2

    def default_length(self, p, levels):
        return _coulomb_length(p["omega"], p["kappa"], levels)


def _gaussian_length(omega: float, levels: int) -> float:
    return float(np.sqrt(8 * (DECAY_DEPTH + 3 * levels) / omega))


class OscillatorA(PhysicalModel):
    tag = "oscillatorA"
    family = "W17"
    summary = (
        "σ₊((4κ²−1)/(4x²) + ω²x²/16 + μ²/x − (κ+1)ω/2) + σ₋(ω²x²/4 + μ²/x − ω/2)"
        " + σ₁(κμ/x^{3/2} − 3ωμ√x/4)"
    )
    defaults = {"kappa": 1.0, "omega": 2.0, "mu": 0.5}
    gap_rule = "nω"

    def validate(self, p):
        errors = []
        if not p["omega"] > 0:
            errors.append(f"omega must be positive, got {p['omega']!r}")
        if not p["kappa"] > -0.5:
            errors.append(f"kappa must exceed -1/2, got {p['kappa']!r}")
        return errors

    def kappa(self, p):
        return p["kappa"]

    def superpotential(self, p):
        spec = make_spec("W17", omega=p["omega"], mu=p["mu"], c=0.0)
        return ModelSuperpotential(self.tag, spec, I2.copy(), p["kappa"])

    def potential(self, p, xs):
        k, w, mu = p["kappa"], p["omega"], p["mu"]
        upper = (4 * k ** 2 - 1) / (4 * xs ** 2) + w ** 2 * xs ** 2 / 16 + mu ** 2 / xs - (k + 1) * w / 2
        lower = w ** 2 * xs ** 2 / 4 + mu ** 2 / xs - w / 2
        coupling = k * mu / xs ** 1.5 - 3 * w * mu * np.sqrt(xs) / 4
        return _field(xs, (upper, SP), (lower, SM), (coupling, S1))

    def gap(self, p, n):
        return n * p["omega"]

    def default_length(self, p, levels):
        return _gaussian_length(p["omega"], levels)


class OscillatorB(PhysicalModel):
    tag = "oscillatorB"
    family = "W16"
    summary = (
        "σ₊(κ(κ−1)/u² + ω²u²/16) + σ₋(κ(κ−1)/v² + ω²v²/16) + μ²/(x²−c²) − (2κ+1)ω/4"
        " + σ₁μx((1−2κ)/(x²−c²)^{3/2} + ω/(2√(x²−c²))), u = x+c, v = x−c"
    )
    defaults = {"kappa": 2.0, "omega": 2.0, "mu": 0.3, "c": 1.0}
    gap_rule = "nω"

    def validate(self, p):
        errors = []
        if not p["omega"] > 0:
            errors.append(f"omega must be positive, got {p['omega']!r}")
        if not p["kappa"] > 0:
            errors.append(f"kappa must be positive, got {p['kappa']!r}")
        if p["c"] < 0:
            errors.append(f"c must be >= 0, got {p['c']!r}")
        return errors

    def kappa(self, p):
        return p["kappa"]

    def superpotential(self, p):
        # frequency −ω/2 keeps the ground state normalizable and C_κ = ω
        spec = make_spec("W16", c=p["c"], mu=p["mu"], delta=0.0, omega=-p["omega"] / 2)
        return ModelSuperpotential(self.tag, spec, I2.copy(), p["kappa"])

    def potential(self, p, xs):
        k, w, mu, c = p["kappa"], p["omega"], p["mu"], p["c"]
        u, v = xs + c, xs - c
        s = u * v
        upper = k * (k - 1) / u ** 2 + w ** 2 * u ** 2 / 16
        lower = k * (k - 1) / v ** 2 + w ** 2 * v ** 2 / 16
        scalar = mu ** 2 / s - (2 * k + 1) * w / 4
        coupling = mu * xs * ((1 - 2 * k) / s ** 1.5 + w / (2 * np.sqrt(s)))
        return _field(xs, (upper, SP), (lower, SM), (scalar, I2), (coupling, S1))

    def gap(self, p, n):
        return n * p["omega"]

    def default_length(self, p, levels):
        return _gaussian_length(p["omega"], levels)


class Scarf(PhysicalModel):
    tag = "scarf"
    family = "W5"
    summary = "λ²(κ² − σ₊κ(κ−1)sech²λx − ωσ₁(tanh λx + 1) + ω²/κ²)"
    defaults = {"lam": 1.0, "kappa": -3.0, "omega": 2.0}
    geometry = "line"
    gap_rule = "λ²(ω²/κ² + κ² − ω²/(κ+n)² − (κ+n)²), bound while κ+n < 0 and (κ+n)² > ω"

    def validate(self, p):
        errors = []
        if not p["lam"] > 0:
            errors.append(f"lambda must be positive, got {p['lam']!r}")
        if p["kappa"] == 0:
            errors.append("kappa must be nonzero")
        return errors

    def bound_errors(self, p, n):
        errors = super().bound_errors(p, n)
        kn = p["kappa"] + n
        if not kn < 0:
            errors.append(f"level {n}: kappa+n = {kn!r} must be negative")
        if not kn ** 2 > p["omega"]:
            errors.append(f"level {n}: (kappa+n)^2 = {kn ** 2!r} must exceed omega = {p['omega']!r}")
        return errors

    def bound_count(self, p):
        n = 0
        while not self.bound_errors(p, n):
            n += 1
        return n

    def kappa(self, p):
        return p["kappa"]

    def superpotential(self, p):
        spec = make_spec("W5", lam=p["lam"], mu=0.0, r3=0.0, r2=p["omega"], omega=p["omega"])
        return ModelSuperpotential(self.tag, spec, half_turn(pauli(3), 1), p["kappa"])

    def potential(self, p, xs):
        lam, k, w = p["lam"], p["kappa"], p["omega"]
        y = lam * xs
        sech2 = np.exp(-2 * _logcosh(y))
        return lam ** 2 * _field(
            xs, (k ** 2 + w ** 2 / k ** 2, I2), (-k * (k - 1) * sech2, SP), (-w * (np.tanh(y) + 1), S1)
        )

    def gap(self, p, n):
        lam, k, w = p["lam"], p["kappa"], p["omega"]
        return lam ** 2 * (w ** 2 / k ** 2 + k ** 2 - w ** 2 / (k + n) ** 2 - (k + n) ** 2)

    def default_length(self, p, levels):
        lam, k, w = p["lam"], p["kappa"], p["omega"]
        last = max(0, min(levels, self.bound_count(p) or 1) - 1)
        threshold = k ** 2 + w ** 2 / k ** 2 - 2 * abs(w)
        depth = threshold - self.gap(p, last) / lam ** 2
        return float(min(200.0, max(10.0, DECAY_DEPTH / np.sqrt(max(depth, 0.01)))) / lam)


class TanhExp(PhysicalModel):
    tag = "tanhexp"
    family = "W5"
    summary = "λ²(κ² − σ₊κ(κ−1)sech²λx + μ²sech λx·e^{−λx} + σ₁μ(κ−½)e^{λx/2}sech^{3/2}λx)"
    defaults = {"lam": 1.0, "kappa": -3.0, "mu": 1.0}
    geometry = "line"
    gap_rule = "λ²(κ² − (κ+n)²), bound while κ+n < 0"

    def validate(self, p):
        errors = []
        if not p["lam"] > 0:
            errors.append(f"lambda must be positive, got {p['lam']!r}")
        if p["kappa"] == 0:
            errors.append("kappa must be nonzero")
        return errors

    def bound_errors(self, p, n):
        errors = super().bound_errors(p, n)
        if not p["kappa"] + n < 0:
            errors.append(f"level {n}: kappa+n = {p['kappa'] + n!r} must be negative")
        return errors

    def bound_count(self, p):
        return int(np.ceil(-p["kappa"])) if p["kappa"] < 0 else 0

    def kappa(self, p):
        return p["kappa"]

    def superpotential(self, p):
        spec = make_spec("W5", lam=p["lam"], mu=-p["mu"], omega=0.0)
        return ModelSuperpotential(self.tag, spec, I2.copy(), p["kappa"])

    def potential(self, p, xs):
        lam, k, mu = p["lam"], p["kappa"], p["mu"]
        y = lam * xs
        lc = _logcosh(y)
        sech2 = np.exp(-2 * lc)
        decay = np.exp(-lc - y)
        coupling = np.exp(y / 2 - 1.5 * lc)
        return lam ** 2 * _field(
            xs, (k ** 2 + mu ** 2 * decay, I2), (-k * (k - 1) * sech2, SP), (mu * (k - 0.5) * coupling, S1)
        )

    def gap(self, p, n):
        k = p["kappa"]
        return p["lam"] ** 2 * (k ** 2 - (k + n) ** 2)

    def default_length(self, p, levels):
        k = p["kappa"]
        last = max(0, min(levels, self.bound_count(p) or 1) - 1)
        depth = max(abs(k + last), 0.1)
        return float(min(200.0, max(10.0, DECAY_DEPTH / depth)) / p["lam"])


class _SpinorRadial(PhysicalModel):
    """W7（c = 0, μ = ½）经 U = (1 + iσ₂)/√2 变换：σ₁ → σ₃，σ₃ → −σ₁"""

    family = "W7"

    @abstractmethod
    def _strength(self, p) -> float:
        """R = r₃σ₃ 中的 r₃"""

    def superpotential(self, p):
        r3 = self._strength(p)
        spec = make_spec("W7", c=0.0, mu=0.5, r3=r3, r2=0.0, omega=abs(r3))
        return ModelSuperpotential(self.tag, spec, half_turn(pauli(2), 1), self.kappa(p))

    def offset(self, p):
        return self._strength(p) ** 2 / self.kappa(p) ** 2

    def gap(self, p, n):
        k = self.kappa(p)
        return self._strength(p) ** 2 * (1 / k ** 2 - 1 / (k + n) ** 2)

    def default_length(self, p, levels):
        return _coulomb_length(self._strength(p), self.kappa(p), levels)


class Spinor3D(_SpinorRadial):
    tag = "spinor3d"
    summary = "(j(j+1) + ¼ − (j+½)σ₃)/x² − ωσ₁/x"
    defaults = {"j": 0.5, "omega": 2.0}
    gap_rule = "(ω/2)²(1/κ² − 1/(κ+n)²), κ = j+1"

    def validate(self, p):
        return _half_integer_errors("j", p["j"], 0.5)

    def bound_errors(self, p, n):
        errors = super().bound_errors(p, n)
        if p["omega"] == 0:
            errors.append("omega must be nonzero for bound states")
        return errors

    def _strength(self, p):
        return -p["omega"] / 2

    def kappa(self, p):
        return p["j"] + 1

    def potential(self, p, xs):
        j, w = p["j"], p["omega"]
        return _field(xs, ((j * (j + 1) + 0.25) / xs ** 2, I2), (-(j + 0.5) / xs ** 2, S3), (-w / xs, S1))


class PSRadial(_SpinorRadial):
    tag = "ps_radial"
    summary = "m(m − σ₃)/x² + σ₁/x"
    defaults = {"m": 1.0}
    gap_rule = "¼(1/κ² − 1/(κ+n)²), κ = m+½"

    def validate(self, p):
        return _half_integer_errors("m", p["m"], 0.0)

    def bound_errors(self, p, n):
        errors = super().bound_errors(p, n)
        if not p["m"] > 0:
            errors.append(f"m must be positive for bound states, got {p['m']!r}")
        return errors

    def _strength(self, p):
        return 0.5

    def kappa(self, p):
        return p["m"] + 0.5

    def potential(self, p, xs):
        m = p["m"]
        return _field(xs, (m ** 2 / xs ** 2, I2), (-m / xs ** 2, S3), (1 / xs, S1))


class _VectorRadial(PhysicalModel):
    """T1（c₁ = c₂ = μ₂ = 0, μ₁ = 1, 频率 −ω/2）经 exp(iπS₂/2) 再转到 Gelfand-Tsetlin 基"""

    family = "T1"
    dim = 3

    @abstractmethod
    def _m(self, p) -> float:
        ...

    def kappa(self, p):
        return self._m(p) + 0.5

    def validate(self, p):
        return []

    def bound_errors(self, p, n):
        errors = super().bound_errors(p, n)
        if not self._m(p) > 0:
            errors.append(f"m must be positive for bound states, got {self._m(p)!r}")
        if p["omega"] == 0:
            errors.append("omega must be nonzero for bound states")
        return errors

    def superpotential(self, p):
        spec = make_spec("T1", c1=0.0, c2=0.0, mu1=1.0, mu2=0.0, omega=-p["omega"] / 2)
        U = gelfand_tsetlin_transform() @ rotation(spin1(2), np.pi / 2)
        return ModelSuperpotential(self.tag, spec, U, self.kappa(p))

    def gap(self, p, n):
        k = self.kappa(p)
        return (p["omega"] / 2) ** 2 * (1 / k ** 2 - 1 / (k + n) ** 2)

    def default_length(self, p, levels):
        return _coulomb_length(p["omega"] / 2, self.kappa(p), levels)

    def _gt(self) -> Tuple[np.ndarray, np.ndarray]:
        s1 = spin1(1, "gelfand_tsetlin")
        s3 = spin1(3, "gelfand_tsetlin")
        return s3, 2 * s1 @ s1 - I3


class Vector2D(_VectorRadial):
    tag = "vector2d"
    summary = "((m − S₃)² − ¼)/r² + ω(2S₁² − 1)/r + ω²/(2m+1)²  (Gelfand-Tsetlin basis)"
    defaults = {"m": 1.0, "omega": 1.0}
    gap_rule = "(ω/2)²(1/κ² − 1/(κ+n)²), κ = m+½"

    def validate(self, p):
        return _half_integer_errors("m", p["m"], 0.0)

    def _m(self, p):
        return p["m"]

    def potential(self, p, xs):
        m, w = p["m"], p["omega"]
        s3, t = self._gt()
        shifted = m * I3 - s3
        return _field(xs, (1 / xs ** 2, shifted @ shifted - 0.25 * I3), (w / xs, t), (w ** 2 / (2 * m + 1) ** 2, I3))


class Vector3D(_VectorRadial):
    tag = "vector3d"
    summary = "(j(j+1) + S₃² − (2j+1)S₃)/x² + (2S₁² − 1)ω/x  (Gelfand-Tsetlin basis)"
    defaults = {"j": 1.0, "omega": 1.0}
    gap_rule = "(ω/2)²(1/κ² − 1/(κ+n)²), κ = j+1"

    def validate(self, p):
        return _half_integer_errors("j", p["j"], 0.5)

    def _m(self, p):
        return p["j"] + 0.5

    def offset(self, p):
        return p["omega"] ** 2 / (2 * p["j"] + 2) ** 2

    def potential(self, p, xs):
        j, w = p["j"], p["omega"]
        s3, t = self._gt()
        return _field(xs, (1 / xs ** 2, j * (j + 1) * I3 + s3 @ s3 - (2 * j + 1) * s3), (w / xs, t))


MODELS: Dict[str, PhysicalModel] = {
    model.tag: model
    for model in [
        HydrogenLike(),
        OscillatorA(),
        OscillatorB(),
        Scarf(),
        TanhExp(),
        Spinor3D(),
        PSRadial(),
        Vector2D(),
        Vector3D(),
    ]
}


def get_model(model_id: str) -> PhysicalModel:
    if model_id not in MODELS:
        raise ParameterGuardError([f"unknown model: {model_id} (expected one of {', '.join(MODELS)})"])
    return MODELS[model_id]


def model_superpotential(model_id: str, params: Optional[Dict[str, Any]] = None) -> ModelSuperpotential:
    model = get_model(model_id)
    return model.superpotential(model.resolve(params))


def _model_domain(model: PhysicalModel, p: Dict[str, float]) -> Tuple[float, float]:
    return model.superpotential(p).principal


def model_potential(model_id: str, params: Optional[Dict[str, Any]], x: Any) -> np.ndarray:
    """闭式模型势；标量 x 返回 (n, n)，数组返回 (npts, n, n)"""
    model = get_model(model_id)
    p = model.resolve(params)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    lo, hi = _model_domain(model, p)
    bad = ~((xs > lo) & (xs < hi))
    if np.any(bad):
        x_bad = float(xs[np.argmax(bad)])
        raise DomainError(f"x={x_bad!r} outside domain ({lo!r}, {hi!r}) of {model_id}", x=x_bad)
    V = model.potential(p, xs)
    return V[0] if np.ndim(x) == 0 else V


def model_partner(
    model_id: str, params: Optional[Dict[str, Any]], x: Any, convention: str = "minus"
) -> np.ndarray:
    """由模型超势直接得到 W² ∓ W'"""
    ms = model_superpotential(model_id, params)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    V = ms.potentials(ms.kappa, xs, convention)
    return V[0] if np.ndim(x) == 0 else V


def model_gap_formula(model_id: str, params: Optional[Dict[str, Any]], n: int) -> float:
    model = get_model(model_id)
    p = model.resolve(params)
    errors = model.bound_errors(p, n)
    if errors:
        raise NoSuchBoundStateError([f"no such bound state for {model_id}"] + errors)
    return float(model.gap(p, n))


@dataclass
class ReductionReport:
    model: str
    family: str
    params: Dict[str, float]
    deviation: float
    offset: float
    expected_offset: float
    convention: str = "minus"
    sample_count: int = 0

    @property
    def offset_error(self) -> float:
        return abs(self.offset - self.expected_offset)

    def passed(self, tol: float) -> bool:
        return self.deviation <= tol and self.offset_error <= tol * max(1.0, abs(self.expected_offset))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "family": self.family,
            "params": dict(self.params),
            "convention": self.convention,
            "deviation": self.deviation,
            "offset": self.offset,
            "expected_offset": self.expected_offset,
            "offset_error": self.offset_error,
            "sample_count": self.sample_count,
        }


def check_reduction(
    model_id: str,
    params: Optional[Dict[str, Any]] = None,
    grid: Optional[np.ndarray] = None,
    convention: str = "minus",
) -> ReductionReport:
    """族超势代入后的 W² ∓ W' 与闭式势比较，扣除最小二乘常数后取最大逐元偏差"""
    model = get_model(model_id)
    p = model.resolve(params)
    ms = model.superpotential(p)
    xs = sample_grid(ms) if grid is None else np.asarray(grid, dtype=float)
    D = ms.potentials(ms.kappa, xs, convention) - model.potential(p, xs)
    n = ms.dim
    offset = float(np.mean(np.trace(D, axis1=1, axis2=2).real) / n)
    deviation = float(np.max(np.abs(D - offset * np.eye(n))))
    logger.debug(f"reduction {model_id}: deviation={deviation:.3e}, offset={offset!r}")
    return ReductionReport(
        model=model_id,
        family=ms.family,
        params=p,
        deviation=deviation,
        offset=offset,
        expected_offset=model.offset(p),
        convention=convention,
        sample_count=int(xs.size),
    )


def default_grid(
    model_id: str,
    params: Optional[Dict[str, Any]] = None,
    levels: int = 3,
    N: int = 2000,
    epsilon_ratio: float = RADIAL_EPSILON_RATIO,
    length: Optional[float] = None,
) -> GridSpec:
    """径向模型 [lo + ε, lo + L]，全直线模型 [−L, L]"""
    model = get_model(model_id)
    p = model.resolve(params)
    ms = model.superpotential(p)
    L = float(length) if length is not None else model.default_length(p, levels)
    if model.geometry == "radial":
        lo = ms.principal[0]
        return GridSpec(lo + epsilon_ratio * L, lo + L, N, ms.dim)
    return GridSpec(-L, L, N, ms.dim)


def model_spectrum_check(
    model_id: str,
    params: Optional[Dict[str, Any]] = None,
    levels: int = 3,
    grid: Optional[GridSpec] = None,
    gap_tol: float = 2e-3,
    annihilation_tol: float = 1e-2,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> SpectrumReport:
    """数值能级间隔（Richardson 外推）与解析间隔逐级比较"""
    model = get_model(model_id)
    p = model.resolve(params)
    count = model.bound_count(p)
    if count == 0:
        raise NoSuchBoundStateError([f"{model_id} has no bound states"] + model.bound_errors(p, 0))
    errors = model.bound_errors(p, 0)
    if errors:
        raise NoSuchBoundStateError([f"no such bound state for {model_id}"] + errors)
    if levels < 1:
        raise ParameterGuardError([f"levels must be >= 1, got {levels}"])

    ms = model.superpotential(p)
    grid = default_grid(model_id, p, levels) if grid is None else grid.with_channels(ms.dim)

    def potential(xs: np.ndarray) -> np.ndarray:
        return model.potential(p, xs)

    compared = levels if count is None else min(levels, count)
    # Dirichlet walls on singular coupled channels add levels outside the ladder
    select = ladder_selector(ms, ms.kappa, annihilation_tol, memory_limit_mb, labelled=compared)
    report = refine_and_extrapolate(
        potential, grid, levels, memory_limit_mb, select=select, candidates=ms.dim * levels + 2
    )
    if compared < levels:
        note = f"only {count} bound levels satisfy the guards; comparing the first {compared}"
        report.notes.append(note)
        logger.warning(f"{model_id}: {note}")

    analytic = [float(model.gap(p, n)) for n in range(compared)]
    numeric = report.gaps[:compared]
    report.analytic_gaps = analytic
    report.deviations = [abs(a - b) for a, b in zip(numeric, analytic)]
    report.threshold = continuum_threshold(potential, report.grid, model.threshold_sides)
    report.bound_count = bound_state_count(report, report.threshold)
    report.passed = all(d <= gap_tol for d in report.deviations)

    residual = annihilation_residual(ms, ms.kappa, report.states[0])
    report.extra.update({
        "model": model_id,
        "family": ms.family,
        "params": p,
        "kappa": ms.kappa,
        "guard_count": count,
        "annihilation_residual": residual,
        "gap_tol": gap_tol,
    })
    if residual >= annihilation_tol:
        note = (
            f"lowest state is not annihilated by a- (residual {residual:.3e}); "
            "this realization breaks supersymmetry"
        )
        report.notes.append(note)
        logger.warning(f"{model_id}: {note}")
    if not report.passed:
        logger.warning(f"{model_id}: gap deviations {report.deviations} exceed {gap_tol}")
    return report


def models_document() -> Dict[str, Any]:
    return {"models": [model.to_dict() for model in MODELS.values()]}
