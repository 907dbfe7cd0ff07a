"""超势族目录

所有族统一为 W(κ, x) = κQ(x) + P(x) + R/κ，其中
  Q = diag(q_a)，q_a 取自 Riccati 目录；
  P 的非对角元 P_ab = amp·exp(½(A_a + A_b))，A_a = ∫q_a；
  P 的对角元 p_a = amp·exp(A_a) + 特解（ϰ ≠ 0 时）；
  R 为常数厄米矩阵（可为零）。
这样 W' = κQ' + P' 可以闭式求出：
  P'_ab = ½(q_a + q_b)P_ab，p_a' = q_a·p_a − ϰ。

W1..W17 为 2×2 族，T1..T7 为自旋 1 的 3×3 族，GEN 为任意维构造器。
"""

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from matsusy.core.errors import DimensionError, DomainError, ParameterGuardError
from matsusy.core.matrix_core import is_hermitian, pauli, spin1
from matsusy.core.riccati import RiccatiKind, q_antiderivative, q_eval, q_prime
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

Interval = Tuple[float, float]
MatrixField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Coupling:
    """P[a, b] = amplitude·exp(½(A_a + A_b))，P[b, a] 取共轭"""

    a: int
    b: int
    amplitude: complex


@dataclass(frozen=True)
class DiagonalTerm:
    """p_a 的齐次部分 amplitude·exp(A_a)"""

    channel: int
    amplitude: float


@dataclass(frozen=True, eq=False)
class FamilyStructure:
    kinds: Tuple[RiccatiKind, ...]
    couplings: Tuple[Coupling, ...] = ()
    diagonal: Tuple[DiagonalTerm, ...] = ()
    varkappa: float = 0.0
    R: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return len(self.kinds)


@dataclass
class ParamSet:
    """族参数（各族只使用其中一部分）"""

    lam: Optional[float] = None
    mu: Optional[float] = None
    mu1: Optional[float] = None
    mu2: Optional[float] = None
    mu3: Optional[float] = None
    c: Optional[float] = None
    c1: Optional[float] = None
    c2: Optional[float] = None
    omega: Optional[float] = None
    r2: Optional[float] = None
    r3: Optional[float] = None
    nu: Optional[float] = None
    tau: Optional[float] = None
    delta: Optional[float] = None

    def to_dict(self) -> Dict[str, float]:
        """只保留已设置的参数"""
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ParamSet":
        names = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ParameterGuardError([f"unknown parameter: {k}" for k in unknown])
        return cls(**{k: (None if v is None else float(v)) for k, v in data.items()})

    @staticmethod
    def names() -> List[str]:
        return [f.name for f in fields(ParamSet)]


@dataclass(frozen=True, eq=False)
class Decomposition:
    """W = κQ + P + R/κ 的分解与常数 ν, ϰ, ω"""

    Q: MatrixField
    dQ: MatrixField
    P: MatrixField
    dP: MatrixField
    R: np.ndarray
    nu: float
    varkappa: float
    omega: float
    lambda_anticomm: float = 0.0

    @property
    def dim(self) -> int:
        return self.R.shape[0]

    def reassemble(self, kappa: float, x: np.ndarray) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        return kappa * self.Q(xs) + self.P(xs) + self.R / kappa

    def predicted_shift(self, kappa: float) -> float:
        """C_κ = (2κ+1)ν − 2ϰ + ω²(1/κ² − 1/(κ+1)²) − λ/(κ(κ+1))"""
        shift = (2 * kappa + 1) * self.nu - 2 * self.varkappa
        if self.omega != 0 or self.lambda_anticomm != 0:
            shift += self.omega ** 2 * (1 / kappa ** 2 - 1 / (kappa + 1) ** 2)
            shift -= self.lambda_anticomm / (kappa * (kappa + 1))
        return float(shift)


@dataclass(frozen=True, eq=False)
class SuperpotentialSpec:
    """可求值的超势：族标签 + 已解析参数 + 结构"""

    family: str
    params: Dict[str, float]
    structure: FamilyStructure
    domain: Tuple[Interval, ...]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.structure.dim

    @property
    def principal(self) -> Interval:
        return self.domain[0]

    @property
    def has_R(self) -> bool:
        R = self.structure.R
        return R is not None and bool(np.any(R != 0))

    def contains(self, x: np.ndarray) -> bool:
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.principal
        return bool(np.all((xs > lo) & (xs < hi)))

    def _check_domain(self, xs: np.ndarray):
        lo, hi = self.principal
        bad = ~((xs > lo) & (xs < hi))
        if np.any(bad):
            x_bad = float(xs[np.argmax(bad)])
            raise DomainError(f"x={x_bad!r} outside domain ({lo!r}, {hi!r}) of {self.family}", x=x_bad)

    def _components(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """逐点求 q, q', P, P'，返回形状 (npts, n) 与 (npts, n, n)"""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        self._check_domain(xs)
        st = self.structure
        n, npts = st.dim, xs.size
        q = np.empty((npts, n))
        qp = np.empty((npts, n))
        A = np.empty((npts, n))
        for a, kind in enumerate(st.kinds):
            q[:, a] = q_eval(kind, xs)
            qp[:, a] = q_prime(kind, xs)
            A[:, a] = q_antiderivative(kind, xs)

        P = np.zeros((npts, n, n), dtype=complex)
        dP = np.zeros((npts, n, n), dtype=complex)
        for cp in st.couplings:
            e = cp.amplitude * np.exp(0.5 * (A[:, cp.a] + A[:, cp.b]))
            de = 0.5 * (q[:, cp.a] + q[:, cp.b]) * e
            P[:, cp.a, cp.b] += e
            P[:, cp.b, cp.a] += np.conj(e)
            dP[:, cp.a, cp.b] += de
            dP[:, cp.b, cp.a] += np.conj(de)

        diag = np.zeros((npts, n))
        active = set()
        for term in st.diagonal:
            diag[:, term.channel] += term.amplitude * np.exp(A[:, term.channel])
            active.add(term.channel)
        if st.varkappa != 0:
            for a, kind in enumerate(st.kinds):
                diag[:, a] += _particular(kind, st.varkappa, xs)
                active.add(a)
        for a in sorted(active):
            P[:, a, a] += diag[:, a]
            dP[:, a, a] += q[:, a] * diag[:, a] - st.varkappa
        return q, qp, P, dP

    def _R_over(self, kappa: float) -> np.ndarray:
        if not self.has_R:
            return np.zeros((self.dim, self.dim), dtype=complex)
        if kappa == 0:
            raise ParameterGuardError([f"kappa must be nonzero for {self.family} (R/kappa term)"])
        return self.structure.R / kappa

    def values(self, kappa: float, x: np.ndarray) -> np.ndarray:
        """W(κ, x) 于网格 (npts, n, n)"""
        q, _, P, _ = self._components(x)
        W = P + self._R_over(kappa)
        idx = np.arange(self.dim)
        W[:, idx, idx] += kappa * q
        return W

    def derivatives(self, kappa: float, x: np.ndarray) -> np.ndarray:
        """W'(κ, x) 于网格 (npts, n, n)"""
        _, qp, _, dP = self._components(x)
        self._R_over(kappa)
        idx = np.arange(self.dim)
        dW = dP.copy()
        dW[:, idx, idx] += kappa * qp
        return dW

    def value(self, kappa: float, x: float) -> np.ndarray:
        return self.values(kappa, np.array([x]))[0]

    def derivative(self, kappa: float, x: float) -> np.ndarray:
        return self.derivatives(kappa, np.array([x]))[0]

    def potentials(self, kappa: float, x: np.ndarray, convention: str = "minus") -> np.ndarray:
        """V = W² ∓ W'（minus 为 V⁻，plus 为 V⁺）"""
        W = self.values(kappa, x)
        dW = self.derivatives(kappa, x)
        sign = _convention_sign(convention)
        return W @ W + sign * dW

    def decompose(self) -> Decomposition:
        """拆分为 Q, P, R 与 ν, ϰ, ω"""
        st = self.structure
        n = st.dim
        idx = np.arange(n)

        def Q(x: np.ndarray) -> np.ndarray:
            q, _, _, _ = self._components(x)
            out = np.zeros((q.shape[0], n, n), dtype=complex)
            out[:, idx, idx] = q
            return out

        def dQ(x: np.ndarray) -> np.ndarray:
            _, qp, _, _ = self._components(x)
            out = np.zeros((qp.shape[0], n, n), dtype=complex)
            out[:, idx, idx] = qp
            return out

        def P(x: np.ndarray) -> np.ndarray:
            return self._components(x)[2]

        def dP(x: np.ndarray) -> np.ndarray:
            return self._components(x)[3]

        R = st.R if st.R is not None else np.zeros((n, n), dtype=complex)
        nus = {round(k.nu, 12) for k in st.kinds}
        omega = float(np.sqrt(max(np.max(np.linalg.eigvalsh(R @ R)), 0.0))) if self.has_R else 0.0
        return Decomposition(
            Q=Q, dQ=dQ, P=P, dP=dP, R=R,
            nu=float(st.kinds[0].nu) if len(nus) == 1 else float("nan"),
            varkappa=st.varkappa,
            omega=omega,
        )

    def describe(self) -> Dict[str, Any]:
        info = FAMILIES.get(self.family)
        return {
            "family": self.family,
            "dim": self.dim,
            "summary": info.summary if info else self.metadata.get("summary", ""),
            "params": dict(self.params),
            "domain": [list(iv) for iv in self.domain],
            "kinds": [k.to_dict() for k in self.structure.kinds],
        }


def _convention_sign(convention: str) -> int:
    if convention == "minus":
        return -1
    if convention == "plus":
        return 1
    raise ValueError(f"convention must be 'minus' or 'plus', got {convention!r}")


def _particular(kind: RiccatiKind, varkappa: float, x: np.ndarray) -> np.ndarray:
    """p' = q·p − ϰ 的特解（仅 zero/inverse 分支存在多项式特解）"""
    if kind.tag == "zero":
        return -varkappa * x
    if kind.tag == "inverse":
        a = kind.alpha
        return -varkappa / (a + 1) * (a * x + kind.c)
    raise ParameterGuardError([f"varkappa != 0 requires zero or inverse channels, got {kind.tag}"])


def domain_of(kinds: Sequence[RiccatiKind]) -> Tuple[Interval, ...]:
    """主连通分支：tan 族取含 0 的区间；有极点时取 (最大极点, ∞)；否则全直线"""
    lo, hi = -np.inf, np.inf
    poles: List[float] = []
    for kind in kinds:
        if kind.tag == "tan":
            a, b = kind.principal_interval()
            lo, hi = max(lo, a), min(hi, b)
        poles.extend(kind.poles())
    if poles:
        lo = max(lo, max(poles))
    if not lo < hi:
        raise ParameterGuardError([f"empty domain ({lo!r}, {hi!r})"])
    return ((float(lo), float(hi)),)


# ---------------------------------------------------------------------------
# 2×2 族


def _R_pauli(p: ParamSet, errors: List[str]) -> np.ndarray:
    """R = r₃σ₃ + r₂σ₂，约束 r₂² + r₃² = ω²"""
    omega = p.omega
    if p.r2 is None and p.r3 is None:
        r2, r3 = 0.0, (omega or 0.0)
    else:
        r2, r3 = p.r2 or 0.0, p.r3 or 0.0
        if omega is not None and abs(r2 ** 2 + r3 ** 2 - omega ** 2) > 1e-12 * max(1.0, omega ** 2):
            errors.append(f"r2^2 + r3^2 must equal omega^2 (got {r2 ** 2 + r3 ** 2!r} vs {omega ** 2!r})")
    p.r2, p.r3 = r2, r3
    p.omega = float(np.hypot(r2, r3)) if omega is None else abs(omega)
    return r3 * pauli(3) + r2 * pauli(2)


def _lam(p: ParamSet, errors: List[str]) -> float:
    if p.lam is None:
        p.lam = 1.0
    if not p.lam > 0:
        errors.append(f"lambda must be positive, got {p.lam!r}")
    return p.lam


def _defaults(p: ParamSet, **values: float):
    for name, value in values.items():
        if getattr(p, name) is None:
            setattr(p, name, value)


def _two_channel(
    k0: RiccatiKind,
    k1: RiccatiKind,
    amp: complex,
    R: Optional[np.ndarray] = None,
    diagonal: Tuple[DiagonalTerm, ...] = (),
    varkappa: float = 0.0,
) -> FamilyStructure:
    couplings = (Coupling(0, 1, amp),) if amp != 0 else ()
    return FamilyStructure(kinds=(k0, k1), couplings=couplings, diagonal=diagonal, varkappa=varkappa, R=R)


def _hyperbolic_pair(tag0: str, tag1: str, sign: float) -> Callable[[ParamSet, List[str]], FamilyStructure]:
    """W1..W4：λ(±κ(σ₊f(λx+c) + σ₋g(λx−c)) + μσ₁√(…) + R/κ)"""

    def build(p: ParamSet, errors: List[str]) -> FamilyStructure:
        lam = _lam(p, errors)
        _defaults(p, c=0.0, mu=0.0)
        R = _R_pauli(p, errors)
        if errors:
            return None
        return _two_channel(
            RiccatiKind(tag0, lam, p.c), RiccatiKind(tag1, lam, -p.c), sign * lam * p.mu, R=lam * R,
        )

    return build


def _exp_pair(tag0: str) -> Callable[[ParamSet, List[str]], FamilyStructure]:
    """W5, W6：λ(−κ(σ₊f(λx) + σ₋) + μσ₁√(f̃(λx)e^{−λx}) + R/κ)"""

    def build(p: ParamSet, errors: List[str]) -> FamilyStructure:
        lam = _lam(p, errors)
        _defaults(p, mu=0.0)
        R = _R_pauli(p, errors)
        if errors:
            return None
        return _two_channel(RiccatiKind(tag0, lam, 0.0), RiccatiKind("const_neg", lam), lam * p.mu, R=lam * R)

    return build


def _build_w7(p: ParamSet, errors: List[str]) -> FamilyStructure:
    _defaults(p, c=0.0, mu=0.0)
    R = _R_pauli(p, errors)
    if errors:
        return None
    return _two_channel(RiccatiKind("inverse", c=p.c), RiccatiKind("inverse", c=-p.c), p.mu, R=R)


def _build_w8(p: ParamSet, errors: List[str]) -> FamilyStructure:
    _defaults(p, mu=0.0)
    R = _R_pauli(p, errors)
    if errors:
        return None
    return _two_channel(RiccatiKind("inverse"), RiccatiKind("zero"), p.mu, R=R)


def _build_w9(p: ParamSet, errors: List[str]) -> FamilyStructure:
    lam = _lam(p, errors)
    _defaults(p, mu=0.0, omega=0.0)
    if errors:
        return None
    k = RiccatiKind("const_neg", lam)
    return _two_channel(k, k, lam * p.mu, R=-lam * p.omega * pauli(3))


def _hyperbolic_free(tag0: str, tag1: str, sign: float) -> Callable[[ParamSet, List[str]], FamilyStructure]:
    """W10..W13：±λ(σ₊(κf + ν·e^{A₊}) + σ₋(κg + τ·e^{A₋}) + μσ₁√(…))，R = 0"""

    def build(p: ParamSet, errors: List[str]) -> FamilyStructure:
        lam = _lam(p, errors)
        _defaults(p, c=0.0, mu=0.0, nu=0.0, tau=0.0)
        if errors:
            return None
        diagonal = (DiagonalTerm(0, sign * lam * p.nu), DiagonalTerm(1, sign * lam * p.tau))
        return _two_channel(
            RiccatiKind(tag0, lam, p.c), RiccatiKind(tag1, lam, -p.c), sign * lam * p.mu, diagonal=diagonal,
        )

    return build


def _exp_free(tag0: str) -> Callable[[ParamSet, List[str]], FamilyStructure]:
    """W14, W15：−λ(σ₊(κf(λx) + ν·e^{A₊}) + σ₋κ + μσ₁√(f̃e^{−λx}))"""

    def build(p: ParamSet, errors: List[str]) -> FamilyStructure:
        lam = _lam(p, errors)
        _defaults(p, mu=0.0, nu=0.0)
        if errors:
            return None
        return _two_channel(
            RiccatiKind(tag0, lam), RiccatiKind("const_neg", lam), -lam * p.mu,
            diagonal=(DiagonalTerm(0, -lam * p.nu),),
        )

    return build


def _build_w16(p: ParamSet, errors: List[str]) -> FamilyStructure:
    _defaults(p, c=0.0, mu=0.0, delta=0.0, omega=0.0)
    return _two_channel(
        RiccatiKind("inverse", c=p.c), RiccatiKind("inverse", c=-p.c), p.mu,
        diagonal=(DiagonalTerm(0, -p.delta), DiagonalTerm(1, p.delta)), varkappa=p.omega,
    )


def _build_w17(p: ParamSet, errors: List[str]) -> FamilyStructure:
    _defaults(p, c=0.0, mu=0.0, omega=0.0)
    return _two_channel(
        RiccatiKind("inverse"), RiccatiKind("zero"), -p.mu,
        diagonal=(DiagonalTerm(0, -0.5), DiagonalTerm(1, p.c)), varkappa=-p.omega / 2,
    )


# ---------------------------------------------------------------------------
# 3×3 自旋 1 族（笛卡尔基）。S₁ 连接通道 (1,2)，S₂ 连接 (0,2)，S₃ 连接 (0,1)。

_S_CHANNELS = {1: (1, 2), 2: (0, 2), 3: (0, 1)}


def _spin_coupling(generator: int, mu: float) -> Coupling:
    a, b = _S_CHANNELS[generator]
    return Coupling(a, b, spin1(generator)[a, b] * mu)


def _inv(c: Optional[float]) -> RiccatiKind:
    return RiccatiKind("inverse", c=c) if c is not None else RiccatiKind("zero")


def _spin_family(
    channel_shifts: Callable[[ParamSet], Tuple[Optional[float], ...]],
    terms: Sequence[Tuple[int, str]],
    with_R: bool,
    defaults: Dict[str, float],
) -> Callable[[ParamSet, List[str]], FamilyStructure]:
    """channel_shifts 给出各通道 −1/(x+c) 的 c（None 表示 q = 0）"""

    def build(p: ParamSet, errors: List[str]) -> FamilyStructure:
        _defaults(p, **defaults)
        if with_R:
            _defaults(p, omega=0.0)
        kinds = tuple(_inv(c) for c in channel_shifts(p))
        couplings = tuple(_spin_coupling(g, getattr(p, name)) for g, name in terms if getattr(p, name) != 0)
        R = p.omega * (2 * spin1(3) @ spin1(3) - np.eye(3)) if with_R else None
        return FamilyStructure(kinds=kinds, couplings=couplings, R=R)

    return build


@dataclass(frozen=True)
class FamilyInfo:
    tag: str
    dim: int
    summary: str
    parameters: Tuple[str, ...]
    builder: Callable[[ParamSet, List[str]], Optional[FamilyStructure]]
    domain_rule: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tag": self.tag,
            "dim": self.dim,
            "summary": self.summary,
            "parameters": list(self.parameters),
            "domain_rule": self.domain_rule,
        }


_R_PARAMS = ("omega", "r2", "r3")
_TAN_RULE = "interval between adjacent tan poles containing 0"
_RADIAL_RULE = "(largest singular point, +inf)"
_LINE_RULE = "(-inf, +inf)"

FAMILIES: Dict[str, FamilyInfo] = {
    info.tag: info
    for info in [
        FamilyInfo("W1", 2, "λ[κ(σ₊tan(λx+c) + σ₋tan(λx−c)) + μσ₁√(sec·sec) + R/κ]",
                   ("lam", "c", "mu") + _R_PARAMS, _hyperbolic_pair("tan", "tan", 1.0), _TAN_RULE),
        FamilyInfo("W2", 2, "λ[−κ(σ₊coth(λx+c) + σ₋coth(λx−c)) + μσ₁√(csch·csch) + R/κ]",
                   ("lam", "c", "mu") + _R_PARAMS, _hyperbolic_pair("coth", "coth", 1.0), _RADIAL_RULE),
        FamilyInfo("W3", 2, "λ[−κ(σ₊tanh(λx+c) + σ₋tanh(λx−c)) + μσ₁√(sech·sech) + R/κ]",
                   ("lam", "c", "mu") + _R_PARAMS, _hyperbolic_pair("tanh", "tanh", 1.0), _LINE_RULE),
        FamilyInfo("W4", 2, "λ[−κ(σ₊tanh(λx+c) + σ₋coth(λx−c)) + μσ₁√(sech(λx+c)csch(λx−c)) + R/κ]",
                   ("lam", "c", "mu") + _R_PARAMS, _hyperbolic_pair("tanh", "coth", 1.0), _RADIAL_RULE),
        FamilyInfo("W5", 2, "λ[−κ(σ₊tanh λx + σ₋) + μσ₁√(sech λx·e^{−λx}) + R/κ]",
                   ("lam", "mu") + _R_PARAMS, _exp_pair("tanh"), _LINE_RULE),
        FamilyInfo("W6", 2, "λ[−κ(σ₊coth λx + σ₋) + μσ₁√(csch λx·e^{−λx}) + R/κ]",
                   ("lam", "mu") + _R_PARAMS, _exp_pair("coth"), _RADIAL_RULE),
        FamilyInfo("W7", 2, "−κ(σ₊/(x+c) + σ₋/(x−c)) + μσ₁/√(x²−c²) + R/κ",
                   ("c", "mu") + _R_PARAMS, _build_w7, _RADIAL_RULE),
        FamilyInfo("W8", 2, "−κσ₊/x + μσ₁/√x + R/κ",
                   ("mu",) + _R_PARAMS, _build_w8, _RADIAL_RULE),
        FamilyInfo("W9", 2, "λ[−κI + μe^{−λx}σ₁ − (ω/κ)σ₃]",
                   ("lam", "mu", "omega"), _build_w9, _LINE_RULE),
        FamilyInfo("W10", 2, "λ[σ₊(κtan(λx+c) + ν sec(λx+c)) + σ₋(κtan(λx−c) + τ sec(λx−c)) + μσ₁√(sec·sec)]",
                   ("lam", "c", "nu", "tau", "mu"), _hyperbolic_free("tan", "tan", 1.0), _TAN_RULE),
        FamilyInfo("W11", 2, "−λ[σ₊(κcoth(λx+c) + ν csch(λx+c)) + σ₋(κcoth(λx−c) + τ csch(λx−c)) + μσ₁√(csch·csch)]",
                   ("lam", "c", "nu", "tau", "mu"), _hyperbolic_free("coth", "coth", -1.0), _RADIAL_RULE),
        FamilyInfo("W12", 2, "−λ[σ₊(κtanh(λx+c) + ν sech(λx+c)) + σ₋(κcoth(λx−c) + τ csch(λx−c)) + μσ₁√(sech(λx+c)csch(λx−c))]",
                   ("lam", "c", "nu", "tau", "mu"), _hyperbolic_free("tanh", "coth", -1.0), _RADIAL_RULE),
        FamilyInfo("W13", 2, "−λ[σ₊(κtanh(λx+c) + ν sech(λx+c)) + σ₋(κtanh(λx−c) + τ sech(λx−c)) + μσ₁√(sech·sech)]",
                   ("lam", "c", "nu", "tau", "mu"), _hyperbolic_free("tanh", "tanh", -1.0), _LINE_RULE),
        FamilyInfo("W14", 2, "−λ[σ₊(κtanh λx + ν sech λx) + σ₋κ + μσ₁√(sech λx·e^{−λx})]",
                   ("lam", "nu", "mu"), _exp_free("tanh"), _LINE_RULE),
        FamilyInfo("W15", 2, "−λ[σ₊(κcoth λx + ν csch λx) + σ₋κ + μσ₁√(csch λx·e^{−λx})]",
                   ("lam", "nu", "mu"), _exp_free("coth"), _RADIAL_RULE),
        FamilyInfo("W16", 2, "−σ₊((κ+δ)/(x+c) + ω(x+c)/2) − σ₋((κ−δ)/(x−c) + ω(x−c)/2) + μσ₁/√(x²−c²)",
                   ("c", "delta", "omega", "mu"), _build_w16, _RADIAL_RULE),
        FamilyInfo("W17", 2, "−σ₊((2κ+1)/(2x) − ωx/4) + σ₋(ωx/2 + c) − μσ₁/√x",
                   ("omega", "mu", "c"), _build_w17, _RADIAL_RULE),
        FamilyInfo("T1", 3, "(S₂²−1)κ/(x+c1) + (S₁²−1)κ/(x+c2) + (S₃²−1)κ/x + S₁μ1/√(x(x+c1)) + S₂μ2/√(x(x+c2)) + (ω/κ)(2S₃²−1)",
                   ("c1", "c2", "mu1", "mu2", "omega"),
                   _spin_family(lambda p: (p.c2, p.c1, 0.0), [(1, "mu1"), (2, "mu2")], True,
                                {"c1": 0.0, "c2": 0.0, "mu1": 0.0, "mu2": 0.0}), _RADIAL_RULE),
        FamilyInfo("T2", 3, "(S₂²−1)κ/x + (S₁²−1)κ/(x+c) + S₁μ1/√x + S₂μ2/√(x+c) + (ω/κ)(2S₃²−1)",
                   ("c", "mu1", "mu2", "omega"),
                   _spin_family(lambda p: (p.c, 0.0, None), [(1, "mu1"), (2, "mu2")], True,
                                {"c": 0.0, "mu1": 0.0, "mu2": 0.0}), _RADIAL_RULE),
        FamilyInfo("T3", 3, "(S₁²−1)κ/(x+c) + (S₃²−1)κ/x + S₁μ1/√x + S₂μ2/√(x(x+c)) + (ω/κ)(2S₃²−1)",
                   ("c", "mu1", "mu2", "omega"),
                   _spin_family(lambda p: (p.c, None, 0.0), [(1, "mu1"), (2, "mu2")], True,
                                {"c": 0.0, "mu1": 0.0, "mu2": 0.0}), _RADIAL_RULE),
        FamilyInfo("T4", 3, "(S₁²−1)κ/x + S₁c + S₂μ/√x + (ω/κ)(2S₃²−1)",
                   ("c", "mu", "omega"),
                   _spin_family(lambda p: (0.0, None, None), [(1, "c"), (2, "mu")], True,
                                {"c": 0.0, "mu": 0.0}), _RADIAL_RULE),
        FamilyInfo("T5", 3, "(S₂²−1)κ/(x+c1) + (S₁²−1)κ/(x+c2) + (S₃²−1)κ/x + S₁μ1/√(x(x+c1)) + S₂μ2/√(x(x+c2)) + S₃μ3/√((x+c1)(x+c2))",
                   ("c1", "c2", "mu1", "mu2", "mu3"),
                   _spin_family(lambda p: (p.c2, p.c1, 0.0), [(1, "mu1"), (2, "mu2"), (3, "mu3")], False,
                                {"c1": 0.0, "c2": 0.0, "mu1": 0.0, "mu2": 0.0, "mu3": 0.0}), _RADIAL_RULE),
        FamilyInfo("T6", 3, "(S₂²−1)κ/x + (S₁²−1)κ/(x+c) + S₁μ1/√x + S₂μ2/√(x+c) + S₃μ3/√(x(x+c))",
                   ("c", "mu1", "mu2", "mu3"),
                   _spin_family(lambda p: (p.c, 0.0, None), [(1, "mu1"), (2, "mu2"), (3, "mu3")], False,
                                {"c": 0.0, "mu1": 0.0, "mu2": 0.0, "mu3": 0.0}), _RADIAL_RULE),
        FamilyInfo("T7", 3, "(S₁²−1)κ/x + S₁c + S₃μ1/√x + S₂μ2/√x",
                   ("c", "mu1", "mu2"),
                   _spin_family(lambda p: (0.0, None, None), [(1, "c"), (3, "mu1"), (2, "mu2")], False,
                                {"c": 0.0, "mu1": 0.0, "mu2": 0.0}), _RADIAL_RULE),
    ]
}


def family_tags(dim: Optional[int] = None) -> List[str]:
    return [tag for tag, info in FAMILIES.items() if dim is None or info.dim == dim]


def make_spec(family: str, params: Optional[Dict[str, Any]] = None, **kwargs: Any) -> SuperpotentialSpec:
    """按族标签和参数构造 SuperpotentialSpec，收集所有被违反的约束后统一报错"""
    if family not in FAMILIES:
        raise ParameterGuardError([f"unknown family: {family} (expected one of {', '.join(FAMILIES)})"])
    info = FAMILIES[family]
    merged = dict(params or {})
    merged.update(kwargs)
    p = ParamSet.from_dict(merged)
    unused = sorted(set(p.to_dict()) - set(info.parameters))
    if unused:
        logger.warning(f"{family} ignores parameters: {', '.join(unused)}")
        for name in unused:
            setattr(p, name, None)
    errors: List[str] = []
    structure = info.builder(p, errors)
    if errors or structure is None:
        raise ParameterGuardError(errors or [f"invalid parameters for {family}"])
    resolved = {k: v for k, v in p.to_dict().items() if k in info.parameters}
    return SuperpotentialSpec(family=family, params=resolved, structure=structure, domain=domain_of(structure.kinds))


def eval_W(spec: SuperpotentialSpec, kappa: float, x: float) -> np.ndarray:
    """W(κ, x)"""
    return spec.value(kappa, x)


def eval_W_prime(spec: SuperpotentialSpec, kappa: float, x: float) -> np.ndarray:
    """W'(κ, x)，闭式"""
    return spec.derivative(kappa, x)


def decompose(spec: SuperpotentialSpec) -> Decomposition:
    return spec.decompose()


def domain(spec: SuperpotentialSpec) -> List[Interval]:
    return list(spec.domain)


def is_scalar_q(spec: SuperpotentialSpec, x: np.ndarray) -> float:
    """max‖Q − (trQ/n)I‖，Q 与单位阵成比例时为 0"""
    Q = spec.decompose().Q(np.atleast_1d(np.asarray(x, dtype=float)))
    n = spec.dim
    tr = np.trace(Q, axis1=1, axis2=2) / n
    dev = Q - tr[:, None, None] * np.eye(n)
    return float(np.max(np.linalg.norm(dev, axis=(1, 2))))


def build_generic(
    n: int,
    m: int,
    kinds: Sequence[RiccatiKind],
    mu_matrix: np.ndarray,
    omega: float = 0.0,
    with_R: bool = True,
) -> SuperpotentialSpec:
    """任意维构造：W = κ·diag(q) + P + (ω/κ)·diag(I_n, −I_m)

    with_R 时 P 只在非对角块，P_ab = μ_ab·exp(½(A_a + A_b))；
    否则 P 为完整厄米矩阵，对角元 μ_aa·exp(A_a)。
    """
    errors: List[str] = []
    dim = n + m
    kinds = tuple(kinds)
    mu = np.asarray(mu_matrix, dtype=complex)
    if n < 0 or m < 0 or dim == 0:
        errors.append(f"invalid block split n={n}, m={m}")
    if len(kinds) != dim:
        errors.append(f"expected {dim} Riccati kinds, got {len(kinds)}")
    if mu.shape != (dim, dim):
        raise DimensionError(f"mu_matrix must be {dim}x{dim}, got {mu.shape}")
    if not is_hermitian(mu, 1e-12):
        errors.append("mu_matrix must be hermitian")
    nus = sorted({round(k.nu, 12) for k in kinds})
    if len(nus) > 1:
        errors.append(f"mixed nu values across channels: {nus}")
    if with_R and (np.any(mu[:n, :n] != 0) or np.any(mu[n:, n:] != 0)):
        errors.append("with R the P matrix must be off-diagonal-block only")
    if errors:
        raise ParameterGuardError(errors)

    couplings = []
    diagonal = []
    for a in range(dim):
        for b in range(a + 1, dim):
            if mu[a, b] != 0:
                couplings.append(Coupling(a, b, complex(mu[a, b])))
        if not with_R and mu[a, a] != 0:
            diagonal.append(DiagonalTerm(a, float(mu[a, a].real)))
    R = omega * np.diag([1.0] * n + [-1.0] * m).astype(complex) if with_R else None
    structure = FamilyStructure(kinds=kinds, couplings=tuple(couplings), diagonal=tuple(diagonal), R=R)
    params = {"n": float(n), "m": float(m), "omega": float(omega)}
    return SuperpotentialSpec(
        family="GEN",
        params=params,
        structure=structure,
        domain=domain_of(kinds),
        metadata={"summary": "κ·diag(q) + P + (ω/κ)diag(I_n, −I_m)" if with_R else "κ·diag(q) + P"},
    )


def catalog_document() -> Dict[str, Any]:
    """族目录（结构化文本）"""
    return {
        "families": [info.to_dict() for info in FAMILIES.values()],
        "generic": {
            "tag": "GEN",
            "summary": "κ·diag(q_1..q_N) + P + (ω/κ)diag(I_n, −I_m); kinds share one ν",
            "parameters": ["n", "m", "kinds", "mu_matrix", "omega", "with_R"],
        },
    }
