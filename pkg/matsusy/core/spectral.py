"""有限差分多通道哈密顿量 H = −d²/dx² + V(x) 与最低能级求解

未知量只取内部节点（Dirichlet 端点），按点优先排列：索引 i·n + a。
带状存储下带宽为 n。最低 k 个本征值由 LAPACK 带状求解器给出（不形成正交变换矩阵），
本征向量用稀疏 LU 分解的平移逆迭代求得，内存与时间都与 N 成线性。
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eig_banded, eigh_tridiagonal
from scipy.sparse.linalg import splu

from matsusy.core.errors import DimensionError, MemoryBudgetError, NumericalError, ParameterGuardError
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

PotentialFn = Callable[[np.ndarray], np.ndarray]
# picks `levels` indices out of a solved report
LevelSelector = Callable[["SpectrumReport", int], Sequence[int]]

MIN_POINTS = 64
DEFAULT_MEMORY_MB = 512.0
RESIDUAL_TOL = 1e-8
SHIFT_REL = 1e-10
INVERSE_ITERATIONS = 3


@dataclass(frozen=True)
class GridSpec:
    """均匀网格 [xmin, xmax]，N 个内部节点，h = (xmax − xmin)/(N + 1)"""

    xmin: float
    xmax: float
    N: int
    channels: int = 1

    def __post_init__(self):
        errors = []
        if not (np.isfinite(self.xmin) and np.isfinite(self.xmax)) or not self.xmin < self.xmax:
            errors.append(f"grid needs finite xmin < xmax, got ({self.xmin!r}, {self.xmax!r})")
        if self.N < MIN_POINTS:
            errors.append(f"grid needs N >= {MIN_POINTS}, got {self.N}")
        if self.channels < 1:
            errors.append(f"channels must be positive, got {self.channels}")
        if errors:
            raise ParameterGuardError(errors)

    @property
    def h(self) -> float:
        return (self.xmax - self.xmin) / (self.N + 1)

    @property
    def size(self) -> int:
        return self.N * self.channels

    def points(self) -> np.ndarray:
        return self.xmin + self.h * np.arange(1, self.N + 1)

    def refined(self) -> "GridSpec":
        """步长减半：N → 2N + 1"""
        return GridSpec(self.xmin, self.xmax, 2 * self.N + 1, self.channels)

    def with_channels(self, channels: int) -> "GridSpec":
        return GridSpec(self.xmin, self.xmax, self.N, channels)

    def to_dict(self) -> Dict[str, Any]:
        return {"xmin": self.xmin, "xmax": self.xmax, "N": self.N, "channels": self.channels, "h": self.h}


@dataclass(frozen=True, eq=False)
class GridFunction:
    """网格上的多分量函数，values 形状 (N, channels)"""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim == 1 and self.grid.channels == 1:
            vals = vals[:, None]
        if vals.shape != (self.grid.N, self.grid.channels):
            raise DimensionError(f"values shape {vals.shape} does not match grid ({self.grid.N}, {self.grid.channels})")
        object.__setattr__(self, "values", vals)

    def inner(self, other: "GridFunction") -> complex:
        """⟨self, other⟩ = h·Σ conj(self)·other"""
        if other.grid != self.grid:
            raise DimensionError("grid functions live on different grids")
        return complex(self.grid.h * np.vdot(self.values, other.values))

    def norm(self) -> float:
        return float(np.sqrt(self.grid.h) * np.linalg.norm(self.values))

    def normalized(self) -> "GridFunction":
        nrm = self.norm()
        if not nrm > 0 or not np.isfinite(nrm):
            raise NumericalError(f"cannot normalize grid function with norm {nrm!r}")
        return GridFunction(self.grid, self.values / nrm)

    def csv_rows(self) -> List[List[float]]:
        """列：x, re_a, im_a（每个通道）"""
        xs = self.grid.points()
        rows = []
        for i, x in enumerate(xs):
            row = [float(x)]
            for a in range(self.grid.channels):
                row.extend([float(self.values[i, a].real), float(self.values[i, a].imag)])
            rows.append(row)
        return rows

    def csv_header(self) -> List[str]:
        header = ["x"]
        for a in range(self.grid.channels):
            header.extend([f"re_{a}", f"im_{a}"])
        return header


@dataclass
class SpectrumReport:
    eigenvalues: List[float]
    grid: GridSpec
    residuals: List[float] = field(default_factory=list)
    extrapolated: Optional[List[float]] = None
    coarse: Optional[List[float]] = None
    analytic_gaps: Optional[List[float]] = None
    deviations: Optional[List[float]] = None
    threshold: Optional[float] = None
    bound_count: Optional[int] = None
    passed: Optional[bool] = None
    notes: List[str] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)
    states: List[GridFunction] = field(default_factory=list, repr=False)

    @property
    def best(self) -> List[float]:
        """外推值优先"""
        return list(self.extrapolated) if self.extrapolated is not None else list(self.eigenvalues)

    @property
    def gaps(self) -> List[float]:
        levels = self.best
        return [e - levels[0] for e in levels] if levels else []

    def level_rows(self) -> List[List[Any]]:
        rows = []
        for k, e in enumerate(self.eigenvalues):
            rows.append([
                k,
                e,
                self.extrapolated[k] if self.extrapolated is not None else None,
                self.gaps[k],
                self.analytic_gaps[k] if self.analytic_gaps is not None and k < len(self.analytic_gaps) else None,
                self.deviations[k] if self.deviations is not None and k < len(self.deviations) else None,
            ])
        return rows

    @staticmethod
    def level_header() -> List[str]:
        return ["level", "eigenvalue", "extrapolated", "gap", "analytic_gap", "deviation"]

    def states_csv(self) -> Dict[str, Any]:
        """所有态合并成一张表：x, re_k_a, im_k_a"""
        header = ["x"]
        columns = [self.grid.points()]
        for k, state in enumerate(self.states):
            for a in range(self.grid.channels):
                header.extend([f"re_{k}_{a}", f"im_{k}_{a}"])
                columns.extend([state.values[:, a].real, state.values[:, a].imag])
        rows = np.column_stack(columns).tolist() if self.states else []
        return {"header": header, "rows": rows}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "grid": self.grid.to_dict(),
            "eigenvalues": list(self.eigenvalues),
            "coarse": self.coarse,
            "extrapolated": self.extrapolated,
            "gaps": self.gaps,
            "analytic_gaps": self.analytic_gaps,
            "deviations": self.deviations,
            "residuals": list(self.residuals),
            "threshold": self.threshold,
            "bound_count": self.bound_count,
            "passed": self.passed,
            "notes": list(self.notes),
            **self.extra,
        }


def _sample_potential(potential: PotentialFn, grid: GridSpec) -> np.ndarray:
    xs = grid.points()
    V = np.asarray(potential(xs), dtype=complex)
    n = grid.channels
    if V.ndim == 1 and n == 1:
        V = V[:, None, None]
    if V.shape != (grid.N, n, n):
        raise DimensionError(f"potential returned shape {V.shape}, expected ({grid.N}, {n}, {n})")
    bad = ~np.isfinite(V).all(axis=(1, 2))
    if np.any(bad):
        x_bad = float(xs[np.argmax(bad)])
        raise NumericalError(f"potential is not finite at x={x_bad!r}")
    return 0.5 * (V + np.conj(np.swapaxes(V, 1, 2)))


def assemble(potential: PotentialFn, grid: GridSpec) -> sp.csr_matrix:
    """(−1, 2, −1)/h² 差分 ⊗ I_n 加上逐点 V(x_i) 块"""
    V = _sample_potential(potential, grid)
    N, n, h = grid.N, grid.channels, grid.h
    stencil = sp.diags(
        [-np.ones(N - 1), 2 * np.ones(N), -np.ones(N - 1)], offsets=[-1, 0, 1], shape=(N, N)
    ) / h ** 2
    kinetic = sp.kron(stencil, sp.identity(n), format="csr")
    blocks = sp.bsr_matrix((V, np.arange(N), np.arange(N + 1)), shape=(N * n, N * n))
    H = (kinetic + blocks).tocsr()
    if not np.any(H.data.imag):
        H = sp.csr_matrix((H.data.real, H.indices, H.indptr), shape=H.shape)
    return H


def _banded_lower(H: sp.spmatrix, kd: int) -> np.ndarray:
    coo = sp.tril(H, format="coo")
    offset = coo.row - coo.col
    if np.any(offset > kd):
        raise DimensionError(f"matrix bandwidth exceeds {kd}")
    ab = np.zeros((kd + 1, H.shape[0]), dtype=H.dtype)
    ab[offset, coo.col] = coo.data
    return ab


def _inverse_iteration(H: sp.spmatrix, w: np.ndarray, seed: int = 0) -> np.ndarray:
    """已知本征值下用平移逆迭代求本征向量，列与 w 对应

    平移量取 w_j + δ，δ 远小于能级间距但不低于舍入水平 eps·‖H‖；
    每次迭代后对已求得的向量做正交化，简并与近简并能级因此给出正交的基。
    """
    size = H.shape[0]
    scale = float(abs(H).max()) if H.nnz else 1.0
    floor = 10 * np.finfo(float).eps * scale
    dtype = np.complex128 if np.iscomplexobj(H.data) else np.float64
    identity = sp.identity(size, dtype=dtype, format="csc")
    Hc = sp.csc_matrix(H, dtype=dtype)
    rng = np.random.default_rng(seed)
    vectors = np.zeros((size, len(w)), dtype=dtype)
    for j, lam in enumerate(w):
        delta = max(SHIFT_REL * max(1.0, abs(lam)), floor)
        try:
            lu = splu(Hc - (lam + delta) * identity, permc_spec="NATURAL")
        except RuntimeError as e:
            raise NumericalError(f"shifted factorization failed at E={lam!r}: {e}") from e
        vec = rng.standard_normal(size).astype(dtype)
        for _ in range(INVERSE_ITERATIONS):
            vec = lu.solve(vec)
            if j:
                done = vectors[:, :j]
                vec = vec - done @ (np.conj(done.T) @ vec)
            nrm = np.linalg.norm(vec)
            if not nrm > 0 or not np.isfinite(nrm):
                raise NumericalError(f"inverse iteration lost level {j} (E={lam!r})")
            vec = vec / nrm
        vectors[:, j] = vec
    return vectors


def estimate_memory_mb(size: int, bandwidth: int, k: int, complex_valued: bool = True) -> float:
    item = 16 if complex_valued else 8
    return item * size * (bandwidth + 1 + k + 8) / 2 ** 20


def eigen_lowest(
    H: sp.spmatrix,
    k: int,
    grid: GridSpec,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> SpectrumReport:
    """最低 k 个本征值与本征函数（网格归一化）"""
    size = H.shape[0]
    if H.shape != (grid.size, grid.size):
        raise DimensionError(f"matrix shape {H.shape} does not match grid size {grid.size}")
    if not 1 <= k <= size:
        raise ParameterGuardError([f"requested {k} levels, matrix size is {size}"])
    kd = grid.channels
    is_complex = np.iscomplexobj(H.data)
    needed = estimate_memory_mb(size, kd, k, is_complex)
    if needed > memory_limit_mb:
        raise MemoryBudgetError(
            f"grid needs about {needed:.1f} MB, limit is {memory_limit_mb:.1f} MB; reduce N or the level count"
        )

    if kd == 1 and not is_complex:
        d = H.diagonal().real
        e = H.diagonal(-1).real
        w, v = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))
    else:
        w = eig_banded(
            _banded_lower(H, kd), lower=True, eigvals_only=True, select="i", select_range=(0, k - 1)
        )
        v = _inverse_iteration(H, w)

    residuals = []
    states = []
    for j in range(k):
        vec = v[:, j]
        res = float(np.linalg.norm(H @ vec - w[j] * vec) / np.linalg.norm(vec))
        residuals.append(res)
        pivot = vec[np.argmax(np.abs(vec))]
        vec = vec * (abs(pivot) / pivot) / np.sqrt(grid.h)
        states.append(GridFunction(grid, vec.reshape(grid.N, grid.channels)))

    scale = float(abs(H).max()) if H.nnz else 1.0
    limit = max(RESIDUAL_TOL, 1e3 * np.finfo(float).eps * scale)
    worst = max(residuals)
    if not worst <= limit:
        raise NumericalError(f"eigen residual {worst:.3e} exceeds {limit:.3e}")
    logger.debug(f"lowest {k} eigenvalues on N={grid.N}: {[float(x) for x in w]}")
    return SpectrumReport(eigenvalues=[float(x) for x in w], grid=grid, residuals=residuals, states=states)


def solve(
    potential: PotentialFn,
    grid: GridSpec,
    levels: int,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> SpectrumReport:
    return eigen_lowest(assemble(potential, grid), levels, grid, memory_limit_mb)


def select_levels(report: SpectrumReport, indices: Sequence[int]) -> SpectrumReport:
    """按求解器序号挑出若干能级，序号记在 extra["solver_levels"]"""
    indices = [int(i) for i in indices]
    count = len(report.eigenvalues)
    bad = [i for i in indices if not 0 <= i < count]
    if bad:
        raise ParameterGuardError([f"level index {i} outside 0..{count - 1}" for i in bad])
    return SpectrumReport(
        eigenvalues=[report.eigenvalues[i] for i in indices],
        grid=report.grid,
        residuals=[report.residuals[i] for i in indices] if report.residuals else [],
        notes=list(report.notes),
        extra={**report.extra, "solver_levels": indices},
        states=[report.states[i] for i in indices] if report.states else [],
    )


def refine_and_extrapolate(
    potential: PotentialFn,
    grid: GridSpec,
    levels: int,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
    select: Optional[LevelSelector] = None,
    candidates: Optional[int] = None,
) -> SpectrumReport:
    """两套网格（h 与 h/2）求解，E_ext = (4E_{h/2} − E_h)/3

    给定 select 时每套网格先求 candidates 个最低能级，再由 select 各自挑出 levels 个，
    外推只在挑出的能级之间进行。
    """
    if select is None:
        coarse = solve(potential, grid, levels, memory_limit_mb)
        fine = solve(potential, grid.refined(), levels, memory_limit_mb)
    else:
        fine_grid = grid.refined()
        pool = max(levels, candidates or levels)
        coarse_all = solve(potential, grid, min(pool, grid.size), memory_limit_mb)
        fine_all = solve(potential, fine_grid, min(pool, fine_grid.size), memory_limit_mb)
        coarse = select_levels(coarse_all, select(coarse_all, levels))
        fine = select_levels(fine_all, select(fine_all, levels))
        fine.extra["coarse_solver_levels"] = coarse.extra["solver_levels"]
        fine.notes.extend(n for n in coarse.notes if n not in fine.notes)
    extrapolated = [(4 * ef - ec) / 3 for ec, ef in zip(coarse.eigenvalues, fine.eigenvalues)]
    fine.coarse = list(coarse.eigenvalues)
    fine.extrapolated = extrapolated
    fine.extra["coarse_grid"] = grid.to_dict()
    return fine


@dataclass
class ConvergenceStudy:
    N: List[int]
    h: List[float]
    eigenvalues: List[List[float]]
    errors: Optional[List[List[float]]]
    ratios: List[List[float]]

    def to_dict(self) -> Dict[str, Any]:
        return {"N": self.N, "h": self.h, "eigenvalues": self.eigenvalues, "errors": self.errors, "ratios": self.ratios}


def convergence_study(
    potential: PotentialFn,
    grid: GridSpec,
    levels: int,
    refinements: int = 3,
    reference: Optional[Sequence[float]] = None,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> ConvergenceStudy:
    """逐次减半步长的原始本征值与误差比

    给定 reference 时比值为 err_h/err_{h/2}；否则用相邻差分之比，
    二阶格式下两者都应接近 4。
    """
    if refinements < 2 or (reference is None and refinements < 3):
        raise ParameterGuardError(["convergence study needs at least 3 grids (2 with a reference)"])
    grids = [grid]
    for _ in range(refinements - 1):
        grids.append(grids[-1].refined())
    values = [solve(potential, g, levels, memory_limit_mb).eigenvalues for g in grids]
    E = np.array(values)

    errors = None
    if reference is not None:
        ref = np.asarray(reference[:levels], dtype=float)
        err = np.abs(E - ref[None, :])
        errors = err.tolist()
        ratios = (err[:-1] / err[1:]).tolist()
    else:
        diffs = np.abs(np.diff(E, axis=0))
        ratios = (diffs[:-1] / diffs[1:]).tolist()
    return ConvergenceStudy(
        N=[g.N for g in grids],
        h=[g.h for g in grids],
        eigenvalues=values,
        errors=errors,
        ratios=ratios,
    )


def continuum_threshold(potential: PotentialFn, grid: GridSpec, sides: Sequence[str] = ("right",)) -> float:
    """V 在无穷远一侧网格端点处的最小本征值"""
    ends = {"left": grid.xmin + grid.h, "right": grid.xmax - grid.h}
    unknown = [s for s in sides if s not in ends]
    if unknown:
        raise ParameterGuardError([f"unknown side: {s}" for s in unknown])
    if not sides:
        return float("inf")
    xs = np.array([ends[s] for s in sides])
    V = np.asarray(potential(xs), dtype=complex).reshape(len(sides), grid.channels, grid.channels)
    V = 0.5 * (V + np.conj(np.swapaxes(V, 1, 2)))
    return float(min(np.linalg.eigvalsh(v)[0] for v in V))


def bound_state_count(report: SpectrumReport, threshold: float) -> int:
    return int(sum(1 for e in report.best if e < threshold))
