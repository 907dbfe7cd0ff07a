"""离散化的升降算子 a⁻ = ∂ + W，a⁺ = −∂ + W 与超对称梯子

ψ_n(κ) = a⁺_κ a⁺_{κ+1} ⋯ a⁺_{κ+n−1} ψ₀(κ+n)，基态取自本征求解器。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from matsusy.core.errors import BrokenSupersymmetryError, DimensionError, NumericalError, ParameterGuardError
from matsusy.core.spectral import (
    DEFAULT_MEMORY_MB,
    GridFunction,
    GridSpec,
    LevelSelector,
    SpectrumReport,
    assemble,
    solve,
)
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

ANNIHILATION_TOL = 1e-2
LABEL_OVERLAP = 0.9


def _check_channels(w: Any, psi: GridFunction):
    if w.dim != psi.grid.channels:
        raise DimensionError(f"superpotential is {w.dim}x{w.dim}, grid function has {psi.grid.channels} channels")


def _derivative(psi: GridFunction) -> np.ndarray:
    """二阶中心差分，两端补 Dirichlet 零值"""
    padded = np.pad(psi.values, ((1, 1), (0, 0)))
    return np.gradient(padded, psi.grid.h, axis=0, edge_order=2)[1:-1]


def _apply_W(w: Any, kappa: float, psi: GridFunction) -> np.ndarray:
    W = w.values(kappa, psi.grid.points())
    return np.einsum("pij,pj->pi", W, psi.values)


def apply_aminus(w: Any, kappa: float, psi: GridFunction) -> GridFunction:
    """a⁻ψ = ψ' + Wψ"""
    _check_channels(w, psi)
    return GridFunction(psi.grid, _derivative(psi) + _apply_W(w, kappa, psi))


def apply_aplus(w: Any, kappa: float, psi: GridFunction) -> GridFunction:
    """a⁺ψ = −ψ' + Wψ"""
    _check_channels(w, psi)
    return GridFunction(psi.grid, -_derivative(psi) + _apply_W(w, kappa, psi))


def apply_hamiltonian(w: Any, kappa: float, psi: GridFunction, shift: float = 0.0) -> GridFunction:
    """(−∂² + W² − W' + shift)ψ，三点差分"""
    _check_channels(w, psi)
    padded = np.pad(psi.values, ((1, 1), (0, 0)))
    h = psi.grid.h
    lap = (padded[2:] - 2 * padded[1:-1] + padded[:-2]) / h ** 2
    V = w.potentials(kappa, psi.grid.points(), "minus")
    return GridFunction(psi.grid, -lap + np.einsum("pij,pj->pi", V, psi.values) + shift * psi.values)


def interior_norm(psi: GridFunction, trim: int = 1) -> float:
    """去掉两端 trim 个点后的范数"""
    vals = psi.values[trim:-trim] if trim > 0 else psi.values
    return float(np.sqrt(psi.grid.h) * np.linalg.norm(vals))


def overlap(a: GridFunction, b: GridFunction) -> float:
    """|⟨a,b⟩|/(‖a‖‖b‖)"""
    if a.grid != b.grid:
        raise DimensionError("grid functions live on different grids")
    na, nb = a.norm(), b.norm()
    if na == 0 or nb == 0:
        raise NumericalError("overlap of a zero-norm grid function")
    return float(min(1.0, abs(a.inner(b)) / (na * nb)))


def annihilation_residual(w: Any, kappa: float, psi: GridFunction) -> float:
    """‖a⁻ψ‖/‖ψ‖，不计端点"""
    denom = interior_norm(psi)
    if denom == 0:
        raise NumericalError("annihilation residual of a zero-norm grid function")
    return interior_norm(apply_aminus(w, kappa, psi)) / denom


def hamiltonian_of(w: Any, kappa: float):
    def potential(xs: np.ndarray) -> np.ndarray:
        return w.potentials(kappa, xs, "minus")

    return potential


def energy(w: Any, kappa: float, psi: GridFunction) -> float:
    """用组装好的 H_κ 求 ψᴴHψ/ψᴴψ"""
    H = assemble(hamiltonian_of(w, kappa), psi.grid)
    v = psi.values.reshape(-1)
    return float((np.vdot(v, H @ v) / np.vdot(v, v)).real)


def ground_state(
    w: Any,
    kappa: float,
    grid: GridSpec,
    tol: float = ANNIHILATION_TOL,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> Dict[str, Any]:
    """本征求解器给出的 H_κ 最低态，并检查它被 a⁻ 湮灭"""
    report = solve(hamiltonian_of(w, kappa), grid.with_channels(w.dim), 1, memory_limit_mb)
    psi = report.states[0]
    residual = annihilation_residual(w, kappa, psi)
    if not residual < tol:
        raise BrokenSupersymmetryError(
            f"no normalizable ground state at kappa={kappa!r}: annihilation residual {residual:.3e} >= {tol:.1e}",
            kappa=kappa,
            residual=residual,
        )
    return {"state": psi, "energy": report.eigenvalues[0], "residual": residual}


def ladder_state(
    w: Any,
    kappa: float,
    n: int,
    grid: GridSpec,
    tol: float = ANNIHILATION_TOL,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> GridFunction:
    """ψ_n(κ) = a⁺_κ ⋯ a⁺_{κ+n−1} ψ₀(κ+n)，归一化"""
    if n < 0:
        raise ParameterGuardError([f"ladder index must be >= 0, got {n}"])
    psi = ground_state(w, kappa + n, grid, tol, memory_limit_mb)["state"]
    for j in range(n - 1, -1, -1):
        psi = apply_aplus(w, kappa + j, psi)
    return psi.normalized()


def label_levels(
    w: Any,
    kappa: float,
    report: SpectrumReport,
    levels: int,
    tol: float = ANNIHILATION_TOL,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
    min_overlap: float = LABEL_OVERLAP,
) -> List[int]:
    """把梯子态 ψ_0 … ψ_{levels−1} 对到 report 中重叠最大的求解器能级

    奇异耦合通道的 Dirichlet 实现会多出不属于梯子的能级，按能量排序会把它们混进来。
    返回值第 n 项是 ψ_n 对应的求解器序号；任何一级重叠低于 min_overlap 时抛 NumericalError。
    """
    if levels < 1:
        raise ParameterGuardError([f"levels must be >= 1, got {levels}"])
    if len(report.states) < levels:
        raise ParameterGuardError([f"report holds {len(report.states)} states, {levels} requested"])
    chain = build_chain(w, kappa, levels - 1, report.grid, tol, memory_limit_mb)
    labels: List[int] = []
    for n, psi in enumerate(chain.states):
        scores = [overlap(psi, state) if j not in labels else -1.0 for j, state in enumerate(report.states)]
        best = int(np.argmax(scores))
        if scores[best] < min_overlap:
            raise NumericalError(
                f"ladder state {n} matches no solver level (best overlap {scores[best]:.3f} at level {best})"
            )
        labels.append(best)
    logger.debug(f"ladder labels at kappa={kappa!r}: {labels}")
    return labels


def ladder_selector(
    w: Any,
    kappa: float,
    tol: float = ANNIHILATION_TOL,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
    labelled: Optional[int] = None,
) -> LevelSelector:
    """refine_and_extrapolate 用的能级挑选器

    前 labelled 个能级按梯子态重叠挑选，其余按能量补齐；
    梯子建不起来时（超对称破缺等）退回能量顺序并在 report.notes 里记一条。
    """

    def select(report: SpectrumReport, levels: int) -> List[int]:
        count = levels if labelled is None else max(0, min(levels, labelled))
        labels: List[int] = []
        if count:
            try:
                labels = label_levels(w, kappa, report, count, tol, memory_limit_mb)
            except NumericalError as e:
                note = "ladder labelling unavailable; levels taken in energy order"
                if note not in report.notes:
                    report.notes.append(note)
                logger.warning(f"{note}: {e}")
                return list(range(levels))
        rest = [j for j in range(len(report.eigenvalues)) if j not in labels]
        skipped = [j for j in rest if j < max(labels, default=-1)]
        if skipped:
            note = f"solver levels {skipped} are not ladder states and were left out"
            if note not in report.notes:
                report.notes.append(note)
        return labels + rest[: levels - len(labels)]

    return select


@dataclass
class LadderChain:
    """κ, κ+1, …, κ+n 各自的基态与重建出的激发态"""

    w: Any
    kappa: float
    length: int
    grid: GridSpec
    ground_states: List[GridFunction] = field(default_factory=list)
    ground_energies: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    states: List[GridFunction] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kappa": self.kappa,
            "length": self.length,
            "grid": self.grid.to_dict(),
            "ground_energies": list(self.ground_energies),
            "annihilation_residuals": list(self.residuals),
        }


def build_chain(
    w: Any,
    kappa: float,
    n: int,
    grid: GridSpec,
    tol: float = ANNIHILATION_TOL,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> LadderChain:
    if n < 0:
        raise ParameterGuardError([f"ladder index must be >= 0, got {n}"])
    grid = grid.with_channels(w.dim)
    chain = LadderChain(w=w, kappa=kappa, length=n, grid=grid)
    for k in range(n + 1):
        gs = ground_state(w, kappa + k, grid, tol, memory_limit_mb)
        chain.ground_states.append(gs["state"].normalized())
        chain.ground_energies.append(gs["energy"])
        chain.residuals.append(gs["residual"])
        psi = gs["state"]
        for j in range(k - 1, -1, -1):
            psi = apply_aplus(w, kappa + j, psi)
        chain.states.append(psi.normalized())
    return chain


def intertwining_residual(
    w: Any,
    kappa: float,
    psi: GridFunction,
    C: float,
    trim: Optional[int] = None,
) -> float:
    """‖a⁻_κ H_κ ψ − (H_{κ+1} + C) a⁻_κ ψ‖，相对两项中较大者，两端各去掉 trim 个点"""
    trim = max(2, psi.grid.N // 50) if trim is None else trim
    lhs = apply_aminus(w, kappa, apply_hamiltonian(w, kappa, psi))
    rhs = apply_hamiltonian(w, kappa + 1, apply_aminus(w, kappa, psi), shift=C)
    diff = GridFunction(psi.grid, lhs.values - rhs.values)
    scale = max(interior_norm(lhs, trim), interior_norm(rhs, trim))
    if scale == 0:
        return 0.0
    return interior_norm(diff, trim) / scale


def ladder_report(
    w: Any,
    kappa: float,
    n: int,
    grid: GridSpec,
    tol: float = ANNIHILATION_TOL,
    energy_tol: float = 2e-3,
    min_overlap: float = 0.999,
    memory_limit_mb: float = DEFAULT_MEMORY_MB,
) -> Dict[str, Any]:
    """逐级比较梯子态与本征求解器的态：重叠、能量、湮灭残差

    每一级对到重叠最大的求解器能级（solver_level），不在梯子上的多余能级不参与比较。
    """
    chain = build_chain(w, kappa, n, grid, tol, memory_limit_mb)
    candidates = min(w.dim * (n + 1) + 2, chain.grid.size)
    reference = solve(hamiltonian_of(w, kappa), chain.grid, candidates, memory_limit_mb)
    rungs = []
    used: List[int] = []
    passed = True
    for k, psi in enumerate(chain.states):
        scores = [overlap(psi, state) if j not in used else -1.0 for j, state in enumerate(reference.states)]
        level = int(np.argmax(scores))
        used.append(level)
        ov = scores[level]
        e_ladder = energy(w, kappa, psi)
        e_solver = reference.eigenvalues[level]
        deviation = abs(e_ladder - e_solver)
        ok = ov >= min_overlap and deviation <= energy_tol * max(1.0, abs(e_solver))
        passed = passed and ok
        rungs.append({
            "level": k,
            "solver_level": level,
            "overlap": ov,
            "energy_ladder": e_ladder,
            "energy_solver": e_solver,
            "energy_deviation": deviation,
            "annihilation_residual": chain.residuals[k],
            "passed": ok,
        })
        logger.debug(f"rung {k} -> solver level {level}: overlap={ov:.6f}, energy {e_ladder!r} vs {e_solver!r}")
    return {
        "chain": chain.to_dict(),
        # factorization energy c_κ: lowest eigenvalue of a⁺a⁻ on the grid
        "factorization_energy": chain.ground_energies[0],
        "rungs": rungs,
        "passed": passed,
        "states": chain.states,
    }
