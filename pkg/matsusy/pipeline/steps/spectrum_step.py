"""谱步骤：模型的数值能级间隔，或任一族在给定 κ 下的谱"""

import math
from typing import Any, Dict, List

import numpy as np

from matsusy.core.catalog import make_spec
from matsusy.core.errors import ConfigError
from matsusy.core.ladder import ladder_selector
from matsusy.core.models import RADIAL_EPSILON_RATIO, default_grid, model_spectrum_check
from matsusy.core.spectral import (
    GridSpec,
    SpectrumReport,
    bound_state_count,
    continuum_threshold,
    refine_and_extrapolate,
)
from matsusy.io.exporter import CSVExporter
from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_FAMILY_LENGTH = 20.0


def model_params(config) -> Dict[str, float]:
    params = dict(config.params)
    if config.kappa is not None:
        params["kappa"] = config.kappa
    return params


def epsilon_ratio(config) -> float:
    return RADIAL_EPSILON_RATIO if config.epsilon is None else config.epsilon


def resolve_grid(config, model: str, levels: int) -> GridSpec:
    if config.xmin is not None and config.xmax is not None:
        return GridSpec(config.xmin, config.xmax, config.N)
    return default_grid(model, model_params(config), levels, config.N, epsilon_ratio(config), config.L)


class SpectrumStep(BaseStep):
    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        config = context["config"]
        if config.model:
            report = self._model_spectrum(config)
        elif config.family:
            report = self._family_spectrum(config)
        else:
            raise ConfigError("spectrum needs --model or --family")

        if config.states_csv:
            CSVExporter().export(report.states_csv(), config.states_csv)

        context["report"] = report.to_dict()
        context["table"] = {
            "title": "; ".join([f"passed: {'yes' if report.passed else 'no'}"] + report.notes),
            "header": SpectrumReport.level_header(),
            "rows": report.level_rows(),
        }
        context["csv"] = {"header": SpectrumReport.level_header(), "rows": report.level_rows()}
        context["passed"] = bool(report.passed)
        return context

    def _model_spectrum(self, config) -> SpectrumReport:
        grid = resolve_grid(config, config.model, config.levels)
        logger.info(f"spectrum {config.model}: {config.levels} levels on N={grid.N} over [{grid.xmin}, {grid.xmax}]")
        return model_spectrum_check(
            config.model,
            model_params(config),
            config.levels,
            grid,
            gap_tol=config.gap_tol,
            annihilation_tol=config.annihilation_tol,
            memory_limit_mb=config.memory_limit_mb,
        )

    def _family_spectrum(self, config) -> SpectrumReport:
        """H_κ = −∂² + W² − W'；预测间隔为 C_κ + … + C_{κ+n−1}（超对称未破缺时成立）"""
        spec = make_spec(config.family, config.params)
        if config.kappa is None:
            raise ConfigError("family spectrum needs --kappa")
        kappa = config.kappa
        lo, hi = spec.principal
        L = config.L or DEFAULT_FAMILY_LENGTH
        xmin = config.xmin if config.xmin is not None else (lo + epsilon_ratio(config) * L if math.isfinite(lo) else -L)
        xmax = config.xmax if config.xmax is not None else (min(hi, xmin + L) if math.isfinite(lo) else min(hi, L))
        grid = GridSpec(xmin, xmax, config.N, spec.dim)

        def potential(xs: np.ndarray) -> np.ndarray:
            return spec.potentials(kappa, xs, "minus")

        select = ladder_selector(spec, kappa, config.annihilation_tol, config.memory_limit_mb)
        report = refine_and_extrapolate(
            potential,
            grid,
            config.levels,
            config.memory_limit_mb,
            select=select,
            candidates=spec.dim * config.levels + 2,
        )
        dec = spec.decompose()
        analytic: List[float] = [0.0]
        for j in range(config.levels - 1):
            analytic.append(analytic[-1] + dec.predicted_shift(kappa + j))
        report.analytic_gaps = analytic
        report.deviations = [abs(a - b) for a, b in zip(report.gaps, analytic)]
        sides = tuple(s for s, end in (("left", lo), ("right", hi)) if not math.isfinite(end))
        report.threshold = continuum_threshold(potential, grid, sides) if sides else float("inf")
        report.bound_count = bound_state_count(report, report.threshold)
        report.passed = all(d <= config.gap_tol for d in report.deviations)
        report.extra.update({"family": spec.family, "params": dict(spec.params), "kappa": kappa})
        return report
