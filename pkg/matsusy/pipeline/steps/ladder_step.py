"""梯子步骤：由基态链重建激发态并与本征求解器比较"""

from typing import Any, Dict

from matsusy.core.errors import ConfigError
from matsusy.core.ladder import ladder_report
from matsusy.core.models import model_superpotential
from matsusy.io.exporter import CSVExporter
from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.pipeline.steps.spectrum_step import model_params, resolve_grid
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class LadderStep(BaseStep):
    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        config = context["config"]
        if not config.model:
            raise ConfigError("ladder needs --model")
        ms = model_superpotential(config.model, model_params(config))
        grid = resolve_grid(config, config.model, config.n + 1)
        logger.info(f"ladder {config.model}: n={config.n}, kappa={ms.kappa!r}, N={grid.N}")
        result = ladder_report(
            ms,
            ms.kappa,
            config.n,
            grid,
            tol=config.annihilation_tol,
            energy_tol=config.gap_tol,
            memory_limit_mb=config.memory_limit_mb,
        )
        states = result.pop("states")
        if config.states_csv:
            header = ["x"]
            columns = []
            for k, state in enumerate(states):
                for a in range(state.grid.channels):
                    header.extend([f"re_{k}_{a}", f"im_{k}_{a}"])
                    columns.append((k, a))
            xs = states[0].grid.points()
            rows = [
                [float(x)] + [v for k, a in columns for v in (states[k].values[i, a].real, states[k].values[i, a].imag)]
                for i, x in enumerate(xs)
            ]
            CSVExporter().export({"header": header, "rows": rows}, config.states_csv)

        result["model"] = config.model
        result["family"] = ms.family
        header = [
            "level",
            "solver_level",
            "overlap",
            "energy_ladder",
            "energy_solver",
            "energy_deviation",
            "annihilation_residual",
            "passed",
        ]
        rows = [[r[h] if h != "passed" else ("yes" if r[h] else "no") for h in header] for r in result["rungs"]]
        context["report"] = result
        context["table"] = {"title": f"{config.model} ladder, kappa={ms.kappa!r}", "header": header, "rows": rows}
        context["csv"] = {"header": header, "rows": rows}
        context["passed"] = bool(result["passed"])
        return context
