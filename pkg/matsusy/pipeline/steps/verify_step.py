"""验证步骤：形状不变性与确定方程"""

import math
from typing import Any, Dict

from matsusy.core.catalog import make_spec
from matsusy.core.errors import ConfigError
from matsusy.core.verifier import verify_spec
from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_KAPPA = 1.5


class VerifyStep(BaseStep):
    """残差按 max(1, max‖V⁺‖) 缩放后与容差比较"""

    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        config = context["config"]
        if not config.family:
            raise ConfigError("verify needs --family")
        kappa = config.kappa if config.kappa is not None else DEFAULT_KAPPA
        spec = make_spec(config.family, config.params)
        reports = verify_spec(
            spec, kappa, self.settings.sample_count, self.settings.sample_margin, self.settings.sample_span
        )
        shape, determining = reports["shape"], reports["determining"]
        scale = shape.scale

        checks = []

        def check(name: str, value: float, tol: float):
            checks.append({"check": name, "value": value, "tol": tol * scale, "passed": bool(value <= tol * scale)})

        check("shape", shape.residuals["shape"], config.shape_tol)
        for name, value in determining.residuals.items():
            check(name, value, config.determining_tol)
        predicted = shape.predicted.get("C_kappa")
        if predicted is not None and math.isfinite(predicted):
            check("shift_prediction", abs(predicted - shape.fitted["C_kappa"]), config.shape_tol)

        passed = all(c["passed"] for c in checks)
        context["report"] = {
            "spec": spec.describe(),
            "kappa": kappa,
            "shape": shape.to_dict(),
            "determining": determining.to_dict(),
            "checks": checks,
        }
        context["table"] = {
            "title": f"{spec.family} at kappa={kappa!r}: C_kappa={shape.fitted['C_kappa']!r}",
            "header": ["check", "value", "tol", "passed"],
            "rows": [[c["check"], c["value"], c["tol"], "yes" if c["passed"] else "no"] for c in checks],
        }
        context["csv"] = {"header": context["table"]["header"], "rows": context["table"]["rows"]}
        context["passed"] = passed
        logger.info(f"verify {spec.family}: {'pass' if passed else 'FAIL'} (C_kappa={shape.fitted['C_kappa']!r})")
        return context
