"""主入口 - 命令行"""

import argparse
import sys
from typing import Any, Dict, List, Optional

from matsusy.core.errors import (
    ConfigError,
    DimensionError,
    DomainError,
    MemoryBudgetError,
    NumericalError,
    ParameterGuardError,
)
from matsusy.io.config_loader import ConfigLoader
from matsusy.pipeline.orchestrator import PipelineOrchestrator
from matsusy.pipeline.run_config import FORMATS, RunConfig
from matsusy.settings import Settings
from matsusy.utils.logger import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_PASS = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

USAGE_ERRORS = (ConfigError, ParameterGuardError, DomainError, DimensionError, MemoryBudgetError)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=str, help="flat key=value 配置文件")
    parser.add_argument("--format", type=str, choices=FORMATS, help="输出格式（默认 table）")
    parser.add_argument("--output", type=str, help="输出文件路径（默认打印到标准输出）")


def _add_params(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("parameters")
    for name in RunConfig.param_names():
        if name == "kappa":
            continue
        group.add_argument(f"--{name}", type=float)
    group.add_argument("--kappa", type=float, help="κ（模型中为量子数 κ）")


def _add_grid(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("grid")
    group.add_argument("--xmin", type=float)
    group.add_argument("--xmax", type=float)
    group.add_argument("--N", type=int, help="内部网格点数")
    group.add_argument("--L", type=float, help="区间长度（径向）或半宽（全直线）")
    group.add_argument("--epsilon", type=float, help="径向 Dirichlet 墙位置，L 的比例")
    group.add_argument("--memory-limit-mb", type=float)
    group.add_argument("--states-csv", type=str, help="本征函数 CSV 输出路径")


def _add_tolerances(parser: argparse.ArgumentParser, *names: str):
    for name in names:
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matsusy",
        allow_abbrev=False,
        description="Shape-invariant matrix superpotentials: catalog, verification, spectra and SUSY ladders",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", allow_abbrev=False, help="族与模型一览")
    _add_common(p)
    p.add_argument("--dim", type=int, choices=[2, 3])

    p = sub.add_parser("catalog", allow_abbrev=False, help="机器可读的注册表")
    _add_common(p)

    p = sub.add_parser("verify", allow_abbrev=False, help="形状不变性与确定方程残差")
    _add_common(p)
    p.add_argument("--family", type=str, required=False)
    _add_params(p)
    _add_tolerances(p, "shape_tol", "determining_tol")

    p = sub.add_parser("spectrum", allow_abbrev=False, help="数值能级间隔与解析间隔比较")
    _add_common(p)
    target = p.add_mutually_exclusive_group()
    target.add_argument("--model", type=str)
    target.add_argument("--family", type=str)
    p.add_argument("--levels", type=int)
    _add_params(p)
    _add_grid(p)
    _add_tolerances(p, "gap_tol", "annihilation_tol")

    p = sub.add_parser("ladder", allow_abbrev=False, help="超对称梯子重建")
    _add_common(p)
    p.add_argument("--model", type=str)
    p.add_argument("--n", type=int, help="梯子级数")
    _add_params(p)
    _add_grid(p)
    _add_tolerances(p, "gap_tol", "annihilation_tol")

    p = sub.add_parser("reduce", allow_abbrev=False, help="模型势与族超势约化比较")
    _add_common(p)
    p.add_argument("--model", type=str)
    p.add_argument("--convention", type=str, choices=["minus", "plus"])
    _add_params(p)
    _add_tolerances(p, "reduction_tol")
    return parser


def build_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Settings 默认值 → 配置文件 → 命令行参数"""
    file_values: Dict[str, Any] = {}
    if getattr(args, "config", None):
        file_values = ConfigLoader.load(args.config, RunConfig.accepted_keys())
    cli_values = {k: v for k, v in vars(args).items() if k not in ("command", "config") and v is not None}
    return RunConfig.from_layers(args.command, settings, file_values, cli_values)


def main(argv: Optional[List[str]] = None) -> int:
    """主函数：解析参数、运行命令、映射退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = Settings()
    configure_logging(settings.log_level, settings.log_file)
    try:
        config = build_config(args, settings)
        context = PipelineOrchestrator(settings).run(config)
    except USAGE_ERRORS as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as e:
        logger.error(f"{args.command}: {e}")
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    if not config.output:
        sys.stdout.write(context.get("rendered", ""))
    if context.get("errors"):
        return EXIT_NUMERICAL
    return EXIT_PASS if context.get("passed") else EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
