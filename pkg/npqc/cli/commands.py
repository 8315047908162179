"""
npqc-lab 命令列

全域選項 (--config、--seed、--threads、--out、--log-level) 寫在子指令之前；
命令列旗標覆蓋配置檔，配置檔覆蓋預設值。

結束碼：2 用法或配置錯誤、3 規格錯誤 (深度、變體、不可行目標)、4 容量錯誤、1 其他 NPQC 錯誤。
"""

import dataclasses
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import click

from .. import __version__
from ..config import VALID_LOG_LEVELS, VALID_SHIFT_ORDERS, configure_logging, get_config, set_config
from ..exceptions import (
    NPQCArgumentError,
    NPQCCapacityError,
    NPQCConfigurationError,
    NPQCError,
    NPQCShapeError,
    NPQCSpecError,
)
from .config import ExperimentConfig, int_value, parse_list
from .runners import RUNNERS


logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_SPEC = 3
EXIT_CAPACITY = 4

VARIANTS = click.Choice(["full", "y_only"])
INITS = click.Choice(["reference", "random"])


class NPQCGroup(click.Group):
    """把 NPQC 例外對應到結束碼"""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (NPQCConfigurationError, NPQCArgumentError, NPQCShapeError) as e:
            raise click.UsageError(str(e), ctx) from e
        except NPQCSpecError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_SPEC)
        except NPQCCapacityError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_CAPACITY)
        except NPQCError as e:
            logger.error(f"Experiment failed: {e}")
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_FAILURE)


def _tuple_or_none(values: Sequence[str]) -> Optional[list]:
    return list(values) if values else None


def _execute(ctx: click.Context, command: str, overrides: Dict[str, Any]) -> None:
    state = ctx.obj
    config = ExperimentConfig.resolve(command, state["config_path"], {**state["overrides"], **overrides})
    logger.info(f"Running {command} with seed={config['seed']}, threads={config['threads']}")
    output = RUNNERS[command](config)
    for line in output.summary:
        click.echo(line)
    for path in output.paths:
        click.echo(f"Wrote {path}")


@click.group(cls=NPQCGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="npqc-lab")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSON/YAML config, or a CSV written by an earlier run")
@click.option("--seed", type=int, help="Master seed")
@click.option("--threads", type=int, help="Worker threads")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Output directory")
@click.option("--shift-order", type=click.Choice(VALID_SHIFT_ORDERS), help="Shift factor selection order")
@click.option("--shift-seed", type=int, help="Seed for random shift order")
@click.option("--log-level", type=click.Choice(VALID_LOG_LEVELS, case_sensitive=False))
@click.pass_context
def main(
    ctx: click.Context,
    config_path: Optional[Path],
    seed: Optional[int],
    threads: Optional[int],
    out: Optional[Path],
    shift_order: Optional[str],
    shift_seed: Optional[int],
    log_level: Optional[str],
) -> None:
    """NPQC 實驗命令列"""
    settings = get_config()
    if log_level:
        settings = dataclasses.replace(settings, log_level=log_level.upper())
        set_config(settings)
    configure_logging(settings)
    ctx.obj = {
        "config_path": config_path,
        "overrides": {
            "seed": seed,
            "threads": threads,
            "out": str(out) if out is not None else None,
            "shift_order": shift_order,
            "shift_seed": shift_seed,
        },
    }


@main.command()
@click.option("--n", "n_qubits", type=int, help="Number of qubits (even)")
@click.option("--p", "n_layers", type=int, help="Number of layers")
@click.option("--variant", type=VARIANTS)
@click.option("--theta", type=INITS, help="Evaluate at θ_r or at random parameters")
@click.option("--instances", type=int)
@click.pass_context
def qfim(ctx: click.Context, **options: Any) -> None:
    """計算 QFIM 並檢查與單位矩陣的差距"""
    _execute(ctx, "qfim", options)


@main.command()
@click.option("--n", "n_qubits", type=int)
@click.option("--p", "n_layers", type=int)
@click.option("--variant", type=VARIANTS)
@click.option("--method", "methods", multiple=True, type=click.Choice(["adaptive", "standard", "adam"]))
@click.option("--init", "inits", multiple=True, type=INITS)
@click.option("--infidelity", type=float, help="Initial infidelity of the target")
@click.option("--instances", type=int)
@click.option("--max-iters", type=int)
@click.option("--target-infidelity", type=float)
@click.option("--adaptive-iters", type=int)
@click.option("--post-adaptive-rate", type=float)
@click.option("--fixed-rate", type=float)
@click.option("--adam-rate", type=float)
@click.option("--qfim/--no-qfim", "use_qfim", default=None)
@click.option("--k0", type=float)
@click.pass_context
def train(ctx: click.Context, methods, inits, **options: Any) -> None:
    """以各最佳化器訓練至目標態"""
    options.update(methods=_tuple_or_none(methods), inits=_tuple_or_none(inits))
    _execute(ctx, "train", options)


@main.command()
@click.option("--qubits", "--n", "qubits", help="Comma separated qubit counts")
@click.option("--layers", "--p", "layers", help="Comma separated layer counts")
@click.option("--variant", type=VARIANTS)
@click.option("--init", "inits", multiple=True, type=INITS)
@click.option("--infidelities", help="Comma separated initial infidelities")
@click.option("--instances", type=int)
@click.option("--qfim/--no-qfim", "use_qfim", default=None)
@click.pass_context
def scan(ctx: click.Context, qubits, layers, inits, infidelities, **options: Any) -> None:
    """單步自適應上升掃描並擬合 (c, ν)"""
    options.update(
        qubits=parse_list(qubits, int_value),
        layers=parse_list(layers, int_value),
        inits=_tuple_or_none(inits),
        infidelities=parse_list(infidelities),
    )
    _execute(ctx, "scan", options)


@main.command()
@click.option("--n", "n_qubits", type=int)
@click.option("--p", "n_layers", type=int)
@click.option("--norms", "--norm", "norms", help="Comma separated |Δθ| values")
@click.option("--shots", help="Comma separated shot budgets, or a decade range such as 1e2..1e6")
@click.option("--instances", type=int)
@click.option("--direction", type=click.Choice(["random", "equal"]))
@click.option("--exact/--no-exact", default=None)
@click.pass_context
def sense(ctx: click.Context, norms, shots, **options: Any) -> None:
    """Y_ONLY 多參數感測的 RMSE 研究"""
    options.update(norms=parse_list(norms), shots=parse_list(shots, int_value))
    _execute(ctx, "sense", options)


@main.command()
@click.option("--n", "n_qubits", type=int)
@click.option("--layers", "--p", "layers", help="Comma separated layer counts")
@click.option("--infidelities", help="Comma separated ΔK between θ_r and θ_t")
@click.option("--instances", type=int)
@click.option("--grid-size", type=int, help="Regular (K_rs, K_ts) grid per axis; 0 samples randomly")
@click.option("--margin", type=float)
@click.option("--orthogonal", type=click.Choice(["deterministic", "random"]))
@click.pass_context
def superpose(ctx: click.Context, layers, infidelities, **options: Any) -> None:
    """疊加態合成與 ΔC 統計"""
    options.update(layers=parse_list(layers, int_value), infidelities=parse_list(infidelities))
    _execute(ctx, "superpose", options)


@main.command()
@click.option("--n", "n_qubits", type=int)
@click.option("--p", "n_layers", type=int)
@click.option("--variant", type=VARIANTS)
@click.option("--distances", help="Comma separated |Δθ| values")
@click.option("--instances", type=int)
@click.option("--variance-distances", help="Comma separated |Δθ| for the gradient variance study")
@click.option("--variance-samples", type=int)
@click.pass_context
def landscape(ctx: click.Context, distances, variance_distances, **options: Any) -> None:
    """保真度地形與梯度變異數"""
    options.update(distances=parse_list(distances), variance_distances=parse_list(variance_distances))
    _execute(ctx, "landscape", options)


@main.command()
@click.option("--n", "n_qubits", type=int)
@click.option("--p", "n_layers", type=int)
@click.option("--infidelities", help="Comma separated initial infidelities")
@click.option("--scales", help="Comma separated multiples of the adaptive rate")
@click.option("--instances", type=int)
@click.pass_context
def rates(ctx: click.Context, infidelities, scales, **options: Any) -> None:
    """單步學習率掃描"""
    options.update(infidelities=parse_list(infidelities), scales=parse_list(scales))
    _execute(ctx, "rates", options)
