"""
實驗執行器

每個指令對應一個 run_* 函式：讀取 ExperimentConfig，呼叫函式庫，寫出帶標頭的 CSV。
輸出列只依配置決定，以同一配置重跑會得到相同的資料列。
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..circuit import NpqcSpec, Variant, reference_params
from ..config import get_config
from ..geometry import fidelity_landscape, gradient_variance_study, qfim, write_qfim_csv
from ..metrology import REPORT_COLUMNS, crao_check, cramer_rao_bounds, sense_experiment
from ..output import write_csv
from ..parallel import map_ordered
from ..superposition import SWEEP_COLUMNS, superposition_sweep
from ..training import (
    TRACE_COLUMNS,
    InitMode,
    OptimizerConfig,
    initial_params,
    learning_rate_scan,
    single_step_scan,
    target_from_distance,
    train,
)
from .config import ExperimentConfig


logger = logging.getLogger(__name__)

QFIM_SUMMARY_COLUMNS = ["instance", "M", "max_abs_F_minus_I", "trace_F", "trace_F_inv", "min_eigenvalue", "rank"]
TRAIN_SUMMARY_COLUMNS = [
    "method", "init", "instance", "steps", "iterations_to_target",
    "final_fidelity", "stop_reason", "fidelity_evaluations", "seed",
]
SCAN_COLUMNS = [
    "init", "N", "p", "M", "dK_requested", "dK_before", "dK_after", "dK_after_std", "instances", "seed",
]
FIT_COLUMNS = ["init", "N", "p", "M", "c", "nu", "seed"]
SENSE_SUMMARY_COLUMNS = ["norm_dtheta", "shots", "rel_rmse", "leakage_fraction", "instances"]
LANDSCAPE_COLUMNS = ["distance", "instance", "fidelity", "gaussian", "haar_floor", "seed"]
VARIANCE_COLUMNS = [
    "distance", "samples", "M", "mean_fidelity", "empirical_variance",
    "predicted_variance", "ratio", "direction_distribution", "seed",
]
RATES_COLUMNS = ["dK_before", "scale", "dK_after", "dK_after_std", "instances", "seed"]


@dataclass
class RunOutput:
    """執行結果：寫出的檔案與要印在終端機的摘要"""
    paths: List[Path] = field(default_factory=list)
    summary: List[str] = field(default_factory=list)


def build_spec(config: ExperimentConfig, n_qubits: int, n_layers: int, variant: str = "full") -> NpqcSpec:
    return NpqcSpec(
        n_qubits=n_qubits,
        n_layers=n_layers,
        variant=Variant(variant),
        shift_order=config["shift_order"],
        shift_seed=config["shift_seed"],
    )


def run_qfim(config: ExperimentConfig) -> RunOutput:
    spec = build_spec(config, config["n_qubits"], config["n_layers"], config["variant"])
    mode = InitMode(config["theta"])
    output = RunOutput()
    rows = []
    for instance in range(config["instances"]):
        theta = initial_params(spec, mode, config["seed"], instance)
        metric = qfim(spec, theta, threads=config["threads"])
        report = cramer_rao_bounds(metric)
        name = f"qfim_n{spec.n_qubits}_p{spec.n_layers}_{mode.value}_{instance}.csv"
        output.paths.append(
            write_qfim_csv(config.out_dir / name, metric, theta.values, config.header(instance=instance))
        )
        deviation = metric.max_deviation_from_identity()
        rows.append([
            instance, metric.size, deviation, report.trace,
            report.inverse_trace, report.min_eigenvalue, report.rank,
        ])
        output.summary.append(
            f"instance {instance}: M={metric.size} max|F-I|={deviation:.3e} "
            f"Tr F={report.trace:.6f} Tr F^-1={report.inverse_trace} "
            f"min eig={report.min_eigenvalue:.6f}"
        )
    output.paths.append(
        write_csv(config.out_dir / "qfim_summary.csv", config.header(), QFIM_SUMMARY_COLUMNS, rows)
    )
    return output


def run_train(config: ExperimentConfig) -> RunOutput:
    spec = build_spec(config, config["n_qubits"], config["n_layers"], config["variant"])
    seed = config["seed"]
    ridge = get_config().ridge if config["use_qfim"] else 0.0
    optimizers = [
        OptimizerConfig(
            method=method,
            adaptive_iters=config["adaptive_iters"],
            post_adaptive_rate=config["post_adaptive_rate"],
            fixed_rate=config["fixed_rate"],
            adam_rate=config["adam_rate"],
            max_iters=config["max_iters"],
            target_infidelity=config["target_infidelity"],
            use_qfim=config["use_qfim"],
            ridge=ridge,
            k0=config["k0"],
        )
        for method in config["methods"]
    ]
    tasks = [(init, instance) for init in config["inits"] for instance in range(config["instances"])]

    def run(task):
        init, instance = task
        _, target = target_from_distance(
            spec, seed=seed, k_target=1.0 - config["infidelity"], instance=instance
        )
        theta0 = initial_params(spec, InitMode(init), seed, instance)
        return [(init, instance, train(spec, theta0, target, optimizer, seed=seed)) for optimizer in optimizers]

    trace_rows: List[List[Any]] = []
    summary_rows: List[List[Any]] = []
    output = RunOutput()
    for batch in map_ordered(run, tasks, config["threads"]):
        for init, instance, trace in batch:
            trace_rows.extend(row + [init, instance] for row in trace.rows())
            reached = (
                trace.iterations_to(config["target_infidelity"])
                if config["target_infidelity"] is not None else None
            )
            summary_rows.append([
                trace.method, init, instance, trace.steps, reached, trace.final_fidelity,
                trace.stop_reason, trace.fidelity_evaluations, seed,
            ])

    for method in config["methods"]:
        finals = [row[5] for row in summary_rows if row[0].value == method]
        output.summary.append(f"{method}: mean final fidelity {np.mean(finals):.6f} over {len(finals)} runs")

    output.paths.append(write_csv(
        config.out_dir / "train_traces.csv", config.header(), TRACE_COLUMNS + ["init", "instance"], trace_rows
    ))
    output.paths.append(write_csv(
        config.out_dir / "train_summary.csv", config.header(), TRAIN_SUMMARY_COLUMNS, summary_rows
    ))
    return output


def run_scan(config: ExperimentConfig) -> RunOutput:
    seed = config["seed"]
    point_rows: List[List[Any]] = []
    fit_rows: List[List[Any]] = []
    output = RunOutput()
    for n_qubits in config["qubits"]:
        for n_layers in config["layers"]:
            spec = build_spec(config, n_qubits, n_layers, config["variant"])
            for init in config["inits"]:
                result = single_step_scan(
                    spec,
                    config["infidelities"],
                    init=InitMode(init),
                    instances=config["instances"],
                    seed=seed,
                    use_qfim=config["use_qfim"],
                    threads=config["threads"],
                )
                for point in result.points:
                    point_rows.append([
                        init, point.n_qubits, point.n_layers, spec.num_params,
                        point.requested_infidelity, point.infidelity_before, point.infidelity_after,
                        point.infidelity_after_std, point.instances, seed,
                    ])
                fit_rows.append([init, n_qubits, n_layers, spec.num_params, result.c, result.nu, seed])
                output.summary.append(
                    f"{init} N={n_qubits} p={n_layers}: c={result.c:.4g} nu={result.nu:.4g}"
                )

    output.paths.append(write_csv(config.out_dir / "scan_points.csv", config.header(), SCAN_COLUMNS, point_rows))
    output.paths.append(write_csv(config.out_dir / "scan_fit.csv", config.header(), FIT_COLUMNS, fit_rows))
    return output


def run_sense(config: ExperimentConfig) -> RunOutput:
    spec = build_spec(config, config["n_qubits"], config["n_layers"], Variant.Y_ONLY.value)
    study = sense_experiment(
        spec,
        config["norms"],
        config["shots"],
        config["instances"],
        config["seed"],
        direction=config["direction"],
        include_exact=config["exact"],
        threads=config["threads"],
    )
    report = crao_check(spec, reference_params(spec))
    summary = study.summary()

    output = RunOutput()
    output.paths.append(write_csv(
        config.out_dir / "sense_reports.csv", config.header(), REPORT_COLUMNS, (r.row() for r in study.reports)
    ))
    output.paths.append(write_csv(
        config.out_dir / "sense_summary.csv",
        config.header(cramer_rao=report.to_dict(), rel_rmse_normalization="mean_abs_dtheta_i"),
        SENSE_SUMMARY_COLUMNS,
        ([entry[column] for column in SENSE_SUMMARY_COLUMNS] for entry in summary),
    ))
    output.summary.extend(
        f"|dtheta|={entry['norm_dtheta']:.4g} shots={entry['shots']}: rel RMSE={entry['rel_rmse']:.4g}"
        for entry in summary
    )
    output.summary.append(
        f"Cramer-Rao: Tr F={report.trace:.6f} Tr F^-1={report.inverse_trace} M={report.n_params}"
    )
    return output


def superposition_grid(size: int) -> Optional[List[tuple]]:
    """(K_rs, K_ts) 的規則網格，位於 (0, 1) 內部；size 為 0 時改用隨機抽樣"""
    if size == 0:
        return None
    levels = np.linspace(0.0, 1.0, size + 2)[1:-1]
    return [(float(a), float(b)) for a in levels for b in levels]


def run_superpose(config: ExperimentConfig) -> RunOutput:
    grid = superposition_grid(config["grid_size"])
    rows: List[List[Any]] = []
    output = RunOutput()
    for n_layers in config["layers"]:
        spec = build_spec(config, config["n_qubits"], n_layers)
        for infidelity in config["infidelities"]:
            records = superposition_sweep(
                spec,
                infidelity,
                config["instances"],
                config["seed"],
                grid=grid,
                margin=config["margin"],
                orthogonal=config["orthogonal"],
                threads=config["threads"],
            )
            rows.extend(record.row() for record in records)
            feasible = [r.delta_c for r in records if r.feasible]
            output.summary.append(
                f"p={n_layers} dK_rt={infidelity}: {len(feasible)}/{len(records)} feasible, "
                f"mean delta_C={(np.mean(feasible) if feasible else float('nan')):.4g}"
            )
    output.paths.append(write_csv(config.out_dir / "superpose.csv", config.header(), SWEEP_COLUMNS, rows))
    return output


def run_landscape(config: ExperimentConfig) -> RunOutput:
    spec = build_spec(config, config["n_qubits"], config["n_layers"], config["variant"])
    seed = config["seed"]
    points = fidelity_landscape(spec, config["distances"], config["instances"], seed, threads=config["threads"])
    reports = [
        gradient_variance_study(spec, distance, config["variance_samples"], seed, threads=config["threads"])
        for distance in config["variance_distances"]
    ]

    output = RunOutput()
    output.paths.append(write_csv(
        config.out_dir / "landscape.csv",
        config.header(),
        LANDSCAPE_COLUMNS,
        ([p.distance, p.instance, p.fidelity, p.gaussian, p.haar_floor, seed] for p in points),
    ))
    output.paths.append(write_csv(
        config.out_dir / "gradient_variance.csv",
        config.header(),
        VARIANCE_COLUMNS,
        (
            [
                r.distance, r.samples, r.n_params, r.mean_fidelity, r.empirical_variance,
                r.predicted_variance, r.ratio, r.direction_distribution, seed,
            ]
            for r in reports
        ),
    ))
    output.summary.extend(
        f"|dtheta|={r.distance:.3g}: Var empirical={r.empirical_variance:.3e} "
        f"predicted={r.predicted_variance:.3e}"
        for r in reports
    )
    return output


def run_rates(config: ExperimentConfig) -> RunOutput:
    spec = build_spec(config, config["n_qubits"], config["n_layers"])
    seed = config["seed"]
    points = learning_rate_scan(
        spec, config["infidelities"], config["scales"], config["instances"], seed, threads=config["threads"]
    )
    output = RunOutput()
    output.paths.append(write_csv(
        config.out_dir / "learning_rates.csv",
        config.header(),
        RATES_COLUMNS,
        (
            [p.requested_infidelity, p.scale, p.infidelity_after, p.infidelity_after_std, p.instances, seed]
            for p in points
        ),
    ))
    for infidelity in config["infidelities"]:
        group = [p for p in points if p.requested_infidelity == float(infidelity)]
        best = min(group, key=lambda p: p.infidelity_after)
        output.summary.append(
            f"dK={infidelity}: best scale {best.scale:.3g} gives dK_after={best.infidelity_after:.4g}"
        )
    return output


RUNNERS: Dict[str, Callable[[ExperimentConfig], RunOutput]] = {
    "qfim": run_qfim,
    "train": run_train,
    "scan": run_scan,
    "sense": run_sense,
    "superpose": run_superpose,
    "landscape": run_landscape,
    "rates": run_rates,
}
