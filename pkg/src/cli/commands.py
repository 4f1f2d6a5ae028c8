# src/cli/commands.py
"""One ``cmd_*`` function per subcommand.

Each takes the parsed namespace and the run report, writes results to stdout
and returns the exit status. Input problems surface as ``RembedError`` or
``OSError`` and are mapped to status 2 by ``main``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Iterable, List, Optional, TextIO

import numpy as np

from src.cli.parser import DEFAULT_AT
from src.engine import pipeline
from src.engine.predictor import predict_topt_batch
from src.engine.verification import VerificationSettings, format_table, run_verification
from src.errors import ConfigError
from src.formats.libsvm_text import read_multilabel_text, write_multilabel_text
from src.formats.model_file import load_model, read_model_file, write_model_file
from src.formats.synthetic import SyntheticSpec, generate_synthetic
from src.models.Dataset import Dataset, Metrics
from src.models.LabelEmbedding import RembedConfig
from src.models.LinearPredictor import Prediction
from src.models.RunReport import RunReport
from src.models.SolverParams import SolverParams
from src.utils.ResourceManager import synthetic_preset

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2


def _load(path: str, args: argparse.Namespace, report: RunReport, stage: str = "load") -> Dataset:
    with report.stage(stage):
        dataset, parse_report = read_multilabel_text(path, kind=getattr(args, "kind", None))
    report.extra.setdefault("inputs", {})[stage] = parse_report.to_dict()
    target = getattr(args, "parse_report", None)
    if target:
        Path(target).write_text(
            json.dumps(parse_report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("%s: %d examples, d=%d, c=%d (%s)", path, dataset.n_examples,
                dataset.n_features, dataset.n_labels, dataset.kind.value)
    return dataset


def _print_spectrum(spectrum: Iterable[float], out: TextIO) -> None:
    print("spectrum:", file=out)
    for i, value in enumerate(spectrum, start=1):
        print(f"{i} {value:.17g}", file=out)


def _print_metrics(metrics: Metrics, out: TextIO) -> None:
    print(json.dumps(metrics.to_dict(), indent=2, sort_keys=True), file=out)


def _config_from_args(args: argparse.Namespace, power_iterations: int,
                      rel_tolerance: float) -> RembedConfig:
    solver = SolverParams(ridge=args.ridge, rel_tolerance=rel_tolerance,
                          max_iterations=args.max_iter)
    return RembedConfig(
        embedding_dim=args.k,
        oversampling=args.p,
        power_iterations=power_iterations,
        solver=solver,
        seed=args.seed,
        projected=not getattr(args, "no_projection", False),
        normalize_features=args.normalize,
    )


# ---------------------------------------------------------------------- #
def cmd_embed(args: argparse.Namespace, report: RunReport) -> int:
    train = _load(args.train, args, report)
    config = _config_from_args(args, args.q, args.tol)
    embedding = pipeline.embed_stage(train, config, report)
    write_model_file(args.model, embedding, train.n_features)
    _print_spectrum(embedding.spectrum, sys.stdout)
    return EXIT_OK


def cmd_train(args: argparse.Namespace, report: RunReport) -> int:
    contents = read_model_file(args.model)
    embedding = contents.embedding
    if contents.trained:
        logger.info("%s already holds a regressor; it will be replaced", args.model)
    train = _load(args.train, args, report)
    base = embedding.config.solver
    solver = SolverParams(
        ridge=args.ridge if args.ridge is not None else base.ridge,
        rel_tolerance=args.tol if args.tol is not None else base.rel_tolerance,
        max_iterations=args.max_iter if args.max_iter is not None else base.max_iterations,
    )
    report.config["rembed"] = embedding.config.to_dict()
    model = pipeline.train_stage(train, embedding, contents.n_features, solver, report)
    write_model_file(args.model, embedding, contents.n_features, model)
    print(f"regressor: d={model.n_features} k={embedding.embedding_dim} "
          f"ridge={model.ridge_used:.17g}")
    return EXIT_OK


def cmd_predict(args: argparse.Namespace, report: RunReport) -> int:
    model = load_model(args.model)
    data = pipeline.conform_dataset(_load(args.data, args, report), model)
    with report.stage("predict"):
        ids, scores = predict_topt_batch(data.X, model, args.top)
    lines = [Prediction(label_ids=i, scores=s).format() for i, s in zip(ids, scores)]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info("%d prediction(s) written to %s", len(lines), args.out)
    else:
        sys.stdout.write(text)
    report.config["top"] = args.top
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, report: RunReport) -> int:
    model = load_model(args.model)
    test = _load(args.test, args, report)
    t_values = args.at or [t for t in DEFAULT_AT if t <= model.n_labels]
    report.config["at"] = sorted(set(t_values))
    report.config["rembed"] = model.embedding.config.to_dict()
    metrics = pipeline.eval_stage(test, model, t_values, report)
    _print_metrics(metrics, sys.stdout)
    if args.min_precision is not None:
        p1 = metrics.precision_at.get(1)
        if p1 is None:
            raise ConfigError("--min-precision needs t=1 among --at")
        report.extra["min_precision"] = {"threshold": args.min_precision, "passed": p1 >= args.min_precision}
        if p1 < args.min_precision:
            logger.error("precision@1 = %.4f is below --min-precision %.4f", p1, args.min_precision)
            return EXIT_FAILED_CHECK
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, report: RunReport) -> int:
    settings = VerificationSettings.from_presets(
        size=args.size, seed=args.seed, rel_tolerance=args.tol, power_iterations=args.q)
    report.config["verify"] = settings.to_dict()
    with report.stage("verify"):
        results = run_verification(settings)
    report.extra["checks"] = [r.to_dict() for r in results]
    print(format_table(results))
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_FAILED_CHECK if failed else EXIT_OK


def synthetic_spec_from_args(args: argparse.Namespace) -> SyntheticSpec:
    """Preset values (if any) overridden by the individual flags."""
    raw = dict(synthetic_preset(args.preset)["spec"]) if args.preset else {}
    overrides = {"n": args.n, "d": args.d, "c": args.c, "k_true": args.k_true,
                 "noise": args.noise, "seed": args.seed, "n_test": args.n_test,
                 "density": args.density, "kind": args.kind.value if args.kind else None}
    raw.update({key: value for key, value in overrides.items() if value is not None})
    missing = [key for key in ("n", "d", "c", "k_true") if key not in raw]
    if missing:
        raise ConfigError(f"synth needs --preset or {', '.join('--' + m.replace('_', '-') for m in missing)}")
    return SyntheticSpec.from_dict(raw)


def cmd_synth(args: argparse.Namespace, report: RunReport) -> int:
    spec = synthetic_spec_from_args(args)
    report.config["synthetic"] = spec.to_dict()
    with report.stage("generate"):
        train, test, planted = generate_synthetic(spec)
    prefix = Path(args.prefix)
    written = {
        "train": prefix.with_name(prefix.name + ".train.txt"),
        "test": prefix.with_name(prefix.name + ".test.txt"),
        "planted": prefix.with_name(prefix.name + ".planted.npy"),
    }
    write_multilabel_text(train, written["train"])
    write_multilabel_text(test, written["test"])
    np.save(written["planted"], planted)
    report.extra["outputs"] = {key: str(path) for key, path in written.items()}
    for key, path in written.items():
        print(f"{key}: {path}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, report: RunReport) -> int:
    train = _load(args.train, args, report, stage="load_train")
    test = _load(args.test, args, report, stage="load_test")
    rows: List[dict] = []
    for tol in args.tols:
        for q in args.qs:
            config = _config_from_args(args, q, tol)
            run = RunReport(command="sweep", include_timings=report.include_timings)
            start = time.perf_counter()
            _, metrics = pipeline.run_pipeline(train, test, config, [1], run)
            elapsed = time.perf_counter() - start
            row = {
                "rel_tolerance": tol,
                "power_iterations": q,
                "precision_at_1": metrics.precision_at[1],
                "inner_iterations": run.convergence["embed"]["total_iterations"],
            }
            if report.include_timings:
                row["seconds"] = elapsed
            rows.append(row)
    report.config["sweep"] = {"k": args.k, "p": args.p, "seed": args.seed, "tols": list(args.tols),
                              "qs": list(args.qs), "normalize": args.normalize}
    report.extra["sweep"] = rows

    print(f"{'tol':>10} {'q':>3} {'P@1':>8} {'inner its':>10}" +
          (f" {'seconds':>8}" if report.include_timings else ""))
    for row in rows:
        line = (f"{row['rel_tolerance']:>10.1e} {row['power_iterations']:>3d} "
                f"{row['precision_at_1']:>8.4f} {row['inner_iterations']:>10d}")
        if "seconds" in row:
            line += f" {row['seconds']:>8.3f}"
        print(line)
    return EXIT_OK


COMMANDS = {
    "embed": cmd_embed,
    "train": cmd_train,
    "predict": cmd_predict,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "synth": cmd_synth,
    "sweep": cmd_sweep,
}


def run_command(args: argparse.Namespace, report: Optional[RunReport] = None) -> int:
    report = report or RunReport(command=args.command, include_timings=not args.no_timings)
    status = COMMANDS[args.command](args, report)
    if args.report:
        report.write(args.report)
    return status
