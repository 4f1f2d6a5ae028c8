# src/cli/parser.py
"""argparse definition of the ``rembed`` command line."""
from __future__ import annotations

import argparse

from src.models.Dataset import DatasetKind
from src.models.LabelEmbedding import DEFAULT_OVERSAMPLING, DEFAULT_POWER_ITERATIONS
from src.models.SolverParams import DEFAULT_MAX_ITERATIONS, DEFAULT_REL_TOLERANCE

DEFAULT_AT = (1, 3, 5)
DEFAULT_SWEEP_TOLS = (1e-10, 1e-6, 1e-3)
DEFAULT_SWEEP_QS = (1, 3, 5)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0, 1), got {text}")
    return value


def _ridge(text: str) -> float:
    value = float(text)
    if not value >= 0.0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"ridge must be a finite number >= 0, got {text}")
    return value


def _kind(text: str) -> DatasetKind:
    try:
        return DatasetKind(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"kind must be one of {', '.join(k.value for k in DatasetKind)}"
        ) from None


def _solver_flags(p: argparse.ArgumentParser, defaults: bool = True) -> None:
    p.add_argument("--ridge", type=_ridge, default=None,
                   help="ridge λ (default: 1e-3 × mean squared row norm of X)")
    p.add_argument("--tol", type=_tolerance,
                   default=DEFAULT_REL_TOLERANCE if defaults else None,
                   help="relative residual tolerance of the inner solves")
    p.add_argument("--max-iter", type=_positive_int,
                   default=DEFAULT_MAX_ITERATIONS if defaults else None,
                   help="iteration cap per inner solve")


def _embedding_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=_positive_int, required=True, help="embedding dimension")
    p.add_argument("--p", type=int, default=DEFAULT_OVERSAMPLING, help="oversampling columns")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--normalize", action="store_true",
                   help="scale every feature row to unit L2 norm first")
    p.add_argument("--kind", type=_kind, default=None,
                   help="multiclass or multilabel (default: inferred)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rembed",
        description="Randomized label embeddings: embed, train, predict and evaluate.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more log output on stderr (DEBUG)")
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="warnings and errors only")
    parser.add_argument("--threads", type=_positive_int, default=1,
                        help="worker threads for the sparse kernels (results do not change)")
    parser.add_argument("--report", metavar="PATH", default=None,
                        help="write a JSON run report to PATH")
    parser.add_argument("--no-timings", action="store_true",
                        help="leave wall-clock times out of the run report")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("embed", help="compute the label embedding, start a model file")
    p.add_argument("train", help="training set in the multilabel text format")
    p.add_argument("--model", required=True, help="model file to write")
    _embedding_flags(p)
    p.add_argument("--q", type=_positive_int, default=DEFAULT_POWER_ITERATIONS,
                   help="power iterations")
    _solver_flags(p)
    p.add_argument("--no-projection", action="store_true",
                   help="plain label PCA on YᵀY instead of the feature-projected operator")
    p.add_argument("--parse-report", metavar="PATH", default=None,
                   help="write what the parser saw as JSON")

    p = sub.add_parser("train", help="fit the regressor, complete the model file")
    p.add_argument("train", help="training set in the multilabel text format")
    p.add_argument("--model", required=True, help="model file written by 'embed'")
    _solver_flags(p, defaults=False)
    p.add_argument("--kind", type=_kind, default=None)
    p.add_argument("--parse-report", metavar="PATH", default=None)

    p = sub.add_parser("predict", help="rank labels for every example")
    p.add_argument("data", help="examples in the multilabel text format (labels ignored)")
    p.add_argument("--model", required=True)
    p.add_argument("--top", type=_positive_int, default=5, help="labels per example")
    p.add_argument("--out", default=None, help="write predictions here instead of stdout")

    p = sub.add_parser("eval", help="precision@t on a labelled test set")
    p.add_argument("test", help="test set in the multilabel text format")
    p.add_argument("--model", required=True)
    p.add_argument("--at", type=_positive_int, nargs="+", default=None,
                   help=f"values of t (default: {' '.join(map(str, DEFAULT_AT))}, up to c)")
    p.add_argument("--kind", type=_kind, default=None)
    p.add_argument("--min-precision", type=float, default=None,
                   help="exit with status 1 when precision@1 falls below this")

    p = sub.add_parser("verify", help="compare against the dense oracle on a random instance")
    p.add_argument("--size", type=_positive_int, default=None,
                   help="number of examples; features and labels scale with it")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--tol", type=_tolerance, default=None, help="inner-solve tolerance for rembed")
    p.add_argument("--q", type=_positive_int, default=None, help="power iterations for rembed")

    p = sub.add_parser("synth", help="write a synthetic train/test pair with planted labels")
    p.add_argument("prefix", help="writes PREFIX.train.txt, PREFIX.test.txt, PREFIX.planted.npy")
    p.add_argument("--preset", default=None, help="named preset from synthetic_presets.json")
    p.add_argument("--n", type=_positive_int, default=None, help="training examples")
    p.add_argument("--n-test", type=int, default=None, help="test examples (default n/4)")
    p.add_argument("--d", type=_positive_int, default=None, help="features")
    p.add_argument("--c", type=_positive_int, default=None, help="labels")
    p.add_argument("--k-true", type=_positive_int, default=None, help="planted rank")
    p.add_argument("--noise", type=float, default=None, help="label flip probability")
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--kind", type=_kind, default=None)

    p = sub.add_parser("sweep", help="precision@1 over a grid of inner tolerances and q")
    p.add_argument("train")
    p.add_argument("test")
    _embedding_flags(p)
    p.add_argument("--tols", type=_tolerance, nargs="+", default=list(DEFAULT_SWEEP_TOLS))
    p.add_argument("--qs", type=_positive_int, nargs="+", default=list(DEFAULT_SWEEP_QS))
    p.add_argument("--ridge", type=_ridge, default=None)
    p.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITERATIONS)

    return parser
