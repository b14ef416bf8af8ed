"""Command-line front end.

Subcommands: pca, train, score, forecast, report. Exit codes follow the
error taxonomy: 0 success, 1 validation (bad data, bad flags), 2 numeric
failure (an iteration did not converge), 3 I/O failure.
"""

import argparse
import sys

from .errors import InputOutputError, NumericError, ValidationError
from .ingest import load_csv
from .pipeline import (
    cmd_forecast,
    cmd_pca,
    cmd_report,
    cmd_score,
    cmd_train,
    make_config,
    read_config_file,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; remap to the validation exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regionstab",
                     description="regional stability index toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data_required=True):
        p.add_argument("--data", required=data_required,
                       help="input CSV of country-year index records")
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--out", default=".", help="output directory (default .)")

    p = sub.add_parser("pca", help="contribution-rate analysis")
    common(p, data_required=False)
    p.add_argument("--threshold", type=float,
                   help="accumulated contribution threshold (default 0.95)")
    p.add_argument("--eigenvalues",
                   help="comma-separated spectrum to score instead of --data")

    p = sub.add_parser("train", help="train the 5-10-1 network")
    common(p)
    p.add_argument("--model", help="model file to write (default <out>/model.txt)")
    p.add_argument("--seed", type=int, help="weight init seed (default 0)")

    p = sub.add_parser("score", help="score records with a trained model")
    common(p)
    p.add_argument("--model", required=True, help="model file written by train")

    p = sub.add_parser("forecast", help="per-country OLS trend on RS")
    common(p)
    p.add_argument("--model", help="score records instead of reading an rs column")
    p.add_argument("--horizon", type=int, help="years past the last observation (default 5)")

    p = sub.add_parser("report", help="combined report plus plot-data files")
    common(p)
    p.add_argument("--model", help="optional model file for a scoring section")
    p.add_argument("--horizon", type=int, help="years past the last observation (default 5)")
    p.add_argument("--threshold", type=float,
                   help="accumulated contribution threshold (default 0.95)")

    return parser


def _config_from_args(args):
    file_values = read_config_file(args.config) if args.config else {}
    overrides = {}
    if getattr(args, "threshold", None) is not None:
        overrides["pca_threshold"] = args.threshold
    if getattr(args, "seed", None) is not None:
        overrides["rng_seed"] = args.seed
    if getattr(args, "horizon", None) is not None:
        overrides["forecast_horizon"] = args.horizon
    return make_config(file_values, **overrides)


def _parse_spectrum(text: str):
    values = [tok.strip() for tok in text.split(",") if tok.strip()]
    if not values:
        raise ValueError("--eigenvalues is empty")
    return [float(v) for v in values]


def _run(args) -> int:
    config = _config_from_args(args)
    records = load_csv(args.data) if args.data else None

    if args.command == "pca":
        spectrum = _parse_spectrum(args.eigenvalues) if args.eigenvalues else None
        if records is None and spectrum is None:
            raise ValueError("pca needs --data or --eigenvalues")
        _, report = cmd_pca(config, args.out, records=records, eigenvalues=spectrum)
        sys.stdout.write(report)
    elif args.command == "train":
        _, train_report, model_path = cmd_train(records, config, args.out,
                                                model_path=args.model)
        print(f"trained in {train_report.epochs_run} epochs "
              f"({train_report.stop_reason}); model: {model_path}")
    elif args.command == "score":
        scored = cmd_score(records, config, args.model, args.out)
        for rec, score in scored:
            print(f"{rec.country} {rec.year}: rs = {score.value:.4f} "
                  f"({score.category.value})")
    elif args.command == "forecast":
        cmd_forecast(records, config, args.out, model_path=args.model)
        print(f"forecast written to {args.out}")
    else:
        report = cmd_report(records, config, args.out, model_path=args.model)
        sys.stdout.write(report)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (InputOutputError, OSError) as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
