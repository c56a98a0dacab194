"""Command-line front end.

Subcommands:
  run              full matrix/clustering analysis of a series CSV
  compare-metrics  break-set metrics vs the step-function distance
  export-suite     write the committed ten-series benchmark to disk

Options can also come from a flat key=value config file (--config);
explicit flags override file values. Exit codes: 0 success, 1 input
error, 2 numerical or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

from .changepoint import Attribute
from .clustering import Linkage
from .errors import InputError, StepDistError
from .pipeline import PipelineConfig, compare_metrics, run_analysis
from .synthetic import SUITE_SEED, export_suite

_CONFIG_KEYS = {
    "attribute",
    "p",
    "significance",
    "min-segment",
    "permutations",
    "linkage",
    "k",
    "seed",
    "series",
    "metadata",
    "out",
}

_DEFAULTS = {
    "attribute": "mean",
    "p": "1",
    "significance": "0.05",
    "min-segment": "30",
    "permutations": "199",
    "linkage": "average",
    "k": "auto",
    "seed": "0",
    "series": None,
    "metadata": None,
    "out": None,
}


def _read_config_file(path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("_", "-")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value
    return values


def _parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config))
    for flag, key in [
        ("attribute", "attribute"),
        ("p", "p"),
        ("significance", "significance"),
        ("min_segment", "min-segment"),
        ("permutations", "permutations"),
        ("linkage", "linkage"),
        ("k", "k"),
        ("seed", "seed"),
        ("series", "series"),
        ("metadata", "metadata"),
        ("out", "out"),
    ]:
        value = getattr(args, flag, None)
        if value is not None:
            merged[key] = value
    k = None if str(merged["k"]).strip().lower() in ("auto", "") else int(merged["k"])
    return PipelineConfig(
        attribute=Attribute(str(merged["attribute"]).lower()),
        p=_parse_p(str(merged["p"])),
        significance=float(merged["significance"]),
        min_segment=int(merged["min-segment"]),
        permutations=int(merged["permutations"]),
        linkage=Linkage(str(merged["linkage"]).lower()),
        k=k,
        seed=int(merged["seed"]),
        series_path=merged["series"],
        metadata_path=merged["metadata"],
        out_dir=merged["out"],
    )


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file; flags override it")
    sub.add_argument("--attribute", choices=["mean", "variance"], help="segment statistic")
    sub.add_argument("--p", help="L^p exponent (>= 1, or 'inf')")
    sub.add_argument("--significance", help="per-test significance level in (0, 1)")
    sub.add_argument("--min-segment", dest="min_segment", help="min observations per segment")
    sub.add_argument("--permutations", help="permutation count for threshold calibration")
    sub.add_argument("--linkage", choices=["single", "average", "complete"], help="linkage rule")
    sub.add_argument("--k", help="cluster count, or 'auto' for the eigengap choice")
    sub.add_argument("--seed", help="seed for detection and clustering")
    sub.add_argument("--out", help="output directory")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stepdist",
        description="Change-point step-function embeddings and L^p analysis of time series collections.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="full matrix and clustering analysis of a series CSV")
    _add_common_options(run)
    run.add_argument("--series", help="wide CSV: timestamp column plus one column per series")
    run.add_argument("--metadata", help="station CSV: id,lat_deg,lon_deg (enables consistency analysis)")

    cmp_ = subs.add_parser("compare-metrics", help="break-set metrics vs the step-function distance")
    _add_common_options(cmp_)
    cmp_.add_argument("--series", help="wide series CSV (default: the committed benchmark suite)")

    suite = subs.add_parser("export-suite", help="write the committed benchmark suite to disk")
    suite.add_argument("--out", required=True, help="output directory")
    suite.add_argument("--seed", type=int, default=SUITE_SEED, help="suite seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = _make_parser().parse_args(argv)
    try:
        if args.command == "export-suite":
            export_suite(args.out, args.seed)
            return 0
        config = _build_config(args)
        if config.out_dir is None:
            raise ValueError("an output directory is required (--out or config 'out')")
        if args.command == "run":
            if config.series_path is None:
                raise ValueError("'run' requires a series CSV (--series or config 'series')")
            run_analysis(config)
        else:
            compare_metrics(config)
        return 0
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (StepDistError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
