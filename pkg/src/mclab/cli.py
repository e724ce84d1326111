"""Command-line surface: gen, analyze, verify, sweep, threshold.

Exit codes: 0 success, 1 semantic negative (a coloring that fails
verification), 2 usage or config errors (bad flags, malformed files, values
outside a formula's domain). Every randomized command takes an explicit seed;
nothing falls back to wall-clock entropy.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .coloring import analyze, first_uncovered_pair
from .errors import FormatError, UnsupportedSpecError
from .files import read_coloring, read_edge_list, write_edge_list
from .sampling import RngSeed, sample_gnp
from .threshold import (
    SPARSE,
    SweepConfig,
    ThresholdSpec,
    connectivity_prob_limit,
    sweep,
    threshold_p,
)

DEFAULT_MULTIPLIERS = (0.5, 1.0, 2.0, 5.0)
DEFAULT_TRIALS = 200


class ConfigError(ValueError):
    """A config file problem, reported with the offending key."""


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def build_spec(
    family: Optional[str],
    c: Optional[float] = None,
    alpha: Optional[float] = None,
    ell: Optional[float] = None,
    regime: Optional[str] = None,
    table: Optional[dict] = None,
) -> ThresholdSpec:
    """Assemble a ThresholdSpec from flat fields, naming the field on errors."""
    if family is None:
        raise ConfigError("key 'family': required (constant | power | nlogn | custom)")
    family = family.lower()
    if family == "constant":
        if c is None:
            raise ConfigError("key 'c': required for the constant family")
        return ThresholdSpec.constant(c)
    if family == "power":
        if alpha is None:
            raise ConfigError("key 'alpha': required for the power family")
        return ThresholdSpec.power(alpha)
    if family == "nlogn":
        return ThresholdSpec.nlogn(1.0 if ell is None else ell)
    if family == "custom":
        if table is None:
            raise ConfigError("key 'table': required for the custom family")
        if regime is None:
            raise ConfigError("key 'regime': required for the custom family")
        return ThresholdSpec.custom(table, regime.upper(), ell=ell)
    raise ConfigError(f"key 'family': unknown family {family!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat sweep configuration; round-trips losslessly through text form."""

    family: str
    n_list: tuple[int, ...]
    master_seed: int
    output: str
    c: Optional[float] = None
    alpha: Optional[float] = None
    ell: Optional[float] = None
    regime: Optional[str] = None
    table: Optional[tuple[tuple[int, float], ...]] = None
    multipliers: tuple[float, ...] = DEFAULT_MULTIPLIERS
    trials: int = DEFAULT_TRIALS
    allow_exact: bool = False
    oracle_cap: int = 12
    workers: int = 1

    def spec(self) -> ThresholdSpec:
        return build_spec(
            self.family,
            c=self.c,
            alpha=self.alpha,
            ell=self.ell,
            regime=self.regime,
            table=dict(self.table) if self.table is not None else None,
        )

    def sweep_config(self, workers_override: Optional[int] = None) -> SweepConfig:
        return SweepConfig(
            spec=self.spec(),
            n_list=self.n_list,
            multiplier_list=self.multipliers,
            trials=self.trials,
            master_seed=self.master_seed,
            allow_exact=self.allow_exact,
            oracle_cap=self.oracle_cap,
            workers=self.workers if workers_override is None else workers_override,
        )

    def to_text(self) -> str:
        lines = [f"family = {self.family}"]
        for key in ("c", "alpha", "ell"):
            value = getattr(self, key)
            if value is not None:
                lines.append(f"{key} = {value!r}")
        if self.regime is not None:
            lines.append(f"regime = {self.regime}")
        if self.table is not None:
            lines.append("table = " + ",".join(f"{k}:{v!r}" for k, v in self.table))
        lines.append("n = " + ",".join(str(n) for n in self.n_list))
        lines.append("multipliers = " + ",".join(repr(x) for x in self.multipliers))
        lines.append(f"trials = {self.trials}")
        lines.append(f"master_seed = {self.master_seed}")
        lines.append(f"allow_exact = {'true' if self.allow_exact else 'false'}")
        lines.append(f"oracle_cap = {self.oracle_cap}")
        lines.append(f"workers = {self.workers}")
        lines.append(f"output = {self.output}")
        return "\n".join(lines) + "\n"

    def describe(self) -> dict:
        """JSON-friendly echo for the sweep sidecar."""
        return {
            "spec": self.spec().describe(),
            "n": list(self.n_list),
            "multipliers": list(self.multipliers),
            "trials": self.trials,
            "master_seed": self.master_seed,
            "allow_exact": self.allow_exact,
            "oracle_cap": self.oracle_cap,
            "workers": self.workers,
            "output": self.output,
        }


def _parse_typed(key: str, raw: str, kind: str):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError
        if kind == "int_list":
            return tuple(int(tok) for tok in raw.split(","))
        if kind == "float_list":
            return tuple(float(tok) for tok in raw.split(","))
        if kind == "table":
            out = []
            for tok in raw.split(","):
                k, _, v = tok.partition(":")
                out.append((int(k), float(v)))
            return tuple(out)
    except ValueError:
        raise ConfigError(f"key {key!r}: cannot parse {raw!r} as {kind}") from None
    return raw


_CONFIG_KEYS = {
    "family": "str",
    "c": "float",
    "alpha": "float",
    "ell": "float",
    "regime": "str",
    "table": "table",
    "n": "int_list",
    "multipliers": "float_list",
    "trials": "int",
    "master_seed": "int",
    "allow_exact": "bool",
    "oracle_cap": "int",
    "workers": "int",
    "output": "str",
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key = value format, with per-key error messages."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_typed(key, value, _CONFIG_KEYS[key])
    for required in ("family", "n", "master_seed", "output"):
        if required not in values:
            raise ConfigError(f"key {required!r}: required")
    values["n_list"] = values.pop("n")
    try:
        config = ExperimentConfig(**values)
        config.spec()  # force field-level spec validation now, not at sweep time
        config.sweep_config()
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    return config


def read_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return parse_config(text)


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    g = sample_gnp(args.n, args.p, RngSeed(args.seed))
    write_edge_list(g, args.out)
    print(f"wrote {g.n} vertices, {g.m} edges to {args.out}")
    return 0


def cmd_analyze(args) -> int:
    g = read_edge_list(args.graph)
    bounds = analyze(g, oracle_cap=args.exact_cap, chi_cap=args.chi_cap)
    print(f"n: {g.n}")
    print(f"m: {g.m}")
    print(f"lower: {bounds.lower}")
    print(f"upper: {bounds.upper}")
    print(f"exact: {bounds.exact if bounds.exact is not None else 'unknown'}")
    print(f"certificates: {','.join(bounds.certificates)}")
    return 0


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    coloring = read_coloring(args.coloring, g)
    witness = first_uncovered_pair(g, coloring)
    if witness is None:
        print(f"valid: every vertex pair has a single-color path ({coloring.num_colors} colors)")
        return 0
    print(f"invalid: no single-color path joins pair ({witness[0]}, {witness[1]})")
    return 1


def cmd_sweep(args) -> int:
    config = read_config(args.config)
    env_workers = os.environ.get("MCLAB_WORKERS")
    override = None
    if env_workers is not None:
        try:
            override = int(env_workers)
        except ValueError:
            raise ConfigError(f"MCLAB_WORKERS: cannot parse {env_workers!r} as int") from None
    report = sweep(config.sweep_config(workers_override=override))
    out = Path(config.output)
    out.write_text(report.to_csv(), encoding="utf-8")
    sidecar = out.with_name(out.name + ".json")
    sidecar.write_text(json.dumps(config.describe(), indent=2) + "\n", encoding="utf-8")
    failed = report.failed_rows()
    print(f"wrote {len(report.rows) - len(failed)} rows to {out} (sidecar {sidecar})")
    for row in failed:
        print(f"row n={row.n} multiplier={_fmt(row.multiplier)} failed: {row.error}",
              file=sys.stderr)
    return 0


def cmd_threshold(args) -> int:
    spec = build_spec(
        args.family,
        c=args.c,
        alpha=args.alpha,
        ell=args.ell,
        regime=args.regime,
        table=dict(_parse_typed("table", args.table, "table")) if args.table else None,
    )
    p = threshold_p(spec, args.n)
    print(f"n: {args.n}")
    print(f"regime: {spec.regime}")
    print(f"f: {_fmt(spec.f_value(args.n))}")
    print(f"threshold_p: {_fmt(p)}")
    if spec.regime == SPARSE:
        # p = (log n + a)/n with a = 0 exactly at the threshold
        print(f"connectivity_limit: {_fmt(connectivity_prob_limit(0.0))}")
    return 0


def _add_spec_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True,
                     help="constant | power | nlogn | custom")
    sub.add_argument("--c", type=float, help="value for the constant family")
    sub.add_argument("--alpha", type=float, help="exponent for the power family")
    sub.add_argument("--ell", type=float, help="coefficient for the nlogn family")
    sub.add_argument("--regime", help="dense | sparse (custom family only)")
    sub.add_argument("--table", help="custom family values, e.g. 100:50,200:120")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mclab",
        description="Monochromatic-connectivity bounds and random-graph threshold experiments",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="sample a seeded random graph to an edge-list file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    an = subs.add_parser("analyze", help="print certified mc bounds for a graph file")
    an.add_argument("graph")
    an.add_argument("--exact-cap", type=int, default=12,
                    help="largest edge count the exact search will attempt")
    an.add_argument("--chi-cap", type=int, default=16,
                    help="largest vertex count for the exact chromatic bound")
    an.set_defaults(func=cmd_analyze)

    ver = subs.add_parser("verify", help="check a coloring file against a graph file")
    ver.add_argument("graph")
    ver.add_argument("coloring")
    ver.set_defaults(func=cmd_verify)

    sw = subs.add_parser("sweep", help="run the Monte Carlo sweep described by a config file")
    sw.add_argument("config")
    sw.set_defaults(func=cmd_sweep)

    th = subs.add_parser("threshold", help="print the threshold probability for f(n)")
    _add_spec_flags(th)
    th.add_argument("--n", type=int, required=True)
    th.set_defaults(func=cmd_threshold)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, FormatError, UnsupportedSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
