"""Command-line front end.

Subcommands cover the full pipeline: `generate` builds the base and
balanced sets and the operation ledger, `analyze` reports correlation and
histogram statistics for sequence files, `fairness` sweeps the family size
and fits the mean-operation trend, `simulate` runs the synchronous
slot-collision model on a scenario file.

Settings resolve as CLI flags > JSON config file > built-in defaults.
Exit codes: 0 ok, 2 bad configuration, 3 math/domain failure, 4 I/O or
parse failure. Errors are emitted as one JSON object per line on stderr.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import sympy

from .balancer import cfb_balance, mean_operation_curve
from .correlation import analyze_set, pairwise_profiles
from .errors import ConfigError, FamilySizeError, HopsetError, SequenceFormatError
from .lfsr import LfsrConfig, default_polynomial, generate_m_sequence
from .mapping import FamilyConfig, FrequencyPlan, build_base_set, default_shift
from . import seqio
from .sim import simulate

_CONFIG_KEYS = {"p", "l", "b", "M", "q", "tau", "poly", "out", "format"}


@dataclass
class RunConfig:
    """Resolved run settings shared by the generate/fairness commands."""

    p: int = 2
    l: int = 14
    b: int = 4
    q: int = 5
    tau: int = None
    poly: tuple = None
    out: str = "."
    format: str = "csv"

    @property
    def M(self):
        return self.p**self.b

    @property
    def n(self):
        return self.p**self.l - 1


def _parse_poly(value, p):
    if isinstance(value, str):
        value = value.split(",")
    try:
        taps = tuple(int(c) for c in value)
    except (TypeError, ValueError):
        raise ConfigError(f"polynomial taps must be integers, got {value!r}") from None
    if any(c < 0 or c >= p for c in taps):
        raise ConfigError(f"polynomial coefficients must lie in [0, {p})")
    return taps


def _resolve_config(args, family=True) -> RunConfig:
    """Merge defaults, config file, and CLI flags; validate consistency.

    Commands without a family notion (fairness sweeps q internally) skip
    the q bound check.
    """
    merged = {}
    if getattr(args, "config", None):
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(raw)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value

    cfg = RunConfig()
    cfg.p = int(merged.get("p", cfg.p))
    if not sympy.isprime(cfg.p):
        raise ConfigError(f"p={cfg.p} is not prime")
    cfg.l = int(merged.get("l", cfg.l))
    if cfg.l < 1:
        raise ConfigError(f"l={cfg.l} must be positive")

    if "M" in merged:
        M = int(merged["M"])
        b = 1
        while cfg.p**b < M:
            b += 1
        if cfg.p**b != M:
            raise ConfigError(f"M={M} is not a power of p={cfg.p}")
        if "b" in merged and int(merged["b"]) != b:
            raise ConfigError(f"b={merged['b']} inconsistent with M={M}=p^{b}")
        cfg.b = b
    else:
        cfg.b = int(merged.get("b", cfg.b))
    if cfg.b < 1:
        raise ConfigError(f"b={cfg.b} must be positive")

    if family:
        cfg.q = int(merged.get("q", cfg.q))
        if cfg.q < 1 or cfg.q > cfg.M:
            raise ConfigError(str(FamilySizeError(cfg.q, cfg.M)))
    else:
        cfg.q = 1

    if merged.get("tau") is not None:
        cfg.tau = int(merged["tau"])
        if not sympy.isprime(cfg.tau):
            raise ConfigError(f"tau={cfg.tau} must be prime")
        if cfg.tau >= cfg.n:
            raise ConfigError(f"tau={cfg.tau} must be below the period n={cfg.n}")
    if merged.get("poly") is not None:
        cfg.poly = _parse_poly(merged["poly"], cfg.p)
        if len(cfg.poly) != cfg.l + 1:
            raise ConfigError(
                f"polynomial has degree {len(cfg.poly) - 1}, expected l={cfg.l}"
            )
    cfg.out = str(merged.get("out", cfg.out))
    cfg.format = str(merged.get("format", cfg.format))
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    return cfg


def _build_sequence(cfg: RunConfig):
    taps = cfg.poly if cfg.poly is not None else default_polynomial(cfg.p, cfg.l)
    seed = (1,) + (0,) * (cfg.l - 1)
    return generate_m_sequence(LfsrConfig(p=cfg.p, taps=taps, seed=seed))


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_generate(args) -> int:
    cfg = _resolve_config(args)
    mseq = _build_sequence(cfg)
    plan = FrequencyPlan(p=cfg.p, b=cfg.b)
    tau = cfg.tau if cfg.tau is not None else default_shift(mseq.n, cfg.q)
    base = build_base_set(mseq, FamilyConfig(q=cfg.q, tau=tau), plan)
    balanced, ledger = cfb_balance(base)

    out = _out_dir(cfg)
    seqio.write_sequence_set(out / "base.txt", base)
    seqio.write_sequence_set(out / "balanced.txt", balanced)
    if cfg.format == "json":
        seqio.write_ledger_json(out / "ledger.json", ledger)
        written = ["base.txt", "balanced.txt", "ledger.json"]
    else:
        seqio.write_ledger_csv(out / "ledger.csv", ledger)
        seqio.write_usage_csv(out / "usage.csv", ledger)
        written = ["base.txt", "balanced.txt", "ledger.csv", "usage.csv"]
    for name in written:
        print(out / name)
    return 0


def cmd_analyze(args) -> int:
    cfg = _resolve_config(args)
    out = _out_dir(cfg)
    for input_path in args.files:
        sset = seqio.read_sequence_set(input_path)
        profiles = pairwise_profiles(sset)
        report = analyze_set(sset, profiles=profiles)
        stem = Path(input_path).stem
        seqio.write_analysis_report(out / f"{stem}.report.json", report)
        seqio.write_histograms_csv(out / f"{stem}.histograms.csv", report.histograms)
        for profile in profiles:
            u, v = profile.pair
            seqio.write_profile_csv(out / f"{stem}.profile.{u}-{v}.csv", profile)
        print(out / f"{stem}.report.json")
    return 0


def cmd_fairness(args) -> int:
    cfg = _resolve_config(args, family=False)
    mseq = _build_sequence(cfg)
    plan = FrequencyPlan(p=cfg.p, b=cfg.b)
    report = mean_operation_curve(mseq, plan, tau=cfg.tau)
    out = _out_dir(cfg)
    if cfg.format == "json":
        seqio.write_fairness_json(out / "fairness.json", report)
        print(out / "fairness.json")
    else:
        seqio.write_fairness_csv(out / "fairness.csv", report)
        print(out / "fairness.csv")
    print(f"h1 = {report.slope:.5f}  h2 = {report.intercept:.5f}")
    return 0


def cmd_simulate(args) -> int:
    scenario = seqio.load_scenario(args.scenario)
    report = simulate(scenario)
    print(json.dumps(seqio.collision_report_payload(report), indent=2))
    return 0


def _add_config_flags(parser, with_family=True):
    parser.add_argument("--p", type=int, help="prime symbol modulus (default 2)")
    parser.add_argument("--l", type=int, help="primitive polynomial degree (default 14)")
    parser.add_argument("--b", type=int, help="symbols per hop word (default 4)")
    parser.add_argument("--M", type=int, help="frequency spot count p^b (alternative to --b)")
    if with_family:
        parser.add_argument("--q", type=int, help="family size, 1 <= q <= M (default 5)")
    parser.add_argument("--tau", type=int, help="prime rotation step between members")
    parser.add_argument("--poly", help="polynomial taps c0,...,cl, lowest degree first")
    parser.add_argument("--out", help="output directory (default .)")
    parser.add_argument("--format", choices=("csv", "json"), help="ledger/curve format")
    parser.add_argument("--config", help="JSON config file, overridden by flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopset",
        description="Build and analyze collision-free balanced frequency hopping sequence sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="construct base + balanced sets and the ledger")
    _add_config_flags(gen)
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="correlation/histogram reports for sequence files")
    ana.add_argument("files", nargs="+", help="sequence files to analyze")
    _add_config_flags(ana)
    ana.set_defaults(func=cmd_analyze)

    fair = sub.add_parser("fairness", help="sweep q=1..M and fit the mean-operation trend")
    _add_config_flags(fair, with_family=False)
    fair.set_defaults(func=cmd_fairness)

    sim = sub.add_parser("simulate", help="run the synchronous collision model on a scenario")
    sim.add_argument("scenario", help="scenario JSON: hops, offsets, sequences path")
    sim.set_defaults(func=cmd_simulate)
    return parser


def _emit_error(exc) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _emit_error(exc)
        return 2
    except (SequenceFormatError, OSError, json.JSONDecodeError) as exc:
        _emit_error(exc)
        return 4
    except (HopsetError, ZeroDivisionError) as exc:
        _emit_error(exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
