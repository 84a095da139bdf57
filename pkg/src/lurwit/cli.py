"""Command-line front end.

Subcommands: `evaluate` one state, `sweep` a noise family over a p grid,
`haar-study` detection rates under random local rotations, `simulate` a
finite-shot counting experiment, and `bound` for the minimized single-party
variance bound. Output is CSV (default) or JSON, to stdout or --out; runs
are bit-identical for identical arguments and seed.

Exit codes: 0 success, 2 usage or input error, 3 internal numerical error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import measurement, rng, states, witness
from .linalg import NumericsError

SWEEP_COLUMNS = ("p", "l2", "ml2", "l3", "ml3", "ppt_min_eig")
EVALUATE_COLUMNS = (
    "state",
    "l2",
    "ml2",
    "l3",
    "ml3",
    "ppt_min_eig",
    "verdict_l2",
    "verdict_ml2",
    "verdict_l3",
    "verdict_ml3",
)
SIMULATE_COLUMNS = (
    "state",
    "shots",
    "l2",
    "l2_se",
    "ml2",
    "ml2_se",
    "l3",
    "l3_se",
    "ml3",
    "ml3_se",
)
STUDY_COLUMNS = (
    "samples",
    "seed",
    "l3_mean",
    "ml3_mean",
    "l3_detect_fraction",
    "ml3_detect_fraction",
    "ml3_only_count",
)
SAMPLE_COLUMNS = ("sample", "l3", "ml3", "ppt_min_eig")
BOUND_COLUMNS = ("observables", "bound")

_OBSERVABLE_TOKENS = {"sx": states.SX, "sy": states.SY, "sz": states.SZ}


@dataclass(frozen=True)
class RunConfig:
    command: str
    state_spec: str = ""
    noise: str = ""
    base: str = "psi-"
    p_start: float = 0.0
    p_stop: float = 1.0
    p_steps: int = 2
    samples: int = 1
    shots: int = 1
    seed: int = 0
    observables: str = ""
    out: str | None = None
    per_sample: str | None = None
    fmt: str = "csv"


def _format_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _write_rows(rows, columns, fmt: str, path: str | None) -> None:
    if fmt == "json":
        text = json.dumps([{c: r[c] for c in columns} for r in rows], indent=2) + "\n"
    else:
        lines = [",".join(columns)]
        lines += [",".join(_format_value(r[c]) for c in columns) for r in rows]
        text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _full_report(rho: states.DensityMatrix) -> dict:
    sets = witness.standard_sets()
    r2 = witness.evaluate(rho, sets["L2"])
    r3 = witness.evaluate(rho, sets["L3"])
    return {
        "l2": r2.l_value,
        "ml2": r2.ml_value,
        "l3": r3.l_value,
        "ml3": r3.ml_value,
        "ppt_min_eig": witness.ppt_min_eigenvalue(rho),
        "verdict_l2": r2.verdict_l.value,
        "verdict_ml2": r2.verdict_ml.value,
        "verdict_l3": r3.verdict_l.value,
        "verdict_ml3": r3.verdict_ml.value,
    }


def run_evaluate(config: RunConfig):
    rho = states.parse_state_spec(config.state_spec)
    row = {"state": config.state_spec, **_full_report(rho)}
    return [row], EVALUATE_COLUMNS


def run_sweep(config: RunConfig):
    try:
        kind = states.NoiseKind(config.noise)
    except ValueError:
        raise ValueError(f"unknown noise family {config.noise!r}; expected werner or polarized")
    if config.p_steps < 2:
        raise ValueError("need at least 2 grid points")
    grid = np.linspace(config.p_start, config.p_stop, config.p_steps)
    sets = witness.standard_sets()
    rows = []
    for p in grid:
        rho = states.noise_mixture(float(p), kind, base=config.base)
        r2 = witness.evaluate(rho, sets["L2"])
        r3 = witness.evaluate(rho, sets["L3"])
        rows.append(
            {
                "p": float(p),
                "l2": r2.l_value,
                "ml2": r2.ml_value,
                "l3": r3.l_value,
                "ml3": r3.ml_value,
                "ppt_min_eig": witness.ppt_min_eigenvalue(rho),
            }
        )
    return rows, SWEEP_COLUMNS


def run_haar_study(kind: str, samples: int, seed: int):
    """Detection-rate study: random local rotations of a Bell state.

    Sample i uses the stream keyed (seed, i), so any subset of samples can
    be recomputed independently and concurrently.
    """
    psi0 = states.bell_state(kind)
    l3_set = witness.standard_sets()["L3"]
    per_sample = []
    l3_detect = ml3_detect = ml3_only = 0
    l3_total = ml3_total = 0.0
    for i in range(samples):
        pair = states.haar_random_local_unitary(rng.stream(seed, i))
        rho = states.density_from_pure(states.apply_to_pure(pair, psi0))
        report = witness.evaluate(rho, l3_set)
        l_hit = report.verdict_l is witness.Verdict.ENTANGLEMENT_DETECTED
        ml_hit = report.verdict_ml is witness.Verdict.ENTANGLEMENT_DETECTED
        l3_detect += l_hit
        ml3_detect += ml_hit
        ml3_only += ml_hit and not l_hit
        l3_total += report.l_value
        ml3_total += report.ml_value
        per_sample.append(
            {
                "sample": i,
                "l3": report.l_value,
                "ml3": report.ml_value,
                "ppt_min_eig": witness.ppt_min_eigenvalue(rho),
            }
        )
    summary = {
        "samples": samples,
        "seed": seed,
        "l3_mean": l3_total / samples,
        "ml3_mean": ml3_total / samples,
        "l3_detect_fraction": l3_detect / samples,
        "ml3_detect_fraction": ml3_detect / samples,
        "ml3_only_count": ml3_only,
    }
    return summary, per_sample


def run_study_command(config: RunConfig):
    if config.samples < 1:
        raise ValueError("need at least one sample")
    kind = config.state_spec or "psi-"
    if kind == "singlet":
        kind = "psi-"
    if kind not in states.BELL_KINDS:
        raise ValueError(f"haar-study expects a Bell state, got {config.state_spec!r}")
    summary, per_sample = run_haar_study(kind, config.samples, config.seed)
    if config.per_sample is not None:
        _write_rows(per_sample, SAMPLE_COLUMNS, config.fmt, config.per_sample)
    return [summary], STUDY_COLUMNS


def simulate_counts(rho: states.DensityMatrix, shots: int, seed: int):
    """One count table per basis, each from its own derived stream."""
    tables = []
    for i, basis in enumerate(states.Basis):
        dist = measurement.outcome_distribution(rho, basis)
        tables.append(measurement.sample_counts(dist, shots, rng.stream(seed, i)))
    return tables


def run_simulate(config: RunConfig):
    if config.shots < 2:
        raise ValueError("need at least 2 shots per basis to estimate a variance")
    rho = states.parse_state_spec(config.state_spec)
    tables = simulate_counts(rho, config.shots, config.seed)
    by_basis = {t.basis: t for t in tables}
    two = measurement.estimate_witnesses(
        [by_basis[states.Basis.LIN_0_90], by_basis[states.Basis.LIN_45_135]]
    )
    three = measurement.estimate_witnesses(tables)
    row = {
        "state": config.state_spec,
        "shots": config.shots,
        "l2": two.l_value,
        "l2_se": two.l_se,
        "ml2": two.ml_value,
        "ml2_se": two.ml_se,
        "l3": three.l_value,
        "l3_se": three.l_se,
        "ml3": three.ml_value,
        "ml3_se": three.ml_se,
    }
    return [row], SIMULATE_COLUMNS


def run_bound(config: RunConfig):
    tokens = [t.strip() for t in config.observables.split(",") if t.strip()]
    if not tokens:
        raise ValueError("need at least one observable (from sx, sy, sz)")
    try:
        obs = [_OBSERVABLE_TOKENS[t] for t in tokens]
    except KeyError as exc:
        raise ValueError(f"unknown observable {exc.args[0]!r}; expected sx, sy or sz") from exc
    value = witness.local_bound(obs)
    return [{"observables": "+".join(tokens), "bound": value}], BOUND_COLUMNS


_COMMANDS = {
    "evaluate": run_evaluate,
    "sweep": run_sweep,
    "haar-study": run_study_command,
    "simulate": run_simulate,
    "bound": run_bound,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lurwit",
        description="Uncertainty-sum entanglement witnesses for two-qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")

    p = sub.add_parser("evaluate", help="exact witness values for one state")
    p.add_argument("--state", required=True, help='state spec, e.g. "singlet" or "werner:p=0.5"')
    add_common(p)

    p = sub.add_parser("sweep", help="witness values over a noise-mixture grid")
    p.add_argument("--noise", required=True, help="noise family: werner or polarized")
    p.add_argument("--base", default="psi-", help="Bell state mixed with the noise")
    p.add_argument("--p-start", type=float, default=0.0)
    p.add_argument("--p-stop", type=float, default=1.0)
    p.add_argument("--p-steps", type=int, default=101)
    add_common(p)

    p = sub.add_parser("haar-study", help="detection rates under Haar-random local rotations")
    p.add_argument("--state", default="psi-", help="Bell state to rotate")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--per-sample", default=None, help="also write one row per sample here")
    add_common(p)

    p = sub.add_parser("simulate", help="finite-shot coincidence-count estimate")
    p.add_argument("--state", required=True)
    p.add_argument("--shots", type=int, required=True, help="shots per basis")
    p.add_argument("--seed", type=int, default=0)
    add_common(p)

    p = sub.add_parser("bound", help="minimized single-party variance bound")
    p.add_argument("--observables", required=True, help="comma-separated from sx, sy, sz")
    add_common(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        state_spec=getattr(args, "state", ""),
        noise=getattr(args, "noise", ""),
        base=getattr(args, "base", "psi-"),
        p_start=getattr(args, "p_start", 0.0),
        p_stop=getattr(args, "p_stop", 1.0),
        p_steps=getattr(args, "p_steps", 2),
        samples=getattr(args, "samples", 1),
        shots=getattr(args, "shots", 1),
        seed=getattr(args, "seed", 0),
        observables=getattr(args, "observables", ""),
        out=args.out,
        per_sample=getattr(args, "per_sample", None),
        fmt=args.fmt,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _config_from_args(args)
    try:
        rows, columns = _COMMANDS[config.command](config)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    _write_rows(rows, columns, config.fmt, config.out)
    return 0


def console_main() -> None:
    raise SystemExit(main())
