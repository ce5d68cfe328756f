"""Command line interface: simulation runs, verification campaigns, data emission.

Exit codes: 0 on success, 1 on configuration errors, 2 when an
invariant or theorem violation is detected.  The default verdict
tolerance can be overridden with the ``QECORR_TOL`` environment
variable; explicit ``--tol`` flags take precedence.  All outputs are
UTF-8; CSV files use a comma delimiter, a dot decimal separator and a
mandatory header row.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from qecorr.correlations import (
    analyze,
    block_discord_check,
    build_Rij,
    discord_oracle,
    env_discord_check,
    ginibre_density,
    random_hermitian,
    random_instance,
    separability_residuals,
)
from qecorr.linalg import DEFAULT_TOL, InvariantViolationError, residual_verdict
from qecorr.model import DephasingModel, EnvironmentState, QubitPureState, evolve_joint, qubit_coherence
from qecorr.timeseries import TimeSeries
from qecorr.twoqubit import fig1_curve

# Residuals between these relative bounds are neither clearly zero nor
# clearly nonzero; verification campaigns log and exclude them.
SPLIT_ZERO = 1e-12
SPLIT_NONZERO = 1e-6

_PRESET_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


@dataclass
class RunConfig:
    model: DephasingModel
    env: EnvironmentState
    psi: QubitPureState
    t_max: float
    steps: int
    tolerance: float
    out: str | None


def _preset_args(text: str | None) -> list[float]:
    if text is None or not text.strip():
        return []
    return [float(part) for part in text.split(",")]


def _parse_entry(value, field: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"{field}: matrix entries must be numbers or [re, im] pairs")


def parse_operator(spec, n: int, field: str) -> np.ndarray:
    """Explicit row-major matrix or a named preset with numeric arguments."""
    if isinstance(spec, str):
        m = _PRESET_RE.match(spec)
        if not m:
            raise ValueError(f"{field}: unparseable preset {spec!r}")
        name, args = m.group(1), _preset_args(m.group(2))
        if name == "zero":
            return np.zeros((n, n), dtype=complex)
        if name == "pauli_z":
            if n != 2:
                raise ValueError(f"{field}: pauli_z preset needs env_dim 2, got {n}")
            g = args[0] if args else 1.0
            return g * np.diag([1.0, -1.0]).astype(complex)
        if name == "random_hermitian":
            if not args:
                raise ValueError(f"{field}: random_hermitian needs a seed")
            scale = args[1] if len(args) > 1 else 1.0
            return random_hermitian(n, np.random.default_rng(int(args[0])), scale)
        if name == "diag":
            if len(args) != n:
                raise ValueError(f"{field}: diag preset needs {n} values, got {len(args)}")
            return np.diag(args).astype(complex)
        if name == "ginibre_density":
            if not args:
                raise ValueError(f"{field}: ginibre_density needs a seed")
            return ginibre_density(n, np.random.default_rng(int(args[0])))
        raise ValueError(f"{field}: unknown preset {name!r}")
    rows = [[_parse_entry(v, field) for v in row] for row in spec]
    mat = np.array(rows, dtype=complex)
    if mat.shape != (n, n):
        raise ValueError(f"{field}: dimension mismatch: expected {n}x{n}, got {mat.shape}")
    return mat


def _parse_amplitude(value, field: str) -> complex:
    if not (isinstance(value, list) and len(value) == 2):
        raise ValueError(f"{field}: expected a [magnitude, phase] pair")
    mag, phase = float(value[0]), float(value[1])
    if mag < 0:
        raise ValueError(f"{field}: magnitude must be non-negative")
    return mag * np.exp(1j * phase)


def _require(config: dict, field: str):
    if field not in config:
        raise ValueError(f"config: missing field {field!r}")
    return config[field]


def parse_config(path: str, default_tol: float) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"config: malformed JSON in {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError("config: top level must be a JSON object")
    mode = raw.get("mode", "simulate")
    if mode != "simulate":
        raise ValueError(f"config: unsupported mode {mode!r}")
    n = int(_require(raw, "env_dim"))
    if n < 1:
        raise ValueError("config: env_dim must be positive")
    model = DephasingModel(
        env_hamiltonian=parse_operator(_require(raw, "env_hamiltonian"), n, "env_hamiltonian"),
        coupling0=parse_operator(_require(raw, "coupling0"), n, "coupling0"),
        coupling1=parse_operator(_require(raw, "coupling1"), n, "coupling1"),
        eps0=float(raw.get("eps0", 0.0)),
        eps1=float(raw.get("eps1", 0.0)),
    )
    env = EnvironmentState(parse_operator(_require(raw, "rho0"), n, "rho0"))
    alpha = _parse_amplitude(_require(raw, "alpha"), "alpha")
    beta = _parse_amplitude(_require(raw, "beta"), "beta")
    norm = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    if norm == 0:
        raise ValueError("config: alpha and beta cannot both vanish")
    psi = QubitPureState(alpha / norm, beta / norm)
    t_max = float(_require(raw, "t_max"))
    steps = int(_require(raw, "steps"))
    if t_max <= 0 or steps < 2:
        raise ValueError("config: need t_max > 0 and steps >= 2")
    return RunConfig(
        model=model,
        env=env,
        psi=psi,
        t_max=t_max,
        steps=steps,
        tolerance=float(raw.get("tolerance", default_tol)),
        out=raw.get("out"),
    )


SIMULATE_COLUMNS = (
    "t",
    "coherence",
    "sep_residual",
    "separable",
    "env_discord_residual",
    "env_zero_discord",
    "qubit_discord_residual",
    "qubit_zero_discord",
)


def cmd_simulate(args, default_tol: float) -> int:
    config = parse_config(args.config, default_tol)
    out = args.out or config.out
    if not out:
        raise ValueError("config: no output path (use --out or the config 'out' field)")
    series = TimeSeries(SIMULATE_COLUMNS)
    for t in np.linspace(0.0, config.t_max, config.steps):
        sigma = evolve_joint(config.psi, config.env, config.model, t)
        report = analyze(config.psi, config.env, config.model, t, config.tolerance)
        series.append(
            float(t),
            qubit_coherence(sigma),
            report.sep_residual,
            report.separable,
            report.env_discord_residual,
            report.env_zero_discord,
            report.qubit_discord_residual,
            report.qubit_zero_discord,
        )
    out_path = Path(out)
    series.write_csv(out_path)

    coherences = series.column("coherence")
    times = series.column("t")
    transitions = {}
    for name in ("separable", "env_zero_discord", "qubit_zero_discord"):
        flags = series.column(name)
        transitions[name] = [
            times[i] for i in range(1, len(flags)) if flags[i] != flags[i - 1]
        ]
    summary = {
        "t_max": config.t_max,
        "steps": config.steps,
        "tolerance": config.tolerance,
        "coherence_min": min(coherences),
        "coherence_max": max(coherences),
        "verdict_transitions": transitions,
    }
    _write_json(summary, out_path.with_name(out_path.stem + ".summary.json"))
    return 0


def cmd_verify_equivalence(args, default_tol: float) -> int:
    tol = args.tol if args.tol is not None else default_tol
    env_dims = _int_list(args.env_dims, "--env-dims")
    if args.trials < 1 or args.times < 1:
        raise ValueError("--trials and --times must be at least 1")
    rng = np.random.default_rng(args.seed)
    classes = ("random", "diagonal", "pure_env")

    samples = 0
    borderline: list[dict] = []
    violations: list[dict] = []
    agreements = 0
    form_agreements = 0
    subset_violations = 0
    max_gap = 0.0
    max_zero_side = 0.0
    min_nonzero_side = float("inf")
    by_class = {kind: {"samples": 0, "separable": 0} for kind in classes}

    for n in env_dims:
        for kind in classes:
            for trial in range(args.trials):
                env, model = random_instance(kind, n, rng)
                times = rng.uniform(0.05, 2 * np.pi, size=args.times)
                for t in times:
                    samples += 1
                    by_class[kind]["samples"] += 1
                    res_comm, res_conj, scale = separability_residuals(env, model, t)
                    separable = residual_verdict(res_comm, tol, scale)
                    conj_separable = residual_verdict(res_conj, tol, scale)
                    env_zero, env_res = env_discord_check(build_Rij(env, model, t), tol)
                    if separable:
                        by_class[kind]["separable"] += 1

                    rel = max(res_comm, env_res) / max(1.0, scale)
                    rel_min = min(res_comm, env_res) / max(1.0, scale)
                    info = {
                        "class": kind,
                        "env_dim": n,
                        "trial": trial,
                        "t": float(t),
                        "sep_residual": res_comm,
                        "conj_residual": res_conj,
                        "env_discord_residual": env_res,
                    }
                    if SPLIT_ZERO < rel < SPLIT_NONZERO or SPLIT_ZERO < rel_min < SPLIT_NONZERO:
                        borderline.append(info)
                        continue
                    max_gap = max(max_gap, abs(res_comm - env_res))
                    if rel <= SPLIT_ZERO:
                        max_zero_side = max(max_zero_side, rel)
                    else:
                        min_nonzero_side = min(min_nonzero_side, rel_min if rel_min >= SPLIT_NONZERO else rel)
                    if conj_separable == separable:
                        form_agreements += 1
                    else:
                        violations.append({"kind": "criterion_form", **info})
                    if env_zero == separable:
                        agreements += 1
                    else:
                        violations.append({"kind": "equivalence", **info})
                    if env_zero and not separable:
                        subset_violations += 1

    report = {
        "seed": args.seed,
        "tol": tol,
        "env_dims": env_dims,
        "trials": args.trials,
        "times_per_trial": args.times,
        "samples": samples,
        "checked": samples - len(borderline),
        "equivalence_agreements": agreements,
        "criterion_form_agreements": form_agreements,
        "subset_violations": subset_violations,
        "max_residual_gap": max_gap,
        "residual_split": {
            "max_zero_side": max_zero_side,
            "min_nonzero_side": min_nonzero_side if samples else 0.0,
        },
        "by_class": by_class,
        "borderline_count": len(borderline),
        "borderline": borderline,
        "violations": violations,
    }
    _write_json(report, args.out)
    return 2 if violations else 0


FIG1_COLUMNS = ("c0", "t_normalized", "concurrence")


def cmd_fig1(args, default_tol: float) -> int:
    del default_tol
    c0_values = _float_list(args.c0, "--c0")
    for c0 in c0_values:
        if not 0.5 <= c0 <= 1.0:
            raise ValueError(f"--c0: values must lie in [0.5, 1], got {c0}")
    if args.samples < 2:
        raise ValueError("--samples must be at least 2")
    series = TimeSeries(FIG1_COLUMNS)
    for c0 in c0_values:
        series.extend(fig1_curve(c0, samples=args.samples).select(FIG1_COLUMNS))
    series.write_csv(args.out)
    return 0


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _bell_derived_state(rng: np.random.Generator) -> np.ndarray:
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    u = np.kron(_haar_unitary(2, rng), _haar_unitary(2, rng))
    v = u @ bell
    return np.outer(v, v.conj())


def _classical_classical_state(rng: np.random.Generator) -> np.ndarray:
    p = rng.random(4)
    p /= p.sum()
    return np.diag(p).astype(complex)


def cmd_oracle_crosscheck(args, default_tol: float) -> int:
    tol = args.tol if args.tol is not None else default_tol
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    rng = np.random.default_rng(args.seed)
    states = [("random", i, ginibre_density(4, rng)) for i in range(args.trials)]
    states += [("classical", i, _classical_classical_state(rng)) for i in range(args.cc)]
    states += [("bell", i, _bell_derived_state(rng)) for i in range(args.bell)]

    disagreements = []
    max_zero = 0.0
    min_nonzero = float("inf")
    oracle_ranges: dict[str, list[float]] = {}
    for kind, index, state in states:
        value = discord_oracle(state, (2, 2), measured=1)
        block_zero, block_res = block_discord_check(state, (2, 2), 1, tol)
        lo, hi = oracle_ranges.get(kind, (value, value))
        oracle_ranges[kind] = [min(lo, value), max(hi, value)]
        oracle_zero = value <= 5e-3
        if oracle_zero:
            max_zero = max(max_zero, value)
        else:
            min_nonzero = min(min_nonzero, value)
        if oracle_zero != block_zero:
            disagreements.append(
                {
                    "kind": kind,
                    "index": index,
                    "oracle": value,
                    "block_residual": block_res,
                    "state": [[[v.real, v.imag] for v in row] for row in state],
                }
            )
    total = len(states)
    report = {
        "seed": args.seed,
        "tol": tol,
        "trials": args.trials,
        "classical_states": args.cc,
        "bell_states": args.bell,
        "count": total,
        "agreements": total - len(disagreements),
        "agreement_rate": (total - len(disagreements)) / total,
        "max_oracle_on_zero_side": max_zero,
        "min_oracle_on_discordant_side": min_nonzero if min_nonzero < float("inf") else 0.0,
        "oracle_ranges": oracle_ranges,
        "disagreements": disagreements,
    }
    _write_json(report, args.out)
    return 2 if disagreements else 0


def _write_json(payload: dict, out) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"{flag}: expected a comma-separated integer list") from exc


def _float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"{flag}: expected a comma-separated number list") from exc


class _Parser(argparse.ArgumentParser):
    """Argument errors are configuration errors: exit 1, not argparse's 2."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qecorr",
        description="Exact qubit-environment pure-dephasing simulation and correlation analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="time series of coherence and correlation verdicts")
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.add_argument("--out", help="output CSV path (overrides the config)")

    p = sub.add_parser(
        "verify-equivalence",
        help="random-instance campaign checking separability == env zero discord",
    )
    p.add_argument("--env-dims", default="2,3,4")
    p.add_argument("--trials", type=int, default=4, help="instances per class and dimension")
    p.add_argument("--times", type=int, default=9, help="time samples per instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", help="JSON report path (default: stdout)")

    p = sub.add_parser("fig1", help="full-cycle concurrence curves for the Bell-pair model")
    p.add_argument("--c0", default="0.5,0.7,0.9")
    p.add_argument("--samples", type=int, default=129)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser(
        "oracle-crosscheck",
        help="brute-force discord oracle vs the block criterion on random states",
    )
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--cc", type=int, default=20, help="injected classical-classical states")
    p.add_argument("--bell", type=int, default=20, help="injected Bell-derived states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", help="JSON report path (default: stdout)")

    return parser


_COMMANDS = {
    "simulate": cmd_simulate,
    "verify-equivalence": cmd_verify_equivalence,
    "fig1": cmd_fig1,
    "oracle-crosscheck": cmd_oracle_crosscheck,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        default_tol = float(os.environ.get("QECORR_TOL", DEFAULT_TOL))
    except ValueError:
        print("error: QECORR_TOL must be a number", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args, default_tol)
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
