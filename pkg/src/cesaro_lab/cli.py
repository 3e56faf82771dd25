"""Command line runner: ``cesaro-lab <command> [flags]``.

Exit codes: 0 success, 1 bad configuration, 2 ``--assert`` gate failed,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import algebras, calculus, fracdiff, kernels, operators
from .fixtures import load_fixture
from .fracdiff import ZSeq

COMMANDS = ("kernel", "weyl", "norm", "cesaro", "kt-decay", "mean-diff", "ergodic", "identities")
IDENTITY_TOL = 1e-9

EXIT_OK, EXIT_CONFIG, EXIT_ASSERT, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    fixture: str | None = None
    alpha: float = 1.0
    n_max: int = 100
    grid: str = "linear"
    fn: str | None = None
    out: str | None = None
    format: str = "csv"
    check: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise ConfigError(f"--alpha must be a finite number >= 0, got {self.alpha}")
        if self.n_max < 1:
            raise ConfigError(f"--n-max must be >= 1, got {self.n_max}")
        if self.grid not in ("linear", "dyadic"):
            raise ConfigError(f"--grid must be linear or dyadic, got {self.grid!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"--format must be csv or json, got {self.format!r}")

    def matrix(self) -> np.ndarray:
        if self.fixture is None:
            raise ConfigError(f"{self.command} needs --fixture")
        try:
            return load_fixture(self.fixture)
        except (LookupError, OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot load fixture {self.fixture!r}: {exc}") from exc

    def grid_points(self) -> list[int]:
        if self.grid == "dyadic":
            return calculus.dyadic_grid(self.n_max)
        return calculus.linear_grid(self.n_max)


@dataclass
class Result:
    """What a command produced: a table plus a JSON document, and a gate verdict."""

    header: list[str]
    rows: list[list]
    document: dict
    passed: bool = True


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.16e}"
    return str(v)


def _render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.document, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.header)
    for row in result.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _load_sequence(cfg: RunConfig, T: np.ndarray | None = None) -> ZSeq:
    source = cfg.fn or "annihilator"
    if source == "annihilator":
        if T is None:
            T = cfg.matrix()
        return algebras.annihilator_polynomial(operators.peripheral_spectrum(T)).coeffs
    if source.startswith("coeffs:"):
        path = Path(source[len("coeffs:") :])
        try:
            data = json.loads(path.read_text())
            return ZSeq.from_dict(data["coeffs"] if "coeffs" in data else data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read coefficients from {path}: {exc}") from exc
    raise ConfigError(f"--fn must be 'annihilator' or 'coeffs:<path>', got {source!r}")


# commands -------------------------------------------------------------------


def _cmd_kernel(cfg: RunConfig) -> Result:
    k = kernels.kernel_values(cfg.alpha, cfg.n_max)
    rows = [[n, float(v)] for n, v in enumerate(k)]
    recurrence_ok = all(
        k[n + 1] == k[n] * (cfg.alpha + n) / (n + 1) for n in range(cfg.n_max)
    )
    inverse = kernels.kernel_convolve(k, kernels.kernel_values(-cfg.alpha, cfg.n_max))
    delta = np.zeros_like(inverse)
    delta[0] = 1.0
    semigroup_residual = float(np.max(np.abs(inverse - delta)))
    passed = k[0] == 1.0 and recurrence_ok and semigroup_residual <= 1e-10
    doc = {
        "alpha": cfg.alpha,
        "values": [float(v) for v in k],
        "checks": {"recurrence": recurrence_ok, "inverse_residual": semigroup_residual},
    }
    return Result(["n", "value"], rows, doc, passed)


def _cmd_weyl(cfg: RunConfig) -> Result:
    f = _load_sequence(cfg)
    w = fracdiff.weyl_combined(f, cfg.alpha)
    rows = [[n, v.real, v.imag] for n, v in w.items()]
    passed = True
    if cfg.alpha > 0 and not float(cfg.alpha).is_integer():
        for n, v in w.items():
            alt = (
                fracdiff.weyl_diff_plus_via_composition(f, cfg.alpha, n)
                if n >= 0
                else fracdiff.weyl_diff_minus_via_composition(f, cfg.alpha, n)
            )
            passed &= abs(alt - v) <= 1e-10 * max(1.0, abs(v))
    doc = {"alpha": cfg.alpha, "input": f.to_dict(), "output": w.to_dict()}
    return Result(["n", "re", "im"], rows, doc, bool(passed))


def _cmd_norm(cfg: RunConfig) -> Result:
    f = _load_sequence(cfg)
    q_minus, q_plus = algebras.q_norm_split(f, cfg.alpha)
    values = {
        "l1": f.l1(),
        "q_alpha": q_minus + q_plus,
        "q_alpha_minus": q_minus,
        "q_alpha_plus": q_plus,
    }
    if cfg.alpha > 0:
        values["q_bar_alpha"] = algebras.q_bar_norm(f, cfg.alpha)
    passed = values["l1"] <= values["q_alpha"] * (1 + 1e-10)
    doc = {"alpha": cfg.alpha, "input": f.to_dict(), "norms": values}
    return Result(["quantity", "value"], [[k, v] for k, v in values.items()], doc, passed)


def _cmd_cesaro(cfg: RunConfig) -> Result:
    T = cfg.matrix()
    ct = operators.CesaroTransform(T, cfg.alpha, cfg.n_max)
    probe = operators.cesaro_bounded_probe(ct, cfg.alpha, cfg.n_max)
    grid = cfg.grid_points()
    rows = [[n, float(probe.values[n])] for n in grid]
    doc = {
        "fixture": cfg.fixture,
        "alpha": cfg.alpha,
        "sup": probe.sup,
        "lower_max": probe.lower_max,
        "upper_max": probe.upper_max,
        "non_growing": probe.non_growing,
        "spectral_radius": operators.spectral_radius(T),
        "rows": rows,
    }
    return Result(["n", "value"], rows, doc, probe.non_growing)


def _curve_result(curve: calculus.DecayCurve, cfg: RunConfig, expect_decay: bool) -> Result:
    try:
        decays = curve.decays()
    except ValueError:
        decays = None
    doc = curve.to_json()
    doc["meta"].update(fixture=cfg.fixture, grid=cfg.grid)
    doc["verdicts"] = {"decays": decays, "decay_expected": expect_decay}
    passed = (not expect_decay) or bool(decays)
    return Result(["n", "value"], [list(r) for r in curve.rows], doc, passed)


def _cmd_kt_decay(cfg: RunConfig) -> Result:
    T = cfg.matrix()
    f = _load_sequence(cfg, T)
    if not f.is_zero and f.lo < 0:
        raise ConfigError("the function must have no negative Fourier modes")
    ct = operators.CesaroTransform(T, cfg.alpha, cfg.n_max)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        curve = calculus.kt_decay_curve(ct, f, cfg.grid_points())
    return _curve_result(curve, cfg, expect_decay=curve.meta["annihilates"])


def _cmd_mean_diff(cfg: RunConfig) -> Result:
    T = cfg.matrix()
    ct = operators.CesaroTransform(T, cfg.alpha, cfg.n_max + 1)
    curve = calculus.mean_difference_curve(ct, cfg.grid_points())
    bounded = operators.cesaro_bounded_probe(ct, cfg.alpha, cfg.n_max).non_growing
    expect = curve.meta["peripheral_subset_of_one"] and bounded
    return _curve_result(curve, cfg, expect_decay=expect)


def _cmd_ergodic(cfg: RunConfig) -> Result:
    if cfg.alpha < 1:
        raise ConfigError("ergodic needs --alpha >= 1")
    if cfg.n_max < 4:
        raise ConfigError("ergodic needs --n-max >= 4")
    T = cfg.matrix()
    ct = operators.CesaroTransform(T, cfg.alpha, cfg.n_max)
    report = calculus.ergodic_growth_report(ct, cfg.n_max)
    doc = report.to_json()
    doc["meta"].update(fixture=cfg.fixture)
    bounded = operators.cesaro_bounded_probe(ct, cfg.alpha, cfg.n_max).non_growing
    expect = report.meta["peripheral_subset_of_one"] and bounded
    doc["verdicts"]["decay_expected"] = expect
    passed = (not expect) or (report.mean_ratio_decays() and report.power_ratio_decays())
    keep = set(cfg.grid_points())
    rows = [r for r in doc["rows"] if r[0] in keep]
    return Result(["n", "mean_ratio", "power_ratio"], rows, doc, passed)


def identity_residuals(T: np.ndarray, alpha: float, n_max: int, seed: int = 0) -> list[dict]:
    """Max residuals of the exact identities of the calculus for one matrix."""
    ct = operators.CesaroTransform(T, alpha, n_max + 1)
    rng = np.random.default_rng(seed)
    out = []

    def record(name, residual, scale):
        tol = IDENTITY_TOL * scale
        out.append({"identity": name, "residual": residual, "tolerance": tol, "pass": residual <= tol})

    if alpha >= 1:
        step = [
            calculus.mean_step_identity_residual(ct, n) / (1 + operators.operator_norm(ct.mean(n)))
            for n in range(n_max)
        ]
        record("mean_step", max(step), 1.0)
        shift = max(calculus.mean_shift_identity_residual(ct, n) for n in range(n_max))
        record("mean_shift", shift, 1 + operators.operator_norm(T))

    top = min(n_max, 24)
    worst = 0.0
    for j in range(top + 1):
        f = ZSeq.delta(j)
        theta = calculus.functional_calculus(ct, f)
        worst = max(worst, calculus.calculus_consistency_residual(ct, f) / (1 + operators.operator_norm(theta)))
    record("calculus_matches_polynomial", worst, 1.0)

    worst = 0.0
    for n in range(top + 1):
        h = calculus.h_sequence(alpha, n) if alpha > 0 else ZSeq.delta(n)
        diff = calculus.functional_calculus(ct, h) - ct.sum(n)
        worst = max(worst, operators.operator_norm(diff) / (1 + operators.operator_norm(ct.sum(n))))
    record("theta_of_h_is_cesaro_sum", worst, 1.0)

    worst = 0.0
    for _ in range(20):
        f = fracdiff.random_zseq(rng, 0, int(rng.integers(0, 8)))
        g = fracdiff.random_zseq(rng, 0, int(rng.integers(0, 8)))
        a = calculus.functional_calculus(ct, f)
        b = calculus.functional_calculus(ct, g)
        ab = calculus.functional_calculus(ct, fracdiff.convolve(f, g))
        scale = 1 + operators.operator_norm(a) * operators.operator_norm(b)
        worst = max(worst, operators.operator_norm(ab - a @ b) / scale)
    record("homomorphism", worst, 1.0)
    return out


def _cmd_identities(cfg: RunConfig) -> Result:
    T = cfg.matrix()
    checks = identity_residuals(T, cfg.alpha, cfg.n_max)
    rows = [[c["identity"], c["residual"], c["tolerance"], c["pass"]] for c in checks]
    doc = {"fixture": cfg.fixture, "alpha": cfg.alpha, "n_max": cfg.n_max, "checks": checks}
    return Result(
        ["identity", "residual", "tolerance", "pass"], rows, doc, all(c["pass"] for c in checks)
    )


_HANDLERS = {
    "kernel": _cmd_kernel,
    "weyl": _cmd_weyl,
    "norm": _cmd_norm,
    "cesaro": _cmd_cesaro,
    "kt-decay": _cmd_kt_decay,
    "mean-diff": _cmd_mean_diff,
    "ergodic": _cmd_ergodic,
    "identities": _cmd_identities,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one configuration and return the process exit status."""
    stdout = stdout or sys.stdout
    try:
        cfg.validate()
        result = _HANDLERS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except operators.NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = _render(result, cfg.format)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)
    if cfg.check and not result.passed:
        print(f"assertion failed for {cfg.command}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=1.0, help="order alpha >= 0")
    common.add_argument("--n-max", type=int, default=100, dest="n_max")
    common.add_argument("--fixture", help="fixture name or path to a matrix JSON file")
    common.add_argument("--fn", help="'annihilator' or 'coeffs:<path>'")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--grid", choices=("linear", "dyadic"), default="linear")
    common.add_argument("--assert", action="store_true", dest="check",
                        help="exit with status 2 if a documented tolerance is violated")

    parser = argparse.ArgumentParser(prog="cesaro-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    cfg = RunConfig(**vars(args))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
