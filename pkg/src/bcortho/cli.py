"""Batch verification harness.

Runs named suites of numerical identity checks (orthogonality, norms,
constant terms, limit transitions) over a parameter configuration and
emits a machine-readable certification report. Configurations come from
a flat key=value file, command-line flags, or both (flags win).

Report schema (JSON): {suite, config_echo, checks: [{name, anchor, lhs,
rhs, abs_err, rel_err, tol, pass, ms}], summary: {pass, fail}}. The
anchor field carries a short statement of the identity being checked.
Exit status is 0 exactly when no check failed. Reruns with the same
configuration and seed produce an identical report body except for the
per-check wall times.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from .askey_wilson import aw1_oracle, aw_norm, aw_polynomial, gustafson_constant
from .bcpoly import LaurentPolynomial, partitions_dominated_by
from .big import (
    BigParams,
    askey_evans_lhs,
    askey_evans_rhs,
    asymptotic_ratio,
    big_polynomial,
    bilinear_big,
    c_weights,
    c_weights_defining,
    limit_scan_big,
    measure_constant_big,
    norm_big,
    selberg_big,
    selberg_big_qk,
)
from .errors import BcorthoError, ConfigError, IoError
from .little import (
    LittleParams,
    bilinear_little,
    limit_scan_little,
    little_polynomial,
    measure_constant_little,
    norm_little,
    selberg_little,
)
from .measures import partial_bilinear, torus_bilinear
from .params import AWParams
from .qracah import (
    QRacahParams,
    bilinear_qR,
    kr_constant,
    norm_qR,
    qracah_polynomial,
    summation_qR,
    support_qR,
    weight_qR,
)

SUITES = ("aw", "qracah", "little", "big", "limits", "selberg")

# Default parameter sets, one per suite; chosen inside the admissible
# domains with comfortable margins from poles and eigenvalue collisions.
DEFAULTS: Dict[str, Dict[str, float]] = {
    "aw": dict(n=2, lmax=2, q=0.5, t=0.3, t0=0.35, t1=-0.45, t2=0.25,
               t3=0.2, M=128, depth=64, seed=0),
    "qracah": dict(n=2, lmax=2, q=0.5, t=0.3, t0=0.7, t1=-0.5, t2=0.4,
                   N=2, depth=64, seed=0),
    "little": dict(n=2, lmax=2, q=0.5, t=0.3, a=0.4, b=0.2, depth=400,
                   seed=0),
    "big": dict(n=2, lmax=2, q=0.5, t=0.4, a=0.6, b=0.3, c=1.0, d=0.8,
                depth=400, seed=0),
    "limits": dict(n=2, lmax=2, q=0.5, t=0.3, a=0.4, b=0.2, c=1.0, d=0.8,
                   M=64, depth=128, kmax=15, seed=0),
    "selberg": dict(n=2, q=0.5, t=0.3, t0=0.35, t1=-0.45, t2=0.25,
                    t3=0.2, a=0.4, b=0.2, c=1.0, d=0.8, N=2, M=128,
                    depth=64, seed=0),
}

INT_KEYS = {"n", "lmax", "N", "M", "depth", "kmax", "seed"}
FLOAT_KEYS = {"q", "t", "t0", "t1", "t2", "t3", "a", "b", "c", "d", "tol"}
STR_KEYS = {"suite", "out", "format"}


@dataclass(frozen=True)
class SuiteConfig:
    """Validated configuration of one verification run."""

    suite: str
    values: Dict[str, float]

    def __getitem__(self, key: str):
        return self.values[key]

    def get(self, key: str, default=None):
        return self.values.get(key, default)


@dataclass
class CheckRecord:
    """One identity check: computed sides, errors, verdict, wall time."""

    name: str
    anchor: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    ms: float


@dataclass
class CertificationReport:
    """All checks of one suite run plus the configuration echo."""

    suite: str
    config_echo: Dict[str, float]
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def summary(self) -> Dict[str, int]:
        npass = sum(1 for c in self.checks if c.passed)
        return {"pass": npass, "fail": len(self.checks) - npass}

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config_echo": self.config_echo,
            "checks": [
                {"name": c.name, "anchor": c.anchor, "lhs": c.lhs,
                 "rhs": c.rhs, "abs_err": c.abs_err, "rel_err": c.rel_err,
                 "tol": c.tol, "pass": c.passed, "ms": c.ms}
                for c in self.checks
            ],
            "summary": self.summary,
        }


def parse_config_file(path: str) -> Dict[str, str]:
    """Read a flat key=value configuration file (blank lines and lines
    starting with # are skipped)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    out: Dict[str, str] = {}
    for i, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{i}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def build_config(raw: Dict[str, str]) -> SuiteConfig:
    """Validate raw string settings into a SuiteConfig."""
    suite = raw.get("suite")
    if suite not in SUITES:
        raise ConfigError(
            f"suite must be one of {', '.join(SUITES)}, got {suite!r}")
    values: Dict[str, float] = dict(DEFAULTS[suite])
    for key, sval in raw.items():
        if key in STR_KEYS:
            continue
        try:
            if key in INT_KEYS:
                values[key] = int(sval)
            elif key in FLOAT_KEYS:
                values[key] = float(sval)
            else:
                raise ConfigError(f"unknown configuration key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {sval!r}") from exc
    n = int(values.get("n", 1))
    if not 1 <= n <= 3:
        raise ConfigError(f"n must be in 1..3, got {n}")
    if "tol" in values and not values["tol"] > 0:
        raise ConfigError("tol must be positive")
    return SuiteConfig(suite, values)


def _run_check(report: CertificationReport, name: str, anchor: str,
               tol: float, fn: Callable[[], Tuple[float, float]]) -> None:
    """Evaluate fn() -> (lhs, rhs), time it and append the verdict.

    A BcorthoError inside fn is recorded as a failed check with NaN
    sides rather than aborting the suite."""
    start = time.perf_counter()
    try:
        lhs, rhs = (complex(v) for v in fn())
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / max(1.0, abs(rhs))
        passed = rel_err <= tol
        lhs, rhs = lhs.real, rhs.real
    except BcorthoError:
        lhs = rhs = abs_err = rel_err = float("nan")
        passed = False
    ms = (time.perf_counter() - start) * 1000.0
    report.checks.append(CheckRecord(
        name, anchor, float(lhs), float(rhs), float(abs_err),
        float(rel_err), tol, passed, ms))


def _partitions_upto(n: int, lmax: int) -> List[Tuple[int, ...]]:
    top = (lmax,) * n
    return [mu for mu in partitions_dominated_by(top)] if lmax else [(0,) * n]


def _tol(cfg: SuiteConfig, default: float) -> float:
    return float(cfg.get("tol", default))


def _aw_params(cfg: SuiteConfig) -> AWParams:
    return AWParams(int(cfg["n"]), cfg["q"], cfg["t"], cfg["t0"],
                    cfg["t1"], cfg["t2"], cfg["t3"])


def _suite_aw(cfg: SuiteConfig, report: CertificationReport) -> None:
    p = _aw_params(cfg)
    M = int(cfg["M"])
    one = LaurentPolynomial.constant(p.n)

    _run_check(report, "constant-term", "torus <1,1> = closed product",
               _tol(cfg, 1e-8),
               lambda: (torus_bilinear(one, one, p, M).value.real,
                        gustafson_constant(p).real))

    p1 = AWParams(1, p.q, p.t, p.t0, p.t1, p.t2, p.t3)

    def n1_oracle() -> Tuple[float, float]:
        z = 0.9 * complex(math.cos(0.7), math.sin(0.7))
        dev = 0.0
        for lam in range(5):
            poly = aw_polynomial((lam,), p1, seed=int(cfg["seed"]))
            got = poly.to_laurent().eval([z])
            want = aw1_oracle(lam, z, p1)
            dev = max(dev, abs(got - want) / max(1.0, abs(want)))
        return dev, 0.0

    _run_check(report, "n1-closed-form",
               "one-variable polynomial = terminating series closed form",
               _tol(cfg, 1e-10), n1_oracle)

    lams = _partitions_upto(p.n, int(cfg["lmax"]))
    polys = {lam: aw_polynomial(lam, p, seed=int(cfg["seed"])).to_laurent()
             for lam in lams}
    scale = abs(gustafson_constant(p))

    def off_diag() -> Tuple[float, float]:
        worst = 0.0
        for i, la in enumerate(lams):
            for lb in lams[i + 1:]:
                v = torus_bilinear(polys[la], polys[lb], p, M).value
                worst = max(worst, abs(v) / scale)
        return worst, 0.0

    def diag() -> Tuple[float, float]:
        worst = 0.0
        for la in lams:
            v = torus_bilinear(polys[la], polys[la], p, M).value.real
            w = aw_norm(la, p).real
            worst = max(worst, abs(v - w) / max(1.0, abs(w)))
        return worst, 0.0

    _run_check(report, "orthogonality", "Gram off-diagonals vanish",
               _tol(cfg, 1e-8), off_diag)
    _run_check(report, "norms", "Gram diagonals = closed-form norms",
               _tol(cfg, 1e-6), diag)


def _qracah_params(cfg: SuiteConfig) -> QRacahParams:
    return QRacahParams(int(cfg["n"]), cfg["q"], cfg["t"], cfg["t0"],
                        cfg["t1"], cfg["t2"], int(cfg["N"]))


def _suite_qracah(cfg: SuiteConfig, report: CertificationReport) -> None:
    qp = _qracah_params(cfg)
    one = LaurentPolynomial.constant(qp.n)

    _run_check(report, "summation", "finite sum of weights = closed product",
               _tol(cfg, 1e-10),
               lambda: (bilinear_qR(one, one, qp), summation_qR(qp)))

    def residue_split() -> Tuple[float, float]:
        # the residue weight factors into the chain constant K_r times
        # the per-label weight
        rng = random.Random(int(cfg["seed"]))
        from .measures import multi_discrete_weight
        pg = AWParams(qp.n, qp.q, qp.t, 1.1, -0.5, 0.35, 0.45)
        worst = 0.0
        for _ in range(20):
            r = rng.choice(range(1, qp.n + 1))
            nu = tuple(sorted(rng.randrange(5) for _ in range(r)))
            lhs = multi_discrete_weight(nu, pg, 0)
            rhs = kr_constant(r, pg) * weight_qR(nu, pg)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        return worst, 0.0

    _run_check(report, "residue-split",
               "discrete weight = chain constant times node weight",
               _tol(cfg, 1e-10), residue_split)

    lams = [lam for lam in _partitions_upto(qp.n, int(cfg["lmax"]))
            if lam[0] <= qp.N]
    polys = {lam: qracah_polynomial(lam, qp).to_laurent() for lam in lams}
    scale = abs(summation_qR(qp))

    def off_diag() -> Tuple[float, float]:
        worst = 0.0
        for i, la in enumerate(lams):
            for lb in lams[i + 1:]:
                worst = max(worst, abs(
                    bilinear_qR(polys[la], polys[lb], qp)) / scale)
        return worst, 0.0

    def diag() -> Tuple[float, float]:
        worst = 0.0
        for la in lams:
            v = bilinear_qR(polys[la], polys[la], qp)
            w = norm_qR(la, qp)
            worst = max(worst, abs(v - w) / max(1.0, abs(w)))
        return worst, 0.0

    _run_check(report, "orthogonality", "Gram off-diagonals vanish",
               _tol(cfg, 1e-9), off_diag)
    _run_check(report, "norms", "Gram diagonals = closed-form norms",
               _tol(cfg, 1e-8), diag)
    _run_check(report, "support-size",
               "number of admissible labels matches the binomial count",
               0.0,
               lambda: (float(len(support_qR(qp))),
                        float(math.comb(qp.N + qp.n, qp.n))))


def _little_params(cfg: SuiteConfig) -> LittleParams:
    return LittleParams(int(cfg["n"]), cfg["q"], cfg["t"], cfg["a"],
                        cfg["b"])


def _suite_little(cfg: SuiteConfig, report: CertificationReport) -> None:
    lp = _little_params(cfg)
    one = LaurentPolynomial.constant(lp.n)

    _run_check(report, "constant-term",
               "Jackson multisum <1,1> = closed product",
               _tol(cfg, 1e-8),
               lambda: (bilinear_little(one, one, lp), selberg_little(lp)))

    lams = _partitions_upto(lp.n, int(cfg["lmax"]))
    polys = {lam: little_polynomial(lam, lp).to_poly() for lam in lams}
    scale = abs(selberg_little(lp))

    def off_diag() -> Tuple[float, float]:
        worst = 0.0
        for i, la in enumerate(lams):
            for lb in lams[i + 1:]:
                worst = max(worst, abs(
                    bilinear_little(polys[la], polys[lb], lp)) / scale)
        return worst, 0.0

    def diag() -> Tuple[float, float]:
        worst = 0.0
        for la in lams:
            v = bilinear_little(polys[la], polys[la], lp)
            w = norm_little(la, lp)
            worst = max(worst, abs(v - w) / max(1.0, abs(w)))
        return worst, 0.0

    _run_check(report, "orthogonality", "Gram off-diagonals vanish",
               _tol(cfg, 1e-8), off_diag)
    _run_check(report, "norms", "Gram diagonals = closed-form norms",
               _tol(cfg, 1e-6), diag)


def _big_params(cfg: SuiteConfig) -> BigParams:
    return BigParams(int(cfg["n"]), cfg["q"], cfg["t"], cfg["a"],
                     cfg["b"], cfg["c"], cfg["d"])


def _suite_big(cfg: SuiteConfig, report: CertificationReport) -> None:
    bp = _big_params(cfg)
    one = LaurentPolynomial.constant(bp.n)

    def dual_form() -> Tuple[float, float]:
        rng = random.Random(int(cfg["seed"]))
        worst = 0.0
        for _ in range(10):
            q = rng.uniform(0.3, 0.7)
            t = rng.uniform(0.2, 0.8)
            c = rng.uniform(0.5, 1.5)
            d = rng.uniform(0.5, 1.5)
            a = rng.uniform(-0.9 * c / (d * q), 0.9 / q)
            b = rng.uniform(-0.9 * d / (c * q), 0.9 / q)
            rp = BigParams(bp.n, q, t, a, b, c, d)
            got = c_weights(rp, check=False)
            want = c_weights_defining(rp)
            for x, y in zip(got, want):
                worst = max(worst, abs(x - y) / max(abs(x), abs(y)))
        return worst, 0.0

    _run_check(report, "c-weight-dual-form",
               "split-weight theta form = base constant times Psi products",
               _tol(cfg, 1e-9), dual_form)
    _run_check(report, "constant-term",
               "two-sided weighted multisum <1,1> = closed product",
               _tol(cfg, 1e-7),
               lambda: (bilinear_big(one, one, bp), selberg_big(bp)))

    def askey_evans() -> Tuple[float, float]:
        k = max(1, round(math.log(bp.t) / math.log(bp.q)))
        bk = BigParams(bp.n, bp.q, bp.q ** k, bp.a, bp.b, bp.c, bp.d)
        return askey_evans_lhs(bk), askey_evans_rhs(bk)

    def askey_evans_translated() -> Tuple[float, float]:
        k = max(1, round(math.log(bp.t) / math.log(bp.q)))
        bk = BigParams(bp.n, bp.q, bp.q ** k, bp.a, bp.b, bp.c, bp.d)
        return selberg_big_qk(bk), askey_evans_rhs(bk)

    _run_check(report, "askey-evans",
               "two-sided integral at integral exponent = closed product",
               _tol(cfg, 1e-7), askey_evans)
    _run_check(report, "askey-evans-translation",
               "general constant term reproduces the two-sided integral",
               _tol(cfg, 1e-7), askey_evans_translated)

    def asym() -> Tuple[float, float]:
        worst = 0.0
        for j in range(1, bp.n + 1):
            ratio = asymptotic_ratio(j, (0,) * (j - 1), (0,) * (bp.n - j),
                                     bp, 25)
            worst = max(worst, abs(ratio - 1.0))
        return worst, 0.0

    _run_check(report, "asymptotic-match",
               "split-weight ratios balance where a chain coordinate "
               "crosses zero", _tol(cfg, 1e-5), asym)

    lams = _partitions_upto(bp.n, int(cfg["lmax"]))
    polys = {lam: big_polynomial(lam, bp).to_poly() for lam in lams}
    scale = abs(selberg_big(bp))

    def off_diag() -> Tuple[float, float]:
        worst = 0.0
        for i, la in enumerate(lams):
            for lb in lams[i + 1:]:
                worst = max(worst, abs(
                    bilinear_big(polys[la], polys[lb], bp)) / scale)
        return worst, 0.0

    def diag() -> Tuple[float, float]:
        worst = 0.0
        for la in lams:
            v = bilinear_big(polys[la], polys[la], bp)
            w = norm_big(la, bp)
            worst = max(worst, abs(v - w) / max(1.0, abs(w)))
        return worst, 0.0

    _run_check(report, "orthogonality", "Gram off-diagonals vanish",
               _tol(cfg, 1e-8), off_diag)
    _run_check(report, "norms", "Gram diagonals = closed-form norms",
               _tol(cfg, 1e-6), diag)


def _suite_limits(cfg: SuiteConfig, report: CertificationReport) -> None:
    lp = _little_params(cfg)
    bp = _big_params(cfg)
    kmax = int(cfg["kmax"])
    seed = int(cfg["seed"])
    lam = (1,) + (0,) * (lp.n - 1)

    def tail_ok(rows) -> float:
        # final deviation, provided the tail of the table decreases
        devs = [dev for _k, _e, dev in rows]
        tail = devs[len(devs) // 2:]
        if any(b >= a for a, b in zip(tail, tail[1:])):
            return float("inf")
        return devs[-1]

    _run_check(report, "little-coefficients",
               "rescaled coefficients converge to the Jackson-side family",
               _tol(cfg, 1e-4),
               lambda: (tail_ok(limit_scan_little(lam, lp, kmax, seed=seed)),
                        0.0))
    _run_check(report, "big-coefficients",
               "rescaled coefficients converge to the two-sided family",
               _tol(cfg, 1e-4),
               lambda: (tail_ok(limit_scan_big(lam, bp, kmax, seed=seed)),
                        0.0))

    M = int(cfg["M"])
    depth = int(cfg["depth"])

    _run_check(report, "little-measure-constant",
               "renormalized pairings converge with the expected constant",
               _tol(cfg, 1e-3),
               lambda: (measure_constant_little(
                   lam, (0,) * lp.n, lp, min(kmax, 12), M=M,
                   depth=depth)[-1][2], 0.0))
    _run_check(report, "big-measure-constant",
               "renormalized pairings converge with the expected constant",
               _tol(cfg, 1e-3),
               lambda: (measure_constant_big(
                   lam, (0,) * bp.n, bp, min(kmax, 11), M=M,
                   depth=depth)[-1][2], 0.0))


def _suite_selberg(cfg: SuiteConfig, report: CertificationReport) -> None:
    p = _aw_params(cfg)
    one = LaurentPolynomial.constant(p.n)
    _run_check(report, "torus", "torus constant term = closed product",
               _tol(cfg, 1e-8),
               lambda: (torus_bilinear(one, one, p, int(cfg["M"])).value.real,
                        gustafson_constant(p).real))

    qp = _qracah_params(cfg)
    _run_check(report, "finite-sum", "finite constant term = closed product",
               _tol(cfg, 1e-10),
               lambda: (bilinear_qR(one, one, qp), summation_qR(qp)))

    lp = _little_params(cfg)
    _run_check(report, "jackson", "multisum constant term = closed product",
               _tol(cfg, 1e-8),
               lambda: (bilinear_little(one, one, lp), selberg_little(lp)))

    bp = _big_params(cfg)
    _run_check(report, "two-sided",
               "weighted multisum constant term = closed product",
               _tol(cfg, 1e-7),
               lambda: (bilinear_big(one, one, bp), selberg_big(bp)))

    pd = AWParams(p.n, p.q, p.t, 1.1, p.t1, p.t2, p.t3)
    _run_check(report, "partially-discrete",
               "torus plus chain corrections constant term = closed product",
               _tol(cfg, 1e-6),
               lambda: (partial_bilinear(one, one, pd, int(cfg["M"]) * 2,
                                         depth=int(cfg["depth"])).value.real,
                        gustafson_constant(pd).real))


_SUITE_RUNNERS = {
    "aw": _suite_aw,
    "qracah": _suite_qracah,
    "little": _suite_little,
    "big": _suite_big,
    "limits": _suite_limits,
    "selberg": _suite_selberg,
}


def run_suite(cfg: SuiteConfig) -> CertificationReport:
    """Execute all checks of the configured suite."""
    echo = {k: cfg.values[k] for k in sorted(cfg.values)}
    report = CertificationReport(cfg.suite, echo)
    try:
        _SUITE_RUNNERS[cfg.suite](cfg, report)
    except BcorthoError as exc:
        raise ConfigError(
            f"suite {cfg.suite} rejected the configuration: {exc}") from exc
    report.checks.sort(key=lambda c: c.name)
    return report


def format_text(report: CertificationReport) -> str:
    """Fixed-width table rendering of a report."""
    lines = [f"suite: {report.suite}"]
    header = (f"{'check':28} {'lhs':>14} {'rhs':>14} {'rel_err':>10} "
              f"{'tol':>8} {'pass':>5} {'ms':>8}")
    lines.append(header)
    lines.append("-" * len(header))
    for c in report.checks:
        lines.append(
            f"{c.name:28} {c.lhs:14.6g} {c.rhs:14.6g} {c.rel_err:10.2e} "
            f"{c.tol:8.0e} {str(c.passed):>5} {c.ms:8.1f}")
    s = report.summary
    lines.append(f"summary: pass={s['pass']} fail={s['fail']}")
    return "\n".join(lines) + "\n"


def emit_report(report: CertificationReport, fmt: str,
                path: str | None) -> None:
    """Write the report as JSON or a fixed-width text table."""
    if fmt == "json":
        body = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    elif fmt == "text":
        body = format_text(report)
    else:
        raise ConfigError(f"format must be json or text, got {fmt!r}")
    if path is None:
        sys.stdout.write(body)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(body)
    except OSError as exc:
        raise IoError(f"cannot write report to {path}: {exc}") from exc


def _build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bcortho",
        description="Numerical certification of orthogonality, norm and "
                    "constant-term identities for multivariable BC-type "
                    "basic hypergeometric polynomial families.")
    ap.add_argument("--config", help="flat key=value configuration file")
    ap.add_argument("--suite", choices=SUITES)
    for key in sorted(INT_KEYS):
        ap.add_argument(f"--{key}", type=int)
    for key in sorted(FLOAT_KEYS):
        ap.add_argument(f"--{key}", type=float)
    ap.add_argument("--out", help="report path (default: stdout)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def main(argv: List[str] | None = None) -> int:
    args = _build_arg_parser().parse_args(argv)
    try:
        raw: Dict[str, str] = {}
        if args.config:
            raw.update(parse_config_file(args.config))
        for key in INT_KEYS | FLOAT_KEYS | {"suite"}:
            val = getattr(args, key, None)
            if val is not None:
                raw[key] = str(val)
        cfg = build_config(raw)
        report = run_suite(cfg)
        emit_report(report, args.format, args.out)
    except (ConfigError, IoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.summary["fail"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
