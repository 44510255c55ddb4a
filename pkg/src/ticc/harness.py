"""Monte Carlo sweeps over the erasure probability, floor fits, threshold estimates.

Every trial ``t`` draws its code from ``derive_seed(seed, "code", t)`` (unless a
fixed code is given) and, for each epsilon, its erasures from
``derive_seed(seed, "erase", repr(eps), t)``. Counts are integer sums, so a
report does not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numpy as np

from . import __version__
from ._kernels import BACKEND
from .channel import erase
from .code_ensemble import CodeSpec, check_parameters, sample
from .decode import is_stopping_set, peel
from .errors import InsufficientPoints, InvalidParameters, NotBracketed, ResourceLimit
from .seeding import PRNG_NAME, derive_seed
from .tanner import DEFAULT_VARIABLE_BUDGET, build

log = logging.getLogger(__name__)

CSV_HEADER = "epsilon,p_bit,trials,payload_bits,residual_bits,seconds"


@dataclass(frozen=True)
class SweepConfig:
    n: int
    k: int
    w: int
    stream_len: int = 10_000
    epsilons: tuple[float, ...] = (0.3, 0.4, 0.45)
    trials: int = 100
    fixed_code: CodeSpec | None = None
    seed: int = 0
    workers: int = 1
    output: str | None = None
    verify_residuals: bool = True
    max_seconds: float | None = None
    variable_budget: int = DEFAULT_VARIABLE_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(sorted(float(e) for e in self.epsilons)))
        if self.fixed_code is not None:
            fc = self.fixed_code
            object.__setattr__(self, "n", fc.n)
            object.__setattr__(self, "k", fc.k)
            object.__setattr__(self, "w", fc.w)

    def validate(self):
        check_parameters(self.n, self.k, self.w)
        if self.stream_len < 1:
            raise InvalidParameters("stream length must be >= 1")
        if self.trials < 1:
            raise InvalidParameters("trials must be >= 1")
        if self.workers < 1:
            raise InvalidParameters("workers must be >= 1")
        if not self.epsilons:
            raise InvalidParameters("epsilon grid is empty")
        for e in self.epsilons:
            if not 0.0 <= e <= 1.0:
                raise InvalidParameters(f"epsilon {e} outside [0, 1]")
        nvar = self.n * (self.stream_len + 2 * self.w)
        if nvar > self.variable_budget:
            raise ResourceLimit(f"{nvar} variables exceed the budget of {self.variable_budget}")


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    bit_erasure_probability: float
    trials: int
    total_payload_bits: int
    residual_bit_count: int
    wall_time: float
    failures: int = 0  # trials with a nonempty residual

    @property
    def sigma(self) -> float:
        """Binomial standard error of the bit erasure probability."""
        p, N = self.bit_erasure_probability, self.total_payload_bits
        return math.sqrt(p * (1 - p) / N) if N else float("nan")


@dataclass
class SweepReport:
    rows: list[SweepRow]
    metadata: dict = field(default_factory=dict)
    code_hashes: list[str] = field(default_factory=list)
    truncated: bool = False


def _format_p(p: float) -> str:
    return "0" if p == 0 else f"{p:.6g}"


def _format_eps(e: float) -> str:
    return f"{e:.10g}"


def _trial_code(config: SweepConfig, t: int) -> CodeSpec:
    if config.fixed_code is not None:
        return config.fixed_code
    return sample(config.n, config.k, config.w, derive_seed(config.seed, "code", t))


_GRAPH_CACHE: dict = {}


def _graph_for(config: SweepConfig, spec: CodeSpec):
    if config.fixed_code is None:
        return build(spec, config.stream_len, config.variable_budget)
    key = (spec, config.stream_len)
    g = _GRAPH_CACHE.get(key)
    if g is None:
        _GRAPH_CACHE.clear()
        g = _GRAPH_CACHE[key] = build(spec, config.stream_len, config.variable_budget)
    return g


def run_trials(config: SweepConfig, trials: Sequence[int]):
    """Run a block of trials over the whole grid.

    Returns ``(residual, failures, seconds, hashes)``: per-epsilon residual
    bit sums, failure counts, compute seconds, and one code hash per trial.
    """
    neps = len(config.epsilons)
    residual = np.zeros(neps, dtype=np.int64)
    failures = np.zeros(neps, dtype=np.int64)
    seconds = np.zeros(neps)
    hashes = []
    for t in trials:
        spec = _trial_code(config, t)
        hashes.append(spec.spec_hash())
        graph = _graph_for(config, spec)
        for e, eps in enumerate(config.epsilons):
            t0 = time.perf_counter()
            pattern = erase(graph, eps, derive_seed(config.seed, "erase", repr(eps), t))
            res = peel(graph, pattern)
            seconds[e] += time.perf_counter() - t0
            if res.residual.size:
                residual[e] += res.residual.size
                failures[e] += 1
                if config.verify_residuals and not is_stopping_set(graph, res.residual):
                    raise AssertionError(f"trial {t}, eps {eps}: residual is not a stopping set")
    return residual, failures, seconds, hashes


def _chunks(total: int, size: int):
    return [range(a, min(a + size, total)) for a in range(0, total, size)]


def sweep(config: SweepConfig) -> SweepReport:
    config.validate()
    started = time.perf_counter()
    neps = len(config.epsilons)
    residual = np.zeros(neps, dtype=np.int64)
    failures = np.zeros(neps, dtype=np.int64)
    seconds = np.zeros(neps)
    hashes: dict[int, str] = {}
    done = 0
    truncated = False

    chunk = max(1, min(25, math.ceil(config.trials / (4 * config.workers))))
    blocks = _chunks(config.trials, chunk)

    def absorb(block, out):
        nonlocal done
        r, f, s, h = out
        residual[:] += r
        failures[:] += f
        seconds[:] += s
        hashes.update(zip(block, h))
        done += len(block)

    def out_of_time():
        return config.max_seconds is not None and time.perf_counter() - started > config.max_seconds

    if config.workers == 1:
        for block in blocks:
            if out_of_time():
                truncated = True
                break
            absorb(block, run_trials(config, block))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            pending = [(b, pool.submit(run_trials, config, b)) for b in blocks]
            for block, fut in pending:
                if out_of_time():
                    truncated = True
                    for _, f in pending:
                        f.cancel()
                    break
                absorb(block, fut.result())

    if truncated:
        log.warning("sweep truncated after %d of %d trials", done, config.trials)
    payload = done * config.n * config.stream_len
    rows = []
    for e, eps in enumerate(config.epsilons):
        p = residual[e] / payload if payload else 0.0
        rows.append(SweepRow(eps, float(p), done, payload, int(residual[e]), float(seconds[e]), int(failures[e])))

    meta = {
        "tool": "ticc",
        "version": __version__,
        "n": config.n,
        "k": config.k,
        "w": config.w,
        "len": config.stream_len,
        "trials": config.trials,
        "seed": config.seed,
        "prng": PRNG_NAME,
        "code_policy": "fixed" if config.fixed_code is not None else "fresh-per-trial",
        "backend": BACKEND,
        "wall_seconds": round(time.perf_counter() - started, 3),
    }
    report = SweepReport(rows, meta, [hashes[t] for t in sorted(hashes)], truncated)
    if config.output:
        write_csv(report, config.output)
    return report


def write_csv(report: SweepReport, path, timing: bool = False) -> None:
    """CSV with ``#`` metadata lines. Data rows carry no timing unless ``timing``."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_csv(report, timing))


def format_csv(report: SweepReport, timing: bool = False) -> str:
    lines = ["# ticc sweep"]
    lines += [f"# {k}={v}" for k, v in report.metadata.items()]
    if report.code_hashes:
        uniq = sorted(set(report.code_hashes))
        lines.append(f"# code_hashes={','.join(uniq)}")
    for r in report.rows:
        lines.append(f"# row_seconds eps={_format_eps(r.epsilon)} seconds={r.wall_time:.4f} failures={r.failures}")
    if report.truncated:
        lines.append("# TRUNCATED")
    lines.append(CSV_HEADER)
    for r in report.rows:
        sec = f"{r.wall_time:.4f}" if timing else "-"
        lines.append(
            f"{_format_eps(r.epsilon)},{_format_p(r.bit_erasure_probability)},{r.trials},"
            f"{r.total_payload_bits},{r.residual_bit_count},{sec}"
        )
    return "\n".join(lines) + "\n"


def read_csv(path) -> SweepReport:
    meta = {}
    failures = {}
    rows = []
    truncated = False
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body == "TRUNCATED":
                    truncated = True
                elif body.startswith("row_seconds "):
                    kv = dict(part.split("=", 1) for part in body.split()[1:])
                    failures[float(kv["eps"])] = int(kv.get("failures", 0))
                elif "=" in body:
                    k, v = body.split("=", 1)
                    meta[k] = v
                continue
            if not header_seen:
                if line != CSV_HEADER:
                    raise InvalidParameters(f"{path}:{no}: expected header {CSV_HEADER!r}")
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 6:
                raise InvalidParameters(f"{path}:{no}: expected 6 fields")
            eps = float(parts[0])
            sec = float("nan") if parts[5] == "-" else float(parts[5])
            resid, payload = int(parts[4]), int(parts[3])
            rows.append(
                SweepRow(eps, resid / payload if payload else float(parts[1]), int(parts[2]),
                         payload, resid, sec, failures.get(eps, 0))
            )
    rows.sort(key=lambda r: r.epsilon)
    hashes = meta.pop("code_hashes", "")
    return SweepReport(rows, meta, hashes.split(",") if hashes else [], truncated)


class FloorFit(NamedTuple):
    alpha: float
    d: float
    r_squared: float
    points: int
    excluded_zero: int


def _rows_of(report) -> list[SweepRow]:
    return list(report.rows) if isinstance(report, SweepReport) else list(report)


def fit_floor_slope(report, window: tuple[float, float]) -> FloorFit:
    """Least-squares fit of log P_b = log alpha + d log eps over the window."""
    lo, hi = window
    inside = [r for r in _rows_of(report) if lo <= r.epsilon <= hi]
    usable = [r for r in inside if r.bit_erasure_probability > 0 and r.epsilon > 0]
    excluded = len(inside) - len(usable)
    if excluded:
        log.warning("excluded %d zero-probability rows from the floor fit", excluded)
    if len(usable) < 3:
        raise InsufficientPoints(f"need at least 3 nonzero rows in [{lo}, {hi}], have {len(usable)}")
    x = np.log([r.epsilon for r in usable])
    y = np.log([r.bit_erasure_probability for r in usable])
    d, log_alpha = np.polyfit(x, y, 1)
    pred = log_alpha + d * x
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return FloorFit(float(math.exp(log_alpha)), float(d), r2, len(usable), excluded)


def _floor_value(r: SweepRow, shift: float = 0.0) -> float:
    p = r.bit_erasure_probability + shift * r.sigma
    # zero rows stand in at half the smallest resolvable probability
    resolution = 0.5 / r.total_payload_bits if r.total_payload_bits else 1e-300
    return min(max(p, resolution), 1.0)


def threshold_estimate(report, level: float, sigma_shift: float = 0.0) -> float:
    """Epsilon where P_b first crosses ``level``, log-linear between rows.

    ``sigma_shift`` moves every row by that many binomial standard errors
    before interpolating (used for error bars).
    """
    if not 0 < level < 1:
        raise InvalidParameters("level must lie in (0, 1)")
    rows = sorted(_rows_of(report), key=lambda r: r.epsilon)
    target = math.log(level)
    for a, b in zip(rows, rows[1:]):
        pa, pb = _floor_value(a, sigma_shift), _floor_value(b, sigma_shift)
        if pa <= level <= pb:
            la, lb = math.log(pa), math.log(pb)
            if lb == la:
                return a.epsilon
            return a.epsilon + (target - la) / (lb - la) * (b.epsilon - a.epsilon)
    raise NotBracketed(f"no pair of consecutive rows brackets P_b = {level}")


def threshold_interval(report, level: float, nsigma: float = 1.0) -> tuple[float, float, float]:
    """(low, estimate, high): raising P_b by n sigma lowers the crossing."""
    est = threshold_estimate(report, level)
    low = threshold_estimate(report, level, +nsigma)
    high = threshold_estimate(report, level, -nsigma)
    return min(low, est), est, max(high, est)


def with_workers(config: SweepConfig, workers: int) -> SweepConfig:
    return replace(config, workers=workers)


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))
