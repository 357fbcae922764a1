"""
Grid sweeps comparing the improved and legacy engines.

``sweep_sf`` counts series terms per evaluation over x = 0(0.001)1.7 and
``sweep_isf`` counts Newton iterations per quantile over p = 0(0.001)1.
A point *fails* when it hits its engine's cap (500 terms/iterations for the
legacy engine, non-convergence for the improved one) and *exceeds tolerance*
when a returned value is further than ``rel_tol_audit`` from the
extended-precision reference.  Mean and std are taken over non-failing points.

Relative errors are measured against max(|reference|, smallest normal double):
results in the subnormal range cannot carry relative precision, and values
that underflow entirely are compared with the reference rounded to double.
"""

import csv
import enum
import io
import math
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from typing import List, Optional, Tuple

from . import oracle
from .baseline import baseline_isf, baseline_sf
from .dist import kolmogorov_triple
from .quantile import ProbPair, kolmogi

AUDIT_DIGITS = 60
CSV_HEADER = ("engine", "metric", "mean", "std", "max", "failure_rate", "tol_rate")
SF_GRID = ("0", "0.001", "1.7")
ISF_GRID = ("0", "0.001", "1.0")


class Engine(enum.Enum):
    IMPROVED = "Improved"
    BASELINE = "Baseline"


class Metric(enum.Enum):
    TERMS = "Terms"
    ITERATIONS = "Iterations"


@dataclass(frozen=True)
class SweepSummary:
    engine: Engine
    metric: Metric
    mean: float
    std: float
    max: int
    failure_rate: float
    tolerance_exceed_rate: float
    grid_spec: Tuple[str, str, str]
    n_points: int = 0
    audited: bool = True


@dataclass
class PointResult:
    arg: float
    cost: int
    failed: bool
    values: Tuple[float, ...] = ()
    rel_error: Optional[float] = None


def grid(start, step, stop):
    """Inclusive decimal grid, each point correctly rounded to double."""
    start, step, stop = Decimal(str(start)), Decimal(str(step)), Decimal(str(stop))
    if step <= 0 or stop < start:
        raise ValueError("grid needs step > 0 and stop >= start")
    n = int((stop - start) / step)
    return [float(start + i * step) for i in range(n + 1)]


def rel_error(value, reference):
    """|value - reference| relative to max(|reference|, DBL_MIN)."""
    ref_d = float(reference)
    if ref_d == 0.0:
        return 0.0 if value == 0.0 else math.inf
    if math.isinf(value) or math.isnan(value):
        return math.inf
    scale = max(abs(reference), sys.float_info.min)
    return float(abs(value - reference) / scale)


def _engine(engine):
    return engine if isinstance(engine, Engine) else Engine(engine)


def sf_point(engine, x):
    if engine is Engine.IMPROVED:
        tr = kolmogorov_triple(x)
        return PointResult(x, tr.terms, False, (tr.sf, tr.cdf))
    r = baseline_sf(x)
    return PointResult(x, r.terms_or_iters, r.hit_cap, (r.value,))


def isf_point(engine, p):
    if p == 0.0 or p == 1.0:
        return PointResult(p, 0, False, (math.inf if p == 0.0 else 0.0,))
    if engine is Engine.IMPROVED:
        x, rep = kolmogi(ProbPair.from_sf(p))
        return PointResult(p, rep.iterations, not rep.converged, (x,))
    r = baseline_isf(p)
    return PointResult(p, r.terms_or_iters, r.hit_cap, (r.value,))


def _audit_sf(args):
    x, values, digits = args
    if x <= 0:
        refs = (1, 0)
    else:
        refs = (oracle.oracle_sf(x, digits), oracle.oracle_cdf(x, digits))
    return max(rel_error(v, r) for v, r in zip(values, refs))


def _audit_isf(args):
    p, values, digits = args
    (x,) = values
    if p == 0.0 or p == 1.0:
        return 0.0 if x == (math.inf if p == 0.0 else 0.0) else math.inf
    if p <= 0.5:
        ref = oracle.oracle_quantile_sf(p, digits)
    else:
        ref = oracle.oracle_quantile_cdf(1.0 - p, digits)
    return rel_error(x, ref)


def _map(fn, items, workers):
    if workers and workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
    return [fn(it) for it in items]


def summarize(engine, metric, points, grid_spec, rel_tol_audit=1e-9):
    good = [pt.cost for pt in points if not pt.failed]
    audited = all(pt.rel_error is not None for pt in points)
    n = len(points)
    return SweepSummary(
        engine=engine,
        metric=metric,
        mean=statistics.fmean(good) if good else math.nan,
        std=statistics.pstdev(good) if good else math.nan,
        max=max(good) if good else 0,
        failure_rate=sum(pt.failed for pt in points) / n,
        tolerance_exceed_rate=(sum(pt.rel_error > rel_tol_audit for pt in points) / n
                               if audited else math.nan),
        grid_spec=tuple(str(g) for g in grid_spec),
        n_points=n,
        audited=audited,
    )


def _sweep(engine, grid_spec, rel_tol_audit, audit, digits, workers, point_fn, audit_fn, metric):
    engine = _engine(engine)
    points = [point_fn(engine, a) for a in grid(*grid_spec)]
    if audit:
        errs = _map(audit_fn, [(pt.arg, pt.values, digits) for pt in points], workers)
        for pt, e in zip(points, errs):
            pt.rel_error = e
    return summarize(engine, metric, points, grid_spec, rel_tol_audit), points


def sweep_sf(engine, grid_spec=SF_GRID, rel_tol_audit=1e-9, audit=True,
             digits=AUDIT_DIGITS, workers=None, return_points=False):
    """Term-count statistics of the SF/CDF evaluation over an x grid."""
    summary, points = _sweep(engine, grid_spec, rel_tol_audit, audit, digits, workers,
                             sf_point, _audit_sf, Metric.TERMS)
    return (summary, points) if return_points else summary


def sweep_isf(engine, grid_spec=ISF_GRID, rel_tol_audit=1e-9, audit=True,
              digits=AUDIT_DIGITS, workers=None, return_points=False):
    """Iteration-count statistics of the quantile over a p_sf grid."""
    summary, points = _sweep(engine, grid_spec, rel_tol_audit, audit, digits, workers,
                             isf_point, _audit_isf, Metric.ITERATIONS)
    return (summary, points) if return_points else summary


def _fmt(v, nd):
    return "nan" if isinstance(v, float) and math.isnan(v) else f"{v:.{nd}f}"


def to_csv(summaries: List[SweepSummary]):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in summaries:
        w.writerow([s.engine.value, s.metric.value, _fmt(s.mean, 4), _fmt(s.std, 4), s.max,
                    _fmt(s.failure_rate, 6), _fmt(s.tolerance_exceed_rate, 6)])
    return buf.getvalue()


def to_table(summaries: List[SweepSummary]):
    """Aligned text table, one block per metric."""
    lines = []
    for metric in Metric:
        rows = [s for s in summaries if s.metric is metric]
        if not rows:
            continue
        title = "SF: summation terms" if metric is Metric.TERMS else "ISF: Newton iterations"
        g = rows[0].grid_spec
        lines.append(f"{title}  (grid {g[0]}({g[1]}){g[2]})")
        lines.append(f"{'':<10}{'mean':>8}{'std':>8}{'max':>6}{'Failure':>10}{'Tolerance':>11}")
        for s in rows:
            tol = "n/a" if math.isnan(s.tolerance_exceed_rate) else f"{100 * s.tolerance_exceed_rate:.1f}%"
            lines.append(f"{s.engine.value:<10}{s.mean:>8.1f}{s.std:>8.1f}{s.max:>6d}"
                         f"{100 * s.failure_rate:>9.1f}%{tol:>11}")
        lines.append("")
    return "\n".join(lines)
