"""Deterministic text outputs: trajectory CSV, stability report, PD series, sweeps.

Every number is rendered with ``repr(float(x))`` -- the shortest decimal
that round-trips to the same double -- and no output embeds timestamps,
so identical runs produce byte-identical files.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Trajectory
from .network import variable_names
from .pdgame import PayoffMatrix, apply_side_payment, dominant_strategy, \
    min_side_payment
from .scenario import CanonicalScenario
from .stability import (NoUniqueEquilibriumError, StabilityReport, analyze,
                        canonical_affine)

SWEEP_PARAMS = ("r1", "r2", "r3", "r4", "r5")


def fmt(x: float) -> str:
    return repr(float(x))


def write_trajectory(trajectory: Trajectory, names, thin: int = 1) -> str:
    """CSV with header ``t,<name1>,...``, keeping every ``thin``-th step;
    the final step is always included."""
    if thin < 1:
        raise ValueError("thin must be at least 1")
    count = len(trajectory.times)
    kept = list(range(0, count, thin))
    if kept[-1] != count - 1:
        kept.append(count - 1)
    lines = ["t," + ",".join(names)]
    for k in kept:
        row = [fmt(trajectory.times[k])]
        row.extend(fmt(v) for v in trajectory.states[k])
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def pd_series_csv(fractions) -> str:
    """CSV with header ``step,coop_fraction``."""
    lines = ["step,coop_fraction"]
    lines.extend(f"{k},{fmt(f)}" for k, f in enumerate(fractions))
    return "\n".join(lines) + "\n"


def _check_lines(a1: float, a2: float, a3: float) -> list[str]:
    marks = {True: "PASS", False: "FAIL"}
    return [f"    a1 > 0       {marks[a1 > 0.0]}",
            f"    a3 > 0       {marks[a3 > 0.0]}",
            f"    a1*a2 > a3   {marks[a1 * a2 > a3]}"]


def render_stability_report(report: StabilityReport) -> str:
    """Fixed-layout plain-text report for one analyzed system."""
    names = variable_names(report.variable_order) if report.variable_order \
        else tuple(f"q{k+1}" for k in range(len(report.equilibrium)))
    lines = ["equilibrium:"]
    lines.extend(f"  {name} = {fmt(v)}"
                 for name, v in zip(names, report.equilibrium))
    coeffs = report.char_coeffs
    lines.append("characteristic coefficients (Jacobian):")
    lines.extend(f"  a{k+1} = {fmt(c)}" for k, c in enumerate(coeffs))
    if len(coeffs) == 3:
        lines.append("  Routh-Hurwitz checks:")
        lines.extend(_check_lines(*coeffs))
    else:
        lines.append("  Routh-Hurwitz checks: n/a (system is not cubic; "
                     "verdict rests on the eigenvalue margin)")
    lines.append(f"eigenvalue margin (max Re): {fmt(report.eigen_margin)}")
    lines.append(f"verdict: {report.verdict.value}")
    if report.closed_form is not None:
        a1, a2, a3 = report.closed_form
        lines.append("closed-form coefficients (r-parameter formulas; "
                     "exact when r1 = r2):")
        lines.append(f"  a1 = {fmt(a1)}")
        lines.append(f"  a2 = {fmt(a2)}")
        lines.append(f"  a3 = {fmt(a3)}")
        lines.append("  Routh-Hurwitz checks:")
        lines.extend(_check_lines(a1, a2, a3))
    return "\n".join(lines) + "\n"


def render_equilibrium(report: StabilityReport) -> str:
    names = variable_names(report.variable_order)
    return "".join(f"{name} = {fmt(v)}\n"
                   for name, v in zip(names, report.equilibrium))


@dataclass(frozen=True)
class SweepPoint:
    value: float
    verdict: str
    eigen_margin: float


def sweep(scenario: CanonicalScenario, param: str, start: float, stop: float,
          points: int) -> list[SweepPoint]:
    """Analyze the canonical system on a uniform grid over one r parameter.

    Per-point failures (no unique equilibrium at a singular grid value)
    are recorded as verdict ERROR and the sweep continues. Grid points
    are independent; they are evaluated in grid order.
    """
    if param not in SWEEP_PARAMS:
        raise ValueError(f"param must be one of {', '.join(SWEEP_PARAMS)}")
    if points < 2:
        raise ValueError("points must be at least 2")
    if not start < stop:
        raise ValueError("sweep start must be strictly less than stop")
    results: list[SweepPoint] = []
    for k in range(points):
        value = start + k * (stop - start) / (points - 1)
        r = dataclasses.replace(scenario.r, **{param: value})
        system = canonical_affine(r)
        try:
            report = analyze(system, r)
            results.append(SweepPoint(value, report.verdict.value,
                                      report.eigen_margin))
        except (NoUniqueEquilibriumError, np.linalg.LinAlgError):
            results.append(SweepPoint(value, "ERROR", math.nan))
    return results


def sweep_csv(points: list[SweepPoint]) -> str:
    lines = ["value,verdict,eigen_margin"]
    lines.extend(f"{fmt(p.value)},{p.verdict},{fmt(p.eigen_margin)}"
                 for p in points)
    return "\n".join(lines) + "\n"


def render_side_payment(m: PayoffMatrix, sigma: float) -> str:
    """What a side payment does to the transit player's dominance."""
    threshold = min_side_payment(m)
    before = dominant_strategy(m) or "none"
    after = dominant_strategy(apply_side_payment(m, sigma)) or "none"
    return (f"side payment sigma = {fmt(sigma)}\n"
            f"minimum sigma for cooperate-dominance: {fmt(threshold)} "
            f"(strictly above flips it)\n"
            f"transit dominant strategy without payment: {before}\n"
            f"transit dominant strategy with payment: {after}\n")
