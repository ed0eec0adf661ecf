"""Solution-quality metrics over measurement distributions.

Summaries report three profit readings (best observed, most likely
outcome, probability-weighted average), the approximation ratio of the
best outcome, and the probability mass at or above fractions of the
optimum. Ties on profit or probability resolve to the lexicographically
smallest bitstring so every report is reproducible.

Mass conventions: mass_optimal uses exact equality (no profit can
exceed the optimum, so >= and == coincide) and is always defined once
the optimum is known; the fractional masses at 0.9 and 0.8 are left
undefined when the optimum is non-positive, where a fraction of the
optimum stops being a meaningful threshold.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import IsingModel, bitstring_of_index
from .qaoa import (
    MAX_QUBITS,
    AngleSchedule,
    SampleDistribution,
    TrainLog,
    apply_mixer,
    apply_phase,
    expectation,
    probabilities,
    train_layerwise,
    uniform_state,
)


def canonical_json(obj) -> str:
    """Stable serialization: sorted keys, fixed indent, no NaN, newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _bit_reversed(indices: np.ndarray, n: int) -> np.ndarray:
    rev = np.zeros_like(indices)
    for j in range(n):
        rev |= ((indices >> j) & 1) << (n - 1 - j)
    return rev


def lex_min_index(indices: np.ndarray, n: int) -> int:
    """Index whose display bitstring is lexicographically smallest."""
    return int(indices[np.argmin(_bit_reversed(indices, n))])


@dataclass(frozen=True)
class DistributionSummary:
    kind: str  # "sampled" or "exact"
    shots: int | None
    n_distinct: int
    best_bitstring: str
    best_profit: float
    most_likely_bitstring: str
    most_likely_profit: float
    most_likely_probability: float
    weighted_average_profit: float
    expected_cover_size: float
    opt_profit: int | None
    approx_ratio_best: float | None
    mass_optimal: float | None
    mass_90: float | None
    mass_80: float | None

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "shots": self.shots,
            "n_distinct": self.n_distinct,
            "best_bitstring": self.best_bitstring,
            "best_profit": self.best_profit,
            "most_likely_bitstring": self.most_likely_bitstring,
            "most_likely_profit": self.most_likely_profit,
            "most_likely_probability": self.most_likely_probability,
            "weighted_average_profit": self.weighted_average_profit,
            "expected_cover_size": self.expected_cover_size,
            "opt_profit": self.opt_profit,
            "approx_ratio_best": self.approx_ratio_best,
            "mass_optimal": self.mass_optimal,
            "mass_90": self.mass_90,
            "mass_80": self.mass_80,
        }


def _summarize(kind: str, shots: int | None, indices: np.ndarray,
               weights: np.ndarray, profits: np.ndarray, n: int,
               m_edges: int, opt_profit: int | None) -> DistributionSummary:
    if indices.size == 0:
        raise DomainError("empty distribution")
    best_profit = float(np.max(profits))
    best_idx = lex_min_index(indices[profits == best_profit], n)
    top_w = np.max(weights)
    likely_idx = lex_min_index(indices[weights == top_w], n)
    likely_profit = float(profits[np.flatnonzero(indices == likely_idx)[0]])
    mean_profit = float(np.sum(weights * profits))

    alpha = mass_opt = mass_90 = mass_80 = None
    if opt_profit is not None:
        mass_opt = float(np.sum(weights[profits == opt_profit]))
        if opt_profit > 0:
            alpha = best_profit / opt_profit
            # profits and the optimum are integers, so compare the scaled
            # integers instead of multiplying by an inexact 0.9 or 0.8
            mass_90 = float(np.sum(weights[10 * profits >= 9 * opt_profit]))
            mass_80 = float(np.sum(weights[5 * profits >= 4 * opt_profit]))
    return DistributionSummary(
        kind=kind,
        shots=shots,
        n_distinct=int(indices.size),
        best_bitstring=bitstring_of_index(best_idx, n),
        best_profit=best_profit,
        most_likely_bitstring=bitstring_of_index(likely_idx, n),
        most_likely_profit=likely_profit,
        most_likely_probability=float(top_w),
        weighted_average_profit=mean_profit,
        expected_cover_size=float(m_edges) - mean_profit,
        opt_profit=opt_profit,
        approx_ratio_best=alpha,
        mass_optimal=mass_opt,
        mass_90=mass_90,
        mass_80=mass_80,
    )


def summarize(dist: SampleDistribution, ising: IsingModel,
              opt_profit: int | None = None) -> DistributionSummary:
    """Summary of a sampled (finite-shot) distribution."""
    profits = -ising.energies_vector()
    weights = dist.counts / dist.shots
    return _summarize("sampled", dist.shots, dist.indices, weights,
                      profits[dist.indices], ising.n, len(ising.j4), opt_profit)


def summarize_exact(state: np.ndarray, ising: IsingModel,
                    opt_profit: int | None = None) -> DistributionSummary:
    """Summary of the exact statevector distribution (support = prob > 0)."""
    profits = -ising.energies_vector()
    probs = probabilities(state)
    support = np.flatnonzero(probs > 0.0)
    return _summarize("exact", None, support, probs[support],
                      profits[support], ising.n, len(ising.j4), opt_profit)


def expected_cover_size(dist: SampleDistribution, ising: IsingModel,
                        num_edges: int) -> float:
    """num_edges minus the weighted average profit of the distribution."""
    profits = -ising.energies_vector()
    weights = dist.counts / dist.shots
    return float(num_edges) - float(np.sum(weights * profits[dist.indices]))


@dataclass(frozen=True)
class DepthPoint:
    depth: int
    gamma: float | None
    beta: float | None
    expectation: float
    summary: DistributionSummary

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "gamma": self.gamma,
            "beta": self.beta,
            "expectation": self.expectation,
            "summary": self.summary.to_json_dict(),
        }


@dataclass(frozen=True)
class DepthSweep:
    schedule: AngleSchedule
    log: TrainLog
    points: tuple[DepthPoint, ...]

    def to_json_dict(self) -> dict:
        return {
            "schedule": self.schedule.to_json_dict(),
            "train_log": self.log.to_json_dict(),
            "points": [pt.to_json_dict() for pt in self.points],
        }


def depth_sweep(ising: IsingModel, p_list, *, opt_profit: int | None = None,
                maxfev: int = 40, max_qubits: int = MAX_QUBITS,
                trainer=train_layerwise) -> DepthSweep:
    """Train once to max(p_list) and report exact metrics at those depths.

    Depth d reuses the trained prefix (gamma_1..d, beta_1..d), so the
    sweep replays one evolution instead of retraining per depth; depth 0
    is the uniform superposition baseline.
    """
    depths = sorted(set(int(p) for p in p_list))
    if not depths or depths[0] < 0:
        raise DomainError("depth list must contain non-negative depths")
    p_max = depths[-1]
    schedule, log = trainer(ising, p_max, maxfev=maxfev, max_qubits=max_qubits)
    energies = ising.energies_vector()
    n = ising.n
    state = uniform_state(n)
    points = []
    if 0 in depths:
        points.append(DepthPoint(
            0, None, None, expectation(state, energies),
            summarize_exact(state, ising, opt_profit)))
    for d in range(1, p_max + 1):
        gamma, beta = schedule.gammas[d - 1], schedule.betas[d - 1]
        state = apply_phase(state, energies, gamma)
        apply_mixer(state, n, beta)
        if d in depths:
            points.append(DepthPoint(
                d, gamma, beta, expectation(state, energies),
                summarize_exact(state, ising, opt_profit)))
    return DepthSweep(schedule, log, tuple(points))


def write_csv(path, fieldnames: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def depth_sweep_rows(name: str, sweep: DepthSweep) -> list[dict]:
    """Flatten a sweep into CSV-friendly records."""
    rows = []
    for pt in sweep.points:
        s = pt.summary
        rows.append({
            "instance": name,
            "depth": pt.depth,
            "gamma": pt.gamma,
            "beta": pt.beta,
            "expectation": pt.expectation,
            "best_profit": s.best_profit,
            "weighted_average_profit": s.weighted_average_profit,
            "expected_cover_size": s.expected_cover_size,
            "approx_ratio_best": s.approx_ratio_best,
            "mass_optimal": s.mass_optimal,
            "mass_90": s.mass_90,
            "mass_80": s.mass_80,
        })
    return rows


DEPTH_SWEEP_FIELDS = [
    "instance", "depth", "gamma", "beta", "expectation", "best_profit",
    "weighted_average_profit", "expected_cover_size", "approx_ratio_best",
    "mass_optimal", "mass_90", "mass_80",
]


def aggregate_mass_stats(sweeps: list[DepthSweep]) -> dict:
    """Mean and variance of the near-optimal masses per depth, across runs."""
    by_depth: dict[int, dict[str, list[float]]] = {}
    for sweep in sweeps:
        for pt in sweep.points:
            slot = by_depth.setdefault(pt.depth, {"mass_optimal": [], "mass_90": [], "mass_80": []})
            s = pt.summary
            for key in slot:
                val = getattr(s, key)
                if val is not None:
                    slot[key].append(val)
    out = {}
    for depth in sorted(by_depth):
        stats = {}
        for key, values in by_depth[depth].items():
            if values:
                arr = np.asarray(values)
                stats[key] = {"mean": float(arr.mean()),
                              "var": float(arr.var()),
                              "count": len(values)}
        out[str(depth)] = stats
    return out
