"""Exact statevector simulation of QAOA on the profit Hamiltonian.

The cost layer is diagonal, so each basis amplitude picks up the phase
exp(-i*gamma*E); the mixer applies RX rotations qubit by qubit through
reshaped butterfly updates. States are dense complex128 arrays indexed
so that bit j of the array index is ``vertex_order[j]``.

Training is layerwise: angles of layers 1..k-1 stay frozen (their state
is cached as a prefix), and (gamma_k, beta_k) is optimized by
Nelder-Mead restarted from a small fixed grid plus the warm start
(0, 0). The zero pair is also evaluated directly; since gamma=beta=0 is
an exact no-op, the best expectation can never get worse as depth grows.

Expectations use elementwise multiply plus np.sum (never a BLAS dot),
keeping values bit-identical across thread counts. Sampling inverts the
cumulative distribution with a counter-based Philox generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import CapacityError, DomainError, TrainingError
from .model import IsingModel, bitstring_of_index

MAX_QUBITS = 25

# Restart grid for the per-layer search, covering the gamma period [0, pi)
# and the beta period [0, pi/2) at their quarter points.
FIXED_STARTS = (
    (np.pi / 4, np.pi / 8),
    (np.pi / 4, 3 * np.pi / 8),
    (3 * np.pi / 4, np.pi / 8),
    (3 * np.pi / 4, 3 * np.pi / 8),
)


@dataclass(frozen=True)
class AngleSchedule:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas):
            raise DomainError("schedule needs one beta per gamma")

    @property
    def p(self) -> int:
        return len(self.gammas)

    def truncated(self, depth: int) -> "AngleSchedule":
        return AngleSchedule(self.gammas[:depth], self.betas[:depth])

    def to_json_dict(self) -> dict:
        return {"p": self.p, "gammas": list(self.gammas), "betas": list(self.betas)}


@dataclass(frozen=True)
class LayerRecord:
    layer: int
    gamma: float
    beta: float
    expectation: float
    n_evals: int


@dataclass(frozen=True)
class TrainLog:
    layers: tuple[LayerRecord, ...]

    @property
    def expectations(self) -> tuple[float, ...]:
        return tuple(rec.expectation for rec in self.layers)

    @property
    def total_evals(self) -> int:
        return sum(rec.n_evals for rec in self.layers)

    def to_json_dict(self) -> dict:
        return {
            "layers": [
                {
                    "layer": rec.layer,
                    "gamma": rec.gamma,
                    "beta": rec.beta,
                    "expectation": rec.expectation,
                    "n_evals": rec.n_evals,
                }
                for rec in self.layers
            ],
            "total_evals": self.total_evals,
        }


def check_width(n: int, max_qubits: int) -> None:
    if n > max_qubits:
        raise CapacityError(
            f"statevector needs {n} qubits, above the limit of {max_qubits}"
        )


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def uniform_state(n: int) -> np.ndarray:
    state = np.empty(1 << n, dtype=np.complex128)
    state.fill(1.0 / np.sqrt(1 << n))
    return state


def apply_phase(state: np.ndarray, energies: np.ndarray, gamma: float) -> np.ndarray:
    """Diagonal cost layer; returns a new array."""
    if gamma == 0.0:
        return state.copy()
    return state * np.exp(-1j * gamma * energies)


def apply_mixer(state: np.ndarray, n: int, beta: float) -> np.ndarray:
    """RX(2*beta) on every qubit, in place."""
    c = np.cos(beta)
    s = np.sin(beta)
    if s == 0.0 and c == 1.0:
        return state
    for q in range(n):
        st = state.reshape(-1, 2, 1 << q)
        a = st[:, 0, :].copy()
        b = st[:, 1, :]
        st[:, 0, :] = c * a - 1j * s * b
        st[:, 1, :] = c * b - 1j * s * a
    return state


def evolve_energies(energies: np.ndarray, n: int, schedule: AngleSchedule,
                    max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """Statevector after the full alternating sequence, from |+...+>."""
    check_width(n, max_qubits)
    if energies.shape != (1 << n,):
        raise DomainError("energy vector length must be 2^n")
    state = uniform_state(n)
    for gamma, beta in zip(schedule.gammas, schedule.betas):
        state = apply_phase(state, energies, gamma)
        apply_mixer(state, n, beta)
    return state


def evolve(ising: IsingModel, schedule: AngleSchedule,
           max_qubits: int = MAX_QUBITS) -> np.ndarray:
    return evolve_energies(ising.energies_vector(), ising.n, schedule, max_qubits)


def probabilities(state: np.ndarray) -> np.ndarray:
    return state.real ** 2 + state.imag ** 2


def expectation(state: np.ndarray, energies: np.ndarray) -> float:
    """<H> via elementwise product and pairwise sum (thread-count stable)."""
    return float(np.sum(probabilities(state) * energies))


def expectation_value(ising: IsingModel, schedule: AngleSchedule,
                      max_qubits: int = MAX_QUBITS) -> float:
    """<H> of the evolved state; at p=0 this is exactly the offset."""
    energies = ising.energies_vector()
    return expectation(evolve_energies(energies, ising.n, schedule, max_qubits),
                       energies)


@dataclass(frozen=True, eq=False)
class SampleDistribution:
    """Measurement counts over basis states, sparse over observed indices."""

    vertex_order: tuple[int, ...]
    shots: int
    seed: int
    indices: np.ndarray  # sorted unique basis-state indices, int64
    counts: np.ndarray  # matching positive counts, int64
    schedule: AngleSchedule | None = None

    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots

    def subsets(self):
        n = len(self.vertex_order)
        for idx in self.indices:
            yield frozenset(
                self.vertex_order[j] for j in range(n) if int(idx) >> j & 1
            )

    def bitstring_counts(self) -> dict[str, int]:
        n = len(self.vertex_order)
        return {
            bitstring_of_index(int(i), n): int(c)
            for i, c in zip(self.indices, self.counts)
        }

    def to_json_dict(self) -> dict:
        return {
            "shots": self.shots,
            "seed": self.seed,
            "counts": self.bitstring_counts(),
        }


def sample_state(state: np.ndarray, vertex_order: tuple[int, ...], shots: int,
                 seed: int, schedule: AngleSchedule | None = None) -> SampleDistribution:
    """Draw measurement outcomes by inverting the cumulative distribution."""
    if shots <= 0:
        raise DomainError("shots must be positive")
    cdf = np.cumsum(probabilities(state))
    draws = _rng(seed).random(shots)
    picks = np.searchsorted(cdf, draws, side="right")
    np.clip(picks, 0, len(cdf) - 1, out=picks)
    indices, counts = np.unique(picks, return_counts=True)
    return SampleDistribution(
        vertex_order=vertex_order,
        shots=shots,
        seed=seed,
        indices=indices.astype(np.int64),
        counts=counts.astype(np.int64),
        schedule=schedule,
    )


def sample(ising: IsingModel, schedule: AngleSchedule, shots: int, seed: int,
           max_qubits: int = MAX_QUBITS) -> SampleDistribution:
    state = evolve(ising, schedule, max_qubits)
    return sample_state(state, ising.vertex_order, shots, seed, schedule)


def train_layerwise(ising: IsingModel, p: int, *, maxfev: int = 40,
                    max_qubits: int = MAX_QUBITS) -> tuple[AngleSchedule, TrainLog]:
    """Greedy depth-by-depth angle optimization with a no-op fallback.

    Layer k sees the frozen prefix state of layers 1..k-1, so each
    objective call costs one phase and one mixer pass regardless of k.
    """
    if p < 0:
        raise DomainError("depth must be non-negative")
    if maxfev < 1:
        raise DomainError("maxfev must be positive")
    n = ising.n
    check_width(n, max_qubits)
    energies = ising.energies_vector()
    prefix = uniform_state(n)
    gammas: list[float] = []
    betas: list[float] = []
    records: list[LayerRecord] = []

    def layer_value(gamma: float, beta: float) -> float:
        state = apply_phase(prefix, energies, gamma)
        apply_mixer(state, n, beta)
        return expectation(state, energies)

    for layer in range(1, p + 1):
        evals = 1
        candidates = [((0.0, 0.0), layer_value(0.0, 0.0))]
        for start in ((0.0, 0.0),) + FIXED_STARTS:
            res = minimize(
                lambda x: layer_value(x[0], x[1]),
                np.asarray(start, dtype=np.float64),
                method="Nelder-Mead",
                options={"maxfev": maxfev, "xatol": 1e-6, "fatol": 1e-12},
            )
            evals += int(res.nfev)
            candidates.append(((float(res.x[0]), float(res.x[1])), float(res.fun)))
        (gamma, beta), value = min(candidates, key=lambda c: c[1])
        if not np.isfinite(value):
            raise TrainingError(f"layer {layer} expectation is not finite")
        prefix = apply_phase(prefix, energies, gamma)
        apply_mixer(prefix, n, beta)
        gammas.append(gamma)
        betas.append(beta)
        records.append(LayerRecord(layer, gamma, beta, expectation(prefix, energies), evals))
    return AngleSchedule(tuple(gammas), tuple(betas)), TrainLog(tuple(records))
