"""Penalty-free binary models for the profit objective.

The profit of a subset S of vertices is |edges covered by S| - |S|.
Maximizing it needs no feasibility penalty because every subset is
admissible, so the QUBO is simply

    maximize  sum_{uv in E} (x_u + x_v - x_u x_v)  -  sum_v x_v

with linear coefficient deg(v)-1 and quadratic coefficient -1 per edge.
The spin form (x = (1-z)/2, bit 1 mapped to z = -1) is

    H = 1/4 sum_{uv} (z_u z_v + z_u + z_v) - 1/2 sum_v z_v + offset

with offset = |V|/2 - 3|E|/4, and satisfies H(x) = -profit(x) exactly.
All coefficients are quarter-integers, so they are stored as integers
scaled by 4 and every energy is exact in binary floating point.

Basis-state indexing: bit j (least significant) of a state index holds
the indicator of ``vertex_order[j]``, and the display bitstring writes
that same bit at string position j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import Graph


def index_of_subset(subset, vertex_order: tuple[int, ...]) -> int:
    pos = {v: j for j, v in enumerate(vertex_order)}
    idx = 0
    for v in subset:
        idx |= 1 << pos[v]
    return idx


def subset_of_index(idx: int, vertex_order: tuple[int, ...]) -> frozenset[int]:
    return frozenset(v for j, v in enumerate(vertex_order) if idx >> j & 1)


def bitstring_of_index(idx: int, n: int) -> str:
    return "".join("1" if idx >> j & 1 else "0" for j in range(n))


def index_of_bitstring(bits: str) -> int:
    idx = 0
    for j, c in enumerate(bits):
        if c == "1":
            idx |= 1 << j
    return idx


def _bits_to_subset(bits: str, vertex_order: tuple[int, ...]) -> frozenset[int]:
    if len(bits) != len(vertex_order):
        raise DomainError(
            f"bitstring length {len(bits)} does not match {len(vertex_order)} vertices")
    return frozenset(v for c, v in zip(bits, vertex_order) if c == "1")


@dataclass(frozen=True)
class Qubo:
    """Profit objective as a maximization QUBO over 0/1 variables."""

    vertex_order: tuple[int, ...]
    linear: dict[int, int]  # v -> deg(v) - 1
    quadratic: dict[tuple[int, int], int]  # (u, v) -> -1 per edge

    def value(self, subset) -> int:
        s = set(subset)
        total = sum(c for v, c in self.linear.items() if v in s)
        total += sum(c for (u, v), c in self.quadratic.items() if u in s and v in s)
        return total

    def value_of_bits(self, bits: str) -> int:
        return self.value(_bits_to_subset(bits, self.vertex_order))

    def to_json_dict(self) -> dict:
        return {
            "n": len(self.vertex_order),
            "sense": "maximize",
            "vertex_order": list(self.vertex_order),
            "linear": {str(v): c for v, c in sorted(self.linear.items())},
            "quadratic": [[u, v, c] for (u, v), c in sorted(self.quadratic.items())],
        }


@dataclass(frozen=True)
class IsingModel:
    """Spin Hamiltonian with H(x) = -profit(x), coefficients times 4."""

    vertex_order: tuple[int, ...]
    h4: dict[int, int]  # 4*h_v = deg(v) - 2
    j4: dict[tuple[int, int], int]  # 4*J_uv = 1 per edge
    const4: int  # 4*offset = 2|V| - 3|E|

    @property
    def n(self) -> int:
        return len(self.vertex_order)

    @property
    def offset(self) -> float:
        return self.const4 / 4.0

    def energy(self, subset) -> float:
        """Exact energy of the computational basis state for a subset."""
        s = set(subset)
        z = {v: -1 if v in s else 1 for v in self.vertex_order}
        e4 = self.const4
        e4 += sum(c * z[v] for v, c in self.h4.items())
        e4 += sum(c * z[u] * z[v] for (u, v), c in self.j4.items())
        return e4 / 4.0

    def energy_of_bits(self, bits: str) -> float:
        return self.energy(_bits_to_subset(bits, self.vertex_order))

    def energies_vector(self) -> np.ndarray:
        """Energies of all 2^n basis states, exactly -profit per state.

        Computed as |S| - |covered edges| to avoid materializing a bit
        matrix: popcount gives |S|, and each edge contributes one OR.
        """
        n = self.n
        idx = np.arange(1 << n, dtype=np.uint64)
        energy = np.bitwise_count(idx).astype(np.int64)
        pos = {v: j for j, v in enumerate(self.vertex_order)}
        for u, v in self.j4:
            covered = ((idx >> np.uint64(pos[u])) | (idx >> np.uint64(pos[v]))) & np.uint64(1)
            energy -= covered.astype(np.int64)
        return energy.astype(np.float64)

    def to_json_dict(self) -> dict:
        return {
            "vertex_order": list(self.vertex_order),
            "h": {str(v): c / 4.0 for v, c in sorted(self.h4.items())},
            "j": [[u, v, c / 4.0] for (u, v), c in sorted(self.j4.items())],
            "offset": self.offset,
        }


def build_qubo(g: Graph) -> Qubo:
    if g.n == 0:
        raise DomainError("cannot build a model over an empty vertex set")
    linear = {v: g.degree(v) - 1 for v in g.vertices}
    quadratic = {e: -1 for e in g.edges}
    return Qubo(g.vertices, linear, quadratic)


def build_ising(g: Graph) -> IsingModel:
    if g.n == 0:
        raise DomainError("cannot build a model over an empty vertex set")
    h4 = {v: g.degree(v) - 2 for v in g.vertices}
    j4 = {e: 1 for e in g.edges}
    return IsingModel(g.vertices, h4, j4, 2 * g.n - 3 * g.m)
