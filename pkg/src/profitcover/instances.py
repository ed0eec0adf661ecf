"""Instance ingestion and synthetic graph generation.

File formats: whitespace edge lists (# comments), DIMACS (p/e lines,
1-based) and Matrix Market symmetric patterns (1-based). Loaded graphs are
relabelled to dense 0..n-1 indices; the original labels are returned
alongside so reports can translate back.

Generators cover the two synthetic families used throughout: connected
Erdős–Rényi graphs (rejection sampling until connected) and d-regular
graphs (pairing model with restart). Each call derives its own
counter-based RNG stream from the seed, so results are reproducible and
independent of call order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ParseError
from .graph import Graph, is_connected

_CONNECT_ATTEMPTS = 1000
_PAIRING_ATTEMPTS = 2000


@dataclass(frozen=True)
class InstanceSpec:
    """Where a graph comes from: a file or one of the synthetic families."""

    source: str  # "file" | "erdos_renyi" | "regular"
    path: str | None = None
    fmt: str | None = None
    n: int = 0
    p: float = 0.0
    d: int = 0
    seed: int = 0

    def name(self) -> str:
        if self.source == "file":
            return Path(self.path).stem if self.path else "file"
        if self.source == "erdos_renyi":
            return f"er-n{self.n}-p{self.p}-s{self.seed}"
        return f"reg-n{self.n}-d{self.d}-s{self.seed}"


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".mtx", ".mm"):
        return "matrix_market"
    if suffix in (".dimacs", ".col", ".clq"):
        return "dimacs"
    return "edge_list"


def _dedup(raw_edges: list[tuple[int, int]]) -> tuple[list[tuple[int, int]], int]:
    seen: set[tuple[int, int]] = set()
    edges = []
    dropped = 0
    for u, v in raw_edges:
        if u == v:
            dropped += 1
            continue
        e = (u, v) if u < v else (v, u)
        if e in seen:
            dropped += 1
            continue
        seen.add(e)
        edges.append(e)
    return edges, dropped


def _parse_edge_list(text: str, path) -> tuple[list[int], list[tuple[int, int]]]:
    labels: dict[str, None] = {}
    raw: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].split("%", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) < 2:
            raise ParseError("expected two vertex tokens", path, lineno)
        u, v = parts[0], parts[1]
        labels[u] = None
        labels[v] = None
        raw.append((u, v))
    keys = list(labels)
    # sort numerically when every label parses as an integer, else lexically
    try:
        order = sorted(keys, key=int)
    except ValueError:
        order = sorted(keys)
    index = {lab: i for i, lab in enumerate(order)}
    return order, [(index[u], index[v]) for u, v in raw]


def _parse_dimacs(text: str, path) -> tuple[int, list[tuple[int, int]]]:
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4:
                raise ParseError("malformed problem line", path, lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError("bad vertex count in problem line", path, lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", path, lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except (IndexError, ValueError):
                raise ParseError("malformed edge line", path, lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge ({u},{v}) out of range 1..{n}", path, lineno)
            edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing problem line", path)
    return n, edges


def _parse_matrix_market(text: str, path) -> tuple[int, list[tuple[int, int]]]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise ParseError("missing %%MatrixMarket header", path, 1)
    dims = None
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        body = line.strip()
        if not body or body.startswith("%"):
            continue
        parts = body.split()
        if dims is None:
            if len(parts) < 3:
                raise ParseError("malformed size line", path, lineno)
            try:
                rows, cols = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("bad size line", path, lineno)
            dims = max(rows, cols)
        else:
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("malformed entry", path, lineno)
            if not (1 <= u <= dims and 1 <= v <= dims):
                raise ParseError(f"entry ({u},{v}) out of range", path, lineno)
            edges.append((u - 1, v - 1))
    if dims is None:
        raise ParseError("missing size line", path)
    return dims, edges


def load_graph_named(path: str | Path, fmt: str | None = None) -> tuple[Graph, tuple[str, ...]]:
    """Load a graph plus the original-label table (index -> source label)."""
    fmt = fmt or detect_format(path)
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read file: {err}", str(path)) from err
    if fmt == "edge_list":
        labels, raw = _parse_edge_list(text, str(path))
        n = len(labels)
        names = tuple(labels)
    elif fmt == "dimacs":
        n, raw = _parse_dimacs(text, str(path))
        names = tuple(str(i + 1) for i in range(n))
    elif fmt == "matrix_market":
        n, raw = _parse_matrix_market(text, str(path))
        names = tuple(str(i + 1) for i in range(n))
    else:
        raise DomainError(f"unknown format {fmt!r}")
    if n == 0:
        raise DomainError(f"{path}: empty vertex set")
    edges, dropped = _dedup(raw)
    if dropped:
        warnings.warn(f"{path}: dropped {dropped} duplicate/self-loop entries", stacklevel=2)
    return Graph(range(n), edges), names


def load_graph(path: str | Path, fmt: str | None = None) -> Graph:
    graph, _ = load_graph_named(path, fmt)
    return graph


def gen_erdos_renyi_connected(n: int, p: float, seed: int) -> Graph:
    """Connected G(n,p) by whole-graph rejection sampling."""
    if n < 2:
        raise DomainError("need n >= 2")
    if not 0.0 < p <= 1.0:
        raise DomainError("need 0 < p <= 1")
    rng = _rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for _ in range(_CONNECT_ATTEMPTS):
        mask = rng.random(len(pairs)) < p
        g = Graph(range(n), [e for e, keep in zip(pairs, mask) if keep])
        if is_connected(g):
            return g
    raise DomainError(
        f"no connected sample in {_CONNECT_ATTEMPTS} attempts for n={n}, p={p}"
    )


def gen_regular(n: int, d: int, seed: int) -> Graph:
    """d-regular simple graph via the pairing model, restarting on collisions."""
    if d < 0 or d >= n or (n * d) % 2 != 0:
        raise DomainError(f"no {d}-regular graph on {n} vertices")
    if d == 0:
        return Graph(range(n), [])
    rng = _rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(_PAIRING_ATTEMPTS):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        edges = set()
        ok = True
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(range(n), edges)
    raise DomainError(f"pairing model failed after {_PAIRING_ATTEMPTS} restarts")


def realize(spec: InstanceSpec) -> tuple[Graph, tuple[str, ...]]:
    """Materialize an InstanceSpec into (graph, original labels)."""
    if spec.source == "file":
        if not spec.path:
            raise DomainError("file spec needs a path")
        return load_graph_named(spec.path, spec.fmt)
    if spec.source == "erdos_renyi":
        g = gen_erdos_renyi_connected(spec.n, spec.p, spec.seed)
    elif spec.source == "regular":
        g = gen_regular(spec.n, spec.d, spec.seed)
    else:
        raise DomainError(f"unknown source {spec.source!r}")
    return g, tuple(str(v) for v in g.vertices)
