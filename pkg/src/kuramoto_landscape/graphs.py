"""Dense simple graphs: generators, validation, and edge-list serialization.

Adjacency is stored as a dense boolean matrix; the workloads of interest are
dense (minimum degree fraction around 0.75 and above), so O(n^2) passes over
the full matrix are the normal access pattern.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

RNG_ALGORITHM = "numpy-pcg64"


class GraphError(ValueError):
    """Invalid graph construction parameters or malformed graph data."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on n vertices with dense boolean adjacency.

    Immutable after construction; safe to share read-only across workers.
    ``meta`` records how the graph was generated (generator name, parameters,
    RNG algorithm and seed) for reproducibility.
    """

    n: int
    adjacency: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if self.n < 2:
            raise GraphError(f"need at least 2 vertices, got n={self.n}")
        if a.shape != (self.n, self.n):
            raise GraphError(f"adjacency shape {a.shape} does not match n={self.n}")
        if np.any(np.diag(a)):
            raise GraphError("adjacency has nonzero diagonal entries")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency is not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (i, j) with i < j, in lexicographic order."""
        ii, jj = np.nonzero(np.triu(self.adjacency, k=1))
        return list(zip(ii.tolist(), jj.tolist()))


def complete_graph(n: int) -> Graph:
    """Complete graph K_n; min_degree_fraction is exactly 1."""
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2, got {n}")
    a = np.ones((n, n), dtype=bool)
    np.fill_diagonal(a, False)
    return Graph(n, a, meta={"generator": "complete", "n": n})


def circulant_graph(n: int, k: int) -> Graph:
    """Circulant graph: vertex j adjacent to j +- 1, ..., j +- k (mod n).

    Every vertex has degree exactly 2k, so min_degree_fraction = 2k/(n-1).
    """
    if n < 2:
        raise GraphError(f"circulant graph needs n >= 2, got {n}")
    if not 1 <= k <= (n - 1) // 2:
        raise GraphError(f"half-bandwidth k={k} out of range [1, {(n - 1) // 2}] for n={n}")
    a = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    for d in range(1, k + 1):
        a[idx, (idx + d) % n] = True
        a[idx, (idx - d) % n] = True
    return Graph(n, a, meta={"generator": "circulant", "n": n, "k": k})


def random_min_degree_graph(n: int, mu_target: float, seed: int) -> Graph:
    """Random graph with min degree >= ceil(mu_target * (n-1)).

    Starts from K_n and deletes edges in a seeded random order, skipping any
    deletion that would push an endpoint below the degree floor. Deterministic
    for a given seed.
    """
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    if not 0.0 < mu_target <= 1.0:
        raise GraphError(f"mu_target must be in (0, 1], got {mu_target}")
    floor = int(np.ceil(mu_target * (n - 1)))
    a = np.ones((n, n), dtype=bool)
    np.fill_diagonal(a, False)
    deg = np.full(n, n - 1)
    rng = np.random.default_rng(seed)
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(slots)
    for i, j in slots:
        if deg[i] > floor and deg[j] > floor:
            a[i, j] = a[j, i] = False
            deg[i] -= 1
            deg[j] -= 1
    return Graph(
        n,
        a,
        meta={
            "generator": "random_min_degree",
            "n": n,
            "mu_target": mu_target,
            "seed": seed,
            "rng": RNG_ALGORITHM,
        },
    )


def min_degree_fraction(g: Graph) -> float:
    """Minimum vertex degree divided by n-1 (the density parameter mu)."""
    return float(g.degrees.min()) / (g.n - 1)


def is_connected(g: Graph) -> bool:
    """BFS from vertex 0; true iff every vertex is reached."""
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in np.nonzero(g.adjacency[v] & ~seen)[0]:
            seen[u] = True
            queue.append(int(u))
    return bool(seen.all())


def write_edge_list(g: Graph, path: str | Path) -> None:
    """Write "n m" header then one "i j" line per edge (i < j, lexicographic)."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path: str | Path) -> Graph:
    """Read the edge-list format written by :func:`write_edge_list`.

    Validates vertex bounds, simplicity (no loops, no duplicate edges) and
    rebuilds the symmetric closure.
    """
    text = Path(path).read_text()
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise GraphError(f"{path}: empty edge-list file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise GraphError(f"{path}: malformed header {lines[0]!r}") from exc
    if n < 2:
        raise GraphError(f"{path}: header declares n={n} < 2")
    if len(lines) - 1 != m:
        raise GraphError(f"{path}: header declares {m} edges, found {len(lines) - 1}")
    a = np.zeros((n, n), dtype=bool)
    for ln in lines[1:]:
        try:
            i, j = (int(tok) for tok in ln.split())
        except ValueError as exc:
            raise GraphError(f"{path}: malformed edge line {ln!r}") from exc
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"{path}: edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise GraphError(f"{path}: self-loop at vertex {i}")
        if a[i, j]:
            raise GraphError(f"{path}: duplicate edge ({i}, {j})")
        a[i, j] = a[j, i] = True
    return Graph(n, a, meta={"generator": "edge_list", "path": str(path)})
