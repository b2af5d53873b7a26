"""Simple undirected graphs: random generators, induced subgraphs, and the
exact maximum-independent-set oracle used as ground truth by the benchmarks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import CapacityError, ConfigurationError, GenerationError

ORACLE_MAX_VERTICES = 24
REGULAR_RETRY_CAP = 1000


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    ``edges`` holds normalized (u < v) pairs in sorted order; ``adjacency``
    is the derived per-vertex neighbor table, kept consistent by construction.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            seen.add((u, v) if u < v else (v, u))
        adjacency: list[set[int]] = [set() for _ in range(n)]
        for u, v in seen:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(
            n=n,
            edges=tuple(sorted(seen)),
            adjacency=tuple(frozenset(a) for a in adjacency),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class VertexSubset:
    """A set of vertex labels with a bitstring/basis-index view.

    The bitstring is x_0 x_1 ... x_{n-1} with x_u = 1 iff u is a member;
    the basis index packs x_u into bit u of an integer.
    """

    members: frozenset[int]

    @classmethod
    def of(cls, *vertices: int) -> "VertexSubset":
        return cls(frozenset(vertices))

    @classmethod
    def from_index(cls, index: int) -> "VertexSubset":
        if index < 0:
            raise ValueError("basis index must be non-negative")
        return cls(frozenset(u for u in range(index.bit_length()) if (index >> u) & 1))

    @classmethod
    def from_bitstring(cls, bits: str) -> "VertexSubset":
        if set(bits) - {"0", "1"}:
            raise ValueError(f"bitstring must be over {{0,1}}, got {bits!r}")
        return cls(frozenset(u for u, b in enumerate(bits) if b == "1"))

    def to_index(self) -> int:
        return sum(1 << u for u in self.members)

    def to_bitstring(self, n: int) -> str:
        return "".join("1" if u in self.members else "0" for u in range(n))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, u: int) -> bool:
        return u in self.members


@dataclass(frozen=True)
class MisResult:
    """Exact oracle output: the independence number and every maximum set."""

    independence_number: int
    mis_sets: tuple[VertexSubset, ...]


def _check_vertices(g: Graph, vertices: Iterable[int]) -> None:
    for u in vertices:
        if not (0 <= u < g.n):
            raise ValueError(f"vertex {u} out of range for n={g.n}")


def erdos_renyi(n: int, edge_prob: float, seed: int) -> Graph:
    """G(n, p) with each of the n(n-1)/2 edges included independently.

    Identical (n, edge_prob, seed) always yields an identical graph: the
    pair stream is iterated in sorted order against one seeded RNG.
    """
    if n < 1:
        raise ConfigurationError(f"need n >= 1, got {n}")
    if not 0.0 <= edge_prob <= 1.0:
        raise ConfigurationError(f"edge probability must be in [0,1], got {edge_prob}")
    rng = np.random.default_rng(seed)
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if rng.random() < edge_prob
    ]
    return Graph.from_edges(n, edges)


def random_regular(n: int, degree: int, seed: int, retry_cap: int = REGULAR_RETRY_CAP) -> Graph:
    """Random d-regular graph via the pairing model with simplicity rejection."""
    if n < 1:
        raise ConfigurationError(f"need n >= 1, got {n}")
    if degree >= n:
        raise ConfigurationError(f"degree {degree} must be < n={n}")
    if (n * degree) % 2 != 0:
        raise ConfigurationError(f"n*d must be even, got n={n}, d={degree}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(retry_cap):
        perm = rng.permutation(stubs)
        pairs = {(min(int(a), int(b)), max(int(a), int(b))) for a, b in perm.reshape(-1, 2)}
        has_loop = any(u == v for u, v in pairs)
        if not has_loop and len(pairs) == (n * degree) // 2:
            return Graph.from_edges(n, pairs)
    raise GenerationError(
        f"no simple {degree}-regular pairing found in {retry_cap} attempts (n={n}, seed={seed})"
    )


def induced_subgraph(g: Graph, vs: VertexSubset) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``vs``, densely relabeled to 0..|vs|-1.

    Returns the subgraph together with the relabeling: entry i of the
    returned tuple is the original label of new vertex i (ascending order).
    """
    _check_vertices(g, vs.members)
    originals = tuple(sorted(vs.members))
    index = {orig: i for i, orig in enumerate(originals)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return Graph.from_edges(len(originals), edges), originals


def is_independent(g: Graph, vs: VertexSubset) -> bool:
    """True iff no two members are adjacent."""
    _check_vertices(g, vs.members)
    return all(not (g.adjacency[u] & vs.members) for u in vs.members)


def independent_set_mask(g: Graph) -> np.ndarray:
    """Boolean mask over all 2^n basis indices marking independent subsets."""
    if g.n > ORACLE_MAX_VERTICES:
        raise CapacityError(f"enumeration over 2^{g.n} exceeds cap {ORACLE_MAX_VERTICES}")
    idx = np.arange(1 << g.n, dtype=np.int64)
    ok = np.ones(1 << g.n, dtype=bool)
    for u, v in g.edges:
        ok &= ((idx >> u) & (idx >> v) & 1) == 0
    return ok


def popcount_table(n: int) -> np.ndarray:
    """Number of set bits for every index in [0, 2^n)."""
    if n > ORACLE_MAX_VERTICES:
        raise CapacityError(f"table over 2^{n} exceeds cap {ORACLE_MAX_VERTICES}")
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for u in range(n):
        out += (idx >> u) & 1
    return out


def brute_force_mis(g: Graph) -> MisResult:
    """Exhaustive scan of all 2^n subsets; exact independence number and
    every maximum independent set, in increasing basis-index order."""
    ok = independent_set_mask(g)
    sizes = popcount_table(g.n)
    best = int(sizes[ok].max())
    winners = np.nonzero(ok & (sizes == best))[0]
    return MisResult(best, tuple(VertexSubset.from_index(int(i)) for i in winners))


def min_degree_vertex(g: Graph, rng: np.random.Generator) -> int:
    """A vertex of minimum degree; ties broken uniformly at random."""
    if g.n < 1:
        raise ValueError("empty graph has no vertices")
    degrees = [len(a) for a in g.adjacency]
    dmin = min(degrees)
    tied = [u for u, d in enumerate(degrees) if d == dmin]
    if len(tied) == 1:
        return tied[0]
    return tied[int(rng.integers(len(tied)))]


def closeness(g: Graph, current: VertexSubset, candidate: int) -> int:
    """Number of edges between ``candidate`` and the current subgraph's vertices."""
    if candidate in current:
        raise ValueError(f"candidate {candidate} already in the current set")
    _check_vertices(g, [candidate])
    _check_vertices(g, current.members)
    return sum(1 for v in current.members if g.has_edge(candidate, v))


def bfs_distances(g: Graph, root: int) -> dict[int, int]:
    """Shortest-path distance from root to every reachable vertex."""
    _check_vertices(g, [root])
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def eccentricities(g: Graph) -> list[int]:
    """Per-vertex maximum shortest-path distance (within the vertex's component)."""
    return [max(bfs_distances(g, u).values()) for u in range(g.n)]


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge-list must start with a 'n m' header line")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"header declares {m} edges but {len(rows) - 1} lines follow")
    edges = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ValueError(f"line {i}: expected 'u v'")
        edges.append((int(row[0]), int(row[1])))
    g = Graph.from_edges(n, edges)
    if g.m != m:
        raise ValueError(f"duplicate edges: {m} declared, {g.m} distinct")
    return g


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))
