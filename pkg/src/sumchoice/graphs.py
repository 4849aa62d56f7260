"""Graph representation, named-family generators, and degeneracy orderings.

Graphs are immutable: a vertex count, a sorted tuple of edges, and optional
part labels for bipartite-structured families (the small side A first, the
large side Q after, so list assignments and witnesses serialize stably).
Adjacency is kept as one bitmask per vertex; everything here is desk scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .rng import derive_rng

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph data or generator parameters."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbor bitmask per vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits_of(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)


@dataclass(frozen=True)
class VertexOrder:
    """A vertex ordering with per-vertex back-degrees (earlier neighbors).

    ``order`` is the ordering itself; ``back_degree[v]`` counts neighbors of
    ``v`` that precede it in ``order`` (indexed by vertex, not by position).
    """

    order: tuple[int, ...]
    back_degree: tuple[int, ...]

    @property
    def max_back_degree(self) -> int:
        return max(self.back_degree, default=0)

    def back_degrees_along_order(self) -> tuple[int, ...]:
        return tuple(self.back_degree[v] for v in self.order)


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def make_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    parts: tuple[Sequence[int], Sequence[int]] | None = None,
) -> Graph:
    """Validate and normalize into a ``Graph`` (sorted, deduplicated edges)."""
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    norm: set[Edge] = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        norm.add((min(u, v), max(u, v)))
    norm_parts = None
    if parts is not None:
        a_side, q_side = (tuple(int(v) for v in side) for side in parts)
        seen = set(a_side) | set(q_side)
        if len(seen) != len(a_side) + len(q_side) or any(not 0 <= v < n for v in seen):
            raise GraphError("part labels must be disjoint vertex sets within range")
        norm_parts = (a_side, q_side)
    return Graph(n=n, edges=tuple(sorted(norm)), parts=norm_parts)


# ---------------------------------------------------------------------------
# Named families


def complete_bipartite(a: int, q: int) -> Graph:
    _require_positive(a=a, q=q)
    edges = [(u, a + v) for u in range(a) for v in range(q)]
    return make_graph(a + q, edges, parts=(range(a), range(a, a + q)))


def complete_split(a: int, q: int) -> Graph:
    """K_{a,q} plus all edges inside the small part A."""
    _require_positive(a=a, q=q)
    edges = [(u, a + v) for u in range(a) for v in range(q)]
    edges += [(u, w) for u in range(a) for w in range(u + 1, a)]
    return make_graph(a + q, edges, parts=(range(a), range(a, a + q)))


def path(n: int) -> Graph:
    _require_positive(n=n)
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _require_positive(n=n)
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(q: int) -> Graph:
    """Center 0 joined to q leaves; this is K_{1,q} with parts labeled."""
    _require_positive(q=q)
    return make_graph(q + 1, [(0, v) for v in range(1, q + 1)], parts=((0,), range(1, q + 1)))


def random_tree(n: int, seed: int) -> Graph:
    _require_positive(n=n)
    if n == 1:
        return make_graph(1, [])
    if n == 2:
        return make_graph(2, [(0, 1)])
    rng = derive_rng(seed, "random_tree", n)
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    for v in prufer:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    last = [u for u in range(n) if degree[u] == 1]
    edges.append((last[0], last[1]))
    return make_graph(n, edges)


def random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform graph with exactly m edges (m may be 0: the empty graph)."""
    _require_positive(n=n)
    if m < 0:
        raise GraphError(f"edge count must be nonnegative, got {m}")
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if m > len(all_edges):
        raise GraphError(f"m={m} exceeds the {len(all_edges)} possible edges")
    rng = derive_rng(seed, "random_graph", n, m)
    return make_graph(n, rng.sample(all_edges, m))


def disjoint_cliques(*sizes: int) -> Graph:
    if not sizes:
        raise GraphError("need at least one clique size")
    _require_positive(**{f"size{i}": s for i, s in enumerate(sizes)})
    edges = []
    base = 0
    for s in sizes:
        edges += [(base + u, base + v) for u in range(s) for v in range(u + 1, s)]
        base += s
    return make_graph(base, edges)


_FAMILIES = {
    "complete_bipartite": lambda p: complete_bipartite(p[0], p[1]),
    "complete_split": lambda p: complete_split(p[0], p[1]),
    "path": lambda p: path(p[0]),
    "cycle": lambda p: cycle(p[0]),
    "complete": lambda p: complete(p[0]),
    "star": lambda p: star(p[0]),
    "random_tree": lambda p: random_tree(p[0], p[1]),
    "random_graph": lambda p: random_graph(p[0], p[1], p[2]),
    "disjoint_cliques": lambda p: disjoint_cliques(*p),
}


def generate(kind: str, params: Sequence[int]) -> Graph:
    """Build a named-family graph; deterministic given the same parameters."""
    if kind not in _FAMILIES:
        raise GraphError(f"unknown family {kind!r}; known: {sorted(_FAMILIES)}")
    params = [int(p) for p in params]
    try:
        return _FAMILIES[kind](params)
    except IndexError:
        raise GraphError(f"family {kind!r} got too few parameters: {params}") from None


def family_names() -> tuple[str, ...]:
    return tuple(sorted(_FAMILIES))


# ---------------------------------------------------------------------------
# Degeneracy ordering


def degeneracy_order(g: Graph) -> VertexOrder:
    """Reverse min-degree peeling order; ties peel the lowest index.

    In the returned order every vertex has at most degeneracy(g) earlier
    neighbors, and the back-degrees sum to |E|.
    """
    alive = set(range(g.n))
    degree = [g.degree(v) for v in range(g.n)]
    removal: list[int] = []
    for _ in range(g.n):
        v = min(alive, key=lambda u: (degree[u], u))
        removal.append(v)
        alive.remove(v)
        for u in bits_of(g.adj[v]):
            if u in alive:
                degree[u] -= 1
    order = tuple(reversed(removal))
    position = {v: i for i, v in enumerate(order)}
    back = [0] * g.n
    for u, v in g.edges:
        later = u if position[u] > position[v] else v
        back[later] += 1
    return VertexOrder(order=order, back_degree=tuple(back))


# ---------------------------------------------------------------------------
# JSON serialization: {n, edges: [[u,v],...], parts: {"A": [...], "Q": [...]}?}


def graph_to_json(g: Graph) -> dict:
    doc: dict = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.parts is not None:
        doc["parts"] = {"A": list(g.parts[0]), "Q": list(g.parts[1])}
    return doc


def graph_from_json(doc: dict) -> Graph:
    parts = None
    if "parts" in doc and doc["parts"] is not None:
        parts = (doc["parts"]["A"], doc["parts"]["Q"])
    return make_graph(doc["n"], doc["edges"], parts=parts)


def load_graph(path_or_text: str) -> Graph:
    """Parse a graph from a JSON string or a path to a JSON file."""
    text = path_or_text
    if not path_or_text.lstrip().startswith("{"):
        with open(path_or_text, "r", encoding="utf-8") as fh:
            text = fh.read()
    return graph_from_json(json.loads(text))


def _require_positive(**named: int) -> None:
    for name, value in named.items():
        if value <= 0:
            raise GraphError(f"parameter {name} must be positive, got {value}")
