"""Finite simplicial graphs with the predicates the embedding arguments need.

Graphs are loop-free and multi-edge-free, labels are opaque strings, and
equality is label-sensitive.  All searches are exhaustive: every instance
in this project has at most nine vertices, so correctness wins over speed.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field

from .errors import BudgetExceededError, InputError


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # canonically sorted pairs, sorted
    _adj: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", adj)

    def has_vertex(self, v: str) -> bool:
        return v in self._adj

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, ())

    def neighbors(self, v: str) -> frozenset[str]:
        return frozenset(self._adj[v])

    def __str__(self) -> str:
        return f"graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class InducedEmbedding:
    """An injective vertex map realizing the pattern as a full subgraph."""

    pairs: tuple[tuple[str, str], ...]  # (pattern vertex, host vertex)

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)


@dataclass(frozen=True)
class ThickStarWitness:
    vertex: str
    clique1: frozenset[str]
    clique2: frozenset[str]


def build_graph(vertices, edges) -> SimplicialGraph:
    """Validate and construct a graph; errors name the offending item."""
    vlist = list(vertices)
    seen: set[str] = set()
    for v in vlist:
        if not isinstance(v, str):
            raise InputError(f"vertex label is not a string: {v!r}")
        if v in seen:
            raise InputError(f"duplicate vertex label: {v!r}")
        seen.add(v)
    canon: list[tuple[str, str]] = []
    eseen: set[tuple[str, str]] = set()
    for pos, e in enumerate(edges):
        u, v = e
        if u not in seen:
            raise InputError(f"edges[{pos}]: unknown endpoint {u!r}")
        if v not in seen:
            raise InputError(f"edges[{pos}]: unknown endpoint {v!r}")
        if u == v:
            raise InputError(f"edges[{pos}]: loop at {u!r}")
        key = (u, v) if u < v else (v, u)
        if key in eseen:
            raise InputError(f"edges[{pos}]: duplicate edge {key}")
        eseen.add(key)
        canon.append(key)
    return SimplicialGraph(tuple(vlist), tuple(sorted(canon)))


_C4_EDGES = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]

_PARAM_NAME = re.compile(r"^(K_n|path|empty)\((\d+)\)$")


def standard_graph(name: str) -> SimplicialGraph:
    """Named graphs: C4, Gamma0, Gamma1, K_n(n), path(n), empty(n).

    Gamma0 is the 4-cycle on a,b,c,d plus q adjacent to all four, g
    adjacent to a,c only and h adjacent to b,d only, with g,h,q pairwise
    non-adjacent.  Gamma1 replaces q by commuting vertices e,f (each
    adjacent to all of a,b,c,d) with extra edges e-g and f-h.
    """
    if name == "C4":
        return build_graph(["a", "b", "c", "d"], _C4_EDGES)
    if name == "Gamma0":
        return build_graph(
            ["a", "b", "c", "d", "g", "h", "q"],
            _C4_EDGES
            + [("q", "a"), ("q", "b"), ("q", "c"), ("q", "d")]
            + [("g", "a"), ("g", "c"), ("h", "b"), ("h", "d")],
        )
    if name == "Gamma1":
        return build_graph(
            ["a", "b", "c", "d", "e", "f", "g", "h"],
            _C4_EDGES
            + [("e", x) for x in "abcd"]
            + [("f", x) for x in "abcd"]
            + [("e", "f"), ("e", "g"), ("f", "h")]
            + [("g", "a"), ("g", "c"), ("h", "b"), ("h", "d")],
        )
    m = _PARAM_NAME.match(name)
    if m is not None:
        kind, k = m.group(1), int(m.group(2))
        labels = [f"v{i}" for i in range(1, k + 1)]
        if kind == "K_n":
            return build_graph(labels, itertools.combinations(labels, 2))
        if kind == "path":
            return build_graph(labels, zip(labels, labels[1:]))
        return build_graph(labels, [])
    raise InputError(f"unknown graph name: {name!r}")


def link(g: SimplicialGraph, v: str) -> frozenset[str]:
    """The set of vertices adjacent to v."""
    if not g.has_vertex(v):
        raise InputError(f"unknown vertex: {v!r}")
    return g.neighbors(v)


def star(g: SimplicialGraph, v: str) -> frozenset[str]:
    return link(g, v) | {v}


def find_induced_embedding(
    pattern: SimplicialGraph,
    host: SimplicialGraph,
    node_budget: int | None = None,
) -> InducedEmbedding | None:
    """Backtracking search for an induced copy of pattern inside host.

    Returns the first witness in lexicographic assignment order (pattern
    vertices in declared order, host candidates in declared order), or
    None.  A node budget, when given, bounds the number of attempted
    partial assignments and raises BudgetExceededError past it.
    """
    pverts = pattern.vertices
    hverts = host.vertices
    if len(pverts) > len(hverts):
        return None
    assignment: dict[str, str] = {}
    used: set[str] = set()
    nodes = 0

    def compatible(pv: str, hv: str) -> bool:
        for qv, qh in assignment.items():
            if pattern.has_edge(pv, qv) != host.has_edge(hv, qh):
                return False
        return True

    def extend(i: int) -> InducedEmbedding | None:
        nonlocal nodes
        if i == len(pverts):
            return InducedEmbedding(tuple((p, assignment[p]) for p in pverts))
        pv = pverts[i]
        for hv in hverts:
            if hv in used:
                continue
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise BudgetExceededError(
                    "induced-embedding search exceeded node budget",
                    {"nodes": nodes, "assigned": len(assignment)},
                )
            if compatible(pv, hv):
                assignment[pv] = hv
                used.add(hv)
                found = extend(i + 1)
                if found is not None:
                    return found
                del assignment[pv]
                used.remove(hv)
        return None

    return extend(0)


def is_triangle_free(g: SimplicialGraph) -> bool:
    for u, v in g.edges:
        if g.neighbors(u) & g.neighbors(v):
            return False
    return True


def max_clique_size(g: SimplicialGraph) -> int:
    """Size of a maximum clique, by exhaustive branch and bound."""
    best = 0
    order = g.vertices

    def grow(clique_size: int, candidates: list[str]) -> None:
        nonlocal best
        best = max(best, clique_size)
        for i, v in enumerate(candidates):
            if clique_size + len(candidates) - i <= best:
                return
            grow(clique_size + 1, [w for w in candidates[i + 1:] if g.has_edge(v, w)])

    grow(0, list(order))
    return best


def _cliques_of_size(g: SimplicialGraph, pool: frozenset[str], k: int):
    """All k-subsets of pool spanning complete subgraphs, in sorted order."""
    members = sorted(pool)
    for combo in itertools.combinations(members, k):
        if all(g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            yield frozenset(combo)


def has_thick_stars(g: SimplicialGraph, n: int) -> dict[str, ThickStarWitness] | None:
    """For every vertex, two n-cliques meeting exactly at it, or None.

    Equivalent formulation: the link of each vertex contains two disjoint
    (n-1)-cliques.  At n = 1 the two singleton cliques are allowed to
    coincide, so any graph with a vertex qualifies.
    """
    if n < 1:
        raise InputError(f"thick-star size must be >= 1, got {n}")
    witnesses: dict[str, ThickStarWitness] = {}
    for v in g.vertices:
        if n == 1:
            witnesses[v] = ThickStarWitness(v, frozenset({v}), frozenset({v}))
            continue
        found = None
        subcliques = list(_cliques_of_size(g, link(g, v), n - 1))
        for c1, c2 in itertools.combinations(subcliques, 2):
            if not c1 & c2:
                found = ThickStarWitness(v, c1 | {v}, c2 | {v})
                break
        if found is None:
            return None
        witnesses[v] = found
    return witnesses


def graph_to_json(g: SimplicialGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def graph_from_json(data) -> SimplicialGraph:
    if not isinstance(data, dict):
        raise InputError("graph JSON must be an object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise InputError(f"graph JSON missing {key!r}")
    vertices = data["vertices"]
    edges = data["edges"]
    if not isinstance(vertices, list):
        raise InputError("'vertices' must be a list")
    if not isinstance(edges, list):
        raise InputError("'edges' must be a list")
    for pos, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"edges[{pos}]: expected a pair, got {e!r}")
    return build_graph(vertices, [tuple(e) for e in edges])


def load_graph(path: str) -> SimplicialGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))
