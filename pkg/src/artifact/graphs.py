"""Immutable graph types, graph constructions and example families.

Vertex numbering is fixed for every construction so results are reproducible:
a bipartite graph with parts of size n1 and n2 is flattened by placing part-2
vertex j at global index n1 + j.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

import numpy as np


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            key = _norm_edge(u, v)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1.0
        return A

    def laplacian(self) -> np.ndarray:
        A = self.adjacency()
        return np.diag(A.sum(axis=1)) - A

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        deg = self.degrees()
        if not deg:
            return 0
        return deg[0] if all(d == deg[0] for d in deg) else None

    def neighbor_sets(self) -> list[set]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.sorted_edges())
        return g

    def to_dict(self) -> dict:
        return {"type": "general", "n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict()).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with parts 0..n1-1 and 0..n2-1 and cross edges (i, j)."""

    n1: int
    n2: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, n1: int, n2: int, edges: Iterable = ()):
        if n1 < 0 or n2 < 0:
            raise ValueError("part sizes must be nonnegative")
        seen = set()
        for e in edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < n1 and 0 <= j < n2):
                raise ValueError(f"edge ({i},{j}) does not cross the bipartition {n1}+{n2}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge {(i, j)}")
            seen.add((i, j))
        object.__setattr__(self, "n1", int(n1))
        object.__setattr__(self, "n2", int(n2))
        object.__setattr__(self, "edges", frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def order(self) -> int:
        return self.n1 + self.n2

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def biadjacency(self) -> np.ndarray:
        M = np.zeros((self.n1, self.n2))
        for i, j in self.edges:
            M[i, j] = 1.0
        return M

    def flatten(self) -> Graph:
        return Graph(self.n1 + self.n2, ((i, self.n1 + j) for i, j in self.edges))

    def adjacency(self) -> np.ndarray:
        return self.flatten().adjacency()

    def sign_vector(self) -> np.ndarray:
        """+1 on part 1, -1 on part 2."""
        return np.concatenate([np.ones(self.n1), -np.ones(self.n2)])

    def objective_matrix(self) -> np.ndarray:
        """Matrix C with x^T C x = x(V1) x(V2), i.e. (1/2)[[0, J], [J, 0]]."""
        N = self.order
        C = np.zeros((N, N))
        C[: self.n1, self.n1 :] = 0.5
        C[self.n1 :, : self.n1] = 0.5
        return C

    def regular_degree(self) -> int | None:
        return self.flatten().regular_degree()

    def is_complete(self) -> bool:
        return self.m == self.n1 * self.n2

    def to_dict(self) -> dict:
        return {
            "type": "bipartite",
            "n1": self.n1,
            "n2": self.n2,
            "edges": [list(e) for e in self.sorted_edges()],
        }

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict()).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class BiindependentPair:
    A: tuple
    B: tuple

    def __init__(self, A: Iterable[int], B: Iterable[int]):
        object.__setattr__(self, "A", tuple(sorted(set(A))))
        object.__setattr__(self, "B", tuple(sorted(set(B))))

    @property
    def sum(self) -> int:
        return len(self.A) + len(self.B)

    @property
    def product(self) -> int:
        return len(self.A) * len(self.B)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.product, self.sum) if self.sum else Fraction(0)

    @property
    def balanced(self) -> bool:
        return len(self.A) == len(self.B)

    def is_valid_in(self, G: BipartiteGraph) -> bool:
        if any(not 0 <= a < G.n1 for a in self.A) or any(not 0 <= b < G.n2 for b in self.B):
            return False
        return not any((a, b) in G.edges for a in self.A for b in self.B)

    def key(self) -> tuple:
        return (self.A, self.B)

    def to_dict(self) -> dict:
        return {"A": list(self.A), "B": list(self.B)}


# ---------------------------------------------------------------- constructions


def bipartite_double(G: Graph) -> BipartiteGraph:
    """Two copies of V; (i, j') is an edge iff ij is an edge of G."""
    E = []
    for u, v in G.edges:
        E.append((u, v))
        E.append((v, u))
    return BipartiteGraph(G.n, G.n, E)


def extended_bipartite_double(G: Graph) -> BipartiteGraph:
    """Bipartite double plus the matching (i, i')."""
    E = [(i, i) for i in range(G.n)]
    for u, v in G.edges:
        E.append((u, v))
        E.append((v, u))
    return BipartiteGraph(G.n, G.n, E)


def bipartite_complement(G: BipartiteGraph) -> BipartiteGraph:
    return BipartiteGraph(
        G.n1,
        G.n2,
        ((i, j) for i in range(G.n1) for j in range(G.n2) if (i, j) not in G.edges),
    )


def complement(G: Graph) -> Graph:
    return Graph(G.n, ((u, v) for u, v in itertools.combinations(range(G.n), 2) if (u, v) not in G.edges))


def disjoint_union(G: Graph, H: Graph) -> Graph:
    return Graph(G.n + H.n, list(G.edges) + [(u + G.n, v + G.n) for u, v in H.edges])


def join(G: Graph, H: Graph) -> Graph:
    U = disjoint_union(G, H)
    return Graph(U.n, list(U.edges) + [(u, G.n + v) for u in range(G.n) for v in range(H.n)])


def expansion(G: Graph, k: int) -> Graph:
    """Replace each vertex v by a k-clique X_v (vertices v*k .. v*k+k-1) and each
    edge uv by the complete bipartite graph between X_u and X_v."""
    if k < 1:
        raise ValueError("expansion factor k must be a positive integer")
    E = []
    for v in range(G.n):
        E.extend((v * k + a, v * k + b) for a, b in itertools.combinations(range(k), 2))
    for u, v in G.edges:
        E.extend((u * k + a, v * k + b) for a in range(k) for b in range(k))
    return Graph(G.n * k, E)


def hardness_gadget(G: Graph) -> BipartiteGraph:
    """Bipartite gadget whose maximal independent sets encode vertex subsets of G.

    Layout on each side: the n copies of V first (input order), then one block of
    n+1 vertices per edge in sorted edge order (L_e on side 1, R_e on side 2).
    Edges: the matching v1-v2, L_e x R_e complete, and v1 x R_e whenever v is an
    endpoint of e.
    """
    n = G.n
    block = n + 1
    edges = G.sorted_edges()
    E = [(v, v) for v in range(n)]
    for idx, (a, b) in enumerate(edges):
        start = n + idx * block
        R = range(start, start + block)
        E.extend((i, j) for i in R for j in R)
        E.extend((a, j) for j in R)
        E.extend((b, j) for j in R)
    size = n + len(edges) * block
    return BipartiteGraph(size, size, E)


def gadget_blocks(G: Graph) -> list[tuple[tuple[int, int], range]]:
    """Edge of G and the index range of its block on either side of the gadget."""
    n = G.n
    return [(e, range(n + i * (n + 1), n + (i + 1) * (n + 1))) for i, e in enumerate(G.sorted_edges())]


# Six vertices, ten edges, clique number three: a hexagon 0..5 with the three
# long diagonals and the chord {1,3}.
F_GRAPH_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3), (1, 4), (2, 5), (1, 3))


def f_graph() -> Graph:
    return Graph(6, F_GRAPH_EDGES)


def half_size_reduction(G: Graph) -> Graph:
    """Graph H with |E(H)| = |V(H)|(|V(H)|-2)/4 and clique number omega(G)+3n+t."""
    if G.n % 2:
        raise ValueError("half_size_reduction needs an even number of vertices")
    n = G.n // 2
    target = 9 * n * n + n + G.m
    t = 1
    while comb(t, 2) < target:
        t += 1
    core = join(join(G, expansion(f_graph(), n)), complete_graph(t))
    filler = list(itertools.combinations(range(t), 2))[: comb(t, 2) - target]
    return disjoint_union(core, Graph(t, filler))


# --------------------------------------------------------------------- families


def perfect_matching(n: int) -> BipartiteGraph:
    _check_size(n, 1)
    return BipartiteGraph(n, n, ((i, i) for i in range(n)))


def crown(n: int) -> BipartiteGraph:
    _check_size(n, 1)
    return BipartiteGraph(n, n, ((i, j) for i in range(n) for j in range(n) if i != j))


def complete_bipartite(n1: int, n2: int) -> BipartiteGraph:
    _check_size(n1, 1)
    _check_size(n2, 1)
    return BipartiteGraph(n1, n2, ((i, j) for i in range(n1) for j in range(n2)))


def cycle(n: int) -> Graph:
    _check_size(n, 3)
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def cycle_bipartite(n: int) -> BipartiteGraph:
    """Even cycle with parts {0,2,4,..} and {1,3,5,..}; part index is vertex // 2."""
    _check_size(n, 4)
    if n % 2:
        raise ValueError("only even cycles are bipartite")
    E = []
    for v in range(0, n, 2):
        E.append((v // 2, ((v + 1) % n) // 2))
        E.append((v // 2, ((v - 1) % n) // 2))
    return BipartiteGraph(n // 2, n // 2, E)


def hypercube_vertex_map(r: int) -> dict[int, tuple[int, int]]:
    """Map a bit vector (as int) to (side, index): even weight on side 0."""
    even = [x for x in range(2**r) if bin(x).count("1") % 2 == 0]
    odd = [x for x in range(2**r) if bin(x).count("1") % 2 == 1]
    out = {x: (0, i) for i, x in enumerate(even)}
    out.update({x: (1, i) for i, x in enumerate(odd)})
    return out


def hypercube(r: int) -> BipartiteGraph:
    _check_size(r, 1)
    pos = hypercube_vertex_map(r)
    E = []
    for x, (side, i) in pos.items():
        if side == 0:
            E.extend((i, pos[x ^ (1 << b)][1]) for b in range(r))
    return BipartiteGraph(2 ** (r - 1), 2 ** (r - 1), E)


def complete_graph(n: int) -> Graph:
    _check_size(n, 1)
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    _check_size(n, 1)
    return Graph(n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def _check_size(n: int, low: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < low:
        raise ValueError(f"size parameter must be an integer >= {low}, got {n!r}")


def single_edge(n1: int = 2, n2: int = 2) -> BipartiteGraph:
    """n1 + n2 vertices and the one edge (0, 0); 2 + 2 is the smallest graph
    where h, sqrt(g)/2 and alpha/4 all differ."""
    _check_size(n1, 1)
    _check_size(n2, 1)
    return BipartiteGraph(n1, n2, [(0, 0)])


FAMILIES = {
    "perfect_matching": perfect_matching,
    "matching": perfect_matching,
    "crown": crown,
    "cycle": cycle,
    "complete_bipartite": complete_bipartite,
    "hypercube": hypercube,
    "complete": complete_graph,
    "empty": empty_graph,
    "petersen": petersen,
    "cycle_bipartite": cycle_bipartite,
    "single_edge": single_edge,
    "f_graph": f_graph,
}


def family(kind: str, *params: int):
    if kind not in FAMILIES:
        raise ValueError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}")
    return FAMILIES[kind](*params)


# ------------------------------------------------------------------------- JSON


def graph_from_dict(d: dict):
    kind = d.get("type")
    if kind == "general":
        return Graph(d["n"], d.get("edges", []))
    if kind == "bipartite":
        return BipartiteGraph(d["n1"], d["n2"], d.get("edges", []))
    raise ValueError(f"unknown graph type {kind!r}")


def load_graph(path: str):
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def dump_graph(G, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(G.to_dict(), fh)


def as_bipartite(G) -> BipartiteGraph:
    """Bipartite view of a general graph via a 2-coloring (BFS order, smallest
    vertex of each component on side 1)."""
    if isinstance(G, BipartiteGraph):
        return G
    color = [-1] * G.n
    nb = G.neighbor_sets()
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop(0)
            for v in sorted(nb[u]):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    raise ValueError("graph is not bipartite")
    side1 = [v for v in range(G.n) if color[v] == 0]
    side2 = [v for v in range(G.n) if color[v] == 1]
    i1 = {v: i for i, v in enumerate(side1)}
    i2 = {v: i for i, v in enumerate(side2)}
    E = []
    for u, v in G.edges:
        if color[u] == 1:
            u, v = v, u
        E.append((i1[u], i2[v]))
    return BipartiteGraph(len(side1), len(side2), E)


def hypercube_graph(r: int) -> Graph:
    """Q_r as a general graph with vertex x the bit vector of the integer x."""
    _check_size(r, 1)
    return Graph(2**r, ((x, x ^ (1 << b)) for x in range(2**r) for b in range(r) if x < x ^ (1 << b)))
