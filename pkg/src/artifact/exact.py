"""Exact biindependent-pair parameters by enumeration of maximal independent sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt

import networkx as nx

from .graphs import (
    BiindependentPair,
    BipartiteGraph,
    Graph,
    as_bipartite,
    bipartite_complement,
    complement,
    extended_bipartite_double,
    gadget_blocks,
    hardness_gadget,
    hypercube_vertex_map,
)

DEFAULT_BUDGET = 10**7

PARAMETERS = ("alpha", "alpha_bal", "g", "h", "g_bal", "h_bal")


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration exceeds its configured budget."""


def alpha_bipartite(G: BipartiteGraph) -> int:
    """Independence number via König: order minus maximum matching."""
    g = nx.Graph()
    left = [("a", i) for i in range(G.n1)]
    g.add_nodes_from(left)
    g.add_nodes_from(("b", j) for j in range(G.n2))
    g.add_edges_from((("a", i), ("b", j)) for i, j in G.edges)
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    return G.order - len(matching) // 2


def maximal_independent_sets(G: BipartiteGraph, budget: int = DEFAULT_BUDGET):
    """Yield (A, B) for every maximal independent set of G.

    Uses pivoting maximal-clique enumeration on the complement of the flattened
    graph. Raises BudgetExceeded once more than `budget` sets have been produced.
    """
    comp = complement(G.flatten()).to_networkx()
    count = 0
    for clique in nx.find_cliques(comp):
        count += 1
        if count > budget:
            raise BudgetExceeded(f"more than {budget} maximal independent sets")
        A = [v for v in clique if v < G.n1]
        B = [v - G.n1 for v in clique if v >= G.n1]
        yield A, B


@dataclass
class ExactReport:
    alpha: int
    alpha_bal: int
    g: int
    h: Fraction
    g_bal: int
    h_bal: Fraction
    witnesses: dict = field(default_factory=dict)

    def value(self, name: str):
        return getattr(self, name)

    def verify(self, G: BipartiteGraph) -> bool:
        """Re-check every witness against the graph and reported value."""
        objective = {
            "alpha": lambda p: p.sum,
            "alpha_bal": lambda p: p.sum,
            "g": lambda p: p.product,
            "h": lambda p: p.ratio,
            "g_bal": lambda p: p.product,
            "h_bal": lambda p: p.ratio,
        }
        for name, pair in self.witnesses.items():
            if not pair.is_valid_in(G):
                return False
            if name.endswith("_bal") and not pair.balanced:
                return False
            if objective[name](pair) != getattr(self, name):
                return False
        return self.alpha_bal <= self.alpha

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return {"num": v.numerator, "den": v.denominator}
            return v

        out = {name: enc(getattr(self, name)) for name in PARAMETERS}
        out["witnesses"] = {k: p.to_dict() for k, p in self.witnesses.items()}
        return out


def _candidate(A: list, B: list, name: str):
    """Best pair for `name` contained in the maximal set (A, B)."""
    A, B = sorted(A), sorted(B)
    if name in ("alpha", "g", "h"):
        return BiindependentPair(A, B)
    k = min(len(A), len(B))
    return BiindependentPair(A[:k], B[:k])


_SCORE = {
    "alpha": lambda p: p.sum,
    "alpha_bal": lambda p: p.sum,
    "g": lambda p: p.product,
    "h": lambda p: p.ratio,
    "g_bal": lambda p: p.product,
    "h_bal": lambda p: p.ratio,
}


def exact_bipartite_parameters(G: BipartiteGraph, which=PARAMETERS, budget: int = DEFAULT_BUDGET) -> ExactReport:
    """Exact alpha, alpha_bal, g, h, g_bal, h_bal with lexicographically smallest
    optimal witnesses among the candidates drawn from maximal independent sets."""
    best = {}
    for A, B in maximal_independent_sets(G, budget):
        for name in PARAMETERS:
            p = _candidate(A, B, name)
            s = _SCORE[name](p)
            cur = best.get(name)
            if cur is None or s > cur[0] or (s == cur[0] and p.key() < cur[1].key()):
                best[name] = (s, p)
    if not best:  # graph with no vertices
        empty = BiindependentPair((), ())
        best = {name: (_SCORE[name](empty), empty) for name in PARAMETERS}
    vals = {name: best[name][0] for name in PARAMETERS}
    return ExactReport(
        alpha=vals["alpha"],
        alpha_bal=vals["alpha_bal"],
        g=vals["g"],
        h=Fraction(vals["h"]),
        g_bal=vals["g_bal"],
        h_bal=Fraction(vals["h_bal"]),
        witnesses={name: best[name][1] for name in which},
    )


def exact_general_parameters(G: Graph, budget: int = DEFAULT_BUDGET) -> dict:
    """g_bi, h_bi (through the extended double) and g_bc, h_bc (through the
    extended double of the complement). For bipartite G the biclique value is
    also computed on the bipartite complement and the two routes must agree."""
    bi = exact_bipartite_parameters(extended_bipartite_double(G), budget=budget)
    bc = exact_bipartite_parameters(extended_bipartite_double(complement(G)), budget=budget)
    out = {"g_bi": bi.g, "h_bi": bi.h, "g_bc": bc.g, "h_bc": bc.h}
    try:
        view = as_bipartite(G)
    except ValueError:
        return out
    other = exact_bipartite_parameters(bipartite_complement(view), budget=budget)
    if other.g != bc.g:
        raise AssertionError(f"biclique routes disagree: {bc.g} vs {other.g}")
    return out


def omega(G: Graph) -> int:
    """Clique number (branch and bound on the unweighted graph)."""
    if G.n == 0:
        return 0
    _, weight = nx.max_weight_clique(G.to_networkx(), weight=None)
    return weight


def omega_brute_force(G: Graph) -> int:
    nb = G.neighbor_sets()
    best = 1 if G.n else 0
    for k in range(2, G.n + 1):
        found = any(
            all(v in nb[u] for u, v in itertools.combinations(S, 2)) for S in itertools.combinations(range(G.n), k)
        )
        if not found:
            break
        best = k
    return best


def verify_gadget_equivalence(G: Graph, budget: int = DEFAULT_BUDGET) -> tuple[bool, bool]:
    """(omega(G) >= |V|/2, alpha(H_G) == alpha_bal(H_G)) for graphs with
    |E| = |V|(|V|-2)/4; the two answers should coincide."""
    n = G.n
    if n % 2 or 4 * G.m != n * (n - 2):
        raise ValueError(f"edge-count condition |E| = |V|(|V|-2)/4 fails: |V|={n}, |E|={G.m}")
    has_clique = 2 * omega(G) >= n
    rep = exact_bipartite_parameters(hardness_gadget(G), budget=budget)
    return has_clique, rep.alpha == rep.alpha_bal


def gadget_maximal_sets_match_structure(G: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    """Check the classification of the maximal independent sets of H_G.

    Each one comes from a vertex subset S of G and a set T of edges lying inside
    V minus S: side 1 holds S and the blocks L_e of all edges not in T, side 2
    holds V minus S and the blocks R_e of the edges in T. Edges touching S are
    forced onto side 1; edges inside V minus S may go either way. All of these
    sets have size n + m(n+1), and nothing else is maximal.
    """
    H = hardness_gadget(G)
    n = G.n
    blocks = gadget_blocks(G)
    expected = set()
    for mask in range(2**n):
        S = {v for v in range(n) if (mask >> v) & 1}
        free = [i for i, ((a, b), _) in enumerate(blocks) if a not in S and b not in S]
        for k in range(len(free) + 1):
            for T in itertools.combinations(free, k):
                side1 = set(S)
                side2 = set(range(n)) - S
                for i, (_, R) in enumerate(blocks):
                    (side2 if i in T else side1).update(R)
                expected.add((frozenset(side1), frozenset(side2)))
    found = set()
    for A, B in maximal_independent_sets(H, budget):
        if len(A) + len(B) != n + G.m * (n + 1):
            return False
        found.add((frozenset(A), frozenset(B)))
    return found == expected


def a_sequence(r: int) -> int:
    """a(0) = 0, a(2k) = 4^k - C(2k, k), a(2k+1) = 2 a(2k)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r % 2 == 0:
        k = r // 2
        return 4**k - comb(2 * k, k)
    return 2 * a_sequence(r - 1)


def _weight(x: int) -> int:
    return bin(x).count("1")


def hypercube_witnesses(r: int) -> dict:
    """Explicit biindependent pairs in hypercubes.

    "h_pair": pair (L, U) in Q_r of sizes a(r)/2 each, as bit-vector ints.
    "bal_pair": parity-augmented pair in Q_{r+1}, balanced of total size a(r).
    Both are also given as BiindependentPair objects in the numbering of
    graphs.hypercube (keys "h_witness", "bal_witness").
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    k = r // 2
    if r % 2 == 0:
        L = [x for x in range(2**r) if _weight(x) <= k - 1]
        U = [x for x in range(2**r) if _weight(x) >= k + 1]
    else:
        # vectors of length 2k plus a free last coordinate (bit 2k)
        L = [x | (c << (2 * k)) for x in range(2 ** (2 * k)) if _weight(x) <= k - 1 for c in (0, 1)]
        U = [x | (c << (2 * k)) for x in range(2 ** (2 * k)) if _weight(x) >= k + 1 for c in (0, 1)]
    L_even = [x | ((_weight(x) % 2) << r) for x in L]
    U_odd = [x | (((_weight(x) + 1) % 2) << r) for x in U]
    pos = hypercube_vertex_map(r + 1)
    return {
        "h_pair": (L, U),
        "bal_pair": (L_even, U_odd),
        # (L, U) lives in the extended double of Q_r, vertices numbered as bit vectors
        "h_witness": BiindependentPair(L, U),
        # L_even has even weight, U_odd odd weight: part 1 / part 2 of Q_{r+1}
        "bal_witness": BiindependentPair([pos[x][1] for x in L_even], [pos[y][1] for y in U_odd]),
    }


def verify_relation_chain(G: BipartiteGraph, report: ExactReport | None = None) -> dict:
    """Check alpha_bal/4 = sqrt(g_bal)/2 = h_bal <= h <= sqrt(g)/2 <= alpha/4 and
    h = alpha/4 <=> sqrt(g)/2 = alpha/4 <=> alpha = alpha_bal, in exact arithmetic."""
    rep = report or exact_bipartite_parameters(G)
    k = isqrt(rep.g_bal)
    checks = {
        "balanced_equal": k * k == rep.g_bal and Fraction(rep.alpha_bal, 4) == Fraction(k, 2) == rep.h_bal,
        "h_bal<=h": rep.h_bal <= rep.h,
        # h <= sqrt(g)/2  <=>  4h^2 <= g
        "h<=sqrt(g)/2": 4 * rep.h * rep.h <= rep.g,
        # sqrt(g)/2 <= alpha/4  <=>  4g <= alpha^2
        "sqrt(g)/2<=alpha/4": 4 * rep.g <= rep.alpha**2,
    }
    e1 = rep.h == Fraction(rep.alpha, 4)
    e2 = 4 * rep.g == rep.alpha**2
    e3 = rep.alpha == rep.alpha_bal
    checks["equivalence"] = e1 == e2 == e3
    checks["ok"] = all(checks.values())
    return checks
