"""Property suites and worked-example tables behind the `verify` and `table`
commands. Every check returns a Check record; a failing record carries the
counterexample."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from . import exact, groups, spectral
from .graphs import (
    BipartiteGraph,
    Graph,
    as_bipartite,
    bipartite_complement,
    bipartite_double,
    complement,
    crown,
    cycle,
    cycle_bipartite,
    extended_bipartite_double,
    hardness_gadget,
    hypercube,
    hypercube_graph,
    perfect_matching,
    petersen,
    complete_graph,
    single_edge,
)
from .report import validate
from .sdp import models
from .sdp.engine import SolverConfig, solve

SUITES = ("relations", "gadgets", "spectral", "sdp-duality", "balanced", "groups", "examples")
SECTIONS = ("5.1", "5.2", "5.3", "5.4")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "ok": self.ok, "detail": self.detail}


def random_bipartite(rng: np.random.Generator, max_vertices: int = 12) -> BipartiteGraph:
    N = int(rng.integers(2, max_vertices + 1))
    n1 = int(rng.integers(1, N))
    p = rng.uniform(0.1, 0.9)
    E = [(i, j) for i in range(n1) for j in range(N - n1) if rng.random() < p]
    return BipartiteGraph(n1, N - n1, E)


def random_graph(rng: np.random.Generator, n_low: int = 4, n_high: int = 9) -> Graph:
    n = int(rng.integers(n_low, n_high + 1))
    p = rng.uniform(0.2, 0.8)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def _close(a, b, tol) -> bool:
    return abs(float(a) - float(b)) <= tol


# ---------------------------------------------------------------- suites


def suite_relations(seed: int = 0, count: int = 50, cfg: SolverConfig | None = None, tol: float = 1e-6) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        G = random_bipartite(rng)
        rep = exact.exact_bipartite_parameters(G)
        chain = exact.verify_relation_chain(G, rep)
        vals = {k: getattr(rep, k) for k in exact.PARAMETERS}
        vals["h1"] = models.h1(G, config=cfg)
        vals["g1"] = models.g1(G, config=cfg)
        vals["h1_prime"] = models.h1_prime(G, config=cfg)
        bad = validate(vals, tol)
        ok = chain["ok"] and not bad and rep.verify(G)
        out.append(Check("relations", f"random #{t}", ok, {} if ok else {"graph": G.to_dict(), "violations": bad, "exact": chain}))
    return out


def gadget_corpus(max_n: int = 5) -> list[Graph]:
    return [Graph(g.number_of_nodes(), g.edges()) for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= max_n]


def suite_gadgets(max_n: int = 5, budget: int = exact.DEFAULT_BUDGET) -> list[Check]:
    out = []
    for G in gadget_corpus(max_n):
        name = f"n={G.n} edges={G.sorted_edges()}"
        structure = exact.gadget_maximal_sets_match_structure(G, budget)
        alpha = exact.alpha_bipartite(hardness_gadget(G))
        ok = structure and alpha == G.n + G.m * (G.n + 1)
        detail = {"structure": structure, "alpha": alpha, "expected": G.n + G.m * (G.n + 1)}
        if G.n % 2 == 0 and 4 * G.m == G.n * (G.n - 2):
            clique, balanced = exact.verify_gadget_equivalence(G, budget)
            ok = ok and clique == balanced
            detail.update(clique=clique, balanced=balanced)
        out.append(Check("gadgets", name, ok, {} if ok else detail))
    return out


def spectral_corpus() -> dict[str, Graph]:
    corpus = {"C4": cycle(4), "C5": cycle(5), "C6": cycle(6), "Petersen": petersen(), "K4": complete_graph(4)}
    for n in (4, 5, 6):
        corpus[f"crown{n}"] = crown(n).flatten()
    corpus["Q3"] = hypercube_graph(3)
    return corpus


def suite_spectral(seed: int = 0, cfg: SolverConfig | None = None, tol: float = 1e-5) -> list[Check]:
    out = []
    for name, G in spectral_corpus().items():
        B0 = extended_bipartite_double(G)
        cmp = spectral.compare_double_bounds(G)
        # every corpus member is vertex- and edge-transitive
        h1_b0 = models.h1(B0, config=cfg)
        out.append(Check("spectral", f"{name}: h1(B0) = phi_H/2", _close(h1_b0, cmp["half_phi_H_laplacian"], tol),
                         {"h1": h1_b0, "half_phi_H": cmp["half_phi_H_laplacian"]}))
        le = cmp["half_phi_H"] <= cmp["h_hat_B0"] + tol
        eq = _close(cmp["half_phi_H"], cmp["h_hat_B0"], 1e-9)
        out.append(Check("spectral", f"{name}: phi_H/2 <= h_hat(B0), equality iff predicate",
                         le and eq == cmp["equality_predicate"] and _close(cmp["h_hat_B0"], cmp["h_hat_B0_spectral"], 1e-9),
                         cmp))
        two_hb = 2 * spectral.h_hat(bipartite_double(G))
        out.append(Check("spectral", f"{name}: hoffman <= 2 h_hat(B)",
                         cmp["hoffman"] <= two_hb + tol and _close(two_hb, cmp["two_h_hat_B"], 1e-9),
                         {"hoffman": cmp["hoffman"], "two_h_hat_B": two_hb}))
        th = models.theta(G, config=cfg)
        h1_b = models.h1(bipartite_double(G), config=cfg)
        out.append(Check("spectral", f"{name}: theta <= 2 h1(B)", th <= 2 * h1_b + tol, {"theta": th, "h1_B": h1_b}))
        try:
            Gb = as_bipartite(G)
        except ValueError:
            continue
        if Gb.n1 != Gb.n2:
            continue
        Gcb = bipartite_complement(Gb)
        lhs = models.h1(extended_bipartite_double(complement(Gb.flatten())), config=cfg)
        rhs = models.h1(Gcb, config=cfg)
        out.append(Check("spectral", f"{name}: h1(B0(complement)) = h1(bipartite complement)", _close(lhs, rhs, tol),
                         {"lhs": lhs, "rhs": rhs}))
        bc = spectral.bipartite_complement_bounds(Gb)
        strict = bc["h_hat_complement"] < bc["half_phi_H_complement"] - 1e-9
        consistent = (
            bc["h_hat_complement"] <= bc["half_phi_H_complement"] + tol
            and strict == bc["strict_predicate"]
            and _close(bc["half_phi_H_complement"], spectral.haemers_phi_H(complement(Gb.flatten())) / 2, 1e-9)
        )
        if Gcb.m:
            consistent = consistent and _close(bc["h_hat_complement"], spectral.h_hat(Gcb), 1e-9)
        out.append(Check("spectral", f"{name}: h_hat(bip. complement) <= phi_H(complement)/2, strict iff predicate",
                         consistent, bc))

    rng = np.random.default_rng(seed)
    for t in range(10):
        n = int(rng.integers(3, 6)) * 2
        r = int(rng.integers(1, n - 1))
        if (n * r) % 2:
            continue
        G = Graph(n, nx.random_regular_graph(r, n, seed=int(rng.integers(1 << 31))).edges())
        cmp = spectral.compare_double_bounds(G)
        ok = cmp["hoffman"] <= cmp["two_h_hat_B"] + tol and cmp["half_phi_H"] <= cmp["h_hat_B0"] + tol
        out.append(Check("spectral", f"random regular #{t}: hoffman and double chains", ok, {} if ok else cmp))
    for t in range(20):
        G = random_graph(rng, 4, 8)
        if G.m == 0:
            continue
        Gbar = complement(G)
        phi = spectral.haemers_phi(Gbar, cfg)
        phip = spectral.haemers_phi_prime(Gbar, cfg)
        phih = spectral.haemers_phi_H(G)
        ok = phi <= phip + 10 * tol and phip <= phih + 10 * tol
        out.append(Check("spectral", f"random #{t}: phi <= phi' <= phi_H", ok,
                         {} if ok else {"graph": G.to_dict(), "phi": phi, "phi_prime": phip, "phi_H": phih}))
    return out


TWO_SIDED = [
    ("h1", models.model_h1),
    ("g1", models.model_g1),
    ("h1_prime", models.model_h1_prime),
    ("h_hat_sdp", models.model_h_hat_sdp),
    ("h_hat_prime", models.model_h_hat_prime),
] + [(w, (lambda w: lambda G, s: models.model_balanced(G, w, s))(w)) for w in models.BALANCED] + [
    (w, (lambda w: lambda G, s: models.model_symmetric_balanced(G, w, s))(w)) for w in models.SYMMETRIC
]


def certify(res, gap_tol: float = 1e-8, eig_tol: float = 1e-8) -> bool:
    """Optimal results must have a small gap and PSD blocks."""
    if res.status != "optimal":
        return True
    return res.gap <= gap_tol * (1 + abs(res.value)) and res.min_eigenvalue >= -eig_tol


def suite_sdp_duality(seed: int = 0, count: int = 30, cfg: SolverConfig | None = None, tol: float = 1e-6) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        G = random_bipartite(rng, 10)
        if G.is_complete():
            continue
        for name, build in TWO_SIDED:
            a, b = solve(build(G, "primal"), cfg), solve(build(G, "dual"), cfg)
            ok = a.status == b.status == "optimal" and _close(a.value, b.value, tol) and certify(a) and certify(b)
            out.append(Check("sdp-duality", f"random #{t} {name}", ok, {} if ok else {
                "graph": G.to_dict(), "status": [a.status, b.status], "values": [a.value, b.value],
                "gaps": [a.gap, b.gap], "min_eig": [a.min_eigenvalue, b.min_eigenvalue]}))
    return out


def balanced_values(G: BipartiteGraph, cfg: SolverConfig | None = None) -> dict:
    return {w: models.balanced(G, w, config=cfg) for w in models.BALANCED}


def balanced_chain(v: dict, tol: float = 1e-6) -> dict:
    """Balanced chain and the equivalence sqrt(g_bal1)/2 = theta_bal/4 iff las_bal1 = theta_bal."""
    half_root = math.sqrt(max(v["g_bal1"], 0.0)) / 2
    checks = {
        "las_bal1/4 <= sqrt(g_bal1)/2": v["las_bal1"] / 4 <= half_root + tol,
        "sqrt(g_bal1)/2 <= h_bal1": half_root <= v["h_bal1"] + tol,
        "h_bal1 = theta_bal/4": _close(v["h_bal1"], v["theta_bal"] / 4, tol),
    }
    left = _close(half_root, v["theta_bal"] / 4, 1e-4)
    right = _close(v["las_bal1"], v["theta_bal"], 4e-4)
    checks["equivalence"] = left == right
    checks["ok"] = all(checks.values())
    return checks


def suite_balanced(seed: int = 0, count: int = 100, cfg: SolverConfig | None = None, tol: float = 1e-6) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        G = random_bipartite(rng, 12)
        v = balanced_values(G, cfg)
        chain = balanced_chain(v, tol)
        rep = exact.exact_bipartite_parameters(G)
        mono = (
            v["las_bal1"] <= models.theta(G, "arrow", cfg) + tol
            and v["h_bal1"] <= models.h1(G, config=cfg) + tol
            and v["g_bal1"] <= models.g1(G, config=cfg) + tol
            and rep.alpha_bal <= v["las_bal1"] + tol
            and float(rep.h_bal) <= v["h_bal1"] + tol
            and rep.g_bal <= v["g_bal1"] + tol
        )
        ok = chain["ok"] and mono
        out.append(Check("balanced", f"random #{t}", ok, {} if ok else {"graph": G.to_dict(), "values": v, "chain": chain}))
    return out


GROUP_CORPUS = [(groups.cyclic(n), 1) for n in range(2, 13)] + [
    (groups.cyclic_product(2, 2), 1),
    (groups.symmetric(3), 1),
    (groups.dihedral(4), 1),
]


def brute_force_product_free(G: groups.FiniteGroup) -> int:
    n = G.order
    best = 0
    for mask in range(1 << n):
        A = [i for i in range(n) if (mask >> i) & 1]
        if len(A) > best and groups.is_product_free(G, A):
            best = len(A)
    return best


def suite_groups(tol: float = 1e-9) -> list[Check]:
    out = []
    for G, k in GROUP_CORPUS:
        size, witness = groups.max_product_free(G)
        brute = brute_force_product_free(G)
        out.append(Check("groups", f"{G.name}: max product-free = {size}", size == brute and groups.is_product_free(G, witness),
                         {"search": size, "brute_force": brute}))
        if size == 0:
            continue
        rep = groups.gowers_report(G, witness, k, tol)
        out.append(Check("groups", f"{G.name}: eigenvalue bound, size cap and h_hat", rep["ok"], rep))
        H = groups.cayley_bipartite(G, witness)
        out.append(Check("groups", f"{G.name}: Cayley graph is |A|-regular", H.regular_degree() == len(witness), {}))
    S3 = groups.symmetric(3)
    odd = groups.odd_permutations(S3)
    out.append(Check("groups", "S3: odd permutations product-free of size n/2",
                     groups.is_product_free(S3, odd) and len(odd) == 3, {"odd": odd}))
    return out


def golden_values(cfg: SolverConfig | None = None) -> list[tuple[str, object, object, float]]:
    """(label, computed, expected, tolerance); tolerance 0 means exact."""
    fig = single_edge()
    rep = exact.exact_bipartite_parameters(fig)
    rows = [
        ("single edge 2+2: alpha", rep.alpha, 3, 0),
        ("single edge 2+2: alpha_bal", rep.alpha_bal, 2, 0),
        ("single edge 2+2: g", rep.g, 2, 0),
        ("single edge 2+2: h", rep.h, Fraction(2, 3), 0),
        ("single edge 2+2: h1", models.h1(fig, config=cfg), math.sqrt(2) / 2, 1e-6),
        ("single edge 2+2: h_bal1", models.balanced(fig, "h_bal1", config=cfg), 2 / 3, 1e-6),
        ("single edge 2+2: g_bal1", models.balanced(fig, "g_bal1", config=cfg), 4 / 3, 1e-6),
        ("single edge 2+2: las_bal1", models.balanced(fig, "las_bal1", config=cfg), 9 / 4, 1e-6),
        ("single edge 2+2: theta_bal", models.balanced(fig, "theta_bal", config=cfg), 8 / 3, 1e-6),
        ("crown(5): h1", models.h1(crown(5), config=cfg), 0.5, 1e-6),
        ("crown(5): g1", models.g1(crown(5), config=cfg), 25 / 24, 1e-6),
        ("crown(5): h_hat", spectral.h_hat(crown(5)), 0.5, 1e-9),
        ("crown(8): g_hat", spectral.g_hat(crown(8)), 4 / 3, 1e-9),
        ("perfect matching 4: h_hat", spectral.h_hat(perfect_matching(4)), 1.0, 1e-9),
        ("perfect matching 4: g_hat", spectral.g_hat(perfect_matching(4)), 4.0, 1e-9),
        ("perfect matching 5: g", exact.exact_bipartite_parameters(perfect_matching(5)).g, 6, 0),
        ("C6: h1", models.h1(cycle_bipartite(6), config=cfg), 0.5, 1e-6),
        ("Q4: h1", models.h1(hypercube(4), config=cfg), 4 / 3, 1e-6),
        ("C5: theta", models.theta(cycle(5), config=cfg), math.sqrt(5), 1e-6),
        ("Petersen: hoffman", spectral.hoffman_bound(petersen()), 4.0, 1e-9),
        ("Petersen: phi_H", spectral.haemers_phi_H(petersen()), 3.0, 1e-9),
        ("C4: phi_H", spectral.haemers_phi_H(cycle(4)), 1.0, 1e-9),
        ("Z5: max product-free", groups.max_product_free(groups.cyclic(5))[0], 2, 0),
        ("S3: max product-free", groups.max_product_free(groups.symmetric(3))[0], 3, 0),
    ]
    h1p = models.h1_prime(fig, config=cfg)
    rows.append(("single edge 2+2: h1_prime strictly below sqrt(2)/2", h1p + 5e-5 < math.sqrt(2) / 2, True, 0))
    return rows


def suite_examples(cfg: SolverConfig | None = None) -> list[Check]:
    out = []
    for label, got, want, tol in golden_values(cfg):
        ok = got == want if tol == 0 else _close(got, want, tol)
        out.append(Check("examples", label, bool(ok), {"got": str(got), "expected": str(want)}))
    return out


def run_suite(name: str, seed: int = 0, cfg: SolverConfig | None = None, budget: int = exact.DEFAULT_BUDGET,
              tol: float = 1e-6) -> list[Check]:
    if name == "relations":
        return suite_relations(seed, cfg=cfg, tol=tol)
    if name == "gadgets":
        return suite_gadgets(budget=budget)
    if name == "spectral":
        return suite_spectral(seed, cfg, max(tol, 1e-5))
    if name == "sdp-duality":
        return suite_sdp_duality(seed, cfg=cfg, tol=tol)
    if name == "balanced":
        return suite_balanced(seed, cfg=cfg, tol=tol)
    if name == "groups":
        return suite_groups()
    if name == "examples":
        return suite_examples(cfg)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


# ---------------------------------------------------------------- tables


def table(section: str, low: int | None = None, high: int | None = None, cfg: SolverConfig | None = None,
          budget: int = exact.DEFAULT_BUDGET) -> tuple[list[str], list[list]]:
    """Closed-form, solver and exact values side by side for one family."""
    if section == "5.1":
        low, high = low or 2, high or 8
        head = ["n", "h", "h1", "h_hat", "g", "g1", "g_hat", "n/4"]
        rows = []
        for n in range(low, high + 1):
            G = perfect_matching(n)
            rep = exact.exact_bipartite_parameters(G, budget=budget)
            rows.append([n, rep.h, models.h1(G, config=cfg), spectral.h_hat(G), rep.g, models.g1(G, config=cfg),
                         spectral.g_hat(G), n / 4])
        return head, rows
    if section == "5.2":
        low, high = low or 3, high or 8
        head = ["n", "h", "h1", "h_hat", "sqrt(g1)/2", "g", "g1", "n^2/(8(n-2))", "g1/g"]
        rows = []
        for n in range(low, high + 1):
            G = crown(n)
            rep = exact.exact_bipartite_parameters(G, budget=budget)
            g1v = models.g1(G, config=cfg)
            rows.append([n, rep.h, models.h1(G, config=cfg), spectral.h_hat(G), math.sqrt(g1v) / 2, rep.g, g1v,
                         n * n / (8 * (n - 2)) if n > 2 else float("nan"), g1v / rep.g if rep.g else float("nan")])
        return head, rows
    if section == "5.3":
        low, high = low or 4, high or 12
        head = ["n", "h", "h1", "closed form", "alpha/4"]
        rows = []
        for n in range(low + low % 2, high + 1, 2):
            G = cycle_bipartite(n)
            rep = exact.exact_bipartite_parameters(G, budget=budget)
            c = math.cos(2 * math.pi / n)
            rows.append([n, rep.h, models.h1(G, config=cfg), (n / 4) * c / (c + 1), Fraction(rep.alpha, 4)])
        return head, rows
    if section == "5.4":
        low, high = low or 2, high or 5
        head = ["r", "alpha_bal", "a(r-1)", "h", "h1", "2^(r-3)(r-2)/(r-1)"]
        rows = []
        for r in range(low, high + 1):
            G = hypercube(r)
            rep = exact.exact_bipartite_parameters(G, budget=budget)
            rows.append([r, rep.alpha_bal, exact.a_sequence(r - 1), rep.h, models.h1(G, config=cfg),
                         2.0 ** (r - 3) * (r - 2) / (r - 1)])
        return head, rows
    raise ValueError(f"unknown section {section!r}; choose from {', '.join(SECTIONS)}")
