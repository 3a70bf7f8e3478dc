"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line with
its runtime against the allowed budget; criterion 11 audits every solver result
produced by the others."""

import math
import time
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from artifact import exact, groups, spectral, suites
from artifact.graphs import (
    BipartiteGraph,
    Graph,
    crown,
    cycle,
    cycle_bipartite,
    extended_bipartite_double,
    hardness_gadget,
    hypercube,
    hypercube_graph,
    perfect_matching,
    single_edge,
)
from artifact.sdp import models
from artifact.sdp.engine import recording

TOL = 1e-6


@pytest.fixture(scope="module")
def solve_log():
    with recording() as log:
        yield log


class Verdict:
    def __init__(self, capsys, k: int, limit: float):
        self.capsys, self.k, self.limit = capsys, k, limit
        self.checks: dict = {}
        self.t0 = time.perf_counter()

    def check(self, label: str, ok: bool):
        self.checks[label] = bool(ok)

    def close(self, label: str, got, want, tol=TOL):
        self.check(f"{label}: got {got!r}, want {want!r}", abs(float(got) - float(want)) <= tol)

    def exact(self, label: str, got, want):
        self.check(f"{label}: got {got!r}, want {want!r}", got == want)

    def finish(self):
        elapsed = time.perf_counter() - self.t0
        failed = [k for k, v in self.checks.items() if not v]
        if elapsed >= self.limit:
            failed.append(f"runtime {elapsed:.1f}s over {self.limit}s")
        status = "FAIL" if failed else "PASS"
        with self.capsys.disabled():
            print(f"\n{status} criterion {self.k}: {len(self.checks) - len(failed)}/{len(self.checks)} checks, "
                  f"{elapsed:.1f}s (limit {self.limit}s)")
            for f in failed[:10]:
                print(f"    failed: {f}")
        assert not failed, failed


def test_criterion_01_single_edge_example(capsys, solve_log):
    v = Verdict(capsys, 1, 5)
    G = single_edge()
    rep = exact.exact_bipartite_parameters(G)
    v.exact("alpha", rep.alpha, 3)
    v.exact("alpha_bal", rep.alpha_bal, 2)
    v.exact("g", rep.g, 2)
    v.exact("h", rep.h, Fraction(2, 3))
    v.close("h1", models.h1(G), 0.7071068)
    v.check("h1_prime <= 0.70706", models.h1_prime(G) <= 0.70706)
    v.check("h1_prime below sqrt(2)/2 by 5e-5", models.h1_prime(G) <= math.sqrt(2) / 2 - 5e-5)
    v.close("h_bal1", models.balanced(G, "h_bal1"), 2 / 3)
    v.close("g_bal1", models.balanced(G, "g_bal1"), 4 / 3)
    v.close("las_bal1", models.balanced(G, "las_bal1"), 9 / 4)
    v.close("theta_bal", models.balanced(G, "theta_bal"), 8 / 3)
    v.finish()


def test_criterion_02_perfect_matching(capsys, solve_log):
    v = Verdict(capsys, 2, 30)
    for n in range(2, 9):
        G = perfect_matching(n)
        v.close(f"n={n} h1", models.h1(G), n / 4)
        v.close(f"n={n} h_hat", spectral.h_hat(G), n / 4)
        v.close(f"n={n} g1", models.g1(G), n * n / 4)
        v.close(f"n={n} g_hat", spectral.g_hat(G), n * n / 4)
        rep = exact.exact_bipartite_parameters(G)
        v.exact(f"n={n} g", rep.g, (n // 2) * ((n + 1) // 2))
        v.exact(f"n={n} h", rep.h, Fraction(rep.g, n))
    v.finish()


def test_criterion_03_crown(capsys, solve_log):
    v = Verdict(capsys, 3, 60)
    for n in range(3, 9):
        G = crown(n)
        h1, g1 = models.h1(G), models.g1(G)
        v.close(f"n={n} h1", h1, 0.5)
        if n >= 4:
            v.close(f"n={n} g1", g1, n * n / (8 * (n - 2)))
        if n >= 5:
            v.check(f"n={n} h1 < sqrt(g1)/2 by 1e-3 ({h1}, {math.sqrt(g1) / 2})", math.sqrt(g1) / 2 - h1 >= 1e-3)
        rep = exact.exact_bipartite_parameters(G)
        v.exact(f"n={n} g", rep.g, 1)
        v.exact(f"n={n} h", rep.h, Fraction(1, 2))
    v.finish()


def test_criterion_04_cycles(capsys, solve_log):
    v = Verdict(capsys, 4, 120)
    for n in range(4, 13, 2):
        c = math.cos(2 * math.pi / n)
        v.close(f"C{n} h1", models.h1(cycle_bipartite(n)), (n / 4) * c / (c + 1))
    for n in range(3, 10):
        B0 = extended_bipartite_double(cycle(n))
        half_phi = (n / 4) * math.cos(math.pi / n) ** 2 if n % 2 == 0 else (n / 4) * (2 * math.cos(math.pi / n) - 1)
        v.close(f"B0(C{n}) h1", models.h1(B0), half_phi)
        v.close(f"B0(C{n}) phi_H/2", spectral.haemers_phi_H(cycle(n)) / 2, half_phi, 1e-9)
        rep = exact.exact_bipartite_parameters(B0)
        if n % 2 == 0:
            h, g = Fraction(n - 2, 4), Fraction((n - 2) ** 2, 4)
        else:
            h, g = Fraction((n - 1) * (n - 3), 4 * (n - 2)), Fraction((n - 1) * (n - 3), 4)
        v.exact(f"B0(C{n}) h", rep.h, h)
        v.exact(f"B0(C{n}) g", rep.g, g)
    v.finish()


def test_criterion_05_hypercubes(capsys, solve_log):
    v = Verdict(capsys, 5, 120)
    for r in range(2, 6):
        Q = hypercube(r)
        v.close(f"Q{r} h1", models.h1(Q), 2.0 ** (r - 3) * (r - 2) / (r - 1))
        v.exact(f"Q{r} alpha_bal", exact.exact_bipartite_parameters(Q).alpha_bal, exact.a_sequence(r - 1))
        w = exact.hypercube_witnesses(r - 1)
        v.check(f"Q{r} balanced witness", w["bal_witness"].is_valid_in(Q) and w["bal_witness"].balanced
                and w["bal_witness"].sum == exact.a_sequence(r - 1))
        v.check(f"Q{r} h witness", w["h_witness"].is_valid_in(extended_bipartite_double(hypercube_graph(r - 1))))
    v.finish()


def test_criterion_06_hardness_gadget(capsys, solve_log):
    v = Verdict(capsys, 6, 600)
    atlas = nx.graph_atlas_g()
    four = [Graph(4, g.edges()) for g in atlas if g.number_of_nodes() == 4]
    six = [Graph(6, g.edges()) for g in atlas if g.number_of_nodes() == 6 and g.number_of_edges() == 6]
    v.exact("graphs on 4 vertices", len(four), 11)
    v.exact("graphs on 6 vertices with 6 edges", len(six), 21)
    for G in four + six:
        tag = f"n={G.n} E={G.sorted_edges()}"
        v.exact(f"{tag} alpha(H_G)", exact.alpha_bipartite(hardness_gadget(G)), G.n + G.m * (G.n + 1))
        if 4 * G.m == G.n * (G.n - 2):
            clique, bal = exact.verify_gadget_equivalence(G)
            v.check(f"{tag} equivalence ({clique}, {bal})", clique == bal)
        else:
            # outside the edge-count hypothesis the equivalence is not claimed
            with pytest.raises(ValueError):
                exact.verify_gadget_equivalence(G)
        if G.n == 4:
            v.check(f"{tag} maximal-set structure", exact.gadget_maximal_sets_match_structure(G))
    v.finish()


def test_criterion_07_inequality_fuzz(capsys, solve_log):
    v = Verdict(capsys, 7, 900)
    rng = np.random.default_rng(0)
    t = TOL
    for trial in range(200):
        N = int(rng.integers(2, 15))
        n1 = int(rng.integers(1, N))
        p = rng.uniform(0.1, 0.9)
        G = BipartiteGraph(n1, N - n1, [(i, j) for i in range(n1) for j in range(N - n1) if rng.random() < p])
        rep = exact.exact_bipartite_parameters(G)
        h1, g1, h1p = models.h1(G), models.g1(G), models.h1_prime(G)
        b = suites.balanced_values(G)
        h, g, a = float(rep.h), float(rep.g), rep.alpha
        tag = f"#{trial} {G.to_dict()}"
        v.check(f"{tag} exact chain", exact.verify_relation_chain(G, rep)["ok"])
        v.check(f"{tag} level-one chain", h <= math.sqrt(g) / 2 + t and math.sqrt(g) / 2 <= h1 + t
                and h1 <= math.sqrt(g1) / 2 + t and math.sqrt(g1) / 2 <= a / 4 + t)
        v.check(f"{tag} h1_prime sandwich", h <= h1p + t and h1p <= h1 + t)
        v.check(f"{tag} balanced chain", suites.balanced_chain(b, t)["ok"])
    v.finish()


def test_criterion_08_spectral_links(capsys, solve_log):
    v = Verdict(capsys, 8, 600)
    for c in suites.suite_spectral(0, tol=1e-5):
        v.check(c.name, c.ok)
    v.finish()


def test_criterion_09_balanced_symmetric(capsys, solve_log):
    v = Verdict(capsys, 9, 300)
    corpus = [(f"PM{n}", perfect_matching(n)) for n in range(2, 7)]
    corpus += [(f"crown{n}", crown(n)) for n in range(3, 7)]
    corpus += [(f"C{n}", cycle_bipartite(n)) for n in range(4, 11, 2)]
    corpus += [("Q3", hypercube(3)), ("Q4", hypercube(4))]
    for name, G in corpus:
        n = G.n1
        r = G.regular_degree()
        lam2 = spectral.spectral_summary(G).singular[1]
        hh = spectral.h_hat(G)
        tb = models.symmetric_balanced(G, "theta_bal_hat")
        v.close(f"{name} theta_bal_hat closed form", tb, 2 * n * lam2 / (r + lam2))
        v.close(f"{name} theta_bal_hat = 4 h_hat", tb, 4 * hh)
        v.close(f"{name} las_bal_hat", models.symmetric_balanced(G, "las_bal_hat"), tb)
        v.close(f"{name} las_bal_tilde", models.symmetric_balanced(G, "las_bal_tilde"), tb)
        v.close(f"{name} sqrt(g_bal_hat)/2", math.sqrt(models.symmetric_balanced(G, "g_bal_hat")) / 2, hh)
    v.finish()


def test_criterion_10_groups(capsys, solve_log):
    v = Verdict(capsys, 10, 300)
    expected = {f"Z{n}": s for n, s in zip(range(2, 13), [1, 1, 2, 2, 3, 2, 4, 3, 5, 4, 6])}
    expected.update({"Z2xZ2": 2, "S3": 3, "D4": 4})
    for G, k in suites.GROUP_CORPUS:
        size, A = groups.max_product_free(G)
        v.exact(f"{G.name} max product-free", size, expected[G.name])
        v.exact(f"{G.name} brute force", size, suites.brute_force_product_free(G))
        rep = groups.gowers_report(G, A, k, 1e-9)
        v.check(f"{G.name} eigenvalue bound {rep['lambda2']} <= {rep['lambda2_bound']}", rep["checks"]["eigenvalue_bound"])
        v.check(f"{G.name} size cap", rep["checks"]["size_cap"])
        v.check(f"{G.name} |A|/2 <= h_hat", rep["checks"]["half_size_le_h_hat"])
    S3 = groups.symmetric(3)
    odd = groups.odd_permutations(S3)
    v.check("S3 odd permutations within bounds", groups.gowers_report(S3, odd, 1)["ok"])
    # every product-free subset of the small groups, not only the largest
    for G, k in suites.GROUP_CORPUS:
        if G.order > 8:
            continue
        for mask in range(1, 1 << G.order):
            A = [i for i in range(G.order) if mask >> i & 1]
            if groups.is_product_free(G, A):
                v.check(f"{G.name} {A}", groups.gowers_report(G, A, k, 1e-9)["ok"])
    v.finish()


def test_criterion_11_solver_certification(capsys, solve_log):
    v = Verdict(capsys, 11, 600)
    for c in suites.suite_sdp_duality(0, count=30):
        v.check(c.name, c.ok)
    optimal = [r for r in solve_log if r.status == "optimal"]
    v.check(f"results audited: {len(optimal)}", len(optimal) > 1000)
    for i, r in enumerate(optimal):
        v.check(f"result {i} gap {r.gap:.2e} value {r.value:.6g}", r.gap <= 1e-8 * (1 + abs(r.value)))
        v.check(f"result {i} min eigenvalue {r.min_eigenvalue:.2e}", r.min_eigenvalue >= -1e-8)
    v.finish()
