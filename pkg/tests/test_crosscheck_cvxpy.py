"""Compare the in-tree solver with an external conic solver on the same
problems, passed through the JSON interchange format."""

import numpy as np
import pytest

cp = pytest.importorskip("cvxpy")

from artifact.graphs import crown, cycle, hypercube, perfect_matching, petersen, single_edge
from artifact.sdp import models
from artifact.sdp.engine import solve
from artifact.sdp.problem import SdpProblem
from artifact.suites import TWO_SIDED, random_bipartite


def external_value(p: SdpProblem) -> float:
    p = SdpProblem.from_json(p.to_json())
    Xs = [cp.Variable((n, n), symmetric=True) for n in p.blocks]
    x = cp.Variable(p.lp, nonneg=True) if p.lp else None
    cons = [X >> 0 for X in Xs]
    for i in range(p.m):
        lhs = sum(cp.trace(p.A[k][i] @ Xs[k]) for k in range(len(Xs)))
        if x is not None:
            lhs = lhs + p.A_lp[i] @ x
        cons.append(lhs == p.b[i])
    obj = sum(cp.trace(p.C[k] @ Xs[k]) for k in range(len(Xs)))
    if x is not None:
        obj = obj + p.c_lp @ x
    prob = cp.Problem(cp.Minimize(obj), cons)
    prob.solve(solver=cp.CLARABEL)
    assert prob.status == cp.OPTIMAL, prob.status
    return p.value_scale * prob.value


CASES = [
    ("h1", lambda: models.model_h1(single_edge())),
    ("h1 dual", lambda: models.model_h1(crown(5), "dual")),
    ("g1", lambda: models.model_g1(perfect_matching(4))),
    ("h1_prime", lambda: models.model_h1_prime(single_edge())),
    ("theta", lambda: models.model_theta(petersen())),
    ("las1", lambda: models.model_theta(cycle(5), "arrow")),
    ("theta_bal", lambda: models.model_balanced(single_edge(), "theta_bal")),
    ("g_bal1", lambda: models.model_balanced(single_edge(), "g_bal1", "dual")),
    ("las_bal_hat", lambda: models.model_symmetric_balanced(hypercube(3), "las_bal_hat")),
    ("phi", lambda: models.model_phi(cycle(6))),
]


@pytest.mark.parametrize("name,build", CASES, ids=[c[0] for c in CASES])
def test_matches_external_solver(name, build):
    p = build()
    ours = solve(p)
    assert ours.status == "optimal"
    assert ours.value == pytest.approx(external_value(p), abs=1e-5)


@pytest.mark.parametrize("seed", range(5))
def test_random_graphs_match_external_solver(seed):
    rng = np.random.default_rng(seed)
    G = random_bipartite(rng, 8)
    while G.is_complete():
        G = random_bipartite(rng, 8)
    for name, build in TWO_SIDED[:5]:
        p = build(G, "primal")
        assert solve(p).value == pytest.approx(external_value(p), abs=1e-5), name
