"""Builders for the level-1 semidefinite bounds.

Every builder returns an SdpProblem in the canonical form of `problem.py`.
Programs stated as "max <Obj, X> subject to linear equalities, X PSD" are
written with the canonical primal variable (x-form). Programs stated as
"min c^T y subject to F0 + sum y_i F_i PSD" are written with the canonical
dual multipliers (y-form), so their free scalars need no splitting. In both
cases `value_scale = -1` turns the canonical optimum into the modelled value.

Notation for a bipartite graph with N = n1 + n2 vertices: C = (1/2)[[0, J],
[J, 0]], f = +1 on part 1 and -1 on part 2, and edge (i, j) sits at
flattened position (i, n1 + j). Bordered ("arrow") models use one extra
leading row and column, index 0, for the vector x.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as la

from ..graphs import BipartiteGraph, Graph
from .engine import SolverConfig, solve
from .problem import SdpProblem, SolveResult


def _unit(n: int, i: int, j: int) -> np.ndarray:
    E = np.zeros((n, n))
    E[i, j] = E[j, i] = 1.0
    return E


def _xform(objective: np.ndarray, constraints: list, name: str, meta: dict) -> SdpProblem:
    """max <objective, X> s.t. <M, X> = r for (M, r) in constraints, X PSD."""
    n = objective.shape[0]
    A = np.array([M for M, _ in constraints]).reshape(len(constraints), n, n)
    b = np.array([r for _, r in constraints], dtype=float)
    return SdpProblem([n], [-objective], [A], b, sense="maximize", value_scale=-1.0, name=name, metadata=meta)


def _yform(F0: list, F: list, cost: list, name: str, meta: dict) -> SdpProblem:
    """min cost^T y s.t. F0_k + sum_i y_i F_i[k] PSD for every block k.

    F0 is a list of block matrices, F a list (one entry per variable) of lists
    of block matrices.
    """
    blocks = [M.shape[0] for M in F0]
    A = [-np.array([Fi[k] for Fi in F]).reshape(len(F), n, n) for k, n in enumerate(blocks)]
    return SdpProblem(
        blocks, [M.copy() for M in F0], A, -np.asarray(cost, dtype=float), sense="minimize", value_scale=-1.0, name=name, metadata=meta
    )


def _as_bipartite(G) -> BipartiteGraph:
    if not isinstance(G, BipartiteGraph):
        raise TypeError("a BipartiteGraph is required")
    return G


def _flat_edges(G: BipartiteGraph) -> list[tuple[int, int]]:
    return [(i, G.n1 + j) for i, j in G.sorted_edges()]


def _border(M: np.ndarray) -> np.ndarray:
    """Embed an N x N matrix into the lower-right corner of an (N+1) x (N+1) matrix."""
    n = M.shape[0]
    out = np.zeros((n + 1, n + 1))
    out[1:, 1:] = M
    return out


def _e00(n: int) -> np.ndarray:
    E = np.zeros((n + 1, n + 1))
    E[0, 0] = 1.0
    return E


def _border_link(n: int, i: int) -> np.ndarray:
    """Matrix with <., Y> = Y_ii - Y_0i for the arrow variable Y (i in 0..n-1)."""
    E = np.zeros((n + 1, n + 1))
    E[i + 1, i + 1] = 1.0
    E[0, i + 1] = E[i + 1, 0] = -0.5
    return E


def _border_sum(n: int, mask: np.ndarray | None = None) -> np.ndarray:
    """Matrix with <., Y> = sum_i mask_i Y_0i."""
    v = np.ones(n) if mask is None else mask
    E = np.zeros((n + 1, n + 1))
    E[0, 1:] = E[1:, 0] = 0.5 * v
    return E


def _meta(G, bound: str, side: str, form: str) -> dict:
    return {"bound": bound, "side": side, "formulation": form, "graph": G.digest()}


# ---------------------------------------------------------------- theta


def model_theta(G, form: str = "trace") -> SdpProblem:
    """Lovasz theta. trace: max <J,X>, Tr X = 1, X_ij = 0 on edges.
    arrow: max Tr X with [[1, diag(X)^T], [diag(X), X]] PSD and edge zeros."""
    H = G.flatten() if isinstance(G, BipartiteGraph) else G
    N = H.n
    edges = H.sorted_edges()
    if form == "trace":
        cons = [(np.eye(N), 1.0)] + [(0.5 * _unit(N, i, j), 0.0) for i, j in edges]
        return _xform(np.ones((N, N)), cons, "theta", _meta(H, "theta", "primal", "max <J,X>: Tr X = 1, edge zeros"))
    if form == "arrow":
        cons = [(_e00(N), 1.0)] + [(_border_link(N, i), 0.0) for i in range(N)]
        cons += [(0.5 * _unit(N + 1, i + 1, j + 1), 0.0) for i, j in edges]
        return _xform(_border(np.eye(N)), cons, "las1", _meta(H, "las1", "primal", "max Tr X: arrow PSD, edge zeros"))
    raise ValueError(f"unknown theta form {form!r}")


# ---------------------------------------------------------------- h1 / g1 / h1'


def model_h1(G: BipartiteGraph, side: str = "primal") -> SdpProblem:
    """primal: min lambda, lambda I + Z - C PSD, Z supported on edges.
    dual: max <C, X>, Tr X = 1, X_ij = 0 on edges, X PSD."""
    G = _as_bipartite(G)
    N = G.order
    C = G.objective_matrix()
    edges = _flat_edges(G)
    if side == "primal":
        F = [[np.eye(N)]] + [[_unit(N, i, j)] for i, j in edges]
        cost = [1.0] + [0.0] * len(edges)
        return _yform([-C], F, cost, "h1", _meta(G, "h1", side, "min lambda: lambda I + Z - C PSD"))
    if side == "dual":
        cons = [(np.eye(N), 1.0)] + [(0.5 * _unit(N, i, j), 0.0) for i, j in edges]
        return _xform(C, cons, "h1", _meta(G, "h1", side, "max <C,X>: Tr X = 1, edge zeros"))
    raise ValueError(f"side must be primal or dual, got {side!r}")


def model_g1(G: BipartiteGraph, side: str = "primal") -> SdpProblem:
    """primal: min lambda, [[lambda, u^T/2], [u/2, Diag(u) - C + Z]] PSD.
    dual: max <C, X> with the arrow matrix PSD and edge zeros."""
    G = _as_bipartite(G)
    N = G.order
    C = G.objective_matrix()
    edges = _flat_edges(G)
    if side == "primal":
        F = [[_e00(N)]] + [[_g1_border(N, i)] for i in range(N)]
        F += [[_unit(N + 1, i + 1, j + 1)] for i, j in edges]
        cost = [1.0] + [0.0] * (N + len(edges))
        return _yform([-_border(C)], F, cost, "g1", _meta(G, "g1", side, "min lambda: [[lambda, u/2],[u/2, Diag u - C + Z]] PSD"))
    if side == "dual":
        cons = [(_e00(N), 1.0)] + [(_border_link(N, i), 0.0) for i in range(N)]
        cons += [(0.5 * _unit(N + 1, i + 1, j + 1), 0.0) for i, j in edges]
        return _xform(_border(C), cons, "g1", _meta(G, "g1", side, "max <C,X>: arrow PSD, edge zeros"))
    raise ValueError(f"side must be primal or dual, got {side!r}")


def _g1_border(N: int, i: int) -> np.ndarray:
    """Coefficient of u_i in [[lambda, u^T/2], [u/2, Diag(u)]]."""
    E = np.zeros((N + 1, N + 1))
    E[i + 1, i + 1] = 1.0
    E[0, i + 1] = E[i + 1, 0] = 0.5
    return E


def model_h1_prime(G: BipartiteGraph, side: str = "primal") -> SdpProblem:
    """primal: max <C, X> with [[1, x^T], [x, X]] PSD, Tr X = 1, x = diag(X), edge zeros.
    dual: min lambda + eta, [[lambda, -u^T/2], [-u/2, Diag(u) + eta I + Z - C]] PSD."""
    G = _as_bipartite(G)
    N = G.order
    C = G.objective_matrix()
    edges = _flat_edges(G)
    if side == "primal":
        cons = [(_e00(N), 1.0), (_border(np.eye(N)), 1.0)]
        cons += [(_border_link(N, i), 0.0) for i in range(N)]
        cons += [(0.5 * _unit(N + 1, i + 1, j + 1), 0.0) for i, j in edges]
        return _xform(_border(C), cons, "h1_prime", _meta(G, "h1_prime", side, "max <C,X>: arrow PSD, Tr X = 1, edge zeros"))
    if side == "dual":
        F = [[_e00(N)], [_border(np.eye(N))]] + [[_border_link(N, i)] for i in range(N)]
        F += [[_unit(N + 1, i + 1, j + 1)] for i, j in edges]
        cost = [1.0, 1.0] + [0.0] * (N + len(edges))
        return _yform(
            [-_border(C)], F, cost, "h1_prime", _meta(G, "h1_prime", side, "min lambda + eta: bordered PSD with Diag(u) + eta I + Z - C")
        )
    raise ValueError(f"side must be primal or dual, got {side!r}")


# ---------------------------------------------------------------- h-hat as SDPs


def model_h_hat_sdp(G: BipartiteGraph, side: str = "dual") -> SdpProblem:
    """primal: min lambda, lambda I + t A - C PSD.
    dual: max <C, X>, Tr X = 1, <A, X> = 0, X PSD."""
    G = _as_bipartite(G)
    N = G.order
    C = G.objective_matrix()
    A = G.adjacency()
    if side == "primal":
        return _yform([-C], [[np.eye(N)], [A]], [1.0, 0.0], "h_hat_sdp", _meta(G, "h_hat_sdp", side, "min lambda: lambda I + tA - C PSD"))
    if side == "dual":
        cons = [(np.eye(N), 1.0), (A, 0.0)]
        return _xform(C, cons, "h_hat_sdp", _meta(G, "h_hat_sdp", side, "max <C,X>: Tr X = 1, <A,X> = 0"))
    raise ValueError(f"side must be primal or dual, got {side!r}")


def model_h_hat_prime(G: BipartiteGraph, side: str = "primal") -> SdpProblem:
    """primal: max <C, X> with [[1, x^T], [x, X]] PSD, Tr X = 1, e^T x = 1, <A, X> = 0.
    dual: min lambda + eta + rho with
    lambda E00 + eta (0 + I) + rho (border e/2) + t (0 + A) - (0 + C) PSD."""
    G = _as_bipartite(G)
    N = G.order
    C = _border(G.objective_matrix())
    A = _border(G.adjacency())
    mats = [(_e00(N), 1.0), (_border(np.eye(N)), 1.0), (_border_sum(N), 1.0), (A, 0.0)]
    if side == "primal":
        return _xform(C, mats, "h_hat_prime", _meta(G, "h_hat_prime", side, "max <C,X>: bordered PSD, Tr X = 1, e^T x = 1, <A,X> = 0"))
    if side == "dual":
        F = [[M] for M, _ in mats]
        return _yform([-C], F, [r for _, r in mats], "h_hat_prime", _meta(G, "h_hat_prime", side, "min lambda + eta + rho"))
    raise ValueError(f"side must be primal or dual, got {side!r}")


# ---------------------------------------------------------------- balanced bounds

BALANCED = ("las_bal1", "theta_bal", "g_bal1", "h_bal1")


def model_balanced(G: BipartiteGraph, which: str, side: str = "primal") -> SdpProblem:
    """Balanced bounds; `primal` is the max (x-form) program, `dual` the min.

    las_bal1 / g_bal1: arrow PSD, edge zeros, <ff^T, X> = 0, objective I / C.
      dual: min lambda, [[lambda, -u^T/2], [-u/2, Diag(u) - Obj + Z + s ff^T]] PSD.
    theta_bal / h_bal1: Tr X = 1, edge zeros, <ff^T, X> = 0, <Diag f, X> = 0,
      objective J / C. dual: min lambda, lambda I - Obj + Z + v Diag f + s ff^T PSD.
    """
    G = _as_bipartite(G)
    N = G.order
    f = G.sign_vector()
    ff = np.outer(f, f)
    Df = np.diag(f)
    edges = _flat_edges(G)
    if which not in BALANCED:
        raise ValueError(f"unknown balanced bound {which!r}")
    if side not in ("primal", "dual"):
        raise ValueError(f"side must be primal or dual, got {side!r}")
    meta = _meta(G, which, side, "")
    if which in ("las_bal1", "g_bal1"):
        obj = _border(np.eye(N) if which == "las_bal1" else G.objective_matrix())
        if side == "primal":
            cons = [(_e00(N), 1.0)] + [(_border_link(N, i), 0.0) for i in range(N)]
            cons += [(0.5 * _unit(N + 1, i + 1, j + 1), 0.0) for i, j in edges]
            cons.append((_border(ff), 0.0))
            meta["formulation"] = "max <Obj,X>: arrow PSD, edge zeros, <ff^T,X> = 0"
            return _xform(obj, cons, which, meta)
        F = [[_e00(N)]] + [[_border_link(N, i)] for i in range(N)]
        F += [[_unit(N + 1, i + 1, j + 1)] for i, j in edges] + [[_border(ff)]]
        meta["formulation"] = "min lambda: [[lambda,-u/2],[-u/2, Diag u - Obj + Z + s ff^T]] PSD"
        return _yform([-obj], F, [1.0] + [0.0] * (len(F) - 1), which, meta)
    obj = np.ones((N, N)) if which == "theta_bal" else G.objective_matrix()
    if side == "primal":
        cons = [(np.eye(N), 1.0)] + [(0.5 * _unit(N, i, j), 0.0) for i, j in edges]
        cons += [(ff, 0.0), (Df, 0.0)]
        meta["formulation"] = "max <Obj,X>: Tr X = 1, edge zeros, <ff^T,X> = 0, <Diag f,X> = 0"
        return _xform(obj, cons, which, meta)
    F = [[np.eye(N)]] + [[_unit(N, i, j)] for i, j in edges] + [[Df], [ff]]
    meta["formulation"] = "min lambda: lambda I - Obj + Z + v Diag f + s ff^T PSD"
    return _yform([-obj], F, [1.0] + [0.0] * (len(F) - 1), which, meta)


SYMMETRIC = ("las_bal_hat", "theta_bal_hat", "g_bal_hat", "las_bal_tilde")


def model_symmetric_balanced(G: BipartiteGraph, which: str, side: str = "primal") -> SdpProblem:
    """Balanced bounds restricted to u = mu e (or mu_1, mu_2 per part) and Z = t A.

    `primal` is the min program over the scalars, `dual` the max program.
    las_bal_hat / g_bal_hat: bordered matrix with Tr X = e^T x.
    las_bal_tilde: as las_bal_hat with the trace condition split per part.
    theta_bal_hat: unbordered, Tr X = 1.
    All use <A,X> = 0, <ff^T,X> = 0, <Diag f,X> = 0.
    """
    G = _as_bipartite(G)
    N = G.order
    f = G.sign_vector()
    ff, Df, A = np.outer(f, f), np.diag(f), G.adjacency()
    if which not in SYMMETRIC:
        raise ValueError(f"unknown symmetric bound {which!r}")
    if side not in ("primal", "dual"):
        raise ValueError(f"side must be primal or dual, got {side!r}")
    meta = _meta(G, which, side, "")
    if which == "theta_bal_hat":
        obj = np.ones((N, N))
        mats = [(np.eye(N), 1.0), (A, 0.0), (ff, 0.0), (Df, 0.0)]
    else:
        obj = _border(G.objective_matrix() if which == "g_bal_hat" else np.eye(N))
        mats = [(_e00(N), 1.0)]
        if which == "las_bal_tilde":
            for part in (f > 0, f < 0):
                chi = part.astype(float)
                mats.append((_border(np.diag(chi)) - _border_sum(N, chi), 0.0))
        else:
            mats.append((_border(np.eye(N)) - _border_sum(N), 0.0))
        mats += [(_border(A), 0.0), (_border(ff), 0.0), (_border(Df), 0.0)]
    if side == "dual":
        meta["formulation"] = "max <Obj,X> over the symmetric constraint set"
        return _xform(obj, mats, which, meta)
    meta["formulation"] = "min lambda over scalar multipliers"
    return _yform([-obj], [[M] for M, _ in mats], [r for _, r in mats], which, meta)


# ---------------------------------------------------------------- Haemers parameters


def model_phi(H: Graph) -> SdpProblem:
    """min t with -t I <= M <= t I, M symmetric, M_ij = 1 on the edges of H
    (diagonal and non-edges free)."""
    n = H.n
    M0 = H.adjacency()
    free = [(i, i) for i in range(n)] + [
        (i, j) for i in range(n) for j in range(i + 1, n) if not H.has_edge(i, j)
    ]
    F = [[np.eye(n), np.eye(n)]]
    F += [[-_unit(n, i, j), _unit(n, i, j)] for i, j in free]
    return _yform([-M0, M0], F, [1.0] + [0.0] * len(free), "phi", {"bound": "phi", "graph": H.digest(), "formulation": "min max |eig M|"})


def model_phi_prime_core(H: Graph) -> SdpProblem:
    """min lam with -lam I <= M - J/n <= lam I over symmetric M with Me = e and
    M_ij = 0 on the edges of H. M is written as I + sum_k w_k N_k with N_k a
    basis of the admissible directions (support off the edges, zero row sums)."""
    n = H.n
    free = [(i, i) for i in range(n)] + [
        (i, j) for i in range(n) for j in range(i + 1, n) if not H.has_edge(i, j)
    ]
    units = [_unit(n, i, j) for i, j in free]
    K = np.array([U.sum(axis=1) for U in units]).T  # row sums as a linear map
    basis = la.null_space(K) if units else np.zeros((0, 0))
    dirs = [sum(c * U for c, U in zip(col, units)) for col in basis.T]
    M0 = np.eye(n) - np.ones((n, n)) / n
    F = [[np.eye(n), np.eye(n)]] + [[-D, D] for D in dirs]
    return _yform([-M0, M0], F, [1.0] + [0.0] * len(dirs), "phi_prime", {"bound": "phi_prime", "graph": H.digest()})


# ---------------------------------------------------------------- completion


def complete_arrow_border(X: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Vector x with e^T x = 1 and X - x x^T PSD, for PSD X with <J, X> >= 1.

    With X = sum_i beta_i u_i u_i^T and a_i = sqrt(beta_i) e^T u_i, take
    x = sum_i beta_i (e^T u_i) / |a|^2 u_i.
    """
    X = 0.5 * (X + X.T)
    total = X.sum()
    if total < 1 - tol:
        raise ValueError(f"a completion exists iff <J,X> >= 1; here <J,X> = {total:.12g}")
    beta, U = np.linalg.eigh(X)
    if beta.min() < -tol * max(1.0, abs(beta).max()):
        raise ValueError("X is not positive semidefinite")
    beta = np.clip(beta, 0.0, None)
    eu = U.sum(axis=0)
    a2 = float(np.sum(beta * eu**2))
    return U @ (beta * eu / a2)


# ---------------------------------------------------------------- solving


def solve_model(problem: SdpProblem, config: SolverConfig | None = None) -> SolveResult:
    return solve(problem, config)


def bound_value(problem: SdpProblem, config: SolverConfig | None = None) -> float:
    res = solve(problem, config)
    if res.status != "optimal":
        raise RuntimeError(f"solver returned status {res.status} for {problem.name}")
    return res.value


def h1(G: BipartiteGraph, side: str = "primal", config: SolverConfig | None = None) -> float:
    if G.is_complete():
        return 0.0
    return bound_value(model_h1(G, side), config)


def g1(G: BipartiteGraph, side: str = "primal", config: SolverConfig | None = None) -> float:
    if G.is_complete():
        return 0.0
    return bound_value(model_g1(G, side), config)


def theta(G, form: str = "trace", config: SolverConfig | None = None) -> float:
    return bound_value(model_theta(G, form), config)


def h1_prime(G: BipartiteGraph, side: str = "primal", config: SolverConfig | None = None) -> float:
    if G.is_complete():
        return 0.0
    return bound_value(model_h1_prime(G, side), config)


def h_hat_sdp(G: BipartiteGraph, side: str = "dual", config: SolverConfig | None = None) -> float:
    if G.is_complete():
        return 0.0
    return bound_value(model_h_hat_sdp(G, side), config)


def h_hat_prime(G: BipartiteGraph, side: str = "primal", config: SolverConfig | None = None) -> float:
    if G.is_complete():
        return 0.0
    return bound_value(model_h_hat_prime(G, side), config)


def balanced(G: BipartiteGraph, which: str, side: str = "primal", config: SolverConfig | None = None) -> float:
    # On a complete bipartite graph every balanced pair is empty: the
    # trace-normalized programs are infeasible and the bordered ones are
    # forced to X = 0, an optimum on the boundary.
    if G.is_complete():
        return 0.0
    return bound_value(model_balanced(G, which, side), config)


def symmetric_balanced(G: BipartiteGraph, which: str, side: str = "primal", config: SolverConfig | None = None) -> float:
    # same boundary case as `balanced`
    if G.is_complete():
        return 0.0
    return bound_value(model_symmetric_balanced(G, which, side), config)
