"""Eigenvalue summaries and closed-form spectral bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import BipartiteGraph, Graph, extended_bipartite_double
from .sdp.engine import SolverConfig, solve
from .sdp.models import model_phi, model_phi_prime_core

TOL = 1e-8


class NotRegularError(ValueError):
    pass


@dataclass
class SpectralSummary:
    n: int
    regular: bool
    degree: int | None
    adjacency: np.ndarray  # descending
    laplacian: np.ndarray  # ascending
    singular: np.ndarray | None  # descending, bipartite input only

    @property
    def lambda2(self) -> float:
        return float(self.adjacency[1]) if self.n > 1 else 0.0

    @property
    def lambda_min(self) -> float:
        return float(self.adjacency[-1])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "regular": self.regular,
            "degree": self.degree,
            "adjacency": self.adjacency.tolist(),
            "laplacian": self.laplacian.tolist(),
            "singular": None if self.singular is None else self.singular.tolist(),
        }


def spectral_summary(G) -> SpectralSummary:
    """Spectra of a Graph or BipartiteGraph. For bipartite input the adjacency
    spectrum is assembled from the singular values of the biadjacency matrix, so
    it is exactly symmetric about 0."""
    if isinstance(G, BipartiteGraph):
        sv = np.linalg.svd(G.biadjacency(), compute_uv=False) if G.n1 and G.n2 else np.zeros(0)
        zeros = np.zeros(G.order - 2 * len(sv))
        adj = np.sort(np.concatenate([sv, -sv, zeros]))[::-1]
        lap = np.linalg.eigvalsh(G.flatten().laplacian())
        r = G.regular_degree()
        return SpectralSummary(G.order, r is not None, r, adj, lap, np.sort(sv)[::-1])
    adj = np.linalg.eigvalsh(G.adjacency())[::-1] if G.n else np.zeros(0)
    lap = np.linalg.eigvalsh(G.laplacian()) if G.n else np.zeros(0)
    r = G.regular_degree()
    return SpectralSummary(G.n, r is not None, r, adj, lap, None)


def _regular_balanced(G: BipartiteGraph) -> tuple[int, int, float]:
    """(part size n, degree r, second largest singular value)."""
    if not isinstance(G, BipartiteGraph):
        raise TypeError("a BipartiteGraph is required")
    r = G.regular_degree()
    if r is None or G.n1 != G.n2:
        raise NotRegularError("closed-form bound needs a regular bipartite graph with equal parts")
    sv = np.sort(np.linalg.svd(G.biadjacency(), compute_uv=False))[::-1]
    lam2 = float(sv[1]) if len(sv) > 1 else 0.0
    return G.n1, r, lam2


def h_hat(G: BipartiteGraph) -> float:
    """(n/2) lambda_2 / (r + lambda_2) for an r-regular graph with parts of size n."""
    n, r, lam2 = _regular_balanced(G)
    if r == 0:
        return n / 2  # edgeless: the relaxation value is lambda_max(C)
    return (n / 2) * lam2 / (r + lam2)


def vallentin_bound(G: BipartiteGraph) -> float:
    """(n/r) lambda_2, a weaker eigenvalue bound on h."""
    n, r, lam2 = _regular_balanced(G)
    if r == 0:
        return float("inf")
    return n * lam2 / r


def g_hat(G: BipartiteGraph) -> float:
    """n^2 l^2/(l+r)^2 if r <= 3l, else n^2 l/(8(r-l)), with l = lambda_2."""
    n, r, lam2 = _regular_balanced(G)
    if r == 0:
        return float(n * n)
    if r <= 3 * lam2 + TOL:
        return n * n * lam2**2 / (lam2 + r) ** 2
    return n * n * lam2 / (8 * (r - lam2))


def theta_bal_hat_closed_form(G: BipartiteGraph) -> float:
    """2 n lambda_2 / (r + lambda_2), i.e. 4 h_hat(G)."""
    return 4 * h_hat(G)


def _regular_graph(G: Graph) -> tuple[int, int, np.ndarray]:
    if isinstance(G, BipartiteGraph):
        G = G.flatten()
    r = G.regular_degree()
    if r is None:
        raise NotRegularError("bound needs a regular graph")
    return G.n, r, np.linalg.eigvalsh(G.adjacency())[::-1]


def hoffman_bound(G: Graph) -> float:
    """n (-lambda_min) / (r - lambda_min); n for an edgeless graph."""
    n, r, ev = _regular_graph(G)
    if r == 0:
        return float(n)
    lmin = ev[-1]
    return n * (-lmin) / (r - lmin)


def haemers_phi_H(G: Graph) -> float:
    """(n/2)(1 - mu_2/mu_n) from the Laplacian spectrum; any graph with an edge."""
    if isinstance(G, BipartiteGraph):
        G = G.flatten()
    if G.m == 0:
        raise ValueError("edgeless graph: the largest Laplacian eigenvalue is 0")
    mu = np.linalg.eigvalsh(G.laplacian())
    return (G.n / 2) * (1 - mu[1] / mu[-1])


def haemers_phi(G: Graph, config: SolverConfig | None = None) -> float:
    """min over symmetric M with M_ij = 1 on edges of the largest |eigenvalue|."""
    if isinstance(G, BipartiteGraph):
        G = G.flatten()
    res = solve(model_phi(G), config)
    if res.status != "optimal":
        raise RuntimeError(f"solver status {res.status}")
    return res.value


def haemers_phi_prime(G: Graph, config: SolverConfig | None = None) -> float:
    """n l/(1+l) with l the least possible spectral radius on the complement of
    the all-ones vector of a symmetric M with Me = e and zeros on the edges.

    This projector form is used in place of "second largest absolute
    eigenvalue"; the two agree whenever the optimum has l <= 1.
    """
    if isinstance(G, BipartiteGraph):
        G = G.flatten()
    res = solve(model_phi_prime_core(G), config)
    if res.status != "optimal":
        raise RuntimeError(f"solver status {res.status}")
    lam = max(res.value, 0.0)
    return G.n * lam / (1 + lam)


def compare_double_bounds(G: Graph, tol: float = TOL) -> dict:
    """Half of phi_H(G) against h_hat of the extended double, and Hoffman's bound
    against twice h_hat of the plain double, for an r-regular graph G."""
    n, r, ev = _regular_graph(G)
    lam2 = ev[1] if n > 1 else 0.0
    lmin = ev[-1]
    mu = max(lam2 + 1, -lmin - 1)
    h_hat_b0 = (n / 2) * mu / (mu + r + 1)
    half_phi = (n / 4) * (lam2 - lmin) / (r - lmin) if r > 0 else float("nan")
    lam2_b = max(abs(lam2), abs(lmin))
    two_h_hat_b = n * lam2_b / (r + lam2_b) if r + lam2_b > 0 else float(n)
    equality = abs(lam2 - r) <= tol or abs(lam2 + lmin + 2) <= tol
    return {
        "n": n,
        "r": r,
        "lambda2": float(lam2),
        "lambda_min": float(lmin),
        "half_phi_H": float(half_phi),
        "half_phi_H_laplacian": float(haemers_phi_H(G) / 2) if r > 0 else float("nan"),
        "h_hat_B0": float(h_hat_b0),
        "h_hat_B0_spectral": float(h_hat(extended_bipartite_double(G if isinstance(G, Graph) else G.flatten()))),
        "equality_predicate": bool(equality),
        "hoffman": float(hoffman_bound(G)),
        "two_h_hat_B": float(two_h_hat_b),
    }


def bipartite_complement_bounds(G: BipartiteGraph, tol: float = TOL) -> dict:
    """h_hat of the bipartite complement against half of phi_H of the full
    complement, for an r-regular bipartite G with parts of size n."""
    n, r, lam2 = _regular_balanced(G)
    if r == n:
        # complement is edgeless / two disjoint cliques
        h_comp = n / 2
    else:
        h_comp = (n / 2) * lam2 / (lam2 + n - r)
    half_phi = (n / 2) * (lam2 + r) / (2 * n - r + lam2)
    return {
        "n": n,
        "r": r,
        "lambda2": lam2,
        "h_hat_complement": float(h_comp),
        "half_phi_H_complement": float(half_phi),
        "four_h_hat_sq": float(4 * h_comp**2),
        "phi_H_sq": float((2 * half_phi) ** 2),
        "strict_predicate": bool(lam2 < r - tol and r < n),
    }
