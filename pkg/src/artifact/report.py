"""Bound reports: compute a chosen set of bounds for one graph and check that
every pair related by a known inequality is consistent."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact, spectral
from .graphs import BipartiteGraph, Graph, as_bipartite, bipartite_complement, complement
from .sdp import models
from .sdp.engine import SolverConfig

BOUNDS = (
    "alpha", "alpha_bal", "g", "h", "g_bal", "h_bal",
    "theta", "las1", "h1", "g1", "h1_prime", "h_hat", "g_hat", "h_hat_sdp",
    "las_bal1", "theta_bal", "g_bal1", "h_bal1",
    "theta_bal_hat", "las_bal_hat", "g_bal_hat",
    "hoffman", "phi", "phi_prime", "phi_H", "vallentin",
)
# bounds that make sense for a graph that is not bipartite
GENERAL_BOUNDS = ("theta", "las1", "hoffman", "phi", "phi_prime", "phi_H")


class NotApplicable(ValueError):
    pass


@dataclass
class BoundEntry:
    value: object  # int, Fraction or float
    method: str
    status: str
    runtime: float

    def to_dict(self) -> dict:
        return {"value": encode_value(self.value), "method": self.method, "status": self.status,
                "runtime": round(self.runtime, 6)}


@dataclass
class BoundReport:
    digest: str
    graph_type: str
    entries: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def values(self) -> dict:
        return {k: e.value for k, e in self.entries.items()}

    def to_dict(self) -> dict:
        return {
            "graph": self.digest,
            "type": self.graph_type,
            "bounds": {k: e.to_dict() for k, e in self.entries.items()},
            "violations": self.violations,
            "ok": self.ok,
        }


def encode_value(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    return v


def format_value(v) -> str:
    """Exact rationals as p/q, integers as is, floats to 7 significant digits."""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return f"{v:.7g}"


def _haemers_graphs(G: BipartiteGraph) -> tuple[Graph, Graph]:
    """(H, Gc): H is the flattened bipartite complement, whose bicliques are the
    biindependent pairs of G, and Gc = complement of H (G plus both part cliques)."""
    H = bipartite_complement(G).flatten()
    return H, complement(H)


def _compute(G, name: str, cfg: SolverConfig, budget: int, cache: dict):
    """Value and method label of one bound; raises NotApplicable."""
    if isinstance(G, Graph):
        if name not in GENERAL_BOUNDS:
            raise NotApplicable(f"{name} needs a bipartite graph")
        Gbar = complement(G)
        if name == "theta":
            return models.theta(G, "trace", cfg), "sdp"
        if name == "las1":
            return models.theta(G, "arrow", cfg), "sdp"
        if name == "hoffman":
            return _spectral(spectral.hoffman_bound, G), "closed-form"
        if name == "phi":
            return spectral.haemers_phi(Gbar, cfg), "sdp"
        if name == "phi_prime":
            return spectral.haemers_phi_prime(Gbar, cfg), "sdp"
        if name == "phi_H":
            if G.m == 0:
                raise NotApplicable("phi_H needs an edge")
            return spectral.haemers_phi_H(G), "closed-form"

    if name in exact.PARAMETERS:
        if "exact" not in cache:
            cache["exact"] = exact.exact_bipartite_parameters(G, budget=budget)
        return getattr(cache["exact"], name), "exact"
    if name == "theta":
        return models.theta(G, "trace", cfg), "sdp"
    if name == "las1":
        return models.theta(G, "arrow", cfg), "sdp"
    if name == "h1":
        return models.h1(G, "primal", cfg), "sdp"
    if name == "g1":
        return models.g1(G, "primal", cfg), "sdp"
    if name == "h1_prime":
        return models.h1_prime(G, "primal", cfg), "sdp"
    if name == "h_hat_sdp":
        return models.h_hat_sdp(G, "dual", cfg), "sdp"
    if name in models.BALANCED:
        return models.balanced(G, name, "primal", cfg), "sdp"
    if name in models.SYMMETRIC:
        return models.symmetric_balanced(G, name, "primal", cfg), "sdp"
    if name == "h_hat":
        return _spectral(spectral.h_hat, G), "closed-form"
    if name == "g_hat":
        return _spectral(spectral.g_hat, G), "closed-form"
    if name == "vallentin":
        return _spectral(spectral.vallentin_bound, G), "closed-form"
    if name == "hoffman":
        return _spectral(spectral.hoffman_bound, G.flatten()), "closed-form"
    H, Gc = _haemers_graphs(G)
    if name == "phi":
        return spectral.haemers_phi(H, cfg), "sdp"
    if name == "phi_prime":
        return spectral.haemers_phi_prime(H, cfg), "sdp"
    if name == "phi_H":
        if Gc.m == 0:
            raise NotApplicable("phi_H needs an edge")
        return spectral.haemers_phi_H(Gc), "closed-form"
    raise NotApplicable(f"unknown bound {name!r}")


def _spectral(fn, G):
    try:
        return float(fn(G))
    except spectral.NotRegularError as exc:
        raise NotApplicable(str(exc)) from None


def prepare(G):
    """Bipartite graphs stay as they are; bipartite general graphs get a
    2-colouring; other graphs are returned unchanged."""
    if isinstance(G, BipartiteGraph):
        return G
    try:
        return as_bipartite(G)
    except ValueError:
        return G


def compute_report(G, names=None, config: SolverConfig | None = None, budget: int = exact.DEFAULT_BUDGET,
                   tol: float = 1e-6, strict: bool = False, workers: int | None = None) -> BoundReport:
    """Compute the requested bounds (all applicable ones if `names` is None).

    With `strict`, an explicitly requested bound that does not apply raises
    NotApplicable; otherwise it is dropped. Independent bounds are computed on a
    thread pool (`workers=1` runs them in order); entries keep the request order.
    """
    cfg = config or SolverConfig()
    G = prepare(G)
    explicit = names is not None
    names = list(names) if explicit else list(BOUNDS if isinstance(G, BipartiteGraph) else GENERAL_BOUNDS)
    for name in names:
        if name not in BOUNDS:
            raise NotApplicable(f"unknown bound {name!r}")
    rep = BoundReport(G.digest(), "bipartite" if isinstance(G, BipartiteGraph) else "general")
    cache: dict = {}
    if isinstance(G, BipartiteGraph) and any(n in exact.PARAMETERS for n in names):
        # shared by all exact entries; done once up front
        cache["exact"] = exact.exact_bipartite_parameters(G, budget=budget)

    def run(name):
        t0 = time.perf_counter()
        try:
            value, method = _compute(G, name, cfg, budget, cache)
        except NotApplicable as exc:
            return exc
        return BoundEntry(value, method, "ok", time.perf_counter() - t0)

    workers = workers or min(8, os.cpu_count() or 1)
    if workers > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, names))
    else:
        results = [run(n) for n in names]
    for name, res in zip(names, results):
        if isinstance(res, NotApplicable):
            if strict and explicit:
                raise res
            continue
        rep.entries[name] = res
    rep.violations = validate(rep.values(), tol)
    return rep


def _sqrt(v) -> float:
    return math.sqrt(max(float(v), 0.0))


# (description, required names, predicate on floats with slack t)
RELATIONS = [
    ("h <= sqrt(g)/2", ("h", "g"), lambda v, t: v["h"] <= _sqrt(v["g"]) / 2 + t),
    ("sqrt(g)/2 <= h1", ("g", "h1"), lambda v, t: _sqrt(v["g"]) / 2 <= v["h1"] + t),
    ("h1 <= sqrt(g1)/2", ("h1", "g1"), lambda v, t: v["h1"] <= _sqrt(v["g1"]) / 2 + t),
    ("sqrt(g1)/2 <= alpha/4", ("g1", "alpha"), lambda v, t: _sqrt(v["g1"]) / 2 <= v["alpha"] / 4 + t),
    ("h <= h1_prime", ("h", "h1_prime"), lambda v, t: v["h"] <= v["h1_prime"] + t),
    ("h1_prime <= h1", ("h1_prime", "h1"), lambda v, t: v["h1_prime"] <= v["h1"] + t),
    ("h1 <= h_hat_sdp", ("h1", "h_hat_sdp"), lambda v, t: v["h1"] <= v["h_hat_sdp"] + t),
    ("h_hat_sdp = h_hat", ("h_hat_sdp", "h_hat"), lambda v, t: abs(v["h_hat_sdp"] - v["h_hat"]) <= t),
    ("h1 <= h_hat", ("h1", "h_hat"), lambda v, t: v["h1"] <= v["h_hat"] + t),
    ("g1 <= g_hat", ("g1", "g_hat"), lambda v, t: v["g1"] <= v["g_hat"] + t),
    ("h_hat <= sqrt(g_hat)/2", ("h_hat", "g_hat"), lambda v, t: v["h_hat"] <= _sqrt(v["g_hat"]) / 2 + t),
    ("h_hat <= vallentin", ("h_hat", "vallentin"), lambda v, t: v["h_hat"] <= v["vallentin"] + t),
    ("alpha <= theta", ("alpha", "theta"), lambda v, t: v["alpha"] <= v["theta"] + t),
    ("alpha <= las1", ("alpha", "las1"), lambda v, t: v["alpha"] <= v["las1"] + t),
    ("alpha <= hoffman", ("alpha", "hoffman"), lambda v, t: v["alpha"] <= v["hoffman"] + t),
    ("alpha_bal <= alpha", ("alpha_bal", "alpha"), lambda v, t: v["alpha_bal"] <= v["alpha"]),
    ("h_bal <= h", ("h_bal", "h"), lambda v, t: v["h_bal"] <= v["h"]),
    ("alpha_bal <= las_bal1", ("alpha_bal", "las_bal1"), lambda v, t: v["alpha_bal"] <= v["las_bal1"] + t),
    ("las_bal1/4 <= sqrt(g_bal1)/2", ("las_bal1", "g_bal1"), lambda v, t: v["las_bal1"] / 4 <= _sqrt(v["g_bal1"]) / 2 + t),
    ("sqrt(g_bal1)/2 <= h_bal1", ("g_bal1", "h_bal1"), lambda v, t: _sqrt(v["g_bal1"]) / 2 <= v["h_bal1"] + t),
    ("h_bal1 = theta_bal/4", ("h_bal1", "theta_bal"), lambda v, t: abs(v["h_bal1"] - v["theta_bal"] / 4) <= t),
    ("g_bal <= g_bal1", ("g_bal", "g_bal1"), lambda v, t: v["g_bal"] <= v["g_bal1"] + t),
    ("h_bal <= h_bal1", ("h_bal", "h_bal1"), lambda v, t: v["h_bal"] <= v["h_bal1"] + t),
    ("las_bal1 <= las1", ("las_bal1", "las1"), lambda v, t: v["las_bal1"] <= v["las1"] + t),
    ("h_bal1 <= h1", ("h_bal1", "h1"), lambda v, t: v["h_bal1"] <= v["h1"] + t),
    ("g_bal1 <= g1", ("g_bal1", "g1"), lambda v, t: v["g_bal1"] <= v["g1"] + t),
    ("theta_bal <= theta_bal_hat", ("theta_bal", "theta_bal_hat"), lambda v, t: v["theta_bal"] <= v["theta_bal_hat"] + t),
    ("las_bal1 <= las_bal_hat", ("las_bal1", "las_bal_hat"), lambda v, t: v["las_bal1"] <= v["las_bal_hat"] + t),
    ("g_bal1 <= g_bal_hat", ("g_bal1", "g_bal_hat"), lambda v, t: v["g_bal1"] <= v["g_bal_hat"] + t),
    ("sqrt(g) <= phi", ("g", "phi"), lambda v, t: _sqrt(v["g"]) <= v["phi"] + t),
    ("phi = 2 h1", ("phi", "h1"), lambda v, t: abs(v["phi"] - 2 * v["h1"]) <= 10 * t),
    ("phi <= phi_prime", ("phi", "phi_prime"), lambda v, t: v["phi"] <= v["phi_prime"] + 10 * t),
    ("phi_prime <= phi_H", ("phi_prime", "phi_H"), lambda v, t: v["phi_prime"] <= v["phi_H"] + 10 * t),
]


def validate(values: dict, tol: float = 1e-6) -> list[dict]:
    """Return one record per violated relation among the computed values."""
    v = {k: float(x) for k, x in values.items()}
    out = []
    for desc, needs, pred in RELATIONS:
        if all(n in v for n in needs) and not pred(v, tol):
            out.append({"relation": desc, "values": {n: v[n] for n in needs}})
    return out


def to_table(rep: BoundReport) -> str:
    rows = [("bound", "value", "method", "seconds")]
    rows += [(k, format_value(e.value), e.method, f"{e.runtime:.3f}") for k, e in rep.entries.items()]
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def to_csv_rows(rep: BoundReport) -> list[list]:
    rows = [["graph", "bound", "value", "method", "status", "runtime"]]
    for k, e in rep.entries.items():
        rows.append([rep.digest, k, format_value(e.value), e.method, e.status, f"{e.runtime:.6f}"])
    return rows
