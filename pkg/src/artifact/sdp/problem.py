"""Standard-form conic programs over PSD blocks and a nonnegative orthant.

Canonical primal:  min  sum_k <C_k, X_k> + c^T x
                   s.t. sum_k <A_ik, X_k> + a_i^T x = b_i,  X_k PSD, x >= 0
Canonical dual:    max  b^T y
                   s.t. S_k = C_k - sum_i y_i A_ik PSD,  s = c - sum_i y_i a_i >= 0

A model is either written with the matrix variable of the canonical primal
("x-form") or with the free multipliers y of the canonical dual ("y-form").
Free scalars of a model therefore never need splitting. The value of the
modelled program is `value_scale` times the canonical optimum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass
class SdpProblem:
    blocks: list[int]
    C: list[np.ndarray]
    A: list[np.ndarray]  # one (m, n_k, n_k) array per block
    b: np.ndarray
    lp: int = 0
    c_lp: np.ndarray | None = None
    A_lp: np.ndarray | None = None  # (m, lp)
    sense: str = "minimize"
    value_scale: float = 1.0
    name: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=float)
        m = self.b.shape[0]
        if self.c_lp is None:
            self.c_lp = np.zeros(self.lp)
        if self.A_lp is None:
            self.A_lp = np.zeros((m, self.lp))
        if len(self.C) != len(self.blocks) or len(self.A) != len(self.blocks):
            raise ValueError("one objective and one constraint stack per block required")
        for n, Ck, Ak in zip(self.blocks, self.C, self.A):
            if Ck.shape != (n, n) or Ak.shape != (m, n, n):
                raise ValueError("matrix dimensions do not match the block structure")
            if not np.allclose(Ck, Ck.T) or not np.allclose(Ak, Ak.transpose(0, 2, 1)):
                raise ValueError("all coefficient matrices must be symmetric")
        if self.A_lp.shape != (m, self.lp) or self.c_lp.shape != (self.lp,):
            raise ValueError("nonnegative block dimensions do not match")

    @property
    def m(self) -> int:
        return self.b.shape[0]

    @property
    def dimension(self) -> int:
        return sum(self.blocks) + self.lp

    def scaled(self, factor: float) -> "SdpProblem":
        """Same feasible set with the objective multiplied by `factor`."""
        return SdpProblem(
            list(self.blocks),
            [factor * Ck for Ck in self.C],
            self.A,
            self.b,
            self.lp,
            factor * self.c_lp,
            self.A_lp,
            self.sense,
            self.value_scale,
            self.name,
            dict(self.metadata),
        )

    def to_json(self) -> str:
        """Interchange format: blocks, sparse (block, row, col, value) triplets
        with row <= col, and the right-hand side. Block index len(blocks) refers
        to the nonnegative orthant (row = col = coordinate)."""

        def triplets(mats, vec):
            out = []
            for k, M in enumerate(mats):
                r, c = np.nonzero(np.triu(M))
                out.extend([k, int(i), int(j), float(M[i, j])] for i, j in zip(r, c))
            for i in np.nonzero(vec)[0]:
                out.append([len(mats), int(i), int(i), float(vec[i])])
            return out

        data = {
            "blocks": list(self.blocks),
            "lp": self.lp,
            "objective": triplets(self.C, self.c_lp),
            "constraints": [
                {"matrices": triplets([Ak[i] for Ak in self.A], self.A_lp[i]), "rhs": float(self.b[i])}
                for i in range(self.m)
            ],
            "sense": self.sense,
            "value_scale": self.value_scale,
            "name": self.name,
            "metadata": self.metadata,
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "SdpProblem":
        data = json.loads(text)
        blocks = data["blocks"]
        lp = data["lp"]
        m = len(data["constraints"])

        def fill(trips, mats, vec):
            for k, i, j, v in trips:
                if k == len(blocks):
                    vec[i] = v
                else:
                    mats[k][i, j] = v
                    mats[k][j, i] = v

        C = [np.zeros((n, n)) for n in blocks]
        c_lp = np.zeros(lp)
        fill(data["objective"], C, c_lp)
        A = [np.zeros((m, n, n)) for n in blocks]
        A_lp = np.zeros((m, lp))
        for i, con in enumerate(data["constraints"]):
            fill(con["matrices"], [Ak[i] for Ak in A], A_lp[i])
        b = np.array([con["rhs"] for con in data["constraints"]])
        return cls(blocks, C, A, b, lp, c_lp, A_lp, data["sense"], data["value_scale"], data["name"], data["metadata"])


@dataclass
class SolveResult:
    status: str  # optimal | infeasible | budget-exceeded | stalled
    primal: float  # canonical primal objective
    dual: float  # canonical dual objective
    gap: float
    X: list
    x_lp: np.ndarray
    y: np.ndarray
    S: list
    s_lp: np.ndarray
    iterations: int
    primal_residual: float
    dual_residual: float
    value_scale: float = 1.0
    certificate: dict | None = None
    face: dict | None = None  # set when the solve ran on a reduced face
    restarts: int = 0  # damped re-runs needed after a stall

    @property
    def value(self) -> float:
        """Optimal value of the modelled program (midpoint of the two bounds)."""
        return self.value_scale * 0.5 * (self.primal + self.dual)

    @property
    def min_eigenvalue(self) -> float:
        eigs = [np.linalg.eigvalsh(M).min() for M in list(self.X) + list(self.S) if M.size]
        vecs = [v.min() for v in (self.x_lp, self.s_lp) if v.size]
        return float(min(eigs + vecs)) if eigs or vecs else 0.0
