"""Dense primal-dual interior-point solver for small block SDPs.

Infeasible-start path following with Nesterov-Todd scaling and a Mehrotra
predictor-corrector step. The Schur complement is formed densely and factored
with Cholesky.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg as la

from .problem import SdpProblem, SolveResult


@dataclass(frozen=True)
class SolverConfig:
    gap_tol: float = 1e-8
    feas_tol: float = 1e-8
    max_iter: int = 200
    step_fraction: float = 0.98
    init_scale: float = 1.0
    max_dimension: int = 400
    facial_reduction: bool = True

    def __post_init__(self):
        if self.gap_tol <= 0 or self.feas_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("iteration cap must be at least 1")
        if not 0 < self.step_fraction < 1:
            raise ValueError("step fraction must lie in (0, 1)")


class DimensionCapExceeded(ValueError):
    pass


_recorders: list[list] = []
_recorders_lock = threading.Lock()


@contextmanager
def recording():
    """Collect every result returned by solve() inside the block, for audits."""
    log: list = []
    with _recorders_lock:
        _recorders.append(log)
    try:
        yield log
    finally:
        with _recorders_lock:
            _recorders.remove(log)


def _record(res: SolveResult) -> SolveResult:
    with _recorders_lock:
        for log in _recorders:
            log.append(res)
    return res


def _apply_A(p: SdpProblem, X: list, x: np.ndarray) -> np.ndarray:
    out = p.A_lp @ x
    for Ak, Xk in zip(p.A, X):
        out = out + np.tensordot(Ak, Xk, axes=([1, 2], [0, 1]))
    return out


def _apply_At(p: SdpProblem, y: np.ndarray) -> tuple[list, np.ndarray]:
    return [np.tensordot(y, Ak, axes=(0, 0)) for Ak in p.A], p.A_lp.T @ y


def _inner(X: list, S: list, x: np.ndarray, s: np.ndarray) -> float:
    return float(sum(np.vdot(a, b) for a, b in zip(X, S)) + x @ s)


def _nt_scaling(X: np.ndarray, S: np.ndarray):
    """Return (r, lam) with r^{-1} X r^{-T} = r^T S r = diag(lam)."""
    L = np.linalg.cholesky(X)
    R = np.linalg.cholesky(S)
    _, lam, Vt = np.linalg.svd(R.T @ L)
    r = L @ Vt.T / np.sqrt(lam)
    return r, lam


def _max_step(lam: np.ndarray, D: np.ndarray) -> float:
    """Largest alpha with diag(lam) + alpha D PSD (D symmetric, scaled coordinates)."""
    s = 1.0 / np.sqrt(lam)
    ev = np.linalg.eigvalsh(s[:, None] * D * s[None, :]).min()
    return np.inf if ev >= 0 else -1.0 / ev


def _max_step_lp(v: np.ndarray, dv: np.ndarray) -> float:
    neg = dv < 0
    return np.inf if not neg.any() else float(np.min(-v[neg] / dv[neg]))


def _symmetrize(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def _solve_core(p: SdpProblem, cfg: SolverConfig) -> SolveResult:
    m = p.m
    b = p.b
    nu = p.dimension
    normb = 1.0 + np.linalg.norm(b)
    normC = 1.0 + np.sqrt(sum(np.sum(Ck**2) for Ck in p.C) + np.sum(p.c_lp**2))
    if nu == 0:
        # nothing left to optimize: the constraints read 0 = b
        feasible = np.linalg.norm(b) <= cfg.feas_tol * normb
        return SolveResult(
            status="optimal" if feasible else "infeasible",
            primal=0.0, dual=0.0, gap=0.0, X=[], x_lp=np.zeros(0), y=np.zeros(m),
            S=[], s_lp=np.zeros(0), iterations=0,
            primal_residual=float(np.linalg.norm(b) / normb), dual_residual=0.0,
            value_scale=p.value_scale,
            certificate=None if feasible else {"side": "primal", "y": (b / float(b @ b)).tolist()},
        )

    # starting point
    X, S = [], []
    for n, Ck, Ak in zip(p.blocks, p.C, p.A):
        normA = np.sqrt(np.sum(Ak**2, axis=(1, 2))) if m else np.zeros(0)
        xi = max(10.0, np.sqrt(n), n * max(((1 + np.abs(b)) / (1 + normA)).max(initial=0.0), 0.0))
        eta = max(10.0, np.sqrt(n), normA.max(initial=0.0), np.linalg.norm(Ck))
        X.append(cfg.init_scale * xi * np.eye(n))
        S.append(cfg.init_scale * eta * np.eye(n))
    x = cfg.init_scale * 10.0 * np.ones(p.lp)
    s = cfg.init_scale * 10.0 * np.ones(p.lp)
    y = np.zeros(m)

    status = "budget-exceeded"
    certificate = None
    it = 0
    best = None
    for it in range(1, cfg.max_iter + 1):
        rp = b - _apply_A(p, X, x)
        AtY, aty = _apply_At(p, y)
        Rd = [Ck - Sk - Tk for Ck, Sk, Tk in zip(p.C, S, AtY)]
        rd = p.c_lp - s - aty
        pobj = _inner(p.C, X, p.c_lp, x)
        dobj = float(b @ y)
        pinf = np.linalg.norm(rp) / normb
        dinf = np.sqrt(sum(np.sum(R**2) for R in Rd) + np.sum(rd**2)) / normC
        gap = abs(pobj - dobj)
        mu = _inner(X, S, x, s) / nu
        score = max(pinf, dinf, gap / (1 + abs(pobj)))
        if best is None or score < best[0]:
            best = (score, [Xk.copy() for Xk in X], x.copy(), y.copy(), [Sk.copy() for Sk in S], s.copy(), it)
        if pinf <= cfg.feas_tol and dinf <= cfg.feas_tol and gap <= cfg.gap_tol * (1 + abs(pobj)):
            status = "optimal"
            break
        # infeasibility certificates along diverging iterates
        if dobj > 0:
            ray = np.sqrt(sum(np.sum((Ck - Rk) ** 2) for Ck, Rk in zip(p.C, Rd)) + np.sum((p.c_lp - rd) ** 2))
            if ray / dobj <= cfg.feas_tol and dobj > 1e6:
                status, certificate = "infeasible", {"side": "primal", "y": (y / dobj).tolist()}
                break
        if pobj < 0:
            ray = np.linalg.norm(b - rp)
            if ray / -pobj <= cfg.feas_tol and -pobj > 1e6:
                status, certificate = "infeasible", {"side": "dual", "scale": -pobj}
                break

        try:
            scal = [_nt_scaling(Xk, Sk) for Xk, Sk in zip(X, S)]
        except np.linalg.LinAlgError:
            status = "stalled"
            break
        W = [r @ r.T for r, _ in scal]
        w_lp = x / s if p.lp else np.zeros(0)

        M = (p.A_lp * w_lp) @ p.A_lp.T
        for Ak, Wk in zip(p.A, W):
            T = Wk @ Ak @ Wk
            M += Ak.reshape(m, -1) @ T.reshape(m, -1).T
        M = _symmetrize(M)
        try:
            fac = la.cho_factor(M)
            msolve = lambda rhs: la.cho_solve(fac, rhs)  # noqa: E731
        except la.LinAlgError:
            reg = M + 1e-13 * max(np.trace(M), 1.0) * np.eye(m)
            msolve = lambda rhs: np.linalg.lstsq(reg, rhs, rcond=None)[0]  # noqa: E731

        def direction(D_list, d_lp):
            """Solve with complementarity right-hand side given in scaled form."""
            Rc = [r @ D @ r.T for (r, _), D in zip(scal, D_list)]
            rc = d_lp
            WRdW = [Wk @ Rk @ Wk for Wk, Rk in zip(W, Rd)]
            rhs = rp - _apply_A(p, Rc, rc) + _apply_A(p, WRdW, w_lp * rd)
            dy = msolve(rhs)
            # one step of iterative refinement
            resid = rhs - M @ dy
            dy = dy + msolve(resid)
            AtD, atd = _apply_At(p, dy)
            dS = [_symmetrize(Rk - Tk) for Rk, Tk in zip(Rd, AtD)]
            ds = rd - atd
            dX = [_symmetrize(Rk - Wk @ Sk @ Wk) for Rk, Wk, Sk in zip(Rc, W, dS)]
            dx = rc - w_lp * ds
            return dX, dx, dy, dS, ds

        def steps(dX, dx, dS, ds):
            ap, ad = np.inf, np.inf
            dXs, dSs = [], []
            for (r, lam), dXk, dSk in zip(scal, dX, dS):
                rinv = np.linalg.inv(r)
                Dx = _symmetrize(rinv @ dXk @ rinv.T)
                Ds = _symmetrize(r.T @ dSk @ r)
                dXs.append(Dx)
                dSs.append(Ds)
                ap = min(ap, _max_step(lam, Dx))
                ad = min(ad, _max_step(lam, Ds))
            if p.lp:
                ap = min(ap, _max_step_lp(x, dx))
                ad = min(ad, _max_step_lp(s, ds))
            return ap, ad, dXs, dSs

        lams = [lam for _, lam in scal]

        # predictor
        D_aff = [-np.diag(lam) for lam in lams]
        dX, dx, dy, dS, ds = direction(D_aff, -x)
        ap, ad, dXs, dSs = steps(dX, dx, dS, ds)
        ap, ad = min(1.0, ap), min(1.0, ad)
        mu_aff = (
            _inner([Xk + ap * d for Xk, d in zip(X, dX)], [Sk + ad * d for Sk, d in zip(S, dS)], x + ap * dx, s + ad * ds)
            / nu
        )
        sigma = min(1.0, max(0.0, mu_aff / mu)) ** 3 if mu > 0 else 0.0

        # corrector
        D_cor = []
        for lam, Dx, Ds in zip(lams, dXs, dSs):
            rhs = 2 * (sigma * mu * np.eye(len(lam)) - np.diag(lam**2)) - (Dx @ Ds + Ds @ Dx)
            D_cor.append(rhs / (lam[:, None] + lam[None, :]))
        if p.lp:
            # x s = sigma mu - dx_a ds_a, linearized: s dx + x ds = rhs
            d_lp = (sigma * mu - x * s - dx * ds) / s
        else:
            d_lp = np.zeros(0)
        dX, dx, dy, dS, ds = direction(D_cor, d_lp)
        ap, ad, _, _ = steps(dX, dx, dS, ds)
        gamma = cfg.step_fraction
        ap = min(1.0, gamma * ap)
        ad = min(1.0, gamma * ad)
        if ap < 1e-12 and ad < 1e-12:
            status = "stalled"
            break

        X = [_symmetrize(Xk + ap * d) for Xk, d in zip(X, dX)]
        x = x + ap * dx
        y = y + ad * dy
        S = [_symmetrize(Sk + ad * d) for Sk, d in zip(S, dS)]
        s = s + ad * ds

    if status in ("budget-exceeded", "stalled") and best is not None:
        _, X, x, y, S, s, _ = best
    rp = b - _apply_A(p, X, x)
    AtY, aty = _apply_At(p, y)
    Rd = [Ck - Sk - Tk for Ck, Sk, Tk in zip(p.C, S, AtY)]
    rd = p.c_lp - s - aty
    pobj = _inner(p.C, X, p.c_lp, x)
    dobj = float(b @ y)
    return SolveResult(
        status=status,
        primal=pobj,
        dual=dobj,
        gap=abs(pobj - dobj),
        X=X,
        x_lp=x,
        y=y,
        S=S,
        s_lp=s,
        iterations=it,
        primal_residual=float(np.linalg.norm(rp) / normb),
        dual_residual=float(np.sqrt(sum(np.sum(R**2) for R in Rd) + np.sum(rd**2)) / normC),
        value_scale=p.value_scale,
        certificate=certificate,
    )


def _semidefinite_sign(mats: list, tol: float = 1e-12) -> int:
    """+1 if every matrix is PSD, -1 if every one is NSD, 0 otherwise (or all zero)."""
    signs = set()
    for M in mats:
        scale = np.abs(M).max()
        if scale == 0:
            continue
        ev = np.linalg.eigvalsh(M)
        if ev.min() >= -tol * scale:
            signs.add(1)
        elif ev.max() <= tol * scale:
            signs.add(-1)
        else:
            return 0
    return signs.pop() if len(signs) == 1 else 0


def facial_reduction(p: SdpProblem):
    """Restrict PSD blocks to the face cut out by constraints <A_i, X> = 0 with
    semidefinite A_i (then X A_i = 0 for every feasible X).

    Returns the reduced problem, the per-block bases V_k (X_k = V_k X'_k V_k^T),
    the indices of the kept constraints and, for each dropped constraint, its
    index, sign and the block bases of the face it was applied to.
    """
    bases = [np.eye(n) for n in p.blocks]
    keep = list(range(p.m))
    dropped = []
    changed = True
    while changed:
        changed = False
        for i in list(keep):
            if p.b[i] != 0 or np.any(p.A_lp[i] != 0):
                continue
            mats = [V.T @ Ak[i] @ V for V, Ak in zip(bases, p.A)]
            # entries at roundoff level of the original row count as zero
            scale = max((np.abs(Ak[i]).max(initial=0.0) for Ak in p.A), default=0.0)
            mats = [np.where(np.abs(M) <= 1e-12 * scale, 0.0, M) for M in mats]
            sign = _semidefinite_sign(mats)
            if sign == 0:
                continue
            before = list(bases)
            for k, M in enumerate(mats):
                if not np.any(M):
                    continue
                ev, U = np.linalg.eigh(sign * M)
                null = U[:, ev <= 1e-10 * ev.max()]
                bases[k] = bases[k] @ null
            keep.remove(i)
            dropped.append((i, sign, before))
            changed = True
    if not dropped:
        return None
    blocks = [V.shape[1] for V in bases]
    C = [V.T @ Ck @ V for V, Ck in zip(bases, p.C)]
    A = [np.einsum("ab,mbc,cd->mad", V.T, Ak[keep], V) for V, Ak in zip(bases, p.A)]
    red = SdpProblem(
        blocks, C, A, p.b[keep], p.lp, p.c_lp, p.A_lp[keep], p.sense, p.value_scale, p.name, dict(p.metadata)
    )
    return red, bases, keep, dropped


def solve(problem: SdpProblem, config: SolverConfig | None = None) -> SolveResult:
    """Solve the canonical primal/dual pair; see problem.py for the form."""
    cfg = config or SolverConfig()
    p = problem
    if p.dimension > cfg.max_dimension:
        raise DimensionCapExceeded(f"total cone dimension {p.dimension} exceeds cap {cfg.max_dimension}")
    reduction = facial_reduction(p) if cfg.facial_reduction else None
    if reduction is None:
        return _record(_solve_with_restarts(p, cfg))
    red, bases, keep, dropped = reduction
    if any(n == 0 for n in red.blocks):
        # a block collapsed to zero: drop it from the reduced problem
        live = [k for k, n in enumerate(red.blocks) if n > 0]
        red = SdpProblem(
            [red.blocks[k] for k in live], [red.C[k] for k in live], [red.A[k] for k in live],
            red.b, red.lp, red.c_lp, red.A_lp, red.sense, red.value_scale, red.name, red.metadata,
        )
    else:
        live = list(range(len(bases)))
    res = _solve_with_restarts(red, cfg)
    return _record(_lift(p, res, bases, live, keep, dropped))


def _restart_configs(cfg: SolverConfig) -> list[SolverConfig]:
    """The requested settings, then more conservative steps and a smaller
    starting point. Near-degenerate problems can lose centrality late and
    block the primal step; a damped run usually gets through."""
    return [
        cfg,
        replace(cfg, step_fraction=min(cfg.step_fraction, 0.9)),
        replace(cfg, step_fraction=min(cfg.step_fraction, 0.8), init_scale=0.1 * cfg.init_scale),
    ]


def _solve_with_restarts(p: SdpProblem, cfg: SolverConfig) -> SolveResult:
    res = None
    for k, c in enumerate(_restart_configs(cfg)):
        res = _solve_core(p, c)
        res.restarts = k
        if res.status in ("optimal", "infeasible"):
            break
    return res


def _lift(p: SdpProblem, res: SolveResult, bases: list, live: list, keep: list, dropped: list) -> SolveResult:
    """Map a reduced solution back to the original blocks.

    X is lifted exactly. The dual slack is reported on the face (V^T S V for the
    face basis V), where it is PSD: the multipliers of the dropped constraints
    are unbounded along an optimal dual sequence, so they are recorded as 0 and
    listed in `face`.
    """
    X = [np.zeros((n, n)) for n in p.blocks]
    S = [np.zeros((0, 0)) for _ in p.blocks]
    for pos, k in enumerate(live):
        X[k] = bases[k] @ res.X[pos] @ bases[k].T
        S[k] = res.S[pos]
    y = np.zeros(p.m)
    y[keep] = res.y
    face = {"bases": bases, "dropped": [i for i, _, _ in dropped]}
    rp = p.b - _apply_A(p, X, res.x_lp)
    normb = 1.0 + np.linalg.norm(p.b)
    pobj = _inner(p.C, X, p.c_lp, res.x_lp)
    dobj = float(p.b @ y)
    return SolveResult(
        status=res.status,
        primal=pobj,
        dual=dobj,
        gap=abs(pobj - dobj),
        X=X,
        x_lp=res.x_lp,
        y=y,
        S=S,
        s_lp=res.s_lp,
        iterations=res.iterations,
        primal_residual=float(np.linalg.norm(rp) / normb),
        dual_residual=res.dual_residual,
        value_scale=p.value_scale,
        certificate=res.certificate,
        face=face,
        restarts=res.restarts,
    )
