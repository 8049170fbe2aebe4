"""Semidefinite programs behind the extremal-state constructions.

Three problems, one solver family (operator splitting over products of PSD
cones, built entirely from in-package primitives):

* ``solve_construction_sdp``   maximize d subject to rho^G <= I - d P over
  density matrices rho (G = partial transpose);
* ``optimize_over_ppt``        optimize a Hermitian objective over the PPT
  states {sigma >= 0, sigma^G >= 0, Tr sigma = 1};
* ``decompose_dual_cone``      split X into X1 + X2^G with X1, X2 >= 0,
  which succeeds exactly when X is in the dual cone of the PPT states.

Solver internals are never trusted: every reported objective is certified
post hoc from rounded iterates.  Lower bounds come from exactly feasible
points (eigenvalue rounding), upper bounds from exactly verifiable dual
certificates, and iteration stops once the certified gap closes.  The PPT
optimizer finishes with an active-set polish: the kernels of the primal
optimum pin the faces carrying the dual pair, where the remaining problem
is linear least squares and solves to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bipartite import BipartiteDims, DensityMatrix
from .errors import DegenerateSubspace, NoConvergence, NotHermitian, NotInDualCone
from .linalg import frob_inner, hermitize, is_hermitian
from .subspace import Projector

#: Objective clamp when the projector is zero and d is unbounded.
D_MAX = 1.0e6

#: Default splitting-iteration budget per solve.
DEFAULT_MAX_ITER = 200_000

_OVER_RELAX = 1.7


def _pt(M: np.ndarray, m: int, n: int) -> np.ndarray:
    """Partial transpose on the second factor (view-based, solver internal)."""
    d = m * n
    return M.reshape(m, n, m, n).transpose(0, 3, 2, 1).reshape(d, d)


def _proj_psd(M: np.ndarray) -> np.ndarray:
    """Fast PSD projection for the solver hot loop (input Hermitian)."""
    w, V = np.linalg.eigh(M)
    if w[0] >= 0.0:
        return M
    w = np.maximum(w, 0.0)
    return hermitize((V * w) @ V.conj().T)


def _tr(M: np.ndarray) -> float:
    return float(np.trace(M).real)


def _lmin(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(hermitize(M))[0])


def _lmax(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(hermitize(M))[-1])


def _round_to_state(M: np.ndarray, dims: BipartiteDims) -> np.ndarray:
    """Nearest-PSD rounding followed by trace normalization."""
    w, V = np.linalg.eigh(hermitize(M))
    w = np.maximum(w, 0.0)
    tr = float(w.sum())
    if tr <= 1e-300:
        return np.eye(dims.total, dtype=complex) / dims.total
    return hermitize((V * (w / tr)) @ V.conj().T)


@dataclass(frozen=True)
class SdpSolution:
    """Certified output of the construction program."""

    d: float
    rho: DensityMatrix
    residuals: dict[str, float]
    iterations: int
    converged: bool
    lower_bound: float
    upper_bound: float
    clamped: bool = False


@dataclass(frozen=True)
class PptOptimum:
    """Certified optimum of a linear objective over the PPT states.

    ``dual_basis`` holds the PSD pair (Y1, Y2) realizing the dual bound
    lambda_max(W + Y1 + Y2^G) = upper_bound for the maximization sense.
    """

    value: float
    sigma: DensityMatrix
    lower_bound: float
    upper_bound: float
    iterations: int
    converged: bool
    dual_basis: tuple[np.ndarray, np.ndarray] | None = field(repr=False, default=None)


@dataclass(frozen=True)
class ConeDecomposition:
    """Dual-cone route output: c, X = I - (1/c) P, the split, and the state."""

    c: float
    X: np.ndarray = field(repr=False)
    X1: np.ndarray = field(repr=False)
    X2: np.ndarray = field(repr=False)
    rho: DensityMatrix = field(repr=False)
    residual: float
    iterations: int


def _projector_matrix(P) -> np.ndarray:
    return P.P if isinstance(P, Projector) else np.asarray(P, dtype=complex)


# --------------------------------------------------------------------------
# construction SDP:  maximize d  s.t.  rho^G + d P <= I,  rho a state
# --------------------------------------------------------------------------

def solve_construction_sdp(
    dims: BipartiteDims,
    P,
    tol_feas: float = 1e-7,
    tol_gap: float = 1e-4,
    max_iter: int = DEFAULT_MAX_ITER,
    cert_every: int = 50,
) -> SdpSolution:
    """Maximize d such that rho^G <= I - d P for some density matrix rho.

    Splitting iteration: the affine block solves the proximal step over
    {(rho, S, d) : S = I - d P - rho^G, Tr rho = 1} in closed form, the cone
    block projects (rho, S) onto PSD x PSD.  Certification: the returned d
    is attained by the returned (exactly feasible) rho, and a rounded dual
    certificate Y >= 0 with <Y, P> = 1 bounds the optimum from above by
    Tr Y - lambda_min(Y^G); iteration stops once the certified gap is at
    most ``tol_gap``.

    Raises NoConvergence (with the best iterate attached as ``partial``)
    when the budget runs out first.
    """
    m, n = dims.m, dims.n
    d_tot = dims.total
    Pmat = hermitize(_projector_matrix(P))
    k = _tr(Pmat)
    eye = np.eye(d_tot, dtype=complex)

    if k < 0.5:  # zero projector: every state is feasible for every d
        rho = DensityMatrix(dims, eye / d_tot)
        res = _construction_residuals(rho.mat, 0.0, Pmat, dims)
        return SdpSolution(
            d=D_MAX, rho=rho, residuals=res, iterations=0, converged=True,
            lower_bound=D_MAX, upper_bound=float("inf"), clamped=True,
        )

    Pt = _pt(Pmat, m, n)
    beta = 1.0
    z_r = eye / d_tot
    z_S = eye.copy()
    u_r = np.zeros_like(eye)
    u_S = np.zeros_like(eye)

    lb = -np.inf
    ub = np.inf
    best_rho = _round_to_state(z_r, dims)
    it = 0

    for it in range(1, max_iter + 1):
        a = z_r - u_r
        b = z_S - u_S
        G = eye - b
        PG = frob_inner(Pmat, G)
        q = frob_inner(Pt, a) + PG
        s = _tr(a) + _tr(G)
        r_a = PG + 1.0 / beta - q / 2.0
        r_b = 1.0 - s / 2.0
        nu = -2.0 * (r_a + r_b) / (k + d_tot)
        d_x = 2.0 * r_a / k + nu
        rho_x = (a + _pt(G, m, n) - d_x * Pt) / 2.0 - (nu / 2.0) * eye
        S_x = eye - d_x * Pmat - _pt(rho_x, m, n)

        rho_h = _OVER_RELAX * rho_x + (1.0 - _OVER_RELAX) * z_r
        S_h = _OVER_RELAX * S_x + (1.0 - _OVER_RELAX) * z_S
        z_r_old, z_S_old = z_r, z_S
        z_r = _proj_psd(hermitize(rho_h + u_r))
        u_r = u_r + rho_h - z_r
        z_S = _proj_psd(hermitize(S_h + u_S))
        u_S = u_S + S_h - z_S

        if it % 100 == 0:
            r_pri = np.linalg.norm(rho_x - z_r) + np.linalg.norm(S_x - z_S)
            r_dua = beta * (np.linalg.norm(z_r - z_r_old) + np.linalg.norm(z_S - z_S_old))
            if r_pri > 10.0 * r_dua:
                beta *= 2.0
                u_r, u_S = u_r / 2.0, u_S / 2.0
            elif r_dua > 10.0 * r_pri:
                beta /= 2.0
                u_r, u_S = u_r * 2.0, u_S * 2.0

        if it % cert_every == 0 or it == max_iter:
            rho_hat = _round_to_state(z_r, dims)
            d_cand = _max_feasible_shift(rho_hat, Pmat, dims)
            if d_cand > lb:
                lb, best_rho = d_cand, rho_hat
            Y = _proj_psd(hermitize(-beta * u_S))
            overlap = frob_inner(Y, Pmat)
            if overlap > 1e-9:
                Y = Y / overlap
                ub = min(ub, _tr(Y) - _lmin(_pt(Y, m, n)))
            if ub - lb <= tol_gap:
                break

    residuals = _construction_residuals(best_rho, lb, Pmat, dims)
    converged = bool(ub - lb <= tol_gap and residuals["pt_constraint_gap"] <= tol_feas)
    solution = SdpSolution(
        d=float(lb), rho=DensityMatrix(dims, best_rho), residuals=residuals,
        iterations=it, converged=converged,
        lower_bound=float(lb), upper_bound=float(ub),
    )
    if not converged:
        raise NoConvergence(
            f"construction SDP gap {ub - lb:.3e} above {tol_gap:.1e} "
            f"after {it} iterations", partial=solution,
        )
    return solution


def _construction_residuals(rho, d, Pmat, dims) -> dict[str, float]:
    """Post-hoc feasibility of a (rho, d) pair, recomputed from scratch."""
    m, n = dims.m, dims.n
    eye = np.eye(dims.total)
    return {
        "psd_gap": max(0.0, -_lmin(rho)),
        "pt_constraint_gap": max(0.0, _lmax(_pt(rho, m, n) + d * Pmat - eye)),
        "trace_gap": abs(_tr(rho) - 1.0),
    }


def _max_feasible_shift(rho, Pmat, dims) -> float:
    """Largest d with d P <= I - rho^G, for a fixed state rho.

    Computed through the congruence M^(-1/2) P M^(-1/2) with M = I - rho^G,
    then walked back until the margin is verifiably nonnegative, so the
    result is a true lower bound for the construction SDP.
    """
    m, n = dims.m, dims.n
    M = hermitize(np.eye(dims.total) - _pt(rho, m, n))
    w, V = np.linalg.eigh(M)
    w = np.maximum(w, 1e-14)
    M_isqrt = (V / np.sqrt(w)) @ V.conj().T
    top = _lmax(M_isqrt @ Pmat @ M_isqrt)
    if top <= 1e-12:
        return D_MAX
    d = 1.0 / top
    for _ in range(200):
        F = hermitize(M - d * Pmat)
        wf, Vf = np.linalg.eigh(F)
        if wf[0] >= -1e-13:
            return float(d)
        v = Vf[:, 0]
        slope = max(float((v.conj() @ (Pmat @ v)).real), 1e-2)
        d -= (-wf[0]) / slope * 1.25 + 1e-16
    return 0.0  # give up; d = 0 is always feasible


# --------------------------------------------------------------------------
# linear optimization over the PPT states
# --------------------------------------------------------------------------

def optimize_over_ppt(
    dims: BipartiteDims,
    W: np.ndarray,
    sense: str = "max",
    tol: float = 1e-5,
    max_iter: int = DEFAULT_MAX_ITER,
    cert_every: int = 100,
) -> PptOptimum:
    """Optimize <W, sigma> over {sigma >= 0, sigma^G >= 0, Tr sigma = 1}.

    The certified value is attained by the returned (exactly feasible)
    sigma; dual certificates Y1, Y2 >= 0 bound the maximum from above by
    lambda_max(W + Y1 + Y2^G).  ``upper_bound``/``lower_bound`` bracket the
    true optimum within ``tol`` on success.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    W = np.asarray(W, dtype=complex)
    if not is_hermitian(W):
        raise NotHermitian("objective matrix must be Hermitian")
    if sense == "min":
        res = _maximize_over_ppt(dims, -hermitize(W), tol, max_iter, cert_every)
        flipped = PptOptimum(
            value=-res.value, sigma=res.sigma,
            lower_bound=-res.upper_bound, upper_bound=-res.lower_bound,
            iterations=res.iterations, converged=res.converged,
            dual_basis=res.dual_basis,  # certifies the negated problem
        )
        if not res.converged:
            raise NoConvergence("PPT optimization did not converge", partial=flipped)
        return flipped
    res = _maximize_over_ppt(dims, hermitize(W), tol, max_iter, cert_every)
    if not res.converged:
        raise NoConvergence("PPT optimization did not converge", partial=res)
    return res


def _maximize_over_ppt(dims, W, tol, max_iter, cert_every) -> PptOptimum:
    m, n = dims.m, dims.n
    d_tot = dims.total
    eye = np.eye(d_tot, dtype=complex)
    beta = 1.0
    z1 = eye / d_tot
    z2 = eye / d_tot
    u1 = np.zeros_like(eye)
    u2 = np.zeros_like(eye)
    trW = _tr(W)

    lb = -np.inf
    ub = np.inf
    best_sigma = eye / d_tot
    best_dual = (np.zeros_like(eye), np.zeros_like(eye))
    last_polish = -10**9
    it = 0

    for it in range(1, max_iter + 1):
        A = z1 - u1
        B = z2 - u2
        nu = (_tr(A) + _tr(B) + trW / beta - 2.0) / d_tot
        sigma = (A + _pt(B, m, n) + W / beta - nu * eye) / 2.0
        sigma_pt = _pt(sigma, m, n)

        s1 = _OVER_RELAX * sigma + (1.0 - _OVER_RELAX) * z1
        s2 = _OVER_RELAX * sigma_pt + (1.0 - _OVER_RELAX) * z2
        z1_old, z2_old = z1, z2
        z1 = _proj_psd(hermitize(s1 + u1))
        u1 = u1 + s1 - z1
        z2 = _proj_psd(hermitize(s2 + u2))
        u2 = u2 + s2 - z2

        if it % 100 == 0:
            r_pri = np.linalg.norm(sigma - z1) + np.linalg.norm(sigma_pt - z2)
            r_dua = beta * (np.linalg.norm(z1 - z1_old) + np.linalg.norm(z2 - z2_old))
            if r_pri > 10.0 * r_dua:
                beta *= 2.0
                u1, u2 = u1 / 2.0, u2 / 2.0
            elif r_dua > 10.0 * r_pri:
                beta /= 2.0
                u1, u2 = u1 * 2.0, u2 * 2.0

        if it % cert_every == 0 or it == max_iter:
            sigma_hat = _round_to_ppt_state(z1, dims)
            lb_cand = frob_inner(W, sigma_hat)
            if lb_cand > lb:
                lb, best_sigma = lb_cand, sigma_hat
            Y1 = _proj_psd(hermitize(-beta * u1))
            Y2 = _proj_psd(hermitize(-beta * u2))
            ub_cand = _lmax(W + Y1 + _pt(Y2, m, n))
            if ub_cand < ub:
                ub, best_dual = ub_cand, (Y1, Y2)
            # active-set endgame: pin the dual pair to the faces selected by
            # the primal kernels and finish by linear least squares
            if ub - lb > tol and ub - lb < 1e-3 and it - last_polish >= 500:
                last_polish = it
                for Y1p, Y2p in _dual_face_candidates(W, sigma_hat, dims):
                    ub_cand = _lmax(W + Y1p + _pt(Y2p, m, n))
                    if ub_cand < ub:
                        ub, best_dual = ub_cand, (Y1p, Y2p)
            if ub - lb <= tol:
                break

    return PptOptimum(
        value=float(lb), sigma=DensityMatrix(dims, best_sigma),
        lower_bound=float(lb), upper_bound=float(ub),
        iterations=it, converged=bool(ub - lb <= tol),
        dual_basis=best_dual,
    )


def _round_to_ppt_state(M: np.ndarray, dims: BipartiteDims, sweeps: int = 10) -> np.ndarray:
    """Round a Hermitian iterate to an exactly PPT density matrix.

    Alternating PSD projections in both pictures, then a contraction toward
    the maximally mixed state large enough to swallow any residual
    negativity in either picture.
    """
    m, n = dims.m, dims.n
    d_tot = dims.total
    eye_over_d = np.eye(d_tot, dtype=complex) / d_tot
    sig = hermitize(M)
    for _ in range(sweeps):
        sig = _proj_psd(sig)
        sig = _pt(_proj_psd(_pt(sig, m, n)), m, n)
    tr = _tr(sig)
    sig = sig / tr if tr > 1e-300 else eye_over_d.copy()
    for _ in range(5):
        eps = max(0.0, -_lmin(sig), -_lmin(_pt(sig, m, n)))
        if eps <= 1e-15:
            break
        theta = min(1.0, 1.1 * eps * d_tot / (1.0 + eps * d_tot) + 1e-16)
        sig = hermitize((1.0 - theta) * sig + theta * eye_over_d)
    return sig


def _hermitian_basis(r: int) -> list[np.ndarray]:
    """Orthonormal real basis of r x r Hermitian matrices (r^2 elements)."""
    basis = []
    for i in range(r):
        E = np.zeros((r, r), dtype=complex)
        E[i, i] = 1.0
        basis.append(E)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for i in range(r):
        for j in range(i + 1, r):
            E = np.zeros((r, r), dtype=complex)
            E[i, j] = E[j, i] = inv_sqrt2
            basis.append(E)
            E = np.zeros((r, r), dtype=complex)
            E[i, j] = 1j * inv_sqrt2
            E[j, i] = -1j * inv_sqrt2
            basis.append(E)
    return basis


def _kernel_cuts(w: np.ndarray) -> list[int]:
    """Candidate kernel sizes from gaps in an ascending eigenvalue list."""
    cuts = []
    for i in range(len(w) - 1):
        lo = max(abs(float(w[i])), 1e-300)
        if w[i] <= 1e-3 and float(w[i + 1]) / lo > 1e3:
            cuts.append(i + 1)
    cuts.append(0)  # empty kernel is always a candidate
    return cuts[:4]


def _face_columns(Q1, Q2, dims):
    """Real design columns for Q1 A Q1^dag and (Q2 B Q2^dag)^G, A, B Hermitian."""
    m, n = dims.m, dims.n
    cols = []
    for which, Q in ((0, Q1), (1, Q2)):
        for E in _hermitian_basis(Q.shape[1]):
            Mb = Q @ E @ Q.conj().T
            if which == 1:
                Mb = _pt(Mb, m, n)
            cols.append(np.concatenate([Mb.real.ravel(), Mb.imag.ravel()]))
    return cols


def _reconstruct_pair(theta, Q1, Q2, dims):
    """Clamped (exactly PSD) pair from least-squares face coefficients."""
    d_tot = dims.total
    r1sq = Q1.shape[1] ** 2
    basis1 = _hermitian_basis(Q1.shape[1])
    basis2 = _hermitian_basis(Q2.shape[1])
    Y1 = np.zeros((d_tot, d_tot), dtype=complex)
    Y2 = np.zeros((d_tot, d_tot), dtype=complex)
    if Q1.shape[1]:
        A = sum(t * E for t, E in zip(theta[:r1sq], basis1))
        Y1 = Q1 @ _proj_psd(hermitize(np.atleast_2d(A))) @ Q1.conj().T
    if Q2.shape[1]:
        B = sum(t * E for t, E in zip(theta[r1sq:], basis2))
        Y2 = Q2 @ _proj_psd(hermitize(np.atleast_2d(B))) @ Q2.conj().T
    return hermitize(Y1), hermitize(Y2)


def _dual_face_candidates(W, sigma_hat, dims):
    """Dual pairs from face-restricted least squares.

    At optimality W + Y1 + Y2^G = c I with range(Y1) in ker(sigma*) and
    range(Y2) in ker(sigma*^G); given those kernels the dual pair is the
    solution of a linear least-squares problem.  Tries the kernel splits
    suggested by spectral gaps of the primal iterate and yields clamped
    (hence exactly PSD) candidate pairs.
    """
    m, n = dims.m, dims.n
    d_tot = dims.total
    w1, V1 = np.linalg.eigh(hermitize(sigma_hat))
    w2, V2 = np.linalg.eigh(hermitize(_pt(sigma_hat, m, n)))
    eye = np.eye(d_tot, dtype=complex)
    eye_col = np.concatenate([eye.real.ravel(), eye.imag.ravel()])
    target = np.concatenate([W.real.ravel(), W.imag.ravel()])

    out = []
    for cut1 in _kernel_cuts(w1):
        for cut2 in _kernel_cuts(w2):
            Q1 = V1[:, :cut1]
            Q2 = V2[:, :cut2]
            cols = [eye_col] + [-c for c in _face_columns(Q1, Q2, dims)]
            theta, *_ = np.linalg.lstsq(np.array(cols).T, target, rcond=None)
            out.append(_reconstruct_pair(theta[1:], Q1, Q2, dims))
    return out


# --------------------------------------------------------------------------
# dual-cone decomposition and the dual-cone construction route
# --------------------------------------------------------------------------

def decompose_dual_cone(
    X: np.ndarray,
    dims: BipartiteDims,
    tol_residual: float = 1e-7,
    max_iter: int = 20_000,
    warm_start: tuple[np.ndarray, np.ndarray] | None = None,
) -> tuple[np.ndarray, np.ndarray, float, int]:
    """Split X = X1 + X2^G with X1, X2 >= 0 by alternating PSD projections.

    Minimizes ||X - Y1 - Y2^G||_F over the two PSD cones one block at a
    time, absorbing the remainder into Y1 outright whenever it turns PSD
    (which finishes the split exactly).  ``warm_start`` seeds the pair,
    e.g. from the dual certificate of a PPT optimization.  Returns
    (X1, X2, residual, sweeps).

    Raises NotInDualCone when the residual floor is certifiably positive
    (the PPT optimization finds a strictly negative overlap), NoConvergence
    when the budget runs out without a verdict.
    """
    m, n = dims.m, dims.n
    X = np.asarray(X, dtype=complex)
    if not is_hermitian(X):
        raise NotHermitian("decomposition input must be Hermitian")
    X = hermitize(X)
    scale = max(1.0, float(np.abs(X).max()))

    if warm_start is not None:
        Y1 = _proj_psd(hermitize(np.asarray(warm_start[0], dtype=complex)))
        Y2 = _proj_psd(hermitize(np.asarray(warm_start[1], dtype=complex)))
    else:
        Y1 = np.zeros_like(X)
        Y2 = _proj_psd(_pt(X, m, n))

    res = np.inf
    it = 0
    polish_at = min(2000, max_iter)
    for it in range(1, max_iter + 1):
        R = hermitize(X - Y1 - _pt(Y2, m, n))
        if _lmin(R) >= -1e-12 * scale:
            Y1 = _proj_psd(Y1 + R)
            res = float(np.linalg.norm(X - Y1 - _pt(Y2, m, n)))
            if res <= tol_residual:
                return Y1, Y2, res, it
        Y1 = _proj_psd(hermitize(X - _pt(Y2, m, n)))
        Y2 = _proj_psd(hermitize(_pt(X - Y1, m, n)))
        res = float(np.linalg.norm(X - Y1 - _pt(Y2, m, n)))
        if res <= tol_residual:
            return Y1, Y2, res, it
        if it == polish_at or it == max_iter:
            # stalling near a tangential contact: certify the overlap floor;
            # its polished dual pair satisfies -X + Y1 + Y2^G ~ mu I, which
            # rearranges into a split of X (mu ~ -floor ~ 0 inside the cone)
            floor_lb, floor_ub, dual_pair = _overlap_floor(X, dims)
            if floor_ub < -1e-8:
                raise NotInDualCone(
                    f"certified PPT overlap {floor_ub:.3e} < 0; "
                    "X is outside the dual cone"
                )
            if dual_pair is not None:
                Y2c = _proj_psd(hermitize(dual_pair[1]))
                Y1c = _proj_psd(hermitize(X - _pt(Y2c, m, n)))
                res_c = float(np.linalg.norm(X - Y1c - _pt(Y2c, m, n)))
                if res_c < res:
                    Y1, Y2, res = Y1c, Y2c, res_c
                    if res <= tol_residual:
                        return Y1, Y2, res, it

    raise NoConvergence(
        f"decomposition residual {res:.3e} above {tol_residual:.1e} "
        f"after {it} sweeps", partial=(Y1, Y2, res),
    )


def _overlap_floor(X, dims):
    """Certified bracket of min <X, sigma> over PPT states, plus the dual pair."""
    try:
        floor = optimize_over_ppt(dims, X, sense="min", tol=1e-9)
    except NoConvergence as exc:
        floor = exc.partial  # bracket ends are still certified
        if floor is None:
            return 0.0, 0.0, None
    return floor.lower_bound, floor.upper_bound, floor.dual_basis


def construct_via_dual_cone(
    dims: BipartiteDims,
    P,
    tol_c: float = 1e-6,
    tol_residual: float = 1e-8,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ConeDecomposition:
    """Build the extremal state through the dual cone of the PPT states.

    c is the (certified) maximum of <P, sigma> over PPT states; the
    operator X = I - (1/c) P then lies in the dual cone, splits as
    X1 + X2^G, and rho = X2 / Tr(X2) has exactly (m-1)(n-1) negative
    partial-transpose eigenvalues.  Uses the certified upper end of the
    bracket for c, whose dual pair seeds the decomposition: with
    c = lambda_max(P + Y1 + Y2^G) the leftover is PSD and folds into X1,
    so the split is exact.
    """
    from .bipartite import count_negative_eigenvalues, partial_transpose

    if dims.npt_dim == 0:
        raise DegenerateSubspace(f"NPT subspace is trivial at dims {dims}")
    Pmat = hermitize(_projector_matrix(P))

    opt = optimize_over_ppt(dims, Pmat, sense="max", tol=tol_c, max_iter=max_iter)
    c = float(opt.upper_bound)
    if not 0.0 < c < 1.0:
        raise NoConvergence(f"certified c = {c!r} is outside (0, 1)", partial=opt)

    X = hermitize(np.eye(dims.total) - Pmat / c)
    warm = None
    if opt.dual_basis is not None:
        warm = (opt.dual_basis[0] / c, opt.dual_basis[1] / c)
    X1, X2, residual, sweeps = decompose_dual_cone(
        X, dims, tol_residual=tol_residual, max_iter=max_iter, warm_start=warm
    )
    t = _tr(X2)
    if t <= 1e-8:
        raise NoConvergence(f"decomposition returned Tr(X2) = {t:.3e}", partial=(X1, X2))
    rho = DensityMatrix(dims, _round_to_state(X2 / t, dims))

    count, _ = count_negative_eigenvalues(partial_transpose(rho.mat, dims))
    if count != dims.npt_dim:
        raise NoConvergence(
            f"dual-cone state has {count} negative partial-transpose "
            f"eigenvalues, expected {dims.npt_dim}", partial=rho,
        )
    return ConeDecomposition(
        c=c, X=X, X1=X1, X2=X2, rho=rho,
        residual=residual, iterations=opt.iterations + sweeps,
    )
