"""Geometric and weighted geometric means of positive matrices.

For invertible ``A``::

    A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}

and for singular ``A`` the mean is the limit of ``(A + eps I) #_t B`` as
``eps`` decreases to zero.  Only the first argument is regularized.

The limit is taken along a fixed geometric schedule of ``eps`` values.  Near
zero the regularized mean behaves like ``G(eps) + eps^(1-t) H(eps)`` with
``G`` and ``H`` analytic, so the schedule values are combined by Richardson
extrapolation in the exponents ``j + i(1-t)``; the raw sequence alone only
converges like ``eps^(1-t)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .linalg import (
    PSDCheck,
    as_matrix,
    block,
    herm_eig,
    hermitian_part,
    is_psd,
    op_norm,
)

LIMIT_TOL = 1e-8
EPS0 = 1e-4
EPS_RATIO = 4.0
EPS_STEPS = 13
RICHARDSON_DEPTH = 6
PSD_TOL = 1e-10


@dataclass(frozen=True)
class MeanResult:
    value: np.ndarray
    epsilon_used: float = 0.0
    convergence_gap: float = 0.0


def _check_psd(M, name, tol=PSD_TOL):
    chk = is_psd(M, tol)
    if not chk:
        raise DomainError(f"{name} is not positive semidefinite (min eigenvalue {chk.min_eigenvalue:.3e})",
                          witness=chk.min_eigenvalue)


def eps_schedule(norm_a: float, floor: float | None = None) -> list[float]:
    """``eps_k = 1e-4 * 4**-k * c`` for k = 0..12 with ``c = 1 + ||A||``.

    With ``floor`` (the smallest nonzero eigenvalue of ``A``) the scale is
    ``min(c, floor)``: the expansion behind the extrapolation only holds once
    ``eps`` is well below every nonzero eigenvalue.
    """
    c = 1.0 + norm_a
    if floor is not None and floor > 0:
        c = min(c, floor)
    return [EPS0 * EPS_RATIO**-k * c for k in range(EPS_STEPS)]


def _exponents(theta: float, count: int) -> list[float]:
    s = 1.0 - theta
    found = {round(j + i * s, 12) for j in range(count + 1) for i in range(count + 1)}
    found.discard(0.0)
    return sorted(found)[:count]


class _Graded:
    """``A`` held in its eigenbasis so ``(A + eps) #_t B`` can be evaluated by
    diagonal scaling, which stays accurate when ``A + eps`` is ill-conditioned.
    """

    def __init__(self, A, B):
        lam, Q = herm_eig(A)
        top = max(lam[-1], 0.0)
        # rounding-level eigenvalues of A are exact zeros of the ideal matrix
        self.lam = np.where(lam <= 64 * np.finfo(float).eps * top, 0.0, lam)
        self.Q = Q
        self.B = hermitian_part(Q.conj().T @ B @ Q)
        self.noise = 64 * len(lam) * np.finfo(float).eps * op_norm(B)

    def mean(self, theta, eps=0.0):
        lam = self.lam + eps
        r = 1.0 / np.sqrt(lam)
        # Jacobi is relatively accurate on the scaled matrix; an eigenvalue with
        # eigenvector v only carries rounding of order u ||B|| |D^{-1/2} v|^2,
        # so that is the cutoff below which it is an exact zero
        w, V = herm_eig(self.B * np.outer(r, r))
        noise = self.noise * ((np.abs(V) ** 2).T @ (r * r))
        w = np.where(w <= noise, 0.0, w)
        inner = (V * w**theta) @ V.conj().T
        s = np.sqrt(lam)
        return hermitian_part(self.Q @ (inner * np.outer(s, s)) @ self.Q.conj().T)


def regularized_mean(A, B, theta: float, eps: float) -> np.ndarray:
    """``(A + eps I) #_theta B`` for a fixed ``eps > 0`` (no limit taken)."""
    A, B = as_matrix(A, "A"), as_matrix(B, "B")
    if eps <= 0:
        raise DomainError(f"regularization must be positive, got {eps}", witness=eps)
    return _Graded(A, B).mean(theta, eps)


def weighted_geometric_mean(A, B, theta: float) -> MeanResult:
    """Weighted geometric mean ``A #_theta B`` of two PSD matrices.

    ``theta = 0`` and ``theta = 1`` return ``A`` and ``B`` exactly (both are
    constant along the regularization path).  The closed formula is used
    whenever ``A`` has no eigenvalue at rounding level (``64 u ||A||``); it is
    evaluated by diagonal scaling in the eigenbasis of ``A`` and stays
    backward stable for ill-conditioned ``A``.  Otherwise the regularized
    limit is taken and ``epsilon_used``/``convergence_gap`` describe where it
    stopped.  If the extrapolated limit does not settle (``theta`` near 1)
    and ``B`` is invertible, the limit is evaluated as ``B #_(1-theta) A``.
    """
    A, B = as_matrix(A, "A"), as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"weight must lie in [0, 1], got {theta}", witness=theta)
    _check_psd(A, "A")
    _check_psd(B, "B")
    if theta == 0.0:
        return MeanResult(hermitian_part(A))
    if theta == 1.0:
        return MeanResult(hermitian_part(B))

    g = _Graded(A, B)
    top = g.lam[-1]
    if top > 0 and g.lam[0] > 0:
        return MeanResult(g.mean(theta))
    if top <= 0:
        # A = 0: every regularized mean is eps^(1-t) (...) -> 0
        return MeanResult(np.zeros_like(A))

    exps = _exponents(theta, RICHARDSON_DEPTH)
    rows: list[list[np.ndarray]] = []
    prev = None
    gap = np.inf
    for eps in eps_schedule(top, float(np.min(g.lam[g.lam > 0]))):
        row = [g.mean(theta, eps)]
        for j in range(min(len(rows), RICHARDSON_DEPTH)):
            f = EPS_RATIO ** exps[j]
            row.append((f * row[j] - rows[-1][j]) / (f - 1.0))
        rows.append(row)
        est = row[-1]
        if prev is not None:
            gap = op_norm(est - prev)
            if gap <= LIMIT_TOL:
                break
        prev = est
    else:
        # small 1 - theta makes the eps^(1-theta) series too slow to extrapolate;
        # for invertible B the limit is B #_(1-theta) A, a closed formula
        gb = _Graded(B, A)
        if gb.lam[-1] > 0 and gb.lam[0] > 0:
            return MeanResult(gb.mean(1.0 - theta))
        warnings.warn(f"regularized mean did not converge: last gap {gap:.3e}", RuntimeWarning, stacklevel=2)
    # extrapolation can leave eigenvalues slightly below zero; the nearest PSD
    # matrix is at least as close to the (PSD) limit
    lam, Q = herm_eig(est)
    return MeanResult(hermitian_part((Q * np.maximum(lam, 0.0)) @ Q.conj().T), eps, float(gap))


def geometric_mean(A, B) -> MeanResult:
    """``A # B``; see :func:`weighted_geometric_mean`."""
    return weighted_geometric_mean(A, B, 0.5)


def block_psd_certificate(A, B, X, tol: float = 1e-8) -> PSDCheck:
    """Check ``[[A, X], [X*, B]] >= 0``; the witness is its smallest eigenvalue."""
    A, B, X = as_matrix(A, "A"), as_matrix(B, "B"), as_matrix(X, "X")
    if not A.shape == B.shape == X.shape:
        raise DimensionError(f"block shapes differ: {A.shape}, {X.shape}, {B.shape}")
    return is_psd(block(A, X, X.conj().T, B), tol)
