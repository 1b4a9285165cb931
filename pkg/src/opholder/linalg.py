"""Dense complex matrix substrate.

Everything here works on plain ``numpy`` arrays of dtype ``complex128`` and
shape ``(d, d)``.  Eigen- and singular value decompositions are computed by
cyclic Jacobi rotations; numpy only supplies array arithmetic.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .errors import DimensionError, DomainError, InvalidInputError

MAX_DIM = 8
MAX_SWEEPS = 50
# Off-diagonal entries below this fraction of sqrt(|h_pp h_qq|) are treated
# as converged; relative thresholds keep graded matrices accurate.
_ROT_TOL = 1e-15
_EPS = np.finfo(float).eps


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    unitary: np.ndarray


class SVD(NamedTuple):
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


class PolarDecomposition(NamedTuple):
    unitary_factor: np.ndarray
    modulus: np.ndarray


class PSDCheck(NamedTuple):
    """Result of a Loewner-positivity test; truthy iff the matrix passed."""

    ok: bool
    min_eigenvalue: float

    def __bool__(self):
        return self.ok


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate ``M`` as a finite square matrix and return a complex copy."""
    a = np.array(M, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise DimensionError(f"{name} has dimension 0")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} has NaN or infinite entries")
    return a


def adjoint(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def hermitian_part(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def op_norm(M: np.ndarray) -> float:
    """Largest singular value (used for tolerance scaling)."""
    return float(np.linalg.norm(M, 2))


def scale(M: np.ndarray) -> float:
    """The ``1 + ||M||_op`` factor every relative tolerance is measured against."""
    return 1.0 + op_norm(M)


def _rotation(a: float, b: float, c: complex):
    """2x2 unitary J with J* [[a, c], [conj(c), b]] J diagonal."""
    r = abs(c)
    phase = c / r
    theta = (b - a) / (2.0 * r)
    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
    cs = 1.0 / math.sqrt(t * t + 1.0)
    sn = t * cs
    return np.array([[cs, sn], [-sn * phase.conjugate(), cs * phase.conjugate()]])


def _pow2(M: np.ndarray) -> float:
    """Power of two near ``||M||_F`` (1 for the zero matrix); dividing by it is exact."""
    fro = float(np.linalg.norm(M))
    return math.ldexp(1.0, math.frexp(fro)[1]) if fro > 0 else 1.0


def herm_eig(H) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi.

    The input is symmetrized first.  Eigenvalues come back ascending, with
    the eigenvectors as the columns of ``unitary``.
    """
    A = hermitian_part(as_matrix(H))
    k = _pow2(A)
    A /= k
    d = A.shape[0]
    V = np.eye(d, dtype=complex)
    floor = _EPS**2 * float(np.linalg.norm(A))
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(d - 1):
            for q in range(p + 1, d):
                c = A[p, q]
                a, b = A[p, p].real, A[q, q].real
                if abs(c) <= max(floor, _ROT_TOL * math.sqrt(abs(a)) * math.sqrt(abs(b))):
                    continue
                J = _rotation(a, b, c)
                idx = [p, q]
                A[:, idx] = A[:, idx] @ J
                A[idx, :] = J.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ J
                rotated = True
        if not rotated:
            break
    w = A.diagonal().real * k
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], V[:, order])


def _complete_columns(U: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Replace the columns of ``U`` not flagged in ``keep`` by an orthonormal
    completion of the kept ones (Gram-Schmidt against standard basis vectors).
    """
    d = U.shape[0]
    basis = [U[:, j] for j in range(d) if keep[j]]
    fill = []
    for k in range(d):
        if len(basis) + len(fill) == d:
            break
        v = np.zeros(d, dtype=complex)
        v[k] = 1.0
        for _ in range(2):
            for b in basis + fill:
                v = v - b * (b.conj() @ v)
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            fill.append(v / nv)
    out = U.copy()
    it = iter(fill)
    for j in range(d):
        if not keep[j]:
            out[:, j] = next(it)
    return out


def svd(M) -> SVD:
    """Singular value decomposition ``M = U diag(sigma) V*``.

    One-sided Jacobi: columns of ``M`` are rotated until mutually orthogonal,
    which is the Jacobi method on ``M*M`` applied without forming it.  Columns
    of ``U`` belonging to (numerically) zero singular values are completed to
    a full unitary.
    """
    W = as_matrix(M)
    k = _pow2(W)
    W /= k
    d = W.shape[0]
    V = np.eye(d, dtype=complex)
    floor = _EPS**2 * float(np.linalg.norm(W))
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(d - 1):
            for q in range(p + 1, d):
                wp, wq = W[:, p], W[:, q]
                na, nb = float(np.linalg.norm(wp)), float(np.linalg.norm(wq))
                # a column at rounding level of the whole matrix is a zero column
                if min(na, nb) <= floor:
                    continue
                c = np.vdot(wp, wq)
                if abs(c) <= _ROT_TOL * na * nb:
                    continue
                a, b = na * na, nb * nb
                J = _rotation(a, b, c)
                idx = [p, q]
                W[:, idx] = W[:, idx] @ J
                V[:, idx] = V[:, idx] @ J
                rotated = True
        if not rotated:
            break
    sigma = np.linalg.norm(W, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, W, V = sigma[order], W[:, order], V[:, order]
    keep = sigma > d * _EPS * max(sigma[0], np.finfo(float).tiny)
    U = np.zeros_like(W)
    U[:, keep] = W[:, keep] / sigma[keep]
    U = _complete_columns(U, keep)
    return SVD(U, sigma * k, V)


def singular_values(M) -> np.ndarray:
    return svd(M).sigma


def polar(M) -> PolarDecomposition:
    """Right polar decomposition ``M = U |M|`` with ``U`` a full unitary."""
    U, s, V = svd(M)
    P = hermitian_part((V * s) @ V.conj().T)
    return PolarDecomposition(U @ V.conj().T, P)


def modulus(M) -> np.ndarray:
    """``|M| = (M*M)^{1/2}``."""
    return polar(M).modulus


def spectral_fn(H, f: Callable[[float], float]) -> np.ndarray:
    """Apply the scalar function ``f`` to a Hermitian matrix.

    ``f`` is called on each eigenvalue separately.  A non-finite value or an
    exception from ``f`` is reported as a :class:`DomainError` carrying the
    offending eigenvalue.
    """
    w, Q = herm_eig(H)
    vals = np.empty(len(w), dtype=complex)
    for i, lam in enumerate(w):
        try:
            v = complex(f(float(lam)))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"function undefined at eigenvalue {lam!r}: {exc}", witness=float(lam)) from exc
        if not np.isfinite(v):
            raise DomainError(f"function not finite at eigenvalue {lam!r}", witness=float(lam))
        vals[i] = v
    out = (Q * vals) @ Q.conj().T
    if np.all(vals.imag == 0):
        out = hermitian_part(out)
    return out


def psd_power(H, s: float, tol: float = 1e-10) -> np.ndarray:
    """``H**s`` for positive semidefinite ``H`` (with ``0**0 = 1``).

    Eigenvalues within ``tol * (1 + ||H||)`` below zero are clamped; for
    positive ``s`` eigenvalues at rounding level are set to zero so fractional
    powers do not amplify noise.  Negative ``s`` needs ``H`` positive definite.
    """
    w, Q = herm_eig(H)
    top = max(abs(w[0]), abs(w[-1]))
    if w[0] < -tol * (1.0 + top):
        raise DomainError(f"matrix power {s} of a non-PSD matrix (min eigenvalue {w[0]:.3e})", witness=float(w[0]))
    w = np.where(w < 0, 0.0, w)
    if s == 0:
        return np.eye(len(w), dtype=complex)
    if s > 0:
        w = np.where(w <= 4 * len(w) * _EPS * top, 0.0, w)
    elif w[0] <= 0:
        raise DomainError(f"negative power {s} of a singular matrix", witness=float(w[0]))
    return hermitian_part((Q * w**s) @ Q.conj().T)


def sqrtm_psd(H) -> np.ndarray:
    return psd_power(H, 0.5)


def min_eigenvalue(M) -> float:
    return float(herm_eig(M).eigenvalues[0])


def is_psd(M, tol: float = 1e-10) -> PSDCheck:
    """Loewner positivity test with min-eigenvalue witness.

    Passes iff ``M`` is Hermitian at ``tol`` and its smallest eigenvalue is
    at least ``-tol * (1 + ||M||_op)``.  The witness is the smallest
    eigenvalue of the Hermitian part.
    """
    M = as_matrix(M)
    lam = min_eigenvalue(M)
    return PSDCheck(bool(lam >= -tol * scale(M)) and is_hermitian(M, tol), lam)


def is_hermitian(M, tol: float = 1e-10) -> bool:
    M = as_matrix(M)
    return op_norm(M - M.conj().T) <= tol * scale(M)


def is_unitary(M, tol: float = 1e-10) -> bool:
    M = as_matrix(M)
    return op_norm(M.conj().T @ M - np.eye(M.shape[0])) <= tol


def is_normal(M, tol: float = 1e-10) -> bool:
    M = as_matrix(M)
    return op_norm(M.conj().T @ M - M @ M.conj().T) <= tol * scale(M) ** 2


def block(A, X, Y, B) -> np.ndarray:
    """Assemble the 2x2 block matrix ``[[A, X], [Y, B]]``."""
    return np.block([[A, X], [Y, B]])


# -- random instances -------------------------------------------------------


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _check_dim(d: int) -> None:
    if int(d) < 1:
        raise DimensionError(f"dimension must be >= 1, got {d}")


def random_matrix(d: int, seed) -> np.ndarray:
    """Complex Gaussian matrix with entries of unit variance."""
    _check_dim(d)
    rng = _rng(seed)
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)


def random_psd(d: int, seed, rank: int | None = None) -> np.ndarray:
    """``R*R`` scaled to unit operator norm; ``rank`` < d gives a singular matrix."""
    _check_dim(d)
    rng = _rng(seed)
    k = d if rank is None else int(rank)
    R = (rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))) / math.sqrt(2)
    G = R.conj().T @ R
    n = op_norm(G)
    return hermitian_part(G / n) if n > 0 else G


def random_unitary(d: int, seed) -> np.ndarray:
    return polar(random_matrix(d, seed)).unitary_factor


def random_commuting_normal_family(d: int, m: int, seed) -> list[np.ndarray]:
    """``m`` normal matrices ``W D_k W*`` sharing one random unitary ``W``."""
    _check_dim(d)
    if int(m) < 1:
        raise DimensionError(f"family length must be >= 1, got {m}")
    rng = _rng(seed)
    W = random_unitary(d, rng)
    out = []
    for _ in range(m):
        diag = (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / math.sqrt(2)
        out.append((W * diag) @ W.conj().T)
    return out


def commutation_defect(family) -> float:
    """Largest ``||A_i A_j - A_j A_i||`` and ``||A_i A_j* - A_j* A_i||`` over the family."""
    worst = 0.0
    for i, a in enumerate(family):
        for b in family[i:]:
            worst = max(worst, op_norm(a @ b - b @ a), op_norm(a @ b.conj().T - b.conj().T @ a))
    return worst
