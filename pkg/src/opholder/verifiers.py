"""Numerical checks of Hölder- and Cauchy-Schwarz-type operator inequalities.

Each ``verify_*`` function assembles both sides of one inequality from the
library primitives and returns a :class:`VerdictRecord`.

Tolerance policy (``tau`` defaults to 1e-8):

* scalar (norm) inequalities pass iff ``lhs <= rhs (1 + tau) + tau``; the
  record stores ``gap = rhs - lhs`` and ``tolerance = tau (1 + rhs)``;
* Loewner inequalities pass iff ``lambda_min(rhs - lhs) >= -tau (1 + ||rhs||)``;
  ``gap`` is that minimum eigenvalue.

In both cases ``passed`` is exactly ``gap >= -tolerance``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import codec
from .errors import DomainError, PreconditionError
from .linalg import (
    as_matrix,
    commutation_defect,
    herm_eig,
    hermitian_part,
    min_eigenvalue,
    modulus,
    op_norm,
    polar,
    psd_power,
    scale,
)
from .means import block_psd_certificate, geometric_mean, weighted_geometric_mean
from .module import (
    ModuleElement,
    MultiplierOperator,
    Power,
    apply,
    discretize,
    inner_product,
    module_polar,
    sample_family,
    transformed_gram,
)
from .norms import TRACE_NORM, UINormSpec, evaluate, is_q_norm, to_json as norm_to_json

TAU = 1e-8
CONJUGATE_TOL = 1e-12
COMMUTE_TOL = 1e-10
PAIR_TOL = 1e-10
POLAR_NOTE = "unitary extension"


@dataclass(frozen=True)
class VerdictRecord:
    inequality_id: str
    lhs: object
    rhs: object
    gap: float
    tolerance: float
    passed: bool
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def with_seed(self, seed) -> "VerdictRecord":
        return VerdictRecord(self.inequality_id, self.lhs, self.rhs, self.gap, self.tolerance,
                             self.passed, self.params, seed)

    def to_json(self) -> dict:
        def enc(v):
            return codec.matrix_to_json(v) if isinstance(v, np.ndarray) else float(v)

        return {
            "inequality_id": self.inequality_id,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "gap": float(self.gap),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
            "params": _jsonable(self.params),
            "seed": self.seed,
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if hasattr(obj, "__dataclass_fields__") and not isinstance(obj, VerdictRecord):
        return norm_to_json(obj)
    return obj


def scalar_verdict(ineq: str, lhs: float, rhs: float, tau: float, params: dict) -> VerdictRecord:
    lhs, rhs = float(lhs), float(rhs)
    tol = tau * (1.0 + abs(rhs))
    gap = rhs - lhs
    return VerdictRecord(ineq, lhs, rhs, gap, tol, gap >= -tol, params)


def loewner_verdict(ineq: str, lhs: np.ndarray, rhs: np.ndarray, tau: float, params: dict) -> VerdictRecord:
    gap = min_eigenvalue(hermitian_part(rhs - lhs))
    tol = tau * scale(rhs)
    return VerdictRecord(ineq, lhs, rhs, gap, tol, gap >= -tol, params)


def conjugate(p: float, q: float | None = None) -> float:
    """Hölder conjugate of ``p``; validates a supplied ``q``."""
    if not p > 1:
        raise PreconditionError(f"need p > 1, got {p}")
    if q is None:
        q = p / (p - 1.0)
    if not q > 1 or abs(1.0 / p + 1.0 / q - 1.0) > CONJUGATE_TOL:
        raise PreconditionError(f"p={p}, q={q} are not Hölder conjugates")
    return q


def _holder_params(p, q, **extra) -> dict:
    return {"p": p, "q": q, "conjugate_sum": 1.0 / p + 1.0 / q, **extra}


def power_pair(alpha: float):
    """``f(t) = t^alpha``, ``g(t) = t^(1-alpha)``."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}", witness=alpha)
    return Power(alpha), Power(1.0 - alpha)


def _resolve_pair(T: MultiplierOperator, alpha, pair):
    if pair is None:
        return power_pair(alpha)
    f, g = pair
    for P in module_polar(T).modulus_blocks:
        for t in herm_eig(P).eigenvalues:
            t = max(float(t), 0.0)
            if abs(f(t) * g(t) - t) > PAIR_TOL:
                raise PreconditionError(f"f(t) g(t) != t at spectral point t={t}")
    return f, g


def _elem_params(x: ModuleElement, **extra) -> dict:
    return {"d": x.dim, "m": len(x), **extra}


# -- Cauchy-Schwarz type (Loewner order) --------------------------------------


def verify_cs_sharp(x: ModuleElement, y: ModuleElement, tau: float = TAU) -> VerdictRecord:
    """``|<x,y>| <= u* <x,x> u # <y,y>`` where ``<x,y> = u |<x,y>|``."""
    P = inner_product(x, y)
    u, absP = polar(P)
    rhs = geometric_mean(u.conj().T @ inner_product(x, x) @ u, inner_product(y, y)).value
    return loewner_verdict("cs_sharp", absP, rhs, tau, _elem_params(x, polar=POLAR_NOTE))


def weighted_cs_sides(x, y, T, alpha=0.5, pair=None):
    """Both sides of the weighted Cauchy-Schwarz inequality plus its pieces.

    Returns ``(P, u, X, Y, lhs, rhs)`` with ``P = <x, Ty> = u|P|``,
    ``X = <x, f(|T*|)^2 x>``, ``Y = <y, g(|T|)^2 y>``, ``lhs = |P|`` and
    ``rhs = u* X u # Y``.
    """
    f, g = _resolve_pair(T, alpha, pair)
    P = inner_product(x, apply(T, y))
    u, absP = polar(P)
    X = transformed_gram(x, T, f, side="left")
    Y = transformed_gram(y, T, g, side="right")
    rhs = geometric_mean(u.conj().T @ X @ u, Y).value
    return P, u, X, Y, absP, rhs


def verify_weighted_cs(x: ModuleElement, y: ModuleElement, T: MultiplierOperator, alpha: float = 0.5,
                       pair: tuple[Callable, Callable] | None = None, tau: float = TAU) -> VerdictRecord:
    """``|<x,Ty>| <= u* <x, f(|T*|)^2 x> u # <y, g(|T|)^2 y>``.

    ``f, g`` default to ``t^alpha, t^(1-alpha)``; any callbacks with
    ``f(t) g(t) = t`` on the spectra of ``|X_n|`` may be passed as ``pair``.
    """
    *_, lhs, rhs = weighted_cs_sides(x, y, T, alpha, pair)
    params = _elem_params(x, alpha=None if pair else alpha, polar=POLAR_NOTE)
    return loewner_verdict("weighted_cs", lhs, rhs, tau, params)


def block_conjugation_certificate(x, y, T, alpha=0.5, pair=None, tol=TAU):
    """PSD check of ``[[X, <x,Ty>], [<x,Ty>*, Y]]``.

    This block is ``diag(u, 1) [[u*Xu, |P|], [|P|, Y]] diag(u*, 1)`` with the
    inner block PSD because ``|P| <= u*Xu # Y``.
    """
    P, u, X, Y, *_ = weighted_cs_sides(x, y, T, alpha, pair)
    return block_psd_certificate(X, Y, P, tol)


# -- Horn-Mathias and the main Hölder inequality ------------------------------


def _pow_norm(norm, M, s):
    return evaluate(norm, psd_power(M, s))


def verify_horn_mathias(A, B, X, p: float, q: float | None = None, r: float = 1.0,
                        norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """``|||X|^r||| <= |||A^(pr/2)|||^(1/p) |||B^(qr/2)|||^(1/q)`` for ``[[A, X], [X*, B]] >= 0``."""
    q = conjugate(p, q)
    if not r > 0:
        raise PreconditionError(f"need r > 0, got {r}")
    A, B, X = as_matrix(A, "A"), as_matrix(B, "B"), as_matrix(X, "X")
    cert = block_psd_certificate(A, B, X, tau)
    if not cert:
        raise PreconditionError(f"[[A, X], [X*, B]] is not PSD (min eigenvalue {cert.min_eigenvalue:.3e})")
    lhs = _pow_norm(norm, modulus(X), r)
    rhs = _pow_norm(norm, A, p * r / 2) ** (1 / p) * _pow_norm(norm, B, q * r / 2) ** (1 / q)
    params = _holder_params(p, q, r=r, d=A.shape[0], norm=norm, block_witness=cert.min_eigenvalue)
    return scalar_verdict("horn_mathias", lhs, rhs, tau, params)


def horn_mathias_instance(A, B, C):
    """``X = A^(1/2) C B^(1/2)``; PSD block whenever ``||C|| <= 1``."""
    return psd_power(A, 0.5) @ as_matrix(C, "C") @ psd_power(B, 0.5)


def main_sides(x, y, T, alpha, p, q, r, norm, pair=None):
    f, g = _resolve_pair(T, alpha, pair)
    P = inner_product(x, apply(T, y))
    X = transformed_gram(x, T, f, side="left")
    Y = transformed_gram(y, T, g, side="right")
    lhs = _pow_norm(norm, modulus(P), r)
    rhs = _pow_norm(norm, X, p * r / 2) ** (1 / p) * _pow_norm(norm, Y, q * r / 2) ** (1 / q)
    return lhs, rhs


def verify_main(x: ModuleElement, y: ModuleElement, T: MultiplierOperator, alpha: float, p: float,
                q: float | None = None, r: float = 1.0, norm: UINormSpec = TRACE_NORM,
                pair=None, tau: float = TAU, _ineq: str = "main") -> VerdictRecord:
    """``||| |<x,Ty>|^r ||| <= |||X^(pr/2)|||^(1/p) |||Y^(qr/2)|||^(1/q)`` with
    ``X = <x, f(|T*|)^2 x>`` and ``Y = <y, g(|T|)^2 y>``.
    """
    q = conjugate(p, q)
    if not r > 0:
        raise PreconditionError(f"need r > 0, got {r}")
    lhs, rhs = main_sides(x, y, T, alpha, p, q, r, norm, pair)
    params = _elem_params(x, **_holder_params(p, q, r=r, alpha=None if pair else alpha, norm=norm))
    return scalar_verdict(_ineq, lhs, rhs, tau, params)


# -- discrete corollaries -------------------------------------------------------


def _pack(gammas, As, Bs, Xs):
    x = ModuleElement(gammas, As)
    y = ModuleElement(gammas, Bs)
    T = MultiplierOperator(Xs)
    if len(T) != len(x):
        raise PreconditionError(f"{len(T)} multipliers for {len(x)} terms")
    return x, y, T


def _weighted_sum(gammas, mats):
    return hermitian_part(sum(g * M for g, M in zip(gammas, mats)))


def _abs_powers(mats, s):
    return [psd_power(modulus(M), s) for M in mats]


def _sup(Xs) -> float:
    return max(op_norm(as_matrix(X)) for X in Xs)


def _check_probability(gammas, exact=True):
    total = float(np.sum(gammas))
    if exact and abs(total - 1.0) > CONJUGATE_TOL:
        raise PreconditionError(f"weights must sum to 1, got {total!r}")
    if not exact and total > 1.0 + CONJUGATE_TOL:
        raise PreconditionError(f"weights must sum to at most 1, got {total!r}")


def verify_discrete_i(gammas, As, Bs, Xs, alpha: float, p: float, q: float | None = None, r: float = 1.0,
                      norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """``||| |sum g A*XB|^r ||| <= |||(sum g A*|X*|^(2a) A)^(pr/2)|||^(1/p) |||(sum g B*|X|^(2b) B)^(qr/2)|||^(1/q)``."""
    x, y, T = _pack(gammas, As, Bs, Xs)
    return verify_main(x, y, T, alpha, p, q, r, norm, tau=tau, _ineq="discrete_i")


def _cross_sum(gammas, As, Bs, Xs):
    return sum(g * (as_matrix(A).conj().T @ as_matrix(X) @ as_matrix(B)) for g, A, X, B in zip(gammas, As, Xs, Bs))


def verify_discrete_ii(gammas, As, Bs, Xs, p: float, q: float | None = None, r: float = 2.0,
                       norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """``||| |sum g A*XB|^r ||| <= |||sum g |A|^(pr)|||^(1/p) |||sum g |B|^(qr)|||^(1/q) sup||X||^r``
    for probability weights and ``r >= 2``.
    """
    q = conjugate(p, q)
    if r < 2:
        raise PreconditionError(f"need r >= 2, got {r}")
    _check_probability(gammas)
    _pack(gammas, As, Bs, Xs)
    S = _cross_sum(gammas, As, Bs, Xs)
    lhs = _pow_norm(norm, modulus(S), r)
    rhs = (evaluate(norm, _weighted_sum(gammas, _abs_powers(As, p * r))) ** (1 / p)
           * evaluate(norm, _weighted_sum(gammas, _abs_powers(Bs, q * r))) ** (1 / q)
           * _sup(Xs) ** r)
    params = _holder_params(p, q, r=r, d=S.shape[0], m=len(gammas), norm=norm)
    return scalar_verdict("discrete_ii", lhs, rhs, tau, params)


def verify_discrete_ii_q(gammas, As, Bs, Xs, p: float, q: float | None = None,
                         norm: UINormSpec = None, tau: float = TAU) -> VerdictRecord:
    """``||sum g A*XB||_Q <= ||sum g |A|^p||_Q^(1/p) ||sum g |B|^q||_Q^(1/q) sup||X||``."""
    q = conjugate(p, q)
    if norm is None or not is_q_norm(norm):
        raise PreconditionError(f"{norm} is not a Q-norm")
    _check_probability(gammas)
    _pack(gammas, As, Bs, Xs)
    S = _cross_sum(gammas, As, Bs, Xs)
    lhs = evaluate(norm, S)
    rhs = (evaluate(norm, _weighted_sum(gammas, _abs_powers(As, p))) ** (1 / p)
           * evaluate(norm, _weighted_sum(gammas, _abs_powers(Bs, q))) ** (1 / q)
           * _sup(Xs))
    params = _holder_params(p, q, d=S.shape[0], m=len(gammas), norm=norm)
    return scalar_verdict("discrete_ii_q", lhs, rhs, tau, params)


def verify_discrete_iii(gammas, As, Bs, Xs, p: float, q: float | None = None,
                        norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """``|||sum g A*XB||| <= |||sum g |A|^p|||^(1/p) |||sum g^(q/2) |B|^q|||^(1/q) sup||X||``
    for ``p >= 2`` and total weight at most 1.
    """
    q = conjugate(p, q)
    if p < 2:
        raise PreconditionError(f"need p >= 2, got {p}")
    _check_probability(gammas, exact=False)
    _pack(gammas, As, Bs, Xs)
    gammas = np.asarray(gammas, dtype=float)
    S = _cross_sum(gammas, As, Bs, Xs)
    lhs = evaluate(norm, S)
    rhs = (evaluate(norm, _weighted_sum(gammas, _abs_powers(As, p))) ** (1 / p)
           * evaluate(norm, _weighted_sum(gammas ** (q / 2), _abs_powers(Bs, q))) ** (1 / q)
           * _sup(Xs))
    params = _holder_params(p, q, d=S.shape[0], m=len(gammas), norm=norm)
    return scalar_verdict("discrete_iii", lhs, rhs, tau, params)


def sharp_constant(m: int, p: float) -> float:
    """``m^|1/2 - 1/p|``."""
    return float(m) ** abs(0.5 - 1.0 / p)


def verify_discrete_iii_finite(As, Bs, Xs, p: float, q: float | None = None,
                               norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """``|||sum A*XB||| <= m^|1/2-1/p| |||sum |A|^p|||^(1/p) |||sum |B|^q|||^(1/q) sup||X||`` (n = 1..m).

    ``params["sharpness_ratio"]`` is lhs over the right side without the
    constant; it is exploratory output only.
    """
    q = conjugate(p, q)
    if p < 2:
        raise PreconditionError(f"need p >= 2, got {p}")
    m = len(As)
    ones = np.ones(m)
    _pack(ones, As, Bs, Xs)
    S = _cross_sum(ones, As, Bs, Xs)
    lhs = evaluate(norm, S)
    bare = (evaluate(norm, _weighted_sum(ones, _abs_powers(As, p))) ** (1 / p)
            * evaluate(norm, _weighted_sum(ones, _abs_powers(Bs, q))) ** (1 / q)
            * _sup(Xs))
    c = sharp_constant(m, p)
    params = _holder_params(p, q, d=S.shape[0], m=m, norm=norm, constant=c,
                            sharpness_ratio=lhs / bare if bare > 0 else 0.0)
    return scalar_verdict("discrete_iii_finite", lhs, c * bare, tau, params)


def _check_commuting(family, name):
    defect = commutation_defect([as_matrix(A) for A in family])
    if defect > COMMUTE_TOL * max(1.0, max(op_norm(as_matrix(A)) for A in family) ** 2):
        raise PreconditionError(f"{name} is not a commuting normal family (defect {defect:.3e})")


def _sandwich(gammas, As, Bs, X, p, q):
    Ap = psd_power(_weighted_sum(gammas, _abs_powers(As, p)), 1 / p)
    Bq = psd_power(_weighted_sum(gammas, _abs_powers(Bs, q)), 1 / q)
    return Ap @ as_matrix(X, "X") @ Bq


def verify_discrete_iv(gammas, As, Bs, X, p: float, q: float | None = None,
                       norm: UINormSpec = None, tau: float = TAU) -> VerdictRecord:
    """``||sum g A*XB||_Q <= ||(sum g |A|^p)^(1/p) X (sum g |B|^q)^(1/q)||_Q`` for commuting normal families."""
    q = conjugate(p, q)
    if norm is None or not is_q_norm(norm):
        raise PreconditionError(f"{norm} is not a Q-norm")
    _check_commuting(As, "A")
    _check_commuting(Bs, "B")
    _pack(gammas, As, Bs, [X] * len(As))
    lhs = evaluate(norm, _cross_sum(gammas, As, Bs, [X] * len(As)))
    rhs = evaluate(norm, _sandwich(gammas, As, Bs, X, p, q))
    params = _holder_params(p, q, d=as_matrix(X).shape[0], m=len(As), norm=norm)
    return scalar_verdict("discrete_iv", lhs, rhs, tau, params)


def verify_discrete_v(As, Bs, X, p: float, q: float | None = None,
                      norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """``|||sum A*XB||| <= m^|1/2-1/p| |||(sum |A|^p)^(1/p) X (sum |B|^q)^(1/q)|||`` (n = 1..m)."""
    q = conjugate(p, q)
    _check_commuting(As, "A")
    _check_commuting(Bs, "B")
    m = len(As)
    ones = np.ones(m)
    _pack(ones, As, Bs, [X] * m)
    lhs = evaluate(norm, _cross_sum(ones, As, Bs, [X] * m))
    bare = evaluate(norm, _sandwich(ones, As, Bs, X, p, q))
    c = sharp_constant(m, p)
    params = _holder_params(p, q, d=as_matrix(X).shape[0], m=m, norm=norm, constant=c,
                            sharpness_ratio=lhs / bare if bare > 0 else 0.0)
    return scalar_verdict("discrete_v", lhs, c * bare, tau, params)


# -- continuous corollaries ------------------------------------------------------

CONTINUOUS_VARIANTS = ("i", "ii", "ii_q", "iii")


def verify_continuous(A_coeffs: Sequence, B_coeffs: Sequence, X_coeffs: Sequence, nodes: int, variant: str,
                      p: float, q: float | None = None, r: float = 1.0, alpha: float = 0.5,
                      norm: UINormSpec = TRACE_NORM, tau: float = TAU) -> VerdictRecord:
    """Integral forms on [0, 1] for polynomial families ``t -> sum_k t^k C_k``.

    The families are sampled at ``nodes`` midpoints with weights ``1/nodes``
    and handed to the discrete verifier of the same shape: ``i`` to
    :func:`verify_discrete_i`, ``ii``/``ii_q`` to the (ii) forms and ``iii``
    (commuting normal families, constant ``X``) to :func:`verify_discrete_iv`.
    """
    if variant not in CONTINUOUS_VARIANTS:
        raise ValueError(f"unknown continuous variant {variant!r}")
    x = discretize(A_coeffs, nodes)
    Bs = sample_family(B_coeffs, nodes)
    Xs = sample_family(X_coeffs, nodes)
    w = x.weights
    if variant == "i":
        rec = verify_discrete_i(w, x.blocks, Bs, Xs, alpha, p, q, r, norm, tau)
    elif variant == "ii":
        rec = verify_discrete_ii(w, x.blocks, Bs, Xs, p, q, r, norm, tau)
    elif variant == "ii_q":
        rec = verify_discrete_ii_q(w, x.blocks, Bs, Xs, p, q, norm, tau)
    else:
        if len(X_coeffs) != 1:
            raise PreconditionError("variant iii needs a constant X family")
        rec = verify_discrete_iv(w, x.blocks, Bs, Xs[0], p, q, norm, tau)
    params = dict(rec.params, nodes=nodes, variant=variant)
    return VerdictRecord(f"continuous_{variant}[m={nodes}]", rec.lhs, rec.rhs, rec.gap, rec.tolerance,
                         rec.passed, params)


# -- Jensen-type norm inequalities ---------------------------------------------


def verify_jensen(As, s: float, norm: UINormSpec = TRACE_NORM, gammas=None, branch: str | None = None,
                  tau: float = TAU) -> VerdictRecord:
    """Norm Jensen inequalities for ``phi(t) = t^s`` on pointwise PSD families.

    convex (``s >= 1``, probability weights): ``|||phi(sum g A)||| <= |||sum g phi(A)|||``;
    concave (``0 < s <= 1``, unit weights):   ``|||phi(sum A)|||   <= |||sum phi(A)|||``.
    """
    if branch is None:
        branch = "convex" if s >= 1 else "concave"
    if branch == "convex":
        if s < 1:
            raise DomainError(f"convex branch needs s >= 1, got {s}", witness=s)
        if gammas is None:
            gammas = np.full(len(As), 1.0 / len(As))
        _check_probability(gammas)
    elif branch == "concave":
        if not 0 < s <= 1:
            raise DomainError(f"concave branch needs 0 < s <= 1, got {s}", witness=s)
        if gammas is not None and not np.allclose(gammas, 1.0, rtol=0, atol=0):
            raise PreconditionError("concave branch takes unit weights")
        gammas = np.ones(len(As))
    else:
        raise ValueError(f"unknown branch {branch!r}")
    As = [as_matrix(A, f"A[{i}]") for i, A in enumerate(As)]
    lhs = evaluate(norm, psd_power(_weighted_sum(gammas, As), s))
    rhs = evaluate(norm, _weighted_sum(gammas, [psd_power(A, s) for A in As]))
    params = {"s": s, "branch": branch, "d": As[0].shape[0], "m": len(As), "norm": norm}
    return scalar_verdict(f"jensen_{branch}", lhs, rhs, tau, params)


# -- weighted geometric mean ordering --------------------------------------------


def verify_seo_ordering(x: ModuleElement, A: MultiplierOperator, B: MultiplierOperator, p: float,
                        tau: float = TAU) -> VerdictRecord:
    """``<x, (B^q #_{1/p} A^p) x> <= <x, B^q x> #_{1/p} <x, A^p x>`` for PSD multipliers."""
    q = conjugate(p)
    theta = 1.0 / p
    Ap = [psd_power(a, p) for a in A.blocks]
    Bq = [psd_power(b, q) for b in B.blocks]
    C = MultiplierOperator([weighted_geometric_mean(b, a, theta).value for a, b in zip(Ap, Bq)])
    lhs = hermitian_part(inner_product(x, apply(C, x)))
    rhs = weighted_geometric_mean(inner_product(x, apply(MultiplierOperator(Bq), x)),
                                  inner_product(x, apply(MultiplierOperator(Ap), x)), theta).value
    return loewner_verdict("seo_ordering", lhs, rhs, tau, _elem_params(x, **_holder_params(p, q, theta=theta)))


def verify_superadditivity(As, Bs, p: float, gammas=None, tau: float = TAU,
                           _ineq: str = "superadditivity") -> VerdictRecord:
    """``sum g B^q #_{1/p} A^p <= (sum g B^q) #_{1/p} (sum g A^p)`` for PSD ``A_n, B_n``."""
    q = conjugate(p)
    theta = 1.0 / p
    if gammas is None:
        gammas = np.ones(len(As))
    Ap = [psd_power(a, p) for a in As]
    Bq = [psd_power(b, q) for b in Bs]
    if len(Ap) != len(Bq) or len(Ap) != len(gammas):
        raise PreconditionError("families have different lengths")
    lhs = _weighted_sum(gammas, [weighted_geometric_mean(b, a, theta).value for a, b in zip(Ap, Bq)])
    rhs = weighted_geometric_mean(_weighted_sum(gammas, Bq), _weighted_sum(gammas, Ap), theta).value
    params = _holder_params(p, q, theta=theta, d=lhs.shape[0], m=len(Ap))
    return loewner_verdict(_ineq, lhs, rhs, tau, params)


def verify_superadditivity_quadrature(FA_coeffs, FB_coeffs, nodes: int, p: float, tau: float = TAU) -> VerdictRecord:
    """Integral form on [0, 1] with ``A_t = F_t* F_t`` and ``B_t = G_t* G_t`` for
    polynomial families ``F``, ``G`` (pointwise PSD by construction).
    """
    As = [F.conj().T @ F for F in sample_family(FA_coeffs, nodes)]
    Bs = [G.conj().T @ G for G in sample_family(FB_coeffs, nodes)]
    rec = verify_superadditivity(As, Bs, p, np.full(nodes, 1.0 / nodes), tau,
                                 _ineq=f"superadditivity_quadrature[m={nodes}]")
    return VerdictRecord(rec.inequality_id, rec.lhs, rec.rhs, rec.gap, rec.tolerance, rec.passed,
                         dict(rec.params, nodes=nodes))
