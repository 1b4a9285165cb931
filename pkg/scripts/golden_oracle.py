"""Regenerate the golden fixtures in tests/fixtures with 50-digit arithmetic.

Inputs are drawn in double precision (so they round-trip through JSON
exactly); every expected value is computed here with mpmath, independently
of the library's numerics.  The library is only used to serialize inputs.

    python3 scripts/golden_oracle.py [outdir]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import mpmath as mp
import numpy as np

from opholder import codec
from opholder.harness import instance_to_json
from opholder.linalg import random_commuting_normal_family, random_matrix, random_psd
from opholder.module import ModuleElement, MultiplierOperator
from opholder.norms import KyFan, Schatten, TRACE_NORM

mp.mp.dps = 50
TAU = 1e-8


# -- 50-digit linear algebra ---------------------------------------------------


def M(a) -> mp.matrix:
    a = np.asarray(a, dtype=complex)
    return mp.matrix([[mp.mpc(z.real, z.imag) for z in row] for row in a])


def H(a):
    return a.transpose_conj()


def herm(a):
    return (a + H(a)) / 2


def to_np(a) -> np.ndarray:
    return np.array([[complex(a[i, j]) for j in range(a.cols)] for i in range(a.rows)])


def fn(a, f):
    """``f`` applied to the Hermitian matrix ``a`` (eigenvalues clipped at 0)."""
    w, Q = mp.eighe(herm(a))
    return herm(Q * mp.diag([f(max(x, 0)) for x in w]) * H(Q))


def power(a, s):
    return fn(a, lambda t: mp.mpf(1) if s == 0 else (t**s if t > 0 else mp.mpf(0)))


def modulus(a):
    return power(H(a) * a, mp.mpf(1) / 2)


def polar_u(a):
    """Unitary factor of an invertible ``a``."""
    return a * power(H(a) * a, -mp.mpf(1) / 2)


def wgm(a, b, t):
    """``a #_t b`` for invertible ``a``."""
    ah, aih = power(a, mp.mpf(1) / 2), power(a, -mp.mpf(1) / 2)
    return herm(ah * power(herm(aih * b * aih), t) * ah)


def min_eig(a):
    return min(mp.eighe(herm(a))[0])


def sigma(a):
    return sorted((mp.sqrt(max(x, 0)) for x in mp.eighe(herm(H(a) * a))[0]), reverse=True)


def norm(spec, a):
    s = sigma(a)
    if isinstance(spec, Schatten):
        return mp.fsum(x ** mp.mpf(spec.p) for x in s) ** (1 / mp.mpf(spec.p))
    if isinstance(spec, KyFan):
        return mp.fsum(s[: spec.k])
    raise TypeError(spec)


def wsum(ws, mats):
    out = mp.zeros(mats[0].rows)
    for w, a in zip(ws, mats):
        out += mp.mpf(w) * a
    return out


# -- fixture builders -------------------------------------------------------------


def value_fixture(op, inputs, params, value):
    return {"operation": op, "inputs": inputs, "params": params, "expected": {"value": codec.matrix_to_json(to_np(value))}}


def verdict(ident, inputs, params, lhs, rhs, loewner):
    if loewner:
        gap = min_eig(rhs - lhs)
        tol = TAU * (1 + max(abs(x) for x in mp.eighe(herm(rhs))[0]))
    else:
        gap = rhs - lhs
        tol = TAU * (1 + abs(rhs))
    rec = type("R", (), {"gap": float(gap), "passed": bool(gap >= -tol)})
    return instance_to_json(ident, inputs, params, TAU, rec)


def gm_fixed():
    A = np.array([[2, 1], [1, 1]], dtype=complex)
    B = np.diag([3.0, 1.0]).astype(complex)
    val = wgm(M(A), M(B), mp.mpf(1) / 2)
    return value_fixture("geometric_mean", {"A": codec.matrix_to_json(A), "B": codec.matrix_to_json(B)}, {}, val)


def wgm_random(rng):
    A, B = random_psd(3, rng), random_psd(3, rng)
    val = wgm(M(A), M(B), mp.mpf(3) / 10)
    return value_fixture("weighted_geometric_mean", {"A": codec.matrix_to_json(A), "B": codec.matrix_to_json(B)},
                         {"theta": 0.3}, val)


def wgm_singular(rng, theta):
    # rank-one A, invertible B: the regularized limit equals B #_(1-theta) A
    v = random_matrix(3, rng)[:, :1]
    A = v @ v.conj().T
    B = random_psd(3, rng)
    b, vv = M(B), M(v)
    bh, bih = power(b, mp.mpf(1) / 2), power(b, -mp.mpf(1) / 2)
    w = bih * vv
    s = 1 - mp.mpf(theta)
    val = herm(bh * w * power(H(w) * w, s - 1) * H(w) * bh)
    return value_fixture("weighted_geometric_mean", {"A": codec.matrix_to_json(A), "B": codec.matrix_to_json(B)},
                         {"theta": theta}, val)


def gram(rng, side):
    d, m = 3, 3
    w = rng.uniform(0.2, 1.0, m)
    As = [random_matrix(d, rng) for _ in range(m)]
    Xs = [random_matrix(d, rng) for _ in range(m)]
    out = mp.zeros(d)
    for g, a, x in zip(w, As, Xs):
        a, x = M(a), M(x)
        P = modulus(H(x) if side == "left" else x)
        out += mp.mpf(g) * H(a) * P * a  # h(t) = t^(1/2): h(P)^2 = P
    inputs = {"x": ModuleElement(w, As).to_json(), "T": MultiplierOperator(Xs).to_json()}
    return value_fixture("transformed_gram", inputs, {"alpha": 0.5, "side": side}, herm(out))


def cs_sharp(rng, equal=False):
    d, m = 3, 2
    w = rng.uniform(0.2, 1.0, m)
    As = [random_matrix(d, rng) for _ in range(m)]
    Bs = As if equal else [random_matrix(d, rng) for _ in range(m)]
    a, b = [M(x) for x in As], [M(x) for x in Bs]
    P = wsum(w, [H(x) * y for x, y in zip(a, b)])
    u = polar_u(P)
    Gx = herm(wsum(w, [H(x) * x for x in a]))
    Gy = herm(wsum(w, [H(y) * y for y in b]))
    lhs = modulus(P)
    rhs = wgm(herm(H(u) * Gx * u), Gy, mp.mpf(1) / 2)
    inputs = {"x": ModuleElement(w, As), "y": ModuleElement(w, Bs)}
    return verdict("cs_sharp", inputs, {"d": d, "m": m}, lhs, rhs, True)


def main_instance(rng, d, m, alpha, p, r, spec, equal=False):
    w = rng.uniform(0.2, 1.0, m)
    As = [random_matrix(d, rng) for _ in range(m)]
    Bs = As if equal else [random_matrix(d, rng) for _ in range(m)]
    Xs = [np.eye(d, dtype=complex)] * m if equal else [random_matrix(d, rng) for _ in range(m)]
    p_ = mp.mpf(p)
    q_ = p_ / (p_ - 1)
    a, b, x = [M(v) for v in As], [M(v) for v in Bs], [M(v) for v in Xs]
    P = wsum(w, [H(ai) * xi * bi for ai, xi, bi in zip(a, x, b)])
    X = herm(wsum(w, [H(ai) * power(modulus(H(xi)), 2 * mp.mpf(alpha)) * ai for ai, xi in zip(a, x)]))
    Y = herm(wsum(w, [H(bi) * power(modulus(xi), 2 * (1 - mp.mpf(alpha))) * bi for bi, xi in zip(b, x)]))
    r_ = mp.mpf(r)
    lhs = norm(spec, power(modulus(P), r_))
    rhs = norm(spec, power(X, p_ * r_ / 2)) ** (1 / p_) * norm(spec, power(Y, q_ * r_ / 2)) ** (1 / q_)
    inputs = {"x": ModuleElement(w, As), "y": ModuleElement(w, Bs), "T": MultiplierOperator(Xs)}
    params = {"d": d, "m": m, "alpha": alpha, "p": p, "r": r, "norm": spec}
    return verdict("main", inputs, params, lhs, rhs, False)


def discrete_iii_finite(rng, p, spec):
    d, m = 3, 3
    As, Bs, Xs = ([random_matrix(d, rng) for _ in range(m)] for _ in range(3))
    p_ = mp.mpf(p)
    q_ = p_ / (p_ - 1)
    a, b, x = [M(v) for v in As], [M(v) for v in Bs], [M(v) for v in Xs]
    ones = [1] * m
    S = wsum(ones, [H(ai) * xi * bi for ai, xi, bi in zip(a, x, b)])
    sup = max(sigma(xi)[0] for xi in x)
    bare = (norm(spec, herm(wsum(ones, [power(modulus(ai), p_) for ai in a]))) ** (1 / p_)
            * norm(spec, herm(wsum(ones, [power(modulus(bi), q_) for bi in b]))) ** (1 / q_) * sup)
    c = mp.mpf(m) ** abs(mp.mpf(1) / 2 - 1 / p_)
    inputs = {"As": As, "Bs": Bs, "Xs": Xs}
    return verdict("discrete_iii_finite", inputs, {"d": d, "m": m, "p": p, "norm": spec}, norm(spec, S), c * bare, False)


def discrete_v(rng, p, spec):
    d, m = 3, 3
    As = random_commuting_normal_family(d, m, rng)
    Bs = random_commuting_normal_family(d, m, rng)
    X = random_matrix(d, rng)
    p_ = mp.mpf(p)
    q_ = p_ / (p_ - 1)
    a, b, x = [M(v) for v in As], [M(v) for v in Bs], M(X)
    ones = [1] * m
    S = wsum(ones, [H(ai) * x * bi for ai, bi in zip(a, b)])
    Ap = power(herm(wsum(ones, [power(modulus(ai), p_) for ai in a])), 1 / p_)
    Bq = power(herm(wsum(ones, [power(modulus(bi), q_) for bi in b])), 1 / q_)
    c = mp.mpf(m) ** abs(mp.mpf(1) / 2 - 1 / p_)
    inputs = {"As": As, "Bs": Bs, "X": X}
    return verdict("discrete_v", inputs, {"d": d, "m": m, "p": p, "norm": spec}, norm(spec, S),
                   c * norm(spec, Ap * x * Bq), False)


def superadditivity(rng, p):
    d, m = 3, 3
    As = [random_psd(d, rng) for _ in range(m)]
    Bs = [random_psd(d, rng) for _ in range(m)]
    p_ = mp.mpf(p)
    q_ = p_ / (p_ - 1)
    Ap = [power(M(v), p_) for v in As]
    Bq = [power(M(v), q_) for v in Bs]
    ones = [1] * m
    lhs = herm(wsum(ones, [wgm(bq, ap, 1 / p_) for ap, bq in zip(Ap, Bq)]))
    rhs = wgm(herm(wsum(ones, Bq)), herm(wsum(ones, Ap)), 1 / p_)
    return verdict("superadditivity", {"As": As, "Bs": Bs}, {"d": d, "m": m, "p": p}, lhs, rhs, True)


def jensen_convex(rng, s, spec):
    d, m = 3, 3
    As = [random_psd(d, rng) for _ in range(m)]
    w = rng.uniform(0.2, 1.0, m)
    w = w / w.sum()
    a = [M(v) for v in As]
    s_ = mp.mpf(s)
    lhs = norm(spec, power(herm(wsum(w, a)), s_))
    rhs = norm(spec, herm(wsum(w, [power(v, s_) for v in a])))
    return verdict("jensen_convex", {"As": As, "gammas": w}, {"d": d, "m": m, "p": s, "norm": spec}, lhs, rhs, False)


def build(outdir: Path):
    rng = np.random.default_rng(20240601)
    fixtures = {
        "gm_2x2.json": gm_fixed(),
        "wgm_random_theta03.json": wgm_random(rng),
        "wgm_singular_theta05.json": wgm_singular(rng, 0.5),
        "wgm_singular_theta025.json": wgm_singular(rng, 0.25),
        "gram_right_alpha05.json": gram(rng, "right"),
        "gram_left_alpha05.json": gram(rng, "left"),
        "cs_sharp_random.json": cs_sharp(rng),
        "cs_sharp_equality.json": cs_sharp(rng, equal=True),
        "main_random.json": main_instance(rng, 3, 3, 0.25, 3.0, 2.0, Schatten(3)),
        "main_random_trace.json": main_instance(rng, 2, 4, 0.75, 1.5, 1.0, TRACE_NORM),
        "main_scalar_equality.json": main_instance(rng, 1, 3, 0.5, 2.0, 1.0, TRACE_NORM, equal=True),
        "discrete_iii_finite_random.json": discrete_iii_finite(rng, 4.0, KyFan(2)),
        "discrete_v_random.json": discrete_v(rng, 3.0, Schatten(2)),
        "superadditivity_random.json": superadditivity(rng, 3.0),
        "jensen_convex_random.json": jensen_convex(rng, 2.0, Schatten(1.5)),
    }
    outdir.mkdir(parents=True, exist_ok=True)
    for name, obj in fixtures.items():
        (outdir / name).write_text(json.dumps(obj, indent=1) + "\n")
        print(name)


if __name__ == "__main__":
    build(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "fixtures")
