import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opholder import verifiers as V
from opholder.errors import DomainError, PreconditionError
from opholder.linalg import op_norm, random_commuting_normal_family, random_matrix, random_psd
from opholder.module import ModuleElement, MultiplierOperator, inner_product
from opholder.norms import KyFan, QNorm, Schatten, catalog

seeds = st.integers(0, 2**32 - 1)
ps = st.sampled_from([1.25, 1.5, 2.0, 3.0, 4.0, 7.0])
alphas = st.floats(0, 1)
I2 = np.eye(2, dtype=complex)


def rng_of(seed):
    return np.random.default_rng(seed)


def elem(rng, d, m, w=None, singular=False):
    blocks = []
    for _ in range(m):
        M = random_matrix(d, rng)
        if singular and d > 1:
            M = M @ random_psd(d, rng, rank=1)
        blocks.append(M)
    return ModuleElement(rng.uniform(0.2, 1, m) if w is None else w, blocks)


def scalars(vals):
    return [[[complex(v)]] for v in vals]


def norms_for(d):
    return st.sampled_from(catalog(d))


# -- records -----------------------------------------------------------------------


def test_record_json_shape():
    rec = V.verify_main(ModuleElement([1, 1], scalars([3, 4])), ModuleElement([1, 1], scalars([3, 4])),
                        MultiplierOperator.identity(1, 2), 0.5, 2.0)
    obj = json.loads(json.dumps(rec.to_json()))
    assert set(obj) == {"inequality_id", "lhs", "rhs", "gap", "tolerance", "pass", "params", "seed"}
    assert obj["params"]["norm"] == {"kind": "schatten", "p": 1.0}
    assert abs(obj["params"]["conjugate_sum"] - 1) <= 1e-12


def test_tolerance_policy():
    rec = V.scalar_verdict("x", 1.0 + 1.5e-8, 1.0, 1e-8, {})
    assert rec.tolerance == pytest.approx(2e-8) and rec.passed
    rec = V.scalar_verdict("x", 1.0 + 3e-8, 1.0, 1e-8, {})
    assert not rec.passed
    rec = V.loewner_verdict("x", np.diag([1.0, 2.0]), np.diag([1.0, 1.0]), 1e-8, {})
    assert rec.gap == pytest.approx(-1.0) and not rec.passed


def test_conjugate_validation():
    assert V.conjugate(3.0) == pytest.approx(1.5)
    with pytest.raises(PreconditionError):
        V.conjugate(1.0)
    with pytest.raises(PreconditionError):
        V.conjugate(2.0, 3.0)


# -- Cauchy-Schwarz ----------------------------------------------------------------


def test_cs_sharp_equality_at_x_equals_y():
    x = elem(rng_of(1), 3, 3)
    rec = V.verify_cs_sharp(x, x)
    assert abs(rec.gap) <= 1e-9 * (1 + op_norm(rec.rhs))


@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False), min_size=1, max_size=5), st.data())
def test_cs_sharp_scalar(a, data):
    b = data.draw(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False), min_size=len(a), max_size=len(a)))
    g = data.draw(st.lists(st.floats(0.1, 2), min_size=len(a), max_size=len(a)))
    rec = V.verify_cs_sharp(ModuleElement(g, scalars(a)), ModuleElement(g, scalars(b)))
    X = sum(w * abs(v) ** 2 for w, v in zip(g, a))
    Y = sum(w * abs(v) ** 2 for w, v in zip(g, b))
    P = abs(sum(w * u.conjugate() * v for w, u, v in zip(g, a, b)))
    assert rec.gap == pytest.approx(math.sqrt(X * Y) - P, abs=1e-12 * (1 + X + Y))
    assert rec.passed


@given(seeds, st.integers(1, 4), st.integers(1, 5), st.booleans())
def test_cs_sharp_random(seed, d, m, singular):
    rng = rng_of(seed)
    x = elem(rng, d, m, singular=singular)
    rec = V.verify_cs_sharp(x, elem(rng, d, m, x.weights, singular=singular))
    assert rec.passed and rec.gap >= -1e-8


@given(seeds, st.integers(1, 4), st.integers(1, 5))
def test_weighted_cs_identity_is_cs_sharp(seed, d, m):
    rng = rng_of(seed)
    x = elem(rng, d, m)
    y = elem(rng, d, m, x.weights)
    a = V.verify_weighted_cs(x, y, MultiplierOperator.identity(d, m), 0.5)
    b = V.verify_cs_sharp(x, y)
    assert abs(a.gap - b.gap) <= 1e-10


def test_weighted_cs_scalar():
    g, a, xv, b = [0.5, 1.0], [1 + 1j, 2], [3, -1j], [0.5, 4]
    rec = V.verify_weighted_cs(ModuleElement(g, scalars(a)), ModuleElement(g, scalars(b)),
                               MultiplierOperator(scalars(xv)), 0.5)
    lhs = abs(sum(w * u.conjugate() * t * v for w, u, t, v in zip(g, a, xv, b)))
    rhs = math.sqrt(sum(w * abs(t) * abs(u) ** 2 for w, u, t in zip(g, a, xv))
                    * sum(w * abs(t) * abs(v) ** 2 for w, v, t in zip(g, b, xv)))
    assert rec.gap == pytest.approx(rhs - lhs, abs=1e-12)


@given(seeds, st.integers(1, 4), st.integers(1, 5), alphas)
def test_weighted_cs_singular_blocks(seed, d, m, alpha):
    rng = rng_of(seed)
    x = elem(rng, d, m)
    y = elem(rng, d, m, x.weights)
    T = MultiplierOperator(elem(rng, d, m, singular=True).blocks)
    assert V.verify_weighted_cs(x, y, T, alpha).gap >= -1e-8
    assert V.block_conjugation_certificate(x, y, T, alpha).min_eigenvalue >= -1e-8


def test_weighted_cs_custom_pair():
    rng = rng_of(3)
    x = elem(rng, 2, 2)
    y = elem(rng, 2, 2, x.weights)
    T = MultiplierOperator(elem(rng, 2, 2).blocks)
    pair = (lambda t: math.sqrt(t) * math.exp(t / 4), lambda t: math.sqrt(t) * math.exp(-t / 4))
    rec = V.verify_weighted_cs(x, y, T, pair=pair)
    assert rec.passed and rec.params["alpha"] is None
    with pytest.raises(PreconditionError):
        V.verify_weighted_cs(x, y, T, pair=(lambda t: t, lambda t: t))


# -- Horn-Mathias and the main inequality --------------------------------------


@pytest.mark.parametrize("norm", catalog(2))
def test_horn_mathias_identity_equality(norm):
    rec = V.verify_horn_mathias(I2, I2, I2, 2.0, r=2.0, norm=norm)
    assert abs(rec.gap) <= 1e-12


def test_horn_mathias_scalar():
    a, b, x = 4.0, 9.0, 5.0  # |x|^2 <= ab
    rec = V.verify_horn_mathias([[a]], [[b]], [[x]], 3.0, r=1.0)
    assert rec.lhs == pytest.approx(5.0) and rec.rhs == pytest.approx(6.0)


@given(seeds, st.integers(1, 4), ps, st.sampled_from([0.5, 1, 2, 3]), st.data())
def test_horn_mathias_random(seed, d, p, r, data):
    rng = rng_of(seed)
    A, B = random_psd(d, rng), random_psd(d, rng)
    C = random_matrix(d, rng)
    X = V.horn_mathias_instance(A, B, C / op_norm(C))
    assert V.verify_horn_mathias(A, B, X, p, r=r, norm=data.draw(norms_for(d))).gap >= -1e-8


def test_horn_mathias_rejects_non_psd_block():
    with pytest.raises(PreconditionError):
        V.verify_horn_mathias(I2, I2, 2 * I2, 2.0)


def test_main_scalar_equality():
    a = ModuleElement([1, 1], scalars([3, 4]))
    rec = V.verify_main(a, a, MultiplierOperator.identity(1, 2), 0.5, 2.0, r=1.0)
    assert rec.lhs == pytest.approx(25) and rec.rhs == pytest.approx(25)
    assert abs(rec.gap) <= 1e-12


def test_main_identity_equality():
    x = elem(rng_of(4), 3, 3)
    rec = V.verify_main(x, x, MultiplierOperator.identity(3, 3), 0.5, 2.0, r=2.0, norm=Schatten(2))
    G = inner_product(x, x)
    assert rec.lhs == pytest.approx(np.linalg.norm(G @ G), rel=1e-12)
    assert abs(rec.gap) <= 1e-9 * (1 + rec.rhs)


@given(seeds, st.integers(1, 4), st.integers(1, 5), alphas, ps, st.sampled_from([0.5, 1, 2, 3]), st.data())
def test_main_random(seed, d, m, alpha, p, r, data):
    rng = rng_of(seed)
    x = elem(rng, d, m)
    y = elem(rng, d, m, x.weights)
    T = MultiplierOperator(elem(rng, d, m, singular=True).blocks)
    rec = V.verify_main(x, y, T, alpha, p, r=r, norm=data.draw(norms_for(d)))
    assert rec.passed


@given(seeds, st.integers(1, 3), st.integers(1, 4), alphas, ps)
def test_discrete_i_is_main_on_packed_inputs(seed, d, m, alpha, p):
    rng = rng_of(seed)
    g = rng.uniform(0.2, 1, m)
    As, Bs, Xs = ([random_matrix(d, rng) for _ in range(m)] for _ in range(3))
    a = V.verify_discrete_i(g, As, Bs, Xs, alpha, p, r=2.0, norm=KyFan(1))
    b = V.verify_main(ModuleElement(g, As), ModuleElement(g, Bs), MultiplierOperator(Xs), alpha, p, r=2.0,
                      norm=KyFan(1))
    assert a.inequality_id == "discrete_i"
    assert abs(a.gap - b.gap) <= 1e-12


def test_main_rejects_bad_exponents():
    x = elem(rng_of(5), 2, 2)
    with pytest.raises(PreconditionError):
        V.verify_main(x, x, MultiplierOperator.identity(2, 2), 0.5, 0.5)
    with pytest.raises(PreconditionError):
        V.verify_main(x, x, MultiplierOperator.identity(2, 2), 0.5, 2.0, r=0.0)
    with pytest.raises(DomainError):
        V.verify_main(x, x, MultiplierOperator.identity(2, 2), 1.5, 2.0)


# -- discrete corollaries ------------------------------------------------------------


def test_discrete_ii_single_term_equality():
    rec = V.verify_discrete_ii([1.0], [I2], [I2], [I2], 3.0, r=2.0, norm=KyFan(1))
    assert rec.lhs == pytest.approx(1) and rec.rhs == pytest.approx(1)


def test_discrete_ii_scalar():
    g, a, b, x = [0.25, 0.75], [1, 2j], [3, 1], [0.5, -2]
    p, r = 3.0, 2.0
    q = 1.5
    rec = V.verify_discrete_ii(g, scalars(a), scalars(b), scalars(x), p, r=r)
    lhs = abs(sum(w * u.conjugate() * t * v for w, u, t, v in zip(g, a, x, b))) ** r
    rhs = (sum(w * abs(u) ** (p * r) for w, u in zip(g, a)) ** (1 / p)
           * sum(w * abs(v) ** (q * r) for w, v in zip(g, b)) ** (1 / q) * 2**r)
    assert (rec.lhs, rec.rhs) == pytest.approx((lhs, rhs), rel=1e-12)


@given(seeds, st.integers(1, 4), st.integers(1, 6), ps, st.sampled_from([2.0, 3.0]), st.data())
def test_discrete_ii_random(seed, d, m, p, r, data):
    rng = rng_of(seed)
    g = rng.uniform(0.2, 1, m)
    g /= g.sum()
    As, Bs, Xs = ([random_matrix(d, rng) for _ in range(m)] for _ in range(3))
    assert V.verify_discrete_ii(g, As, Bs, Xs, p, r=r, norm=data.draw(norms_for(d))).passed
    qn = data.draw(st.sampled_from([QNorm(Schatten(1)), QNorm(Schatten(2)), Schatten(2), Schatten(4)]))
    assert V.verify_discrete_ii_q(g, As, Bs, Xs, p, norm=qn).passed


def test_discrete_ii_preconditions():
    with pytest.raises(PreconditionError):
        V.verify_discrete_ii([1.0], [I2], [I2], [I2], 2.0, r=1.0)
    with pytest.raises(PreconditionError):
        V.verify_discrete_ii([0.5], [I2], [I2], [I2], 2.0, r=2.0)
    with pytest.raises(PreconditionError):
        V.verify_discrete_ii_q([1.0], [I2], [I2], [I2], 2.0, norm=Schatten(1))


def test_discrete_iii_single_term_and_p2():
    assert abs(V.verify_discrete_iii([1.0], [I2], [I2], [I2], 2.0).gap) <= 1e-12
    rec = V.verify_discrete_iii_finite([I2], [I2], [I2], 2.0)
    assert rec.params["constant"] == 1.0 and abs(rec.gap) <= 1e-12


@given(seeds, st.integers(1, 4), st.integers(1, 6), st.sampled_from([2.0, 3.0, 4.0, 8.0]), st.data())
def test_discrete_iii_random(seed, d, m, p, data):
    rng = rng_of(seed)
    g = rng.uniform(0.2, 1, m)
    g /= g.sum() * data.draw(st.sampled_from([1.0, 1.5]))
    As, Bs, Xs = ([random_matrix(d, rng) for _ in range(m)] for _ in range(3))
    norm = data.draw(norms_for(d))
    assert V.verify_discrete_iii(g, As, Bs, Xs, p, norm=norm).passed
    rec = V.verify_discrete_iii_finite(As, Bs, Xs, p, norm=norm)
    assert rec.passed
    assert rec.params["constant"] == pytest.approx(m ** abs(0.5 - 1 / p))


def test_discrete_iii_preconditions():
    with pytest.raises(PreconditionError):
        V.verify_discrete_iii([1.0], [I2], [I2], [I2], 1.5)
    with pytest.raises(PreconditionError):
        V.verify_discrete_iii([0.7, 0.7], [I2, I2], [I2, I2], [I2, I2], 2.0)
    with pytest.raises(PreconditionError):
        V.verify_discrete_iii_finite([I2], [I2], [I2], 1.5)


def test_discrete_iv_identity_families():
    X = random_matrix(3, 6)
    g = [0.3, 0.5, 0.9]
    I = np.eye(3)
    rec = V.verify_discrete_iv(g, [I] * 3, [I] * 3, X, 3.0, norm=QNorm(Schatten(1)))
    assert rec.lhs == pytest.approx(rec.rhs, rel=1e-12)
    assert abs(rec.gap) <= 1e-9 * (1 + rec.rhs)


def test_discrete_iv_scalar():
    g, a, b, x = [0.5, 2.0], [1j, 2], [3, 1 - 1j], 0.7
    rec = V.verify_discrete_iv(g, scalars(a), scalars(b), [[x]], 3.0, norm=Schatten(2))
    lhs = abs(sum(w * u.conjugate() * x * v for w, u, v in zip(g, a, b)))
    rhs = (sum(w * abs(u) ** 3 for w, u in zip(g, a)) ** (1 / 3) * x
           * sum(w * abs(v) ** 1.5 for w, v in zip(g, b)) ** (1 / 1.5))
    assert (rec.lhs, rec.rhs) == pytest.approx((lhs, rhs), rel=1e-12)


@given(seeds, st.integers(1, 4), st.integers(1, 6), ps, st.data())
def test_discrete_iv_v_random(seed, d, m, p, data):
    rng = rng_of(seed)
    As = random_commuting_normal_family(d, m, rng)
    Bs = random_commuting_normal_family(d, m, rng)
    X = random_matrix(d, rng)
    g = rng.uniform(0.2, 1, m)
    qn = data.draw(st.sampled_from([QNorm(Schatten(1)), QNorm(Schatten(2)), Schatten(3)]))
    assert V.verify_discrete_iv(g, As, Bs, X, p, norm=qn).passed
    rec = V.verify_discrete_v(As, Bs, X, p, norm=data.draw(norms_for(d)))
    assert rec.passed
    assert rec.params["constant"] == pytest.approx(m ** abs(0.5 - 1 / p))


def test_discrete_v_constants():
    rng = rng_of(7)
    As = random_commuting_normal_family(2, 4, rng)
    Bs = random_commuting_normal_family(2, 4, rng)
    assert V.verify_discrete_v(As, Bs, I2, 2.0).params["constant"] == 1.0
    assert V.verify_discrete_v(As[:1], Bs[:1], I2, 3.0).params["constant"] == 1.0


def test_discrete_v_rejects_non_commuting():
    with pytest.raises(PreconditionError):
        V.verify_discrete_v([np.diag([1.0, 2.0]), np.array([[0, 1], [1, 0]])], [I2, I2], I2, 2.0)


# -- continuous --------------------------------------------------------------------


def test_continuous_constant_family_is_single_block():
    A = random_matrix(2, 8)
    B = random_matrix(2, 9)
    rec = V.verify_continuous([A], [B], [I2], 4, "ii", 3.0, r=2.0)
    one = V.verify_discrete_ii([1.0], [A], [B], [I2], 3.0, r=2.0)
    assert rec.inequality_id == "continuous_ii[m=4]"
    assert rec.gap == pytest.approx(one.gap, rel=1e-10)


@given(seeds, st.integers(1, 3), st.sampled_from(["i", "ii", "ii_q"]))
def test_continuous_node_refinement(seed, d, variant):
    rng = rng_of(seed)
    C = [[random_matrix(d, rng) for _ in range(2)] for _ in range(3)]
    for nodes in (8, 16):
        rec = V.verify_continuous(*C, nodes, variant, 3.0, r=2.0, norm=Schatten(2))
        assert rec.passed and rec.params["nodes"] == nodes


@given(seeds, st.integers(1, 3))
def test_continuous_iii_commuting(seed, d):
    rng = rng_of(seed)
    fam = random_commuting_normal_family(d, 6, rng)
    rec = V.verify_continuous(fam[:3], fam[3:], [random_matrix(d, rng)], 8, "iii", 3.0, norm=QNorm(Schatten(2)))
    assert rec.passed
    with pytest.raises(PreconditionError):
        V.verify_continuous(fam[:3], fam[3:], fam[:2], 8, "iii", 3.0, norm=QNorm(Schatten(2)))


# -- Jensen --------------------------------------------------------------------------


def test_jensen_linear_is_equality():
    As = [random_psd(3, s) for s in range(3)]
    for branch in ("convex", "concave"):
        assert abs(V.verify_jensen(As, 1.0, branch=branch).gap) <= 1e-12


def test_jensen_constant_family():
    A = random_psd(3, 4)
    assert abs(V.verify_jensen([A] * 3, 3.0, Schatten(2)).gap) <= 1e-12


@given(seeds, st.integers(1, 4), st.integers(1, 6), st.data())
def test_jensen_random(seed, d, m, data):
    rng = rng_of(seed)
    As = [random_psd(d, rng, rank=int(rng.integers(1, d + 1))) for _ in range(m)]
    norm = data.draw(norms_for(d))
    assert V.verify_jensen(As, data.draw(st.floats(1, 4)), norm).passed
    assert V.verify_jensen(As, data.draw(st.floats(0.05, 1)), norm, branch="concave").passed


def test_jensen_bad_exponent():
    with pytest.raises(DomainError):
        V.verify_jensen([I2], 0.5, branch="convex")
    with pytest.raises(DomainError):
        V.verify_jensen([I2], 2.0, branch="concave")


# -- weighted mean ordering ---------------------------------------------------------


def test_seo_single_block_equality():
    A, B = random_psd(2, 1), random_psd(2, 2)
    rec = V.verify_seo_ordering(ModuleElement([1.0], [I2]), MultiplierOperator([A]), MultiplierOperator([B]), 3.0)
    assert abs(rec.gap) <= 1e-9


def test_seo_scalar():
    c, a, b = [1, 2j], [0.5, 2.0], [3.0, 1.0]
    p, q = 2.0, 2.0
    rec = V.verify_seo_ordering(ModuleElement([1, 1], scalars(c)), MultiplierOperator(scalars(a)),
                                MultiplierOperator(scalars(b)), p)
    lhs = sum(abs(u) ** 2 * s * t for u, s, t in zip(c, a, b))
    rhs = math.sqrt(sum(abs(u) ** 2 * t**q for u, t in zip(c, b)) * sum(abs(u) ** 2 * s**p for u, s in zip(c, a)))
    assert rec.gap == pytest.approx(rhs - lhs, abs=1e-12)


@given(seeds, st.integers(1, 3), st.integers(1, 4), ps)
def test_seo_random(seed, d, m, p):
    rng = rng_of(seed)
    x = elem(rng, d, m)
    A = MultiplierOperator([random_psd(d, rng) for _ in range(m)])
    B = MultiplierOperator([random_psd(d, rng, rank=1) for _ in range(m)])
    assert V.verify_seo_ordering(x, A, B, p).passed


def test_superadditivity_single_and_scalar():
    A, B = random_psd(3, 3), random_psd(3, 4)
    assert abs(V.verify_superadditivity([A], [B], 3.0).gap) <= 1e-9
    a, b = [1.0, 2.0, 0.5], [3.0, 0.1, 1.0]
    rec = V.verify_superadditivity(scalars(a), scalars(b), 2.0)
    want = math.sqrt(sum(t * t for t in b) * sum(s * s for s in a)) - sum(s * t for s, t in zip(a, b))
    assert rec.gap == pytest.approx(want, abs=1e-12)


@given(seeds, st.integers(1, 4), st.integers(1, 5), ps)
def test_superadditivity_random(seed, d, m, p):
    rng = rng_of(seed)
    As = [random_psd(d, rng, rank=int(rng.integers(1, d + 1))) for _ in range(m)]
    Bs = [random_psd(d, rng, rank=int(rng.integers(1, d + 1))) for _ in range(m)]
    assert V.verify_superadditivity(As, Bs, p).passed


def test_superadditivity_quadrature():
    rng = rng_of(9)
    F = [random_matrix(3, rng) for _ in range(2)]
    G = [random_matrix(3, rng) for _ in range(2)]
    for nodes in (4, 8):
        rec = V.verify_superadditivity_quadrature(F, G, nodes, 3.0)
        assert rec.passed and rec.inequality_id == f"superadditivity_quadrature[m={nodes}]"
