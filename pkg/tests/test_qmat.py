"""Matrix layer: product/adjoint laws, symplectic and skew-Hermitian
validation, bracket identities, Vec10 coordinates, and the rank engines
checked against sympy (exact) and numpy (float) oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings

from conftest import exact_quats
from sp2span.qmat import (
    InvariantViolation,
    QMat2,
    ShapeMismatch,
    Sp2Alg,
    Sp2Point,
    ad,
    bracket,
    diag,
    from_vec10,
    identity,
    inner,
    qmat_inverse,
    real_rank,
    to_vec10,
    vec10_weighted_dot,
)
from sp2span.quat import EXACT, FLOAT, ZeroDivisor, one, qi, qj, qk, quat, zero

exact_mats = exact_quats.flatmap(
    lambda a: exact_quats.flatmap(
        lambda b: exact_quats.flatmap(lambda c: exact_quats.map(lambda d: QMat2(a, b, c, d)))
    )
)


def rng_frac(g: random.Random) -> Fraction:
    return Fraction(g.randint(-6, 6), g.randint(1, 8))


def rng_quat(g: random.Random):
    return quat(rng_frac(g), rng_frac(g), rng_frac(g), rng_frac(g), backend=EXACT)


def rng_alg(g: random.Random) -> Sp2Alg:
    """Random exact skew-Hermitian matrix: imaginary diagonal, free corner."""
    za = quat(Fraction(0), rng_frac(g), rng_frac(g), rng_frac(g), backend=EXACT)
    zc = quat(Fraction(0), rng_frac(g), rng_frac(g), rng_frac(g), backend=EXACT)
    b = rng_quat(g)
    return Sp2Alg(QMat2(za, b, -b.conj(), zc))


# -- product and adjoint ---------------------------------------------------------


@given(exact_mats, exact_mats, exact_mats)
@settings(max_examples=60)
def test_matmul_associative(m, n, p):
    assert ((m @ n) @ p).approx_eq(m @ (n @ p), 0)


@given(exact_mats, exact_mats)
@settings(max_examples=60)
def test_adjoint_antihomomorphism(m, n):
    assert (m @ n).adjoint().approx_eq(n.adjoint() @ m.adjoint(), 0)


@given(exact_mats, exact_mats)
@settings(max_examples=60)
def test_real_trace_is_cyclic(m, n):
    # Full quaternionic traces do not commute, their real parts do.
    assert (m @ n).trace().real_part() == (n @ m).trace().real_part()


@given(exact_mats)
@settings(max_examples=60)
def test_left_mul_is_scalar_matrix_product(m):
    q = quat(Fraction(2), Fraction(-1), Fraction(0), Fraction(3), backend=EXACT)
    assert m.left_mul(q).approx_eq(diag(q, q) @ m, 0)


def test_shape_mismatch_on_backend_cross():
    me = identity(EXACT)
    mf = identity(FLOAT)
    with pytest.raises(Exception) as err:
        me @ mf
    assert err.type.__name__ in ("BackendMismatch", "ShapeMismatch")


# -- inverse ----------------------------------------------------------------------


@given(exact_mats)
@settings(max_examples=80)
def test_qmat_inverse(m):
    try:
        inv = qmat_inverse(m)
    except ZeroDivisor:
        return
    assert (m @ inv).approx_eq(identity(EXACT), 0)
    assert (inv @ m).approx_eq(identity(EXACT), 0)


def test_qmat_inverse_antidiagonal():
    m = QMat2(zero(EXACT), qi(EXACT), qj(EXACT), zero(EXACT))
    inv = qmat_inverse(m)
    assert (m @ inv).approx_eq(identity(EXACT), 0)


def test_qmat_inverse_singular_raises():
    q = quat(Fraction(1), Fraction(2), backend=EXACT)
    m = QMat2(q, q, q, q)
    with pytest.raises(ZeroDivisor):
        qmat_inverse(m)


# -- wrappers ---------------------------------------------------------------------


def test_sp2point_validates():
    g = random.Random(11)
    u = rng_alg(g)
    from sp2span.bundle import cayley_sp2

    p = cayley_sp2(u)
    assert (p.m @ p.m.adjoint()).approx_eq(identity(EXACT), 0)
    bad = QMat2(p.m.a + one(EXACT), p.m.b, p.m.c, p.m.d)
    with pytest.raises(InvariantViolation):
        Sp2Point(bad)


def test_sp2alg_validates():
    with pytest.raises(InvariantViolation):
        Sp2Alg(identity(EXACT))
    Sp2Alg(QMat2(qi(EXACT), zero(EXACT), zero(EXACT), qk(EXACT)))


# -- bracket and ad ----------------------------------------------------------------


def test_bracket_antisymmetric_and_jacobi():
    g = random.Random(7)
    for _ in range(20):
        u, v, w = rng_alg(g), rng_alg(g), rng_alg(g)
        assert bracket(u, v).m.approx_eq(-bracket(v, u).m, 0)
        jac = (
            bracket(Sp2Alg(bracket(u, v).m, validate=False), w).m
            + bracket(Sp2Alg(bracket(v, w).m, validate=False), u).m
            + bracket(Sp2Alg(bracket(w, u).m, validate=False), v).m
        )
        assert jac.max_abs() == 0


def test_ad_is_lie_algebra_automorphism():
    g = random.Random(13)
    from sp2span.bundle import cayley_sp2

    for _ in range(10):
        p = cayley_sp2(rng_alg(g))
        u, v = rng_alg(g), rng_alg(g)
        lhs = ad(p, Sp2Alg(bracket(u, v).m, validate=False))
        rhs = bracket(
            Sp2Alg(ad(p, u).m, validate=False), Sp2Alg(ad(p, v).m, validate=False)
        )
        assert lhs.m.approx_eq(rhs.m, 0)
        # ad preserves skew-Hermitian: constructing with validation passes.
        Sp2Alg(ad(p, u).m)


def test_inner_matches_weighted_vec10_dot():
    g = random.Random(17)
    for _ in range(20):
        u, v = rng_alg(g), rng_alg(g)
        assert inner(u, v) == vec10_weighted_dot(to_vec10(u), to_vec10(v))


def test_vec10_round_trip():
    g = random.Random(19)
    for _ in range(20):
        u = rng_alg(g)
        assert from_vec10(to_vec10(u)).m.approx_eq(u.m, 0)


def test_vec10_slot_order():
    a = quat(Fraction(0), Fraction(1), Fraction(2), Fraction(3), backend=EXACT)
    b = quat(Fraction(4), Fraction(5), Fraction(6), Fraction(7), backend=EXACT)
    d = quat(Fraction(0), Fraction(8), Fraction(9), Fraction(10), backend=EXACT)
    u = Sp2Alg(QMat2(a, b, -b.conj(), d))
    assert to_vec10(u) == tuple(Fraction(n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10))


def test_from_vec10_rejects_wrong_length():
    with pytest.raises(ShapeMismatch):
        from_vec10([Fraction(0)] * 9)


# -- rank engines -----------------------------------------------------------------


def _planted_vectors(g: random.Random, k: int, extra: int, backend: str):
    """k independent exact Vec10 rows plus `extra` random rational
    combinations of them; sympy certifies independence of the seed rows."""
    while True:
        base = [[rng_frac(g) for _ in range(10)] for _ in range(k)]
        if sympy.Matrix(base).rank() == k:
            break
    rows = [list(r) for r in base]
    for _ in range(extra):
        coeffs = [rng_frac(g) for _ in range(k)]
        rows.append([sum(c * base[j][t] for j, c in enumerate(coeffs)) for t in range(10)])
    g.shuffle(rows)
    if backend == FLOAT:
        rows = [[float(x) for x in r] for r in rows]
    return rows


@pytest.mark.parametrize("k", [1, 2, 3, 5, 7, 9, 10])
def test_exact_rank_matches_sympy(k):
    g = random.Random(100 + k)
    rows = _planted_vectors(g, k, extra=3, backend=EXACT)
    res = real_rank(rows)
    assert res.rank == sympy.Matrix(rows).rank() == k
    assert res.method == "bareiss"
    # Bareiss pivots on cleared-denominator rows are integers.
    assert all(p == int(p) for p in res.pivots)


@pytest.mark.parametrize("k", [1, 2, 4, 6, 8, 10])
def test_float_rank_matches_numpy(k):
    g = random.Random(200 + k)
    rows = _planted_vectors(g, k, extra=3, backend=FLOAT)
    res = real_rank(rows, tol=1e-9)
    assert res.rank == np.linalg.matrix_rank(np.array(rows), tol=1e-9) == k
    assert res.method == "pivoted-ge"
    if k == 10:
        assert res.min_rel_pivot is not None and res.min_rel_pivot > 0


def test_rank_invariant_under_row_ops():
    g = random.Random(33)
    rows = _planted_vectors(g, 6, extra=2, backend=EXACT)
    base = real_rank(rows).rank
    shuffled = list(rows)
    random.Random(5).shuffle(shuffled)
    scaled = [[x * Fraction(7, 3) for x in r] for r in shuffled]
    assert real_rank(scaled).rank == base


def test_rank_of_zero_and_empty():
    assert real_rank([[Fraction(0)] * 10]).rank == 0
    assert real_rank([]).rank == 0


def test_float_rank_scale_invariance():
    # Equilibration keeps wildly scaled but independent rows at full rank.
    g = random.Random(44)
    rows = _planted_vectors(g, 10, extra=0, backend=FLOAT)
    scaled = [[x * (10.0 ** (idx - 5)) for x in r] for idx, r in enumerate(rows)]
    assert real_rank(scaled, tol=1e-9).rank == 10
