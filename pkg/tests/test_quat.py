"""Quaternion arithmetic against an independent 4x4 real-matrix model, plus
backend discipline, normalization into span{1, i}, and JSON round-trips."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import (
    exact_quats,
    float_quats,
    left_mult_matrix,
    mat_vec,
    nonzero_exact_quats,
    quat_close,
)
from sp2span.quat import (
    EXACT,
    FLOAT,
    BackendMismatch,
    NotRepresentable,
    ParseError,
    ZeroDivisor,
    dot,
    imaginary_units,
    one,
    qi,
    qj,
    qk,
    quat,
    quat_from_json,
    quat_to_json,
    rotate_to_complex,
    to_backend,
    zero,
)


# -- product model ---------------------------------------------------------------


def test_unit_table():
    i, j, k = imaginary_units(EXACT)
    e = one(EXACT)
    assert i * i == -e and j * j == -e and k * k == -e
    assert i * j == k and j * k == i and k * i == j
    assert j * i == -k and k * j == -i and i * k == -j


@given(exact_quats, exact_quats)
def test_product_matches_matrix_model(q, r):
    got = (q * r).components()
    want = mat_vec(left_mult_matrix(q), list(r.components()))
    assert list(got) == want


@given(exact_quats, exact_quats, exact_quats)
def test_associative_and_distributive(q, r, s):
    assert (q * r) * s == q * (r * s)
    assert q * (r + s) == q * r + q * s


@given(exact_quats, exact_quats)
def test_conj_antihomomorphism(q, r):
    assert (q * r).conj() == r.conj() * q.conj()


@given(exact_quats, exact_quats)
def test_norm_multiplicative(q, r):
    assert (q * r).norm_sq() == q.norm_sq() * r.norm_sq()


@given(exact_quats)
def test_conj_recovers_norm(q):
    n = q * q.conj()
    assert n.is_real() and n.h0 == q.norm_sq()


@given(nonzero_exact_quats)
def test_inverse(q):
    assert q * q.inverse() == one(EXACT)
    assert q.inverse() * q == one(EXACT)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisor):
        zero(EXACT).inverse()
    with pytest.raises(ZeroDivisor):
        zero(FLOAT).inverse()


@given(float_quats, float_quats)
def test_float_product_matches_matrix_model(q, r):
    got = (q * r).components()
    want = mat_vec(left_mult_matrix(q), list(r.components()))
    assert all(abs(g - w) <= 1e-12 for g, w in zip(got, want))


# -- backend discipline ----------------------------------------------------------


def test_backend_mixing_raises():
    qe = quat(Fraction(1), backend=EXACT)
    qf = quat(1.0)
    with pytest.raises(BackendMismatch):
        qe * qf
    with pytest.raises(BackendMismatch):
        qe + qf
    with pytest.raises(BackendMismatch):
        dot(qe, qf)


def test_to_backend():
    qe = quat(Fraction(1, 4), Fraction(-3), backend=EXACT)
    qf = to_backend(qe, FLOAT)
    assert qf.backend == FLOAT and qf.h0 == 0.25 and qf.h1 == -3.0
    back = to_backend(qf, EXACT)
    assert back.backend == EXACT and back == qe


def test_predicates():
    assert quat(Fraction(2), backend=EXACT).is_real()
    assert quat(Fraction(0), Fraction(1), Fraction(0), Fraction(0), backend=EXACT).is_imaginary()
    assert quat(Fraction(1), Fraction(2), backend=EXACT).is_complex()
    assert not quat(Fraction(1), Fraction(0), Fraction(3), backend=EXACT).is_complex()
    assert quat(1.0, 2.0, 1e-15, 0.0).is_complex(tol=1e-12)


# -- dot and scale ---------------------------------------------------------------


@given(exact_quats, exact_quats)
def test_dot_is_real_part_of_q_rbar(q, r):
    assert dot(q, r) == (q * r.conj()).real_part()


@given(exact_quats)
def test_scale(q):
    assert q.scale(Fraction(3, 2)) + q.scale(Fraction(-3, 2)) == zero(EXACT)


# -- rotation into span{1, i} ----------------------------------------------------


def test_rotate_exact_complex_is_identity():
    v = quat(Fraction(2), Fraction(7, 3), backend=EXACT)
    lam, moved = rotate_to_complex(v)
    assert lam == one(EXACT) and moved == v


def test_rotate_exact_negative_i_flips():
    # h1 < 0 conjugates by j, which is exact and lands h1 at +7/3.
    v = quat(Fraction(2), Fraction(-7, 3), Fraction(0), Fraction(0), backend=EXACT)
    lam, moved = rotate_to_complex(v)
    assert lam == qj(EXACT)
    assert moved == quat(Fraction(2), Fraction(7, 3), backend=EXACT)
    assert lam * v * lam.conj() == moved


def test_rotate_exact_off_axis_raises():
    v = quat(Fraction(0), Fraction(0), Fraction(1), Fraction(0), backend=EXACT)
    with pytest.raises(NotRepresentable):
        rotate_to_complex(v)


def test_rotate_float_frozen_case():
    # v = 3j rotates by lam = (1 - k)/sqrt(2) onto 3i.
    lam, moved = rotate_to_complex(quat(0.0, 0.0, 3.0, 0.0))
    s = 1 / math.sqrt(2)
    assert quat_close(lam, quat(s, 0.0, 0.0, -s), 1e-14)
    assert quat_close(moved, quat(0.0, 3.0, 0.0, 0.0), 1e-14)


@given(float_quats)
@settings(max_examples=200)
def test_rotate_float_properties(v):
    lam, moved = rotate_to_complex(v)
    assert abs(lam.norm_sq() - 1.0) <= 1e-12
    scale = max(1.0, v.max_abs())
    assert abs(moved.h2) <= 1e-12 * scale and abs(moved.h3) <= 1e-12 * scale
    assert moved.h1 >= -1e-12 * scale
    assert quat_close(lam * v * lam.conj(), moved, 1e-11 * scale)
    # Rotation preserves the real part and the imaginary norm.
    assert abs(moved.h0 - v.h0) <= 1e-12 * scale
    assert abs(moved.norm_sq() - v.norm_sq()) <= 1e-10 * max(1.0, v.norm_sq())


# -- serialization ---------------------------------------------------------------


@given(exact_quats)
def test_json_round_trip_exact(q):
    blob = quat_to_json(q)
    assert all(isinstance(s, str) for s in blob)
    assert quat_from_json(blob, EXACT) == q


@given(float_quats)
def test_json_round_trip_float(q):
    blob = quat_to_json(q)
    assert quat_from_json(blob, FLOAT) == q


def test_json_rejects_garbage():
    with pytest.raises(ParseError):
        quat_from_json(["1", "0", "0"], EXACT)
    with pytest.raises(ParseError):
        quat_from_json(["1", "0", "0", "x/y/z"], EXACT)
    with pytest.raises(ParseError):
        quat_from_json({"not": "a list"}, FLOAT)


def test_repr_round_trips_through_eval_shape():
    q = quat(Fraction(1, 2), Fraction(0), Fraction(3), Fraction(0), backend=EXACT)
    assert repr(q).startswith("Quaternion(") and "Fraction(1, 2)" in repr(q)


def test_unit_constructors_agree_with_imaginary_units():
    assert imaginary_units(EXACT) == (qi(EXACT), qj(EXACT), qk(EXACT))
