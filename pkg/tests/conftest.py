"""Shared strategies and independent oracles for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from sp2span.quat import EXACT, Quaternion, quat

# Small rationals keep Fraction blowup in long products under control while
# still exercising carries and sign handling.
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=12)

floats = st.floats(
    min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False, width=64
)


def exact_quat(a, b, c, d) -> Quaternion:
    return quat(Fraction(a), Fraction(b), Fraction(c), Fraction(d), backend=EXACT)


exact_quats = st.builds(exact_quat, fracs, fracs, fracs, fracs)
nonzero_exact_quats = exact_quats.filter(lambda q: not q.is_zero())
float_quats = st.builds(lambda a, b, c, d: quat(a, b, c, d), floats, floats, floats, floats)


def left_mult_matrix(q: Quaternion):
    """The 4x4 real matrix of r -> q r in the (1, i, j, k) basis; an
    independent model of the Hamilton product."""
    a, b, c, d = q.components()
    return [
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ]


def mat_vec(m, v):
    return [sum(m[r][c] * v[c] for c in range(4)) for r in range(4)]


def quat_close(q: Quaternion, r: Quaternion, tol: float = 1e-12) -> bool:
    return max(abs(x - y) for x, y in zip(q.components(), r.components())) <= tol
