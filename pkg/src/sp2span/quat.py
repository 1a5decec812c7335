"""Quaternion arithmetic over two strictly separated scalar backends.

The exact backend stores every component as a `fractions.Fraction` and never
rounds; the float backend stores IEEE-754 doubles.  The backend is a property
of the data, not of the call site: mixing the two in a single operation raises
`BackendMismatch` instead of silently promoting, so an "exact" certificate can
never be contaminated by a stray double.

Conventions: q = h0 + h1*i + h2*j + h3*k with i*j = k = -j*i, j*k = i, k*i = j
and i^2 = j^2 = k^2 = -1.  conj(q) negates the imaginary part, and
norm_sq(q) = q * conj(q) is real.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)


class Sp2Error(Exception):
    """Base class for every error this package raises on purpose."""


class BackendMismatch(Sp2Error):
    """Exact and float scalars met inside a single operation."""


class ZeroDivisor(Sp2Error):
    """Inversion of zero was requested."""


class ZeroInput(Sp2Error):
    """An operation that needs a nonzero input received zero."""


class NotRepresentable(Sp2Error):
    """The result exists but cannot be written exactly on this backend."""


class ParseError(Sp2Error):
    """Malformed serialized data."""


def _resolve_components(parts):
    """Coerce a 4-tuple of raw components onto a single backend.

    ints are backend-agnostic and follow the other components (defaulting to
    exact when nothing forces a float).  A Fraction and a float in the same
    tuple is a hard error.
    """
    saw_float = False
    saw_exact = False
    for x in parts:
        if type(x) is float:
            saw_float = True
        elif type(x) is Fraction:
            saw_exact = True
        elif type(x) is not int and type(x) is not bool:
            raise TypeError(f"unsupported scalar component {x!r} of type {type(x).__name__}")
    if saw_float and saw_exact:
        raise BackendMismatch("cannot mix Fraction and float components in one quaternion")
    if saw_float:
        return tuple(float(x) for x in parts)
    return tuple(x if type(x) is Fraction else Fraction(x) for x in parts)


class Quaternion:
    __slots__ = ("h0", "h1", "h2", "h3")

    def __init__(self, h0, h1, h2, h3):
        # Fast paths: all-float and all-Fraction tuples dominate the hot loops.
        if type(h0) is float and type(h1) is float and type(h2) is float and type(h3) is float:
            pass
        elif (
            type(h0) is Fraction
            and type(h1) is Fraction
            and type(h2) is Fraction
            and type(h3) is Fraction
        ):
            pass
        else:
            h0, h1, h2, h3 = _resolve_components((h0, h1, h2, h3))
        self.h0 = h0
        self.h1 = h1
        self.h2 = h2
        self.h3 = h3

    # -- backend bookkeeping ------------------------------------------------

    @property
    def backend(self) -> str:
        return FLOAT if type(self.h0) is float else EXACT

    def _check_backend(self, other: "Quaternion"):
        if (type(self.h0) is float) != (type(other.h0) is float):
            raise BackendMismatch("operands live on different scalar backends")

    def components(self):
        return (self.h0, self.h1, self.h2, self.h3)

    # -- ring structure -----------------------------------------------------

    def __add__(self, other: "Quaternion") -> "Quaternion":
        self._check_backend(other)
        return Quaternion(
            self.h0 + other.h0, self.h1 + other.h1, self.h2 + other.h2, self.h3 + other.h3
        )

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        self._check_backend(other)
        return Quaternion(
            self.h0 - other.h0, self.h1 - other.h1, self.h2 - other.h2, self.h3 - other.h3
        )

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.h0, -self.h1, -self.h2, -self.h3)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        self._check_backend(other)
        a0, a1, a2, a3 = self.h0, self.h1, self.h2, self.h3
        b0, b1, b2, b3 = other.h0, other.h1, other.h2, other.h3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def scale(self, s: Scalar) -> "Quaternion":
        """Multiply every component by a plain scalar (same backend)."""
        if type(s) is int:
            s = Fraction(s) if self.backend == EXACT else float(s)
        elif (type(s) is float) != (type(self.h0) is float):
            raise BackendMismatch("scalar lives on the wrong backend")
        return Quaternion(self.h0 * s, self.h1 * s, self.h2 * s, self.h3 * s)

    def conj(self) -> "Quaternion":
        return Quaternion(self.h0, -self.h1, -self.h2, -self.h3)

    def norm_sq(self) -> Scalar:
        return self.h0 * self.h0 + self.h1 * self.h1 + self.h2 * self.h2 + self.h3 * self.h3

    def norm(self) -> float:
        """Euclidean norm as a double.  Diagnostic only: exact code paths
        must use norm_sq, which stays on the backend."""
        return math.sqrt(float(self.norm_sq()))

    def inverse(self) -> "Quaternion":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisor("zero quaternion has no inverse")
        return Quaternion(self.h0 / n, -self.h1 / n, -self.h2 / n, -self.h3 / n)

    # -- predicates and parts -------------------------------------------------

    def real_part(self) -> Scalar:
        return self.h0

    def imag(self) -> "Quaternion":
        zero = 0.0 if type(self.h0) is float else Fraction(0)
        return Quaternion(zero, self.h1, self.h2, self.h3)

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.backend == EXACT:
            return self.h0 == 0 and self.h1 == 0 and self.h2 == 0 and self.h3 == 0
        return self.max_abs() <= tol

    def is_imaginary(self, tol: float = 0.0) -> bool:
        if self.backend == EXACT:
            return self.h0 == 0
        return abs(self.h0) <= tol

    def is_real(self, tol: float = 0.0) -> bool:
        if self.backend == EXACT:
            return self.h1 == 0 and self.h2 == 0 and self.h3 == 0
        return max(abs(self.h1), abs(self.h2), abs(self.h3)) <= tol

    def is_complex(self, tol: float = 0.0) -> bool:
        """True when q lies in span{1, i}."""
        if self.backend == EXACT:
            return self.h2 == 0 and self.h3 == 0
        return max(abs(self.h2), abs(self.h3)) <= tol

    def max_abs(self) -> Scalar:
        return max(abs(self.h0), abs(self.h1), abs(self.h2), abs(self.h3))

    def approx_eq(self, other: "Quaternion", tol: float = 0.0) -> bool:
        self._check_backend(other)
        if self.backend == EXACT and tol == 0.0:
            return self == other
        return (self - other).max_abs() <= tol

    # -- dunder plumbing ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        if (type(self.h0) is float) != (type(other.h0) is float):
            return False
        return (
            self.h0 == other.h0
            and self.h1 == other.h1
            and self.h2 == other.h2
            and self.h3 == other.h3
        )

    def __hash__(self):
        return hash((self.h0, self.h1, self.h2, self.h3))

    def __repr__(self):
        return f"Quaternion({self.h0!r}, {self.h1!r}, {self.h2!r}, {self.h3!r})"


# -- constructors -------------------------------------------------------------


def _coerce_scalar(x, backend: str) -> Scalar:
    if backend == EXACT:
        if type(x) is float:
            raise BackendMismatch("float component on the exact backend")
        return x if type(x) is Fraction else Fraction(x)
    if backend == FLOAT:
        if type(x) is Fraction:
            raise BackendMismatch("Fraction component on the float backend")
        return float(x)
    raise ValueError(f"unknown backend {backend!r}")


def quat(h0, h1=0, h2=0, h3=0, backend: str | None = None) -> Quaternion:
    """Coercing constructor.  With backend=None the components decide."""
    if backend is None:
        return Quaternion(h0, h1, h2, h3)
    return Quaternion(*(_coerce_scalar(x, backend) for x in (h0, h1, h2, h3)))


def zero(backend: str) -> Quaternion:
    return quat(0, 0, 0, 0, backend=backend)


def one(backend: str) -> Quaternion:
    return quat(1, 0, 0, 0, backend=backend)


def qi(backend: str) -> Quaternion:
    return quat(0, 1, 0, 0, backend=backend)


def qj(backend: str) -> Quaternion:
    return quat(0, 0, 1, 0, backend=backend)


def qk(backend: str) -> Quaternion:
    return quat(0, 0, 0, 1, backend=backend)


def imaginary_units(backend: str):
    return (qi(backend), qj(backend), qk(backend))


def to_backend(q: Quaternion, backend: str) -> Quaternion:
    """Convert between backends.  float -> exact is always lossless
    (binary doubles are dyadic rationals); exact -> float rounds to nearest."""
    if q.backend == backend:
        return q
    if backend == EXACT:
        return Quaternion(*(Fraction(x) for x in q.components()))
    return Quaternion(*(float(x) for x in q.components()))


def dot(q: Quaternion, r: Quaternion) -> Scalar:
    """Euclidean component dot product, equal to Re(q * conj(r))."""
    q._check_backend(r)
    return q.h0 * r.h0 + q.h1 * r.h1 + q.h2 * r.h2 + q.h3 * r.h3


# -- fiber rotation -----------------------------------------------------------


def rotate_to_complex(v: Quaternion, tol: float = 1e-9):
    """Find a unit lam with lam * v * conj(lam) = v0 + v1*i, v1 >= 0.

    Returns (lam, v_norm).  Conjugation by a unit quaternion fixes the real
    part and rotates the imaginary 3-vector, so v_norm is just
    Re(v) + |Im(v)|*i; lam is built from the half-angle construction
    lam ~ 1 - i*a with a = Im(v)/|Im(v)|.  Directions in the southern
    hemisphere (a1 < 0) first pre-compose with a rotation by pi about the
    j-axis, keeping the construction away from its ill-conditioned antipode.

    On the exact backend square roots are unavailable: inputs already in
    span{1, i} are handled exactly (identity, or the j-flip when v1 < 0);
    anything else raises NotRepresentable.
    """
    backend = v.backend
    if backend == EXACT:
        if v.h2 == 0 and v.h3 == 0:
            if v.h1 >= 0:
                return one(EXACT), v
            return qj(EXACT), Quaternion(v.h0, -v.h1, Fraction(0), Fraction(0))
        raise NotRepresentable(
            "rotating Im(v) onto the i-axis needs square roots; "
            "supply a pre-normalized point on the exact backend"
        )

    # hypot stays accurate when the squares would under- or overflow.
    r = math.hypot(v.h1, v.h2, v.h3)
    v_norm = Quaternion(v.h0, r, 0.0, 0.0)
    if r == 0.0:
        return one(FLOAT), v
    a1, a2, a3 = v.h1 / r, v.h2 / r, v.h3 / r
    pre_j = a1 < 0.0
    if pre_j:
        # Rotation by pi about the j-axis: (a1, a2, a3) -> (-a1, a2, -a3).
        a1, a3 = -a1, -a3
    # s = 1 - i*a = (1 + a1) + a3*j - a2*k, with 1 + a1 >= 1 here, and
    # normalizing by the computed components keeps lam unit to a few ulps.
    s0, s2, s3 = 1.0 + a1, a3, -a2
    inv = 1.0 / math.hypot(s0, s2, s3)
    lam = Quaternion(s0 * inv, 0.0, s2 * inv, s3 * inv)
    if pre_j:
        lam = lam * qj(FLOAT)
    return lam, v_norm


# -- JSON encoding --------------------------------------------------------------

# Exact scalars travel as "num/den" strings, float scalars as JSON numbers
# (json round-trips doubles bit-exactly via repr).


def scalar_to_json(s: Scalar):
    if type(s) is Fraction:
        return f"{s.numerator}/{s.denominator}"
    return s


def scalar_from_json(obj, backend: str) -> Scalar:
    if backend == EXACT:
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal {obj!r}") from exc
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        raise ParseError(f"exact scalar must be a string or integer, got {obj!r}")
    if backend == FLOAT:
        if isinstance(obj, (int, float)) and not isinstance(obj, bool):
            return float(obj)
        raise ParseError(f"float scalar must be a JSON number, got {obj!r}")
    raise ParseError(f"unknown backend {backend!r}")


def quat_to_json(q: Quaternion):
    return [scalar_to_json(x) for x in q.components()]


def quat_from_json(obj, backend: str) -> Quaternion:
    if not isinstance(obj, list) or len(obj) != 4:
        raise ParseError(f"quaternion must be a 4-element array, got {obj!r}")
    return Quaternion(*(scalar_from_json(x, backend) for x in obj))
