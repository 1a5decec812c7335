"""2x2 quaternionic matrices, Sp(2), its Lie algebra sp(2), and certified
real-rank computation in the 10 real coordinates of sp(2).

Layout convention (kept everywhere): m = [[a, b], [c, d]], and for group
points the entries are named p = [[x, y], [w, z]].  The Lie algebra consists
of m with adjoint(m) = -m, i.e. a and d purely imaginary and c = -conj(b); its
real coordinates are

    vec10(m) = (a1, a2, a3, b0, b1, b2, b3, d1, d2, d3)

in which the Ad-invariant inner product <u, v> = Re Tr(u v*) becomes the dot
product with weight 2 on the four b-coordinates (the -conj(b) entry
contributes the same amount again).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .quat import (
    EXACT,
    BackendMismatch,
    ParseError,
    Quaternion,
    Scalar,
    Sp2Error,
    ZeroDivisor,
    dot,
    one,
    quat,
    quat_from_json,
    quat_to_json,
    zero,
)


class InvariantViolation(Sp2Error):
    """A validated structural invariant (p p* = Id, adjoint(m) = -m, ...) failed."""


class ShapeMismatch(Sp2Error):
    """Input does not have the documented shape."""


class QMat2:
    """Plain 2x2 matrix over the quaternions; no structure is assumed."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion):
        fa = type(a.h0) is float
        if (type(b.h0) is float) != fa or (type(c.h0) is float) != fa or (type(d.h0) is float) != fa:
            raise BackendMismatch("matrix entries live on different scalar backends")
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @property
    def backend(self) -> str:
        return self.a.backend

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "QMat2") -> "QMat2":
        return QMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other: "QMat2") -> "QMat2":
        return QMat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "QMat2") -> "QMat2":
        return QMat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "QMat2":
        return QMat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, s: Scalar) -> "QMat2":
        return QMat2(self.a.scale(s), self.b.scale(s), self.c.scale(s), self.d.scale(s))

    def left_mul(self, q: Quaternion) -> "QMat2":
        """Entrywise left multiplication q * m_rs, i.e. (q Id) @ m."""
        return QMat2(q * self.a, q * self.b, q * self.c, q * self.d)

    def adjoint(self) -> "QMat2":
        """Conjugate transpose."""
        return QMat2(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def trace(self) -> Quaternion:
        """Full quaternionic trace a + d.  Not cyclic; only its real part is."""
        return self.a + self.d

    def max_abs(self) -> Scalar:
        return max(e.max_abs() for e in self.entries())

    def max_component_diff(self, other: "QMat2") -> Scalar:
        return (self - other).max_abs()

    def approx_eq(self, other: "QMat2", tol: float = 0.0) -> bool:
        if self.backend == EXACT and tol == 0.0:
            return self == other
        return self.max_component_diff(other) <= tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMat2):
            return NotImplemented
        return (
            self.a == other.a and self.b == other.b and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"QMat2(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"

    def to_json(self):
        return {
            "a": quat_to_json(self.a),
            "b": quat_to_json(self.b),
            "c": quat_to_json(self.c),
            "d": quat_to_json(self.d),
        }

    @staticmethod
    def from_json(obj, backend: str) -> "QMat2":
        if not isinstance(obj, dict):
            raise ParseError(f"matrix must be an object, got {obj!r}")
        try:
            return QMat2(*(quat_from_json(obj[k], backend) for k in ("a", "b", "c", "d")))
        except KeyError as exc:
            raise ParseError(f"matrix object is missing entry {exc.args[0]!r}") from exc


def identity(backend: str) -> QMat2:
    return QMat2(one(backend), zero(backend), zero(backend), one(backend))


def diag(q1: Quaternion, q2: Quaternion) -> QMat2:
    z = zero(q1.backend)
    return QMat2(q1, z, z, q2)


def scalar_mat(q: Quaternion) -> QMat2:
    return diag(q, q)


def qmat_inverse(m: QMat2) -> QMat2:
    """Invert a 2x2 quaternionic matrix via a Schur-complement step.

    The pivot is chosen as the larger of |a|, |d| for float stability; the
    antidiagonal case a = d = 0 is handled directly.  Raises ZeroDivisor for
    singular input.
    """
    a, b, c, d = m.entries()
    na, nd = a.norm_sq(), d.norm_sq()
    if na == 0 and nd == 0:
        if b.norm_sq() == 0 or c.norm_sq() == 0:
            raise ZeroDivisor("singular 2x2 quaternionic matrix")
        return QMat2(zero(m.backend), c.inverse(), b.inverse(), zero(m.backend))
    if na >= nd:
        ai = a.inverse()
        s = d - c * ai * b
        if s.norm_sq() == 0:
            raise ZeroDivisor("singular 2x2 quaternionic matrix")
        si = s.inverse()
        return QMat2(
            ai + ai * b * si * c * ai,
            -(ai * b * si),
            -(si * c * ai),
            si,
        )
    di = d.inverse()
    t = a - b * di * c
    if t.norm_sq() == 0:
        raise ZeroDivisor("singular 2x2 quaternionic matrix")
    ti = t.inverse()
    return QMat2(
        ti,
        -(ti * b * di),
        -(di * c * ti),
        di + di * c * ti * b * di,
    )


# -- validated wrappers ---------------------------------------------------------


class Sp2Point:
    """A point of Sp(2): m @ m* = m* @ m = Id (exact, or within tol)."""

    __slots__ = ("m",)

    def __init__(self, m: QMat2, tol: float = 1e-9, validate: bool = True):
        if validate:
            ident = identity(m.backend)
            err = max(
                (m @ m.adjoint()).max_component_diff(ident),
                (m.adjoint() @ m).max_component_diff(ident),
            )
            ok = err == 0 if m.backend == EXACT else err <= tol
            if not ok:
                raise InvariantViolation(f"p p* deviates from Id by {float(err):.3e}")
        self.m = m

    # named-entry accessors: p = [[x, y], [w, z]]
    @property
    def x(self) -> Quaternion:
        return self.m.a

    @property
    def y(self) -> Quaternion:
        return self.m.b

    @property
    def w(self) -> Quaternion:
        return self.m.c

    @property
    def z(self) -> Quaternion:
        return self.m.d

    @property
    def backend(self) -> str:
        return self.m.backend

    def inverse(self) -> "Sp2Point":
        return Sp2Point(self.m.adjoint(), validate=False)

    def __eq__(self, other):
        if not isinstance(other, Sp2Point):
            return NotImplemented
        return self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"Sp2Point({self.m!r})"

    def to_json(self):
        out = self.m.to_json()
        out["kind"] = "sp2-point"
        return out

    @staticmethod
    def from_json(obj, backend: str, tol: float = 1e-9) -> "Sp2Point":
        if isinstance(obj, dict) and obj.get("kind") not in (None, "sp2-point"):
            raise ParseError(f"expected kind 'sp2-point', got {obj.get('kind')!r}")
        return Sp2Point(QMat2.from_json(obj, backend), tol=tol)


class Sp2Alg:
    """An element of sp(2): adjoint(m) = -m, i.e. [[alpha, beta], [-conj(beta), gamma]]
    with alpha, gamma purely imaginary."""

    __slots__ = ("m",)

    def __init__(self, m: QMat2, tol: float = 1e-9, validate: bool = True):
        if validate:
            err = (m.adjoint() + m).max_abs()
            ok = err == 0 if m.backend == EXACT else err <= tol
            if not ok:
                raise InvariantViolation(f"m* + m deviates from 0 by {float(err):.3e}")
        self.m = m

    @property
    def backend(self) -> str:
        return self.m.backend

    def __eq__(self, other):
        if not isinstance(other, Sp2Alg):
            return NotImplemented
        return self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"Sp2Alg({self.m!r})"

    def to_json(self):
        out = self.m.to_json()
        out["kind"] = "sp2-algebra"
        return out

    @staticmethod
    def from_json(obj, backend: str, tol: float = 1e-9) -> "Sp2Alg":
        if isinstance(obj, dict) and obj.get("kind") not in (None, "sp2-algebra"):
            raise ParseError(f"expected kind 'sp2-algebra', got {obj.get('kind')!r}")
        return Sp2Alg(QMat2.from_json(obj, backend), tol=tol)


def _mat_of(u) -> QMat2:
    if isinstance(u, QMat2):
        return u
    return u.m


def ad(p: Sp2Point, u) -> Sp2Alg:
    """Adjoint action Ad_p(u) = p u p*.  Preserves sp(2), so no revalidation."""
    pm = p.m if isinstance(p, Sp2Point) else p
    return Sp2Alg(pm @ _mat_of(u) @ pm.adjoint(), validate=False)


def bracket(u, v) -> Sp2Alg:
    """Lie bracket [u, v] = u v - v u on sp(2)."""
    um, vm = _mat_of(u), _mat_of(v)
    return Sp2Alg(um @ vm - vm @ um, validate=False)


def inner(u, v) -> Scalar:
    """Ad-invariant inner product <u, v> = Re Tr(u v*) = sum of entrywise dots."""
    um, vm = _mat_of(u), _mat_of(v)
    return dot(um.a, vm.a) + dot(um.b, vm.b) + dot(um.c, vm.c) + dot(um.d, vm.d)


# -- Vec10 coordinates ------------------------------------------------------------

Vec10 = tuple  # 10 scalars: (a1, a2, a3, b0, b1, b2, b3, d1, d2, d3)


def to_vec10(u) -> Vec10:
    m = _mat_of(u)
    a, b, d = m.a, m.b, m.d
    return (a.h1, a.h2, a.h3, b.h0, b.h1, b.h2, b.h3, d.h1, d.h2, d.h3)


def from_vec10(coords: Sequence[Scalar]) -> Sp2Alg:
    if len(coords) != 10:
        raise ShapeMismatch(f"vec10 needs exactly 10 coordinates, got {len(coords)}")
    a1, a2, a3, b0, b1, b2, b3, d1, d2, d3 = coords
    alpha = quat(0, a1, a2, a3)
    beta = quat(b0, b1, b2, b3)
    gamma = quat(0, d1, d2, d3)
    alpha._check_backend(beta)
    beta._check_backend(gamma)
    return Sp2Alg(QMat2(alpha, beta, -beta.conj(), gamma), validate=False)


def vec10_weighted_dot(s: Vec10, t: Vec10) -> Scalar:
    """The inner product in coordinates: weight 2 on the four b slots."""
    acc = s[0] * t[0] + s[1] * t[1] + s[2] * t[2]
    acc += 2 * (s[3] * t[3] + s[4] * t[4] + s[5] * t[5] + s[6] * t[6])
    return acc + s[7] * t[7] + s[8] * t[8] + s[9] * t[9]


# -- rank -------------------------------------------------------------------------


@dataclass
class RankResult:
    """Outcome of a real-rank computation over Vec10 rows.

    For the exact backend `pivots` holds the Bareiss pivots (integer leading
    minors after row-wise denominator clearing): the rank certificate is that
    each is a nonzero integer.  For floats `pivots` holds pivot magnitudes
    after row max-abs equilibration, and `min_rel_pivot` is their minimum
    relative to the largest equilibrated entry.
    """

    rank: int
    method: str
    pivots: list = field(default_factory=list)
    positions: list = field(default_factory=list)
    min_rel_pivot: float | None = None

    def to_json(self):
        out = {
            "rank": self.rank,
            "method": self.method,
            "positions": [list(p) for p in self.positions],
        }
        if self.method == "bareiss":
            out["pivots"] = [str(p) for p in self.pivots]
        else:
            out["pivots"] = list(self.pivots)
            out["min_rel_pivot"] = self.min_rel_pivot
        return out


def _bareiss_rank(rows: list[list[int]]) -> RankResult:
    m = [row[:] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0])
    prev = 1
    pr = 0
    pivots = []
    positions = []
    for pc in range(n_cols):
        pivot_row = None
        for r in range(pr, n_rows):
            if m[r][pc] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
        piv = m[pr][pc]
        for r in range(pr + 1, n_rows):
            mrpc = m[r][pc]
            row_r = m[r]
            row_p = m[pr]
            for c in range(pc + 1, n_cols):
                # fraction-free update: every intermediate is an integer minor
                row_r[c] = (row_r[c] * piv - mrpc * row_p[c]) // prev
            row_r[pc] = 0
        pivots.append(piv)
        positions.append((pr, pc))
        prev = piv
        pr += 1
        if pr == n_rows:
            break
    return RankResult(rank=pr, method="bareiss", pivots=pivots, positions=positions)


def _pivoted_rank(rows: list[Sequence[float]], rel_tol: float) -> RankResult:
    a = np.array(rows, dtype=np.float64)
    n_rows, n_cols = a.shape
    # Row equilibration: rank is invariant under scaling rows by nonzero
    # constants, and it keeps the pivot ratios meaningful when one frame
    # entry dwarfs the others.
    scale = np.max(np.abs(a), axis=1)
    nonzero = scale > 0.0
    a[nonzero] /= scale[nonzero, None]
    max_initial = float(np.max(np.abs(a))) if a.size else 0.0
    if max_initial == 0.0:
        return RankResult(rank=0, method="pivoted-ge", min_rel_pivot=None)
    threshold = rel_tol * max_initial
    row_free = list(range(n_rows))
    col_free = list(range(n_cols))
    pivots = []
    positions = []
    while row_free and col_free:
        sub = np.abs(a[np.ix_(row_free, col_free)])
        flat = int(np.argmax(sub))
        ri, ci = divmod(flat, sub.shape[1])
        val = float(sub[ri, ci])
        if val <= threshold:
            break
        r, c = row_free[ri], col_free[ci]
        pivots.append(val)
        positions.append((r, c))
        piv = a[r, c]
        for r2 in row_free:
            if r2 != r and a[r2, c] != 0.0:
                a[r2, :] -= (a[r2, c] / piv) * a[r, :]
        row_free.remove(r)
        col_free.remove(c)
    min_rel = min(pivots) / max_initial if pivots else None
    return RankResult(
        rank=len(pivots),
        method="pivoted-ge",
        pivots=pivots,
        positions=positions,
        min_rel_pivot=min_rel,
    )


def real_rank(vectors: Iterable[Vec10], tol: float = 1e-9) -> RankResult:
    """Rank of the real span of the given coordinate vectors.

    Exact backend: fraction-free Bareiss elimination after clearing row
    denominators; the result is a certificate, not an estimate.  Float
    backend: complete-pivot Gaussian elimination on equilibrated rows with
    relative pivot threshold `tol`.
    """
    rows = [tuple(v) for v in vectors]
    if not rows:
        return RankResult(rank=0, method="empty")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise ShapeMismatch("rank input rows have inconsistent lengths")
    first = rows[0][0]
    is_float = type(first) is float
    for row in rows:
        for x in row:
            if (type(x) is float) != is_float:
                raise BackendMismatch("rank input mixes exact and float rows")
    if is_float:
        return _pivoted_rank(rows, tol)
    int_rows = []
    for row in rows:
        fracs = [x if type(x) is Fraction else Fraction(x) for x in row]
        denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
        int_rows.append([int(f * denom) for f in fracs])
    return _bareiss_rank(int_rows)
