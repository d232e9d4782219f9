"""Equivalence classes ``<A>`` under left identity padding, as values.

A :class:`MatrixClass` always stores the minimal member of its class, so two
classes are equal exactly when their representatives are equal.  Square
classes (ratio 1) form an algebra under the STP; on top of that this module
decides equivalence, congruence and similarity of classes and evaluates
analytic functions of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable

import numpy as np

from dfmat.errors import MuMismatch, NonConvergence, NotSquareClass, NotSymmetric, SingularClass, SingularMatrix
from dfmat.matrix_core import (
    EXACT,
    FLOAT,
    Matrix,
    MuRatio,
    inverse,
    is_symmetric,
    lift,
    mu_of,
    rank,
    scalar_mul,
    transpose,
)
from dfmat.equivalence import LEFT_IDENTITY, minimal_representative
from dfmat.stp import CLASSICAL, stp_add, stp_mul, stp_sub

SQUARE = MuRatio(1, 1)

# Series terms with max-abs entry below the tolerance for this many
# consecutive orders end an adaptive evaluation.
SERIES_PATIENCE = 4
SERIES_MAX_TERMS = 500


@dataclass(frozen=True)
class MatrixClass:
    rep: Matrix
    mu: MuRatio

    @property
    def size(self) -> int:
        """Slice index of the minimal representative."""
        return self.rep.rows // self.mu.mu_y

    @property
    def mode(self) -> str:
        return self.rep.mode

    def __str__(self) -> str:
        return f"<{self.rep!r}>"


def class_of(a: Matrix, tol: float | None = None) -> MatrixClass:
    rep, _ = minimal_representative(a, LEFT_IDENTITY, tol)
    return MatrixClass(rep, mu_of(rep))


def zero_class(mu: MuRatio = SQUARE, mode: str = EXACT) -> MatrixClass:
    return MatrixClass(Matrix.zeros(mu.mu_y, mu.mu_x, mode), mu)


def identity_class(mode: str = EXACT) -> MatrixClass:
    return MatrixClass(Matrix.identity(1, mode), SQUARE)


def _same_mu(x: MatrixClass, y: MatrixClass) -> None:
    if x.mu != y.mu:
        raise MuMismatch(f"classes live in different quotient spaces: mu={x.mu} vs mu={y.mu}")


def _square(*xs: MatrixClass) -> None:
    for x in xs:
        if x.mu != SQUARE:
            raise NotSquareClass(f"operation needs a square class, got mu={x.mu}")


def class_add(x: MatrixClass, y: MatrixClass) -> MatrixClass:
    _same_mu(x, y)
    return class_of(stp_add(CLASSICAL, x.rep, y.rep))


def class_sub(x: MatrixClass, y: MatrixClass) -> MatrixClass:
    _same_mu(x, y)
    return class_of(stp_sub(CLASSICAL, x.rep, y.rep))


def class_scale(r, x: MatrixClass) -> MatrixClass:
    return class_of(scalar_mul(r, x.rep))


def class_mul(x: MatrixClass, y: MatrixClass) -> MatrixClass:
    _square(x, y)
    return class_of(stp_mul(CLASSICAL, x.rep, y.rep))


def class_transpose(x: MatrixClass) -> MatrixClass:
    return class_of(transpose(x.rep))


def class_inverse(x: MatrixClass) -> MatrixClass:
    _square(x)
    try:
        return class_of(inverse(x.rep))
    except SingularMatrix as exc:
        raise SingularClass(f"class representative is singular: {exc}") from exc


def common_lift(x: MatrixClass, y: MatrixClass) -> tuple[Matrix, Matrix]:
    """Both square representatives lifted to ``t = lcm`` of their sizes."""
    _square(x, y)
    t = lcm(x.rep.rows, y.rep.rows)
    return lift(x.rep, t // x.rep.rows), lift(y.rep, t // y.rep.rows)


# ---------------------------------------------------------------------------
# Class-level relations
# ---------------------------------------------------------------------------


def classes_equivalent(x: MatrixClass, y: MatrixClass) -> bool:
    """``<P> <A> <Q> = <B>`` for nonsingular ``P, Q``: equal rank at the common lift."""
    a, b = common_lift(x, y)
    return rank(a) == rank(b)


def inertia(a: Matrix) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a symmetric matrix.

    Symmetric Gaussian elimination: every step is a congruence, so by
    Sylvester's law the signs of the pivots give the inertia.
    """
    if not is_symmetric(a):
        raise NotSymmetric("inertia needs a symmetric matrix")
    n = a.rows
    if a.mode == FLOAT:
        w = np.linalg.eigvalsh(a.to_numpy())
        eps = 1e-10 * max(1.0, float(np.max(np.abs(w))))
        return int((w > eps).sum()), int((w < -eps).sum()), int((np.abs(w) <= eps).sum())
    m = [list(a.row(i)) for i in range(n)]
    pos = neg = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if m[i][i] != 0), None)
        if p is None:
            j = next(((i, c) for i in range(k, n) for c in range(i + 1, n) if m[i][c] != 0), None)
            if j is None:
                break
            i, c = j
            # row_i += row_c, col_i += col_c makes the (i, i) entry 2*m[i][c].
            for r in range(n):
                m[i][r] += m[c][r]
            for r in range(n):
                m[r][i] += m[r][c]
            p = i
        m[k], m[p] = m[p], m[k]
        for row in m:
            row[k], row[p] = row[p], row[k]
        piv = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f:
                for c in range(k, n):
                    m[i][c] -= f * m[k][c]
                for r in range(k, n):
                    m[r][i] -= f * m[r][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, n - pos - neg


def classes_congruent(x: MatrixClass, y: MatrixClass) -> bool:
    """``<P>^T <A> <P> = <B>``, decided by inertia; symmetric representatives only."""
    a, b = common_lift(x, y)
    if not (is_symmetric(x.rep) and is_symmetric(y.rep)):
        raise NotSymmetric("congruence is decided only for symmetric representatives")
    return inertia(a) == inertia(b)


def invariant_factors(a: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Monic invariant factors of ``xI - a`` over ``Q[x]``, as coefficient tuples.

    Coefficients run from the leading term down; trivial factors ``1`` are
    dropped, so the result is a similarity invariant of ``a``.
    """
    from sympy import QQ, symbols
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.matrices.normalforms import invariant_factors as _invf

    if not a.is_square:
        raise NotSquareClass("invariant factors need a square matrix")
    x = symbols("x")
    ring = QQ[x]
    n = a.rows
    exact = a.to_exact()
    rows = [
        [ring.convert(x) * int(i == j) - ring.convert(QQ(exact[i, j].numerator, exact[i, j].denominator)) for j in range(n)]
        for i in range(n)
    ]
    dm = DomainMatrix(rows, (n, n), ring)
    out = []
    for f in _invf(dm):
        poly = ring.to_sympy(f).as_poly(x).monic()
        coeffs = tuple(Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs())
        if coeffs != (Fraction(1),):
            out.append(coeffs)
    return tuple(out)


def classes_similar(x: MatrixClass, y: MatrixClass) -> bool:
    """``<P>^-1 <A> <P> = <B>``: equal invariant factors at the common lift."""
    a, b = common_lift(x, y)
    return invariant_factors(a) == invariant_factors(b)


# ---------------------------------------------------------------------------
# Analytic functions
# ---------------------------------------------------------------------------


def class_exp(x: MatrixClass, tol: float | None = None) -> MatrixClass:
    """``<e^A>`` via scaling-and-squaring Padé; always returns a float class."""
    from scipy.linalg import expm

    _square(x)
    return class_of(Matrix.from_numpy(expm(x.rep.to_numpy())), tol)


@dataclass(frozen=True)
class SeriesSpec:
    """Power series ``sum c_n A^n`` with either a fixed order or a tolerance."""

    coefficients: Callable[[int], float]
    order: int | None = None
    tol: float | None = None
    max_terms: int = SERIES_MAX_TERMS

    def __post_init__(self):
        if (self.order is None) == (self.tol is None):
            raise ValueError("give exactly one of order (fixed truncation) or tol (adaptive)")
        if self.order is not None and self.order < 0:
            raise ValueError("order must be non-negative")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")


def exp_series(tol: float = 1e-16) -> SeriesSpec:
    return SeriesSpec(lambda n: 1.0 / math.factorial(n), tol=tol)


def geometric_series(tol: float = 1e-14) -> SeriesSpec:
    return SeriesSpec(lambda n: 1.0, tol=tol)


def identity_series() -> SeriesSpec:
    return SeriesSpec(lambda n: 1.0 if n == 1 else 0.0, order=1)


def evaluate_series(f: SeriesSpec, a: Matrix) -> Matrix:
    if not a.is_square:
        raise NotSquareClass("series need a square matrix")
    arr = a.to_numpy()
    n = arr.shape[0]
    power = np.eye(n)
    acc = np.zeros((n, n))
    small = 0
    last = f.order if f.order is not None else f.max_terms - 1
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(last + 1):
            term = float(f.coefficients(k)) * power
            acc = acc + term
            if not np.all(np.isfinite(acc)):
                raise NonConvergence(f"series overflowed at order {k}")
            if f.tol is not None:
                small = small + 1 if np.max(np.abs(term)) < f.tol else 0
                if small >= SERIES_PATIENCE:
                    return Matrix.from_numpy(acc)
            power = power @ arr
    if f.tol is not None:
        raise NonConvergence(
            f"series terms still above {f.tol} after {f.max_terms} terms; spectral radius too large"
        )
    return Matrix.from_numpy(acc)


def class_analytic(f: SeriesSpec, x: MatrixClass, tol: float | None = None) -> MatrixClass:
    _square(x)
    return class_of(evaluate_series(f, x.rep), tol)
