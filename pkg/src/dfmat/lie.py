"""Lie structure on square classes: bracket, trace, ``ad`` and the Killing form.

The Killing form is evaluated through its closed form on minimal
representatives ``A1`` (r x r) and ``B1`` (s x s) with ``t = lcm(r, s)``::

    (2/t) trace(A1 ⋉ B1) - (2/(r s)) trace(A1) trace(B1)

which equals the dimension-free trace of ``ad_{A1 ⊗ I_{t/r}} ad_{B1 ⊗ I_{t/s}}``
(both adjoints taken at the common size).  :func:`killing_form_direct` computes
that product explicitly and serves as the cross-check.  The STP of the two
small adjoint matrices, :func:`killing_form_stp`, agrees only when ``r == s``
or one of the classes is scalar, because ``ad_{A ⊗ I_k}`` and
``ad_A ⊗ I_{k^2}`` differ by a permutation of tensor factors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable

from dfmat.errors import DfmError, NotSquareClass, ShapeError
from dfmat.matrix_core import EXACT, Matrix, kron, lift, mat_mul, mat_sub, trace, transpose
from dfmat.multipliers import Identity, MultiplierFamily, gamma
from dfmat.quotient import (
    SQUARE,
    MatrixClass,
    _square,
    class_add,
    class_inverse,
    class_mul,
    class_of,
    class_sub,
    class_transpose,
    zero_class,
)
from dfmat.stp import stp

# When set, killing_form recomputes every value through the explicit adjoint
# product and raises KillingMismatch on disagreement.
CROSS_CHECK = os.environ.get("DFMAT_CROSS_CHECK", "") not in ("", "0")


class KillingMismatch(DfmError):
    code = "killing_mismatch"


def bracket(x: MatrixClass, y: MatrixClass) -> MatrixClass:
    return class_sub(class_mul(x, y), class_mul(y, x))


def df_trace(a: Matrix, family: MultiplierFamily = Identity):
    """Dimension-free trace ``trace(a) / trace(Γ_k)`` for ``a`` of size ``k``."""
    if not a.is_square:
        raise ShapeError(f"dimension-free trace of non-square {a.rows}x{a.cols} matrix")
    return trace(a) / trace(gamma(family, a.rows, a.mode))


def class_trace(x: MatrixClass):
    _square(x)
    return df_trace(x.rep)


def ad_matrix(a: Matrix) -> Matrix:
    """Matrix of ``X -> AX - XA`` in column-stacking coordinates."""
    if not a.is_square:
        raise ShapeError(f"ad of non-square {a.rows}x{a.cols} matrix")
    eye = Matrix.identity(a.rows, a.mode)
    return mat_sub(kron(eye, a), kron(transpose(a), eye))


def class_ad(x: MatrixClass) -> MatrixClass:
    _square(x)
    return class_of(ad_matrix(x.rep))


def _as_exact_scalar(v, mode):
    return Fraction(v) if mode == EXACT else v


def killing_closed_form(a1: Matrix, b1: Matrix):
    r, s = a1.rows, b1.rows
    t = lcm(r, s)
    mode = a1.mode
    two = _as_exact_scalar(2, mode)
    return two / t * trace(stp(a1, b1)) - two / (r * s) * trace(a1) * trace(b1)


def killing_form_direct(x: MatrixClass, y: MatrixClass):
    """Tr(ad_A ad_B) with both representatives lifted to their common size."""
    _square(x, y)
    t = lcm(x.rep.rows, y.rep.rows)
    a = lift(x.rep, t // x.rep.rows)
    b = lift(y.rep, t // y.rep.rows)
    return df_trace(mat_mul(ad_matrix(a), ad_matrix(b)))


def killing_form_stp(x: MatrixClass, y: MatrixClass):
    """Tr(ad_{A1} ⋉ ad_{B1}) on the minimal representatives, taken literally."""
    _square(x, y)
    return df_trace(stp(ad_matrix(x.rep), ad_matrix(y.rep)))


def killing_form(x: MatrixClass, y: MatrixClass, check: bool | None = None):
    _square(x, y)
    value = killing_closed_form(x.rep, y.rep)
    if CROSS_CHECK if check is None else check:
        direct = killing_form_direct(x, y)
        same = direct == value if x.mode == EXACT else abs(direct - value) <= 1e-9 * max(1.0, abs(value))
        if not same:
            raise KillingMismatch(f"closed form {value} != explicit adjoint trace {direct}")
    return value


# ---------------------------------------------------------------------------
# Subalgebras
# ---------------------------------------------------------------------------

TRACE_ZERO = "trace_zero"
STABILIZER = "stabilizer"


@dataclass(frozen=True)
class SubalgebraSpec:
    kind: str
    m: MatrixClass | None = None

    def __post_init__(self):
        if self.kind == STABILIZER:
            if self.m is None or self.m.mu != SQUARE:
                raise NotSquareClass("a stabilizer subalgebra needs a square class")
        elif self.kind != TRACE_ZERO:
            raise ValueError(f"unknown subalgebra kind {self.kind!r}")


SL = SubalgebraSpec(TRACE_ZERO)


def stabilizer(m: MatrixClass) -> SubalgebraSpec:
    """``{X : X M + M X^T = 0}``."""
    return SubalgebraSpec(STABILIZER, m)


def subalgebra_contains(spec: SubalgebraSpec, x: MatrixClass) -> bool:
    _square(x)
    if spec.kind == TRACE_ZERO:
        return class_trace(x) == 0
    lhs = class_add(class_mul(x, spec.m), class_mul(spec.m, class_transpose(x)))
    return lhs == zero_class(SQUARE, x.mode)


def stabilizer_transport(p: MatrixClass) -> Callable[[MatrixClass], MatrixClass]:
    """Isomorphism between the stabilizers of ``<M>`` and ``<P>^T <M> <P>``.

    ``X -> <P>^T X <P>^{-T}`` preserves brackets and maps ``X M + M X^T = 0``
    to the same relation for ``N = P^T M P``.
    """
    pt = class_transpose(p)
    pt_inv = class_inverse(pt)

    def transport(x: MatrixClass) -> MatrixClass:
        return class_mul(class_mul(pt, x), pt_inv)

    return transport
