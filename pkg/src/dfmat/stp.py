"""Left/right semi-tensor products and Γ-additions on the slices ``M_μ``."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from dfmat.errors import MuMismatch
from dfmat.matrix_core import Matrix, _same_mode, kron, mat_add, mat_mul, mu_of, scalar_mul
from dfmat.multipliers import Identity, MultiplierFamily, family_by_name, gamma

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class StpVariant:
    side: str = LEFT
    family: MultiplierFamily = Identity

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}, got {self.side!r}")


CLASSICAL = StpVariant(LEFT, Identity)


def variant(side: str = "l", family: str = "id") -> StpVariant:
    """Build a variant from CLI-style short names (``l``/``r``, ``id``/``mean``/...)."""
    sides = {"l": LEFT, "left": LEFT, "r": RIGHT, "right": RIGHT}
    try:
        s = sides[side]
    except KeyError:
        raise ValueError(f"unknown side {side!r}") from None
    return StpVariant(s, family_by_name(family))


def _pad(v: StpVariant, a: Matrix, k: int) -> Matrix:
    if k == 1:
        return a
    g = gamma(v.family, k, a.mode)
    return kron(a, g) if v.side == LEFT else kron(g, a)


def stp_mul(v: StpVariant, a: Matrix, b: Matrix) -> Matrix:
    """Semi-tensor product: pad both factors up to ``t = lcm(cols(a), rows(b))``."""
    _same_mode(a, b)
    t = lcm(a.cols, b.rows)
    return mat_mul(_pad(v, a, t // a.cols), _pad(v, b, t // b.rows))


def stp(a: Matrix, b: Matrix) -> Matrix:
    """Classical left STP with identity padding."""
    return stp_mul(CLASSICAL, a, b)


def stp_add(v: StpVariant, a: Matrix, b: Matrix) -> Matrix:
    _same_mode(a, b)
    mu_a, mu_b = mu_of(a), mu_of(b)
    if mu_a != mu_b:
        raise MuMismatch(f"operands live in different slices: mu={mu_a} vs mu={mu_b}")
    t = lcm(a.rows, b.rows)
    return mat_add(_pad(v, a, t // a.rows), _pad(v, b, t // b.rows))


def stp_sub(v: StpVariant, a: Matrix, b: Matrix) -> Matrix:
    return stp_add(v, a, scalar_mul(-1, b))
