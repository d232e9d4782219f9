"""Γ-equivalence of matrices, minimal representatives and lattice bounds.

Two matrices of the same ratio are equivalent when ``A ⊗ Γ_α == B ⊗ Γ_β``
(or the mirrored condition for the right side).  Only the identity and
mean-of-ones families are supported here.  Under identity padding every
class has a unique minimal member ``Λ`` and every member is ``Λ ⊗ I_k``,
so the members of a class are indexed by ``k`` and ordered by divisibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from dfmat.errors import ModeMismatch, NotEquivalent, ShapeError, UnsupportedKind
from dfmat.matrix_core import (
    FLOAT,
    Matrix,
    _close,
    allclose,
    identity_cofactor,
    identity_cofactor_right,
    kron,
    mu_of,
)
from dfmat.multipliers import IDENTITY, MEAN_ONES, Identity, MeanOnes, MultiplierFamily, gamma
from dfmat.stp import LEFT, RIGHT

# Block-test tolerance used for float matrices unless the caller overrides it.
FLOAT_BLOCK_TOL = 1e-10


@dataclass(frozen=True)
class EquivalenceKind:
    side: str = LEFT
    family: MultiplierFamily = Identity

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}, got {self.side!r}")
        if self.family.kind not in (IDENTITY, MEAN_ONES):
            raise UnsupportedKind(
                f"equivalence is only defined for the identity and mean-of-ones families, not {self.family.name!r}"
            )

    @property
    def symbol(self) -> str:
        base = "~" if self.family.kind == IDENTITY else "≈"
        return base + ("_l" if self.side == LEFT else "_r")


LEFT_IDENTITY = EquivalenceKind(LEFT, Identity)
RIGHT_IDENTITY = EquivalenceKind(RIGHT, Identity)
LEFT_MEAN = EquivalenceKind(LEFT, MeanOnes)
RIGHT_MEAN = EquivalenceKind(RIGHT, MeanOnes)


@dataclass(frozen=True)
class LatticePair:
    """Least upper bound ``theta`` and greatest lower bound ``lam`` of two members.

    ``theta == a ⊗ I_alpha == b ⊗ I_beta`` with ``gcd(alpha, beta) == 1``,
    and ``a == lam ⊗ I_beta``, ``b == lam ⊗ I_alpha`` (mirrored for the
    right side).
    """

    theta: Matrix
    lam: Matrix
    alpha: int
    beta: int


def _divisors_desc(n: int) -> list[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small) | {n // d for d in small}, reverse=True)


def pad(a: Matrix, k: int, kind: EquivalenceKind = LEFT_IDENTITY) -> Matrix:
    """``a ⊗ Γ_k`` (left) or ``Γ_k ⊗ a`` (right) for the kind's family."""
    if k == 1:
        return a
    g = gamma(kind.family, k, a.mode)
    return kron(a, g) if kind.side == LEFT else kron(g, a)


def _mean_cofactor_left(a: Matrix, k: int, tol) -> Matrix | None:
    # a == L ⊗ J_k  <=>  every k x k block is constant; L = k * block value.
    m, n = a.rows // k, a.cols // k
    cols, data = a.cols, a.data
    out = []
    for bi in range(m):
        for bj in range(n):
            base = bi * k * cols + bj * k
            v0 = data[base]
            for r in range(k):
                off = base + r * cols
                if not all(_close(data[off + c], v0, tol) for c in range(k)):
                    return None
            out.append(v0 * k)
    return Matrix._raw(m, n, tuple(out), a.mode)


def _mean_cofactor_right(a: Matrix, k: int, tol) -> Matrix | None:
    # a == J_k ⊗ L  <=>  a is a k x k grid of identical blocks L / k.
    m, n = a.rows // k, a.cols // k
    head = None
    for bi in range(k):
        for bj in range(k):
            blk = [
                a.data[r * a.cols + bj * n + c]
                for r in range(bi * m, (bi + 1) * m)
                for c in range(n)
            ]
            if head is None:
                head = blk
            elif not all(_close(x, y, tol) for x, y in zip(blk, head)):
                return None
    return Matrix._raw(m, n, tuple(v * k for v in head), a.mode)


def cofactor(a: Matrix, k: int, kind: EquivalenceKind = LEFT_IDENTITY, tol: float | None = None) -> Matrix | None:
    """Return ``L`` with ``pad(L, k, kind) == a``, or ``None``."""
    if a.rows % k or a.cols % k:
        raise ShapeError(f"{k} does not divide both dimensions of a {a.rows}x{a.cols} matrix")
    if k == 1:
        return a
    if kind.family.kind == IDENTITY:
        if kind.side == LEFT:
            return identity_cofactor(a, k, tol)
        return identity_cofactor_right(a, k, tol)
    if kind.side == LEFT:
        return _mean_cofactor_left(a, k, tol)
    return _mean_cofactor_right(a, k, tol)


def _default_tol(a: Matrix, tol):
    if tol is None and a.mode == FLOAT:
        return FLOAT_BLOCK_TOL
    return tol


def minimal_representative(
    a: Matrix, kind: EquivalenceKind = LEFT_IDENTITY, tol: float | None = None
) -> tuple[Matrix, int]:
    """Return ``(L, d)`` with ``a == pad(L, d, kind)`` and ``d`` maximal.

    Divisors of ``gcd(rows, cols)`` are tried largest first; the first one
    that factors gives the minimal member, since a further factorisation of
    ``L`` would yield a larger working divisor.  For mean-of-ones kinds the
    result is a valid factorisation but is not used as a class key.
    """
    tol = _default_tol(a, tol)
    for d in _divisors_desc(gcd(a.rows, a.cols)):
        lam = cofactor(a, d, kind, tol)
        if lam is not None:
            return lam, d
    return a, 1  # pragma: no cover - d == 1 always factors


def _matrices_equal(a: Matrix, b: Matrix, tol) -> bool:
    if tol is None:
        return a == b
    return allclose(a, b, tol)


def are_equivalent(a: Matrix, b: Matrix, kind: EquivalenceKind = LEFT_IDENTITY, tol: float | None = None) -> bool:
    if a.mode != b.mode:
        raise ModeMismatch(f"cannot compare {a.mode} and {b.mode} matrices")
    if mu_of(a) != mu_of(b):
        return False
    tol = _default_tol(a, tol)
    if kind.family.kind == IDENTITY:
        lam_a, _ = minimal_representative(a, kind, tol)
        lam_b, _ = minimal_representative(b, kind, tol)
        return _matrices_equal(lam_a, lam_b, tol)
    # Equality at one common multiple implies equality at every larger one,
    # and any witness pair reduces to the least common lift.
    t = lcm(a.rows, b.rows)
    return _matrices_equal(pad(a, t // a.rows, kind), pad(b, t // b.rows, kind), tol)


def _require_identity(kind: EquivalenceKind, what: str) -> None:
    if kind.family.kind != IDENTITY:
        raise UnsupportedKind(f"{what} is only available for identity-padding kinds")


def lattice_bounds(a: Matrix, b: Matrix, kind: EquivalenceKind = LEFT_IDENTITY) -> LatticePair:
    _require_identity(kind, "lattice_bounds")
    if not are_equivalent(a, b, kind):
        raise NotEquivalent("matrices are not equivalent")
    tol = _default_tol(a, None)
    lam0, da = minimal_representative(a, kind, tol)
    _, db = minimal_representative(b, kind, tol)
    g = gcd(da, db)
    return LatticePair(
        theta=pad(lam0, da * db // g, kind),
        lam=pad(lam0, g, kind),
        alpha=db // g,
        beta=da // g,
    )


def precedes(a: Matrix, b: Matrix, side: str = LEFT) -> bool:
    """True iff ``a ⊗ I_α == b`` (``I_α ⊗ a == b`` on the right) for some ``α``."""
    if a.mode != b.mode:
        return False
    if b.rows % a.rows or b.cols % a.cols:
        return False
    alpha = b.rows // a.rows
    if b.cols // a.cols != alpha:
        return False
    kind = LEFT_IDENTITY if side == LEFT else RIGHT_IDENTITY
    tol = _default_tol(a, None)
    c = cofactor(b, alpha, kind, tol)
    return c is not None and _matrices_equal(c, a, tol)


def slice_lattice_bounds(k1: int, k2: int) -> tuple[int, int]:
    """Indices of the inf and sup of the slices ``M_μ^k1`` and ``M_μ^k2``."""
    if k1 < 1 or k2 < 1:
        raise ValueError("slice indices must be positive")
    return gcd(k1, k2), lcm(k1, k2)


def _closure(ks: set[int]) -> set[int]:
    out = set(ks)
    while True:
        new = {f(x, y) for x in out for y in out for f in (gcd, lcm)} - out
        if not new:
            return out
        out |= new


def hasse_dot(elements: list[Matrix], kind: EquivalenceKind = LEFT_IDENTITY) -> str:
    """DOT digraph of the covering relation among ``elements`` and their bounds.

    Edges point from the smaller member to the one covering it.
    """
    _require_identity(kind, "hasse_dot")
    if not elements:
        raise ValueError("need at least one element")
    tol = _default_tol(elements[0], None)
    lam0, _ = minimal_representative(elements[0], kind, tol)
    given = set()
    for e in elements:
        if not are_equivalent(e, elements[0], kind):
            raise NotEquivalent("all elements of a Hasse diagram must be equivalent")
        given.add(minimal_representative(e, kind, tol)[1])
    ks = sorted(_closure(given))
    edges = [
        (lo, hi)
        for lo in ks
        for hi in ks
        if hi != lo and hi % lo == 0 and not any(mid not in (lo, hi) and mid % lo == 0 and hi % mid == 0 for mid in ks)
    ]
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for k in ks:
        rows, cols = lam0.rows * k, lam0.cols * k
        tag = "Λ" if k == 1 else (f"Λ⊗I_{k}" if kind.side == LEFT else f"I_{k}⊗Λ")
        style = "" if k in given else ", style=dashed"
        lines.append(f'  k{k} [label="{tag} ({rows}x{cols})"{style}];')
    for lo, hi in edges:
        lines.append(f"  k{lo} -> k{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
