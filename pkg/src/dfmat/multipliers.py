"""Matrix-multiplier families ``n -> Γ_n`` and checks of their axioms.

A family qualifies when every ``Γ_n`` is idempotent, ``Γ_p ⊗ Γ_q == Γ_pq``
and ``Γ_1 == [1]``.  Four families are built in; :func:`custom` wraps a user
generator, which should be gated through :func:`verify_multiplier_axioms`
before use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from dfmat.matrix_core import EXACT, FLOAT, Matrix, kron, mat_mul, rank

IDENTITY = "identity"
MEAN_ONES = "mean_ones"
TOP_LEFT = "top_left"
BOTTOM_RIGHT = "bottom_right"
CUSTOM = "custom"

# Float-mode axiom comparisons use this absolute tolerance.
FLOAT_AXIOM_TOL = 1e-12


@dataclass(frozen=True)
class MultiplierFamily:
    kind: str
    name: str
    generator: Callable[[int, str], Matrix] | None = field(default=None, compare=False)

    def __call__(self, n: int, mode: str = EXACT) -> Matrix:
        return gamma(self, n, mode)

    def __str__(self) -> str:
        return self.name


Identity = MultiplierFamily(IDENTITY, "id")
MeanOnes = MultiplierFamily(MEAN_ONES, "mean")
TopLeft = MultiplierFamily(TOP_LEFT, "tl")
BottomRight = MultiplierFamily(BOTTOM_RIGHT, "br")

BUILTIN = (Identity, MeanOnes, TopLeft, BottomRight)
BY_NAME = {f.name: f for f in BUILTIN}


def family_by_name(name: str) -> MultiplierFamily:
    try:
        return BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown multiplier family {name!r}; pick one of {sorted(BY_NAME)}") from None


def custom(name: str, generator: Callable[[int, str], Matrix]) -> MultiplierFamily:
    return MultiplierFamily(CUSTOM, name, generator)


@lru_cache(maxsize=512)
def _builtin_gamma(kind: str, n: int, mode: str) -> Matrix:
    if kind == IDENTITY:
        return Matrix.identity(n, mode)
    if kind == MEAN_ONES:
        return Matrix(n, n, [Fraction(1, n)] * (n * n), mode)
    if kind == TOP_LEFT:
        return Matrix(n, n, [1 if i == 0 else 0 for i in range(n * n)], mode)
    if kind == BOTTOM_RIGHT:
        return Matrix(n, n, [1 if i == n * n - 1 else 0 for i in range(n * n)], mode)
    raise ValueError(f"unknown multiplier kind {kind!r}")


def gamma(family: MultiplierFamily, n: int, mode: str = EXACT) -> Matrix:
    """The ``n x n`` member ``Γ_n`` of ``family``."""
    if n < 1:
        raise ValueError(f"multiplier index must be positive, got {n}")
    if family.kind == CUSTOM:
        out = family.generator(n, mode)
        if out.shape != (n, n):
            raise ValueError(f"custom family {family.name!r} returned {out.rows}x{out.cols} for n={n}")
        return out
    return _builtin_gamma(family.kind, n, mode)


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    checked: int
    counterexample: str | None = None


@dataclass
class AxiomReport:
    family: str
    results: list[AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            tail = f"  first counterexample: {r.counterexample}" if r.counterexample else ""
            out.append(f"{status}  {r.axiom:<16} ({r.checked} cases){tail}")
        return out

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "passed": self.passed,
            "results": [vars(r) for r in self.results],
        }


def _equal(a: Matrix, b: Matrix) -> bool:
    if a.mode == FLOAT:
        return a.shape == b.shape and all(abs(x - y) <= FLOAT_AXIOM_TOL for x, y in zip(a.data, b.data))
    return a == b


def verify_multiplier_axioms(
    family: MultiplierFamily,
    max_n: int,
    mode: str = EXACT,
    idempotence_max: int | None = None,
) -> AxiomReport:
    """Check idempotence, multiplicativity and ``Γ_1 == [1]``.

    Idempotence is probed for ``n <= max_n**2`` unless ``idempotence_max``
    narrows it; multiplicativity for ``p, q <= max_n``.
    """
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    top = idempotence_max if idempotence_max is not None else max_n * max_n

    results = []
    bad = None
    for n in range(1, top + 1):
        g = gamma(family, n, mode)
        if not _equal(mat_mul(g, g), g):
            bad = f"n={n}"
            break
    results.append(AxiomResult("idempotence", bad is None, top if bad is None else int(bad[2:]), bad))

    bad = None
    count = 0
    for p in range(1, max_n + 1):
        for q in range(1, max_n + 1):
            count += 1
            if not _equal(kron(gamma(family, p, mode), gamma(family, q, mode)), gamma(family, p * q, mode)):
                bad = f"p={p}, q={q}"
                break
        if bad:
            break
    results.append(AxiomResult("multiplicativity", bad is None, count, bad))

    g1 = gamma(family, 1, mode)
    ok = _equal(g1, Matrix.identity(1, mode))
    results.append(AxiomResult("unit", ok, 1, None if ok else f"Gamma_1={g1!r}"))
    return AxiomReport(family.name, results)


def spectrum(family: MultiplierFamily, n: int) -> frozenset[int]:
    """Eigenvalue set of ``Γ_n`` for an idempotent nonzero member.

    Idempotent matrices only have eigenvalues 0 and 1; 1 is present because
    ``Γ_n != 0`` and 0 is present exactly when ``Γ_n`` is rank deficient.
    """
    g = gamma(family, n)
    if g.is_zero() or mat_mul(g, g) != g:
        raise ValueError(f"Gamma_{n} of {family.name!r} is not a nonzero idempotent")
    return frozenset({1}) if rank(g) == n else frozenset({0, 1})


def spectrum_check(family: MultiplierFamily, n: int) -> bool:
    try:
        s = spectrum(family, n)
    except ValueError:
        return False
    return s in (frozenset({1}), frozenset({0, 1}))
