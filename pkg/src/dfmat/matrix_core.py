"""Dense matrices over exact rationals or floats, plus Kronecker primitives.

Every matrix is immutable.  Exact matrices hold :class:`fractions.Fraction`
entries (always reduced, positive denominator); float matrices hold Python
floats.  The two modes never mix inside one matrix, and binary operations
refuse to combine them implicitly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from dfmat.errors import (
    DimensionOverflow,
    ModeMismatch,
    ParseError,
    ShapeError,
    SingularMatrix,
)

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

# Hard cap on rows*cols for any constructed matrix.
MAX_ENTRIES = 10_000_000

# Relative |det| threshold below which a float matrix counts as singular.
FLOAT_SINGULAR_TOL = 1e-12


def coerce_scalar(value: Any, mode: str):
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            if not math.isfinite(value):
                raise ValueError(f"non-finite value {value!r} in exact mode")
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)
    if mode == FLOAT:
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)
    raise ValueError(f"unknown mode {mode!r}")


def _check_size(rows: int, cols: int) -> None:
    if rows * cols > MAX_ENTRIES:
        raise DimensionOverflow(
            f"{rows}x{cols} matrix exceeds the {MAX_ENTRIES}-entry limit"
        )


class Matrix:
    """Immutable dense row-major matrix."""

    __slots__ = ("rows", "cols", "data", "mode", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Any], mode: str = EXACT):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
            raise ShapeError(f"invalid shape {rows}x{cols}")
        _check_size(rows, cols)
        entries = tuple(coerce_scalar(v, mode) for v in data)
        if len(entries) != rows * cols:
            raise ShapeError(
                f"{len(entries)} entries given for a {rows}x{cols} matrix"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", entries)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple, mode: str) -> "Matrix":
        # Trusted constructor: entries already coerced, length already right.
        _check_size(rows, cols)
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "data", data)
        object.__setattr__(obj, "mode", mode)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], mode: str = EXACT) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, [v for r in rows for v in r], mode)

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> "Matrix":
        one, zero = _unit(mode)
        return cls._raw(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)), mode)

    @classmethod
    def zeros(cls, m: int, n: int, mode: str = EXACT) -> "Matrix":
        _, zero = _unit(mode)
        return cls._raw(m, n, (zero,) * (m * n), mode)

    @classmethod
    def ones(cls, m: int, n: int, mode: str = EXACT) -> "Matrix":
        one, _ = _unit(mode)
        return cls._raw(m, n, (one,) * (m * n), mode)

    @classmethod
    def diag(cls, values: Sequence[Any], mode: str = EXACT) -> "Matrix":
        n = len(values)
        _, zero = _unit(mode)
        vals = [coerce_scalar(v, mode) for v in values]
        return cls._raw(n, n, tuple(vals[i] if i == j else zero for i in range(n) for j in range(n)), mode)

    # -- basic protocol ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Matrix":
        return transpose(self)

    def __getitem__(self, idx: tuple[int, int]):
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.mode == other.mode
            and self.data == other.data
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.mode, self.data)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(_fmt(v) for v in self.row(i)) for i in range(self.rows))
        tag = "" if self.mode == EXACT else ", float"
        return f"Matrix({self.rows}x{self.cols}{tag}: [{body}])"

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __neg__(self):
        return scalar_mul(-1, self)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        return scalar_mul(scalar, self)

    __rmul__ = __mul__

    # -- conversions ------------------------------------------------------------

    def to_float(self) -> "Matrix":
        if self.mode == FLOAT:
            return self
        return Matrix._raw(self.rows, self.cols, tuple(float(v) for v in self.data), FLOAT)

    def to_exact(self) -> "Matrix":
        if self.mode == EXACT:
            return self
        return Matrix(self.rows, self.cols, self.data, EXACT)

    def to_numpy(self):
        import numpy as np

        return np.array([[float(v) for v in self.row(i)] for i in range(self.rows)])

    @classmethod
    def from_numpy(cls, arr) -> "Matrix":
        import numpy as np

        arr = np.atleast_2d(np.asarray(arr, dtype=float))
        m, n = arr.shape
        return cls._raw(m, n, tuple(float(v) for v in arr.ravel()), FLOAT)


def _unit(mode: str):
    if mode == EXACT:
        return Fraction(1), Fraction(0)
    if mode == FLOAT:
        return 1.0, 0.0
    raise ValueError(f"unknown mode {mode!r}")


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(v)


def _same_mode(*mats: Matrix) -> str:
    mode = mats[0].mode
    for m in mats[1:]:
        if m.mode != mode:
            raise ModeMismatch(f"cannot combine {mode} and {m.mode} matrices")
    return mode


@dataclass(frozen=True)
class MuRatio:
    """Reduced row/column ratio ``mu_y / mu_x`` of a matrix shape."""

    mu_y: int
    mu_x: int

    def __post_init__(self):
        if self.mu_y < 1 or self.mu_x < 1 or math.gcd(self.mu_y, self.mu_x) != 1:
            raise ValueError(f"({self.mu_y}, {self.mu_x}) is not a reduced positive ratio")

    def slice_index(self, a: Matrix) -> int:
        """``k`` such that ``a`` lives in ``M_μ^k`` (size ``k*mu_y x k*mu_x``)."""
        return a.rows // self.mu_y

    def __str__(self) -> str:
        return f"{self.mu_y}/{self.mu_x}"


def mu_of(a: Matrix) -> MuRatio:
    g = math.gcd(a.rows, a.cols)
    return MuRatio(a.rows // g, a.cols // g)


# ---------------------------------------------------------------------------
# Kronecker structure
# ---------------------------------------------------------------------------


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    mode = _same_mode(a, b)
    m, n, p, q = a.rows, a.cols, b.rows, b.cols
    _check_size(m * p, n * q)
    _, zero = _unit(mode)
    zero_row = (zero,) * q
    out = []
    brows = [b.row(k) for k in range(p)]
    for i in range(m):
        arow = a.row(i)
        for k in range(p):
            brow = brows[k]
            for x in arow:
                if x:
                    out.extend(x * y for y in brow)
                else:
                    out.extend(zero_row)
    return Matrix._raw(m * p, n * q, tuple(out), mode)


def lift(a: Matrix, k: int) -> Matrix:
    """``a ⊗ I_k``."""
    if k == 1:
        return a
    return kron(a, Matrix.identity(k, a.mode))


def lift_right(a: Matrix, k: int) -> Matrix:
    """``I_k ⊗ a``."""
    if k == 1:
        return a
    return kron(Matrix.identity(k, a.mode), a)


def canonical_column(m: int, i: int, mode: str = EXACT) -> Matrix:
    """The ``m x 1`` column with a single 1 in (1-based) row ``i``."""
    if m < 1 or not 1 <= i <= m:
        raise ShapeError(f"canonical_column index {i} out of range 1..{m}")
    one, zero = _unit(mode)
    return Matrix._raw(m, 1, tuple(one if r == i - 1 else zero for r in range(m)), mode)


def swap_matrix(m: int, n: int, mode: str = EXACT) -> Matrix:
    """The ``mn x mn`` swap matrix ``W[m,n] = (I_n ⊗ δ_m^1, ..., I_n ⊗ δ_m^m)``.

    It maps ``x ⊗ y`` (``x`` of length m, ``y`` of length n) to ``y ⊗ x``, so
    ``W[m,p] (A ⊗ B) W[q,n] = B ⊗ A`` for ``A`` m x n and ``B`` p x q.
    """
    if m < 1 or n < 1:
        raise ShapeError(f"invalid swap dimensions {m}, {n}")
    size = m * n
    one, zero = _unit(mode)
    data = [zero] * (size * size)
    for i in range(m):
        for j in range(n):
            data[(j * m + i) * size + (i * n + j)] = one
    return Matrix._raw(size, size, tuple(data), mode)


def _close(x, y, tol) -> bool:
    if tol is None:
        return x == y
    return abs(x - y) <= tol


def identity_cofactor(a: Matrix, k: int, tol: float | None = None) -> Matrix | None:
    """Return ``L`` with ``a == L ⊗ I_k``, or ``None`` if there is none.

    ``tol`` enables an absolute-tolerance block test for float matrices; the
    cofactor entries are then the mean of each block's diagonal.
    """
    if k < 1 or a.rows % k or a.cols % k:
        raise ShapeError(f"{k} does not divide both dimensions of a {a.rows}x{a.cols} matrix")
    if k == 1:
        return a
    m, n = a.rows // k, a.cols // k
    cols = a.cols
    data = a.data
    out = []
    for bi in range(m):
        for bj in range(n):
            base = bi * k * cols + bj * k
            d0 = data[base]
            acc = d0
            for r in range(k):
                off = base + r * cols
                for c in range(k):
                    v = data[off + c]
                    if r == c:
                        if not _close(v, d0, tol):
                            return None
                        if r:
                            acc = acc + v
                    elif not _close(v, 0, tol):
                        return None
            out.append(d0 if tol is None else acc / k)
    return Matrix._raw(m, n, tuple(out), a.mode)


def identity_cofactor_right(a: Matrix, k: int, tol: float | None = None) -> Matrix | None:
    """Return ``L`` with ``a == I_k ⊗ L``, or ``None``."""
    if k < 1 or a.rows % k or a.cols % k:
        raise ShapeError(f"{k} does not divide both dimensions of a {a.rows}x{a.cols} matrix")
    if k == 1:
        return a
    m, n = a.rows // k, a.cols // k
    blocks = [[_block(a, bi, bj, m, n) for bj in range(k)] for bi in range(k)]
    head = blocks[0][0]
    for bi in range(k):
        for bj in range(k):
            blk = blocks[bi][bj]
            if bi == bj:
                if not all(_close(x, y, tol) for x, y in zip(blk, head)):
                    return None
            elif not all(_close(x, 0, tol) for x in blk):
                return None
    if tol is None:
        return Matrix._raw(m, n, head, a.mode)
    avg = [sum(blocks[d][d][i] for d in range(k)) / k for i in range(m * n)]
    return Matrix._raw(m, n, tuple(avg), a.mode)


def _block(a: Matrix, bi: int, bj: int, m: int, n: int) -> tuple:
    out = []
    for r in range(bi * m, (bi + 1) * m):
        start = r * a.cols + bj * n
        out.extend(a.data[start:start + n])
    return tuple(out)


# ---------------------------------------------------------------------------
# Ordinary linear algebra
# ---------------------------------------------------------------------------


def transpose(a: Matrix) -> Matrix:
    m, n = a.rows, a.cols
    d = a.data
    return Matrix._raw(n, m, tuple(d[i * n + j] for j in range(n) for i in range(m)), a.mode)


def trace(a: Matrix):
    if not a.is_square:
        raise ShapeError(f"trace of non-square {a.rows}x{a.cols} matrix")
    _, zero = _unit(a.mode)
    return sum((a.data[i * a.cols + i] for i in range(a.rows)), zero)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    mode = _same_mode(a, b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    return Matrix._raw(a.rows, a.cols, tuple(x + y for x, y in zip(a.data, b.data)), mode)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    mode = _same_mode(a, b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot subtract {b.rows}x{b.cols} from {a.rows}x{a.cols}")
    return Matrix._raw(a.rows, a.cols, tuple(x - y for x, y in zip(a.data, b.data)), mode)


def scalar_mul(r: Any, a: Matrix) -> Matrix:
    r = coerce_scalar(r, a.mode)
    return Matrix._raw(a.rows, a.cols, tuple(r * x for x in a.data), a.mode)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    mode = _same_mode(a, b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    m, n, q = a.rows, a.cols, b.cols
    _, zero = _unit(mode)
    brows = [b.row(k) for k in range(n)]
    out = []
    for i in range(m):
        acc = [zero] * q
        arow = a.row(i)
        for k in range(n):
            x = arow[k]
            if x:
                brow = brows[k]
                for j in range(q):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.extend(acc)
    return Matrix._raw(m, q, tuple(out), mode)


def _eliminate(a: Matrix):
    """Row-reduce a copy of ``a``; return (echelon rows, pivot columns, sign)."""
    rows = [list(a.row(i)) for i in range(a.rows)]
    exact = a.mode == EXACT
    scale = max((abs(v) for v in a.data), default=0)
    eps = 0 if exact else FLOAT_SINGULAR_TOL * max(scale, 1e-300) * max(a.rows, a.cols)
    pivots = []
    sign = 1
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        if exact:
            p = next((i for i in range(r, a.rows) if rows[i][c] != 0), None)
        else:
            p = max(range(r, a.rows), key=lambda i: abs(rows[i][c]))
            if abs(rows[p][c]) <= eps:
                p = None
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, a.rows):
            f = rows[i][c]
            if f:
                f = f / piv
                ri, rr = rows[i], rows[r]
                for j in range(c, a.cols):
                    ri[j] -= f * rr[j]
        pivots.append(c)
        r += 1
    return rows, pivots, sign


def rank(a: Matrix) -> int:
    return len(_eliminate(a)[1])


def determinant(a: Matrix):
    if not a.is_square:
        raise ShapeError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    rows, pivots, sign = _eliminate(a)
    one, zero = _unit(a.mode)
    if len(pivots) < a.rows:
        return zero
    det = one * sign
    for i in range(a.rows):
        det *= rows[i][i]
    return det


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; exact in exact mode."""
    if not a.is_square:
        raise ShapeError(f"inverse of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    one, zero = _unit(a.mode)
    exact = a.mode == EXACT
    if not exact:
        scale = max(abs(v) for v in a.data)
        det = determinant(a)
        if scale == 0 or abs(det) <= FLOAT_SINGULAR_TOL * scale ** n:
            raise SingularMatrix("matrix is numerically singular")
    aug = [list(a.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        if exact:
            p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        else:
            p = max(range(c, n), key=lambda i: abs(aug[i][c]))
        if p is None or aug[p][c] == 0:
            raise SingularMatrix("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [v / piv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return Matrix._raw(n, n, tuple(v for r in aug for v in r[n:]), a.mode)


def is_symmetric(a: Matrix) -> bool:
    return a.is_square and a == transpose(a)


def frobenius_distance(a: Matrix, b: Matrix) -> float:
    if a.shape != b.shape:
        raise ShapeError(f"shapes differ: {a.shape} vs {b.shape}")
    return math.sqrt(sum(float(x - y) ** 2 for x, y in zip(a.data, b.data)))


def allclose(a: Matrix, b: Matrix, tol: float = 1e-10) -> bool:
    return a.shape == b.shape and all(abs(float(x) - float(y)) <= tol for x, y in zip(a.data, b.data))


def vec_columns(a: Matrix) -> Matrix:
    """Column stacking: column ``j`` of ``a`` fills entries ``j*m .. j*m+m-1``."""
    return Matrix._raw(a.rows * a.cols, 1, transpose(a).data, a.mode)


def unvec_columns(v: Matrix, m: int) -> Matrix:
    if v.cols != 1 or v.rows % m:
        raise ShapeError(f"cannot unstack {v.rows}x{v.cols} into {m} rows")
    n = v.rows // m
    return transpose(Matrix._raw(n, m, v.data, v.mode))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def scalar_to_json(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def matrix_to_dict(a: Matrix) -> dict:
    return {
        "rows": a.rows,
        "cols": a.cols,
        "mode": a.mode,
        "data": [[scalar_to_json(v) for v in a.row(i)] for i in range(a.rows)],
    }


def matrix_from_dict(obj: Any, mode: str | None = None) -> Matrix:
    """Parse the interchange dict; ``mode`` overrides the declared mode."""
    try:
        declared = obj.get("mode", EXACT)
        rows = obj["data"]
        mat = Matrix.from_rows(rows, declared if declared in MODES else EXACT)
        if declared not in MODES:
            raise ParseError(f"unknown mode {declared!r}")
        if "rows" in obj and obj["rows"] != mat.rows or "cols" in obj and obj["cols"] != mat.cols:
            raise ParseError(
                f"declared shape {obj.get('rows')}x{obj.get('cols')} does not match data {mat.rows}x{mat.cols}"
            )
    except ParseError:
        raise
    except (AttributeError, KeyError, TypeError, ValueError, ZeroDivisionError, ShapeError) as exc:
        raise ParseError(f"invalid matrix document: {exc}") from exc
    if declared == EXACT and any(isinstance(v, float) for r in rows for v in r):
        raise ParseError("exact matrices take integers or 'p/q' strings, not JSON floats")
    if mode == FLOAT:
        return mat.to_float()
    if mode == EXACT:
        return mat.to_exact()
    return mat


def matrix_to_json(a: Matrix) -> str:
    return json.dumps(matrix_to_dict(a))


def matrix_from_json(text: str, mode: str | None = None) -> Matrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return matrix_from_dict(obj, mode)
