"""Exception hierarchy shared by every module."""


class DfmError(Exception):
    """Base class for domain errors; ``code`` is the machine-readable tag."""

    code = "error"


class ModeMismatch(DfmError):
    code = "mode_mismatch"


class ShapeError(DfmError):
    code = "shape_error"


class SingularMatrix(DfmError):
    code = "singular"


class DimensionOverflow(DfmError):
    code = "dimension_overflow"


class MuMismatch(DfmError):
    code = "mu_mismatch"


class NotEquivalent(DfmError):
    code = "not_equivalent"


class UnsupportedKind(DfmError):
    code = "unsupported_kind"


class NotSquareClass(DfmError):
    code = "not_square_class"


class SingularClass(DfmError):
    code = "singular_class"


class NotSymmetric(DfmError):
    code = "not_symmetric"


class NonConvergence(DfmError):
    code = "non_convergence"


class ParseError(DfmError):
    code = "parse_error"
