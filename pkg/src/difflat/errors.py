"""Exception hierarchy shared by all difflat modules."""


class DifflatError(Exception):
    """Base class for all difflat errors."""


class SingularBasis(DifflatError):
    """Basis matrix is singular or too ill-conditioned to use."""


class BallTooLarge(DifflatError):
    """A point enumeration would exceed the configured point cap."""


class RuleDimensionMismatch(DifflatError):
    """Weight rule is incompatible with the lattice dimension."""


class NotAnIndicatorComb(DifflatError):
    """Operation requires all weights in {0, 1}."""


class ZRangeExceedsData(DifflatError):
    """Requested separation range exceeds what the tabulated comb supports."""


class EpsilonTooLarge(DifflatError):
    """Bump support radius exceeds half the packing radius."""


class NotADualLatticePoint(DifflatError):
    """Point does not reduce to integer dual-lattice coordinates."""


class DensityNotHalf(DifflatError):
    """Indicator set density is not close enough to half the lattice density."""


class ConfigError(DifflatError):
    """Invalid or inconsistent run configuration; message names the field."""


class MalformedFileError(DifflatError):
    """Parse failure in a structured text file; carries path and line number."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = int(line)
        super().__init__(f"{self.path}:{self.line}: {message}")


class MalformedLatticeFile(MalformedFileError):
    """Parse failure in a lattice basis file."""


class MalformedCombFile(MalformedFileError):
    """Parse failure in a comb file."""
