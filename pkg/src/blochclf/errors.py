"""Exception hierarchy and the fixed numerical tolerances."""

from __future__ import annotations

from typing import Final

#: Tolerance for checks on quantities computed in one or two exact-ish steps.
EXACT_TOL: Final = 1e-12
#: Tolerance for checks on quantities that accumulate rounding (sums, squares).
ACCUM_TOL: Final = 1e-9
#: Below this, ``1 - r_last`` is treated as the north pole.
NORTH_POLE_TOL: Final = 1e-12


class BlochClfError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(BlochClfError, ValueError):
    """Non-finite values or a vector off the unit sphere."""


class DimensionMismatchError(BlochClfError, ValueError):
    pass


class UnsupportedDimensionError(BlochClfError, ValueError):
    pass


class SingularPointError(BlochClfError, ValueError):
    """Stereographic projection requested at the north pole."""


class SingularNormalizationError(BlochClfError, ValueError):
    """A normalization factor diverges because a pattern sits at the north pole."""


class TrainingError(BlochClfError, ValueError):
    pass


class ParseError(BlochClfError, ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UnsupportedPlotError(BlochClfError, ValueError):
    pass
