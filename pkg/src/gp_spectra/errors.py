from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Sequence

    from gp_spectra.dw.iteration import DwTrace


class SpectraError(Exception):
    """Base class for every error raised by gp_spectra."""


class MeasureError(SpectraError, ValueError):
    """Structural violation of a measure (non-positive mass, unordered atoms, ...)."""


class AssumptionError(MeasureError):
    """A standing assumption on the measure is violated under the strict policy."""

    def __init__(self, message: str, failed: Sequence[str]):
        self.failed = tuple(failed)
        super().__init__(message)


class UnsupportedError(SpectraError):
    """The requested operation has no model for this variant, formula or system."""

    def __init__(self, message: str, hypothesis: str | None = None):
        self.hypothesis = hypothesis
        super().__init__(message)


class DomainError(SpectraError, ValueError):
    """A point lies on, or too close to, a pole or branch cut."""

    def __init__(
        self,
        message: str,
        z: complex,
        atom: int | None = None,
        cut: bool = False,
    ):
        self.z = z
        self.atom = atom
        self.cut = cut
        super().__init__(message)


class InvariantError(SpectraError, AssertionError):
    """An internal contract was broken; signals a branch or domain bug."""


class NoConvergenceError(SpectraError):
    """An iterative solver stopped without meeting its tolerance."""

    def __init__(
        self,
        message: str,
        last_iterate: Any,
        residuals: Sequence[float] | None = None,
    ):
        self.last_iterate = last_iterate
        self.residuals = tuple(residuals) if residuals is not None else None
        super().__init__(message)


class IterationError(SpectraError):
    """Wraps an error raised mid-iteration and carries the trace built so far."""

    _trace: DwTrace
    _original_exception: Exception

    def __init__(self, trace: DwTrace, original_exception: Exception):
        self._trace = trace
        self._original_exception = original_exception
        super().__init__(str(original_exception))

    @property
    def trace(self) -> DwTrace:
        return self._trace

    @property
    def original_exception(self) -> Exception:
        return self._original_exception

    def __str__(self) -> str:
        """Return the string representation of the original exception."""
        return str(self._original_exception)

    def __repr__(self) -> str:
        """Return the detailed representation of the IterationError."""
        return f"IterationError({self._original_exception!r})"


class CertificateError(SpectraError):
    """The argument-principle certificate could not be produced."""


class BoundaryTooCloseError(CertificateError):
    """A zero of the characteristic function sits on or near the box boundary."""


class InconclusiveError(CertificateError):
    """Quadrature residual too large to round the winding number."""

    def __init__(self, message: str, raw_winding: complex):
        self.raw_winding = raw_winding
        super().__init__(message)


class AmbiguousCountError(SpectraError):
    """A root falls inside the tolerance band separating real from non-real."""

    def __init__(self, message: str, roots: Sequence[complex]):
        self.roots = tuple(roots)
        super().__init__(message)


class GridExhaustedError(SpectraError):
    """The search grid did not contain an admissible point; widen it."""
