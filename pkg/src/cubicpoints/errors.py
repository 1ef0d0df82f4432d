"""Exception hierarchy.

The CLI maps these onto process exit codes, so the split mirrors the
failure channels a caller can act on: bad input, a singular curve where a
smooth one is required, a numerical breakdown, and an unresolvable
tracking ambiguity.
"""
from __future__ import annotations


class CubicPointsError(Exception):
    """Base class for all package errors."""


class InputError(CubicPointsError, ValueError):
    """Malformed or out-of-contract input (bad file, wrong degree, zero vector)."""


class SingularCurveError(CubicPointsError):
    """A singular cubic was supplied where a smooth one is required."""


class DiscriminantPathError(SingularCurveError):
    """A tracked parameter path passed too close to the discriminant locus."""


class NumericalError(CubicPointsError):
    """A numerical procedure failed its own certification (residuals, counts)."""


class TrackingAmbiguityError(CubicPointsError):
    """Point matching stayed ambiguous at the minimum step size."""
