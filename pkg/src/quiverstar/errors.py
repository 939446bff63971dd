"""Exceptions shared across the engine, mapped to CLI exit codes."""

from __future__ import annotations


class QuiverStarError(Exception):
    """Base class for engine errors."""


class NotDynkinError(QuiverStarError):
    """Operation requires an ADE quiver (component naming unavailable otherwise)."""


class NoMajorityError(QuiverStarError):
    """Randomized trials did not produce a majority answer.

    Carries the observed candidates; the caller may raise the trial count.
    """

    def __init__(self, message: str, candidates=None):
        super().__init__(message)
        self.candidates = candidates or []


class RouteMismatchError(QuiverStarError):
    """Two independent computation routes disagreed (internal assertion)."""


class GenericityError(QuiverStarError):
    """A sampled point failed its certificate check after all retries."""
