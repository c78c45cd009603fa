"""Exception types raised across the package."""

from __future__ import annotations


class WmwError(Exception):
    """Base class for all package errors."""


class DataError(WmwError, ValueError):
    """The input data cannot be analysed."""


class EmptySample(DataError):
    def __init__(self, sample: str):
        self.sample = sample
        super().__init__(f"sample {sample} is empty")


class NonFiniteValue(DataError):
    def __init__(self, sample: str, index: int, value: float):
        self.sample = sample
        self.index = index
        self.value = value
        super().__init__(f"non-finite value {value!r} in sample {sample} at index {index}")


class TooSmall(DataError):
    """Sample sizes are too small for the requested computation."""


class TiesPresent(DataError):
    """Cross-sample ties found where continuous data is required."""


class TooLarge(WmwError):
    """An exhaustive enumeration would exceed its outcome budget."""
