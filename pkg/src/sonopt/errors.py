"""Exception types shared across the engine."""

from __future__ import annotations


class SonoptError(Exception):
    """Base class for all engine errors."""


class EmptyFrontError(SonoptError):
    """A generation arrived with zero points."""


class NonFiniteValueError(SonoptError):
    """An objective value is NaN or infinite.

    ``index`` is the position of the offending point within the front.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"non-finite objective value at point index {index}")


class NonConsecutiveError(SonoptError):
    """Recurrence detection was asked to compare non-adjacent generations."""


class IndexOutOfRangeError(SonoptError):
    """A recurrent index exceeds the configured partial count."""


class BufferOverflowError(SonoptError):
    """A generation needs more wavetable samples than the buffer holds."""


class LengthMismatchError(SonoptError):
    """Two audio blocks of different lengths were mixed."""


class AudioTooShortError(SonoptError):
    """The audio is shorter than one analysis window."""


class OutOfBoundsError(SonoptError):
    """A decision vector lies outside the problem's box bounds."""


class OscDecodeError(SonoptError):
    """Base class for OSC packet decoding failures."""


class MalformedPacketError(OscDecodeError):
    """Packet bytes do not form a valid message (alignment, type tags, values)."""


class UnknownAddressError(OscDecodeError):
    """Packet address is not one the engine understands."""


class CountMismatchError(OscDecodeError):
    """Declared point count disagrees with the arguments present."""
