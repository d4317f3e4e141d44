"""Client library for streaming optimizer fronts to a sonopt engine.

Deliberately standalone: the wire encoder here is an independent
implementation of the engine's OSC schema, kept byte-compatible through
shared golden fixtures rather than shared code.
"""

from .client import encode_front_datagram, send_front, send_param

__all__ = ["encode_front_datagram", "send_front", "send_param"]
__version__ = "0.1.0"
