"""sonopt: sonification of bi-objective optimizer runs.

Two synthesis paths turn per-generation approximation sets into sound:
the set's shape becomes a single-cycle wavetable, and cross-generation
recurrence of objective vectors drives harmonic partials. Fronts come
from the embedded optimizers, an OSC socket, or a recorded event log.
"""

from .engine import LiveSession, RenderResult, SonificationEngine, mix, render_run
from .errors import SonoptError
from .events import FrontEvent, ParamEvent, RunEventLog
from .front import GenerationFront, RawFront, nondominated_filter, normalize, validate_raw
from .harness import run_algorithm
from .params import LIVE_TUNABLE, EngineParams
from .problems import PROBLEMS, get_problem

__version__ = "0.1.0"

__all__ = [
    "EngineParams",
    "FrontEvent",
    "GenerationFront",
    "LIVE_TUNABLE",
    "LiveSession",
    "ParamEvent",
    "PROBLEMS",
    "RawFront",
    "RenderResult",
    "RunEventLog",
    "SonificationEngine",
    "SonoptError",
    "get_problem",
    "mix",
    "nondominated_filter",
    "normalize",
    "render_run",
    "run_algorithm",
    "validate_raw",
    "__version__",
]
