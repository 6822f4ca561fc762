from .function import CMFunction, evaluate, constant_one, dump_function, load_function, wrap_angle
from .arcs import ArcReport, check_Fc, minimal_arc
from .sampling import SampleKind, sample, omega_max

__all__ = [
    "CMFunction",
    "evaluate",
    "constant_one",
    "dump_function",
    "load_function",
    "wrap_angle",
    "ArcReport",
    "check_Fc",
    "minimal_arc",
    "SampleKind",
    "sample",
    "omega_max",
]
