from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional, Tuple

from src.utils.errors import InvalidArgumentError


@dataclass
class ExperimentConfig:
    """
    Everything a CLI run depends on.

    Serialized into every output file; feeding that file back through
    ``--config`` reproduces the run.
    """

    command: str = ""
    T: Optional[float] = None
    N: Optional[int] = None
    window: Optional[Tuple[float, float]] = None
    lam: Optional[float] = None
    K: Optional[int] = None
    y: Optional[int] = None
    c: Optional[float] = None
    center: Optional[int] = None
    delta: Optional[float] = None
    eta: Optional[float] = None
    seed: int = 0
    kind: str = "constant_one"
    style: str = "thm11"
    tolerance: Optional[float] = None
    budget: Optional[float] = None
    search_budget: Optional[float] = None
    set_search_budget: Optional[int] = None
    symmetric: bool = False
    quadrature: bool = False
    grid: bool = False
    sieve_limit: Optional[int] = None
    set_file: Optional[str] = None
    function_file: Optional[str] = None
    set_out: Optional[str] = None
    output: Optional[str] = None
    format: Optional[str] = None
    workers: Optional[int] = None

    def __post_init__(self):
        if self.window is not None:
            if len(self.window) != 2:
                raise InvalidArgumentError(f"window needs two end points, got {self.window}")
            self.window = (float(self.window[0]), float(self.window[1]))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if self.window is not None:
            data["window"] = list(self.window)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    def merged(self, overrides: Dict[str, Any]) -> "ExperimentConfig":
        """Copy with every non-None override applied."""
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return ExperimentConfig.from_dict(data)
