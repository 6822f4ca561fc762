from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from src.arith import INT64_MAX
from src.multfn import CMFunction
from src.utils.errors import ArithmeticOverflowError, InvalidArgumentError


class ResonatorStyle(str, Enum):
    HOUGH = "hough"
    BINNED = "binned"


@dataclass(frozen=True, eq=False)
class ResonatorMeta:
    """
    How a resonator was built.

    Hough-style resonators are completely multiplicative: ``prime_weights``
    holds r(p) for the admissible primes and ``window`` the prime window.
    Binned resonators record the mesh parameter T and the size of every bin,
    in support order.
    """

    style: ResonatorStyle
    lam: Optional[float] = None
    x: Optional[float] = None
    window: Optional[Tuple[float, float]] = None
    prime_weights: Mapping[int, float] = field(default_factory=dict)
    default_regime: bool = True
    window_empty: bool = False
    T: Optional[float] = None
    bin_count: Optional[int] = None
    bin_sizes: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "style", ResonatorStyle(self.style))
        object.__setattr__(self, "prime_weights", MappingProxyType(dict(self.prime_weights)))

    def to_dict(self) -> Dict[str, Any]:
        data = {"style": self.style.value}
        if self.style is ResonatorStyle.HOUGH:
            data.update(
                lam=self.lam,
                x=self.x,
                window=list(self.window) if self.window else None,
                prime_weights={str(p): w for p, w in self.prime_weights.items()},
                default_regime=self.default_regime,
                window_empty=self.window_empty,
            )
        else:
            data.update(T=self.T, bin_count=self.bin_count, bin_sizes=list(self.bin_sizes))
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ResonatorMeta":
        data = dict(data)
        if data.get("window") is not None:
            data["window"] = tuple(data["window"])
        if "prime_weights" in data:
            data["prime_weights"] = {int(p): float(w) for p, w in data["prime_weights"].items()}
        if "bin_sizes" in data:
            data["bin_sizes"] = tuple(int(s) for s in data["bin_sizes"])
        return cls(**data)


@dataclass(frozen=True, eq=False)
class Resonator:
    """Finite weighted support {(n, r(n))}, sorted by n, with construction metadata."""

    ns: np.ndarray
    weights: np.ndarray
    meta: ResonatorMeta

    def __post_init__(self):
        ns = np.asarray(self.ns, dtype=np.int64)
        weights = np.asarray(self.weights, dtype=float)
        if ns.ndim != 1 or ns.shape != weights.shape or len(ns) == 0:
            raise InvalidArgumentError("resonator support and weights must be equal-length, non-empty vectors")
        if np.any(np.diff(ns) <= 0):
            raise InvalidArgumentError("resonator support must be strictly increasing")
        if np.any(weights <= 0):
            raise InvalidArgumentError("resonator weights must be strictly positive")
        ns.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "ns", ns)
        object.__setattr__(self, "weights", weights)

    @property
    def support(self) -> List[Tuple[int, float]]:
        return list(zip(self.ns.tolist(), self.weights.tolist()))

    @property
    def size(self) -> int:
        return len(self.ns)

    @property
    def style(self) -> ResonatorStyle:
        return self.meta.style

    @property
    def sign(self) -> int:
        """Exponent sign: R(t) = sum f(n) r(n) n^{sign * it}."""
        return 1 if self.meta.style is ResonatorStyle.HOUGH else -1

    def weight_of(self, n: int) -> float:
        """r(n), or 0 when n is not in the support."""
        i = int(np.searchsorted(self.ns, n))
        if i < len(self.ns) and self.ns[i] == n:
            return float(self.weights[i])
        return 0.0

    def coefficients(self, f: CMFunction) -> np.ndarray:
        """Complex coefficients f(n) r(n) in support order."""
        phases = np.array([f.angle(n) for n in self.ns.tolist()])
        return self.weights * np.exp(1j * phases)


@dataclass(frozen=True)
class IntegerSet:
    """Sorted set of distinct positive integers below 2**63."""

    elements: Tuple[int, ...]

    def __post_init__(self):
        elements = tuple(int(m) for m in self.elements)
        if not elements:
            raise InvalidArgumentError("integer set must be non-empty")
        if any(b <= a for a, b in zip(elements, elements[1:])):
            raise InvalidArgumentError("integer set must be strictly increasing")
        if elements[0] < 1:
            raise InvalidArgumentError("integer set elements must be positive")
        if elements[-1] > INT64_MAX:
            raise ArithmeticOverflowError(f"element {elements[-1]} exceeds the 64-bit range")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def of(cls, values: Iterable[int]) -> "IntegerSet":
        values = [int(v) for v in values]
        unique = sorted(set(values))
        if len(unique) != len(values):
            raise InvalidArgumentError("integer set must not contain repeated elements")
        return cls(tuple(unique))

    @property
    def K(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_dyadic(self) -> bool:
        """max M <= 2 min M, the hypothesis of the GCD-sum lemma."""
        return self.elements[-1] <= 2 * self.elements[0]

    def scaled(self, factor: int) -> "IntegerSet":
        return IntegerSet(tuple(factor * m for m in self.elements))

    def as_array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)
