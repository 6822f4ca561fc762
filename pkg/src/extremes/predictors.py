"""
Closed-form growth predictions with every o(1) term dropped.

They are comparison curves for the observed maxima, not claims about them;
each result carries ``o1_dropped=True`` to say so.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

from src.extremes.special import e1_inverse, tau_prime
from src.utils.errors import DomainError, InvalidArgumentError


@dataclass(frozen=True)
class PredictorInputs:
    """Parameters of the first-power prediction; tau = E1(A)."""

    T: float
    N: float
    tau: float
    tau_prime: float
    A: float


@dataclass(frozen=True)
class PredictorResult:
    name: str
    T: float
    N: float
    value: float
    log_value: float
    factor: float
    o1_dropped: bool = True
    inputs: Optional[PredictorInputs] = None
    range_check: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        inputs = data.pop("inputs")
        if inputs:
            data.update({k: v for k, v in inputs.items() if k not in ("T", "N")})
        checks = data.pop("range_check")
        data.update(checks)
        return data


def _check_TN(T: float, N: float) -> None:
    if not T > 1:
        raise InvalidArgumentError(f"T must exceed 1, got {T}")
    if not N >= 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")


def _exp_or_inf(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def range_check(T: float, N: float, delta: float) -> Dict[str, Any]:
    """Whether exp((log T)^{1/2 + delta}) <= N <= T^{1/2}."""
    log_T = math.log(T)
    log_lower = log_T ** (0.5 + delta)
    log_N = math.log(N)
    return {
        "delta": delta,
        "range_lower": _exp_or_inf(log_lower),
        "range_upper": math.sqrt(T),
        "above_lower": log_N >= log_lower,
        "below_upper": log_N <= 0.5 * log_T,
        "in_range": log_lower <= log_N <= 0.5 * log_T,
    }


def thm11_inputs(T: float, N: float) -> PredictorInputs:
    _check_TN(T, N)
    log_T = math.log(T)
    if not log_T > 1:
        raise DomainError(f"log log T must be positive, T={T:g}", hypothesis="T > e")
    tau = math.log(N) / math.sqrt(log_T * math.log(log_T))
    if not tau > 0:
        raise DomainError("tau = log N / sqrt(log T log log T) must be positive", hypothesis="N > 1")
    A = e1_inverse(tau)
    return PredictorInputs(T=T, N=N, tau=tau, tau_prime=tau_prime(A), A=A)


def thm11_predictor(T: float, N: float) -> PredictorResult:
    """sqrt(N) exp(A (tau + tau') sqrt(log T / log log T))."""
    inputs = thm11_inputs(T, N)
    log_T = math.log(T)
    exponent = inputs.A * (inputs.tau + inputs.tau_prime) * math.sqrt(log_T / math.log(log_T))
    log_value = 0.5 * math.log(N) + exponent
    return PredictorResult(
        name="thm11",
        T=T,
        N=N,
        value=_exp_or_inf(log_value),
        log_value=log_value,
        factor=_exp_or_inf(exponent),
        inputs=inputs,
    )


def thm12_predictor(T: float, N: float, delta: float = 0.005) -> PredictorResult:
    """sqrt(N) exp(sqrt(2) sqrt(log X log log log X / log log X)) with X = T/N."""
    _check_TN(T, N)
    X = T / N
    if not X > math.exp(math.e):
        raise DomainError(f"T/N = {X:.6g} is too small for log log log", hypothesis="T/N > e^e")
    log_X = math.log(X)
    log2 = math.log(log_X)
    log3 = math.log(log2)
    exponent = math.sqrt(2.0) * math.sqrt(log_X * log3 / log2)
    log_value = 0.5 * math.log(N) + exponent
    return PredictorResult(
        name="thm12",
        T=T,
        N=N,
        value=_exp_or_inf(log_value),
        log_value=log_value,
        factor=_exp_or_inf(exponent),
        range_check=range_check(T, N, delta),
    )


def xy_predictor(T: float, N: float, delta: float) -> PredictorResult:
    """sqrt(N) exp(sqrt((1 - delta) log T / log log T))."""
    _check_TN(T, N)
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}", hypothesis="0 < delta < 1")
    log_T = math.log(T)
    if not log_T > 1:
        raise DomainError(f"log log T must be positive, T={T:g}", hypothesis="T > e")
    exponent = math.sqrt((1.0 - delta) * log_T / math.log(log_T))
    log_value = 0.5 * math.log(N) + exponent
    return PredictorResult(
        name="xy",
        T=T,
        N=N,
        value=_exp_or_inf(log_value),
        log_value=log_value,
        factor=_exp_or_inf(exponent),
        range_check=range_check(T, N, delta),
    )
