import math

from scipy import optimize, special

from src.utils.errors import DomainError

# bracket for A in e1_inverse
A_MIN = 1e-8
A_MAX = 50.0


def e1(A: float) -> float:
    """Exponential integral E1(A) = int_A^inf e^{-u}/u du."""
    if not A > 0:
        raise DomainError(f"E1 needs A > 0, got {A}", hypothesis="A > 0")
    return float(special.exp1(A))


def tau_prime(A: float) -> float:
    """int_A^inf e^{-u}/u^2 du = e^{-A}/A - E1(A)."""
    return math.exp(-A) / A - e1(A)


def e1_inverse(tau: float) -> float:
    """
    The A in [1e-8, 50] with E1(A) = tau.

    E1 is decreasing, so the root is bracketed by the end points; the solve
    works on log E1 to keep relative accuracy when tau is tiny.
    """
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}", hypothesis="tau > 0")
    hi_tau, lo_tau = e1(A_MIN), e1(A_MAX)
    if not lo_tau <= tau <= hi_tau:
        raise DomainError(
            f"tau={tau:.6g} is outside [{lo_tau:.3g}, {hi_tau:.6g}]",
            hypothesis=f"A in [{A_MIN:g}, {A_MAX:g}]",
        )
    target = math.log(tau)
    return optimize.brentq(lambda A: math.log(e1(A)) - target, A_MIN, A_MAX, xtol=1e-14, rtol=1e-14)
