import math

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)


class GaussianKernel:
    """
    The fixed kernel Phi(t) = exp(-t^2/2) and its transform Phi_hat(xi) = sqrt(2 pi) Phi(xi).

    With this normalization, int (m/n)^{it} Phi(a t) dt = Phi_hat(log(m/n) / a) / a,
    the identity every pair sum rests on.
    """

    # Pair-sum terms with |argument| beyond this are dropped (Phi_hat < 1e-31)
    CUTOFF = 12.0

    @staticmethod
    def phi(t):
        return np.exp(-0.5 * np.square(t))

    @staticmethod
    def phi_hat(xi):
        return SQRT_2PI * np.exp(-0.5 * np.square(xi))

    @staticmethod
    def radius(a: float, floor: float = 1e-16) -> float:
        """t beyond which Phi(a t) < floor."""
        return math.sqrt(2.0 * math.log(1.0 / floor)) / a


def phi_hat(xi: float) -> float:
    """sqrt(2 pi) exp(-xi^2 / 2)."""
    return SQRT_2PI * math.exp(-0.5 * xi * xi)


def scale_parameter(T: float) -> float:
    """a = log T / T, the scale of the smoothing weight Phi(t log T / T)."""
    return math.log(T) / T
