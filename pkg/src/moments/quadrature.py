"""
Numerical integration against the Gaussian weight.

All integrals run over finite pieces of the real line split into segments a
few oscillation periods long, each handed to scipy.integrate.quad. Real and
imaginary parts are integrated separately.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy import integrate

from src.moments.kernel import SQRT_2PI, GaussianKernel, scale_parameter
from src.moments.pairsum import DirichletTerms, polynomial_terms, resonator_terms
from src.multfn import CMFunction
from src.resonator import Resonator
from src.utils.errors import BudgetExceededError, InvalidArgumentError

logger = logging.getLogger(__name__)

PERIODS_PER_SEGMENT = 8
QUAD_LIMIT = 200
MIN_REL_TOL = 1e-10


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error: float
    converged: bool
    t_cut: float
    rel_tol: float
    segments: int

    def to_dict(self):
        return asdict(self)


def _segments(lo: float, hi: float, max_freq: float) -> List[Tuple[float, float]]:
    if hi <= lo:
        return []
    length = PERIODS_PER_SEGMENT * 2.0 * math.pi / max(max_freq, 1e-9)
    count = max(1, int(math.ceil((hi - lo) / length)))
    edges = np.linspace(lo, hi, count + 1)
    return list(zip(edges[:-1].tolist(), edges[1:].tolist()))


def segmented_quad(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    max_freq: float,
    rel_tol: float,
    abs_tol: float = 0.0,
) -> Tuple[float, float, bool, int]:
    """
    Integrate a real function over [lo, hi] segment by segment.

    Args:
        func: Real integrand
        lo: Lower limit
        hi: Upper limit
        max_freq: Largest angular frequency present in the integrand
        rel_tol: Relative tolerance per segment
        abs_tol: Absolute tolerance shared out over the segments

    Returns:
        (value, abs_error, converged, segment count)
    """
    pieces = _segments(lo, hi, max_freq)
    if not pieces:
        return 0.0, 0.0, True, 0
    epsabs = abs_tol / len(pieces)
    values, errors = [], []
    converged = True
    for a, b in pieces:
        out = integrate.quad(func, a, b, epsabs=epsabs, epsrel=rel_tol, limit=QUAD_LIMIT, full_output=1)
        values.append(out[0])
        errors.append(out[1])
        if len(out) > 3:
            converged = False
    return math.fsum(values), math.fsum(errors), converged, len(pieces)


def integrate_weighted(
    integrand: Callable[[float], complex],
    a: float,
    lo: float,
    hi: float,
    max_freq: float,
    rel_tol: float,
    abs_tol: float = 0.0,
    complex_valued: bool = False,
) -> Tuple[complex, float, bool, int]:
    """int_lo^hi integrand(t) Phi(a t) dt, with real and imaginary parts handled separately."""
    weight = lambda t: math.exp(-0.5 * (a * t) ** 2)
    re = segmented_quad(lambda t: integrand(t).real * weight(t), lo, hi, max_freq, rel_tol, abs_tol)
    if not complex_valued:
        return complex(re[0]), re[1], re[2], re[3]
    im = segmented_quad(lambda t: integrand(t).imag * weight(t), lo, hi, max_freq, rel_tol, abs_tol)
    return complex(re[0], im[0]), re[1] + im[1], re[2] and im[2], re[3] + im[3]


def frequency_span(P: DirichletTerms, Q: DirichletTerms) -> float:
    """Largest |lambda_u - lambda_v| across the two term lists."""
    if not len(P) or not len(Q):
        return 0.0
    return float(max(P.freqs[-1] - Q.freqs[0], Q.freqs[-1] - P.freqs[0], 0.0))


def fourier_pair_closed_form(m: int, n: int, a: float) -> float:
    """(sqrt(2 pi)/a) Phi(log(m/n)/a)."""
    lam = math.log(m) - math.log(n)
    return SQRT_2PI / a * math.exp(-0.5 * (lam / a) ** 2)


def fourier_pair_integral(m: int, n: int, a: float, rel_tol: float = 1e-12, floor: float = 1e-16) -> float:
    """
    Numerical int (m/n)^{-it} Phi(a t) dt.

    The sine part is odd and vanishes, so this is 2 int_0^cut cos(t log(m/n)) Phi(a t) dt.
    """
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"m and n must be positive, got {m}, {n}")
    if a <= 0:
        raise InvalidArgumentError(f"a must be positive, got {a}")
    lam = math.log(m) - math.log(n)
    t_cut = GaussianKernel.radius(a, floor)
    value, _, converged, _ = segmented_quad(
        lambda t: math.cos(lam * t) * math.exp(-0.5 * (a * t) ** 2),
        0.0,
        t_cut,
        abs(lam),
        rel_tol,
    )
    if not converged:
        logger.warning(f"quadrature for the pair ({m}, {n}) did not converge")
    return 2.0 * value


def i1_quadrature(
    R: Resonator,
    f: CMFunction,
    T: float,
    rel_tol: float = 1e-10,
    floor: float = 1e-16,
) -> QuadratureResult:
    """
    (log T/T) int |R(t)|^2 Phi(t log T/T) dt over the whole line.

    The line is truncated where the Gaussian weight drops below ``floor``.
    """
    if rel_tol < MIN_REL_TOL:
        raise InvalidArgumentError(f"rel_tol must be >= {MIN_REL_TOL}, got {rel_tol}")
    if T < 2:
        raise InvalidArgumentError(f"T must be >= 2, got {T}")

    a = scale_parameter(T)
    terms = resonator_terms(R, f)
    t_cut = GaussianKernel.radius(a, floor)
    span = frequency_span(terms, terms)
    # |R|^2 Phi integrates to at least sum r^2 * sqrt(2 pi)/a; use it as the absolute scale
    scale = math.fsum((np.abs(terms.coeffs) ** 2).tolist()) * SQRT_2PI / a
    value, err, converged, segments = integrate_weighted(
        lambda t: abs(terms.evaluate(t)) ** 2,
        a,
        -t_cut,
        t_cut,
        span,
        rel_tol,
        abs_tol=rel_tol * scale,
    )
    if not converged:
        logger.warning(f"I1 quadrature did not reach rel_tol={rel_tol}; achieved abs error {err:.3g}")
    return QuadratureResult(
        value=a * value.real,
        abs_error=a * err,
        converged=converged,
        t_cut=t_cut,
        rel_tol=rel_tol,
        segments=segments,
    )


@dataclass(frozen=True)
class GapIntegrals:
    """The |t| < 1 and |t| > T pieces of int g(t) Phi(a t) dt."""

    inner: complex
    outer: complex
    abs_error: float
    converged: bool
    t_cut: float

    @property
    def total(self) -> complex:
        return self.inner + self.outer


def gap_integrals(
    integrand: Callable[[float], complex],
    T: float,
    max_freq: float,
    scale: float,
    rel_tol: float = 1e-10,
    floor: float = 1e-16,
    complex_valued: bool = False,
) -> GapIntegrals:
    """
    Contributions of |t| < 1 and T < |t| < t_cut to int g(t) Phi(t log T/T) dt.

    Args:
        integrand: g(t)
        T: Height; also fixes a = log T / T
        max_freq: Largest frequency in g
        scale: Magnitude of the full integral, for the absolute tolerance
        rel_tol: Relative tolerance
        floor: Gaussian truncation level
        complex_valued: Integrate the imaginary part as well

    Returns:
        GapIntegrals
    """
    a = scale_parameter(T)
    t_cut = GaussianKernel.radius(a, floor)
    abs_tol = rel_tol * abs(scale)
    inner, e1, c1, _ = integrate_weighted(integrand, a, -1.0, 1.0, max_freq, rel_tol, abs_tol, complex_valued)

    outer = 0j
    e2, c2 = 0.0, True
    if T < t_cut:
        hi, eh, ch, _ = integrate_weighted(integrand, a, T, t_cut, max_freq, rel_tol, abs_tol, complex_valued)
        lo, el, cl, _ = integrate_weighted(integrand, a, -t_cut, -T, max_freq, rel_tol, abs_tol, complex_valued)
        outer, e2, c2 = hi + lo, eh + el, ch and cl

    converged = c1 and c2
    if not converged:
        logger.warning(f"gap integrals at T={T:g} did not converge; abs error {e1 + e2:.3g}")
    return GapIntegrals(inner=inner, outer=outer, abs_error=e1 + e2, converged=converged, t_cut=t_cut)


def m2_thm12_grid(
    R: Resonator,
    f: CMFunction,
    T: float,
    N: int,
    grid,
    nodes: int = 8,
    budget: float = math.inf,
) -> QuadratureResult:
    """
    Composite Gauss-Legendre quadrature of |S_t(N)|^2 |R(t)|^2 Phi(t log T/T) over 1 <= |t| <= T.

    Each cell of ``grid`` (a TGrid) gets ``nodes`` Gauss points. When f is
    real the negative half mirrors the positive one and is not evaluated.
    """
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    a = scale_parameter(T)
    S = polynomial_terms(f, int(N))
    Rt = resonator_terms(R, f)

    cells = max(1, int(math.ceil((grid.t_max - grid.t_min) / grid.spacing)))
    halves = 1 if f.is_real else 2
    estimate = float(cells) * nodes * (len(S) + len(Rt)) * halves
    if estimate > budget:
        raise BudgetExceededError("grid quadrature too large", estimate=estimate, budget=budget)

    edges = np.linspace(grid.t_min, grid.t_max, cells + 1)

    def rule(order: int) -> float:
        x, w = np.polynomial.legendre.leggauss(order)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        ts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        ws = (half[:, None] * w[None, :]).ravel()

        def half_line(sign: float) -> float:
            values = np.abs(S.evaluate_many(sign * ts)) ** 2 * np.abs(Rt.evaluate_many(sign * ts)) ** 2
            return math.fsum((values * ws * GaussianKernel.phi(a * ts)).tolist())

        if f.is_real:
            return 2.0 * half_line(1.0)
        return half_line(1.0) + half_line(-1.0)

    value = rule(nodes)
    # a lower-order rule on the same cells gives the error estimate
    coarse = rule(max(2, nodes // 2))
    abs_error = abs(value - coarse)
    return QuadratureResult(
        value=value,
        abs_error=abs_error,
        converged=abs_error <= 1e-6 * max(abs(value), 1e-300),
        t_cut=grid.t_max,
        rel_tol=1e-6,
        segments=cells,
    )
