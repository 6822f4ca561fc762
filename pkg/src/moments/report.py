"""
Moment reports for the two resonance styles.

thm11: M1 = (log T/T) int_{1<=|t|<=T} |R|^2 Phi, M2 = (log T/T) int_{1<=|t|<=T} S_t(N) |R|^2 Phi,
       bound |M2| / M1 on max |S_t(N)|.
thm12: the same integrals without the prefactor and with |S_t(N)|^2 in M2,
       bound sqrt(M2 / M1).

The I-values are the bare pair sums (1/a) sum ... Phi_hat(.), i.e. integrals over
the whole line; M = prefactor * (I - gaps) where the gaps are the numerically
integrated |t| < 1 and |t| > T pieces.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Union

import numpy as np

from src.moments.kernel import SQRT_2PI, GaussianKernel, scale_parameter
from src.moments.pairsum import (
    PairSumResult,
    cross_pair_sum,
    polynomial_terms,
    product_terms,
    resonator_terms,
)
from src.moments.quadrature import frequency_span, gap_integrals
from src.multfn import CMFunction
from src.resonator import Resonator, ResonatorStyle, diagonal_sums
from src.utils.errors import BudgetExceededError, InvalidArgumentError, InvalidStateError
from src.utils.logger import setup_logger
from src.utils.parallel import DEFAULT_BLOCK_SIZE

logger = logging.getLogger(__name__)

# relative mismatch tolerated between the pair-sum diagonal and the multiplicative identity
DIAGONAL_IDENTITY_TOL = 1e-10


class MomentStyle(str, Enum):
    THM11 = "thm11"
    THM12 = "thm12"


@dataclass
class MomentReport:
    """
    Moments, their pair-sum expansions and the resulting lower bound.

    i1, i2 and their diagonal/off-diagonal parts are bare whole-line integrals;
    ``prefactor`` is log T/T for thm11 and 1 for thm12. diag_i2 is the
    combinatorial diagonal, so i2 = diag_weight * diag_i2 + offdiag_i2.
    """

    style: MomentStyle
    T: float
    N: int
    prefactor: float
    m1: float
    m2: Union[float, complex]
    i1: float
    i2: Union[float, complex]
    diag_i1: float
    offdiag_i1: float
    diag_i2: float
    offdiag_i2: complex
    diag_weight: float
    gap_m1: complex
    gap_m2: complex
    lower_bound: float = float("nan")
    bound_error: float = 0.0
    quad_rel_tol: float = 1e-10
    t_cut: float = math.inf
    cutoff: float = GaussianKernel.CUTOFF
    discarded_bound: float = 0.0
    converged: bool = True
    imag_i1: float = 0.0
    extras: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"style": self.style.value}
        for key, value in self.__dict__.items():
            if key in ("style", "extras"):
                continue
            if isinstance(value, complex):
                data[f"{key}_re"] = value.real
                data[f"{key}_im"] = value.imag
            else:
                data[key] = value
        data.update(self.extras)
        return data


def lower_bound(report: MomentReport) -> float:
    """
    Lower bound on the maximum of |S_t(N)| implied by the moments.

    thm11 gives |m2|/m1, thm12 gives sqrt(m2/m1).
    """
    if not report.m1 > 0:
        raise InvalidStateError(f"M1 must be positive to form a bound, got {report.m1!r}")
    if report.style is MomentStyle.THM11:
        return abs(report.m2) / report.m1
    return math.sqrt(max(float(np.real(report.m2)), 0.0) / report.m1)


def _bound_error(report: MomentReport, err_m1: float, err_m2: float) -> float:
    bound = report.lower_bound
    rel = err_m1 / report.m1 + err_m2 / max(abs(report.m2), 1e-300)
    if report.style is MomentStyle.THM12:
        rel *= 0.5
    return bound * rel


def i1_pairsum(
    R: Resonator,
    f: CMFunction,
    T: float,
    cutoff: float = GaussianKernel.CUTOFF,
    budget: float = math.inf,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> PairSumResult:
    """(T/log T) sum_{m,n} f(m) conj(f(n)) r(m) r(n) Phi_hat((T/log T) log(m/n))."""
    if T < 2:
        raise InvalidArgumentError(f"T must be >= 2, got {T}")
    terms = resonator_terms(R, f)
    return cross_pair_sum(terms, terms, scale_parameter(T), cutoff, budget, workers, block_size)


def i2_thm11(
    R: Resonator,
    f: CMFunction,
    T: float,
    N: int,
    cutoff: float = GaussianKernel.CUTOFF,
    budget: float = math.inf,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> PairSumResult:
    """int S_t(N) |R(t)|^2 Phi(t log T/T) dt as the pair sum of S*R against R."""
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    if R.style is not ResonatorStyle.HOUGH:
        raise InvalidArgumentError("the first-power moment needs a hough-style resonator")
    estimate = float(N) * R.size * R.size
    if estimate > budget:
        raise BudgetExceededError("I2 triple sum too large", estimate=estimate, budget=budget)
    r_terms = resonator_terms(R, f)
    sr_terms = product_terms(polynomial_terms(f, int(N)), r_terms)
    return cross_pair_sum(sr_terms, r_terms, scale_parameter(T), cutoff, math.inf, workers, block_size)


def i2_thm12_pairsum(
    R: Resonator,
    f: CMFunction,
    T: float,
    N: int,
    cutoff: float = GaussianKernel.CUTOFF,
    budget: float = math.inf,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> PairSumResult:
    """int |S_t(N) R(t)|^2 Phi(t log T/T) dt, merged on exact rational frequencies."""
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    estimate = (float(N) * R.size) ** 2
    if estimate > budget:
        raise BudgetExceededError("I2 pair sum too large", estimate=estimate, budget=budget)
    sr_terms = product_terms(polynomial_terms(f, int(N)), resonator_terms(R, f))
    return cross_pair_sum(sr_terms, sr_terms, scale_parameter(T), cutoff, math.inf, workers, block_size)


def offdiag_bound_i1(R: Resonator, T: float) -> float:
    """
    Crude bound on |offdiag_i1|.

    Every off-diagonal pair is at least the closest frequency gap apart, so
    |offdiag| <= (1/a) Phi_hat(gap/a) ((sum r)^2 - sum r^2).
    """
    if R.size < 2:
        return 0.0
    a = scale_parameter(T)
    freqs = np.sort(R.sign * np.log(R.ns.astype(float)))
    gap = float(np.min(np.diff(freqs)))
    total = math.fsum(R.weights.tolist())
    squares = math.fsum((R.weights ** 2).tolist())
    return float(GaussianKernel.phi_hat(gap / a)) / a * (total * total - squares)


class MomentCalculator:
    """Assembles MomentReports for one (T, N) configuration."""

    def __init__(
        self,
        T: float,
        N: int,
        quad_rel_tol: float = 1e-10,
        cutoff: float = GaussianKernel.CUTOFF,
        floor: float = 1e-16,
        budget: float = math.inf,
        workers: int = 1,
        block_size: int = DEFAULT_BLOCK_SIZE,
    ):
        if T < 2:
            raise InvalidArgumentError(f"T must be >= 2, got {T}")
        if N < 1:
            raise InvalidArgumentError(f"N must be >= 1, got {N}")
        self.T = float(T)
        self.N = int(N)
        self.a = scale_parameter(T)
        self.quad_rel_tol = quad_rel_tol
        self.cutoff = cutoff
        self.floor = floor
        self.budget = budget
        self.workers = workers
        self.block_size = block_size
        self.logger = setup_logger("MomentCalculator")

    def _gaps(self, P, Q, integrand, scale, complex_valued):
        return gap_integrals(
            integrand,
            self.T,
            frequency_span(P, Q),
            scale,
            rel_tol=self.quad_rel_tol,
            floor=self.floor,
            complex_valued=complex_valued,
        )

    def thm11(self, R: Resonator, f: CMFunction) -> MomentReport:
        """First-power moments of the hough resonator."""
        self.logger.info(f"thm11 moments: T={self.T:g}, N={self.N}, support={R.size}")
        r_terms = resonator_terms(R, f)
        s_terms = polynomial_terms(f, self.N)
        sr_terms = product_terms(s_terms, r_terms)

        i1 = i1_pairsum(R, f, self.T, self.cutoff, self.budget, self.workers, self.block_size)
        i2 = i2_thm11(R, f, self.T, self.N, self.cutoff, self.budget, self.workers, self.block_size)

        g1 = self._gaps(r_terms, r_terms, lambda t: abs(r_terms.evaluate(t)) ** 2, i1.total.real, False)
        g2 = self._gaps(
            sr_terms,
            r_terms,
            lambda t: s_terms.evaluate(t) * abs(r_terms.evaluate(t)) ** 2,
            abs(i2.total),
            True,
        )

        report = self._assemble(MomentStyle.THM11, self.a, i1, i2, g1, g2)

        if R.meta.prime_weights:
            sums = diagonal_sums(R, self.N)
            identity = sums.i2_diag
            mismatch = abs(identity - report.diag_i2) / max(abs(identity), 1e-300)
            if mismatch > DIAGONAL_IDENTITY_TOL:
                self.logger.warning(f"diagonal identity off by {mismatch:.3g} relative")
            report.extras["diag_i2_identity"] = identity
            report.extras["sum_rk"] = sums.sum_rk
        return report

    def thm12(self, R: Resonator, f: CMFunction) -> MomentReport:
        """Second-power moments, for the binned resonator (any resonator is accepted)."""
        self.logger.info(f"thm12 moments: T={self.T:g}, N={self.N}, support={R.size}")
        r_terms = resonator_terms(R, f)
        sr_terms = product_terms(polynomial_terms(f, self.N), r_terms)

        i1 = i1_pairsum(R, f, self.T, self.cutoff, self.budget, self.workers, self.block_size)
        i2 = i2_thm12_pairsum(R, f, self.T, self.N, self.cutoff, self.budget, self.workers, self.block_size)

        g1 = self._gaps(r_terms, r_terms, lambda t: abs(r_terms.evaluate(t)) ** 2, i1.total.real, False)
        g2 = self._gaps(sr_terms, sr_terms, lambda t: abs(sr_terms.evaluate(t)) ** 2, i2.total.real, False)
        return self._assemble(MomentStyle.THM12, 1.0, i1, i2, g1, g2)

    def _assemble(self, style, prefactor, i1, i2, g1, g2) -> MomentReport:
        i1_value = i1.total.real
        if style is MomentStyle.THM11:
            i2_value: Union[float, complex] = i2.total
            m2: Union[float, complex] = prefactor * (i2.total - g2.total)
        else:
            i2_value = i2.total.real
            m2 = prefactor * (i2.total.real - g2.total.real)
        m1 = prefactor * (i1_value - g1.total.real)

        imag_i1 = abs(i1.total.imag)
        if imag_i1 > 1e-10 * abs(i1_value):
            self.logger.warning(f"I1 has imaginary part {imag_i1:.3g}; pairing is not Hermitian")

        report = MomentReport(
            style=style,
            T=self.T,
            N=self.N,
            prefactor=prefactor,
            m1=m1,
            m2=m2,
            i1=i1_value,
            i2=i2_value,
            diag_i1=(i1.diag_weight * i1.diag_raw).real,
            offdiag_i1=i1.offdiag.real,
            diag_i2=i2.diag_raw.real,
            offdiag_i2=i2.offdiag,
            diag_weight=i2.diag_weight,
            gap_m1=g1.total,
            gap_m2=g2.total,
            quad_rel_tol=self.quad_rel_tol,
            t_cut=g1.t_cut,
            cutoff=self.cutoff,
            discarded_bound=i1.discarded_bound + i2.discarded_bound,
            converged=g1.converged and g2.converged,
            imag_i1=imag_i1,
        )

        # each moment carries its gap quadrature error plus the dropped pair-sum mass
        err_m1 = prefactor * (g1.abs_error + i1.discarded_bound)
        err_m2 = prefactor * (g2.abs_error + i2.discarded_bound)
        report.lower_bound = lower_bound(report)
        report.bound_error = _bound_error(report, err_m1, err_m2)
        return report


def thm11_report(R: Resonator, f: CMFunction, T: float, N: int, **options) -> MomentReport:
    """MomentReport in the first-power style; options go to MomentCalculator."""
    return MomentCalculator(T, N, **options).thm11(R, f)


def thm12_report(R: Resonator, f: CMFunction, T: float, N: int, **options) -> MomentReport:
    """MomentReport in the squared style; options go to MomentCalculator."""
    return MomentCalculator(T, N, **options).thm12(R, f)
