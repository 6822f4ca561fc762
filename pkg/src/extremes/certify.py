import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

from src.arith import PrimeTable, smooth_integers
from src.extremes.search import SearchResult, find_max
from src.gcdsum import construct_candidate_set, smoothness_exponent
from src.moments import MomentReport, MomentStyle, thm11_report, thm12_report
from src.multfn import CMFunction
from src.resonator import IntegerSet, Resonator, build_binned_resonator, build_hough_resonator
from src.utils.errors import InfeasibleError, InvalidArgumentError, OutOfRangeError
from src.utils.logger import setup_logger

# relative slack added on top of the reported error estimates
BASE_SLACK = 1e-9


@dataclass
class ResonanceParams:
    """How to build the resonator and how hard to search."""

    style: MomentStyle = MomentStyle.THM11
    window_override: Optional[Tuple[float, float]] = None
    lam_override: Optional[float] = None
    integer_set: Optional[IntegerSet] = None
    K: Optional[int] = None
    y: Optional[int] = None
    window_center: Optional[int] = None
    set_search_budget: int = 2000
    seed: int = 0
    tolerance: float = 0.05
    search_budget: float = 1e9
    pair_budget: float = 5e7
    quad_rel_tol: float = 1e-10
    cutoff: float = 12.0
    floor: float = 1e-16
    workers: int = 1
    block_size: int = 256
    renormalize_every: int = 65536


@dataclass
class CertificationResult:
    bound: float
    observed: float
    certified_gap: float
    slack: float
    passed: bool
    sum_rk: Optional[float]
    report: MomentReport
    search: SearchResult
    resonator_size: int
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "bound": self.bound,
            "observed": self.observed,
            "certified_gap": self.certified_gap,
            "slack": self.slack,
            "pass": self.passed,
            "sum_rk": self.sum_rk,
            "resonator_size": self.resonator_size,
        }
        data.update(self.details)
        data["moments"] = self.report.to_dict()
        data["search"] = self.search.to_dict()
        return data


def feasible_window_center(K: int, y: int, table: PrimeTable, start: Optional[int] = None) -> int:
    """Smallest power-of-two multiple of ``start`` whose window [c, 2c] holds K y-smooth integers."""
    c = max(1, start or K)
    while len(smooth_integers(c, 2 * c, y, table)) < K:
        c *= 2
        if 2 * c > table.limit ** 2:
            raise InfeasibleError(f"no window with {K} {y}-smooth integers below {table.limit ** 2}")
    return c


class ResonanceCertifier:
    """Checks max |S_t(N)| against the moment lower bound for one configuration."""

    def __init__(self, table: PrimeTable, params: Optional[ResonanceParams] = None):
        self.table = table
        self.params = params or ResonanceParams()
        self.logger = setup_logger("ResonanceCertifier")

    def build_resonator(self, N: int, T: float) -> Tuple[Resonator, Dict[str, Any]]:
        p = self.params
        if MomentStyle(p.style) is MomentStyle.THM11:
            R = build_hough_resonator(T, N, self.table, p.window_override, p.lam_override)
            return R, {"default_regime": R.meta.default_regime, "window_empty": R.meta.window_empty}

        M = p.integer_set
        details: Dict[str, Any] = {}
        if M is None:
            K = p.K if p.K is not None else int(math.floor(T / N))
            if K < 2:
                raise InvalidArgumentError(f"K = floor(T/N) = {K} is too small for a candidate set")
            y = p.y if p.y is not None else max(3, int(math.ceil(math.log(K) ** 2)))
            center = feasible_window_center(K, y, self.table, p.window_center)
            M = construct_candidate_set(K, y, center, p.set_search_budget, p.seed, self.table)
            details = {"K": K, "y": y, "window_center": center, "smoothness_exponent": smoothness_exponent(y, K)}
        return build_binned_resonator(M, T), details

    def certify(self, f: CMFunction, N: int, T: float) -> CertificationResult:
        p = self.params
        R, details = self.build_resonator(N, T)
        top = int(R.ns[-1])
        if max(top, N) > f.domain_limit:
            raise OutOfRangeError(
                f"f is defined up to {f.domain_limit}; the resonator reaches {top} and N is {N}"
            )

        options = dict(
            quad_rel_tol=p.quad_rel_tol,
            cutoff=p.cutoff,
            floor=p.floor,
            budget=p.pair_budget,
            workers=p.workers,
            block_size=p.block_size,
        )
        if MomentStyle(p.style) is MomentStyle.THM11:
            report = thm11_report(R, f, T, N, **options)
        else:
            report = thm12_report(R, f, T, N, **options)

        # the moment inequalities bound the maximum over 1 <= |t| <= T
        search = find_max(
            f,
            N,
            T,
            p.tolerance,
            budget=p.search_budget,
            symmetric=not f.is_real,
            workers=p.workers,
            renormalize_every=p.renormalize_every,
        )

        bound = report.lower_bound
        slack = report.bound_error + BASE_SLACK * max(bound, 1.0)
        passed = search.value + search.certified_gap >= bound - slack
        if passed:
            self.logger.info(f"Resonance check passed: observed {search.value:.6g} >= bound {bound:.6g}")
        else:
            self.logger.error(
                f"Resonance check FAILED: observed {search.value:.6g} + gap {search.certified_gap:.3g} "
                f"< bound {bound:.6g} - slack {slack:.3g}"
            )
        return CertificationResult(
            bound=bound,
            observed=search.value,
            certified_gap=search.certified_gap,
            slack=slack,
            passed=passed,
            sum_rk=report.extras.get("sum_rk"),
            report=report,
            search=search,
            resonator_size=R.size,
            details=details,
        )


def certify_resonance(
    f: CMFunction,
    N: int,
    T: float,
    params: Optional[ResonanceParams] = None,
    table: Optional[PrimeTable] = None,
) -> CertificationResult:
    """
    Compare the certified maximum of |S_t(N)| with the resonance lower bound.

    Args:
        f: Completely multiplicative function
        N: Polynomial length
        T: Height
        params: Resonator and search parameters
        table: Prime table; f's table is used when omitted

    Returns:
        CertificationResult with pass = observed + gap >= bound - slack
    """
    return ResonanceCertifier(table or f.table, params).certify(f, N, T)
