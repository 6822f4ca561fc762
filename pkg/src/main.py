"""
Resonance Lab command line.

Every pipeline is a subcommand; results go to stdout or --output as JSON or
CSV with a provenance header, logs go to stderr.

Usage:
    python main.py predict12 --T 1e9 --N 1e4 --format csv
    python main.py resonate11 --T 5000 --N 30 --window 3 13
    python main.py gcdsum --set-file M.txt --N 100 --eta 0.1
    python main.py selftest
"""

import argparse
import math
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import ExperimentConfig, settings
from src.arith import PrimeTable, sieve, smooth_integers
from src.extremes import (
    ResonanceParams,
    TGrid,
    certify_resonance,
    e1,
    e1_inverse,
    eval_poly,
    feasible_window_center,
    find_max,
    thm11_predictor,
    thm12_predictor,
    xy_predictor,
)
from src.gcdsum import (
    construct_candidate_set,
    gcd_sum,
    gcd_sum_truncated,
    lemma_rate,
    smoothness_exponent,
)
from src.moments import (
    MomentStyle,
    fourier_pair_closed_form,
    fourier_pair_integral,
    i1_pairsum,
    i1_quadrature,
    m2_thm12_grid,
    phi_hat,
    polynomial_terms,
    product_terms,
    resonator_terms,
    scale_parameter,
    thm11_report,
    thm12_report,
)
from src.multfn import CMFunction, check_Fc, load_function, sample
from src.resonator import (
    IntegerSet,
    Resonator,
    build_binned_resonator,
    build_hough_resonator,
    build_multiplicative_resonator,
    dump_integer_set,
    load_integer_set,
    min_x_for_nonempty_window,
)
from src.utils.errors import InvalidArgumentError, InvalidStateError, LabError
from src.utils.logger import configure_logging, setup_logger
from src.utils.output import load_experiment_config, provenance, write_result
from src.utils.parallel import resolve_workers

COMMANDS = (
    "predict11",
    "predict12",
    "resonate11",
    "resonate12",
    "search",
    "gcdsum",
    "construct-set",
    "moments",
    "check-fc",
    "selftest",
)

# random subsets drawn for the construct-set baseline
BASELINE_SUBSETS = 100


class ResonanceLab:
    """Runs one subcommand for a resolved ExperimentConfig."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.settings = settings
        self.logger = setup_logger("ResonanceLab")
        self.workers = resolve_workers(config.workers, default=self.settings.workers)
        self._table: Optional[PrimeTable] = None

    # -- shared inputs -------------------------------------------------

    @property
    def table(self) -> PrimeTable:
        if self._table is None:
            limit = self.config.sieve_limit or self.settings.sieve_limit
            self.logger.debug(f"Sieving primes up to {limit}")
            self._table = sieve(limit)
        return self._table

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self.config, n) is None]
        if missing:
            flags = ", ".join("--" + n.replace("_", "-") for n in missing)
            raise InvalidArgumentError(f"{self.config.command} needs {flags}")

    @property
    def tolerance(self) -> float:
        return self.config.tolerance if self.config.tolerance is not None else self.settings.tolerance

    @property
    def pair_budget(self) -> float:
        return self.config.budget if self.config.budget is not None else self.settings.pair_budget

    @property
    def search_budget(self) -> float:
        cfg = self.config.search_budget
        return cfg if cfg is not None else self.settings.search_budget

    @property
    def set_search_budget(self) -> int:
        cfg = self.config.set_search_budget
        return cfg if cfg is not None else self.settings.set_search_budget

    def function(self, domain_limit: int) -> CMFunction:
        """f from --function-file, or drawn from --kind with --seed."""
        domain_limit = max(1, int(domain_limit))
        if self.config.function_file:
            return load_function(self.config.function_file, self.table, domain_limit)
        return sample(
            self.config.kind,
            self.config.seed,
            domain_limit,
            self.table,
            c=self.config.c,
            N=self.config.N,
        )

    def integer_set(self) -> IntegerSet:
        """M from --set-file, or built by the candidate-set heuristic."""
        cfg = self.config
        if cfg.set_file:
            return load_integer_set(cfg.set_file)
        if cfg.K is None:
            self.require("T", "N")
        K = cfg.K if cfg.K is not None else int(math.floor(cfg.T / cfg.N))
        y = cfg.y if cfg.y is not None else max(3, int(math.ceil(math.log(max(K, 2)) ** 2)))
        center = cfg.center if cfg.center is not None else feasible_window_center(K, y, self.table)
        return construct_candidate_set(K, y, center, self.set_search_budget, cfg.seed, self.table)

    def resonator(self, style: MomentStyle) -> Resonator:
        cfg = self.config
        if style is MomentStyle.THM11:
            return build_hough_resonator(cfg.T, cfg.N, self.table, cfg.window, cfg.lam)
        return build_binned_resonator(self.integer_set(), cfg.T)

    def moment_options(self) -> Dict[str, Any]:
        return dict(
            quad_rel_tol=self.settings.quad_rel_tol,
            cutoff=self.settings.phi_hat_cutoff,
            floor=self.settings.gaussian_floor,
            budget=self.pair_budget,
            workers=self.workers,
            block_size=self.settings.block_size,
        )

    def tolerances(self) -> Dict[str, Any]:
        return {
            "search_tolerance": self.tolerance,
            "quad_rel_tol": self.settings.quad_rel_tol,
            "phi_hat_cutoff": self.settings.phi_hat_cutoff,
            "gaussian_floor": self.settings.gaussian_floor,
            "pair_budget": self.pair_budget,
            "search_budget": self.search_budget,
            "block_size": self.settings.block_size,
        }

    # -- subcommands -------------------------------------------------

    def predict11(self) -> Dict[str, Any]:
        self.require("T", "N")
        return thm11_predictor(self.config.T, self.config.N).to_dict()

    def predict12(self) -> Dict[str, Any]:
        self.require("T", "N")
        delta = self.config.delta if self.config.delta is not None else self.settings.delta
        row = thm12_predictor(self.config.T, self.config.N, delta).to_dict()
        xy = xy_predictor(self.config.T, self.config.N, delta)
        row["xy_value"] = xy.value
        row["xy_log_value"] = xy.log_value
        return row

    def search(self) -> Dict[str, Any]:
        self.require("T", "N")
        cfg = self.config
        f = self.function(cfg.N)
        result = find_max(
            f,
            cfg.N,
            cfg.T,
            self.tolerance,
            budget=self.search_budget,
            symmetric=bool(cfg.symmetric),
            workers=self.workers,
            renormalize_every=self.settings.renormalize_every,
        )
        row = result.to_dict()
        row.update({"N": cfg.N, "T": cfg.T, "S_at_1": abs(eval_poly(f, cfg.N, 1.0))})
        return row

    def _resonate(self, style: MomentStyle) -> Dict[str, Any]:
        self.require("T", "N")
        cfg = self.config
        params = ResonanceParams(
            style=style,
            window_override=cfg.window,
            lam_override=cfg.lam,
            seed=cfg.seed,
            tolerance=self.tolerance,
            search_budget=self.search_budget,
            pair_budget=self.pair_budget,
            quad_rel_tol=self.settings.quad_rel_tol,
            cutoff=self.settings.phi_hat_cutoff,
            floor=self.settings.gaussian_floor,
            workers=self.workers,
            block_size=self.settings.block_size,
            renormalize_every=self.settings.renormalize_every,
        )
        if style is MomentStyle.THM12:
            params.integer_set = self.integer_set()
            top = params.integer_set.elements[-1]
        else:
            top = int(math.floor(cfg.T / cfg.N))
        f = self.function(max(cfg.N, top))
        result = certify_resonance(f, cfg.N, cfg.T, params, self.table)
        if not result.passed:
            self.logger.error("Observed maximum is below the proven lower bound; this is a defect")
        return result.to_dict()

    def resonate11(self) -> Dict[str, Any]:
        return self._resonate(MomentStyle.THM11)

    def resonate12(self) -> Dict[str, Any]:
        return self._resonate(MomentStyle.THM12)

    def gcdsum(self) -> Dict[str, Any]:
        self.require("set_file", "N")
        M = load_integer_set(self.config.set_file)
        eta = self.config.eta if self.config.eta is not None else self.settings.eta
        report = gcd_sum_truncated(
            M, self.config.N, eta, self.table, workers=self.workers, block_size=self.settings.block_size
        )
        row = report.to_dict()
        row["lemma_rate"] = lemma_rate(M.K) if M.K > math.e ** math.e else None
        row["dyadic"] = M.is_dyadic()
        return row

    def construct_set(self) -> Dict[str, Any]:
        self.require("K", "y")
        cfg = self.config
        center = cfg.center if cfg.center is not None else feasible_window_center(cfg.K, cfg.y, self.table)
        M = construct_candidate_set(cfg.K, cfg.y, center, self.set_search_budget, cfg.seed, self.table)
        if cfg.set_out:
            dump_integer_set(M, cfg.set_out)
            self.logger.info(f"Candidate set written to {cfg.set_out}")

        value = gcd_sum(M, workers=self.workers, block_size=self.settings.block_size)
        pool = smooth_integers(center, 2 * center, cfg.y, self.table)
        rng = np.random.default_rng(cfg.seed)
        baseline = [
            gcd_sum(IntegerSet.of(sorted(rng.choice(pool, size=cfg.K, replace=False).tolist())))
            for _ in range(BASELINE_SUBSETS)
        ]
        baseline_mean = math.fsum(baseline) / len(baseline)
        return {
            "K": cfg.K,
            "y": cfg.y,
            "window_center": center,
            "elements": list(M.elements),
            "gcd_sum": value,
            "baseline_gcd_sum": baseline_mean,
            "margin": value - baseline_mean,
            "lemma_rate": lemma_rate(cfg.K) if cfg.K > math.e ** math.e else None,
            "smoothness_exponent": smoothness_exponent(cfg.y, cfg.K),
        }

    def moments(self) -> Dict[str, Any]:
        self.require("T", "N")
        cfg = self.config
        style = MomentStyle(cfg.style)
        R = self.resonator(style)
        f = self.function(max(cfg.N, int(R.ns[-1])))
        options = self.moment_options()
        report = thm11_report(R, f, cfg.T, cfg.N, **options) if style is MomentStyle.THM11 else thm12_report(
            R, f, cfg.T, cfg.N, **options
        )
        row = report.to_dict()
        row["support_size"] = R.size

        if cfg.quadrature:
            quad = i1_quadrature(R, f, cfg.T, self.settings.quad_rel_tol, self.settings.gaussian_floor)
            row["i1_quadrature"] = quad.value
            row["i1_quadrature_error"] = quad.abs_error
            row["i1_quadrature_converged"] = quad.converged
            row["i1_normalized"] = scale_parameter(cfg.T) * report.i1
        if cfg.grid and style is MomentStyle.THM12:
            terms = product_terms(polynomial_terms(f, cfg.N), resonator_terms(R, f))
            span = float(terms.freqs[-1] - terms.freqs[0]) if len(terms) > 1 else 1.0
            grid = TGrid.for_frequencies(cfg.T, span)
            quad = m2_thm12_grid(R, f, cfg.T, cfg.N, grid, budget=self.search_budget)
            row["m2_grid"] = quad.value
            row["m2_grid_error"] = quad.abs_error
        return row

    def check_fc(self) -> Dict[str, Any]:
        self.require("N", "c")
        f = self.function(self.config.N)
        report, member = check_Fc(f, self.config.N, self.config.c)
        return {
            "N": self.config.N,
            "c": self.config.c,
            "width": report.width,
            "min_pair_re": report.min_pair_re,
            "witness_pair": list(report.witness_pair),
            "member": member,
        }

    def selftest(self) -> List[Dict[str, Any]]:
        """Quick invariant checks; raises InvalidStateError if any fails."""
        rows = []
        for name, check in SELFTESTS:
            passed, detail = check(self)
            rows.append({"check": name, "passed": bool(passed), "detail": detail})
            log = self.logger.info if passed else self.logger.error
            log(f"selftest {name}: {'ok' if passed else 'FAILED'} ({detail})")
        failed = [r["check"] for r in rows if not r["passed"]]
        if failed:
            raise InvalidStateError(f"selftest failed: {', '.join(failed)}")
        return rows

    def run(self) -> Any:
        handler = getattr(self, self.config.command.replace("-", "_"))
        self.logger.info(f"Running {self.config.command}")
        return handler()


def _check_prime_count(lab: ResonanceLab) -> Tuple[bool, str]:
    count = len(sieve(100).primes)
    return count == 25, f"pi(100) = {count}"


def _check_gcd_sum(lab: ResonanceLab) -> Tuple[bool, str]:
    value = gcd_sum(IntegerSet.of([1, 2]))
    return abs(value - (2 + math.sqrt(2)) / 2) < 1e-12, f"gcd_sum({{1,2}}) = {value!r}"


def _check_fourier(lab: ResonanceLab) -> Tuple[bool, str]:
    worst = 0.0
    for m, n, a in ((3, 2, 10.0), (7, 5, 50.0), (11, 13, 400.0)):
        exact = fourier_pair_closed_form(m, n, a)
        worst = max(worst, abs(fourier_pair_integral(m, n, a) - exact) / exact)
    return worst < 1e-8 and phi_hat(0.0) == math.sqrt(2 * math.pi), f"max relative error {worst:.2e}"


def _check_e1(lab: ResonanceLab) -> Tuple[bool, str]:
    ok = abs(e1(1.0) - 0.21938393439552) < 1e-10
    worst = max(abs(e1_inverse(e1(A)) - A) for A in (0.25, 0.5, 1.0, 2.0, 4.0))
    return ok and worst < 1e-8, f"round-trip error {worst:.2e}"


def _check_predictor(lab: ResonanceLab) -> Tuple[bool, str]:
    factor = thm12_predictor(math.exp(20.0), 1.0).factor
    expected = math.exp(math.sqrt(2.0) * math.sqrt(20.0 * math.log(math.log(20.0)) / math.log(20.0)))
    return abs(factor - expected) <= 1e-10 * expected, f"factor {factor:.10g}"


def _check_eval_poly(lab: ResonanceLab) -> Tuple[bool, str]:
    f = sample("constant_one", 0, 10, sieve(10))
    value = eval_poly(f, 3, 0.0)
    return value == 3 and eval_poly(f, 1, 12.5) == 1, f"S_0(3) = {value}"


def _check_pair_vs_quadrature(lab: ResonanceLab) -> Tuple[bool, str]:
    table = sieve(100)
    R = build_multiplicative_resonator(12.0, {2: 0.7, 3: 0.5})
    f = sample("constant_one", 0, 100, table)
    T = 100.0
    pair = scale_parameter(T) * i1_pairsum(R, f, T).total.real
    quad = i1_quadrature(R, f, T).value
    rel = abs(pair - quad) / pair
    return rel < 1e-6, f"relative gap {rel:.2e}"


def _check_binned(lab: ResonanceLab) -> Tuple[bool, str]:
    M = IntegerSet.of([12, 16, 18, 24])
    R = build_binned_resonator(M, 50.0)
    total = math.fsum((R.weights ** 2).tolist())
    return abs(total - len(M)) < 1e-12, f"sum of squared weights {total!r}"


def _check_resonance(lab: ResonanceLab) -> Tuple[bool, str]:
    table = sieve(1000)
    f = sample("constant_one", 0, 1000, table)
    params = ResonanceParams(window_override=(2.0, 3.0), tolerance=0.05)
    result = certify_resonance(f, 5, 200.0, params, table)
    return result.passed, f"observed {result.observed:.6g}, bound {result.bound:.6g}"


def _check_window_threshold(lab: ResonanceLab) -> Tuple[bool, str]:
    x = min_x_for_nonempty_window(sieve(1000))
    return x > math.e, f"smallest x with a nonempty window {x:.6g}"


SELFTESTS: Sequence[Tuple[str, Callable[[ResonanceLab], Tuple[bool, str]]]] = (
    ("prime_count", _check_prime_count),
    ("gcd_sum", _check_gcd_sum),
    ("fourier_identity", _check_fourier),
    ("e1", _check_e1),
    ("thm12_factor", _check_predictor),
    ("eval_poly", _check_eval_poly),
    ("pair_sum_vs_quadrature", _check_pair_vs_quadrature),
    ("binned_weights", _check_binned),
    ("resonance_inequality", _check_resonance),
    ("window_threshold", _check_window_threshold),
)


def _int_like(text: str) -> int:
    """Integers written as 1e4 are accepted."""
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Replay a config (YAML/JSON, or a previous result file)")
    common.add_argument("--T", type=float, help="Height of the t-range")
    common.add_argument("--N", type=_int_like, help="Length of the Dirichlet polynomial")
    common.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"), help="Prime window override")
    common.add_argument("--lam", type=float, help="Override of lambda in the resonator weights")
    common.add_argument("--K", type=_int_like, help="Candidate set size")
    common.add_argument("--y", type=_int_like, help="Smoothness bound")
    common.add_argument("--c", type=float, help="F(c) threshold")
    common.add_argument("--center", type=_int_like, help="Lower end c of the window [c, 2c]")
    common.add_argument("--delta", type=float, help="Range parameter delta")
    common.add_argument("--eta", type=float, help="Tail-bound exponent eta")
    common.add_argument("--seed", type=int, help="Seed for every random draw")
    common.add_argument("--kind", choices=["constant_one", "random_unimodular", "arc_constrained"])
    common.add_argument("--style", choices=["thm11", "thm12"], help="Moment style")
    common.add_argument("--tolerance", type=float, help="Certified search tolerance")
    common.add_argument("--budget", type=float, help="Pair-sum term budget")
    common.add_argument("--search-budget", type=float, help="Grid evaluation budget")
    common.add_argument("--set-search-budget", type=_int_like, help="Swap proposals for construct-set")
    common.add_argument("--symmetric", action="store_true", default=None, help="Search 1 <= |t| <= T")
    common.add_argument("--quadrature", action="store_true", default=None, help="Add the I1 quadrature check")
    common.add_argument("--grid", action="store_true", default=None, help="Add the M2 grid quadrature (thm12)")
    common.add_argument("--sieve-limit", type=_int_like, help="Prime table bound")
    common.add_argument("--set-file", help="IntegerSet file, one integer per line")
    common.add_argument("--function-file", help="CMFunction file, 'p theta' lines")
    common.add_argument("--set-out", help="Where construct-set writes the set")
    common.add_argument("--workers", type=int, help="Worker threads")
    common.add_argument("--format", choices=["csv", "json"], help="Output format")
    common.add_argument("--output", help="Output file (stdout when omitted)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="resonance-lab",
        description="Numerical laboratory for the resonance method on Dirichlet polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """CLI flags layered over --config."""
    base = ExperimentConfig()
    if args.config:
        base = ExperimentConfig.from_dict(load_experiment_config(args.config))
    overrides = {k: v for k, v in vars(args).items() if k not in ("config", "log_level")}
    if overrides.get("window") is not None:
        overrides["window"] = tuple(overrides["window"])
    return base.merged(overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.log_level or settings.log_level, settings.log_file)
    logger = setup_logger("resonance_lab")

    problems = settings.validate()
    if problems:
        for problem in problems:
            logger.error(f"Invalid setting: {problem}")
        return 3

    try:
        config = resolve_config(args)
        lab = ResonanceLab(config)
        result = lab.run()
        prov = provenance(config.command, config.to_dict(), lab.tolerances())
        write_result(
            result,
            prov,
            fmt=config.format or settings.output_format,
            path=config.output,
            schema_version=settings.schema_version,
        )
    except LabError as exc:
        logger.error(str(exc))
        return exc.exit_code
    except Exception:
        logger.exception("Unexpected failure")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
