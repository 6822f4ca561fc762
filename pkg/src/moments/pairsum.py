"""
Dirichlet polynomials as exact-key term lists, and Gaussian pair sums.

A polynomial P(t) = sum_u p_u exp(i lambda_u t) is stored with exact rational
keys (lambda_u = log key_u), so products of polynomials can be merged on equal
frequencies without floating comparisons. For two polynomials,

    int P(t) conj(Q(t)) Phi(a t) dt = (1/a) sum_{u,v} p_u conj(q_v) Phi_hat((lambda_u - lambda_v)/a),

and the diagonal is exactly the set of pairs with equal keys.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

import numpy as np

from src.moments.kernel import SQRT_2PI, GaussianKernel
from src.multfn import CMFunction
from src.resonator import Resonator
from src.utils.errors import BudgetExceededError
from src.utils.parallel import DEFAULT_BLOCK_SIZE, map_blocks

EVAL_CHUNK = 2048


@dataclass(frozen=True, eq=False)
class DirichletTerms:
    """Terms of a Dirichlet polynomial sorted by frequency."""

    keys: Tuple[Fraction, ...]
    freqs: np.ndarray
    coeffs: np.ndarray

    def __len__(self) -> int:
        return len(self.keys)

    def evaluate(self, t: float) -> complex:
        return complex(np.dot(self.coeffs, np.exp(1j * t * self.freqs)))

    def evaluate_many(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.empty(len(ts), dtype=complex)
        for lo in range(0, len(ts), EVAL_CHUNK):
            chunk = ts[lo : lo + EVAL_CHUNK]
            out[lo : lo + len(chunk)] = np.exp(1j * np.outer(chunk, self.freqs)) @ self.coeffs
        return out

    def index(self) -> Dict[Fraction, int]:
        return {k: i for i, k in enumerate(self.keys)}


def _log_key(key: Fraction) -> float:
    return math.log(key.numerator) - math.log(key.denominator)


def merge_terms(pairs: Iterable[Tuple[Fraction, complex]]) -> DirichletTerms:
    """Collect (key, coefficient) pairs, summing coefficients of equal keys."""
    grouped: Dict[Fraction, list] = {}
    for key, c in pairs:
        grouped.setdefault(key, []).append(complex(c))

    merged = []
    for key, cs in grouped.items():
        total = complex(math.fsum(c.real for c in cs), math.fsum(c.imag for c in cs))
        merged.append((_log_key(key), key, total))
    merged.sort(key=lambda item: (item[0], item[1]))

    return DirichletTerms(
        keys=tuple(k for _, k, _ in merged),
        freqs=np.array([lam for lam, _, _ in merged], dtype=float),
        coeffs=np.array([c for _, _, c in merged], dtype=complex),
    )


def resonator_terms(R: Resonator, f: CMFunction) -> DirichletTerms:
    """R(t) = sum f(n) r(n) n^{sign it}; binned resonators use sign -1."""
    coeffs = R.coefficients(f)
    if R.sign > 0:
        keys = [Fraction(n) for n in R.ns.tolist()]
    else:
        keys = [Fraction(1, n) for n in R.ns.tolist()]
    return merge_terms(zip(keys, coeffs.tolist()))


def polynomial_terms(f: CMFunction, N: int) -> DirichletTerms:
    """S_t(N) = sum_{n <= N} f(n) n^{it}."""
    values = f.values_upto(int(N))
    return merge_terms((Fraction(n), values[n]) for n in range(1, int(N) + 1))


def product_terms(A: DirichletTerms, B: DirichletTerms) -> DirichletTerms:
    """Terms of A(t) B(t), merged on equal frequencies."""
    b_pairs = list(zip(B.keys, B.coeffs.tolist()))
    return merge_terms((ka * kb, ca * cb) for ka, ca in zip(A.keys, A.coeffs.tolist()) for kb, cb in b_pairs)


@dataclass(frozen=True)
class PairSumResult:
    """
    int P conj(Q) Phi(a t) dt split into diagonal and off-diagonal parts.

    diag_raw is sum over equal keys of p_u conj(q_u), without the Phi_hat(0)/a
    weight; total = diag_weight * diag_raw + offdiag. discarded_bound bounds the
    mass of the terms skipped beyond the Phi_hat cutoff.
    """

    total: complex
    diag_raw: complex
    diag_weight: float
    offdiag: complex
    evaluated_terms: int
    discarded_bound: float


def cross_pair_sum(
    P: DirichletTerms,
    Q: DirichletTerms,
    a: float,
    cutoff: float = GaussianKernel.CUTOFF,
    budget: float = math.inf,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> PairSumResult:
    """
    Evaluate (1/a) sum_{u,v} p_u conj(q_v) Phi_hat((lambda_u - lambda_v)/a).

    Args:
        P: Left polynomial
        Q: Right polynomial (conjugated)
        a: Kernel scale, log T / T
        cutoff: Largest |Phi_hat argument| kept
        budget: Refuse when len(P) * len(Q) exceeds this
        workers: Threads over row blocks of P
        block_size: Rows per block

    Returns:
        PairSumResult
    """
    estimate = float(len(P)) * float(len(Q))
    if estimate > budget:
        raise BudgetExceededError("pair sum too large", estimate=estimate, budget=budget)

    q_freqs = Q.freqs
    q_conj = np.conj(Q.coeffs)
    q_index = Q.index()
    reach = cutoff * a

    def block(lo: int, hi: int):
        off_re, off_im, diag_re, diag_im = [], [], [], []
        count = 0
        for u in range(lo, hi):
            lam = P.freqs[u]
            left = int(np.searchsorted(q_freqs, lam - reach, side="left"))
            right = int(np.searchsorted(q_freqs, lam + reach, side="right"))
            if right <= left:
                continue
            count += right - left
            weights = GaussianKernel.phi_hat((lam - q_freqs[left:right]) / a)
            terms = P.coeffs[u] * q_conj[left:right] * weights
            match = q_index.get(P.keys[u])
            if match is not None and left <= match < right:
                d = P.coeffs[u] * q_conj[match]
                diag_re.append(d.real)
                diag_im.append(d.imag)
                terms = np.delete(terms, match - left)
            off_re.append(math.fsum(terms.real.tolist()))
            off_im.append(math.fsum(terms.imag.tolist()))
        return (
            math.fsum(off_re),
            math.fsum(off_im),
            math.fsum(diag_re),
            math.fsum(diag_im),
            count,
        )

    parts = map_blocks(block, len(P), workers, block_size)
    offdiag = complex(math.fsum(p[0] for p in parts), math.fsum(p[1] for p in parts)) / a
    diag_raw = complex(math.fsum(p[2] for p in parts), math.fsum(p[3] for p in parts))
    evaluated = sum(p[4] for p in parts)
    diag_weight = SQRT_2PI / a

    skipped = max(0.0, estimate - evaluated)
    max_p = float(np.max(np.abs(P.coeffs))) if len(P) else 0.0
    max_q = float(np.max(np.abs(Q.coeffs))) if len(Q) else 0.0
    discarded = skipped * max_p * max_q * float(GaussianKernel.phi_hat(cutoff)) / a

    return PairSumResult(
        total=diag_weight * diag_raw + offdiag,
        diag_raw=diag_raw,
        diag_weight=diag_weight,
        offdiag=offdiag,
        evaluated_terms=evaluated,
        discarded_bound=discarded,
    )
