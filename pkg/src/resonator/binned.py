"""
The binned resonator over a set M.

M is cut by the geometric mesh (1 + log T / T)^j into half-open bins
M_j; each non-empty bin is represented by its minimum m_j with weight
|M_j|^{1/2}, so the squared weights add up to |M|.
"""

import math
from collections import OrderedDict

import numpy as np

from src.resonator.types import IntegerSet, Resonator, ResonatorMeta, ResonatorStyle
from src.utils.errors import InvalidArgumentError
from src.utils.logger import setup_logger

logger = setup_logger("BinnedResonator")


def mesh_ratio(T: float) -> float:
    return 1.0 + math.log(T) / T


def bin_index(m: int, T: float) -> int:
    """
    j with q^j <= m < q^(j+1), q = 1 + log T / T.

    The floor of log m / log q can land one off near a bin edge; the two
    loops settle it against the same pow() values used for the edges, so the
    bins partition M deterministically.
    """
    log_q = math.log1p(math.log(T) / T)
    q = mesh_ratio(T)
    j = math.floor(math.log(m) / log_q)
    while j > 0 and math.pow(q, j) > m:
        j -= 1
    while math.pow(q, j + 1) <= m:
        j += 1
    return j


def build_binned_resonator(M: IntegerSet, T: float) -> Resonator:
    """
    Build the binned resonator of M at height T.

    Args:
        M: Non-empty integer set
        T: Height, at least 2

    Returns:
        Binned-style Resonator with support {min M_j} and weights |M_j|^{1/2}
    """
    if T < 2:
        raise InvalidArgumentError(f"T must be >= 2, got {T}")

    bins = OrderedDict()
    for m in M.elements:
        j = bin_index(m, T)
        if j not in bins:
            bins[j] = [m, 0]
        bins[j][1] += 1

    representatives = [rep for rep, _ in bins.values()]
    sizes = tuple(count for _, count in bins.values())
    assert sum(sizes) == len(M)

    meta = ResonatorMeta(style=ResonatorStyle.BINNED, T=T, bin_count=len(sizes), bin_sizes=sizes)
    resonator = Resonator(
        ns=np.array(representatives, dtype=np.int64),
        weights=np.sqrt(np.array(sizes, dtype=float)),
        meta=meta,
    )
    logger.info(f"Binned resonator: |M|={len(M)}, {len(sizes)} non-empty bins at T={T:.6g}")
    return resonator
