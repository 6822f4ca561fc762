import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.multfn.function import CMFunction
from src.utils.errors import InvalidArgumentError

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class ArcReport:
    """
    Smallest circular arc holding {arg f(n) : n <= N}.

    width is the arc length in radians; min_pair_re is min Re f(n) conj(f(m))
    over n, m <= N, attained at witness_pair. When width <= pi the two agree
    via min_pair_re = cos(width).
    """

    width: float
    min_pair_re: float
    witness_pair: Tuple[int, int]


def minimal_arc(f: CMFunction, N: int) -> ArcReport:
    """Compute the ArcReport of f restricted to 1..N."""
    angles = np.mod(f.angles_upto(N)[1:], TWO_PI)
    order = np.argsort(angles, kind="stable")
    sorted_angles = angles[order]
    ns = order + 1

    if len(sorted_angles) == 1:
        return ArcReport(width=0.0, min_pair_re=1.0, witness_pair=(1, 1))

    gaps = np.diff(sorted_angles)
    wrap_gap = sorted_angles[0] + TWO_PI - sorted_angles[-1]
    i = int(np.argmax(gaps))
    if gaps[i] > wrap_gap:
        # arc runs from the point after the gap round to the point before it
        largest_gap = float(gaps[i])
        start, end = int(ns[i + 1]), int(ns[i])
    else:
        largest_gap = float(wrap_gap)
        start, end = int(ns[0]), int(ns[-1])
    width = max(0.0, TWO_PI - largest_gap)

    if width <= math.pi:
        return ArcReport(width=width, min_pair_re=math.cos(width), witness_pair=(start, end))

    # Points spread over more than a half circle: look for the pair closest to antipodal.
    best_dist, best_pair = -1.0, (1, 1)
    targets = np.mod(sorted_angles + math.pi, TWO_PI)
    idx = np.searchsorted(sorted_angles, targets)
    size = len(sorted_angles)
    for k in range(size):
        for j in (idx[k] % size, (idx[k] - 1) % size):
            diff = abs(sorted_angles[j] - sorted_angles[k])
            dist = min(diff, TWO_PI - diff)
            if dist > best_dist:
                best_dist, best_pair = dist, (int(ns[k]), int(ns[j]))
    return ArcReport(width=width, min_pair_re=math.cos(best_dist), witness_pair=best_pair)


def check_Fc(f: CMFunction, N: int, c: float) -> Tuple[ArcReport, bool]:
    """
    Test membership of f in F(c) on the truncated range n, m <= N.

    Args:
        f: Function to test
        N: Truncation bound (<= f.domain_limit)
        c: Threshold in (0, 1)

    Returns:
        (ArcReport, member) where member holds iff width <= arccos(c)
    """
    if not 0 < c < 1:
        raise InvalidArgumentError(f"c must lie in (0, 1), got {c}")
    report = minimal_arc(f, N)
    member = report.width <= math.acos(c) + 1e-12
    return report, member
