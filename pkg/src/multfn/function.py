"""
Unimodular completely multiplicative functions.

A function is stored by its angles on primes, f(p) = exp(i * theta_p), so that
f(n) = exp(i * sum e_p theta_p) stays exactly on the unit circle no matter how
many prime factors n has.
"""

import cmath
import math
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Mapping, Optional

import numpy as np

from src.arith import PrimeTable, factorize
from src.utils.errors import InvalidArgumentError, OutOfRangeError


def wrap_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    return math.pi - ((math.pi - theta) % (2 * math.pi))


@dataclass(frozen=True, eq=False)
class CMFunction:
    """
    f with f(p) = exp(i * prime_angles[p]); primes missing from the map have angle 0.

    Immutable once built; the lazily filled angle cache only grows and is safe
    to read from several threads.
    """

    prime_angles: Mapping[int, float]
    domain_limit: int
    table: PrimeTable
    _cache: Dict[str, np.ndarray] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.domain_limit < 1:
            raise InvalidArgumentError(f"domain_limit must be >= 1, got {self.domain_limit}")
        if self.domain_limit > self.table.limit:
            raise OutOfRangeError(
                f"domain_limit {self.domain_limit} exceeds sieve limit {self.table.limit}"
            )
        angles = {int(p): wrap_angle(float(t)) for p, t in self.prime_angles.items()}
        object.__setattr__(self, "prime_angles", MappingProxyType(angles))

    def angle(self, n: int) -> float:
        """Sum of e_p * theta_p over the factorization of n (not reduced mod 2*pi)."""
        self._check(n)
        return math.fsum(e * self.prime_angles.get(p, 0.0) for p, e in factorize(n, self.table).factors)

    def angles_upto(self, N: int) -> np.ndarray:
        """Array a with a[n] = angle(n) for 1 <= n <= N (a[0] unused)."""
        self._check(N)
        cached = self._cache.get("angles")
        if cached is not None and len(cached) > N:
            return cached[: N + 1]

        spf = self.table.spf
        angles = np.zeros(N + 1)
        for n in range(2, N + 1):
            p = int(spf[n])
            angles[n] = angles[n // p] + self.prime_angles.get(p, 0.0)
        angles.setflags(write=False)
        self._cache["angles"] = angles
        return angles

    def values_upto(self, N: int) -> np.ndarray:
        """Array v with v[n] = f(n) for 1 <= n <= N (v[0] = 0)."""
        values = np.exp(1j * self.angles_upto(N))
        values[0] = 0.0
        return values

    @property
    def is_real(self) -> bool:
        """True when every f(p) is +1 or -1, so S_{-t} is the conjugate of S_t."""
        return all(abs(t) < 1e-15 or abs(abs(t) - math.pi) < 1e-15 for t in self.prime_angles.values())

    def _check(self, n: int) -> None:
        if n < 1:
            raise InvalidArgumentError(f"f is defined on positive integers, got {n}")
        if n > self.domain_limit:
            raise OutOfRangeError(f"{n} is outside the domain (limit {self.domain_limit})")


def evaluate(f: CMFunction, n: int) -> complex:
    """f(n) on the unit circle."""
    return cmath.exp(1j * f.angle(n))


def constant_one(table: PrimeTable, domain_limit: Optional[int] = None) -> CMFunction:
    """The function f = 1."""
    return CMFunction(prime_angles={}, domain_limit=domain_limit or table.limit, table=table)


def dump_function(f: CMFunction, path: Path) -> None:
    """
    Write f as "p theta_p" lines, preceded by a "# domain_limit" comment.

    Every prime up to the domain limit is listed so the file pins f exactly.
    """
    path = Path(path)
    lines = [f"# domain_limit {f.domain_limit}"]
    for p in f.table.primes_upto(f.domain_limit).tolist():
        lines.append(f"{p} {f.prime_angles.get(p, 0.0)!r}")
    path.write_text("\n".join(lines) + "\n")


def load_function(path: Path, table: PrimeTable, domain_limit: Optional[int] = None) -> CMFunction:
    """
    Read a function written by dump_function.

    Args:
        path: File with "p theta_p" lines
        table: Prime table used for evaluation
        domain_limit: Overrides the header value when given

    Returns:
        CMFunction
    """
    angles = {}
    header_limit = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "domain_limit":
                header_limit = int(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidArgumentError(f"{path}:{lineno}: expected 'p theta_p', got {raw!r}")
        p, theta = int(parts[0]), float(parts[1])
        if p > table.limit or not table.is_prime(p):
            raise InvalidArgumentError(f"{path}:{lineno}: {p} is not a prime within the sieve")
        angles[p] = theta

    limit = domain_limit or header_limit or (max(angles) if angles else table.limit)
    return CMFunction(prime_angles=angles, domain_limit=limit, table=table)
