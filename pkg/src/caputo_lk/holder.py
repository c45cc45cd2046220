"""Uniform grids and the family of Holder-continuous test functions.

The test family is u_xi(t) = (t - xi)^m |t - xi|^beta: a function whose
m-th derivative is exactly beta-Holder at the interior point xi and smooth
everywhere else.  It is the probe used to measure how discretization error
tracks regularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "UniformGrid",
    "RegularityClass",
    "HolderTestFunction",
    "NotAGridNodeError",
    "eval_test_function",
    "grid_node_index",
    "modulus_probe",
]

_MAX_M = 6
_NODE_TOL = 1e-9


class NotAGridNodeError(ValueError):
    """Raised when a time does not coincide with any grid node."""


@dataclass(frozen=True)
class UniformGrid:
    """Uniform time grid t_n = n * tau on [0, horizon]."""

    horizon: float
    steps: int

    def __post_init__(self) -> None:
        if not self.horizon > 0.0:
            raise ValueError(f"grid horizon must be positive, got {self.horizon!r}")
        if self.steps < 1:
            raise ValueError(f"grid needs at least one step, got {self.steps!r}")

    @property
    def tau(self) -> float:
        return self.horizon / self.steps

    def time(self, n: int) -> float:
        if not 0 <= n <= self.steps:
            raise ValueError(f"node index {n} outside 0..{self.steps}")
        return n * self.tau

    def node_index(self, t: float) -> int:
        return grid_node_index(self, t)


def grid_node_index(grid: UniformGrid, t: float) -> int:
    """Map a time to its node index, refusing off-grid times."""
    x = t / grid.tau
    n = round(x)
    if abs(x - n) > _NODE_TOL or not 0 <= n <= grid.steps:
        raise NotAGridNodeError(f"time {t!r} is not a node of {grid}")
    return n


@dataclass(frozen=True)
class RegularityClass:
    """Smoothness label C^(m,beta): m classical derivatives, the last one
    beta-Holder."""

    m: int
    beta: float

    def __post_init__(self) -> None:
        if not 0 <= self.m <= _MAX_M:
            raise ValueError(f"derivative count m must lie in 0..{_MAX_M}, got {self.m!r}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"Holder exponent must lie in (0, 1], got {self.beta!r}")

    @property
    def total(self) -> float:
        return self.m + self.beta

    @classmethod
    def from_total(cls, total: float) -> "RegularityClass":
        """Canonical split of a total smoothness s into (m, beta) with
        beta in (0, 1]: e.g. 3.0 -> (2, 1.0) and 2.2 -> (2, 0.2)."""
        if not 0.0 < total <= _MAX_M + 1.0:
            raise ValueError(f"total smoothness must lie in (0, {_MAX_M + 1}], got {total!r}")
        m = math.ceil(total - 1e-12) - 1
        return cls(m=m, beta=total - m)


@dataclass(frozen=True)
class HolderTestFunction:
    """u(t) = (t - xi)^m |t - xi|^beta with the kink placed at xi > 0."""

    m: int
    beta: float
    xi: float

    def __post_init__(self) -> None:
        RegularityClass(self.m, self.beta)
        if not self.xi > 0.0:
            raise ValueError(f"kink location must be positive, got {self.xi!r}")

    @property
    def regularity(self) -> RegularityClass:
        return RegularityClass(self.m, self.beta)

    def __call__(self, t: float) -> float:
        return self.derivative(0, t)

    def derivative(self, order: int, t: float) -> float:
        """Classical derivative of the stated order; valid for order <= m.

        d^p/dt^p u = (prod_{i<p} (m+beta-i)) (t-xi)^(m-p) |t-xi|^beta,
        which vanishes at the kink itself for every admissible p.
        """
        if not 0 <= order <= self.m:
            raise ValueError(
                f"derivative order {order} exceeds the classical count m={self.m}"
            )
        d = t - self.xi
        if d == 0.0:
            return 0.0
        factor = 1.0
        for i in range(order):
            factor *= self.m + self.beta - i
        return factor * d ** (self.m - order) * abs(d) ** self.beta


def eval_test_function(f: HolderTestFunction, t: float) -> float:
    """Value of the test function at time t."""
    return f(t)


def modulus_probe(
    f: HolderTestFunction,
    derivative_order: int,
    delta: float,
    samples: int,
    horizon: float = 1.0,
) -> float:
    """Sampled modulus of continuity of u^(p) at scale delta.

    Returns max |u^(p)(t) - u^(p)(s)| over sampled pairs with |t - s| <= delta.
    The sample set joins a delta-independent uniform grid (so the probe is
    monotone in delta) with pairs straddling the kink, including the pairs
    (xi - delta, xi) and (xi, xi + delta) that realize the Holder rate.
    """
    if not 0 <= derivative_order <= f.m:
        raise ValueError("derivative order exceeds the classical count")
    if delta < 0.0 or delta > horizon:
        raise ValueError(f"probe scale must lie in [0, horizon], got {delta!r}")
    if samples < 2:
        raise ValueError("need at least two sample points")
    if delta == 0.0:
        return 0.0

    def deriv(t: float) -> float:
        return f.derivative(derivative_order, t)

    ts = [i * horizon / (samples - 1) for i in range(samples)]
    vals = [deriv(t) for t in ts]
    best = 0.0
    for i in range(samples):
        j = i + 1
        while j < samples and ts[j] - ts[i] <= delta * (1.0 + 1e-12):
            diff = abs(vals[j] - vals[i])
            if diff > best:
                best = diff
            j += 1
    # pairs straddling the kink at every split ratio, kink-endpoint included
    for a in range(17):
        frac = a / 16.0
        lo = f.xi - frac * delta
        hi = lo + delta
        if lo >= 0.0 and hi <= horizon:
            diff = abs(deriv(hi) - deriv(lo))
            if diff > best:
                best = diff
    return best
