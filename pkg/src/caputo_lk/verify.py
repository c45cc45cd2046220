"""Self-contained verification suite behind the ``verify`` CLI command.

Every check is deterministic (seeded RNG) and compares two independent
routes to the same quantity: algebraic identities of the interpolation
machinery, closed-form values of the discrete operators, and the adaptive
quadrature oracle against the production kernel-moment path.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .holder import HolderTestFunction, UniformGrid
from .interp import (
    LagrangePiece,
    SchemeKind,
    backward_difference,
    build_interpolant,
    divided_coeff,
    lagrange_eval,
)
from .oracle import exact_caputo_monomial, quad_caputo_integrated, quad_caputo_piecewise
from .schemes import discrete_caputo, l1_convolution, l1_weights
from .special import KernelMoment, FractionalOrder, gamma, kernel_moment
from .harness import order_first_node, order_interior

__all__ = ["CheckResult", "run_verification"]

_SEED = 20260817


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check_gamma(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        x = rng.uniform(0.05, 6.0)
        lhs = gamma(x + 1.0)
        rhs = x * gamma(x)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    anchors = [
        (0.5, math.sqrt(math.pi)),
        (1.0, 1.0),
        (2.0, 1.0),
        (5.0, 24.0),
    ]
    for x, want in anchors:
        worst = max(worst, abs(gamma(x) - want) / want)
    for _ in range(50):
        x = rng.uniform(0.05, 6.0)
        worst = max(worst, abs(gamma(x) - math.gamma(x)) / math.gamma(x))
    return CheckResult(
        "gamma recurrence and anchors", worst < 1e-12, f"worst rel dev {worst:.2e}"
    )


def _check_moment_additivity(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(60):
        alpha = FractionalOrder(rng.uniform(0.05, 0.95))
        t = rng.uniform(0.5, 2.0)
        a = rng.uniform(0.0, 0.6) * t
        b = rng.uniform(a / t + 1e-3, 0.999) * t
        mid = rng.uniform(a, b)
        c = rng.uniform(0.0, b)
        q = rng.randrange(0, 7)
        whole = kernel_moment(KernelMoment(t=t, a=a, b=b, c=c, q=q, alpha=alpha))
        parts = kernel_moment(
            KernelMoment(t=t, a=a, b=mid, c=c, q=q, alpha=alpha)
        ) + kernel_moment(KernelMoment(t=t, a=mid, b=b, c=c, q=q, alpha=alpha))
        scale = max(abs(whole), abs(parts), 1e-30)
        worst = max(worst, abs(whole - parts) / scale)
    return CheckResult(
        "kernel moment window additivity", worst < 1e-9, f"worst rel dev {worst:.2e}"
    )


def _check_moment_recentring(rng: random.Random) -> CheckResult:
    # (s - c')^q expands binomially in (s - c), so the recentred moment is a
    # fixed linear combination of lower-degree moments
    worst = 0.0
    for _ in range(40):
        alpha = FractionalOrder(rng.uniform(0.05, 0.95))
        t = rng.uniform(0.5, 2.0)
        a = rng.uniform(0.0, 0.5) * t
        b = rng.uniform(a / t + 1e-3, 0.99) * t
        c = rng.uniform(0.0, b)
        cp = rng.uniform(0.0, b)
        q = rng.randrange(0, 6)
        lhs = kernel_moment(KernelMoment(t=t, a=a, b=b, c=cp, q=q, alpha=alpha))
        rhs = math.fsum(
            math.comb(q, j)
            * (c - cp) ** (q - j)
            * kernel_moment(KernelMoment(t=t, a=a, b=b, c=c, q=j, alpha=alpha))
            for j in range(q + 1)
        )
        scale = max(abs(lhs), abs(rhs), 1e-30)
        worst = max(worst, abs(lhs - rhs) / scale)
    return CheckResult(
        "kernel moment recentring identity", worst < 1e-8, f"worst rel dev {worst:.2e}"
    )


def _random_piece(rng: random.Random, k: int) -> LagrangePiece:
    tau = 2.0 ** -rng.randrange(2, 8)
    start = rng.randrange(0, 20)
    times = tuple((start + i) * tau for i in range(k + 1))
    values = tuple(rng.uniform(-2.0, 2.0) for _ in range(k + 1))
    return LagrangePiece(
        degree=k,
        anchor=start + k,
        node_times=times,
        node_values=values,
        interval=(times[-2], times[-1]),
        tau=tau,
    )


def _check_partition_of_unity(rng: random.Random) -> CheckResult:
    worst = 0.0
    for k in range(1, 7):
        for _ in range(34):
            piece = _random_piece(rng, k)
            ones = LagrangePiece(
                degree=k,
                anchor=piece.anchor,
                node_times=piece.node_times,
                node_values=(1.0,) * (k + 1),
                interval=piece.interval,
                tau=piece.tau,
            )
            lo = piece.node_times[0] - piece.tau
            hi = piece.node_times[-1] + piece.tau
            s = rng.uniform(lo, hi)
            worst = max(worst, abs(lagrange_eval(ones, s) - 1.0))
    return CheckResult(
        "partition of unity (k <= 6)", worst < 1e-11, f"worst dev {worst:.2e}"
    )


def _check_divided_coeff_sum(_: random.Random) -> CheckResult:
    for k in range(1, 7):
        total = sum(Fraction(1, divided_coeff(k, l)) for l in range(k + 1))
        if total != 0:
            return CheckResult(
                "lagrange weight reciprocals sum to zero", False, f"k={k}: {total}"
            )
    return CheckResult(
        "lagrange weight reciprocals sum to zero", True, "exact for k = 1..6"
    )


def _check_backward_difference(rng: random.Random) -> CheckResult:
    worst = 0.0
    for order in range(1, 7):
        for _ in range(20):
            deg = rng.randrange(0, order)
            coeffs = [rng.uniform(-1.0, 1.0) for _ in range(deg + 1)]
            length = order + 1 + rng.randrange(0, 3)
            samples = [
                math.fsum(c * (i * 1.0) ** p for p, c in enumerate(coeffs))
                for i in range(length)
            ]
            scale = max(abs(v) for v in samples) + 1.0
            worst = max(worst, abs(backward_difference(samples, order)) / scale)
    return CheckResult(
        "difference operators annihilate low degrees",
        worst < 1e-12,
        f"worst scaled dev {worst:.2e}",
    )


def _check_interpolation_exactness(rng: random.Random) -> CheckResult:
    worst = 0.0
    for k in range(1, 7):
        for _ in range(12):
            coeffs = [rng.uniform(-1.0, 1.0) for _ in range(k + 1)]

            def poly(s: float) -> float:
                return math.fsum(c * s**p for p, c in enumerate(coeffs))

            tau = 2.0 ** -rng.randrange(2, 6)
            start = rng.randrange(0, 8)
            times = tuple((start + i) * tau for i in range(k + 1))
            piece = LagrangePiece(
                degree=k,
                anchor=start + k,
                node_times=times,
                node_values=tuple(poly(t) for t in times),
                interval=(times[-2], times[-1]),
                tau=tau,
            )
            for _ in range(5):
                s = rng.uniform(times[0], times[-1])
                scale = max(1.0, abs(poly(s)))
                worst = max(worst, abs(lagrange_eval(piece, s) - poly(s)) / scale)
    return CheckResult(
        "polynomial reproduction (k <= 6)", worst < 1e-10, f"worst rel dev {worst:.2e}"
    )


def _all_schemes() -> list[SchemeKind]:
    return [
        SchemeKind.l1(),
        SchemeKind.l2(),
        SchemeKind.l12(),
        SchemeKind.lk(3),
        SchemeKind.lk(4),
        SchemeKind.lk(5),
        SchemeKind.lk(6),
    ]


def _check_linear_exactness(rng: random.Random) -> CheckResult:
    worst = 0.0
    for scheme in _all_schemes():
        for alpha in (0.1, 0.3, 0.5, 0.7, 0.9):
            c0 = rng.uniform(-2.0, 2.0)
            c1 = rng.uniform(0.5, 2.0)
            grid = UniformGrid(horizon=1.0, steps=16)
            for n in (1, 2, 8, 16):
                got = discrete_caputo(
                    scheme, grid, lambda t: c0 + c1 * t, n, alpha
                ).value
                want = c1 * grid.time(n) ** (1.0 - alpha) / gamma(2.0 - alpha)
                worst = max(worst, abs(got - want) / abs(want))
    return CheckResult(
        "linear inputs recover the power rule", worst < 1e-10, f"worst rel dev {worst:.2e}"
    )


def _check_l1_convolution(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(20):
        n = rng.randrange(1, 40)
        steps = n + rng.randrange(0, 4)
        grid = UniformGrid(horizon=steps * 2.0 ** -rng.randrange(2, 6), steps=steps)
        alpha = rng.uniform(0.05, 0.95)
        values = [rng.uniform(-1.0, 1.0) for _ in range(n + 1)]
        a = discrete_caputo(SchemeKind.l1(), grid, values, n, alpha).value
        b = l1_convolution(values, grid.tau, alpha)
        scale = max(abs(a), abs(b), 1e-30)
        worst = max(worst, abs(a - b) / scale)
    weights = l1_weights(12, 0.4)
    monotone = all(x > y > 0.0 for x, y in zip(weights, weights[1:]))
    ok = worst < 1e-11 and monotone
    return CheckResult(
        "L1 convolution weights match the piecewise form",
        ok,
        f"worst rel dev {worst:.2e}, weights decreasing: {monotone}",
    )


def _check_scheme_coincidences(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        n = rng.randrange(2, 24)
        grid = UniformGrid(horizon=1.0, steps=max(n, rng.randrange(n, n + 4)))
        alpha = rng.uniform(0.05, 0.95)
        values = [rng.uniform(-1.0, 1.0) for _ in range(n + 1)]
        lk1 = discrete_caputo(SchemeKind.lk(1), grid, values, n, alpha).value
        l1 = discrete_caputo(SchemeKind.l1(), grid, values, n, alpha).value
        lk2 = discrete_caputo(SchemeKind.lk(2), grid, values, n, alpha).value
        l12 = discrete_caputo(SchemeKind.l12(), grid, values, n, alpha).value
        scale = max(abs(l1), abs(l12), 1e-30)
        worst = max(worst, abs(lk1 - l1) / scale, abs(lk2 - l12) / scale)
    return CheckResult(
        "degree-family collapses (L1 = Lk1, L1-2 = Lk2)",
        worst < 1e-12,
        f"worst rel dev {worst:.2e}",
    )


def _check_scheme_vs_oracle(rng: random.Random) -> CheckResult:
    worst = 0.0
    schemes = [SchemeKind.l1(), SchemeKind.l2(), SchemeKind.l12(), SchemeKind.lk(3)]
    for scheme in schemes:
        n = rng.randrange(max(2, scheme.degree), 14)
        grid = UniformGrid(horizon=1.0, steps=rng.randrange(n, n + 8))
        alpha = rng.uniform(0.1, 0.9)
        m = rng.randrange(0, 3)
        beta = rng.uniform(0.1, 1.0)
        u = HolderTestFunction(m=m, beta=beta, xi=rng.uniform(0.2, 0.9))
        values = [u(grid.time(i)) for i in range(n + 1)]
        fast = discrete_caputo(scheme, grid, values, n, alpha).value
        interp = build_interpolant(scheme, grid, values, n)
        slow = quad_caputo_piecewise(interp, grid.time(n), alpha, tol=1e-12)
        scale = max(abs(fast), abs(slow), 1e-12)
        worst = max(worst, abs(fast - slow) / scale)
    return CheckResult(
        "closed-form moments match adaptive quadrature",
        worst < 1e-9,
        f"worst rel dev {worst:.2e}",
    )


def _check_oracle_two_forms(rng: random.Random) -> CheckResult:
    worst = 0.0
    for _ in range(2):
        n = rng.randrange(3, 7)
        grid = UniformGrid(horizon=1.0, steps=n)
        alpha = rng.uniform(0.2, 0.8)
        u = HolderTestFunction(m=2, beta=rng.uniform(0.3, 1.0), xi=rng.uniform(0.3, 0.7))
        values = [u(grid.time(i)) for i in range(n + 1)]
        interp = build_interpolant(SchemeKind.l12(), grid, values, n)
        a = quad_caputo_piecewise(interp, grid.time(n), alpha, tol=1e-12)
        b = quad_caputo_integrated(interp, grid.time(n), alpha, tol=1e-11)
        scale = max(abs(a), abs(b), 1e-10)
        worst = max(worst, abs(a - b) / scale)
    return CheckResult(
        "derivative-form and integrated-form quadratures agree",
        worst < 1e-7,
        f"worst rel dev {worst:.2e}",
    )


def _check_power_rule(rng: random.Random) -> CheckResult:
    worst = 0.0
    for p in (1, 2, 3):
        alpha = rng.uniform(0.15, 0.85)
        t = rng.uniform(0.4, 1.0)
        want = exact_caputo_monomial(p, t, alpha)
        got = quad_caputo_integrated(lambda s: s**p, t, alpha, tol=1e-11)
        worst = max(worst, abs(got - want) / abs(want))
    return CheckResult(
        "monomial power rule against quadrature", worst < 1e-8, f"worst rel dev {worst:.2e}"
    )


def _check_first_node_band(_: random.Random) -> CheckResult:
    worst_note = []
    ok = True
    for alpha in (0.3, 0.5, 0.7):
        row = order_first_node(
            SchemeKind.l2(), HolderTestFunction(m=2, beta=0.5, xi=0.5), alpha, 2.0**-7
        )
        lo, hi = 2.0 - alpha - 0.1, 2.0 - alpha + 0.15
        if not lo <= row.measured_R <= hi:
            ok = False
        worst_note.append(f"alpha={alpha}: R={row.measured_R:.3f}")
    return CheckResult(
        "first-node order sits in the 2 - alpha band", ok, "; ".join(worst_note)
    )


def _check_interior_orders(_: random.Random) -> CheckResult:
    cases = [
        (SchemeKind.l1(), 0.5, 1, 0.3, 0.5),
        (SchemeKind.l2(), 0.5, 2, 0.5, 0.5),
        (SchemeKind.l12(), 0.3, 1, 0.9, 0.5),
        (SchemeKind.lk(3), 0.5, 2, 0.3, 0.25),
    ]
    worst = 0.0
    notes = []
    for scheme, alpha, m, beta, xi in cases:
        row = order_interior(
            scheme, HolderTestFunction(m=m, beta=beta, xi=xi), alpha, 2.0**-7
        )
        dev = abs(row.measured_R - row.theoretical_order)
        worst = max(worst, dev)
        notes.append(f"{scheme.label}: {row.measured_R:.3f} vs {row.theoretical_order:.2f}")
    return CheckResult(
        "interior orders track m + beta - alpha",
        worst < 0.15,
        "; ".join(notes),
    )


_CHECKS = [
    _check_gamma,
    _check_moment_additivity,
    _check_moment_recentring,
    _check_partition_of_unity,
    _check_divided_coeff_sum,
    _check_backward_difference,
    _check_interpolation_exactness,
    _check_linear_exactness,
    _check_l1_convolution,
    _check_scheme_coincidences,
    _check_scheme_vs_oracle,
    _check_oracle_two_forms,
    _check_power_rule,
    _check_first_node_band,
    _check_interior_orders,
]


def run_verification(seed: int = _SEED) -> list[CheckResult]:
    """Run every verification check with a fixed seed; deterministic."""
    results = []
    for check in _CHECKS:
        results.append(check(random.Random(seed)))
    return results
