"""Convergence-order measurement for the discrete Caputo schemes.

Two experiment styles are provided.  ``order_interior`` estimates the
convergence order at a fixed interior time by Richardson extrapolation
over three nested grids.  ``order_first_node`` measures the error of the
very first time step against a 128-fold refinement and turns the decay
of that error under grid halving into an order estimate.

``reproduce_table`` packages the four built-in studies over the Holder
test family into ``Report`` objects, and ``emit`` renders a report as
CSV or markdown with deterministic bytes.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import TextIO, Union

from .holder import HolderTestFunction, RegularityClass, UniformGrid, grid_node_index
from .interp import SchemeKind, SchemeTag
from .schemes import discrete_caputo

__all__ = [
    "DASH",
    "ConvergenceRow",
    "FirstNodeRow",
    "InteriorCell",
    "FirstNodeCell",
    "Report",
    "DegenerateDifferenceError",
    "scheme_value",
    "order_interior",
    "order_first_node",
    "reproduce_table",
    "emit",
]

# Cell marker for regularity at or below the differentiation order, where
# no convergence order is claimed.
DASH = "-"

# Successive refinements closer than this are indistinguishable from
# round-off and cannot support a log-ratio.
_MIN_DIFF = 1e-15

# Refinement factor for the first-node reference grid.
_FIRST_NODE_REFINEMENT = 128

_HORIZON = 1.0


class DegenerateDifferenceError(ArithmeticError):
    """Raised when a refinement difference is too small to carry an order."""


@dataclass(frozen=True)
class ConvergenceRow:
    """One interior-point order measurement."""

    scheme: SchemeKind
    alpha: float
    m: int
    beta: float
    xi: float
    tau_base: float
    measured_R: float
    theoretical_order: float


@dataclass(frozen=True)
class FirstNodeRow:
    """One first-node error and order measurement.

    The test function always has m = 2 so the first-node order is governed
    by alpha alone.
    """

    scheme: SchemeKind
    alpha: float
    beta: float
    m: int
    xi: float
    tau: float
    error: float
    measured_R: float


def scheme_value(
    scheme: SchemeKind,
    u,
    alpha: float,
    tau: float,
    t: float,
) -> float:
    """Discrete Caputo value of u at physical time t on the step-tau grid
    over [0, 1].

    Both 1/tau and t/tau must be integral; t is mapped to its node index
    through the grid so off-grid times are refused.
    """
    steps = round(_HORIZON / tau)
    if steps < 1 or abs(steps * tau - _HORIZON) > 1e-9 * _HORIZON:
        raise ValueError(f"step {tau!r} does not divide the unit horizon")
    grid = UniformGrid(horizon=_HORIZON, steps=steps)
    n = grid_node_index(grid, t)
    if n == 0:
        raise ValueError("the discrete operator starts at the first node")
    return discrete_caputo(scheme, grid, u, n, alpha).value


def order_interior(
    scheme: SchemeKind,
    f: HolderTestFunction,
    alpha: float,
    tau: float,
    xi: float | None = None,
) -> ConvergenceRow:
    """Estimate the convergence order at the kink of the test function.

    The operator is evaluated at the fixed time xi on grids with steps
    tau, tau/2 and tau/4, and the order is read off as

        R = log2 |d(tau) - d(tau/2)| / |d(tau/2) - d(tau/4)|.

    xi must be a node of the coarsest grid and must sit at least
    ``scheme.degree`` steps into it, so all three grids evaluate past the
    scheme's startup region.  Raises DegenerateDifferenceError when either
    difference falls below 1e-15; a scheme that is exact on the probe has
    no measurable order.
    """
    if xi is None:
        xi = f.xi
    if abs(xi - f.xi) > 1e-12:
        raise ValueError(f"evaluation time {xi!r} is not the kink {f.xi!r}")
    ratio = xi / tau
    n_coarse = round(ratio)
    if abs(ratio - n_coarse) > 1e-9:
        raise ValueError(f"kink {xi!r} is not a node of the step-{tau!r} grid")
    if n_coarse < scheme.degree:
        raise ValueError(
            f"need xi >= {scheme.degree} * tau for {scheme.label}, "
            f"got xi/tau = {n_coarse}"
        )

    d1 = scheme_value(scheme, f, alpha, tau, xi)
    d2 = scheme_value(scheme, f, alpha, tau / 2.0, xi)
    d4 = scheme_value(scheme, f, alpha, tau / 4.0, xi)
    num = abs(d1 - d2)
    den = abs(d2 - d4)
    if num < _MIN_DIFF or den < _MIN_DIFF:
        raise DegenerateDifferenceError(
            f"refinement differences {num:.3e} / {den:.3e} are below the "
            f"round-off floor at alpha={alpha}, m={f.m}, beta={f.beta}"
        )
    return ConvergenceRow(
        scheme=scheme,
        alpha=alpha,
        m=f.m,
        beta=f.beta,
        xi=xi,
        tau_base=tau,
        measured_R=math.log2(num / den),
        theoretical_order=f.m + f.beta - alpha,
    )


def _first_node_error(scheme: SchemeKind, f, alpha: float, tau: float) -> float:
    """Error of the step-tau grid at its first node t = tau, measured
    against the same operator on the 128-fold refinement."""
    coarse = scheme_value(scheme, f, alpha, tau, tau)
    fine = scheme_value(scheme, f, alpha, tau / _FIRST_NODE_REFINEMENT, tau)
    return abs(coarse - fine)


def order_first_node(
    scheme: SchemeKind,
    f: HolderTestFunction,
    alpha: float,
    tau: float,
) -> FirstNodeRow:
    """Measure the first-node error at t = tau and its decay order.

    The error of each grid is taken at that grid's own first node against
    a 128-fold refinement, and the order is the log2 ratio of the errors
    of the step-tau and step-tau/2 grids:

        R = log2 E(tau) / E(tau/2),  E(h) = |d_h(h) - d_{h/128}(h)|.

    Only the quadratic schemes are admitted; their first interval is the
    linear first step, whose error order 2 - alpha is the quantity under
    test.  The probe must have m = 2 so the kink does not interfere with
    the first node.
    """
    if scheme.tag not in (SchemeTag.L2, SchemeTag.L12):
        raise ValueError(f"first-node study is defined for L2 and L1-2, got {scheme.label}")
    if f.m != 2:
        raise ValueError(f"first-node probe needs m = 2, got m={f.m}")
    err = _first_node_error(scheme, f, alpha, tau)
    err_half = _first_node_error(scheme, f, alpha, tau / 2.0)
    if err < _MIN_DIFF or err_half < _MIN_DIFF:
        raise DegenerateDifferenceError(
            f"first-node errors {err:.3e} / {err_half:.3e} are below the "
            f"round-off floor at alpha={alpha}, beta={f.beta}"
        )
    return FirstNodeRow(
        scheme=scheme,
        alpha=alpha,
        beta=f.beta,
        m=f.m,
        xi=f.xi,
        tau=tau,
        error=err,
        measured_R=math.log2(err / err_half),
    )


@dataclass(frozen=True)
class InteriorCell:
    """One (alpha, total smoothness) cell of an interior-order table.

    ``row`` is None for dash cells, where the regularity does not exceed
    the differentiation order and no rate is claimed.
    """

    alpha: float
    total: float
    row: ConvergenceRow | None


@dataclass(frozen=True)
class FirstNodeCell:
    """One (alpha, tau, beta) cell of a first-node table."""

    alpha: float
    tau_exp: int
    beta: float
    row: FirstNodeRow


@dataclass(frozen=True)
class Report:
    """A rendered-ready collection of order measurements."""

    title: str
    kind: str
    scheme: SchemeKind
    xi: float
    tau_exp: int
    alphas: tuple[float, ...]
    totals: tuple[float, ...] = ()
    betas: tuple[float, ...] = ()
    tau_exps: tuple[int, ...] = ()
    interior_cells: tuple[InteriorCell, ...] = ()
    first_node_cells: tuple[FirstNodeCell, ...] = ()


_TOTALS_HALF = (0.3, 0.5, 0.9, 1.3, 1.5, 1.9, 2.2, 2.5, 2.7, 3.0)
_TOTALS_QUARTER = (0.5, 0.8, 1.3, 1.6, 2.3, 2.6, 3.2, 3.4, 3.6)

_TABLE_PARAMS = {
    1: dict(
        scheme=SchemeKind.l2(),
        xi=0.5,
        alphas=(0.1, 0.3, 0.5, 0.7),
        totals=_TOTALS_HALF,
        title="interior convergence orders, L2 scheme (xi = 0.5, tau = 2^-7)",
    ),
    2: dict(
        scheme=SchemeKind.l12(),
        xi=0.5,
        alphas=(0.1, 0.3, 0.5, 0.7),
        totals=_TOTALS_HALF,
        title="interior convergence orders, L1-2 scheme (xi = 0.5, tau = 2^-7)",
    ),
    4: dict(
        scheme=SchemeKind.lk(3),
        xi=0.25,
        alphas=(0.3, 0.5, 0.7),
        totals=_TOTALS_QUARTER,
        title="interior convergence orders, L1-2-3 scheme (xi = 0.25, tau = 2^-7)",
    ),
}

_TABLE3_ALPHAS = (0.3, 0.5, 0.7)
_TABLE3_BETAS = (0.2, 0.5, 0.8)
_TABLE3_TAU_EXPS = (7, 8)


def _interior_report(table_id: int, tau_exp: int) -> Report:
    params = _TABLE_PARAMS[table_id]
    scheme: SchemeKind = params["scheme"]
    xi: float = params["xi"]
    tau = 2.0 ** (-tau_exp)
    cells = []
    for alpha in params["alphas"]:
        for total in params["totals"]:
            rc = RegularityClass.from_total(total)
            if total <= alpha + 1e-12:
                cells.append(InteriorCell(alpha=alpha, total=total, row=None))
                continue
            f = HolderTestFunction(m=rc.m, beta=rc.beta, xi=xi)
            row = order_interior(scheme, f, alpha, tau)
            cells.append(InteriorCell(alpha=alpha, total=total, row=row))
    return Report(
        title=params["title"],
        kind="interior",
        scheme=scheme,
        xi=xi,
        tau_exp=tau_exp,
        alphas=tuple(params["alphas"]),
        totals=tuple(params["totals"]),
        interior_cells=tuple(cells),
    )


def _first_node_report(tau_exps: tuple[int, ...]) -> Report:
    scheme = SchemeKind.l2()
    xi = 0.5
    cells = []
    for alpha in _TABLE3_ALPHAS:
        for tau_exp in tau_exps:
            for beta in _TABLE3_BETAS:
                f = HolderTestFunction(m=2, beta=beta, xi=xi)
                row = order_first_node(scheme, f, alpha, 2.0 ** (-tau_exp))
                cells.append(
                    FirstNodeCell(alpha=alpha, tau_exp=tau_exp, beta=beta, row=row)
                )
    return Report(
        title="first-node errors and orders at t = tau (m = 2, xi = 0.5)",
        kind="first-node",
        scheme=scheme,
        xi=xi,
        tau_exp=tau_exps[0],
        alphas=_TABLE3_ALPHAS,
        betas=_TABLE3_BETAS,
        tau_exps=tau_exps,
        first_node_cells=tuple(cells),
    )


def reproduce_table(table_id: int, tau_exp: int = 7) -> Report:
    """Run one of the four built-in convergence studies.

    1: interior orders of L2 at xi = 0.5 over ten regularity classes.
    2: the same study for L1-2.
    3: first-node errors and orders of the quadratic schemes at m = 2,
       steps 2^-7 and 2^-8, beta in {0.2, 0.5, 0.8}.
    4: interior orders of L1-2-3 at xi = 0.25 over nine classes.

    ``tau_exp`` sets the coarsest step 2^-tau_exp for the interior studies
    and is ignored for study 3, which fixes its own step pair.
    """
    if table_id in _TABLE_PARAMS:
        return _interior_report(table_id, tau_exp)
    if table_id == 3:
        return _first_node_report(_TABLE3_TAU_EXPS)
    raise ValueError(f"unknown table id {table_id!r}; expected 1, 2, 3 or 4")


def _fmt(x: float) -> str:
    """Six significant digits, fixed across platforms."""
    return f"{x:.6g}"


_CSV_HEADER = "scheme,alpha,m,beta,xi,tau,measured_R,theoretical_order,error"


def _csv_lines(report: Report) -> list[str]:
    lines = [_CSV_HEADER]
    if report.kind == "interior":
        tau = 2.0 ** (-report.tau_exp)
        for cell in report.interior_cells:
            rc = RegularityClass.from_total(cell.total)
            if cell.row is None:
                r_txt = DASH
                order_txt = _fmt(cell.total - cell.alpha)
            else:
                r_txt = _fmt(cell.row.measured_R)
                order_txt = _fmt(cell.row.theoretical_order)
            lines.append(
                ",".join(
                    [
                        report.scheme.label,
                        _fmt(cell.alpha),
                        str(rc.m),
                        _fmt(rc.beta),
                        _fmt(report.xi),
                        _fmt(tau),
                        r_txt,
                        order_txt,
                        "",
                    ]
                )
            )
    else:
        for cell in report.first_node_cells:
            row = cell.row
            lines.append(
                ",".join(
                    [
                        row.scheme.label,
                        _fmt(row.alpha),
                        str(row.m),
                        _fmt(row.beta),
                        _fmt(row.xi),
                        _fmt(row.tau),
                        _fmt(row.measured_R),
                        _fmt(2.0 - row.alpha),
                        _fmt(row.error),
                    ]
                )
            )
    return lines


def _markdown_lines(report: Report) -> list[str]:
    lines = [f"## {report.title}", ""]
    if report.kind == "interior":
        header = ["alpha \\ m+beta"] + [_fmt(t) for t in report.totals]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join(" --- " for _ in header) + "|")
        by_key = {(c.alpha, c.total): c for c in report.interior_cells}
        for alpha in report.alphas:
            row = [_fmt(alpha)]
            for total in report.totals:
                cell = by_key[(alpha, total)]
                row.append(DASH if cell.row is None else f"{cell.row.measured_R:.2f}")
            lines.append("| " + " | ".join(row) + " |")
    else:
        header = ["alpha", "tau"]
        for beta in report.betas:
            header.append(f"error (beta={_fmt(beta)})")
        header.append("R")
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join(" --- " for _ in header) + "|")
        by_key = {(c.alpha, c.tau_exp, c.beta): c for c in report.first_node_cells}
        for alpha in report.alphas:
            for tau_exp in report.tau_exps:
                row = [_fmt(alpha), f"2^-{tau_exp}"]
                rs = []
                for beta in report.betas:
                    cell = by_key[(alpha, tau_exp, beta)]
                    row.append(_fmt(cell.row.error))
                    rs.append(cell.row.measured_R)
                # the order estimate is essentially beta-independent; the
                # R column reports the beta = 0.2 value
                row.append(f"{rs[0]:.2f}")
                lines.append("| " + " | ".join(row) + " |")
    return lines


def render(report: Report, format: str = "markdown") -> str:
    """Render a report to a string with deterministic bytes."""
    if format == "csv":
        lines = _csv_lines(report)
    elif format == "markdown":
        lines = _markdown_lines(report)
    else:
        raise ValueError(f"unknown format {format!r}; expected 'csv' or 'markdown'")
    return "\n".join(lines) + "\n"


def emit(
    report: Report,
    format: str = "markdown",
    out: Union[str, TextIO, None] = None,
) -> str:
    """Write a rendered report to a path, a stream, or stdout.

    Returns the rendered text so callers can reuse it.
    """
    text = render(report, format)
    if out is None:
        sys.stdout.write(text)
    elif isinstance(out, str):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return text
