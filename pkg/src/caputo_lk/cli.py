"""Command-line interface.

Subcommands: ``order-table`` renders one of the built-in convergence
studies, ``order`` measures a single interior convergence order,
``first-node`` measures the error and order at the first grid node, and
``verify`` runs the self-check suite.  Exit codes: 0 on success, 1 when a
verification or order measurement fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .harness import (
    DegenerateDifferenceError,
    emit,
    order_first_node,
    order_interior,
    reproduce_table,
)
from .holder import HolderTestFunction, NotAGridNodeError
from .interp import SchemeKind
from .verify import run_verification

__all__ = ["main"]


def _scheme_from_args(name: str, k: int | None) -> SchemeKind:
    if name == "lk":
        if k is None:
            raise ValueError("--scheme lk needs --k")
        return SchemeKind.lk(k)
    if k is not None:
        raise ValueError(f"--k only applies to --scheme lk, not {name}")
    return {"l1": SchemeKind.l1, "l2": SchemeKind.l2, "l12": SchemeKind.l12}[name]()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caputo-lk",
        description="Discrete Caputo derivatives and their convergence orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser(
        "order-table", help="render one of the built-in convergence studies"
    )
    p_table.add_argument("--table", type=int, required=True, choices=(1, 2, 3, 4))
    p_table.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    p_table.add_argument("--out", default=None, help="output path (default: stdout)")

    p_order = sub.add_parser(
        "order", help="measure one interior convergence order at the kink"
    )
    p_order.add_argument(
        "--scheme", required=True, choices=("l1", "l2", "l12", "lk")
    )
    p_order.add_argument("--k", type=int, default=None, help="degree for --scheme lk")
    p_order.add_argument("--alpha", type=float, required=True)
    p_order.add_argument("--m", type=int, required=True)
    p_order.add_argument("--beta", type=float, required=True)
    p_order.add_argument("--xi", type=float, default=0.5)
    p_order.add_argument(
        "--tau-exp", type=int, default=7, help="coarsest step is 2^-E (default 7)"
    )

    p_first = sub.add_parser(
        "first-node", help="measure the error and order at the first grid node"
    )
    p_first.add_argument("--scheme", required=True, choices=("l2", "l12"))
    p_first.add_argument("--alpha", type=float, required=True)
    p_first.add_argument("--beta", type=float, required=True)
    p_first.add_argument(
        "--tau-exp", type=int, default=7, help="coarsest step is 2^-E (default 7)"
    )

    sub.add_parser("verify", help="run the self-check suite")
    return parser


def _cmd_order_table(args: argparse.Namespace) -> int:
    report = reproduce_table(args.table)
    emit(report, format=args.format, out=args.out)
    return 0


def _cmd_order(args: argparse.Namespace) -> int:
    scheme = _scheme_from_args(args.scheme, args.k)
    f = HolderTestFunction(m=args.m, beta=args.beta, xi=args.xi)
    row = order_interior(scheme, f, args.alpha, 2.0 ** -args.tau_exp)
    print(
        f"scheme={row.scheme.label} alpha={row.alpha:g} m={row.m} beta={row.beta:g} "
        f"xi={row.xi:g} tau=2^-{args.tau_exp} "
        f"measured_R={row.measured_R:.4f} theoretical={row.theoretical_order:.4f}"
    )
    return 0


def _cmd_first_node(args: argparse.Namespace) -> int:
    scheme = _scheme_from_args(args.scheme, None)
    f = HolderTestFunction(m=2, beta=args.beta, xi=0.5)
    row = order_first_node(scheme, f, args.alpha, 2.0 ** -args.tau_exp)
    print(
        f"scheme={row.scheme.label} alpha={row.alpha:g} beta={row.beta:g} "
        f"tau=2^-{args.tau_exp} error={row.error:.6e} "
        f"measured_R={row.measured_R:.4f} expected={2.0 - row.alpha:.4f}"
    )
    return 0


def _cmd_verify(_: argparse.Namespace) -> int:
    results = run_verification()
    failed = 0
    for r in results:
        mark = "ok  " if r.ok else "FAIL"
        print(f"{mark} {r.name}: {r.detail}")
        if not r.ok:
            failed += 1
    total = len(results)
    print(f"{total - failed}/{total} checks passed")
    return 0 if failed == 0 else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "order-table": _cmd_order_table,
        "order": _cmd_order,
        "first-node": _cmd_first_node,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, NotAGridNodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateDifferenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
