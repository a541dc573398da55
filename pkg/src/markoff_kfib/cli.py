"""Command-line interface.

Exit status: 0 on success, 1 when a verification reports mismatches (or an
identity residual is non-zero), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Any, Callable, Sequence

from . import branches, markoff, oracle, sequences
from .export import export_dot, export_json

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _triple(text: str) -> markoff.Triple:
    try:
        parts = [int(p) for p in text.replace("(", "").replace(")", "").split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b,c with integer components, got {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three components, got {text!r}")
    if min(parts) < 0:
        raise argparse.ArgumentTypeError(f"components must be non-negative, got {text!r}")
    return markoff.Triple(*parts)


def _bigint(text: str) -> int:
    """Integer argument that also accepts ``10**6`` and ``1e6`` spellings."""
    t = text.strip().replace("_", "")
    try:
        if "**" in t:
            base, exp = t.split("**")
            return int(base) ** int(exp)
        if "e" in t.lower():
            mant, exp = t.lower().split("e")
            return int(mant) * 10 ** int(exp)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _lines(items: Sequence[Any]) -> str:
    return "".join(f"{x}\n" for x in items)


def _report_text(report: oracle.SearchReport) -> str:
    head = f"check={report.check} k={report.k}"
    if report.m is not None:
        head += f" m={report.m}"
    if report.bound:
        head += f" bound={report.bound}"
    out = [f"{head} triples={len(report.triples)} mismatches={len(report.mismatches)}"]
    out += [f"path: {' -> '.join(map(str, p))}" for p in report.paths]
    out += [f"mismatch {mm.triple}: expected {mm.expected}; got {mm.actual}" for mm in report.mismatches]
    return _lines(out)


def _finish_report(args: argparse.Namespace, report: oracle.SearchReport) -> int:
    _emit(args, export_json(report) if args.format == "json" else _report_text(report))
    return EXIT_OK if report.ok else EXIT_MISMATCH


# --- subcommands --------------------------------------------------------------


def cmd_fib(args: argparse.Namespace) -> int:
    value = sequences.fib(args.k, args.n)
    _emit(args, export_json({"k": args.k, "n": args.n, "value": value}) if args.format == "json" else f"{value}\n")
    return EXIT_OK


def cmd_lucas(args: argparse.Namespace) -> int:
    value = sequences.lucas(args.k, args.n)
    _emit(args, export_json({"k": args.k, "n": args.n, "value": value}) if args.format == "json" else f"{value}\n")
    return EXIT_OK


def cmd_alpha(args: argparse.Namespace) -> int:
    value = branches.alpha(args.k, args.r)
    _emit(args, export_json({"k": args.k, "r": args.r, "alpha": value}) if args.format == "json" else f"{value}\n")
    return EXIT_OK


def cmd_markoff(args: argparse.Namespace) -> int:
    t = args.triple
    value = markoff.markoff_value(t)
    if args.format == "json":
        info: dict[str, Any] = {"triple": t, "m": value}
        if markoff.is_ordered(t):
            info["minimal"] = markoff.is_minimal(t)
            info["phi"] = markoff.phi_gap(t)
        _emit(args, export_json(info))
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_vieta(args: argparse.Namespace) -> int:
    move = {"1": markoff.vieta1, "2": markoff.vieta2, "3": markoff.vieta3}[args.move]
    result = move(args.triple)
    _emit(args, export_json({"triple": result}) if args.format == "json" else f"{result}\n")
    return EXIT_OK


def cmd_branch(args: argparse.Namespace) -> int:
    if args.root is not None:
        if args.k is not None or args.r is not None or args.ell0 is not None:
            raise UsageError("branch: use either --root or --k/--r/--ell0, not both")
        triples = markoff.branch(args.root, args.count)
    else:
        if args.k is None or args.r is None or args.ell0 is None:
            raise UsageError("branch: --k, --r and --ell0 are required without --root")
        triples = branches.principal_branch(args.k, args.r, args.ell0, args.count)
    _emit(args, export_json({"branch": triples}) if args.format == "json" else _lines(triples))
    return EXIT_OK


def cmd_roots(args: argparse.Namespace) -> int:
    roots = branches.branch_roots(args.k, args.r)
    if args.format == "json":
        _emit(args, export_json({"k": args.k, "r": args.r, "roots": roots}))
    else:
        _emit(args, _lines(f"ell0={br.ell0} root={br.minimal_root} start={br.branch_start}" for br in roots))
    return EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    spec_args = (args.k, args.r, args.ell0)
    if any(v is not None for v in spec_args) and not all(v is not None for v in spec_args):
        raise UsageError("tree: --k, --r and --ell0 must be given together")
    spec = branches.BranchSpec(*spec_args) if args.k is not None else None
    nodes = markoff.tree_enumerate(args.root, args.max_component, args.depth)
    if args.format == "dot":
        text = export_dot(nodes, spec)
    elif args.format == "json":
        text = export_json(nodes)
    else:
        text = _lines(f"{'  ' * n.depth}{n.triple} [{n.move}]" for n in nodes)
    _emit(args, text)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    cl = branches.classify(args.k, args.r, args.N)
    if args.format == "json":
        _emit(args, export_json(cl))
    else:
        _emit(
            args,
            f"triple={cl.triple} m={cl.m} integer={cl.integer_entries} ordered={cl.ordered} "
            f"minimal={cl.minimal} m_positive={cl.m_positive} formula_agrees={cl.formula_agrees}\n",
        )
    return EXIT_OK if cl.formula_agrees else EXIT_MISMATCH


def cmd_enumerate(args: argparse.Namespace) -> int:
    triples = oracle.enumerate_markoff(args.m, args.bound, args.workers)
    if args.k is not None:
        classified = oracle.two_fib_filter(args.k, triples)
        payload: Any = {"m": args.m, "bound": args.bound, "k": args.k, "triples": classified}
        text_items = [f"{c.triple} fib_indices={c.fib_indices}" for c in classified]
    else:
        payload = {"m": args.m, "bound": args.bound, "triples": triples}
        text_items = triples
    _emit(args, export_json(payload) if args.format == "json" else _lines(text_items))
    return EXIT_OK


def cmd_verify_t11(args: argparse.Namespace) -> int:
    return _finish_report(args, oracle.verify_theorem11(args.k, args.m_max, args.bound, args.workers))


def cmd_verify_t12(args: argparse.Namespace) -> int:
    ell_max = args.ell_max if args.ell_max is not None else 2 * args.r + 12
    return _finish_report(args, oracle.verify_distribution(args.k, args.r, ell_max, args.depth))


def cmd_verify_t13(args: argparse.Namespace) -> int:
    report = oracle.extend_two_fib_paths(args.k, args.m, args.bound, args.min_len, workers=args.workers)
    return _finish_report(args, report)


def cmd_identities(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    results = {}
    for name, (arity, _) in sequences.IDENTITIES.items():
        failures = 0
        for _ in range(args.samples):
            params = _random_params(rng, name, arity, args.max_index)
            if sequences.identity_residual(name, args.k, params) != 0:
                failures += 1
        results[name] = failures
    if args.format == "json":
        _emit(args, export_json({"k": args.k, "samples": args.samples, "failures": results}))
    else:
        _emit(args, _lines(f"{name}: {args.samples - f}/{args.samples} zero residuals" for name, f in results.items()))
    return EXIT_OK if not any(results.values()) else EXIT_MISMATCH


def _random_params(rng: random.Random, name: str, arity: int, hi: int) -> tuple[int, ...]:
    """A parameter tuple inside the validity range of ``name``."""
    if name == "vajda":
        return rng.randint(0, hi), rng.randint(0, hi), rng.randint(0, hi)
    if name == "sum":
        return rng.randint(1, hi), rng.randint(1, hi)
    if name in ("docagne", "catalan", "fib_lucas"):
        x, y = sorted((rng.randint(1, hi), rng.randint(1, hi)))
        # docagne wants a <= b; catalan (n, r) and fib_lucas (a, b) want the first >= the second
        return (x, y) if name == "docagne" else (y, x)
    if name == "simson":
        return (rng.randint(1, hi),)
    raise ValueError(f"no sampler for {name}")  # pragma: no cover


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="markoff-kfib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name: str, func: Callable[[argparse.Namespace], int], help_text: str, formats=("text", "json")):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")
        return p

    p = add("fib", cmd_fib, "k-Fibonacci number F_k(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("lucas", cmd_lucas, "k-Lucas number L_k(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("alpha", cmd_alpha, "the exact rational alpha(k, r)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("markoff", cmd_markoff, "Markoff value a^2 + b^2 + c^2 - 3abc")
    p.add_argument("--triple", type=_triple, required=True, metavar="A,B,C")

    p = add("vieta", cmd_vieta, "apply one Vieta move")
    p.add_argument("--triple", type=_triple, required=True, metavar="A,B,C")
    p.add_argument("--move", choices=("1", "2", "3"), required=True)

    p = add("branch", cmd_branch, "a vieta2 branch, from a root or a principal family index")
    p.add_argument("--root", type=_triple, metavar="A,B,C")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--ell0", type=int, help="family index of the first triple")
    p.add_argument("--count", type=int, default=3)

    p = add("roots", cmd_roots, "minimal roots of the trees carrying the principal branches")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("tree", cmd_tree, "breadth-first fragment of an m-tree", formats=("text", "json", "dot"))
    p.add_argument("--root", type=_triple, required=True, metavar="A,B,C")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--max-component", type=_bigint, default=None)
    p.add_argument("--k", type=int, help="with --r and --ell0: draw that principal branch bold")
    p.add_argument("--r", type=int)
    p.add_argument("--ell0", type=int)

    p = add("classify", cmd_classify, "classify (alpha, F_k(N-r), F_k(N+r))")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--N", type=int, required=True)

    def workers(p: argparse.ArgumentParser) -> None:
        p.add_argument("--workers", type=int, default=None, help="worker processes (default: available CPUs)")

    p = add("enumerate", cmd_enumerate, "all ordered m-triples up to a bound")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=_bigint, required=True)
    p.add_argument("--k", type=int, help="keep triples with two k-Fibonacci components")
    workers(p)

    p = add("verify-t11", cmd_verify_t11, "oracle check of the non-minimal two-k-Fibonacci classification")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--bound", type=_bigint, required=True)
    workers(p)

    p = add("verify-t12", cmd_verify_t12, "check how the principal branches sit in their trees")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--ell-max", type=int, default=None, help="default 2r + 12")
    p.add_argument("--depth", type=int, default=1000, help="descent step budget")

    p = add("verify-t13", cmd_verify_t13, "bounded check of two-k-Fibonacci paths")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=_bigint, required=True)
    p.add_argument("--min-len", type=int, default=3)
    workers(p)

    p = add("identities", cmd_identities, "randomized residual checks of the identity corpus")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-index", type=int, default=60)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError, markoff.DescentBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        # a constructed branch failed its own vieta2 check
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
