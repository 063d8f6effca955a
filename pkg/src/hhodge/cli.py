"""Command-line frontend: parse group specs and contexts, run computations
and the verification suite, emit JSON/LaTeX/plain reports.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import render
from .groups import GroupError, build_group, conjugacy_data, cyclic_subgroup
from .hodge import (
    ModuliContext,
    bch_hurwitz_hodge,
    ch_hurwitz_hodge_grr,
    rank_rh,
    run_verification_grid,
)
from .repring import cyclic_irrep_char, induce, regular_character
from .series import (
    bernoulli_polynomial,
    delta_bernoulli,
    f_r_at_one_series,
    f_r_eval_at_root,
    frk_series,
    iif_series,
)

USAGE_ERROR = 2


class CliError(Exception):
    pass


def _load_group(spec: str):
    if spec.startswith("file:"):
        path = spec[len("file:") :]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise CliError(f"cannot read group file: {exc}") from None
        return build_group(doc)
    return build_group(spec)


def _parse_tails(G, tails: str | None) -> list[int]:
    if not tails:
        return []
    return [G.index_of(name.strip()) for name in tails.split(",")]


def _truncation(args) -> int | None:
    if args.trunc is not None:
        return args.trunc
    env = os.environ.get("HHODGE_TRUNC")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"bad HHODGE_TRUNC value {env!r}") from None
    return None


def _context(args) -> ModuliContext:
    G = _load_group(args.group)
    m = _parse_tails(G, args.tails)
    n = len(m)
    if 2 * args.genus - 2 + n <= 0:
        raise CliError(f"unstable: 2g-2+n = {2 * args.genus - 2 + n} <= 0")
    return ModuliContext(G, args.genus, n, m, _truncation(args))


def _g0(ctx: ModuliContext, spec: str):
    if spec == "full":
        return ctx.default_g0()
    if spec == "tails":
        return ctx.generated_g0()
    elements = [ctx.group.index_of(name.strip()) for name in spec.split(",")]
    from .groups import generated_subgroup

    return generated_subgroup(ctx.group, elements)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_compute_bch(args) -> int:
    ctx = _context(args)
    G0 = _g0(ctx, args.g0)
    cls = bch_hurwitz_hodge(ctx, G0)
    if args.format == "json":
        _emit(args, render.dumps(render.rep_class_to_json(ctx, cls, G0)))
    elif args.format == "latex":
        _emit(args, render.rep_class_to_latex(ctx, cls))
    else:
        lines = [f"context: {ctx!r}", f"rank: {rank_rh(ctx, G0)}"]
        for mon, chi in cls.sorted_terms():
            lines.append(f"  {render.monomial_to_string(mon, ctx.group)}: {chi!r}")
        _emit(args, "\n".join(lines))
    return 0


def _cmd_compute_ch(args) -> int:
    ctx = _context(args)
    G0 = _g0(ctx, args.g0)
    cls = ch_hurwitz_hodge_grr(ctx, G0)
    if args.format == "json":
        _emit(args, render.dumps(render.taut_class_to_json(ctx, cls, G0)))
    elif args.format == "latex":
        _emit(args, render.taut_class_to_latex(ctx, cls))
    else:
        lines = [f"context: {ctx!r}", f"rank: {rank_rh(ctx, G0)}"]
        for mon, c in cls.sorted_terms():
            lines.append(f"  {render.monomial_to_string(mon, ctx.group)}: {c}")
        _emit(args, "\n".join(lines))
    return 0


def _parse_cells(args) -> list[tuple[int, int]]:
    if args.cells:
        cells = []
        for part in args.cells.split(";"):
            g_text, _, n_text = part.partition(",")
            cells.append((int(g_text), int(n_text)))
        return cells
    cells = [
        (g, n)
        for g in range(args.max_genus + 1)
        for n in range(args.max_tails + 1)
        if 2 * g - 2 + n > 0
    ]
    if not cells:
        raise CliError("no stable (g, n) cells selected")
    return cells


def _cmd_verify(args) -> int:
    specs = [s.strip() for s in args.groups.split(",")]
    cells = _parse_cells(args)
    report = run_verification_grid(
        specs, cells, max_vectors=args.max_vectors, seed=args.seed,
        trunc=_truncation(args),
    )
    if args.format == "json":
        _emit(args, render.dumps(report))
    else:
        lines = []
        for res in report["results"]:
            status = "PASS" if res["all_passed"] else "FAIL"
            mono = ",".join(res["monodromies"])
            lines.append(
                f"{status} group={res['group']} (g,n)=({res['g']},{res['n']}) m=({mono})"
            )
            if not res["all_passed"]:
                for name, entry in res["identities"].items():
                    if not entry["passed"]:
                        lines.append(f"    {name}: {entry['details']}")
        lines.append(
            f"{'PASS' if report['all_passed'] else 'FAIL'}: "
            f"{report['contexts']} contexts checked"
        )
        _emit(args, "\n".join(lines))
    return 0 if report["all_passed"] else 1


def _cmd_graphs(args) -> int:
    ctx = _context(args)
    lines = [render.dumps(gc.describe(ctx.group)) for gc in ctx.cut_graphs]
    _emit(args, "\n".join(lines) if lines else "")
    return 0


def _cmd_series(args) -> int:
    what = args.what
    if what == "bernoulli":
        poly = bernoulli_polynomial(args.n)
        doc = {"bernoulli_polynomial": args.n,
               "coefficients": [[c.numerator, c.denominator] for c in poly.coeffs]}
    elif what == "delta":
        value = delta_bernoulli(args.n, Fraction(args.k, args.r))
        doc = {"delta_bernoulli": [args.n, f"{args.k}/{args.r}"],
               "value": [value.numerator, value.denominator]}
    elif what == "frk":
        s = frk_series(args.r, args.k, args.order)
        doc = {"series": f"F_{args.r},{args.k}(t)",
               "coefficients": {str(e[0]): render.scalar_to_json(c) for e, c in sorted(s.coeffs.items())}}
    elif what == "fr-at-one":
        s = f_r_at_one_series(args.r, args.order)
        doc = {"series": f"F_{args.r}(x,1) about x=1",
               "coefficients": {str(e[0]): render.scalar_to_json(c) for e, c in sorted(s.coeffs.items())}}
    elif what == "iif":
        s = iif_series(args.r, args.k, args.order)
        doc = {"series": f"IIF_{args.r},{args.k}(x+,x-)",
               "coefficients": {f"{e[0]},{e[1]}": render.scalar_to_json(c) for e, c in sorted(s.coeffs.items())}}
    elif what == "f-at-root":
        s = f_r_eval_at_root(args.r, args.l, args.order)
        doc = {"series": f"sum_k F_{args.r},k(x) e({args.l}/{args.r})^k about x=1",
               "coefficients": {str(e[0]): render.scalar_to_json(c) for e, c in sorted(s.coeffs.items())}}
    else:
        raise CliError(f"unknown series {what!r}")
    _emit(args, render.dumps(doc))
    return 0


def _cmd_char(args) -> int:
    G = _load_group(args.group)
    doc = {"group": render.group_to_json(G), "conjugacy": conjugacy_data(G)}
    if args.element is not None:
        m = G.index_of(args.element)
        H = cyclic_subgroup(G, m)
        chi = cyclic_irrep_char(G, m, args.k)
        doc["element"] = args.element
        doc["k"] = args.k
        doc["cyclic_character"] = render.character_to_json(chi)
        doc["induced_character"] = render.character_to_json(induce(G, H, chi))
    if args.regular:
        doc["regular_character"] = render.character_to_json(regular_character(G))
    _emit(args, render.dumps(doc))
    return 0


def _add_context_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="cyclic:N | dihedral:N | sym:N | product(a,b) | file:PATH")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--tails", default="", help="comma-separated monodromy element names")
    p.add_argument("--trunc", type=int, default=None, help="truncation degree (default 3g-3+n; env HHODGE_TRUNC)")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "latex", "plain"], default="json")
    p.add_argument("--output", default=None, help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhodge",
        description="Exact Rep(G)-valued Chern characters of Hurwitz-Hodge bundles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute-bch", help="representation-valued Chern character")
    _add_context_flags(p)
    p.add_argument("--g0", default="full", help="'full', 'tails', or element names")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_compute_bch)

    p = sub.add_parser("compute-ch", help="Chern character via the GRR route")
    _add_context_flags(p)
    p.add_argument("--g0", default="full")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_compute_ch)

    p = sub.add_parser("verify", help="run the identity-verification grid")
    p.add_argument("--groups", required=True, help="comma-separated group specs")
    p.add_argument("--cells", default=None, help='explicit cells "g,n;g,n;..."')
    p.add_argument("--max-genus", type=int, default=2)
    p.add_argument("--max-tails", type=int, default=3)
    p.add_argument("--max-vectors", type=int, default=50)
    p.add_argument("--seed", type=int, default=20240101)
    p.add_argument("--trunc", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("graphs", help="enumerate decorated cut graphs")
    _add_context_flags(p)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_graphs)

    p = sub.add_parser("series", help="print generating-function expansions")
    p.add_argument("--what", required=True,
                   choices=["bernoulli", "delta", "frk", "fr-at-one", "iif", "f-at-root"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("char", help="conjugacy data and cyclic characters")
    p.add_argument("--group", required=True)
    p.add_argument("--element", default=None)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--regular", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_char)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
