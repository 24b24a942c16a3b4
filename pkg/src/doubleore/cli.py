"""Command-line entry point: ``doubleore <command> [options]``.

Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fields import FieldError, field_from_name
from .koszul import KoszulError, koszulness_check, relation_space
from .presentation import (PresentationError, build_double_extension, family_K_alpha,
                           iterated_ore_check, parse_presentation, sigma_matrix)
from .resolution import (ResolutionError, cyclic_module_resolution_x, cyclic_module_resolution_y,
                         degreewise_exactness, euler_characteristic, minimal_resolution,
                         module_hilbert_function, explicit_resolution_K, poincare_series,
                         verify_complex)
from .rewriting import RewritingError, UncertifiedSystemError, make_rewrite_system

SCHEMA = 1

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

MODULES = {
    "trivial": ("x1", "x2", "y1", "y2"),
    "x-cyclic": ("x1", "x2"),
    "y-cyclic": ("y1", "y2"),
}


class InputError(ValueError):
    pass


class _Context:
    def __init__(self, de):
        self.de = de
        self.pres = build_double_extension(de)
        self.rs = make_rewrite_system(self.pres)
        self.alpha = family_K_alpha(de)

    def quotient_hilbert(self, gens, max_degree):
        q = make_rewrite_system(self.pres.with_relations([self.rs.gen(g) for g in gens]))
        return module_hilbert_function(q, max_degree)


def load(args) -> _Context:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as e:
            raise InputError(f"cannot read {args.input}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise InputError(f"{args.input}: invalid JSON: {e}") from None
        if args.family:
            raise InputError("use either --input or --family, not both")
    else:
        doc = {"family": args.family or "K", "alpha": "1" if args.alpha is None else args.alpha}
    if args.field:
        doc = dict(doc, field=field_from_name(args.field).describe())
    return _Context(parse_presentation(doc))


def _emit(args, payload: dict, tsv_lines: list):
    if args.format == "json":
        sys.stdout.write(json.dumps(dict({"schema": SCHEMA}, **payload), indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(tsv_lines) + "\n")


# ---------------------------------------------------------------------------

def cmd_basis(args) -> int:
    ctx = load(args)
    rs = ctx.rs
    rows, lines = [], ["degree\tcount" + ("\tmonomials" if args.list else "")]
    for d in range(args.max_degree + 1):
        words = rs.normal_monomials(d)
        row = {"degree": d, "count": len(words)}
        line = f"{d}\t{len(words)}"
        if args.list:
            rendered = [rs.render_word(w) for w in words]
            row["monomials"] = rendered
            line += "\t" + ",".join(rendered)
        rows.append(row)
        lines.append(line)
    _emit(args, {"command": "basis", "degrees": rows}, lines)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    ctx = load(args)
    coeffs = ctx.rs.hilbert_coefficients(args.max_degree)
    lines = ["degree\tdim"] + [f"{d}\t{c}" for d, c in enumerate(coeffs)]
    _emit(args, {"command": "hilbert", "coefficients": coeffs,
                 "certified": ctx.rs.certified()}, lines)
    return EXIT_OK


def cmd_orecheck(args) -> int:
    ctx = load(args)
    rep = iterated_ore_check(ctx.de)
    _, det = sigma_matrix(ctx.de)
    orders = [("y1,y2", rep.order_y1_y2), ("y2,y1", rep.order_y2_y1)]
    lines = ["order\tverdict\twitness"]
    for name, v in orders:
        lines.append(f"{name}\t{'eligible' if v.eligible else 'blocked'}\t{v.witness or '-'}")
    lines.append(f"# det_sigma\t{det}")
    lines.extend(f"# note\t{n}" for n in rep.notes)
    payload = {
        "command": "orecheck",
        "orders": [{"order": n, "eligible": v.eligible, "witness": v.witness} for n, v in orders],
        "det_sigma": str(det),
        "notes": list(rep.notes),
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_koszul(args) -> int:
    ctx = load(args)
    ctx.rs.require_certified()
    qd = relation_space(ctx.pres)
    max_degree = max(args.max_degree, args.max_n)
    rep = koszulness_check(qd, ctx.rs, max_degree)
    dims = rep.dims[:args.max_n + 1]
    lines = ["n\tdim_W"] + [f"{n}\t{d}" for n, d in enumerate(dims)]
    lines.append(f"# euler_characteristic\t{'pass' if rep.euler_ok else 'fail'}")
    lines.append(f"# exactness\t{'pass' if rep.exact_ok else 'fail'}")
    payload = {
        "command": "koszul",
        "dims": dims,
        "max_degree": max_degree,
        "euler": rep.euler,
        "euler_characteristic": rep.euler_ok,
        "exactness": rep.exact_ok,
        "exactness_failures": [list(f) for f in rep.exactness.failures],
    }
    _emit(args, payload, lines)
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_betti(args) -> int:
    ctx = load(args)
    rs = ctx.rs
    rs.require_certified()
    if args.ideal:
        try:
            gens = [rs.parse(e) for e in args.ideal.split(",") if e.strip()]
        except RewritingError as e:
            raise InputError(f"--ideal: {e}") from None
        label, expected = args.ideal, None
    else:
        names = MODULES[args.module]
        gens = [rs.gen(n) for n in names]
        label = args.module
        expected = ctx.quotient_hilbert(names, args.max_degree)
    _, bt = minimal_resolution(rs, gens, args.max_homological, args.max_degree)
    ps = poincare_series(bt)
    euler = euler_characteristic(rs, bt, args.max_degree)
    consistent = expected is None or euler == expected
    lines = ["i\tj\tbeta"] + [f"{i}\t{j}\t{b}" for i, j, b in bt.rows()]
    lines.append(f"# P(s,t)\t{ps.render()}")
    lines.append(f"# P(z)\t{ps.render_univariate()}")
    payload = {
        "command": "betti",
        "module": label,
        "max_degree": args.max_degree,
        "max_homological": args.max_homological,
        "betti": [{"i": i, "j": j, "beta": b} for i, j, b in bt.rows()],
        "totals": bt.totals(),
        "poincare": ps.render(),
        "poincare_univariate": ps.render_univariate(),
        "hilbert_from_betti": euler,
        "hilbert_expected": expected,
    }
    _emit(args, payload, lines)
    return EXIT_OK if consistent else EXIT_FAILED


def _verify_one(rs, name, complex_, max_degree, hilbert):
    vc = verify_complex(rs, complex_)
    ex = degreewise_exactness(rs, complex_, max_degree, module_hilbert=hilbert)
    return {
        "name": name,
        "is_complex": vc.is_complex,
        "is_minimal": vc.is_minimal,
        "composite_failures": [
            {"composite": f"d{f.position}*d{f.position + 1}", "row": f.row, "col": f.col,
             "residue": rs.render(f.residue)} for f in vc.failures],
        "exact": ex.exact,
        "exactness_failures": [{"degree": d, "position": p, "homology": h} for d, p, h in ex.failures],
        "degrees": [{"degree": dd.degree, "dims": dd.dims, "ranks": dd.ranks,
                     "homology": dd.homology[1:], "cokernel": dd.cokernel} for dd in ex.degrees],
        "passed": vc.ok and ex.exact,
    }


def cmd_verify(args) -> int:
    ctx = load(args)
    if ctx.alpha is None:
        raise InputError("verify needs family K data (the explicit complexes are family-specific)")
    rs = ctx.rs
    rs.require_certified()
    trivial = explicit_resolution_K(ctx.alpha, rs)
    if args.perturb:
        d2 = trivial.d(2)
        trivial = trivial.replace(2, d2.with_entry(0, 2, -d2.entry(0, 2)))
    n = args.max_degree
    results = [
        _verify_one(rs, "trivial", trivial, n, [1] + [0] * n),
        _verify_one(rs, "x-cyclic", cyclic_module_resolution_x(rs), n, ctx.quotient_hilbert(MODULES["x-cyclic"], n)),
        _verify_one(rs, "y-cyclic", cyclic_module_resolution_y(rs), n, ctx.quotient_hilbert(MODULES["y-cyclic"], n)),
    ]
    passed = all(r["passed"] for r in results)
    lines = ["complex\tcheck\tresult\tdetail"]
    for r in results:
        lines.append(f"{r['name']}\tcomplex\t{'pass' if r['is_complex'] else 'fail'}\t"
                     + (";".join(f"{f['composite']}[{f['row']},{f['col']}]={f['residue']}"
                                 for f in r["composite_failures"][:1]) or "-"))
        lines.append(f"{r['name']}\tminimal\t{'pass' if r['is_minimal'] else 'fail'}\t-")
        detail = ";".join(f"deg{f['degree']}:pos{f['position']}={f['homology']}"
                          for f in r["exactness_failures"]) or f"degrees 0..{n}"
        lines.append(f"{r['name']}\texact\t{'pass' if r['exact'] else 'fail'}\t{detail}")
    _emit(args, {"command": "verify", "alpha": str(ctx.alpha), "max_degree": n,
                 "complexes": results, "passed": passed}, lines)
    return EXIT_OK if passed else EXIT_FAILED


# ---------------------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("bounds must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("algebra")
    src.add_argument("--input", metavar="FILE", help="JSON presentation file")
    src.add_argument("--family", choices=["K"], help="named family (only K)")
    src.add_argument("--alpha", metavar="RAT", help="family parameter, e.g. 3/5 (default 1)")
    src.add_argument("--field", metavar="FIELD", help="'rational' (default) or p<prime>, e.g. p101")
    common.add_argument("--format", choices=["tsv", "json"], default="tsv")

    parser = argparse.ArgumentParser(prog="doubleore",
                                     description="Homological invariants of trimmed double Ore extensions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="normal (PBW) monomials per degree")
    p.add_argument("--max-degree", type=_positive, default=3)
    p.add_argument("--list", action="store_true", help="list the monomials, not just counts")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of B")
    p.add_argument("--max-degree", "--max", dest="max_degree", type=_positive, default=6)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("betti", parents=[common], help="minimal resolution and Betti table")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--module", choices=sorted(MODULES), default="trivial")
    g.add_argument("--ideal", metavar="EXPR,...", help="degree-one generators of a right ideal")
    p.add_argument("--max-degree", type=_positive, default=8)
    p.add_argument("--max-homological", type=_positive, default=6)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", parents=[common], help="check the explicit family-K complexes")
    p.add_argument("--max-degree", type=_positive, default=8)
    p.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("koszul", parents=[common], help="Koszul space dimensions and certificates")
    p.add_argument("--max-n", type=_positive, default=5)
    p.add_argument("--max-degree", type=_positive, default=6)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("orecheck", parents=[common], help="iterated Ore presentation criterion")
    p.set_defaults(func=cmd_orecheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PresentationError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except UncertifiedSystemError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (RewritingError, ResolutionError, KoszulError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
