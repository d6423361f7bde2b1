"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import lcm
from typing import Any, Optional, Sequence

from . import abelian, catalog, index, singular

FORMATS = ("table", "json", "csv")


class UsageError(Exception):
    pass


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "value") and hasattr(x, "name"):  # enums
        return x.value
    return x


def _envelope(command: str, inputs: dict, result: Any, provenance: Any) -> str:
    return json.dumps(
        {"command": command, "inputs": _jsonable(inputs), "result": _jsonable(result),
         "provenance": provenance},
        indent=2,
    )


def _fmt(x: Any) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    if hasattr(x, "value") and hasattr(x, "name"):
        return str(x.value)
    return str(x)


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[_fmt(c) for c in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(out)


def _kv(pairs: Sequence[tuple[str, Any]]) -> str:
    w = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(w)}  {_fmt(v)}" for k, v in pairs)


def _emit(args, command: str, inputs: dict, result: dict, provenance: Any, text: str) -> None:
    if getattr(args, "format", "table") == "json":
        print(_envelope(command, inputs, result, provenance))
    else:
        print(text)


# -- index-table ------------------------------------------------------------


def cmd_index_table(args) -> int:
    rows = index.index_table(args.d, args.n_from, args.n_to)
    inputs = {"d": args.d, "n_from": args.n_from, "n_to": args.n_to}
    if args.format == "json":
        result = [
            {"n": n, "residue": n % args.d, **res.to_dict()} for n, res in rows
        ]
        print(_envelope("index-table", inputs, result,
                        "smallest r with r | d and d | r*n; K-trivial when d | n"))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "residue", "variant", "index"])
        for n, res in rows:
            w.writerow([n, n % args.d, "KTrivial" if res.k_trivial else "LogEnriques",
                        "" if res.k_trivial else res.index])
        sys.stdout.write(buf.getvalue())
    else:
        print(_table(
            ["n", f"n mod {args.d}", "quotient", "index"],
            [(n, n % args.d, res.label(), res.index) for n, res in rows],
        ))
    return 0


# -- classify ---------------------------------------------------------------


def cmd_classify(args) -> int:
    k = 1 if args.k is None else args.k % args.d
    sc = index.QuotientScenario(args.n, args.d, k)
    res = sc.classify()  # raises NotPurelyNonsymplectic
    result = {
        "index": res.to_dict(),
        "coprime": res.index == args.d,
        "etale_possible": index.etale_chi_constraint(args.n, args.d),
        "class_group": index.class_group_torsion(args.d, False).describe(),
    }
    text = _kv([
        ("dim Y", 2 * args.n),
        ("order d", args.d),
        ("multiplier exponent k", k),
        ("quotient", res.label()),
        ("r = d (gcd(n, d) = 1)", result["coprime"]),
        ("etale cover possible (d | n+1)", result["etale_possible"]),
        ("class group", result["class_group"]),
    ])
    _emit(args, "classify", {"n": args.n, "d": args.d, "k": k}, result,
          "index: smallest r with r | d and d | r*n", text)
    return 0


# -- rst --------------------------------------------------------------------


def cmd_rst(args) -> int:
    a_list = tuple(int(x) for x in args.a.split(",")) if args.a else ()
    t = len(a_list) if args.t is None else args.t
    model = singular.FixedComponentModel(args.p, args.n, args.s, t, a_list)
    w = singular.weights_from_model(model)
    a = singular.age(w)
    cls = singular.classify_generator(model)
    result = {
        "weights": list(w.exps),
        "age": a,
        "symbolic_age": singular.symbolic_age(args.p, args.n, args.s),
        "class": cls.value,
        "terminality_conditions": singular.paper_terminality_conditions(args.p, args.n, args.s),
    }
    pairs = [
        ("exponents (mod p)", " ".join(map(str, w.exps))),
        ("age", a),
        ("closed-form age", result["symbolic_age"]),
        ("class (generator)", cls.value),
        ("terminality conditions", result["terminality_conditions"]),
    ]
    if args.all_powers:
        rep = singular.classify_all_powers(model)
        result["all_powers"] = {
            "ages": list(rep.ages),
            "min_age": rep.min_age_over_powers,
            "class": rep.all_powers_class.value,
            "discrepancy": rep.discrepancy,
        }
        pairs += [
            ("ages of phi^k", " ".join(str(x) for x in rep.ages)),
            ("class (all powers)", rep.all_powers_class.value),
            ("discrepancy", rep.discrepancy),
        ]
    inputs = {"p": args.p, "n": args.n, "s": args.s, "t": t, "a": list(a_list)}
    _emit(args, "rst", inputs, result,
          "age = (1/p) * sum of exponents; canonical iff age >= 1, terminal iff age > 1",
          _kv(pairs))
    return 0


# -- kummer / fixed-points --------------------------------------------------


def _point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a/N,b/N, got {text!r}")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad torsion point {text!r}") from None


def _auto(args) -> abelian.SurfaceAffineAuto:
    try:
        return abelian.SurfaceAffineAuto.make(
            args.curve1, args.curve2, args.mult1, args.mult2, u=args.u, v=args.v
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _auto_inputs(args) -> dict:
    return {"curve1": args.curve1, "curve2": args.curve2, "mult1": args.mult1,
            "mult2": args.mult2, "u": list(args.u), "v": list(args.v)}


def cmd_kummer(args) -> int:
    f = _auto(args)
    try:
        sc = abelian.KummerScenario(f, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    level = None
    if args.oracle:
        level = args.level or lcm(2 * (args.n + 1), f.translation.modulus)
    rep = abelian.kummer_quotient_classification(sc, oracle_level=level, budget=args.budget)
    mult = abelian.symplectic_multiplier(f)
    result: dict[str, Any] = {
        "automorphism": f.describe(),
        "order": rep.order,
        "multiplier": {"k": mult.k, "d": mult.d},
        "multiplier_exponent": rep.multiplier_exponent,
        "dim": rep.dim,
        "index": rep.index.to_dict(),
        "freeness": None,
        "notes": list(rep.notes),
    }
    pairs = [
        ("f", f.describe()),
        ("order d", rep.order),
        ("f* sigma", f"exp(2 pi i * {mult.k}/{mult.d})"),
        ("dim Kum_n", rep.dim),
        ("quotient", rep.index.label()),
    ]
    if rep.freeness is not None:
        result["freeness"] = {"case": rep.freeness.applicable_case.value,
                              "free": rep.freeness.free, "criterion": rep.freeness.detail}
        pairs += [("template", rep.freeness.applicable_case.value),
                  ("freeness criterion", f"{rep.freeness.detail}: {_fmt(rep.freeness.free)}")]
    if rep.oracle is not None:
        o = rep.oracle
        result["oracle"] = {
            "level": o.level,
            "enumerated": o.enumerated,
            "fixed_reduced": len(o.reduced),
            "fixed_nonreduced": len(o.nonreduced),
            "examples": [[list(p.coords) for p in c.points] for c in o.reduced[:5]],
        }
        pairs += [("oracle level", o.level),
                  ("multisets enumerated", o.enumerated),
                  ("fixed reduced configurations", len(o.reduced)),
                  ("fixed non-reduced (undecided)", len(o.nonreduced))]
    pairs += [("note", n) for n in rep.notes]
    _emit(args, "kummer", {**_auto_inputs(args), "n": args.n}, result,
          "order by exact composition; index: smallest r with r | d and d | r*n", _kv(pairs))
    return 0


def cmd_fixed_points(args) -> int:
    f = _auto(args)
    rep = abelian.fixed_points_exist_on_surface(f)
    result = {
        "automorphism": f.describe(),
        "order": abelian.auto_order(f),
        "exists": rep.exists,
        "witness": None if rep.witness is None else [
            {"num": p, "den": q} for p, q in rep.witness.fractions()
        ],
        "elementary_divisors": list(rep.elementary_divisors),
        "unit_eigenvalue": abelian.has_unit_eigenvalue(f),
    }
    wit = "-" if rep.witness is None else ", ".join(
        f"{p}/{q}" for p, q in rep.witness.fractions()
    )
    text = _kv([
        ("f", f.describe()),
        ("order", result["order"]),
        ("elementary divisors of L - I", " ".join(map(str, rep.elementary_divisors))),
        ("fixed point exists", rep.exists),
        ("witness", wit),
        ("eigenvalue 1", result["unit_eigenvalue"]),
    ])
    _emit(args, "fixed-points", _auto_inputs(args), result,
          "Smith normal form of L - I over the lattice", text)
    return 0


# -- catalog ----------------------------------------------------------------


def cmd_catalog(args) -> int:
    report = catalog.run_catalog(args.filter, args.file)
    if args.format == "json":
        print(_envelope(
            "catalog", {"filter": args.filter},
            {"rows": [v.to_dict() for v in report.verdicts], "summary": report.summary()},
            "per-field provenance strings from the catalog file",
        ))
    else:
        rows = []
        for v in report.verdicts:
            detail = "; ".join(f"{c.field}: got {_fmt(c.got)}, expected {_fmt(c.expected)}"
                               for c in v.failures)
            if not detail and v.not_checkable:
                detail = "not checkable: " + ", ".join(f for f, _ in v.not_checkable)
            rows.append((v.section, v.record_id, v.label, v.status.value, detail))
        if rows:
            print(_table(["section", "id", "case", "verdict", "detail"], rows))
        s = report.summary()
        print(f"{s['rows']} rows: {s['pass']} pass, {s['fail']} fail, "
              f"{s['not-checkable']} not-checkable")
    return report.exit_code


# -- parser -----------------------------------------------------------------


def _add_surface_args(p: argparse.ArgumentParser) -> None:
    curves = ("generic", "gauss", "eisenstein")
    p.add_argument("--curve1", choices=curves, required=True)
    p.add_argument("--curve2", choices=curves, required=True)
    p.add_argument("--mult1", required=True, help="unit: 1, -1, i, -i, w, w2, -w, -w2")
    p.add_argument("--mult2", required=True)
    p.add_argument("--u", type=_point, default=(Fraction(0), Fraction(0)),
                   help="translation on the first curve, a/N,b/N")
    p.add_argument("--v", type=_point, default=(Fraction(0), Fraction(0)),
                   help="translation on the second curve, a/N,b/N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logenriques",
        description="Canonical index and singularities of cyclic quotients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index-table", help="canonical index for a range of n")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="table")
    p.set_defaults(func=cmd_index_table)

    p = sub.add_parser("classify", help="index of Y/<phi>, dim Y = 2n, phi of order d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, help="phi* sigma = xi_d^k sigma (default 1)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rst", help="age and singularity class of a prime-order linearization")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--a", help="comma-separated a_j")
    p.add_argument("--all-powers", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_rst)

    p = sub.add_parser("kummer", help="quotient of Kum_n(E1 x E2) by an affine automorphism")
    _add_surface_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="enumerate fixed torsion configurations")
    p.add_argument("--level", type=int, help="torsion level for the oracle")
    p.add_argument("--budget", type=int, default=abelian.DEFAULT_BUDGET)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("fixed-points", help="fixed points of an affine automorphism of E1 x E2")
    _add_surface_args(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("catalog", help="verify the example catalog")
    p.add_argument("--filter", help="record id, construction kind, type tag or section label")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--file", help="alternative catalog file")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, abelian.BudgetExceeded) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
