"""Command-line interface: ``macinv <command> ...``.

Every command builds one result document; ``--format json`` prints it as
JSON and ``--format text`` (the default, or ``$MACINV_FORMAT``) prints a
short summary line followed by ``key: value`` lines.

Exit status: 0 on success, 1 on a violated mathematical precondition,
2 on unparsable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cubics import (
    classify_binary_cubic,
    classify_ternary_cubic,
    j_invariant,
    legendre_cubic,
    model_table,
)
from .errors import DomainError
from .grammar import ParseError, parse_poly
from .invsys import (
    AlgebraPresentation,
    annihilator,
    graded_dimensions,
    hilbert_function,
    is_gorenstein,
    perp,
    symmetric_hf_criterion,
    top_form_quotient,
)
from .socle3 import (
    IsoWitness,
    canonical_grading_witness,
    delta_matrix,
    iso_socle3,
    normalize_socle3,
    verify_iso,
)

SCHEMA = "macinv/1"


def _q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _poly(args, text, side=None):
    return parse_poly(text, nvars=args.nvars, side=side)


def _polys(args, texts, side=None):
    if not texts:
        if args.nvars is None:
            raise DomainError("with no polynomials the variable count must be given (--nvars)")
        return []
    polys = [parse_poly(t, side=side) for t in texts]
    m = args.nvars or max(p.nvars for p in polys)
    return [parse_poly(t, nvars=m, side=side) for t in texts]


def _dual(args, text):
    F = _poly(args, text, side="y")
    if F.is_zero():
        raise DomainError("the dual generator must be nonzero")
    return F


def _matrix(rows):
    return [[_q(x) for x in row] for row in rows]


# -- commands ---------------------------------------------------------------

def cmd_ann(args):
    F = _dual(args, args.F)
    ideal = annihilator(F, args.socle)
    gens = [g.to_text() for g in ideal.generators]
    return ", ".join(gens), {
        "nvars": F.nvars,
        "socle_bound": ideal.bound,
        "generators": gens,
        "kbasis_dim": ideal.kbasis.dim,
        "colength": ideal.colength,
    }


def cmd_hf(args):
    F = _dual(args, args.F)
    hf = hilbert_function(F)
    return " ".join(map(str, hf)), {"nvars": F.nvars, "hilbert_function": list(hf),
                                   "multiplicity": sum(hf)}


def cmd_perp(args):
    gens = _polys(args, args.gens, side="x")
    space = perp(gens, args.socle, args.nvars)
    hf = graded_dimensions(space)
    return f"dim {space.dim}", {
        "nvars": space.nvars,
        "socle_bound": args.socle,
        "dim": space.dim,
        "hilbert_function": list(hf),
        "basis": [g.to_text() for g in space.elements()],
    }


def cmd_gorenstein(args):
    polys = _polys(args, args.polys)
    if polys[0].letter == "y":
        if len(polys) != 1:
            raise DomainError("give either one dual generator or a list of ideal generators")
        A = AlgebraPresentation.from_dual(polys[0], args.socle)
    else:
        if args.socle is None:
            raise DomainError("an ideal needs a socle bound (--socle)")
        A = AlgebraPresentation.from_ideal(polys, args.socle, args.nvars)
    check = is_gorenstein(A)
    return ("Gorenstein" if check.is_gorenstein else "not Gorenstein"), {
        "nvars": A.nvars,
        "is_gorenstein": check.is_gorenstein,
        "socle_dimension": check.socle_dimension,
        "generator": check.generator.to_text() if check.generator is not None else None,
        "hilbert_function": list(A.hilbert_function),
    }


def cmd_q0(args):
    F = _dual(args, args.F)
    Q = top_form_quotient(F)
    return Q.dual_generator.to_text(), {
        "nvars": F.nvars,
        "top_form": Q.dual_generator.to_text(),
        "hilbert_function": list(Q.hilbert_function),
        "input_hilbert_function": list(hilbert_function(F)),
        "symmetric": symmetric_hf_criterion(F),
    }


def cmd_delta(args):
    F3 = _dual(args, args.F3)
    d = delta_matrix(F3)
    return f"rank {d.rank}", {
        "nvars": F3.nvars,
        "columns": ["".join(map(str, c)) for c in d.columns],
        "matrix": _matrix(d.entries),
        "rank": d.rank,
        "nondegenerate": d.rank == d.n,
    }


def cmd_canonical(args):
    F = _dual(args, args.F)
    w = canonical_grading_witness(F)
    F3 = F.top_form()
    return "canonically graded", {
        "nvars": F.nvars,
        "cubic": F3.to_text(),
        "witness": w.to_dict(),
        "verified": verify_iso(F, F3, w),
    }


def cmd_normalize(args):
    F = _dual(args, args.F)
    nf = normalize_socle3(F)
    return nf.normal.to_text(), {
        "nvars": F.nvars,
        "hilbert_function": list(nf.hilbert_function),
        "cubic": nf.cubic.to_text(),
        "lambdas": [_q(x) for x in nf.lambdas],
        "normal_form": nf.normal.to_text(),
        "closure_normal_form": nf.closure_form().to_text(),
        "linear_change": _matrix(nf.linear_change),
        "witness": nf.witness.to_dict(),
        "verified": verify_iso(F, nf.normal, nf.witness),
    }


def _read_witness(path):
    with open(path, encoding="utf-8") as fh:
        return IsoWitness.from_dict(json.load(fh))


def cmd_iso(args):
    F, G = _polys(args, [args.F, args.G], side="y")
    w = _read_witness(args.witness) if args.witness else None
    d = iso_socle3(F, G, witness=w)
    return d.status.value, {"nvars": F.nvars, "status": d.status.value, "reason": d.reason,
                            "invariants": d.invariants}


def cmd_verify_iso(args):
    F, G = _polys(args, [args.F, args.G], side="y")
    w = _read_witness(args.witness)
    ok = verify_iso(F, G, w)
    return ("verified" if ok else "rejected"), {"nvars": F.nvars, "verified": ok}


def cmd_classify(args):
    F = _dual(args, args.F)
    if F.nvars == 2:
        c = classify_binary_cubic(F)
        return c.value, {"nvars": 2, "class": c.value, "degenerate": c.degenerate}
    if F.nvars == 3:
        c = classify_ternary_cubic(F, seed=args.seed)
        return c.label(), {"nvars": 3, "class": c.kind.value,
                           "j": _q(c.j) if c.j is not None else None}
    raise DomainError(f"classification covers binary and ternary cubics, got {F.nvars} variables")


def cmd_jinv(args):
    if args.lam is not None:
        F = legendre_cubic(Fraction(args.lam))
    elif args.F is not None:
        F = _dual(args, args.F)
    else:
        raise DomainError("give a ternary cubic or --lambda")
    j = j_invariant(F)
    return _q(j), {"nvars": F.nvars, "cubic": F.to_text(), "j": _q(j)}


def cmd_models(args):
    lam = Fraction(args.lam) if args.lam is not None else Fraction(2)
    rows = model_table(args.cls, lam=lam)
    out = [{
        "key": r.key,
        "label": r.label,
        "hilbert_function": list(r.hilbert_function),
        "ideal": [g.to_text() for g in r.ideal],
        "dual": r.dual.to_text(),
        "erratum": r.erratum,
    } for r in rows]
    return f"{len(out)} models", {"models": out}


def cmd_selftest(args):
    from .selftest import run

    results = run(seed=args.seed, scale=args.scale)
    failed = [r for r in results if not r.passed]
    data = {
        "seed": args.seed,
        "total": len(results),
        "failed": len(failed),
        "cases": [{"suite": r.suite, "case": r.case, "passed": r.passed, "detail": r.detail}
                  for r in results],
    }
    return f"{len(results) - len(failed)}/{len(results)} passed", data


# -- parser and rendering ---------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"),
                        default=os.environ.get("MACINV_FORMAT", "text"))
    common.add_argument("--nvars", type=int, default=None, help="override the inferred variable count")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="macinv", description="Macaulay inverse systems and socle-degree-3 algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("ann", cmd_ann, "annihilator of a dual generator")
    sp.add_argument("F")
    sp.add_argument("--socle", type=int, default=None)
    add("hf", cmd_hf, "Hilbert function of A_F").add_argument("F")
    sp = add("perp", cmd_perp, "inverse system of an ideal")
    sp.add_argument("gens", nargs="*")
    sp.add_argument("--socle", type=int, required=True)
    sp = add("gorenstein", cmd_gorenstein, "Gorenstein test")
    sp.add_argument("polys", nargs="+")
    sp.add_argument("--socle", type=int, default=None)
    add("q0", cmd_q0, "graded quotient of the top form").add_argument("F")
    add("delta", cmd_delta, "second-derivative matrix of a cubic form").add_argument("F3")
    add("canonical", cmd_canonical, "canonical grading witness (HF {1,n,n,1})").add_argument("F")
    add("normalize", cmd_normalize, "normal form for HF {1,m,n,1}").add_argument("F")
    sp = add("iso", cmd_iso, "isomorphism decision")
    sp.add_argument("F")
    sp.add_argument("G")
    sp.add_argument("--witness", default=None)
    sp = add("verify-iso", cmd_verify_iso, "check an isomorphism witness")
    sp.add_argument("F")
    sp.add_argument("G")
    sp.add_argument("--witness", required=True)
    add("classify", cmd_classify, "classify a binary or ternary cubic").add_argument("F")
    sp = add("jinv", cmd_jinv, "j-invariant of a smooth ternary cubic")
    sp.add_argument("F", nargs="?")
    sp.add_argument("--lambda", dest="lam", default=None)
    sp = add("models", cmd_models, "model algebras")
    sp.add_argument("--class", dest="cls", default=None)
    sp.add_argument("--lambda", dest="lam", default=None)
    sp = add("selftest", cmd_selftest, "run the fixture corpus and property suites")
    sp.add_argument("--scale", type=int, default=1)
    return p


def _text_value(v):
    if isinstance(v, list):
        if all(isinstance(x, int) for x in v):
            return " ".join(map(str, v))
        return ", ".join(_text_value(x) for x in v) if all(not isinstance(x, (dict, list)) for x in v) \
            else json.dumps(v, sort_keys=True)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "-" if v is None else str(v)


def render(command, summary, data, fmt):
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, "summary": summary}
        doc.update(data)
        return json.dumps(doc, indent=2, sort_keys=True)
    lines = [summary]
    for key in sorted(data):
        if key == "cases":
            lines += [f"{'PASS' if c['passed'] else 'FAIL'} {c['suite']} {c['case']}" for c in data[key]]
        elif key == "models":
            for r in data[key]:
                lines.append(f"{r['key']}: ({', '.join(r['ideal'])})  F = {r['dual']}  "
                             f"HF {' '.join(map(str, r['hilbert_function']))}  {r['label']}")
        else:
            lines.append(f"{key}: {_text_value(data[key])}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        summary, data = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc.message} at position {exc.position}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot read witness: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    print(render(args.command, summary, data, args.format))
    if args.command == "selftest" and data["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
