"""The ``operadiff`` command line.

Exit status: 0 when the computation succeeds or every check passes, 1 when
a check finds a violation (the report carries a counterexample), 2 for bad
input or usage.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import adjoint as adj
from .algebra import (PAlgebra, check_algebra_axioms, check_differential_object_alg, check_tangent_equations,
                      check_tangent_lift, derivation_bracket, derivation_space, is_derivation, tangent_bundle)
from .axioms import DEFAULT_SEED, check_dc_axioms, check_lambda_axioms
from .catalog import ALGEBRAS, random_morphisms
from .free import diff_transform
from .operads import Operad, TruncationError, check_operad_axioms, operad_by_name
from .parsing import ParseError, atom_name, parse_expression, render_element, render_linear
from .ppoly import PPolyMap, check_cdc_properties, ppoly_compose, ppoly_diff
from .report import Report
from .specfile import AxiomError, SpecError, load_spec


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input helpers

def _operad(args) -> Operad:
    if getattr(args, "spec", None):
        P = load_spec(args.spec, verify=not args.no_verify)
        if isinstance(P, PAlgebra):
            raise UsageError(f"{args.spec} describes an algebra, not an operad")
        return P
    try:
        return operad_by_name(args.operad)
    except KeyError as err:
        raise UsageError(str(err.args[0])) from err


# bundled example spec files, found by bare name when not present on disk
EXAMPLES = Path(__file__).resolve().parent / "data"


def _algebra(args) -> PAlgebra:
    ref = args.algebra
    if ref in ALGEBRAS and not Path(ref).exists():
        return ALGEBRAS[ref]()
    path = Path(ref)
    if not path.exists() and (EXAMPLES / ref).exists():
        path = EXAMPLES / ref
    A = load_spec(path, verify=not args.no_verify)
    if not isinstance(A, PAlgebra):
        raise UsageError(f"{ref} describes an operad, not an algebra")
    return A


def _vars(text: Optional[str]) -> Optional[List[str]]:
    return [v.strip() for v in text.split(",") if v.strip()] if text else None


def _free_vars(el_list) -> List[str]:
    names = sorted({a for el in el_list for t in el for a in t.word}, key=str)
    return [str(a) for a in names]


class Output:
    """Collects text lines and a JSON payload for one command."""

    def __init__(self, args, report: Report):
        self.args = args
        self.report = report
        self.lines: List[str] = []
        self.result: Dict[str, Any] = {}
        self.show_checks = True

    def say(self, line: str, key: Optional[str] = None, value: Any = None):
        self.lines.append(line)
        if key is not None:
            self.result[key] = line if value is None else value

    def emit(self) -> int:
        if self.args.json:
            d = self.report.to_dict()
            if self.result:
                d["result"] = self.result
            print(json.dumps(d, indent=2, sort_keys=True, default=str))
        else:
            for line in self.lines:
                print(line)
            if self.report.checks and (self.show_checks or not self.report.ok):
                print(self.report.render())
        return 0 if self.report.ok else 1


# ---------------------------------------------------------------------------
# commands

def cmd_differentiate(args) -> int:
    P = _operad(args)
    el = parse_expression(P, args.expr, _vars(args.vars))
    out = Output(args, Report("differentiate", P.name, args.expr, args.seed))
    out.say(render_element(P, diff_transform(P, el)), "derivative")
    return out.emit()


def _ppoly(P, exprs: Sequence[str], names: Optional[List[str]]) -> PPolyMap:
    comps = [parse_expression(P, e, names) for e in exprs]
    src = names or _free_vars(comps)
    return PPolyMap(tuple(src), tuple(comps))


def cmd_compose(args) -> int:
    P = _operad(args)
    f = _ppoly(P, args.f, _vars(args.f_vars))
    g = _ppoly(P, args.g, _vars(args.g_vars))
    if g.n != f.m:
        raise UsageError(f"g takes {g.n} inputs but f has {f.m} components")
    rep = Report("compose", P.name, f"g.f with f={list(args.f)}, g={list(args.g)}", args.seed)
    out = Output(args, rep)
    gf = ppoly_compose(P, g, f)
    show = lambda h: "(" + ", ".join(render_element(P, c) for c in h.components) + ")"
    out.say(f"g.f = {show(gf)}", "composite", show(gf))
    if args.diff:
        Df = ppoly_diff(P, f)
        lhs = ppoly_diff(P, gf)
        rhs = ppoly_compose(P, ppoly_diff(P, g), PPolyMap(Df.source, f.components + Df.components))
        out.say(f"D[g.f] = {show(lhs)}", "derivative", show(lhs))
        out.say(f"D[g].<f, D[f]> = {show(rhs)}", "chain", show(rhs))
        rep.record("chain rule", lhs == rhs, (show(lhs), show(rhs)), "chain-rule")
    return out.emit()


def cmd_check_operad(args) -> int:
    P = _operad(args)
    rep = check_operad_axioms(P, min(args.arity, P.max_arity))
    rep.seed = args.seed
    return Output(args, rep).emit()


def cmd_check_dc(args) -> int:
    P = _operad(args)
    return Output(args, check_dc_axioms(P, args.arity, args.trials, args.seed)).emit()


def cmd_check_lambda(args) -> int:
    P = _operad(args)
    return Output(args, check_lambda_axioms(P, args.arity, args.trials, args.seed)).emit()


def cmd_check_cdc(args) -> int:
    P = _operad(args)
    return Output(args, check_cdc_properties(P, args.trials, args.seed)).emit()


def cmd_check_algebra(args) -> int:
    A = _algebra(args)
    rep = check_algebra_axioms(A, args.arity, seed=args.seed)
    rep.seed = args.seed
    return Output(args, rep).emit()


def _tangent_name(b) -> str:
    return atom_name(b) if b.k <= 1 else f"d{b.k}{b.x}"


def cmd_tangent(args) -> int:
    A = _algebra(args)
    TA = tangent_bundle(A)
    out = Output(args, Report("tangent", A.operad.name, A.name, args.seed))
    out.say(f"T({A.name}) = {A.name} x {A.name}, basis: {', '.join(_tangent_name(b) for b in TA.basis)}")
    rows = []
    for op, tab in sorted(TA.tables.items()):
        for ins, v in sorted(tab.items(), key=lambda kv: str(kv[0])):
            shown = ", ".join(_tangent_name(b) if hasattr(b, "k") else str(b) for b in ins)
            line = f"{op}({shown}) = {render_linear(v.map_keys(_tangent_name))}"
            rows.append(line)
            out.say(line)
    out.result["table"] = rows
    rep = check_tangent_lift(A)
    out.report.extend(rep)
    return out.emit()


def cmd_tangent_check(args) -> int:
    A = _algebra(args)
    try:
        morphs = random_morphisms(A, args.morphisms, random.Random(args.seed))
    except KeyError:
        morphs = []
    rep = check_tangent_equations(A, morphisms=morphs)
    rep.seed = args.seed
    rep.bounds["morphisms"] = len(morphs)
    return Output(args, rep).emit()


def cmd_derivations(args) -> int:
    A = _algebra(args)
    ders = derivation_space(A)
    rep = Report("derivations", A.operad.name, A.name, args.seed)
    out = Output(args, rep)
    basis = " | ".join(D.render() for D in ders)
    out.say(f"dim Der = {len(ders)}; basis: {basis}" if ders else "dim Der = 0", "summary")
    out.result["dim"] = len(ders)
    out.result["basis"] = [D.render() for D in ders]
    for D in ders:
        ok, wit = is_derivation(A, D.map)
        rep.record("solver output satisfies Leibniz", ok, wit, "derivation")
    for D1 in ders:
        for D2 in ders:
            ok, wit = is_derivation(A, derivation_bracket(D1, D2).map)
            rep.record("commutator is a derivation", ok, wit, "derivation-bracket")
    out.show_checks = args.check
    return out.emit()


def cmd_diff_object(args) -> int:
    if args.algebra:
        A = _algebra(args)
        ok, info = check_differential_object_alg(A)
        rep = Report("diff-object", A.operad.name, A.name, args.seed)
        rep.record("vanishing and monadic criteria agree", info["agree"], info.get("witness"), "diffobj-criteria")
        out = Output(args, rep)
        verdict = "yes" if info["vanishing"] else "no"
        out.say(f"{A.name} is a differential object: {verdict}", "differential_object", info["vanishing"])
        return out.emit()
    P = _operad(args)
    atoms = _vars(args.vars) or ["x", "y"]
    rep = adj.check_free_differential_object(P, atoms, args.weight)
    rep.seed = args.seed
    return Output(args, rep).emit()


def cmd_kahler(args) -> int:
    A = _algebra(args)
    res = adj.kahler_truncated(A, args.weight, args.backend)
    out = Output(args, Report("kahler", A.operad.name, A.name, args.seed,
                              {"weight": args.weight, "backend": res.backend}))
    status = "exact" if res.exact else f"truncated at weight {args.weight}, {'stable' if res.stable else 'not stable'}"
    out.say(f"dim Omega = {res.dim}; basis: {', '.join(res.basis) or '-'} ({status})", "summary")
    out.result.update({"dim": res.dim, "basis": res.basis, "exact": res.exact, "stable": res.stable})
    return out.emit()


def cmd_adjoint_tangent(args) -> int:
    if args.algebra:
        A = _algebra(args)
        pres = adj.tcirc_presentation(adj.FiniteSource(A), adj.DUAL, args.weight, args.degree)
        rep = Report("adjoint-tangent", A.operad.name, A.name, args.seed,
                     {"weight": args.weight, "degree": args.degree})
        out = Output(args, rep)
        cells = {}
        for k in range(args.degree + 1):
            cell = pres.cell((k,))
            stable = pres.stable(k)
            reps = [pres.render(adj.LinComb.single(t)) for t in cell.reps]
            out.say(f"degree {k}: dim {cell.dim} (truncated, {'stable' if stable else 'not stable'}): "
                    f"{', '.join(reps) or '-'}")
            cells[str(k)] = {"dim": cell.dim, "stable": stable, "basis": reps}
        out.result["cells"] = cells
        return out.emit()
    P = _operad(args)
    atoms = _vars(args.vars) or ["x", "y"]
    pres, cells = adj.tau_free_iso(P, atoms, args.weight, args.degree)
    rep = Report("adjoint-tangent", P.name, f"S({','.join(atoms)})", args.seed,
                 {"weight": args.weight, "degree": args.degree})
    out = Output(args, rep)
    table = {}
    for c in cells:
        rep.record("tau is an isomorphism on each cell", c.iso, c, "adjoint-tau")
        out.say(f"cell (degree {c.key[0]}, weight {c.key[1]}): dim {c.source_dim}, S(P,VxV) dim {c.target_dim}")
        table[f"{c.key[0]},{c.key[1]}"] = [c.source_dim, c.target_dim]
    rep.record("tau is multiplicative", adj.check_tau_multiplicative(P, pres, 100, args.seed), None, "adjoint-tau")
    out.result["cells"] = table
    return out.emit()


def cmd_check_adjunction(args) -> int:
    if args.algebra:
        A = _algebra(args)
        rep = adj.check_adjunction(A, args.weight, 1)
        rep.extend(adj.check_adjoint_maps_well_defined(A, min(args.weight, 3)))
    else:
        P = _operad(args)
        rep = adj.check_free_adjunction(P, _vars(args.vars) or ["x", "y"], args.weight)
    rep.extend(adj.check_adjoint_equations())
    rep.seed = args.seed
    return Output(args, rep).emit()


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="operadiff", description="Differential structure of operads and their algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--no-verify", action="store_true", help="skip the axiom gate when loading spec files")
        return p

    def operad_opts(p, spec=True):
        p.add_argument("--operad", default="com", help="com, ass, lie or abullet")
        if spec:
            p.add_argument("--spec", help="operad table file")

    def algebra_opt(p, required=True):
        p.add_argument("--algebra", required=required,
                       help=f"spec file or one of: {', '.join(sorted(ALGEBRAS))}")

    p = common(sub.add_parser("differentiate", help="apply the differential combinator to an expression"))
    operad_opts(p, spec=False)
    p.add_argument("--vars", help="comma-separated variable names")
    p.add_argument("expr")
    p.set_defaults(func=cmd_differentiate)

    p = common(sub.add_parser("compose", help="compose P-polynomial maps"))
    operad_opts(p, spec=False)
    p.add_argument("--f", action="append", required=True, help="component of f (repeatable)")
    p.add_argument("--g", action="append", required=True, help="component of g (repeatable)")
    p.add_argument("--f-vars")
    p.add_argument("--g-vars")
    p.add_argument("--diff", action="store_true", help="also differentiate and check the chain rule")
    p.set_defaults(func=cmd_compose)

    p = common(sub.add_parser("check-operad", help="operad axioms"))
    operad_opts(p)
    p.add_argument("--arity", type=int, default=4)
    p.set_defaults(func=cmd_check_operad)

    for name, func, help_ in (("check-dc", cmd_check_dc, "differential combinator axioms"),
                              ("check-lambda", cmd_check_lambda, "distributive law axioms")):
        p = common(sub.add_parser(name, help=help_))
        operad_opts(p)
        p.add_argument("--arity", type=int, default=4)
        p.add_argument("--trials", type=int, default=200)
        p.set_defaults(func=func)

    p = common(sub.add_parser("check-cdc", help="chain rule and category laws for P-POLY"))
    operad_opts(p)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_check_cdc)

    p = common(sub.add_parser("check-algebra", help="P-algebra axioms"))
    algebra_opt(p)
    p.add_argument("--arity", type=int, default=3)
    p.set_defaults(func=cmd_check_algebra)

    p = common(sub.add_parser("tangent", help="the semi-direct product A x A"))
    algebra_opt(p)
    p.set_defaults(func=cmd_tangent)

    p = common(sub.add_parser("tangent-check", help="tangent structure equations"))
    algebra_opt(p)
    p.add_argument("--morphisms", type=int, default=10)
    p.set_defaults(func=cmd_tangent_check)

    p = common(sub.add_parser("derivations", help="solve for the derivations of an algebra"))
    algebra_opt(p)
    p.add_argument("--check", action="store_true", help="also report Leibniz and bracket closure")
    p.set_defaults(func=cmd_derivations)

    p = common(sub.add_parser("diff-object", help="differential-object criteria"))
    algebra_opt(p, required=False)
    operad_opts(p)
    p.add_argument("--vars")
    p.add_argument("--weight", type=int, default=3)
    p.set_defaults(func=cmd_diff_object)

    p = common(sub.add_parser("kahler", help="Kähler differentials"))
    algebra_opt(p)
    p.add_argument("--weight", type=int, default=4)
    p.add_argument("--backend", choices=["auto", "generic", "closed"], default="auto")
    p.set_defaults(func=cmd_kahler)

    p = common(sub.add_parser("adjoint-tangent", help="cells of the adjoint tangent bundle"))
    algebra_opt(p, required=False)
    operad_opts(p)
    p.add_argument("--vars")
    p.add_argument("--weight", type=int, default=3)
    p.add_argument("--degree", type=int, default=2)
    p.set_defaults(func=cmd_adjoint_tangent)

    p = common(sub.add_parser("check-adjunction", help="unit, counit and triangle identities"))
    algebra_opt(p, required=False)
    operad_opts(p)
    p.add_argument("--vars")
    p.add_argument("--weight", type=int, default=3)
    p.set_defaults(func=cmd_check_adjunction)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 2
    try:
        return args.func(args)
    except AxiomError as err:
        print(f"axiom violation: {err}", file=sys.stderr)
        if err.report is not None:
            print(err.report.render(), file=sys.stderr)
        return 1
    except (UsageError, SpecError, ParseError, TruncationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
