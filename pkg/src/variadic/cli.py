"""Command-line entry point.

Exit codes: 0 success, 1 property failure, 2 usage or parse error,
3 budget exceeded.  ``eval`` and ``borel`` report formula verdicts as
0 (true), 1 (false) or 2 (unknown).
"""

from __future__ import annotations

import argparse
import sys

from . import borel, props
from .errors import BudgetExceeded
from .gen import GeneratorConfig, TermGenerator, case_rng
from .language import SignatureError, load_signature, std_signature, validate
from .parser import ParseError, parse_formula, parse_term, print_formula, print_term
from .qelim import NotUqf, classify, eliminate, eliminate_to_formula, verify
from .semantics import (
    DEFAULT_CUTOFF,
    DEFAULT_STEPS,
    DEFAULT_WIDTH,
    Assignment,
    EvalBudget,
    Verdict,
    interp,
    interp_semantic,
    interp_syntactic,
    satisfies,
    standard_model,
)
from .subst import substitutable, substitutable_formula, substitute, substitute_formula

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3
VERDICT_EXIT = {Verdict.TRUE: 0, Verdict.FALSE: 1, Verdict.UNKNOWN: 2}


class UsageError(Exception):
    pass


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _signature(args):
    if not getattr(args, "sig", None):
        return std_signature()
    try:
        sig = load_signature(args.sig)
    except (OSError, SignatureError) as e:
        raise UsageError(f"cannot load signature: {e}") from None
    problems = validate(sig)
    if problems:
        raise UsageError("invalid signature: " + "; ".join(map(str, problems)))
    return sig


def _model(sig):
    try:
        return standard_model(sig)
    except ValueError as e:
        raise UsageError(f"the standard model cannot interpret this signature: {e}") from None


def _source(arg: str | None) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read().strip()
    return arg


def _term_or_formula(src: str, sig):
    """A term if `src` parses as one, else a formula."""
    try:
        return parse_term(src, sig), True
    except ParseError as term_error:
        try:
            return parse_formula(src, sig), False
        except ParseError as formula_error:
            # report whichever parse got further
            if term_error.span.start > formula_error.span.start:
                raise term_error from None
            raise


def _budget(args) -> EvalBudget:
    try:
        return EvalBudget(args.width, args.steps)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _assignment(text: str | None) -> Assignment:
    if not text:
        return Assignment()
    try:
        return Assignment.parse(text)
    except ValueError as e:
        raise UsageError(f"bad --assign: {e}") from None


def cmd_eval(args) -> int:
    sig = _signature(args)
    m = _model(sig)
    node, is_term = _term_or_formula(_source(args.input), sig)
    s = _assignment(args.assign)
    budget = _budget(args)
    if is_term:
        run = {"kernel": interp, "syntactic": interp_syntactic, "semantic": interp_semantic}[args.mode]
        _out(str(run(node, m, s, budget)))
        return OK
    verdict = satisfies(node, m, s, budget, args.cutoff)
    _out(str(verdict))
    return VERDICT_EXIT[verdict]


def cmd_subst(args) -> int:
    sig = _signature(args)
    if not sig.is_variable(args.var):
        raise UsageError(f"{args.var!r} is not a variable")
    t = parse_term(args.term, sig)
    target, is_term = _term_or_formula(_source(args.target), sig)
    if is_term:
        _out(print_term(substitute(target, args.var, t)))
        ok = substitutable(t, args.var, target)
    else:
        _out(print_formula(substitute_formula(target, args.var, t)))
        ok = substitutable_formula(t, args.var, target)
    _out(f"substitutable: {'true' if ok else 'false'}")
    return OK


def cmd_qelim(args) -> int:
    sig = _signature(args)
    phi = parse_formula(_source(args.formula), sig)
    try:
        cert = classify(phi)
    except NotUqf as e:
        _out(f"not uqf: {e}")
        return USAGE
    _out(f"t_phi: {print_term(eliminate(cert))}")
    _out(f"quantifier-free: {print_formula(eliminate_to_formula(cert))}")
    if not args.verify:
        return OK
    report = verify(cert, args.values, _model(sig), _budget(args))
    for line in report.failures:
        _out(f"FAIL {line}")
    _out(f"verified: {report.assignments} assignments, values <= {args.values}, {len(report.failures)} failures")
    return OK if report.ok else FAILED


def _prefix(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise UsageError(f"bad --prefix {text!r}: expected naturals separated by commas") from None
    if not vals or min(vals) < 0:
        raise UsageError("--prefix needs at least one natural")
    return vals


def cmd_borel(args) -> int:
    try:
        iota = borel.load_iota(args.iota, args.n)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot load iota table: {e}") from None
    n = args.n or iota.n
    try:
        phi = borel.build_sentence(iota, n, args.kind)
        m = borel.BorModel(_prefix(args.prefix), iota)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _out(f"sentence: {print_formula(phi)}")
    verdict = borel.check_membership(m, phi, args.cutoff, _budget(args))
    _out(f"verdict: {verdict}")
    return VERDICT_EXIT[verdict]


def cmd_props(args) -> int:
    suites = list(props.SUITES) if args.suite == "all" else [args.suite]
    status = OK
    for i, name in enumerate(suites):
        if i:
            _out()
        report = props.run_props(name, args.cases, args.seed)
        for line in report.lines():
            _out(line)
        if not report.ok:
            status = FAILED
    return status


def cmd_gen(args) -> int:
    sig = _signature(args)
    try:
        cfg = GeneratorConfig(seed=args.seed, max_depth=args.max_depth, max_numeral=args.max_numeral)
        for i in range(args.cases):
            g = TermGenerator(cfg, sig, case_rng("gen", args.seed, i))
            if args.kind == "term":
                _out(print_term(g.term()))
            elif args.kind == "formula":
                _out(print_formula(g.formula()))
            else:
                _out(print_formula(g.uqf_formula()))
    except (ValueError, IndexError) as e:
        raise UsageError(f"cannot generate over this signature: {e}") from None
    return OK


FALLACY_SUM = "S(x(0) ...x x(100))"
FALLACY_SQUARES = "S(*(x, x)(0) ...x *(x, x)(10))"


def cmd_fallacy(args) -> int:
    """Equal endpoints do not make equal ellipsis terms."""
    m = standard_model()
    s = Assignment()
    total = interp(parse_term(FALLACY_SUM), m, s)
    squares = interp(parse_term(FALLACY_SQUARES), m, s)
    _out(f"{FALLACY_SUM} = {total}")
    _out("endpoints: 0 = *(0, 0) and 100 = *(10, 10)")
    _out(f"rewriting the displayed endpoints gives {FALLACY_SQUARES} = {squares}")
    if total == squares:
        _out("error: the two sums agree")
        return FAILED
    _out(f"{total} != {squares}: the body x and the bound are parts of the term, not its endpoints")
    return OK


def _budget_flags(p):
    p.add_argument("--width", type=int, default=DEFAULT_WIDTH, help="max ellipsis width")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="max evaluation steps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="variadic", description="First-order logic with variadic symbols and ellipsis terms.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a term or decide a formula")
    p.add_argument("input", nargs="?", help="term or formula (default: stdin)")
    p.add_argument("--sig", help="signature file (default: the standard signature)")
    p.add_argument("--assign", help="assignment, e.g. x=3,y=5 (unlisted variables are 0)")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="search limit for unbounded quantifiers")
    p.add_argument("--mode", choices=("kernel", "syntactic", "semantic"), default="kernel")
    _budget_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("subst", help="substitute a term for a variable")
    p.add_argument("target", nargs="?", help="term or formula (default: stdin)")
    p.add_argument("--var", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--sig")
    p.set_defaults(func=cmd_subst)

    p = sub.add_parser("qelim", help="eliminate bounded quantifiers")
    p.add_argument("formula", nargs="?", help="uqf formula (default: stdin)")
    p.add_argument("--sig")
    p.add_argument("--verify", action="store_true", help="brute-force check the result")
    p.add_argument("--values", type=int, default=6, help="largest variable value tried by --verify")
    _budget_flags(p)
    p.set_defaults(func=cmd_qelim)

    p = sub.add_parser("borel", help="check a sequence prefix against a defining sentence")
    p.add_argument("--iota", required=True, help="iota table file")
    p.add_argument("--n", type=int, help="arity (default: from the table)")
    p.add_argument("--kind", choices=("sigma", "pi"), default="sigma")
    p.add_argument("--prefix", required=True, help="known values of f, e.g. 1,2,7")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    _budget_flags(p)
    p.set_defaults(func=cmd_borel)

    p = sub.add_parser("props", help="run a property suite")
    p.add_argument("suite", choices=(*props.SUITES, "all"))
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("gen", help="print random terms or formulas")
    p.add_argument("--kind", choices=("term", "formula", "uqf"), default="term")
    p.add_argument("--cases", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--max-numeral", type=int, default=5)
    p.add_argument("--sig")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fallacy", help="show why 5050 = 385 does not follow")
    p.set_defaults(func=cmd_fallacy)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return USAGE
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE
    except BudgetExceeded as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return BUDGET


if __name__ == "__main__":
    sys.exit(main())
