"""``heu`` command line: JSON in, JSON out, deterministic exit codes.

Exit 0 on success, 1 when a property or axiom fails (the report carries the
certificate), 2 on malformed input.
"""

import argparse
import random
import sys
import warnings
from dataclasses import dataclass

from . import io
from .analysis import (
    VARIANTS,
    better_reasoner,
    conditional_heu,
    hedging_check,
    heu_value,
    is_concave,
    is_convex,
    prop4_equivalence,
)
from .core import format_rational, mask_to_string
from .elicitation import (
    check_modularity,
    implication_from_capacity,
    recover_representation,
    verify_representation,
)
from .errors import HEUError, InputError, MalformedDocument
from .implication import check_axioms, interpretation_from_relation
from .interpretation import (
    check_properties,
    classify,
    complete_to_coherent,
    derive_implication,
    enumerate_coherent,
    enumerate_weakly_coherent,
    exhaustive_cap,
)
from .scenarios import SCENARIOS
from .theorems import random_act, run_all

MAX_SNAP = 10**6


@dataclass
class CommandResult:
    exit_code: int
    report: dict
    text: str = None
    out: str = None

    def render(self):
        return self.text if self.text is not None else io.dumps(self.report)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedDocument(f"{self.prog}: {message}")


# --- input helpers ---------------------------------------------------------------

def _read(path):
    if path in (None, "-"):
        return io.loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from exc


def _doc(args, name="input"):
    path = getattr(args, name, None) or args.inp
    if path is None and name != "input":
        raise MalformedDocument(f"--{name.replace('_', '-')} or --in is required")
    return _read(path)


def _snap(args):
    if args.snap is not None and not 1 <= args.snap <= MAX_SNAP:
        raise InputError(f"--snap must be between 1 and {MAX_SNAP}")
    return args.snap


def _checks(report, n):
    return {k: {"holds": c.holds, "witness": io.to_jsonable(c.witness, n)}
            for k, c in report.as_dict().items()}


# --- commands -------------------------------------------------------------------

def cmd_check_pi(args):
    pi = io.parse_interpretation(_doc(args))
    rep = check_properties(pi)
    report = {"properties": _checks(rep, pi.n), "class": classify(pi),
              "coherent": rep.coherent, "weakly_coherent": rep.weakly_coherent,
              "dual_coherent": rep.dual_coherent}
    core = ("truth", "introspection", "monotone", "consistency", "distribution")
    ok = all(getattr(rep, k).holds for k in core)
    return CommandResult(0 if ok else 1, report)


def cmd_classify(args):
    pi = io.parse_interpretation(_doc(args))
    return CommandResult(0, {"class": classify(pi)})


def cmd_derive_implication(args):
    pi = io.parse_interpretation(_doc(args))
    return CommandResult(0, io.relation_doc(derive_implication(pi)))


def cmd_check_relation(args):
    rel = io.parse_relation(_doc(args))
    rep = check_axioms(rel)
    report = {"axioms": _checks(rep, rel.n), "all": rep.all, "weak": rep.weak}
    return CommandResult(0 if rep.all else 1, report)


def cmd_build_pi(args):
    doc = _doc(args)
    if "pairs" in doc:
        pi = interpretation_from_relation(io.parse_relation(doc))
    elif "generators" in doc:
        pi = io.parse_interpretation(doc)
    elif "constraints" in doc:
        cons, space = io.parse_constraints(doc)
        pi = complete_to_coherent(cons, space)
    else:
        raise MalformedDocument("expected 'pairs', 'generators' or 'constraints'")
    report = io.interpretation_doc(pi)
    report["class"] = classify(pi) if pi.n <= 12 else "coherent"
    return CommandResult(0, report)


def cmd_elicit(args):
    nu = io.parse_capacity(_doc(args, "capacity"), _snap(args))
    rep = recover_representation(nu)
    report = io.representation_doc(rep)
    report["verified"] = verify_representation(nu, rep).ok
    return CommandResult(0, report)


def _pi_mu(args):
    if args.rep:
        return io.parse_representation(_read(args.rep))
    if args.pi and args.mu:
        return io.parse_interpretation(_read(args.pi)), io.parse_measure(_read(args.mu))
    if args.inp:
        return io.parse_representation(_read(args.inp))
    raise MalformedDocument("give --rep, or --pi with --mu")


def cmd_value(args):
    pi, mu = _pi_mu(args)
    f = io.parse_act(_read(args.act))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        v = heu_value(f, mu, pi)
    report = {"value": format_rational(v)}
    if caught:
        report["warning"] = str(caught[0].message)
    return CommandResult(0, report)


def cmd_conditional(args):
    pi, mu = _pi_mu(args)
    h = io.parse_mask_arg(args.hypothesis, pi.space)
    o = io.parse_mask_arg(args.observed, pi.space)
    v = conditional_heu(h, o, mu, pi, variant=args.variant)
    return CommandResult(0, {"value": format_rational(v), "variant": args.variant,
                             "hypothesis": mask_to_string(h, pi.n),
                             "observed": mask_to_string(o, pi.n)})


def cmd_compare(args):
    p1 = io.parse_interpretation(_read(args.pi1))
    p2 = io.parse_interpretation(_read(args.pi2))
    res = better_reasoner(p1, p2)
    report = {"verdict": res.verdict,
              "witness": None if res.witness is None else mask_to_string(res.witness, p1.n),
              "fewer_implications": prop4_equivalence(p1, p2)}
    return CommandResult(0, report)


def cmd_diagnose(args):
    nu = io.parse_capacity(_doc(args, "capacity"), _snap(args))
    n = nu.n
    concave, convex, mod = is_concave(nu), is_convex(nu), check_modularity(nu)
    report = {
        "concave": {"holds": concave.holds, "witness": io.to_jsonable(concave.witness, n)},
        "convex": {"holds": convex.holds, "witness": io.to_jsonable(convex.witness, n)},
        "modular": {"holds": mod.holds, "witness": io.to_jsonable(mod.witness, n)},
        "revealed_axioms": _checks(check_axioms(implication_from_capacity(nu)), n),
    }
    try:
        rep = recover_representation(nu)
    except HEUError as exc:
        report["representation"] = {"found": False, "error": type(exc).__name__,
                                     "witness": io.to_jsonable(exc.witness, n)}
    else:
        rng = random.Random(args.seed)
        bad = None
        for _ in range(args.trials):
            f, g = random_act(rng, n), random_act(rng, n)
            if not hedging_check(rep.mu, rep.pi, f, g).aversion:
                bad = [io.act_doc(f)["payoffs"], io.act_doc(g)["payoffs"]]
                break
        report["representation"] = {"found": True}
        report["hedging"] = {"trials": args.trials, "aversion_holds": bad is None,
                             "witness": bad}
    return CommandResult(0, report)


def cmd_scenario(args):
    params = _read(args.params) if args.params else {}
    build = SCENARIOS[args.name]
    try:
        sc = build(**_scenario_kwargs(args.name, params))
    except TypeError as exc:
        raise MalformedDocument(f"bad scenario parameters: {exc}") from exc
    report = {
        "name": sc.name,
        "states": list(sc.space.labels),
        "mu": io.measure_doc(sc.mu),
        "pi_behavioral": io.interpretation_doc(sc.pi_behavioral, prefer_generators=True)
        if sc.pi_behavioral.generators is not None else io.interpretation_doc(sc.pi_behavioral),
        "classification": sc.classification,
        "named_events": {k: mask_to_string(v, sc.space.n) for k, v in sc.named_events.items()},
        "headline": [{"description": r.description, "computed": format_rational(r.computed),
                      "expected": format_rational(r.expected), "ok": r.ok} for r in sc.headline],
        "variants": [{"description": d, "value": format_rational(v)} for d, v in sc.variants],
        "notes": list(sc.notes),
        "ok": sc.ok,
    }
    text = sc.table() + "\n" if args.format == "text" else None
    return CommandResult(0 if sc.ok else 1, report, text)


def _scenario_kwargs(name, params):
    if name == "disclosure":
        return {k: params[k] for k in ("n", "beta") if k in params}
    if name == "winners-curse":
        keys = ("values", "signals", "weights", "bid", "signal")
        return {k: params[k] for k in keys if k in params}
    if params:
        raise MalformedDocument(f"scenario {name} takes no parameters")
    return {}


def cmd_enumerate(args):
    gen = enumerate_coherent if args.kind == "coherent" else enumerate_weakly_coherent
    maps = list(gen(args.n))
    report = {"kind": args.kind, "n": args.n, "count": len(maps)}
    if not args.count_only:
        report["tables"] = [[mask_to_string(x, args.n) for x in pi.table] for pi in maps]
    return CommandResult(0, report)


def cmd_verify_theorems(args):
    if not 1 <= args.n <= exhaustive_cap():
        raise InputError(f"--n must be between 1 and {exhaustive_cap()} (see HEU_MAX_N)")
    results = run_all(args.n, seed=args.seed, quick=args.quick)
    report = {"n": args.n, "results": [
        {"name": r.name, "passed": r.passed, "instances": r.instances,
         "detail": None if r.passed else str(r.detail)} for r in results]}
    text = "\n".join(r.line() for r in results) + "\n"
    ok = all(r.passed for r in results)
    return CommandResult(0 if ok else 1, report, text if args.format == "text" else None)


# --- parser ------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="heu", description="Hypothetical expected utility toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, helptext):
        sp = sub.add_parser(name, help=helptext, description=helptext)
        sp.add_argument("--in", dest="inp", metavar="PATH", help="input JSON (default stdin)")
        sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    add("check-pi", cmd_check_pi, "Check truth, introspection, monotonicity, consistency, distribution.")
    add("classify", cmd_classify, "Classify an interpretation.")
    add("derive-implication", cmd_derive_implication, "Implication relation of an interpretation.")
    add("check-relation", cmd_check_relation, "Check the four implication axioms.")
    add("build-pi", cmd_build_pi, "Interpretation from a relation, generators or constraints.")

    sp = add("elicit", cmd_elicit, "Recover interpretation and measure from a capacity.")
    sp.add_argument("--capacity", metavar="PATH")
    sp.add_argument("--snap", type=int, metavar="DENOM", help="round values to this denominator")

    for name, func, helptext in (("value", cmd_value, "Value an act."),
                                 ("conditional", cmd_conditional, "Conditional evaluation of a bet.")):
        sp = add(name, func, helptext)
        sp.add_argument("--rep", metavar="PATH", help="representation JSON (pi and mu)")
        sp.add_argument("--pi", metavar="PATH")
        sp.add_argument("--mu", metavar="PATH")
        if name == "value":
            sp.add_argument("--act", metavar="PATH", required=True)
        else:
            mask_help = "mask string or labels, comma- or semicolon-separated"
            sp.add_argument("--hypothesis", required=True, help=mask_help)
            sp.add_argument("--observed", required=True, help=mask_help)
            sp.add_argument("--variant", choices=VARIANTS, default="interpreted")

    sp = add("compare", cmd_compare, "Compare two coherent interpretations.")
    sp.add_argument("--pi1", metavar="PATH", required=True)
    sp.add_argument("--pi2", metavar="PATH", required=True)

    sp = add("diagnose", cmd_diagnose, "Concavity, modularity and hedging spot checks.")
    sp.add_argument("--capacity", metavar="PATH")
    sp.add_argument("--snap", type=int, metavar="DENOM")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("scenario", cmd_scenario, "Run a worked example.")
    sp.add_argument("name", choices=sorted(SCENARIOS))
    sp.add_argument("--params", metavar="PATH")
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = add("enumerate", cmd_enumerate, "List every coherent or weakly coherent map.")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--kind", choices=("coherent", "weakly-coherent"), default="coherent")
    sp.add_argument("--count-only", action="store_true")

    sp = add("verify-theorems", cmd_verify_theorems, "Run the exhaustive theorem harness.")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--quick", action="store_true", help="fewer random trials")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    return p


def dispatch(argv):
    """Run one command; never raises for bad input."""
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except SystemExit as exc:  # --help already printed
        return CommandResult(exc.code or 0, {}, text="")
    except InputError as exc:
        return CommandResult(2, _error(exc))
    except HEUError as exc:
        return CommandResult(1, _error(exc))
    except (KeyError, TypeError, ValueError, OverflowError) as exc:
        return CommandResult(2, {"error": "MalformedDocument", "message": str(exc)})
    result.out = getattr(args, "out", None)
    return result


def _error(exc):
    report = {"error": type(exc).__name__, "message": str(exc)}
    if exc.witness is not None:
        report["witness"] = io.to_jsonable(exc.witness)
    if getattr(exc, "axiom", None):
        report["axiom"] = exc.axiom
    return report


def main(argv=None):
    result = dispatch(sys.argv[1:] if argv is None else argv)
    out = result.render()
    if result.out:
        try:
            with open(result.out, "w", encoding="utf-8") as fh:
                fh.write(out)
        except OSError as exc:
            sys.stderr.write(f"heu: cannot write {result.out}: {exc.strerror}\n")
            return 2
    else:
        sys.stdout.write(out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
