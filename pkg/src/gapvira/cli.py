"""Command-line front end; every verb prints one JSON document on stdout.

Exit codes: 0 success, 1 domain or input error, 2 a verification check failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Sequence

from .lie import Algebra, AlgebraError, bracket
from .pbw import normal_form
from . import suites as S
from .textio import (TextError, dumps, element_json, parse_assignments, parse_element, parse_scalar,
                     parse_word, scalar_from_json, uea_json, vector_from_json, vector_json)
from .modules.engine import ModuleError
from .modules.ind import ReductionError, reduce_to_base
from .modules.truncation import extract_category_N
from .modules.verma import VacuumNpModule, VermaModule, graded_dim_enumeration, graded_dim_generating, singular_vectors
from .constructions.pullback import VirasoroPullback, VirasoroVerma
from .constructions.qmod import QSpec, consistency_violations, induced_q, validate_qspec
from .constructions.rmod import RSpec, induced_r
from .constructions.whittaker import WhittakerModule, WhittakerType, check_whittaker_iso


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# spec documents -------------------------------------------------------------

def load_json(text: str) -> Any:
    """Inline JSON, or the contents of the file it names."""
    src = text.strip()
    if not src.startswith(("{", "[")):
        with open(text, encoding="utf-8") as fh:
            src = fh.read()
    return json.loads(src)


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise UsageError(f"floating-point value {x!r}; use an integer or an 'a/b' string")
    return Fraction(x)


def load_spec(args, required: tuple[str, ...]) -> dict:
    """The --spec document, with p taken from --p when the document omits it."""
    obj = load_json(need(args, "spec"))
    if not isinstance(obj, dict):
        raise UsageError("--spec must be a JSON object")
    if "p" not in obj and args.p is not None:
        obj = {"p": args.p, **obj}
    missing = [k for k in ("p",) + required if k not in obj]
    if missing:
        raise UsageError("--spec is missing " + ", ".join(missing))
    return obj


def rspec_from_json(obj: dict) -> RSpec:
    p = int(obj["p"])
    return RSpec(p, tuple(obj["d"]),
                 {int(i): scalar_from_json(c, p) for i, c in obj.get("theta", {}).items()},
                 {int(i): scalar_from_json(c, p) for i, c in obj.get("eta", {}).items()},
                 _rational(obj.get("l0", 0)))


def qspec_from_json(obj: dict) -> QSpec:
    p = int(obj["p"])
    theta = {}
    for key, c in obj.get("theta", {}).items():
        i, j = (int(t) for t in key.split(","))
        theta[(i, j)] = scalar_from_json(c, p)
    return QSpec(p, int(obj["k"]), tuple(obj["d"]), tuple(frozenset(s) for s in obj["S"]), theta,
                 _rational(obj.get("l0", 0)))


def whittaker_from_text(p: int, text: str, c0=None) -> WhittakerType:
    alg = Algebra(p)
    vals: dict = {}
    cval = Fraction(0) if c0 is None else c0
    for g, c in parse_assignments(text, alg).items():
        if g.kind == "C":
            if g.i:
                raise UsageError("phi(C_i) is fixed to 0 for i >= 1")
            cval = c
        else:
            vals[g.m] = c
    return WhittakerType(p, vals, cval)


def build_module(args) -> Any:
    kind = args.module
    if kind == "verma":
        return VermaModule(need(args, "p"), args.l0 or 0, args.h or 0)
    if kind == "vacuum":
        return VacuumNpModule(need(args, "p"), args.l0 or 0)
    if kind == "ind-r":
        return induced_r(rspec_from_json(load_spec(args, ("d",))))
    if kind == "ind-q":
        return induced_q(qspec_from_json(load_spec(args, ("k", "d", "S"))))
    if kind == "whittaker":
        return WhittakerModule(whittaker_from_text(need(args, "p"), need(args, "phi")))
    if kind == "pullback":
        return VirasoroPullback(VirasoroVerma(need(args, "p"), args.l0 or 0, args.h or 0))
    raise UsageError(f"unknown module {kind!r}")


def need(args, name: str):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return v


def algebra(args) -> Algebra:
    return Algebra(need(args, "p"), args.family)


# verbs -----------------------------------------------------------------------

def cmd_bracket(args):
    alg = algebra(args)
    x, y = parse_element(args.x, alg), parse_element(args.y, alg)
    z = bracket(x, y)
    return {"inputs": {"p": alg.p, "family": alg.family, "x": str(x), "y": str(y)},
            "result": str(z), "json": element_json(z)}


def cmd_normal_form(args):
    alg = algebra(args)
    word = parse_word(args.word, alg)
    u = normal_form(word, alg)
    return {"inputs": {"p": alg.p, "family": alg.family, "word": [str(g) for g in word]},
            "result": str(u), "json": uea_json(u)}


def cmd_act(args):
    M = build_module(args)
    x = parse_element(args.element, M.algebra)
    v = vector_from_json(M, load_json(args.vector)) if args.vector else M.cyclic()
    w = M.act(x, v)
    return {"inputs": {"module": M.name, "element": str(x), "vector": vector_json(M, v)},
            "result": vector_json(M, w)}


def cmd_graded_dim(args):
    p = need(args, "p")
    upto = parse_scalar(args.upto)
    fn = graded_dim_generating if args.backend == "generating" else graded_dim_enumeration
    return {"inputs": {"p": p, "upto": upto, "backend": args.backend}, "result": fn(p, upto)}


def cmd_singular(args):
    p = need(args, "p")
    M = VermaModule(p, args.l0 or 0, args.h or 0)
    grade = parse_scalar(need(args, "grade"))
    sols = singular_vectors(M, grade)
    return {"inputs": {"p": p, "l0": M.l0, "h": M.h, "grade": grade},
            "result": {"dimension": len(sols), "basis": [vector_json(M, v) for v in sols]}}


def cmd_reduce(args):
    if args.module not in ("ind-r", "ind-q"):
        raise UsageError("reduce works on --module ind-r or ind-q")
    M = build_module(args)
    v = vector_from_json(M, load_json(need(args, "vector")))
    tr = reduce_to_base(M, v, strict=args.strict)
    steps = [{"case": s.case, "operator": str(s.operator), "before": list(s.degree_before),
              "after": list(s.degree_after)} for s in tr.steps]
    return {"inputs": {"module": M.name, "vector": vector_json(M, v), "strict": args.strict},
            "result": {"base_vector": tr.result, "steps": steps, "off_prediction": tr.off_prediction,
                       "fallbacks": tr.fallbacks}}


def _suite_kwargs(name: str, args) -> dict:
    kw: dict = {}
    p, window = args.p, args.window
    if name in ("lie", "rescaled", "sigma", "pbw", "formal", "characters", "singular", "reduction") and p:
        kw["ps"] = (p,)
    if name in ("lie", "rescaled", "sigma", "formal") and window is not None:
        kw["window"] = window
    if name == "characters" and window is not None:
        kw["upto"] = window
    if name == "formal" and args.l0 is not None:
        kw["levels"] = (args.l0,)
    if name in ("pbw", "reduction", "axioms", "restricted") and args.seed is not None:
        kw["seed"] = args.seed
    return kw


def _run_suite(job: tuple[str, dict]) -> dict:
    name, kw = job
    return S.SUITES[name](**kw).as_dict()


def cmd_verify(args):
    names = list(S.SUITES) if args.suite == "all" else [ALIASES.get(args.suite, args.suite)]
    for n in names:
        if n not in S.SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from all, {', '.join(sorted(set(S.SUITES) | set(ALIASES)))}")
    if args.suite == "all" and args.p and args.p not in (2, 3):
        names = [n for n in names if n != "reduction"]
    jobs = [(n, _suite_kwargs(n, args)) for n in names]
    if args.jobs and args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_run_suite, jobs))
    else:
        reports = [_run_suite(j) for j in jobs]
    reports.sort(key=lambda r: r["suite"])
    ok = all(r["passed"] for r in reports)
    out = {"inputs": {"suite": args.suite, "p": args.p, "window": args.window},
           "result": {"passed": ok, "suites": reports}}
    return out, (0 if ok else 2)


ALIASES = {"jacobi": "lie", "dictionary": "formal", "category-n": "category"}


def cmd_whittaker_check(args):
    phi = whittaker_from_text(need(args, "p"), need(args, "phi"), args.c0)
    report = check_whittaker_iso(phi, args.window if args.window is not None else 3)
    mod = WhittakerModule(phi)
    return {"inputs": {"p": phi.p, "phi": {f"L[{m}]": c for m, c in sorted(phi.values.items())},
                       "c0": phi.c0, "module": mod.name}, "result": report}


def cmd_qmod(args):
    obj = load_spec(args, ("k", "d", "S"))
    spec = qspec_from_json(obj)
    bad = validate_qspec(spec)
    cons = [] if bad else [f"[{a},{b}] -> {g} ({why})" for a, b, g, why in consistency_violations(spec)]
    return {"inputs": {"spec": obj}, "result": {"valid": not bad and not cons, "violations": bad,
                                                 "consistency": cons}}


def cmd_extract_n(args):
    M = build_module(args)
    deg = args.degree if args.degree is not None else 3
    bound = args.bound if args.bound is not None else 4 * M.algebra.p
    ex = extract_category_N(M, deg, bound)
    return {"inputs": {"module": M.name, "degree": deg, "bound": bound},
            "result": {"found": ex.found, "r": ex.r, "dimension": len(ex.basis), "minimal": ex.minimal_checked,
                       "injective": ex.injective, "basis": [vector_json(M, v) for v in ex.basis],
                       "evaluations": ex.evaluations}}


VERBS = {
    "bracket": cmd_bracket, "normal-form": cmd_normal_form, "act": cmd_act, "graded-dim": cmd_graded_dim,
    "singular": cmd_singular, "reduce": cmd_reduce, "verify": cmd_verify,
    "whittaker-check": cmd_whittaker_check, "qmod": cmd_qmod, "extract-n": cmd_extract_n,
}


# argument parsing ---------------------------------------------------------------

def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--family", choices=["gap", "np"], default="gap")
    common.add_argument("--l0", type=_frac)
    common.add_argument("--pretty", action="store_true", help="indented output")
    common.add_argument("--config", help="JSON file with default p, l0, d")

    mod = _Parser(add_help=False)
    mod.add_argument("--module", choices=["verma", "vacuum", "ind-r", "ind-q", "whittaker", "pullback"])
    mod.add_argument("--spec", help="RSpec/QSpec JSON, inline or a file name")
    mod.add_argument("--h", type=_frac)
    mod.add_argument("--phi")

    ap = _Parser(prog="gapvira", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    s = sub.add_parser("bracket", parents=[common])
    s.add_argument("x")
    s.add_argument("y")
    s = sub.add_parser("normal-form", parents=[common])
    s.add_argument("word")
    s = sub.add_parser("act", parents=[common, mod])
    s.add_argument("element")
    s.add_argument("--vector", help="module vector JSON (default: the cyclic vector)")
    s = sub.add_parser("graded-dim", parents=[common])
    s.add_argument("--upto", required=True)
    s.add_argument("--backend", choices=["enumeration", "generating"], default="enumeration")
    s = sub.add_parser("singular", parents=[common, mod])
    s.add_argument("--grade")
    s = sub.add_parser("reduce", parents=[common, mod])
    s.add_argument("--vector")
    s.add_argument("--strict", action="store_true", help="require the predicted degree at every step")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("suite", help="all or one of: " + ", ".join(sorted(set(S.SUITES) | set(ALIASES))))
    s.add_argument("--window", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s = sub.add_parser("whittaker-check", parents=[common])
    s.add_argument("--phi")
    s.add_argument("--c0", type=_frac)
    s.add_argument("--window", type=int)
    s = sub.add_parser("qmod", parents=[common, mod])
    s.add_argument("action", choices=["validate"])
    s = sub.add_parser("extract-n", parents=[common, mod])
    s.add_argument("--degree", type=int)
    s.add_argument("--bound", type=int)
    return ap


def apply_config(args) -> None:
    path = args.config or os.environ.get("GAPVIRA_CONFIG")
    if not path:
        return
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if args.p is None and "p" in cfg:
        args.p = int(cfg["p"])
    if args.l0 is None and "l0" in cfg:
        args.l0 = _rational(cfg["l0"])
    if "d" in cfg and getattr(args, "spec", None) is None and getattr(args, "module", None) == "ind-r":
        d = list(cfg["d"])
        p = args.p or len(d) + 1
        args.spec = json.dumps({"p": p, "d": d, "theta": cfg.get("theta", {}), "eta": cfg.get("eta", {}),
                                "l0": str(args.l0 or 0)})


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as e:
        sys.stdout.write(dumps({"error": "UsageError", "detail": str(e)}) + "\n")
        return 1
    pretty = args.pretty
    try:
        apply_config(args)
        out = VERBS[args.verb](args)
        code = 0
        if isinstance(out, tuple):
            out, code = out
        doc = {"verb": args.verb, **out}
    except (UsageError, TextError, AlgebraError, ModuleError, ReductionError, ValueError, KeyError,
            OSError, json.JSONDecodeError) as e:
        doc = {"verb": args.verb, "error": type(e).__name__, "detail": str(e)}
        code = 1
    sys.stdout.write(dumps(doc, pretty) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
