"""Command line front end.  Every command prints one JSON report on stdout.

Exit codes: 0 success, 1 validation failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import crossed, equivalence
from .cohomology import cohomology, make_cochain, unit_cochain
from .dsl import Env, eval_text
from .errors import (
    BadDegree, BudgetExceeded, ConditionFailed, DegreeMismatch, DimensionMismatch, DslSyntaxError, FieldMismatch,
    TypeMismatch, UnboundName, ValidationError, WeakHopfError,
)
from .fixtures import standard_contexts
from .hopf import Groupoid, cocommutative_identities, load_weak_hopf, validate_weak_hopf, weak_hopf_identities
from .linalg import FieldSpec
from .modalg import load_module_algebra


class InputError(Exception):
    """Bad file, bad JSON or a reference that cannot be resolved."""


# errors that mean "the request was malformed" rather than "the structure failed a check"
_USAGE_ERRORS = (InputError, DslSyntaxError, UnboundName, TypeMismatch, BudgetExceeded, BadDegree,
                 DegreeMismatch, DimensionMismatch, FieldMismatch)


def _read_json(path):
    if path.startswith("fixture:"):
        name = path[len("fixture:"):]
        try:
            text = resources.files("weakhopf").joinpath("data", f"{name}.json").read_text()
        except FileNotFoundError:
            raise InputError(f"no shipped fixture named {name!r}") from None
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_context(obj, field=None):
    """A module algebra from a context file or {"fixture": name}."""
    if "fixture" in obj:
        makers = standard_contexts()
        if obj["fixture"] not in makers:
            raise InputError(f"unknown fixture {obj['fixture']!r}")
        M = makers[obj["fixture"]]()
        if field is None:
            return M
        obj = M.to_json()
    try:
        return load_module_algebra(obj, field)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed context: missing {exc}") from None


def load_sigma(M, obj, degree=2):
    if obj.get("matrix") == "unit":
        return unit_cochain(M, int(obj.get("degree", degree)))
    if int(obj.get("degree", degree)) != degree:
        raise InputError(f"expected a degree {degree} cochain")
    return make_cochain(M, degree, obj["matrix"])


def _field(args):
    if not args.field:
        return None
    try:
        return FieldSpec.parse(args.field)
    except WeakHopfError as exc:
        raise InputError(str(exc)) from None


# commands

def cmd_check(args):
    obj = _read_json(args.path)
    f = _field(args)
    if "arrows" in obj:
        g = Groupoid.from_json(obj)
        g.check()
        return {"kind": "groupoid", "valid": True, "objects": len(g.objects), "arrows": len(g.arrows)}, 0
    if "phi" in obj or "fixture" in obj:
        M = load_context(obj, f)
        rep = M.report
        out = {"kind": "module-algebra", "valid": M.valid, "level": M.level,
               "cocommutative": M.H.cocommutative, "axioms": rep.results}
        if not M.valid:
            out["failures"] = [k for k in rep.failures if k != "b3-1"]
        return out, 0 if M.valid else 1
    H = load_weak_hopf(obj, f)
    rep = validate_weak_hopf(H)
    out = {"kind": "weak-hopf", "valid": rep.valid, "cocommutative": H.cocommutative, "axioms": rep.results}
    if rep.valid:
        out["identities"] = all(weak_hopf_identities(H).values())
        if H.cocommutative:
            out["identities"] = out["identities"] and all(cocommutative_identities(H).values())
    else:
        out["failures"] = rep.failures
    return out, 0 if rep.valid else 1


def cmd_cohomology(args):
    M = load_context(_read_json(args.ctx), _field(args))
    res = cohomology(M, args.degree, args.budget, not args.full, args.prefilter)
    return res.to_json(), 0


def cmd_crossed(args):
    M = load_context(_read_json(args.ctx), _field(args))
    sigma = load_sigma(M, _read_json(args.sigma))
    try:
        cp = crossed.build_crossed_product(sigma)
    except ConditionFailed as exc:
        return {"valid": False, "failed": exc.label, "detail": str(exc)}, 1
    out = cp.to_json()
    out["valid"] = True
    out["comodule_algebra"] = crossed.comodule_check(cp).valid
    return out, 0


def cmd_equiv(args):
    M = load_context(_read_json(args.ctx), _field(args))
    a = load_sigma(M, _read_json(args.a))
    b = load_sigma(M, _read_json(args.b))
    try:
        g = equivalence.find_equivalence(a, b, args.budget, args.prefilter)
    except ConditionFailed as exc:
        return {"valid": False, "failed": exc.label, "detail": str(exc)}, 1
    out = {"equivalent": g is not None, "gauge": None, "omega": None}
    if g is not None:
        cpa, cpb = crossed.build_crossed_product(a), crossed.build_crossed_product(b)
        out["gauge"] = g.f.mat.to_json()
        out["omega"] = equivalence.build_isomorphism(cpa, cpb, g).mat.to_json()
    return out, 0


def cmd_classify(args):
    M = load_context(_read_json(args.ctx), _field(args))
    rep = equivalence.classify(M, args.budget, args.prefilter)
    return rep.to_json(), 0 if rep.bijection_ok else 1


def cmd_eval(args):
    obj = _read_json(args.env)
    f = _field(args)
    if "gens" in obj:
        env = Env.from_json(obj, field=f)
    else:
        M = load_context(obj, f)
        sigma = load_sigma(M, _read_json(args.sigma)) if args.sigma else None
        env = crossed.context_env(M, sigma)
    mor = eval_text(args.expr, env)
    return {"dom": mor.dom, "cod": mor.cod, "matrix": mor.mat.to_json()}, 0


def build_parser():
    p = argparse.ArgumentParser(prog="weakhopf", description="Weak Hopf algebras, Sweedler cohomology "
                                "and weak crossed products over exact fields.")
    p.add_argument("--field", help="override the field of the input: Q or Fp:<p>")
    p.add_argument("--budget", type=int, default=10**6, help="cap on enumerated candidates")
    p.add_argument("--prefilter", action="store_true", help="enumerate only the linear solution space")
    p.add_argument("--json", action="store_true", help="accepted for scripts; JSON is the only output mode")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate a groupoid, weak Hopf algebra or module algebra")
    s.add_argument("path")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("cohomology", help="H^1 or H^2 by enumeration")
    s.add_argument("ctx")
    s.add_argument("--degree", type=int, choices=(1, 2), default=2)
    s.add_argument("--full", action="store_true", help="use all regular cochains, not only normalized ones")
    s.set_defaults(run=cmd_cohomology)

    s = sub.add_parser("crossed", help="build the crossed product algebra for a 2-cochain")
    s.add_argument("ctx")
    s.add_argument("sigma")
    s.set_defaults(run=cmd_crossed)

    s = sub.add_parser("equiv", help="decide equivalence of two crossed products")
    s.add_argument("ctx")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_equiv)

    s = sub.add_parser("classify", help="classes of crossed products against H^2")
    s.add_argument("ctx")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("eval", help="evaluate a morphism expression")
    s.add_argument("env", help="environment JSON, or a context JSON for the standard names")
    s.add_argument("expr")
    s.add_argument("--sigma", help="2-cochain bound to the name sigma")
    s.set_defaults(run=cmd_eval)
    return p


def _emit(report):
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report, code = args.run(args)
    except _USAGE_ERRORS as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 2
    except ValidationError as exc:
        _emit({"valid": False, "failed": exc.labels})
        return 1
    except ConditionFailed as exc:
        _emit({"valid": False, "failed": exc.label, "detail": str(exc)})
        return 1
    except WeakHopfError as exc:
        _emit({"valid": False, "error": type(exc).__name__, "detail": str(exc)})
        return 1
    _emit(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
