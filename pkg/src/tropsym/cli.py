"""Command-line interface: ``tropsym <command> FILE...``.

Every command prints one canonical JSON document (to stdout or ``--out``)
and a one-line summary on stderr.  Exit codes: 0 ok, 2 usage, 3 input
could not be parsed, 4 domain error, 70 internal failure.

Arguments naming a point, function, divisor, group or cocycle accept either
a file path or an inline JSON document.
"""

from __future__ import annotations

import argparse
import sys
import traceback
from fractions import Fraction
from typing import Any, Callable

from . import generators as gen
from . import io
from .automorphism import enumerate_aut
from .cohomology import (
    check_real_1cocycle,
    coboundary_1D,
    coboundary_1F,
    coboundary_2F,
    coboundary_2R,
    div_1cocycle_witness,
    h90_witness,
    mq_2cocycle_witness,
    real_2cocycle_witness,
)
from .curve import Curve, EdgePoint, VertexPoint, minimal_model
from .divisor import act_on_divisor, degree
from .errors import ParseError, TropsymError
from .fixtures import CIRC12, SEG, STAR3, THETA112, circle_reflection_group, seg_swap_group, symmetric_group, theta_swap_group
from .invariantize import symmetrize_degree0, symmetrize_divisor
from .plfunction import div, evaluate, ord_at, with_mode
from .principal import Certificate, invariant_principal_witness, is_equivalent, solve_principal
from .rational import fmt_rational

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4, 70


class Done(Exception):
    """Carries a successful payload plus its summary line."""


def _doc(arg: str) -> Any:
    text = arg.strip()
    if text[:1] in "{[":
        return io.loads(text)
    return io.load_file(arg)


def _curve(args) -> Curve:
    return io.curve_from_json(_doc(args.curve))


def _function(curve: Curve, args, arg: str):
    f = io.function_from_json(curve, _doc(arg))
    return with_mode(f, args.mode) if args.mode else f


def _jsonable(x: Any) -> Any:
    if isinstance(x, Certificate):
        return io.certificate_to_json(x)
    if isinstance(x, (VertexPoint, EdgePoint)):
        return io.point_to_json(x)
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# -- commands -------------------------------------------------------------------

def cmd_validate(args):
    c = _curve(args)
    m = minimal_model(c).coarse
    payload = {
        "valid": True,
        "vertices": len(c.vertices),
        "edges": len(c.edges),
        "leaves": sum(1 for e in c.edges.values() if e.infinite),
        "minimal": m == c,
        "curve": io.curve_to_json(c),
    }
    return payload, f"valid curve with {len(c.vertices)} vertices and {len(c.edges)} edges"


def cmd_minimal_model(args):
    m = minimal_model(_curve(args)).coarse
    return io.curve_to_json(m), f"minimal model has {len(m.vertices)} vertices and {len(m.edges)} edges"


def cmd_aut(args):
    g = enumerate_aut(_curve(args))
    return {"order": g.order, "elements": io.group_to_json(g)}, f"automorphism group of order {g.order}"


def _group_payload(g):
    return {
        "order": g.order,
        "elements": io.group_to_json(g),
        "table": [list(r) for r in g.table],
        "inverses": list(g.inverses),
        "element_orders": [g.element_order(i) for i in range(g.order)],
    }


def cmd_group_check(args):
    c = _curve(args)
    g = io.group_from_json(c, _doc(args.group))
    return _group_payload(g), f"valid group of order {g.order}"


def cmd_ord(args):
    c = _curve(args)
    f = _function(c, args, args.function)
    p = io.point_from_json(c, _doc(args.point))
    v = ord_at(f, p)
    return {"point": io.point_to_json(p), "ord": fmt_rational(v)}, f"ord = {v}"


def cmd_div(args):
    c = _curve(args)
    d = div(_function(c, args, args.function))
    return io.divisor_to_json(d), f"divisor with {len(d.terms)} terms"


def cmd_eval(args):
    c = _curve(args)
    f = _function(c, args, args.function)
    p = io.point_from_json(c, _doc(args.point))
    v = evaluate(f, p)
    return {"point": io.point_to_json(p), "value": fmt_rational(v)}, f"value = {v}"


def cmd_solve_principal(args):
    c = _curve(args)
    d = io.divisor_from_json(c, _doc(args.divisor))
    f = solve_principal(c, d)
    return {"principal": True, "function": io.function_to_json(f)}, "divisor is principal"


def cmd_equiv(args):
    c = _curve(args)
    d = io.divisor_from_json(c, _doc(args.d))
    e = io.divisor_from_json(c, _doc(args.e))
    r = is_equivalent(c, d, e)
    payload: dict[str, Any] = {"equivalent": r.equivalent}
    if r.witness is not None:
        payload["witness"] = io.function_to_json(r.witness)
    if r.certificate is not None:
        payload["certificate"] = io.certificate_to_json(r.certificate)
    if not r.equivalent and r.certificate is None:
        payload["reason"] = f"degrees differ ({degree(d)} vs {degree(e)})"
    return payload, "equivalent" if r.equivalent else "not equivalent"


def _cocycle(args, kinds: tuple[str, ...]):
    c = _curve(args)
    obj = _doc(args.cocycle)
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind not in kinds:
        raise ParseError(f"expected a cocycle of kind {' or '.join(kinds)}, got {kind!r}")
    return io.cocycle_from_json(c, obj)


def cmd_cocycle_check(args):
    c = _curve(args)
    obj = _doc(args.cocycle)
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind not in io.CHECK_KINDS:
        raise ParseError(f"cocycle kind must be one of {io.CHECK_KINDS}")
    if kind == "1R":
        group = io.group_from_json(c, obj.get("group"))
        values = io.cocycle_values_from_json(c, group, kind, obj.get("values"))
        v = check_real_1cocycle(group, values)
        payload = {"kind": kind, "is_cocycle": v.is_cocycle, "message": v.message}
        if v.relation is not None:
            payload["relation"] = list(v.relation)
            payload["element_order"] = v.element_order
        return payload, ("cocycle" if v.is_cocycle else "not a cocycle: " + v.message)
    phi = io.cocycle_from_json(c, obj)
    return {"kind": kind, "is_cocycle": True, "order": phi.group.order}, f"{kind} cocycle verified"


def cmd_h90(args):
    phi = _cocycle(args, ("1F",))
    f = h90_witness(phi)
    return {"witness": io.function_to_json(f)}, "Hilbert 90 witness found"


def cmd_h2r_witness(args):
    phi = _cocycle(args, ("2R",))
    psi = real_2cocycle_witness(phi)
    return {"psi": io.indexed(psi)}, "2-cocycle is the coboundary of psi"


def cmd_div_cocycle_witness(args):
    phi = _cocycle(args, ("1D",))
    e = div_1cocycle_witness(phi)
    return {"witness": io.divisor_to_json(e)}, "divisor witness found"


def cmd_mq2_witness(args):
    phi = _cocycle(args, ("2F",))
    psi = mq_2cocycle_witness(phi)
    return {"psi": io.indexed(psi)}, "2-cocycle is the coboundary of psi"


def cmd_invariant_witness(args):
    c = _curve(args)
    g = io.group_from_json(c, _doc(args.group))
    e = io.divisor_from_json(c, _doc(args.divisor))
    f = invariant_principal_witness(c, g, e)
    return {"witness": io.function_to_json(f)}, "invariant witness found"


def cmd_symmetrize(args):
    c = _curve(args)
    g = io.group_from_json(c, _doc(args.group))
    d = io.divisor_from_json(c, _doc(args.divisor))
    run = symmetrize_degree0 if args.degree0 else symmetrize_divisor
    r = run(c, g, d)
    return io.report_to_json(r), f"invariant divisor with {len(r.invariant_divisor.terms)} terms"


# -- selftest -------------------------------------------------------------------

def _selftest_cases(seed: int, count: int) -> dict[str, int]:
    r = gen.rng(seed)
    s3, z2, th, refl = symmetric_group(3), seg_swap_group(), theta_swap_group(), circle_reflection_group()
    tally = {"degree": 0, "h90": 0, "h2r": 0, "mq2": 0, "div_cocycle": 0, "symmetrize": 0}
    for _ in range(count):
        for c in (STAR3, THETA112, CIRC12, SEG):
            assert degree(div(gen.function(r, c))) == 0
            tally["degree"] += 1
        for g in (s3, z2, th):
            h90_witness(coboundary_1F(g, gen.function(r, g.curve)))
            tally["h90"] += 1
            psi0 = [Fraction(0)] + gen.scalars(r, g.order - 1)
            assert real_2cocycle_witness(coboundary_2R(g, psi0)) == psi0
            tally["h2r"] += 1
            mq_2cocycle_witness(coboundary_2F(g, [gen.q_function(r, g.curve, 1) for _ in range(g.order)]))
            tally["mq2"] += 1
            div_1cocycle_witness(coboundary_1D(g, gen.divisor(r, g.curve)))
            tally["div_cocycle"] += 1
        for g in (s3, z2, th, refl):
            d = gen.orbit_divisor(r, g) + div(gen.function(r, g.curve))
            d2 = symmetrize_divisor(g.curve, g, d).invariant_divisor
            assert all(act_on_divisor(h, d2) == d2 for h in g.elements)
            tally["symmetrize"] += 1
    return tally


def cmd_selftest(args):
    seed = gen.seed_from_env()
    tally = _selftest_cases(seed, args.count)
    return {"seed": seed, "passed": tally}, f"selftest passed ({sum(tally.values())} checks, seed {seed})"


# -- driver ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropsym", description="Symmetric divisors on abstract tropical curves.")
    p.add_argument("--out", help="write the JSON result here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, *positional: str, mode: bool = False, help: str = ""):
        sp = sub.add_parser(name, help=help)
        for a in positional:
            sp.add_argument(a)
        if mode:
            sp.add_argument("--mode", choices=("Z", "Q"), help="slope lattice for the function input")
        sp.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "curve", help="validate a curve")
    add("minimal-model", cmd_minimal_model, "curve", help="suppress 2-valent vertices")
    add("aut", cmd_aut, "curve", help="enumerate a finite automorphism group")
    add("group-check", cmd_group_check, "curve", "group", help="validate a list of automorphisms as a group")
    add("ord", cmd_ord, "curve", "function", "point", mode=True, help="order of a function at a point")
    add("div", cmd_div, "curve", "function", mode=True, help="divisor of a function")
    add("eval", cmd_eval, "curve", "function", "point", mode=True, help="value of a function at a point")
    add("solve-principal", cmd_solve_principal, "curve", "divisor", help="find f with div f = D")
    add("equiv", cmd_equiv, "curve", "d", "e", help="decide linear equivalence")
    add("cocycle-check", cmd_cocycle_check, "curve", "cocycle", help="verify a cocycle")
    add("h90", cmd_h90, "curve", "cocycle", help="Hilbert 90 witness for a 1-cocycle in M(X)")
    add("h2r-witness", cmd_h2r_witness, "curve", "cocycle", help="primitive of a real 2-cocycle")
    add("div-cocycle-witness", cmd_div_cocycle_witness, "curve", "cocycle", help="primitive of a divisor 1-cocycle")
    add("mq2-witness", cmd_mq2_witness, "curve", "cocycle", help="primitive of a rational-slope 2-cocycle")
    add("invariant-witness", cmd_invariant_witness, "curve", "group", "divisor", help="invariant f for invariant principal D")
    sym = add("symmetrize", cmd_symmetrize, "curve", "group", "divisor", help="invariant representative of an invariant class")
    sym.add_argument("--degree0", action="store_true", help="require and preserve degree 0")
    st = add("selftest", cmd_selftest, help="randomized self-check (seed from TROPSYM_SEED)")
    st.add_argument("--count", type=int, default=5)
    return p


def _emit(doc: dict, out: str | None, stdout) -> None:
    text = io.dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = getattr(args, "out", None)
    if not hasattr(args, "mode"):
        args.mode = None
    try:
        payload, summary = args.func(args)
    except TropsymError as exc:
        err: dict[str, Any] = {"code": exc.code, "message": exc.message}
        details = _jsonable(exc.details)
        if "certificate" in details:
            err["certificate"] = details.pop("certificate")
        if details:
            err["details"] = details
        _emit({"status": "error", "error": err}, out, stdout)
        print(f"tropsym {args.command}: {exc.code}: {exc.message}", file=stderr)
        return exc.exit_code
    except (AssertionError, RecursionError, ArithmeticError, KeyError, TypeError, ValueError) as exc:
        _emit({"status": "error", "error": {"code": "InternalError", "message": f"{type(exc).__name__}: {exc}"}}, out, stdout)
        print(f"tropsym {args.command}: internal error", file=stderr)
        traceback.print_exc(file=stderr)
        return EXIT_INTERNAL
    _emit({"status": "ok", "payload": payload}, out, stdout)
    print(f"tropsym {args.command}: {summary}", file=stderr)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
