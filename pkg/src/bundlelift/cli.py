"""Command-line interface: ``bundlelift <subcommand> ...``.

Every subcommand prints one report, JSON by default (``--format text`` for
an aligned table).  Exit codes: 0 Yes/ok, 1 No or failed checks,
2 AmbiguousSign, 3 invalid input.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .diagrams import (
    Cp2So3LiftDiagram,
    FixedPointDiagram,
    RepDecomposition,
    SuspensionDiagram,
    check_consistency,
    cp2_so3_invariants,
    enumerate_decompositions,
    fixed_point_invariants,
    m_value,
    spin_cover,
    suspension_invariants,
)
from .errors import BundleLiftError
from .invariants import (
    INFINITE,
    BundleInvariants,
    h4_order,
    pair_from_so4,
    stabilize,
    table_a,
    validate,
)
from .lift import Action, ActionKind, Answer, achievable_suspension_p1, decide_lift, torus_reduction
from .manifolds import CP2, S4, BaseManifold, get_manifold, residue_mod4, square
from .oracles import cokernel_order, mv_h4_cp2_so3, mv_h4_fixpoint, smith_normal_form

EXIT_OK, EXIT_NO, EXIT_AMBIGUOUS, EXIT_INVALID = 0, 1, 2, 3
_EXIT_FOR = {Answer.YES: EXIT_OK, Answer.NO: EXIT_NO, Answer.AMBIGUOUS: EXIT_AMBIGUOUS}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _order(x):
    return "infinite" if x == INFINITE else int(x)


def _int_list(text: str) -> list[int]:
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from None


def _add_bundle_args(p):
    p.add_argument("--manifold", "-m", help='"S4", "CP2", "S2xS2", "CP2+CP2" or "CP2-CP2"')
    p.add_argument("--k", type=int, help="structure group SO(k)")
    p.add_argument("--w2", help='bits, e.g. "0,1" (or "1" when b2 = 1)')
    p.add_argument("--p1", type=int)
    p.add_argument("--e", help="Euler number (k = 4) or Euler class (k = 2)")
    p.add_argument("--w4", type=int, choices=(0, 1))
    p.add_argument("--bundle", help='JSON bundle, e.g. \'{"k":4,"w2":[0],"p1":8,"e":2}\'')


def _bundle_from_args(M: BaseManifold, args) -> BundleInvariants:
    if args.bundle:
        try:
            data = json.loads(args.bundle)
            return BundleInvariants.from_json(data)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad --bundle JSON: {exc}") from None
    if args.k is None:
        raise UsageError("--k is required")
    k = args.k
    euler = None
    if args.e is not None:
        vals = _int_list(args.e)
        if k == 2:
            euler = tuple(vals)
        elif len(vals) == 1:
            euler = vals[0]
        else:
            raise UsageError("--e must be a single integer unless k = 2")
    p1 = args.p1
    if k == 2 and euler is not None and p1 is None:
        p1 = square(M, euler)
    if p1 is None:
        raise UsageError("--p1 is required")

    if args.w2 is not None:
        w2 = tuple(_int_list(args.w2))
    elif M.b2 == 0:
        w2 = ()
    elif k == 2 and euler is not None:
        w2 = tuple(x % 2 for x in euler)
    elif k >= 5 and M is CP2:
        w2 = (table_a(p1)[0],)
    elif M.b2 == 1 and k in (3, 4):
        shift = 2 * euler if (k == 4 and isinstance(euler, int)) else 0
        r = (p1 + shift) % 4
        if r not in (0, 1):
            raise UsageError(f"no w2 is compatible with p1 = {p1}")
        w2 = (r,)
    else:
        raise UsageError("--w2 is required for this manifold")

    w4 = args.w4
    if k >= 5 and w4 is None:
        if M in (S4, CP2):
            w4 = table_a(p1)[1]
        else:
            raise UsageError("--w4 is required for k >= 5 over this manifold")
    return BundleInvariants(k, w2, p1, euler=euler, w4=w4)


def _manifold(name: Optional[str], default: Optional[BaseManifold] = None) -> BaseManifold:
    if name is None:
        if default is None:
            raise UsageError("--manifold is required")
        return default
    try:
        return get_manifold(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


# ---------------------------------------------------------------------------
# subcommands; each returns (report, exit code)

def cmd_classify(args):
    M = _manifold(args.manifold)
    B = _bundle_from_args(M, args)
    problems = validate(M, B)
    rep = {"command": "classify", "manifold": M.name, "bundle": B.to_json(),
           "valid": not problems, "violations": problems}
    if B.k >= 5 and M in (S4, CP2):
        w2b, w4b = table_a(B.p1)
        rep["table_a"] = {"w2_nonzero": w2b, "w4_nonzero": w4b}
    if not problems:
        rep["residue_mod4"] = residue_mod4(M, B.w2)
        if B.k == 3 or B.k >= 5:
            rep["h4_order"] = _order(h4_order(M, B))
        if B.k == 4:
            minus, plus = pair_from_so4(M, B)
            rep["pair"] = {"minus": minus.to_json(), "plus": plus.to_json()}
            rep["stabilized"] = stabilize(M, B).to_json()
    return rep, EXIT_OK if not problems else EXIT_NO


def _action(args) -> Action:
    try:
        return Action.parse(args.action, args.n)
    except BundleLiftError as exc:
        raise UsageError(str(exc)) from None


def cmd_lift(args):
    action = _action(args)
    M = _manifold(args.manifold, action.base)
    B = _bundle_from_args(M, args)
    v = decide_lift(action, M, B)
    rep = {"command": "lift", "action": str(action), "manifold": M.name, "bundle": B.to_json()}
    rep.update(v.to_json())
    return rep, _EXIT_FOR[v.answer]


def cmd_reduce(args):
    M = _manifold(args.manifold)
    B = _bundle_from_args(M, args)
    v = torus_reduction(M, B, max_coord=args.max_coord, use_congruence=not args.search_only)
    rep = {"command": "reduce", "manifold": M.name, "bundle": B.to_json()}
    rep.update(v.to_json())
    return rep, _EXIT_FOR[v.answer]


def cmd_diagram(args):
    rep = {"command": "diagram", "family": args.family}
    if args.family == "cp2-so3":
        if args.pminus is None or args.pplus is None:
            raise UsageError("cp2-so3 needs --pminus and --pplus")
        d = Cp2So3LiftDiagram(args.pminus, args.pplus)
        rep["parameters"] = {"p_minus": d.p_minus, "p_plus": d.p_plus}
        problems = check_consistency(d)
        rep["violations"] = problems
        if problems:
            return rep, EXIT_INVALID
        B = cp2_so3_invariants(d)
        rep["bundle"] = B.to_json()
        rep["p1_set"] = [B.p1]
        rep["h4_order"] = _order(mv_h4_cp2_so3(d.p_minus, d.p_plus))
        if B.spin:
            s = spin_cover(d)
            rep["spin_cover"] = {"p_minus_star": s.p_minus_star, "p_plus_star": s.p_plus_star}
        return rep, EXIT_OK
    if args.k is None:
        raise UsageError(f"{args.family} needs --k")
    if args.family == "fixpoint":
        if args.reps is None or args.q is None:
            raise UsageError("fixpoint needs --reps and --q")
        d = FixedPointDiagram(args.k, RepDecomposition.from_dims(_int_list(args.reps)),
                              tuple(_int_list(args.q)))
        rep["parameters"] = {"k": d.k, "reps": list(d.phi_minus.dims), "q": list(d.q),
                             "m_values": [m_value(r) for r in d.phi_minus.parts]}
        problems = check_consistency(d, primitive_weights=not args.any_weights)
        rep["violations"] = problems
        if problems:
            return rep, EXIT_INVALID
        inv = fixed_point_invariants(d)
        rep["p1_set"] = sorted(inv.p1_set)
        rep["w2_nonzero"] = inv.w2_nonzero
        if inv.anomaly:
            rep["anomaly"] = inv.anomaly
        else:
            rep["h4_order"] = _order(mv_h4_fixpoint(d.k, d.phi_minus, d.q, inv.w2_nonzero))
        rep["sign_determined"] = len(inv.p1_set) <= 1 or d.k == 3
        return rep, EXIT_OK
    if args.reps_minus is None or args.reps_plus is None:
        raise UsageError("suspension needs --reps-minus and --reps-plus")
    d = SuspensionDiagram(args.k, RepDecomposition.from_dims(_int_list(args.reps_minus)),
                          RepDecomposition.from_dims(_int_list(args.reps_plus)))
    rep["parameters"] = {"k": d.k, "reps_minus": list(d.reps_minus.dims),
                         "reps_plus": list(d.reps_plus.dims)}
    problems = check_consistency(d)
    rep["violations"] = problems
    if problems:
        return rep, EXIT_INVALID
    rep["p1_set"] = sorted(suspension_invariants(d))
    return rep, EXIT_OK


def cmd_enumerate(args):
    rep = {"command": "enumerate", "what": args.what}
    if args.what == "decompositions":
        if args.k is None:
            raise UsageError("decompositions needs --k")
        decs = enumerate_decompositions(args.k)
        rep["k"] = args.k
        rep["items"] = [{"reps": list(d.dims), "m_sum": d.m_sum, "label": str(d)} for d in decs]
        return rep, EXIT_OK
    if args.what == "suspension":
        if args.k is None:
            raise UsageError("suspension needs --k")
        rep["k"] = args.k
        rep["items"] = sorted(achievable_suspension_p1(args.k))
        return rep, EXIT_OK
    action = _action(args)
    M = _manifold(args.manifold, action.base)
    k = 3 if args.k is None else args.k
    if k == 4:
        raise UsageError("liftable enumeration lists p1 values, so k = 4 is not supported")
    items = []
    if args.w2 is not None:
        bits = [tuple(_int_list(args.w2))]
    else:
        bits = list(itertools.product((0, 1), repeat=M.b2))
    for w2 in bits:
        for p1 in range(args.p1_min, args.p1_max + 1):
            w4_options = [None] if k < 5 else ([table_a(p1)[1]] if M in (S4, CP2) else [0, 1])
            for w4 in w4_options:
                B = BundleInvariants(k, w2, p1, w4=w4)
                if k == 2 or validate(M, B):
                    continue
                v = decide_lift(action, M, B)
                if v.answer is not Answer.NO:
                    entry = {"w2": list(w2), "p1": p1, "answer": v.answer.value}
                    if w4 is not None:
                        entry["w4"] = w4
                    items.append(entry)
    rep.update({"action": str(action), "manifold": M.name, "k": k, "items": items})
    return rep, EXIT_OK


def cmd_snf(args):
    try:
        A = json.loads(args.matrix)
        A = [[int(x) for x in row] for row in A]
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"--matrix must be a JSON list of integer rows: {exc}") from None
    if not A or any(len(r) != len(A[0]) for r in A):
        raise UsageError("--matrix must be a nonempty rectangular matrix")
    s = smith_normal_form(A)
    rep = {"command": "snf", "matrix": A, "diagonal": list(s.diagonal),
           "D": [list(r) for r in s.D], "U": [list(r) for r in s.U], "V": [list(r) for r in s.V],
           "cokernel_order": _order(cokernel_order(A))}
    return rep, EXIT_OK


def cmd_verify(args):
    from .verify import run_suites
    rep = {"command": "verify", **run_suites(args.suite, args.seed)}
    return rep, EXIT_OK if rep["passed"] else EXIT_NO


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # --format is accepted before or after the subcommand
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    p = _Parser(prog="bundlelift", description=__doc__.splitlines()[0], parents=[fmt])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _sub_add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _sub_add(*a, parents=[fmt], **kw)

    s = sub.add_parser("classify", help="validate characteristic data")
    _add_bundle_args(s)
    s.set_defaults(func=cmd_classify)

    actions = [a.value for a in ActionKind]
    s = sub.add_parser("lift", help="decide whether an action lifts to a bundle")
    s.add_argument("--action", "-a", required=True, choices=actions)
    s.add_argument("--n", type=int, help="Z_n isotropy for the mn family")
    _add_bundle_args(s)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("reduce", help="decide torus reduction")
    _add_bundle_args(s)
    s.add_argument("--max-coord", type=int, help="coordinate bound for the certificate search")
    s.add_argument("--search-only", action="store_true",
                   help="answer from the bounded search alone, skipping the congruence rule")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("diagram", help="invariants of a group diagram")
    s.add_argument("family", choices=("cp2-so3", "fixpoint", "suspension"))
    s.add_argument("--pminus", type=int)
    s.add_argument("--pplus", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--reps", help="irrep dimensions, e.g. 3 or 1,1,1")
    s.add_argument("--q", help="circle weights, e.g. 1 or 1,2")
    s.add_argument("--any-weights", action="store_true",
                   help="accept circle weights with a common factor")
    s.add_argument("--reps-minus")
    s.add_argument("--reps-plus")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("enumerate", help="list liftable bundles, suspension sets or decompositions")
    s.add_argument("what", choices=("liftable", "suspension", "decompositions"))
    s.add_argument("--action", "-a", choices=actions, default="cp2-so3")
    s.add_argument("--n", type=int)
    s.add_argument("--manifold", "-m")
    s.add_argument("--k", type=int)
    s.add_argument("--w2")
    s.add_argument("--p1-min", type=int, default=-20)
    s.add_argument("--p1-max", type=int, default=20)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="run the oracle suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    s.add_argument("--matrix", required=True, help="JSON, e.g. [[2,0],[0,3]]")
    s.set_defaults(func=cmd_snf)
    return p


def render_text(rep: dict) -> str:
    width = max((len(k) for k in rep), default=0)
    lines = []
    for key, val in rep.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val, separators=(", ", ": "))
        lines.append(f"{key.ljust(width)}  {val}")
    return "\n".join(lines)


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        rep, code = args.func(args)
    except (UsageError, BundleLiftError, ValueError) as exc:
        rep, code = {"command": args.command, "error": str(exc)}, EXIT_INVALID
        print(f"bundlelift {args.command}: error: {exc}", file=err)
    if getattr(args, "format", "json") == "text":
        print(render_text(rep), file=out)
    else:
        print(json.dumps(rep, sort_keys=False), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
