"""Command-line front end: ``walk-kernel <command> ...``.

Exit status is 0 on success (any verdict counts as success), 1 when a
verification or reproduction check fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .arith import format_rat, rat
from .classify import (
    DEFAULT_K_MAX,
    DEFAULT_N_MAX,
    DEFAULT_T_SAMPLES,
    classify,
    render_table,
    reproduce_theorem_415,
)
from .curve import group_order_probe, orbit_trace, poles_of_y, trace_to_json
from .kernel import build_kernel, describe
from .model import BUILTIN_DESCRIPTIONS, ModelError, assumptions, check_a1, load_model, phi_transform
from .series import enumerate_walks
from .verify import DEFAULT_ORDER, verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPRODUCE_TARGETS = ("thm4.15",)


class UsageError(Exception):
    pass


def _dump(doc, dest: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if dest in (None, "-"):
        print(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text + "\n")


def _t_list(text: str):
    try:
        return [rat(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --t-samples: {exc}") from None


def cmd_models(args) -> int:
    width = max(map(len, BUILTIN_DESCRIPTIONS))
    for name, text in BUILTIN_DESCRIPTIONS.items():
        print(f"{name:<{width}}  {text}")
    return EXIT_OK


def cmd_info(args) -> int:
    w = load_model(args.model)
    rep = assumptions(w)
    print(f"model {w.label()}")
    print(f"  A1 = {rep.a1}, A2 = {rep.a2} ({rep.diagnostic})")
    print(describe(build_kernel(w, args.t)))
    if rep.a1:
        phi = phi_transform(w)
        print("transformed weights: " + ", ".join(
            f"d_phi{k} = {format_rat(v)}" for k, v in sorted(phi.d.items()) if v
        ))
        print(describe(build_kernel(w, args.t, transformed=True)))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    table = enumerate_walks(load_model(args.model), args.n)
    if args.csv in (None, "-"):
        table.write_csv(sys.stdout)
    else:
        with open(args.csv, "w", newline="") as fh:
            table.write_csv(fh)
    return EXIT_OK


def cmd_verify(args) -> int:
    w = load_model(args.model)
    failed = False
    for res in verify_all(w, args.t, args.order):
        if res.ok:
            print(f"{res.equation}: zero residual up to order {args.order}")
        else:
            failed = True
            n, i, j, c = res.first_offender()
            print(f"{res.equation}: nonzero residual, first term {format_rat(c)} * t^{n} x^{i} y^{j}")
    if not check_a1(w):
        print("sym, octant: skipped (model violates A1)")
    return EXIT_FAIL if failed else EXIT_OK


def _transformed_kernel(args):
    w = load_model(args.model)
    if not check_a1(w):
        raise UsageError("this command works on the transformed curve, which needs A1")
    return build_kernel(w, args.t, transformed=True)


def cmd_orbit(args) -> int:
    k = _transformed_kernel(args)
    poles = poles_of_y(k)
    start = poles.p1 if args.start == "P1" else poles.p2
    if start is None:
        raise UsageError("P2 does not exist: y has a double pole at P1 for this model")
    trace = orbit_trace(k, start, args.steps)
    for n, (name, P) in enumerate(trace):
        marks = [lbl for lbl, Q in (("P1", poles.p1), ("P2", poles.p2)) if Q is not None and Q == P]
        tag = f"   <- {'/'.join(marks)}" if marks and n else ""
        print(f"{n:>3} {name:<8} {P}{tag}")
    if args.json:
        _dump(trace_to_json(trace), args.json)
    return EXIT_OK


def cmd_probe(args) -> int:
    w = load_model(args.model)
    k = build_kernel(w, args.t, transformed=check_a1(w))
    n = group_order_probe(k, args.max)
    if n is None:
        print(f"no closure up to n = {args.max}")
    else:
        print(f"sigma^{n}(Q) = Q: closure at n = {n}")
    return EXIT_OK


def cmd_classify(args) -> int:
    w = load_model(args.model)
    ts = _t_list(args.t_samples) if args.t_samples else DEFAULT_T_SAMPLES
    report = classify(w, ts, args.k_max, args.n_max)
    doc = report.to_json()
    if args.json:
        _dump(doc, args.json)
        print(f"{report.model}: {report.summary()}")
    else:
        _dump(doc, None)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rows = reproduce_theorem_415()
    print(render_table(rows))
    if all(r.ok for r in rows):
        return EXIT_OK
    print("MISMATCH with the expected classification", file=sys.stderr)
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walk-kernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    models = sub.add_parser("models", help="list built-in models")
    models.add_argument("action", choices=["list"])
    models.set_defaults(func=cmd_models)

    def model_arg(sp):
        sp.add_argument("--model", required=True, help="built-in name or JSON model file")

    info = sub.add_parser("info", help="show the kernel and its coefficient polynomials")
    model_arg(info)
    info.add_argument("--t", default="1/2", type=rat)
    info.set_defaults(func=cmd_info)

    en = sub.add_parser("enumerate", help="walk weights as CSV rows n,i,j,\"p/q\"")
    model_arg(en)
    en.add_argument("--n", required=True, type=int)
    en.add_argument("--csv", help="output file (default stdout)")
    en.set_defaults(func=cmd_enumerate)

    ver = sub.add_parser("verify", help="check the functional equations up to an order")
    model_arg(ver)
    ver.add_argument("--t", default="1/2", type=rat)
    ver.add_argument("--order", default=DEFAULT_ORDER, type=int)
    ver.set_defaults(func=cmd_verify)

    orb = sub.add_parser("orbit", help="iota1/iota2 orbit of a pole of y")
    model_arg(orb)
    orb.add_argument("--t", required=True, type=rat)
    orb.add_argument("--from", dest="start", choices=["P1", "P2"], default="P1")
    orb.add_argument("--steps", type=int, default=4, help="number of sigma steps (negative: backwards)")
    orb.add_argument("--json", help="write the orbit as JSON to this file ('-' for stdout)")
    orb.set_defaults(func=cmd_orbit)

    pr = sub.add_parser("probe-group", help="look for closure of sigma on a generic point")
    model_arg(pr)
    pr.add_argument("--t", required=True, type=rat)
    pr.add_argument("--max", type=int, default=DEFAULT_N_MAX)
    pr.set_defaults(func=cmd_probe)

    cl = sub.add_parser("classify", help="D-algebraic / D-transcendental decision with evidence")
    model_arg(cl)
    cl.add_argument("--t-samples", help="comma separated, e.g. 1/7,1/3,9/10")
    cl.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    cl.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    cl.add_argument("--json", help="write the report to this file instead of stdout")
    cl.set_defaults(func=cmd_classify)

    rep = sub.add_parser("reproduce", help="rerun the four-model classification table")
    rep.add_argument("target", choices=REPRODUCE_TARGETS)
    rep.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("n", "order", "steps", "max", "k_max", "n_max"):
        value = getattr(args, name, None)
        if value is not None and value < 0 and name != "steps":
            parser.error(f"--{name.replace('_', '-')} must be nonnegative")
    try:
        return args.func(args)
    except (UsageError, ModelError, ValueError, OSError) as exc:
        print(f"walk-kernel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
