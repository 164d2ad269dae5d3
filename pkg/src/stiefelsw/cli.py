"""Command-line front end.

Every subcommand builds a :class:`Report`; ``--json`` prints it as one JSON
document, otherwise a plain-text rendering of the same results is printed.
Exit codes: 0 ok, 1 violation found, 2 usage/hypothesis/budget errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable, Iterable

from . import __version__
from .cohomology import CohomologyClass, basis, make_ring, t_band
from .errors import BudgetExceeded, HypothesisError, ParameterError
from .parity import binom_parity, equality_classifier, phi
from .report import Report, Status
from .steenrod import check_axioms, sq
from .stunted import admissible_degrees, image_multiple, verify_theorem1
from .wu import (
    DEFAULT_BUDGET,
    CharClassSystem,
    derive_relations,
    enumerate_systems,
    first_nonzero_degree,
    is_wu_consistent,
    system_record,
    verify_theorem2,
)

log = logging.getLogger("stiefelsw")


class UsageError(Exception):
    pass


def _ring(args):
    if args.n is None or args.k is None:
        raise UsageError(f"{args.command} needs --n and --k")
    return make_ring(args.n, args.k)


def _class(ring, text: str) -> CohomologyClass:
    return CohomologyClass.parse(ring, text)


# -- handlers -----------------------------------------------------------------
# each returns a Report; the renderer of the same name turns it into text lines


def cmd_basis(args) -> Report:
    ring = _ring(args)
    params = {"n": ring.n, "k": ring.k}
    if args.degree is not None:
        params["degree"] = args.degree
        monos = basis(ring, args.degree) if args.degree >= 0 else []
        return Report("basis", params, {"basis": [str(m) for m in monos]})
    degrees = {}
    for d in range(ring.top_degree + 1):
        monos = basis(ring, d)
        if monos:
            degrees[str(d)] = [str(m) for m in monos]
    return Report("basis", params, {"top_degree": ring.top_degree, "degrees": degrees})


def render_basis(r: Report) -> list[str]:
    if "basis" in r.results:
        return r.results["basis"] or ["(empty)"]
    return [f"H^{d}: {' '.join(ms)}" for d, ms in r.results["degrees"].items()]


def cmd_mul(args) -> Report:
    ring = _ring(args)
    x, y = _class(ring, args.x), _class(ring, args.y)
    return Report(
        "mul", {"n": ring.n, "k": ring.k, "x": str(x), "y": str(y)}, {"product": str(x * y)}
    )


def render_mul(r: Report) -> list[str]:
    return [r.results["product"]]


def cmd_sq(args) -> Report:
    ring = _ring(args)
    if args.i < 0:
        raise UsageError("--i must be >= 0")
    x = _class(ring, args.x)
    return Report(
        "sq", {"n": ring.n, "k": ring.k, "i": args.i, "x": str(x)}, {"result": str(sq(ring, args.i, x))}
    )


def render_sq(r: Report) -> list[str]:
    return [r.results["result"]]


def cmd_phi(args) -> Report:
    if args.m < 0:
        raise UsageError("m must be >= 0")
    results = phi(args.m).as_dict()
    return Report("phi", {"m": args.m}, results)


def render_phi(r: Report) -> list[str]:
    res = r.results
    return [f"phi({res['m']}) = {res['phi']}", f"2^phi = {res['power']}"]


def cmd_binom(args) -> Report:
    return Report("binom", {"a": args.a, "b": args.b}, {"parity": str(binom_parity(args.a, args.b))})


def render_binom(r: Report) -> list[str]:
    return [f"C({r.parameters['a']},{r.parameters['b']}) = {r.results['parity']}"]


def cmd_tbands(args) -> Report:
    ring = _ring(args)
    ps = [args.p] if args.p is not None else range(ring.k + 1)
    bands = [t_band(ring, p) for p in ps]
    return Report(
        "tbands",
        {"n": ring.n, "k": ring.k},
        {"bands": [{"p": b.p, "lo": b.lo, "hi": b.hi} for b in bands]},
    )


def render_tbands(r: Report) -> list[str]:
    return [f"T_{b['p']} = [{b['lo']}, {b['hi']}]" for b in r.results["bands"]]


def _parse_assignments(ring, items: Iterable[str]) -> CharClassSystem:
    classes = {}
    for item in items:
        deg, sep, text = item.partition("=")
        if not sep or not deg.strip().isdigit():
            raise UsageError(f"--w expects DEG=CLASS, got {item!r}")
        d = int(deg)
        c = _class(ring, text)
        if c and c.degree != d:
            raise UsageError(f"class {c} is not homogeneous of degree {d}")
        classes[d] = classes.get(d, ring.zero()) + c
    return CharClassSystem.from_classes(ring, classes)


def cmd_wu_check(args) -> Report:
    ring = _ring(args)
    system = _parse_assignments(ring, args.w or [])
    result = is_wu_consistent(system)
    return Report(
        "wu-check",
        {"n": ring.n, "k": ring.k, "classes": system.to_json()},
        {
            "consistent": result.consistent,
            "first_nonzero": first_nonzero_degree(system),
            "violations": [v.to_json() for v in result.violations],
        },
        Status.OK if result.consistent else Status.VIOLATION,
    )


def render_wu_check(r: Report) -> list[str]:
    res = r.results
    lines = [f"consistent: {str(res['consistent']).lower()}", f"first_nonzero: {res['first_nonzero']}"]
    for v in res["violations"]:
        lines.append(f"violation Sq^{v['i']}(w{v['j']}): lhs = {v['lhs']}, rhs = {v['rhs']}")
    return lines


def cmd_derive(args) -> Report:
    ring = _ring(args)
    table = derive_relations(ring, args.q)
    return Report("derive", {"n": ring.n, "k": ring.k, "q": args.q}, {"relations": table.to_json()})


def render_derive(r: Report) -> list[str]:
    lines = []
    for d, rel in r.results["relations"].items():
        if rel["verdict"] == "forced_product":
            lines.append(f"w{d}: forced_product[{','.join(map(str, rel['factors']))}]")
        else:
            lines.append(f"w{d}: {rel['verdict']}")
    return lines


def cmd_verify_thm1(args) -> Report:
    if args.n is not None or args.k is not None:
        ring = _ring(args)
        pairs = [(ring.n, ring.k)]
        params = {"n": ring.n, "k": ring.k, "d_max": args.d_max}
    else:
        pairs = None
        params = {"n_max": args.n_max, "d_max": args.d_max}
    check = verify_theorem1(n_max=args.n_max, d_max=args.d_max, pairs=pairs)
    results = {"pairs": check.pairs, "multiples": check.multiples, "failures": check.failures}
    if pairs is not None:
        n, k = pairs[0]
        results["theorem1"] = list(admissible_degrees(n, k, "theorem1").degrees)
        if n >= 2 * k:
            results["corollary22"] = list(admissible_degrees(n, k, "corollary22").degrees)
        results["image_multiple"] = image_multiple(n, k)
        results["equality"] = str(equality_classifier(n - k))
    return Report("verify-thm1", params, results, Status.OK if check.ok else Status.VIOLATION)


def render_verify_thm1(r: Report) -> list[str]:
    res = r.results
    lines = []
    for key in ("theorem1", "corollary22"):
        if key in res:
            lines.append(f"{key}: {{{', '.join(map(str, res[key]))}}}")
    if "image_multiple" in res:
        lines.append(f"image_multiple: {res['image_multiple']}")
        lines.append(f"equality: {res['equality']}")
    lines.append(f"pairs: {res['pairs']}")
    lines.append(f"multiples: {res['multiples']}")
    lines.append(f"failures: {len(res['failures'])}")
    for f in res["failures"]:
        lines.append(f"  n={f['n']} k={f['k']} d={f['d']} stray degrees {f['degrees']}")
    return lines


def cmd_verify_thm2(args) -> Report:
    ring = _ring(args)
    strict = verify_theorem2(ring, require_cor22=True, budget=args.budget)
    loose = verify_theorem2(ring, require_cor22=False, budget=args.budget)
    results = {
        "with_cor22": strict.to_json(),
        "wu_only": loose.to_json(),
        "wu_only_suffices": loose.ok,
    }
    return Report(
        "verify-thm2",
        {"n": ring.n, "k": ring.k, "budget": args.budget},
        results,
        Status.OK if strict.ok else Status.VIOLATION,
    )


def render_verify_thm2(r: Report) -> list[str]:
    lines = []
    for key in ("with_cor22", "wu_only"):
        s = r.results[key]
        lines.append(f"[{key}] systems: {s['systems']} (trivial {s['trivial']})")
        for q, row in s["per_q"].items():
            lines.append(f"[{key}] q={q}: systems {row['systems']}, violations {row['violations']}")
        if s["not_power_of_two"]:
            lines.append(f"[{key}] first nonzero not a power of two: {len(s['not_power_of_two'])}")
    lines.append(f"wu_only_suffices: {str(r.results['wu_only_suffices']).lower()}")
    return lines


def cmd_axioms(args) -> Report:
    ring = _ring(args)
    rep = check_axioms(ring)
    return Report(
        "axioms",
        {"n": ring.n, "k": ring.k},
        {"checked": rep.checked, "failed": rep.failed, "failures": rep.failures},
        Status.OK if rep.ok else Status.VIOLATION,
    )


def render_axioms(r: Report) -> list[str]:
    lines = [f"{name}: {count} checked" for name, count in r.results["checked"].items()]
    lines.append(f"failed: {r.results['failed']}")
    lines.extend(json.dumps(f) for f in r.results["failures"])
    return lines


def run_enumerate(args, out) -> Report:
    ring = _ring(args)
    params = {
        "n": ring.n,
        "k": ring.k,
        "require_wu": args.require_wu,
        "require_cor22": args.cor22,
        "first_nonzero": args.first_nonzero,
        "prune": args.prune,
        "budget": args.budget,
    }
    stream = enumerate_systems(
        ring,
        require_wu=args.require_wu,
        require_cor22=args.cor22,
        first_nonzero=args.first_nonzero,
        budget=args.budget,
        prune=args.prune,
    )
    records = []
    count = 0
    for system in stream:
        count += 1
        rec = system_record(system, True if args.require_wu else None)
        if args.jsonl:
            out.write(json.dumps(rec) + "\n")
        elif args.json:
            records.append(rec)
        else:
            out.write(f"{system}\n")
    results = {"count": count}
    if args.json and not args.jsonl:
        results["systems"] = records
    return Report("enumerate", params, results)


def render_enumerate(r: Report) -> list[str]:
    return [f"count: {r.results['count']}"]


COMMANDS: dict[str, tuple[Callable, Callable]] = {
    "basis": (cmd_basis, render_basis),
    "mul": (cmd_mul, render_mul),
    "sq": (cmd_sq, render_sq),
    "phi": (cmd_phi, render_phi),
    "binom": (cmd_binom, render_binom),
    "tbands": (cmd_tbands, render_tbands),
    "wu-check": (cmd_wu_check, render_wu_check),
    "enumerate": (None, render_enumerate),
    "derive": (cmd_derive, render_derive),
    "verify-thm1": (cmd_verify_thm1, render_verify_thm1),
    "verify-thm2": (cmd_verify_thm2, render_verify_thm2),
    "axioms": (cmd_axioms, render_axioms),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON report")
    common.add_argument("--n", type=int, help="ambient dimension n of V_k(R^n)")
    common.add_argument("--k", type=int, help="frame count k of V_k(R^n)")
    common.add_argument(
        "--budget", type=int, default=DEFAULT_BUDGET, help="max raw enumeration size (default 2^24)"
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="stiefelsw",
        description="Mod-2 cohomology, Steenrod squares and Stiefel-Whitney class "
        "systems on real Stiefel manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    p = add("basis", "list the monomial basis of H^degree (all degrees if omitted)")
    p.add_argument("--degree", type=int)

    p = add("mul", "multiply two classes")
    p.add_argument("x", help="class such as a4*a5+a9")
    p.add_argument("y")

    p = add("sq", "apply Sq^i to a class")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("x")

    p = add("phi", "count 0 < l <= m with l = 0,1,2,4 mod 8")
    p.add_argument("m", type=int)

    p = add("binom", "parity of C(a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = add("tbands", "degree bands T_p of length-p monomials")
    p.add_argument("--p", type=int)

    p = add("wu-check", "check Wu's formula for a system of classes")
    p.add_argument("--w", action="append", metavar="DEG=CLASS", help="e.g. --w 4=a4 (repeatable)")

    p = add("enumerate", "enumerate systems of classes")
    p.add_argument("--require-wu", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--cor22", action="store_true", help="force w_i = 0 for i <= n-1 except 2^phi(n-k-1)")
    p.add_argument("--first-nonzero", type=int)
    p.add_argument("--no-prune", dest="prune", action="store_false", help="brute force oracle")
    p.add_argument("--jsonl", action="store_true", help="stream JSON lines, summary last")

    p = add("derive", "relation table for first nonzero class in degree 2^q")
    p.add_argument("--q", type=int, required=True)

    p = add("verify-thm1", "cross-check admissible degrees against stunted computations")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--d-max", type=int, default=16)

    add("verify-thm2", "enumerate Wu-consistent systems and check the product relations")
    add("axioms", "check Steenrod axioms on every basis class")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler, render = COMMANDS[args.command]
    try:
        if args.command == "enumerate":
            report = run_enumerate(args, out)
        else:
            report = handler(args)
    except (UsageError, ParameterError) as exc:
        parser.print_usage(sys.stderr)
        print(f"stiefelsw {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        report = Report(args.command, _raw_params(args), {"error": str(exc)}, Status.HYPOTHESIS_UNMET)
        print(f"hypothesis unmet: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        report = Report(
            args.command,
            _raw_params(args),
            {"state_space": exc.state_space, "budget": exc.budget},
            Status.BUDGET_EXCEEDED,
        )
        print(f"budget exceeded: {exc}", file=sys.stderr)

    if args.json or getattr(args, "jsonl", False):
        out.write(report.to_json() + "\n")
    elif report.status in (Status.OK, Status.VIOLATION):
        for line in render(report):
            out.write(line + "\n")
        if report.status is Status.VIOLATION:
            out.write("status: violation\n")
    return report.exit_code


def _raw_params(args) -> dict:
    skip = {"command", "json", "verbose"}
    return {k: v for k, v in vars(args).items() if k not in skip}


if __name__ == "__main__":
    sys.exit(main())
