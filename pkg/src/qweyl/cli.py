"""Command-line driver: batch verification and expression expansion.

Exit codes: 0 all checks pass, 1 some residual is nonzero, 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import implicit_multiplication, parse_expr, standard_transformations

from .limits import run_classical_suite
from .ncalg import MINKOWSKI, ParseError, parse_word
from .operators import build_qdal, build_qI_pm
from .planewave import PhasePoly, PlaneWaveSpec, SymbolicUnit, hhat
from .scalars import GaussianRational
from .weylsol import WeylSolSpec, chat, verify_weyl

EXIT_PASS, EXIT_RESIDUAL, EXIT_USAGE = 0, 1, 2
WORKERS_ENV = "QWEYL_WORKERS"
SHIFT_RANGE = (-8, 2)
POLY_COEFF_RANGE = (-3, 3)


class UsageError(Exception):
    pass


# --- parsing helpers -----------------------------------------------------

def parse_int_poly(text: str) -> tuple:
    """``"a^2 - 2"`` -> ``(-2, 0, 1)``; one variable, integer coefficients."""
    try:
        expr = sympy.sympify(text.replace("^", "**"))
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}") from exc
    free = expr.free_symbols
    if len(free) > 1:
        raise UsageError(f"polynomial {text!r} must have at most one variable")
    if not free:
        if not expr.is_integer:
            raise UsageError(f"polynomial {text!r} must have integer coefficients")
        return (int(expr),) if expr else ()
    poly = sympy.Poly(expr, *free)
    coeffs = poly.all_coeffs()[::-1]
    if not all(c.is_integer for c in coeffs):
        raise UsageError(f"polynomial {text!r} must have integer coefficients")
    return tuple(int(c) for c in coeffs)


def parse_gaussian(text: str) -> GaussianRational:
    """``"3/2"``, ``"-1+2i"``, ``"i/3"`` -> GaussianRational."""
    try:
        expr = parse_expr(text.strip(), local_dict={"i": sympy.I, "I": sympy.I},
                          transformations=standard_transformations + (implicit_multiplication,))
    except (sympy.SympifyError, SyntaxError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot parse scalar {text!r}") from exc
    re_, im_ = sympy.re(expr), sympy.im(expr)
    if not (re_.is_rational and im_.is_rational):
        raise UsageError(f"scalar {text!r} is not a Gaussian rational")
    return GaussianRational(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q)))


def parse_shifts(text: str | None):
    """``None``, ``"symbolic"`` or a comma-separated integer list."""
    if text is None:
        return None
    if text.strip() == "symbolic":
        return [SymbolicUnit(1)]
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"shift must be 'symbolic' or integers, got {text!r}") from exc


def workers_default() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# --- random draws ---------------------------------------------------------

def draw_poly(rng: random.Random, degree: int = 2) -> tuple:
    return tuple(rng.randint(*POLY_COEFF_RANGE) for _ in range(degree + 1))


def draw_gaussian(rng: random.Random) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                            Fraction(rng.randint(-9, 9), rng.randint(1, 5)))


def draw_phase(rng: random.Random, side: str) -> PhasePoly:
    shift, poly = rng.randint(*SHIFT_RANGE), draw_poly(rng)
    return PhasePoly.plus(poly, shift) if side == "plus" else PhasePoly.minus(shift, poly)


# --- task execution (module level so worker processes can import it) ------

def _run_task(task: tuple) -> dict:
    kind = task[0]
    if kind == "dalembert":
        _, s, phase, cone, basis, timing = task
        start = time.perf_counter()
        residual = build_qdal(basis)(hhat(PlaneWaveSpec(s, phase)))
        if cone:
            residual = residual.cone_project()
        elapsed = int((time.perf_counter() - start) * 1000) if timing else 0
        return {
            "spec": {"s": s, "phase": phase.to_json(), "cone": cone, "basis": basis},
            "residual_term_count": len(residual),
            "residual": residual.to_json(),
            "elapsed_ms": elapsed,
            "pass": residual.is_zero(),
        }
    if kind == "weyl":
        _, spec, cone, order, middle, timing = task
        op = None
        if middle is not None:
            op = build_qI_pm(1 if spec.side == "plus" else -1, 4, middle)
        out = verify_weyl(spec, cone=cone, order=order, operator=op, timing=timing).to_json()
        out["mutated_middle"] = None if middle is None else str(middle)
        return out
    raise ValueError(f"unknown task kind {kind!r}")


def run_tasks(tasks: list, workers: int) -> list:
    """Run tasks serially or on a process pool; results keep task order."""
    if workers <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks))


# --- commands --------------------------------------------------------------

def dalembert_tasks(args) -> list:
    rng = random.Random(args.seed)
    phases = [PhasePoly()]
    phases += [draw_phase(rng, "plus") for _ in range(args.draws)]
    phases += [draw_phase(rng, "minus") for _ in range(args.draws)]
    return [("dalembert", s, ph, args.cone == "on", args.basis, args.timing)
            for s in range(args.s_max + 1) for ph in phases]


def weyl_tasks(args) -> list:
    rng = random.Random(args.seed)
    shifts = parse_shifts(args.shift)
    poly = parse_int_poly(args.poly) if args.poly is not None else None
    sides = ("plus", "minus") if args.side == "both" else (args.side,)
    middle = parse_gaussian(args.mutate) if args.mutate is not None else None
    tasks = []
    for side in sides:
        for d in range(args.draws):
            gammas = tuple(draw_gaussian(rng) for _ in range(5))
            shift = shifts[d % len(shifts)] if shifts else rng.randint(*SHIFT_RANGE)
            free = poly if poly is not None else draw_poly(rng)
            for s in range(args.s_max + 1):
                spec = WeylSolSpec(side, s, gammas, shift, free)
                tasks.append(("weyl", spec, args.cone == "on", args.order, middle, args.timing))
    return tasks


def cmd_verify(args) -> tuple[dict, int]:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "workers")}
    if args.target == "classical":
        middle = parse_gaussian(args.mutate) if args.mutate is not None else None
        if middle is not None and middle.im:
            raise UsageError("classical mutation must be a rational number")
        results = run_classical_suite(args.degree, args.s_max, None if middle is None else middle.re)
    else:
        if args.s_max < 0:
            raise UsageError("--s-max must be nonnegative")
        tasks = dalembert_tasks(args) if args.target == "dalembert" else weyl_tasks(args)
        results = run_tasks(tasks, args.workers)
    ok = all(r["pass"] for r in results)
    report = {"command": f"verify {args.target}", "seed": args.seed, "config": config,
              "results": results, "pass": ok}
    return report, EXIT_PASS if ok else EXIT_RESIDUAL


def _result_label(r: dict) -> str:
    if "check" in r:
        return f"{r['check']} ({r['cases']} cases, {r['mismatches']} mismatches)"
    spec = r["spec"]
    if "side" in spec:
        return f"weyl {spec['side']} s={spec['s']} shift={spec['shift']} residual_terms={r['residual_term_count']}"
    phase = spec["phase"]
    return (f"dalembert s={spec['s']} phase={phase['kind']}{phase['poly']}/{phase['shift']} "
            f"residual_terms={r['residual_term_count']}")


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    lines = [f"{'PASS' if r['pass'] else 'FAIL'} {_result_label(r)}" for r in report["results"]]
    summary = f"{report['command']}: {'PASS' if report['pass'] else 'FAIL'} ({len(lines)} checks, seed {report['seed']})"
    if fmt == "text":
        return "\n".join(lines + [summary])
    rows = [rf"\texttt{{{line.split(' ', 1)[1]}}} & {line.split(' ', 1)[0]} \\" for line in lines]
    rows = [r.replace("_", r"\_") for r in rows]
    return "\n".join([r"\begin{tabular}{ll}", r"\hline", *rows, r"\hline",
                      rf"\multicolumn{{2}}{{l}}{{{summary.replace('_', chr(92) + '_')}}} \\", r"\end{tabular}"])


def _phase_from_args(args) -> PhasePoly:
    poly = parse_int_poly(args.poly) if args.poly is not None else ()
    shifts = parse_shifts(args.shift) or [0]
    if len(shifts) != 1:
        raise UsageError("expand takes a single shift value")
    if args.phase == "plus":
        return PhasePoly.plus(poly, shifts[0])
    if args.phase == "minus":
        return PhasePoly.minus(shifts[0], poly)
    return PhasePoly()


def render_element(elem, fmt: str, latex_env: bool = True) -> str:
    if fmt == "json":
        return json.dumps(elem.to_json(), indent=2, sort_keys=True)
    if fmt == "latex":
        body = elem.to_latex()
        return "\\begin{equation*}\n" + body + "\n\\end{equation*}" if latex_env else body
    return elem.to_text()


def cmd_expand(args) -> tuple[str, int]:
    if args.target == "word":
        letters, alphabet = parse_word(args.expression)
        elem = MINKOWSKI.normal_order(letters)
        if args.format == "json":
            return json.dumps(elem.to_json(), indent=2, sort_keys=True), EXIT_PASS
        if args.format == "latex":
            return "\\begin{equation*}\n" + elem.to_latex(alphabet) + "\n\\end{equation*}", EXIT_PASS
        return elem.to_text(alphabet), EXIT_PASS
    if args.s < 0:
        raise UsageError("--s must be nonnegative")
    if args.target == "planewave":
        return render_element(hhat(PlaneWaveSpec(args.s, _phase_from_args(args))), args.format), EXIT_PASS
    gammas = tuple(parse_gaussian(t) for t in args.gammas.split(","))
    if len(gammas) != 5:
        raise UsageError("--gammas needs exactly five comma-separated values")
    shifts = parse_shifts(args.shift) or [0]
    poly = parse_int_poly(args.poly) if args.poly is not None else ()
    spec = WeylSolSpec(args.side, args.s, gammas, shifts[0], poly)
    return render_element(chat(spec, args.order), args.format), EXIT_PASS


# --- argument parser ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qweyl", description="Verify q-deformed plane-wave and Weyl solutions.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("target", choices=("dalembert", "weyl", "classical"))
    v.add_argument("--s-max", type=int, default=None, help="largest degree (default 6, weyl 3)")
    v.add_argument("--side", choices=("plus", "minus", "both"), default="both")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--draws", type=int, default=3, help="random parameter draws per side")
    v.add_argument("--shift", "--B", "--D", dest="shift", default=None,
                   help="B/D values: comma-separated integers (use --B=-3,0) or 'symbolic'")
    v.add_argument("--poly", "--R", "--Q", dest="poly", default=None, help="free phase polynomial, e.g. 'a^2-2'")
    v.add_argument("--cone", choices=("on", "off"), default="on")
    v.add_argument("--order", choices=("ascending", "descending"), default="ascending")
    v.add_argument("--basis", choices=("hat", "tilde"), default="hat")
    v.add_argument("--degree", type=int, default=5, help="coordinate degree bound for classical checks")
    v.add_argument("--mutate", default=None, help="replace the middle coefficient of the (q)I±(4) operator")
    v.add_argument("--format", choices=("json", "latex", "text"), default="text")
    v.add_argument("--workers", type=int, default=None, help=f"process count (default ${WORKERS_ENV} or 1)")
    v.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-reproducibility)")

    e = sub.add_parser("expand", help="print an expression")
    e.add_argument("target", choices=("planewave", "chat", "word"))
    e.add_argument("expression", nargs="?", default=None, help="word to normal-order, e.g. 'x+ * x-'")
    e.add_argument("--s", type=int, default=0)
    e.add_argument("--phase", choices=("zero", "plus", "minus"), default="zero")
    e.add_argument("--side", choices=("plus", "minus"), default="plus")
    e.add_argument("--gammas", default="1,0,0,0,0")
    e.add_argument("--shift", "--B", "--D", dest="shift", default=None)
    e.add_argument("--poly", "--R", "--Q", dest="poly", default=None)
    e.add_argument("--order", choices=("ascending", "descending"), default="ascending")
    e.add_argument("--format", choices=("json", "latex", "text"), default="text")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "verify":
            if args.s_max is None:
                args.s_max = 3 if args.target == "weyl" else 6
            if args.workers is None:
                args.workers = workers_default()
            if args.draws < 1:
                raise UsageError("--draws must be positive")
            if args.degree < 0:
                raise UsageError("--degree must be nonnegative")
            report, code = cmd_verify(args)
            print(render_report(report, args.format))
            return code
        if args.target == "word" and not args.expression:
            raise UsageError("expand word needs an expression")
        out, code = cmd_expand(args)
        print(out)
        return code
    except (UsageError, ParseError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
