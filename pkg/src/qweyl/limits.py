"""Comparisons between the q-deformed machinery at q = 1 and the commutative
oracle in :mod:`qweyl.classical`.

Each check returns a plain dict ``{check, cases, mismatches, pass}`` so
that it can be merged into CLI reports.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from . import classical
from .operators import OperatorExpr, build_classical_I_pm, build_qdal, build_qI, build_qI_pm
from .planewave import PhasePoly, hhat
from .repspace import RepElement

__all__ = [
    "monomials",
    "to_cpoly",
    "rep_monomial",
    "check_I_pm_identity",
    "check_operator_limit",
    "check_planewave_limit",
    "run_classical_suite",
]


def monomials(coord_degree: int, z_degree: int = 0, zb_degree: int = 0):
    """All ``(x, z)`` exponent pairs with total coordinate degree ≤ ``coord_degree``."""
    for x in product(range(coord_degree + 1), repeat=4):
        if sum(x) > coord_degree:
            continue
        for p in range(z_degree + 1):
            for pb in range(zb_degree + 1):
                yield x, (p, pb)


def rep_monomial(x, z) -> RepElement:
    return RepElement.term(x=tuple(x), z=tuple(z))


def to_cpoly(e: RepElement) -> classical.CPoly:
    """q → 1 image of a representation element as a commutative polynomial."""
    return classical.CPoly({tuple(key.k) + key.x + key.z: c for key, c in e.eval_at_q1().items()})


def _cpoly_monomial(x, z) -> classical.CPoly:
    return classical.CPoly.from_exponents((0, 0, 0, 0) + tuple(x) + tuple(z))


def _compare(name: str, cases, lhs, rhs) -> dict:
    bad = []
    total = 0
    for x, z in cases:
        total += 1
        if lhs(x, z) != rhs(x, z):
            bad.append({"x": list(x), "z": list(z)})
    return {"check": name, "cases": total, "mismatches": len(bad), "first_mismatch": bad[:1], "pass": not bad}


def check_I_pm_identity(sign: int, coord_degree: int = 5, z_degree: int = 4, middle=None) -> dict:
    """Printed second-order ``I^±`` against ``I^±(4)`` composed by differentiation.

    ``middle`` perturbs the middle coefficient of ``I^±(4)`` (mutation check).
    """
    printed = build_classical_I_pm(sign)
    composed = classical.I_pm(sign, 4, None if middle is None else Fraction(middle))
    zd, zbd = (z_degree, 0) if sign > 0 else (0, z_degree)
    label = "I+ = I+(4)" if sign > 0 else "I- = I-(4)"
    if middle is not None:
        label += f" [middle={middle}]"
    return _compare(
        label,
        monomials(coord_degree, zd, zbd),
        lambda x, z: to_cpoly(printed(rep_monomial(x, z))),
        lambda x, z: composed(_cpoly_monomial(x, z)),
    )


def check_operator_limit(name: str, op: OperatorExpr, oracle, coord_degree: int, z_degree: int) -> dict:
    """``eval_at_q1(op(m)) == oracle(m)`` on a spanning monomial set."""
    return _compare(
        f"{name} at q=1",
        monomials(coord_degree, z_degree, z_degree),
        lambda x, z: to_cpoly(op(rep_monomial(x, z))),
        lambda x, z: oracle(_cpoly_monomial(x, z)),
    )


def check_planewave_limit(s_max: int, phases=(PhasePoly(),)) -> dict:
    """``eval_at_q1(ĥ_s) == (k·x)^s`` for every ``s ≤ s_max`` and phase."""
    cases = [(s, ph) for s in range(s_max + 1) for ph in phases]
    bad = [{"s": s, "phase": str(ph)} for s, ph in cases if to_cpoly(hhat(s, ph)) != classical.pairing_power(s)]
    return {"check": "h_s at q=1 = (k.x)^s", "cases": len(cases), "mismatches": len(bad),
            "first_mismatch": bad[:1], "pass": not bad}


def run_classical_suite(degree: int = 5, s_max: int = 6, middle=None) -> list:
    """The full q = 1 regression suite used by ``verify classical``."""
    low = min(degree, 3)
    results = [
        check_I_pm_identity(1, degree, 4, middle),
        check_I_pm_identity(-1, degree, 4, middle),
        check_operator_limit("qI1", build_qI(1), classical.I1, low, 2),
        check_operator_limit("qI2", build_qI(2), classical.I2, low, 2),
        check_operator_limit("qI3", build_qI(3), classical.I3, low, 2),
        check_operator_limit("qI+(4)", build_qI_pm(1, 4), classical.I_pm(1, 4), low, 2),
        check_operator_limit("qI-(4)", build_qI_pm(-1, 4), classical.I_pm(-1, 4), low, 2),
        check_operator_limit("qdal-hat", build_qdal("hat"), classical.box, degree, 0),
        check_operator_limit("qdal-tilde", build_qdal("tilde"), classical.box, degree, 0),
        check_planewave_limit(min(s_max, degree + 1) if degree else 0,
                              (PhasePoly(), PhasePoly.plus((1, -1, 2), -3), PhasePoly.minus(2, (0, 3)))),
    ]
    return results
