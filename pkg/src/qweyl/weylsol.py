"""Plane-wave solutions of the homogeneous q-Weyl equations and the
classical tensor dictionaries of linear conformal gravity.

Plus side (degree ``s``, shift ``B``)::

    Ĉ⁺_s = Σ_m γ_m Π_{i=0}^{3-m} (k+ - q^{i+B+s+4} kvb z) Π_{j=4-m}^{3} (kv - q^{j+B+s+4} k- z) ĥ⁺_s

Minus side (shift ``D``)::

    Ĉ⁻_s = Σ_m γ_m Π_{i=-1}^{2-m} (k+ - q^{i-D} kv zb) Π_{j=3-m}^{2} (kvb - q^{j-D} k- zb) ĥ⁻_s

The momentum factors do not commute.  Factors are multiplied left to right
in ascending index (``order="ascending"``); ``"descending"`` reverses each
product and exists only to show that the order matters.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import sympy

from .ncalg import Letter, NCMonomial
from .operators import OperatorExpr, build_qI_pm
from .planewave import PhasePoly, PlaneWaveSpec, Shift, SymbolicUnit, hhat
from .repspace import RepElement
from .scalars import ONE, QScalar, qfactorial, qpow, unit

__all__ = [
    "WeylSolSpec",
    "WeylReport",
    "prefactor",
    "prefactors",
    "chat",
    "verify_weyl",
    "assemble_series",
    "WeylComponents",
    "CPolynomial",
    "weyl_to_cpm",
    "wcomp_matrix",
    "wcomp_rank_report",
    "StressDictionary",
    "stress_to_primed",
    "primed_to_stress",
    "lightcone_map",
    "minkowski_trace",
]

ORDERS = ("ascending", "descending")


@dataclass(frozen=True)
class WeylSolSpec:
    """One component ``Ĉ^±_s``: side, degree, five γ's, shift, free polynomial.

    ``shift`` is ``B_s`` on the plus side and ``D_s`` on the minus side;
    ``free_poly`` (ascending integer coefficients) is ``R_s(a)`` resp. ``Q_s(b)``.
    """

    side: str
    s: int
    gammas: tuple = (ONE, ONE, ONE, ONE, ONE)
    shift: Shift = 0
    free_poly: tuple = ()

    def __post_init__(self):
        if self.side not in ("plus", "minus"):
            raise ValueError(f"side must be 'plus' or 'minus', got {self.side!r}")
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        if len(self.gammas) != 5:
            raise ValueError("exactly five gamma coefficients are required")
        object.__setattr__(self, "gammas", tuple(QScalar(g) for g in self.gammas))
        object.__setattr__(self, "free_poly", tuple(int(c) for c in self.free_poly))

    @property
    def phase(self) -> PhasePoly:
        if self.side == "plus":
            return PhasePoly.plus(self.free_poly, self.shift)
        return PhasePoly.minus(self.shift, self.free_poly)

    def with_gammas(self, gammas: Sequence) -> "WeylSolSpec":
        return WeylSolSpec(self.side, self.s, tuple(gammas), self.shift, self.free_poly)

    def to_json(self) -> dict:
        shift = {"unit": self.shift.index} if isinstance(self.shift, SymbolicUnit) else self.shift
        return {
            "side": self.side,
            "s": self.s,
            "gammas": [g.to_json() for g in self.gammas],
            "shift": shift,
            "free_poly": list(self.free_poly),
        }


def _shifted_q(offset: int, shift: Shift, sign: int) -> QScalar:
    """``q^(offset + sign*shift)`` with units standing in for symbolic shifts."""
    if isinstance(shift, SymbolicUnit):
        return qpow(offset) * unit(shift.index, sign)
    return qpow(offset + sign * shift)


def _factor(lead: Letter, tail: Letter, coeff: QScalar, zvar: int) -> RepElement:
    z = (1, 0) if zvar == 0 else (0, 1)
    return RepElement({
        (NCMonomial.of(lead), (0, 0, 0, 0), (0, 0)): ONE,
        (NCMonomial.of(tail), (0, 0, 0, 0), z): -coeff,
    })


def _factor_lists(spec: WeylSolSpec, m: int) -> tuple[list, list]:
    s = spec.s
    if spec.side == "plus":
        first = [_factor(Letter.PLUS, Letter.VBAR, _shifted_q(i + s + 4, spec.shift, 1), 0) for i in range(0, 4 - m)]
        second = [_factor(Letter.V, Letter.MINUS, _shifted_q(j + s + 4, spec.shift, 1), 0) for j in range(4 - m, 4)]
    else:
        first = [_factor(Letter.PLUS, Letter.V, _shifted_q(i, spec.shift, -1), 1) for i in range(-1, 3 - m)]
        second = [_factor(Letter.VBAR, Letter.MINUS, _shifted_q(j, spec.shift, -1), 1) for j in range(3 - m, 3)]
    return first, second


def prefactor(spec: WeylSolSpec, m: int, order: str = "ascending") -> RepElement:
    """The momentum/z product multiplying ``ĥ^±_s`` in the ``m``-th summand."""
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    first, second = _factor_lists(spec, m)
    if order == "descending":
        first, second = first[::-1], second[::-1]
    out = RepElement.one()
    for f in first + second:
        out = out.product(f)
    return out


def prefactors(spec: WeylSolSpec, order: str = "ascending") -> RepElement:
    """``Σ_m γ_m × prefactor_m``; independent of the free polynomial."""
    out = RepElement()
    for m, g in enumerate(spec.gammas):
        if not g.is_zero():
            out = out + prefactor(spec, m, order).scale(g)
    return out


def chat(spec: WeylSolSpec, order: str = "ascending") -> RepElement:
    """The solution component ``Ĉ^±_s``."""
    return prefactors(spec, order).product(hhat(PlaneWaveSpec(spec.s, spec.phase)))


@lru_cache(maxsize=None)
def _weyl_operator(side: str) -> OperatorExpr:
    return build_qI_pm(1 if side == "plus" else -1, 4)


@dataclass
class WeylReport:
    spec: WeylSolSpec
    residual: RepElement
    elapsed_ms: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "residual_term_count": len(self.residual),
            "residual": self.residual.to_json(),
            "elapsed_ms": self.elapsed_ms,
            "pass": self.passed,
        }
        out.update(self.extra)
        return out


def verify_weyl(spec: WeylSolSpec, cone: bool = True, order: str = "ascending",
                operator: OperatorExpr | None = None, timing: bool = False) -> WeylReport:
    """Apply ``qI^±(4)`` to ``Ĉ^±_s``, project to the momentum q-cone and
    report the residual (empty on success)."""
    start = time.perf_counter()
    op = operator if operator is not None else _weyl_operator(spec.side)
    residual = op(chat(spec, order))
    if cone:
        residual = residual.cone_project()
    elapsed = int((time.perf_counter() - start) * 1000) if timing else 0
    return WeylReport(spec, residual, elapsed, {"cone": cone, "order": order})


def assemble_series(side: str, gammas: Sequence, shift: int, s_max: int,
                    free_poly: Sequence[int] = (), order: str = "ascending") -> list:
    """``[Ĉ^±_s / [s]_q! for s = 0..s_max]`` with s-independent constants.

    Plus side: ``shift`` is ``B'`` and ``B_s = B' - s - 4`` so every prefactor
    carries ``q^(i + B')``.  Minus side: ``D_s = shift`` for every ``s``.
    """
    out = []
    for s in range(s_max + 1):
        b = shift - s - 4 if side == "plus" else shift
        spec = WeylSolSpec(side, s, tuple(gammas), b, tuple(free_poly))
        out.append(chat(spec, order).scale(qfactorial(s).inverse()))
    return out


# --- classical dictionaries ---------------------------------------------------

def _num(x):
    return sympy.nsimplify(x) if isinstance(x, float) else sympy.sympify(x)


@dataclass(frozen=True)
class WeylComponents:
    """The ten independent Weyl tensor entries ``C_0..C_9``."""

    values: tuple

    def __post_init__(self):
        if len(self.values) != 10:
            raise ValueError("exactly ten Weyl components are required")
        object.__setattr__(self, "values", tuple(_num(v) for v in self.values))

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class CPolynomial:
    """``C^±`` as a quartic in ``z`` (plus) or ``zb`` (minus): coefficients ``C_0..C_4``."""

    side: str
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) > 5:
            raise ValueError("degree must be at most 4")

    def as_expr(self, var=None):
        var = var if var is not None else sympy.Symbol("z" if self.side == "plus" else "zb")
        return sum(c * var**k for k, c in enumerate(self.coeffs))


_HALF = sympy.Rational(1, 2)


def weyl_to_cpm(w: WeylComponents) -> tuple[CPolynomial, CPolynomial]:
    """Map ``C_0..C_9`` to the coefficients of ``C⁺(z)`` and ``C⁻(zb)`` (as printed)."""
    C = w.values
    i = sympy.I
    plus = (
        C[2] - _HALF * C[1] - C[6] + i * (C[0] + _HALF * C[3] + C[7]),
        2 * (C[4] - C[8] + i * (C[9] - C[5])),
        3 * (C[1] - i * C[3]),
        8 * (C[4] + C[8] + i * (C[9] + C[5])),
        C[2] - _HALF * C[1] + C[6] + i * (C[0] + _HALF * C[3] - C[7]),
    )
    minus = (
        C[2] - _HALF * C[1] - C[6] - i * (C[0] + _HALF * C[3] + C[7]),
        2 * (C[4] - C[8] - i * (C[9] - C[5])),
        3 * (C[1] + i * C[3]),
        2 * (C[4] + C[8] - i * (C[9] + C[5])),
        C[2] - _HALF * C[1] + C[6] - i * (C[0] + _HALF * C[3] - C[7]),
    )
    return (CPolynomial("plus", tuple(sympy.expand(x) for x in plus)),
            CPolynomial("minus", tuple(sympy.expand(x) for x in minus)))


def wcomp_matrix() -> sympy.Matrix:
    """10x10 matrix of the linear map ``(C_0..C_9) -> (C⁺_0..C⁺_4, C⁻_0..C⁻_4)``."""
    cols = []
    for j in range(10):
        basis = [0] * 10
        basis[j] = 1
        plus, minus = weyl_to_cpm(WeylComponents(tuple(basis)))
        cols.append(list(plus.coeffs) + list(minus.coeffs))
    return sympy.Matrix(cols).T


def wcomp_rank_report() -> dict:
    """Rank of the printed dictionary and where conjugation symmetry breaks.

    For real ``C_k`` one expects ``C⁻_k = conj(C⁺_k)``; rows where the
    printed table disagrees are listed.
    """
    mat = wcomp_matrix()
    rank = mat.rank()
    asymmetric = []
    for k in range(5):
        plus_row = mat.row(k)
        minus_row = mat.row(5 + k)
        if sympy.simplify(minus_row - plus_row.applyfunc(sympy.conjugate)) != sympy.zeros(1, 10):
            asymmetric.append(k)
    return {
        "rank": int(rank),
        "full_rank": rank == 10,
        "conjugation_asymmetric_rows": asymmetric,
    }


@dataclass
class StressDictionary:
    """A symmetric 4x4 tensor and its nine primed components ``T'_ij``.

    The same shape serves ``h_{μν}`` / ``h'_ij``.
    """

    tensor: sympy.Matrix | None = None
    primed: dict | None = None

    def is_symmetric(self) -> bool:
        return self.tensor is not None and self.tensor == self.tensor.T

    def is_traceless(self) -> bool:
        return self.tensor is not None and sympy.simplify(minkowski_trace(self.tensor)) == 0


ETA = sympy.diag(1, -1, -1, -1)


def minkowski_trace(T: sympy.Matrix):
    return sum(ETA[m, m] * T[m, m] for m in range(4))


PRIMED_KEYS = ((2, 2), (1, 1), (0, 0), (2, 1), (1, 2), (1, 0), (0, 1), (2, 0), (0, 2))


def stress_to_primed(T: StressDictionary | sympy.Matrix) -> StressDictionary:
    """Fill the nine primed components from a symmetric ``T_{μν}`` (as printed)."""
    M_ = T.tensor if isinstance(T, StressDictionary) else sympy.Matrix(T)
    if M_ != M_.T:
        raise ValueError("stress tensor must be symmetric")
    i = sympy.I
    t = lambda a, b: M_[a, b]  # noqa: E731
    primed = {
        (2, 2): t(0, 0) + 2 * t(0, 3) + t(3, 3),
        (1, 1): t(0, 0) - t(3, 3),
        (0, 0): t(0, 0) - 2 * t(0, 3) + t(3, 3),
        (2, 1): t(0, 1) + i * t(0, 2) + t(1, 3) + i * t(2, 3),
        (1, 2): t(0, 1) - i * t(0, 2) + t(1, 3) - i * t(2, 3),
        (1, 0): t(0, 1) + i * t(0, 2) - t(1, 3) - i * t(2, 3),
        (0, 1): t(0, 1) - i * t(0, 2) - t(1, 3) + i * t(2, 3),
        (2, 0): t(1, 1) + 2 * i * t(1, 2) - t(2, 2),
        (0, 2): t(1, 1) - 2 * i * t(1, 2) - t(2, 2),
    }
    return StressDictionary(M_, {k: sympy.expand(v) for k, v in primed.items()})


def primed_to_stress(primed: dict) -> StressDictionary:
    """Invert the primed map on symmetric traceless tensors by a linear solve."""
    syms = {(a, b): sympy.Symbol(f"T{a}{b}") for a in range(4) for b in range(a, 4)}
    T = sympy.Matrix(4, 4, lambda a, b: syms[(min(a, b), max(a, b))])
    forward = stress_to_primed(T).primed
    eqs = [sympy.Eq(forward[k], _num(primed[k])) for k in PRIMED_KEYS]
    eqs.append(sympy.Eq(minkowski_trace(T), 0))
    sol = sympy.solve(eqs, list(syms.values()), dict=True)
    if len(sol) != 1 or len(sol[0]) != len(syms):
        raise ValueError("primed components do not determine a unique traceless tensor")
    return StressDictionary(T.subs(sol[0]), dict(primed))


def lightcone_map(c0, c1, c2, c3) -> dict:
    """``x± = x0 ± x3, v = x1 - i x2, vb = x1 + i x2`` (momenta alike)."""
    c0, c1, c2, c3 = (_num(c) for c in (c0, c1, c2, c3))
    return {
        "plus": c0 + c3,
        "minus": c0 - c3,
        "v": sympy.expand(c1 - sympy.I * c2),
        "vbar": sympy.expand(c1 + sympy.I * c2),
    }
