"""Shift, scale and q-difference operators and the composites built from them.

Generators act on a :class:`~qweyl.repspace.RepElement` termwise through the
exponent of one variable ``κ ∈ {v, x-, x+, vb, z, zb}``:

* ``M̂κ^p`` shifts the exponent by ``p``;
* ``Tκ^p`` multiplies by ``q^(p * exponent)``;
* ``D̂κ = λ^{-1} M̂κ^{-1} (Tκ - Tκ^{-1})`` sends ``n`` to ``[n]_q`` times the
  term with exponent ``n - 1``.

An :class:`OperatorExpr` is a formal sum of weighted generator sequences.
Sequences are written left to right as printed and applied right to left.
At ``q = 1`` the same semantics give classical multiplication and partial
derivatives, which is how the classical operators are realized.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable

from .ncalg import _add_into
from .repspace import RepElement, RepKey
from .scalars import HALF, LAMBDA, ONE, QScalar, qnum, qpow

__all__ = [
    "Var",
    "Kind",
    "GenOp",
    "OperatorExpr",
    "M",
    "T",
    "D",
    "apply_gen",
    "apply",
    "build_qI",
    "build_qI_pm",
    "build_qmaxwell",
    "build_qdal",
    "build_classical_I",
    "build_classical_I_pm_n",
    "build_classical_I_pm",
    "build_box",
    "get_operator",
    "REGISTRY_NAMES",
]


class Var(IntEnum):
    V = 0
    MINUS = 1
    PLUS = 2
    VBAR = 3
    Z = 4
    ZBAR = 5


class Kind(Enum):
    SHIFT = "M"
    SCALE = "T"
    QDIFF = "D"


@dataclass(frozen=True)
class GenOp:
    kind: Kind
    var: Var
    power: int = 1

    def __post_init__(self):
        if self.kind is Kind.QDIFF and self.power != 1:
            raise ValueError("q-difference generators carry no power; repeat them instead")

    def __str__(self):
        name = {Var.V: "v", Var.MINUS: "-", Var.PLUS: "+", Var.VBAR: "vb", Var.Z: "z", Var.ZBAR: "zb"}[self.var]
        p = "" if self.power == 1 else f"^{self.power}"
        return f"{self.kind.value}_{name}{p}"


def M(var: Var, power: int = 1) -> GenOp:
    return GenOp(Kind.SHIFT, Var(var), power)


def T(var: Var, power: int = 1) -> GenOp:
    return GenOp(Kind.SCALE, Var(var), power)


def D(var: Var) -> GenOp:
    return GenOp(Kind.QDIFF, Var(var))


def _exponent(key: RepKey, var: Var) -> int:
    return key.x[var] if var < 4 else key.z[var - 4]


def _with_exponent(key: RepKey, var: Var, e: int) -> RepKey:
    if var < 4:
        x = list(key.x)
        x[var] = e
        return RepKey(key.k, tuple(x), key.z)
    z = list(key.z)
    z[var - 4] = e
    return RepKey(key.k, key.x, tuple(z))


def apply_gen(g: GenOp, e: RepElement) -> RepElement:
    """Apply one generator termwise."""
    acc: dict = {}
    var = g.var
    if g.kind is Kind.SHIFT:
        for key, c in e.terms.items():
            acc[_with_exponent(key, var, _exponent(key, var) + g.power)] = c
    elif g.kind is Kind.SCALE:
        for key, c in e.terms.items():
            n = _exponent(key, var) * g.power
            acc[key] = c * qpow(n) if n else c
    else:
        for key, c in e.terms.items():
            n = _exponent(key, var)
            if n == 0:
                continue
            _add_into(acc, _with_exponent(key, var, n - 1), c * qnum(n))
    return RepElement._wrap(acc)


class OperatorExpr:
    """Formal sum ``Σ weight * (g_1 g_2 ... g_r)``; ``g_r`` acts first."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable = ()):
        acc: dict = {}
        for w, seq in terms:
            _add_into(acc, tuple(seq), QScalar(w))
        self.terms = acc

    @classmethod
    def gen(cls, *seq: GenOp, weight=ONE) -> "OperatorExpr":
        return cls([(weight, seq)])

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls([(ONE, ())])

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(list(self.terms_list()) + list(other.terms_list()))

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "OperatorExpr":
        return OperatorExpr((w * c, seq) for seq, w in self.terms.items())

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        """Composition ``self ∘ other`` (other acts first) or scalar weight."""
        if isinstance(other, OperatorExpr):
            return OperatorExpr(
                (w1 * w2, s1 + s2) for s1, w1 in self.terms.items() for s2, w2 in other.terms.items()
            )
        return self.scale(other)

    def __pow__(self, n: int) -> "OperatorExpr":
        out = OperatorExpr.identity()
        for _ in range(n):
            out = out * self
        return out

    def terms_list(self):
        return ((w, seq) for seq, w in self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        parts = []
        for seq, w in self.terms.items():
            ops = " ".join(str(g) for g in seq) or "1"
            parts.append(f"({w.pretty()}) {ops}")
        return " + ".join(parts) or "0"

    def __call__(self, e: RepElement) -> RepElement:
        return apply(self, e)


def apply(expr: OperatorExpr, e: RepElement) -> RepElement:
    """Apply ``expr`` to ``e``; linear in both arguments.

    Sequences are organized in a trie keyed from the rightmost generator so
    shared suffixes are evaluated once.
    """
    trie: dict = {}
    for seq, w in expr.terms.items():
        node = trie
        for g in reversed(seq):
            node = node.setdefault(g, {})
        node[None] = node[None] + w if None in node else w
    return _apply_node(trie, e)


def _apply_node(node: dict, e: RepElement) -> RepElement:
    out = RepElement()
    if e.is_zero():
        return out
    for g, child in node.items():
        if g is None:
            out = out + e.scale(child)
        else:
            out = out + _apply_node(child, apply_gen(g, e))
    return out


# --- named q-deformed composites ----------------------------------------

def build_qI(a: int) -> OperatorExpr:
    """The three deformed simple-root operators ``qI_1, qI_2, qI_3``."""
    V, MI, PL, VB, Z, ZB = Var
    if a == 1:
        return OperatorExpr.gen(D(Z), T(Z), T(V), T(PL), T(MI, -1), T(VB, -1))
    if a == 2:
        inner = OperatorExpr([
            (qpow(1), (M(Z), D(V), T(MI, 2))),
            (ONE, (M(Z), M(ZB), D(PL), T(MI), T(VB), T(V, -1))),
            (ONE, (D(MI), T(MI))),
            (qpow(-1), (M(ZB), D(VB))),
            (-LAMBDA, (M(V), M(ZB), D(MI), D(PL), T(VB))),
        ])
        return inner * OperatorExpr.gen(T(VB), T(ZB, -1))
    if a == 3:
        return OperatorExpr.gen(D(ZB), T(ZB))
    raise ValueError(f"qI index must be 1, 2 or 3, got {a}")


def _second_order_combination(outer: OperatorExpr, mid: OperatorExpr, coeffs) -> OperatorExpr:
    c1, c2, c3 = coeffs
    return HALF * (
        c1 * (outer * outer * mid * mid)
        - c2 * (outer * mid * mid * outer)
        + c3 * (mid * mid * outer * outer)
    )


def qI_pm_coefficients(n: int) -> tuple:
    """``([n][n-1], [2][n-1][n+1], [n][n+1])`` in q-numbers."""
    return (qnum(n) * qnum(n - 1), qnum(2) * qnum(n - 1) * qnum(n + 1), qnum(n) * qnum(n + 1))


def build_qI_pm(sign: int, n: int, middle=None) -> OperatorExpr:
    """``qI^+(n)`` (sign > 0) or ``qI^-(n)`` (sign < 0).

    ``middle`` overrides the middle coefficient ``[2][n-1][n+1]``; only used
    to build mutated operators for negative controls.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    outer = build_qI(1 if sign > 0 else 3)
    c1, c2, c3 = qI_pm_coefficients(n)
    if middle is not None:
        c2 = QScalar(middle)
    return _second_order_combination(outer, build_qI(2), (c1, c2, c3))


def build_qmaxwell(sign: int, n: int) -> OperatorExpr:
    """First-order q-Maxwell composites ``½([n+2] qI_a qI_2 - [n+3] qI_2 qI_a)``."""
    outer = build_qI(1 if sign > 0 else 3)
    mid = build_qI(2)
    return HALF * (qnum(n + 2) * (outer * mid) - qnum(n + 3) * (mid * outer))


def build_qdal(basis: str = "hat") -> OperatorExpr:
    """q-d'Alembert operator in the hat (``v x- x+ vb``) or tilde basis."""
    V, MI, PL, VB = Var.V, Var.MINUS, Var.PLUS, Var.VBAR
    if basis == "hat":
        inner = OperatorExpr([(qpow(1), (D(MI), D(PL), T(V), T(VB))), (-ONE, (D(V), D(VB)))])
        return inner * OperatorExpr.gen(T(V), T(MI), T(PL), T(VB))
    if basis == "tilde":
        inner = OperatorExpr([(ONE, (D(MI), D(PL))), (-qpow(1), (D(V), D(VB), T(V), T(VB)))])
        return inner * OperatorExpr.gen(T(MI), T(PL))
    raise ValueError(f"basis must be 'hat' or 'tilde', got {basis!r}")


# --- classical (q = 1) operators -----------------------------------------

def build_classical_I(a: int) -> OperatorExpr:
    """``I_1 = ∂_z``, ``I_2 = zb z ∂_+ + z ∂_v + zb ∂_vb + ∂_-``, ``I_3 = ∂_zb``."""
    V, MI, PL, VB, Z, ZB = Var
    if a == 1:
        return OperatorExpr.gen(D(Z))
    if a == 2:
        return OperatorExpr([
            (ONE, (M(ZB), M(Z), D(PL))),
            (ONE, (M(Z), D(V))),
            (ONE, (M(ZB), D(VB))),
            (ONE, (D(MI),)),
        ])
    if a == 3:
        return OperatorExpr.gen(D(ZB))
    raise ValueError(f"I index must be 1, 2 or 3, got {a}")


def build_classical_I_pm_n(sign: int, n: int, middle=None) -> OperatorExpr:
    """Classical ``I^±(n) = ½(n(n-1) I_a²I_2² - 2(n²-1) I_a I_2² I_a + n(n+1) I_2² I_a²)``."""
    outer = build_classical_I(1 if sign > 0 else 3)
    c2 = QScalar(2 * (n * n - 1)) if middle is None else QScalar(middle)
    coeffs = (QScalar(n * (n - 1)), c2, QScalar(n * (n + 1)))
    return _second_order_combination(outer, build_classical_I(2), coeffs)


def build_box() -> OperatorExpr:
    """Classical d'Alembertian ``∂_- ∂_+ - ∂_v ∂_vb`` in light-cone variables."""
    return OperatorExpr([(ONE, (D(Var.MINUS), D(Var.PLUS))), (-ONE, (D(Var.V), D(Var.VBAR)))])


# Printed second-order form of I^±; each entry is
# (coefficient, z-power, zb-power, momentum derivatives, number of ∂_z / ∂_zb).
_I_PLUS_TABLE = [
    (1, 2, 2, "++", 2), (1, 2, 0, "vv", 2), (1, 0, 2, "bb", 2), (1, 0, 0, "--", 2),
    (2, 2, 1, "v+", 2), (2, 1, 2, "+b", 2), (2, 1, 1, "-+", 2), (2, 1, 1, "vb", 2),
    (2, 0, 1, "-b", 2), (2, 1, 0, "v-", 2),
    (-6, 1, 2, "++", 1), (-6, 1, 0, "vv", 1), (-12, 1, 1, "v+", 1), (-6, 0, 2, "+b", 1),
    (-6, 0, 1, "-+", 1), (-6, 0, 1, "vb", 1), (-6, 0, 0, "v-", 1),
    (12, 0, 2, "++", 0), (12, 0, 0, "vv", 0), (24, 0, 1, "v+", 0),
]
_I_MINUS_TABLE = [
    (1, 2, 2, "++", 2), (1, 2, 0, "vv", 2), (1, 0, 2, "bb", 2), (1, 0, 0, "--", 2),
    (2, 2, 1, "v+", 2), (2, 1, 2, "+b", 2), (2, 1, 1, "-+", 2), (2, 1, 1, "vb", 2),
    (2, 0, 1, "-b", 2), (2, 1, 0, "v-", 2),
    (-6, 2, 1, "++", 1), (-6, 0, 1, "bb", 1), (-12, 1, 1, "+b", 1), (-6, 2, 0, "v+", 1),
    (-6, 1, 0, "-+", 1), (-6, 1, 0, "vb", 1), (-6, 0, 0, "-b", 1),
    (12, 2, 0, "++", 0), (12, 0, 0, "bb", 0), (24, 1, 0, "+b", 0),
]
_DERIV = {"v": Var.V, "-": Var.MINUS, "+": Var.PLUS, "b": Var.VBAR}


def build_classical_I_pm(sign: int) -> OperatorExpr:
    """The second-order operators ``I^±`` hard-coded from their printed form."""
    table = _I_PLUS_TABLE if sign > 0 else _I_MINUS_TABLE
    zvar = Var.Z if sign > 0 else Var.ZBAR
    terms = []
    for coeff, pz, pzb, derivs, nz in table:
        seq = (M(Var.Z),) * pz + (M(Var.ZBAR),) * pzb
        seq += tuple(D(_DERIV[ch]) for ch in derivs) + (D(zvar),) * nz
        terms.append((QScalar(coeff), seq))
    return OperatorExpr(terms)


# --- registry -------------------------------------------------------------

REGISTRY_NAMES = (
    "qI1", "qI2", "qI3", "qI+(n)", "qI-(n)", "qImax+(n)", "qImax-(n)",
    "qdal-hat", "qdal-tilde", "I1", "I2", "I3", "I+", "I-", "I+(n)", "I-(n)", "box",
)

_NAME = re.compile(r"^\s*(qImax[+-]|qI[+-]|I[+-]|qI[123]|I[123]|qdal-hat|qdal-tilde|box)\s*(?:\(\s*(-?\d+)\s*\))?\s*$")


def get_operator(name: str) -> OperatorExpr:
    """Look up a named operator, e.g. ``"qI+(4)"``, ``"qdal-hat"``, ``"I-"``."""
    m = _NAME.match(name)
    if not m:
        raise KeyError(f"unknown operator {name!r}; known: {', '.join(REGISTRY_NAMES)}")
    base, arg = m.group(1), m.group(2)
    n = int(arg) if arg is not None else None
    needs_n = base in ("qI+", "qI-", "qImax+", "qImax-")
    if needs_n and n is None:
        raise KeyError(f"operator {base} needs an argument, e.g. {base}(4)")
    if n is not None and base not in ("qI+", "qI-", "qImax+", "qImax-", "I+", "I-"):
        raise KeyError(f"operator {base} takes no argument")
    sign = 1 if base.endswith("+") else -1
    if base in ("qI1", "qI2", "qI3"):
        return build_qI(int(base[-1]))
    if base in ("I1", "I2", "I3"):
        return build_classical_I(int(base[-1]))
    if base in ("qI+", "qI-"):
        return build_qI_pm(sign, n)
    if base in ("qImax+", "qImax-"):
        return build_qmaxwell(sign, n)
    if base in ("I+", "I-"):
        return build_classical_I_pm(sign) if n is None else build_classical_I_pm_n(sign, n)
    if base == "box":
        return build_box()
    return build_qdal(base.split("-")[1])
