"""Commutative q = 1 oracle: polynomials, partial derivatives, classical operators.

This module deliberately shares no code with the q-deformed machinery.  It
works with plain commutative polynomials over ``Fraction`` (Gaussian
rationals where needed) in the ten variables

    kv, k-, k+, kvb, v, x-, x+, vb, z, zb

and realizes the classical operators ``I_1, I_2, I_3``, ``I^±(n)`` and the
light-cone d'Alembertian by direct differentiation.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable

import sympy

from .scalars import GaussianRational

VARS = ("kv", "k-", "k+", "kvb", "v", "x-", "x+", "vb", "z", "zb")
_IDX = {name: i for i, name in enumerate(VARS)}


class CPoly:
    """Sparse commutative polynomial ``{exponent 10-tuple: GaussianRational}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for exps, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                self.terms[tuple(exps)] = self.terms.get(tuple(exps), GaussianRational()) + c

    @classmethod
    def monomial(cls, coeff=1, **powers) -> "CPoly":
        exps = [0] * len(VARS)
        for name, e in powers.items():
            exps[_IDX[name.replace("_minus", "-").replace("_plus", "+")]] = e
        return cls({tuple(exps): coeff})

    @classmethod
    def from_exponents(cls, exps, coeff=1) -> "CPoly":
        return cls({tuple(exps): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, GaussianRational()) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        res = CPoly()
        res.terms = out
        return res

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CPoly":
        return CPoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            return self.scale(other)
        out = CPoly()
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out = out + CPoly({tuple(a + b for a, b in zip(k1, k2)): c1 * c2})
        return out

    __rmul__ = scale

    def __pow__(self, n: int) -> "CPoly":
        out = CPoly.from_exponents((0,) * len(VARS))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, CPoly) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, var: str) -> "CPoly":
        i = _IDX[var]
        out = {}
        for k, c in self.terms.items():
            if k[i]:
                k2 = list(k)
                k2[i] -= 1
                out[tuple(k2)] = c * k[i]
        return CPoly(out)

    def times(self, var: str, power: int = 1) -> "CPoly":
        i = _IDX[var]
        out = {}
        for k, c in self.terms.items():
            k2 = list(k)
            k2[i] += power
            out[tuple(k2)] = c
        return CPoly(out)

    def __repr__(self):
        return f"CPoly({self.terms})"


Op = Callable[[CPoly], CPoly]


def I1(f: CPoly) -> CPoly:
    return f.diff("z")


def I2(f: CPoly) -> CPoly:
    return (f.diff("x+").times("z").times("zb") + f.diff("v").times("z")
            + f.diff("vb").times("zb") + f.diff("x-"))


def I3(f: CPoly) -> CPoly:
    return f.diff("zb")


def I_pm(sign: int, n: int, middle: Fraction | None = None) -> Op:
    """Classical ``I^±(n)``; ``middle`` replaces ``2(n²-1)`` for mutation checks."""
    outer = I1 if sign > 0 else I3
    c2 = 2 * (n * n - 1) if middle is None else middle

    def op(f: CPoly) -> CPoly:
        a = outer(outer(I2(I2(f))))
        b = outer(I2(I2(outer(f))))
        c = I2(I2(outer(outer(f))))
        return (a.scale(n * (n - 1)) - b.scale(c2) + c.scale(n * (n + 1))).scale(Fraction(1, 2))

    return op


def box(f: CPoly) -> CPoly:
    return f.diff("x+").diff("x-") - f.diff("v").diff("vb")


# --- light-cone dictionary and the classical pairing ----------------------

@lru_cache(maxsize=None)
def lightcone_pairing() -> CPoly:
    """``k·x = k0 x0 - k1 x1 - k2 x2 - k3 x3`` rewritten in light-cone variables.

    The rewrite inverts ``x± = x0 ± x3, v = x1 - i x2, vb = x1 + i x2`` (and
    the same for momenta) symbolically.
    """
    x = sympy.symbols("x0:4")
    k = sympy.symbols("k0:4")
    xp, xm, v, vb = sympy.symbols("xp xm v vb")
    kp, km, kv, kvb = sympy.symbols("kp km kv kvb")

    def invert(c, plus, minus, w, wb):
        eqs = [plus - (c[0] + c[3]), minus - (c[0] - c[3]), w - (c[1] - sympy.I * c[2]), wb - (c[1] + sympy.I * c[2])]
        return sympy.solve(eqs, c, dict=True)[0]

    subs = {**invert(x, xp, xm, v, vb), **invert(k, kp, km, kv, kvb)}
    dot = sympy.expand((k[0] * x[0] - k[1] * x[1] - k[2] * x[2] - k[3] * x[3]).subs(subs))
    order = (kv, km, kp, kvb, v, xm, xp, vb)
    poly = sympy.Poly(dot, *order)
    terms = {}
    for exps, c in poly.terms():
        re, im = sympy.re(c), sympy.im(c)
        terms[tuple(exps) + (0, 0)] = GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return CPoly(terms)


def pairing_power(s: int) -> CPoly:
    """``(k·x)^s``, the classical limit of the degree-``s`` plane-wave component."""
    return lightcone_pairing() ** s
