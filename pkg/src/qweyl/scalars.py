"""Exact coefficient field: rational functions in ``q`` (and auxiliary units).

Every coefficient in the package is a :class:`QScalar`, a quotient

    (re + i*im) / den

of integer polynomials in the indeterminates ``q, u1, ..., u4``.  The
denominator is always real; the imaginary unit only ever lives in the
numerator.  Polynomial arithmetic and gcds are delegated to FLINT's
``fmpz_mpoly``.

The units ``u1..u4`` are commuting invertible symbols used to stand for
symbolic powers such as ``q**B``; ``q`` itself is a formal transcendental
indeterminate.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Union

import flint

__all__ = [
    "GaussianRational",
    "PoleError",
    "QScalar",
    "UNIT_NAMES",
    "VARIABLES",
    "ZERO",
    "ONE",
    "HALF",
    "I",
    "Q",
    "LAMBDA",
    "qpow",
    "unit",
    "qnum",
    "qfactorial",
    "inv_gamma_q",
    "eval_at_q1",
]

UNIT_NAMES = ("u1", "u2", "u3", "u4")
VARIABLES = ("q",) + UNIT_NAMES
_NV = len(VARIABLES)

_CTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "lex")
_PZERO = _CTX.from_dict({})
_PONE = _CTX.from_dict({(0,) * _NV: 1})


class PoleError(ZeroDivisionError):
    """Raised when a scalar is evaluated at a pole."""


@dataclass(frozen=True)
class GaussianRational:
    """An exact complex number ``re + i*im`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(Fraction(x))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}*i"

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"


Coercible = Union["QScalar", int, Fraction, GaussianRational]


def _monomial(exps) -> flint.fmpz_mpoly:
    return _CTX.from_dict({tuple(exps): 1})


def _poly_key(p) -> tuple:
    return tuple(sorted(p.to_dict().items()))


class QScalar:
    """Element of Q(i)(q, u1, ..., u4) in canonical form.

    Canonical form: ``gcd(re, im, den) == 1`` (integer content included)
    and the leading coefficient of ``den`` is positive.  Two scalars are
    equal iff their canonical triples coincide, so zero testing is a
    syntactic check.
    """

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, value: Coercible = 0):
        if isinstance(value, QScalar):
            self._re, self._im, self._den = value._re, value._im, value._den
        elif isinstance(value, GaussianRational):
            r, m = value.re, value.im
            d = r.denominator * m.denominator // gcd(r.denominator, m.denominator)
            self._set(_PONE * int(r * d), _PONE * int(m * d), _PONE * d)
        elif isinstance(value, (int, Rational)):
            f = Fraction(value)
            self._set(_PONE * f.numerator, _PZERO, _PONE * f.denominator)
        else:
            raise TypeError(f"cannot build QScalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, re, im, den) -> "QScalar":
        obj = cls.__new__(cls)
        obj._set(re, im, den)
        obj._hash = None
        return obj

    def _set(self, re, im, den):
        if den.is_zero():
            raise ZeroDivisionError("QScalar with zero denominator")
        if re.is_zero() and im.is_zero():
            self._re, self._im, self._den = _PZERO, _PZERO, _PONE
            return
        if not den.is_one():
            g = den.gcd(re)
            if not im.is_zero() and not g.is_one():
                g = g.gcd(im)
            if not g.is_one():
                re, den = re / g, den / g
                if not im.is_zero():
                    im = im / g
            if den.leading_coefficient() < 0:
                re, im, den = -re, -im, -den
        self._re, self._im, self._den = re, im, den

    # --- constructors -------------------------------------------------
    @classmethod
    def from_parts(cls, re, im, den) -> "QScalar":
        """Build from raw FLINT polynomials; normalizes."""
        return cls._raw(re, im, den)

    # --- accessors ----------------------------------------------------
    @property
    def real_part(self):
        return self._re

    @property
    def imag_part(self):
        return self._im

    @property
    def denominator(self):
        return self._den

    def is_zero(self) -> bool:
        return self._re.is_zero() and self._im.is_zero()

    def is_real(self) -> bool:
        return self._im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    # --- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self._den == o._den:
            return QScalar._raw(self._re + o._re, self._im + o._im, self._den)
        return QScalar._raw(
            self._re * o._den + o._re * self._den,
            self._im * o._den + o._im * self._den,
            self._den * o._den,
        )

    __radd__ = __add__

    def __neg__(self):
        obj = QScalar.__new__(QScalar)
        obj._re, obj._im, obj._den, obj._hash = -self._re, -self._im, self._den, None
        return obj

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ZERO
        if o._im.is_zero():
            im = self._im * o._re if not self._im.is_zero() else _PZERO
            return QScalar._raw(self._re * o._re, im, self._den * o._den)
        if self._im.is_zero():
            return QScalar._raw(self._re * o._re, self._re * o._im, self._den * o._den)
        return QScalar._raw(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
            self._den * o._den,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QScalar")
        if self._im.is_zero():
            return QScalar._raw(self._den, _PZERO, self._re)
        norm = self._re * self._re + self._im * self._im
        return QScalar._raw(self._den * self._re, -(self._den * self._im), norm)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self._im.is_zero():
            return QScalar._raw(self._re**n, _PZERO, self._den**n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- comparison ---------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._den == o._den and self._re == o._re and self._im == o._im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_poly_key(self._re), _poly_key(self._im), _poly_key(self._den)))
        return self._hash

    # --- transformations ---------------------------------------------
    def omega(self) -> "QScalar":
        """Antilinear conjugation: i -> -i, q -> 1/q, u_k -> 1/u_k."""
        top = [0] * _NV
        for p in (self._re, self._im, self._den):
            if not p.is_zero():
                top = [max(t, d) for t, d in zip(top, p.degrees())]

        def flip(p):
            return _CTX.from_dict(
                {tuple(t - e for t, e in zip(top, exps)): c for exps, c in p.to_dict().items()}
            )

        return QScalar._raw(flip(self._re), -flip(self._im), flip(self._den))

    def substitute_units(self) -> "QScalar":
        """Set every auxiliary unit to 1, keeping ``q``."""
        vals = {name: 1 for name in UNIT_NAMES}
        return QScalar._raw(self._re.subs(vals), self._im.subs(vals), self._den.subs(vals))

    # --- serialization ------------------------------------------------
    def to_json(self) -> dict:
        def terms(polys):
            re, im = polys
            rd, idict = re.to_dict(), im.to_dict()
            out = []
            for exps in sorted(set(rd) | set(idict), reverse=True):
                out.append({
                    "coeff": [int(rd.get(exps, 0)), 1, int(idict.get(exps, 0)), 1],
                    "powers": {n: int(e) for n, e in zip(VARIABLES, exps) if e},
                })
            return out

        return {"num": terms((self._re, self._im)), "den": terms((self._den, _PZERO))}

    @classmethod
    def from_json(cls, obj: dict) -> "QScalar":
        def poly(terms):
            re = im = ZERO
            total = ZERO
            for t in terms:
                rn, rd, in_, id_ = t["coeff"]
                coeff = QScalar(GaussianRational(Fraction(rn, rd), Fraction(in_, id_)))
                mono = ONE
                for name, e in t.get("powers", {}).items():
                    mono = mono * _gen(name) ** int(e)
                total = total + coeff * mono
            return total

        return poly(obj["num"]) / poly(obj["den"])

    def __reduce__(self):
        parts = tuple({k: int(v) for k, v in p.to_dict().items()} for p in (self._re, self._im, self._den))
        return (_unpickle, parts)

    # --- printing -----------------------------------------------------
    def __repr__(self):
        return f"QScalar({self})"

    def __str__(self):
        num = _complex_poly_str(self._re, self._im)
        if self._den.is_one():
            return num
        den = str(self._den)
        if len(self._den.to_dict()) > 1:
            den = f"({den})"
        if "+" in num.lstrip("-") or " - " in num:
            num = f"({num})"
        return f"{num}/{den}"

    def pretty(self) -> str:
        """Short text form, writing ``q - 1/q`` factors as ``λ`` when possible."""
        return _pretty(self, "λ", latex=False)

    def latex(self) -> str:
        return _pretty(self, r"\lambda", latex=True)


def _unpickle(re, im, den) -> QScalar:
    return QScalar._raw(_CTX.from_dict(re), _CTX.from_dict(im), _CTX.from_dict(den))


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Rational, GaussianRational)):
        return QScalar(x)
    return None


def _gen(name: str) -> QScalar:
    idx = VARIABLES.index(name)
    exps = [0] * _NV
    exps[idx] = 1
    return QScalar._raw(_monomial(exps), _PZERO, _PONE)


def _complex_poly_str(re, im) -> str:
    if im.is_zero():
        return str(re)
    if re.is_zero():
        return f"I*({im})" if len(im.to_dict()) > 1 else f"I*{im}"
    return f"{re} + I*({im})"


ZERO = QScalar(0)
ONE = QScalar(1)
HALF = QScalar(Fraction(1, 2))
I = QScalar(GaussianRational(0, 1))
Q = _gen("q")


@lru_cache(maxsize=None)
def qpow(k: int) -> QScalar:
    """``q**k`` for any integer ``k``."""
    if k >= 0:
        exps = [0] * _NV
        exps[0] = k
        return QScalar._raw(_monomial(exps), _PZERO, _PONE)
    return qpow(-k).inverse()


def unit(k: int, power: int = 1) -> QScalar:
    """The auxiliary unit ``u_k`` (1-based) raised to ``power``."""
    if not 1 <= k <= len(UNIT_NAMES):
        raise ValueError(f"unit index must be in 1..{len(UNIT_NAMES)}, got {k}")
    return _gen(UNIT_NAMES[k - 1]) ** power


LAMBDA = Q - qpow(-1)


@lru_cache(maxsize=None)
def qnum(n: int) -> QScalar:
    """The q-number ``[n]_q = (q**n - q**-n) / (q - 1/q)``."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qnum(-n)
    # [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}
    total = ZERO
    for k in range(n - 1, -n, -2):
        total = total + qpow(k)
    return total


@lru_cache(maxsize=None)
def qfactorial(n: int) -> QScalar:
    """``[n]_q! = [n]_q [n-1]_q ... [1]_q`` with ``[0]_q! = 1``."""
    if n < 0:
        raise ValueError(f"q-factorial of negative integer {n}")
    if n == 0:
        return ONE
    return qfactorial(n - 1) * qnum(n)


def inv_gamma_q(p: int) -> QScalar:
    """``1/Gamma_q(p)`` at integer ``p``: ``1/[p-1]_q!`` for p >= 1, else 0."""
    if p <= 0:
        return ZERO
    return qfactorial(p - 1).inverse()


def eval_at_q1(x: QScalar) -> GaussianRational:
    """Substitute ``q = 1`` and every unit ``= 1``."""
    # at the all-ones point a polynomial evaluates to its coefficient sum
    den = sum(int(c) for c in x.denominator.coeffs())
    if den == 0:
        raise PoleError(f"{x} has a pole at q = 1")
    re = sum(int(c) for c in x.real_part.coeffs())
    im = sum(int(c) for c in x.imag_part.coeffs())
    return GaussianRational(Fraction(re, den), Fraction(im, den))


def _pretty(x: QScalar, lam: str, latex: bool) -> str:
    """Render as ``c * lam^k * q^m`` when that shape fits, else generically."""
    if x.is_zero():
        return "0"
    rest = x
    k = 0
    while k < 4:
        shape = _monomial_shape(rest)
        if shape is not None:
            break
        rest = rest / LAMBDA
        k += 1
    else:
        shape = None
    if shape is None:
        return _generic_latex(x) if latex else str(x)
    coeff, exps = shape
    factors = []
    if k:
        factors.append(lam if k == 1 else f"{lam}^{{{k}}}" if latex else f"{lam}^{k}")
    for name, e in zip(VARIABLES, exps):
        if e == 0:
            continue
        base = name if not latex or name == "q" else f"u_{{{name[1:]}}}"
        if e == 1:
            factors.append(base)
        else:
            factors.append(f"{base}^{{{e}}}" if latex else f"{base}^{e}")
    sep = " " if latex else " "
    body = sep.join(factors)
    c = _coeff_str(coeff, latex)
    if not body:
        return c
    if c == "1":
        return body
    if c == "-1":
        return "-" + body
    return f"{c}{sep}{body}"


def _monomial_shape(x: QScalar):
    """Return (GaussianRational, exponent tuple) if x is c * monomial."""
    re, im, den = x.real_part, x.imag_part, x.denominator
    dd = den.to_dict()
    if len(dd) != 1:
        return None
    ((dexp, dc),) = dd.items()
    rd, idct = re.to_dict(), im.to_dict()
    keys = set(rd) | set(idct)
    if len(keys) != 1:
        return None
    (nexp,) = keys
    coeff = GaussianRational(Fraction(int(rd.get(nexp, 0)), int(dc)), Fraction(int(idct.get(nexp, 0)), int(dc)))
    return coeff, tuple(a - b for a, b in zip(nexp, dexp))


def _coeff_str(c: GaussianRational, latex: bool) -> str:
    def frac(f: Fraction) -> str:
        if f.denominator == 1:
            return str(f.numerator)
        if latex:
            s = "-" if f < 0 else ""
            return f"{s}\\tfrac{{{abs(f.numerator)}}}{{{f.denominator}}}"
        return str(f)

    if c.im == 0:
        return frac(c.re)
    i = "i"
    if c.re == 0:
        if c.im == 1:
            return i
        if c.im == -1:
            return "-" + i
        return f"{frac(c.im)}{i}" if latex else f"{frac(c.im)}*{i}"
    sign = "+" if c.im > 0 else "-"
    return f"({frac(c.re)} {sign} {frac(abs(c.im))}{i})"


def _generic_latex(x: QScalar) -> str:
    def poly_latex(real, imag):
        s = _complex_poly_str(real, imag)
        s = s.replace("*", " ").replace("I", "i")
        for name in UNIT_NAMES:
            s = s.replace(name, f"u_{{{name[1:]}}}")
        return re.sub(r"\^(\d+)", r"^{\1}", s)

    num = poly_latex(x.real_part, x.imag_part)
    if x.denominator.is_one():
        return num
    return f"\\frac{{{num}}}{{{poly_latex(x.denominator, _PZERO)}}}"
