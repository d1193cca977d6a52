"""The commuting-variable space that operators act on.

A :class:`RepElement` is a finite sum of terms

    coeff * (momentum monomial) * v^j x-^n x+^l vb^m * z^p zb^pb

Momenta are noncommutative among themselves and commute with everything
else; coordinates and the bookkeeping variables ``z, zb`` are commuting.
Coordinate and z exponents are stored as integers so that shift operators
are total; use :meth:`RepElement.validate` to reject negative ones.
"""
from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .ncalg import MINKOWSKI, NCAlgebra, NCElement, NCMonomial, _add_into, _is_sum
from .scalars import ONE, QScalar, eval_at_q1

__all__ = ["RepKey", "RepElement"]


class RepKey(NamedTuple):
    k: NCMonomial
    x: tuple  # (j, n, l, m) for v, x-, x+, vb
    z: tuple  # (p, pb)


ZERO_X = (0, 0, 0, 0)
ZERO_Z = (0, 0)


def _key(k, x=ZERO_X, z=ZERO_Z) -> RepKey:
    return RepKey(NCMonomial(*k), tuple(x), tuple(z))


class RepElement:
    """Sparse map ``RepKey -> QScalar`` with no stored zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        acc: dict = {}
        for key, c in (terms or {}).items():
            _add_into(acc, _key(*key), QScalar(c))
        self.terms = acc

    @classmethod
    def _wrap(cls, terms: dict) -> "RepElement":
        out = cls.__new__(cls)
        out.terms = terms
        return out

    # --- constructors -------------------------------------------------
    @classmethod
    def term(cls, coeff=ONE, k=(0, 0, 0, 0), x=ZERO_X, z=ZERO_Z) -> "RepElement":
        return cls({(k, x, z): coeff})

    @classmethod
    def one(cls) -> "RepElement":
        return cls.term()

    @classmethod
    def from_momentum(cls, k: NCElement, z=ZERO_Z) -> "RepElement":
        return cls._wrap({_key(m, ZERO_X, z): c for m, c in k.terms.items()})

    @classmethod
    def from_coordinates(cls, x: Iterable[int], coeff=ONE) -> "RepElement":
        return cls.term(coeff, x=tuple(x))

    # --- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        """True iff every coefficient normalizes to zero (no terms stored)."""
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, RepElement):
            return NotImplemented
        return self.terms == other.terms

    def validate(self) -> "RepElement":
        for key in self.terms:
            if min(key.x) < 0 or min(key.z) < 0:
                raise ValueError(f"negative coordinate or z exponent in term {key}")
        return self

    def momentum_part(self) -> NCElement:
        """Collapse coordinates and z; used to compare prefactors."""
        acc: dict = {}
        for key, c in self.terms.items():
            _add_into(acc, key.k, c)
        out = NCElement()
        out.terms = acc
        return out

    # --- linear structure --------------------------------------------
    def __add__(self, other: "RepElement") -> "RepElement":
        acc = dict(self.terms)
        for key, c in other.terms.items():
            _add_into(acc, key, c)
        return RepElement._wrap(acc)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RepElement":
        c = QScalar(c)
        if c.is_zero():
            return RepElement()
        return RepElement._wrap({key: v * c for key, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, RepElement):
            return self.product(other)
        return self.scale(other)

    # --- module structure over the momentum algebra -------------------
    def mul_left_momentum(self, k: NCElement, algebra: NCAlgebra = MINKOWSKI) -> "RepElement":
        """Left-multiply every momentum part by ``k`` and re-normal-order."""
        return RepElement.from_momentum(k).product(self, algebra)

    def product(self, other: "RepElement", algebra: NCAlgebra = MINKOWSKI) -> "RepElement":
        """``self * other``: momenta in that order, coordinates and z commuting."""
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                x = tuple(a + b for a, b in zip(k1.x, k2.x))
                z = (k1.z[0] + k2.z[0], k1.z[1] + k2.z[1])
                for m, c in algebra.monomial_product(k1.k, k2.k):
                    _add_into(acc, RepKey(m, x, z), c12 * c)
        return RepElement._wrap(acc)

    def cone_project(self, algebra: NCAlgebra = MINKOWSKI) -> "RepElement":
        """Reduce every momentum part modulo the q-cone and merge."""
        acc: dict = {}
        for key, c in self.terms.items():
            for m, c2 in algebra.cone_monomial(key.k):
                _add_into(acc, RepKey(m, key.x, key.z), c * c2)
        return RepElement._wrap(acc)

    def map_coefficients(self, f) -> "RepElement":
        acc: dict = {}
        for key, c in self.terms.items():
            _add_into(acc, key, f(c))
        return RepElement._wrap(acc)

    def eval_at_q1(self) -> dict:
        """``{RepKey: GaussianRational}`` after q -> 1 (zeros dropped)."""
        out = {}
        for key, c in self.terms.items():
            v = eval_at_q1(c)
            if v:
                out[key] = v
        return out

    # --- serialization / printing ------------------------------------
    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": c.to_json(), "k": list(key.k), "x": list(key.x), "z": list(key.z)}
                for key, c in self
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "RepElement":
        acc: dict = {}
        for t in data["terms"]:
            _add_into(acc, _key(t["k"], t["x"], t["z"]), QScalar.from_json(t["coeff"]))
        return cls._wrap(acc)

    def to_text(self) -> str:
        return self._render(latex=False)

    def to_latex(self) -> str:
        return self._render(latex=True)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RepElement({len(self)} terms)"

    def _render(self, latex: bool) -> str:
        if not self.terms:
            return "0"
        if latex:
            names = ("k_{v}", "k_{-}", "k_{+}", r"k_{\bar{v}}", "v", "x_{-}", "x_{+}", r"\bar{v}", "z", r"\bar{z}")
        else:
            names = ("kv", "k-", "k+", "kvb", "v", "x-", "x+", "vb", "z", "zb")
        parts = []
        for key, c in self:
            exps = tuple(key.k) + key.x + key.z
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
            cs = c.latex() if latex else c.pretty()
            if factors and cs in ("1", "-1"):
                cs = cs[:-1]
            elif _is_sum(cs):
                cs = f"({cs})"
            sep = r"\, " if latex and factors and cs not in ("", "-") else (" " if factors and cs not in ("", "-") else "")
            parts.append(cs + sep + " ".join(factors))
        return " + ".join(parts).replace("+ -", "- ")
