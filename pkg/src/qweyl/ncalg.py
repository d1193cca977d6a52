"""The q-Minkowski quartet algebra and its momentum copy.

Generators ``v, x-, x+, vb`` (coordinates) or ``kv, k-, k+, kvb`` (momenta)
obey::

    x± v  = q^{±1} v x±        x± vb = q^{±1} vb x±
    x+ x- - x- x+ = λ v vb     vb v  = v vb

with ``λ = q - 1/q``.  Elements are stored in the normally ordered basis
``v^a x-^b x+^c vb^d``.  The momentum q-cone is the quotient by the central
element ``k- k+ - q^{-1} kv kvb``.
"""
from __future__ import annotations

import re
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .scalars import LAMBDA, ONE, ZERO, QScalar, eval_at_q1, qpow

__all__ = [
    "Letter",
    "NCMonomial",
    "NCElement",
    "NCAlgebra",
    "MINKOWSKI",
    "ParseError",
    "normal_order",
    "multiply",
    "omega",
    "cone_reduce",
    "cone_check_consistency",
    "rewrite_word",
    "parse_word",
]


class Letter(IntEnum):
    V = 0
    MINUS = 1
    PLUS = 2
    VBAR = 3


class NCMonomial(NamedTuple):
    """Exponents of ``V^a MINUS^b PLUS^c VBAR^d`` in that fixed order."""

    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    @classmethod
    def of(cls, letter: Letter, power: int = 1) -> "NCMonomial":
        exps = [0, 0, 0, 0]
        exps[letter] = power
        return cls(*exps)

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c + self.d

    def word(self) -> tuple:
        return (Letter.V,) * self.a + (Letter.MINUS,) * self.b + (Letter.PLUS,) * self.c + (Letter.VBAR,) * self.d


UNIT = NCMonomial()

COORDINATE_NAMES = ("v", "x-", "x+", "vb")
MOMENTUM_NAMES = ("kv", "k-", "k+", "kvb")
_LATEX = {
    "coordinate": ("v", "x_{-}", "x_{+}", r"\bar{v}"),
    "momentum": ("k_{v}", "k_{-}", "k_{+}", r"k_{\bar{v}}"),
}


def _add_into(acc: dict, key, c: QScalar):
    v = acc.get(key)
    v = c if v is None else v + c
    if v.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = v


def _is_sum(text: str) -> bool:
    """True if ``text`` has a ``+``/``-`` outside all brackets (after the first char)."""
    depth = 0
    for i, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and text[i - 1] == " ":
            return True
    return False


class NCElement:
    """A finite linear combination of normally ordered monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[NCMonomial, QScalar] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = QScalar(c)
            if not c.is_zero():
                clean[NCMonomial(*m)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, m: NCMonomial | Iterable[int], coeff=ONE) -> "NCElement":
        return cls({NCMonomial(*m): coeff})

    @classmethod
    def scalar(cls, c) -> "NCElement":
        return cls({UNIT: c})

    @classmethod
    def generator(cls, letter: Letter) -> "NCElement":
        return cls({NCMonomial.of(letter): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "NCElement") -> "NCElement":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        out = NCElement()
        out.terms = acc
        return out

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NCElement":
        c = QScalar(c)
        out = NCElement()
        if not c.is_zero():
            out.terms = {m: v * c for m, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, NCElement):
            return MINKOWSKI.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def eval_at_q1(self) -> dict:
        """``{NCMonomial: GaussianRational}`` after q -> 1 (zeros dropped)."""
        out = {m: eval_at_q1(c) for m, c in self.terms.items()}
        return {m: v for m, v in out.items() if v}

    def to_text(self, alphabet: str = "coordinate") -> str:
        names = COORDINATE_NAMES if alphabet == "coordinate" else MOMENTUM_NAMES
        return _render(self, names, lambda c: c.pretty(), " ", lambda n, e: f"{n}^{e}")

    def to_latex(self, alphabet: str = "coordinate") -> str:
        names = _LATEX[alphabet]
        return _render(self, names, lambda c: c.latex(), r"\, ", lambda n, e: f"{n}^{{{e}}}")

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"NCElement({self.to_text()!r})"

    def to_json(self) -> list:
        return [{"coeff": c.to_json(), "k": list(m)} for m, c in self]

    @classmethod
    def from_json(cls, data: list) -> "NCElement":
        return cls({NCMonomial(*t["k"]): QScalar.from_json(t["coeff"]) for t in data})


def _render(x: NCElement, names, fmt_coeff, sep, power) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for m, c in x:
        factors = [n if e == 1 else power(n, e) for n, e in zip(names, m) if e]
        cs = fmt_coeff(c)
        if not factors:
            body = cs
        elif cs == "1":
            body = " ".join(factors)
        elif cs == "-1":
            body = "-" + " ".join(factors)
        else:
            if _is_sum(cs):
                cs = f"({cs})"
            body = cs + sep + " ".join(factors)
        parts.append(body)
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


class NCAlgebra:
    """Rewriting engine for the quartet relations.

    ``lam`` is the coefficient in ``x+ x- = x- x+ + lam v vb``; it defaults
    to ``q - 1/q`` and is overridable only to build deliberately broken
    algebras for negative checks.
    """

    def __init__(self, lam: QScalar = LAMBDA):
        self.lam = QScalar(lam)
        self._mon_gen = lru_cache(maxsize=None)(self._mon_times_gen)
        self._mon_mon = lru_cache(maxsize=None)(self._mon_times_mon)
        self._cone = lru_cache(maxsize=None)(self._cone_monomial)

    # --- elementary swaps --------------------------------------------
    def swap(self, x: Letter, y: Letter) -> tuple:
        """Rewrite the out-of-order pair ``x y`` (``x > y``) as ((coeff, word), ...)."""
        V, MI, PL, VB = Letter
        if (x, y) == (MI, V):
            return ((qpow(-1), (V, MI)),)
        if (x, y) == (PL, V):
            return ((qpow(1), (V, PL)),)
        if (x, y) == (VB, V):
            return ((ONE, (V, VB)),)
        if (x, y) == (VB, MI):
            return ((qpow(1), (MI, VB)),)
        if (x, y) == (VB, PL):
            return ((qpow(-1), (PL, VB)),)
        if (x, y) == (PL, MI):
            return ((ONE, (MI, PL)), (self.lam, (V, VB)))
        raise ValueError(f"pair {x.name} {y.name} is already ordered")

    # --- normal ordering ---------------------------------------------
    def _mon_times_gen(self, m: NCMonomial, g: Letter) -> tuple:
        last = max((i for i in range(4) if m[i] > 0), default=-1)
        if last <= g:
            exps = list(m)
            exps[g] += 1
            return ((NCMonomial(*exps), ONE),)
        exps = list(m)
        exps[last] -= 1
        prefix = NCMonomial(*exps)
        acc: dict = {}
        for c, word in self.swap(Letter(last), Letter(g)):
            cur = {prefix: c}
            for letter in word:
                cur = self._times_gen(cur, letter)
            for k, v in cur.items():
                _add_into(acc, k, v)
        return tuple(acc.items())

    def _times_gen(self, terms: dict, g: Letter) -> dict:
        out: dict = {}
        for m, c in terms.items():
            for m2, c2 in self._mon_gen(m, g):
                _add_into(out, m2, c * c2)
        return out

    def _mon_times_mon(self, m1: NCMonomial, m2: NCMonomial) -> tuple:
        cur = {m1: ONE}
        for letter in m2.word():
            cur = self._times_gen(cur, letter)
        return tuple(cur.items())

    def monomial_product(self, m1: NCMonomial, m2: NCMonomial) -> tuple:
        """Normal form of ``m1 * m2`` as ((monomial, coeff), ...)."""
        return self._mon_mon(NCMonomial(*m1), NCMonomial(*m2))

    def normal_order(self, word: Iterable, coeff=ONE) -> NCElement:
        cur = {UNIT: QScalar(coeff)}
        if cur[UNIT].is_zero():
            return NCElement()
        for letter in word:
            cur = self._times_gen(cur, Letter(letter))
        out = NCElement()
        out.terms = cur
        return out

    def multiply(self, x: NCElement, y: NCElement) -> NCElement:
        acc: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c12 = c1 * c2
                for m, c in self._mon_mon(m1, m2):
                    _add_into(acc, m, c12 * c)
        out = NCElement()
        out.terms = acc
        return out

    # --- conjugation -------------------------------------------------
    def omega(self, x: NCElement) -> NCElement:
        """Antilinear anti-involution: reverse words, v <-> vb, conjugate scalars."""
        acc = NCElement()
        for m, c in x.terms.items():
            rev = (Letter.V,) * m.d + (Letter.PLUS,) * m.c + (Letter.MINUS,) * m.b + (Letter.VBAR,) * m.a
            acc = acc + self.normal_order(rev, c.omega())
        return acc

    # --- momentum q-cone ---------------------------------------------
    def _cone_monomial(self, m: NCMonomial) -> tuple:
        if m.b == 0 or m.c == 0:
            return ((m, ONE),)
        # k_v^a k_-^{b-1} (k_- k_+) k_+^{c-1} k_vb^d  with  k_- k_+ -> q^{-1} k_v k_vb
        cur = {NCMonomial(m.a, m.b - 1, 0, 0): qpow(-1)}
        for letter in (Letter.V, Letter.VBAR) + (Letter.PLUS,) * (m.c - 1) + (Letter.VBAR,) * m.d:
            cur = self._times_gen(cur, letter)
        acc: dict = {}
        for m2, c2 in cur.items():
            for m3, c3 in self._cone(m2):
                _add_into(acc, m3, c2 * c3)
        return tuple(acc.items())

    def cone_reduce(self, x: NCElement) -> NCElement:
        acc: dict = {}
        for m, c in x.terms.items():
            for m2, c2 in self._cone(m):
                _add_into(acc, m2, c * c2)
        out = NCElement()
        out.terms = acc
        return out

    def cone_monomial(self, m: NCMonomial) -> tuple:
        return self._cone(NCMonomial(*m))


MINKOWSKI = NCAlgebra()


def normal_order(word: Iterable, coeff=ONE) -> NCElement:
    """Normal form of a word (sequence of :class:`Letter`) times ``coeff``."""
    return MINKOWSKI.normal_order(word, coeff)


def multiply(x: NCElement, y: NCElement) -> NCElement:
    return MINKOWSKI.multiply(x, y)


def omega(x: NCElement) -> NCElement:
    return MINKOWSKI.omega(x)


def cone_reduce(x: NCElement) -> NCElement:
    """Canonical representative modulo the momentum q-cone ideal.

    Every returned monomial has ``min(b, c) == 0``.
    """
    return MINKOWSKI.cone_reduce(x)


def cone_check_consistency(algebra: NCAlgebra = MINKOWSKI) -> dict:
    """Check that ``k- k+ - q^{-1} kv kvb`` and ``k+ k- - q kv kvb`` coincide.

    Both presentations are normal ordered in ``algebra``; they generate the
    same ideal iff their difference vanishes.  The report carries the
    difference as a witness, plus the q = 1 specializations.
    """
    V, MI, PL, VB = Letter
    first = algebra.normal_order((MI, PL)) - algebra.normal_order((V, VB), qpow(-1))
    second = algebra.normal_order((PL, MI)) - algebra.normal_order((V, VB), qpow(1))
    witness = second - first
    reduced = algebra.cone_reduce(second)
    at_q1 = (first.eval_at_q1(), second.eval_at_q1())
    return {
        "pass": witness.is_zero() and reduced.is_zero(),
        "witness": witness.to_text("momentum"),
        "second_reduced": reduced.to_text("momentum"),
        "q1_forms_coincide": at_q1[0] == at_q1[1],
    }


# --- word-level rewriting (independent of the memoized fold) ------------

def rewrite_word(word: Iterable, strategy: str = "leftmost", algebra: NCAlgebra = MINKOWSKI,
                 max_steps: int | None = None) -> tuple[NCElement, int]:
    """Normal-order a word by repeated pairwise rewriting.

    ``strategy`` picks the descent to rewrite in each non-normal word:
    ``"leftmost"`` or ``"rightmost"``.  Returns the normal form and the
    number of rewrite steps taken.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    pending = {tuple(Letter(x) for x in word): ONE}
    done: dict = {}
    steps = 0
    while pending:
        w, c = pending.popitem()
        descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not descents:
            counts = [0, 0, 0, 0]
            for x in w:
                counts[x] += 1
            _add_into(done, NCMonomial(*counts), c)
            continue
        i = descents[0] if strategy == "leftmost" else descents[-1]
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise RuntimeError(f"rewriting exceeded {max_steps} steps")
        for c2, repl in algebra.swap(w[i], w[i + 1]):
            _add_into(pending, w[:i] + repl + w[i + 2:], c * c2)
    out = NCElement()
    out.terms = done
    return out, steps


# --- surface syntax ------------------------------------------------------

class ParseError(ValueError):
    """Malformed surface-syntax word."""


_TOKENS = {name: (Letter(i), "coordinate") for i, name in enumerate(COORDINATE_NAMES)}
_TOKENS.update({name: (Letter(i), "momentum") for i, name in enumerate(MOMENTUM_NAMES)})
_FACTOR = re.compile(r"^\s*(kvb|kv|k-|k\+|vb|v|x-|x\+)\s*(?:\^\s*(\d+))?\s*$")


def parse_word(text: str) -> tuple[tuple, str]:
    """Parse ``"x+ * x- ^2 * v"`` into (letters, alphabet).

    Coordinates and momenta may not be mixed in one word.  The empty string
    is the empty word.
    """
    if not text.strip():
        return (), "coordinate"
    letters: list = []
    alphabets = set()
    for chunk in text.split("*"):
        m = _FACTOR.match(chunk)
        if not m:
            raise ParseError(f"cannot parse factor {chunk.strip()!r} in {text!r}")
        letter, alphabet = _TOKENS[m.group(1)]
        alphabets.add(alphabet)
        letters.extend([letter] * int(m.group(2) or 1))
    if len(alphabets) > 1:
        raise ParseError(f"word {text!r} mixes coordinates and momenta")
    return tuple(letters), alphabets.pop()
