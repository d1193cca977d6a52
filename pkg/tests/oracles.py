"""Reference computations for the tests.

Everything here uses sympy rational functions and plain word rewriting; no
arithmetic or rewriting code from the package is reused.  Package values
enter only through their JSON serializations.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import sympy

q = sympy.Symbol("q")
UNITS = dict(zip(("u1", "u2", "u3", "u4"), sympy.symbols("u1:5")))
LAM = q - 1 / q

V, MI, PL, VB = range(4)


# --- scalars --------------------------------------------------------------

def scalar(x) -> sympy.Expr:
    """Package scalar -> sympy expression, via its JSON form."""
    data = x.to_json()

    def poly(terms):
        total = sympy.Integer(0)
        for t in terms:
            rn, rd, in_, id_ = t["coeff"]
            c = sympy.Rational(rn, rd) + sympy.I * sympy.Rational(in_, id_)
            mono = sympy.Integer(1)
            for name, e in t["powers"].items():
                mono *= (q if name == "q" else UNITS[name]) ** e
            total += c * mono
        return total

    return poly(data["num"]) / poly(data["den"])


def same(a, b) -> bool:
    return sympy.cancel(sympy.together(sympy.expand(a - b))) == 0


def qnum(n: int):
    return sympy.cancel((q**n - q**-n) / (q - 1 / q))


def qfact(n: int):
    out = sympy.Integer(1)
    for k in range(1, n + 1):
        out *= qnum(k)
    return out


def inv_gamma(p: int):
    return 0 if p <= 0 else 1 / qfact(p - 1)


# --- word rewriting -------------------------------------------------------

def _swap(x, y, lam=LAM):
    """Out-of-order pair -> list of (coeff, word), written straight from the relations."""
    table = {
        (MI, V): [(1 / q, (V, MI))],      # x- v = q^-1 v x-
        (PL, V): [(q, (V, PL))],          # x+ v = q v x+
        (VB, V): [(1, (V, VB))],          # vb v = v vb
        (VB, MI): [(q, (MI, VB))],        # x- vb = q^-1 vb x-
        (VB, PL): [(1 / q, (PL, VB))],    # x+ vb = q vb x+
        (PL, MI): [(1, (MI, PL)), (lam, (V, VB))],
    }
    return table[(x, y)]


@lru_cache(maxsize=None)
def normal_form(word: tuple) -> tuple:
    """Normal form of a word as sorted ((a, b, c, d), coeff) pairs.

    Rewrites the rightmost descent first (the package defaults to folding
    letters in from the left).
    """
    descents = [i for i in range(len(word) - 1) if word[i] > word[i + 1]]
    if not descents:
        counts = tuple(word.count(k) for k in range(4))
        return ((counts, sympy.Integer(1)),)
    i = descents[-1]
    acc: dict = {}
    for c, repl in _swap(word[i], word[i + 1]):
        for m, c2 in normal_form(word[:i] + repl + word[i + 2:]):
            acc[m] = sympy.cancel(acc.get(m, 0) + c * c2)
    return tuple(sorted((m, c) for m, c in acc.items() if c != 0))


def mono_word(m) -> tuple:
    a, b, c, d = m
    return (V,) * a + (MI,) * b + (PL,) * c + (VB,) * d


def nc_dict(elem) -> dict:
    """Package NCElement -> {exponent tuple: sympy coeff}."""
    return {tuple(m): scalar(c) for m, c in elem.terms.items()}


def dict_equal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(same(a.get(k, 0), b.get(k, 0)) for k in keys)


def cone_reduce_word(word: tuple) -> dict:
    """Reduce modulo ``k- k+ = q^-1 kv kvb`` by literal substitution in words.

    Any adjacent ``k- k+`` in a normal-ordered word is replaced, the word is
    re-normal-ordered and the process repeats.
    """
    out: dict = {}
    pending = [(sympy.Integer(1), tuple(word))]
    while pending:
        c, w = pending.pop()
        for m, c2 in normal_form(w):
            nw = mono_word(m)
            if m[1] and m[2]:
                i = m[0] + m[1] - 1  # last k- is followed by the first k+
                pending.append((c * c2 / q, nw[:i] + (V, VB) + nw[i + 2:]))
            else:
                out[m] = sympy.cancel(out.get(m, 0) + c * c2)
    return {m: c for m, c in out.items() if c != 0}


def cone_closed_form(m) -> tuple:
    """``kv^a k-^b k+^c kvb^d`` on the cone: ``(monomial, coeff)`` in closed form.

    Each removed pair costs ``q^-1`` plus ``q^-1`` for every k- that the new
    kv passes and every k+ that the new kvb passes.
    """
    a, b, c, d = m
    coeff = sympy.Integer(1)
    while b and c:
        coeff *= q ** (-1 - (b - 1) - (c - 1))
        a, b, c, d = a + 1, b - 1, c - 1, d + 1
    return (a, b, c, d), coeff


# --- representation elements ------------------------------------------------

def rep_dict(elem) -> dict:
    """Package RepElement -> {(k, x, z): sympy coeff}."""
    return {(tuple(k.k), tuple(k.x), tuple(k.z)): scalar(c) for k, c in elem.terms.items()}


def rep_cone_project(d: dict) -> dict:
    out: dict = {}
    for (k, x, z), c in d.items():
        m, c2 = cone_closed_form(k)
        key = (m, x, z)
        out[key] = sympy.cancel(out.get(key, 0) + c * c2)
    return {k: v for k, v in out.items() if v != 0}


# --- plane wave and prefactors ------------------------------------------------

def beta_inverse(s: int):
    return sum(q ** ((s - p) * (p - 1) + p) / (qfact(p) * qfact(s - p)) for p in range(s + 1))


def hhat(s: int, phase=lambda a, b: 0) -> dict:
    """``ĥ_s`` written out from the formula, looping over the explicit support."""
    beta = 1 / beta_inverse(s)
    out = {}
    for a in range(s + 1):
        for b in range(s + 1):
            for n in range(min(a, b) + 1):
                if s - a - b + n < 0:
                    continue
                e = n * (s - 2 * a - 2 * b + 2 * n) + a * (s - a - 1) + b * (-s + a + b + 1) + phase(a, b)
                c = (-1) ** (s - a - b) * beta * q**e
                c /= qfact(a - n) * qfact(b - n) * qfact(s - a - b + n) * qfact(n)
                key = ((s - a - b + n, b - n, a - n, n), (n, a - n, b - n, s - a - b + n), (0, 0))
                out[key] = sympy.cancel(c)
    return out


def product_expansion(factors) -> dict:
    """Expand a product of binomials ``Π (lead_i - c_i tail_i w)`` over all choices.

    ``factors`` is a list of (lead letter, tail letter, coeff, z index).
    Each choice gives a momentum word whose normal form supplies the
    reordering powers of q.
    """
    out: dict = {}
    for choice in product((0, 1), repeat=len(factors)):
        word = []
        coeff = sympy.Integer(1)
        z = [0, 0]
        for pick, (lead, tail, c, zi) in zip(choice, factors):
            if pick:
                word.append(tail)
                coeff *= -c
                z[zi] += 1
            else:
                word.append(lead)
        for m, c2 in normal_form(tuple(word)):
            key = (m, (0, 0, 0, 0), tuple(z))
            out[key] = sympy.cancel(out.get(key, 0) + coeff * c2)
    return {k: v for k, v in out.items() if v != 0}


def plus_factors(s: int, B: int, m: int) -> list:
    first = [(PL, VB, q ** (i + B + s + 4), 0) for i in range(0, 4 - m)]
    second = [(V, MI, q ** (j + B + s + 4), 0) for j in range(4 - m, 4)]
    return first + second


def minus_factors(D: int, m: int) -> list:
    first = [(PL, V, q ** (i - D), 1) for i in range(-1, 3 - m)]
    second = [(VB, MI, q ** (j - D), 1) for j in range(3 - m, 3)]
    return first + second
