"""Components of the q-deformed plane wave.

The degree-``s`` component is

    ĥ_s = β^s Σ_{a,b,n} (-1)^{s-a-b} q^{E(a,b,n) + P_s(a,b)}
          / (Γ_q(a-n+1) Γ_q(b-n+1) Γ_q(s-a-b+n+1) [n]_q!)
          × kv^{s-a-b+n} k-^{b-n} k+^{a-n} kvb^n  v^n x-^{a-n} x+^{b-n} vb^{s-a-b+n}

with ``E = n(s-2a-2b+2n) + a(s-a-1) + b(-s+a+b+1)``.  The phase ``P_s`` is
a free integer-valued polynomial; the families used by the Weyl solutions
are ``R(a) + B b`` and ``D a + Q(b)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .repspace import RepElement
from .scalars import ONE, ZERO, QScalar, inv_gamma_q, qfactorial, qpow, unit

__all__ = ["SymbolicUnit", "PhasePoly", "PlaneWaveSpec", "beta", "beta_inverse", "hhat", "exp_q", "support"]


@dataclass(frozen=True)
class SymbolicUnit:
    """A symbolic exponent ``B`` standing for the unit ``u_index = q**B``."""

    index: int = 1

    def __str__(self):
        return f"u{self.index}"


Shift = Union[int, SymbolicUnit]


def poly_eval(coeffs: Sequence[int], x: int) -> int:
    """Evaluate an integer polynomial given by ascending coefficients."""
    total = 0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _shift_power(shift: Shift, k: int) -> QScalar:
    if isinstance(shift, SymbolicUnit):
        return unit(shift.index, k)
    return qpow(shift * k)


@dataclass(frozen=True)
class PhasePoly:
    """The phase polynomial ``P_s(a, b)`` entering the exponent of ``q``.

    ``poly`` holds ascending integer coefficients of ``R(a)`` (plus) or
    ``Q(b)`` (minus); ``shift`` is ``B`` (plus) or ``D`` (minus).
    """

    kind: str = "zero"
    poly: tuple = ()
    shift: Shift = 0
    table: tuple = field(default=(), compare=True)

    def __post_init__(self):
        if self.kind not in ("zero", "plus", "minus", "general"):
            raise ValueError(f"unknown phase kind {self.kind!r}")
        object.__setattr__(self, "poly", tuple(int(c) for c in self.poly))

    @classmethod
    def zero(cls) -> "PhasePoly":
        return cls()

    @classmethod
    def plus(cls, R: Sequence[int] = (), B: Shift = 0) -> "PhasePoly":
        """``P⁺ = R(a) + B b``."""
        return cls("plus", tuple(R), B)

    @classmethod
    def minus(cls, D: Shift = 0, Q: Sequence[int] = ()) -> "PhasePoly":
        """``P⁻ = D a + Q(b)``."""
        return cls("minus", tuple(Q), D)

    @classmethod
    def general(cls, values: dict) -> "PhasePoly":
        """Arbitrary integer values on the support, ``{(a, b): int}``."""
        return cls("general", table=tuple(sorted((tuple(k), int(v)) for k, v in values.items())))

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.shift, SymbolicUnit)

    def factor(self, a: int, b: int) -> QScalar:
        """``q ** P(a, b)`` (units standing in for symbolic shifts)."""
        if self.kind == "zero":
            return ONE
        if self.kind == "plus":
            return qpow(poly_eval(self.poly, a)) * _shift_power(self.shift, b)
        if self.kind == "minus":
            return qpow(poly_eval(self.poly, b)) * _shift_power(self.shift, a)
        values = dict(self.table)
        if (a, b) not in values:
            raise KeyError(f"general phase has no value at (a, b) = {(a, b)}")
        return qpow(values[(a, b)])

    def __str__(self):
        def poly_str(var):
            terms = [f"{c}*{var}^{i}" if i else str(c) for i, c in enumerate(self.poly) if c]
            return " + ".join(terms) or "0"

        if self.kind == "plus":
            return f"P+ = ({poly_str('a')}) + {self.shift}*b"
        if self.kind == "minus":
            return f"P- = {self.shift}*a + ({poly_str('b')})"
        if self.kind == "general":
            return f"P = table[{len(self.table)}]"
        return "P = 0"

    def to_json(self) -> dict:
        shift = {"unit": self.shift.index} if self.is_symbolic else self.shift
        return {"kind": self.kind, "poly": list(self.poly), "shift": shift, "table": [[list(k), v] for k, v in self.table]}


@dataclass(frozen=True)
class PlaneWaveSpec:
    s: int
    phase: PhasePoly = PhasePoly()

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("plane-wave degree s must be nonnegative")


def beta_inverse(s: int) -> QScalar:
    """``Σ_{p=0}^{s} q^{(s-p)(p-1)+p} / ([p]_q! [s-p]_q!)``."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    total = ZERO
    for p in range(s + 1):
        total = total + qpow((s - p) * (p - 1) + p) / (qfactorial(p) * qfactorial(s - p))
    return total


def beta(s: int) -> QScalar:
    """Normalization ``β^s`` of the degree-``s`` component."""
    return beta_inverse(s).inverse()


def support(s: int):
    """Lexicographic (a, b, n) with a, b >= n >= 0 and s - a - b + n >= 0."""
    for a in range(s + 1):
        for b in range(s + 1):
            for n in range(min(a, b) + 1):
                if s - a - b + n >= 0:
                    yield a, b, n


def hhat(spec: PlaneWaveSpec | int, phase: PhasePoly | None = None) -> RepElement:
    """The component ``ĥ_s`` as a representation-space element."""
    if isinstance(spec, int):
        spec = PlaneWaveSpec(spec, phase or PhasePoly())
    s, P = spec.s, spec.phase
    norm = beta(s)
    terms = {}
    # a, b range over all of Z_+ in principle; 1/Γ_q kills everything outside support(s)
    for a in range(s + 2):
        for b in range(s + 2):
            for n in range(min(a, b) + 1):
                weight = inv_gamma_q(a - n + 1) * inv_gamma_q(b - n + 1) * inv_gamma_q(s - a - b + n + 1)
                if weight.is_zero():
                    continue
                e = n * (s - 2 * a - 2 * b + 2 * n) + a * (s - a - 1) + b * (-s + a + b + 1)
                c = norm * weight / qfactorial(n) * qpow(e) * P.factor(a, b)
                if (s - a - b) % 2:
                    c = -c
                k = (s - a - b + n, b - n, a - n, n)
                x = (n, a - n, b - n, s - a - b + n)
                terms[(k, x, (0, 0))] = c
    return RepElement(terms)


PhaseFamily = Union[PhasePoly, Callable[[int], PhasePoly]]


def exp_q(family: PhaseFamily, s_max: int) -> list:
    """Truncated series ``[ĥ_s / [s]_q! for s = 0..s_max]``.

    ``family`` is either one phase used for every ``s`` or a function of ``s``.
    """
    if s_max < 0:
        raise ValueError("s_max must be nonnegative")
    out = []
    for s in range(s_max + 1):
        phase = family(s) if callable(family) else family
        out.append(hhat(PlaneWaveSpec(s, phase)).scale(qfactorial(s).inverse()))
    return out
