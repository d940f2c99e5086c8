"""
Exact Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored as integer counts of half-units: the key ``e`` stands for
``q^(e/2)``. So ``q`` is ``{2: 1}`` and ``q^(-1/2)`` is ``{-1: 1}``. Membership
in Z[q^(+-1)] is then just "every exponent is even".

>>> q = LaurentHalf.q()
>>> (q - 1) * (q + 1)
LaurentHalf('-1 + q^2')
>>> (q + 1).bar()
LaurentHalf('1 + q^-1')
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

__all__ = [
    "LaurentHalf",
    "NotDivisible",
    "SubringFlags",
    "lp_add",
    "lp_mul",
    "lp_bar",
    "lp_subring",
    "lp_divexact",
]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide."""


class SubringFlags(NamedTuple):
    in_Zq: bool
    in_Zq_inv: bool
    in_Z_half_neg: bool


class LaurentHalf:
    """An immutable element of Z[q^(+-1/2)].

    Build one from a mapping ``{half_exponent: coeff}``; zero coefficients are
    dropped. Instances hash and compare by their term map.
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[int, int] = {}
        for e, c in items:
            if c:
                e = int(e)
                c = t.get(e, 0) + int(c)
                if c:
                    t[e] = c
                else:
                    del t[e]
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict[int, int]) -> "LaurentHalf":
        # t must already be canonical (no zero values)
        obj = cls.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentHalf":
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, half_exp: int, c: int = 1) -> "LaurentHalf":
        return cls._raw({half_exp: c} if c else {})

    @classmethod
    def q(cls, power: int = 1) -> "LaurentHalf":
        """q^power for integer power."""
        return cls._raw({2 * power: 1})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentHalf":
        """Polynomial in integer powers of q: coeffs[k] is the coefficient of q^(low+k)."""
        return cls({2 * (low + k): c for k, c in enumerate(coeffs)})

    # --- accessors -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def coeff(self, half_exp: int) -> int:
        return self._t.get(half_exp, 0)

    def is_zero(self) -> bool:
        return not self._t

    def max_exp(self) -> int:
        """Largest half-exponent; raises ValueError on zero."""
        return max(self._t)

    def min_exp(self) -> int:
        return min(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    # --- ring operations -------------------------------------------------

    def _coerce(self, other) -> "LaurentHalf":
        if isinstance(other, LaurentHalf):
            return other
        if isinstance(other, int):
            return LaurentHalf.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            c = t.get(e, 0) + c
            if c:
                t[e] = c
            else:
                del t[e]
        return LaurentHalf._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentHalf._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return LaurentHalf._raw({})
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, int] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentHalf._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) == 1:
                (e, c), = self._t.items()
                if c in (1, -1):
                    return LaurentHalf._raw({-e * -k: c ** -k})
            raise NotDivisible(f"{self!r} is not a unit")
        out = LaurentHalf.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, half_units: int) -> "LaurentHalf":
        """Multiply by q^(half_units/2)."""
        if not half_units:
            return self
        return LaurentHalf._raw({e + half_units: c for e, c in self._t.items()})

    def scale(self, c: int) -> "LaurentHalf":
        if not c:
            return LaurentHalf._raw({})
        return LaurentHalf._raw({e: c * v for e, v in self._t.items()})

    def bar(self) -> "LaurentHalf":
        return LaurentHalf._raw({-e: c for e, c in self._t.items()})

    def subring(self) -> SubringFlags:
        keys = self._t.keys()
        even = all(e % 2 == 0 for e in keys)
        return SubringFlags(
            in_Zq=even and all(e >= 0 for e in keys),
            in_Zq_inv=even,
            in_Z_half_neg=all(e <= 0 for e in keys),
        )

    def divexact(self, other: "LaurentHalf") -> "LaurentHalf":
        return lp_divexact(self, other)

    def evaluate(self, q_half):
        """Substitute a value for q^(1/2)."""
        return sum(c * q_half ** e for e, c in self._t.items())

    # --- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentHalf.const(other)
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # --- serialisation ---------------------------------------------------

    def to_json(self) -> list[list]:
        return [[e, str(self._t[e])] for e in sorted(self._t)]

    @classmethod
    def from_json(cls, data) -> "LaurentHalf":
        return cls((int(e), int(c)) for e, c in data)

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t):
            c = self._t[e]
            if e == 0:
                mono = ""
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"LaurentHalf('{self}')"


ZERO = LaurentHalf()
ONE = LaurentHalf.const(1)


def lp_add(a: LaurentHalf, b: LaurentHalf) -> LaurentHalf:
    return a + b


def lp_mul(a: LaurentHalf, b: LaurentHalf) -> LaurentHalf:
    return a * b


def lp_bar(a: LaurentHalf) -> LaurentHalf:
    return a.bar()


def lp_subring(a: LaurentHalf) -> SubringFlags:
    return a.subring()


def lp_divexact(a: LaurentHalf, b: LaurentHalf) -> LaurentHalf:
    """Exact quotient a/b in Z[q^(+-1/2)]; raises NotDivisible otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if a.is_zero():
        return ZERO
    bt = b._t
    b_top = max(bt)
    b_lead = bt[b_top]
    b_low = min(bt)
    rem = dict(a._t)
    quot: dict[int, int] = {}
    # long division from the top; the quotient's span is bounded by a's span
    low_bound = min(rem) - b_low
    while rem:
        top = max(rem)
        e = top - b_top
        if e < low_bound:
            raise NotDivisible(f"{a} is not divisible by {b}")
        c, r = divmod(rem[top], b_lead)
        if r:
            raise NotDivisible(f"{a} is not divisible by {b}")
        quot[e] = c
        for be, bc in bt.items():
            k = be + e
            v = rem.get(k, 0) - c * bc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentHalf._raw(quot)
