"""
Hecke algebra of the extended affine Weyl group over Z[q^(+-1/2)].

Two bases are used: the standard basis ``T_w`` and the Kazhdan-Lusztig basis
``N_w = sum_y P_{y,w} T_y`` (so that ``C_w = q^(-l(w)/2) N_w`` is bar
invariant). Everything that needs KL polynomials goes through a
:class:`KLCache`, which holds a length bound and refuses to go past it.

>>> from affcell.weyl import simple
>>> s1 = simple(2, 1)
>>> t = HeckeElt.basis_element(s1)
>>> print(t * t)
(-1 + q)*T[2, 1] + q*T[1, 2]
"""

from __future__ import annotations

import json
import threading
from typing import Iterable, Mapping

from .coeff import LaurentHalf, ONE, ZERO
from .weyl import (
    AffinePerm,
    RankMismatch,
    bruhat_leq,
    compose,
    enumerate_elements,
    identity,
    inverse,
    omega,
    omega_decompose,
    reduced_word,
)

__all__ = [
    "HeckeElt",
    "KLCache",
    "TruncationExceeded",
    "t_mul",
    "bar",
    "kl_poly",
    "mu",
    "ntilde",
    "cbasis",
    "to_ntilde",
    "to_t",
    "ntilde_mul",
    "f_struct",
    "h_struct",
    "iota",
    "kl_by_bar_solve",
]

Q = LaurentHalf.q()
Q_MINUS_1 = Q - 1
Q_INV = LaurentHalf.q(-1)
Q_INV_MINUS_1 = Q_INV - 1


class TruncationExceeded(RuntimeError):
    """A computation needed KL data beyond the cache's length bound."""


def _acc(d: dict, key, c: LaurentHalf):
    v = d.get(key)
    v = c if v is None else v + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class HeckeElt:
    """A finite sum of basis elements with LaurentHalf coefficients.

    ``basis`` is ``"T"`` or ``"N"``. The object does not change after
    construction; arithmetic returns new elements.
    """

    __slots__ = ("basis", "n", "terms")

    def __init__(self, n: int, terms: Mapping[AffinePerm, LaurentHalf] | None = None, basis: str = "T"):
        if basis not in ("T", "N"):
            raise ValueError(f"unknown basis {basis!r}")
        clean = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise RankMismatch(f"term of rank {w.n} in element of rank {n}")
            if not isinstance(c, LaurentHalf):
                c = LaurentHalf.const(int(c))
            if c:
                clean[w] = c
        self.basis = basis
        self.n = n
        self.terms = clean

    @classmethod
    def basis_element(cls, w: AffinePerm, basis: str = "T", coeff: LaurentHalf = ONE) -> "HeckeElt":
        return cls(w.n, {w: coeff}, basis)

    @classmethod
    def zero(cls, n: int, basis: str = "T") -> "HeckeElt":
        return cls(n, {}, basis)

    def _same(self, other: "HeckeElt"):
        if self.n != other.n:
            raise RankMismatch(f"ranks {self.n} and {other.n}")
        if self.basis != other.basis:
            raise ValueError(f"cannot combine {self.basis}- and {other.basis}-basis elements")

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _acc(t, w, c)
        return HeckeElt(self.n, t, self.basis)

    def __neg__(self):
        return HeckeElt(self.n, {w: -c for w, c in self.terms.items()}, self.basis)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        if isinstance(c, int):
            c = LaurentHalf.const(c)
        return HeckeElt(self.n, {w: v * c for w, v in self.terms.items()}, self.basis)

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            if self.basis != "T" or other.basis != "T":
                raise ValueError("use ntilde_mul for products in the N basis")
            return t_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.basis, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: AffinePerm) -> LaurentHalf:
        return self.terms.get(w, ZERO)

    def support(self) -> list[AffinePerm]:
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        sym = "T" if self.basis == "T" else "N"
        parts = []
        for w in sorted(self.terms, reverse=True):
            c = self.terms[w]
            mono = f"{sym}{list(w.window)}"
            parts.append(mono if c == ONE else f"({c})*{mono}" if len(c) > 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElt<{self}>"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "n": self.n,
            "terms": [{"window": list(w.window), "coeff": self.terms[w].to_json()} for w in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data) -> "HeckeElt":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        terms = {}
        for item in data["terms"]:
            _acc(terms, AffinePerm(n, item["window"]), LaurentHalf.from_json(item["coeff"]))
        return cls(n, terms, data["basis"])


# --- T-basis arithmetic ---------------------------------------------------


def _t_right_simple(terms: dict, i: int) -> dict:
    out: dict = {}
    for w, c in terms.items():
        ws = w.rmul_simple(i)
        if i in w.right_descents:
            _acc(out, w, c * Q_MINUS_1)
            _acc(out, ws, c * Q)
        else:
            _acc(out, ws, c)
    return out


def _t_right_simple_inv(terms: dict, i: int) -> dict:
    # T_s^{-1} = q^{-1} T_s + (q^{-1} - 1)
    out: dict = {}
    for w, c in terms.items():
        ws = w.rmul_simple(i)
        if i in w.right_descents:
            # T_w T_s = (q-1) T_w + q T_ws
            _acc(out, w, c * Q_INV * Q_MINUS_1 + c * Q_INV_MINUS_1)
            _acc(out, ws, c)
        else:
            _acc(out, ws, c * Q_INV)
            _acc(out, w, c * Q_INV_MINUS_1)
    return out


def _t_right_omega(terms: dict, k: int) -> dict:
    if not k:
        return terms
    if not terms:
        return {}
    om = omega(next(iter(terms)).n, k)
    return {compose(w, om): c for w, c in terms.items()}


def _t_times_basis(terms: dict, y: AffinePerm) -> dict:
    word, k = reduced_word(y)
    for i in word:
        terms = _t_right_simple(terms, i)
    return _t_right_omega(terms, k)


def t_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product in the T basis."""
    if a.n != b.n:
        raise RankMismatch(f"ranks {a.n} and {b.n}")
    if a.basis != "T" or b.basis != "T":
        raise ValueError("t_mul expects T-basis elements")
    out: dict = {}
    for y, cy in b.terms.items():
        part = _t_times_basis(a.terms, y)
        for w, c in part.items():
            _acc(out, w, c * cy)
    return HeckeElt(a.n, out, "T")


def _bar_t_basis(w: AffinePerm) -> dict:
    # bar(T_w) = (T_{w^-1})^{-1} = T_{s_1}^{-1} ... T_{s_l}^{-1} T_{omega^k}
    word, k = reduced_word(w)
    terms = {identity(w.n): ONE}
    for i in word:
        terms = _t_right_simple_inv(terms, i)
    return _t_right_omega(terms, k)


def bar(a: HeckeElt) -> HeckeElt:
    """Additive map T_w -> T_{w^-1}^{-1}, coefficients barred."""
    if a.basis != "T":
        raise ValueError("bar expects a T-basis element")
    out: dict = {}
    for w, c in a.terms.items():
        cb = c.bar()
        for x, v in _bar_t_basis(w).items():
            _acc(out, x, v * cb)
    return HeckeElt(a.n, out, "T")


# --- Kazhdan-Lusztig data -------------------------------------------------


class KLCache:
    """Memoized KL polynomials, mu coefficients and N-basis products.

    Only elements of the non-extended affine group are stored; an element
    ``w' omega^k`` reuses the data of ``w'``. Requests for elements longer than
    ``max_length`` raise :class:`TruncationExceeded`.
    """

    def __init__(self, n: int, max_length: int):
        if n < 1:
            raise ValueError("rank must be positive")
        self.n = n
        self.max_length = max_length
        self._P: dict[AffinePerm, dict[AffinePerm, LaurentHalf]] = {identity(n): {identity(n): ONE}}
        self._mu: dict[AffinePerm, tuple] = {identity(n): ()}
        self._prod: dict = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"KLCache(n={self.n}, max_length={self.max_length}, stored={len(self._P)})"

    def _check(self, w: AffinePerm):
        if w.n != self.n:
            raise RankMismatch(f"element of rank {w.n} in cache of rank {self.n}")
        if w.length > self.max_length:
            raise TruncationExceeded(f"l({w}) = {w.length} exceeds the bound {self.max_length}")

    def _ensure(self, w: AffinePerm):
        """KL polynomials P_{., w} for affine w (omega shift 0)."""
        got = self._P.get(w)
        if got is not None:
            return got
        with self._lock:
            got = self._P.get(w)
            if got is not None:
                return got
            self._check(w)
            s = min(w.left_descents)
            x = w.lmul_simple(s)
            Px = self._ensure(x)
            res: dict = {}
            for y, c in Px.items():
                sy = y.lmul_simple(s)
                if sy.length > y.length:
                    _acc(res, y, c)
                    _acc(res, sy, c)
                else:
                    cq = c * Q
                    _acc(res, y, cq)
                    _acc(res, sy, cq)
            lw = w.length
            for z, m in self._mu[x]:
                if s in z.left_descents:
                    coeff = LaurentHalf.monomial(lw - z.length, m)
                    for y, c in self._ensure(z).items():
                        _acc(res, y, -(c * coeff))
            mus = []
            for y, c in res.items():
                if y == w:
                    if c != ONE:
                        raise AssertionError(f"leading coefficient {c} at {w}")
                    continue
                d = lw - y.length
                if c.max_exp() > d - 1:
                    raise AssertionError(f"degree bound fails for P_{{{y},{w}}} = {c}")
                if d % 2 == 1:
                    m = c.coeff(d - 1)
                    if m:
                        mus.append((y, m))
            self._mu[w] = tuple(sorted(mus))
            self._P[w] = res
            return res

    def polys(self, w: AffinePerm) -> dict[AffinePerm, LaurentHalf]:
        """Map y -> P_{y,w} over the support (the Bruhat interval below w)."""
        self._check(w)
        wa, k = omega_decompose(w)
        P = self._ensure(wa)
        if not k:
            return dict(P)
        om = omega(self.n, k)
        return {compose(y, om): c for y, c in P.items()}

    def mu_list(self, w: AffinePerm) -> list[tuple[AffinePerm, int]]:
        """Pairs (z, mu(z, w)) with z < w and mu nonzero."""
        self._check(w)
        wa, k = omega_decompose(w)
        self._ensure(wa)
        if not k:
            return list(self._mu[wa])
        om = omega(self.n, k)
        return [(compose(z, om), m) for z, m in self._mu[wa]]

    def fill(self, max_length: int | None = None):
        """Compute KL data for every affine element up to the given length."""
        L = self.max_length if max_length is None else max_length
        for w in enumerate_elements(self.n, L, 0):
            self._ensure(w)
        return self

    # --- products in the N basis ---------------------------------------

    def _right_ns(self, terms: dict, i: int) -> dict:
        # N_x N_s = (1+q) N_x if xs < x, else N_xs + sum mu(z,x) q^{(l(xs)-l(z))/2} N_z (zs < z)
        out: dict = {}
        one_q = ONE + Q
        for x, c in terms.items():
            if i in x.right_descents:
                _acc(out, x, c * one_q)
                continue
            _acc(out, x.rmul_simple(i), c)
            lxs = x.length + 1
            for z, m in self.mu_list(x):
                if i in z.right_descents:
                    _acc(out, z, c * LaurentHalf.monomial(lxs - z.length, m))
        return out

    def _prod_affine(self, u: AffinePerm, v: AffinePerm) -> dict:
        """N_u N_v for affine v, as a dict in the N basis."""
        if v.length == 0:
            return {u: ONE}
        key = (u, v)
        got = self._prod.get(key)
        if got is not None:
            return got
        i = min(v.right_descents)
        v2 = v.rmul_simple(i)
        res = self._right_ns(self._prod_affine(u, v2), i)
        lv = v.length
        for z, m in self.mu_list(v2):
            if i in z.right_descents:
                coeff = LaurentHalf.monomial(lv - z.length, m)
                for x, c in self._prod_affine(u, z).items():
                    _acc(res, x, -(c * coeff))
        with self._lock:
            self._prod.setdefault(key, res)
        return res

    def product(self, u: AffinePerm, v: AffinePerm) -> dict[AffinePerm, LaurentHalf]:
        """Map w -> f~_{u,v}^w, the N_w coefficient of N_u N_v."""
        if u.n != self.n or v.n != self.n:
            raise RankMismatch("rank mismatch in product")
        if u.length + v.length > self.max_length + 1:
            raise TruncationExceeded(
                f"product needs KL data up to length {u.length + v.length - 1}, bound is {self.max_length}"
            )
        va, b = omega_decompose(v)
        res = self._prod_affine(u, va)
        if not b:
            return dict(res)
        om = omega(self.n, b)
        return {compose(w, om): c for w, c in res.items()}


def kl_poly(cache: KLCache, y: AffinePerm, w: AffinePerm) -> LaurentHalf:
    """P_{y,w}; zero unless y <= w."""
    if y.omega_shift != w.omega_shift or y.length > w.length:
        return ZERO
    return cache.polys(w).get(y, ZERO)


def mu(cache: KLCache, y: AffinePerm, w: AffinePerm) -> int:
    d = w.length - y.length
    if d <= 0 or d % 2 == 0:
        return 0
    return kl_poly(cache, y, w).coeff(d - 1)


def ntilde(cache: KLCache, w: AffinePerm) -> HeckeElt:
    """N_w written in the T basis."""
    return HeckeElt(cache.n, cache.polys(w), "T")


def cbasis(cache: KLCache, w: AffinePerm) -> HeckeElt:
    """C_w = q^(-l(w)/2) N_w in the T basis."""
    return HeckeElt(cache.n, {y: c.shift(-w.length) for y, c in cache.polys(w).items()}, "T")


def to_ntilde(cache: KLCache, a: HeckeElt) -> HeckeElt:
    """Rewrite a T-basis element in the N basis by peeling off longest terms."""
    if a.basis != "T":
        raise ValueError("to_ntilde expects a T-basis element")
    rem = dict(a.terms)
    out: dict = {}
    while rem:
        x = max(rem)
        c = rem[x]
        out[x] = c
        for y, p in cache.polys(x).items():
            _acc(rem, y, -(c * p))
    return HeckeElt(a.n, out, "N")


def to_t(cache: KLCache, a: HeckeElt) -> HeckeElt:
    if a.basis != "N":
        raise ValueError("to_t expects an N-basis element")
    out: dict = {}
    for w, c in a.terms.items():
        for y, p in cache.polys(w).items():
            _acc(out, y, c * p)
    return HeckeElt(a.n, out, "T")


def ntilde_mul(cache: KLCache, a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product of two N-basis elements, in the N basis."""
    if a.basis != "N" or b.basis != "N":
        raise ValueError("ntilde_mul expects N-basis elements")
    out: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            cuv = cu * cv
            for w, f in cache.product(u, v).items():
                _acc(out, w, f * cuv)
    return HeckeElt(a.n, out, "N")


def f_struct(cache: KLCache, u: AffinePerm, v: AffinePerm) -> dict[AffinePerm, LaurentHalf]:
    return cache.product(u, v)


def h_struct(cache: KLCache, u: AffinePerm, v: AffinePerm) -> dict[AffinePerm, LaurentHalf]:
    """h_{u,v}^w = q^{-(l(u)+l(v)-l(w))/2} f~_{u,v}^w (structure constants of the C basis)."""
    s = u.length + v.length
    return {w: f.shift(w.length - s) for w, f in cache.product(u, v).items()}


def iota(a: HeckeElt) -> HeckeElt:
    """N_w -> N_{w^-1}, extended linearly."""
    if a.basis != "N":
        raise ValueError("iota expects an N-basis element")
    return HeckeElt(a.n, {inverse(w): c for w, c in a.terms.items()}, "N")


# --- independent oracle ---------------------------------------------------


def kl_by_bar_solve(w: AffinePerm, interval: Iterable[AffinePerm] | None = None) -> dict[AffinePerm, LaurentHalf]:
    """P_{x,w} for all x <= w, found from bar invariance alone.

    Solves ``N_w = q^{l(w)} bar(N_w)`` with the degree bound, going down the
    interval by length. Uses only T-basis arithmetic and the Bruhat order, so
    it shares no code with the recursion in :class:`KLCache`.
    """
    n = w.n
    wa, k = omega_decompose(w)
    if interval is None:
        interval = [x for x in enumerate_elements(n, wa.length, 0) if bruhat_leq(x, wa)]
    else:
        interval = [compose(x, omega(n, -k)) for x in interval]
    interval = sorted(interval, reverse=True)
    lw = wa.length
    bars = {y: _bar_t_basis(y) for y in interval}
    P: dict[AffinePerm, LaurentHalf] = {}
    for x in interval:
        if x == wa:
            P[x] = ONE
            continue
        rhs = ZERO
        for y, py in P.items():
            r = bars[y].get(x)
            if r is not None:
                rhs = rhs + py.bar() * r
        rhs = rhs.shift(2 * lw)
        d = lw - x.length
        low = LaurentHalf({e: c for e, c in rhs.items() if e <= d - 1})
        high = rhs - low
        if high != -(low.bar().shift(2 * d)):
            raise AssertionError(f"bar-invariance system inconsistent at {x}")
        if low:
            P[x] = low
    if not k:
        return P
    om = omega(n, k)
    return {compose(x, om): c for x, c in P.items()}
