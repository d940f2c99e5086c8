"""
Star operations, cell certificates and the normalised maps between left cells.

Cells are infinite, so nothing here decides cell membership in general.
Instead we collect positive certificates:

* left stars and left multiplication by omega keep an element in its left cell;
* right stars and right multiplication by omega keep it in its right cell;
* two elements in one strongly connected component of the (length-truncated)
  left preorder graph are left equivalent.

Different right descent sets are the one negative certificate used: elements of
one left cell share ``R(w)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .coeff import LaurentHalf
from .hecke import HeckeElt, KLCache, f_struct, h_struct
from .weyl import (
    AffinePerm,
    compose,
    enumerate_elements,
    inverse,
    omega,
    omega_decompose,
)

__all__ = [
    "UnsupportedRank",
    "StarDomainError",
    "StarSequence",
    "in_DR",
    "in_DL",
    "right_star",
    "left_star",
    "right_star_orbit",
    "left_star_orbit",
    "apply_phi",
    "CellCertifier",
    "check_star_identity",
    "find_cell_map",
    "left_form",
]


class UnsupportedRank(ValueError):
    pass


class StarDomainError(ValueError):
    pass


def _need_rank(w: AffinePerm):
    if w.n < 3:
        raise UnsupportedRank(f"star operations need n >= 3, got n = {w.n}")


def in_DR(w: AffinePerm, i: int) -> bool:
    _need_rank(w)
    R = w.right_descents
    return ((i % w.n) in R) != (((i + 1) % w.n) in R)


def in_DL(w: AffinePerm, i: int) -> bool:
    _need_rank(w)
    L = w.left_descents
    return ((i % w.n) in L) != (((i + 1) % w.n) in L)


def right_star(w: AffinePerm, i: int) -> AffinePerm:
    if not in_DR(w, i):
        raise StarDomainError(f"{w} is not in D_R(s_{i % w.n})")
    for c in (w.rmul_simple(i), w.rmul_simple(i + 1)):
        if in_DR(c, i):
            return c
    raise AssertionError("no right star candidate in the domain")  # pragma: no cover


def left_star(w: AffinePerm, i: int) -> AffinePerm:
    if not in_DL(w, i):
        raise StarDomainError(f"{w} is not in D_L(s_{i % w.n})")
    for c in (w.lmul_simple(i), w.lmul_simple(i + 1)):
        if in_DL(c, i):
            return c
    raise AssertionError("no left star candidate in the domain")  # pragma: no cover


@dataclass(frozen=True)
class StarSequence:
    """Star operations applied left to right, then right multiplication by omega^(-i_gamma)."""

    ops: tuple = ()
    i_gamma: int = 0

    @property
    def j_gamma(self) -> int:
        return sum(1 for side, _ in self.ops if side == "right")

    def stars(self, w: AffinePerm) -> AffinePerm:
        """w -> w** (the star part only)."""
        for side, i in self.ops:
            w = right_star(w, i) if side == "right" else left_star(w, i)
        return w

    def image(self, w: AffinePerm) -> AffinePerm:
        x = self.stars(w)
        return compose(x, omega(w.n, -self.i_gamma)) if self.i_gamma else x

    def exponent(self, w: AffinePerm) -> int:
        """Half-exponent l(w) - l(w**) + j_gamma of the normalising power."""
        return w.length - self.stars(w).length + self.j_gamma

    def preimage(self, z: AffinePerm) -> AffinePerm:
        x = compose(z, omega(z.n, self.i_gamma)) if self.i_gamma else z
        for side, i in reversed(self.ops):
            x = right_star(x, i) if side == "right" else left_star(x, i)
        return x

    def then(self, side: str, i: int) -> "StarSequence":
        return StarSequence(self.ops + ((side, i),), self.i_gamma)

    def reversed(self) -> "StarSequence":
        return StarSequence(tuple(reversed(self.ops)), 0)

    def to_json(self) -> dict:
        return {"ops": [[s, i] for s, i in self.ops], "i_gamma": self.i_gamma, "j_gamma": self.j_gamma}


def _star_orbit(w: AffinePerm, bound: int, side: str) -> dict[AffinePerm, StarSequence]:
    _need_rank(w)
    star = right_star if side == "right" else left_star
    dom = in_DR if side == "right" else in_DL
    found = {w: StarSequence()}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for i in range(w.n):
            if dom(x, i):
                y = star(x, i)
                if y.length <= bound and y not in found:
                    found[y] = found[x].then(side, i)
                    queue.append(y)
    return found


def right_star_orbit(w: AffinePerm, bound: int) -> dict[AffinePerm, StarSequence]:
    """Closure of w under right stars (length <= bound), with witnesses from w.

    Every member is right-cell equivalent to w.
    """
    return _star_orbit(w, bound, "right")


def left_star_orbit(w: AffinePerm, bound: int) -> dict[AffinePerm, StarSequence]:
    """Closure of w under left stars (length <= bound); members are left-cell equivalent to w."""
    return _star_orbit(w, bound, "left")


def apply_phi(seq: StarSequence, a: HeckeElt) -> HeckeElt:
    """N_w -> q^{(l(w) - l(w**) + j)/2} N_{w** omega^-i}, extended linearly."""
    if a.basis != "N":
        raise ValueError("apply_phi expects an N-basis element")
    out = {}
    for w, c in a.terms.items():
        e = seq.exponent(w)
        if e % 2:
            raise AssertionError(f"odd normalising exponent {e} at {w}")
        img = seq.image(w)
        out[img] = out.get(img, LaurentHalf()) + c.shift(e)
    return HeckeElt(a.n, out, "N")


def left_form(w: AffinePerm) -> tuple[AffinePerm, int]:
    """(w', k) with w = omega^k w' and w' affine."""
    k = w.omega_shift
    return (compose(omega(w.n, -k), w), k) if k else (w, 0)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic representative: the smaller element
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class CellCertifier:
    """Positive left / right / two-sided cell certificates inside a length bound.

    Left cells are handled through the affine part in left form: by the
    omega invariance of the left preorder, ``omega^i v ~_L omega^j w`` iff
    ``v ~_L w`` for affine ``v, w``.
    """

    def __init__(self, cache: KLCache, bound: int | None = None):
        self.cache = cache
        self.n = cache.n
        self.bound = cache.max_length if bound is None else bound
        self.elements = enumerate_elements(self.n, self.bound, 0)
        self._left = self._classes(self._left_graph(), side="left")
        self._lr = None

    def _left_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        n = self.n
        for x in self.elements:
            g.add_node(x)
            if n == 1:
                continue
            L = x.left_descents
            mus = self.cache.mu_list(x)
            for s in range(n):
                if s in L:
                    continue
                sx = x.lmul_simple(s)
                if sx.length <= self.bound:
                    g.add_edge(x, sx)
                for z, _ in mus:
                    if s in z.left_descents:
                        g.add_edge(x, z)
        return g

    def _classes(self, g: nx.DiGraph, side: str) -> _UnionFind:
        uf = _UnionFind()
        for comp in nx.strongly_connected_components(g):
            comp = sorted(comp)
            for y in comp:
                uf.find(y)
                uf.union(comp[0], y)
        if self.n >= 3 and side == "left":
            for x in self.elements:
                for i in range(self.n):
                    if in_DL(x, i):
                        y = left_star(x, i)
                        if y.length <= self.bound:
                            uf.union(x, y)
        return uf

    def _check(self, w: AffinePerm):
        if w.length > self.bound:
            from .hecke import TruncationExceeded

            raise TruncationExceeded(f"{w} is longer than the certificate bound {self.bound}")

    # --- left cells ---------------------------------------------------

    def left_rep(self, w: AffinePerm) -> AffinePerm:
        self._check(w)
        return self._left.find(left_form(w)[0])

    def left_equivalent(self, v: AffinePerm, w: AffinePerm) -> bool:
        """True only when v ~_L w is certified."""
        return self.left_rep(v) == self.left_rep(w)

    def left_class(self, w: AffinePerm, omega_range: int = 0) -> list[AffinePerm]:
        """Certified members of the left cell of w, as omega^k w' with |k| <= omega_range."""
        rep = self.left_rep(w)
        base = [x for x in self.elements if self._left.find(x) == rep]
        out = []
        for k in range(-omega_range, omega_range + 1):
            om = omega(self.n, k)
            out.extend(compose(om, x) for x in base)
        return sorted(out)

    def not_left_equivalent(self, v: AffinePerm, w: AffinePerm) -> bool:
        """True only when v and w are certainly in different left cells."""
        return v.right_descents != w.right_descents

    # --- right cells via inversion -------------------------------------

    def right_equivalent(self, v: AffinePerm, w: AffinePerm) -> bool:
        return self.left_equivalent(inverse(v), inverse(w))

    def right_class(self, w: AffinePerm, omega_range: int = 0) -> list[AffinePerm]:
        return sorted(inverse(x) for x in self.left_class(inverse(w), omega_range))

    # --- two-sided cells ------------------------------------------------

    def _lr_classes(self) -> _UnionFind:
        if self._lr is None:
            g = self._left_graph()
            # right edges are the inverses of left edges
            for a, b in list(g.edges()):
                g.add_edge(inverse(a), inverse(b))
            uf = self._classes(g, side="lr")
            for x in self.elements:
                # left cells, right cells and omega conjugation all sit inside a two-sided cell
                uf.union(x, self._left.find(x))
                uf.union(x, inverse(self._left.find(inverse(x))))
                conj = compose(compose(omega(self.n, 1), x), omega(self.n, -1))
                uf.union(x, conj)
            self._lr = uf
        return self._lr

    def two_sided_equivalent(self, v: AffinePerm, w: AffinePerm) -> bool:
        self._check(v)
        self._check(w)
        uf = self._lr_classes()
        return uf.find(omega_decompose(v)[0]) == uf.find(omega_decompose(w)[0])

    def two_sided_class(self, w: AffinePerm) -> list[AffinePerm]:
        """Certified affine members of the two-sided cell of w."""
        uf = self._lr_classes()
        rep = uf.find(omega_decompose(w)[0])
        return [x for x in self.elements if uf.find(x) == rep]


# --- star identity ------------------------------------------------------


def check_star_identity(
    cache: KLCache,
    u: AffinePerm,
    v: AffinePerm,
    i: int,
    certifier: CellCertifier,
    bound: int,
) -> dict:
    """Check h_{u,v}^w = h_{u,v*}^{w*} and its normalised f~ form.

    ``w`` runs over certified left-cell companions of ``v`` (length <= bound,
    same omega component) lying in D_R(s_i).
    """
    if not in_DR(v, i):
        raise StarDomainError(f"{v} is not in D_R(s_{i})")
    vs = right_star(v, i)
    k = v.omega_shift
    ws = [w for w in certifier.left_class(v, omega_range=abs(k)) if w.omega_shift == k and w.length <= bound]
    h_v = h_struct(cache, u, v)
    h_vs = h_struct(cache, u, vs)
    f_v = f_struct(cache, u, v)
    f_vs = f_struct(cache, u, vs)
    zero = LaurentHalf()
    checked = 0
    nonzero = 0
    violations = []
    for w in ws:
        if not in_DR(w, i):
            continue
        wst = right_star(w, i)
        checked += 1
        a, b = h_v.get(w, zero), h_vs.get(wst, zero)
        if a:
            nonzero += 1
        if a != b:
            violations.append({"u": list(u.window), "v": list(v.window), "w": list(w.window), "form": "h", "lhs": str(a), "rhs": str(b)})
        lhs = f_v.get(w, zero).shift(w.length - wst.length + 1)
        rhs = f_vs.get(wst, zero).shift(v.length - vs.length + 1)
        if lhs != rhs:
            violations.append({"u": list(u.window), "v": list(v.window), "w": list(w.window), "form": "f", "lhs": str(lhs), "rhs": str(rhs)})
    return {"checked": checked, "nonzero": nonzero, "violations": violations}


# --- maps between left cells ----------------------------------------------


def find_cell_map(
    source_frontier: Iterable[AffinePerm],
    target_frontier: Iterable[AffinePerm],
    bound: int,
    omega_range: int = 2,
    max_ops: int = 6,
) -> StarSequence | None:
    """Search for right stars plus an omega power taking every source element into the target.

    Breadth-first over op sequences (shortest first, ties by op index), so the
    answer is deterministic. Returns None if nothing is found.
    """
    source = sorted(set(source_frontier))
    target = set(target_frontier)
    if not source:
        return StarSequence()
    n = source[0].n
    om = {k: omega(n, -k) for k in range(-omega_range, omega_range + 1)}
    ks = sorted(om, key=lambda k: (abs(k), k))

    def hit(images):
        for k in ks:
            if all(compose(x, om[k]) in target for x in images):
                return k
        return None

    k = hit(source)
    if k is not None:
        return StarSequence((), k)
    if n < 3:
        return None
    seen = {tuple(source)}
    queue = deque([((), source)])
    while queue:
        ops, imgs = queue.popleft()
        if len(ops) >= max_ops:
            continue
        for i in range(n):
            if not all(in_DR(x, i) for x in imgs):
                continue
            nxt = [right_star(x, i) for x in imgs]
            if any(x.length > bound for x in nxt):
                continue
            key = tuple(nxt)
            if key in seen:
                continue
            seen.add(key)
            new_ops = ops + (("right", i),)
            k = hit(nxt)
            if k is not None:
                return StarSequence(new_ops, k)
            queue.append((new_ops, nxt))
    return None
