"""
The affine cellular datum: the chain of cells, left cells with their star maps,
coordinates ``x -> (row, col, m)`` and the two compatibility checks.

For a two-sided cell lam the left cells are Gamma_1 = Gamma^lam (the left cell of
w_lam), Gamma_2, ..., each reached from Gamma^lam omega^i by right stars. The
recorded ``StarSequence`` of Gamma_k maps it back onto Gamma^lam. An element
x of Gamma_col with x^-1 in Gamma_row is sent to the diagonal cell by the map of
Gamma_col (acting on the right) and the map of Gamma_row (acting on the left,
through inverses). The diagonal element is w(m) for a lattice point m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .asymptotic import (
    DominantTuple,
    NotInTable,
    a_value,
    gamma_tilde_product,
    generators,
    lattice_table,
    lattice_to_weyl,
    pieri_product,
    sigma_asym,
)
from .cells import CellCertifier, StarSequence, right_star_orbit
from .coeff import LaurentHalf
from .hecke import KLCache, TruncationExceeded
from .schur import schur_mul, schur_ntilde
from .weyl import (
    AffinePerm,
    compose,
    dominance_leq,
    enumerate_elements,
    inverse,
    omega,
    partition_data,
    partitions,
)

__all__ = [
    "CellDatum",
    "CellChain",
    "build_chain",
    "LeftCell",
    "Coordinates",
    "CellSystem",
    "check_involution_compat",
    "check_bimodule_commute",
    "bimodule_samples",
]


# --- the chain ----------------------------------------------------------


@dataclass
class CellDatum:
    lam: tuple
    V_rank: int
    U_rank: int
    a_value: int
    w_lambda: tuple
    P_lambda: tuple
    B_generators: list
    idempotent: dict
    involution: str = "t_w -> t_(w^-1)"

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "V_rank": self.V_rank,
            "U_rank": self.U_rank,
            "a_value": self.a_value,
            "w_lambda": list(self.w_lambda),
            "P_lambda": list(self.P_lambda),
            "B_generators": self.B_generators,
            "idempotent": self.idempotent,
            "involution": self.involution,
        }


@dataclass
class CellChain:
    n: int
    order: list
    data: dict = field(default_factory=dict)

    def extends_reverse_dominance(self) -> bool:
        """lam^i > lam^j in dominance must force i < j."""
        for a, lam in enumerate(self.order):
            for b, mu in enumerate(self.order):
                if lam != mu and dominance_leq(mu, lam) and not a < b:
                    return False
        return True

    def to_json(self) -> dict:
        return {"n": self.n, "order": [list(l) for l in self.order], "cells": [self.data[l].to_json() for l in self.order]}


def build_chain(n: int) -> CellChain:
    order = list(partitions(n))
    chain = CellChain(n, order)
    for lam in order:
        pd = partition_data(lam)
        gens = []
        for i, j in generators(lam):
            x = DominantTuple.generator(lam, i, j)
            gens.append({"gen": [i, j], "inverse": j < 0, "window": list(lattice_to_weyl(lam, x).window)})
        chain.data[lam] = CellDatum(
            lam=lam,
            V_rank=pd.n_cells,
            U_rank=pd.m_cells,
            a_value=a_value(lam),
            w_lambda=pd.w_lambda.window,
            P_lambda=tuple(sorted(pd.P_lambda)),
            B_generators=gens,
            idempotent={"Q": sorted(pd.P_lambda), "P": sorted(pd.P_lambda), "window": list(pd.w_lambda.window)},
        )
    return chain


# --- left cells and coordinates -----------------------------------------


@dataclass(frozen=True)
class LeftCell:
    index: int
    rep: AffinePerm
    seq: StarSequence
    min_member: AffinePerm

    def to_json(self) -> dict:
        return {"index": self.index, "rep": list(self.rep.window), "min_member": list(self.min_member.window), "map": self.seq.to_json()}


@dataclass(frozen=True)
class Coordinates:
    row: int
    col: int
    m: DominantTuple
    exponent: int

    def to_json(self) -> dict:
        return {"row": self.row, "col": self.col, "m": self.m.to_json(), "exponent_half": self.exponent}


class CellSystem:
    """Left cells of the lam-cell with their maps onto Gamma^lam, at a fixed bound."""

    def __init__(self, certifier: CellCertifier, lam, bound: int | None = None, box: int = 4):
        self.certifier = certifier
        self.n = certifier.n
        self.lam = tuple(lam)
        self.pd = partition_data(self.lam)
        self.bound = certifier.bound if bound is None else bound
        self.box = box
        self._table = None
        self.cells = self._build()
        self._by_rep = {certifier.left_rep(c.rep): c.index for c in self.cells}

    def _build(self) -> list[LeftCell]:
        cert, wl, n = self.certifier, self.pd.w_lambda, self.n
        found = {}
        starts = [(i, compose(wl, omega(n, i))) for i in range(n)]
        # pure omega shifts first: they preserve length, so the map has no q-power
        for i, start in starts:
            key = cert.left_rep(start)
            if key not in found:
                found[key] = (start, StarSequence((), i), min(cert.left_class(start, 0), key=lambda x: x.window))
        for i, start in starts:
            if start.length > self.bound:
                continue
            orbit = right_star_orbit(start, self.bound) if n >= 3 else {start: StarSequence()}
            for y in sorted(orbit):
                key = cert.left_rep(y)
                if key in found:
                    continue
                seq = StarSequence(tuple(reversed(orbit[y].ops)), i)
                members = [x for x in cert.left_class(y, 0)]
                found[key] = (y, seq, min(members, key=lambda x: x.window))
        first = cert.left_rep(wl)
        rest = sorted((k for k in found if k != first), key=lambda k: found[k][2].window)
        out = []
        for idx, k in enumerate([first] + rest):
            y, seq, mm = found[k]
            out.append(LeftCell(idx, y, seq, mm))
        return out

    @property
    def complete(self) -> bool:
        return len(self.cells) == self.pd.n_cells

    def index_of(self, x: AffinePerm) -> int | None:
        if x.length > self.certifier.bound:
            return None
        return self._by_rep.get(self.certifier.left_rep(x))

    def table(self) -> dict:
        if self._table is None:
            self._table = {w: x for x, w in lattice_table(self.lam, -self.box, self.box).items()}
        return self._table

    def locate(self, d: AffinePerm) -> DominantTuple:
        try:
            return self.table()[d]
        except KeyError:
            raise NotInTable(f"{d} is not w(m) for m in the box of radius {self.box}") from None

    def coordinatize(self, x: AffinePerm) -> Coordinates | None:
        """(row, col, m, exponent) for x, or None when x is not certified in the cell."""
        col = self.index_of(x)
        row = self.index_of(inverse(x))
        if col is None or row is None:
            return None
        sc, sr = self.cells[col].seq, self.cells[row].seq
        a = sc.image(x)
        e1 = sc.exponent(x)
        ainv = inverse(a)
        e2 = sr.exponent(ainv)
        d = inverse(sr.image(ainv))
        return Coordinates(row, col, self.locate(d), e1 + e2)

    def element(self, row: int, col: int, m) -> AffinePerm:
        """The unique x of Gamma_col with x^-1 in Gamma_row and diagonal image w(m)."""
        d = lattice_to_weyl(self.lam, m)
        a = inverse(self.cells[row].seq.preimage(inverse(d)))
        return self.cells[col].seq.preimage(a)

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "n_cells_expected": self.pd.n_cells, "cells": [c.to_json() for c in self.cells]}


def check_involution_compat(system: CellSystem, samples=None) -> dict:
    """iota then coordinates agrees with coordinates then (transpose, sigma).

    ``samples`` defaults to every certified member of the two-sided cell within
    the bound. Elements whose left cell is not certified are counted, not failed.
    """
    cert = system.certifier
    if samples is None:
        samples = [x for x in cert.two_sided_class(system.pd.w_lambda) if x.length <= system.bound]
    checked, skipped, violations = 0, 0, []
    for x in samples:
        try:
            c = system.coordinatize(x)
            ci = system.coordinatize(inverse(x))
        except NotInTable:
            skipped += 1
            continue
        if c is None or ci is None:
            skipped += 1
            continue
        checked += 1
        try:
            sm = sigma_asym(system.lam, c.m)
        except NotInTable:
            skipped += 1
            checked -= 1
            continue
        expected = Coordinates(c.col, c.row, sm, c.exponent)
        ok = ci == expected and system.element(c.row, c.col, c.m) == x and c.exponent % 2 == 0
        if not ok:
            violations.append({"x": list(x.window), "coords": c.to_json(), "inverse_coords": ci.to_json(), "expected": expected.to_json()})
    return {
        "lambda": list(system.lam),
        "checked": checked,
        "skipped": skipped,
        "coverage": "no coverage" if checked == 0 else f"{checked} elements",
        "violations": violations,
    }


# --- bimodule commutation ----------------------------------------------------


def _gamma(lam, alpha, gen, beta) -> LaurentHalf:
    return gamma_tilde_product(lam, alpha, gen).get(beta, LaurentHalf())


def _pieri_preimages(lam, beta: DominantTuple, gen) -> list[DominantTuple]:
    """All alpha with beta among the Pieri terms of alpha times gen."""
    if gen is None:
        return [beta]
    i, j = gen
    mi = partition_data(lam).m[i - 1]
    cands = []
    if j < 0:
        pats = [tuple(range(mi))]
        sign = 1
    else:
        pats = list(combinations(range(mi), j))
        sign = -1
    for pos in pats:
        blk = list(beta.entries[i - 1])
        for p in pos:
            blk[p] += sign
        try:
            alpha = DominantTuple(lam, tuple(tuple(blk) if k == i - 1 else b for k, b in enumerate(beta.entries)))
        except ValueError:
            continue
        if beta in pieri_product(lam, alpha, gen):
            cands.append(alpha)
    return sorted(set(cands))


def _fcoeff(cache: KLCache, u, x, target, Q, P) -> LaurentHalf:
    if not Q and not P:
        return cache.product(u, x).get(target, LaurentHalf())
    prod = schur_mul(cache, schur_ntilde(Q, P, u), schur_ntilde(P, (), x))
    return prod.terms.get((frozenset(Q), frozenset(), target), LaurentHalf())


def bimodule_sides(system: CellSystem, cache: KLCache, u, v, y, gen, Q=(), P=()) -> tuple[LaurentHalf, LaurentHalf]:
    """Both sides of the commutation identity for one quadruple.

    The structure constants come from Hecke (or Schur) products, the gamma
    factors from the Pieri rule on the lattice.
    """
    lam = system.lam
    cv, cy = system.coordinatize(v), system.coordinatize(y)
    if cv is None or cy is None or cv.col != 0 or cy.col != 0:
        raise ValueError("v and y must be certified members of Gamma^lam")
    lhs = LaurentHalf()
    for alpha in _pieri_preimages(lam, cy.m, gen):
        x = system.element(cy.row, 0, alpha)
        g = _gamma(lam, alpha, gen, cy.m) if gen is not None else LaurentHalf.const(1)
        lhs = lhs + _fcoeff(cache, u, v, x, Q, P) * g
    rhs = LaurentHalf()
    betas = pieri_product(lam, cv.m, gen) if gen is not None else [cv.m]
    for beta in betas:
        x = system.element(cv.row, 0, beta)
        g = _gamma(lam, cv.m, gen, beta) if gen is not None else LaurentHalf.const(1)
        rhs = rhs + _fcoeff(cache, u, x, y, Q, P) * g
    return lhs, rhs


def bimodule_samples(system: CellSystem, cache: KLCache, u_len: int = 2, per_row: int = 2, limit: int = 40) -> list[tuple]:
    """Quadruples (u, v, y, gen) chosen so the right-hand side is typically nonzero."""
    lam, n = system.lam, system.n
    us = [u for u in enumerate_elements(n, u_len, 1)]
    gens = [None] + generators(lam)
    zero = DominantTuple.zero(lam)
    out = []
    for row in range(len(system.cells)):
        for gen in gens:
            alphas = [zero] + ([DominantTuple.generator(lam, *generators(lam)[0])] if per_row > 1 else [])
            for alpha in alphas:
                v = system.element(row, 0, alpha)
                for u in us:
                    if len(out) >= limit:
                        return out
                    betas = pieri_product(lam, alpha, gen) if gen is not None else [alpha]
                    ys = []
                    for beta in betas:
                        x = system.element(row, 0, beta)
                        try:
                            prod = cache.product(u, x)
                        except TruncationExceeded:
                            continue
                        ys += [t for t in prod if system.index_of(t) == 0]
                    ys = sorted(set(ys))
                    if ys:
                        out.append((u, v, ys[0], gen))
                        break
    return out


def check_bimodule_commute(system: CellSystem, cache: KLCache, samples=None, schur_subsets=True) -> dict:
    """Evaluate both sides on sampled quadruples; exact equality is required.

    With ``schur_subsets`` each quadruple is also evaluated with the largest
    admissible subsets Q = L(u) ∩ L(y) and P = R(u) ∩ L(v) (finite part only).
    """
    if samples is None:
        samples = bimodule_samples(system, cache)
    checked, nonzero, skipped, violations = 0, 0, 0, []
    for u, v, y, gen in samples:
        cases = [((), ())]
        if schur_subsets:
            Q = tuple(sorted((u.left_descents & y.left_descents) - {0}))
            P = tuple(sorted((u.right_descents & v.left_descents) - {0}))
            if Q or P:
                cases.append((Q, P))
        for Q, P in cases:
            try:
                lhs, rhs = bimodule_sides(system, cache, u, v, y, gen, Q, P)
            except (TruncationExceeded, NotInTable, ValueError):
                skipped += 1
                continue
            checked += 1
            if lhs:
                nonzero += 1
            if lhs != rhs:
                violations.append(
                    {"u": list(u.window), "v": list(v.window), "y": list(y.window), "gen": gen, "Q": list(Q), "P": list(P), "lhs": str(lhs), "rhs": str(rhs)}
                )
    return {"lambda": list(system.lam), "checked": checked, "nonzero": nonzero, "skipped": skipped, "violations": violations}
