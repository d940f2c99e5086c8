"""
The a-value, gamma coefficients and the dominant lattice of the diagonal cell.

For a partition ``lam`` with blocks ``(r_i, m_i)`` the lattice D(lam) is the set
of tuples ``x = (x_i)`` where each ``x_i`` is a non-increasing integer tuple of
length ``m_i``. The map ``x -> w(x)`` starts at ``w(0) = w_lam`` and adds one
unit at a time by a cyclic shuffle of the rows of ``lam``.

>>> lattice_to_weyl((2,), DominantTuple((2,), ((1, 0),))).window
(4, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .coeff import LaurentHalf
from .hecke import KLCache, h_struct
from .weyl import AffinePerm, compose, inverse, omega, partition_data

__all__ = [
    "DominantTuple",
    "a_value",
    "gamma_from_h",
    "lattice_to_weyl",
    "lattice_table",
    "pieri_product",
    "gamma_tilde_product",
    "length_parity_check",
    "sigma_asym",
    "generators",
    "NotInTable",
]


class NotInTable(LookupError):
    """The element asked for lies outside the enumerated box."""


@dataclass(frozen=True, order=True)
class DominantTuple:
    """A point of D(lam): one non-increasing tuple per block."""

    lam: tuple
    entries: tuple

    def __post_init__(self):
        lam = tuple(self.lam)
        entries = tuple(tuple(int(v) for v in blk) for blk in self.entries)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "entries", entries)
        m = partition_data(lam).m
        if tuple(len(b) for b in entries) != m:
            raise ValueError(f"block shapes {[len(b) for b in entries]} do not match {list(m)}")
        for b in entries:
            if any(a < c for a, c in zip(b, b[1:])):
                raise ValueError(f"block {list(b)} is not non-increasing")

    @classmethod
    def zero(cls, lam) -> "DominantTuple":
        return cls(tuple(lam), tuple((0,) * m for m in partition_data(lam).m))

    @classmethod
    def generator(cls, lam, i: int, j: int) -> "DominantTuple":
        """y_{ij} (1-based), or -y_{i m_i} when j = -m_i."""
        m = partition_data(lam).m
        if not 1 <= i <= len(m):
            raise ValueError(f"block index {i} out of range")
        mi = m[i - 1]
        if j == -mi:
            blk = (-1,) * mi
        elif 1 <= j <= mi:
            blk = (1,) * j + (0,) * (mi - j)
        else:
            raise ValueError(f"generator index {j} out of range for block of size {mi}")
        return cls(tuple(lam), tuple(blk if k == i - 1 else (0,) * mk for k, mk in enumerate(m)))

    def __add__(self, other: "DominantTuple") -> "DominantTuple":
        return DominantTuple(self.lam, tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.entries, other.entries)))

    def flat(self) -> tuple[int, ...]:
        return tuple(v for b in self.entries for v in b)

    def is_nonneg(self) -> bool:
        return all(v >= 0 for v in self.flat())

    def to_json(self):
        return [list(b) for b in self.entries]

    def __str__(self):
        return str([list(b) for b in self.entries])


def _as_tuple(lam, x) -> DominantTuple:
    if isinstance(x, DominantTuple):
        if x.lam != tuple(lam):
            raise ValueError("tuple belongs to a different partition")
        return x
    return DominantTuple(tuple(lam), tuple(tuple(b) for b in x))


def a_value(lam: Sequence[int]) -> int:
    """The a-value on the two-sided cell of lam, taken to be l(w_lam)."""
    return partition_data(lam).w_lambda.length


def gamma_from_h(cache: KLCache, u: AffinePerm, v: AffinePerm, w: AffinePerm, a: int) -> int:
    """Coefficient of q^(a/2) in h_{u,v}^w."""
    h = h_struct(cache, u, v).get(w)
    return h.coeff(a) if h is not None else 0


# --- the bijection x -> w(x) ---------------------------------------------


def _step(pd, w: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    """One unit added at block i, position j (both 1-based)."""
    n = pd.n
    lam = pd.lam
    r = pd.r[i - 1]
    e = pd.e
    js = {r: j}
    for k in range(r - 1, 0, -1):
        target = w[e(k + 1, js[k + 1]) - 1]
        # row k is decreasing; j_k is the first position whose value drops below target
        jk = next((l for l in range(1, lam[k - 1] + 1) if w[e(k, l) - 1] < target), None)
        if jk is None:
            raise AssertionError(f"no insertion position in row {k} for {target}")
        js[k] = jk
    out = list(w)
    for k in range(1, r):
        out[e(k, js[k]) - 1] = w[e(k + 1, js[k + 1]) - 1]
    out[e(r, js[r]) - 1] = w[e(1, js[1]) - 1] + n
    return tuple(out)


@lru_cache(maxsize=None)
def _weyl_nonneg(lam: tuple, entries: tuple) -> tuple[int, ...]:
    pd = partition_data(lam)
    if all(v == 0 for b in entries for v in b):
        return pd.w_lambda.window
    # peel at the largest block with a positive entry, then its last positive slot
    i = max(k for k, b in enumerate(entries, start=1) if any(v > 0 for v in b))
    blk = entries[i - 1]
    j = max(l for l, v in enumerate(blk, start=1) if v > 0)
    smaller = list(map(list, entries))
    smaller[i - 1][j - 1] -= 1
    prev = _weyl_nonneg(lam, tuple(map(tuple, smaller)))
    return _step(pd, prev, i, j)


def lattice_to_weyl(lam: Sequence[int], x) -> AffinePerm:
    """w(x) for x in D(lam)."""
    lam = tuple(lam)
    x = _as_tuple(lam, x)
    pd = partition_data(lam)
    entries = [list(b) for b in x.entries]
    shifts = 0
    while any(v < 0 for b in entries for v in b):
        # omega^n w(x) = w(x'), x'_{ij} = x_{ij} + r_i
        entries = [[v + r for v in b] for b, r in zip(entries, pd.r)]
        shifts += 1
    w = AffinePerm(pd.n, _weyl_nonneg(lam, tuple(map(tuple, entries))), _checked=True)
    if shifts:
        w = compose(omega(pd.n, -pd.n * shifts), w)
    return w


def _box(lam, low: int, high: int) -> list[DominantTuple]:
    m = partition_data(lam).m
    blocks = []
    for mi in m:
        blocks.append([t for t in product(range(high, low - 1, -1), repeat=mi) if all(a >= b for a, b in zip(t, t[1:]))])
    return sorted(DominantTuple(tuple(lam), combo) for combo in product(*blocks))


def lattice_table(lam: Sequence[int], low: int = 0, high: int = 3) -> dict[DominantTuple, AffinePerm]:
    """w(x) for every x in D(lam) with all entries in [low, high]."""
    return {x: lattice_to_weyl(lam, x) for x in _box(tuple(lam), low, high)}


def generators(lam: Sequence[int]) -> list[tuple[int, int]]:
    """Generator labels (i, j) and the inverse generators (i, -m_i)."""
    m = partition_data(lam).m
    out = [(i, j) for i, mi in enumerate(m, start=1) for j in range(1, mi + 1)]
    out += [(i, -mi) for i, mi in enumerate(m, start=1)]
    return out


def pieri_product(lam: Sequence[int], x, gen: tuple[int, int]) -> list[DominantTuple]:
    """Tuples tau + x for the product t_{w(x)} t_{w(y_ij)} (each with multiplicity one)."""
    lam = tuple(lam)
    x = _as_tuple(lam, x)
    i, j = gen
    m = partition_data(lam).m
    mi = m[i - 1]
    if j == -mi:
        return [x + DominantTuple.generator(lam, i, j)]
    if not 1 <= j <= mi:
        raise ValueError(f"generator index {j} out of range")
    blk = x.entries[i - 1]
    out = []
    for pos in combinations(range(mi), j):
        nb = list(blk)
        for p in pos:
            nb[p] += 1
        if all(a >= b for a, b in zip(nb, nb[1:])):
            ent = tuple(tuple(nb) if k == i - 1 else b for k, b in enumerate(x.entries))
            out.append(DominantTuple(lam, ent))
    return sorted(out)


def gamma_tilde_product(lam: Sequence[int], x, gen: tuple[int, int] | None) -> dict[DominantTuple, LaurentHalf]:
    """Coefficients of N~_{w(z)} in N~_{w(x)} N~_{w(gen)} for the normalised basis.

    ``gen=None`` multiplies by the identity t_{w(0)}.
    """
    lam = tuple(lam)
    x = _as_tuple(lam, x)
    lw = partition_data(lam).w_lambda.length
    if gen is None:
        return {x: LaurentHalf.const(1)}
    lx = lattice_to_weyl(lam, x).length
    lg = lattice_to_weyl(lam, DominantTuple.generator(lam, *gen)).length
    out = {}
    for z in pieri_product(lam, x, gen):
        out[z] = LaurentHalf.monomial(lx + lg - lattice_to_weyl(lam, z).length - lw)
    return out


def length_parity_check(lam: Sequence[int], x) -> bool:
    lam = tuple(lam)
    x = _as_tuple(lam, x)
    if not x.is_nonneg():
        raise ValueError("length parity is stated for non-negative tuples")
    pd = partition_data(lam)
    expected = pd.w_lambda.length + sum(v * (pd.n + r) for b, r in zip(x.entries, pd.r) for v in b)
    return (lattice_to_weyl(lam, x).length - expected) % 2 == 0


def sigma_asym(lam: Sequence[int], x, table: dict[DominantTuple, AffinePerm] | None = None) -> DominantTuple:
    """The tuple x' with w(x') = w(x)^-1, located in an enumerated table."""
    lam = tuple(lam)
    x = _as_tuple(lam, x)
    if table is None:
        b = max([abs(v) for v in x.flat()] + [1])
        table = lattice_table(lam, -2 * b - 2, 2 * b + 2)
    target = inverse(lattice_to_weyl(lam, x))
    for y, w in table.items():
        if w == target:
            return y
    raise NotInTable(f"inverse of w({x}) is not in the enumerated table")
