"""
The extended affine Weyl group of type A~_{n-1} as periodic permutations.

An element ``w`` is a bijection of Z with ``w(i + n) = w(i) + n`` and
``sum(w(i) - i for i in 1..n) = 0 (mod n)``. It is stored by its window
``[w(1), ..., w(n)]``. Products compose as maps: ``(uv)(j) = u(v(j))``.

>>> s1 = from_window(2, [2, 1])
>>> s0 = simple(2, 0)
>>> compose(s1, s0).window, compose(s1, s0).length
((-1, 4), 2)
>>> omega(3).length, apply(omega(3), 5)
(0, 6)
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterable, Sequence

from .coeff import LaurentHalf

__all__ = [
    "AffinePerm",
    "PartitionData",
    "RankMismatch",
    "from_window",
    "identity",
    "omega",
    "simple",
    "compose",
    "inverse",
    "apply",
    "length",
    "right_descents",
    "left_descents",
    "bruhat_leq",
    "reduced_word",
    "omega_decompose",
    "from_word",
    "enumerate_elements",
    "parabolic_enumerate",
    "longest_element",
    "poincare_poly",
    "max_double_coset_rep",
    "is_max_rep",
    "partitions",
    "partition_data",
    "dominance_leq",
    "n_cells",
    "m_cells",
    "parse_element",
]


class RankMismatch(ValueError):
    pass


class AffinePerm:
    """Element of W, immutable and hashable. Length is computed once."""

    __slots__ = ("n", "window", "_hash", "_len", "_rdes")

    def __init__(self, n: int, window: Sequence[int], _checked: bool = False):
        if not _checked:
            window = tuple(int(x) for x in window)
            if n < 1:
                raise ValueError("rank must be positive")
            if len(window) != n:
                raise ValueError(f"window of length {len(window)} for rank {n}")
            if len({x % n for x in window}) != n:
                raise ValueError(f"window {list(window)}: residues mod {n} collide")
            if (sum(window) - n * (n + 1) // 2) % n:
                raise ValueError(f"window {list(window)}: sum(w(i) - i) is not 0 mod {n}")
        self.n = n
        self.window = window
        self._hash = hash((n, window))
        self._len = None
        self._rdes = None

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __eq__(self, other):
        if not isinstance(other, AffinePerm):
            return NotImplemented
        return self.n == other.n and self.window == other.window

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "AffinePerm"):
        # deterministic tie-break order: by length, then window
        return (self.length, self.window) < (other.length, other.window)

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        return compose(self, other)

    def __repr__(self):
        return f"w{list(self.window)}"

    @property
    def length(self) -> int:
        if self._len is None:
            self._len = _length(self.n, self.window)
        return self._len

    @property
    def omega_shift(self) -> int:
        n = self.n
        return (sum(self.window) - n * (n + 1) // 2) // n

    @property
    def right_descents(self) -> frozenset[int]:
        if self._rdes is None:
            n, w = self.n, self.window
            if n == 1:
                self._rdes = frozenset()
            else:
                des = {i for i in range(1, n) if w[i - 1] > w[i]}
                if w[n - 1] - n > w[0]:
                    des.add(0)
                self._rdes = frozenset(des)
        return self._rdes

    @property
    def left_descents(self) -> frozenset[int]:
        return inverse(self).right_descents

    def rmul_simple(self, i: int) -> "AffinePerm":
        """w * s_i (swap window positions i, i+1 periodically)."""
        n = self.n
        if n == 1:
            raise ValueError("no simple reflections for n = 1")
        i %= n
        w = list(self.window)
        if i == 0:
            w[0], w[n - 1] = w[n - 1] - n, w[0] + n
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return AffinePerm(n, tuple(w), _checked=True)

    def lmul_simple(self, i: int) -> "AffinePerm":
        """s_i * w (act on values)."""
        n = self.n
        if n == 1:
            raise ValueError("no simple reflections for n = 1")
        i %= n
        lo, hi = i % n, (i + 1) % n
        out = []
        for x in self.window:
            r = x % n
            if r == lo:
                out.append(x + 1)
            elif r == hi:
                out.append(x - 1)
            else:
                out.append(x)
        return AffinePerm(n, tuple(out), _checked=True)

    def to_json(self) -> dict:
        return {"n": self.n, "window": list(self.window)}


def _length(n: int, w: Sequence[int]) -> int:
    total = 0
    for i in range(n):
        wi = w[i]
        for j in range(i + 1, n):
            total += abs((w[j] - wi) // n)
    return total


def from_window(n: int, window: Sequence[int]) -> AffinePerm:
    return AffinePerm(n, window)


@lru_cache(maxsize=None)
def identity(n: int) -> AffinePerm:
    return AffinePerm(n, tuple(range(1, n + 1)), _checked=True)


def omega(n: int, k: int = 1) -> AffinePerm:
    return AffinePerm(n, tuple(range(1 + k, n + 1 + k)), _checked=True)


def simple(n: int, i: int) -> AffinePerm:
    return identity(n).rmul_simple(i)


def compose(u: AffinePerm, v: AffinePerm) -> AffinePerm:
    if u.n != v.n:
        raise RankMismatch(f"ranks {u.n} and {v.n}")
    return AffinePerm(u.n, tuple(u(x) for x in v.window), _checked=True)


def inverse(w: AffinePerm) -> AffinePerm:
    n = w.n
    out = [0] * n
    for j, m in enumerate(w.window, start=1):
        q, r = divmod(m - 1, n)
        out[r] = j - q * n
    return AffinePerm(n, tuple(out), _checked=True)


def apply(w: AffinePerm, i: int) -> int:
    return w(i)


def length(w: AffinePerm) -> int:
    return w.length


def right_descents(w: AffinePerm) -> frozenset[int]:
    return w.right_descents


def left_descents(w: AffinePerm) -> frozenset[int]:
    return w.left_descents


def omega_decompose(w: AffinePerm) -> tuple[AffinePerm, int]:
    """w = w_aff * omega^k with w_aff in the non-extended affine group."""
    k = w.omega_shift
    if k == 0:
        return w, 0
    return compose(w, omega(w.n, -k)), k


def reduced_word(w: AffinePerm) -> tuple[list[int], int]:
    """Indices i_1..i_l and k with w = s_{i_1} ... s_{i_l} omega^k."""
    x, k = omega_decompose(w)
    word: list[int] = []
    while x.length:
        i = min(x.right_descents)
        word.append(i)
        x = x.rmul_simple(i)
    word.reverse()
    return word, k


def from_word(n: int, word: Iterable[int], k: int = 0) -> AffinePerm:
    x = identity(n)
    for i in word:
        x = x.rmul_simple(i)
    return compose(x, omega(n, k)) if k else x


def bruhat_leq(v: AffinePerm, w: AffinePerm) -> bool:
    if v.n != w.n:
        raise RankMismatch(f"ranks {v.n} and {w.n}")
    if v.omega_shift != w.omega_shift:
        return False
    return _bruhat(v, w)


@lru_cache(maxsize=1 << 20)
def _bruhat(v: AffinePerm, w: AffinePerm) -> bool:
    # lifting property: for s in R(w), v <= w iff min(v, vs) <= ws
    lv, lw = v.length, w.length
    if lv > lw:
        return False
    if lv == lw:
        return v == w
    if lv == 0:
        return True
    s = min(w.right_descents)
    ws = w.rmul_simple(s)
    if s in v.right_descents:
        return _bruhat(v.rmul_simple(s), ws)
    return _bruhat(v, ws)


def enumerate_elements(n: int, max_length: int, omega_range: int = 0) -> list[AffinePerm]:
    """All w with l(w) <= max_length and |omega_shift(w)| <= omega_range.

    Breadth-first from the omega powers under right multiplication by simple
    reflections. Sorted by (length, window).
    """
    seeds = [omega(n, k) for k in range(-omega_range, omega_range + 1)]
    seen = set(seeds)
    frontier = list(seeds)
    if n > 1:
        for _ in range(max_length):
            nxt = []
            for x in frontier:
                for i in range(n):
                    if i not in x.right_descents:
                        y = x.rmul_simple(i)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
            frontier = nxt
    return sorted(seen)


# --- parabolic subgroups and double cosets ---------------------------------


def _check_parabolic(n: int, P: Iterable[int]) -> frozenset[int]:
    P = frozenset(int(i) for i in P)
    bad = [i for i in P if not 1 <= i <= n - 1]
    if bad:
        raise ValueError(f"parabolic generators must lie in 1..{n - 1}, got {sorted(bad)}")
    return P


@lru_cache(maxsize=None)
def _parabolic(n: int, P: frozenset[int]) -> tuple[AffinePerm, ...]:
    e = identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for i in P:
            y = x.rmul_simple(i)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def parabolic_enumerate(n: int, P: Iterable[int]) -> list[AffinePerm]:
    return list(_parabolic(n, _check_parabolic(n, P)))


def longest_element(n: int, P: Iterable[int]) -> AffinePerm:
    return _parabolic(n, _check_parabolic(n, P))[-1]


@lru_cache(maxsize=None)
def _poincare(n: int, P: frozenset[int]) -> LaurentHalf:
    counts: dict[int, int] = {}
    for x in _parabolic(n, P):
        counts[2 * x.length] = counts.get(2 * x.length, 0) + 1
    return LaurentHalf(counts)


def poincare_poly(n: int, P: Iterable[int]) -> LaurentHalf:
    return _poincare(n, _check_parabolic(n, P))


def max_double_coset_rep(Q: Iterable[int], w: AffinePerm, P: Iterable[int]) -> AffinePerm:
    n = w.n
    WQ = _parabolic(n, _check_parabolic(n, Q))
    WP = _parabolic(n, _check_parabolic(n, P))
    best = w
    for u in WQ:
        uw = compose(u, w)
        for v in WP:
            x = compose(uw, v)
            if x.length > best.length:
                best = x
    return best


def is_max_rep(Q: Iterable[int], w: AffinePerm, P: Iterable[int]) -> bool:
    Q = _check_parabolic(w.n, Q)
    P = _check_parabolic(w.n, P)
    return Q <= w.left_descents and P <= w.right_descents


# --- partitions -------------------------------------------------------------


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    out: list[tuple[int, ...]] = []

    def rec(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def _check_partition(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if not lam or any(x <= 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{list(lam)} is not a partition")
    return lam


def dual_partition(lam: Sequence[int]) -> tuple[int, ...]:
    lam = _check_partition(lam)
    return tuple(sum(1 for part in lam if part >= i) for i in range(1, lam[0] + 1))


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    lam, mu = _check_partition(lam), _check_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("partitions of different sizes")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def n_cells(lam: Sequence[int]) -> int:
    """Number of left cells in the two-sided cell of lam (Hecke algebra)."""
    lam = _check_partition(lam)
    out = factorial(sum(lam))
    for part in dual_partition(lam):
        out //= factorial(part)
    return out


def m_cells(lam: Sequence[int]) -> int:
    """Number of left cells in the two-sided cell of lam (Schur algebra)."""
    lam = _check_partition(lam)
    n = sum(lam)
    padded = list(lam) + [0] * (n + 1 - len(lam))
    out = 1
    for i in range(1, n):
        out *= comb(n, i) ** (padded[i - 1] - padded[i])
    return out


@dataclass(frozen=True)
class PartitionData:
    lam: tuple[int, ...]
    dual: tuple[int, ...]
    P_lambda: frozenset[int]
    w_lambda: AffinePerm
    blocks: tuple[tuple[int, int], ...]
    e_table: dict = field(compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return sum(self.lam)

    @property
    def r(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.blocks)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.blocks)

    def e(self, k: int, l: int) -> int:
        return self.e_table[k, l]

    @property
    def n_cells(self) -> int:
        return n_cells(self.lam)

    @property
    def m_cells(self) -> int:
        return m_cells(self.lam)


@lru_cache(maxsize=None)
def _partition_data(lam: tuple[int, ...]) -> PartitionData:
    n = sum(lam)
    cuts = set()
    acc = 0
    for part in lam:
        acc += part
        cuts.add(acc)
    P = frozenset(i for i in range(1, n) if i not in cuts)
    # r_i: last index of each distinct part value; m_i = lam_{r_i} - lam_{r_{i+1}}
    rs = [k for k in range(1, len(lam) + 1) if k == len(lam) or lam[k] != lam[k - 1]]
    vals = [lam[r - 1] for r in rs] + [0]
    blocks = tuple((r, vals[i] - vals[i + 1]) for i, r in enumerate(rs))
    e_table = {}
    offset = 0
    for k, part in enumerate(lam, start=1):
        for l in range(1, part + 1):
            e_table[k, l] = l + offset
        offset += part
    return PartitionData(
        lam=lam,
        dual=dual_partition(lam),
        P_lambda=P,
        w_lambda=longest_element(n, P),
        blocks=blocks,
        e_table=e_table,
    )


def partition_data(lam: Sequence[int]) -> PartitionData:
    return _partition_data(_check_partition(lam))


# --- text syntax ------------------------------------------------------------

_WINDOW_RE = re.compile(r"^w\[(.*)\]$")
_FACTOR_RE = re.compile(r"^(s(\d+)|w(\^(-?\d+))?|e|1)$")


def parse_element(n: int, text: str) -> AffinePerm:
    """Parse ``w[-1,4]``, ``s1*s0*w^2``, ``e`` or ``{"n":2,"window":[-1,4]}``."""
    text = text.strip().replace("−", "-")
    if text.startswith("{"):
        data = json.loads(text)
        if int(data["n"]) != n:
            raise RankMismatch(f"element has rank {data['n']}, expected {n}")
        return from_window(n, data["window"])
    m = _WINDOW_RE.match(text.replace(" ", ""))
    if m:
        return from_window(n, [int(x) for x in m.group(1).split(",") if x])
    x = identity(n)
    for tok in text.replace(" ", "").split("*"):
        fm = _FACTOR_RE.match(tok)
        if not fm:
            raise ValueError(f"cannot parse factor {tok!r} in {text!r}")
        if fm.group(2) is not None:
            x = x.rmul_simple(int(fm.group(2)))
        elif tok.startswith("w"):
            x = compose(x, omega(n, int(fm.group(4)) if fm.group(4) else 1))
    return x
