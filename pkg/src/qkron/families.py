"""Compatible families of path elements and the expansion they generate.

The element pool of a path consists of every colored subpath between marked
vertices plus every single edge.  A compatible family is a set of elements
that are pairwise edge-disjoint, whose subpaths never share a marked
endpoint, and in which every green subpath has at least one edge of its
admissibility window (the ``c_{m-1} - w*c_{m-2}`` edges just before its
start vertex) covered by the support of the family.

Every family contributes one torus monomial: each edge gets a two-letter
word weight from an eight-case table, the word is specialized into the
quantum torus, and the ordered product is conjugated by X1 and scaled by q.
Summed over all families this reproduces the cluster variable (up to a
global q^(1/2)), which is the central cross-check of the package.

Enumeration comes in two forms: a literal backtracker that yields each
family once (``enumerate_families``), and a memoized suffix aggregation
(``xvar_enum``) that computes the full sum by distributing the edge
products over a left-to-right scan; the two are compared term-for-term in
the test-suite on every desk-size instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dyck import Color, DyckPath, build_dyck, classify
from .errors import (
    BudgetExceeded,
    ExhaustivenessViolation,
    IndexOutOfRange,
    InvalidParameter,
)
from .qlaurent import QLaurent, c_sequence
from .torus import TorusElement, word_to_torus

DEFAULT_FAMILY_BUDGET = 30_000_000


@dataclass(frozen=True)
class SingleEdge:
    index: int

    @property
    def lo(self) -> int:
        return self.index

    @property
    def hi(self) -> int:
        return self.index


@dataclass(frozen=True)
class Subpath:
    i: int
    k: int
    color: Color
    lo: int
    hi: int


@dataclass(frozen=True)
class Family:
    elements: frozenset
    support: frozenset

    def subpaths(self):
        return sorted(
            (el for el in self.elements if isinstance(el, Subpath)),
            key=lambda s: (s.i, s.k),
        )

    def single_edges(self):
        return sorted(
            (el.index for el in self.elements if isinstance(el, SingleEdge))
        )

    def to_obj(self):
        return {
            "edges": self.single_edges(),
            "subpaths": [
                {"i": s.i, "k": s.k, "color": str(s.color)} for s in self.subpaths()
            ],
        }


@lru_cache(maxsize=None)
def path_elements(path: DyckPath):
    """Element pool: subpaths sorted by (i, k), then single edges by index."""
    els = []
    for i in range(0, path.height):
        for k in range(i + 1, path.height + 1):
            color, (lo, hi) = classify(path, i, k)
            els.append(Subpath(i, k, color, lo, hi))
    for t in range(1, path.n_edges + 1):
        els.append(SingleEdge(t))
    return tuple(els)


def _green_window(path: DyckPath, sp: Subpath):
    """Inclusive edge interval a green subpath needs covered (truncated at
    the start of the path)."""
    r = path.r
    length = c_sequence(r, sp.color.m - 1) - sp.color.w * c_sequence(r, sp.color.m - 2)
    anchor = path.v_edge[sp.i]  # vertical edge entering the start vertex
    return max(1, anchor - length + 1), anchor


def _in_subpath_weight(path: DyckPath, lo: int, is_red: bool, t: int):
    """Word weight of edge t covered by a subpath whose range starts at lo."""
    if is_red and t == lo:
        return (-1, -1)
    if path.word[t - 1] == "h":
        return (0, 0)
    u = t - path.r + 1
    if u < 1 or u < lo:
        raise ExhaustivenessViolation(
            f"vertical edge {t} inside a subpath has no in-range edge {u}"
        )
    return (0, -1) if path.word[u - 1] == "h" else (1, -1)


def edge_weight(path: DyckPath, family: Family, i: int):
    """Word monomial (a, b) attached to edge i relative to the family."""
    if not 1 <= i <= path.n_edges:
        raise IndexOutOfRange(f"edge index {i} outside 1..{path.n_edges}")
    horizontal = path.word[i - 1] == "h"
    if i not in family.support:
        return (-1, path.r) if horizontal else (-1, path.r - 1)
    owner = None
    for el in family.elements:
        if el.lo <= i <= el.hi:
            owner = el
            break
    if owner is None:
        raise AssertionError("support contains an edge no element covers")
    if isinstance(owner, SingleEdge):
        return (-1, 0) if horizontal else (-1, -1)
    return _in_subpath_weight(path, owner.lo, owner.color.kind == "red", i)


def family_degrees(family: Family):
    """(sum of k - i over subpaths, total number of supported edges)."""
    d1 = sum(el.k - el.i for el in family.elements if isinstance(el, Subpath))
    return d1, len(family.support)


def family_term(path: DyckPath, family: Family) -> TorusElement:
    """Torus monomial of one family: q * X1 * (product of edge weights) * X1^-1,
    computed literally with torus multiplications."""
    acc = TorusElement.one()
    for t in range(1, path.n_edges + 1):
        a, b = edge_weight(path, family, t)
        acc = acc * word_to_torus(a, b)
    out = TorusElement.monomial(1, 0) * acc * TorusElement.monomial(-1, 0)
    return out.scale2(2)


def enumerate_families(path: DyckPath):
    """Yield every compatible family exactly once, deterministically.

    Backtracks over the ordered element pool; edge-disjointness and the
    endpoint condition are enforced when an element is taken, the green
    admissibility windows once the subset is complete (elements taken later
    can still cover a window, so the check cannot be done earlier).
    """
    els = path_elements(path)
    n_els = len(els)
    used: set = set()
    chosen: list = []
    starts: set = set()
    ends: set = set()
    windows: list = []

    def rec(idx):
        if idx == n_els:
            for wlo, whi in windows:
                if not any(e in used for e in range(wlo, whi + 1)):
                    return
            yield Family(frozenset(chosen), frozenset(used))
            return
        yield from rec(idx + 1)
        el = els[idx]
        rng = range(el.lo, el.hi + 1)
        if any(e in used for e in rng):
            return
        is_sub = isinstance(el, Subpath)
        if is_sub and (el.i in ends or el.k in starts):
            return
        used.update(rng)
        chosen.append(el)
        if is_sub:
            starts.add(el.i)
            ends.add(el.k)
            if el.color.kind == "green":
                windows.append(_green_window(path, el))
        yield from rec(idx + 1)
        if is_sub:
            if el.color.kind == "green":
                windows.pop()
            starts.discard(el.i)
            ends.discard(el.k)
        chosen.pop()
        used.difference_update(rng)

    yield from rec(0)


# -- suffix aggregation ------------------------------------------------------
#
# Scanning edges left to right, a family is a choice, at each position, of
# either "this edge stays free" or "an element starts here".  The product of
# word weights composes like torus monomials: a block covering consecutive
# edges is summarized by (A, B, e) with X-degree A, Y-degree B and doubled
# q-exponent e, and prefix-suffix composition only needs the B of the prefix
# and the A of the suffix.  The sum over all suffix choices therefore
# depends on the scan position, on which of the last few edges are covered
# (for admissibility windows of greens that start soon), and on whether a
# subpath ends flush at the previous edge (for the shared-endpoint rule).
# Memoizing on that state turns the family sum into a small table
# computation while remaining exactly the same sum.


@dataclass(frozen=True)
class _DpEl:
    lo: int
    hi: int
    subpath: bool
    bluegreen: bool
    window: int  # admissibility window length; 0 for non-greens
    blk: tuple  # (A, B, doubled exponent)


class _DpTables:
    def __init__(self, path: DyckPath):
        r = path.r
        self.N = path.n_edges
        self.default_blk = [None]
        for ch in path.word:
            if ch == "h":
                self.default_blk.append((-1, r, -1 - r))
            else:
                self.default_blk.append((-1, r - 1, -r))
        by_lo: dict = {}
        greens = []
        for el in path_elements(path):
            if isinstance(el, Subpath):
                is_red = el.color.kind == "red"
                A = B = S = T = 0
                for t in range(el.lo, el.hi + 1):
                    a, b = _in_subpath_weight(path, el.lo, is_red, t)
                    T += B * a
                    A += a
                    B += b
                    S += a - b
                window = 0
                if el.color.kind == "green":
                    wlo, whi = _green_window(path, el)
                    window = whi - wlo + 1
                    greens.append((el.lo, window))
                rec = _DpEl(el.lo, el.hi, True, not is_red, window, (A, B, S - 2 * T))
            else:
                t = el.index
                if path.word[t - 1] == "h":
                    blk = (-1, 0, -1)
                else:
                    blk = (-1, -1, 0)
                rec = _DpEl(t, t, False, False, 0, blk)
            by_lo.setdefault(rec.lo, []).append(rec)
        self.by_lo = by_lo
        self.maxL = max((L for _, L in greens), default=0)
        self.full = (1 << self.maxL) - 1
        # Which recent-coverage bits a state can still be asked about, and
        # whether any blue/green subpath starts at the position: anything
        # else is irrelevant to the suffix sum and is normalized away.
        self.relevant = [0] * (self.N + 2)
        self.flag_rel = [False] * (self.N + 2)
        for pos in range(1, self.N + 2):
            bits = 0
            for g_lo, L in greens:
                if g_lo < pos:
                    continue
                elo = max(1, g_lo - L, pos - self.maxL)
                ehi = min(g_lo - 1, pos - 1)
                for e in range(elo, ehi + 1):
                    bits |= 1 << (pos - 1 - e)
            self.relevant[pos] = bits
            self.flag_rel[pos] = any(
                el.subpath and el.bluegreen for el in by_lo.get(pos, ())
            )


@lru_cache(maxsize=None)
def _dp_tables(path: DyckPath) -> _DpTables:
    return _DpTables(path)


def _count_suffix(path: DyckPath) -> int:
    tb = _dp_tables(path)
    memo: dict = {}

    def rec(pos, mask, flag):
        if pos > tb.N:
            return 1
        mask &= tb.relevant[pos]
        flag = flag and tb.flag_rel[pos]
        key = (pos, mask, flag)
        got = memo.get(key)
        if got is not None:
            return got
        total = rec(pos + 1, (mask << 1) & tb.full, False)
        for el in tb.by_lo.get(pos, ()):
            if el.subpath and el.bluegreen and flag:
                continue
            if el.window and not (mask & ((1 << min(el.window, pos - 1)) - 1)):
                continue
            span = el.hi - el.lo + 1
            nmask = ((mask << span) | ((1 << span) - 1)) & tb.full
            total += rec(el.hi + 1, nmask, el.subpath)
        memo[key] = total
        return total

    return rec(1, 0, False)


def _accum(out: dict, blk: tuple, sub: dict):
    A1, B1, e1 = blk
    for (A2, B2), cd in sub.items():
        key = (A1 + A2, B1 + B2)
        sh = e1 - 2 * B1 * A2
        tgt = out.get(key)
        if tgt is None:
            tgt = out[key] = {}
        for k2, c in cd.items():
            kk = k2 + sh
            nc = tgt.get(kk, 0) + c
            if nc:
                tgt[kk] = nc
            else:
                del tgt[kk]


def _monomial_suffix(path: DyckPath) -> dict:
    tb = _dp_tables(path)
    memo: dict = {}

    def rec(pos, mask, flag):
        if pos > tb.N:
            return {(0, 0): {0: 1}}
        mask &= tb.relevant[pos]
        flag = flag and tb.flag_rel[pos]
        key = (pos, mask, flag)
        got = memo.get(key)
        if got is not None:
            return got
        out: dict = {}
        _accum(out, tb.default_blk[pos], rec(pos + 1, (mask << 1) & tb.full, False))
        for el in tb.by_lo.get(pos, ()):
            if el.subpath and el.bluegreen and flag:
                continue
            if el.window and not (mask & ((1 << min(el.window, pos - 1)) - 1)):
                continue
            span = el.hi - el.lo + 1
            nmask = ((mask << span) | ((1 << span) - 1)) & tb.full
            _accum(out, el.blk, rec(el.hi + 1, nmask, el.subpath))
        memo[key] = out
        return out

    return rec(1, 0, False)


def count_families(r: int, n: int) -> int:
    """Number of compatible families of the (r, n) path."""
    return _count_suffix(build_dyck(r, n))


@lru_cache(maxsize=None)
def xvar_enum(r: int, n: int, budget: int | None = DEFAULT_FAMILY_BUDGET) -> TorusElement:
    """Cluster variable by family expansion: the sum over all compatible
    families of q * X1 * (ordered product of specialized edge weights) * X1^-1.

    Equals q^(1/2) times the recursion route for the same (r, n).
    """
    if not isinstance(n, int) or n < 4:
        raise InvalidParameter(f"family expansion needs n >= 4, got {n}")
    path = build_dyck(r, n)
    count = _count_suffix(path)
    if budget is not None and count > budget:
        raise BudgetExceeded(
            f"{count} families exceed the configured budget of {budget}"
        )
    suffix = _monomial_suffix(path)
    terms = {}
    for (A, B), cd in suffix.items():
        # conjugation by X1 contributes q^B, the commutator prefix gives q
        coeff = QLaurent((k2 + 2 + 2 * B, c) for k2, c in cd.items())
        if coeff:
            terms[(A, B)] = coeff
    return TorusElement(terms)
