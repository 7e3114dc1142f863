"""Brute-force validation over small prime fields.

Builds rigid modules of the r-arrow two-vertex quiver over F_p, certified by
the endomorphism algebra being one-dimensional (which, at Euler form 1,
forces vanishing self-extensions), then counts points of subrepresentation
varieties and of image/preimage strata by direct subspace enumeration.
The counts are compared elsewhere against polynomial evaluations at q = p.

Subspaces are enumerated by reduced-echelon pivot patterns and never
materialized into lists; over F_2 vectors are packed into integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .errors import BudgetExceeded, ConstructionFailed, InvalidParameter
from .qlaurent import c_sequence, q_binomial

ALLOWED_PRIMES = (2, 3, 5)
DEFAULT_SUBSPACE_CAP = 2_000_000


@dataclass(frozen=True)
class FFModule:
    """A representation over F_p: r matrices of shape d2 x d1."""

    p: int
    r: int
    n: int
    d1: int
    d2: int
    phis: tuple  # r matrices, each a tuple of d2 rows (tuples of d1 ints)

    def to_obj(self):
        return {
            "p": self.p,
            "r": self.r,
            "phis": [[list(row) for row in phi] for phi in self.phis],
        }

    @classmethod
    def from_obj(cls, obj, n: int = 0) -> "FFModule":
        phis = tuple(
            tuple(tuple(int(x) for x in row) for row in phi) for phi in obj["phis"]
        )
        if not phis or not phis[0]:
            raise InvalidParameter("module JSON must carry nonempty matrices")
        d2 = len(phis[0])
        d1 = len(phis[0][0])
        return cls(int(obj["p"]), int(obj["r"]), n, d1, d2, phis)


# -- exact linear algebra mod p ------------------------------------------------


def _rank_gf2(rows) -> int:
    """Rank of integer-bitmask rows over F_2."""
    basis: dict = {}
    rank = 0
    for v in rows:
        while v:
            h = v.bit_length() - 1
            w = basis.get(h)
            if w is None:
                basis[h] = v
                rank += 1
                break
            v ^= w
    return rank


def _rank_modp(rows, p: int) -> int:
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] % p:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _nullspace_modp(rows, p: int, ncols: int):
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    mat = [[x % p for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-mat[i][fc]) % p
        basis.append(v)
    return basis


# -- subspace enumeration ------------------------------------------------------


def _num_subspaces(p: int, dim: int, k: int) -> int:
    return int(q_binomial(dim, k).evaluate(p))


def _iter_bases_gf2(dim: int, k: int):
    """Reduced-echelon bases of k-subspaces of F_2^dim, rows as bitmasks."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(dim), k):
        pivset = set(pivots)
        free = [
            (i, j)
            for i, pi in enumerate(pivots)
            for j in range(pi + 1, dim)
            if j not in pivset
        ]
        base = [1 << pi for pi in pivots]
        for assign in range(1 << len(free)):
            rows = base.copy()
            aa = assign
            for (i, j) in free:
                if aa & 1:
                    rows[i] |= 1 << j
                aa >>= 1
            yield tuple(rows)


def _iter_bases_gfp(p: int, dim: int, k: int):
    """Reduced-echelon bases of k-subspaces of F_p^dim, rows as tuples."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(dim), k):
        pivset = set(pivots)
        free = [
            (i, j)
            for i, pi in enumerate(pivots)
            for j in range(pi + 1, dim)
            if j not in pivset
        ]
        for assign in product(range(p), repeat=len(free)):
            rows = [[0] * dim for _ in range(k)]
            for i, pi in enumerate(pivots):
                rows[i][pi] = 1
            for (i, j), val in zip(free, assign):
                rows[i][j] = val
            yield tuple(tuple(row) for row in rows)


# -- module construction -------------------------------------------------------


def end_dim(mod: FFModule) -> int:
    """Dimension of {(A, B) : B phi_k = phi_k A for all k} over F_p."""
    d1, d2, p = mod.d1, mod.d2, mod.p
    nvars = d1 * d1 + d2 * d2
    if p == 2:
        rows = []
        for phi in mod.phis:
            for i in range(d2):
                for j in range(d1):
                    v = 0
                    for l in range(d2):
                        if phi[l][j]:
                            v |= 1 << (d1 * d1 + i * d2 + l)
                    for l in range(d1):
                        if phi[i][l]:
                            v ^= 1 << (l * d1 + j)
                    rows.append(v)
        return nvars - _rank_gf2(rows)
    rows = []
    for phi in mod.phis:
        for i in range(d2):
            for j in range(d1):
                row = [0] * nvars
                for l in range(d2):
                    row[d1 * d1 + i * d2 + l] = phi[l][j] % p
                for l in range(d1):
                    row[l * d1 + j] = (-phi[i][l]) % p
                rows.append(row)
    return nvars - _rank_modp(rows, p)


def build_module(p: int, r: int, n: int, seed: int = 0, attempts: int = 1000) -> FFModule:
    """A certified rigid module with dimension vector (c_{n-1}, c_{n-2}).

    Small cases use explicit matrices (coordinate functionals for n = 4,
    shifted identities for r = 2); otherwise a seeded random search accepts
    the first candidate whose endomorphism algebra is one-dimensional.
    """
    if p not in ALLOWED_PRIMES:
        raise InvalidParameter(f"p must be one of {ALLOWED_PRIMES}, got {p}")
    if not isinstance(r, int) or r < 2:
        raise InvalidParameter(f"r must be an integer >= 2, got {r}")
    if not isinstance(n, int) or not 4 <= n <= 6:
        raise InvalidParameter(f"module index must be in 4..6, got {n}")
    d1, d2 = c_sequence(r, n - 1), c_sequence(r, n - 2)
    assert d1 * d1 + d2 * d2 - r * d1 * d2 == 1

    def certified(phis):
        mod = FFModule(p, r, n, d1, d2, phis)
        return mod if end_dim(mod) == 1 else None

    if n == 4:
        # d2 = 1: the k-th map is the k-th coordinate functional.
        phis = tuple(
            (tuple(1 if j == k else 0 for j in range(d1)),) for k in range(r)
        )
        mod = certified(phis)
        if mod is None:
            raise ConstructionFailed("coordinate functionals failed certification")
        return mod
    if r == 2:
        # d1 = d2 + 1: two shifted identity matrices.
        phi1 = tuple(
            tuple(1 if j == i else 0 for j in range(d1)) for i in range(d2)
        )
        phi2 = tuple(
            tuple(1 if j == i + 1 else 0 for j in range(d1)) for i in range(d2)
        )
        mod = certified((phi1, phi2))
        if mod is None:
            raise ConstructionFailed("shifted identities failed certification")
        return mod

    rng = random.Random(f"qkron-ff-{p}-{r}-{n}-{seed}")
    for _ in range(attempts):
        phis = tuple(
            tuple(
                tuple(rng.randrange(p) for _ in range(d1)) for _ in range(d2)
            )
            for _ in range(r)
        )
        mod = certified(phis)
        if mod is not None:
            return mod
    raise ConstructionFailed(
        f"no certified module for (p={p}, r={r}, n={n}) in {attempts} attempts"
    )


# -- counting -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _image_dim_hist(mod: FFModule, e1: int, cap: int):
    """Histogram {dim(sum_k phi_k(U)) : U in Gr_{e1}(F_p^{d1})} -> count."""
    if _num_subspaces(mod.p, mod.d1, e1) > cap:
        raise BudgetExceeded(f"Gr_{e1}(F_{mod.p}^{mod.d1}) exceeds the cap {cap}")
    hist: dict = {}
    d1, d2, p = mod.d1, mod.d2, mod.p
    if p == 2:
        tables = []
        for phi in mod.phis:
            col = [0] * d1
            for j in range(d1):
                v = 0
                for i in range(d2):
                    if phi[i][j]:
                        v |= 1 << i
                col[j] = v
            tbl = [0] * (1 << d1)
            for bmask in range(1, 1 << d1):
                low = bmask & (-bmask)
                tbl[bmask] = tbl[bmask ^ low] ^ col[low.bit_length() - 1]
            tables.append(tbl)
        for basis in _iter_bases_gf2(d1, e1):
            red = [0] * (d2 + 1)
            dim = 0
            for b in basis:
                for tbl in tables:
                    v = tbl[b]
                    while v:
                        h = v.bit_length() - 1
                        w = red[h]
                        if w:
                            v ^= w
                        else:
                            red[h] = v
                            dim += 1
                            break
                if dim == d2:
                    break
            hist[dim] = hist.get(dim, 0) + 1
        return hist
    for basis in _iter_bases_gfp(p, d1, e1):
        vecs = []
        for b in basis:
            for phi in mod.phis:
                vecs.append(
                    tuple(
                        sum(phi[i][j] * b[j] for j in range(d1)) % p
                        for i in range(d2)
                    )
                )
        dim = _rank_modp(vecs, p) if vecs else 0
        hist[dim] = hist.get(dim, 0) + 1
    return hist


@lru_cache(maxsize=None)
def _preimage_dim_hist(mod: FFModule, u: int, cap: int):
    """Histogram {dim(intersection of phi_k^{-1}(U)) : U in Gr_u(F_p^{d2})}."""
    if _num_subspaces(mod.p, mod.d2, u) > cap:
        raise BudgetExceeded(f"Gr_{u}(F_{mod.p}^{mod.d2}) exceeds the cap {cap}")
    hist: dict = {}
    d1, d2, p = mod.d1, mod.d2, mod.p
    for basis in _iter_bases_gfp(p, d2, u):
        functionals = _nullspace_modp(list(basis), p, d2) if basis else [
            [1 if i == j else 0 for j in range(d2)] for i in range(d2)
        ]
        rows = []
        for f in functionals:
            for phi in mod.phis:
                rows.append(
                    tuple(
                        sum(f[i] * phi[i][j] for i in range(d2)) % p
                        for j in range(d1)
                    )
                )
        dim = d1 - (_rank_modp(rows, p) if rows else 0)
        hist[dim] = hist.get(dim, 0) + 1
    return hist


def count_gr(mod: FFModule, e1: int, e2: int, cap: int = DEFAULT_SUBSPACE_CAP) -> int:
    """Number of subrepresentations with dimension vector (e1, e2).

    Only the first-vertex side is enumerated; for each U the subspaces at
    the second vertex containing the image sum are counted by a Gaussian
    binomial evaluated at p.
    """
    if not 0 <= e1 <= mod.d1 or not 0 <= e2 <= mod.d2:
        raise InvalidParameter(f"({e1}, {e2}) outside the dimension box")
    hist = _image_dim_hist(mod, e1, cap)
    total = 0
    for w, cnt in hist.items():
        if w <= e2:
            total += cnt * int(q_binomial(mod.d2 - w, e2 - w).evaluate(mod.p))
    return total


SIDES = ("z", "zbar", "zp", "zpbar")


def count_strata(
    mod: FFModule, side: str, p_param: int, s: int, cap: int = DEFAULT_SUBSPACE_CAP
) -> int:
    """Point count of one stratum.

    ``z``:     U in Gr_s(M_1) with dim(sum phi_k(U)) = d2 - p_param
    ``zbar``:  same with <= d2 - p_param
    ``zp``:    U in Gr_{d2-s}(M_2) with dim(intersection phi_k^{-1}(U)) = p_param
    ``zpbar``: same with >= p_param
    """
    if side not in SIDES:
        raise InvalidParameter(f"side must be one of {SIDES}, got {side!r}")
    if p_param < 0 or s < 0:
        raise InvalidParameter("stratum parameters must be nonnegative")
    if side in ("z", "zbar"):
        if s > mod.d1:
            raise InvalidParameter(f"s must lie in 0..{mod.d1} on this side")
        hist = _image_dim_hist(mod, s, cap)
        if side == "z":
            return hist.get(mod.d2 - p_param, 0)
        return sum(c for w, c in hist.items() if w <= mod.d2 - p_param)
    if s > mod.d2:
        raise InvalidParameter(f"s must lie in 0..{mod.d2} on this side")
    hist = _preimage_dim_hist(mod, mod.d2 - s, cap)
    if side == "zp":
        return hist.get(p_param, 0)
    return sum(c for w, c in hist.items() if w >= p_param)
