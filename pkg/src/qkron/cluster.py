"""Cluster variables by torus recursion and their Grassmannian tables.

The sequence starts at the torus generators and obeys
X_{n-1} X_{n+1} = q^(r/2) X_n^r + 1; each step is an exact left division.
Every computed X_n decomposes as

    sum over e = (e1, e2) of
    q^((r(e1^2+(d2-e2)^2) - d1 d2)/2) * P_e(q^r) * X1^(-d1+r(d2-e2)) * X2^(r e1-d2)

with (d1, d2) = (c_{n-1}, c_{n-2}); the P_e are polynomials in q with
nonnegative coefficients, one per dimension vector of subrepresentations.
``gr_table`` reads them off a computed X_n and ``assemble_xvar`` is the
exact inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BudgetExceeded, ExtractionFailed, InvalidParameter
from .qlaurent import ONE, QLaurent, c_sequence
from .torus import TorusElement, left_divide

DEFAULT_MAX_TERMS = 500_000
DEFAULT_MAX_COEFF_BITS = 1 << 22


def dim_vector(r: int, n: int):
    """(d1, d2) = (c_{n-1}, c_{n-2}) for the n-th rigid module."""
    if not isinstance(n, int) or n < 3:
        raise InvalidParameter(f"dimension vectors start at n = 3, got {n}")
    return c_sequence(r, n - 1), c_sequence(r, n - 2)


@lru_cache(maxsize=None)
def xvar_recursive(
    r: int,
    n: int,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_coeff_bits: int = DEFAULT_MAX_COEFF_BITS,
) -> TorusElement:
    """n-th cluster variable computed forward from the generators."""
    if not isinstance(r, int) or r < 2:
        raise InvalidParameter(f"r must be an integer >= 2, got {r}")
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"n must be an integer >= 1, got {n}")
    prev2 = TorusElement.monomial(1, 0)
    prev = TorusElement.monomial(0, 1)
    if n == 1:
        return prev2
    for _ in range(3, n + 1):
        numerator = (prev**r).scale2(r) + TorusElement.one()
        cur = left_divide(prev2, numerator)
        if cur.num_terms() > max_terms:
            raise BudgetExceeded(
                f"{cur.num_terms()} torus terms exceed the cap of {max_terms}"
            )
        if cur.max_coeff_bits() > max_coeff_bits:
            raise BudgetExceeded("coefficient size exceeds the configured cap")
        prev2, prev = prev, cur
    return prev


@dataclass
class GrTable:
    """Per-dimension-vector polynomials attached to one cluster variable."""

    r: int
    n: int
    d1: int
    d2: int
    entries: dict = field(default_factory=dict)  # (e1, e2) -> QLaurent

    def entry(self, e1: int, e2: int) -> QLaurent:
        return self.entries.get((e1, e2), QLaurent.zero())

    def sorted_items(self):
        return sorted(self.entries.items())

    def to_obj(self):
        return {
            "d1": self.d1,
            "d2": self.d2,
            "entries": [
                {"e1": e1, "e2": e2, "poly": p.to_obj()}
                for (e1, e2), p in self.sorted_items()
            ],
        }


def gr_table(r: int, n: int) -> GrTable:
    """Extract the Grassmannian polynomials of X_n from the recursion."""
    if not isinstance(n, int) or n < 3:
        raise InvalidParameter(f"tables exist for n >= 3, got {n}")
    xn = xvar_recursive(r, n)
    d1, d2 = dim_vector(r, n)
    entries = {}
    for (a, b), coeff in xn.items():
        if (a + d1) % r or (b + d2) % r:
            raise ExtractionFailed(f"term X1^{a} X2^{b} has non-integral indices")
        e2 = d2 - (a + d1) // r
        e1 = (b + d2) // r
        if not (0 <= e1 <= d1 and 0 <= e2 <= d2):
            raise ExtractionFailed(f"recovered ({e1}, {e2}) outside the box")
        prefactor2 = r * (e1 * e1 + (d2 - e2) ** 2) - d1 * d2
        try:
            poly = coeff.shift2(-prefactor2).compress_power(r)
        except Exception as exc:
            raise ExtractionFailed(
                f"coefficient at ({e1}, {e2}) is not a polynomial in q^{r}: {exc}"
            ) from exc
        if poly.has_negative_coeff():
            raise ExtractionFailed(f"negative coefficient at ({e1}, {e2})")
        entries[(e1, e2)] = poly
    table = GrTable(r, n, d1, d2, entries)
    if table.entry(0, 0) != ONE or table.entry(d1, d2) != ONE:
        raise ExtractionFailed("corner entries of the table are not 1")
    return table


def assemble_xvar(table: GrTable) -> TorusElement:
    """Rebuild the cluster variable from its table (inverse of gr_table)."""
    terms = {}
    for (e1, e2), poly in table.entries.items():
        a = -table.d1 + table.r * (table.d2 - e2)
        b = table.r * e1 - table.d2
        prefactor2 = table.r * (e1 * e1 + (table.d2 - e2) ** 2) - table.d1 * table.d2
        terms[(a, b)] = poly.substitute_power(table.r).shift2(prefactor2)
    return TorusElement(terms)
