"""Exact rank of sparse integer matrices.

Columns are dicts ``{row: coefficient}``.  Elimination stays in the
integers: a column is reduced against a stored pivot column by cross
multiplication, then divided by the gcd of its entries so the numbers
do not grow.  Rank over the integers-as-rationals is what comes out.
"""

from math import gcd
from typing import Dict, Iterable, List

Column = Dict[int, int]


def _normalize(col: Column) -> Column:
    g = 0
    for value in col.values():
        g = gcd(g, value)
        if g == 1:
            break
    if g > 1:
        col = {r: v // g for r, v in col.items()}
    return col


def exact_rank(columns: Iterable[Column]) -> int:
    """Rank over Q of the matrix whose columns are given."""
    pivots: Dict[int, Column] = {}
    rank = 0
    for original in columns:
        col = {r: v for r, v in original.items() if v}
        while col:
            low = max(col)
            pivot = pivots.get(low)
            if pivot is None:
                pivots[low] = _normalize(col)
                rank += 1
                break
            a = pivot[low]
            b = col[low]
            merged: Column = {}
            for r, v in col.items():
                merged[r] = v * a
            for r, v in pivot.items():
                nv = merged.get(r, 0) - v * b
                if nv:
                    merged[r] = nv
                else:
                    merged.pop(r, None)
            col = _normalize(merged)
    return rank


def sparse_product_is_zero(left: List[Column], right: List[Column]) -> bool:
    """Check ``L @ R == 0`` where both matrices are lists of columns.

    ``right`` indexes columns of ``left`` through its row keys.
    """
    for col in right:
        acc: Column = {}
        for mid, coeff in col.items():
            for r, v in left[mid].items():
                acc[r] = acc.get(r, 0) + coeff * v
        if any(acc.values()):
            return False
    return True
