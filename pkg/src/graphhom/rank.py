"""Exact rank of sparse integer matrices.

The default path is fraction-free sparse elimination over the integers with
Markowitz pivoting.  Rows are kept primitive (divided by their content), so
entries stay small on the matrices graph complexes produce.  A modular path
over two word-size primes is available; it is only trusted when both primes
agree and the integer elimination confirms the value.
"""
from __future__ import annotations

from math import gcd

from .differential import SparseIntMatrix

PRIMES = (2_147_483_629, 2_147_483_587)


def _rows(M: SparseIntMatrix) -> dict:
    rows = {}
    for (r, c), x in M.entries.items():
        rows.setdefault(r, {})[c] = x
    return rows


def _primitive(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    return {c: x // g for c, x in row.items()}


def rank_fraction_free(M: SparseIntMatrix) -> int:
    """Rank over Q by integer-preserving elimination.

    Each step picks the pivot minimizing the Markowitz count
    ``(row_nnz - 1) * (col_nnz - 1)``, ties broken by ``|entry|`` and then by
    position, so the result and the work done are deterministic.
    """
    rows = {r: _primitive(row) for r, row in _rows(M).items()}
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    rank = 0
    while rows:
        best = None
        for r, row in rows.items():
            rn = len(row) - 1
            for c, x in row.items():
                key = (rn * (len(cols[c]) - 1), abs(x), r, c)
                if best is None or key < best:
                    best = key
        _, _, pr, pc = best
        prow = rows.pop(pr)
        for c in prow:
            cols[c].discard(pr)
        a = prow[pc]
        for r in sorted(cols[pc]):
            row = rows[r]
            b = row[pc]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {c: fa * x for c, x in row.items()}
            for c, x in prow.items():
                y = new.get(c, 0) - fb * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            for c in row:
                if c not in new:
                    cols[c].discard(r)
            for c in new:
                if c not in row:
                    cols.setdefault(c, set()).add(r)
            if new:
                rows[r] = _primitive(new)
            else:
                del rows[r]
        rank += 1
    return rank


def rank_mod_p(M: SparseIntMatrix, p: int) -> int:
    """Rank over GF(p) by sparse elimination."""
    rows = {}
    for r, row in _rows(M).items():
        row = {c: x % p for c, x in row.items() if x % p}
        if row:
            rows[r] = row
    pivots = {}  # col -> normalized row
    rank = 0
    for r in sorted(rows):
        row = rows[r]
        while row:
            c = min(row)
            if c not in pivots:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: x * inv % p for k, x in row.items()}
                rank += 1
                break
            f = row[c]
            for k, x in pivots[c].items():
                y = (row.get(k, 0) - f * x) % p
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
    return rank


class RankMismatch(ArithmeticError):
    pass


def rank(M: SparseIntMatrix, method: str = "exact") -> int:
    """Exact rank over Q.

    ``method="modular"`` computes the rank modulo two primes first and raises
    :class:`RankMismatch` unless both agree with the integer elimination.
    """
    if not M.entries:
        return 0
    if method == "exact":
        return rank_fraction_free(M)
    if method == "modular":
        r1, r2 = (rank_mod_p(M, p) for p in PRIMES)
        exact = rank_fraction_free(M)
        if not r1 == r2 == exact:
            raise RankMismatch(f"mod-p ranks {r1}, {r2} vs exact {exact}")
        return exact
    raise ValueError(f"unknown rank method {method!r}")
