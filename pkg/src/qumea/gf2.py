"""GF(2) linear algebra on vectors packed into Python ints.

Bit ``i`` of a row is coordinate ``i``.  Pivots are taken from the lowest
bit upward so that results follow the canonical history order.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form of a set of GF(2) row vectors.

    Returns ``(basis, pivots)`` where ``basis[k]`` has its lowest set bit at
    ``pivots[k]`` and no other basis row has that bit set.  Rows are sorted
    by pivot, so the output is independent of the input order.
    """
    basis: dict[int, int] = {}
    for row in rows:
        for p, b in basis.items():
            if row >> p & 1:
                row ^= b
        if not row:
            continue
        p = (row & -row).bit_length() - 1
        for q in basis:
            if basis[q] >> p & 1:
                basis[q] ^= row
        basis[p] = row
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows)[0])


def reduce(vector: int, basis: list[int], pivots: list[int]) -> int:
    """Residue of ``vector`` modulo the span of an RREF basis."""
    for b, p in zip(basis, pivots):
        if vector >> p & 1:
            vector ^= b
    return vector


def in_span(vector: int, basis: list[int], pivots: list[int]) -> bool:
    return reduce(vector, basis, pivots) == 0


def parity(x: int) -> int:
    return x.bit_count() & 1


def nullspace(rows: Iterable[int], n: int) -> list[int]:
    """Basis of ``{x : parity(x & r) == 0 for every row r}`` in ``GF(2)^n``.

    One basis vector per free column, taken in ascending column order; each
    has its free bit set plus the pivot bits needed to cancel it.
    """
    basis, pivots = rref(rows)
    pivot_set = set(pivots)
    out = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for b, p in zip(basis, pivots):
            if b >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def span(basis: list[int]) -> Iterator[int]:
    """Every element of the span, zero first, by Gray-code walk."""
    v = 0
    yield v
    for k in range(1, 1 << len(basis)):
        v ^= basis[(k & -k).bit_length() - 1]
        yield v
