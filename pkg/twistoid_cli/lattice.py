"""
Integer lattice arithmetic: extended gcd, row-style Hermite normal form,
membership and canonical coset representatives.

Lattices are given by generating rows; the Hermite form is upper triangular
with positive pivots and the entries above each pivot reduced into
[0, pivot).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence

Row = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g"""
    prevx, x = 1, 0
    prevy, y = 0, 1
    while b:
        q = a // b
        x, prevx = prevx - q * x, x
        y, prevy = prevy - q * y, y
        a, b = b, a % b
    if a < 0:
        return -a, -prevx, -prevy
    return a, prevx, prevy


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[Row, ...]:
    """
    Hermite normal form of the lattice spanned by ``rows``.

    Raises ValueError when the rows do not span a full-rank lattice.
    """
    work = [[int(c) for c in row] for row in rows if any(row)]
    if not work:
        raise ValueError("the zero lattice has no Hermite form")
    dim = len(work[0])
    basis: list[list[int]] = []
    for col in range(dim):
        pivot = None
        remaining = []
        for row in work:
            if row[col] == 0:
                remaining.append(row)
            elif pivot is None:
                pivot = row
            else:
                g, x, y = xgcd(pivot[col], row[col])
                a, b = pivot[col] // g, row[col] // g
                pivot, cleared = (
                    [x * u + y * v for u, v in zip(pivot, row)],
                    [a * v - b * u for u, v in zip(pivot, row)],
                )
                remaining.append(cleared)
        if pivot is None:
            raise ValueError(f"rows {list(rows)} do not span a rank-{dim} lattice")
        if pivot[col] < 0:
            pivot = [-u for u in pivot]
        for i, previous in enumerate(basis):
            q = previous[col] // pivot[col]
            basis[i] = [u - q * v for u, v in zip(previous, pivot)]
        basis.append(pivot)
        work = [row for row in remaining if any(row)]
    return tuple(tuple(row) for row in basis)


def reduce_vector(hnf: Sequence[Row], vector: Sequence) -> tuple:
    """Canonical representative of vector + L inside the box of pivots"""
    v = list(vector)
    for col, row in enumerate(hnf):
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def lattice_contains(hnf: Sequence[Row], vector: Sequence) -> bool:
    return not any(reduce_vector(hnf, vector))


def coset_representatives(hnf: Sequence[Row]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(row[i]) for i, row in enumerate(hnf)))


def lattice_index(hnf: Sequence[Row]) -> int:
    index = 1
    for i, row in enumerate(hnf):
        index *= row[i]
    return index


def determinant3(rows: Sequence[Sequence]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return Fraction(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


def coordinates(basis: Sequence[Sequence], vector: Sequence) -> tuple[Fraction, ...]:
    """Rational coefficients c with sum c_i * basis_i = vector (Cramer)"""
    det = determinant3(basis)
    if det == 0:
        raise ValueError("basis is singular")
    result = []
    for i in range(3):
        replaced = [list(row) for row in basis]
        replaced[i] = list(vector)
        result.append(determinant3(replaced) / det)
    return tuple(result)


def rational_gcd(values: Sequence[Fraction]) -> Fraction:
    """Non-negative generator of the additive group spanned by ``values``"""
    values = [Fraction(v) for v in values if v]
    if not values:
        return Fraction(0)
    scale = lcm(*(v.denominator for v in values))
    return Fraction(gcd(*(int(v * scale) for v in values)), scale)
