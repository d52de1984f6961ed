"""Exact rational linear algebra on lists of vectors, via sympy's DomainMatrix."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = tuple[Fraction, ...]


def _dm(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[QQ(int(x.numerator), int(x.denominator)) if isinstance(x, Fraction) else QQ(x) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _back(m: DomainMatrix) -> list[Vector]:
    return [tuple(_frac(x) for x in row) for row in m.to_list()]


def rank(vectors: Sequence[Sequence], ncols: int | None = None) -> int:
    if not vectors:
        return 0
    return _dm(vectors, ncols if ncols is not None else len(vectors[0])).rank()


def row_basis(vectors: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Reduced row echelon basis of the span (empty list for the zero space)."""
    if not vectors:
        return []
    rref, pivots = _dm(vectors, ncols).rref()
    return _back(rref)[: len(pivots)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return [] if ns.shape[0] == 0 else _back(ns)


def in_span(basis: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    if not any(v):
        return True
    return rank(list(basis) + [v], ncols) == rank(basis, ncols)


def solve_coords(basis: Sequence[Sequence], v: Sequence, ncols: int) -> Vector:
    """Coordinates of ``v`` in a linearly independent ``basis``; raises if absent."""
    if not basis:
        if any(v):
            raise ValueError("vector not in span")
        return ()
    # unknowns c with sum c_k basis_k = v: columns are basis vectors
    aug = [[basis[k][i] for k in range(len(basis))] + [v[i]] for i in range(ncols)]
    rref, pivots = _dm(aug, len(basis) + 1).rref()
    if len(basis) in pivots:
        raise ValueError("vector not in span")
    rows = _back(rref)
    coords = [Fraction(0)] * len(basis)
    for r, p in enumerate(pivots):
        coords[p] = rows[r][-1]
    return tuple(coords)


def zero(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))
