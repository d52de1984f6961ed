"""Finite-dimensional algebras over Q given by structure constants.

Each algebra carries a chosen complete set of primitive orthogonal
idempotents, each written as a sum of basis elements, and optionally a
grading by Z^r with homogeneous basis elements.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .. import linalg
from ..linalg import Vector


class AlgebraError(ValueError):
    pass


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(x.strip())


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


class Algebra:
    def __init__(
        self,
        basis: Sequence[str],
        mul: Mapping[tuple[str, str], Mapping[str, object]],
        idempotents: Sequence[Sequence[str]],
        degrees: Sequence[Sequence[int]] | None = None,
        name: str | None = None,
    ):
        self.basis = tuple(str(b) for b in basis)
        if not self.basis:
            raise AlgebraError("an algebra needs a non-empty basis")
        if len(set(self.basis)) != len(self.basis):
            raise AlgebraError("basis labels must be distinct")
        self.name = name or "A"
        index = {b: i for i, b in enumerate(self.basis)}
        n = self.dim
        table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (x, y), out in mul.items():
            for lbl in (x, y, *out):
                if lbl not in index:
                    raise AlgebraError(f"structure constant mentions unknown basis element {lbl!r}")
            for z, c in out.items():
                table[index[x]][index[y]][index[z]] = _frac(c)
        self._table = tuple(tuple(tuple(v) for v in row) for row in table)
        self._index = index
        self.idempotent_labels = tuple(tuple(str(b) for b in e) for e in idempotents)
        if not self.idempotent_labels:
            raise AlgebraError("at least one idempotent is required")
        for e in self.idempotent_labels:
            for lbl in e:
                if lbl not in index:
                    raise AlgebraError(f"idempotent mentions unknown basis element {lbl!r}")
        if degrees is not None:
            degs = tuple(tuple(int(d) for d in deg) for deg in degrees)
            if len(degs) != n or len({len(d) for d in degs}) != 1:
                raise AlgebraError("degrees need one vector of common length per basis element")
            self.degrees: tuple[tuple[int, ...], ...] | None = degs
        else:
            self.degrees = None

    # -- basics ------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n_idempotents(self) -> int:
        return len(self.idempotent_labels)

    @property
    def grading_rank(self) -> int | None:
        return None if self.degrees is None else len(self.degrees[0])

    def vec(self, coeffs: Mapping[str, object] | str) -> Vector:
        if isinstance(coeffs, str):
            coeffs = {coeffs: 1}
        v = [Fraction(0)] * self.dim
        for lbl, c in coeffs.items():
            if lbl not in self._index:
                raise AlgebraError(f"unknown basis element {lbl!r}")
            v[self._index[lbl]] += _frac(c)
        return tuple(v)

    def label(self, v: Vector) -> str:
        terms = []
        for c, b in zip(v, self.basis):
            if c == 1:
                terms.append(b)
            elif c:
                terms.append(f"{c}*{b}")
        return "+".join(terms) if terms else "0"

    def times(self, u: Vector, v: Vector) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                c = u[i] * v[j]
                row = self._table[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def product_of_basis(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    @cached_property
    def idempotents(self) -> tuple[Vector, ...]:
        return tuple(self.vec({lbl: 1 for lbl in e}) for e in self.idempotent_labels)

    @cached_property
    def one(self) -> Vector:
        acc = linalg.zero(self.dim)
        for e in self.idempotents:
            acc = tuple(a + b for a, b in zip(acc, e))
        return acc

    def left_matrix(self, u: Vector) -> list[list[Fraction]]:
        """Matrix (rows = output coordinates) of v -> u v."""
        cols = [self.times(u, linalg.unit(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    # -- gradings ------------------------------------------------------------
    def degree_of(self, v: Vector) -> tuple[int, ...] | None:
        """Degree of a non-zero homogeneous vector, None if inhomogeneous or ungraded."""
        if self.degrees is None:
            return None
        degs = {self.degrees[i] for i, c in enumerate(v) if c}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_parts(self, v: Vector) -> dict[tuple[int, ...], Vector]:
        parts: dict[tuple[int, ...], list[Fraction]] = {}
        for i, c in enumerate(v):
            if c:
                parts.setdefault(self.degrees[i], [Fraction(0)] * self.dim)[i] = c
        return {d: tuple(p) for d, p in parts.items()}

    def graded_basis(self, vectors: Sequence[Vector]) -> list[tuple[Vector, tuple[int, ...] | None]]:
        """A basis of span(vectors) made of homogeneous pieces when the input is homogeneous.

        Inputs must each be homogeneous (or the algebra ungraded); they are
        grouped by degree and reduced within each group.
        """
        if self.degrees is None:
            return [(v, None) for v in linalg.row_basis(list(vectors), self.dim)]
        groups: dict[tuple[int, ...], list[Vector]] = {}
        for v in vectors:
            if not any(v):
                continue
            d = self.degree_of(v)
            if d is None:
                raise AlgebraError("graded_basis received an inhomogeneous vector")
            groups.setdefault(d, []).append(v)
        out = []
        for d in sorted(groups):
            out.extend((v, d) for v in linalg.row_basis(groups[d], self.dim))
        return out

    # -- structure -------------------------------------------------------
    @cached_property
    def radical(self) -> list[Vector]:
        """Jacobson radical: the kernel of the trace form tr(L_{xy}) (characteristic zero)."""
        n = self.dim
        traces = []
        for i in range(n):
            row = []
            for j in range(n):
                xy = self._table[i][j]
                row.append(sum((xy[k] * self._trace_left_basis[k] for k in range(n)), Fraction(0)))
            traces.append(row)
        return linalg.row_basis(linalg.nullspace(traces, n), n)

    @cached_property
    def _trace_left_basis(self) -> tuple[Fraction, ...]:
        n = self.dim
        return tuple(sum((self._table[k][j][j] for j in range(n)), Fraction(0)) for k in range(n))

    def corner(self, k: int, l: int) -> list[tuple[Vector, tuple[int, ...] | None]]:
        """Homogeneous basis of e_k A e_l (0-based idempotent indices)."""
        return self._corners[(k, l)]

    @cached_property
    def _corners(self):
        out = {}
        es = self.idempotents
        units = [linalg.unit(self.dim, x) for x in range(self.dim)]
        for k, l in product(range(self.n_idempotents), repeat=2):
            vecs = [self.times(self.times(es[k], u), es[l]) for u in units]
            out[(k, l)] = self.graded_basis(vecs) if self._degrees_ok else [
                (v, None) for v in linalg.row_basis(vecs, self.dim)
            ]
        return out

    @cached_property
    def _degrees_ok(self) -> bool:
        return self.degrees is not None and self._grading_check().ok

    def corner_dim(self, k: int, l: int) -> int:
        return len(self.corner(k, l))

    def corner_radical(self, k: int, l: int) -> list[Vector]:
        """Basis of e_k rad(A) e_l; for k == l this is rad(e_k A e_k)."""
        return self._corner_radicals[(k, l)]

    @cached_property
    def _corner_radicals(self):
        es = self.idempotents
        out = {}
        for k, l in product(range(self.n_idempotents), repeat=2):
            plain = linalg.row_basis([self.times(self.times(es[k], r), es[l]) for r in self.radical], self.dim)
            parts = [p for v in plain for p in self.homogeneous_parts(v).values()] if self._degrees_ok else []
            if parts and all(linalg.in_span(plain, p, self.dim) for p in parts):
                out[(k, l)] = [v for v, _ in self.graded_basis(parts)]
            else:
                out[(k, l)] = plain
        return out

    @cached_property
    def center(self) -> list[Vector]:
        n = self.dim
        rows = []
        for y in range(n):
            # coefficient rows of z b_y - b_y z as a function of z
            for k in range(n):
                rows.append([self._table[x][y][k] - self._table[y][x][k] for x in range(n)])
        return linalg.row_basis(linalg.nullspace(rows, n), n)

    def in_center(self, v: Vector) -> bool:
        return all(
            self.times(v, linalg.unit(self.dim, y)) == self.times(linalg.unit(self.dim, y), v) for y in range(self.dim)
        )

    def left_socle(self, t: int) -> list[Vector]:
        """Vectors of A e_t killed on the left by the radical."""
        return self._socle(t, left=True)

    def right_socle(self, t: int) -> list[Vector]:
        return self._socle(t, left=False)

    def _socle(self, t: int, left: bool) -> list[Vector]:
        e = self.idempotents[t]
        units = [linalg.unit(self.dim, x) for x in range(self.dim)]
        gens = [self.times(u, e) if left else self.times(e, u) for u in units]
        module = linalg.row_basis(gens, self.dim)
        if not module:
            return []
        rows = []
        for r in self.radical:
            images = [self.times(r, w) if left else self.times(w, r) for w in module]
            for k in range(self.dim):
                rows.append([img[k] for img in images])
        coeffs = linalg.nullspace(rows, len(module)) if rows else [
            linalg.unit(len(module), i) for i in range(len(module))
        ]
        out = []
        for c in coeffs:
            v = [Fraction(0)] * self.dim
            for ck, w in zip(c, module):
                for k in range(self.dim):
                    v[k] += ck * w[k]
            out.append(tuple(v))
        return linalg.row_basis(out, self.dim)

    def _socle_types(self, left: bool) -> list[int | None]:
        types = []
        for t in range(self.n_idempotents):
            soc = self._socle(t, left)
            if len(soc) != 1:
                types.append(None)
                continue
            v = soc[0]
            hits = [
                s
                for s, e in enumerate(self.idempotents)
                if any(self.times(e, v) if left else self.times(v, e))
            ]
            types.append(hits[0] if len(hits) == 1 else None)
        return types

    @cached_property
    def nakayama(self) -> tuple[int, ...] | None:
        """sigma with (e_s A)^* = A e_sigma(s), 0-based; None if not self-injective.

        (e_s A)^* is the injective hull of the simple at s, so sigma(s) is the
        t whose projective A e_t has socle of type s.  The right-module socles
        must give the same permutation.
        """
        left = self._socle_types(left=True)
        right = self._socle_types(left=False)
        n = self.n_idempotents
        if None in left or None in right or sorted(left) != list(range(n)) or sorted(right) != list(range(n)):
            return None
        sigma = [0] * n
        for t, s in enumerate(left):
            sigma[s] = t
        # soc(e_s A) has type sigma(s) for a Frobenius pairing
        if tuple(right) != tuple(sigma):
            return None
        return tuple(sigma)

    # -- validation ------------------------------------------------------
    def _grading_check(self) -> Check:
        if self.degrees is None:
            return Check("grading", True, "ungraded")
        n = self.dim
        for i, j, k in product(range(n), repeat=3):
            if self._table[i][j][k] and tuple(a + b for a, b in zip(self.degrees[i], self.degrees[j])) != self.degrees[k]:
                return Check(
                    "grading",
                    False,
                    f"{self.basis[i]}*{self.basis[j]} has a {self.basis[k]} term of the wrong degree",
                )
        zero = (0,) * len(self.degrees[0])
        for lbls in self.idempotent_labels:
            for lbl in lbls:
                if self.degrees[self._index[lbl]] != zero:
                    return Check("grading", False, f"idempotent summand {lbl} is not of degree zero")
        return Check("grading", True)

    def validate(self) -> list[Check]:
        checks = []
        n = self.dim
        units = [linalg.unit(n, x) for x in range(n)]
        bad = None
        for i, j, k in product(range(n), repeat=3):
            a = self.times(self.times(units[i], units[j]), units[k])
            b = self.times(units[i], self.times(units[j], units[k]))
            if a != b:
                bad = (self.basis[i], self.basis[j], self.basis[k])
                break
        checks.append(Check("associativity", bad is None, "" if bad is None else f"fails at {bad}"))
        if bad is not None:
            return checks

        one = self.one
        unit_ok = all(self.times(one, u) == u == self.times(u, one) for u in units)
        checks.append(Check("unit", unit_ok, "" if unit_ok else "sum of idempotents is not a two-sided unit"))

        es = self.idempotents
        orth = [
            (a, b)
            for a, b in product(range(len(es)), repeat=2)
            if self.times(es[a], es[b]) != (es[a] if a == b else linalg.zero(n))
        ]
        checks.append(
            Check("orthogonal_idempotents", not orth, "" if not orth else f"e_{orth[0][0]+1} e_{orth[0][1]+1} is wrong")
        )
        if not unit_ok or orth:
            return checks

        rad = self.radical
        # e A e / rad must be one-dimensional: primitivity plus the split assumption
        local = [k for k in range(len(es)) if self.corner_dim(k, k) - len(self.corner_radical(k, k)) != 1]
        checks.append(
            Check(
                "primitive_split",
                not local,
                "" if not local else f"e_{local[0]+1} A e_{local[0]+1} / rad has dimension != 1",
            )
        )
        basic = n - len(rad) == len(es)
        checks.append(
            Check("basic", basic, "" if basic else f"dim A/rad = {n - len(rad)} but {len(es)} idempotents")
        )

        # blocks of a basic algebra: idempotents linked by non-zero e A f
        comp = {0}
        frontier = [0]
        while frontier:
            a = frontier.pop()
            for b in range(len(es)):
                if b not in comp and (self.corner_dim(a, b) or self.corner_dim(b, a)):
                    comp.add(b)
                    frontier.append(b)
        connected = len(comp) == len(es)
        checks.append(Check("connected", connected, "" if connected else "a proper central idempotent exists"))

        nak = self.nakayama
        checks.append(
            Check("self_injective", nak is not None, "" if nak is not None else "no Nakayama permutation")
        )
        checks.append(self._grading_check())
        return checks

    def is_valid(self) -> bool:
        return all(c.ok for c in self.validate())

    # -- JSON -------------------------------------------------------------
    @classmethod
    def from_json(cls, data: dict, name: str | None = None) -> "Algebra":
        mul = {}
        for key, out in data.get("mul", {}).items():
            parts = key.split(",")
            if len(parts) != 2:
                raise AlgebraError(f"mul key {key!r} is not of the form 'x,y'")
            mul[(parts[0].strip(), parts[1].strip())] = out
        alg = cls(data["basis"], mul, data["idempotents"], data.get("degrees"), name=data.get("name", name))
        if "dim" in data and data["dim"] != alg.dim:
            raise AlgebraError(f"dim {data['dim']} disagrees with {alg.dim} basis labels")
        return alg

    def to_json(self) -> dict:
        mul = {}
        for i, j in product(range(self.dim), repeat=2):
            out = {self.basis[k]: _num(c) for k, c in enumerate(self._table[i][j]) if c}
            if out:
                mul[f"{self.basis[i]},{self.basis[j]}"] = out
        data = {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis),
            "mul": mul,
            "idempotents": [list(e) for e in self.idempotent_labels],
        }
        if self.degrees is not None:
            data["degrees"] = [list(d) for d in self.degrees]
        return data


def _num(c: Fraction):
    return int(c) if c.denominator == 1 else str(c)


def graded_count(pairs) -> Counter:
    return Counter(d for _, d in pairs)


# -- constructors for the usual small examples --------------------------------


def monomial_algebra(
    basis: Sequence[str],
    products: Mapping[tuple[str, str], str],
    idempotents: Sequence[Sequence[str]],
    degrees: Sequence[Sequence[int]] | None = None,
    name: str | None = None,
) -> Algebra:
    """Algebra whose basis products are single basis elements or zero."""
    return Algebra(basis, {k: {v: 1} for k, v in products.items()}, idempotents, degrees, name)


def field_algebra(name: str = "Q") -> Algebra:
    return monomial_algebra(["1"], {("1", "1"): "1"}, [["1"]], name=name)


def truncated_polynomial(n: int, degree: int | None = None, name: str | None = None) -> Algebra:
    """Q[x]/(x^n) with basis 1, x, ..., x^(n-1); optionally deg x = ``degree``."""
    labels = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, n)]
    products = {}
    for a in range(n):
        for b in range(n):
            if a + b < n:
                products[(labels[a], labels[b])] = labels[a + b]
    degrees = None if degree is None else [[degree * k] for k in range(n)]
    return monomial_algebra(labels, products, [["1"]], degrees, name or f"Q[x]/x^{n}")


def dual_numbers(degree: int | None = None, name: str | None = None) -> Algebra:
    return truncated_polynomial(2, degree, name or "D")


def _two_cycle(with_loops: bool, degree: int | None, name: str) -> Algebra:
    # quiver 1 <-> 2 with a in e2 A e1 and b in e1 A e2
    basis = ["e1", "e2", "a", "b"]
    products = {
        ("e1", "e1"): "e1",
        ("e2", "e2"): "e2",
        ("e2", "a"): "a",
        ("a", "e1"): "a",
        ("e1", "b"): "b",
        ("b", "e2"): "b",
    }
    degs = [[0], [0], [1], [1]]
    if with_loops:
        basis += ["c1", "c2"]
        products.update(
            {
                ("b", "a"): "c1",
                ("a", "b"): "c2",
                ("e1", "c1"): "c1",
                ("c1", "e1"): "c1",
                ("e2", "c2"): "c2",
                ("c2", "e2"): "c2",
            }
        )
        degs += [[2], [2]]
    return monomial_algebra(basis, products, [["e1"], ["e2"]], degs if degree is not None else None, name)


def zigzag_a2(graded: bool = False) -> Algebra:
    """Symmetric algebra on 1 <-> 2 with ab and ba non-zero, radical cubed zero."""
    return _two_cycle(True, 1 if graded else None, "Z2")


def preprojective_a2(graded: bool = False) -> Algebra:
    """1 <-> 2 with both length-two paths zero; Nakayama permutation swaps 1 and 2."""
    return _two_cycle(False, 1 if graded else None, "P2")
