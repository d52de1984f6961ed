"""The 2-category of identities and projective bimodules over a family of algebras.

Objects are algebra indices.  Besides identities, the indecomposable
1-morphisms are ``F^{ik}_{jl} = A_j e_jl (x) e_ik A_i (x)_{A_i} -`` from
algebra ``i`` to algebra ``j``; :class:`Proj` stores ``src=(i, k)`` and
``tgt=(j, l)``.  Indices are 0-based internally and rendered 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .. import linalg
from ..greenms import GreenStructure, Multisemigroup, green_cells, is_strongly_regular
from ..laurent import LaurentPoly
from ..linalg import Vector
from .algebra import Algebra, AlgebraError, Check


class FamilyError(ValueError):
    pass


Shift = tuple[int, ...]


@dataclass(frozen=True)
class Identity:
    obj: int
    shift: Shift = ()

    @property
    def src_obj(self) -> int:
        return self.obj

    @property
    def tgt_obj(self) -> int:
        return self.obj

    def sort_key(self):
        return (0, self.obj, -1, -1, -1, self.shift)

    def unshifted(self) -> "Identity":
        return replace(self, shift=())

    def __str__(self):
        return f"1_{{{self.obj + 1}}}" + _shift_text(self.shift)


@dataclass(frozen=True)
class Proj:
    src: tuple[int, int]
    tgt: tuple[int, int]
    shift: Shift = ()

    @property
    def src_obj(self) -> int:
        return self.src[0]

    @property
    def tgt_obj(self) -> int:
        return self.tgt[0]

    def sort_key(self):
        return (1, *self.src, *self.tgt, self.shift)

    def unshifted(self) -> "Proj":
        return replace(self, shift=())

    def __str__(self):
        (i, k), (j, l) = self.src, self.tgt
        return f"F^{{{i+1},{k+1}}}_{{{j+1},{l+1}}}" + _shift_text(self.shift)


Bimod1Mor = Identity | Proj


def _shift_text(shift: Shift) -> str:
    if not any(shift):
        return ""
    return "[[" + ",".join(map(str, shift)) + "]]"


def _add(a: Shift, b: Shift) -> Shift:
    if not a:
        return b
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Shift) -> Shift:
    return tuple(-x for x in a)


def parse_1mor(text: str) -> Bimod1Mor:
    """Inverse of ``str`` for unshifted 1-morphisms: ``1_{2}`` or ``F^{1,1}_{2,1}``."""
    import re

    s = text.replace(" ", "")
    m = re.fullmatch(r"1_\{?(\d+)\}?", s)
    if m:
        return Identity(int(m.group(1)) - 1)
    m = re.fullmatch(r"F\^\{(\d+),(\d+)\}_\{(\d+),(\d+)\}", s)
    if m:
        i, k, j, l = (int(g) - 1 for g in m.groups())
        return Proj((i, k), (j, l))
    raise FamilyError(f"cannot parse 1-morphism {text!r}")


@dataclass(frozen=True)
class BimodHom:
    """A 2-morphism given as a linear combination of basic maps.

    For projective 1-morphisms the basic maps are ``phi_{a,b}`` sending
    ``e_jl (x) e_ik`` to ``a (x) b``; for identities they are central
    elements (``a`` holds the element, ``b`` is empty).
    """

    src: Bimod1Mor
    tgt: Bimod1Mor
    terms: tuple[tuple[Vector, Vector, Fraction], ...]
    degree: tuple[int, ...] | None = None


class AlgebraFamily:
    def __init__(self, algebras: Sequence[Algebra], x_subspaces: Sequence[Sequence[Vector] | None] | None = None):
        self.algebras = tuple(algebras)
        if not self.algebras:
            raise FamilyError("a family needs at least one algebra")
        ranks = {a.grading_rank for a in self.algebras}
        if len(ranks) != 1:
            raise FamilyError("either every algebra is graded, with a common Z^r, or none is")
        self.grading_rank: int | None = ranks.pop()
        xs = list(x_subspaces) if x_subspaces is not None else [None] * len(self.algebras)
        if len(xs) != len(self.algebras):
            raise FamilyError("one x_subspace entry per algebra is required")
        self._x = [None if x is None else [tuple(Fraction(c) for c in v) for v in x] for x in xs]

    @property
    def graded(self) -> bool:
        return self.grading_rank is not None

    @property
    def zero_shift(self) -> Shift:
        return (0,) * (self.grading_rank or 0)

    def x_subspace(self, i: int) -> list[Vector]:
        """Basis of X_i; the whole centre unless declared."""
        alg = self.algebras[i]
        x = self._x[i]
        if x is None:
            return alg.center
        return linalg.row_basis(x, alg.dim)

    def x_graded_basis(self, i: int) -> list[tuple[Vector, tuple[int, ...] | None]]:
        alg = self.algebras[i]
        vecs = self.x_subspace(i)
        if not self.graded:
            return [(v, None) for v in vecs]
        parts = [p for v in vecs for p in alg.homogeneous_parts(v).values()]
        return alg.graded_basis(parts)

    # -- validation --------------------------------------------------------
    def validate(self) -> dict[str, list[Check]]:
        out = {}
        for i, alg in enumerate(self.algebras):
            checks = alg.validate()
            if all(c.ok for c in checks) and self._x[i] is not None:
                x = self.x_subspace(i)
                has_one = linalg.in_span(x, alg.one, alg.dim)
                central = all(alg.in_center(v) for v in x)
                checks.append(
                    Check("x_subspace", has_one and central, "" if has_one and central else "X must contain 1 and be central")
                )
            out[f"{i + 1}:{alg.name}"] = checks
        return out

    def is_valid(self) -> bool:
        return all(c.ok for checks in self.validate().values() for c in checks)

    def require_valid(self):
        for key, checks in self.validate().items():
            for c in checks:
                if not c.ok:
                    raise FamilyError(f"algebra {key}: check {c.name} failed {c.detail}".rstrip())

    # -- JSON ---------------------------------------------------------------
    @classmethod
    def from_json(cls, data: dict) -> "AlgebraFamily":
        algebras = [Algebra.from_json(a, name=f"A{i + 1}") for i, a in enumerate(data["algebras"])]
        xs = data.get("x_subspaces")
        x_vecs = None
        if xs is not None:
            x_vecs = []
            for alg, x in zip(algebras, xs):
                x_vecs.append(None if x is None else [alg.vec(v) for v in x])
        return cls(algebras, x_vecs)

    def to_json(self) -> dict:
        data = {"algebras": [a.to_json() for a in self.algebras]}
        if any(x is not None for x in self._x):
            data["x_subspaces"] = [
                None if x is None else [
                    {b: (int(c) if c.denominator == 1 else str(c)) for b, c in zip(alg.basis, v) if c} for v in x
                ]
                for alg, x in zip(self.algebras, self._x)
            ]
        return data


def validate_family(fam: AlgebraFamily) -> dict[str, list[Check]]:
    return fam.validate()


def radical(alg: Algebra) -> list[Vector]:
    return alg.radical


def nakayama_permutation(alg: Algebra) -> tuple[int, ...]:
    sigma = alg.nakayama
    if sigma is None:
        raise AlgebraError(f"{alg.name} is not self-injective")
    return sigma


def indecomposables(fam: AlgebraFamily) -> list[Bimod1Mor]:
    z = fam.zero_shift
    ids = [Identity(i, z) for i in range(len(fam.algebras))]
    objs = [(i, k) for i, alg in enumerate(fam.algebras) for k in range(alg.n_idempotents)]
    projs = [Proj(s, t, z) for s, t in product(objs, repeat=2)]
    return sorted(ids + projs, key=lambda f: f.sort_key())


def compose(fam: AlgebraFamily, F: Bimod1Mor, G: Bimod1Mor) -> list[tuple[Bimod1Mor, int]]:
    """Indecomposable summands of ``F o G`` (G applied first), with multiplicities."""
    if G.tgt_obj != F.src_obj:
        raise FamilyError(f"cannot compose {F} after {G}: objects {G.tgt_obj + 1} and {F.src_obj + 1} differ")
    shift = _add(F.shift, G.shift)
    if isinstance(F, Identity):
        return [(replace(G, shift=shift), 1)]
    if isinstance(G, Identity):
        return [(replace(F, shift=shift), 1)]
    j, t = G.tgt
    j2, m = F.src
    mult = fam.algebras[j].corner_dim(m, t)
    if mult == 0:
        return []
    return [(Proj(G.src, F.tgt, shift), mult)]


def compose_many(fam: AlgebraFamily, terms: Iterable[tuple[Bimod1Mor, int]], H: Bimod1Mor, left: bool):
    """Compose a multiset with ``H`` on the left (``H o X``) or right (``X o H``)."""
    acc: Counter = Counter()
    for X, m in terms:
        pieces = compose(fam, H, X) if left else compose(fam, X, H)
        for Y, k in pieces:
            acc[Y] += m * k
    return sorted(acc.items(), key=lambda t: t[0].sort_key())


def left_adjoint(fam: AlgebraFamily, F: Bimod1Mor) -> Bimod1Mor:
    """``*F``: for F^{ik}_{jl} this is F^{j sigma_j^{-1}(l)}_{ik}."""
    if isinstance(F, Identity):
        return replace(F, shift=_neg(F.shift))
    (i, k), (j, l) = F.src, F.tgt
    sigma = nakayama_permutation(fam.algebras[j])
    return Proj((j, sigma.index(l)), (i, k), _neg(F.shift))


def right_adjoint(fam: AlgebraFamily, F: Bimod1Mor) -> Bimod1Mor:
    """``F*``: for F^{ik}_{jl} this is F^{jl}_{i sigma_i(k)}, from (e_ik A)^* = A e_{i sigma(k)}."""
    if isinstance(F, Identity):
        return replace(F, shift=_neg(F.shift))
    (i, k), (j, l) = F.src, F.tgt
    sigma = nakayama_permutation(fam.algebras[i])
    return Proj((j, l), (i, sigma[k]), _neg(F.shift))


class CAX:
    """Cached cell data of one validated family."""

    def __init__(self, fam: AlgebraFamily, check: bool = True):
        if check:
            fam.require_valid()
        self.fam = fam

    @cached_property
    def elements(self) -> list[Bimod1Mor]:
        return indecomposables(self.fam)

    @cached_property
    def multisemigroup(self) -> Multisemigroup:
        return multisemigroup_of(self.fam)

    @cached_property
    def green(self) -> GreenStructure:
        return green_cells(self.multisemigroup)

    def cell_members(self, cell: Iterable[int]) -> list[Bimod1Mor]:
        return [self.elements[x] for x in cell]

    def lcell_of(self, F: Bimod1Mor) -> list[Bimod1Mor]:
        x = self.elements.index(F.unshifted() if not self.fam.graded else replace(F, shift=self.fam.zero_shift))
        return self.cell_members(self.green.cell_of("L", x))

    @cached_property
    def proj_jcell(self) -> tuple[int, ...]:
        proj = {x for x, F in enumerate(self.elements) if isinstance(F, Proj)}
        for cell in self.green.cells_J:
            if set(cell) == proj:
                return cell
        raise FamilyError("projective 1-morphisms do not form a single J-cell")


def multisemigroup_of(fam: AlgebraFamily) -> Multisemigroup:
    elems = indecomposables(fam)
    index = {F: x for x, F in enumerate(elems)}
    table = {}
    for (x, F), (y, G) in product(enumerate(elems), repeat=2):
        if G.tgt_obj != F.src_obj:
            continue
        table[(x, y)] = [index[H] for H, _ in compose(fam, F, G)]
    return Multisemigroup([str(F) for F in elems], table)


def _as_lcell(fam: AlgebraFamily, lcell) -> tuple[int, int]:
    """Normalise an L-cell argument to its common source ``(i, k)``."""
    if isinstance(lcell, tuple) and len(lcell) == 2 and all(isinstance(v, int) for v in lcell):
        i, k = lcell
        if not (0 <= i < len(fam.algebras) and 0 <= k < fam.algebras[i].n_idempotents):
            raise FamilyError(f"no L-cell with source {lcell}")
        return lcell
    members = list(lcell)
    if not members or not all(isinstance(F, Proj) for F in members):
        raise FamilyError("L-cell must be a non-empty set of projective 1-morphisms")
    srcs = {F.src for F in members}
    if len(srcs) != 1:
        raise FamilyError("L-cell members have different sources")
    return srcs.pop()


def lcell_members(fam: AlgebraFamily, src: tuple[int, int]) -> list[Proj]:
    z = fam.zero_shift
    return [
        Proj(src, (j, l), z) for j, alg in enumerate(fam.algebras) for l in range(alg.n_idempotents)
    ]


def duflo(fam: AlgebraFamily, gs: GreenStructure, lcell: Iterable[Bimod1Mor]) -> Proj:
    """The unique member of L meeting *L, for a strongly regular J-cell."""
    members = [F if isinstance(F, (Proj, Identity)) else parse_1mor(F) for F in lcell]
    elems = indecomposables(fam)
    norm = lambda F: replace(F, shift=fam.zero_shift)
    idx = sorted(elems.index(norm(F)) for F in members)
    if tuple(idx) not in gs.cells_L:
        raise FamilyError("argument is not an L-cell of the given Green structure")
    if any(isinstance(F, Identity) for F in members):
        raise FamilyError("the Duflo involution is only computed on the projective J-cell")
    ms = multisemigroup_of(fam)
    if not is_strongly_regular(ms, gs, gs.cell_of("J", idx[0])):
        raise FamilyError("the J-cell is not strongly regular")
    cell = {norm(F) for F in members}
    star = {norm(left_adjoint(fam, F)) for F in cell}
    both = cell & star
    if len(both) != 1:
        raise FamilyError(f"L meets *L in {len(both)} elements")
    return both.pop()


def m_multiplicity(fam: AlgebraFamily, F: Bimod1Mor) -> int:
    """m with *F o F = K^{(+) m}."""
    if isinstance(F, Identity):
        raise FamilyError("m is defined on the projective J-cell only")
    pieces = compose(fam, left_adjoint(fam, F), F)
    if len(pieces) > 1:
        raise FamilyError("*F o F has more than one indecomposable summand type")
    return pieces[0][1] if pieces else 0


# -- 2-morphisms ---------------------------------------------------------------


def _parallel(F: Bimod1Mor, G: Bimod1Mor):
    if F.src_obj != G.src_obj or F.tgt_obj != G.tgt_obj:
        raise FamilyError(f"{F} and {G} are not parallel")


def _shift_gap(F: Bimod1Mor, G: Bimod1Mor, r: int) -> tuple[int, ...]:
    # a degree-d map F -> G has degree d + (shift G - shift F) as a map F[[a]] -> G[[b]]
    a = F.shift or (0,) * r
    b = G.shift or (0,) * r
    return tuple(y - x for x, y in zip(a, b))


def hom_space(fam: AlgebraFamily, F: Bimod1Mor, G: Bimod1Mor) -> list[BimodHom]:
    """Basis of Hom(F, G); degrees include the shift difference."""
    _parallel(F, G)
    r = fam.grading_rank or 0
    gap = _shift_gap(F, G, r)
    if isinstance(F, Identity) and isinstance(G, Identity):
        out = []
        for z, d in fam.x_graded_basis(F.obj):
            deg = None if d is None else tuple(x + y for x, y in zip(d, gap))
            out.append(BimodHom(F, G, ((z, (), Fraction(1)),), deg))
        return out
    if isinstance(F, Proj) and isinstance(G, Proj):
        (i, k), (j, l) = F.src, F.tgt
        (_, k2), (_, m) = G.src, G.tgt
        a_basis = fam.algebras[j].corner(l, m)
        b_basis = fam.algebras[i].corner(k2, k)
        out = []
        for (a, da), (b, db) in product(a_basis, b_basis):
            deg = None
            if da is not None:
                deg = tuple(x + y + z for x, y, z in zip(da, db, gap))
            out.append(BimodHom(F, G, ((a, b, Fraction(1)),), deg))
        return out
    raise FamilyError("homs between an identity and a projective 1-morphism are not modelled")


@dataclass
class CellIdeal:
    src: tuple[int, int]
    parts: dict[tuple[Proj, Proj], list[BimodHom]] = field(default_factory=dict)

    def dim(self, F: Proj, G: Proj) -> int:
        return len(self.parts[(F, G)])

    def dims(self) -> dict[tuple[str, str], int]:
        return {(str(F), str(G)): len(v) for (F, G), v in self.parts.items()}


def _cell_pairs(fam: AlgebraFamily, src: tuple[int, int]):
    members = lcell_members(fam, src)
    for F, G in product(members, repeat=2):
        if F.tgt_obj == G.tgt_obj:
            yield F, G


def cell_ideal(fam: AlgebraFamily, lcell) -> CellIdeal:
    """phi_{a,b} with b in rad(e_ik A_i e_ik), for every parallel pair of the L-cell."""
    src = _as_lcell(fam, lcell)
    i, k = src
    alg_i = fam.algebras[i]
    rad = alg_i.corner_radical(k, k)
    ideal = CellIdeal(src)
    for F, G in _cell_pairs(fam, src):
        j = F.tgt_obj
        l, m = F.tgt[1], G.tgt[1]
        a_basis = fam.algebras[j].corner(l, m)
        basis = []
        for (a, da), b in product(a_basis, rad):
            deg = None
            db = alg_i.degree_of(b)
            if da is not None and db is not None:
                deg = tuple(x + y for x, y in zip(da, db))
            basis.append(BimodHom(F, G, ((a, b, Fraction(1)),), deg))
        ideal.parts[(F, G)] = basis
    return ideal


def _check_in_cell(src: tuple[int, int], *mors: Bimod1Mor):
    for F in mors:
        if not isinstance(F, Proj) or F.src != src:
            raise FamilyError(f"{F} is not an object of the cell 2-representation with source {src}")


def _graded_quotient_degrees(alg: Algebra, k: int) -> Counter:
    """Degrees of e A e / rad(e A e)."""
    full = Counter(d for _, d in alg.corner(k, k))
    rad = Counter(alg.degree_of(v) for v in alg.corner_radical(k, k))
    full.subtract(rad)
    return Counter({d: c for d, c in full.items() if c})


def cell_rep_hom_dim(fam: AlgebraFamily, lcell, F: Proj, G: Proj, graded: bool = False):
    """dim Hom(F, G) in the cell 2-representation of the L-cell.

    With ``graded=True`` the answer is a LaurentPoly (Z-graded families) or a
    Counter of degree vectors (Z^r with r > 1).
    """
    src = _as_lcell(fam, lcell)
    _check_in_cell(src, F, G)
    _parallel(F, G)
    i, k = src
    j = F.tgt_obj
    alg_j, alg_i = fam.algebras[j], fam.algebras[i]
    a_basis = alg_j.corner(F.tgt[1], G.tgt[1])
    quot = alg_i.corner_dim(k, k) - len(alg_i.corner_radical(k, k))
    if not graded:
        return len(a_basis) * quot
    if not fam.graded:
        raise FamilyError("graded dimensions need a graded family")
    gap = _shift_gap(F, G, fam.grading_rank)
    counts: Counter = Counter()
    for (_, da), (db, c) in product(a_basis, _graded_quotient_degrees(alg_i, k).items()):
        counts[tuple(x + y + z for x, y, z in zip(da, db, gap))] += c
    return _graded_result(fam, counts)


def _graded_result(fam: AlgebraFamily, counts: Counter):
    if fam.grading_rank == 1:
        return LaurentPoly({d[0]: c for d, c in counts.items()})
    return counts


def graded_hom_dim(fam: AlgebraFamily, F: Bimod1Mor, G: Bimod1Mor):
    """Graded dimension of Hom(F, G) in the 2-category itself."""
    if not fam.graded:
        raise FamilyError("graded dimensions need a graded family")
    counts = Counter(h.degree for h in hom_space(fam, F, G))
    return _graded_result(fam, counts)


def degree_zero_hom(fam: AlgebraFamily, F: Bimod1Mor, G: Bimod1Mor) -> int:
    """dim of the degree-zero part of Hom(F, G), shifts included.

    With (M[[g]])_j = M_{j-g}, a degree-d map F -> G is homogeneous of degree
    zero as a map F[[a]] -> G[[b]] exactly when d = a - b.
    """
    if not fam.graded:
        raise FamilyError("degree-zero homs need a graded family")
    zero = fam.zero_shift
    return sum(1 for h in hom_space(fam, F, G) if h.degree == zero)


def check_ideal_homogeneous(fam: AlgebraFamily, lcell) -> bool:
    """Whether the cell ideal is spanned by homogeneous maps.

    The ideal is spanned by phi_{a,b} with a from a homogeneous basis of
    e_jl A e_jm, so this is the question whether rad(e_ik A e_ik) is a graded
    subspace.
    """
    if not fam.graded:
        raise FamilyError("homogeneity needs a graded family")
    src = _as_lcell(fam, lcell)
    i, k = src
    alg = fam.algebras[i]
    e = alg.idempotents[k]
    rad = [alg.times(alg.times(e, r), e) for r in alg.radical]
    rad = linalg.row_basis(rad, alg.dim)
    for v in rad:
        for part in alg.homogeneous_parts(v).values():
            if not linalg.in_span(rad, part, alg.dim):
                return False
    return all(h.degree is not None for part in cell_ideal(fam, src).parts.values() for h in part)


# -- ready-made families ----------------------------------------------------------


def family(*algebras: Algebra) -> AlgebraFamily:
    return AlgebraFamily(list(algebras))
