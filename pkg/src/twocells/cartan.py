"""Cartan data, weights and weight multiplicities of V(Lambda).

A weight is stored as a pair ``(Lambda, beta)`` meaning ``Lambda - beta``,
with ``Lambda`` in fundamental-weight coordinates and ``beta`` in simple-root
coordinates.  Two weights are the same weight exactly when their coroot
pairings agree, so comparisons go through :meth:`CartanDatum.key`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    lam: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        object.__setattr__(self, "beta", tuple(int(x) for x in self.beta))
        if len(self.lam) != len(self.beta):
            raise CartanError("lambda and beta coefficient vectors differ in length")

    @classmethod
    def highest(cls, lam: Sequence[int]) -> "Weight":
        return cls(tuple(lam), (0,) * len(lam))

    def lower(self, i: int, times: int = 1) -> "Weight":
        """Subtract ``times`` copies of the simple root ``i`` (0-based)."""
        beta = list(self.beta)
        beta[i] += times
        return Weight(self.lam, tuple(beta))

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "beta": list(self.beta)}

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        lam = data["lambda"]
        return cls(lam, data.get("beta", [0] * len(lam)))


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise CartanError("singular Cartan matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [a * inv for a in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


@dataclass(frozen=True)
class CartanDatum:
    """Symmetrizable generalized Cartan matrix with symmetrizers ``d``.

    Indices are 1-based in the public operations (``pairing``, ``bilinear``)
    to match the usual labelling; internal vectors are 0-based tuples.
    """

    gcm: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        gcm = tuple(tuple(int(x) for x in row) for row in self.gcm)
        n = len(gcm)
        d = self.symmetrizers
        d = tuple(int(x) for x in d) if d is not None else (1,) * n
        object.__setattr__(self, "gcm", gcm)
        object.__setattr__(self, "symmetrizers", d)
        if n == 0 or any(len(row) != n for row in gcm):
            raise CartanError("Cartan matrix must be square and non-empty")
        if len(d) != n or any(x <= 0 for x in d):
            raise CartanError("symmetrizers must be positive, one per index")
        for i in range(n):
            if gcm[i][i] != 2:
                raise CartanError(f"a_{i+1}{i+1} must be 2")
            for j in range(n):
                if i == j:
                    continue
                if gcm[i][j] > 0:
                    raise CartanError(f"a_{i+1}{j+1} must be <= 0")
                if (gcm[i][j] == 0) != (gcm[j][i] == 0):
                    raise CartanError(f"a_{i+1}{j+1} = 0 iff a_{j+1}{i+1} = 0 fails")
                if d[i] * gcm[i][j] != d[j] * gcm[j][i]:
                    raise CartanError(f"d_i a_ij = d_j a_ji fails for i={i+1}, j={j+1}")

    @property
    def rank(self) -> int:
        return len(self.gcm)

    @classmethod
    def from_json(cls, data: dict) -> "CartanDatum":
        datum = cls(tuple(map(tuple, data["gcm"])), tuple(data["symmetrizers"]) if "symmetrizers" in data else None)
        if "rank" in data and data["rank"] != datum.rank:
            raise CartanError(f"rank {data['rank']} does not match the {datum.rank}x{datum.rank} matrix")
        return datum

    def to_json(self) -> dict:
        return {"rank": self.rank, "gcm": [list(r) for r in self.gcm], "symmetrizers": list(self.symmetrizers)}

    # -- basic pairings ---------------------------------------------------
    def _check_index(self, i: int):
        if not 1 <= i <= self.rank:
            raise IndexError(f"index {i} outside 1..{self.rank}")

    def pairing(self, i: int, w: Weight) -> int:
        """<h_i, lambda> for ``w = Lambda - beta``; ``i`` is 1-based."""
        self._check_index(i)
        return self.key(w)[i - 1]

    def bilinear(self, i: int, j: int) -> int:
        """(alpha_i | alpha_j) = d_i a_ij, 1-based."""
        self._check_index(i)
        self._check_index(j)
        return self.symmetrizers[i - 1] * self.gcm[i - 1][j - 1]

    def key(self, w: Weight) -> tuple[int, ...]:
        """The vector of coroot pairings; equal keys mean equal weights."""
        if len(w.lam) != self.rank:
            raise CartanError(f"weight has {len(w.lam)} coordinates, datum has rank {self.rank}")
        return tuple(
            w.lam[i] - sum(w.beta[j] * self.gcm[i][j] for j in range(self.rank)) for i in range(self.rank)
        )

    def same_weight(self, a: Weight, b: Weight) -> bool:
        return self.key(a) == self.key(b)

    def is_dominant(self, w: Weight) -> bool:
        return all(x >= 0 for x in self.key(w))

    # -- finite type ------------------------------------------------------
    def symmetrized(self) -> list[list[Fraction]]:
        return [[Fraction(self.symmetrizers[i] * self.gcm[i][j]) for j in range(self.rank)] for i in range(self.rank)]

    def is_finite_type(self) -> bool:
        """Positive definiteness of (d_i a_ij), via leading principal minors."""
        b = self.symmetrized()
        return all(_det([row[:k] for row in b[:k]]) > 0 for k in range(1, self.rank + 1))

    def root_coords(self, key: Sequence[int]) -> list[Fraction]:
        """Express a weight, given by its pairing vector, in simple-root coordinates."""
        # pairing = A c, so c = A^{-1} pairing
        a = [[Fraction(x) for x in row] for row in self.gcm]
        return _solve(a, [Fraction(x) for x in key])

    def form(self, key1: Sequence[int], key2: Sequence[int]) -> Fraction:
        """Invariant form (lambda | mu) = sum_j c_j d_j <h_j, mu> with lambda = sum c_j alpha_j."""
        c = self.root_coords(key1)
        return sum((c[j] * self.symmetrizers[j] * key2[j] for j in range(self.rank)), Fraction(0))

    def positive_roots(self) -> list[tuple[int, ...]]:
        return list(_positive_roots(self))


@lru_cache(maxsize=None)
def _positive_roots(datum: CartanDatum) -> tuple[tuple[int, ...], ...]:
    """Positive roots in simple-root coordinates, built by root strings.

    For a root ``a`` and simple root ``i``, the ``i``-string through ``a``
    runs from ``a - p alpha_i`` to ``a + r alpha_i`` with
    ``p - r = <h_i, a>``; roots are processed by height.
    """
    if not datum.is_finite_type():
        raise CartanError("positive roots are only generated for finite type")
    n = datum.rank
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    bound = 200  # no rank <= 8 finite type reaches this height
    while layer:
        nxt = []
        for a in layer:
            for i in range(n):
                if a == simple[i]:
                    continue
                h = sum(datum.gcm[i][j] * a[j] for j in range(n))
                p = 0
                while True:
                    b = list(a)
                    b[i] -= p + 1
                    if tuple(b) in found:
                        p += 1
                    else:
                        break
                r = p - h
                if r > 0:
                    c = list(a)
                    c[i] += 1
                    c = tuple(c)
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        layer = nxt
        if any(sum(a) > bound for a in layer):
            raise CartanError("root generation did not terminate")
    return tuple(sorted(found, key=lambda a: (sum(a), a)))


SupportOracle = Callable[[tuple[int, ...]], int]


def _as_key_oracle(pairs: Iterable[tuple[Sequence[int], int]]) -> dict[tuple[int, ...], int]:
    return {tuple(int(x) for x in beta): int(m) for beta, m in pairs}


@lru_cache(maxsize=4096)
def _freudenthal(datum: CartanDatum, lam: tuple[int, ...], beta: tuple[int, ...]) -> int:
    if any(b < 0 for b in beta):
        return 0
    if not any(beta):
        return 1
    n = datum.rank
    rho = (1,) * n
    lam_key = datum.key(Weight(lam, (0,) * n))
    mu = Weight(lam, beta)
    mu_key = datum.key(mu)
    lr = tuple(a + b for a, b in zip(lam_key, rho))
    mr = tuple(a + b for a, b in zip(mu_key, rho))
    denom = datum.form(lr, lr) - datum.form(mr, mr)
    if denom == 0:
        return 0
    total = Fraction(0)
    for root in _positive_roots(datum):
        root_key = tuple(sum(datum.gcm[i][j] * root[j] for j in range(n)) for i in range(n))
        k = 1
        while True:
            up = tuple(b - k * r for b, r in zip(beta, root))
            if any(x < 0 for x in up):
                break
            m = _freudenthal(datum, lam, up)
            if m:
                up_key = datum.key(Weight(lam, up))
                total += datum.form(root_key, up_key) * m
            k += 1
    value = 2 * total / denom
    if value.denominator != 1 or value < 0:
        raise CartanError(f"Freudenthal recursion produced {value} at beta={beta}")
    return int(value)


def weight_multiplicity(
    datum: CartanDatum,
    highest: Weight,
    w: Weight,
    oracle: Iterable[tuple[Sequence[int], int]] | None = None,
) -> int:
    """dim V(Lambda)_lambda for ``w = Lambda - beta``.

    Finite type uses the Freudenthal recursion over positive roots.  Any other
    datum needs ``oracle``: an explicit list of ``(beta, multiplicity)`` pairs,
    with unlisted ``beta`` taken as multiplicity zero.
    """
    if any(highest.beta):
        highest = Weight(datum.key(highest), (0,) * datum.rank)
    if not datum.is_dominant(highest):
        raise CartanError(f"highest weight {highest.lam} is not dominant")
    beta = _beta_under(datum, highest, w)
    if oracle is not None:
        if beta is None:
            return 0
        return _as_key_oracle(oracle).get(beta, 0)
    if not datum.is_finite_type():
        raise CartanError("weight multiplicities beyond finite type need a support oracle")
    if beta is None:
        return 0
    return _freudenthal(datum, highest.lam, beta)


def _beta_under(datum: CartanDatum, highest: Weight, w: Weight) -> tuple[int, ...] | None:
    """The beta with ``w = highest - beta``, or None when it is not in Q+."""
    if w.lam == highest.lam:
        beta = w.beta
    else:
        diff = [a - b for a, b in zip(datum.key(highest), datum.key(w))]
        try:
            coords = datum.root_coords(diff)
        except CartanError:
            return None
        if any(c.denominator != 1 for c in coords):
            return None
        beta = tuple(int(c) for c in coords)
    if any(b < 0 for b in beta):
        return None
    return tuple(beta)


def weights_of(datum: CartanDatum, highest: Weight, oracle=None) -> dict[tuple[int, ...], int]:
    """All ``beta`` with nonzero multiplicity in V(highest), mapped to the multiplicity.

    Weights of V(Lambda) are reached from Lambda by single F-steps through
    weights of V(Lambda), so a breadth-first search over ``beta`` suffices.
    """
    if oracle is not None:
        return {b: m for b, m in _as_key_oracle(oracle).items() if m > 0}
    n = datum.rank
    start = (0,) * n
    out = {start: 1}
    frontier = [start]
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                b = list(beta)
                b[i] += 1
                b = tuple(b)
                if b in out:
                    continue
                m = weight_multiplicity(datum, highest, Weight(highest.lam, b))
                if m:
                    out[b] = m
                    nxt.append(b)
        frontier = nxt
    return out


def weyl_dimension(datum: CartanDatum, highest: Weight) -> int:
    """prod over positive roots of (Lambda+rho | a) / (rho | a)."""
    n = datum.rank
    lam_key = datum.key(highest)
    value = Fraction(1)
    for root in _positive_roots(datum):
        root_key = tuple(sum(datum.gcm[i][j] * root[j] for j in range(n)) for i in range(n))
        num = datum.form(tuple(x + 1 for x in lam_key), root_key)
        den = datum.form((1,) * n, root_key)
        value *= num / den
    return int(value)


def simple_reflection(datum: CartanDatum, i: int, key: Sequence[int]) -> tuple[int, ...]:
    """s_i on a pairing vector: lambda - <h_i, lambda> alpha_i (i 1-based)."""
    datum._check_index(i)
    h = key[i - 1]
    return tuple(key[k] - h * datum.gcm[k][i - 1] for k in range(datum.rank))


SL2 = CartanDatum(((2,),), (1,))
SL3 = CartanDatum(((2, -1), (-1, 2)), (1, 1))
B2 = CartanDatum(((2, -2), (-1, 2)), (1, 2))
G2 = CartanDatum(((2, -1), (-3, 2)), (3, 1))
A1xA1 = CartanDatum(((2, 0), (0, 2)), (1, 1))
