"""Brute-force oracles used by the test-suite.

None of these import the code paths they check; they recompute from
definitions with plain loops and sympy linear algebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import Matrix, Rational


# -- weight multiplicities: rank of the Shapovalov form on free f-words ---------------


def shapovalov_multiplicity(gcm, lam, beta) -> int:
    """dim L(lam)_{lam - beta} as the rank of the contravariant form on words f_I v.

    The radical of the form is the maximal submodule of the Verma module, so
    Serre relations need not be imposed on the words.
    """
    n = len(gcm)
    words = []

    def build(prefix, remaining):
        if not any(remaining):
            words.append(tuple(prefix))
            return
        for i in range(n):
            if remaining[i]:
                r = list(remaining)
                r[i] -= 1
                build(prefix + [i], r)

    build([], list(beta))

    @lru_cache(maxsize=None)
    def e_on(i, word):
        # e_i f_{w0} f_{w1} ... v = sum over t with w_t = i of
        # (<h_i, lam> - sum_{s > t} a_{i w_s}) f_{w without t} v
        out = {}
        for t, j in enumerate(word):
            if j != i:
                continue
            h = lam[i] - sum(gcm[i][word[s]] for s in range(t + 1, len(word)))
            rest = word[:t] + word[t + 1 :]
            out[rest] = out.get(rest, 0) + h
        return out

    @lru_cache(maxsize=None)
    def form(a, b):
        if not a:
            return 1 if not b else 0
        # <f_{a0} X, Y> = <X, e_{a0} Y>
        total = 0
        for word, c in e_on(a[0], b).items():
            if c:
                total += c * form(a[1:], word)
        return total

    if not words:
        return 1 if not any(beta) else 0
    gram = Matrix(len(words), len(words), lambda r, c: form(words[r], words[c]))
    return gram.rank()


# -- bimodule homomorphisms by solving the intertwining equations ------------------------


@lru_cache(maxsize=None)
def _corner_basis(alg, k, l):
    """Basis vectors of e_k A e_l, or of A e_l when k is None, or e_k A when l is None."""
    n = alg.dim
    es = alg.idempotents
    vecs = []
    for x in range(n):
        v = tuple(Fraction(int(y == x)) for y in range(n))
        if k is not None:
            v = alg.times(es[k], v)
        if l is not None:
            v = alg.times(v, es[l])
        vecs.append(v)
    m = Matrix([[Rational(c.numerator, c.denominator) for c in v] for v in vecs])
    rref, piv = m.T.rref()
    return [vecs[p] for p in piv]


def _coords(basis, v):
    return list(_coords_cached(tuple(basis), tuple(v)))


@lru_cache(maxsize=None)
def _coords_cached(basis, v):
    m = Matrix([[Rational(c.numerator, c.denominator) for c in b] for b in basis]).T
    rhs = Matrix([Rational(c.numerator, c.denominator) for c in v])
    sol, params = m.gauss_jordan_solve(rhs)
    assert params.shape[0] == 0
    return tuple(sol)


def _proj_bimodule(fam, F):
    """Basis and left/right action matrices of A_j e_jl (x) e_ik A_i."""
    (i, k), (j, l) = F.src, F.tgt
    Aj, Ai = fam.algebras[j], fam.algebras[i]
    left_b = _corner_basis(Aj, None, l)
    right_b = _corner_basis(Ai, k, None)
    pairs = list(product(range(len(left_b)), range(len(right_b))))
    dim = len(pairs)

    def act_left(x):
        m = Matrix.zeros(dim, dim)
        for col, (p, q) in enumerate(pairs):
            c = _coords(left_b, Aj.times(x, left_b[p]))
            for p2, val in enumerate(c):
                if val:
                    m[pairs.index((p2, q)), col] += val
        return m

    def act_right(y):
        m = Matrix.zeros(dim, dim)
        for col, (p, q) in enumerate(pairs):
            c = _coords(right_b, Ai.times(right_b[q], y))
            for q2, val in enumerate(c):
                if val:
                    m[pairs.index((p, q2)), col] += val
        return m

    units_j = [tuple(Fraction(int(y == x)) for y in range(Aj.dim)) for x in range(Aj.dim)]
    units_i = [tuple(Fraction(int(y == x)) for y in range(Ai.dim)) for x in range(Ai.dim)]
    return dim, [act_left(x) for x in units_j], [act_right(y) for y in units_i]


def bimodule_hom_dim(fam, F, G) -> int:
    """dim Hom_{A_j-A_i}(F, G) for parallel projective 1-morphisms."""
    dF, LF, RF = _proj_bimodule(fam, F)
    dG, LG, RG = _proj_bimodule(fam, G)
    nvars = dF * dG
    rows = []
    # unknown T (dG x dF), flattened row-major; equations T M_F - M_G T = 0
    for MF, MG in list(zip(LF, LG)) + list(zip(RF, RG)):
        for r, c in product(range(dG), range(dF)):
            row = [0] * nvars
            for s in range(dF):
                row[r * dF + s] += MF[s, c]
            for s in range(dG):
                row[s * dF + c] -= MG[r, s]
            rows.append(row)
    m = Matrix(rows)
    return nvars - m.rank()


# -- ideal maximality in the cell 2-representation ---------------------------------------


@lru_cache(maxsize=None)
def _right_mult(alg, a):
    """Matrix of v -> v a on coordinate vectors."""
    n = alg.dim
    cols = [alg.times(tuple(Fraction(int(y == x)) for y in range(n)), a) for x in range(n)]
    return Matrix(n, n, lambda r, c: Rational(cols[c][r].numerator, cols[c][r].denominator))


@lru_cache(maxsize=None)
def _left_mult(alg, a):
    n = alg.dim
    cols = [alg.times(a, tuple(Fraction(int(y == x)) for y in range(n))) for x in range(n)]
    return Matrix(n, n, lambda r, c: Rational(cols[c][r].numerator, cols[c][r].denominator))


def _outer(u, w):
    return Matrix(len(u), len(w), lambda r, c: Rational(u[r].numerator, u[r].denominator) * Rational(w[c].numerator, w[c].denominator))


class CellRep:
    """Morphisms of N_L as tensors T in A_j (x) A_i (matrices dim A_j x dim A_i).

    phi_{a,b} is the tensor a (x) b; composing phi_{a,b} then phi_{al,be}
    gives a al (x) be b.
    """

    def __init__(self, fam, src):
        self.fam = fam
        self.i, self.k = src
        self.objects = [(j, l) for j, alg in enumerate(fam.algebras) for l in range(alg.n_idempotents)]
        Ai = fam.algebras[self.i]
        self.b_basis = _corner_basis(Ai, self.k, self.k)

    def pairs(self):
        return [(x, y) for x in self.objects for y in self.objects if x[0] == y[0]]

    def hom_basis(self, x, y):
        (j, l), (_, m) = x, y
        Aj = self.fam.algebras[j]
        a_basis = _corner_basis(Aj, l, m)
        return [_outer(a, b) for a in a_basis for b in self.b_basis]

    def identity(self, x):
        j, l = x
        Aj, Ai = self.fam.algebras[j], self.fam.algebras[self.i]
        return _outer(Aj.idempotents[l], Ai.idempotents[self.k])


def _flat(T):
    return list(T)


def _tensor_compose(fam, i, T1, j, T2):
    """(second o first) where first = T1 and second = T2, both in A_j (x) A_i.

    first = sum_r,s T1[r,s] u_r (x) w_s, second = sum T2[p,q] u_p (x) w_q:
    result = sum T1[r,s] T2[p,q] (u_r u_p) (x) (w_q w_s).
    """
    Aj, Ai = fam.algebras[j], fam.algebras[i]
    nj, ni = Aj.dim, Ai.dim
    out = Matrix.zeros(nj, ni)
    for p, q in product(range(nj), range(ni)):
        c2 = T2[p, q]
        if not c2:
            continue
        up = tuple(Fraction(int(y == p)) for y in range(nj))
        wq = tuple(Fraction(int(y == q)) for y in range(ni))
        out += c2 * (_right_mult(Aj, up) * T1 * _left_mult(Ai, wq).T)
    return out


def _act(fam, i, T, x, y, K):
    """Entries of K o sigma for sigma: F^{ik}_x -> F^{ik}_y and K = F^{j m'}_{l n'}.

    Returns [(x', y', T')] with x' = y' = (l, n') for each pair of copies.
    """
    (j, l_x), (_, l_y) = x, y
    (kj, mp), (l, np_) = K
    if kj != j:
        return []
    Aj, Al, Ai = fam.algebras[j], fam.algebras[l], fam.algebras[i]
    u_basis = _corner_basis(Aj, mp, l_x)
    w_basis = _corner_basis(Aj, mp, l_y)
    target = (l, np_)
    out = []
    e_ln = Al.idempotents[np_]
    for u in u_basis:
        # sigma applied after u: the A_j-part a goes to u a, re-expanded in w_basis
        coeff_rows = []
        for r in range(Aj.dim):
            unit = tuple(Fraction(int(z == r)) for z in range(Aj.dim))
            prod = Aj.times(u, unit)
            coeff_rows.append(_coords(w_basis, prod) if any(prod) else [0] * len(w_basis))
        for yi in range(len(w_basis)):
            # b-part: sum_r coord_y(u unit_r) T[r, :]
            bvec = Matrix.zeros(1, Ai.dim)
            for r in range(Aj.dim):
                c = coeff_rows[r][yi]
                if c:
                    bvec += c * T[r, :]
            if any(bvec):
                T2 = Matrix(Al.dim, Ai.dim, lambda a, b: Rational(e_ln[a].numerator, e_ln[a].denominator) * bvec[0, b])
                out.append((target, target, T2))
    return out


def ideal_closure_hits_identity(fam, src, seeds) -> bool:
    """Close the seeds (pairs (x, y, T)) to a stable ideal of N_L; report if an identity appears."""
    rep = CellRep(fam, src)
    i = rep.i
    spans = {p: [] for p in rep.pairs()}
    queue = list(seeds)
    one_morphisms = [(a, b) for a in rep.objects for b in rep.objects]

    def add(x, y, T):
        basis = spans[(x, y)]
        vecs = [_flat(B) for B in basis]
        if not any(T):
            return False
        if vecs and Matrix(vecs + [_flat(T)]).rank() == Matrix(vecs).rank():
            return False
        basis.append(T)
        return True

    def has_identity(x):
        vecs = [_flat(B) for B in spans[(x, x)]]
        ident = _flat(rep.identity(x))
        return bool(vecs) and Matrix(vecs + [ident]).rank() == Matrix(vecs).rank()

    while queue:
        x, y, T = queue.pop()
        if not add(x, y, T):
            continue
        if x == y and has_identity(x):
            return True
        j = x[0]
        for z in rep.objects:
            if z[0] != j:
                continue
            for B in rep.hom_basis(y, z):
                queue.append((x, z, _tensor_compose(fam, i, T, j, B)))
            for B in rep.hom_basis(z, x):
                queue.append((z, y, _tensor_compose(fam, i, B, j, T)))
        for K in one_morphisms:
            queue.extend(_act(fam, i, T, x, y, K))
    return False


def cell_ideal_tensors(fam, src):
    """The cell ideal as tensors, recomputed from the radical by brute force."""
    rep = CellRep(fam, src)
    Ai = fam.algebras[rep.i]
    rad_b = _radical_by_nilpotency(Ai, rep.k)
    out = []
    for x, y in rep.pairs():
        (j, l), (_, m) = x, y
        for a in _corner_basis(fam.algebras[j], l, m):
            for b in rad_b:
                out.append((x, y, _outer(a, b)))
    return out


def _radical_by_nilpotency(alg, k):
    """rad(e A e) for local e A e: the elements with zero idempotent coefficient.

    For a split local algebra e A e = k e + rad, so the radical is the kernel
    of the functional "coefficient of e", found as the span of nilpotents in a
    basis adapted to e.
    """
    basis = _corner_basis(alg, k, k)
    e = alg.idempotents[k]
    nil = []
    for b in basis:
        # b - lambda e is nilpotent for exactly one lambda; lambda = trace / dim
        n = len(basis)
        L = Matrix(n, n, lambda r, c: _coords(basis, alg.times(b, basis[c]))[r])
        lam = L.trace() / n
        v = tuple(Fraction(str(bi - lam * ei)) for bi, ei in zip(b, e))
        if any(v):
            nil.append(v)
    if not nil:
        return []
    m = Matrix([[Rational(c.numerator, c.denominator) for c in v] for v in nil])
    rref, piv = m.T.rref()
    return [nil[p] for p in piv]


def quotient_candidates(fam, src, coeff_range=(-1, 0, 1)):
    """Morphisms sigma outside the cell ideal, one per non-zero coefficient vector on a quotient basis."""
    rep = CellRep(fam, src)
    Ai = fam.algebras[rep.i]
    e = Ai.idempotents[rep.k]
    out = []
    for x, y in rep.pairs():
        (j, l), (_, m) = x, y
        a_basis = _corner_basis(fam.algebras[j], l, m)
        # e A e / rad is spanned by e itself
        quot = [_outer(a, e) for a in a_basis]
        for coeffs in product(coeff_range, repeat=len(quot)):
            if any(coeffs):
                T = sum((c * Q for c, Q in zip(coeffs, quot)), Matrix.zeros(*quot[0].shape))
                out.append((x, y, T))
    return out


# -- word enumeration ----------------------------------------------------------------------


def brute_force_normal_words(n: int, src_key: int, tgt_key: int, max_len: int):
    """All sl2 words F^a E^b (as E/F strings) valid in V(n), src -> tgt, by exhaustive search."""
    found = set()
    for length in range(max_len + 1):
        for letters in product("EF", repeat=length):
            # Len 0 means no E before an F
            text = "".join(letters)
            if "EF" in text:
                continue
            key = src_key
            ok = True
            for ch in reversed(letters):
                key += 2 if ch == "E" else -2
                if not -n <= key <= n:
                    ok = False
                    break
            if ok and key == tgt_key:
                found.add(text)
    return found
