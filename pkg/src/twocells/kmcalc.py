"""Word calculus for cyclotomic 2-Kac-Moody categories U_Lambda and their truncations.

A word ``X_1 X_2 ... X_n 1_lambda`` is written left to right and applied right
to left: ``gens[-1]`` acts first on the source weight.  ``F_i`` lowers the
weight by ``alpha_i`` and ``E_i`` raises it.  Grading shifts [[g]] are recorded
as powers ``q**g`` of a Laurent polynomial multiplicity.

Rewriting removes every ``E_i F_j`` adjacency:

* ``i != j``:  ``E_i F_j 1 = F_j E_i 1 [[-(alpha_i|alpha_j)]]``
* ``i == j``, ``h = <h_i, eps> >= 0``:
  ``E_i F_i 1_eps = F_i E_i 1_eps [[-(alpha_i|alpha_i)]] + sum_{k<h} 1_eps [[k (alpha_i|alpha_i)]]``
* ``i == j``, ``h < 0``:
  ``E_i F_i 1_eps = F_i E_i 1_eps [[-(alpha_i|alpha_i)]] - sum_{k<-h} 1_eps [[-(k-1)(alpha_i|alpha_i)]]``

where ``eps`` is the weight the pair acts on.  The last rule is used in
subtractive form, so intermediate multiplicities may be signed; results are
spanning decompositions over normal words ``F...F E...E 1_lambda``, not
decompositions into indecomposables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .cartan import CartanDatum, CartanError, Weight, weights_of
from .laurent import LaurentPoly, parse as parse_laurent, shift_sum

E, F = "E", "F"
Gen = tuple[str, int, int]  # (kind, 1-based index, shift)
Key = tuple[int, ...]


class WordError(ValueError):
    pass


class NegativeMultiplicity(ArithmeticError):
    """A final multiplicity has a negative coefficient."""

    def __init__(self, terms):
        self.terms = terms
        shown = ", ".join(f"{w}: {p}" for w, p in terms[:3])
        super().__init__(f"negative multiplicities in normal form: {shown}")


class Support:
    """Weights of V(Lambda_1) + ... + V(Lambda_n), keyed by coroot pairings.

    Each weight is represented canonically as ``Lambda_k - beta`` for the
    least ``k`` whose module contains it.  ``oracles`` optionally gives, per
    highest weight, an explicit ``[(beta, multiplicity), ...]`` list; it is
    required outside finite type.
    """

    def __init__(self, datum: CartanDatum, highest_weights: Sequence[Weight], oracles=None):
        if not highest_weights:
            raise WordError("at least one highest weight is required")
        self.datum = datum
        hws = []
        for w in highest_weights:
            key = datum.key(w)
            if any(x < 0 for x in key):
                raise CartanError(f"highest weight {w.lam} is not dominant")
            hws.append(Weight(key, (0,) * datum.rank))
        self.highest = tuple(hws)
        if oracles is None:
            oracles = [None] * len(hws)
        if len(oracles) != len(hws):
            raise WordError("one support oracle entry per highest weight")
        self._canonical: dict[Key, Weight] = {}
        self._members: list[frozenset[Key]] = []
        self._mult: list[dict[Key, int]] = []
        for hw, oracle in zip(hws, oracles):
            mults = weights_of(datum, hw, oracle)
            keys = {}
            for beta, m in mults.items():
                w = Weight(hw.lam, beta)
                keys[datum.key(w)] = m
                self._canonical.setdefault(datum.key(w), w)
            self._members.append(frozenset(keys))
            self._mult.append(keys)
        self._columns = tuple(tuple(datum.gcm[r][c] for r in range(datum.rank)) for c in range(datum.rank))

    @property
    def rank(self) -> int:
        return self.datum.rank

    def key(self, w: Weight) -> Key:
        return self.datum.key(w)

    def contains_key(self, key: Key) -> bool:
        return key in self._canonical

    def __contains__(self, w: Weight) -> bool:
        return self.contains_key(self.key(w))

    def canonical(self, w: Weight | Key) -> Weight:
        key = w if isinstance(w, tuple) else self.key(w)
        try:
            return self._canonical[key]
        except KeyError:
            raise WordError(f"weight with pairings {key} lies outside the support") from None

    def keys(self) -> list[Key]:
        return sorted(self._canonical, key=lambda k: (self._order(k), k))

    def weights(self) -> list[Weight]:
        return [self._canonical[k] for k in self.keys()]

    def _order(self, key: Key):
        w = self._canonical[key]
        return (self.highest.index(Weight(w.lam, (0,) * self.rank)), sum(w.beta), w.beta)

    def multiplicity(self, k: int, key: Key) -> int:
        return self._mult[k].get(key, 0)

    def step(self, key: Key, kind: str, i: int) -> Key:
        col = self._columns[i - 1]
        if kind == F:
            return tuple(a - c for a, c in zip(key, col))
        return tuple(a + c for a, c in zip(key, col))

    def share_highest(self, a: Key, b: Key) -> bool:
        return any(a in m and b in m for m in self._members)

    # -- JSON -------------------------------------------------------------
    @classmethod
    def from_json(cls, datum: CartanDatum, data: Sequence[dict], oracles=None) -> "Support":
        return cls(datum, [Weight.from_json(d) for d in data], oracles)


def _as_gen(g) -> Gen:
    if len(g) not in (2, 3):
        raise WordError(f"generator {g!r} must be [kind, index] or [kind, index, shift]")
    kind, i = str(g[0]).upper(), g[1]
    shift = g[2] if len(g) == 3 else 0
    if kind not in (E, F):
        raise WordError(f"generator kind must be E or F, got {g[0]!r}")
    if not isinstance(i, int) or isinstance(i, bool) or not isinstance(shift, int) or isinstance(shift, bool):
        raise WordError(f"generator {g!r} needs integer index and shift")
    return (kind, i, shift)


@dataclass(frozen=True)
class Word:
    """``gens`` written left to right; ``shift`` is an overall grading shift."""

    source: Weight
    gens: tuple[Gen, ...]
    shift: int = 0
    support: Support = field(default=None, compare=False, hash=False, repr=False)

    def keys(self) -> list[Key]:
        """Weights along the word: ``keys()[t]`` is the weight after the rightmost t generators."""
        k = self.support.key(self.source)
        out = [k]
        for kind, i, _ in reversed(self.gens):
            k = self.support.step(k, kind, i)
            out.append(k)
        return out

    @property
    def is_zero(self) -> bool:
        return not all(self.support.contains_key(k) for k in self.keys())

    @property
    def target(self) -> Weight:
        return self.support.canonical(self.keys()[-1])

    @property
    def total_shift(self) -> int:
        return self.shift + sum(g[2] for g in self.gens)

    def bare(self) -> "Word":
        return Word(self.source, tuple((k, i, 0) for k, i, _ in self.gens), 0, self.support)

    def acting_weight(self, pos: int) -> Key:
        """Weight fed into the generator at written position ``pos``'s right neighbour pair."""
        return self.keys()[len(self.gens) - pos - 2]

    def is_normal(self) -> bool:
        return len_measure(self) == 0

    def __str__(self):
        body = " ".join(f"{k}{i}" + (f"[[{s}]]" if s else "") for k, i, s in self.gens)
        src = f"1_{{{','.join(map(str, self.support.key(self.source)))}}}" if self.support else "1"
        text = f"{body} {src}" if body else src
        return text + (f"[[{self.shift}]]" if self.shift else "")

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "gens": [list(g) for g in self.gens],
            "shift": self.shift,
        }


@dataclass(frozen=True, order=True)
class NormalWord:
    """``F_{f_part} E_{e_part} 1_source [[shift]]`` with indices in written order."""

    source: Weight
    f_part: tuple[int, ...]
    e_part: tuple[int, ...]
    shift: int = 0

    def word(self, support: Support) -> Word:
        gens = tuple((F, i, 0) for i in self.f_part) + tuple((E, i, 0) for i in self.e_part)
        return Word(self.source, gens, self.shift, support)

    def __str__(self):
        parts = [f"F{i}" for i in self.f_part] + [f"E{i}" for i in self.e_part]
        lam = ",".join(map(str, self.source.lam))
        beta = ",".join(map(str, self.source.beta))
        return " ".join(parts + [f"1_{{({lam})-({beta})}}"])


def make_word(
    support: Support,
    source: Weight,
    gens: Iterable,
    shift: int = 0,
    canonical_shift: bool = False,
) -> Word:
    """Validated word; check ``.is_zero`` for the zero-flag.

    With ``canonical_shift`` every ``E_i`` landing on ``lambda`` receives the
    extra shift [[1 - <h_i, lambda>]].
    """
    gens = tuple(_as_gen(g) for g in gens)
    for _, i, _ in gens:
        if not 1 <= i <= support.rank:
            raise WordError(f"generator index {i} outside 1..{support.rank}")
    if source not in support:
        raise WordError("source weight lies outside the support")
    word = Word(support.canonical(source), gens, shift, support)
    if canonical_shift and not word.is_zero:
        keys = word.keys()
        n = len(gens)
        new = []
        for p, (kind, i, s) in enumerate(gens):
            if kind == E:
                landing = keys[n - p]
                s += 1 - landing[i - 1]
            new.append((kind, i, s))
        word = replace(word, gens=tuple(new))
    return word


def len_measure(word: Word) -> int:
    """Number of (E, F) pairs with the E written to the left of the F."""
    total = 0
    es = 0
    for kind, _, _ in word.gens:
        if kind == E:
            es += 1
        else:
            total += es
    return total


class FormalSum:
    """Finite sum of shift-free words (or normal words) with Laurent multiplicities."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, p in (terms or {}).items():
            if not p.is_zero():
                clean[w] = p
        self._terms = clean

    @classmethod
    def of(cls, word: Word) -> "FormalSum":
        if word.is_zero:
            return cls()
        return cls({word.bare(): LaurentPoly.monomial(word.total_shift)})

    def items(self):
        return sorted(self._terms.items(), key=lambda t: _sort_key(t[0]))

    def __getitem__(self, w) -> LaurentPoly:
        return self._terms.get(w, LaurentPoly())

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(w for w, _ in self.items())

    def __contains__(self, w):
        return w in self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self._terms)
        for w, p in other._terms.items():
            out[w] = out.get(w, LaurentPoly()) + p
        return FormalSum(out)

    def scale(self, p: LaurentPoly) -> "FormalSum":
        return FormalSum({w: c * p for w, c in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def negative_terms(self):
        return [(w, p) for w, p in self.items() if any(c < 0 for _, c in p.items())]

    def is_nonnegative(self) -> bool:
        return not self.negative_terms()

    def __repr__(self):
        return "FormalSum(" + " + ".join(f"({p})*{w}" for w, p in self.items()) + ")"


def _sort_key(w):
    if isinstance(w, NormalWord):
        return (0, w.source.lam, w.source.beta, w.f_part, w.e_part)
    return (1, w.source.lam, w.source.beta, w.gens)


def _ef_positions(word: Word) -> list[int]:
    return [p for p in range(len(word.gens) - 1) if word.gens[p][0] == E and word.gens[p + 1][0] == F]


def rewrite_word(word: Word, pos: int) -> list[tuple[Word, LaurentPoly]]:
    """Replace the E_i F_j pair at written positions ``pos, pos+1``."""
    if not (0 <= pos < len(word.gens) - 1) or word.gens[pos][0] != E or word.gens[pos + 1][0] != F:
        raise WordError(f"position {pos} is not an E-before-F adjacency in {word}")
    support = word.support
    datum = support.datum
    _, i, si = word.gens[pos]
    _, j, sj = word.gens[pos + 1]
    head, tail = word.gens[:pos], word.gens[pos + 2 :]
    swapped = replace(word, gens=head + ((F, j, sj), (E, i, si)) + tail)
    out = []
    if i != j:
        out.append((swapped, LaurentPoly.monomial(-datum.bilinear(i, j))))
    else:
        eps = word.acting_weight(pos)
        h = eps[i - 1]
        d2 = datum.bilinear(i, i)
        out.append((swapped, LaurentPoly.monomial(-d2)))
        removed = replace(word, gens=head + tail, shift=word.shift + si + sj)
        if h >= 0:
            ids = shift_sum(h, d2)
        else:
            ids = -shift_sum(-h, -d2).shift(d2)
        if not ids.is_zero():
            out.append((removed, ids))
    return [(w, p) for w, p in out if not w.is_zero]


def rewrite_step(ws: FormalSum, term: Word, pos: int) -> FormalSum:
    """Rewrite one adjacency inside one term of a formal sum of words."""
    if term not in ws:
        raise WordError(f"{term} is not a term of the sum")
    coeff = ws[term]
    out = dict(ws._terms)
    del out[term]
    result = FormalSum(out)
    pieces = {}
    for w, p in rewrite_word(term, pos):
        key = w.bare()
        pieces[key] = pieces.get(key, LaurentPoly()) + p.shift(w.total_shift - term.total_shift)
    return result + FormalSum(pieces).scale(coeff)


STRATEGIES = ("leftmost", "rightmost", "random")


def _choose(positions: list[int], strategy: str, rng: random.Random | None) -> int:
    if strategy == "leftmost":
        return positions[0]
    if strategy == "rightmost":
        return positions[-1]
    if strategy == "random":
        return (rng or random.Random(0)).choice(positions)
    raise WordError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def to_normal_word(word: Word) -> NormalWord:
    if not word.is_normal():
        raise WordError(f"{word} is not of the shape F...F E...E")
    f_part = tuple(i for k, i, _ in word.gens if k == F)
    e_part = tuple(i for k, i, _ in word.gens if k == E)
    return NormalWord(word.source, f_part, e_part, 0)


def normal_form(
    x: Word | FormalSum,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
    check_positivity: bool = True,
    trace: list | None = None,
) -> FormalSum:
    """Rewrite until every term has Len 0; keys become shift-free NormalWords.

    ``trace`` (when given) receives ``(word, pos, len_before, [len_after...])``
    for each rewrite, for termination checks.
    """
    pending = FormalSum.of(x) if isinstance(x, Word) else x
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    done: dict[NormalWord, LaurentPoly] = {}
    while not pending.is_zero():
        word, coeff = pending.items()[0]
        if word.is_normal():
            nw = to_normal_word(word)
            done[nw] = done.get(nw, LaurentPoly()) + coeff
            rest = dict(pending._terms)
            del rest[word]
            pending = FormalSum(rest)
            continue
        pos = _choose(_ef_positions(word), strategy, rng)
        if trace is not None:
            trace.append((word, pos, len_measure(word), [len_measure(w) for w, _ in rewrite_word(word, pos)]))
        pending = rewrite_step(pending, word, pos)
    result = FormalSum(done)
    if check_positivity:
        bad = result.negative_terms()
        if bad:
            raise NegativeMultiplicity(bad)
    return result


def adjoint(word: Word) -> Word:
    """Adjoint word: reversed, E and F exchanged, shifts moved per generator.

    A generator's weight ``lambda`` is its source.  ``E_i 1_lambda [[z]]`` goes to
    ``F_i 1_{lambda+alpha_i} [[z - d_i (1 + <h_i, lambda>)]]`` and
    ``F_i 1_lambda [[z]]`` to ``E_i 1_{lambda-alpha_i} [[z - d_i (1 - <h_i, lambda>)]]``,
    with ``d_i = (alpha_i|alpha_i)/2``.  The overall shift is kept.
    """
    datum = word.support.datum
    keys = word.keys()
    n = len(word.gens)
    new = []
    for p, (kind, i, z) in enumerate(word.gens):
        lam = keys[n - p - 1]
        d = datum.symmetrizers[i - 1]
        h = lam[i - 1]
        if kind == E:
            new.append((F, i, z - d * (1 + h)))
        else:
            new.append((E, i, z - d * (1 - h)))
    return Word(word.support.canonical(keys[-1]), tuple(reversed(new)), word.shift, word.support)


def _climbs(support: Support, start: Key) -> Iterator[tuple[tuple[int, ...], Key]]:
    """All E-sequences (in application order) that stay in the support."""
    stack = [((), start)]
    while stack:
        seq, key = stack.pop()
        yield seq, key
        for i in range(1, support.rank + 1):
            nxt = support.step(key, E, i)
            if support.contains_key(nxt):
                stack.append((seq + (i,), nxt))


def _height_gap(support: Support, high: Key, low: Key) -> tuple[int, ...] | None:
    coords = support.datum.root_coords([a - b for a, b in zip(high, low)])
    if any(c.denominator != 1 or c < 0 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def _descents(support: Support, start: Key, goal: Key) -> Iterator[tuple[int, ...]]:
    stack = [((), start)]
    while stack:
        seq, key = stack.pop()
        gap = _height_gap(support, key, goal)
        if gap is None:
            continue
        if not any(gap):
            yield seq
            continue
        for i in range(1, support.rank + 1):
            if gap[i - 1] == 0:
                continue
            nxt = support.step(key, F, i)
            if support.contains_key(nxt):
                stack.append((seq + (i,), nxt))


def enumerate_spanning(support: Support, src: Weight, tgt: Weight) -> list[NormalWord]:
    """Every support-valid ``F...F E...E 1_src`` from ``src`` to ``tgt``.

    The E-part climbs to some delta, the F-part descends to ``tgt``; both walks
    are finite because the support is.  These span the hom-category; they are
    not its indecomposables.
    """
    a, b = support.key(src), support.key(tgt)
    if not (support.contains_key(a) and support.contains_key(b)):
        raise WordError("source and target must lie in the support")
    if not support.share_highest(a, b):
        return []
    source = support.canonical(a)
    out = set()
    for climb, delta in _climbs(support, a):
        for descent in _descents(support, delta, b):
            # written order is the reverse of application order
            out.add(NormalWord(source, tuple(reversed(descent)), tuple(reversed(climb)), 0))
    return sorted(out, key=lambda w: (len(w.f_part) + len(w.e_part), w.e_part, w.f_part))


def truncated_object(support: Support, beta: Sequence[int], i: int) -> Weight:
    """Canonical representative of the object (beta, i), i 1-based."""
    if not 1 <= i <= len(support.highest):
        raise WordError(f"highest-weight index {i} outside 1..{len(support.highest)}")
    if any(b < 0 for b in beta):
        raise WordError("beta must lie in Q+")
    w = Weight(support.highest[i - 1].lam, tuple(beta))
    key = support.key(w)
    if support.contains_key(key):
        return support.canonical(key)
    return w


# -- rank one oracle ------------------------------------------------------------


def sl2_matrices(n: int) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """e and f on V(n) with basis v_0..v_n, v_k of weight n - 2k.

    e v_k = (n - k + 1) v_{k-1} and f v_k = (k + 1) v_{k+1}.
    """
    size = n + 1
    e = [[Fraction(0)] * size for _ in range(size)]
    f = [[Fraction(0)] * size for _ in range(size)]
    for k in range(size):
        if k >= 1:
            e[k - 1][k] = Fraction(n - k + 1)
        if k + 1 < size:
            f[k + 1][k] = Fraction(k + 1)
    return e, f


def sl2_oracle(n: int, word: Word) -> list[list[Fraction]]:
    """Matrix of the word on V(n) at q = 1, precomposed with the projection to the source line."""
    if word.support.rank != 1:
        raise WordError("the sl2 oracle needs a rank-one datum")
    key = word.support.key(word.source)[0]
    if (n - key) % 2 or not -n <= key <= n:
        raise WordError(f"source weight {key} is not a weight of V({n})")
    src = (n - key) // 2
    e, f = sl2_matrices(n)
    vec = [Fraction(int(r == src)) for r in range(n + 1)]
    for kind, _, _ in reversed(word.gens):
        m = e if kind == E else f
        vec = [sum((m[r][c] * vec[c] for c in range(n + 1)), Fraction(0)) for r in range(n + 1)]
    return [[vec[r] if c == src else Fraction(0) for c in range(n + 1)] for r in range(n + 1)]


def decategorify(support: Support, n: int, nf: FormalSum) -> list[list[Fraction]]:
    """sum of eval_1(multiplicity) * oracle(normal word)."""
    size = n + 1
    acc = [[Fraction(0)] * size for _ in range(size)]
    for nw, p in nf.items():
        m = sl2_oracle(n, nw.word(support))
        c = p.eval1()
        for r, col in product(range(size), repeat=2):
            acc[r][col] += c * m[r][col]
    return acc


# -- random words ------------------------------------------------------------------


def random_word(support: Support, rng: random.Random, max_len: int, source: Weight | None = None) -> Word:
    """Uniform choice among generators that keep the word non-zero, step by step."""
    if source is None:
        source = rng.choice(support.weights())
    key = support.key(source)
    length = rng.randint(0, max_len)
    applied: list[Gen] = []
    for _ in range(length):
        options = [
            (kind, i)
            for kind in (E, F)
            for i in range(1, support.rank + 1)
            if support.contains_key(support.step(key, kind, i))
        ]
        if not options:
            break
        kind, i = rng.choice(options)
        applied.append((kind, i, 0))
        key = support.step(key, kind, i)
    return Word(support.canonical(source), tuple(reversed(applied)), 0, support)


# -- JSON ---------------------------------------------------------------------------


def normal_form_json(nf: FormalSum) -> dict:
    return {
        "normal_form": [
            {
                "source": nw.source.to_json(),
                "f_part": list(nw.f_part),
                "e_part": list(nw.e_part),
                "multiplicity": str(p),
            }
            for nw, p in nf.items()
        ],
        "zero": nf.is_zero(),
    }


def normal_form_from_json(support: Support, data: dict) -> FormalSum:
    terms = {}
    for entry in data["normal_form"]:
        nw = NormalWord(
            support.canonical(Weight.from_json(entry["source"])),
            tuple(entry["f_part"]),
            tuple(entry["e_part"]),
        )
        terms[nw] = parse_laurent(entry["multiplicity"])
    return FormalSum(terms)
