"""Seeded sources of small multisemigroups and algebra families.

Used by the randomized test suites and by ``twocells`` commands that take a
``--seed``.  Every generator returns validated inputs only.
"""

from __future__ import annotations

import random
from itertools import permutations, product
from typing import Callable, Iterator

from .greenms import Multisemigroup, validate
from .projbicat import (
    AlgebraFamily,
    dual_numbers,
    family,
    field_algebra,
    multisemigroup_of,
    preprojective_a2,
    truncated_polynomial,
    zigzag_a2,
)

MAX_SIZE = 6


def _from_function(n: int, mul: Callable[[int, int], set[int]], names=None) -> Multisemigroup:
    names = names or [f"s{x}" for x in range(n)]
    return Multisemigroup(names, {(x, y): mul(x, y) for x, y in product(range(n), repeat=2)})


def relabel(ms: Multisemigroup, rng: random.Random) -> Multisemigroup:
    """Same table under a random permutation of the element order."""
    n = len(ms)
    perm = list(range(n))
    rng.shuffle(perm)
    inv = {old: new for new, old in enumerate(perm)}
    table = {}
    for x, y in product(range(n), repeat=2):
        table[(inv[x], inv[y])] = [inv[z] for z in ms.mul(x, y)]
    return Multisemigroup([f"s{x}" for x in range(n)], table)


# -- single-valued sources --------------------------------------------------------


def transformation_semigroup(rng: random.Random, degree: int | None = None, max_size: int = MAX_SIZE):
    """Semigroup generated by random self-maps of a small set, or None when too big."""
    degree = degree or rng.choice((2, 3))
    gens = {tuple(rng.randrange(degree) for _ in range(degree)) for _ in range(rng.randint(1, 3))}
    # f*g means "apply g, then f"
    compose = lambda f, g: tuple(f[g[p]] for p in range(degree))
    elems = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for f in frontier:
            for g in list(gens):
                for h in (compose(f, g), compose(g, f)):
                    if h not in elems:
                        elems.add(h)
                        nxt.append(h)
        if len(elems) > max_size:
            return None
        frontier = nxt
    order = sorted(elems)
    index = {f: x for x, f in enumerate(order)}
    return _from_function(len(order), lambda x, y: {index[compose(order[x], order[y])]})


def remove_zero(ms: Multisemigroup):
    """Drop a two-sided zero, turning products equal to it into empty products."""
    n = len(ms)
    zeros = [z for z in range(n) if all(ms.mul(z, x) == {z} == ms.mul(x, z) for x in range(n))]
    if not zeros or n == 1:
        return None
    z = zeros[0]
    keep = [x for x in range(n) if x != z]
    index = {x: p for p, x in enumerate(keep)}
    return _from_function(len(keep), lambda a, b: {index[v] for v in ms.mul(keep[a], keep[b]) if v != z})


def cyclic_group(n: int) -> Multisemigroup:
    return _from_function(n, lambda x, y: {(x + y) % n})


def _s3():
    elems = sorted(permutations(range(3)))
    mul = lambda p, q: tuple(p[q[i]] for i in range(3))
    return elems, mul


def double_coset_hypergroup(subgroup_gen: tuple[int, ...] = (1, 0, 2)) -> Multisemigroup:
    """H\\S3/H with H generated by one transposition: HxH * HyH = double cosets in HxHyH."""
    elems, mul = _s3()
    ident = (0, 1, 2)
    H = {ident, subgroup_gen}
    cosets = []
    for g in elems:
        dc = frozenset(mul(mul(h1, g), h2) for h1 in H for h2 in H)
        if dc not in cosets:
            cosets.append(dc)
    owner = {g: x for x, dc in enumerate(cosets) for g in dc}

    def product_(x, y):
        return {owner[mul(a, b)] for a in cosets[x] for b in cosets[y]}

    return _from_function(len(cosets), product_, [f"HgH{x}" for x in range(len(cosets))])


FUSION_RULES = {
    # supports of fusion rules with nonnegative structure constants
    "fibonacci": (["1", "t"], {("t", "t"): ["1", "t"]}),
    "ising": (["1", "s", "p"], {("s", "s"): ["1", "p"], ("s", "p"): ["s"], ("p", "s"): ["s"], ("p", "p"): ["1"]}),
    "rep_s3": (
        ["1", "sgn", "V"],
        {("sgn", "sgn"): ["1"], ("sgn", "V"): ["V"], ("V", "sgn"): ["V"], ("V", "V"): ["1", "sgn", "V"]},
    ),
}


def fusion_multisemigroup(name: str) -> Multisemigroup:
    elems, rules = FUSION_RULES[name]
    table = {}
    for x, y in product(elems, repeat=2):
        if x == "1":
            table[(x, y)] = [y]
        elif y == "1":
            table[(x, y)] = [x]
        else:
            table[(x, y)] = rules[(x, y)]
    return Multisemigroup.from_json({"elements": elems, "table": {f"{a},{b}": v for (a, b), v in table.items()}})


# -- building new multisemigroups from old ----------------------------------------


def sparse_random(rng: random.Random, n: int, density: float = 0.4, tries: int = 200):
    """Rejection-sampled set-valued table on n elements, or None."""
    for _ in range(tries):
        table = {}
        for x, y in product(range(n), repeat=2):
            table[(x, y)] = [z for z in range(n) if rng.random() < density]
        ms = Multisemigroup([f"s{x}" for x in range(n)], table)
        if validate(ms):
            return ms
    return None


def sub_multisemigroup(ms: Multisemigroup, generators: set[int]):
    closed = set(generators)
    changed = True
    while changed:
        changed = False
        for x, y in product(list(closed), repeat=2):
            new = ms.mul(x, y) - closed
            if new:
                closed |= new
                changed = True
    keep = sorted(closed)
    index = {x: p for p, x in enumerate(keep)}
    return _from_function(len(keep), lambda a, b: {index[v] for v in ms.mul(keep[a], keep[b])})


def rees_quotient(ms: Multisemigroup, ideal: set[int]):
    """Remove a two-sided ideal; products landing in it are dropped."""
    keep = [x for x in range(len(ms)) if x not in ideal]
    if not keep:
        return None
    index = {x: p for p, x in enumerate(keep)}
    return _from_function(len(keep), lambda a, b: {index[v] for v in ms.mul(keep[a], keep[b]) if v not in ideal})


def ideal_generated(ms: Multisemigroup, x: int) -> set[int]:
    n = len(ms)
    out = {x}
    for s in range(n):
        out |= ms.mul(s, x) | ms.mul(x, s)
        for t in range(n):
            for u in ms.mul(s, x):
                out |= ms.mul(u, t)
    return out


def direct_product(a: Multisemigroup, b: Multisemigroup) -> Multisemigroup:
    pairs = list(product(range(len(a)), range(len(b))))
    index = {p: x for x, p in enumerate(pairs)}

    def mul(x, y):
        (a1, b1), (a2, b2) = pairs[x], pairs[y]
        return {index[(u, v)] for u in a.mul(a1, a2) for v in b.mul(b1, b2)}

    return _from_function(len(pairs), mul)


# -- corpus of families -------------------------------------------------------------


def small_families() -> dict[str, AlgebraFamily]:
    """Families whose projective multisemigroups have at most six elements."""
    Q = field_algebra
    return {
        "Q": family(Q()),
        "D": family(dual_numbers()),
        "Q[x]/x^3": family(truncated_polynomial(3)),
        "Q,Q": family(Q("Q1"), Q("Q2")),
        "D,D": family(dual_numbers(name="D1"), dual_numbers(name="D2")),
        "Q,D": family(Q(), dual_numbers()),
    }


def algebra_corpus() -> dict[str, AlgebraFamily]:
    out = small_families()
    out.update(
        {
            "Z2": family(zigzag_a2()),
            "P2": family(preprojective_a2()),
            "Q,Q,Q": family(field_algebra("Q1"), field_algebra("Q2"), field_algebra("Q3")),
            "D,Q[x]/x^3": family(dual_numbers(), truncated_polynomial(3)),
        }
    )
    return out


def graded_corpus() -> dict[str, AlgebraFamily]:
    return {
        "Q": family(truncated_polynomial(1, degree=1, name="Q")),
        "D(deg 2)": family(dual_numbers(degree=2)),
        "Q[x]/x^3(deg 1)": family(truncated_polynomial(3, degree=1)),
        "D,D(deg 1,2)": family(dual_numbers(degree=1, name="D1"), dual_numbers(degree=2, name="D2")),
        "Z2(graded)": family(zigzag_a2(graded=True)),
        "P2(graded)": family(preprojective_a2(graded=True)),
    }


# -- the mixed random stream ---------------------------------------------------------


def _base(rng: random.Random):
    kind = rng.randrange(7)
    if kind == 0:
        return transformation_semigroup(rng)
    if kind == 1:
        t = transformation_semigroup(rng, max_size=MAX_SIZE + 1)
        return remove_zero(t) if t is not None else None
    if kind == 2:
        return rng.choice([double_coset_hypergroup(), cyclic_group(rng.randint(1, 4))])
    if kind == 3:
        return fusion_multisemigroup(rng.choice(sorted(FUSION_RULES)))
    if kind == 4:
        return multisemigroup_of(rng.choice(list(small_families().values())))
    if kind == 5:
        return sparse_random(rng, rng.randint(1, 3))
    return None


def random_multisemigroup(rng: random.Random, max_size: int = MAX_SIZE) -> Multisemigroup:
    """One validated multisemigroup with at most ``max_size`` elements."""
    while True:
        ms = _base(rng)
        if ms is None:
            # derived constructions
            choice = rng.randrange(3)
            a = _base(rng)
            if a is None:
                continue
            if choice == 0:
                b = _base(rng)
                if b is None or len(a) * len(b) > max_size:
                    continue
                ms = direct_product(a, b)
            elif choice == 1:
                gens = {x for x in range(len(a)) if rng.random() < 0.5} or {0}
                ms = sub_multisemigroup(a, gens)
            else:
                ms = rees_quotient(a, ideal_generated(a, rng.randrange(len(a))))
        if ms is None or not 1 <= len(ms) <= max_size:
            continue
        if len(ms) <= 2 and rng.random() < 0.6:
            # tiny tables dominate the raw stream; thin them out
            continue
        ms = relabel(ms, rng)
        if validate(ms):
            return ms


def random_multisemigroups(seed: int, count: int, max_size: int = MAX_SIZE) -> Iterator[Multisemigroup]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_multisemigroup(rng, max_size)
