import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twocells import samples
from twocells.greenms import (
    InvalidMultisemigroup,
    Multisemigroup,
    UnknownCell,
    cells_oracle,
    check_J_equals_D,
    d_fixpoint,
    eggbox,
    eggbox_csv,
    eggbox_dot,
    green_cells,
    is_strongly_regular,
    same_structure,
    validate,
)
from twocells.projbicat import dual_numbers, family, multisemigroup_of


def ms_from(elements, rules):
    return Multisemigroup.from_json({"elements": elements, "table": {f"{x},{y}": v for (x, y), v in rules.items()}})


@pytest.fixture
def monoid():
    return ms_from(["1"], {("1", "1"): ["1"]})


@pytest.fixture
def left_zero():
    return ms_from(["a", "b"], {(x, y): [x] for x in "ab" for y in "ab"})


@pytest.fixture
def dual_ms():
    return ms_from(["1", "F"], {("1", "1"): ["1"], ("1", "F"): ["F"], ("F", "1"): ["F"], ("F", "F"): ["F"]})


def cell_names(ms, cells):
    return sorted(sorted(ms.elements[x] for x in c) for c in cells)


# -- validate --------------------------------------------------------------------------


def test_validate_examples(monoid):
    assert validate(monoid)
    empty = ms_from(["x", "y"], {})
    assert validate(empty)
    bad = ms_from(["a", "b"], {("a", "a"): ["a"], ("a", "b"): ["b"], ("b", "a"): ["a"], ("b", "b"): ["a"]})
    v = validate(bad)
    assert not v
    x, y, z = v.triple
    # the reported triple really violates associativity
    lhs = set().union(*[bad.mul(u, z) for u in bad.mul(x, y)]) if bad.mul(x, y) else set()
    rhs = set().union(*[bad.mul(x, u) for u in bad.mul(y, z)]) if bad.mul(y, z) else set()
    assert lhs != rhs
    assert "b" in v.describe(bad) or "a" in v.describe(bad)
    with pytest.raises(InvalidMultisemigroup):
        green_cells(bad)


def test_json_round_trip(left_zero):
    assert Multisemigroup.from_json(left_zero.to_json()) == left_zero
    with pytest.raises(ValueError):
        Multisemigroup.from_json({"elements": ["a"], "table": {"a,b": ["a"]}})
    with pytest.raises(ValueError):
        Multisemigroup.from_json({"elements": ["a"], "table": {"a": ["a"]}})


# -- cells -------------------------------------------------------------------------------


def test_monoid_single_cells(monoid):
    gs = green_cells(monoid)
    for kind in "LRJHD":
        assert gs.cells(kind) == ((0,),)


def test_left_zero_cells(left_zero):
    gs = green_cells(left_zero)
    assert cell_names(left_zero, gs.cells_L) == [["a", "b"]]
    assert cell_names(left_zero, gs.cells_R) == [["a"], ["b"]]
    assert cell_names(left_zero, gs.cells_J) == [["a", "b"]]
    assert cell_names(left_zero, gs.cells_D) == [["a", "b"]]
    assert same_structure(gs, cells_oracle(left_zero))


def test_dual_numbers_cells(dual_ms):
    gs = green_cells(dual_ms)
    assert cell_names(dual_ms, gs.cells_J) == [["1"], ["F"]]
    assert gs.leq("J", 0, 1) and not gs.leq("J", 1, 0)
    # the same table arises from the projective 2-category
    ms = multisemigroup_of(family(dual_numbers()))
    assert same_structure(green_cells(ms), gs)


def test_oracle_agrees_on_examples(monoid, left_zero, dual_ms):
    for ms in (monoid, left_zero, dual_ms):
        assert same_structure(green_cells(ms), cells_oracle(ms))


def test_cell_ids_are_canonical(left_zero):
    gs = green_cells(left_zero)
    assert gs.cells_R == ((0,), (1,))
    # a cell id is its least element
    assert gs.j_cell(0) == (0, 1)
    assert gs.j_cell([1, 0]) == (0, 1)
    with pytest.raises(UnknownCell):
        gs.j_cell(1)
    with pytest.raises(UnknownCell):
        gs.j_cell([0])


# -- J = D and strong regularity -----------------------------------------------------


def test_j_equals_d_examples(left_zero, dual_ms, monoid):
    gs = green_cells(left_zero)
    r = check_J_equals_D(left_zero, gs, gs.cells_J[0])
    assert r.holds and r.hypothesis
    gs = green_cells(dual_ms)
    assert check_J_equals_D(dual_ms, gs, 1).holds
    assert check_J_equals_D(monoid, green_cells(monoid), 0).holds


def test_strong_regularity_examples(dual_ms, monoid):
    gs = green_cells(dual_ms)
    assert is_strongly_regular(dual_ms, gs, 1)
    assert is_strongly_regular(monoid, green_cells(monoid), 0)
    # left-zero times Z/2: a 2x1 egg-box whose entries have two elements each
    left_zero = ms_from(["a", "b"], {(x, y): [x] for x in "ab" for y in "ab"})
    ms = samples.direct_product(left_zero, samples.cyclic_group(2))
    gs = green_cells(ms)
    assert len(gs.cells_J) == 1
    grid = eggbox(ms, gs, 0)
    assert len(grid) == 2 and len(grid[0]) == 1
    assert all(len(entry) == 2 for row in grid for entry in row)
    assert not is_strongly_regular(ms, gs, 0)


def test_strong_regularity_needs_incomparable_lcells():
    # a two-element chain semilattice: one J-cell per element, so singleton cells
    ms = ms_from(["e", "f"], {("e", "e"): ["e"], ("e", "f"): ["f"], ("f", "e"): ["f"], ("f", "f"): ["f"]})
    gs = green_cells(ms)
    assert all(is_strongly_regular(ms, gs, c) for c in gs.cells_J)


# -- egg-boxes ---------------------------------------------------------------------------


def test_eggbox_examples(left_zero, monoid):
    gs = green_cells(left_zero)
    assert eggbox(left_zero, gs, 0) == [[["a"]], [["b"]]]
    assert eggbox(monoid, green_cells(monoid), 0) == [[["1"]]]
    fam = family(dual_numbers(name="D1"), dual_numbers(name="D2"))
    ms = multisemigroup_of(fam)
    gs = green_cells(ms)
    big = max(gs.cells_J, key=len)
    grid = eggbox(ms, gs, big)
    assert len(grid) == 2 and all(len(row) == 2 for row in grid)
    assert all(len(entry) == 1 for row in grid for entry in row)


def test_eggbox_exports(left_zero):
    gs = green_cells(left_zero)
    dot = eggbox_dot(left_zero, gs)
    assert dot.startswith("digraph eggbox {") and "<TABLE" in dot and dot.rstrip().endswith("}")
    csv_text = eggbox_csv(left_zero, gs)
    assert csv_text.splitlines() == ["jcell,row,col,elements", "a,0,0,a", "a,1,0,b"]
    # re-running is byte-identical
    assert eggbox_dot(left_zero, gs) == dot


# -- invariants on random tables --------------------------------------------------------


def _relations_hold(ms, gs):
    L, R, D, J = (gs.relation(k) for k in "LRDJ")
    H = gs.relation("H")
    for x in range(len(ms)):
        assert L[x] & ~D[x] == 0 and R[x] & ~D[x] == 0
        assert D[x] & ~J[x] == 0
        assert H[x] == L[x] & R[x]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_random_tables_match_oracle(seed):
    ms = samples.random_multisemigroup(random.Random(seed))
    gs = green_cells(ms)
    assert same_structure(gs, cells_oracle(ms))
    _relations_hold(ms, gs)
    assert gs.d_rounds <= len(ms)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_d_fixpoint_monotone(seed):
    ms = samples.random_multisemigroup(random.Random(seed))
    gs = green_cells(ms)
    D, history = d_fixpoint(gs.relation("L"), gs.relation("R"))
    assert len(history) <= len(ms)
    for before, after in zip(history, history[1:]):
        assert all(b & ~a == 0 for b, a in zip(before, after))
    assert D == gs.relation("D")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_j_equals_d_on_qualifying_cells(seed):
    ms = samples.random_multisemigroup(random.Random(seed))
    gs = green_cells(ms)
    for cell in gs.cells_J:
        r = check_J_equals_D(ms, gs, cell)
        if r.hypothesis:
            assert r.holds


def test_sample_sources_are_valid():
    rng = random.Random(3)
    built = [
        samples.double_coset_hypergroup(),
        samples.fusion_multisemigroup("fibonacci"),
        samples.fusion_multisemigroup("ising"),
        samples.fusion_multisemigroup("rep_s3"),
        samples.cyclic_group(4),
    ]
    for _ in range(20):
        t = samples.transformation_semigroup(rng)
        if t is not None:
            built.append(t)
            z = samples.remove_zero(t)
            if z is not None:
                built.append(z)
    for ms in built:
        assert validate(ms)
        assert same_structure(green_cells(ms), cells_oracle(ms))
    # the double coset hypergroup of S3 by a transposition has two elements and HgH * HgH = both
    dc = samples.double_coset_hypergroup()
    assert len(dc) == 2
    assert dc.mul(1, 1) == {0, 1}
