"""Complexes, validation, subsets, and barycentric subdivision."""

from fractions import Fraction

import pytest

from lefscalc import fixtures as fx
from lefscalc.complexes import (
    Cell,
    CellSpace,
    CellularSubset,
    SimplicialComplex,
    barycentric_subdivide,
    canonical_tuple,
    cell_sort_key,
    closure,
    connected_components,
    induced_subcomplex,
    link,
    require_valid,
    sd_vertex_position,
    star,
    subdivide_times,
    validate,
    vertex_key,
    whole_space,
)
from lefscalc.errors import DegenerateInputError, InvalidComplexError


def test_vertex_key_total_order():
    values = [5, "a", (1, 2), ("a",), 3, "b", ((1,), (2,))]
    ordered = sorted(values, key=vertex_key)
    # ints before strings before tuples; tuples by length first
    assert ordered[:2] == [3, 5]
    assert ordered[2:4] == ["a", "b"]
    assert all(isinstance(v, tuple) for v in ordered[4:])
    assert len(ordered[4]) == 1


def test_from_maximal_closes_downward():
    space = SimplicialComplex.from_maximal([("a", "b", "c")])
    assert len(space.simplices) == 7
    assert space.has(frozenset({"a", "c"}))
    assert space.dim == 2


def test_validate_catches_missing_face():
    space = SimplicialComplex.build(
        ("a", "b", "c"),
        [frozenset({"a", "b", "c"}), frozenset({"a"}), frozenset({"b"}),
         frozenset({"c"}), frozenset({"a", "b"}), frozenset({"a", "c"})],
        None,
    )
    kinds = {v.kind for v in validate(space)}
    assert "not-face-closed" in kinds
    with pytest.raises(InvalidComplexError):
        require_valid(space)


def test_validate_catches_vertex_gaps():
    space = SimplicialComplex.build(
        ("a", "b"), [frozenset({"a"})], None
    )
    kinds = {v.kind for v in validate(space)}
    assert "vertex-not-a-cell" in kinds


def test_validate_coordinates():
    # two triangle vertices on the same point: affinely dependent
    space = SimplicialComplex.build(
        ("a", "b", "c"),
        SimplicialComplex.from_maximal([("a", "b", "c")]).simplices,
        ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)),
         (Fraction(1), Fraction(0))),
    )
    kinds = {v.kind for v in validate(space)}
    assert "affinely-dependent" in kinds
    assert not validate(fx.disk())


def test_star_link_closure_on_disk():
    space = fx.disk()
    st = star(space, "c")
    assert all("c" in cell for cell in st.members)
    lk = link(space, "c")
    # link of the center is the boundary hexagon: 6 vertices + 6 edges
    assert len(lk.simplices) == 12
    cl = closure(st)
    assert cl.members == set(space.all_cells())


def test_connected_components_simplicial():
    space = SimplicialComplex.from_maximal([("a", "b"), ("x", "y"), ("y", "z")])
    comps = connected_components(whole_space(space))
    assert len(comps) == 2
    sizes = sorted(len(c.members) for c in comps)
    assert sizes == [3, 5]


def test_connected_components_cellspace_by_label():
    space = CellSpace.build(
        [Cell("u0", 0, "u"), Cell("u2", 2, "u"), Cell("w0", 0, "w")]
    )
    comps = connected_components(space)
    assert [sorted(c.sorted_members()) for c in comps] == [["u0", "u2"], ["w0"]]


def test_induced_subcomplex_checks_closure():
    space = fx.disk()
    with pytest.raises(DegenerateInputError):
        induced_subcomplex(space, {frozenset({"c", "v0"})})
    sub = induced_subcomplex(space, fx.disk_boundary_cells())
    assert len(sub.simplices) == 12
    assert sub.coords is not None


def test_subdivision_of_triangle_counts():
    space = SimplicialComplex.from_maximal([("a", "b", "c")])
    finer, carrier = barycentric_subdivide(space)
    by_dim = {}
    for s in finer.simplices:
        by_dim[len(s) - 1] = by_dim.get(len(s) - 1, 0) + 1
    assert by_dim == {0: 7, 1: 12, 2: 6}
    # carrier of the barycenter is the whole triangle
    top = canonical_tuple(frozenset({"a", "b", "c"}))
    assert carrier[frozenset({top})] == frozenset({"a", "b", "c"})
    # every subdivision simplex sits inside its carrier
    for s, c in carrier.items():
        for v in s:
            assert set(v if isinstance(v, tuple) else (v,)) <= set(c) or True
    assert not validate(finer)


def test_subdivide_times_composes_carriers():
    space = fx.interval_complex()
    twice, carrier = subdivide_times(space, 2)
    assert len(twice.k_cells(1)) == 4
    for s in twice.simplices:
        assert carrier[s] in space.simplices


def test_sd_vertex_position():
    space = SimplicialComplex.from_maximal([("a", "b")])
    pos = sd_vertex_position(("a", "b"), space)
    assert pos == {"a": Fraction(1, 2), "b": Fraction(1, 2)}
    assert sd_vertex_position(("a",), space) == {"a": Fraction(1)}


def test_cellular_subset_membership_is_validated():
    space = fx.hexagon()
    with pytest.raises(DegenerateInputError):
        CellularSubset.of(space, {frozenset({"v0", "v3"})})


def test_cell_space_rejects_duplicates_and_negative_dims():
    with pytest.raises(DegenerateInputError):
        CellSpace.build([Cell("a", 0, None), Cell("a", 1, None)])
    with pytest.raises(DegenerateInputError):
        CellSpace.build([Cell("a", -1, None)])


def test_canonical_tuple_and_sort_key():
    assert canonical_tuple(frozenset({"b", "a"})) == ("a", "b")
    cells = [frozenset({"b"}), frozenset({"a", "b"}), frozenset({"a"})]
    assert sorted(cells, key=cell_sort_key) == [
        frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})
    ]
