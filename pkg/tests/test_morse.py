"""Multiplicity tables, the index theorem, and regime-signed cycle tables.

Frozen low-dimensional tables were computed by hand.  For the constant
function 1 the lower-link formula in oracles.py gives an independent
value of every multiplicity.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import lefscalc.fixtures as fx
import oracles
from lefscalc.complexes import SimplicialComplex
from lefscalc.errors import (
    CellSpaceUnsupportedError,
    DegenerateInputError,
    GenericityError,
    NoApplicableRegimeError,
    NotHyperbolicError,
)
from lefscalc.euler import ConstructibleFunction, combine, euler_integral
from lefscalc.exact import GaussianRational
from lefscalc.fixedpoint import (
    NormalData,
    TracedProblem,
    signed_local_contribution,
)
from lefscalc.morse import (
    REGIME_COMPLEX_ANALYTIC,
    REGIME_SIGNED,
    REGIME_SPECTRUM_BELOW_ONE,
    VertexFunctional,
    cc_table,
    genericity_check,
    index_sum,
    lefschetz_cycle_table,
    microlocal_index,
    morse_multiplicity,
)
from lefscalc.verify import random_complex, random_function, random_functional


def g(x):
    return GaussianRational.of(x)


def enumeration_functional(space):
    """Injective heights by vertex order; generic on any complex."""
    table = {v: i for i, v in enumerate(space.vertices)}
    return VertexFunctional.of(space, table)


# ---------------------------------------------------------------------------
# functionals and genericity


def test_functional_requires_totality():
    space = fx.interval_complex()
    with pytest.raises(DegenerateInputError):
        VertexFunctional.of(space, {"a": 0})


def test_functional_values_and_negation():
    space = fx.interval_complex()
    ell = VertexFunctional.of(space, {"a": "1/2", "b": 3})
    assert ell("a") == Fraction(1, 2)
    assert ell.negated()("b") == -3


def test_genericity_check_reports_tied_edges():
    space = fx.interval_complex()
    ell = VertexFunctional.of(space, {"a": 1, "b": 1})
    assert genericity_check(space, ell) == [("a", "b")]
    ok = fx.interval_functional(increasing=True)
    assert genericity_check(space, ok) == []


def test_cc_table_rejects_ties_with_edge_payload():
    space = fx.interval_complex()
    ell = VertexFunctional.of(space, {"a": 2, "b": 2})
    phi = ConstructibleFunction.indicator(space)
    with pytest.raises(GenericityError) as info:
        cc_table(phi, ell)
    assert tuple(info.value.edges) == (("a", "b"),)


def test_tie_away_from_vertex_is_harmless_locally():
    # path a - b - c with the tie on the far edge
    space = SimplicialComplex.from_maximal([("a", "b"), ("b", "c")])
    ell = VertexFunctional.of(space, {"a": 0, "b": 1, "c": 1})
    phi = ConstructibleFunction.indicator(space)
    assert morse_multiplicity(phi, ell, "a") == g(1)
    with pytest.raises(GenericityError):
        morse_multiplicity(phi, ell, "b")
    with pytest.raises(GenericityError):
        cc_table(phi, ell)


def test_simplicial_input_required():
    space = fx.cp1_cellspace()
    phi = ConstructibleFunction.indicator(space)
    ell = VertexFunctional({})
    with pytest.raises(CellSpaceUnsupportedError):
        cc_table(phi, ell)
    with pytest.raises(CellSpaceUnsupportedError):
        morse_multiplicity(phi, ell, "pt")


# ---------------------------------------------------------------------------
# frozen tables


def test_interval_tables_frozen():
    space = fx.interval_complex()
    phi = ConstructibleFunction.indicator(space)
    up = cc_table(phi, fx.interval_functional(increasing=True))
    assert up.entries == {"a": g(1), "b": g(0)}
    down = cc_table(phi, fx.interval_functional(increasing=False))
    assert down.entries == {"a": g(0), "b": g(1)}
    assert up.total() == down.total() == g(1)


def test_hexagon_table_frozen():
    space = fx.hexagon()
    phi = ConstructibleFunction.indicator(space)
    ell = VertexFunctional.of(space, {f"v{i}": i for i in range(6)})
    table = cc_table(phi, ell)
    expected = {f"v{i}": g(0) for i in range(6)}
    expected["v0"] = g(1)   # the minimum
    expected["v5"] = g(-1)  # the maximum of a circle
    assert table.entries == expected
    assert table.total() == g(0)


def test_table_lists_every_vertex():
    space = fx.disk()
    phi = ConstructibleFunction.of(space, {frozenset({"c"}): 5})
    table = cc_table(phi, enumeration_functional(space))
    assert set(table.entries) == set(space.vertices)
    names = [v for v, _ in table.sorted_entries()]
    assert names == sorted(names)


def test_scaled_table():
    space = fx.interval_complex()
    phi = ConstructibleFunction.indicator(space)
    table = cc_table(phi, fx.interval_functional(increasing=True))
    doubled = table.scaled(2)
    assert doubled.entries["a"] == g(2)
    assert doubled.total() == g(2)
    half = table.scaled(Fraction(1, 2))
    assert half.total() == g(Fraction(1, 2))


# ---------------------------------------------------------------------------
# the lower-link oracle for phi = 1


@pytest.mark.parametrize(
    "make",
    [fx.interval_complex, fx.hexagon, fx.twelve_gon, fx.disk, fx.sphere2],
)
def test_lower_link_oracle_on_fixtures(make):
    space = make()
    ell = enumeration_functional(space)
    phi = ConstructibleFunction.indicator(space)
    table = cc_table(phi, ell)
    for v in space.vertices:
        expected = g(oracles.lower_link_multiplicity(space, ell, v))
        assert morse_multiplicity(phi, ell, v) == expected
        assert table.entries[v] == expected


def test_lower_link_oracle_on_random_complexes():
    rng = random.Random("morse-oracle")
    for _ in range(60):
        space = random_complex(rng, max_vertices=6, max_dim=3, max_simplices=30)
        ell = random_functional(rng, space)
        phi = ConstructibleFunction.indicator(space)
        for v in space.vertices:
            assert morse_multiplicity(phi, ell, v) == g(
                oracles.lower_link_multiplicity(space, ell, v)
            )


# ---------------------------------------------------------------------------
# the index theorem


def test_index_sum_equals_integral_random():
    rng = random.Random("morse-index")
    for _ in range(120):
        space = random_complex(rng, max_vertices=7, max_dim=3, max_simplices=35)
        phi = random_function(rng, space)
        ell = random_functional(rng, space)
        assert index_sum(phi, ell) == euler_integral(phi)


def test_index_sum_independent_of_functional():
    rng = random.Random("morse-ell-free")
    for _ in range(25):
        space = random_complex(rng, max_vertices=6, max_dim=3, max_simplices=30)
        phi = random_function(rng, space)
        totals = {
            index_sum(phi, random_functional(rng, space)) for _ in range(5)
        }
        assert len(totals) == 1


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=40, deadline=None)
def test_index_theorem_property(seed):
    rng = random.Random(f"hyp-morse:{seed}")
    space = random_complex(rng, max_vertices=6, max_dim=3, max_simplices=25)
    phi = random_function(rng, space)
    ell = random_functional(rng, space)
    assert index_sum(phi, ell) == euler_integral(phi)
    assert index_sum(phi, ell.negated()) == euler_integral(phi)


def test_cc_table_is_linear():
    rng = random.Random("morse-linear")
    for _ in range(50):
        space = random_complex(rng, max_vertices=6, max_dim=3, max_simplices=30)
        ell = random_functional(rng, space)
        phi = random_function(rng, space)
        psi = random_function(rng, space)
        a, b = g("2/3"), GaussianRational(Fraction(0), Fraction(1))
        lhs = cc_table(combine(a, phi, b, psi), ell).entries
        ta = cc_table(phi, ell).entries
        tb = cc_table(psi, ell).entries
        for v in space.vertices:
            assert lhs.get(v, g(0)) == a * ta[v] + b * tb[v]


# ---------------------------------------------------------------------------
# cycle tables of traced problems


def hexagon_heights():
    return VertexFunctional.of(fx.hexagon(), {f"v{i}": i for i in range(6)})


def test_cycle_table_doubling_is_signed():
    p = fx.doubling_problem()
    rep = lefschetz_cycle_table(p, 0, hexagon_heights())
    assert rep.regime == REGIME_SIGNED
    assert rep.sign == -1
    assert rep.table.entries == {"v0": g(-1)}
    assert rep.total() == signed_local_contribution(p, 0) == g(-1)


def test_cycle_table_reflection_below_one():
    p = fx.reflection_problem()
    for index in (0, 1):
        rep = lefschetz_cycle_table(p, index, hexagon_heights())
        assert rep.regime == REGIME_SPECTRUM_BELOW_ONE
        assert rep.sign == 1
        assert rep.total() == g(1) == signed_local_contribution(p, index)


def test_cycle_table_identity_sphere():
    space = fx.sphere2()
    p = fx.identity_problem(space)
    ell = enumeration_functional(space)
    rep = lefschetz_cycle_table(p, 0, ell)
    assert rep.regime == REGIME_SPECTRUM_BELOW_ONE
    assert rep.total() == g(2) == signed_local_contribution(p, 0)


def test_cycle_table_complex_model():
    # realified multiplication by 2: spectrum meets [1, oo) but
    # det(I - A) = 1 > 0, so the signed value agrees with the table
    base = fx.doubling_problem()
    p = TracedProblem(
        spec=base.spec,
        normal=NormalData.of({0: [[2, 0], [0, 2]]}),
        complex_model=True,
    )
    rep = lefschetz_cycle_table(p, 0, hexagon_heights())
    assert rep.regime == REGIME_COMPLEX_ANALYTIC
    assert rep.sign == 1
    assert rep.total() == g(1) == signed_local_contribution(p, 0)


def test_cycle_table_refuses_unjustified_regime():
    base = fx.doubling_problem()
    bare = TracedProblem(spec=base.spec, normal=base.normal)
    with pytest.raises(NoApplicableRegimeError):
        lefschetz_cycle_table(bare, 0, hexagon_heights())


def test_cycle_table_requires_hyperbolicity():
    base = fx.doubling_problem()
    p = TracedProblem(
        spec=base.spec,
        normal=NormalData.of({0: [[1]]}),
        non_characteristic=True,
    )
    with pytest.raises(NotHyperbolicError):
        lefschetz_cycle_table(p, 0, hexagon_heights())


def test_cycle_table_component_index_range():
    p = fx.reflection_problem()
    with pytest.raises(DegenerateInputError):
        lefschetz_cycle_table(p, 5, hexagon_heights())


def test_microlocal_index_matches_signed_contribution():
    cases = [
        (fx.doubling_problem(), [0], hexagon_heights()),
        (fx.reflection_problem(), [0, 1], hexagon_heights()),
        (
            fx.identity_problem(fx.sphere2()),
            [0],
            enumeration_functional(fx.sphere2()),
        ),
    ]
    for p, indices, ell in cases:
        for index in indices:
            assert microlocal_index(p, index, ell) == signed_local_contribution(
                p, index
            )
