"""Morse multiplicities of constructible functions and cycle tables.

For a linear-on-cells height functional ell that separates the ends of
every edge, each simplex has a unique ell-maximal vertex, and the
multiplicity attached to a vertex v is the lower-star sum

    m(v) = sum over simplices sigma containing v, all of whose other
           vertices sit strictly below v, of (-1)^dim(sigma) * phi(sigma).

m(v) is the stalkwise trace of sections supported in {ell >= ell(v)}, and
summing the table recovers the Euler integral of phi because every simplex
is counted exactly once, at its top vertex.

The cycle table of a traced problem localizes this to one fixed component
and rescales by a regime-dependent sign:

* spectrum-below-one: no real eigenvalue of the normal matrix is >= 1;
* complex-analytic: the caller asserts a complex model, no gap needed;
* signed-non-characteristic: the caller asserts transversality and the
  table carries sgn(det(I - A)).

Without a justifying regime the table is refused rather than silently
reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    SimplicialComplex,
    canonical_tuple,
    cell_sort_key,
    induced_subcomplex,
    require_simplicial,
    vertex_key,
)
from .errors import (
    DegenerateInputError,
    GenericityError,
    NoApplicableRegimeError,
    NotHyperbolicError,
)
from .euler import ConstructibleFunction, euler_integral, restrict
from .exact import (
    GZERO,
    GaussianRational,
    RationalMatrix,
    count_real_roots_geq,
    parse_rational,
)
from .fixedpoint import TracedProblem, fixed_components, local_trace_function


@dataclass(frozen=True, eq=False)
class VertexFunctional:
    """Exact rational height values, one per vertex."""

    values: dict

    @staticmethod
    def of(space: SimplicialComplex, table) -> "VertexFunctional":
        values = {v: parse_rational(x) for v, x in dict(table).items()}
        missing = [v for v in space.vertices if v not in values]
        if missing:
            raise DegenerateInputError(
                f"functional undefined on vertices {missing[:4]}"
            )
        return VertexFunctional(values)

    def __call__(self, v) -> Fraction:
        return self.values[v]

    def negated(self) -> "VertexFunctional":
        return VertexFunctional({v: -x for v, x in self.values.items()})


def genericity_check(space: SimplicialComplex, ell: VertexFunctional) -> list:
    """Edges whose two ends take the same value; empty means generic."""
    space = require_simplicial(space, "genericity_check")
    ties = []
    for edge in space.k_cells(1):
        a, b = canonical_tuple(edge)
        if ell(a) == ell(b):
            ties.append((a, b))
    return ties


def _require_generic(space, ell, around=None) -> None:
    ties = genericity_check(space, ell)
    if around is not None:
        ties = [e for e in ties if around in e]
    if ties:
        raise GenericityError(
            f"functional is degenerate on edges {ties[:4]}", edges=ties
        )


def morse_multiplicity(
    phi: ConstructibleFunction, ell: VertexFunctional, v
) -> GaussianRational:
    """Lower-star multiplicity of phi at v for the height ell."""
    space = require_simplicial(phi.parent, "morse_multiplicity")
    _require_generic(space, ell, around=v)
    height = ell(v)
    total = GZERO
    for cell, value in phi.values.items():
        if v in cell and all(ell(w) < height for w in cell if w != v):
            total = total + value * ((-1) ** (len(cell) - 1))
    return total


@dataclass(frozen=True, eq=False)
class MultiplicityTable:
    space: SimplicialComplex
    entries: dict  # vertex -> GaussianRational, every vertex present

    def total(self) -> GaussianRational:
        acc = GZERO
        for value in self.entries.values():
            acc = acc + value
        return acc

    def sorted_entries(self) -> list:
        return sorted(self.entries.items(), key=lambda kv: vertex_key(kv[0]))

    def scaled(self, c) -> "MultiplicityTable":
        return MultiplicityTable(
            self.space, {v: x * Fraction(c) for v, x in self.entries.items()}
        )


def cc_table(phi: ConstructibleFunction, ell: VertexFunctional) -> MultiplicityTable:
    """Full multiplicity table of phi: one Morse multiplicity per vertex.

    This realizes the characteristic-cycle data of phi as measured by the
    covector field of ell; the total is the Euler integral of phi.
    """
    space = require_simplicial(phi.parent, "cc_table")
    _require_generic(space, ell)
    table = {v: GZERO for v in space.vertices}
    for cell, value in phi.values.items():
        ordered = canonical_tuple(cell)
        top = max(ordered, key=lambda w: (ell(w), vertex_key(w)))
        table[top] = table[top] + value * ((-1) ** (len(cell) - 1))
    return MultiplicityTable(space, table)


def index_sum(phi: ConstructibleFunction, ell: VertexFunctional) -> GaussianRational:
    """Sum of all multiplicities; equals euler_integral(phi)."""
    return cc_table(phi, ell).total()


# ---------------------------------------------------------------------------
# cycle tables of traced problems

REGIME_SPECTRUM_BELOW_ONE = "spectrum-below-one"
REGIME_COMPLEX_ANALYTIC = "complex-analytic"
REGIME_SIGNED = "signed-non-characteristic"


@dataclass(frozen=True, eq=False)
class CycleTableReport:
    component: int
    regime: str
    sign: int
    table: MultiplicityTable

    def total(self) -> GaussianRational:
        return self.table.total()


def _select_regime(p: TracedProblem, matrix: RationalMatrix) -> tuple:
    det = (RationalMatrix.identity(matrix.nrows) - matrix).det()
    if det == 0:
        raise NotHyperbolicError(
            "det(I - A) = 0; the cycle table is undefined at this component"
        )
    meets = (
        count_real_roots_geq(matrix.char_poly(), 1) > 0 if matrix.nrows else False
    )
    if not meets:
        return REGIME_SPECTRUM_BELOW_ONE, 1
    if p.complex_model:
        return REGIME_COMPLEX_ANALYTIC, 1
    if p.non_characteristic:
        return REGIME_SIGNED, (det > 0) - (det < 0)
    raise NoApplicableRegimeError(
        "normal spectrum meets [1, oo) and neither the complex-model nor "
        "the non-characteristic assertion was supplied"
    )


def lefschetz_cycle_table(
    p: TracedProblem, index: int, ell: VertexFunctional
) -> CycleTableReport:
    """Cycle table of the fixed-point data at one component.

    The table is the component's multiplicity table of the local trace
    function, scaled by the regime sign; its total is the microlocal index.
    """
    comps = fixed_components(p.spec)
    if not 0 <= index < len(comps):
        raise DegenerateInputError(
            f"component index {index} out of range 0..{len(comps) - 1}"
        )
    matrix = p.normal_matrix(index, len(comps))
    regime, sign = _select_regime(p, matrix)
    comp = comps[index]
    component_complex = induced_subcomplex(p.spec.base, comp.members)
    phi = restrict(local_trace_function(p), comp)
    local_phi = ConstructibleFunction.of(
        component_complex,
        {cell: value for cell, value in phi.values.items()},
    )
    local_ell = VertexFunctional.of(
        component_complex,
        {v: ell(v) for v in component_complex.vertices},
    )
    table = cc_table(local_phi, local_ell).scaled(sign)
    return CycleTableReport(index, regime, sign, table)


def microlocal_index(
    p: TracedProblem, index: int, ell: VertexFunctional
) -> GaussianRational:
    """Total of the cycle table; agrees with the signed local contribution."""
    return lefschetz_cycle_table(p, index, ell).total()
