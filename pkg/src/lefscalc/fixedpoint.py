"""Fixed loci of simplicial self-maps and localization of the global trace.

The geometric fixed set of a self-map spec must be a subcomplex of the
base: a simplex belongs to the fixed subcomplex when every subdivision
vertex it carries is geometrically fixed.  Any other fixed point (a
simplex permuted onto itself, or an affine fixed point in the interior of
some cell) is detected exactly - the fixed-point equations of the affine
map on each top simplex form a rational linear system whose nonnegative
solutions are checked by exact feasibility - and rejected with
FixedPointNotSimplicialError; the remedy is to restate the problem on a
barycentric subdivision.

Localization compares two independent computations:

* global side: the alternating sum of homology traces of
  (map_* o sd^level_*), relative to the support's boundary when the
  support is a proper locally closed subset;
* local side: per fixed component, sgn(det(I - A)) times the Euler
  integral of the local trace function over the component, where A is the
  user-supplied normal matrix of the map at that component.

The two sides agree under hyperbolicity (1 not an eigenvalue of A) with
the expanding directions accounted for by the sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    CellularSubset,
    SimplicialComplex,
    canonical_tuple,
    cell_sort_key,
    closure,
    connected_components,
    induced_subcomplex,
    sd_vertex_position,
)
from .errors import (
    DegenerateInputError,
    FixedPointNotSimplicialError,
    NotHyperbolicError,
    NotLocalizableError,
)
from .euler import ConstructibleFunction, euler_integral, restrict
from .exact import (
    GaussianRational,
    RationalMatrix,
    count_real_roots_geq,
    has_nonneg_solution,
)
from .homology import lefschetz_number, self_map_endomorphism
from .maps import SelfMapSpec


@dataclass(frozen=True)
class NormalData:
    """One square matrix per fixed component: the differential of the map
    in the directions normal to that component, in any rational basis."""

    matrices: tuple  # tuple of (component index, RationalMatrix)

    @staticmethod
    def of(entries) -> "NormalData":
        table = []
        for idx, matrix in (
            entries.items() if isinstance(entries, dict) else entries
        ):
            matrix = (
                matrix
                if isinstance(matrix, RationalMatrix)
                else RationalMatrix.of(matrix)
            )
            if not matrix.is_square():
                raise DegenerateInputError(
                    f"normal matrix for component {idx} is not square"
                )
            table.append((int(idx), matrix))
        return NormalData(tuple(sorted(table)))

    def matrix_for(self, index: int) -> RationalMatrix | None:
        for idx, matrix in self.matrices:
            if idx == index:
                return matrix
        return None


@dataclass(frozen=True, eq=False)
class TracedProblem:
    """A self-map plus the sheaf-side data needed for localization.

    support: locally closed union of cells carrying the constant sheaf
        (None means the whole base);
    traces: optional explicit stalkwise trace values on fixed cells,
        overriding the constant-sheaf default of 1;
    normal: normal matrices per fixed component (omitting the block means
        every component is full-dimensional, d = 0);
    complex_model: caller asserts the problem is the real form of a
        complex-analytic one, so localization needs no spectral gap;
    non_characteristic: caller asserts the graph crosses the conormal
        geometry transversally, enabling the signed regime even when the
        normal spectrum meets [1, oo).
    """

    spec: SelfMapSpec
    support: CellularSubset | None = None
    traces: dict | None = None
    normal: NormalData | None = None
    complex_model: bool = False
    non_characteristic: bool = False

    def normal_matrix(self, index: int, component_count: int) -> RationalMatrix:
        if self.normal is None:
            return RationalMatrix.zeros(0, 0)
        if not 0 <= index < component_count:
            raise DegenerateInputError(
                f"component index {index} out of range 0..{component_count - 1}"
            )
        matrix = self.normal.matrix_for(index)
        if matrix is None:
            raise DegenerateInputError(
                f"normal data present but missing component {index}"
            )
        return matrix


# ---------------------------------------------------------------------------
# the fixed subcomplex


def _fixed_vertices(spec: SelfMapSpec) -> set:
    source = spec.source_complex()
    carrier = spec.carrier()
    fixed = set()
    for w in source.vertices:
        base_cell = carrier[frozenset([w])]
        if len(base_cell) == 1 and spec.vertex_map[w] in base_cell:
            fixed.add(w)
    return fixed


def _assert_fixed_points_are_vertices(spec: SelfMapSpec, fixed: set) -> None:
    """Exact check that the affine map fixes nothing beyond the fixed
    vertices: on each top simplex the fixed points form the cone over the
    fixed-vertex axes iff a certain rational polytope is empty."""
    source = spec.source_complex()
    carrier = spec.carrier()
    base = spec.base
    maximal = [
        s
        for s in source.simplices
        if not any(s < t for t in source.simplices)
    ]
    for tau in sorted(maximal, key=cell_sort_key):
        ws = canonical_tuple(tau)
        free = [i for i, w in enumerate(ws) if w not in fixed]
        if not free:
            continue
        coords = set()
        displacement = []
        for w in ws:
            pos = sd_vertex_position(w, base)
            image = spec.vertex_map[w]
            column = dict(pos)
            column[image] = column.get(image, Fraction(0)) - 1
            displacement.append(column)  # position minus image, negated below
            coords |= set(column)
        coord_list = sorted(coords, key=lambda v: cell_sort_key(frozenset([v])))
        rows = [
            [Fraction(-1) * displacement[i].get(u, Fraction(0)) for i in range(len(ws))]
            for u in coord_list
        ]
        rows.append(
            [Fraction(1 if i in free else 0) for i in range(len(ws))]
        )
        rhs = [Fraction(0)] * len(coord_list) + [Fraction(1)]
        if has_nonneg_solution(rows, rhs):
            raise FixedPointNotSimplicialError(
                "geometric fixed points inside simplex carried by "
                f"{canonical_tuple(carrier[tau])} are not vertices; "
                "subdivide the base complex and restate the map"
            )


def fixed_subcomplex(spec: SelfMapSpec) -> CellularSubset:
    """All base simplices on which the map restricts to the identity.

    Raises FixedPointNotSimplicialError when the geometric fixed set is
    larger than the realization of that subcomplex.
    """
    fixed = _fixed_vertices(spec)
    _assert_fixed_points_are_vertices(spec, fixed)
    carrier = spec.carrier()
    over = {}
    for cell, base_cell in carrier.items():
        if len(cell) == 1:
            (w,) = tuple(cell)
            over.setdefault(base_cell, []).append(w)
    members = set()
    for sigma in spec.base.simplices:
        covered = [
            w
            for base_cell, ws in over.items()
            if base_cell <= sigma
            for w in ws
        ]
        if all(w in fixed for w in covered):
            members.add(sigma)
    return CellularSubset(spec.base, frozenset(members))


def fixed_components(spec: SelfMapSpec) -> tuple:
    return connected_components(fixed_subcomplex(spec))


# ---------------------------------------------------------------------------
# local trace data and contributions


def local_trace_function(p: TracedProblem) -> ConstructibleFunction:
    """Stalkwise trace on the fixed subcomplex.

    Constant-sheaf model: the indicator of support /\\ fixed subcomplex.
    Explicit traces override individual cells.
    """
    base = p.spec.base
    fixed = fixed_subcomplex(p.spec)
    cells = set(fixed.members)
    if p.support is not None:
        if p.support.parent != base:
            raise DegenerateInputError("support lives on a different complex")
        cells &= set(p.support.members)
    values = {cell: GaussianRational.of(1) for cell in cells}
    if p.traces:
        for cell, raw in p.traces.items():
            cell = frozenset(cell)
            if cell not in fixed.members:
                raise DegenerateInputError(
                    f"trace value on {canonical_tuple(cell)}, which is not fixed"
                )
            value = GaussianRational.of(raw)
            if value.is_zero():
                values.pop(cell, None)
            else:
                values[cell] = value
    return ConstructibleFunction.of(base, values)


def _component_sign(matrix: RationalMatrix) -> int:
    d = (RationalMatrix.identity(matrix.nrows) - matrix).det()
    return (d > 0) - (d < 0)


def local_contribution(
    p: TracedProblem, index: int, force: bool = False
) -> GaussianRational:
    """Euler integral of the local trace function over one fixed component.

    Equals that component's contribution to the global trace when the
    normal spectrum avoids [1, oo) or the problem is complex-analytic.
    """
    comps = fixed_components(p.spec)
    matrix = p.normal_matrix(index, len(comps))
    if _component_sign(matrix) == 0 and not force:
        raise NotLocalizableError(
            f"1 is an eigenvalue of the normal matrix on component {index}"
        )
    return euler_integral(restrict(local_trace_function(p), comps[index]))


def signed_local_contribution(p: TracedProblem, index: int) -> GaussianRational:
    comps = fixed_components(p.spec)
    matrix = p.normal_matrix(index, len(comps))
    sign = _component_sign(matrix)
    if sign == 0:
        raise NotHyperbolicError(
            f"det(I - A) = 0 on component {index}; no signed contribution"
        )
    integral = euler_integral(restrict(local_trace_function(p), comps[index]))
    return integral * Fraction(sign)


def hyperbolicity_report(p: TracedProblem) -> list:
    """Per component: is 1 an eigenvalue, does the real spectrum meet
    [1, oo), and the sign of det(I - A)."""
    comps = fixed_components(p.spec)
    out = []
    for index, comp in enumerate(comps):
        matrix = p.normal_matrix(index, len(comps))
        char = matrix.char_poly()
        det = (RationalMatrix.identity(matrix.nrows) - matrix).det()
        meets = (
            count_real_roots_geq(char, 1) > 0 if matrix.nrows else False
        )
        out.append(
            {
                "component": index,
                "cells": len(comp.members),
                "normal_dim": matrix.nrows,
                "one_is_eigenvalue": det == 0,
                "meets_R_geq_1": meets,
                "sign": (det > 0) - (det < 0),
            }
        )
    return out


# ---------------------------------------------------------------------------
# localization: global trace vs sum of local terms


def _global_trace(p: TracedProblem) -> Fraction:
    spec = p.spec
    base = spec.base
    if p.support is None or p.support.members == base.simplices:
        return lefschetz_number(self_map_endomorphism(spec))
    support = p.support
    closed = closure(support)
    boundary = closed.members - support.members
    for cell in boundary:
        if len(cell) > 1:
            for v in cell:
                if (cell - {v}) in support.members:
                    raise DegenerateInputError(
                        "support is not locally closed: a face of a missing "
                        "cell lies inside it"
                    )
    if not spec.preserves_subcomplex(closed.members):
        raise DegenerateInputError("support closure is not map-invariant")
    sub_cells = closed.members
    sub = induced_subcomplex(base, sub_cells)
    source = spec.source_complex()
    carrier = spec.carrier()
    restricted_map = {}
    for w in source.vertices:
        if carrier[frozenset([w])] in sub_cells:
            restricted_map[w] = spec.vertex_map[w]
    sub_spec = SelfMapSpec.build(sub, spec.level, restricted_map)
    if boundary and not sub_spec.preserves_subcomplex(frozenset(boundary)):
        raise DegenerateInputError(
            "support boundary is not map-invariant; the relative trace "
            "is undefined"
        )
    endo = self_map_endomorphism(
        sub_spec, relative_to=frozenset(boundary) if boundary else None
    )
    return lefschetz_number(endo)


def localization_report(p: TracedProblem) -> dict:
    """Global homological trace versus the sum of signed local terms."""
    comps = fixed_components(p.spec)
    phi = local_trace_function(p)
    per_component = []
    total = GaussianRational.of(0)
    for index, comp in enumerate(comps):
        matrix = p.normal_matrix(index, len(comps))
        sign = _component_sign(matrix)
        integral = euler_integral(restrict(phi, comp))
        if sign == 0:
            raise NotHyperbolicError(
                f"det(I - A) = 0 on component {index}; localization undefined"
            )
        signed = integral * Fraction(sign)
        total = total + signed
        per_component.append(
            {
                "component": index,
                "cells": [canonical_tuple(c) for c in comp.sorted_members()],
                "normal_dim": matrix.nrows,
                "sign": sign,
                "integral": integral,
                "signed_contribution": signed,
            }
        )
    global_trace = GaussianRational.of(_global_trace(p))
    return {
        "global_trace": global_trace,
        "sum_of_local": total,
        "equal": global_trace == total,
        "components": per_component,
    }
