"""Constructible functions and their Euler calculus.

A constructible function assigns a Gaussian-rational value to each open
cell (constant on open cells by construction).  The compactly supported
Euler characteristic of an open k-cell is (-1)^k, so integration, the
pushforward along a simplicial map, and pullback are finite exact sums:

    integral(phi)      = sum_cells (-1)^dim * phi(cell)
    (g_* phi)(tau)     = sum over cells sigma with g(sigma) = tau of
                         (-1)^(dim sigma - dim tau) * phi(sigma)
    (g^* psi)(sigma)   = psi(g(sigma))

The pushforward is the fibrewise integral, so integral(g_* phi) =
integral(phi) holds identically (checked in bulk by the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (
    CellSpace,
    CellularSubset,
    SimplicialComplex,
    cell_dim,
    cell_sort_key,
)
from .errors import DegenerateInputError
from .exact import GZERO, GaussianRational
from .maps import SelfMapSpec, SimplicialMap


def _freeze_cell(parent, cell):
    if isinstance(parent, SimplicialComplex):
        return frozenset(cell)
    return str(cell)


@dataclass(frozen=True, eq=False)
class ConstructibleFunction:
    parent: object
    values: dict = field(repr=False)  # cell -> GaussianRational, zero omitted

    @staticmethod
    def of(parent, values) -> "ConstructibleFunction":
        table = {}
        if isinstance(values, dict):
            values = values.items()
        known = (
            parent.simplices
            if isinstance(parent, SimplicialComplex)
            else set(parent.all_cells())
        )
        for cell, raw in values:
            cell = _freeze_cell(parent, cell)
            if cell not in known:
                raise DegenerateInputError(f"value on unknown cell {cell!r}")
            value = GaussianRational.of(raw)
            if not value.is_zero():
                table[cell] = value
        return ConstructibleFunction(parent, table)

    @staticmethod
    def indicator(parent, cells=None) -> "ConstructibleFunction":
        if cells is None:
            cells = (
                parent.simplices
                if isinstance(parent, SimplicialComplex)
                else parent.all_cells()
            )
        elif isinstance(cells, CellularSubset):
            cells = cells.members
        return ConstructibleFunction.of(
            parent, {cell: GaussianRational.of(1) for cell in cells}
        )

    def __call__(self, cell) -> GaussianRational:
        return self.values.get(_freeze_cell(self.parent, cell), GZERO)

    def support(self) -> CellularSubset:
        return CellularSubset(self.parent, frozenset(self.values))

    def sorted_items(self) -> list:
        return sorted(self.values.items(), key=lambda kv: cell_sort_key(kv[0]))

    def __eq__(self, other):
        return (
            isinstance(other, ConstructibleFunction)
            and self.parent == other.parent
            and self.values == other.values
        )


def chi_c(target) -> int:
    """Compactly supported Euler characteristic of a union of open cells."""
    if isinstance(target, (SimplicialComplex, CellSpace)):
        cells = (
            target.simplices
            if isinstance(target, SimplicialComplex)
            else target.all_cells()
        )
        parent = target
    else:
        cells = target.members
        parent = target.parent
    return sum((-1) ** cell_dim(parent, c) for c in cells)


def euler_integral(phi: ConstructibleFunction) -> GaussianRational:
    total = GZERO
    for cell, value in phi.values.items():
        total = total + value * ((-1) ** cell_dim(phi.parent, cell))
    return total


def restrict(phi: ConstructibleFunction, subset) -> ConstructibleFunction:
    if isinstance(subset, CellularSubset):
        if subset.parent != phi.parent:
            raise DegenerateInputError("restriction subset has a different parent")
        members = subset.members
    else:
        members = {_freeze_cell(phi.parent, c) for c in subset}
    return ConstructibleFunction(
        phi.parent, {c: v for c, v in phi.values.items() if c in members}
    )


def combine(a, phi: ConstructibleFunction, b, psi: ConstructibleFunction):
    """a*phi + b*psi with Gaussian-rational scalars."""
    if phi.parent != psi.parent:
        raise DegenerateInputError("combine needs functions on the same space")
    a = GaussianRational.of(a)
    b = GaussianRational.of(b)
    table = {}
    for cell in set(phi.values) | set(psi.values):
        value = a * phi.values.get(cell, GZERO) + b * psi.values.get(cell, GZERO)
        if not value.is_zero():
            table[cell] = value
    return ConstructibleFunction(phi.parent, table)


def scale(c, phi: ConstructibleFunction) -> ConstructibleFunction:
    return combine(c, phi, 0, ConstructibleFunction(phi.parent, {}))


def pushforward(g: SimplicialMap, phi: ConstructibleFunction):
    """Fibrewise Euler integral along a simplicial map."""
    if phi.parent != g.source:
        raise DegenerateInputError("function does not live on the map's source")
    table = {}
    for cell, value in phi.values.items():
        image = g.image_simplex(cell)
        weight = (-1) ** (len(cell) - len(image))
        table[image] = table.get(image, GZERO) + value * weight
    return ConstructibleFunction(
        g.target, {c: v for c, v in table.items() if not v.is_zero()}
    )


def pullback(g: SimplicialMap, psi: ConstructibleFunction):
    if psi.parent != g.target:
        raise DegenerateInputError("function does not live on the map's target")
    table = {}
    for cell in g.source.simplices:
        value = psi.values.get(g.image_simplex(cell), GZERO)
        if not value.is_zero():
            table[cell] = value
    return ConstructibleFunction(g.source, table)


def transport_to_subdivision(
    phi: ConstructibleFunction, finer: SimplicialComplex, carrier: dict
) -> ConstructibleFunction:
    """Re-express phi on a subdivision: each new cell inherits the value of
    its carrier.  Integrals are unchanged because each open cell subdivides
    into cells whose compactly-supported characteristics add up to its own.
    """
    table = {}
    for cell in finer.simplices:
        value = phi.values.get(frozenset(carrier[cell]), GZERO)
        if not value.is_zero():
            table[cell] = value
    return ConstructibleFunction(finer, table)


def pushforward_spec(spec: SelfMapSpec, phi: ConstructibleFunction):
    """Pushforward along a subdivided self-map: transport to the source
    subdivision by carrier, then push along the vertex map."""
    if phi.parent != spec.base:
        raise DegenerateInputError("function does not live on the base complex")
    finer = spec.source_complex()
    carrier = spec.carrier()
    return pushforward(spec.as_map(), transport_to_subdivision(phi, finer, carrier))
