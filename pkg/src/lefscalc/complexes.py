"""Finite simplicial complexes, cell spaces, and cellular subsets.

A simplicial complex is a face-closed set of nonempty vertex subsets with
optional exact rational coordinates.  A cell space is the bookkeeping
skeleton of a cell decomposition: cells carry only a dimension and an
optional component label, no incidence, so operations that need incidence
(homology, stars, Morse data) reject cell spaces with a typed error.

Cells of a complex are open cells throughout the package: values of
constructible functions and Euler characteristics with compact support are
taken cellwise with weight (-1)^dim.

Everything is deterministic: vertex identifiers are ordered by a fixed
total key, simplices by (dimension, vertex order), components by their
smallest cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    CellSpaceUnsupportedError,
    DegenerateInputError,
    InvalidComplexError,
)
from .exact import RationalMatrix, parse_rational


def vertex_key(v):
    """Total order on vertex identifiers (ints, strings, nested tuples).

    Tuples sort by length first, so barycenter vertices of a subdivision
    sort in face-poset order inside any subdivision simplex.
    """
    if isinstance(v, tuple):
        return (2, len(v), tuple(vertex_key(x) for x in v))
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, int) and not isinstance(v, bool):
        return (0, v)
    return (3, str(v))


def canonical_tuple(simplex) -> tuple:
    return tuple(sorted(simplex, key=vertex_key))


def cell_sort_key(cell):
    if isinstance(cell, frozenset):
        return (len(cell), tuple(vertex_key(v) for v in canonical_tuple(cell)))
    return vertex_key(cell)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    simplices: frozenset
    coords: tuple | None = None  # coordinate tuples aligned with vertices

    @staticmethod
    def build(vertices, simplices, coords=None) -> "SimplicialComplex":
        verts = tuple(sorted(set(vertices), key=vertex_key))
        simps = frozenset(frozenset(s) for s in simplices)
        coord_field = None
        if coords is not None:
            if isinstance(coords, dict):
                table = {
                    v: tuple(parse_rational(x) for x in xs)
                    for v, xs in coords.items()
                }
            else:
                # a row sequence aligned with the given vertex order
                if isinstance(vertices, (set, frozenset)):
                    raise DegenerateInputError(
                        "aligned coordinates need an ordered vertex sequence"
                    )
                rows = list(coords)
                names = list(vertices)
                if len(rows) != len(names):
                    raise DegenerateInputError(
                        "coordinate rows do not align with the vertex list"
                    )
                table = {
                    v: tuple(parse_rational(x) for x in rows[i])
                    for i, v in enumerate(names)
                }
            coord_field = tuple(table.get(v) for v in verts)
        return SimplicialComplex(verts, simps, coord_field)

    @staticmethod
    def from_simplices(simplices, coords=None) -> "SimplicialComplex":
        simps = [frozenset(s) for s in simplices]
        verts = set()
        for s in simps:
            verts |= s
        return SimplicialComplex.build(verts, simps, coords)

    @staticmethod
    def from_maximal(maximal, coords=None) -> "SimplicialComplex":
        """Close the given simplices under taking faces."""
        closed = set()
        for s in maximal:
            s = tuple(s)
            for k in range(1, len(s) + 1):
                for face in combinations(s, k):
                    closed.add(frozenset(face))
        return SimplicialComplex.from_simplices(closed, coords)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def has(self, simplex) -> bool:
        return frozenset(simplex) in self.simplices

    def k_cells(self, k: int) -> list:
        return sorted(
            (s for s in self.simplices if len(s) == k + 1), key=cell_sort_key
        )

    def all_cells(self) -> list:
        return sorted(self.simplices, key=cell_sort_key)

    def vertex_index(self, v) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise DegenerateInputError(f"unknown vertex {v!r}") from None

    def coord_of(self, v):
        if self.coords is None:
            return None
        return self.coords[self.vertex_index(v)]


@dataclass(frozen=True)
class Cell:
    ident: str
    dim: int
    component: str | None = None


@dataclass(frozen=True)
class CellSpace:
    cells: tuple

    @staticmethod
    def build(cells) -> "CellSpace":
        rows = []
        seen = set()
        for c in cells:
            if isinstance(c, Cell):
                cell = c
            else:
                cell = Cell(str(c["id"]), int(c["dim"]), c.get("component"))
            if cell.ident in seen:
                raise DegenerateInputError(f"duplicate cell id {cell.ident!r}")
            if cell.dim < 0:
                raise DegenerateInputError(f"cell {cell.ident!r} has negative dim")
            seen.add(cell.ident)
            rows.append(cell)
        return CellSpace(tuple(sorted(rows, key=lambda c: c.ident)))

    def cell(self, ident: str) -> Cell:
        for c in self.cells:
            if c.ident == ident:
                return c
        raise DegenerateInputError(f"unknown cell {ident!r}")

    def all_cells(self) -> list:
        return [c.ident for c in self.cells]


def cell_dim(parent, cell) -> int:
    if isinstance(parent, SimplicialComplex):
        return len(cell) - 1
    if isinstance(parent, CellSpace):
        return parent.cell(cell).dim
    raise DegenerateInputError(f"not a cell parent: {parent!r}")


def require_simplicial(parent, operation: str) -> SimplicialComplex:
    if isinstance(parent, SimplicialComplex):
        return parent
    raise CellSpaceUnsupportedError(
        f"{operation} needs simplicial incidence data; got a cell space"
    )


@dataclass(frozen=True)
class CellularSubset:
    """A union of open cells of one parent space."""

    parent: object
    members: frozenset

    @staticmethod
    def of(parent, cells) -> "CellularSubset":
        if isinstance(parent, SimplicialComplex):
            mem = frozenset(frozenset(c) for c in cells)
            unknown = [c for c in mem if c not in parent.simplices]
        else:
            mem = frozenset(str(c) for c in cells)
            known = set(parent.all_cells())
            unknown = [c for c in mem if c not in known]
        if unknown:
            raise DegenerateInputError(
                f"cells not in parent: {sorted(map(repr, unknown))[:3]}"
            )
        return CellularSubset(parent, mem)

    def sorted_members(self) -> list:
        return sorted(self.members, key=cell_sort_key)

    def __contains__(self, cell) -> bool:
        if isinstance(self.parent, SimplicialComplex):
            return frozenset(cell) in self.members
        return cell in self.members


def whole_space(parent) -> CellularSubset:
    if isinstance(parent, SimplicialComplex):
        return CellularSubset(parent, frozenset(parent.simplices))
    return CellularSubset(parent, frozenset(parent.all_cells()))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


def validate(space) -> list:
    """Structural diagnostics; empty list means the space is well formed."""
    if isinstance(space, CellSpace):
        return []  # construction already enforced the cell-space invariants
    out = []
    vset = set(space.vertices)
    for s in sorted(space.simplices, key=cell_sort_key):
        if not s:
            out.append(Violation("empty-simplex", "the empty set is not a cell"))
            continue
        stray = [v for v in canonical_tuple(s) if v not in vset]
        if stray:
            out.append(
                Violation(
                    "unknown-vertex",
                    f"simplex {canonical_tuple(s)} uses unlisted {stray}",
                )
            )
        if len(s) > 1:
            for v in canonical_tuple(s):
                if s - {v} not in space.simplices:
                    out.append(
                        Violation(
                            "not-face-closed",
                            f"face {canonical_tuple(s - {v})} of "
                            f"{canonical_tuple(s)} is missing",
                        )
                    )
    for v in space.vertices:
        if frozenset([v]) not in space.simplices:
            out.append(
                Violation("vertex-not-a-cell", f"vertex {v!r} has no 0-simplex")
            )
    if space.coords is not None:
        missing = [v for v, c in zip(space.vertices, space.coords) if c is None]
        if missing:
            out.append(
                Violation(
                    "missing-coordinates",
                    f"coordinates absent for {missing}",
                )
            )
        else:
            lengths = {len(c) for c in space.coords}
            if len(lengths) > 1:
                out.append(
                    Violation("ragged-coordinates", f"mixed lengths {sorted(lengths)}")
                )
            else:
                for s in sorted(space.simplices, key=cell_sort_key):
                    pts = [space.coord_of(v) for v in canonical_tuple(s)]
                    if len(pts) < 2 or any(p is None for p in pts):
                        continue
                    rows = [
                        [b - a for a, b in zip(pts[0], p)] for p in pts[1:]
                    ]
                    if RationalMatrix(tuple(map(tuple, rows))).rank() < len(rows):
                        out.append(
                            Violation(
                                "affinely-dependent",
                                f"simplex {canonical_tuple(s)} is degenerate",
                            )
                        )
    return out


def require_valid(space) -> None:
    problems = validate(space)
    if problems:
        heads = "; ".join(f"{p.kind}: {p.detail}" for p in problems[:3])
        raise InvalidComplexError(f"{len(problems)} violation(s): {heads}")


# ---------------------------------------------------------------------------
# stars, links, closures, components


def star(space: SimplicialComplex, v) -> CellularSubset:
    space = require_simplicial(space, "star")
    return CellularSubset(
        space, frozenset(s for s in space.simplices if v in s)
    )


def closure(subset: CellularSubset) -> CellularSubset:
    parent = require_simplicial(subset.parent, "closure")
    closed = set()
    for s in subset.members:
        items = tuple(s)
        for k in range(1, len(items) + 1):
            for face in combinations(items, k):
                closed.add(frozenset(face))
    return CellularSubset(parent, frozenset(closed))


def link(space: SimplicialComplex, v) -> SimplicialComplex:
    space = require_simplicial(space, "link")
    simps = [
        s for s in space.simplices if v not in s and (s | {v}) in space.simplices
    ]
    coords = None
    if space.coords is not None:
        verts = set()
        for s in simps:
            verts |= s
        coords = {w: space.coord_of(w) for w in verts}
    return SimplicialComplex.from_simplices(simps, coords)


def connected_components(target) -> tuple:
    """Partition into components; deterministic, smallest cell first.

    Simplicial subsets use the shares-a-face relation; cell spaces group by
    their component labels (unlabeled cells are singletons).
    """
    if isinstance(target, (SimplicialComplex, CellSpace)):
        target = whole_space(target)
    parent = target.parent
    if isinstance(parent, CellSpace):
        groups = {}
        for ident in sorted(target.members):
            label = parent.cell(ident).component
            groups.setdefault(label if label is not None else f"~{ident}", []).append(
                ident
            )
        comps = [CellularSubset(parent, frozenset(g)) for g in groups.values()]
        return tuple(
            sorted(comps, key=lambda c: cell_sort_key(c.sorted_members()[0]))
        )
    cells = target.sorted_members()
    index = {c: i for i, c in enumerate(cells)}
    parent_arr = list(range(len(cells)))

    def find(i):
        while parent_arr[i] != i:
            parent_arr[i] = parent_arr[parent_arr[i]]
            i = parent_arr[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent_arr[max(ri, rj)] = min(ri, rj)

    # two cells touch when they share a face, i.e. intersect as vertex sets
    by_vertex = {}
    for c in cells:
        for v in c:
            by_vertex.setdefault(v, []).append(index[c])
    for bucket in by_vertex.values():
        for other in bucket[1:]:
            union(bucket[0], other)
    groups = {}
    for c in cells:
        groups.setdefault(find(index[c]), []).append(c)
    comps = [
        CellularSubset(parent, frozenset(g))
        for _, g in sorted(groups.items())
    ]
    return tuple(sorted(comps, key=lambda c: cell_sort_key(c.sorted_members()[0])))


def induced_subcomplex(space: SimplicialComplex, cells) -> SimplicialComplex:
    """The subcomplex on a face-closed family of simplices of `space`."""
    space = require_simplicial(space, "induced_subcomplex")
    simps = [frozenset(c) for c in cells]
    for s in simps:
        if s not in space.simplices:
            raise DegenerateInputError(f"not a simplex of the parent: {s}")
    sub = SimplicialComplex.from_simplices(simps)
    if validate(sub):
        raise DegenerateInputError("cell family is not face-closed")
    if space.coords is not None:
        coords = {v: space.coord_of(v) for v in sub.vertices}
        return SimplicialComplex.build(sub.vertices, sub.simplices, coords)
    return sub


# ---------------------------------------------------------------------------
# barycentric subdivision


def barycentric_subdivide(space: SimplicialComplex) -> tuple:
    """One barycentric subdivision.

    Returns (subdivided complex, carrier) where carrier maps each new
    simplex to the smallest old simplex containing its realization; new
    vertices are named by the canonical vertex tuple of the old simplex
    they subtend.
    """
    space = require_simplicial(space, "barycentric_subdivide")
    require_valid(space)
    chains_by_top = {}

    def chains(simplex: frozenset) -> list:
        if simplex in chains_by_top:
            return chains_by_top[simplex]
        out = [(simplex,)]
        items = tuple(simplex)
        for k in range(1, len(items)):
            for face in combinations(items, k):
                for chain in chains(frozenset(face)):
                    out.append(chain + (simplex,))
        chains_by_top[simplex] = out
        return out

    new_simplices = set()
    carrier = {}
    for simplex in space.simplices:
        for chain in chains(simplex):
            cell = frozenset(canonical_tuple(s) for s in chain)
            new_simplices.add(cell)
            carrier[cell] = chain[-1]
    coords = None
    if space.coords is not None:
        coords = {}
        for simplex in space.simplices:
            pts = [space.coord_of(v) for v in simplex]
            n = len(pts)
            coords[canonical_tuple(simplex)] = tuple(
                sum(p[i] for p in pts) / Fraction(n) for i in range(len(pts[0]))
            )
    subdivided = SimplicialComplex.from_simplices(new_simplices, coords)
    return subdivided, carrier


def subdivide_times(space: SimplicialComplex, levels: int) -> tuple:
    """Iterate barycentric subdivision; carrier composes down to `space`."""
    if levels < 0:
        raise DegenerateInputError("subdivision level must be >= 0")
    current = space
    carrier = {s: s for s in space.simplices}
    for _ in range(levels):
        finer, step = barycentric_subdivide(current)
        carrier = {cell: carrier[step[cell]] for cell in step}
        current = finer
    return current, carrier


def sd_vertex_position(vertex, base: SimplicialComplex) -> dict:
    """Barycentric position of a subdivision vertex over the base vertices.

    Returns a sparse {base vertex: Fraction} map summing to 1.  Works for
    any nesting level because subdivision vertices are tuples of the level
    below.
    """
    base_set = set(base.vertices)
    if vertex in base_set:
        return {vertex: Fraction(1)}
    if not isinstance(vertex, tuple):
        raise DegenerateInputError(f"not a subdivision vertex: {vertex!r}")
    total = {}
    for part in vertex:
        for v, w in sd_vertex_position(part, base).items():
            total[v] = total.get(v, Fraction(0)) + w / len(vertex)
    return total
