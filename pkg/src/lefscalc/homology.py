"""Simplicial chain complexes over Q, chain maps, and trace computations.

Orientation convention: a simplex is oriented by its canonical vertex
order, and the boundary uses the usual alternating signs in that order.
Relative chain complexes are quotients: the bases simply omit the cells of
the dropped subcomplex and boundary entries landing there are discarded.

Two trace routes are kept deliberately separate:

* hopf_trace: alternating sum of chain-level traces;
* lefschetz_number: alternating sum of induced traces on homology,
  obtained by lifting a cycle basis and reducing modulo boundaries.

They must agree; the test suite checks that on hundreds of random maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (
    CellularSubset,
    SimplicialComplex,
    canonical_tuple,
    cell_sort_key,
    require_simplicial,
    require_valid,
    vertex_key,
)
from .errors import DegenerateInputError
from .exact import RationalMatrix, null_space, row_echelon, solve
from .maps import SelfMapSpec, SimplicialMap, subdivided_complex


def _normalize_subcomplex(space: SimplicialComplex, dropped) -> frozenset:
    if dropped is None:
        return frozenset()
    if isinstance(dropped, SimplicialComplex):
        cells = dropped.simplices
    elif isinstance(dropped, CellularSubset):
        cells = dropped.members
    else:
        cells = frozenset(frozenset(c) for c in dropped)
    cells = frozenset(frozenset(c) for c in cells)
    for c in sorted(cells, key=cell_sort_key):
        if c not in space.simplices:
            raise DegenerateInputError(
                f"subcomplex cell {canonical_tuple(c)} is not in the parent"
            )
        if len(c) > 1:
            for v in c:
                if c - {v} not in cells:
                    raise DegenerateInputError(
                        f"subcomplex is not face-closed at {canonical_tuple(c)}"
                    )
    return cells


@dataclass(frozen=True, eq=False)
class ChainComplexQ:
    space: SimplicialComplex
    dropped: frozenset
    bases: tuple       # per degree: tuple of simplices in canonical order
    boundaries: tuple  # boundaries[k]: C_k -> C_{k-1}; boundaries[0] is 0 x n_0
    index: tuple = field(repr=False)  # per degree: {simplex: column}

    @property
    def top_degree(self) -> int:
        return len(self.bases) - 1

    def basis_size(self, k: int) -> int:
        if 0 <= k < len(self.bases):
            return len(self.bases[k])
        return 0


def chain_complex(space: SimplicialComplex, relative_to=None) -> ChainComplexQ:
    space = require_simplicial(space, "chain_complex")
    require_valid(space)
    dropped = _normalize_subcomplex(space, relative_to)
    top = space.dim
    bases = []
    for k in range(top + 1):
        bases.append(tuple(s for s in space.k_cells(k) if s not in dropped))
    while bases and not bases[-1]:
        bases.pop()
    index = tuple({s: i for i, s in enumerate(b)} for b in bases)
    boundaries = []
    for k in range(len(bases)):
        if k == 0:
            boundaries.append(RationalMatrix.zeros(0, len(bases[0])))
            continue
        cols = len(bases[k])
        rows = len(bases[k - 1])
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        lower = index[k - 1]
        for j, s in enumerate(bases[k]):
            ordered = canonical_tuple(s)
            for i, v in enumerate(ordered):
                face = s - {v}
                row = lower.get(face)
                if row is not None:
                    grid[row][j] += Fraction(-1) ** i
        boundaries.append(RationalMatrix(tuple(map(tuple, grid)), cols))
    cc = ChainComplexQ(space, dropped, tuple(bases), tuple(boundaries), index)
    for k in range(2, len(bases)):
        product = cc.boundaries[k - 1] @ cc.boundaries[k]
        if any(x != 0 for row in product.rows for x in row):
            raise DegenerateInputError("boundary of boundary is nonzero")
    return cc


def betti(cc: ChainComplexQ) -> list:
    """Rational Betti numbers per degree (relative ones if cells were
    dropped at construction)."""
    out = []
    for k in range(len(cc.bases)):
        kernel = len(null_space(cc.boundaries[k]))
        image = (
            cc.boundaries[k + 1].rank() if k + 1 < len(cc.boundaries) else 0
        )
        out.append(kernel - image)
    return out


def relative_betti(space: SimplicialComplex, subcomplex) -> list:
    return betti(chain_complex(space, relative_to=subcomplex))


@dataclass(frozen=True, eq=False)
class ChainMapQ:
    source: ChainComplexQ
    target: ChainComplexQ
    matrices: tuple  # per degree, target basis x source basis

    def degree_matrix(self, k: int) -> RationalMatrix:
        if 0 <= k < len(self.matrices):
            return self.matrices[k]
        return RationalMatrix.zeros(
            self.target.basis_size(k), self.source.basis_size(k)
        )

    def is_endomorphism(self) -> bool:
        return (
            self.source.bases == self.target.bases
            and self.source.dropped == self.target.dropped
        )


def _build_chain_map(source_cc, target_cc, matrices) -> ChainMapQ:
    degrees = max(len(source_cc.bases), len(target_cc.bases))
    mats = []
    for k in range(degrees):
        if k < len(matrices):
            mats.append(matrices[k])
        else:
            mats.append(
                RationalMatrix.zeros(
                    target_cc.basis_size(k), source_cc.basis_size(k)
                )
            )
    cm = ChainMapQ(source_cc, target_cc, tuple(mats))
    for k in range(1, degrees):
        lhs = target_cc.boundaries[k] @ cm.degree_matrix(k) if k < len(
            target_cc.boundaries
        ) else RationalMatrix.zeros(
            target_cc.basis_size(k - 1), source_cc.basis_size(k)
        )
        rhs = cm.degree_matrix(k - 1) @ source_cc.boundaries[k] if k < len(
            source_cc.boundaries
        ) else RationalMatrix.zeros(
            target_cc.basis_size(k - 1), source_cc.basis_size(k)
        )
        if lhs.rows != rhs.rows:
            raise DegenerateInputError(
                f"chain map fails to commute with the boundary in degree {k}"
            )
    return cm


def chain_map_of(m: SimplicialMap) -> ChainMapQ:
    """Matrix form of the induced map on oriented simplicial chains.

    A simplex collapsing onto a lower-dimensional image contributes zero;
    otherwise the image is reordered into canonical form and the column
    picks up the sign of that reordering.
    """
    source_cc = chain_complex(m.source)
    target_cc = chain_complex(m.target)
    matrices = []
    for k in range(len(source_cc.bases)):
        rows = target_cc.basis_size(k)
        cols = source_cc.basis_size(k)
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        for j, s in enumerate(source_cc.bases[k]):
            images = [m.vertex_map[v] for v in canonical_tuple(s)]
            if len(set(images)) != len(images):
                continue
            keys = [vertex_key(u) for u in images]
            inversions = sum(
                1
                for a in range(len(keys))
                for b in range(a + 1, len(keys))
                if keys[a] > keys[b]
            )
            row = target_cc.index[k][frozenset(images)]
            grid[row][j] += Fraction(-1) ** inversions
        matrices.append(RationalMatrix(tuple(map(tuple, grid)), cols))
    return _build_chain_map(source_cc, target_cc, matrices)


def subdivision_chain_map(space: SimplicialComplex) -> ChainMapQ:
    """The chain equivalence sd_*: C_*(K) -> C_*(sd K).

    Built by the cone recursion: sd of a vertex is its barycenter vertex,
    and sd of a simplex cones the subdivided boundary over the simplex's
    own barycenter.
    """
    finer = subdivided_complex(space, 1)[0]
    source_cc = chain_complex(space)
    target_cc = chain_complex(finer)
    memo = {}

    def sd_chain(ordered: tuple) -> dict:
        if ordered in memo:
            return memo[ordered]
        if len(ordered) == 1:
            out = {frozenset([(ordered[0],)]): Fraction(1)}
        else:
            apex = ordered  # barycenter vertex of this simplex
            out = {}
            for i in range(len(ordered)):
                face = ordered[:i] + ordered[i + 1 :]
                for cell, coeff in sd_chain(face).items():
                    coned = cell | {apex}
                    sign = Fraction(-1) ** (i + len(cell))
                    out[coned] = out.get(coned, Fraction(0)) + coeff * sign
        memo[ordered] = out
        return out

    matrices = []
    for k in range(len(source_cc.bases)):
        rows = target_cc.basis_size(k)
        cols = source_cc.basis_size(k)
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        for j, s in enumerate(source_cc.bases[k]):
            for cell, coeff in sd_chain(canonical_tuple(s)).items():
                grid[target_cc.index[k][cell]][j] += coeff
        matrices.append(RationalMatrix(tuple(map(tuple, grid)), cols))
    return _build_chain_map(source_cc, target_cc, matrices)


def compose_chain_maps(outer: ChainMapQ, inner: ChainMapQ) -> ChainMapQ:
    if outer.source.bases != inner.target.bases:
        raise DegenerateInputError("chain maps are not composable")
    degrees = max(len(outer.matrices), len(inner.matrices))
    matrices = [
        outer.degree_matrix(k) @ inner.degree_matrix(k) for k in range(degrees)
    ]
    return _build_chain_map(inner.source, outer.target, matrices)


def self_map_endomorphism(spec: SelfMapSpec, relative_to=None) -> ChainMapQ:
    """The chain endomorphism (map_* o sd^level_*) on C_*(base).

    With `relative_to` the endomorphism is projected onto the quotient by
    an invariant subcomplex; invariance is checked geometrically via the
    carrier, not by looking for accidental cancellation.
    """
    base = spec.base
    sd_maps = []
    current = base
    for _ in range(spec.level):
        sd_maps.append(subdivision_chain_map(current))
        current = subdivided_complex(current, 1)[0]
    push = chain_map_of(spec.as_map())
    endo = push
    for sd_map in reversed(sd_maps):
        endo = compose_chain_maps(endo, sd_map)
    if relative_to is None:
        return endo
    dropped = _normalize_subcomplex(base, relative_to)
    if not spec.preserves_subcomplex(dropped):
        raise DegenerateInputError(
            "the dropped subcomplex is not invariant under the map"
        )
    quotient = chain_complex(base, relative_to=dropped)
    matrices = []
    full = chain_complex(base)
    for k in range(len(quotient.bases)):
        keep = [full.index[k][s] for s in quotient.bases[k]]
        m = endo.degree_matrix(k)
        grid = tuple(
            tuple(m.rows[r][c] for c in keep) for r in keep
        )
        matrices.append(RationalMatrix(grid, len(keep)))
    return _build_chain_map(quotient, quotient, matrices)


def _as_endomorphism(target) -> ChainMapQ:
    endo = (
        target
        if isinstance(target, ChainMapQ)
        else self_map_endomorphism(target)
    )
    if not endo.is_endomorphism():
        raise DegenerateInputError("a chain self-map is required here")
    return endo


def hopf_trace(target) -> Fraction:
    """Alternating sum of chain-level traces of a self-map."""
    endo = _as_endomorphism(target)
    total = Fraction(0)
    for k in range(len(endo.source.bases)):
        total += Fraction(-1) ** k * endo.degree_matrix(k).trace()
    return total


def homology_trace(target, k: int) -> Fraction:
    """Trace of the induced map on H_k.

    A basis of cycles is split into boundary part plus a complement; each
    complement vector's image is solved back in that basis and the diagonal
    coefficients are summed.  The result is basis independent.
    """
    endo = _as_endomorphism(target)
    cc = endo.source
    n = cc.basis_size(k)
    if n == 0:
        return Fraction(0)
    cycles = null_space(cc.boundaries[k])
    boundary_cols = []
    if k + 1 < len(cc.boundaries):
        bmat = cc.boundaries[k + 1]
        work, pivots = row_echelon([list(r) for r in bmat.rows])
        cols = bmat.transpose().rows
        boundary_cols = [list(cols[j]) for j in pivots]
    combined = boundary_cols + cycles
    if not combined:
        return Fraction(0)
    w = RationalMatrix(tuple(zip(*combined)))  # columns = combined vectors
    _, pivots = row_echelon([list(r) for r in w.rows])
    chosen = [j for j in pivots if j >= len(boundary_cols)]
    if not chosen:
        return Fraction(0)
    rep_cols = boundary_cols + [combined[j] for j in chosen]
    rep = RationalMatrix(tuple(zip(*rep_cols)))
    mk = endo.degree_matrix(k)
    total = Fraction(0)
    for pos, j in enumerate(chosen):
        image = mk.apply(combined[j])
        solved = solve(rep, image)
        if solved is None:
            raise DegenerateInputError(
                "image of a cycle left the cycle space; not a chain map"
            )
        total += solved[0][len(boundary_cols) + pos]
    return total


def homology_traces(target) -> list:
    endo = _as_endomorphism(target)
    return [homology_trace(endo, k) for k in range(len(endo.source.bases))]


def lefschetz_number(target) -> Fraction:
    """Alternating sum of homology traces of a chain self-map.

    Accepts a ChainMapQ endomorphism or a SelfMapSpec (which is first
    turned into (map_* o sd^level_*)).
    """
    endo = _as_endomorphism(target)
    total = Fraction(0)
    for k in range(len(endo.source.bases)):
        total += Fraction(-1) ** k * homology_trace(endo, k)
    return total


def relative_lefschetz_number(spec: SelfMapSpec, subcomplex) -> Fraction:
    return lefschetz_number(self_map_endomorphism(spec, relative_to=subcomplex))


def euler_characteristic(space: SimplicialComplex) -> int:
    cc = chain_complex(space)
    return sum((-1) ** k * cc.basis_size(k) for k in range(len(cc.bases)))
