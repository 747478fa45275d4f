"""Cell models of complex flag manifolds and a worked fixed-locus example.

The full flag manifold of C^n is covered by n! affine cells indexed by
permutations, the cell of w having complex dimension equal to the number
of inversions of w.  We keep permutations in one-line notation as tuples
of 1..n and name cells by the digit string, so the big cell of Fl(C^3)
is "321".

For a diagonalizable matrix with distinct eigenvalue blocks of sizes
(n_1, ..., n_r) the fixed flags split into n!/(n_1!...n_r!) connected
components, one per arrangement of block labels along the flag steps,
each a product of smaller flag manifolds.

The worked example treats Fl(C^3) with eigenvalues (a, a, b): three fixed
components, each a Riemann sphere, met against the complement V of the
open big cell.  The intersection pattern is derived from exact polynomial
conditions in both affine charts of each sphere, never tabulated by hand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import Cell, CellSpace, CellularSubset
from .errors import DegenerateInputError
from .euler import ConstructibleFunction, chi_c, euler_integral, restrict
from .exact import (
    GZERO,
    GaussianRational,
    RationalMatrix,
    RationalPolynomial,
    parse_rational,
)


# ---------------------------------------------------------------------------
# permutations and the closure order on cells

def permutations_of(n: int) -> list:
    return sorted(itertools.permutations(range(1, n + 1)))


def inversion_count(perm: tuple) -> int:
    n = len(perm)
    return sum(
        1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
    )


def longest_element(n: int) -> tuple:
    return tuple(range(n, 0, -1))


def bruhat_leq(a: tuple, b: tuple) -> bool:
    """Closure order: the cell of a lies in the closure of the cell of b.

    Dot criterion: for every prefix length i and threshold j, the prefix
    of a contains at most as many entries >= j as the prefix of b does.
    """
    if len(a) != len(b):
        raise DegenerateInputError("permutations of different sizes")
    n = len(a)
    for i in range(1, n):
        for j in range(2, n + 1):
            ca = sum(1 for k in range(i) if a[k] >= j)
            cb = sum(1 for k in range(i) if b[k] >= j)
            if ca > cb:
                return False
    return True


def perm_name(perm: tuple) -> str:
    return "".join(str(x) for x in perm)


MAX_FLAG_N = 6


@dataclass(frozen=True, eq=False)
class BruhatCellSpace:
    """Cell space of a full flag manifold together with its indexing."""

    n: int
    space: CellSpace
    perms: tuple  # sorted permutation tuples

    def cell_id(self, perm: tuple) -> str:
        return perm_name(perm)


def flag_cellspace(n: int) -> BruhatCellSpace:
    if not 1 <= n <= MAX_FLAG_N:
        raise DegenerateInputError(
            f"flag model supported for 1 <= n <= {MAX_FLAG_N}, got {n}"
        )
    perms = tuple(permutations_of(n))
    cells = [
        Cell(perm_name(w), 2 * inversion_count(w), "flag") for w in perms
    ]
    return BruhatCellSpace(n, CellSpace.build(cells), perms)


def schubert_subset(
    model: BruhatCellSpace, perm: tuple, closed: bool = True
) -> CellularSubset:
    """The cell of perm, or its closure in the Bruhat order."""
    perm = tuple(perm)
    if perm not in model.perms:
        raise DegenerateInputError(f"{perm} is not a permutation of the model")
    if closed:
        members = {perm_name(w) for w in model.perms if bruhat_leq(w, perm)}
    else:
        members = {perm_name(perm)}
    return CellularSubset.of(model.space, members)


def open_cell_complement(model: BruhatCellSpace, perm=None) -> CellularSubset:
    """Complement of one open cell; by default of the big cell.

    For the big cell this is the union of all proper closed cells, the
    boundary divisor the worked example traces against.
    """
    if perm is None:
        perm = longest_element(model.n)
    perm = tuple(perm)
    if perm not in model.perms:
        raise DegenerateInputError(f"{perm} is not a permutation of the model")
    members = {perm_name(w) for w in model.perms if w != perm}
    return CellularSubset.of(model.space, members)


# ---------------------------------------------------------------------------
# fixed loci of diagonal actions

def block_words(blocks: tuple) -> list:
    """Distinct arrangements of block labels, one per fixed component."""
    letters = []
    for label, size in enumerate(blocks):
        letters.extend([label] * size)
    return sorted(set(itertools.permutations(letters)))


def fixed_locus_cellspace(n: int, blocks) -> CellSpace:
    """Cell model of the fixed flags of a block-diagonal matrix.

    blocks are the eigenvalue multiplicities; each component is a product
    of flag manifolds of the block sizes and is labeled c0, c1, ... in the
    lexicographic order of its arrangement word.
    """
    blocks = tuple(int(b) for b in blocks)
    if any(b <= 0 for b in blocks) or sum(blocks) != n:
        raise DegenerateInputError(
            f"block sizes {blocks} do not partition {n}"
        )
    if not 1 <= n <= MAX_FLAG_N:
        raise DegenerateInputError(
            f"flag model supported for 1 <= n <= {MAX_FLAG_N}, got {n}"
        )
    words = block_words(blocks)
    cells = []
    for k, _word in enumerate(words):
        label = f"c{k}"
        factor_perms = [permutations_of(size) for size in blocks]
        for combo in itertools.product(*factor_perms):
            ident = label + ":" + "|".join(perm_name(w) for w in combo)
            dim = 2 * sum(inversion_count(w) for w in combo)
            cells.append(Cell(ident, dim, label))
    return CellSpace.build(cells)


# ---------------------------------------------------------------------------
# the worked example: Fl(C^3), eigenvalues (a, a, b)

FAMILY_NAMES = ("lines_in_plane", "lines_with_axis", "planes_with_axis")


@dataclass(frozen=True)
class FamilyPattern:
    """How one fixed sphere meets the big-cell complement."""

    label: str          # component label c0, c1, c2
    family: str         # geometric name of the sphere
    contained: bool     # the whole sphere lies in the divisor
    points: int         # number of intersection points when not contained

    def chi(self) -> int:
        return 2 if self.contained else self.points


def _poly_vec(entries) -> tuple:
    return tuple(
        e if isinstance(e, RationalPolynomial) else RationalPolynomial.constant(e)
        for e in entries
    )


def _det3(c0, c1, c2) -> RationalPolynomial:
    a, d, g = c0
    b, e, h = c1
    c, f, i = c2
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


_T = RationalPolynomial.of([0, 1])
_E1 = _poly_vec([1, 0, 0])


def _chart_conditions(line, plane_basis) -> tuple:
    """(line lies in the reference 2-plane, reference axis lies in the plane).

    The first condition is the vanishing of the line generator's last
    coordinate, the second the vanishing of det(e1 | p1 | p2); together
    they cut out the complement of the big cell.
    """
    q_axis = line[2]
    p1, p2 = plane_basis
    q_plane = _det3(_E1, p1, p2)
    return q_axis, q_plane


def _family_charts(family: str) -> tuple:
    """Finite chart (parameter t) and opposite chart (parameter s = 1/t)."""
    t = _T
    if family == "lines_in_plane":
        finite = (_poly_vec([1, t, 0]), (_poly_vec([1, 0, 0]), _poly_vec([0, 1, 0])))
        opposite = (_poly_vec([t, 1, 0]), (_poly_vec([1, 0, 0]), _poly_vec([0, 1, 0])))
    elif family == "lines_with_axis":
        finite = (_poly_vec([1, t, 0]), (_poly_vec([1, t, 0]), _poly_vec([0, 0, 1])))
        opposite = (_poly_vec([t, 1, 0]), (_poly_vec([t, 1, 0]), _poly_vec([0, 0, 1])))
    elif family == "planes_with_axis":
        finite = (_poly_vec([0, 0, 1]), (_poly_vec([1, t, 0]), _poly_vec([0, 0, 1])))
        opposite = (_poly_vec([0, 0, 1]), (_poly_vec([t, 1, 0]), _poly_vec([0, 0, 1])))
    else:
        raise DegenerateInputError(f"unknown family {family!r}")
    return finite, opposite


def _distinct_root_count(polys) -> int:
    """Distinct complex roots of the product of the nonzero polynomials."""
    product = RationalPolynomial.constant(1)
    for q in polys:
        if not q.is_zero():
            product = product * q
    return product.squarefree_part().degree


def derive_intersection_pattern() -> list:
    """Exact chart computation of how each fixed sphere meets the divisor.

    Each sphere carries two affine charts; a sphere is contained in the
    divisor exactly when one of the two cutting conditions vanishes
    identically, and otherwise meets it in the distinct roots of the
    product condition plus possibly the point at infinity.
    """
    patterns = []
    words = block_words((2, 1))
    family_of_word = {
        (0, 0, 1): "lines_in_plane",
        (0, 1, 0): "lines_with_axis",
        (1, 0, 0): "planes_with_axis",
    }
    for k, word in enumerate(words):
        family = family_of_word[word]
        (line_f, plane_f), (line_o, plane_o) = _family_charts(family)
        qa, qb = _chart_conditions(line_f, plane_f)
        ra, rb = _chart_conditions(line_o, plane_o)
        contained = False
        for q, r in ((qa, ra), (qb, rb)):
            if q.is_zero() or r.is_zero():
                if not (q.is_zero() and r.is_zero()):
                    raise DegenerateInputError(
                        "chart conditions disagree about containment"
                    )
                contained = True
        if contained:
            patterns.append(FamilyPattern(f"c{k}", family, True, 0))
            continue
        finite = _distinct_root_count([qa, qb])
        at_infinity = ra(Fraction(0)) == 0 or rb(Fraction(0)) == 0
        patterns.append(
            FamilyPattern(f"c{k}", family, False, finite + int(at_infinity))
        )
    return patterns


@dataclass(frozen=True, eq=False)
class CellTracedProblem:
    """Trace data on a cell space: support of the sheaf and normal maps."""

    space: CellSpace
    support: CellularSubset
    normal: dict          # component label -> RationalMatrix
    complex_model: bool

    def trace_function(self) -> ConstructibleFunction:
        return ConstructibleFunction.indicator(
            self.space, self.support.sorted_members()
        )


@dataclass(frozen=True, eq=False)
class Example39Problem:
    problem: CellTracedProblem
    patterns: tuple       # FamilyPattern per component, in label order
    ratio: Fraction       # surrogate for the eigenvalue ratio b/a

    def component_labels(self) -> list:
        return [p.label for p in self.patterns]

    def plane_family_label(self) -> str:
        """Component that is the closure of the vanishing-coordinates chart."""
        for p in self.patterns:
            if p.family == "lines_in_plane":
                return p.label
        raise DegenerateInputError("derivation lost the plane family")

    def contribution(self, label: str) -> GaussianRational:
        members = {
            c.ident for c in self.problem.space.cells if c.component == label
        }
        if not members:
            raise DegenerateInputError(f"unknown component label {label!r}")
        comp = CellularSubset.of(self.problem.space, members)
        return euler_integral(restrict(self.problem.trace_function(), comp))

    def contributions(self) -> list:
        return [(p.label, p.family, self.contribution(p.label)) for p in self.patterns]

    def total(self) -> GaussianRational:
        acc = GZERO
        for _, _, value in self.contributions():
            acc = acc + value
        return acc


def _component_cells(pattern: FamilyPattern) -> tuple:
    """Cell decomposition of one fixed sphere refining its divisor slice.

    A contained sphere keeps the point-plus-cell decomposition; a sphere
    met in k points gets k marked points, k-1 separating arcs, and one
    2-cell, so either way the sphere's Euler characteristic is 2.
    """
    label = pattern.label
    if pattern.contained:
        cells = (Cell(f"{label}:d0", 0, label), Cell(f"{label}:d2", 2, label))
        in_divisor = {c.ident for c in cells}
        return cells, in_divisor
    k = pattern.points
    if k <= 0:
        raise DegenerateInputError(
            f"component {label} misses the divisor; the example expects "
            "every fixed sphere to meet it"
        )
    cells = [Cell(f"{label}:v{j}", 0, label) for j in range(k)]
    cells += [Cell(f"{label}:a{j}", 1, label) for j in range(k - 1)]
    cells.append(Cell(f"{label}:d2", 2, label))
    in_divisor = {f"{label}:v{j}" for j in range(k)}
    return tuple(cells), in_divisor


def example_3_9(ratio=Fraction(2)) -> Example39Problem:
    """Fixed spheres of diag(a, a, b) on Fl(C^3) traced against the divisor.

    The intersection pattern is re-derived from the chart polynomials on
    every call; the normal data is the real shadow of scalar multiplication
    by the eigenvalue ratio on the two normal complex directions.
    """
    ratio = parse_rational(ratio)
    if ratio in (0, 1):
        raise DegenerateInputError(
            "eigenvalue ratio must differ from 0 and 1 for an isolated locus"
        )
    patterns = tuple(derive_intersection_pattern())
    all_cells = []
    support = set()
    normal = {}
    for pattern in patterns:
        cells, in_divisor = _component_cells(pattern)
        all_cells.extend(cells)
        support |= in_divisor
        normal[pattern.label] = RationalMatrix.identity(4).scale(ratio)
    space = CellSpace.build(all_cells)
    for pattern in patterns:
        members = {c.ident for c in all_cells if c.component == pattern.label}
        if chi_c(CellularSubset.of(space, members)) != 2:
            raise DegenerateInputError(
                f"component {pattern.label} does not assemble to a sphere"
            )
    problem = CellTracedProblem(
        space=space,
        support=CellularSubset.of(space, support),
        normal=normal,
        complex_model=True,
    )
    return Example39Problem(problem, patterns, ratio)
