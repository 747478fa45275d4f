"""Exact scalar, matrix, and polynomial arithmetic over Q and Q(i).

Everything downstream (boundary matrices, traces, eigenvalue predicates)
routes through this module; no floating point exists anywhere in the
package.  Rationals are plain fractions.Fraction; Gaussian rationals are a
thin frozen pair on top.  Eigenvalues are never materialized: spectral
predicates are answered through det(I - A) and Sturm counts on the
characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInputError, ParseError

Rat = Fraction

CHAR_POLY_MAX_DIM = 8


def parse_rational(value) -> Fraction:
    """Accept "p/q" / "p" strings or ints; reject floats (inexact)."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class GaussianRational:
    """Element of Q(i), kept exact; serialized as {"re": "p/q", "im": "p/q"}."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, dict):
            return GaussianRational(
                parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0))
            )
        return GaussianRational(parse_rational(value))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        imag = f"{format_rational(self.im)}i"
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else ""
        return f"{format_rational(self.re)}{sign}{imag}"


GZERO = GaussianRational()
GONE = GaussianRational(Fraction(1))


# ---------------------------------------------------------------------------
# dense rational matrices


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple      # tuple of tuples of Fraction
    cols: int = -1   # explicit width; -1 means infer (needed for 0-row shapes)

    def __post_init__(self):
        inferred = len(self.rows[0]) if self.rows else 0
        if self.cols == -1:
            object.__setattr__(self, "cols", inferred)
        elif self.rows and inferred != self.cols:
            raise DegenerateInputError(
                f"row width {inferred} disagrees with declared cols {self.cols}"
            )

    @staticmethod
    def of(rows) -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(parse_rational(x) for x in row) for row in rows)
        )

    @staticmethod
    def zeros(m: int, n: int) -> "RationalMatrix":
        zero = Fraction(0)
        return RationalMatrix(
            tuple(tuple(zero for _ in range(n)) for _ in range(m)), n
        )

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            ),
            n,
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self.cols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def transpose(self) -> "RationalMatrix":
        if not self.rows:
            return RationalMatrix(tuple(() for _ in range(self.ncols)), 0)
        return RationalMatrix(tuple(zip(*self.rows)), self.nrows)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
            self.ncols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
            self.ncols,
        )

    def scale(self, c) -> "RationalMatrix":
        c = parse_rational(c)
        return RationalMatrix(
            tuple(tuple(c * a for a in row) for row in self.rows), self.ncols
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise DegenerateInputError(
                f"matmul shape mismatch {self.nrows}x{self.ncols} @ "
                f"{other.nrows}x{other.ncols}"
            )
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return RationalMatrix.zeros(self.nrows, other.ncols)
        cols = other.transpose().rows
        return RationalMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            ),
            other.ncols,
        )

    def apply(self, vec: list) -> list:
        return [sum(a * b for a, b in zip(row, vec)) for row in self.rows]

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DegenerateInputError("trace needs a square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def to_json(self) -> list:
        return [[format_rational(x) for x in row] for row in self.rows]

    def det(self) -> Fraction:
        if not self.is_square():
            raise DegenerateInputError("det needs a square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        work = [list(row) for row in self.rows]
        sign = 1
        result = Fraction(1)
        for col in range(n):
            pivot_row = next(
                (r for r in range(col, n) if work[r][col] != 0), None
            )
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
                sign = -sign
            pivot = work[col][col]
            result *= pivot
            for r in range(col + 1, n):
                factor = work[r][col] / pivot
                if factor == 0:
                    continue
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return sign * result

    def rank(self) -> int:
        return len(row_echelon([list(r) for r in self.rows])[1])

    def char_poly(self) -> "RationalPolynomial":
        """Characteristic polynomial det(tI - A), monic, exact.

        Faddeev-LeVerrier recursion; the artifact bound keeps dimensions
        small enough that the O(n^4) cost is irrelevant.
        """
        if not self.is_square():
            raise DegenerateInputError("char_poly needs a square matrix")
        n = self.nrows
        if n > CHAR_POLY_MAX_DIM:
            raise DegenerateInputError(
                f"char_poly dimension {n} exceeds bound {CHAR_POLY_MAX_DIM}"
            )
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        m = RationalMatrix.identity(n)
        for k in range(1, n + 1):
            am = self @ m
            c = -am.trace() / k
            coeffs[n - k] = c
            m = am + RationalMatrix.identity(n).scale(c)
        return RationalPolynomial(tuple(coeffs))


def row_echelon(work: list) -> tuple:
    """In-place forward elimination; returns (work, pivot_columns).

    Deterministic: always the first nonzero entry of the current column.
    """
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot_row = next((r for r in range(row, nrows) if work[r][col] != 0), None)
        if pivot_row is None:
            continue
        work[row], work[pivot_row] = work[pivot_row], work[row]
        pivot = work[row][col]
        work[row] = [a / pivot for a in work[row]]
        for r in range(nrows):
            if r != row and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
    return work, pivots


def null_space(matrix: RationalMatrix) -> list:
    """Basis of {x : Ax = 0} as a list of Fraction column vectors."""
    n = matrix.ncols
    if n == 0:
        return []
    if matrix.nrows == 0:
        return [
            [Fraction(1 if i == j else 0) for i in range(n)] for j in range(n)
        ]
    work, pivots = row_echelon([list(r) for r in matrix.rows])
    pivot_set = set(pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row_idx, pcol in enumerate(pivots):
            vec[pcol] = -work[row_idx][free]
        basis.append(vec)
    return basis


def solve(matrix: RationalMatrix, rhs: list):
    """Solve Ax = b exactly.

    Returns (particular, null_basis) or None when inconsistent.
    """
    m, n = matrix.nrows, matrix.ncols
    aug = [list(row) + [parse_rational(b)] for row, b in zip(matrix.rows, rhs)]
    if m == 0:
        return [Fraction(0)] * n, null_space(matrix)
    work, pivots = row_echelon(aug)
    for row_idx in range(len(pivots), m):
        if work[row_idx][n] != 0:
            return None
    if pivots and pivots[-1] == n:
        return None
    particular = [Fraction(0)] * n
    for row_idx, pcol in enumerate(pivots):
        particular[pcol] = work[row_idx][n]
    return particular, null_space(matrix)


# ---------------------------------------------------------------------------
# univariate rational polynomials


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients lowest degree first, trailing zeros stripped."""

    coeffs: tuple

    @staticmethod
    def of(coeffs) -> "RationalPolynomial":
        cs = [parse_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return RationalPolynomial(tuple(cs))

    @staticmethod
    def constant(c) -> "RationalPolynomial":
        return RationalPolynomial.of([c])

    @staticmethod
    def x_minus(c) -> "RationalPolynomial":
        return RationalPolynomial.of([-parse_rational(c), 1])

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(
                self, "coeffs", RationalPolynomial.of(self.coeffs).coeffs
            )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero():
            raise DegenerateInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        x = parse_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPolynomial.of(
            [
                (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial.of(out)

    __rmul__ = __mul__

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial.of(
            [i * c for i, c in enumerate(self.coeffs)][1:]
        )

    def divmod(self, other: "RationalPolynomial") -> tuple:
        if other.is_zero():
            raise DegenerateInputError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.leading()
        dn = other.degree
        while len(rem) - 1 >= dn and rem:
            shift = len(rem) - 1 - dn
            factor = rem[-1] / dlead
            quo[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPolynomial.of(quo), RationalPolynomial.of(rem)

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.leading())

    def squarefree_part(self) -> "RationalPolynomial":
        if self.degree <= 0:
            return self
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(p: RationalPolynomial) -> list:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        rem = chain[-2].divmod(chain[-1])[1]
        chain.append(-rem)
    chain.pop()
    return chain


def _variations(signs: list) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def count_real_roots_gt(p: RationalPolynomial, c) -> int:
    """Distinct real roots of squarefree p in the open interval (c, +oo);
    requires p(c) != 0."""
    c = parse_rational(c)
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p)
    at_c = [_sign(q(c)) for q in chain]
    at_inf = [_sign(q.leading()) for q in chain]
    return _variations(at_c) - _variations(at_inf)


def count_real_roots_geq(p: RationalPolynomial, c) -> int:
    """Number of distinct real roots of p in [c, +oo), multiplicity ignored."""
    if p.is_zero():
        raise DegenerateInputError("root counting on the zero polynomial")
    c = parse_rational(c)
    sf = p.squarefree_part()
    if sf.degree <= 0:
        return 0
    if sf(c) == 0:
        reduced = sf.divmod(RationalPolynomial.x_minus(c))[0]
        return 1 + count_real_roots_gt(reduced, c)
    return count_real_roots_gt(sf, c)


# ---------------------------------------------------------------------------
# exact linear feasibility (phase-1 simplex, Bland's rule)


def has_nonneg_solution(rows: list, rhs: list) -> bool:
    """Exact feasibility of {A t = b, t >= 0} over the rationals.

    Bland's pivoting rule guarantees termination; everything stays in
    Fraction so the verdict is exact.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return True
    table = []
    for row, b in zip(rows, rhs):
        row = [parse_rational(x) for x in row]
        b = parse_rational(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        table.append(row + [Fraction(0)] * m + [b])
    for i in range(m):
        table[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    total_cols = n + m

    def reduced_cost(j: int) -> Fraction:
        cost_j = Fraction(1 if j >= n else 0)
        return sum(
            (table[i][j] for i in range(m) if basis[i] >= n), Fraction(0)
        ) - cost_j

    while True:
        entering = next(
            (j for j in range(total_cols) if reduced_cost(j) > 0), None
        )
        if entering is None:
            break
        candidates = [
            (table[i][-1] / table[i][entering], basis[i], i)
            for i in range(m)
            if table[i][entering] > 0
        ]
        if not candidates:
            break  # phase-1 objective is bounded; defensive only
        _, _, leave = min(candidates)
        pivot = table[leave][entering]
        table[leave] = [x / pivot for x in table[leave]]
        for i in range(m):
            if i != leave and table[i][entering] != 0:
                factor = table[i][entering]
                table[i] = [
                    a - factor * b for a, b in zip(table[i], table[leave])
                ]
        basis[leave] = entering
    residual = sum(
        (table[i][-1] for i in range(m) if basis[i] >= n), Fraction(0)
    )
    return residual == 0
