"""Exact rational and integer linear algebra.

Matrices are lists of rows. Entries are ``fractions.Fraction`` or ``int``;
every function returns fresh lists and never mutates its arguments.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionMismatch, ParseError, SingularMatrix


def rational(value) -> Fraction:
    """Parse ``"n"``, ``"n/d"``, an int or a Fraction into a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ParseError(f"not a rational: {value!r}") from None
        if d == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(n, d)
    raise ParseError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vector(values) -> tuple:
    return tuple(rational(v) for v in values)


def matrix(rows) -> list:
    rows = [[rational(v) for v in row] for row in rows]
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise DimensionMismatch("ragged matrix")
    return rows


def shape(m) -> tuple:
    return (len(m), len(m[0]) if m else 0)


def transpose(m) -> list:
    return [list(col) for col in zip(*m)]


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m, v) -> tuple:
    return tuple(dot(row, v) for row in m)


def is_integral(values) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def _integer_rows(m) -> list:
    # scaling a row by a positive constant changes neither rank nor kernel
    out = []
    for row in m:
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * den) for v in row])
    return out


def _bareiss(rows):
    """Fraction-free elimination in place; returns (rank, sign, last pivot)."""
    a = rows
    nrows, ncols = shape(a)
    prev = 1
    sign = 1
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
            sign = -sign
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            for j in range(col + 1, ncols):
                a[i][j] = (p * a[i][j] - f * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
    return rank, sign, prev


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    return _bareiss(_integer_rows(m))[0]


def determinant(m) -> Fraction:
    nrows, ncols = shape(m)
    if nrows != ncols:
        raise DimensionMismatch(f"determinant of a {nrows}x{ncols} matrix")
    if nrows == 0:
        return Fraction(1)
    scale = Fraction(1)
    for row in m:
        scale *= lcm(*(Fraction(v).denominator for v in row))
    rows = _integer_rows(m)
    r, sign, last = _bareiss(rows)
    if r < nrows:
        return Fraction(0)
    return Fraction(sign * last) / scale


def _rref(m):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(v) for v in row] for row in m]
    nrows, ncols = shape(a)
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][col]
        a[r] = [v / p for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return a, pivots


def solve_unique(m, b) -> tuple:
    """Solve the square nonsingular system m x = b exactly."""
    n, ncols = shape(m)
    if n != ncols:
        raise DimensionMismatch("solve_unique needs a square matrix")
    if len(b) != n:
        raise DimensionMismatch("right-hand side has the wrong length")
    aug = [list(row) + [Fraction(v)] for row, v in zip(m, b)]
    a, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrix("matrix is singular")
    return tuple(a[i][n] for i in range(n))


def inverse(m) -> list:
    n, ncols = shape(m)
    if n != ncols:
        raise DimensionMismatch("inverse needs a square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    a, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in a]


def kernel_basis(m) -> list:
    """Rational basis of {x : m x = 0}, one vector per free column."""
    ncols = shape(m)[1]
    if not m:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    a, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def extended_gcd(a: int, b: int) -> tuple:
    """Return (g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m) -> tuple:
    """Column Hermite normal form: returns (H, U) with H = m U and U unimodular.

    H is in column echelon form with positive pivots; entries to the left of a
    pivot are reduced into [0, pivot). Columns past the last pivot are zero.
    """
    if any(not is_integral(row) for row in m):
        raise DimensionMismatch("hermite_normal_form needs an integer matrix")
    h = [[int(v) for v in row] for row in m]
    nrows, ncols = shape(h)
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(target, src, factor):
        # column target += factor * column src
        for row in h:
            row[target] += factor * row[src]
        for row in u:
            row[target] += factor * row[src]

    def combine(i, j, row):
        # replace columns (i, j) by a unimodular combination zeroing h[row][j]
        a, b = h[row][i], h[row][j]
        g, x, y = extended_gcd(a, b)
        p, q = a // g, b // g
        for mat in (h, u):
            for r in mat:
                ci, cj = r[i], r[j]
                r[i] = x * ci + y * cj
                r[j] = -q * ci + p * cj

    k = 0
    for row in range(nrows):
        if k == ncols:
            break
        for j in range(k + 1, ncols):
            if h[row][j] != 0:
                combine(k, j, row)
        if h[row][k] == 0:
            continue
        if h[row][k] < 0:
            for mat in (h, u):
                for r in mat:
                    r[k] = -r[k]
        piv = h[row][k]
        for j in range(k):
            col_op(j, k, -(h[row][j] // piv))
        k += 1
    return h, u


def _as_integer_matrix(m) -> list:
    return _integer_rows(m)


def integer_kernel_basis(m) -> list:
    """Basis of the lattice {x in Z^n : m x = 0}.

    Rational rows are first cleared of denominators, which leaves the kernel
    unchanged.
    """
    ncols = shape(m)[1]
    if not m:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    h, u = hermite_normal_form(_as_integer_matrix(m))
    zero_cols = [j for j in range(ncols) if all(row[j] == 0 for row in h)]
    basis = []
    for j in zero_cols:
        v = tuple(u[i][j] for i in range(ncols))
        lead = next(x for x in v if x != 0)
        basis.append(v if lead > 0 else tuple(-x for x in v))
    return basis


def particular_integer_solution(m, b):
    """Some x in Z^n with m x = b, or None when b is not in the column lattice."""
    if any(not is_integral(row) for row in m) or not is_integral(b):
        raise DimensionMismatch("particular_integer_solution needs integer data")
    nrows, ncols = shape(m)
    if len(b) != nrows:
        raise DimensionMismatch("right-hand side has the wrong length")
    h, u = hermite_normal_form(m)
    y = [0] * ncols
    col = 0
    for row in range(nrows):
        rest = int(b[row]) - sum(h[row][j] * y[j] for j in range(col))
        if col < ncols and h[row][col] != 0:
            q, rem = divmod(rest, h[row][col])
            if rem:
                return None
            y[col] = q
            col += 1
        elif rest != 0:
            return None
    return tuple(sum(u[i][j] * y[j] for j in range(ncols)) for i in range(ncols))


def primitive_integer(v) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector, same direction."""
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in ints)
