"""Lattice sums, integrals and toric multiplicities of the continued polytope."""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, lcm

from . import exact
from .configuration import (
    Configuration,
    Tope,
    basic_subsets,
    basic_subsets_of_tope,
    crossing_set,
    edge_generators,
    flip,
    indices_of,
    is_flip_salient,
    popcount,
    tope_of,
    vertex,
)
from .errors import DimensionMismatch, InterpolationMismatch, IrregularXi, NonIntegral, NotRegular, NotSalient
from .quadrant import bg_polynomial, geom_eval

log = logging.getLogger(__name__)


class WeightPolynomial:
    """A polynomial h on R^N given as (coefficient, exponent tuple) pairs."""

    def __init__(self, n: int, monomials=()):
        self.n = n
        self.monomials = []
        for c, exps in monomials:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise DimensionMismatch(f"exponent list {exps} does not fit N={n}")
            self.monomials.append((exact.rational(c), exps))

    @classmethod
    def one(cls, n: int):
        return cls(n, [(1, (0,) * n)])

    @classmethod
    def coordinate_product(cls, n: int, indices):
        """prod of x_i over the given 1-based indices."""
        exps = [0] * n
        for i in indices:
            exps[i - 1] += 1
        return cls(n, [(1, exps)])

    @property
    def degree(self) -> int:
        return max((sum(e) for c, e in self.monomials if c), default=0)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for _, e in self.monomials)

    def constant_value(self) -> Fraction:
        return sum((c for c, e in self.monomials if sum(e) == 0), Fraction(0))

    def __call__(self, x) -> Fraction:
        total = Fraction(0)
        for c, exps in self.monomials:
            term = c
            for v, e in zip(x, exps):
                if e:
                    term *= Fraction(v) ** e
            total += term
        return total


def _require_integral(cfg: Configuration, lam) -> tuple:
    if not cfg.integral:
        raise NonIntegral("lattice operations need integral vectors")
    lam = exact.vector(lam)
    if len(lam) != cfg.r:
        raise DimensionMismatch(f"expected a vector of length {cfg.r}")
    if not exact.is_integral(lam):
        raise NonIntegral("lattice operations need an integral parameter")
    return tuple(int(v) for v in lam)


@lru_cache(maxsize=None)
def _inverses(cfg: Configuration) -> dict:
    return {m: exact.inverse(cfg.columns(indices_of(m))) for m in basic_subsets(cfg)}


@lru_cache(maxsize=None)
def _enumeration_frame(cfg: Configuration):
    """Pivot basis K0, its complement and the integer data for solving x_K0."""
    k0 = basic_subsets(cfg)[0]
    pivot = indices_of(k0)
    free = [j for j in range(1, cfg.n + 1) if j not in pivot]
    det = exact.determinant(cfg.columns(pivot))
    scale = abs(int(det))
    inv = _inverses(cfg)[k0]
    q = [[int(v * scale) for v in row] for row in inv]
    cols = {j: tuple(sum(q[k][t] * int(cfg.phi[j - 1][t]) for t in range(cfg.r)) for k in range(cfg.r)) for j in free}
    return pivot, free, scale, q, cols


def _coordinate_bounds(cfg: Configuration, lam) -> list:
    """Upper bounds of each coordinate over {x >= 0, M x = lam}, or None if empty."""
    best = None
    for mask, inv in _inverses(cfg).items():
        coords = exact.mat_vec(inv, lam)
        if any(v < 0 for v in coords):
            continue
        point = [Fraction(0)] * cfg.n
        for i, v in zip(indices_of(mask), coords):
            point[i - 1] = v
        best = point if best is None else [max(a, b) for a, b in zip(best, point)]
    if best is None:
        return None
    return [v.numerator // v.denominator for v in best]


def _closed_scan(cfg: Configuration, lam: tuple, emit):
    """Scan {x in Z^N : x >= 0, M x = lam}.

    The free coordinates outside a basic set K0 range over bounds taken from
    the feasible basic points; the last one is handled as an interval with a
    congruence so only candidate points are visited. Each innermost run goes
    to ``emit(prefix, num, step, lo, hi, scale)``: the pivot coordinates are
    (num - t * step) / scale for the last free coordinate t in [lo, hi].
    """
    bounds = _coordinate_bounds(cfg, lam)
    if bounds is None:
        return
    pivot, free, scale, q, cols = _enumeration_frame(cfg)
    base = [sum(q[k][t] * lam[t] for t in range(cfg.r)) for k in range(cfg.r)]
    if not free:
        emit((), base, None, 0, 0, scale)
        return
    outer, last = free[:-1], free[-1]
    a = cols[last]
    for prefix in product(*(range(bounds[j - 1] + 1) for j in outer)):
        num = list(base)
        for j, v in zip(outer, prefix):
            c = cols[j]
            for k in range(cfg.r):
                num[k] -= v * c[k]
        # need num_k - a_k t >= 0 for every k, and 0 <= t <= bound
        lo, hi = 0, bounds[last - 1]
        for nk, ak in zip(num, a):
            if ak > 0:
                hi = min(hi, nk // ak)
            elif ak < 0:
                lo = max(lo, -(nk // -ak))
            elif nk < 0:
                hi = -1
        if lo > hi:
            continue
        emit(prefix, num, a, lo, hi, scale)


def _residues(num, a, scale) -> list:
    return [t for t in range(scale) if all((nk - ak * t) % scale == 0 for nk, ak in zip(num, a))]


def _closed_points(cfg: Configuration, lam: tuple) -> list:
    pivot, free, _, _, _ = _enumeration_frame(cfg)
    out = []

    def emit(prefix, num, a, lo, hi, scale):
        if a is None:
            if all(v % scale == 0 and v >= 0 for v in num):
                x = [0] * cfg.n
                for i, v in zip(pivot, num):
                    x[i - 1] = v // scale
                out.append(tuple(x))
            return
        for res in _residues(num, a, scale):
            start = lo + (res - lo) % scale
            for t in range(start, hi + 1, scale):
                x = [0] * cfg.n
                for j, v in zip(free, prefix + (t,)):
                    x[j - 1] = v
                for i, nk, ak in zip(pivot, num, a):
                    x[i - 1] = (nk - ak * t) // scale
                out.append(tuple(x))

    _closed_scan(cfg, lam, emit)
    return out


def _closed_count(cfg: Configuration, lam: tuple) -> int:
    total = 0

    def emit(prefix, num, a, lo, hi, scale):
        nonlocal total
        if a is None:
            total += all(v % scale == 0 and v >= 0 for v in num)
            return
        for res in _residues(num, a, scale):
            start = lo + (res - lo) % scale
            if start <= hi:
                total += (hi - start) // scale + 1

    _closed_scan(cfg, lam, emit)
    return total


def _in_lattice(cfg: Configuration, lam: tuple) -> bool:
    return exact.particular_integer_solution([[int(v) for v in row] for row in cfg.matrix], lam) is not None


def _flip_shift(cfg: Configuration, mask: int, lam: tuple) -> tuple:
    # x_i < 0 on B becomes y_i = -x_i - 1 >= 0 for the flipped vectors
    out = list(lam)
    for i in indices_of(mask):
        for k in range(cfg.r):
            out[k] += int(cfg.phi[i - 1][k])
    return tuple(out)


def _prepare_flip(cfg, mask, lam):
    lam = _require_integral(cfg, lam)
    if not is_flip_salient(cfg, mask):
        raise NotSalient(f"flip by {indices_of(mask)} has a non-salient cone")
    if not _in_lattice(cfg, lam):
        log.debug("parameter %s is outside the lattice spanned by the vectors", lam)
        return None, None
    return flip(cfg, mask), _flip_shift(cfg, mask, lam)


def lattice_points_flip_polytope(cfg: Configuration, mask: int, lam) -> list:
    """Integral x with M x = lam, x_i < 0 for i in mask and x_i >= 0 otherwise."""
    flipped, shifted = _prepare_flip(cfg, mask, lam)
    if flipped is None:
        return []
    out = []
    for y in _closed_points(flipped, shifted):
        out.append(tuple(-v - 1 if mask >> i & 1 else v for i, v in enumerate(y)))
    return sorted(out)


def count_flip_polytope(cfg: Configuration, mask: int, lam) -> int:
    flipped, shifted = _prepare_flip(cfg, mask, lam)
    if flipped is None:
        return 0
    return _closed_count(flipped, shifted)


def signed_support(cfg: Configuration, tope: Tope, lam) -> list:
    """(point, multiplicity) pairs of the continued polytope at lam."""
    values = {}
    for mask, z in bg_polynomial(cfg, tope).items():
        for x in lattice_points_flip_polytope(cfg, mask, lam):
            values[x] = values.get(x, 0) + z
    return sorted((x, v) for x, v in values.items() if v)


def discrete_sum(cfg: Configuration, tope: Tope, h, lam) -> Fraction:
    """Sum of h over the lattice points of the continued polytope, with multiplicity."""
    if h is None or h.is_constant():
        c = Fraction(1) if h is None else h.constant_value()
        total = sum(z * count_flip_polytope(cfg, mask, lam) for mask, z in bg_polynomial(cfg, tope).items())
        return c * total
    return sum((v * h(x) for x, v in signed_support(cfg, tope, lam)), Fraction(0))


def brute_force_count(cfg: Configuration, lam) -> int:
    """Number of lattice points of {x >= 0, M x = lam}, without the quadrant algebra."""
    lam = _require_integral(cfg, lam)
    if not _in_lattice(cfg, lam):
        return 0
    return _closed_count(cfg, lam)


def partition_polytope_points(cfg: Configuration, lam) -> list:
    lam = _require_integral(cfg, lam)
    if not _in_lattice(cfg, lam):
        return []
    return sorted(_closed_points(cfg, lam))


@lru_cache(maxsize=None)
def measure_constant(cfg: Configuration, mask: int) -> Fraction:
    """Volume of the parallelepiped of the edge generators at the basic set mask,
    for the measure on V giving the lattice V cap Z^N covolume 1.

    Projection to the coordinates outside mask sends the edge generators to
    the unit vectors and the lattice to one of covolume |det L_{K^c}|.
    """
    rest = [j - 1 for j in range(1, cfg.n + 1) if not mask >> (j - 1) & 1]
    if not rest:
        return Fraction(1)
    rows = [[v[j] for v in cfg.kernel_integer] for j in rest]
    return 1 / abs(exact.determinant(rows))


def volume_integral(cfg: Configuration, tope: Tope, degree: int, xi, lam) -> Fraction:
    """Integral of <xi, x>^degree / degree! over the continued polytope at lam.

    Brion's vertex sum, homogeneous part of degree ``degree``; with degree 0
    this is the volume.
    """
    xi = exact.vector(getattr(xi, "xi", xi))
    lam = exact.vector(lam)
    if len(xi) != cfg.n:
        raise DimensionMismatch(f"covector must have length {cfg.n}")
    power = degree + cfg.d
    total = Fraction(0)
    for mask in basic_subsets_of_tope(cfg, tope):
        denom = Fraction(1)
        for g in edge_generators(cfg, mask).generators.values():
            v = exact.dot(xi, g)
            if v == 0:
                raise IrregularXi("covector vanishes on an edge generator")
            denom *= -v
        s = vertex(cfg, mask, lam)
        total += exact.dot(xi, s) ** power / factorial(power) * measure_constant(cfg, mask) / denom
    return total


def random_regular_xi(cfg: Configuration, tope: Tope, seed: int = 0) -> tuple:
    """A random integer covector nonzero on every edge generator of the tope's vertex cones."""
    rng = random.Random(seed)
    gens = [g for mask in basic_subsets_of_tope(cfg, tope) for g in edge_generators(cfg, mask).generators.values()]
    attempt = 0
    while True:
        bound = 8 << (attempt // 16)
        xi = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(cfg.n))
        if all(exact.dot(xi, g) != 0 for g in gens):
            return xi
        attempt += 1


def period(cfg: Configuration) -> int:
    """lcm of |det| over basic subsets."""
    return lcm(*(abs(int(exact.determinant(cfg.columns(indices_of(m))))) for m in basic_subsets(cfg)))


@dataclass
class QuasiPolyFit:
    period: int
    base: tuple
    degree: int
    coefficients: dict = field(default_factory=dict)
    holdout_verified: bool = False
    samples: int = 0
    holdout: int = 0

    def local(self, lam) -> tuple:
        t = [Fraction(v - b, self.period) for v, b in zip(exact.vector(lam), self.base)]
        if not exact.is_integral(t):
            raise ValueError("point is outside the fitted coset")
        return tuple(int(v) for v in t)

    def __call__(self, lam) -> Fraction:
        t = self.local(lam)
        total = Fraction(0)
        for exps, c in self.coefficients.items():
            term = c
            for v, e in zip(t, exps):
                term *= v ** e
            total += term
        return total


def _exponents(nvars: int, degree: int) -> list:
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    return sorted(out, key=lambda e: (sum(e), e))


def fit_quasipolynomial(func, base, step: int, degree: int, *, strict: bool = False) -> QuasiPolyFit:
    """Interpolate func on base + step * {|alpha| <= degree}, then test on the
    two next layers |alpha| = degree + 1, degree + 2."""
    base = tuple(exact.vector(base))
    nvars = len(base)
    monos = _exponents(nvars, degree)

    def at(alpha):
        return tuple(b + step * a for b, a in zip(base, alpha))

    rows = [[Fraction(1) * _mono(alpha, e) for e in monos] for alpha in monos]
    rhs = [Fraction(func(at(alpha))) for alpha in monos]
    coeffs = exact.solve_unique(rows, rhs)
    fit = QuasiPolyFit(step, base, degree, {e: c for e, c in zip(monos, coeffs) if c}, samples=len(monos))
    held = [e for e in product(range(degree + 3), repeat=nvars) if degree < sum(e) <= degree + 2]
    fit.holdout = len(held)
    fit.holdout_verified = all(fit(at(alpha)) == Fraction(func(at(alpha))) for alpha in held)
    if strict and not fit.holdout_verified:
        raise InterpolationMismatch("held-out values disagree with the interpolant")
    return fit


def _mono(alpha, exps) -> int:
    out = 1
    for a, e in zip(alpha, exps):
        out *= a ** e
    return out


def quasipoly_fit(cfg: Configuration, tope: Tope, h, base, *, strict: bool = False) -> QuasiPolyFit:
    """Fit the signed lattice sum on the coset base + D Z^r, D the lcm of basic determinants."""
    _require_integral(cfg, base)
    degree = cfg.d + (0 if h is None else h.degree)
    return fit_quasipolynomial(lambda lam: discrete_sum(cfg, tope, h, lam), base, period(cfg), degree, strict=strict)


def wallcross_count_check(cfg: Configuration, t1: Tope, t2: Tope, h, lam) -> tuple:
    """(lhs, rhs): continued sum for t1 at lam in t2, and the two direct sums."""
    lam_t = tope_of(cfg, lam)
    if lam_t.signs != t2.signs:
        raise NotRegular("lam must lie inside the second tope")
    h = h or WeightPolynomial.one(cfg.n)
    a = crossing_set(cfg, t1, t2)
    lhs = discrete_sum(cfg, t1, h, lam)
    closed = sum((h(x) for x in partition_polytope_points(cfg, lam)), Fraction(0))
    flipped = sum((h(x) for x in lattice_points_flip_polytope(cfg, a, lam)), Fraction(0))
    rhs = closed - (-1) ** popcount(a) * flipped
    return lhs, rhs


def toric_multiplicity(cfg: Configuration, tope: Tope, m) -> int:
    """Multiplicity of the character m: the coefficient of w_{B_m}, B_m = {m_i < 0}."""
    m = exact.vector(m)
    if len(m) != cfg.n:
        raise DimensionMismatch(f"character must have length {cfg.n}")
    return geom_eval(bg_polynomial(cfg, tope), m)


def virtual_dimension(cfg: Configuration, tope: Tope, lam) -> int:
    return int(discrete_sum(cfg, tope, None, lam))


def sweep(cfg: Configuration, tope: Tope, start, end, steps: int, xi=None) -> list:
    """Rows (lam, count, signed sum, volume) at steps + 1 evenly spaced points."""
    start, end = exact.vector(start), exact.vector(end)
    rows = []
    for k in range(steps + 1):
        lam = tuple(a + (b - a) * Fraction(k, steps) for a, b in zip(start, end))
        integral = exact.is_integral(lam)
        count = brute_force_count(cfg, lam) if integral else 0
        signed = discrete_sum(cfg, tope, None, lam) if integral else 0
        vol = volume_integral(cfg, tope, 0, xi, lam) if xi is not None else None
        rows.append((lam, count, signed, vol))
    return rows
