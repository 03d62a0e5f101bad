"""Continuation attached to a face: lifted configurations and transverse slices.

For a generating index set I, the face f of the partition polytope is cut out
by x_i = 0 for i outside I. Slices parallel to f are indexed by y = x_{I^c};
adding the coordinates y to the parameter gives the lifted configuration
whose continuation counts the slices.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .configuration import (
    Configuration,
    Tope,
    generating_subsets,
    generating_subsets_of_tope,
    indices_of,
    is_regular,
    mask_of,
    popcount,
    tope_of,
)
from .continuation import _require_integral, brute_force_count, discrete_sum, fit_quasipolynomial, period
from .errors import DimensionMismatch, NonSimpleFace, NotGenerating, PointOffSlice
from .lp import LinearSystem, feasible_strict
from .quadrant import bg_polynomial, geom_eval


@dataclass(frozen=True)
class LiftedConfiguration:
    base: Configuration
    face_set: int
    lifted: Configuration

    @property
    def transverse(self) -> list:
        """1-based indices outside the face set, in the order of the extra coordinates."""
        return [i for i in range(1, self.base.n + 1) if not self.face_set >> (i - 1) & 1]


def lift(cfg: Configuration, face_set: int) -> LiftedConfiguration:
    if face_set not in generating_subsets(cfg):
        raise NotGenerating(f"{indices_of(face_set)} does not span the space")
    outside = [i for i in range(1, cfg.n + 1) if not face_set >> (i - 1) & 1]
    vectors = []
    for i, v in enumerate(cfg.phi, start=1):
        extra = [Fraction(int(i == j)) for j in outside]
        vectors.append(tuple(v) + tuple(extra))
    return LiftedConfiguration(cfg, face_set, Configuration(vectors))


def face_configuration(cfg: Configuration, face_set: int) -> tuple:
    """(Phi_I, indices): the sub-configuration on I and the base index of each member."""
    idx = indices_of(face_set)
    return Configuration([cfg.phi[i - 1] for i in idx]), idx


def lifted_tope(lc: LiftedConfiguration, tope: Tope) -> Tope:
    """The lifted tope: y > 0 and lam - sum y_i phi_i inside the tope of Phi_I through tope."""
    base = lc.base
    lam0 = tope.representative
    if lam0 is None:
        raise ValueError("tope needs a representative")
    delta = Fraction(1)
    while True:
        # lam0 stays in the tope of Phi_I; keep shrinking until the point is regular
        y = [delta] * len(lc.transverse)
        lam = list(lam0)
        for i, yi in zip(lc.transverse, y):
            for k in range(base.r):
                lam[k] += yi * base.phi[i - 1][k]
        point = tuple(lam) + tuple(y)
        if is_regular(lc.lifted, point):
            return tope_of(lc.lifted, point)
        delta /= 2


def lifted_generating_expected(cfg: Configuration, tope: Tope, face_set: int) -> set:
    """{K cup I^c : K in G(Phi_I, tope)} in base numbering."""
    sub, idx = face_configuration(cfg, face_set)
    outside = cfg.full_mask & ~face_set
    sub_tope = tope_of(sub, tope.representative)
    out = set()
    for k in generating_subsets_of_tope(sub, sub_tope):
        out.add(mask_of(idx[j - 1] for j in indices_of(k)) | outside)
    return out


def _check_simple_face(cfg: Configuration, face_set: int, lam) -> None:
    idx = indices_of(face_set)
    system = LinearSystem(len(idx))
    cols = cfg.columns(idx)
    for k in range(cfg.r):
        system.add(cols[k], "=", lam[k])
    for j in range(len(idx)):
        system.add([int(j == t) for t in range(len(idx))], ">", 0)
    if feasible_strict(system) is None:
        raise NonSimpleFace("the face has dimension below |I| - r")


def _prepare(cfg: Configuration, tope: Tope, face_set: int, lam, y):
    lam = exact.vector(lam)
    y = exact.vector(y)
    lc = lift(cfg, face_set)
    if len(y) != len(lc.transverse):
        raise DimensionMismatch(f"slice point needs {len(lc.transverse)} coordinates")
    if face_set not in generating_subsets_of_tope(cfg, tope):
        raise NotGenerating("the face set is not generating for this tope")
    _check_simple_face(cfg, face_set, lam)
    return lc, lam, y


def slice_value(cfg: Configuration, tope: Tope, face_set: int, lam, y, x) -> int:
    """Value at x of the lifted continuation on the slice through y."""
    lc, lam, y = _prepare(cfg, tope, face_set, lam, y)
    x = exact.vector(x)
    if len(x) != cfg.n:
        raise DimensionMismatch(f"point must have length {cfg.n}")
    if cfg.apply(x) != lam or any(x[i - 1] != yi for i, yi in zip(lc.transverse, y)):
        raise PointOffSlice("point is not on the slice")
    if any(v < 0 for v in y):
        return 0
    return geom_eval(bg_polynomial(lc.lifted, lifted_tope(lc, tope)), x)


def slice_count(cfg: Configuration, tope: Tope, face_set: int, lam, y) -> int:
    """Signed lattice count of the lifted continuation at (lam, y)."""
    lc, lam, y = _prepare(cfg, tope, face_set, lam, y)
    if any(v < 0 for v in y):
        return 0
    return int(discrete_sum(lc.lifted, lifted_tope(lc, tope), None, tuple(lam) + tuple(y)))


def direct_slice_count(cfg: Configuration, face_set: int, lam, y) -> int:
    """Lattice points of the polytope with x_{I^c} = y, counted without the lift."""
    lam = _require_integral(cfg, lam)
    y = exact.vector(y)
    if not exact.is_integral(y) or any(v < 0 for v in y):
        return 0
    outside = [i for i in range(1, cfg.n + 1) if not face_set >> (i - 1) & 1]
    rest = list(lam)
    for i, yi in zip(outside, y):
        for k in range(cfg.r):
            rest[k] -= yi * cfg.phi[i - 1][k]
    sub, _ = face_configuration(cfg, face_set)
    return brute_force_count(sub, rest)


def transverse_quasipoly_fit(cfg: Configuration, tope: Tope, face_set: int, lam, *, strict: bool = False):
    """Fit y -> slice_count on the nonnegative grid of step D, D from the lifted configuration."""
    lc = lift(cfg, face_set)
    degree = popcount(face_set) - cfg.r
    step = period(lc.lifted)
    base = (0,) * len(lc.transverse)
    return fit_quasipolynomial(lambda y: slice_count(cfg, tope, face_set, lam, y), base, step, degree, strict=strict)

