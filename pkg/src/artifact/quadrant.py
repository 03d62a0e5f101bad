"""Signed sums of semi-open quadrants and the Brianchon-Gram polynomial.

A monomial w_B = prod_{i not in B} p_i prod_{i in B} q_i is stored by its
mask B; p_i stands for [x_i >= 0] and q_i for [x_i < 0].
"""

import re
from dataclasses import dataclass

from . import exact
from .configuration import (
    Configuration,
    Tope,
    adjacent,
    basic_subsets_of_tope,
    crossing_set,
    edge_generators,
    enumerate_topes,
    flip,
    generating_subsets_of_tope,
    indices_of,
    is_flip_salient,
    mask_of,
    popcount,
    sign,
    submasks,
    tope_of,
    tope_path,
    wall_signs,
)
from .errors import InvalidPath, NotAdjacent, ParseError


class WPolynomial:
    """Integer combination of the monomials w_B in n variable pairs."""

    def __init__(self, n: int, coefficients=None):
        self.n = n
        self.coefficients = {b: int(c) for b, c in (coefficients or {}).items() if c != 0}

    def coefficient(self, mask: int) -> int:
        return self.coefficients.get(mask, 0)

    def items(self):
        return sorted(self.coefficients.items())

    def __eq__(self, other):
        return isinstance(other, WPolynomial) and self.n == other.n and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.n, tuple(self.items())))

    def __add__(self, other):
        out = dict(self.coefficients)
        for b, c in other.coefficients.items():
            out[b] = out.get(b, 0) + c
        return WPolynomial(self.n, out)

    def __neg__(self):
        return WPolynomial(self.n, {b: -c for b, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return WPolynomial(self.n, {b: k * c for b, c in self.coefficients.items()})

    def __bool__(self):
        return bool(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def monomial(self, mask: int) -> str:
        return "".join(f"q{i}" if mask >> (i - 1) & 1 else f"p{i}" for i in range(1, self.n + 1))

    def to_text(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for b, c in self.items():
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{'+' if c > 0 else '-'}{mag}{self.monomial(b)}")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"WPolynomial({self.n}, {self.to_text()!r})"

    @classmethod
    def from_text(cls, text: str, n: int):
        """Parse the canonical text form; variables may appear in any order."""
        text = text.strip()
        if text == "0":
            return cls(n)
        out = {}
        for token in text.split():
            m = re.fullmatch(r"([+-])(\d*)((?:[pq]\d+)+)", token)
            if not m:
                raise ParseError(f"bad monomial {token!r}")
            c = int(m.group(2) or 1) * (1 if m.group(1) == "+" else -1)
            seen = set()
            mask = 0
            for kind, idx in re.findall(r"([pq])(\d+)", m.group(3)):
                i = int(idx)
                if not 1 <= i <= n or i in seen:
                    raise ParseError(f"bad variable index in {token!r}")
                seen.add(i)
                if kind == "q":
                    mask |= 1 << (i - 1)
            if len(seen) != n:
                raise ParseError(f"monomial {token!r} does not mention all {n} indices")
            out[mask] = out.get(mask, 0) + c
        return cls(n, out)


@dataclass(frozen=True)
class PolarizationSplit:
    basic_set: int
    positive: int
    negative: int


def _superset_sums(values: list, n: int) -> list:
    # z[B] = sum over I containing B of values[I]
    z = list(values)
    for bit in range(n):
        step = 1 << bit
        for m in range(len(z)):
            if not m & step:
                z[m] += z[m | step]
    return z


def bg_polynomial(cfg: Configuration, tope: Tope) -> WPolynomial:
    """X(Phi, tau) = sum over I in G(Phi, tau) of (-1)^(|I|-r) prod_{I^c} p prod_I (p + q)."""
    values = [0] * (1 << cfg.n)
    for mask in generating_subsets_of_tope(cfg, tope):
        values[mask] = -1 if (popcount(mask) - cfg.r) % 2 else 1
    z = _superset_sums(values, cfg.n)
    return WPolynomial(cfg.n, {b: c for b, c in enumerate(z) if c})


def bg_polynomial_expanded(cfg: Configuration, tope: Tope) -> WPolynomial:
    """X(Phi, tau) by expanding each product term subset by subset (independent route)."""
    out = {}
    for mask in generating_subsets_of_tope(cfg, tope):
        s = -1 if (popcount(mask) - cfg.r) % 2 else 1
        for b in submasks(mask):
            out[b] = out.get(b, 0) + s
    return WPolynomial(cfg.n, out)


def polarization_split(cfg: Configuration, basic: int, beta) -> PolarizationSplit:
    gens = edge_generators(cfg, basic).generators
    pos = neg = 0
    for j, g in gens.items():
        v = exact.dot(beta, g)
        if v == 0:
            raise ValueError("covector is not regular")
        if v > 0:
            pos |= 1 << (j - 1)
        else:
            neg |= 1 << (j - 1)
    return PolarizationSplit(basic, pos, neg)


def lv_polynomial(cfg: Configuration, tope: Tope, beta) -> WPolynomial:
    """Y(Phi, tau, beta): each vertex cone polarized so that beta is positive on its edges."""
    beta = exact.vector(getattr(beta, "beta", beta))
    out = {}
    for basic in basic_subsets_of_tope(cfg, tope):
        split = polarization_split(cfg, basic, beta)
        s = -1 if popcount(split.negative) % 2 else 1
        for b in submasks(basic):
            key = split.negative | b
            out[key] = out.get(key, 0) + s
    return WPolynomial(cfg.n, out)


def flip_map(w: WPolynomial, mask: int) -> WPolynomial:
    """Exchange p_i and q_i for i in mask."""
    return WPolynomial(w.n, {b ^ mask: c for b, c in w.coefficients.items()})


def negative_set(x) -> int:
    return mask_of(i + 1 for i, v in enumerate(x) if v < 0)


def geom_eval(w: WPolynomial, x) -> int:
    """Substitute [x_i >= 0] for p_i and [x_i < 0] for q_i."""
    return w.coefficient(negative_set(x))


def geom_eval_semiclosed(w: WPolynomial, mask: int, x) -> int:
    """As geom_eval, but p_i means [x_i > 0] and q_i means [x_i <= 0] for i in mask."""
    b = negative_set(x) | mask_of(i + 1 for i, v in enumerate(x) if v == 0 and mask >> i & 1)
    return w.coefficient(b)


def _flipped_crossing(cfg: Configuration, t1: Tope, t2: Tope, flipped: int) -> int:
    """A(Phi_flip^flipped, t1, t2); flipping keeps the walls, so the sign test
    runs on the original vectors with sigma applied."""
    wall = adjacent(cfg, t1, t2)
    if wall is None:
        raise NotAdjacent("the topes are not adjacent")
    side = sign(exact.dot(wall.normal, t1.representative))
    out = 0
    for i, v in enumerate(cfg.phi):
        s = sign(exact.dot(wall.normal, v))
        if flipped >> i & 1:
            s = -s
        if s == side:
            out |= 1 << i
    return out


def wallcross_delta(cfg: Configuration, t1: Tope, t2: Tope) -> tuple:
    """(A, predicted) with bg(t1) = bg(t2) + predicted."""
    a = crossing_set(cfg, t1, t2)
    sgn = 1 if popcount(a) % 2 else -1  # -(-1)^|A|
    return a, sgn * flip_map(bg_polynomial(flip(cfg, a), t2), a)


@dataclass(frozen=True)
class SignedSubset:
    sign: int
    subset: int


def _check_path(cfg, start, end, path):
    path = list(path)
    if not path or path[0] != start or path[-1] != end:
        raise InvalidPath("path must run from the first tope to the second")
    for a, b in zip(path, path[1:]):
        if adjacent(cfg, a, b) is None:
            raise InvalidPath("consecutive topes on the path are not adjacent")
    return path


def path_flip_list(cfg: Configuration, start: Tope, end: Tope, path) -> list:
    """The signed subsets [(-1)^|K|, A_K] over all subsequences K of crossings."""
    path = _check_path(cfg, start, end, path)
    entries = [SignedSubset(1, 0)]
    # each crossing step either joins K or not; joining extends every earlier K
    for a, b in zip(path, path[1:]):
        entries += [SignedSubset(-e.sign, e.subset ^ _flipped_crossing(cfg, a, b, e.subset)) for e in entries]
    return entries


def path_flip_totals(cfg: Configuration, start: Tope, end: Tope, path) -> dict:
    """Sum of the signs per subset in path_flip_list, without listing 2^(l-1) entries."""
    path = _check_path(cfg, start, end, path)
    totals = {0: 1}
    for a, b in zip(path, path[1:]):
        nxt = dict(totals)
        for subset, count in totals.items():
            key = subset ^ _flipped_crossing(cfg, a, b, subset)
            nxt[key] = nxt.get(key, 0) - count
        totals = {k: v for k, v in nxt.items() if v}
    return totals


def path_expansion(cfg: Configuration, start: Tope, end: Tope, path) -> WPolynomial:
    """sum over [eps, A] of eps (-1)^|A| Flip_A X(Phi_flip^A, end)."""
    total = WPolynomial(cfg.n)
    for subset, count in sorted(path_flip_totals(cfg, start, end, path).items()):
        term = flip_map(bg_polynomial(flip(cfg, subset), end), subset)
        total = total + (count * (-1 if popcount(subset) % 2 else 1)) * term
    return total


def _quadrant_point(cfg: Configuration, mask: int):
    """A point of the open quadrant of mask whose image under M is regular."""
    k = 0
    while True:
        t = exact.rational(f"1/{k + 2}")
        x = []
        for i in range(cfg.n):
            v = 1 + t ** (i + 1)
            x.append(-v if mask >> i & 1 else v)
        lam = cfg.apply(x)
        if all(wall_signs(cfg, lam)):
            return tuple(x), lam
        k += 1


def quadrant_coefficient(cfg: Configuration, tope: Tope, mask: int) -> int:
    """z(Phi, tau, B), computed from X and from signed flip lists along a tope path."""
    direct = bg_polynomial(cfg, tope).coefficient(mask)
    _, lam = _quadrant_point(cfg, mask)
    target = tope_of(cfg, lam)
    by_signs = {t.signs: t for t in enumerate_topes(cfg)}
    start = by_signs.get(tope.signs, tope)
    path = tope_path(cfg, start, by_signs[target.signs])
    totals = path_flip_totals(cfg, path[0], path[-1], path)
    via_path = (-1 if popcount(mask) % 2 else 1) * totals.get(mask, 0)
    if via_path != direct:
        raise AssertionError(f"coefficient routes disagree for {indices_of(mask)}: {direct} vs {via_path}")
    return direct


def support_is_salient(cfg: Configuration, w: WPolynomial) -> bool:
    return all(is_flip_salient(cfg, b) for b in w.coefficients)
