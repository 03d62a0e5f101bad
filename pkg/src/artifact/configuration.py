"""Vector configurations, their walls and topes, and the subsets they index.

Index sets are bitmasks: bit ``i - 1`` stands for the (1-based) index ``i``.
"""

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import exact
from .errors import (
    DimensionMismatch,
    NotAdjacent,
    NotRegular,
    NotSalient,
    NotSpanning,
    TooManyVectors,
    Unreachable,
    ZeroVector,
)
from .lp import LinearSystem, feasible_strict, maximize

MAX_VECTORS = 24


def mask_of(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> list:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def sign(q) -> int:
    return (q > 0) - (q < 0)


class Configuration:
    """A sequence of nonzero rational vectors spanning F = Q^r with salient cone."""

    def __init__(self, phi, *, check_salient: bool = True):
        vectors = tuple(exact.vector(v) for v in phi)
        if not vectors:
            raise DimensionMismatch("empty configuration")
        r = len(vectors[0])
        if r == 0 or any(len(v) != r for v in vectors):
            raise DimensionMismatch("vectors must share a positive dimension")
        if len(vectors) > MAX_VECTORS:
            raise TooManyVectors(f"at most {MAX_VECTORS} vectors are supported")
        self.phi = vectors
        self.n = len(vectors)
        self.r = r
        self.d = self.n - r
        self.matrix = tuple(tuple(v[k] for v in vectors) for k in range(r))
        self.integral = all(exact.is_integral(v) for v in vectors)
        validate(self, check_salient=check_salient)
        self.kernel_rational = tuple(exact.kernel_basis(self.matrix))
        self.kernel_integer = tuple(exact.integer_kernel_basis(self.matrix))

    def __eq__(self, other):
        return isinstance(other, Configuration) and self.phi == other.phi

    def __hash__(self):
        return hash(self.phi)

    def __repr__(self):
        vecs = ", ".join("(" + ",".join(exact.format_rational(x) for x in v) + ")" for v in self.phi)
        return f"Configuration([{vecs}])"

    def columns(self, indices) -> list:
        """The r x |indices| matrix whose columns are the chosen phi_i (1-based)."""
        return [[self.phi[i - 1][k] for i in indices] for k in range(self.r)]

    def apply(self, x) -> tuple:
        """M x = sum of x_i phi_i."""
        return tuple(sum((x[i] * self.phi[i][k] for i in range(self.n)), Fraction(0)) for k in range(self.r))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def validate(cfg: Configuration, *, check_salient: bool = True) -> None:
    for i, v in enumerate(cfg.phi, start=1):
        if all(x == 0 for x in v):
            raise ZeroVector(i)
    if exact.rank(cfg.matrix) != cfg.r:
        raise NotSpanning(f"the vectors span less than dimension {cfg.r}")
    if check_salient and not is_flip_salient(cfg, 0):
        raise NotSalient("the cone generated by the vectors contains a line")


@dataclass(frozen=True)
class Wall:
    normal: tuple
    spanning_indices: int


@dataclass(frozen=True)
class Tope:
    signs: tuple
    representative: tuple = field(compare=False)


@dataclass(frozen=True)
class EdgeGenerators:
    basic_set: int
    coeffs: dict = field(compare=False)
    generators: dict = field(compare=False)


@dataclass(frozen=True)
class RegularCovector:
    beta: tuple


@lru_cache(maxsize=None)
def walls(cfg: Configuration) -> tuple:
    if cfg.r == 1:
        return (Wall((1,), 0),)
    seen = {}
    for combo in combinations(range(1, cfg.n + 1), cfg.r - 1):
        rows = [cfg.phi[i - 1] for i in combo]
        if exact.rank(rows) != cfg.r - 1:
            continue
        (normal,) = exact.kernel_basis(rows)
        normal = exact.primitive_integer(normal)
        if next(x for x in normal if x != 0) < 0:
            normal = tuple(-x for x in normal)
        if normal not in seen:
            seen[normal] = Wall(normal, mask_of(combo))
    return tuple(seen.values())


def wall_signs(cfg: Configuration, lam) -> tuple:
    return tuple(sign(exact.dot(w.normal, lam)) for w in walls(cfg))


def is_regular(cfg: Configuration, lam) -> bool:
    return all(wall_signs(cfg, exact.vector(lam)))


def tope_of(cfg: Configuration, lam) -> Tope:
    lam = exact.vector(lam)
    if len(lam) != cfg.r:
        raise DimensionMismatch(f"expected a vector of length {cfg.r}")
    signs = wall_signs(cfg, lam)
    if not all(signs):
        raise NotRegular(f"{[exact.format_rational(x) for x in lam]} lies on a wall")
    return Tope(signs, lam)


def _sign_system(cfg, signs, skip=None) -> LinearSystem:
    system = LinearSystem(cfg.r)
    for k, (w, s) in enumerate(zip(walls(cfg), signs)):
        if k == skip:
            system.add(w.normal, "=", 0)
        else:
            system.add(w.normal, ">" if s > 0 else "<", 0)
    return system


def _sign_masks(signs) -> tuple:
    plus = minus = 0
    for k, s in enumerate(signs):
        if s > 0:
            plus |= 1 << k
        elif s < 0:
            minus |= 1 << k
    return plus, minus


@lru_cache(maxsize=None)
def wall_circuits(cfg: Configuration) -> tuple:
    """Signed minimal linear dependencies among the wall normals.

    Each circuit is (plus mask, minus mask, highest wall index); one of each
    opposite pair is kept.
    """
    normals = [w.normal for w in walls(cfg)]
    out = []
    for size in range(2, cfg.r + 2):
        for combo in combinations(range(len(normals)), size):
            rows = [normals[k] for k in combo]
            if exact.rank(rows) != size - 1:
                continue
            (dep,) = exact.kernel_basis(exact.transpose(rows))
            if any(c == 0 for c in dep):
                continue  # a smaller dependency is inside
            plus = minus = 0
            for k, c in zip(combo, dep):
                if c > 0:
                    plus |= 1 << k
                else:
                    minus |= 1 << k
            out.append((plus, minus, combo[-1]))
    return tuple(out)


def _conformal_circuit(circuits, plus, minus) -> bool:
    for cp, cm, _ in circuits:
        if (cp & ~plus == 0 and cm & ~minus == 0) or (cp & ~minus == 0 and cm & ~plus == 0):
            return True
    return False


@lru_cache(maxsize=None)
def arrangement_lines(cfg: Configuration) -> tuple:
    """Primitive integer directions of the one-dimensional wall intersections,
    each with the (plus, minus) masks of its wall signs."""
    ws = walls(cfg)
    if cfg.r == 1:
        return ()
    seen = set()
    out = []
    for combo in combinations(range(len(ws)), cfg.r - 1):
        rows = [ws[k].normal for k in combo]
        if exact.rank(rows) != cfg.r - 1:
            continue
        (v,) = exact.kernel_basis(rows)
        v = exact.primitive_integer(v)
        if next(x for x in v if x != 0) < 0:
            v = tuple(-x for x in v)
        if v in seen:
            continue
        seen.add(v)
        out.append((v, _sign_masks(wall_signs(cfg, v))))
    return tuple(out)


def _interior_point(cfg, signs) -> tuple:
    # the sum of the arrangement rays in the closure of a tope lies inside it
    if cfg.r == 1:
        return (Fraction(signs[0]),)
    plus, minus = _sign_masks(signs)
    total = [0] * cfg.r
    for v, (lp, lm) in arrangement_lines(cfg):
        if lp & ~plus == 0 and lm & ~minus == 0:
            total = [a + b for a, b in zip(total, v)]
        elif lp & ~minus == 0 and lm & ~plus == 0:
            total = [a - b for a, b in zip(total, v)]
    point = tuple(Fraction(x) for x in total)
    if wall_signs(cfg, point) != tuple(signs):
        raise AssertionError("ray sum left the tope")
    return point


@lru_cache(maxsize=None)
def enumerate_topes(cfg: Configuration) -> tuple:
    """All topes, by depth-first sign assignment.

    A partial sign vector is pruned as soon as some circuit of the wall
    normals is conformal to it (the Farkas obstruction to strict feasibility).
    """
    nwalls = len(walls(cfg))
    by_top = {}
    for c in wall_circuits(cfg):
        by_top.setdefault(c[2], []).append(c)
    out = []

    def extend(k, plus, minus, signs):
        if k == nwalls:
            out.append(Tope(tuple(signs), _interior_point(cfg, signs)))
            return
        for s in (1, -1):
            p = plus | (1 << k) if s > 0 else plus
            m = minus | (1 << k) if s < 0 else minus
            if not _conformal_circuit(by_top.get(k, ()), p, m):
                extend(k + 1, p, m, signs + [s])

    extend(0, 0, 0, [])
    return tuple(out)


def enumerate_topes_lp(cfg: Configuration) -> tuple:
    """Tope enumeration pruned by strict LP feasibility (independent route)."""
    ws = walls(cfg)
    out = []

    def extend(k, signs, witness):
        if k == len(ws):
            out.append(Tope(tuple(signs), witness))
            return
        current = sign(exact.dot(ws[k].normal, witness))
        for s in (1, -1):
            nxt = witness if s == current else feasible_strict(_sign_system(cfg, signs + [s]))
            if nxt is not None:
                extend(k + 1, signs + [s], nxt)

    extend(0, [], tuple(Fraction(0) for _ in range(cfg.r)))
    return tuple(out)


def adjacent(cfg: Configuration, t1: Tope, t2: Tope):
    """The common wall of two adjacent topes, or None.

    The signs must differ at exactly one wall, and the sign vector with that
    entry set to zero must be realised by a point, which holds exactly when it
    is orthogonal to every circuit of the wall normals.
    """
    diff = [k for k, (a, b) in enumerate(zip(t1.signs, t2.signs)) if a != b]
    if len(diff) != 1:
        return None
    k = diff[0]
    plus, minus = _sign_masks(t1.signs)
    plus &= ~(1 << k)
    minus &= ~(1 << k)
    for cp, cm, _ in wall_circuits(cfg):
        agree = (cp & plus) | (cm & minus)
        disagree = (cp & minus) | (cm & plus)
        if bool(agree) != bool(disagree):
            return None
    return walls(cfg)[k]


def adjacent_lp(cfg: Configuration, t1: Tope, t2: Tope):
    """Adjacency decided by a strict LP inside the common wall (independent route)."""
    diff = [k for k, (a, b) in enumerate(zip(t1.signs, t2.signs)) if a != b]
    if len(diff) != 1:
        return None
    k = diff[0]
    if feasible_strict(_sign_system(cfg, t1.signs, skip=k)) is None:
        return None
    return walls(cfg)[k]


@lru_cache(maxsize=None)
def _tope_graph(cfg: Configuration) -> dict:
    by_signs = {t.signs: t for t in enumerate_topes(cfg)}
    graph = {}
    for signs, t in by_signs.items():
        nbrs = []
        for k in range(len(signs)):
            other = signs[:k] + (-signs[k],) + signs[k + 1:]
            if other in by_signs and adjacent(cfg, t, by_signs[other]) is not None:
                nbrs.append(other)
        graph[signs] = sorted(nbrs)
    return graph


def adjacent_pairs(cfg: Configuration) -> list:
    """Ordered pairs (t1, t2) of adjacent topes."""
    by_signs = {t.signs: t for t in enumerate_topes(cfg)}
    graph = _tope_graph(cfg)
    return [(by_signs[a], by_signs[b]) for a in sorted(graph) for b in graph[a]]


def tope_path(cfg: Configuration, start: Tope, end: Tope) -> list:
    """Shortest chain of adjacent topes from start to end (breadth first)."""
    graph = _tope_graph(cfg)
    by_signs = {t.signs: t for t in enumerate_topes(cfg)}
    if start.signs not in graph or end.signs not in graph:
        raise Unreachable("tope is not a tope of this configuration")
    parent = {start.signs: None}
    queue = deque([start.signs])
    while queue:
        cur = queue.popleft()
        if cur == end.signs:
            break
        for nxt in graph[cur]:
            if nxt not in parent:
                parent[nxt] = cur
                queue.append(nxt)
    if end.signs not in parent:
        raise Unreachable("no chain of adjacent topes joins the two topes")
    chain = []
    cur = end.signs
    while cur is not None:
        chain.append(cur)
        cur = parent[cur]
    chain.reverse()
    path = [by_signs[s] for s in chain]
    path[0] = start
    path[-1] = end
    return path


@lru_cache(maxsize=None)
def basic_subsets(cfg: Configuration) -> tuple:
    out = []
    for combo in combinations(range(1, cfg.n + 1), cfg.r):
        if exact.determinant(cfg.columns(combo)) != 0:
            out.append(mask_of(combo))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def generating_subsets(cfg: Configuration) -> tuple:
    out = []
    for mask in range(1, 1 << cfg.n):
        if popcount(mask) >= cfg.r and exact.rank(cfg.columns(indices_of(mask))) == cfg.r:
            out.append(mask)
    return tuple(out)


@lru_cache(maxsize=None)
def _basic_orientation(cfg: Configuration) -> dict:
    """For each basic K, the wall carrying each coordinate of s_K.

    The i-th coordinate of s_K(lam) is a linear form vanishing on the wall
    spanned by the other members of K, so its sign is +/- the wall sign of lam.
    Maps K to a list of (index i, wall position, orientation).
    """
    position = {w.normal: k for k, w in enumerate(walls(cfg))}
    table = {}
    for mask in basic_subsets(cfg):
        idx = indices_of(mask)
        inv = exact.inverse(cfg.columns(idx))
        entries = []
        for i, row in zip(idx, inv):
            normal = exact.primitive_integer(row)
            lead = next(x for x in normal if x != 0)
            if lead < 0:
                normal = tuple(-x for x in normal)
            entries.append((i, position[normal], sign(next(x for x in row if x != 0))))
        table[mask] = entries
    return table


@lru_cache(maxsize=None)
def basic_subsets_of_tope(cfg: Configuration, tope: Tope) -> tuple:
    """Basic K whose cone contains the tope, read off the tope's wall signs."""
    out = []
    for mask, entries in _basic_orientation(cfg).items():
        if all(o * tope.signs[k] > 0 for _, k, o in entries):
            out.append(mask)
    return tuple(sorted(out))


def basic_subsets_of_tope_solve(cfg: Configuration, tope: Tope) -> tuple:
    """Same set, by solving for the representative (independent route)."""
    out = []
    for mask in basic_subsets(cfg):
        x = exact.solve_unique(cfg.columns(indices_of(mask)), tope.representative)
        if all(v > 0 for v in x):
            out.append(mask)
    return tuple(out)


def in_cone(cfg: Configuration, mask: int, lam) -> bool:
    """Whether lam is a nonnegative combination of the phi_i with i in mask."""
    idx = indices_of(mask)
    system = LinearSystem(len(idx))
    cols = cfg.columns(idx)
    for k in range(cfg.r):
        system.add(cols[k], "=", lam[k])
    for j in range(len(idx)):
        system.add([int(j == t) for t in range(len(idx))], ">=", 0)
    return feasible_strict(system) is not None


def upward_closure(masks, n: int) -> list:
    """Indicator list over all 2^n masks of supersets of some member."""
    size = 1 << n
    flag = [False] * size
    for m in masks:
        flag[m] = True
    for bit in range(n):
        step = 1 << bit
        for m in range(size):
            if m & step and flag[m ^ step]:
                flag[m] = True
    return flag


@lru_cache(maxsize=None)
def generating_subsets_of_tope(cfg: Configuration, tope: Tope) -> tuple:
    """Generating I whose cone contains the tope.

    For a regular point this is the upward closure of the basic subsets of
    the tope: a conic representation of a regular point by fewer than r
    vectors would put it on a wall.
    """
    flag = upward_closure(basic_subsets_of_tope(cfg, tope), cfg.n)
    return tuple(m for m in range(1 << cfg.n) if flag[m])


def generating_subsets_of_tope_lp(cfg: Configuration, tope: Tope) -> tuple:
    """Same set, by one LP feasibility test per generating subset (independent route)."""
    return tuple(m for m in generating_subsets(cfg) if in_cone(cfg, m, tope.representative))


def tope_in_cone(cfg: Configuration, tope: Tope) -> bool:
    return bool(basic_subsets_of_tope(cfg, tope))


def vertex(cfg: Configuration, mask: int, lam) -> tuple:
    """The point s_I: coordinates of lam in the basis phi_I, zero elsewhere."""
    idx = indices_of(mask)
    coords = exact.solve_unique(cfg.columns(idx), exact.vector(lam))
    out = [Fraction(0)] * cfg.n
    for i, v in zip(idx, coords):
        out[i - 1] = v
    return tuple(out)


@lru_cache(maxsize=None)
def edge_generators(cfg: Configuration, mask: int) -> EdgeGenerators:
    idx = indices_of(mask)
    basis = cfg.columns(idx)
    inv = exact.inverse(basis)
    coeffs = {}
    gens = {}
    for j in range(1, cfg.n + 1):
        if mask >> (j - 1) & 1:
            continue
        u = exact.mat_vec(inv, cfg.phi[j - 1])
        g = [Fraction(0)] * cfg.n
        g[j - 1] = Fraction(1)
        for i, uij in zip(idx, u):
            coeffs[(i, j)] = uij
            g[i - 1] = -uij
        gens[j] = tuple(g)
    return EdgeGenerators(mask, coeffs, gens)


@lru_cache(maxsize=None)
def flip(cfg: Configuration, mask: int) -> Configuration:
    """The configuration with phi_i negated for i in mask; salience is not checked."""
    phi = [tuple(-x for x in v) if mask >> i & 1 else v for i, v in enumerate(cfg.phi)]
    return Configuration(phi, check_salient=False)


@lru_cache(maxsize=None)
def is_flip_salient(cfg: Configuration, mask: int) -> bool:
    """Whether the cone of the flipped configuration is salient.

    Maximise sum y_i over 0 <= y <= 1 with sum sigma_i y_i phi_i = 0; the cone
    is salient exactly when the optimum is 0.
    """
    n = cfg.n
    system = LinearSystem(n)
    for k in range(cfg.r):
        row = [-cfg.phi[i][k] if mask >> i & 1 else cfg.phi[i][k] for i in range(n)]
        system.add(row, "=", 0)
    for i in range(n):
        unit = [int(i == t) for t in range(n)]
        system.add(unit, ">=", 0)
        system.add(unit, "<=", 1)
    return maximize([1] * n, system).value == 0


def in_fattened_tope(cfg: Configuration, tope: Tope, lam) -> bool:
    """Whether lam + sum t_i phi_i lies in the tope for some t in [0, 1]^N."""
    lam = exact.vector(lam)
    n = cfg.n
    rows = []
    inside = True
    for w, s in zip(walls(cfg), tope.signs):
        row = [s * exact.dot(w.normal, cfg.phi[i]) for i in range(n)]
        level = s * exact.dot(w.normal, lam)
        # each wall separately: the best t_i in [0, 1] must clear it
        if level + sum(c for c in row if c > 0) <= 0:
            return False
        inside = inside and level > 0
        rows.append((row, level))
    if inside:
        return True
    system = LinearSystem(n)
    for row, level in rows:
        system.add(row, ">", -level)
    for i in range(n):
        unit = [int(i == t) for t in range(n)]
        system.add(unit, ">=", 0)
        system.add(unit, "<=", 1)
    return feasible_strict(system) is not None


def is_regular_covector(cfg: Configuration, beta) -> bool:
    beta = exact.vector(beta)
    for mask in basic_subsets(cfg):
        for g in edge_generators(cfg, mask).generators.values():
            if exact.dot(beta, g) == 0:
                return False
    return True


def random_regular_covector(cfg: Configuration, seed: int = 0) -> RegularCovector:
    rng = random.Random(seed)
    attempt = 0
    while True:
        bound = 8 << (attempt // 16)
        beta = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(cfg.n))
        if is_regular_covector(cfg, beta):
            return RegularCovector(beta)
        attempt += 1


def crossing_set(cfg: Configuration, t1: Tope, t2: Tope) -> int:
    """Indices whose vector lies on the open side of the common wall containing t1."""
    wall = adjacent(cfg, t1, t2)
    if wall is None:
        raise NotAdjacent("the topes are not adjacent")
    side = sign(exact.dot(wall.normal, t1.representative))
    return mask_of(i + 1 for i, v in enumerate(cfg.phi) if sign(exact.dot(wall.normal, v)) == side)
