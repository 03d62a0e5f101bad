"""SVG pictures of the continued polytope when the slice is a plane (N - r = 2)."""

from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from .configuration import Configuration, Tope, basic_subsets, indices_of, vertex
from .errors import WrongCodimension
from .quadrant import bg_polynomial, geom_eval

PALETTE = {1: "#0000ff", -1: "#ff0000", -2: "#ff00ff"}
OTHER_COLOR = "#808080"


@dataclass
class RenderScene:
    window: tuple = None  # (u0, u1, v0, v1) in the free coordinates
    resolution: int = 256
    palette: dict = field(default_factory=lambda: dict(PALETTE))

    def color(self, value: int):
        if value == 0:
            return None
        return self.palette.get(value, OTHER_COLOR)


@dataclass(frozen=True)
class SlicePlane:
    """x = affine function of the two free coordinates (u, v)."""

    free: tuple
    offset: tuple
    du: tuple
    dv: tuple

    def point(self, u, v) -> tuple:
        return tuple(o + u * a + v * b for o, a, b in zip(self.offset, self.du, self.dv))


def slice_plane(cfg: Configuration, lam) -> SlicePlane:
    if cfg.d != 2:
        raise WrongCodimension(f"rendering needs N - r = 2, got {cfg.d}")
    pivot = indices_of(basic_subsets(cfg)[0])
    free = tuple(j for j in range(1, cfg.n + 1) if j not in pivot)
    inv = exact.inverse(cfg.columns(pivot))

    def lift_point(rhs, unit):
        x = [Fraction(0)] * cfg.n
        for i, v in zip(pivot, exact.mat_vec(inv, rhs)):
            x[i - 1] = v
        for j, v in zip(free, unit):
            x[j - 1] = Fraction(v)
        return tuple(x)

    lam = exact.vector(lam)
    offset = lift_point(lam, (0, 0))
    cols = []
    for t, j in enumerate(free):
        rhs = tuple(-c for c in cfg.phi[j - 1])
        cols.append(lift_point(rhs, (int(t == 0), int(t == 1))))
    return SlicePlane(free, offset, cols[0], cols[1])


def default_window(cfg: Configuration, lam) -> tuple:
    """Bounding box of all basic points in the free coordinates, padded by a tenth."""
    plane = slice_plane(cfg, lam)
    us, vs = [], []
    for mask in basic_subsets(cfg):
        s = vertex(cfg, mask, lam)
        us.append(s[plane.free[0] - 1])
        vs.append(s[plane.free[1] - 1])
    box = []
    for lo, hi in ((min(us), max(us)), (min(vs), max(vs))):
        pad = max((hi - lo) / 10, Fraction(1, 2))
        box += [lo - pad, hi + pad]
    return tuple(box)


def sample_grid(cfg: Configuration, tope: Tope, lam, scene: RenderScene) -> list:
    """Values of the continuation at cell centres, rows from top (largest v) down."""
    plane = slice_plane(cfg, lam)
    u0, u1, v0, v1 = scene.window or default_window(cfg, lam)
    res = scene.resolution
    poly = bg_polynomial(cfg, tope)
    grid = []
    for row in range(res):
        v = v1 - (v1 - v0) * Fraction(2 * row + 1, 2 * res)
        line = []
        for col in range(res):
            u = u0 + (u1 - u0) * Fraction(2 * col + 1, 2 * res)
            line.append(geom_eval(poly, plane.point(u, v)))
        grid.append(line)
    return grid


def _clip_line(a, b, c, box):
    """Segment of {a u + b v + c = 0} inside the box, or None."""
    u0, u1, v0, v1 = box
    pts = []
    if b != 0:
        for u in (u0, u1):
            v = -(a * u + c) / b
            if v0 <= v <= v1:
                pts.append((u, v))
    if a != 0:
        for v in (v0, v1):
            u = -(b * v + c) / a
            if u0 <= u <= u1:
                pts.append((u, v))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def _fmt(q) -> str:
    return f"{float(q):.4f}"


def render_svg(cfg: Configuration, tope: Tope, lam, scene: RenderScene = None) -> str:
    scene = scene or RenderScene()
    window = scene.window or default_window(cfg, lam)
    scene = RenderScene(window, scene.resolution, scene.palette)
    grid = sample_grid(cfg, tope, lam, scene)
    res = scene.resolution
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{res}" height="{res}" viewBox="0 0 {res} {res}">',
        '<g shape-rendering="crispEdges">',
    ]
    for row, line in enumerate(grid):
        col = 0
        while col < res:
            value = line[col]
            end = col
            while end + 1 < res and line[end + 1] == value:
                end += 1
            color = scene.color(value)
            if color:
                out.append(f'<rect x="{col}" y="{row}" width="{end - col + 1}" height="1" fill="{color}"/>')
            col = end + 1
    out.append("</g>")

    plane = slice_plane(cfg, lam)
    u0, u1, v0, v1 = window
    out.append('<g stroke="#000000" stroke-width="1" fill="none">')
    for i in range(cfg.n):
        # x_i = offset + u du + v dv = 0
        seg = _clip_line(plane.du[i], plane.dv[i], plane.offset[i], window)
        if seg is None:
            continue
        (ua, va), (ub, vb) = seg
        xa, ya = (ua - u0) / (u1 - u0) * res, (v1 - va) / (v1 - v0) * res
        xb, yb = (ub - u0) / (u1 - u0) * res, (v1 - vb) / (v1 - v0) * res
        out.append(f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}"><title>x{i + 1} = 0</title></line>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sign_counts(grid) -> dict:
    counts = {}
    for line in grid:
        for v in line:
            counts[v] = counts.get(v, 0) + 1
    return counts
