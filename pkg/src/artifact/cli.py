"""Command-line front end: ``artifact SUBCOMMAND problem.json [flags]``."""

import argparse
import csv
import io
import sys

from . import exact
from .configuration import (
    Configuration,
    adjacent_pairs,
    enumerate_topes,
    indices_of,
    mask_of,
    tope_of,
)
from .continuation import (
    WeightPolynomial,
    brute_force_count,
    discrete_sum,
    random_regular_xi,
    sweep,
    toric_multiplicity,
    volume_integral,
    wallcross_count_check,
)
from .errors import ArtifactError, ParseError
from .facelift import direct_slice_count, slice_count
from .problem import parse_problem
from .quadrant import bg_polynomial, geom_eval, wallcross_delta
from .render import RenderScene, render_svg

SUBCOMMANDS = ("validate", "topes", "bg", "eval", "count", "sum", "volume", "wallcross", "sweep", "face", "toric", "render")


def _fmt_vec(v) -> str:
    return "(" + ",".join(exact.format_rational(x) for x in v) + ")"


def _fmt_set(mask: int) -> str:
    return "{" + ",".join(str(i) for i in indices_of(mask)) + "}"


def _need(prob, attr: str, key: str):
    value = getattr(prob, attr)
    if value is None:
        raise ParseError(f"{prob.source}: this subcommand needs the field '{key}'")
    return value


def _tope(cfg, prob, attr="tope"):
    return tope_of(cfg, _need(prob, attr, attr))


def _weight(prob):
    return WeightPolynomial(prob.n, prob.weight) if prob.weight else None


def _window(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise ParseError("--window expects x0,x1,y0,y1")
    return tuple(exact.rational(p) for p in parts)


def cmd_validate(cfg, prob, args, out):
    out.write(f"valid N={cfg.n} r={cfg.r} d={cfg.d} integral={'yes' if cfg.integral else 'no'}\n")


def cmd_topes(cfg, prob, args, out):
    topes = enumerate_topes(cfg)
    out.write(f"{len(topes)} topes\n")
    for t in topes:
        signs = "".join("+" if s > 0 else "-" for s in t.signs)
        out.write(f"{signs} {_fmt_vec(t.representative)}\n")
    out.write(f"{len(adjacent_pairs(cfg))} ordered adjacent pairs\n")


def cmd_bg(cfg, prob, args, out):
    out.write(bg_polynomial(cfg, _tope(cfg, prob)).to_text() + "\n")


def cmd_eval(cfg, prob, args, out):
    x = _need(prob, "point", "point")
    out.write(f"{geom_eval(bg_polynomial(cfg, _tope(cfg, prob)), x)}\n")


def cmd_count(cfg, prob, args, out):
    out.write(f"{brute_force_count(cfg, _need(prob, 'lam', 'lambda'))}\n")


def cmd_sum(cfg, prob, args, out):
    value = discrete_sum(cfg, _tope(cfg, prob), _weight(prob), _need(prob, "lam", "lambda"))
    out.write(exact.format_rational(value) + "\n")


def cmd_volume(cfg, prob, args, out):
    tope = _tope(cfg, prob)
    lam = _need(prob, "lam", "lambda")
    if prob.xi is not None:
        xis = [prob.xi]
    else:
        xis = [random_regular_xi(cfg, tope, args.seed + k) for k in range(max(1, args.trials))]
    values = [volume_integral(cfg, tope, prob.degree, xi, lam) for xi in xis]
    out.write(exact.format_rational(values[0]) + "\n")
    if len(values) > 1:
        out.write(f"xi-independence over {len(values)} covectors: {'PASS' if len(set(values)) == 1 else 'FAIL'}\n")
        if len(set(values)) != 1:
            return 1


def cmd_wallcross(cfg, prob, args, out):
    t1, t2 = _tope(cfg, prob), _tope(cfg, prob, "target")
    a, delta = wallcross_delta(cfg, t1, t2)
    ok = bg_polynomial(cfg, t1) == bg_polynomial(cfg, t2) + delta
    out.write(f"A = {_fmt_set(a)}\n")
    out.write(f"delta = {delta.to_text()}\n")
    out.write(f"identity {'PASS' if ok else 'FAIL'}\n")
    if prob.lam is not None:
        lhs, rhs = wallcross_count_check(cfg, t1, t2, _weight(prob), prob.lam)
        out.write(f"counts {exact.format_rational(lhs)} {exact.format_rational(rhs)} {'PASS' if lhs == rhs else 'FAIL'}\n")
        ok = ok and lhs == rhs
    return 0 if ok else 1


def cmd_sweep(cfg, prob, args, out):
    sw = _need(prob, "sweep", "sweep")
    tope = _tope(cfg, prob)
    xi = prob.xi if prob.xi is not None else random_regular_xi(cfg, tope, args.seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow([f"lambda{k + 1}" for k in range(cfg.r)] + ["count", "signed_sum", "volume"])
    for lam, count, signed, vol in sweep(cfg, tope, sw.start, sw.end, sw.steps, xi):
        row = [exact.format_rational(v) for v in lam]
        row += [str(count), exact.format_rational(signed), "" if vol is None else exact.format_rational(vol)]
        writer.writerow(row)
    out.write(buf.getvalue())


def cmd_face(cfg, prob, args, out):
    face = mask_of(_need(prob, "face", "face"))
    lam = _need(prob, "lam", "lambda")
    tope = tope_of(cfg, prob.tope or lam)
    y = _need(prob, "y", "y")
    out.write(f"slice_count {slice_count(cfg, tope, face, lam, y)}\n")
    out.write(f"direct {direct_slice_count(cfg, face, lam, y)}\n")


def cmd_toric(cfg, prob, args, out):
    out.write(f"{toric_multiplicity(cfg, _tope(cfg, prob), _need(prob, 'm', 'm'))}\n")


def cmd_render(cfg, prob, args, out):
    window = _window(args.window) if args.window else prob.window
    resolution = args.resolution or prob.resolution or 256
    svg = render_svg(cfg, _tope(cfg, prob), _need(prob, "lam", "lambda"), RenderScene(window, resolution))
    out.write(svg)


COMMANDS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Continuation of partition polytopes across walls.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("problem", help="JSON problem file")
    parser.add_argument("--seed", type=int, default=0, help="seed for random covectors (default 0)")
    parser.add_argument("--resolution", type=int, default=None, help="pixels per axis for render (default 256)")
    parser.add_argument("--window", default=None, help="render window x0,x1,y0,y1 in the free coordinates")
    parser.add_argument("--out", default=None, help="write output to this file instead of stdout")
    parser.add_argument("--trials", type=int, default=1, help="number of random covectors to compare in volume")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        prob = parse_problem(args.problem)
        cfg = Configuration(prob.phi)
        status = COMMANDS[args.subcommand](cfg, prob, args, buf) or 0
    except ArtifactError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return err.exit_code
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
