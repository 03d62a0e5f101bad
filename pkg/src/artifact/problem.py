"""JSON problem files.

Rationals are written as strings ("3", "-1/2"). Only ``phi`` is required::

    {
      "phi": [["1", "0"], ["0", "1"], ["-1", "1"], ["1", "1"]],
      "tope": ["1", "2"],
      "target": ["2", "1"],
      "lambda": ["8", "4"],
      "weight": [{"coefficient": "1", "exponents": [1, 0, 0, 0]}],
      "xi": ["1", "3", "7", "15"],
      "degree": 0,
      "face": [1, 2, 3],
      "y": ["2"],
      "m": ["0", "1", "2", "3"],
      "point": ["0", "1", "2", "3"],
      "sweep": {"from": ["0", "0"], "to": ["10", "5"], "steps": 10},
      "render": {"window": ["-5", "5", "-5", "5"], "resolution": 128}
    }

``tope`` and ``target`` are points inside the tope; indices in ``face`` are
1-based.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import exact
from .errors import ParseError

KNOWN_KEYS = {"phi", "tope", "target", "lambda", "weight", "xi", "degree", "face", "y", "m", "point", "sweep", "render"}


@dataclass
class Sweep:
    start: tuple
    end: tuple
    steps: int


@dataclass
class Problem:
    phi: list
    tope: tuple = None
    target: tuple = None
    lam: tuple = None
    weight: list = None
    xi: tuple = None
    degree: int = 0
    face: list = None
    y: tuple = None
    m: tuple = None
    point: tuple = None
    sweep: Sweep = None
    window: tuple = None
    resolution: int = None
    source: str = field(default="<string>", repr=False)

    @property
    def r(self) -> int:
        return len(self.phi[0])

    @property
    def n(self) -> int:
        return len(self.phi)


def _vector(value, where: str, length=None) -> tuple:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of rational strings")
    out = []
    for k, item in enumerate(value):
        if isinstance(item, float):
            raise ParseError(f"{where}[{k}]: write rationals as strings, not floats")
        try:
            out.append(exact.rational(item))
        except ParseError as err:
            raise ParseError(f"{where}[{k}]: {err}") from None
    if length is not None and len(out) != length:
        raise ParseError(f"{where}: expected {length} entries, got {len(out)}")
    return tuple(out)


def _natural(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"{where}: expected a nonnegative integer")
    return value


def parse_problem_text(text: str, source: str = "<string>") -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{source}: line {err.lineno} column {err.colno}: {err.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    unknown = sorted(set(data) - KNOWN_KEYS)
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {', '.join(unknown)}")
    if "phi" not in data:
        raise ParseError(f"{source}: missing field 'phi'")
    raw_phi = data["phi"]
    if not isinstance(raw_phi, list) or not raw_phi:
        raise ParseError(f"{source}: field 'phi' must be a nonempty list of vectors")
    phi = [_vector(v, f"phi[{i}]") for i, v in enumerate(raw_phi)]
    r, n = len(phi[0]), len(phi)
    for i, v in enumerate(phi):
        if len(v) != r:
            raise ParseError(f"phi[{i}]: expected {r} entries, got {len(v)}")
    prob = Problem(phi, source=source)

    for key, attr, length in (
        ("tope", "tope", r),
        ("target", "target", r),
        ("lambda", "lam", r),
        ("xi", "xi", n),
        ("m", "m", n),
        ("point", "point", n),
    ):
        if key in data:
            setattr(prob, attr, _vector(data[key], key, length))

    if "degree" in data:
        prob.degree = _natural(data["degree"], "degree")

    if "weight" in data:
        terms = data["weight"]
        if not isinstance(terms, list):
            raise ParseError("weight: expected a list of monomials")
        prob.weight = []
        for k, term in enumerate(terms):
            if not isinstance(term, dict) or "exponents" not in term:
                raise ParseError(f"weight[{k}]: expected an object with 'exponents'")
            exps = term["exponents"]
            if not isinstance(exps, list) or len(exps) != n:
                raise ParseError(f"weight[{k}].exponents: expected {n} entries")
            exps = tuple(_natural(e, f"weight[{k}].exponents") for e in exps)
            coef = _vector([term.get("coefficient", "1")], f"weight[{k}].coefficient")[0]
            prob.weight.append((coef, exps))

    if "face" in data:
        face = data["face"]
        if not isinstance(face, list) or not all(isinstance(i, int) and 1 <= i <= n for i in face):
            raise ParseError(f"face: expected a list of indices in 1..{n}")
        if len(set(face)) != len(face):
            raise ParseError("face: repeated index")
        prob.face = sorted(face)
        if "y" in data:
            prob.y = _vector(data["y"], "y", n - len(face))
    elif "y" in data:
        raise ParseError("y: needs a 'face' field")

    if "sweep" in data:
        sw = data["sweep"]
        if not isinstance(sw, dict) or not {"from", "to"} <= set(sw):
            raise ParseError("sweep: expected an object with 'from' and 'to'")
        steps = _natural(sw.get("steps", 10), "sweep.steps")
        if steps == 0:
            raise ParseError("sweep.steps: must be positive")
        prob.sweep = Sweep(_vector(sw["from"], "sweep.from", r), _vector(sw["to"], "sweep.to", r), steps)

    if "render" in data:
        rd = data["render"]
        if not isinstance(rd, dict):
            raise ParseError("render: expected an object")
        if "window" in rd:
            prob.window = _vector(rd["window"], "render.window", 4)
        if "resolution" in rd:
            prob.resolution = _natural(rd["resolution"], "render.resolution")
    return prob


def parse_problem(path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ParseError(f"{path}: {err.strerror}") from None
    return parse_problem_text(text, str(path))
