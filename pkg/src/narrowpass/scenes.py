"""Builtin benchmark scenes and the plain-text scene file format.

The 2D/3D unit scenes live in a 100-unit arena; the tunnel and maze reuse
their stated figure dimensions (20x5x5 and 20x20x3).  The paper-style figures
fix only the obstacle *shapes*, so the coordinates below are this package's
normative constants; changing them changes the benchmark.

Scene files are UTF-8 text, one directive per line, '#' comments allowed:

    name <token>
    dims <2|3>
    bounds <lo hi>{dims}
    projection <axis> <axis>          # optional, 3D only
    polygon <x y>{3+}                 # 2D obstacles, CCW convex
    box <x0 y0 z0> <x1 y1 z1>         # 3D obstacles, axis-aligned
    passage <min...> <max...>         # optional axis-aligned region

Parsing errors carry 1-based line/column positions.  Serialization uses
repr() floats, so load(serialize(scene)) round-trips bit-exactly.
"""

from __future__ import annotations

import re

import numpy as np

from .geometry import Scene, validate_polygon

BUILTIN_NAMES = ("bar2d", "joint2d", "joint3d", "teeth3d", "tunnel3d", "maze3d")

DEFAULT_WIDTHS = {
    "bar2d": 5.0,
    "joint2d": 5.0,
    "joint3d": 5.0,
    "teeth3d": 5.0,
    "tunnel3d": 2.0,
    "maze3d": 1.5,
}


def _rect(x0, y0, x1, y1):
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)


def _bar2d(width):
    # Two bars spanning the arena in x, split by a central vertical gap of
    # `width`.  The bars stop `width` short of the floor and ceiling, so every
    # free corridor shares the passage scale and bridge acceptance behaves
    # uniformly across step sizes.
    half = width / 2.0
    y0, y1 = width, 100.0 - width
    return Scene(
        name="bar2d",
        dims=2,
        lo=np.zeros(2),
        hi=np.full(2, 100.0),
        polygons=[
            _rect(0.0, y0, 50.0 - half, y1),
            _rect(50.0 + half, y0, 100.0, y1),
        ],
        passage=(np.array([50.0 - half, y0]), np.array([50.0 + half, y1])),
    )


def _joint2d(width):
    # Two L-shaped assemblies whose horizontal arms overlap for x in [30, 70],
    # leaving a dog-leg corridor of height `width` between them.
    w = width
    return Scene(
        name="joint2d",
        dims=2,
        lo=np.zeros(2),
        hi=np.full(2, 100.0),
        polygons=[
            _rect(5.0, 25.0, 70.0, 40.0),        # lower L, horizontal arm
            _rect(55.0, 5.0, 70.0, 25.0),        # lower L, vertical arm
            _rect(30.0, 40.0 + w, 95.0, 55.0 + w),  # upper L, horizontal arm
            _rect(30.0, 55.0 + w, 45.0, 95.0),   # upper L, vertical arm
        ],
        passage=(np.array([30.0, 40.0]), np.array([70.0, 40.0 + w])),
    )


def _joint3d(width):
    # The joint2d staggered slabs extruded along y; the corridor is the
    # z-slab of height `width` where the two slabs overlap in x.
    w = width
    return Scene(
        name="joint3d",
        dims=3,
        lo=np.zeros(3),
        hi=np.full(3, 100.0),
        boxes=[
            (np.array([5.0, 5.0, 25.0]), np.array([70.0, 95.0, 40.0])),
            (np.array([30.0, 5.0, 40.0 + w]), np.array([95.0, 95.0, 55.0 + w])),
        ],
        passage=(np.array([30.0, 5.0, 40.0]), np.array([70.0, 95.0, 40.0 + w])),
        projection=(0, 2),
    )


def _teeth3d(width):
    # Interdigitated fingers: lower/upper combs overlap for z in [40, 60],
    # leaving vertical slots of width `width`; the declared passage is the
    # central slot.
    w = width
    f = (100.0 - 3.0 * w) / 4.0
    if f <= 0.0:
        raise ValueError("passage width too large for the teeth layout")
    return Scene(
        name="teeth3d",
        dims=3,
        lo=np.zeros(3),
        hi=np.full(3, 100.0),
        boxes=[
            (np.array([0.0, 0.0, 0.0]), np.array([f, 100.0, 60.0])),
            (np.array([f + w, 0.0, 40.0]), np.array([2 * f + w, 100.0, 100.0])),
            (np.array([2 * f + 2 * w, 0.0, 0.0]), np.array([3 * f + 2 * w, 100.0, 60.0])),
            (np.array([3 * f + 3 * w, 0.0, 40.0]), np.array([100.0, 100.0, 100.0])),
        ],
        passage=(
            np.array([2 * f + w, 0.0, 40.0]),
            np.array([2 * f + 2 * w, 100.0, 60.0]),
        ),
        projection=(0, 2),
    )


def _tunnel3d(width):
    # 20x5x5 tunnel blocked mid-way by a wall with a square window through it.
    # The window side is capped at 4 units so some wall always remains.
    s = min(width, 4.0)
    half = s / 2.0
    c = 2.5
    x0, x1 = 9.5, 10.5
    boxes = [
        (np.array([x0, 0.0, 0.0]), np.array([x1, 5.0, c - half])),
        (np.array([x0, 0.0, c + half]), np.array([x1, 5.0, 5.0])),
        (np.array([x0, 0.0, c - half]), np.array([x1, c - half, c + half])),
        (np.array([x0, c + half, c - half]), np.array([x1, 5.0, c + half])),
    ]
    return Scene(
        name="tunnel3d",
        dims=3,
        lo=np.zeros(3),
        hi=np.array([20.0, 5.0, 5.0]),
        boxes=boxes,
        passage=(np.array([x0, c - half, c - half]), np.array([x1, c + half, c + half])),
        projection=(0, 1),
    )


def _maze3d(width):
    # 20x20x3 arena: a 4-unit-thick divider at x=10 pierced by one narrow
    # full-height window slot, plus two partial walls that force a zigzag
    # toward it.  The slot is `width` wide in y (capped at 8); the divider
    # depth makes it a tunnel that straight roadmap edges rarely thread by
    # luck, which is what separates bridge samplers in this scene.
    wy = min(width, 8.0)
    yc = 15.0
    x0, x1 = 8.0, 12.0
    boxes = [
        (np.array([x0, 0.0, 0.0]), np.array([x1, yc - wy / 2.0, 3.0])),
        (np.array([x0, yc + wy / 2.0, 0.0]), np.array([x1, 20.0, 3.0])),
        (np.array([0.0, 9.5, 0.0]), np.array([6.0, 10.5, 3.0])),
        (np.array([14.0, 9.5, 0.0]), np.array([20.0, 10.5, 3.0])),
    ]
    return Scene(
        name="maze3d",
        dims=3,
        lo=np.zeros(3),
        hi=np.array([20.0, 20.0, 3.0]),
        boxes=boxes,
        passage=(
            np.array([x0, yc - wy / 2.0, 0.0]),
            np.array([x1, yc + wy / 2.0, 3.0]),
        ),
        projection=(0, 1),
    )


_BUILDERS = {
    "bar2d": _bar2d,
    "joint2d": _joint2d,
    "joint3d": _joint3d,
    "teeth3d": _teeth3d,
    "tunnel3d": _tunnel3d,
    "maze3d": _maze3d,
}

# Canonical start/goal translations for planning queries, one per builtin.
DEFAULT_QUERIES = {
    "bar2d": ((50.0, 2.0), (50.0, 98.0)),
    "joint2d": ((85.0, 10.0), (10.0, 90.0)),
    "joint3d": ((85.0, 50.0, 10.0), (10.0, 50.0, 90.0)),
    "teeth3d": ((5.0, 50.0, 20.0), (95.0, 50.0, 80.0)),
    "tunnel3d": ((2.0, 2.5, 2.5), (18.0, 2.5, 2.5)),
    "maze3d": ((3.0, 3.0, 1.5), (17.0, 3.0, 1.5)),
}


def builtin(name: str, passage_width: float | None = None) -> Scene:
    """Construct a builtin benchmark scene with the given passage width."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown scene '{name}' (choose from {', '.join(BUILTIN_NAMES)})")
    if passage_width is None:
        passage_width = DEFAULT_WIDTHS[name]
    scene_probe = _BUILDERS[name]
    extent = {
        "bar2d": 100.0, "joint2d": 100.0, "joint3d": 100.0,
        "teeth3d": 100.0, "tunnel3d": 20.0, "maze3d": 20.0,
    }[name]
    if not 0.0 < passage_width < extent:
        raise ValueError(f"passage width {passage_width} out of range (0, {extent}) for {name}")
    return scene_probe(float(passage_width))


def default_query(name: str):
    """Canonical (start, goal) translation pair for a builtin scene."""
    if name not in DEFAULT_QUERIES:
        raise ValueError(f"unknown scene '{name}'")
    start, goal = DEFAULT_QUERIES[name]
    return np.array(start), np.array(goal)


class SceneParseError(ValueError):
    """Scene file error with a 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def _tokenize(line: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _floats(tokens, lineno, start=1):
    values = []
    for tok, col in tokens[start:]:
        try:
            values.append(float(tok))
        except ValueError:
            raise SceneParseError(f"expected a number, got '{tok}'", lineno, col) from None
    return values


def load_scene(text: str) -> Scene:
    """Parse scene-format text into a validated Scene."""
    name = None
    dims = None
    bounds = None
    projection = None
    polygons = []
    boxes = []
    passage = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _tokenize(line)
        if not tokens:
            continue
        key, key_col = tokens[0]
        if key == "name":
            if len(tokens) != 2:
                raise SceneParseError("name takes exactly one token", lineno, key_col)
            name = tokens[1][0]
        elif key == "dims":
            vals = _floats(tokens, lineno)
            if len(vals) != 1 or vals[0] not in (2.0, 3.0):
                raise SceneParseError("dims must be 2 or 3", lineno, key_col)
            dims = int(vals[0])
        elif key == "bounds":
            vals = _floats(tokens, lineno)
            if len(vals) % 2 != 0 or len(vals) < 4:
                raise SceneParseError("bounds needs lo/hi per axis", lineno, key_col)
            bounds = np.array(vals, dtype=float).reshape(-1, 2)
        elif key == "projection":
            vals = _floats(tokens, lineno)
            if len(vals) != 2:
                raise SceneParseError("projection takes two axis indices", lineno, key_col)
            projection = (int(vals[0]), int(vals[1]))
        elif key == "polygon":
            vals = _floats(tokens, lineno)
            if len(vals) % 2 != 0:
                raise SceneParseError("polygon needs x y pairs", lineno, key_col)
            if len(vals) < 6:
                raise SceneParseError("polygon requires >= 3 vertices", lineno, key_col)
            polygons.append((np.array(vals).reshape(-1, 2), lineno, key_col))
        elif key == "box":
            vals = _floats(tokens, lineno)
            if len(vals) != 6:
                raise SceneParseError("box takes 6 numbers (min xyz, max xyz)", lineno, key_col)
            boxes.append(((np.array(vals[:3]), np.array(vals[3:])), lineno, key_col))
        elif key == "passage":
            vals = _floats(tokens, lineno)
            if len(vals) not in (4, 6):
                raise SceneParseError("passage takes 2*dims numbers", lineno, key_col)
            half = len(vals) // 2
            passage = ((np.array(vals[:half]), np.array(vals[half:])), lineno, key_col)
        else:
            raise SceneParseError(f"unknown directive '{key}'", lineno, key_col)
    last = text.count("\n") + 1
    if dims is None:
        raise SceneParseError("missing required key 'dims'", last)
    if name is None:
        raise SceneParseError("missing required key 'name'", last)
    if bounds is None:
        raise SceneParseError("missing required key 'bounds'", last)
    if bounds.shape[0] != dims:
        raise SceneParseError(f"bounds has {bounds.shape[0]} axes, dims is {dims}", last)
    try:
        return Scene(
            name=name,
            dims=dims,
            lo=bounds[:, 0],
            hi=bounds[:, 1],
            polygons=[p for p, _, _ in polygons],
            boxes=[b for b, _, _ in boxes],
            passage=passage[0] if passage else None,
            projection=projection,
        )
    except ValueError as err:
        # attribute invariant failures to the most plausible source line
        msg = str(err)
        for poly, lineno, col in polygons:
            try:
                validate_polygon(poly)
            except ValueError as perr:
                raise SceneParseError(str(perr), lineno, col) from None
        for (mn, mx), lineno, col in boxes:
            if np.any(mx <= mn):
                raise SceneParseError("box must have positive extents", lineno, col) from None
        if passage is not None:
            raise SceneParseError(msg, passage[1], passage[2]) from None
        raise SceneParseError(msg, last) from None


def serialize_scene(scene: Scene) -> str:
    """Render a Scene in the scene file format (repr floats, round-trip exact)."""
    lines = [
        "# narrow-pass scene v1",
        f"name {scene.name}",
        f"dims {scene.dims}",
        "bounds " + " ".join(f"{repr(float(l))} {repr(float(h))}" for l, h in zip(scene.lo, scene.hi)),
    ]
    if scene.projection is not None:
        lines.append(f"projection {scene.projection[0]} {scene.projection[1]}")
    for poly in scene.polygons:
        lines.append("polygon " + " ".join(repr(float(v)) for v in poly.ravel()))
    for mn, mx in scene.boxes:
        lines.append(
            "box "
            + " ".join(repr(float(v)) for v in mn)
            + " "
            + " ".join(repr(float(v)) for v in mx)
        )
    if scene.passage is not None:
        pmn, pmx = scene.passage
        lines.append(
            "passage "
            + " ".join(repr(float(v)) for v in pmn)
            + " "
            + " ".join(repr(float(v)) for v in pmx)
        )
    return "\n".join(lines) + "\n"
