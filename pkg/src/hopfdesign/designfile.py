"""JSON design files.

Layout::

    {
      "sphere": "s3",
      "points": [[re_a, im_a, re_b, im_b], ...],
      "weights": [w0, w1, ...],        # optional, defaults to 1/N each
      "meta": {...}                     # optional, free-form
    }

S^1 rows are ``[re, im]`` and S^2 rows ``[xi, re_eta, im_eta]``.  Floats are
written with 17 significant digits so every value round-trips exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import IO

import numpy as np

from .errors import OffSphere, ParseError
from .sphere import COORD_DIM, SPHERES, WeightedDesign, project_to_sphere


def _num(x: float) -> str:
    return format(float(x), ".17g")


def dumps(design: WeightedDesign) -> str:
    rows = ",\n".join(
        "    [" + ", ".join(_num(v) for v in row) + "]" for row in design.coords
    )
    weights = ", ".join(_num(w) for w in design.weights)
    meta = json.dumps(design.meta, sort_keys=True, ensure_ascii=False)
    return (
        "{\n"
        f'  "sphere": "{design.sphere}",\n'
        f'  "points": [\n{rows}\n  ],\n'
        f'  "weights": [{weights}],\n'
        f'  "meta": {meta}\n'
        "}\n"
    )


def write_design(design: WeightedDesign, target: str | Path | IO[str]) -> None:
    text = dumps(design)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def loads(text: str, sphere: str | None = None, renormalize: bool = False) -> WeightedDesign:
    """Parse a design file body.

    Raises ParseError for malformed content and OffSphere when a point
    misses the unit sphere, unless ``renormalize`` projects it back.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("design file must hold a JSON object")
    declared = doc.get("sphere")
    if declared not in SPHERES:
        raise ParseError(f"field 'sphere' must be one of {SPHERES}, got {declared!r}")
    if sphere is not None and declared != sphere:
        raise ParseError(f"expected a {sphere} design, file holds {declared}")
    points = doc.get("points")
    if not isinstance(points, list) or not points:
        raise ParseError("field 'points' must be a non-empty array")
    dim = COORD_DIM[declared]
    for n, row in enumerate(points):
        if (not isinstance(row, list) or len(row) != dim
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in row)):
            raise ParseError(f"point {n} must be an array of {dim} numbers")
    coords = np.array(points, dtype=float)
    if not np.all(np.isfinite(coords)):
        raise ParseError("non-finite coordinate")

    weights = doc.get("weights")
    if weights is not None:
        if (not isinstance(weights, list) or len(weights) != len(points)
                or not all(isinstance(w, (int, float)) and not isinstance(w, bool) for w in weights)):
            raise ParseError("field 'weights' must be an array with one number per point")
        if not all(math.isfinite(w) and w > 0 for w in weights):
            raise ParseError("weights must be positive")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise ParseError("field 'meta' must be an object")

    if renormalize:
        coords = project_to_sphere(coords)
        if weights is not None:
            total = math.fsum(weights)
            weights = [w / total for w in weights]
    try:
        return WeightedDesign(declared, coords, weights, meta)
    except OffSphere:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_design(source: str | Path | IO[str], sphere: str | None = None,
                renormalize: bool = False) -> WeightedDesign:
    if hasattr(source, "read"):
        text = source.read()
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
    return loads(text, sphere=sphere, renormalize=renormalize)
