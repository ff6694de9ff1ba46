"""Axis-parallel grid paths, their validation, and the instance file format.

A path is stored by its breakpoints only: the two endpoints plus every bend
corner. Coordinates are integer lattice units, so a segment's length is the
number of lattice steps it spans and the set of grid points a path occupies
is finite and exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

GridPoint = tuple[int, int]

DEFAULT_BBOX = (10**6, 10**6)

# Violation kinds reported by validate_path.
DIAGONAL = "DiagonalSegment"
ZERO_LENGTH = "ZeroLengthSegment"
COLLINEAR = "CollinearBreakpoint"
TOO_MANY_BENDS = "TooManyBends"
SELF_INTERSECTING = "SelfIntersecting"
OUT_OF_BOUNDS = "OutOfBounds"


class InstanceError(ValueError):
    """Raised when an instance file cannot be parsed or fails validation."""


class EmptyInstance(InstanceError):
    pass


@dataclass(frozen=True)
class GridPath:
    id: int
    weight: Fraction
    vertices: tuple[GridPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(
            self, "vertices", tuple((int(x), int(y)) for x, y in self.vertices)
        )

    @property
    def bends(self) -> int:
        return max(len(self.vertices) - 2, 0)

    @property
    def segments(self) -> list[tuple[GridPoint, GridPoint]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def segment_lengths(self) -> list[int]:
        return [abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in self.segments]

    def reversed(self) -> GridPath:
        return GridPath(self.id, self.weight, self.vertices[::-1])


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int
    detail: str = ""

    def __str__(self):
        s = f"{self.kind} at vertex {self.index}"
        return f"{s} ({self.detail})" if self.detail else s


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]


def _direction(a: GridPoint, b: GridPoint) -> str | None:
    if a[0] == b[0] and a[1] != b[1]:
        return "v"
    if a[1] == b[1] and a[0] != b[0]:
        return "h"
    return None


def _walk(a: GridPoint, b: GridPoint) -> Iterator[GridPoint]:
    """Lattice points from a (exclusive) to b (inclusive) on an axis-parallel segment."""
    dx = (b[0] > a[0]) - (b[0] < a[0])
    dy = (b[1] > a[1]) - (b[1] < a[1])
    x, y = a
    while (x, y) != b:
        x += dx
        y += dy
        yield (x, y)


def validate_path(
    path: GridPath, k: int, bbox: tuple[int, int] = DEFAULT_BBOX
) -> ValidationResult:
    """Check a path against bend budget ``k`` and the bounding box ``[0, W] x [0, H]``.

    Every violation found is reported, each tagged with the index of the
    offending vertex. For segment-level problems that is the index of the
    segment's first vertex.
    """
    vs = path.vertices
    out: list[Violation] = []
    if not vs:
        return ValidationResult((Violation(ZERO_LENGTH, 0, "no vertices"),))

    w, h = bbox
    for i, (x, y) in enumerate(vs):
        if not (0 <= x <= w and 0 <= y <= h):
            out.append(Violation(OUT_OF_BOUNDS, i, f"({x},{y}) outside [0,{w}]x[0,{h}]"))

    dirs: list[str | None] = []
    for i, (a, b) in enumerate(zip(vs, vs[1:])):
        if a == b:
            out.append(Violation(ZERO_LENGTH, i))
            dirs.append(None)
            continue
        d = _direction(a, b)
        if d is None:
            out.append(Violation(DIAGONAL, i))
        dirs.append(d)

    for i in range(1, len(dirs)):
        if dirs[i] is not None and dirs[i] == dirs[i - 1]:
            out.append(Violation(COLLINEAR, i))

    if path.bends > k:
        out.append(
            Violation(TOO_MANY_BENDS, k + 1, f"found {path.bends}, allowed {k}")
        )

    # Simplicity is only meaningful once every segment is axis-parallel.
    if all(d is not None for d in dirs):
        seen = {vs[0]}
        for i, (a, b) in enumerate(zip(vs, vs[1:])):
            hit = next((p for p in _walk(a, b) if p in seen), None)
            if hit is not None:
                out.append(Violation(SELF_INTERSECTING, i, f"revisits {hit}"))
                break
            seen.update(_walk(a, b))

    out.sort(key=lambda v: v.index)
    return ValidationResult(tuple(out))


def grid_points(path: GridPath) -> frozenset[GridPoint]:
    """Lattice points covered by a valid path, corners and endpoints included."""
    vs = path.vertices
    pts = {vs[0]}
    for a, b in zip(vs, vs[1:]):
        pts.update(_walk(a, b))
    return frozenset(pts)


def point_bound(c: int, k: int) -> int:
    """The approximation bound ``c*k + c + 1``."""
    return c * k + c + 1


def derive_c(paths: Iterable[GridPath]) -> int:
    """Longest segment length over all paths, floored at 1.

    Raises EmptyInstance when there are no paths at all.
    """
    paths = list(paths)
    if not paths:
        raise EmptyInstance("instance has no paths")
    return max((L for p in paths for L in p.segment_lengths()), default=0) or 1


@dataclass(frozen=True)
class Instance:
    k: int
    paths: tuple[GridPath, ...] = field(default=())
    bbox: tuple[int, int] = DEFAULT_BBOX

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        if self.k < 0:
            raise InstanceError(f"bend budget k must be >= 0, got {self.k}")
        ids = [p.id for p in self.paths]
        if len(set(ids)) != len(ids):
            raise InstanceError("path ids are not unique")
        if any(i < 0 for i in ids):
            raise InstanceError("path ids must be non-negative")

    @property
    def n(self) -> int:
        return len(self.paths)

    @property
    def c(self) -> int:
        return derive_c(self.paths)

    @property
    def bound(self) -> int:
        return point_bound(self.c, self.k)

    def by_id(self) -> dict[int, GridPath]:
        return {p.id: p for p in self.paths}

    def weights(self) -> dict[int, Fraction]:
        return {p.id: p.weight for p in self.paths}

    def validate(self) -> dict[int, ValidationResult]:
        """Per-path validation results for the paths that fail."""
        bad = {}
        for p in self.paths:
            r = validate_path(p, self.k, self.bbox)
            if not r.ok:
                bad[p.id] = r
        return bad

    def check(self) -> Instance:
        bad = self.validate()
        if bad:
            pid, r = next(iter(bad.items()))
            raise InstanceError(f"path {pid}: {r.violations[0]}")
        return self


# --- instance file format -------------------------------------------------

def parse_weight(raw) -> Fraction:
    if isinstance(raw, bool):
        raise InstanceError(f"invalid weight {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, Decimal):
        if not raw.is_finite():
            raise InstanceError(f"non-finite weight {raw}")
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InstanceError(f"invalid weight string {raw!r}") from e
    raise InstanceError(f"invalid weight {raw!r}")


def format_weight(w: Fraction):
    """Integers stay JSON numbers; everything else becomes a "p/q" string."""
    return int(w) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _reject_constant(name):
    raise InstanceError(f"non-finite number {name}")


def instance_from_dict(doc, bbox: tuple[int, int] = DEFAULT_BBOX) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    extra = set(doc) - {"k", "paths"}
    if extra:
        raise InstanceError(f"unknown fields: {sorted(extra)}")
    if "k" not in doc or "paths" not in doc:
        raise InstanceError("instance needs both 'k' and 'paths'")
    k = doc["k"]
    if not isinstance(k, int) or isinstance(k, bool):
        raise InstanceError(f"k must be an integer, got {k!r}")
    if not isinstance(doc["paths"], list):
        raise InstanceError("'paths' must be a list")

    paths = []
    for entry in doc["paths"]:
        if not isinstance(entry, dict):
            raise InstanceError("each path must be an object")
        extra = set(entry) - {"id", "weight", "vertices"}
        if extra:
            raise InstanceError(f"unknown path fields: {sorted(extra)}")
        try:
            pid, raw_w, raw_v = entry["id"], entry["weight"], entry["vertices"]
        except KeyError as e:
            raise InstanceError(f"path is missing field {e}") from None
        if not isinstance(pid, int) or isinstance(pid, bool):
            raise InstanceError(f"path id must be an integer, got {pid!r}")
        if not isinstance(raw_v, list) or not raw_v:
            raise InstanceError(f"path {pid}: vertices must be a non-empty list")
        verts = []
        for v in raw_v:
            if (
                not isinstance(v, list)
                or len(v) != 2
                or not all(isinstance(a, int) and not isinstance(a, bool) for a in v)
            ):
                raise InstanceError(f"path {pid}: vertex {v!r} is not an integer pair")
            verts.append((v[0], v[1]))
        paths.append(GridPath(pid, parse_weight(raw_w), tuple(verts)))
    return Instance(k, tuple(paths), bbox)


def loads_instance(text: str, bbox: tuple[int, int] = DEFAULT_BBOX) -> Instance:
    try:
        doc = json.loads(text, parse_float=Decimal, parse_constant=_reject_constant)
    except (json.JSONDecodeError, InvalidOperation) as e:
        raise InstanceError(f"malformed JSON: {e}") from e
    return instance_from_dict(doc, bbox)


def load_instance(path, bbox: tuple[int, int] = DEFAULT_BBOX) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read(), bbox)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "k": inst.k,
        "paths": [
            {
                "id": p.id,
                "weight": format_weight(p.weight),
                "vertices": [list(v) for v in p.vertices],
            }
            for p in inst.paths
        ],
    }


def dumps_instance(inst: Instance) -> str:
    """Serialize with one path per line, stable across runs."""
    doc = instance_to_dict(inst)
    lines = [json.dumps(p, separators=(", ", ": ")) for p in doc["paths"]]
    body = ",\n    ".join(lines)
    if not lines:
        return f'{{"k": {inst.k}, "paths": []}}\n'
    return f'{{"k": {inst.k}, "paths": [\n    {body}\n]}}\n'


def make_instance(k: int, paths: Sequence, bbox: tuple[int, int] = DEFAULT_BBOX) -> Instance:
    """Shorthand: ``paths`` is a list of ``(weight, vertices)``; ids are positions."""
    return Instance(k, tuple(GridPath(i, w, tuple(v)) for i, (w, v) in enumerate(paths)), bbox)
