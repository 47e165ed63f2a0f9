"""Triangulated base spaces: ordered simplicial complexes with skeletal
filtrations, plus the built-in examples used throughout the package."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class ComplexError(ValueError):
    """Raised for malformed complexes or unsupported requests."""


Simplex = tuple[int, ...]


def _as_simplex(t) -> Simplex:
    s = tuple(int(v) for v in t)
    if any(v <= 0 for v in s):
        raise ComplexError(f"vertex ids must be positive integers: {s}")
    return s


@dataclass(frozen=True)
class OrientedFace:
    """A 2-simplex together with its coherent-orientation sign."""

    face: Simplex
    sign: int


@dataclass(frozen=True)
class ValidationReport:
    closure: list = field(default_factory=list)      # missing facets
    ordering: list = field(default_factory=list)     # non-increasing tuples
    orientation: list = field(default_factory=list)  # incoherent edges

    def ok(self) -> bool:
        return not (self.closure or self.ordering or self.orientation)

    def to_json(self) -> dict:
        return {
            "closure_violations": [list(s) for s in self.closure],
            "ordering_violations": [list(s) for s in self.ordering],
            "orientation_violations": [list(s) for s in self.orientation],
            "ok": self.ok(),
        }


class SkeletalComplex:
    """An ordered simplicial complex of dimension 1..3.

    Vertex ids are positive integers and the total order is numeric; every
    stored tuple is strictly increasing.  2-dimensional closed complexes may
    carry a global orientation, one sign per top simplex, coherent across
    shared edges.  Instances are immutable values.
    """

    def __init__(self, name: str, dim: int, simplices: dict[int, list],
                 orientation: dict[Simplex, int] | None = None):
        if dim not in (1, 2, 3):
            raise ComplexError(f"dimension must be 1, 2 or 3, got {dim}")
        self.name = name
        self.dim = dim
        self.simplices: dict[int, frozenset[Simplex]] = {}
        for k in range(1, dim + 1):
            entries = simplices.get(k, [])
            self.simplices[k] = frozenset(_as_simplex(s) for s in entries)
            for s in self.simplices[k]:
                if len(s) != k + 1:
                    raise ComplexError(f"{s} is not a {k}-simplex")
        vertices = set()
        for k in self.simplices:
            for s in self.simplices[k]:
                vertices.update(s)
        self.vertices: tuple[int, ...] = tuple(sorted(vertices))
        self.orientation = None
        if orientation is not None:
            self.orientation = {_as_simplex(f): int(s)
                                for f, s in orientation.items()}
            if set(self.orientation) != set(self.simplices.get(2, ())):
                raise ComplexError("orientation must cover exactly the faces")
            if any(s not in (1, -1) for s in self.orientation.values()):
                raise ComplexError("orientation signs must be +-1")

    def __repr__(self):
        counts = {k: len(v) for k, v in self.simplices.items()}
        return f"SkeletalComplex({self.name!r}, dim={self.dim}, {counts})"

    def has_simplex(self, s: Simplex) -> bool:
        k = len(s) - 1
        if k == 0:
            return s[0] in self.vertices
        return k in self.simplices and tuple(s) in self.simplices[k]

    def edges(self) -> list[Simplex]:
        return sorted(self.simplices[1])

    def faces(self) -> list[Simplex]:
        return sorted(self.simplices.get(2, ()))

    def cells3(self) -> list[Simplex]:
        return sorted(self.simplices.get(3, ()))

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "dim": self.dim,
            "simplices": {
                str(k): sorted(list(s) for s in self.simplices[k])
                for k in sorted(self.simplices)
            },
        }
        if self.orientation is not None:
            out["orientation"] = {
                simplex_key(f): s for f, s in sorted(self.orientation.items())
            }
        return out


def simplex_key(s: Simplex) -> str:
    """File key for a simplex; vertex ids above 9 would be ambiguous."""
    if any(v > 9 for v in s):
        raise ComplexError(f"cannot form a digit key for {s}")
    return "".join(str(v) for v in s)


def parse_simplex_key(key: str) -> Simplex:
    return tuple(int(ch) for ch in key)


def from_json_dict(data: dict) -> "SkeletalComplex":
    simplices = {int(k): [tuple(s) for s in v]
                 for k, v in data["simplices"].items()}
    orientation = None
    if data.get("orientation") is not None:
        orientation = {parse_simplex_key(k): v
                       for k, v in data["orientation"].items()}
    return SkeletalComplex(data["name"], int(data["dim"]), simplices,
                           orientation)


# ---------------------------------------------------------------------------
# validation


def _boundary_coefficient(face: Simplex, edge: Simplex) -> int:
    """Coefficient of an edge in the simplicial boundary of a face."""
    for i in range(3):
        if tuple(face[:i] + face[i + 1:]) == edge:
            return 1 if i % 2 == 0 else -1
    return 0


def validate(c: SkeletalComplex) -> ValidationReport:
    """Check closure, vertex ordering, and orientation coherence."""
    closure = []
    ordering = []
    orientation = []
    for k in sorted(c.simplices):
        for s in c.simplices[k]:
            if list(s) != sorted(set(s)):
                ordering.append(s)
                continue
            if k == 1:
                continue
            for facet in itertools.combinations(s, k):
                if not c.has_simplex(facet):
                    closure.append(facet)
    if c.orientation is not None:
        edge_usage: dict[Simplex, int] = {}
        for f, sign in c.orientation.items():
            for edge in itertools.combinations(f, 2):
                coeff = _boundary_coefficient(f, edge)
                edge_usage[edge] = edge_usage.get(edge, 0) + sign * coeff
        for edge, total in sorted(edge_usage.items()):
            if total != 0:
                orientation.append(edge)
    return ValidationReport(sorted(set(closure)), sorted(set(ordering)),
                            orientation)


def oriented_faces(c: SkeletalComplex) -> list[OrientedFace]:
    """The faces of a closed oriented 2D complex with their signs."""
    if c.dim != 2:
        raise ComplexError(f"{c.name} is not 2-dimensional")
    if c.orientation is None:
        raise ComplexError(f"{c.name} carries no orientation")
    return [OrientedFace(f, c.orientation[f]) for f in c.faces()]


# ---------------------------------------------------------------------------
# built-ins

# Five-vertex sphere: v1, v2, v3 on the equator running west to east with
# v3 on the prime meridian, v4 the north pole, v5 the south pole.  The
# orientation signs are the outward ones; they are what makes the round
# Levi-Civita field come out at charge +2 rather than -2.
_S2_FIVE_FACES = {
    (1, 2, 4): 1, (2, 3, 4): 1, (1, 3, 4): -1,
    (1, 2, 5): -1, (2, 3, 5): -1, (1, 3, 5): 1,
}

# Boundary of the 3-simplex, outward orientation for the standard embedding
# with vertices at (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) normalized.
_S2_TETRA_FACES = {
    (1, 2, 3): 1, (1, 2, 4): -1, (1, 3, 4): 1, (2, 3, 4): -1,
}

# Default separating equator cycles used by the CLI charge routes.
BUILTIN_EQUATORS = {
    "s2_five_vertex": (1, 2, 3),
    "s2_tetra": (1, 2, 3),
}

BUILTIN_NAMES = ("s2_five_vertex", "s2_tetra", "s3_pentachoron")


def _closed_downward(top: list[Simplex]) -> dict[int, list[Simplex]]:
    out: dict[int, set[Simplex]] = {}
    for s in top:
        k = len(s) - 1
        for j in range(1, k + 1):
            out.setdefault(j, set()).update(itertools.combinations(s, j + 1))
    return {k: sorted(v) for k, v in out.items()}


def build_builtin(name: str) -> SkeletalComplex:
    """Construct one of the built-in triangulations by name."""
    if name == "s2_five_vertex":
        simplices = _closed_downward(list(_S2_FIVE_FACES))
        return SkeletalComplex(name, 2, simplices, dict(_S2_FIVE_FACES))
    if name == "s2_tetra":
        simplices = _closed_downward(list(_S2_TETRA_FACES))
        return SkeletalComplex(name, 2, simplices, dict(_S2_TETRA_FACES))
    if name == "s3_pentachoron":
        tetras = [t for t in itertools.combinations(range(1, 6), 4)]
        simplices = _closed_downward(tetras)
        return SkeletalComplex(name, 3, simplices)
    raise ComplexError(f"unknown builtin complex {name!r}; "
                       f"choose from {BUILTIN_NAMES}")
