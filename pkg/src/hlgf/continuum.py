"""Continuum connections as numeric transport oracles, and the cutoff map
turning them into lattice fields.

Built-in complexes embed on round spheres: the 2D ones on the unit sphere
in R^3, the pentachoron boundary on the unit sphere in R^4.  Paths inside
simplices are piecewise geodesics through the control points of the
standard face parametrization: the path at homotopy parameter s runs from
the last vertex through a point sliding along the opposite edge.

Angle orientation on the 2-sphere is fixed by the right-handed frame
(e1, n x e1) at each point, with n the outward normal.  Under this
convention the round Levi-Civita field reproduces the reference face
lifts with their signs, and the charge of the round field is +2.
"""

from __future__ import annotations

import math

import numpy as np

from . import gauge_group as gg
from .complexes import ComplexError, SkeletalComplex
from .field import CUTOFF_TOL, HLGF, new_field
from .gauge_group import GroupElement, LoopClass, TWO_PI


class LiftAmbiguityError(RuntimeError):
    """Phase tracking saw a jump too close to pi; the resolution is too
    small to follow the winding."""


class OracleError(ValueError):
    pass


MIN_RESOLUTION = 16
_JUMP_GUARD = 0.9 * math.pi


# ---------------------------------------------------------------------------
# embeddings


def builtin_embedding(name: str) -> dict[int, np.ndarray]:
    """Unit-sphere coordinates for the built-in complexes."""
    if name == "s2_five_vertex":
        lon = {1: 2 * math.pi / 3, 2: 4 * math.pi / 3, 3: 0.0}
        pts = {v: np.array([math.cos(l), math.sin(l), 0.0])
               for v, l in lon.items()}
        pts[4] = np.array([0.0, 0.0, 1.0])
        pts[5] = np.array([0.0, 0.0, -1.0])
        return pts
    if name == "s2_tetra":
        raw = {1: (1, 1, 1), 2: (1, -1, -1), 3: (-1, 1, -1), 4: (-1, -1, 1)}
        return {v: np.array(p, dtype=float) / math.sqrt(3.0)
                for v, p in raw.items()}
    if name == "s3_pentachoron":
        # regular 4-simplex: unit vectors in R^5 projected off the diagonal,
        # written in an orthonormal basis of that 4-dim subspace
        ones = np.ones(5) / math.sqrt(5.0)
        proj = np.eye(5) - np.outer(ones, ones)
        frame, _ = np.linalg.qr(proj[:, :4])
        pts = {}
        for idx in range(5):
            x = frame.T @ proj[idx]
            pts[idx + 1] = x / np.linalg.norm(x)
        return pts
    raise ComplexError(f"no embedding for complex {name!r}")


def _geodesic_point(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    p = (1.0 - t) * a + t * b
    n = np.linalg.norm(p)
    if n < 1e-12:
        raise OracleError("geodesic through antipodal points is ambiguous")
    return p / n


class SampledGeometry:
    """Control polylines for the generators of an embedded complex.

    Edge polylines run source to target.  The face homotopy for (i, j, k)
    is the family of paths k -> x(s) -> j with x sliding from v_j to v_i
    along the opposite edge; shared vertex anchors are the exact embedded
    coordinates.
    """

    def __init__(self, c: SkeletalComplex, resolution: int,
                 points: dict[int, np.ndarray] | None = None):
        if resolution < MIN_RESOLUTION:
            raise OracleError(f"resolution {resolution} below the minimum "
                              f"{MIN_RESOLUTION}")
        self.complex = c
        self.resolution = int(resolution)
        self.points = points or builtin_embedding(c.name)
        for v in c.vertices:
            if v not in self.points:
                raise OracleError(f"embedding missing vertex {v}")

    def edge_polyline(self, e) -> np.ndarray:
        i, j = e
        return np.stack([self.points[j], self.points[i]])

    def face_paths(self, s):
        """Yield (r+1) control polylines for the face homotopy."""
        i, j, k = s
        pk, pj, pi = self.points[k], self.points[j], self.points[i]
        r = self.resolution
        for step in range(r + 1):
            t = step / r
            x = pj if step == 0 else (pi if step == r
                                      else _geodesic_point(pj, pi, t))
            yield np.stack([pk, x, pj])


# ---------------------------------------------------------------------------
# oracles


class TransportOracle:
    """A continuum connection exposed as transport along control polylines.

    ``transport`` composes parallel transport along consecutive geodesic
    segments and returns the group value relative to the vertex
    trivialization; ``lift_transport`` follows a family of paths and
    tracks the unwrapped phase.
    """

    backend = "U1"
    name = "oracle"
    trivialization = "unspecified"

    def bind(self, geometry: SampledGeometry) -> None:
        """Attach vertex frames for a particular embedded complex."""

    def angle(self, points: np.ndarray, src: int, tgt: int) -> float:
        raise NotImplementedError

    def transport(self, points: np.ndarray, src: int, tgt: int) -> GroupElement:
        return gg.u1(self.angle(points, src, tgt))

    def lift_transport(self, paths, src: int, tgt: int) -> LoopClass:
        angles = [self.angle(p, src, tgt) for p in paths]
        theta0 = angles[0]
        lift = 0.0
        prev = theta0
        for a in angles[1:]:
            step = math.remainder(a - prev, TWO_PI)
            if abs(step) > _JUMP_GUARD:
                raise LiftAmbiguityError(
                    f"phase step {step:.3f} between adjacent paths; "
                    "increase the resolution")
            lift += step
            prev = a
        return LoopClass("U1", theta0=theta0, lift=lift)


def _rotation_between(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """The R^3 rotation taking a to b along their great circle; it is the
    parallel transport of tangent vectors along that geodesic arc."""
    c = float(np.dot(a, b))
    if c > 1.0 - 1e-15:
        return np.eye(3)
    if c < -1.0 + 1e-12:
        raise OracleError("cannot transport through antipodal points")
    axis = np.cross(a, b)
    s = np.linalg.norm(axis)
    axis = axis / s
    k = np.array([[0.0, -axis[2], axis[1]],
                  [axis[2], 0.0, -axis[0]],
                  [-axis[1], axis[0], 0.0]])
    return np.eye(3) + s * k + (1.0 - c) * (k @ k)


class RoundSphereOracle(TransportOracle):
    """Levi-Civita transport of unit tangent vectors on the round sphere.

    The frame at the base vertex (the northernmost one) is fixed; frames
    elsewhere are transported from it along vertex routes.  On the
    five-vertex triangulation the routes follow the reference convention:
    direct links for the equator vertices and the prime meridian through
    v3 for the south pole.
    """

    name = "round-sphere"
    trivialization = "transported from the northernmost vertex"

    def __init__(self):
        self._frames = None

    def bind(self, geometry: SampledGeometry) -> None:
        pts = geometry.points
        if next(iter(pts.values())).shape != (3,):
            raise OracleError("round-sphere oracle needs a 2-sphere base")
        base = min(pts, key=lambda v: (-pts[v][2], v))
        routes = {}
        for v in pts:
            if v == base:
                routes[v] = [base]
            elif np.dot(pts[v], pts[base]) < -1.0 + 1e-9:
                via = min(u for u in pts if u not in (v, base))
                if geometry.complex.name == "s2_five_vertex":
                    via = 3   # the prime meridian convention
                routes[v] = [base, via, v]
            else:
                routes[v] = [base, v]
        n = pts[base]
        seed = np.array([1.0, 0.0, 0.0])
        if abs(np.dot(seed, n)) > 0.9:
            seed = np.array([0.0, 1.0, 0.0])
        e1 = seed - np.dot(seed, n) * n
        e1 = e1 / np.linalg.norm(e1)
        frames = {base: (e1, np.cross(n, e1))}
        for v, route in sorted(routes.items()):
            if v == base:
                continue
            f1, _ = frames[base]
            vec = f1
            for a, b in zip(route, route[1:]):
                vec = _rotation_between(pts[a], pts[b]) @ vec
            nv = pts[v]
            vec = vec - np.dot(vec, nv) * nv
            vec = vec / np.linalg.norm(vec)
            frames[v] = (vec, np.cross(nv, vec))
        self._frames = frames

    def angle(self, points: np.ndarray, src: int, tgt: int) -> float:
        if self._frames is None:
            raise OracleError("oracle not bound to a geometry")
        e1, _ = self._frames[src]
        vec = e1
        for a, b in zip(points[:-1], points[1:]):
            if np.dot(a - b, a - b) < 1e-30:
                continue
            vec = _rotation_between(a, b) @ vec
        f1, f2 = self._frames[tgt]
        return math.atan2(float(np.dot(vec, f2)), float(np.dot(vec, f1)))


class MonopoleOracle(TransportOracle):
    """The charge-n Dirac monopole connection in two hemisphere charts.

    Potentials are the standard ones, oriented so that the cutoff charge
    equals n; the transition function on the equator winds n times.  The
    vertex trivialization is the chart section at each vertex (northern
    chart strictly above the equator, southern otherwise).
    """

    name = "monopole"
    trivialization = "hemisphere chart sections"

    # segments are subdivided and Simpson-integrated at this density
    SUBDIVISIONS = 24

    def __init__(self, n: int):
        if abs(n) > 8:
            raise OracleError("monopole charge limited to |n| <= 8")
        self.n = int(n)
        self.name = f"monopole:{n}"

    def bind(self, geometry: SampledGeometry) -> None:
        if next(iter(geometry.points.values())).shape != (3,):
            raise OracleError("monopole oracle needs a 2-sphere base")

    def _segment_phase(self, a: np.ndarray, b: np.ndarray) -> float:
        """Phase picked up along one geodesic segment: minus the integral
        of the chart potential, plus a transition jump if the segment
        changes hemisphere."""
        if self.n == 0:
            return 0.0
        na, nb = float(a[2]) > 0.0, float(b[2]) > 0.0
        if na == nb:
            return self._chart_integral(a, b, north=na)
        za, zb = float(a[2]), float(b[2])
        t = za / (za - zb)
        x = _geodesic_point(a, b, t)
        x[2] = 0.0
        x = x / np.linalg.norm(x)
        phi = math.atan2(x[1], x[0])
        jump = -self.n * phi if na else self.n * phi
        if t <= 0.0:
            return jump + self._chart_integral(a, b, north=nb)
        if t >= 1.0:
            return self._chart_integral(a, b, north=na) + jump
        return (self._chart_integral(a, x, north=na) + jump
                + self._chart_integral(x, b, north=nb))

    def _chart_integral(self, a: np.ndarray, b: np.ndarray,
                        north: bool) -> float:
        m = self.SUBDIVISIONS
        omega = math.acos(max(-1.0, min(1.0, float(np.dot(a, b)))))
        if omega < 1e-15:
            return 0.0
        t = np.linspace(0.0, 1.0, 2 * m + 1)
        sa = np.sin((1.0 - t) * omega) / math.sin(omega)
        sb = np.sin(t * omega) / math.sin(omega)
        p = np.outer(sa, a) + np.outer(sb, b)
        dp = (omega / math.sin(omega)) * (
            -np.outer(np.cos((1.0 - t) * omega), a)
            + np.outer(np.cos(t * omega), b))
        rho2 = p[:, 0] ** 2 + p[:, 1] ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            dphi = (p[:, 0] * dp[:, 1] - p[:, 1] * dp[:, 0]) / rho2
        dphi = np.where(rho2 < 1e-18, 0.0, dphi)
        z = p[:, 2]
        f = 0.5 * self.n * ((1.0 - z) if north else -(1.0 + z))
        g = f * dphi
        h = 1.0 / (2 * m)
        simpson = (g[0] + g[-1] + 4.0 * g[1:-1:2].sum()
                   + 2.0 * g[2:-2:2].sum()) * h / 3.0
        return -simpson

    def angle(self, points: np.ndarray, src: int, tgt: int) -> float:
        total = 0.0
        for a, b in zip(points[:-1], points[1:]):
            if np.dot(a - b, a - b) < 1e-30:
                continue
            total += self._segment_phase(np.asarray(a, dtype=float),
                                         np.asarray(b, dtype=float))
        return math.remainder(total, TWO_PI)


class TrivialOracle(TransportOracle):
    """The flat product connection: every transport is the identity."""

    name = "trivial"
    trivialization = "global product chart"

    def angle(self, points, src, tgt) -> float:
        return 0.0


class GaugedOracle(TransportOracle):
    """An oracle with its vertex trivializations rotated by g: X_0 -> U(1)."""

    def __init__(self, base: TransportOracle, assignment: dict[int, float]):
        self.base = base
        self.assignment = {int(v): float(a) for v, a in assignment.items()}
        self.name = base.name + "+gauge"
        self.trivialization = base.trivialization + ", rotated per vertex"

    def bind(self, geometry: SampledGeometry) -> None:
        self.base.bind(geometry)

    def angle(self, points, src: int, tgt: int) -> float:
        shift = self.assignment.get(tgt, 0.0) - self.assignment.get(src, 0.0)
        return math.remainder(self.base.angle(points, src, tgt) + shift,
                              TWO_PI)


def oracle_round_sphere() -> RoundSphereOracle:
    return RoundSphereOracle()


def oracle_monopole(n: int) -> MonopoleOracle:
    return MonopoleOracle(n)


def oracle_trivial() -> TrivialOracle:
    return TrivialOracle()


def oracle_by_name(name: str) -> TransportOracle:
    if name == "round-sphere":
        return oracle_round_sphere()
    if name == "trivial":
        return oracle_trivial()
    if name.startswith("monopole:"):
        return oracle_monopole(int(name.split(":", 1)[1]))
    raise OracleError(f"unknown oracle {name!r}; use round-sphere, "
                      "monopole:<n> or trivial")


# ---------------------------------------------------------------------------
# the cutoff map


def cutoff(oracle: TransportOracle, c: SkeletalComplex,
           resolution: int = 256,
           points: dict[int, np.ndarray] | None = None) -> HLGF:
    """Project a continuum connection to a lattice field by evaluating its
    transport on the generator paths and homotopies."""
    geom = SampledGeometry(c, resolution, points)
    oracle.bind(geom)
    edges = {}
    for e in c.edges():
        i, j = e
        edges[e] = oracle.transport(geom.edge_polyline(e), j, i)
    faces = {}
    for s in c.faces():
        i, j, k = s
        faces[s] = oracle.lift_transport(geom.face_paths(s), k, j)
    cells = None
    if c.dim >= 3:
        cells = {t: faces[t[1:]] for t in c.cells3()}
    return new_field(c, oracle.backend, edges, faces, cells, tol=CUTOFF_TOL)
