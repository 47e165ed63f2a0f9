"""Gauge fields on the homotopy lattice, in trivialized form.

A field assigns a group element to every edge generator, a loop class to
every face generator, and (on 3-dimensional bases) an endpoint 2-globe
datum to every tetrahedron.  Evaluation extends these assignments to
arbitrary globe words homomorphically.  Because pi_2 of a Lie group is
trivial, the tetrahedron datum is represented by the common homotopy class
of its boundary paths, a single loop class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import gauge_group as gg
from . import globes
from .complexes import (SkeletalComplex, Simplex, build_builtin,
                        from_json_dict, simplex_key, parse_simplex_key)
from .gauge_group import GroupElement, LoopClass, Pi1Element
from .globes import (Compose, Degenerate, Gen, GlobeWord, Invert, Vertex,
                     WordError, dim, face)

EXACT_TOL = 1e-9
CUTOFF_TOL = 1e-3


class FieldError(ValueError):
    """Raised for inconsistent or incomplete field data."""


@dataclass(frozen=True)
class Violation:
    simplex: Simplex
    condition: str           # "face-compat" or "extendibility"
    residual: float
    pi1: Pi1Element | None = None

    def to_json(self) -> dict:
        out = {"simplex": list(self.simplex), "condition": self.condition,
               "residual": self.residual}
        if self.pi1 is not None:
            out["pi1"] = self.pi1.to_json()
        return out


@dataclass(frozen=True)
class ConsistencyReport:
    violations: list = dc_field(default_factory=list)

    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok(),
                "violations": [v.to_json() for v in self.violations]}


class HLGF:
    """A homotopy lattice gauge field over a skeletal complex.

    Immutable after construction.  ``tol`` is the endpoint-matching
    tolerance used during evaluation; exact algebraic data uses 1e-9 and
    cutoff-produced data 1e-3.
    """

    def __init__(self, complex_: SkeletalComplex, backend: str,
                 edge_values: dict[Simplex, GroupElement],
                 face_values: dict[Simplex, LoopClass],
                 cell3_values: dict[Simplex, LoopClass] | None = None,
                 tol: float = EXACT_TOL):
        self.complex = complex_
        self.backend = backend
        self.edge_values = dict(edge_values)
        self.face_values = dict(face_values)
        self.cell3_values = dict(cell3_values or {})
        self.tol = tol

    def __repr__(self):
        return (f"HLGF({self.complex.name!r}, {self.backend}, "
                f"{len(self.edge_values)} edges, "
                f"{len(self.face_values)} faces)")


def evaluate(f: HLGF, w: GlobeWord):
    """Evaluate a field on a word: GroupElement for paths, LoopClass for
    globes of paths (and for 2-globes of paths, the boundary class)."""
    globes.check_word(w, f.complex)
    d = dim(w)
    if d > f.complex.dim:
        raise FieldError(f"word has dimension {d} but the base is "
                         f"{f.complex.dim}-dimensional")
    return _eval(f, w)


def _eval(f: HLGF, w: GlobeWord):
    if isinstance(w, Vertex):
        return gg.identity(f.backend)
    if isinstance(w, Gen):
        k = len(w.simplex)
        if k == 2:
            return f.edge_values[w.simplex]
        if k == 3:
            return f.face_values[w.simplex]
        return f.cell3_values[w.simplex]
    if isinstance(w, Degenerate):
        v = _eval(f, w.child)
        if isinstance(v, GroupElement) and w.high >= 2:
            return gg.loop_const(v)
        return v    # constant path at id, or a class lifted one level up
    if isinstance(w, Invert):
        v = _eval(f, w.child)
        d = dim(w)
        if d == 1:
            return gg.inv(v)
        if w.level == 0:
            return gg.loop_inv0(v)
        if w.level == 1:
            return gg.loop_inv1(v)
        return v    # swapping the boundaries of a 2-globe keeps its class
    if isinstance(w, Compose):
        va = _eval(f, w.left)
        vb = _eval(f, w.right)
        d = dim(w)
        if d == 1:
            return gg.mul(va, vb)
        if w.level == 0:
            return gg.loop_compose0(va, vb)
        if w.level == 1:
            return gg.loop_compose1(va, vb, tol=f.tol)
        if not va.close_to(vb, tol=f.tol):
            raise FieldError("level-2 gluing of unequal 2-globe classes")
        return va
    raise WordError(f"cannot evaluate {w!r}")


# ---------------------------------------------------------------------------
# construction


def _face_boundary_values(f: HLGF, s: Simplex) -> tuple[GroupElement, GroupElement]:
    i, j, k = s
    src = f.edge_values[(j, k)]
    tgt = gg.mul(gg.inv(f.edge_values[(i, j)]), f.edge_values[(i, k)])
    return src, tgt


def new_field(c: SkeletalComplex, backend: str,
              edge_values: dict[Simplex, GroupElement],
              face_values: dict[Simplex, LoopClass],
              cell3_values: dict[Simplex, LoopClass] | None = None,
              tol: float = EXACT_TOL) -> HLGF:
    """Build and validate a field, mirroring the generator order: edges are
    free, face endpoints must match the edge evaluations, and 3-cell
    endpoints must match the face evaluations."""
    if backend not in gg.BACKENDS:
        raise FieldError(f"unknown backend {backend!r}")
    for e in c.edges():
        if e not in edge_values:
            raise FieldError(f"missing edge value for {e}")
    for s in c.faces():
        if s not in face_values:
            raise FieldError(f"missing face value for {s}")
    f = HLGF(c, backend, edge_values, face_values, cell3_values, tol=tol)
    for s in c.faces():
        lc = face_values[s]
        if lc.backend != backend:
            raise FieldError(f"face {s} has backend {lc.backend}")
        src, tgt = _face_boundary_values(f, s)
        if not lc.source().close_to(src, tol):
            raise FieldError(
                f"face {s}: source endpoint off by "
                f"{gg.dist(lc.source(), src):.3g}")
        if not lc.target().close_to(tgt, tol):
            raise FieldError(
                f"face {s}: target endpoint off by "
                f"{gg.dist(lc.target(), tgt):.3g}")
    if c.dim >= 3:
        for t in c.cells3():
            if t not in f.cell3_values:
                raise FieldError(f"missing 3-cell value for {t}")
            lc = f.cell3_values[t]
            g = Gen(t)
            src = _eval(f, face(g, 1, -1))
            tgt = _eval(f, face(g, 1, 1))
            if not lc.source().close_to(src, tol):
                raise FieldError(f"3-cell {t}: source endpoint mismatch")
            if not lc.target().close_to(tgt, tol):
                raise FieldError(f"3-cell {t}: target endpoint mismatch")
    return f


def identity_field(c: SkeletalComplex, backend: str) -> HLGF:
    """Identity on every edge, constant loops on every face and cell."""
    e_id = gg.identity(backend)
    const = gg.loop_const(e_id)
    edges = {e: e_id for e in c.edges()}
    faces = {s: const for s in c.faces()}
    cells = {t: const for t in c.cells3()} if c.dim >= 3 else None
    return new_field(c, backend, edges, faces, cells)


# ---------------------------------------------------------------------------
# gauge transformations


def gauge_transform(f: HLGF, g: dict[int, GroupElement]) -> HLGF:
    """Act by a vertex assignment: values conjugate by the endpoint frames.

    Edges map to g_t . a . g_s^-1 and higher generators to the same formula
    with constant loop classes.
    """
    for v in f.complex.vertices:
        if v not in g:
            raise FieldError(f"gauge assignment missing vertex {v}")
    edges = {}
    for (i, j), a in f.edge_values.items():
        edges[(i, j)] = gg.mul(g[i], gg.mul(a, gg.inv(g[j])))
    faces = {}
    for (i, j, k), lc in f.face_values.items():
        faces[(i, j, k)] = _conjugate_loop(lc, g[j], g[k])
    cells = {}
    for (i, j, k, l), lc in f.cell3_values.items():
        cells[(i, j, k, l)] = _conjugate_loop(lc, g[k], g[l])
    return new_field(f.complex, f.backend, edges, faces, cells or None,
                     tol=f.tol)


def _conjugate_loop(lc: LoopClass, g_t: GroupElement,
                    g_s: GroupElement) -> LoopClass:
    left = gg.loop_const(g_t)
    right = gg.loop_inv0(gg.loop_const(g_s))
    return gg.loop_compose0(gg.loop_compose0(left, lc), right)


def change_trivialization(f: HLGF, psi: dict[int, GroupElement]) -> HLGF:
    """Re-express the field in a different vertex trivialization.

    The transformation formula coincides with a gauge transformation; the
    separate name records intent.
    """
    return gauge_transform(f, psi)


# ---------------------------------------------------------------------------
# consistency


def check_consistency(f: HLGF) -> ConsistencyReport:
    """Face compatibility everywhere, plus the tetrahedron extendibility
    condition on 3-dimensional bases."""
    violations = []
    for s in f.complex.faces():
        lc = f.face_values[s]
        src, tgt = _face_boundary_values(f, s)
        r = max(gg.dist(lc.source(), src), gg.dist(lc.target(), tgt))
        if r > f.tol:
            violations.append(Violation(s, "face-compat", r))
    if f.complex.dim >= 3:
        for t in f.complex.cells3():
            w = globes.tetra_boundary_word(f.complex, t)
            lc = evaluate(f, w)
            residual = gg.winding_residual(lc)
            try:
                cls = gg.pi1_class(lc, tol=f.tol)
            except (gg.WindingError, gg.NotBasedLoopError):
                violations.append(Violation(t, "extendibility",
                                            residual, None))
                continue
            if not cls.is_zero():
                mag = abs(lc.lift) if f.backend == "U1" else 1.0
                violations.append(Violation(t, "extendibility", mag, cls))
    return ConsistencyReport(violations)


# ---------------------------------------------------------------------------
# random fields


def random_field(c: SkeletalComplex, backend: str, seed: int,
                 winding_range: int = 2) -> HLGF:
    """A seeded random field: Haar edges, faces at the unique compatible
    lift plus a uniform winding in [-winding_range, winding_range] (U1) or
    a uniform sign (SO3)."""
    import random

    rng = random.Random(seed)
    edges = {e: gg.haar_element(backend, rng) for e in c.edges()}
    probe = HLGF(c, backend, edges, {}, None)
    faces = {}
    for s in c.faces():
        src, tgt = _face_boundary_values(probe, s)
        if backend == "U1":
            base = _principal_lift(src.angle, tgt.angle)
            k = rng.randint(-winding_range, winding_range)
            faces[s] = LoopClass("U1", theta0=src.angle,
                                 lift=base + gg.TWO_PI * k)
        elif backend == "SO3":
            sign = rng.choice((1.0, -1.0))
            q1 = tgt.quat if sign > 0 else gg.qneg(tgt.quat)
            faces[s] = LoopClass("SO3", q0=src.quat, q1=q1)
        else:
            faces[s] = LoopClass("SU2", q0=src.quat, q1=tgt.quat)
    cells = None
    if c.dim >= 3:
        probe = HLGF(c, backend, edges, faces, None)
        cells = {t: _cell_from_faces(probe, t) for t in c.cells3()}
    return new_field(c, backend, edges, faces, cells)


def _cell_from_faces(f: HLGF, t: Simplex) -> LoopClass:
    """The 2-globe datum determined by the negative boundary face."""
    return evaluate(f, face(Gen(t), 2, -1))


def _principal_lift(theta_src: float, theta_tgt: float) -> float:
    """The unique lift in (-pi, pi] from source angle to target angle."""
    d = math.fmod(theta_tgt - theta_src, gg.TWO_PI)
    if d > math.pi:
        d -= gg.TWO_PI
    elif d <= -math.pi:
        d += gg.TWO_PI
    return d


# ---------------------------------------------------------------------------
# serialization


def _element_to_json(e: GroupElement):
    return e.angle if e.backend == "U1" else list(e.quat)


def _element_from_json(backend: str, data) -> GroupElement:
    if backend == "U1":
        return gg.u1(float(data))
    return gg.quat_element(backend, data)


def _loop_to_json(lc: LoopClass) -> dict:
    if lc.backend == "U1":
        return {"source": lc.theta0,
                "target": gg._wrap_angle(lc.theta0 + lc.lift),
                "lift": lc.lift}
    return {"source": list(lc.q0), "target": list(lc.q1), "lift": 1}


def _loop_from_json(backend: str, data, where: str) -> LoopClass:
    if backend == "U1":
        lc = LoopClass("U1", theta0=float(data["source"]),
                       lift=float(data["lift"]))
        stored = gg.u1(float(data["target"]))
        if not lc.target().close_to(stored, 1e-6):
            raise FieldError(f"{where}: stored target disagrees with "
                             "source + lift")
        return lc
    sign = int(data.get("lift", 1))
    q1 = tuple(float(x) for x in data["target"])
    if sign < 0:
        q1 = gg.qneg(q1)
    return LoopClass(backend, q0=tuple(float(x) for x in data["source"]),
                     q1=q1)


def field_to_json_dict(f: HLGF, inline_complex: bool = False) -> dict:
    out = {
        "group": f.backend,
        "complex": (f.complex.to_json_dict() if inline_complex
                    else f.complex.name),
        "edges": {simplex_key(e): _element_to_json(v)
                  for e, v in sorted(f.edge_values.items())},
        "faces": {simplex_key(s): _loop_to_json(v)
                  for s, v in sorted(f.face_values.items())},
    }
    if f.cell3_values:
        out["cells3"] = {simplex_key(t): _loop_to_json(v)
                         for t, v in sorted(f.cell3_values.items())}
    if f.tol != EXACT_TOL:
        out["tolerance"] = f.tol
    return out


def field_from_json_dict(data: dict) -> HLGF:
    backend = data["group"]
    comp = data["complex"]
    c = build_builtin(comp) if isinstance(comp, str) else from_json_dict(comp)
    edges = {parse_simplex_key(k): _element_from_json(backend, v)
             for k, v in data["edges"].items()}
    faces = {parse_simplex_key(k): _loop_from_json(backend, v, f"face {k}")
             for k, v in data["faces"].items()}
    cells = None
    if "cells3" in data:
        cells = {parse_simplex_key(k): _loop_from_json(backend, v,
                                                       f"cell {k}")
                 for k, v in data["cells3"].items()}
    tol = float(data.get("tolerance", EXACT_TOL))
    return new_field(c, backend, edges, faces, cells, tol=tol)
