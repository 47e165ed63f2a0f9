"""Gauge-group backends with exact arithmetic on paths-in-the-group.

Three backends are supported:

* ``U1``   -- elements are angles in [0, 2pi); a path up to homotopy rel
  endpoints is a base angle plus an unwrapped real lift.
* ``SO3``  -- elements are unit quaternions up to sign; a path class is a
  lift pair (q0, q1) in the double cover, up to simultaneous sign flip.
* ``SU2``  -- elements are unit quaternions; path classes are endpoint
  pairs (the fundamental group is trivial).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

TWO_PI = 2.0 * math.pi

BACKENDS = ("U1", "SO3", "SU2")

DEFAULT_TOL = 1e-9      # endpoint matching for algebraically built data
WINDING_TOL = 1e-3      # how far a U1 lift may sit from 2*pi*Z
UNIT_TOL = 1e-12


class BackendMismatchError(ValueError):
    """Raised when values from different backends are combined."""


class EndpointMismatchError(ValueError):
    """Raised when a path concatenation does not meet end to end."""


class NotBasedLoopError(ValueError):
    """Raised when a fundamental-group class is requested of an open path."""


class WindingError(ValueError):
    """Raised when a U1 lift is not close to an integer multiple of 2*pi."""


# ---------------------------------------------------------------------------
# quaternions, stored as (w, x, y, z) tuples

Quat = tuple[float, float, float, float]

QUAT_ID: Quat = (1.0, 0.0, 0.0, 0.0)


def qmul(a: Quat, b: Quat) -> Quat:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def qconj(q: Quat) -> Quat:
    return (q[0], -q[1], -q[2], -q[3])


def qneg(q: Quat) -> Quat:
    return (-q[0], -q[1], -q[2], -q[3])


def qdot(a: Quat, b: Quat) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]


def qnormalize(q: Iterable[float]) -> Quat:
    w, x, y, z = q
    n = math.sqrt(w * w + x * x + y * y + z * z)
    if n < UNIT_TOL:
        raise ValueError("cannot normalize a near-zero quaternion")
    return (w / n, x / n, y / n, z / n)


def qchord(a: Quat, b: Quat) -> float:
    """Componentwise chord distance; keeps full precision near zero, where
    the dot-product formula loses half the significant digits."""
    return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
                     + (a[2] - b[2]) ** 2 + (a[3] - b[3]) ** 2)


def qchord_projective(a: Quat, b: Quat) -> float:
    return min(qchord(a, b), qchord(a, qneg(b)))


def _check_unit(q: Quat) -> Quat:
    n = math.sqrt(qdot(q, q))
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"quaternion not unit norm: |q| = {n}")
    if abs(n - 1.0) <= 1e-13:
        # leave the components untouched so serialization round-trips
        return q
    return (q[0] / n, q[1] / n, q[2] / n, q[3] / n)


def _wrap_angle(theta: float) -> float:
    """Reduce an angle to [0, 2pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    return t


def angle_dist(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


# ---------------------------------------------------------------------------
# group elements


class GroupElement:
    """A gauge-group element tagged with its backend.

    U1 carries ``angle`` (radians, reduced mod 2*pi); SO3 and SU2 carry a
    unit quaternion ``quat``.  SO3 elements are quaternions up to sign.
    """

    __slots__ = ("backend", "angle", "quat")

    def __init__(self, backend: str, angle: float | None = None,
                 quat: Quat | None = None):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        if backend == "U1":
            if angle is None:
                raise ValueError("U1 element needs an angle")
            self.angle = _wrap_angle(float(angle))
            self.quat = None
        else:
            if quat is None:
                raise ValueError(f"{backend} element needs a quaternion")
            self.angle = None
            self.quat = _check_unit(tuple(float(c) for c in quat))

    def __repr__(self):
        if self.backend == "U1":
            return f"GroupElement(U1, angle={self.angle:.12g})"
        return f"GroupElement({self.backend}, quat={self.quat})"

    def close_to(self, other: "GroupElement", tol: float = DEFAULT_TOL) -> bool:
        return dist(self, other) <= tol


def u1(angle: float) -> GroupElement:
    return GroupElement("U1", angle=angle)


def quat_element(backend: str, q: Iterable[float]) -> GroupElement:
    return GroupElement(backend, quat=tuple(q))


def identity(backend: str) -> GroupElement:
    if backend == "U1":
        return u1(0.0)
    return GroupElement(backend, quat=QUAT_ID)


def _same_backend(*values) -> str:
    tags = {v.backend for v in values}
    if len(tags) != 1:
        raise BackendMismatchError(f"mixed backends: {sorted(tags)}")
    return tags.pop()


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    backend = _same_backend(a, b)
    if backend == "U1":
        return u1(a.angle + b.angle)
    return GroupElement(backend, quat=qmul(a.quat, b.quat))


def inv(a: GroupElement) -> GroupElement:
    if a.backend == "U1":
        return u1(-a.angle)
    return GroupElement(a.backend, quat=qconj(a.quat))


def dist(a: GroupElement, b: GroupElement) -> float:
    """Bi-invariant distance: angular for U1, geodesic arc otherwise.

    For SO3 the distance is taken on the quotient SU(2)/{+-1}.
    """
    backend = _same_backend(a, b)
    if backend == "U1":
        return angle_dist(a.angle, b.angle)
    if backend == "SO3":
        c = qchord_projective(a.quat, b.quat)
    else:
        c = qchord(a.quat, b.quat)
    return 4.0 * math.asin(min(1.0, 0.5 * c))


# ---------------------------------------------------------------------------
# loop classes: paths in G up to homotopy rel endpoints


class LoopClass:
    """A 1-globe in the gauge group, up to homotopy rel endpoints.

    U1 stores ``(theta0, lift)`` for the class of t |-> exp(i(theta0 + t*lift)).
    The lift is an exact real and is never reduced mod 2*pi; all homotopy
    information lives in it.  SO3 and SU2 store a lift pair ``(q0, q1)`` of
    unit quaternions; for SO3 the pair is taken modulo a simultaneous sign
    flip.
    """

    __slots__ = ("backend", "theta0", "lift", "q0", "q1")

    def __init__(self, backend: str, theta0: float | None = None,
                 lift: float | None = None, q0: Quat | None = None,
                 q1: Quat | None = None):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        if backend == "U1":
            if theta0 is None or lift is None:
                raise ValueError("U1 loop class needs theta0 and lift")
            self.theta0 = _wrap_angle(float(theta0))
            self.lift = float(lift)
            self.q0 = self.q1 = None
        else:
            if q0 is None or q1 is None:
                raise ValueError(f"{backend} loop class needs a lift pair")
            self.theta0 = self.lift = None
            self.q0 = _check_unit(tuple(float(c) for c in q0))
            self.q1 = _check_unit(tuple(float(c) for c in q1))

    def __repr__(self):
        if self.backend == "U1":
            return f"LoopClass(U1, theta0={self.theta0:.12g}, lift={self.lift:.12g})"
        return f"LoopClass({self.backend}, q0={self.q0}, q1={self.q1})"

    def source(self) -> GroupElement:
        if self.backend == "U1":
            return u1(self.theta0)
        return GroupElement(self.backend, quat=self.q0)

    def target(self) -> GroupElement:
        if self.backend == "U1":
            return u1(self.theta0 + self.lift)
        return GroupElement(self.backend, quat=self.q1)

    def close_to(self, other: "LoopClass", tol: float = DEFAULT_TOL) -> bool:
        if self.backend != other.backend:
            raise BackendMismatchError(
                f"mixed backends: {self.backend}, {other.backend}")
        if self.backend == "U1":
            return (angle_dist(self.theta0, other.theta0) <= tol
                    and abs(self.lift - other.lift) <= tol)
        d_same = max(qchord(self.q0, other.q0), qchord(self.q1, other.q1))
        if self.backend == "SU2":
            return d_same <= tol
        d_flip = max(qchord(self.q0, qneg(other.q0)),
                     qchord(self.q1, qneg(other.q1)))
        return min(d_same, d_flip) <= tol


def loop_const(g: GroupElement) -> LoopClass:
    """The constant loop class at g (the degeneracy of a group element)."""
    if g.backend == "U1":
        return LoopClass("U1", theta0=g.angle, lift=0.0)
    return LoopClass(g.backend, q0=g.quat, q1=g.quat)


def loop_compose0(a: LoopClass, b: LoopClass) -> LoopClass:
    """Pointwise product of path classes (image of the level-0 gluing)."""
    backend = _same_backend(a, b)
    if backend == "U1":
        return LoopClass("U1", theta0=a.theta0 + b.theta0, lift=a.lift + b.lift)
    return LoopClass(backend, q0=qmul(a.q0, b.q0), q1=qmul(a.q1, b.q1))


def loop_compose1(a: LoopClass, b: LoopClass,
                  tol: float = DEFAULT_TOL) -> LoopClass:
    """Concatenation of path classes, b first (image of the level-1 gluing)."""
    backend = _same_backend(a, b)
    if backend == "U1":
        end_b = _wrap_angle(b.theta0 + b.lift)
        if angle_dist(end_b, a.theta0) > tol:
            raise EndpointMismatchError(
                f"target of first path {end_b:.12g} != source of second "
                f"{a.theta0:.12g} (tol {tol:g})")
        return LoopClass("U1", theta0=b.theta0, lift=b.lift + a.lift)
    if backend == "SO3":
        if qchord_projective(b.q1, a.q0) > tol:
            raise EndpointMismatchError("path endpoints do not meet in SO(3)")
        flip = qdot(b.q1, a.q0) < 0.0
        return LoopClass("SO3", q0=b.q0, q1=qneg(a.q1) if flip else a.q1)
    if qchord(b.q1, a.q0) > tol:
        raise EndpointMismatchError("path endpoints do not meet in SU(2)")
    return LoopClass("SU2", q0=b.q0, q1=a.q1)


def loop_inv0(a: LoopClass) -> LoopClass:
    """Pointwise inverse of the path."""
    if a.backend == "U1":
        return LoopClass("U1", theta0=-a.theta0, lift=-a.lift)
    return LoopClass(a.backend, q0=qconj(a.q0), q1=qconj(a.q1))


def loop_inv1(a: LoopClass) -> LoopClass:
    """The reversed path."""
    if a.backend == "U1":
        return LoopClass("U1", theta0=a.theta0 + a.lift, lift=-a.lift)
    return LoopClass(a.backend, q0=a.q1, q1=a.q0)


# ---------------------------------------------------------------------------
# fundamental-group classes


@dataclass(frozen=True)
class Pi1Element:
    """An element of pi_1 of the gauge group.

    U1: an integer winding number.  SO3: a sign in {+1, -1}.  SU2: the
    trivial group, value always 0.
    """

    backend: str
    value: int

    def __post_init__(self):
        if self.backend == "SO3" and self.value not in (1, -1):
            raise ValueError("SO3 pi_1 value must be +1 or -1")
        if self.backend == "SU2" and self.value != 0:
            raise ValueError("SU2 pi_1 is trivial")

    def is_zero(self) -> bool:
        return self.value == (1 if self.backend == "SO3" else 0)

    def add(self, other: "Pi1Element") -> "Pi1Element":
        if other.backend != self.backend:
            raise BackendMismatchError("cannot add pi_1 classes across backends")
        if self.backend == "SO3":
            return Pi1Element("SO3", self.value * other.value)
        if self.backend == "SU2":
            return self
        return Pi1Element("U1", self.value + other.value)

    def neg(self) -> "Pi1Element":
        if self.backend == "U1":
            return Pi1Element("U1", -self.value)
        return self

    def to_json(self):
        if self.backend == "SO3":
            return "+1" if self.value == 1 else "-1"
        return self.value


def pi1_zero(backend: str) -> Pi1Element:
    return Pi1Element(backend, 1 if backend == "SO3" else 0)


def pi1_class(a: LoopClass, tol: float = DEFAULT_TOL) -> Pi1Element:
    """Extract the pi_1 class of a based loop.

    The loop must close up: source equals target within ``tol``.  For U1 the
    winding is the lift divided by 2*pi, which must sit within WINDING_TOL of
    an integer.
    """
    if a.backend == "U1":
        w = a.lift / TWO_PI
        k = round(w)
        if abs(w - k) > max(WINDING_TOL, tol / TWO_PI):
            raise WindingError(
                f"U1 lift {a.lift:.12g} is {abs(w - k):.3g} windings away "
                "from 2*pi*Z")
        # endpoint closure is the same condition as integrality here
        return Pi1Element("U1", int(k))
    if a.backend == "SO3":
        if qchord_projective(a.q0, a.q1) > max(tol, 1e-6):
            raise NotBasedLoopError("SO(3) loop endpoints differ")
        return Pi1Element("SO3", 1 if qdot(a.q0, a.q1) >= 0.0 else -1)
    if qchord(a.q0, a.q1) > max(tol, 1e-6):
        raise NotBasedLoopError("SU(2) loop endpoints differ")
    return Pi1Element("SU2", 0)


def winding_residual(a: LoopClass) -> float:
    """Distance of the loop from an exact pi_1 representative.

    U1: distance of the lift from the nearest multiple of 2*pi.  SO3/SU2:
    how far the endpoint pair is from closing up.
    """
    if a.backend == "U1":
        w = a.lift / TWO_PI
        return abs(w - round(w)) * TWO_PI
    if a.backend == "SO3":
        return qchord_projective(a.q0, a.q1)
    return qchord(a.q0, a.q1)


# ---------------------------------------------------------------------------
# sampling


def haar_element(backend: str, rng) -> GroupElement:
    """Draw a Haar-uniform group element using the given random.Random."""
    if backend == "U1":
        return u1(rng.uniform(0.0, TWO_PI))
    q = qnormalize((rng.gauss(0, 1), rng.gauss(0, 1),
                    rng.gauss(0, 1), rng.gauss(0, 1)))
    return GroupElement(backend, quat=q)
