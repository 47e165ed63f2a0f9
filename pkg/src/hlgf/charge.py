"""Topological charge and bundle classification.

Three equivalent routes compute the charge of a field on a closed oriented
2D base: evaluating the covering word, the orientation-signed sum of face
lifts, and the winding of the transition function read off a meridian
family over an equatorial cycle.  All of them land in pi_1 of the gauge
group.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gauge_group as gg
from . import globes
from .complexes import ComplexError, oriented_faces
from .field import HLGF, check_consistency, evaluate
from .gauge_group import Pi1Element


class ChargeError(ValueError):
    """Raised when a charge cannot be computed for the given field."""


class InconsistentFieldError(ChargeError):
    """Raised when classification is refused; carries the report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class ChargeResult:
    value: Pi1Element
    route: str                # covering_word | face_sum | transition_winding
    residual: float           # distance of the U1 lift from 2*pi*Z

    def to_json(self) -> dict:
        return {"Q": self.value.to_json(), "route": self.route,
                "residual": self.residual}


@dataclass(frozen=True)
class BundleClassification:
    base_dim: int
    group: str
    invariant: Pi1Element
    statement: str

    def to_json(self) -> dict:
        return {"dim": self.base_dim, "group": self.group,
                "invariant": self.invariant.to_json(),
                "statement": self.statement}


def _require_2d(f: HLGF) -> None:
    if f.complex.dim != 2 or f.complex.orientation is None:
        raise ChargeError("charge needs a closed oriented 2D base")


def topological_charge(f: HLGF) -> ChargeResult:
    """Winding of the field evaluated on the covering word."""
    _require_2d(f)
    w = globes.covering_word(f.complex)
    src = globes.reduced_path(globes.face(w, 1, -1))
    tgt = globes.reduced_path(globes.face(w, 1, 1))
    if src != tgt:
        raise ChargeError("covering word does not close up")
    lc = evaluate(f, w)
    residual = gg.winding_residual(lc)
    cls = gg.pi1_class(lc, tol=max(f.tol, gg.DEFAULT_TOL))
    return ChargeResult(cls, "covering_word", residual)


def charge_face_sum(f: HLGF) -> ChargeResult:
    """Charge from local data: the orientation-signed sum of face lifts."""
    _require_2d(f)
    if f.backend == "U1":
        total = 0.0
        for of in oriented_faces(f.complex):
            total += of.sign * f.face_values[of.face].lift
        w = total / gg.TWO_PI
        k = round(w)
        residual = abs(w - k) * gg.TWO_PI
        if abs(w - k) > gg.WINDING_TOL:
            raise gg.WindingError(
                f"face-lift sum {total:.12g} is not near 2*pi*Z")
        return ChargeResult(Pi1Element("U1", int(k)), "face_sum", residual)
    if f.backend == "SO3":
        sign = 1
        for of in oriented_faces(f.complex):
            lc = f.face_values[of.face]
            d = gg.qdot(lc.q0, lc.q1)
            # a face class counts by whether its lift pair flips the cover;
            # orientation exponents are immaterial in Z/2
            sign *= 1 if d >= 0.0 else -1
        return ChargeResult(Pi1Element("SO3", sign), "face_sum", 0.0)
    return ChargeResult(gg.pi1_zero("SU2"), "face_sum", 0.0)


def transition_winding(f: HLGF, equator: tuple[int, ...]) -> ChargeResult:
    """Charge as the winding of the transition function over an equator.

    The meridian family sweeping once around the given separating cycle is
    evaluated; its class is the winding of the two-chart transition
    function restricted to the equator.
    """
    _require_2d(f)
    w = globes.meridian_word(f.complex, tuple(equator))
    lc = evaluate(f, w)
    residual = gg.winding_residual(lc)
    cls = gg.pi1_class(lc, tol=max(f.tol, gg.DEFAULT_TOL))
    return ChargeResult(cls, "transition_winding", residual)


def classify_bundle(f: HLGF) -> BundleClassification:
    """The bundle invariant induced by the field.

    2D bases: the topological charge, which classifies principal bundles
    over a closed oriented surface by pi_1 of the group.  3D bases: the
    gluing data is trivializable over every 3-cell exactly when every
    tetrahedron condition passes; classification is refused otherwise.
    No total space is constructed.
    """
    d = f.complex.dim
    if d == 2:
        q = topological_charge(f)
        return BundleClassification(
            2, f.backend, q.value,
            f"{f.backend} bundles over this base are classified by pi_1 of "
            f"the group; this field induces the class {q.value.to_json()}")
    if d == 3:
        report = check_consistency(f)
        if not report.ok():
            raise InconsistentFieldError(
                "field is not a consistent ELGF; see the attached report",
                report)
        return BundleClassification(
            3, f.backend, gg.pi1_zero(f.backend),
            "gluing data extends over every 3-cell; the induced bundle "
            "is determined by the field")
    raise ChargeError(f"no classification for dimension {d}")
