"""Homotopy lattice gauge fields.

Gauge fields on triangulated base spaces that carry parallel transport
along paths together with its homotopy data along families of paths.
The higher data is what lets a lattice field remember the bundle it came
from: on 2D bases the topological charge is computed exactly, and on 3D
bases the extendibility conditions detect inconsistent gluing data.
"""

from .complexes import (BUILTIN_NAMES, OrientedFace, SkeletalComplex,
                        build_builtin, oriented_faces, validate)
from .gauge_group import GroupElement, LoopClass, Pi1Element
from .globes import (compose, covering_word, degenerate, face, invert,
                     parse_word, tetra_boundary_word)
from .field import (HLGF, change_trivialization, check_consistency,
                    evaluate, gauge_transform, identity_field, new_field,
                    random_field)
from .charge import (BundleClassification, ChargeResult, charge_face_sum,
                     classify_bundle, topological_charge, transition_winding)
from .continuum import (cutoff, oracle_monopole, oracle_round_sphere,
                        oracle_trivial)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES", "BundleClassification", "ChargeResult", "GroupElement",
    "HLGF", "LoopClass", "OrientedFace", "Pi1Element", "SkeletalComplex",
    "build_builtin", "change_trivialization", "charge_face_sum",
    "check_consistency", "classify_bundle", "compose", "covering_word",
    "cutoff", "degenerate", "evaluate", "face", "gauge_transform",
    "identity_field", "invert", "new_field", "oracle_monopole",
    "oracle_round_sphere", "oracle_trivial", "oriented_faces", "parse_word",
    "random_field", "tetra_boundary_word", "topological_charge",
    "transition_winding", "validate",
]
