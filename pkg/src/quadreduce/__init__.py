"""quadreduce: surgery and reduction for quadrangulations of the sphere and
projective plane, plus an exact t-perfection checker."""

from .canon import canonical_code, canonical_hash
from .embedding import (PROJECTIVE_PLANE, SPHERE, CycleHandle, FaceList,
                        SignedRotationSystem, ValidationReport, cycle_sign,
                        disk_interior, is_bipartite, trace_faces,
                        validate_quadrangulation)
from .generate import (add_degree2, bipartite_projective_seed, c4,
                       gen_quadrangulation, odd_wheel_embedding, vertex_split)
from .reduce import (ReductionTrace, find_reducible_vertex, make_nice,
                     recognize_odd_wheel, reduce_projective, reduce_sphere)
from .rsq import dump, format_rsq, load, parse_rsq
from .surgery import (ReductionStep, apply_step, delete_degree2,
                      expand_to_face_contractions, face_contract, t_contract)

__all__ = [
    "PROJECTIVE_PLANE", "SPHERE", "CycleHandle", "FaceList",
    "SignedRotationSystem", "ValidationReport", "ReductionStep",
    "ReductionTrace", "add_degree2", "apply_step", "bipartite_projective_seed",
    "c4", "canonical_code", "canonical_hash", "cycle_sign", "delete_degree2",
    "disk_interior", "dump", "expand_to_face_contractions", "face_contract",
    "find_reducible_vertex", "format_rsq", "gen_quadrangulation",
    "is_bipartite", "load", "make_nice", "odd_wheel_embedding", "parse_rsq",
    "recognize_odd_wheel", "reduce_projective", "reduce_sphere", "t_contract",
    "trace_faces", "validate_quadrangulation", "vertex_split",
]

__version__ = "0.1.0"
