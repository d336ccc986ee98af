"""Graded homological algebra over the monomial model of ``Lambda``."""
from .approximation import (
    Approximation,
    RestrictedComplex,
    RestrictedModule,
    apply_idempotent,
    approximation_complex,
    check_condition_one,
    check_condition_two,
    free_e_complex,
    minimal_left_approximation,
)
from .core import GradedModule, ProjectiveComplex, TermIndex, cone, enumerate_slots, twist
from .homs import HomBlock, HomResult, compose_maps, hom_block, hom_complexes
from .resolution import (
    SyzygyModule,
    homology_dims,
    minimal_generators,
    minimal_resolution,
    projective_cover,
    resolution_report,
    resolve_tops,
    syzygy,
)

__all__ = [
    "Approximation",
    "GradedModule",
    "HomBlock",
    "HomResult",
    "ProjectiveComplex",
    "RestrictedComplex",
    "RestrictedModule",
    "SyzygyModule",
    "TermIndex",
    "apply_idempotent",
    "approximation_complex",
    "check_condition_one",
    "check_condition_two",
    "compose_maps",
    "cone",
    "enumerate_slots",
    "free_e_complex",
    "hom_block",
    "hom_complexes",
    "homology_dims",
    "minimal_generators",
    "minimal_left_approximation",
    "minimal_resolution",
    "projective_cover",
    "resolution_report",
    "resolve_tops",
    "syzygy",
    "twist",
]
