"""Module engine: induced modules, Verma and vacuum modules, degree reduction."""
from .engine import BaseModule, CharacterModule, InducedModule, Module, ModuleError
from .ind import IndModule, ReductionError, degree, reduce_once, reduce_to_base, reduction_operator
from .parts import CategoryNSpec, PositivePartSpec
from .vector import ModuleVector
from .verma import VacuumNpModule, VermaModule, graded_dim_enumeration, graded_dim_generating, singular_vectors

__all__ = [
    "BaseModule", "CategoryNSpec", "CharacterModule", "IndModule", "InducedModule", "Module",
    "ModuleError", "ModuleVector", "PositivePartSpec", "ReductionError", "VacuumNpModule",
    "VermaModule", "degree", "graded_dim_enumeration", "graded_dim_generating", "reduce_once",
    "reduce_to_base", "reduction_operator", "singular_vectors",
]
