"""Exact computations with the gap-p Virasoro algebra and its companion algebra N_p."""
from .cyclo import Cyclo, field
from .lie import Algebra, AlgebraError, Gen, GapVirasoro, LieElement, Np, bracket, element
from .pbw import ExponentVector, UeaElement, normal_form
from .textio import TextError, parse_element

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AlgebraError", "Cyclo", "ExponentVector", "Gen", "GapVirasoro", "LieElement", "Np",
    "TextError", "UeaElement", "bracket", "element", "field", "normal_form", "parse_element",
]
