"""Concrete modules: R, Q, Whittaker modules and Virasoro pullbacks."""
from .pullback import VirasoroPullback, VirasoroTable, VirasoroVerma, build_virasoro_pullback, trivial_table
from .qmod import QModule, QSpec, induced_q, q_act, validate_qspec
from .rmod import RModule, RSpec, induced_r, r_act
from .whittaker import (WhittakerModule, WhittakerType, check_whittaker_iso, reducibility_witness,
                        validate_whittaker, whittaker_universal, whittaker_vector_check)

__all__ = [
    "QModule", "QSpec", "RModule", "RSpec", "VirasoroPullback", "VirasoroTable", "VirasoroVerma",
    "WhittakerModule", "WhittakerType", "build_virasoro_pullback", "check_whittaker_iso", "induced_q",
    "induced_r", "q_act", "r_act", "reducibility_witness", "trivial_table", "validate_qspec",
    "validate_whittaker", "whittaker_universal", "whittaker_vector_check",
]
