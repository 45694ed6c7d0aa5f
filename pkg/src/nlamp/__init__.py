"""Noiseless linear amplification of coherent and cat states in a truncated Fock space."""

__version__ = "0.1.0"

from . import amplifier, errors, fock, metrics, optimize
from .amplifier import HeraldParams, OperatorSeq, amplify, get_seq
from .fock import FockVector, StateSpec, make_state

__all__ = [
    "FockVector",
    "HeraldParams",
    "OperatorSeq",
    "StateSpec",
    "amplifier",
    "amplify",
    "errors",
    "fock",
    "get_seq",
    "make_state",
    "metrics",
    "optimize",
    "__version__",
]
