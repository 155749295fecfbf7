"""Implicit difference equations package initialization."""

from .equation import (
    ImplicitEquation, Representation, Direction, ChainMode,
    AdmissibleSequence, EquationSequence, is_admissible, is_solution,
)
from .extraction import (
    ChainReport, SequenceExtraction, inclusion_test, extract_affine, sequence_extract,
)
from .classification import Classification, DirectionResult, classify_point

__all__ = [
    'ImplicitEquation', 'Representation', 'Direction', 'ChainMode',
    'AdmissibleSequence', 'EquationSequence', 'is_admissible', 'is_solution',
    'ChainReport', 'SequenceExtraction', 'inclusion_test', 'extract_affine', 'sequence_extract',
    'Classification', 'DirectionResult', 'classify_point',
]
