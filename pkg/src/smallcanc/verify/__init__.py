"""Independent checks on presentations: pieces, provenance and the word problem."""

from .certify import WitnessChain, certify_positive_relator
from .dehn import DehnTrace, dehn_reduce, is_trivial
from .pieces import (
    PieceReport,
    SingleRelatorVerdict,
    SyllableVerdict,
    Verdict,
    check_single_relator_bound,
    enumerate_pieces,
    max_piece_between,
    syllable_bound_check,
    verify_Cprime,
)
