"""Small cancellation presentations built from families of word pairs."""

from .errors import (
    DegeneratePairError,
    InvariantViolation,
    LengthCapExceeded,
    SearchInconclusive,
    SmallCancellationError,
    WordSyntaxError,
)
from .families import FamilyParams, build_calR_n, build_R_n, star_pairs
from .pairs import (
    SCPair,
    check_long_overlap,
    find_nonconjugate_power_pairs,
    is_non_cancellable,
    make_non_cancellable,
    separate_pairs,
    small_cancellation_pair,
)
from .presentation import (
    Presentation,
    Relator,
    build_group_for_theorem,
    build_presentation,
    build_relator,
    choose_relator_exponents,
)
from .ramsey import find_disjoint_triple, ramsey_K3
from .words import (
    CyclicWord,
    RootDecomposition,
    Word,
    are_conjugate,
    are_virtually_conjugate,
    canc,
    cyclic_reduce,
    format_word,
    is_positive_word_in,
    parse,
    primitive_root,
    reduce,
    syllable_length,
)

__version__ = "0.1.0"
