"""Turning arbitrary word pairs into pairs with controlled cancellation.

The pipeline for one pair ``(u, v)`` is:

1. :func:`make_non_cancellable` rewrites the pair inside ``{u, v}+`` until
   neither product ``uv`` nor ``vu`` cancels half of the shorter word, then
   squares both words.
2. :func:`separate_pairs` picks exponents ``k`` so that the words
   ``u^k v^k`` chosen across the whole family are pairwise not virtually
   conjugate, optionally raising them to a large common power.

Every derived word keeps a witness string over ``"uv"`` that spells it as a
positive product of the previous stage's pair.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, Sequence

from .errors import DegeneratePairError, InvariantViolation
from .words import (
    CyclicWord,
    Word,
    _non_cancellable,
    are_virtually_conjugate,
    canc,
    commute,
    cyclic_reduce,
    evaluate_witness,
    format_word,
    primitive_root,
    virtual_conjugacy_key,
)

__all__ = [
    "Step",
    "Derivation",
    "SCPair",
    "is_non_cancellable",
    "make_non_cancellable",
    "find_nonconjugate_power_pairs",
    "check_long_overlap",
    "separate_pairs",
    "small_cancellation_pair",
]

log = logging.getLogger(__name__)


def is_non_cancellable(u: Word, v: Word) -> bool:
    """Both ``canc(u, v)`` and ``canc(v, u)`` are below half of ``min(|u|, |v|)``."""
    if not u or not v:
        raise ValueError("non-cancellability is defined for nontrivial words")
    return _non_cancellable(u, v)


def _require_independent(u: Word, v: Word, where: str = "") -> None:
    if not u or not v:
        raise DegeneratePairError(f"{where}pair contains the trivial word")
    if commute(u, v):
        raise DegeneratePairError(
            f"{where}{format_word(u)} and {format_word(v)} are powers of the same element"
        )


@dataclass(frozen=True)
class Step:
    rule: str
    before: tuple[Word, Word]
    after: tuple[Word, Word]
    cancellation: int

    def line(self) -> str:
        (a, b), (c, d) = self.before, self.after
        return (
            f"{self.rule} canc={self.cancellation} "
            f"{format_word(a)},{format_word(b)} -> {format_word(c)},{format_word(d)}"
        )


@dataclass(frozen=True)
class Derivation:
    """Record of :func:`make_non_cancellable`: every rewrite plus final witnesses."""

    original: tuple[Word, Word]
    steps: tuple[Step, ...]
    u: Word
    v: Word
    u_witness: str
    v_witness: str

    def trace(self) -> str:
        """One line per rewrite, ending with the squaring line."""
        return "\n".join(s.line() for s in self.steps) + "\n"

    def check(self) -> None:
        factors = {"u": self.original[0], "v": self.original[1]}
        if evaluate_witness(self.u_witness, factors) != self.u:
            raise InvariantViolation("first output does not match its witness", self)
        if evaluate_witness(self.v_witness, factors) != self.v:
            raise InvariantViolation("second output does not match its witness", self)


def make_non_cancellable(u: Word, v: Word) -> tuple[Word, Word, Derivation]:
    """Find a non-cancellable pair in ``{u, v}+`` that still generates a free group.

    While ``canc(u, v)`` exceeds half the shorter length the pair becomes
    ``(u, uv)`` or ``(v, uv)`` (keeping the shorter word, ``u`` on ties);
    likewise with ``vu`` for ``canc(v, u)``. Each rewrite shortens
    ``|u| + |v|``. Both words are squared at the end, which makes the
    inequalities strict.

    >>> a, b, _ = make_non_cancellable(Word("x"), Word("Xy"))
    >>> a, b
    (Word('xx'), Word('yy'))
    """
    _require_independent(u, v)
    original = (u, v)
    wu, wv = "u", "v"
    steps: list[Step] = []
    budget = len(u) + len(v)
    while True:
        m = min(len(u), len(v))
        c = canc(u, v)
        if 2 * c > m:
            uv = u * v
            if len(u) <= len(v):
                rule, new, wit = "(u,v)->(u,uv)", (u, uv), (wu, wu + wv)
            else:
                rule, new, wit = "(u,v)->(v,uv)", (v, uv), (wv, wu + wv)
        else:
            c = canc(v, u)
            if 2 * c > m:
                vu = v * u
                if len(u) <= len(v):
                    rule, new, wit = "(u,v)->(u,vu)", (u, vu), (wu, wv + wu)
                else:
                    rule, new, wit = "(u,v)->(v,vu)", (v, vu), (wv, wv + wu)
            else:
                break
        steps.append(Step(rule, (u, v), new, c))
        if sum(map(len, new)) >= len(u) + len(v):
            raise InvariantViolation("rewrite did not shorten the pair", steps[-1])
        (u, v), (wu, wv) = new, wit
        if len(steps) > budget:
            raise InvariantViolation("rewriting did not terminate in |u|+|v| steps")
    squared = (u * u, v * v)
    steps.append(Step("square", (u, v), squared, 0))
    u, v = squared
    deriv = Derivation(original, tuple(steps), u, v, wu * 2, wv * 2)
    if not _non_cancellable(u, v):
        raise InvariantViolation("squared pair is still cancellable", deriv)
    return u, v, deriv


def find_nonconjugate_power_pairs(
    u: Word,
    v: Word,
    count: int,
    avoid: Iterable[Word] = (),
    max_exponent: int = 10_000,
) -> list[int]:
    """Smallest exponents ``k`` making the words ``u^k v^k`` pairwise not virtually conjugate.

    Exponents are taken greedily from ``k = 1``. Words in ``avoid`` count as
    already chosen, which lets a caller keep choices apart across pairs.
    """
    if count < 1:
        raise ValueError("count must be positive")
    _require_independent(u, v)
    if not is_non_cancellable(u, v):
        raise ValueError(f"{format_word(u)}, {format_word(v)} are not non-cancellable")
    taken = {virtual_conjugacy_key(w) for w in avoid}
    return _greedy_exponents(u, v, count, taken, max_exponent)


def _greedy_exponents(u: Word, v: Word, count: int, taken: set[str], max_exponent: int = 10_000) -> list[int]:
    """Greedy exponent search; adds the key of every accepted word to ``taken``."""
    found: list[int] = []
    k = 0
    while len(found) < count:
        k += 1
        if k > max_exponent:
            raise InvariantViolation(f"no admissible exponent up to {max_exponent}")
        key = virtual_conjugacy_key(u**k * v**k)
        if key in taken:
            continue
        taken.add(key)
        found.append(k)
    return found


def check_long_overlap(s: Word, t: Word) -> bool:
    """True when ``s s`` is a prefix of a power of ``t``.

    Both words must be cyclically reduced with ``|s| >= |t| > 0``. This only
    happens when ``s`` and ``t`` are powers of one element.
    """
    if not t or len(s) < len(t):
        raise ValueError("need |s| >= |t| > 0")
    for name, w in (("s", s), ("t", t)):
        if not w.is_cyclically_reduced():
            raise ValueError(f"{name}={format_word(w)} cancels against itself")
    reps = ceil(2 * len(s) / len(t))
    return (t.text * reps).startswith(s.text * 2)


@dataclass(frozen=True)
class SCPair:
    """A pair ``s = g s_core g^-1``, ``t = g t_core g^-1`` with matched cancellation.

    ``source`` is the non-cancellable pair the words are positive in;
    ``s_witness``/``t_witness`` spell them over ``source`` (``"u"``/``"v"``).
    """

    s: Word
    t: Word
    g: Word
    s_core: CyclicWord
    t_core: CyclicWord
    source: tuple[Word, Word]
    s_witness: str = field(repr=False)
    t_witness: str = field(repr=False)
    exponents: tuple[int, int] = (1, 1)
    power: int = 1

    def check(self) -> None:
        """Raise :class:`InvariantViolation` unless every pair invariant holds."""
        s, t, g = self.s, self.t, self.g
        if g * self.s_core.word * g.inverse() != s or len(s) != 2 * len(g) + len(self.s_core):
            raise InvariantViolation("s is not a reduced conjugate of its core", self)
        if g * self.t_core.word * g.inverse() != t or len(t) != 2 * len(g) + len(self.t_core):
            raise InvariantViolation("t is not a reduced conjugate of its core", self)
        cancs = {canc(s, t), canc(t, s), canc(s, s), canc(t, t)}
        if cancs != {len(g)}:
            raise InvariantViolation(f"cancellations {sorted(cancs)} differ from |g|={len(g)}", self)
        if not _non_cancellable(s, t):
            raise InvariantViolation("s, t are cancellable", self)
        if are_virtually_conjugate(self.s_core.word, self.t_core.word):
            raise InvariantViolation("cores are virtually conjugate", self)
        factors = {"u": self.source[0], "v": self.source[1]}
        if evaluate_witness(self.s_witness, factors) != s or evaluate_witness(self.t_witness, factors) != t:
            raise InvariantViolation("witness does not reproduce the pair", self)

    @property
    def root_lengths(self) -> tuple[int, int]:
        return (
            len(primitive_root(self.s_core.word).root),
            len(primitive_root(self.t_core.word).root),
        )


def _scpair(source: tuple[Word, Word], k1: int, k2: int, power: int) -> SCPair:
    u, v = source
    s1, t1 = u**k1 * v**k1, u**k2 * v**k2
    s, t = s1**power, t1**power
    g, s_core = cyclic_reduce(s)
    g_t, t_core = cyclic_reduce(t)
    if g != g_t:
        raise InvariantViolation(f"s and t have different conjugators {g!r}, {g_t!r}")
    pair = SCPair(
        s=s,
        t=t,
        g=g,
        s_core=s_core,
        t_core=t_core,
        source=source,
        s_witness=("u" * k1 + "v" * k1) * power,
        t_witness=("u" * k2 + "v" * k2) * power,
        exponents=(k1, k2),
        power=power,
    )
    pair.check()
    return pair


def separate_pairs(pairs: Sequence[tuple[Word, Word]], amplify: bool = True) -> list[SCPair]:
    """Build an :class:`SCPair` from every non-cancellable pair of a family.

    Each pair ``(u, v)`` gets ``s' = u^k1 v^k1`` and ``t' = u^k2 v^k2``, with
    the exponents chosen so that all ``2m`` cores in the family are pairwise
    not virtually conjugate. With ``amplify`` both words are then raised to
    the power ``N = 8 * (longest core)``, which bounds the overlap between
    positive words of different pairs by ``N``. Without it ``N = 1`` and
    overlaps are left to the relator exponents.
    """
    taken: set[str] = set()
    exps = []
    longest = 0
    for i, (u, v) in enumerate(pairs):
        _require_independent(u, v, where=f"pair {i}: ")
        if not is_non_cancellable(u, v):
            raise ValueError(f"pair {i}: {format_word(u)}, {format_word(v)} are not non-cancellable")
        k1, k2 = _greedy_exponents(u, v, 2, taken)
        exps.append((k1, k2))
        for k in (k1, k2):
            longest = max(longest, len(cyclic_reduce(u**k * v**k)[1]))
    power = 8 * longest if amplify and pairs else 1
    return [_scpair(pair, k1, k2, power) for pair, (k1, k2) in zip(pairs, exps)]


def small_cancellation_pair(
    p1: tuple[Word, Word], p2: tuple[Word, Word]
) -> tuple[SCPair, SCPair]:
    """Two pairs whose positive words overlap by less than their shortest word."""
    for i, (u, v) in enumerate((p1, p2)):
        _require_independent(u, v, where=f"pair {i}: ")
        if not is_non_cancellable(u, v):
            raise ValueError(f"pair {i} is not non-cancellable")
    a, b = separate_pairs([p1, p2], amplify=True)
    return a, b
