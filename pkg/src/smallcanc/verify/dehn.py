"""Dehn's algorithm: shorten a word by replacing more than half of a relator.

Matches are found with an index of all cyclic substrings of length ``q`` of
the symmetrized relators. Any subword longer than half of a relator has at
least ``floor(r_min/2) + 1`` letters, so it contains a block ``w[a:a+q]``
with ``a`` a multiple of ``q`` once ``2q - 1`` is at most that length. Each
occurrence of such a block fixes an alignment between the word and a
relator, which is then extended letter by letter in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydivsufsort import divsufsort

from ..presentation import Presentation
from ..words import Word, _join_reduced, format_word
from .pieces import letter_codes

__all__ = ["DehnStep", "DehnTrace", "dehn_reduce", "is_trivial"]


@dataclass(frozen=True)
class DehnStep:
    position: int
    relator: int
    inverse: bool
    replaced: Word
    replacement: Word

    def line(self) -> str:
        form = "inverse" if self.inverse else "as-is"
        return (
            f"at {self.position}: relator {self.relator} ({form}) "
            f"{format_word(self.replaced)} -> {format_word(self.replacement)}"
        )


@dataclass(frozen=True)
class DehnTrace:
    """Every replacement made and the word left at the end.

    ``sound`` records whether the presentation satisfies C'(1/6), without
    which a nonempty final word does not prove the input nontrivial.
    """

    start: Word
    steps: tuple[DehnStep, ...]
    final: Word
    sound: bool

    @property
    def trivial(self) -> bool:
        return not self.final

    def to_dict(self) -> dict:
        return {
            "word": format_word(self.start),
            "trivial": self.trivial,
            "sound": self.sound,
            "final": format_word(self.final),
            "steps": [s.line() for s in self.steps],
        }


class _RelatorIndex:
    def __init__(self, cores: list[str]):
        self.forms: list[tuple[int, bool, str]] = []
        for i, x in enumerate(cores):
            self.forms.append((i, False, x))
            self.forms.append((i, True, x[::-1].swapcase()))
        self.r_min = min(len(x) for x in cores)
        self.q = max(1, (self.r_min // 2 + 2) // 2)
        q = self.q
        chunks, starts = [], []
        pos = 0
        for _, _, y in self.forms:
            ext = y * (-(-(q - 1) // len(y)) + 1)
            seg = y + ext[: q - 1]
            chunks.append(seg)
            starts.append(pos)
            pos += len(seg) + 1
        self.starts = np.array(starts, dtype=np.int64)
        self.lengths = np.array([len(y) for _, _, y in self.forms], dtype=np.int64)
        self.text = letter_codes("\0".join(chunks))  # separators become code 0
        self.sa = divsufsort(self.text) if self.text.size else np.zeros(0, np.int32)
        self.cyc = [letter_codes(y + y) for _, _, y in self.forms]
        self.raw = self.text.tobytes()

    def occurrences(self, block: bytes) -> np.ndarray:
        """Text positions where ``block`` occurs (binary search on the suffix array)."""
        sa, raw, q = self.sa, self.raw, len(block)
        lo, hi = 0, sa.shape[0]
        while lo < hi:
            mid = (lo + hi) // 2
            p = int(sa[mid])
            if raw[p : p + q] < block:
                lo = mid + 1
            else:
                hi = mid
        start = lo
        hi = sa.shape[0]
        while lo < hi:
            mid = (lo + hi) // 2
            p = int(sa[mid])
            if raw[p : p + q] <= block:
                lo = mid + 1
            else:
                hi = mid
        return sa[start:lo]


def _index(P: Presentation) -> _RelatorIndex:
    idx = P._cache.get("dehn_index")
    if idx is None:
        idx = _RelatorIndex([r.core.text for r in P.relators])
        P._cache["dehn_index"] = idx
    return idx


def _extend(w: np.ndarray, a: int, cyc: np.ndarray, c: int, n: int, q: int) -> tuple[int, int]:
    """Maximal match around ``w[a:a+q] == X[c:c+q]`` (cyclically), at most ``n`` letters.

    The left end is pushed out first, so an over-long match yields its
    leftmost window.
    """
    room = min(a, n - q)
    left = 0
    if room > 0:
        idx = (c - 1 - np.arange(room)) % n
        neq = np.flatnonzero(w[a - room : a][::-1] != cyc[idx])
        left = int(neq[0]) if neq.size else room
    limit = min(len(w) - a, n - left)
    right = q
    if limit > q:
        idx = (c + q + np.arange(limit - q)) % n
        neq = np.flatnonzero(w[a + q : a + limit] != cyc[idx])
        right = q + (int(neq[0]) if neq.size else limit - q)
    return a - left, a + right


def _find(w: str, idx: _RelatorIndex):
    """Best qualifying match: leftmost, longest, lowest relator, as-is first."""
    q = idx.q
    codes = letter_codes(w)
    raw = codes.tobytes()
    best = None
    seen: set[tuple[int, int]] = set()
    for a in range(0, len(w) - q + 1, q):
        for pos in idx.occurrences(raw[a : a + q]).tolist():
            k = int(np.searchsorted(idx.starts, pos, side="right")) - 1
            n = int(idx.lengths[k])
            c = (pos - int(idx.starts[k])) % n
            key = (k, (c - a) % n)
            if key in seen:
                continue
            seen.add(key)
            lo, hi = _extend(codes, a, idx.cyc[k], c, n, q)
            if 2 * (hi - lo) <= n:
                continue
            rel, inv, _ = idx.forms[k]
            rank = (lo, -(hi - lo), rel, inv)
            if best is None or rank < best[0]:
                best = (rank, lo, hi, k, (c - (a - lo)) % n)
        # a qualifying match starting at lo contains an aligned block below lo + q
        if best is not None and a >= best[1] + q - 1:
            break
    return best


def dehn_reduce(w: Word, P: Presentation) -> DehnTrace:
    """Greedy Dehn reduction of ``w`` over the relators of ``P``."""
    from .pieces import verify_Cprime

    sound = bool(verify_Cprime(P, 6, count_pieces=False)) if P.relators else True
    steps: list[DehnStep] = []
    cur = w.text
    if not P.relators:
        return DehnTrace(w, (), w, sound)
    idx = _index(P)
    while 2 * len(cur) > idx.r_min:
        found = _find(cur, idx)
        if found is None:
            break
        _, lo, hi, k, rot = found
        rel, inv, y = idx.forms[k]
        rotated = y[rot:] + y[:rot]
        u, v = rotated[: hi - lo], rotated[hi - lo :]
        assert cur[lo:hi] == u
        replacement = v[::-1].swapcase()
        nxt = _join_reduced([cur[:lo], replacement, cur[hi:]])
        if len(nxt) >= len(cur):
            raise AssertionError("Dehn step did not shorten the word")
        steps.append(DehnStep(lo, rel, inv, Word(u), Word(replacement)))
        cur = nxt
    return DehnTrace(w, tuple(steps), Word(cur), sound)


def is_trivial(w: Word, P: Presentation) -> bool:
    """True when Dehn's algorithm reduces ``w`` to the empty word."""
    return not dehn_reduce(w, P).final
