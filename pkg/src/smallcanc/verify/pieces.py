"""Pieces of a presentation and the C'(1/p) check.

The symmetrized relator set consists of every cyclic rotation of every
relator core and, unless disabled, of its inverse. Each core ``X`` is laid
out as ``X + X[:-1]`` followed by a separator, so the rotation starting at
offset ``o < |X|`` is the length-``|X|`` substring at that offset. A suffix
array over the concatenation then answers, for every rotation, how long a
prefix it shares with any other rotation; that prefix is the longest piece
that has to be measured against the rotation's relator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from typing import Any, Sequence

import numpy as np
from pydivsufsort import divsufsort, kasai

from ..presentation import Presentation, Relator
from ..words import Word, are_virtually_conjugate, format_word
from . import _kernels

__all__ = [
    "PieceReport",
    "Verdict",
    "SingleRelatorVerdict",
    "SyllableVerdict",
    "enumerate_pieces",
    "verify_Cprime",
    "max_piece_between",
    "check_single_relator_bound",
    "syllable_bound_check",
    "letter_codes",
]

_CODE = np.zeros(256, dtype=np.uint8)
for _i in range(26):
    _CODE[ord("a") + _i] = 1 + _i
    _CODE[ord("A") + _i] = 27 + _i
_LETTER = np.frombuffer(
    b"\0" + bytes(range(ord("a"), ord("z") + 1)) + bytes(range(ord("A"), ord("Z") + 1)),
    dtype=np.uint8,
)


def letter_codes(text: str) -> np.ndarray:
    """Letters as codes ``1..52`` (``0`` is reserved for separators)."""
    return _CODE[np.frombuffer(text.encode("ascii"), dtype=np.uint8)]


def _decode(codes: np.ndarray) -> str:
    return _LETTER[codes].tobytes().decode("ascii")


def _configure_threads() -> None:
    value = os.environ.get("SMALLCANC_THREADS")
    if value:
        import numba

        numba.set_num_threads(max(1, min(int(value), numba.config.NUMBA_NUM_THREADS)))


@dataclass(frozen=True)
class _Segment:
    relator: int
    inverse: bool
    offset: int  # where the segment starts in the text
    length: int  # |X|


class SymmetrizedText:
    """All relator cores (and inverses) laid out for suffix-array queries."""

    def __init__(self, cores: Sequence[str], inverses: bool = True):
        _configure_threads()
        self.cores = list(cores)
        self.inverses = inverses
        parts, segs = [], []
        pos = 0
        for i, x in enumerate(self.cores):
            if not x:
                raise ValueError(f"relator {i} has an empty core")
            forms = [(False, x)]
            if inverses:
                forms.append((True, x[::-1].swapcase()))
            for inv, y in forms:
                seg = y + y[:-1]
                parts.append(seg)
                segs.append(_Segment(i, inv, pos, len(y)))
                pos += len(seg) + 1
        self.segments = segs
        n = pos
        text = np.zeros(max(n, 1), dtype=np.uint8)
        cap = np.zeros(max(n, 1), dtype=np.int32)
        for seg, part in zip(segs, parts):
            text[seg.offset : seg.offset + len(part)] = letter_codes(part)
            cap[seg.offset : seg.offset + seg.length] = seg.length
        self.text = text
        self.cap = cap
        self.seg_starts = np.array([s.offset for s in segs], dtype=np.int64)
        self._sa = None
        self._lcp = None
        self._best = None

    @property
    def sa(self) -> np.ndarray:
        if self._sa is None:
            self._sa = divsufsort(self.text)
            self._lcp = kasai(self.text, self._sa)
        return self._sa

    @property
    def lcp(self) -> np.ndarray:
        self.sa
        return self._lcp

    def best(self) -> np.ndarray:
        """Longest piece starting at every rotation (0 elsewhere)."""
        if self._best is None:
            self._best = _kernels.best_partner(self.sa, self.lcp, self.cap)
        return self._best

    def locate(self, pos: int) -> tuple[int, bool, int, int]:
        """``(relator, inverse, rotation, length of core)`` for a start position."""
        k = int(np.searchsorted(self.seg_starts, pos, side="right")) - 1
        seg = self.segments[k]
        return seg.relator, seg.inverse, pos - seg.offset, seg.length

    def occurrence(self, pos: int, length: int) -> tuple[int, bool, int, int]:
        """Occurrence tuple with the position mapped onto the as-is core."""
        rel, inv, rot, n = self.locate(pos)
        where = (n - rot - length) % n if inv else rot
        return rel, inv, rot, where

    def piece_text(self, pos: int, length: int) -> str:
        return _decode(self.text[pos : pos + length])

    def prev_letters(self, order: np.ndarray) -> np.ndarray:
        """The cyclically preceding letter of each start."""
        prev = np.empty(order.shape[0], dtype=np.int32)
        ks = np.searchsorted(self.seg_starts, order, side="right") - 1
        offs = np.array([s.offset for s in self.segments], dtype=np.int64)[ks]
        lens = np.array([s.length for s in self.segments], dtype=np.int64)[ks]
        rot = order - offs
        prev_pos = offs + (rot - 1) % lens
        prev[:] = self.text[prev_pos]
        return prev

    def per_relator_max(self) -> tuple[np.ndarray, np.ndarray]:
        """Longest piece on each relator, and a start where it is attained."""
        best = self.best()
        m = len(self.cores)
        top = np.zeros(m, dtype=np.int64)
        where = np.full(m, -1, dtype=np.int64)
        for seg in self.segments:
            block = best[seg.offset : seg.offset + seg.length]
            k = int(block.argmax())
            if block[k] > top[seg.relator] or where[seg.relator] < 0:
                top[seg.relator] = block[k]
                where[seg.relator] = seg.offset + k
        return top, where

    def occurrences_of(self, pos: int, length: int, limit: int = 1000) -> list[tuple[int, bool, int, int]]:
        """All rotations that begin with the piece at ``pos`` (up to ``limit``)."""
        sa, lcp, cap = self.sa, self.lcp, self.cap
        k = int(np.flatnonzero(sa == pos)[0])
        found = [pos]
        j = k - 1
        while j >= 0 and lcp[j] >= length and len(found) < limit:
            if cap[sa[j]] >= length:
                found.append(int(sa[j]))
            j -= 1
        j = k + 1
        while j < sa.shape[0] and lcp[j - 1] >= length and len(found) < limit:
            if cap[sa[j]] >= length:
                found.append(int(sa[j]))
            j += 1
        return sorted(self.occurrence(q, length) for q in found)


def _symmetrized(P: Presentation, inverses: bool) -> SymmetrizedText:
    key = ("symmetrized", inverses)
    sym = P._cache.get(key)
    if sym is None:
        sym = SymmetrizedText([r.core.text for r in P.relators], inverses)
        P._cache[key] = sym
    return sym


@dataclass(frozen=True)
class PieceReport:
    """A piece with the rotations it starts and its ratio to the relator it is measured against."""

    piece: Word
    length: int
    occurrences: tuple[tuple[int, bool, int, int], ...]
    ratio: Fraction
    relator: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "word": format_word(self.piece),
            "length": self.length,
            "relator": self.relator,
            "ratio": float(self.ratio),
            "ratio_exact": str(self.ratio),
        }


@dataclass(frozen=True)
class Verdict:
    ok: bool
    p: Fraction
    uniform: bool
    worst: PieceReport | None
    piece_count: int
    longest: tuple[int, ...] = field(default=(), repr=False)
    inverses: bool = True

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        p = self.p
        return {
            "verdict": self.ok,
            "p": int(p) if p.denominator == 1 else str(p),
            "worst_piece": self.worst.to_dict() if self.worst else None,
            "piece_count": self.piece_count,
            "uniform": self.uniform,
        }


def _count_maximal(sym: SymmetrizedText) -> int:
    if not sym.cores:
        return 0
    order, adj = _kernels.start_order(sym.sa, sym.lcp, sym.cap)
    if order.shape[0] < 2:
        return 0
    hs, _, _ = _kernels.left_maximal_intervals(adj, sym.prev_letters(order), 1)
    return int(hs.shape[0])


def verify_Cprime(
    P: Presentation, p, uniform: bool = False, inverses: bool = True, count_pieces: bool = True
) -> Verdict:
    """Check that every piece is shorter than ``1/p`` of the relator it lies in.

    Lengths are measured on cyclically reduced cores. With ``uniform`` every
    piece is compared with the shortest relator instead. The worst piece is
    reported whether or not the check passes.
    """
    p = Fraction(p)
    if p <= 0:
        raise ValueError("p must be positive")
    if not P.relators:
        return Verdict(True, p, uniform, None, 0, (), inverses)
    key = ("verdict", p, uniform, inverses)
    if key in P._cache:
        return P._cache[key]
    sym = _symmetrized(P, inverses)
    top, where = sym.per_relator_max()
    lens = [len(c) for c in sym.cores]
    shortest = min(lens)
    ok = True
    worst_i, worst_ratio = 0, Fraction(-1)
    for i, (L, n) in enumerate(zip(top.tolist(), lens)):
        ref = shortest if uniform else n
        if L * p >= ref:
            ok = False
        ratio = Fraction(L, ref)
        if ratio > worst_ratio:
            worst_i, worst_ratio = i, ratio
    worst = None
    L = int(top[worst_i])
    if L > 0:
        pos = int(where[worst_i])
        worst = PieceReport(
            Word(sym.piece_text(pos, L)),
            L,
            tuple(sym.occurrences_of(pos, L, limit=64)),
            worst_ratio,
            worst_i,
        )
    count = _count_maximal(sym) if count_pieces else -1
    verdict = Verdict(ok, p, uniform, worst, count, tuple(top.tolist()), inverses)
    P._cache[key] = verdict
    return verdict


def enumerate_pieces(
    P: Presentation, inverses: bool = True, min_length: int = 1, max_occurrences: int | None = None
) -> list[PieceReport]:
    """All maximal pieces: common prefixes of two rotations that extend neither way.

    Sorted by decreasing ratio, then by piece text.
    """
    if not P.relators:
        return []
    sym = _symmetrized(P, inverses)
    order, adj = _kernels.start_order(sym.sa, sym.lcp, sym.cap)
    if order.shape[0] < 2:
        return []
    hs, lbs, rbs = _kernels.left_maximal_intervals(adj, sym.prev_letters(order), max(1, min_length))
    lens = [len(c) for c in sym.cores]
    reports = []
    for h, lb, rb in zip(hs.tolist(), lbs.tolist(), rbs.tolist()):
        starts = order[lb : rb + 1]
        if max_occurrences is not None:
            starts = starts[:max_occurrences]
        occ = tuple(sorted(sym.occurrence(int(q), h) for q in starts))
        shortest = min(lens[o[0]] for o in occ)
        rel = min(o[0] for o in occ if lens[o[0]] == shortest)
        reports.append(
            PieceReport(Word(sym.piece_text(int(order[lb]), h)), h, occ, Fraction(h, shortest), rel)
        )
    reports.sort(key=lambda r: (-r.ratio, r.piece.text))
    return reports


def max_piece_between(first: Sequence[Word], second: Sequence[Word], inverses: bool = True) -> int:
    """Longest common prefix of a rotation from ``first`` and one from ``second``.

    Words are read cyclically and must be cyclically reduced.
    """
    if not first or not second:
        return 0
    cores = [w.text for w in first] + [w.text for w in second]
    for w in cores:
        if not w or w[0] == w[-1].swapcase():
            raise ValueError("words must be nonempty and cyclically reduced")
    sym = SymmetrizedText(cores, inverses)
    group = np.zeros(sym.text.shape[0], dtype=np.int8)
    for seg in sym.segments:
        group[seg.offset : seg.offset + seg.length] = 1 if seg.relator < len(first) else 2
    return int(_kernels.best_cross(sym.sa, sym.lcp, sym.cap, group))


@dataclass(frozen=True)
class SingleRelatorVerdict:
    ok: bool
    longest_piece: int
    bound: int

    def __bool__(self) -> bool:
        return self.ok


def check_single_relator_bound(r: Relator, inverses: bool = True) -> SingleRelatorVerdict:
    """Compare the longest self-piece of ``s^a1 t^b1 ...`` with ``(max a + 2)|s| + (max b + 2)|t|``.

    The relator is measured on its cyclic core, built from the cyclic cores
    of ``s`` and ``t``.
    """
    if r.pair is None or not r.alpha:
        raise ValueError("relator carries no (s, t) pair and exponents")
    s, t = r.pair.s_core.word, r.pair.t_core.word
    exps = list(r.alpha) + list(r.beta)
    if len(set(exps)) != len(exps):
        raise ValueError("exponents are not pairwise distinct")
    if are_virtually_conjugate(s, t):
        raise ValueError("the cores of s and t are virtually conjugate")
    floor = 2 * max(len(s), len(t)) + 1
    if min(exps) <= floor:
        raise ValueError(f"every exponent must exceed {floor}")
    bound = (max(r.alpha) + 2) * len(s) + (max(r.beta) + 2) * len(t)
    core = "".join(s.text * a + t.text * b for a, b in zip(r.alpha, r.beta))
    P = Presentation(tuple(sorted(set(core.lower()))), (Relator(Word(core)),))
    top, _ = _symmetrized(P, inverses).per_relator_max()
    longest = int(top[0])
    return SingleRelatorVerdict(longest <= bound, longest, bound)


@dataclass(frozen=True)
class SyllableVerdict:
    ok: bool
    p: Fraction
    longest_runs: tuple[int, ...]
    fewest_syllables: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def cyclic_runs(core: str) -> list[int]:
    """Lengths of the maximal single-generator blocks of a cyclic word."""
    runs = [sum(1 for _ in g) for _, g in groupby(core.lower())]
    if len(runs) > 1 and core[0].lower() == core[-1].lower():
        runs[0] += runs.pop()
    return runs


def fewest_syllables(runs: Sequence[int], window: int) -> int:
    """Fewest blocks met by a cyclic window of ``window`` letters."""
    total = sum(runs)
    if window <= 0:
        return 0
    if len(runs) == 1 or window >= total:
        return len(runs) if window >= total else 1
    doubled = list(runs) * 2
    best = len(runs)
    j, covered = 0, 0
    for i in range(len(runs)):
        if j < i:
            j, covered = i, 0
        while covered < window:
            covered += doubled[j]
            j += 1
        best = min(best, j - i)
        covered -= doubled[i]
    return best


def syllable_bound_check(P: Presentation, p) -> SyllableVerdict:
    """Run lengths against ``(2/p)|r|`` and syllables in half-length windows against ``p/4``.

    Both are measured on the cyclic core of every relator. When every run is
    shorter than ``(2/p)|r|`` a window of ``ceil(|r|/2)`` letters meets more
    than ``p/4`` runs; the window count is computed exactly as well.
    """
    p = Fraction(p)
    ok = True
    longest, fewest = [], []
    for r in P.relators:
        core = r.core.text
        n = len(core)
        runs = cyclic_runs(core)
        top = max(runs)
        few = fewest_syllables(runs, -(-n // 2))
        if not top * p < 2 * n:
            ok = False
        if not few > p / 4:
            ok = False
        longest.append(top)
        fewest.append(few)
    return SyllableVerdict(ok, p, tuple(longest), tuple(fewest))
