"""Free group words over a letter alphabet.

A word is stored as a string: a lowercase letter is a generator, the matching
uppercase letter its inverse, so ``"xyXY"`` is the commutator of ``x`` and
``y``. Generator ids are alphabet positions (``a`` is 0, ``x`` is 23), which
caps the rank at 26.

Every :class:`Word` is freely reduced. Strings are used instead of lists of
pairs because relators built downstream run to hundreds of thousands of
letters, and slicing, reversal and ``swapcase`` then all run in C.
"""

from __future__ import annotations

import re
import string
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import groupby
from typing import Iterable, Union

from .errors import SearchInconclusive, WordSyntaxError

__all__ = [
    "Word",
    "CyclicWord",
    "RootDecomposition",
    "reduce",
    "parse",
    "canc",
    "cyclic_reduce",
    "primitive_root",
    "least_rotation",
    "are_conjugate",
    "are_virtually_conjugate",
    "virtual_conjugacy_key",
    "commute",
    "syllable_length",
    "is_positive_word_in",
    "evaluate_witness",
    "format_word",
]

_ALPHABET = frozenset(string.ascii_letters)
_TOKEN = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")
_POWER = re.compile(r"([A-Za-z])\^(-?\d+)")


def _expand_power(m: re.Match) -> str:
    k = int(m.group(2))
    return m.group(1) * k if k >= 0 else m.group(1).swapcase() * (-k)


def _common_prefix(a: str, b: str) -> int:
    """Length of the longest common prefix of ``a`` and ``b``."""
    hi = min(len(a), len(b))
    if a[:hi] == b[:hi]:
        return hi
    lo = 0
    # invariant: a[:lo] == b[:lo] and a[:hi] != b[:hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[lo:mid] == b[lo:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def _is_reduced(text: str) -> bool:
    for c in set(text):
        if c + c.swapcase() in text:
            return False
    return True


def _free_reduce(text: str) -> str:
    if _is_reduced(text):
        return text
    stack: list[str] = []
    for c in text:
        if stack and stack[-1] == c.swapcase():
            stack.pop()
        else:
            stack.append(c)
    return "".join(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. ``Word("")`` is the identity."""

    text: str = ""

    def __post_init__(self):
        if not isinstance(self.text, str):
            raise TypeError(f"Word text must be str, got {type(self.text).__name__}")
        bad = set(self.text) - _ALPHABET
        if bad:
            raise WordSyntaxError(f"not letters: {''.join(sorted(bad))!r}")
        if not _is_reduced(self.text):
            raise WordSyntaxError(f"word is not freely reduced: {self.text[:40]!r}")

    @classmethod
    def parse(cls, raw) -> "Word":
        return reduce(raw)

    def __len__(self) -> int:
        return len(self.text)

    def __bool__(self) -> bool:
        return bool(self.text)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        if len(self.text) > 60:
            return f"Word({self.text[:57]!r}... len={len(self.text)})"
        return f"Word({self.text!r})"

    def __getitem__(self, item) -> "Word":
        if isinstance(item, slice):
            return Word(self.text[item])
        return Word(self.text[item])

    @property
    def letters(self) -> tuple[tuple[int, int], ...]:
        """The letters as ``(generator id, sign)`` pairs."""
        return tuple((ord(c.lower()) - 97, 1 if c.islower() else -1) for c in self.text)

    @property
    def generators(self) -> frozenset[str]:
        return frozenset(self.text.lower())

    def inverse(self) -> "Word":
        return Word(self.text[::-1].swapcase())

    __invert__ = inverse

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        k = canc(self, other)
        return Word(self.text[: len(self.text) - k] + other.text[k:])

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0 or not self.text:
            return Word()
        if k == 1:
            return self
        g, core = cyclic_reduce(self)
        return Word(g.text + core.word.text * k + g.inverse().text)

    def conjugate(self, g: "Word") -> "Word":
        """Return ``g * self * g^-1``."""
        return g * self * g.inverse()

    def is_cyclically_reduced(self) -> bool:
        t = self.text
        return len(t) < 2 or t[0] != t[-1].swapcase()


def parse(text: str) -> Word:
    """Parse the word syntax: letters, optional ``^k`` exponents, whitespace ignored.

    >>> parse("x^3Y^2")
    Word('xxxYY')
    >>> parse("x^-2 y")
    Word('XXy')
    """
    compact = "".join(text.split())
    if compact == "1":
        return Word()
    expanded = _POWER.sub(_expand_power, compact)
    # a stray caret, sign or digit survives expansion
    if not (expanded.isascii() and (expanded.isalpha() or not expanded)):
        pos = 0
        for m in _TOKEN.finditer(compact):
            if m.start() != pos:
                break
            pos = m.end()
        raise WordSyntaxError(f"cannot parse word {text[:60]!r} at offset {pos}")
    return Word(_free_reduce(expanded))


def reduce(raw: Union[str, Word, Iterable[tuple[int, int]]], generators: Iterable[str] | None = None) -> Word:
    """Freely reduce a letter sequence.

    ``raw`` is a string in the word syntax, a :class:`Word`, or an iterable of
    ``(generator id, sign)`` pairs. When ``generators`` is given, letters
    outside it are rejected.

    >>> reduce("xyYx")
    Word('xx')
    >>> reduce([(23, 1), (23, -1)])
    Word('')
    """
    if isinstance(raw, Word):
        word = raw
    elif isinstance(raw, str):
        word = parse(raw)
    else:
        chars = []
        for item in raw:
            try:
                gen, sign = item
            except (TypeError, ValueError):
                raise WordSyntaxError(f"expected (generator, sign) pair, got {item!r}") from None
            if not isinstance(gen, int) or not 0 <= gen < 26 or sign not in (1, -1):
                raise WordSyntaxError(f"unknown letter {item!r}")
            c = chr(97 + gen)
            chars.append(c if sign == 1 else c.upper())
        word = Word(_free_reduce("".join(chars)))
    if generators is not None:
        allowed = {g.lower() for g in generators}
        extra = word.generators - allowed
        if extra:
            raise WordSyntaxError(f"unknown generator(s) {sorted(extra)} (alphabet {sorted(allowed)})")
    return word


def format_word(w: Word) -> str:
    """Compact caret form, e.g. ``xxxYY`` -> ``x^3Y^2``; empty word -> ``1``."""
    if not w.text:
        return "1"
    out = []
    for c, run in groupby(w.text):
        k = sum(1 for _ in run)
        out.append(c if k == 1 else f"{c}^{k}")
    return "".join(out)


def canc(u: Word, v: Word) -> int:
    """Cancellation in the product ``uv``: common prefix length of ``u^-1`` and ``v``.

    >>> canc(Word("xy"), Word("Yx"))
    1
    """
    a, b = u.text, v.text
    m = min(len(a), len(b))
    if m == 0 or a[-1] != b[0].swapcase():
        return 0
    return _common_prefix(a[len(a) - m :][::-1].swapcase(), b[:m])


@dataclass(frozen=True, eq=False)
class CyclicWord:
    """A cyclically reduced word considered up to rotation."""

    word: Word

    def __post_init__(self):
        if not self.word.is_cyclically_reduced():
            raise ValueError(f"{self.word!r} is not cyclically reduced")

    @cached_property
    def canonical_rotation(self) -> str:
        return least_rotation(self.word.text)

    def __len__(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return len(self) == len(other) and self.canonical_rotation == other.canonical_rotation

    def __hash__(self) -> int:
        return hash(self.canonical_rotation)

    def __repr__(self) -> str:
        return f"CyclicWord({self.word.text[:60]!r})"

    def rotations(self):
        t = self.word.text
        for i in range(len(t)):
            yield t[i:] + t[:i]


@dataclass(frozen=True)
class RootDecomposition:
    root: Word
    exponent: int


def least_rotation(s: str) -> str:
    """Lexicographically least rotation of ``s`` (Booth's algorithm, linear time)."""
    n = len(s)
    if n == 0:
        return s
    d = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        c = d[j]
        i = f[j - k - 1]
        while i != -1 and c != d[k + i + 1]:
            if c < d[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and c != d[k]:
            if c < d[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return d[k : k + n]


def cyclic_reduce(w: Word) -> tuple[Word, CyclicWord]:
    """Split ``w`` as ``g * core * g^-1`` with ``core`` cyclically reduced.

    >>> g, core = cyclic_reduce(Word("Xyx"))
    >>> g, core.word
    (Word('X'), Word('y'))
    """
    t = w.text
    n = len(t)
    if n == 0:
        raise ValueError("the empty word has no cyclic core")
    k = 0
    while 2 * k + 1 < n and t[k] == t[n - 1 - k].swapcase():
        k += 1
    return Word(t[:k]), CyclicWord(Word(t[k : n - k]))


def primitive_root(w: Word) -> RootDecomposition:
    """Write a cyclically reduced word as ``root ** exponent`` with ``root`` primitive.

    >>> primitive_root(Word("xyxy"))
    RootDecomposition(root=Word('xy'), exponent=2)
    """
    t = w.text
    if not t:
        raise ValueError("the empty word has no primitive root")
    if not w.is_cyclically_reduced():
        raise ValueError(f"{w!r} is not cyclically reduced")
    period = (t + t).find(t, 1)
    return RootDecomposition(Word(t[:period]), len(t) // period)


def _core(w: Word) -> Word:
    return cyclic_reduce(w)[1].word


def are_conjugate(u: Word, v: Word) -> bool:
    """Conjugacy in the free group: the cyclic cores are rotations of each other."""
    if not u or not v:
        return not u and not v
    cu, cv = _core(u).text, _core(v).text
    return len(cu) == len(cv) and cv in cu + cu


def are_virtually_conjugate(u: Word, v: Word) -> bool:
    """True when some nonzero powers of ``u`` and ``v`` are conjugate.

    Negative powers count, so the primitive root of one core may match the
    other's root or its inverse.
    """
    if not u or not v:
        raise ValueError("virtual conjugacy is defined for nontrivial words")
    ru = primitive_root(_core(u)).root
    rv = primitive_root(_core(v)).root
    return are_conjugate(ru, rv) or are_conjugate(ru, rv.inverse())


def virtual_conjugacy_key(w: Word) -> str:
    """A string that is equal for two words iff they are virtually conjugate."""
    root = primitive_root(_core(w)).root.text
    return min(least_rotation(root), least_rotation(root[::-1].swapcase()))


def commute(u: Word, v: Word) -> bool:
    """In a free group two elements commute iff they are powers of one element."""
    return u * v == v * u


def syllable_length(w: Word) -> int:
    """Number of maximal blocks ``x^k`` of a single generator in ``w``.

    >>> syllable_length(Word("Xyx"))
    3
    """
    return sum(1 for _ in groupby(w.text.lower()))


def _non_cancellable(u: Word, v: Word) -> bool:
    m = min(len(u), len(v))
    return 2 * canc(u, v) < m and 2 * canc(v, u) < m


def _join_reduced(chunks: Iterable[str]) -> str:
    """Concatenate freely reduced strings, cancelling only at the junctions."""
    out: list[str] = []
    for b in chunks:
        while out and b:
            a = out[-1]
            m = min(len(a), len(b))
            k = _common_prefix(a[len(a) - m :][::-1].swapcase(), b[:m])
            if k == 0:
                break
            b = b[k:]
            if k == len(a):
                out.pop()
            else:
                out[-1] = a[: len(a) - k]
                break
        if b:
            out.append(b)
    return "".join(out)


def evaluate_witness(witness: str, factors: dict[str, Word]) -> Word:
    """Multiply out a witness string such as ``"uuv"`` with the given factor words."""
    chunks = []
    for label, run in groupby(witness):
        k = sum(1 for _ in run)
        try:
            f = factors[label]
        except KeyError:
            raise ValueError(f"witness letter {label!r} has no factor") from None
        chunks.append((f**k).text)
    return Word(_join_reduced(chunks))


def is_positive_word_in(w: Word, u: Word, v: Word, max_states: int = 200_000) -> list[str] | None:
    """Search for a product of factors from ``{u, v}`` that reduces to ``w``.

    Returns the factor labels (``"u"``/``"v"``) of a shortest witness, or
    ``None`` when no product exists. Raises :class:`SearchInconclusive` when the
    bounded search was truncated and so cannot certify a "no".

    Partial products longer than ``|w| + |u| + |v|`` are dropped and at most
    ``4|w|`` factors are tried. For a non-cancellable pair positive products
    never shrink and only their last few letters can still change, so the
    search also drops products whose settled prefix leaves ``w``; a "no" is
    then definitive.
    """
    if not u or not v:
        raise ValueError("factors must be nontrivial")
    target = w.text
    tight = _non_cancellable(u, v)
    limit = len(target) + (0 if tight else len(u) + len(v))
    max_factors = 4 * max(len(target), 1)
    # in the tight case each factor keeps more than half its letters, so
    # appending f to a product ending in e cancels exactly canc(e, f) and all
    # but the last ``slack`` letters of a product are final
    slack = max(canc(a, b) for a in (u, v) for b in (u, v))

    factors = (("u", u), ("v", v))
    parent: dict[str, tuple[str, str] | None] = {}
    queue: deque[tuple[str, int]] = deque()
    truncated = False
    for label, f in factors:
        if f.text not in parent:
            parent[f.text] = None
            queue.append((f.text, 1))
    first_label = {u.text: "u", v.text: "v"}

    def witness(state: str) -> list[str]:
        out = []
        while parent[state] is not None:
            prev, label = parent[state]
            out.append(label)
            state = prev
        out.append(first_label[state])
        return out[::-1]

    while queue:
        state, count = queue.popleft()
        if state == target:
            return witness(state)
        if count >= max_factors:
            truncated = True
            continue
        for label, f in factors:
            nxt = (Word(state) * f).text
            if nxt in parent:
                continue
            if len(nxt) > limit:
                if not tight:
                    truncated = True
                continue
            if tight:
                settled = max(len(nxt) - slack, 0)
                if nxt[:settled] != target[:settled]:
                    continue
            if len(parent) >= max_states:
                raise SearchInconclusive(f"more than {max_states} partial products")
            parent[nxt] = (state, label)
            queue.append((nxt, count + 1))
    if truncated:
        raise SearchInconclusive("search bound reached before the space was exhausted")
    return None
