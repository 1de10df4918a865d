"""Recursive word-pair families whose small cancellation quotients bound cubical dimension.

``R_n(x, y)`` lists nine schemas of pairs built from powers of ``x`` and
``y``; ``calR_n(x, y)`` unions ``R_n`` in both orders with two copies of
``calR_{n-1}`` evaluated at substituted generators. Word lengths grow like
``N = n! * K3!`` per level, so every builder enforces a total letter cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .errors import LengthCapExceeded
from .ramsey import _EXACT_R3, ramsey_K3
from .words import Word, commute

__all__ = [
    "DEFAULT_LENGTH_CAP",
    "FamilyParams",
    "star_pairs",
    "build_R_n",
    "build_calR_n",
    "family_letters",
]

log = logging.getLogger(__name__)

DEFAULT_LENGTH_CAP = 10**7

Pair = tuple[Word, Word]


@dataclass(frozen=True)
class FamilyParams:
    """``n``, the Ramsey constant ``K3`` and the substitution power ``N = n! K3!``."""

    n: int
    K3: int
    N: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.n + 1 in _EXACT_R3 and self.K3 < _EXACT_R3[self.n + 1]:
            raise ValueError(f"K3={self.K3} is below R({self.n + 1},3)")
        if self.N != factorial(self.n) * factorial(self.K3):
            raise ValueError("N must equal n! * K3!")

    @classmethod
    def for_n(cls, n: int, K3: int | None = None) -> "FamilyParams":
        K3 = ramsey_K3(n) if K3 is None else K3
        return cls(n, K3, factorial(n) * factorial(K3))

    def as_dict(self) -> dict:
        return {"n": self.n, "K3": self.K3, "N": self.N}


def family_letters(pairs: Iterable[Pair]) -> int:
    return sum(len(u) + len(v) for u, v in pairs)


def _dedupe(pairs: Iterable[Pair], context: str) -> list[Pair]:
    seen: set[Pair] = set()
    out: list[Pair] = []
    for u, v in pairs:
        if (u, v) in seen:
            continue
        seen.add((u, v))
        if not u or not v or commute(u, v):
            log.warning("%s: dropping degenerate pair (%s, %s)", context, u, v)
            continue
        out.append((u, v))
    return out


def _check_scale(x: Word, y: Word, exponent: int, cap: int) -> None:
    # the longest word in R_n uses at most 2*exponent powers of x or y
    bound = 2 * exponent * max(len(x), len(y))
    if bound > cap:
        raise LengthCapExceeded(bound, cap, what="a single family word")


def star_pairs(x: Word, y: Word, n: int) -> list[Pair]:
    """``(x^F, y^{+-kF} x^F)`` and ``(x^-F, y^{+-kF} x^-F)`` for ``k = 1..n``, ``F = n!``.

    >>> [(str(a), str(b)) for a, b in star_pairs(Word("x"), Word("y"), 1)]
    [('x', 'yx'), ('x', 'Yx'), ('X', 'yX'), ('X', 'YX')]
    """
    if not x or not y:
        raise ValueError("x and y must be nontrivial")
    F = factorial(n)
    return [p for k in range(1, n + 1) for p in _star_k(x, y, F, k)]


def build_R_n(
    x: Word, y: Word, params: FamilyParams, length_cap: int = DEFAULT_LENGTH_CAP
) -> list[Pair]:
    """All schema pairs of ``R_n(x, y)`` for ``k = 1..n`` and ``1 <= l < l' <= K3``.

    Order: per ``k`` the four star pairs, then the five ``(l, l')`` schemas.
    Duplicates and degenerate pairs are dropped.
    """
    if not x or not y:
        raise ValueError("x and y must be nontrivial")
    n, K3 = params.n, params.K3
    F = factorial(n)
    _check_scale(x, y, max(F, n * K3 + n), length_cap)
    xf, xi = x**F, x ** (-F)
    raw: list[Pair] = []
    total = 0
    for k in range(1, n + 1):
        block = _star_k(x, y, F, k)
        yik, xik = y ** (-k), x ** (-k)
        for l in range(1, K3 + 1):
            for l2 in range(l + 1, K3 + 1):
                ya, yb = y ** (k * l), y ** (k * l2)
                block.extend(
                    [
                        (xi * yik * xf * ya, xi * yik * xf * yb),
                        (yik * xi * ya * xf, yik * xi * yb * xf),
                        (xik * ya, xik * yb),
                        (xi, ya * xi),
                        (xf, ya * xf),
                    ]
                )
        total += family_letters(block)
        if total > length_cap:
            raise LengthCapExceeded(total, length_cap, what="R_n family")
        raw.extend(block)
    return _dedupe(raw, "R_n")


def _star_k(x: Word, y: Word, F: int, k: int) -> list[Pair]:
    xf, xi = x**F, x ** (-F)
    return [(b, y ** (s * k * F) * b) for b in (xf, xi) for s in (1, -1)]


def build_calR_n(
    x: Word,
    y: Word,
    n: int,
    length_cap: int = DEFAULT_LENGTH_CAP,
    K3: int | None = None,
) -> list[Pair]:
    """The recursive family: ``R_n(x,y) + R_n(y,x)`` plus two substituted copies of level ``n-1``.

    The substitutions are ``(y^N, x^-F y^N x^F)`` and ``(x^N, y^-F x^N y^F)``
    with ``F = n!`` and ``N = n! K3!``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    params = FamilyParams.for_n(n, K3)
    pairs = build_R_n(x, y, params, length_cap) + build_R_n(y, x, params, length_cap)
    if n > 1:
        F, N = factorial(n), params.N
        _check_scale(x, y, N + 2 * F, length_cap)
        used = family_letters(pairs)
        for a, b in ((y, x), (x, y)):
            a_n = a**N
            sub = build_calR_n(
                a_n, b ** (-F) * a_n * b**F, n - 1, length_cap - used, None
            )
            used += family_letters(sub)
            pairs.extend(sub)
    pairs = _dedupe(pairs, "calR_n")
    total = family_letters(pairs)
    if total > length_cap:
        raise LengthCapExceeded(total, length_cap, what="calR_n family")
    return pairs
