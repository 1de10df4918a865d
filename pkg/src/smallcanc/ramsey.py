"""Ramsey constants R(n+1, 3) and the disjoint-triple search they guarantee."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence, Union

from .errors import InvariantViolation

__all__ = ["ramsey_K3", "find_disjoint_triple", "has_clique"]

# Exact R(s, 3) for s = 2..9.
_EXACT_R3 = {2: 3, 3: 6, 4: 9, 5: 14, 6: 18, 7: 23, 8: 28, 9: 36}

Relation = Union[Callable[[int, int], bool], Sequence[Sequence[bool]]]


def ramsey_K3(n: int) -> int:
    """R(n+1, 3): exact up to n = 8, then ``R(s,3) <= R(s-1,3) + s``.

    >>> [ramsey_K3(n) for n in (1, 2, 8, 9)]
    [3, 6, 36, 46]
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    s = n + 1
    if s in _EXACT_R3:
        return _EXACT_R3[s]
    bound = _EXACT_R3[9]
    for t in range(10, s + 1):
        bound += t
    return bound


def _as_callable(crossing: Relation) -> Callable[[int, int], bool]:
    if callable(crossing):
        return lambda i, j: bool(crossing(i, j))
    return lambda i, j: bool(crossing[i][j])


def has_clique(crossing: Relation, size: int, vertices: int) -> bool:
    """Does the crossing graph on ``range(vertices)`` contain a ``size``-clique."""
    rel = _as_callable(crossing)
    adj = [{j for j in range(vertices) if j != i and rel(i, j)} for i in range(vertices)]

    def extend(clique_size: int, candidates: set[int]) -> bool:
        if clique_size >= size:
            return True
        if clique_size + len(candidates) < size:
            return False
        for v in sorted(candidates):
            if extend(clique_size + 1, candidates & {w for w in adj[v] if w > v}):
                return True
        return False

    return extend(0, set(range(vertices)))


def find_disjoint_triple(crossing: Relation, n: int, K3: int | None = None) -> tuple[int, int]:
    """Indices ``0 < k < k' < K3`` with no crossing among ``{0, k, k'}``.

    ``crossing`` is either a callable ``(i, j) -> bool`` or a square boolean
    matrix; ``K3`` defaults to :func:`ramsey_K3` (or the matrix size). Since
    the graph has no ``(n+1)``-clique, Ramsey gives an anticlique of size 3
    among any ``K3`` vertices. When the relation is invariant under shifting
    indices, such an anticlique can be moved to contain ``0``; otherwise one
    through ``0`` may not exist and a :class:`ValueError` is raised.
    """
    if K3 is None:
        K3 = len(crossing) if not callable(crossing) else ramsey_K3(n)
    if K3 < ramsey_K3(n):
        raise ValueError(f"K3={K3} is below R({n + 1},3)={ramsey_K3(n)}")
    rel = _as_callable(crossing)
    for i, j in combinations(range(K3), 2):
        if rel(i, j) != rel(j, i):
            raise ValueError(f"crossing relation is not symmetric at ({i},{j})")
    if has_clique(rel, n + 1, K3):
        raise ValueError(f"crossing relation contains a {n + 1}-clique")
    for k, kk in combinations(range(1, K3), 2):
        if not (rel(0, k) or rel(0, kk) or rel(k, kk)):
            assert not (rel(k, 0) or rel(kk, 0) or rel(kk, k))
            return k, kk
    for a, b, c in combinations(range(1, K3), 3):
        if not (rel(a, b) or rel(a, c) or rel(b, c)):
            raise ValueError(
                f"anticlique {{{a},{b},{c}}} avoids 0; the relation is not shift invariant"
            )
    raise InvariantViolation("no anticlique of size 3 despite the Ramsey bound")
