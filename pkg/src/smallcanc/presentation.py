"""Assembling small cancellation presentations from families of word pairs.

For each input pair ``(u, v)`` the pipeline produces one relator that is a
positive word in ``u, v`` and not a proper power:

1. make the pair non-cancellable (:func:`~smallcanc.pairs.make_non_cancellable`);
2. separate all pairs at once so that the ``2m`` cores of the words
   ``s_i = u_i^a v_i^a``, ``t_i = u_i^b v_i^b`` are pairwise not virtually
   conjugate (:func:`~smallcanc.pairs.separate_pairs`);
3. choose ``4p`` distinct large exponents and assemble
   ``r_i = s^a1 t^b1 ... s^a2p t^b2p``.

The resulting presentation is checked by the independent verifier before it
is returned.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence, Union

from .errors import (
    DegeneratePairError,
    InvariantViolation,
    LengthCapExceeded,
    WordSyntaxError,
)
from .families import DEFAULT_LENGTH_CAP, FamilyParams, build_calR_n
from .pairs import Derivation, SCPair, Step, _scpair, make_non_cancellable, separate_pairs
from .words import Word, commute, cyclic_reduce, format_word, parse, primitive_root

__all__ = [
    "Relator",
    "Presentation",
    "choose_relator_exponents",
    "build_relator",
    "build_presentation",
    "build_group_for_theorem",
    "theorem_parameter",
]

log = logging.getLogger(__name__)

Number = Union[int, Fraction]


def _as_number(p) -> Number:
    q = Fraction(p)
    return int(q) if q.denominator == 1 else q


def choose_relator_exponents(
    p: int, s_core_len: int, t_core_len: int, g_len: int, base: int = 0
) -> tuple[list[int], list[int]]:
    """``4p`` consecutive exponents from ``M``, split alternately into ``alpha`` and ``beta``.

    ``M = max(2 max(|s|, |t|) + 2, 4p + |g| + 2, base)``. Then every exponent
    exceeds ``2 max(|s|,|t|) + 1`` and the smallest exceeds half of
    ``max + |g| + 2``.

    >>> a, b = choose_relator_exponents(6, 4, 4, 0)
    >>> a[:3], b[:3], b[-1]
    ([26, 28, 30], [27, 29, 31], 49)
    """
    if int(p) != p or p < 1:
        raise ValueError(f"relator exponents need a positive integer p, got {p}")
    p = int(p)
    M = max(2 * max(s_core_len, t_core_len) + 2, 4 * p + g_len + 2, base)
    exps = list(range(M, M + 4 * p))
    alpha, beta = exps[0::2], exps[1::2]
    if not 2 * min(exps) > max(exps) + g_len + 2:
        raise InvariantViolation("exponent window is too wide for its base")
    return alpha, beta


@dataclass(frozen=True)
class Relator:
    """A relator word with the data that explains it.

    ``pair`` is ``None`` for relators given directly rather than built.
    """

    word: Word
    alpha: tuple[int, ...] = ()
    beta: tuple[int, ...] = ()
    pair: SCPair | None = None
    derivation: Derivation | None = None

    def __len__(self) -> int:
        return len(self.word)

    @property
    def source(self) -> tuple[Word, Word] | None:
        if self.derivation is not None:
            return self.derivation.original
        return self.pair.source if self.pair is not None else None

    @property
    def core(self) -> Word:
        """The cyclically reduced core that the symmetrized relator set is built from."""
        return cyclic_reduce(self.word)[1].word

    @property
    def witness(self) -> str:
        """The relator spelled over ``s`` (``"s"``) and ``t`` (``"t"``)."""
        return "".join("s" * a + "t" * b for a, b in zip(self.alpha, self.beta))


def _relator_checks(pair: SCPair, alpha: Sequence[int], beta: Sequence[int]) -> None:
    if len(alpha) != len(beta) or not alpha:
        raise ValueError("alpha and beta must be nonempty and of equal length")
    exps = list(alpha) + list(beta)
    if any(e < 1 for e in exps):
        raise ValueError("exponents must be positive")
    if len(set(exps)) != len(exps):
        raise ValueError(f"exponents are not pairwise distinct: {exps}")
    ds, dt = primitive_root(pair.s_core.word), primitive_root(pair.t_core.word)
    rs, es, rt, et = ds.root, ds.exponent, dt.root, dt.exponent
    eff = [a * es for a in alpha] + [b * et for b in beta]
    if len(set(eff)) != len(eff):
        raise ValueError("exponents collide once the cores are written as powers of their roots")
    floor = 2 * max(len(rs), len(rt)) + 1
    if min(eff) <= floor:
        raise ValueError(f"exponent {min(eff)} (in root powers) is not above {floor}")
    if not 2 * min(exps) > max(exps) + len(pair.g) + 2:
        raise ValueError("smallest exponent is not above half of (largest + |g| + 2)")


def build_relator(
    pair: SCPair, alpha: Sequence[int], beta: Sequence[int], check: bool = True
) -> Relator:
    """Assemble ``s^a1 t^b1 ... s^ak t^bk`` as a reduced word.

    With ``check`` the exponent conditions are enforced; the result is never
    allowed to be a proper power.
    """
    if check:
        _relator_checks(pair, alpha, beta)
    elif len(alpha) != len(beta) or not alpha or min(list(alpha) + list(beta)) < 1:
        raise ValueError("alpha and beta must be equal-length lists of positive integers")
    s, t = pair.s_core.word.text, pair.t_core.word.text
    core = "".join(s * a + t * b for a, b in zip(alpha, beta))
    g = pair.g.text
    word = Word(g + core + g[::-1].swapcase())
    if primitive_root(Word(core)).exponent != 1:
        raise InvariantViolation("relator is a proper power", format_word(word)[:80])
    return Relator(word, tuple(alpha), tuple(beta), pair)


def _estimate_letters(pair: SCPair, alpha: Sequence[int], beta: Sequence[int]) -> int:
    return 2 * len(pair.g) + sum(alpha) * len(pair.s_core) + sum(beta) * len(pair.t_core)


@dataclass(frozen=True)
class Presentation:
    """Generators, relators and the small cancellation parameter they are built for."""

    generators: tuple[str, ...]
    relators: tuple[Relator, ...]
    p: Number = 6
    params: FamilyParams | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        gens = set(self.generators)
        for i, r in enumerate(self.relators):
            if not r.word:
                raise ValueError(f"relator {i} is the empty word")
            extra = r.word.generators - gens
            if extra:
                raise ValueError(f"relator {i} uses undeclared generators {sorted(extra)}")

    @classmethod
    def from_words(cls, generators: Sequence[str], words: Sequence[Union[str, Word]], p: Number = 6):
        rels = tuple(Relator(w if isinstance(w, Word) else parse(w)) for w in words)
        return cls(tuple(generators), rels, _as_number(p))

    @property
    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def total_letters(self) -> int:
        return sum(len(r) for r in self.relators)

    # text form ---------------------------------------------------------

    def to_text(self) -> str:
        rels = ", ".join(format_word(r.word) for r in self.relators)
        return f"<{','.join(self.generators)} | {rels}>"

    @classmethod
    def from_text(cls, text: str, p: Number = 6) -> "Presentation":
        m = re.fullmatch(r"\s*<([^|>]*)\|([^>]*)>\s*", text)
        if not m:
            raise WordSyntaxError("expected <generators | relators>")
        gens = [g.strip() for g in m.group(1).split(",") if g.strip()]
        if any(len(g) != 1 or not g.islower() for g in gens):
            raise WordSyntaxError(f"generators must be lowercase letters: {gens}")
        rels = [r for r in (s.strip() for s in m.group(2).split(",")) if r]
        return cls.from_words(gens, rels, p)

    # JSON --------------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        out = []
        for r in self.relators:
            entry: dict[str, Any] = {
                "word": format_word(r.word),
                "alpha": list(r.alpha),
                "beta": list(r.beta),
                "source_pair": [format_word(w) for w in r.source] if r.source else None,
            }
            if r.pair is not None:
                pr = r.pair
                entry["chain"] = {
                    "pair": [format_word(pr.source[0]), format_word(pr.source[1])],
                    "exponents": list(pr.exponents),
                    "power": pr.power,
                    "s": format_word(pr.s),
                    "t": format_word(pr.t),
                }
                if r.derivation is not None:
                    d = r.derivation
                    entry["chain"]["derivation"] = {
                        "witnesses": [d.u_witness, d.v_witness],
                        "steps": [
                            [st.rule, st.cancellation, [format_word(w) for w in st.before + st.after]]
                            for st in d.steps
                        ],
                    }
            out.append(entry)
        p = self.p
        return {
            "generators": list(self.generators),
            "relators": out,
            "p": p if isinstance(p, int) else str(p),
            "params": self.params.as_dict() if self.params else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Presentation":
        try:
            gens = tuple(data["generators"])
            p = _as_number(data["p"])
            params = FamilyParams(**data["params"]) if data.get("params") else None
            rels = [_relator_from_dict(e) for e in data["relators"]]
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed presentation data: {exc!r}") from exc
        return cls(gens, tuple(rels), p, params)

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        return cls.from_dict(json.loads(text))


def _relator_from_dict(e: dict[str, Any]) -> Relator:
    word = parse(e["word"])
    alpha, beta = tuple(e.get("alpha") or ()), tuple(e.get("beta") or ())
    chain = e.get("chain")
    if not chain:
        return Relator(word, alpha, beta)
    u, v = (parse(w) for w in chain["pair"])
    k1, k2 = chain["exponents"]
    pair = _scpair((u, v), k1, k2, chain["power"])
    if format_word(pair.s) != chain["s"] or format_word(pair.t) != chain["t"]:
        raise ValueError("stored s, t disagree with the stored pair and exponents")
    derivation = None
    if "derivation" in chain:
        d = chain["derivation"]
        steps = []
        for rule, c, ws in d["steps"]:
            w = [parse(x) for x in ws]
            steps.append(Step(rule, (w[0], w[1]), (w[2], w[3]), c))
        original = parse(e["source_pair"][0]), parse(e["source_pair"][1])
        uw, vw = d["witnesses"]
        derivation = Derivation(original, tuple(steps), u, v, uw, vw)
    return Relator(word, alpha, beta, pair, derivation)


def _generators_of(U: Sequence[tuple[Word, Word]]) -> tuple[str, ...]:
    gens: set[str] = set()
    for u, v in U:
        gens |= u.generators | v.generators
    return tuple(sorted(gens)) if gens else ("x", "y")


def build_presentation(
    U: Sequence[tuple[Union[str, Word], Union[str, Word]]],
    p: Number,
    amplify: bool = False,
    verify: bool = True,
    length_cap: int = DEFAULT_LENGTH_CAP,
    generators: Sequence[str] | None = None,
    params: FamilyParams | None = None,
) -> Presentation:
    """One relator per pair of ``U``, positive in that pair, forming a C'(1/p) presentation.

    ``amplify`` raises the separated words to a large common power before
    assembly, which bounds overlaps between pairs a priori at the cost of
    much longer relators; by default the exponents alone keep overlaps short
    and the verifier confirms it. ``length_cap`` bounds the total number of
    relator letters.
    """
    if p < 6:
        raise ValueError(f"p must be at least 6, got {p}")
    pairs = [
        (u if isinstance(u, Word) else parse(u), v if isinstance(v, Word) else parse(v))
        for u, v in U
    ]
    for i, (u, v) in enumerate(pairs):
        if not u or not v or commute(u, v):
            raise DegeneratePairError(
                f"pair {i} ({format_word(u)}, {format_word(v)}) consists of powers of one element"
            )
    gens = tuple(generators) if generators is not None else _generators_of(pairs)
    derived = [make_non_cancellable(u, v) for u, v in pairs]
    sc = separate_pairs([(a, b) for a, b, _ in derived], amplify=amplify)

    cores = [w for pr in sc for w in (pr.s_core.word, pr.t_core.word)]
    root_max = max((len(primitive_root(w).root) for w in cores), default=0)
    plan = []
    total = 0
    for pr in sc:
        alpha, beta = _admissible_exponents(pr, int(p), root_max)
        total += _estimate_letters(pr, alpha, beta)
        plan.append((pr, alpha, beta))
    if total > length_cap:
        raise LengthCapExceeded(total, length_cap, what="relators")

    relators = []
    for (pr, alpha, beta), (_, _, deriv) in zip(plan, derived):
        r = build_relator(pr, alpha, beta)
        relators.append(Relator(r.word, r.alpha, r.beta, pr, deriv))
    pres = Presentation(gens, tuple(relators), _as_number(p), params)
    if verify and relators:
        from .verify.pieces import verify_Cprime

        verdict = verify_Cprime(pres, p)
        if not verdict.ok:
            raise InvariantViolation(
                f"built presentation fails C'(1/{p})", verdict.worst
            )
    return pres


def _admissible_exponents(pr: SCPair, p: int, root_max: int) -> tuple[list[int], list[int]]:
    base = 0
    for _ in range(64):
        alpha, beta = choose_relator_exponents(p, root_max, root_max, len(pr.g), base=base)
        try:
            _relator_checks(pr, alpha, beta)
            return alpha, beta
        except ValueError:
            base = alpha[0] + 1
    raise InvariantViolation("no admissible exponent window found", pr)


def theorem_parameter(n: int, p: Number) -> Number:
    """``max(p, 8 * 3**n)``."""
    return max(_as_number(p), 8 * 3**n)


def build_group_for_theorem(
    n: int, p: Number = 6, length_cap: int = DEFAULT_LENGTH_CAP, **kwargs
) -> Presentation:
    """Presentation over ``x, y`` with one relator per pair of the level-``n`` family."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if p < 6:
        raise ValueError("p must be at least 6")
    family = build_calR_n(Word("x"), Word("y"), n, length_cap=length_cap)
    return build_presentation(
        family,
        theorem_parameter(n, p),
        length_cap=length_cap,
        generators=("x", "y"),
        params=FamilyParams.for_n(n),
        **kwargs,
    )
