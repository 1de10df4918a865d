"""Re-deriving each relator as a positive word in the pair it was built from."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SmallCancellationError
from ..presentation import Presentation
from ..words import Word, evaluate_witness, format_word, is_positive_word_in, primitive_root

__all__ = ["CertificationError", "WitnessChain", "certify_positive_relator", "compose_witness"]


class CertificationError(SmallCancellationError, ValueError):
    """A stored witness does not reproduce its word; ``stage`` names the failing link."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"{stage}: {message}")


@dataclass(frozen=True)
class WitnessChain:
    """Witnesses from the relator down to the original pair.

    ``stages`` holds ``(name, witness)`` entries from the outermost word
    inwards; ``witness`` is the composed spelling over the original pair.
    """

    relator: int
    stages: tuple[tuple[str, str], ...]
    witness: str

    @property
    def factors(self) -> list[str]:
        return list(self.witness)


def compose_witness(outer: str, inner: dict[str, str]) -> str:
    """Substitute inner witnesses for the letters of ``outer``."""
    return "".join(inner[c] for c in outer)


def _expect(stage: str, witness: str, factors: dict[str, Word], target: Word) -> None:
    try:
        got = evaluate_witness(witness, factors)
    except ValueError as exc:
        raise CertificationError(stage, str(exc)) from None
    if got != target:
        raise CertificationError(stage, f"witness gives {format_word(got)[:60]}, expected {format_word(target)[:60]}")


def certify_positive_relator(
    P: Presentation, i: int, source: tuple[Word, Word] | None = None
) -> WitnessChain:
    """Check that relator ``i`` is a positive word in its source pair and not a proper power.

    Stored witnesses are multiplied out stage by stage. A relator without a
    stored chain is searched directly as a positive word in ``source``.
    """
    r = P.relators[i]
    if primitive_root(r.core).exponent != 1:
        raise CertificationError("relator", "is a proper power")
    if r.pair is None:
        if source is None:
            raise CertificationError("relator", "no stored provenance and no source pair given")
        u, v = source
        found = is_positive_word_in(r.word, u, v)
        if found is None:
            raise CertificationError("relator", "is not a positive word in the source pair")
        w = "".join(found)
        return WitnessChain(i, (("relator/source", w),), w)

    pr = r.pair
    rel_w = r.witness
    _expect("relator over (s, t)", rel_w.replace("s", "u").replace("t", "v"), {"u": pr.s, "v": pr.t}, r.word)
    _expect("s over separated pair", pr.s_witness, {"u": pr.source[0], "v": pr.source[1]}, pr.s)
    _expect("t over separated pair", pr.t_witness, {"u": pr.source[0], "v": pr.source[1]}, pr.t)
    stages = [("relator/(s,t)", rel_w), ("s/(u',v')", pr.s_witness), ("t/(u',v')", pr.t_witness)]
    full = compose_witness(rel_w, {"s": pr.s_witness, "t": pr.t_witness})
    d = r.derivation
    if d is not None:
        if (d.u, d.v) != pr.source:
            raise CertificationError("derivation", "does not end at the separated pair")
        u, v = d.original
        _expect("u' over original pair", d.u_witness, {"u": u, "v": v}, d.u)
        _expect("v' over original pair", d.v_witness, {"u": u, "v": v}, d.v)
        stages += [("u'/(u,v)", d.u_witness), ("v'/(u,v)", d.v_witness)]
        full = compose_witness(full, {"u": d.u_witness, "v": d.v_witness})
        base = (u, v)
    else:
        base = pr.source
    _expect("composed witness", full, {"u": base[0], "v": base[1]}, r.word)
    if source is not None and tuple(source) != base:
        raise CertificationError("source", "stored chain starts from a different pair")
    return WitnessChain(i, tuple(stages), full)
