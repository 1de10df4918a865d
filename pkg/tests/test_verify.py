from fractions import Fraction
from itertools import groupby

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from smallcanc import CyclicWord, Presentation, SCPair, Word, build_presentation
from smallcanc.presentation import Relator
from smallcanc.verify import (
    check_single_relator_bound,
    certify_positive_relator,
    dehn_reduce,
    enumerate_pieces,
    is_trivial,
    max_piece_between,
    syllable_bound_check,
    verify_Cprime,
)
from smallcanc.verify.certify import CertificationError
from smallcanc.verify.pieces import cyclic_runs, fewest_syllables

primitive = (
    st.text(alphabet="xyXY", min_size=2, max_size=9)
    .map(O.free_reduce)
    .map(O.core)
    .filter(lambda w: w and O.smallest_root(w) == w)
)
relator_sets = st.lists(primitive, min_size=1, max_size=3)


def bare_pair(s: str, t: str) -> SCPair:
    S, T = Word(s), Word(t)
    return SCPair(S, T, Word(), CyclicWord(S), CyclicWord(T), (S, T), "u", "v")


def pres(*words, gens="xy"):
    return Presentation.from_words(gens, list(words))


def test_commutator_pieces():
    P = pres("xyXY")
    got = {r.piece.text for r in enumerate_pieces(P)}
    assert {"x", "y", "X", "Y"} <= got
    assert got == O.maximal_pieces(["xyXY"])
    v = verify_Cprime(P, 6)
    assert not v.ok and v.worst.length == 1


def test_free_presentation_is_vacuous():
    P = pres()
    assert enumerate_pieces(P) == []
    assert verify_Cprime(P, 6).ok
    assert verify_Cprime(P, 6, uniform=True).ok


def test_two_run_relator_matches_oracle():
    r = "xxxyyyyxxxxxyyyyyy"
    got = {p.piece.text for p in enumerate_pieces(pres(r))}
    assert got == O.maximal_pieces([r])
    assert "xxxyyyy" in got
    assert max(len(p) for p in got) == 7 == O.longest_piece_per_relator([r])[0]


@settings(max_examples=150, deadline=None)
@given(relator_sets, st.booleans())
def test_pieces_match_brute_force(rels, inverses):
    P = pres(*rels)
    got = {r.piece.text for r in enumerate_pieces(P, inverses=inverses)}
    assert got == O.maximal_pieces(rels, inverses)
    v = verify_Cprime(P, 6, inverses=inverses)
    assert list(v.longest) == O.longest_piece_per_relator(rels, inverses)


@settings(max_examples=100, deadline=None)
@given(relator_sets)
def test_piece_occurrences_are_real(rels):
    sym = O.symmetrized(rels)
    for rep in enumerate_pieces(pres(*rels)):
        assert len({o[:3] for o in rep.occurrences}) >= 2
        for rel, inverse, rot, _ in rep.occurrences:
            elem = next(e for i, f, k, e in sym if (i, f, k) == (rel, inverse, rot))
            assert elem.startswith(rep.piece.text)


@settings(max_examples=100, deadline=None)
@given(relator_sets, st.integers(1, 30), st.integers(1, 30))
def test_verdicts_are_monotone_and_uniform_is_stronger(rels, a, b):
    P = pres(*rels)
    lo, hi = sorted((Fraction(a, 3), Fraction(b, 3)))
    if verify_Cprime(P, hi).ok:
        assert verify_Cprime(P, lo).ok
    if verify_Cprime(P, hi, uniform=True).ok:
        assert verify_Cprime(P, hi).ok


@settings(max_examples=60, deadline=None)
@given(relator_sets)
def test_piece_sets_do_not_depend_on_relator_order(rels):
    fwd = {r.piece.text for r in enumerate_pieces(pres(*rels))}
    back = {r.piece.text for r in enumerate_pieces(pres(*rels[::-1]))}
    assert fwd == back


@settings(max_examples=100, deadline=None)
@given(st.lists(primitive, min_size=1, max_size=2), st.lists(primitive, min_size=1, max_size=2))
def test_max_piece_between_matches_brute_force(first, second):
    want = 0
    for a in first:
        for b in second:
            for ra in O.rotations(a):
                for rb in O.rotations(b) + O.rotations(O.inv(b)):
                    want = max(want, O.common_prefix(ra, rb))
    got = max_piece_between([Word(w) for w in first], [Word(w) for w in second])
    assert got == want


def test_report_json_shape():
    d = verify_Cprime(pres("xyXY"), 6).to_dict()
    assert set(d) == {"verdict", "p", "worst_piece", "piece_count", "uniform"}
    assert set(d["worst_piece"]) >= {"word", "length", "relator", "ratio"}


def test_single_relator_bound_example():
    r = Relator(Word("xxxxyyyyyxxxxxxyyyyyyy"), (4, 6), (5, 7), bare_pair("x", "y"))
    v = check_single_relator_bound(r)
    assert v.bound == 17
    assert v.longest_piece == O.self_piece_bruteforce("x" * 4 + "y" * 5 + "x" * 6 + "y" * 7)
    assert v.ok


def test_single_relator_bound_rejects_repeats_and_conjugate_cores():
    with pytest.raises(ValueError):
        check_single_relator_bound(
            Relator(Word("x" * 4 + "y" * 5 + "x" * 4 + "y" * 6), (4, 4), (5, 6), bare_pair("x", "y"))
        )
    with pytest.raises(ValueError):
        check_single_relator_bound(
            Relator(Word("xy" * 9 + "yx" * 10), (9,), (10,), bare_pair("xy", "yx"))
        )


def test_certify_examples():
    from smallcanc import build_relator

    r = build_relator(bare_pair("x", "y"), (2, 4), (3, 5), check=False)
    P = Presentation(("x", "y"), (r,))
    assert certify_positive_relator(P, 0).factors == list("uuvvvuuuuvvvvv")
    Q = pres("xxYx")
    with pytest.raises(CertificationError):
        certify_positive_relator(Q, 0, source=(Word("x"), Word("y")))


def test_certify_detects_broken_chain():
    P = build_presentation([("x", "y")], 6)
    r = P.relators[0]
    bad = Relator(Word(r.word.text + "x"), r.alpha, r.beta, r.pair, r.derivation)
    with pytest.raises(CertificationError, match="relator over"):
        certify_positive_relator(Presentation(("x", "y"), (bad,)), 0)


@pytest.fixture(scope="module")
def small_group():
    return build_presentation([("x", "Xy"), ("xy", "x")], 6)


def test_dehn_relator_and_conjugates(small_group):
    P = small_group
    for r in P.words:
        assert is_trivial(r, P)
        assert is_trivial(Word("xY") * r * Word("yX"), P)
        assert is_trivial(r.inverse(), P)


def test_dehn_short_words_survive(small_group):
    for w in ("x", "xy", "XYxy"):
        t = dehn_reduce(Word(w), small_group)
        assert not t.trivial and t.final.text == w and t.sound


def test_dehn_trace_steps_shorten(small_group):
    P = small_group
    r0, r1 = P.words
    w = Word("y") * r0 * Word("Y") * r1.inverse()
    t = dehn_reduce(w, P)
    assert t.trivial
    assert 1 <= len(t.steps) <= len(w)
    d = t.to_dict()
    # the identity is written "1" in the word syntax
    assert d["trivial"] and d["final"] == "1" and len(d["steps"]) == len(t.steps)


def test_dehn_empty_word_and_unsound_flag():
    assert is_trivial(Word(), pres("xyXY"))
    assert not dehn_reduce(Word("x"), pres("xyXY")).sound


def test_syllable_examples():
    assert not syllable_bound_check(pres("x" * 99, gens="x"), 24).ok
    assert syllable_bound_check(pres(), 24).ok


def test_cyclic_runs_and_windows():
    assert cyclic_runs("xxyyyxx") == [4, 3]
    assert cyclic_runs("xxyyy") == [2, 3]
    assert fewest_syllables([2, 3, 1, 4], 4) == 1
    assert fewest_syllables([2, 3, 1, 4], 5) == 2
    assert fewest_syllables([5], 3) == 1


@settings(max_examples=100, deadline=None)
@given(primitive.filter(lambda w: len(w) >= 2))
def test_fewest_syllables_matches_window_scan(w):
    runs = cyclic_runs(w)
    n = len(w)
    half = -(-n // 2)
    ww = w + w
    want = min(sum(1 for _ in groupby(ww[i : i + half].lower())) for i in range(n))
    if len(runs) == 1:
        want = 1
    assert fewest_syllables(runs, half) == want
