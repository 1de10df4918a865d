import json
import re
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from smallcanc import (
    DegeneratePairError,
    Word,
    are_virtually_conjugate,
    canc,
    check_long_overlap,
    find_nonconjugate_power_pairs,
    is_non_cancellable,
    make_non_cancellable,
    small_cancellation_pair,
)
from smallcanc.words import evaluate_witness

W = Word


def expand(text: str) -> str:
    """Independent reader for the trace syntax (letters with optional ``^k``)."""
    return "".join(c * int(k or 1) for c, k in re.findall(r"([A-Za-z])(?:\^(\d+))?", text))


def parse_trace(text: str):
    blocks, cur = [], None
    for line in text.splitlines():
        if line.startswith("# "):
            cur = {"input": tuple(line[2:].split()), "steps": []}
            blocks.append(cur)
        elif line.strip():
            m = re.fullmatch(r"(\S+) canc=(\d+) (\S+),(\S+) -> (\S+),(\S+)", line)
            rule, c, a, b, c2, d = m.groups()
            cur["steps"].append((rule, int(c), expand(a), expand(b), expand(c2), expand(d)))
    return blocks


@pytest.mark.parametrize("u, v, ok", [("x", "y", True), ("x", "Xy", False), ("xx", "yy", True)])
def test_is_non_cancellable_examples(u, v, ok):
    assert is_non_cancellable(W(u), W(v)) is ok


@pytest.mark.parametrize(
    "u, v, out", [("x", "Xy", ("xx", "yy")), ("x", "y", ("xx", "yy")), ("xy", "x", ("xyxy", "xx"))]
)
def test_make_non_cancellable_examples(u, v, out):
    a, b, d = make_non_cancellable(W(u), W(v))
    assert (a.text, b.text) == out
    d.check()


def test_make_non_cancellable_first_example_trace():
    _, _, d = make_non_cancellable(W("x"), W("Xy"))
    assert d.trace() == "(u,v)->(u,uv) canc=1 x,Xy -> x,y\nsquare canc=0 x,y -> x^2,y^2\n"


def test_make_non_cancellable_rejects_powers_of_one_element():
    with pytest.raises(DegeneratePairError):
        make_non_cancellable(W("x"), W("xx"))
    with pytest.raises(DegeneratePairError):
        make_non_cancellable(W("xyX"), W("xYYX"))


def test_derivation_traces_match_golden(golden):
    text = (golden / "derivations.txt").read_text()
    for block in parse_trace(text):
        u, v, d = make_non_cancellable(W(block["input"][0]), W(block["input"][1]))
        got = d.trace()
        header = f"# {block['input'][0]} {block['input'][1]}\n"
        assert header + got in text


def test_derivation_steps_follow_the_rules(golden):
    """Each golden step is re-derived with the oracle's cancellation and products."""
    blocks = parse_trace((golden / "derivations.txt").read_text())
    assert len(blocks) == 9
    for block in blocks:
        u, v = block["input"]
        steps = block["steps"]
        assert steps[-1][0] == "square"
        for rule, c, a, b, c2, d in steps:
            assert (a, b) == (u, v)
            if rule == "square":
                assert 2 * O.canc_by_length(u, v) < min(len(u), len(v))
                assert 2 * O.canc_by_length(v, u) < min(len(u), len(v))
                assert (c2, d) == (O.mul(u, u), O.mul(v, v))
                continue
            uv, vu = O.mul(u, v), O.mul(v, u)
            if rule.endswith("uv)"):
                assert c == O.canc_by_length(u, v) and 2 * c > min(len(u), len(v))
            else:
                assert c == O.canc_by_length(v, u) and 2 * c > min(len(u), len(v))
                assert not 2 * O.canc_by_length(u, v) > min(len(u), len(v))
            expected = {
                "(u,v)->(u,uv)": (u, uv),
                "(u,v)->(v,uv)": (v, uv),
                "(u,v)->(u,vu)": (u, vu),
                "(u,v)->(v,vu)": (v, vu),
            }[rule]
            keep_u = len(u) <= len(v)
            assert rule.startswith("(u,v)->(u," if keep_u else "(u,v)->(v,")
            assert (c2, d) == expected
            assert len(c2) + len(d) < len(u) + len(v)
            u, v = c2, d


def test_power_pairs_examples(golden):
    assert find_nonconjugate_power_pairs(W("x"), W("y"), 3) == [1, 2, 3]
    assert find_nonconjugate_power_pairs(W("x"), W("y"), 1) == [1]
    g = json.loads((golden / "power_pairs_xy_yx.json").read_text())
    assert find_nonconjugate_power_pairs(W(g["u"]), W(g["v"]), g["count"]) == g["exponents"]


def test_power_pairs_are_pairwise_separated():
    u, v = W("xxy"), W("yy")
    ks = find_nonconjugate_power_pairs(u, v, 4)
    assert ks == sorted(ks) and len(set(ks)) == 4
    ws = [O.mul(O.power("xxy", k), O.power("yy", k)) for k in ks]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not are_virtually_conjugate(W(ws[i]), W(ws[j]))


@pytest.mark.parametrize("s, t, ok", [("xyxy", "xy", True), ("xy", "yx", False)])
def test_long_overlap_examples(s, t, ok):
    assert check_long_overlap(W(s), W(t)) is ok


def test_long_overlap_needs_cyclically_reduced():
    with pytest.raises(ValueError):
        check_long_overlap(W("xyX"), W("y"))


def test_square_never_halves_exhaustive():
    for w in O.reduced_words("xy", 8, min_len=1):
        assert 2 * canc(W(w), W(w)) < len(w)


cyc = st.text(alphabet="xyXY", min_size=1, max_size=6).map(O.free_reduce).map(O.core).filter(bool)


@settings(max_examples=300)
@given(cyc, cyc)
def test_long_overlap_implies_common_root(s, t):
    if len(t) > len(s):
        s, t = t, s
    if check_long_overlap(W(s), W(t)):
        assert O.conjugate(O.smallest_root(s), O.smallest_root(t))


def _longest_common_substring(a: str, b: str) -> int:
    lo, hi = 0, min(len(a), len(b))
    while lo < hi:
        mid = (lo + hi + 1) // 2
        subs = {a[i : i + mid] for i in range(len(a) - mid + 1)}
        if any(b[i : i + mid] in subs for i in range(len(b) - mid + 1)):
            lo = mid
        else:
            hi = mid - 1
    return lo


def test_small_cancellation_pair_example():
    x, y = W("x"), W("y")
    p1, p2 = small_cancellation_pair((x, y), (y, x))
    for pr in (p1, p2):
        pr.check()
        assert is_non_cancellable(pr.s, pr.t)
        g = len(pr.g)
        assert canc(pr.s, pr.t) == canc(pr.t, pr.s) == canc(pr.s, pr.s) == canc(pr.t, pr.t) == g
    cores = [p1.s_core.word, p1.t_core.word, p2.s_core.word, p2.t_core.word]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not are_virtually_conjugate(cores[i], cores[j])
    # N is taken from the cores before they are raised to the N-th power
    assert p1.power == p2.power == 8 * max(len(c) for c in cores) // p1.power
    s1, t1 = p1.s.text, p1.t.text
    s2, t2 = p2.s.text, p2.t.text
    assert s1 == O.power(O.mul(O.power("x", p1.exponents[0]), O.power("y", p1.exponents[0])), p1.power)

    bound = min(len(s1), len(t1), len(s2), len(t2))
    first = ["".join(f) for k in (1, 2) for f in product([s1, t1], repeat=k)]
    second = ["".join(f) for k in (1, 2) for f in product([s2, t2], repeat=k)]
    longest = 0
    for a in first:
        for b in second:
            longest = max(longest, _longest_common_substring(a, b), _longest_common_substring(a, O.inv(b)))
    assert longest < bound


def test_small_cancellation_pair_rejects_degenerate():
    with pytest.raises(DegeneratePairError):
        small_cancellation_pair((W("x"), W("xx")), (W("x"), W("y")))


def test_scpair_witnesses_reproduce_words():
    p1, p2 = small_cancellation_pair((W("xx"), W("yy")), (W("xyxy"), W("xx")))
    for pr in (p1, p2):
        f = {"u": pr.source[0], "v": pr.source[1]}
        assert evaluate_witness(pr.s_witness, f) == pr.s
        assert evaluate_witness(pr.t_witness, f) == pr.t
