import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autosgp import constructions as C
from autosgp.action import (
    Element,
    act,
    act_stream,
    compose_wreath,
    feed,
    section,
    section_automaton,
    wreath,
)
from autosgp.automaton import AutomatonError, ClassViolation
from autosgp.deciders import equal
from autosgp.words import is_prefix
from oracles import apply, random_expanding, table_equal, thue_morse_prefix, words_upto

GALLERY = [
    C.example21(),
    C.smn(2, 3),
    C.bicyclic(),
    C.thue_morse(),
    C.adding_machine(),
    C.lamplighter(),
]


def elements(t, maxlen):
    n = len(t.states)
    for m in range(1, maxlen + 1):
        for f in itertools.product(range(n), repeat=m):
            yield Element(t, f)


def test_element_parsing_and_algebra():
    t = C.example21()
    ba = t.element("b a")
    assert ba.factors == (1, 0)
    assert t.element("ba") == ba
    assert str(ba * t.element("a")) == "b a a"
    assert (ba**2).factors == (1, 0, 1, 0)
    with pytest.raises(ValueError):
        t.element("a") ** 0
    with pytest.raises(AutomatonError):
        Element(t, ())
    with pytest.raises(AutomatonError):
        t.element("a") * C.thue_morse().element("a")


def test_act_examples():
    tm = C.thue_morse().element("a")
    assert str(act(tm, "0")) == "0 1"
    assert act(tm, "-") == tm.automaton.alphabet.empty
    assert str(act(C.example21().element("a"), "010")) == "1 1 1 1 1"
    assert str(tm("0 1 1 0")) == "0 1 1 0 1 0 0 1"


def test_rightmost_factor_acts_first():
    t = C.smn(2, 3)
    # b^i a^j (s1) = b^i (s1^(2^j))
    w = act(t.element("b a a"), "s1")
    assert w.tokens == ("s2",) * 4
    assert act(t.element("a b"), "s1").tokens == ("s2",)


def test_section_examples():
    tm = C.thue_morse()
    a = tm.element("a")
    assert section(a, "0") == a
    assert section(a, "-") == a
    aa = tm.element("a a")
    assert section(aa, "0") == aa
    bi = C.bicyclic()
    # b reads 0 with empty output, so the factor in front of it reads nothing
    assert str(section(bi.element("c b"), "0")) == "c e"


@pytest.mark.parametrize("t", GALLERY, ids=lambda t: ",".join(t.states))
def test_section_law_on_gallery(t):
    k = len(t.alphabet)
    for s in elements(t, 2):
        for u in words_upto(k, 4):
            su = section(s, t.alphabet.word([t.alphabet.letters[x] for x in u]))
            head = apply(t, s.factors, u)
            for v in words_upto(k, 8 - len(u) if k < 3 else 3):
                assert apply(t, s.factors, u + v) == head + apply(t, su.factors, v)


@pytest.mark.parametrize("t", GALLERY, ids=lambda t: ",".join(t.states))
def test_length_bounds_and_prefix_preservation(t):
    k = len(t.alphabet)
    maxlen = 10 if k <= 2 else 6
    for s in elements(t, 2):
        prev = {}
        for w in words_upto(k, maxlen):
            img = feed(t, s.factors, w)[0]
            assert img == apply(t, s.factors, w)
            if t.is_expanding:
                assert len(img) >= len(w)
            if t.is_synchronous:
                assert len(img) == len(w)
            if w:
                assert img[: len(prev[w[:-1]])] == prev[w[:-1]]
            prev[w] = img


def test_wreath_examples():
    tm = C.thue_morse()
    f = wreath(tm.element("a"))
    assert [str(w) for w in f.tau] == ["0 1", "1 0"]
    assert [str(s) for s in f.sections] == ["a", "a"]
    g = wreath(tm.element("a a"))
    assert str(g.tau[0]) == "0 1 1 0"
    assert str(g.sections[0]) == "a a"
    i = wreath(C.identity("01").element("i"))
    assert [str(w) for w in i.tau] == ["0", "1"]
    assert str(i) == "(i, i)[0, 1]"


def test_compose_wreath_thue_morse():
    a = wreath(C.thue_morse().element("a"))
    aa = compose_wreath(a, a)
    ref = wreath(C.thue_morse().element("a a"))
    assert aa.tau == ref.tau
    assert aa.sections == ref.sections


def test_compose_with_identity():
    # the identity sink shares the automaton, so the forms compose
    t = C.union(C.example21(), C.identity("01"))
    ident = wreath(t.element("i"))
    f = wreath(t.element("b"))
    right = compose_wreath(f, ident)
    assert right.tau == f.tau
    assert all(equal(x, y) for x, y in zip(right.sections, f.sections))
    left = compose_wreath(ident, f)
    assert left.tau == f.tau
    assert all(equal(x, y) for x, y in zip(left.sections, f.sections))


def test_compose_with_empty_images():
    bi = C.bicyclic()
    c, b = wreath(bi.element("c")), wreath(bi.element("b"))
    cb = compose_wreath(c, b)
    # b writes nothing on 0, so c stays put and its section is c itself
    assert str(cb.tau[0]) == "-"
    assert str(cb.sections[0]) == "c e"
    assert cb.sections[0] == wreath(bi.element("c b")).sections[0]


@pytest.mark.parametrize("t", GALLERY, ids=lambda t: ",".join(t.states))
def test_eq1_soundness_on_gallery(t):
    for s in elements(t, 2):
        for u in elements(t, 2):
            got = compose_wreath(wreath(s), wreath(u))
            ref = wreath(s * u)
            assert got.tau == ref.tau
            assert all(equal(x, y) for x, y in zip(got.sections, ref.sections))


def test_section_automaton_examples():
    tm = C.thue_morse()
    sa = section_automaton(tm.element("a"))
    assert sa.automaton.states == ("a",)
    assert sa.automaton.out == tm.out
    saa = section_automaton(tm.element("a a"))
    assert saa.automaton.states == ("a.a",)
    ex = C.example21()
    ba = ex.element("b a")
    sba = section_automaton(ba)
    assert sba.automaton.states[0] == "b.a"
    assert all(len(q.split(".")) <= 2 for q in sba.automaton.states)
    assert table_equal_across(ba, sba, 6)


def table_equal_across(s, s2, maxlen):
    t, t2 = s.automaton, s2.automaton
    return all(
        apply(t, s.factors, w) == apply(t2, s2.factors, w) for w in words_upto(len(t.alphabet), maxlen)
    )


def test_section_automaton_on_random_automata():
    for t in random_expanding(11, 30):
        for s in elements(t, 2):
            s2 = section_automaton(s)
            assert len(s2.automaton.states) <= sum(len(t.states) ** m for m in (1, 2))
            assert table_equal_across(s, s2, 5)


def test_act_stream():
    tm = C.thue_morse()
    a = tm.element("a")
    assert str(act_stream(a, "0110")) == "0 1 1 0 1 0 0 1"
    assert act_stream(a, "-") == tm.alphabet.empty
    with pytest.raises(ClassViolation):
        act_stream(C.bicyclic().element("a"), "0")
    t = thue_morse_prefix(64)
    for k in range(17):
        img = act_stream(a, tm.alphabet.word([str(x) for x in t[:k]]))
        assert list(img.letters) == t[: len(img)]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), max_size=4))
def test_stream_prefix_property(seed, u, v):
    t = random_expanding(seed, 1)[0]
    k = len(t.alphabet)
    u = [x % k for x in u]
    v = [x % k for x in v]
    s = Element(t, (0,))
    wu = t.alphabet.word([t.alphabet.letters[x] for x in u])
    wuv = t.alphabet.word([t.alphabet.letters[x] for x in u + v])
    assert is_prefix(act_stream(s, wu), act_stream(s, wuv))


def test_table_equal_oracle_sanity():
    ex = C.example21()
    assert table_equal(ex, (0,), (0, 0), 6)
    assert not table_equal(ex, (0,), (1,), 1)
