import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autosgp import constructions as C
from autosgp.action import Element
from autosgp.automaton import AutomatonError, ClassViolation, Transducer
from autosgp.deciders import (
    DOLLAR,
    PathNFA,
    agreement_words,
    boundary_fixed_census,
    build_path_nfa,
    compose_tables,
    difference_witness,
    equal,
    find_period,
    fixed_words,
    injective,
    is_idempotent,
    is_identity_element,
    is_identity_function,
    nfa_path_injective,
    period_primes_ok,
    prime_factors,
    separate,
    truncated_transformation,
)
from autosgp.words import Alphabet
from oracles import (
    TreeTables,
    apply,
    collision,
    factor_words,
    random_expanding,
    random_synchronous,
    run_state,
    table_equal,
    words_upto,
)

EX21 = C.example21()
TM = C.thue_morse()
BI = C.bicyclic()


def el(t, spec):
    return t.element(spec)


# -- word problem --------------------------------------------------------------


def test_equal_examples():
    assert equal(el(EX21, "a"), el(EX21, "a a"))
    assert equal(el(EX21, "a b"), el(EX21, "b a"))
    assert equal(el(EX21, "a b"), el(EX21, "b"))
    assert not equal(el(TM, "a"), el(TM, "a a"))
    s = C.smn(2, 3)
    assert equal(el(s, "b b"), el(s, "b b b"))


def test_equal_rejects_mixed_automata():
    with pytest.raises(AutomatonError):
        equal(el(EX21, "a"), el(TM, "a"))


def test_difference_witness_is_shortlex_least():
    for t in random_expanding(3, 40):
        k = len(t.alphabet)
        for f, g in itertools.combinations(list(factor_words(t, 2)), 2):
            w = difference_witness(Element(t, f), Element(t, g))
            first = next(
                (u for u in words_upto(k, 6) if apply(t, f, u) != apply(t, g, u)),
                None,
            )
            if w is None:
                assert first is None
            elif len(w) <= 6:
                assert w.letters == first


def test_word_problem_matches_tree_oracle_on_gallery():
    gallery = [C.example21(), C.smn(2, 3), C.bicyclic(), C.thue_morse(), C.adding_machine(), C.lamplighter()]
    for t in gallery:
        tt = TreeTables(t)
        els = list(factor_words(t, 3))
        ids = {f: tt.id(f, 8) for f in els}
        for f, g in itertools.combinations(els, 2):
            assert equal(Element(t, f), Element(t, g)) == (ids[f] == ids[g]), (t.states, f, g)


def test_tree_oracle_matches_literal_comparison():
    # the memoised oracle is checked against plain evaluation on a sample
    for t in random_expanding(17, 15):
        tt = TreeTables(t)
        els = list(factor_words(t, 2))
        for f, g in itertools.combinations(els, 2):
            assert (tt.id(f, 5) == tt.id(g, 5)) == table_equal(t, f, g, 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_equal_is_a_congruence(seed, data):
    t = random_expanding(seed, 1)[0]
    n = len(t.states)
    fw = st.lists(st.integers(0, n - 1), min_size=1, max_size=3).map(tuple)
    s, u, v = data.draw(fw), data.draw(fw), data.draw(fw)
    # find a partner equal to s, if any, among short words
    for g in factor_words(t, 3):
        if g != s and equal(Element(t, s), Element(t, g)):
            assert equal(Element(t, u + s + v), Element(t, u + g + v))
            break


# -- identity tests ------------------------------------------------------------


def test_identity_function():
    assert is_identity_function(el(C.identity("01"), "i"))
    assert not is_identity_function(el(EX21, "a"))
    am = C.adding_machine()
    both = C.union(am, C.inverse_automaton(am))
    assert is_identity_function(both.element("a a^-1"))
    assert is_identity_function(both.element("a^-1 a"))
    assert not is_identity_function(both.element("a"))


def test_identity_element_and_idempotent():
    assert is_identity_element(el(EX21, "a"))
    assert not is_identity_element(el(TM, "a"))
    assert is_identity_element(el(BI, "e"))
    assert is_identity_element(el(BI, "a c"))
    assert not is_identity_element(el(BI, "c a"))
    assert is_idempotent(el(EX21, "a"))
    assert not is_idempotent(el(TM, "a"))
    assert is_idempotent(el(C.identity("01"), "i"))


def test_identity_element_brute_force():
    for t in random_expanding(23, 60):
        for q in range(len(t.states)):
            s = Element(t, (q,))
            ref = all(
                table_equal(t, (q, r), (r,), 5) and table_equal(t, (r, q), (r,), 5) for r in range(len(t.states))
            )
            assert is_identity_element(s) == ref


# -- injectivity ---------------------------------------------------------------


def test_path_nfa_shapes():
    m = build_path_nfa(TM, "a")
    assert len(m.states) == 3 and len(m.edges) == 4
    sync = build_path_nfa(C.adding_machine(), "a")
    assert len(sync.states) == 2
    # b reads 0 and writes 1 1 1: a path through two interior states
    b = build_path_nfa(EX21, "b")
    assert [s for s in b.states if s.startswith("b.0.")] == ["b.0.1", "b.0.2"]
    with pytest.raises(ClassViolation):
        build_path_nfa(BI, "a")


def test_nfa_injective_examples():
    assert nfa_path_injective(build_path_nfa(TM, "a"))
    assert not nfa_path_injective(build_path_nfa(EX21, "a"))
    loop = PathNFA(("p",), Alphabet("0"), ((0, 0, 0),), 0, frozenset({0}))
    assert nfa_path_injective(loop)
    # two parallel edges with the same label
    twin = PathNFA(("p",), Alphabet("0"), ((0, 0, 0), (0, 0, 0)), 0, frozenset({0}))
    assert not nfa_path_injective(twin)


def test_nfa_general_fallback():
    # the two paths for 0 0 0 merge at a non-final state, which the subset
    # test alone would miss
    edges = ((0, 0, 1), (0, 0, 2), (1, 0, 3), (2, 0, 3), (3, 0, 4))
    m = PathNFA(("s", "a", "b", "m", "f"), Alphabet("0"), edges, 0, frozenset({4}))
    assert not nfa_path_injective(m)
    ok = PathNFA(("s", "m", "f"), Alphabet("01"), ((0, 0, 1), (0, 1, 1), (1, 0, 2)), 0, frozenset({2}))
    assert nfa_path_injective(ok)


def test_injective_examples():
    assert not injective(EX21, "a")
    assert injective(TM, "a")
    assert injective(C.identity("01"), "i")
    with pytest.raises(ClassViolation):
        injective(BI, "a")


def test_injective_matches_collisions_thue_morse_depth_8():
    assert collision(TM, 0, 8) is None


def test_injective_matches_collision_search():
    for t in random_expanding(101, 150):
        for q in range(len(t.states)):
            assert injective(t, q) == (collision(t, q, 6) is None)


# -- periods -------------------------------------------------------------------


def test_find_period_examples():
    assert find_period(el(EX21, "a"), 4) == (1, 2)
    assert find_period(el(C.smn(2, 3), "b"), 5) == (2, 3)
    assert find_period(el(TM, "a"), 6) is None


def test_find_period_is_least():
    for t in random_expanding(5, 60):
        for q in range(len(t.states)):
            s = Element(t, (q,))
            p = find_period(s, 5)
            # least n first, then least m
            found = [(m, n) for n in range(2, 6) for m in range(1, n) if equal(s**m, s**n)]
            assert p == (found[0] if found else None)


def test_prime_helpers():
    assert prime_factors(12) == {2, 3}
    assert prime_factors(1) == set()
    assert period_primes_ok((1, 3), 2)
    assert not period_primes_ok((1, 4), 2)
    assert period_primes_ok((1, 4), 3)


# -- separation ----------------------------------------------------------------


def test_separate_examples():
    w = separate(el(EX21, "a"), el(EX21, "b"))
    assert (w.level, w.depth) == (1, 3)
    zero = EX21.alphabet.word("0")
    assert str(w.table_a[zero]) == "1 1" and str(w.table_b[zero]) == "1 1 1"
    w = separate(el(TM, "a"), el(TM, "a a"))
    assert (w.level, w.depth) == (1, 4)
    with pytest.raises(AutomatonError):
        separate(el(TM, "a"), el(TM, "a"))


def test_separation_tables_shape():
    w = separate(el(EX21, "a"), el(EX21, "b"))
    for table in (w.table_a, w.table_b):
        assert table[DOLLAR] == DOLLAR
        keys = [k for k in table if k != DOLLAR]
        assert len(keys) == 2 + 4 + 8
        for v in table.values():
            assert v == DOLLAR or 1 <= len(v) <= w.depth
    assert w.differences()


def test_truncated_tables_compose():
    # rho is a homomorphism on an expanding automaton: rho(st) = rho(s) rho(t)
    for t in [EX21, TM, C.smn(2, 3)] + random_expanding(8, 20):
        for f, g in itertools.product(list(factor_words(t, 2))[:6], repeat=2):
            if len(t.alphabet) ** 4 > 200:
                continue
            a, b = Element(t, f), Element(t, g)
            lhs = truncated_transformation(a * b, 3)
            rhs = compose_tables(truncated_transformation(a, 3), truncated_transformation(b, 3))
            assert lhs == rhs


# -- bounded searches ----------------------------------------------------------


def test_fixed_words_examples():
    assert [str(w) for w in fixed_words(el(EX21, "a"), 3)] == ["1", "1 1", "1 1 1"]
    assert fixed_words(el(TM, "a"), 8) == []
    assert fixed_words(el(EX21, "a"), 3, restrict=["0"]) == []


def test_fixed_and_agreement_brute_force():
    for t in random_expanding(31, 40) + random_synchronous(31, 40):
        k = len(t.alphabet)
        for f, g in itertools.combinations(list(factor_words(t, 2))[:5], 2):
            s, u = Element(t, f), Element(t, g)
            ref = [w for w in words_upto(k, 5) if w and apply(t, f, w) == w]
            assert [w.letters for w in fixed_words(s, 5)] == ref
            ref = [w for w in words_upto(k, 5) if w and apply(t, f, w) == apply(t, g, w)]
            assert [w.letters for w in agreement_words(s, u, 5)] == ref


def test_agreement_examples():
    p = C.pcp_automaton("ab", ["ab", "b"], ["a", "bb"])
    found = agreement_words(el(p, "a"), el(p, "b"), 3)
    assert [str(w) for w in found][0] == "1 2"
    q = C.pcp_automaton("ab", ["ab"], ["ba"])
    assert agreement_words(el(q, "a"), el(q, "b"), 6) == []


# -- boundary census -----------------------------------------------------------


def fixed_count(t, q, length):
    """Fixed words of the given length that extend to longer fixed words."""
    k, n = len(t.alphabet), len(t.states)
    count = 0
    for w in itertools.product(range(k), repeat=length):
        out, p = run_state(t, q, w)
        if out != w:
            continue
        if any(run_state(t, p, v)[0] == v for v in itertools.product(range(k), repeat=n)):
            count += 1
    return count


def test_census_examples():
    assert boundary_fixed_census(C.identity("01"), "i").kind == "infinite"
    assert boundary_fixed_census(C.adding_machine(), "a").kind == "zero"
    t = Transducer.build(
        "01",
        ["p", "r"],
        {("p", "0"): ("p", "0"), ("p", "1"): ("r", "0"), ("r", "0"): ("r", "1"), ("r", "1"): ("r", "0")},
    )
    c = boundary_fixed_census(t, "p")
    assert c.kind == "finite" and c.count == 1
    assert [(str(a), str(b)) for a, b in c.points] == [("-", "0")]
    with pytest.raises(ClassViolation):
        boundary_fixed_census(TM, "a")


def test_census_point_normalisation():
    # q reads 0 then loops on 1 0: the point 0 (1 0)^w = (0 1)^w
    t = Transducer.build(
        "01",
        ["q", "r", "s"],
        {
            ("q", "0"): ("r", "0"),
            ("q", "1"): ("q", "0"),
            ("r", "1"): ("s", "1"),
            ("r", "0"): ("r", "1"),
            ("s", "0"): ("r", "0"),
            ("s", "1"): ("s", "0"),
        },
    )
    c = boundary_fixed_census(t, "q")
    assert [(str(a), str(b)) for a, b in c.points] == [("-", "0 1")]


def test_census_matches_prefix_counts():
    for t in random_synchronous(41, 150):
        for q in range(len(t.states)):
            c = boundary_fixed_census(t, q)
            if c.kind == "zero":
                assert fixed_count(t, q, 8) == 0
            elif c.kind == "finite":
                assert fixed_count(t, q, 8) == fixed_count(t, q, 9) == len(c.points)
                for prefix, cycle in c.points:
                    w = (prefix.letters + cycle.letters * 12)[:12]
                    assert run_state(t, q, w)[0] == w
            else:
                assert fixed_count(t, q, 10) > fixed_count(t, q, 5) > 0


def test_prop_3_9_style_idempotents():
    # when every state is injective, idempotents are the identity map
    for t in random_expanding(61, 120):
        if not all(injective(t, q) for q in range(len(t.states))):
            continue
        for f in factor_words(t, 2):
            s = Element(t, f)
            if is_idempotent(s):
                assert is_identity_function(s)
