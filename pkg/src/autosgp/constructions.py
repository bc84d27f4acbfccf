"""Automaton-building recipes and a gallery of named automata.

Fresh names are deterministic: colliding state names from a second input get
primes appended (``a`` -> ``a'``), so serialized results are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

from .automaton import (
    AutomatonError,
    ClassViolation,
    PartialTransducer,
    Transducer,
)
from .words import Alphabet, CommutationRelation, Word

WordLike = Union[str, Sequence[str], Word]


def _fresh(name: str, used: set) -> str:
    while name in used:
        name += "'"
    used.add(name)
    return name


def _alphabet(x) -> Alphabet:
    return x if isinstance(x, Alphabet) else Alphabet(x)


def _assemble(states: Sequence[str], alphabet: Alphabet, table) -> Transducer:
    """``table[(q_id, x_id)] = (p_id, out_ids)`` -> Transducer."""
    n, k = len(states), len(alphabet)
    return Transducer(
        tuple(states),
        alphabet,
        tuple(tuple(table[q, x][0] for x in range(k)) for q in range(n)),
        tuple(tuple(tuple(table[q, x][1]) for x in range(k)) for q in range(n)),
    )


def union(a: Transducer, b: Transducer) -> Transducer:
    """Disjoint union over a shared alphabet; ``b``'s colliding names get primes."""
    if a.alphabet != b.alphabet:
        raise AutomatonError("union needs identical alphabets")
    used = set(a.states)
    names = list(a.states) + [_fresh(q, used) for q in b.states]
    off = len(a.states)
    table = {}
    for q, x, p, w in a.edges():
        table[q, x] = (p, w)
    for q, x, p, w in b.edges():
        table[q + off, x] = (p + off, w)
    return _assemble(names, a.alphabet, table)


def inverse_automaton(t: Transducer, suffix: str = "^-1") -> Transducer:
    """If ``q`` reads ``y``, writes ``x`` and moves to ``p``, then ``q^-1``
    reads ``x``, writes ``y`` and moves to ``p^-1``."""
    if not t.is_invertible:
        raise ClassViolation("inverse automaton needs an invertible automaton")
    table = {}
    for q, y, p, (x,) in t.edges():
        table[q, x] = (p, (y,))
    return _assemble([q + suffix for q in t.states], t.alphabet, table)


def complete_partial(p: PartialTransducer, sink: str = "i") -> Transducer:
    """Extend a partial invertible automaton to an invertible one.

    Each row's undefined inputs take the unused outputs in letter order and
    move to a fresh identity sink.
    """
    k = len(p.alphabet)
    problems = []
    for q in range(len(p.states)):
        outs = [p.out[q, x] for x in range(k) if (q, x) in p.out]
        if any(len(w) != 1 for w in outs):
            problems.append(f"state {p.states[q]!r} has an output that is not a single letter")
        elif len({w[0] for w in outs}) != len(outs):
            problems.append(f"state {p.states[q]!r} has repeated outputs")
    if problems:
        raise ClassViolation("not partial-invertible: " + "; ".join(problems))
    used = set(p.states)
    names = list(p.states) + [_fresh(sink, used)]
    s = len(p.states)
    table = {}
    for q in range(s):
        free_out = sorted(set(range(k)) - {p.out[q, x][0] for x in range(k) if (q, x) in p.out})
        free_out.reverse()
        for x in range(k):
            if (q, x) in p.trans:
                table[q, x] = (p.trans[q, x], p.out[q, x])
            else:
                table[q, x] = (s, (free_out.pop(),))
    for x in range(k):
        table[s, x] = (s, (x,))
    return _assemble(names, p.alphabet, table)


def _disjoint_letters(a: Transducer, b: Transducer) -> Alphabet:
    common = set(a.alphabet) & set(b.alphabet)
    if common:
        raise AutomatonError(f"alphabets overlap on {' '.join(sorted(common))}")
    return Alphabet(a.alphabet.letters + b.alphabet.letters)


def _side_by_side(a: Transducer, b: Transducer, b_on_a_letters) -> Transducer:
    alphabet = _disjoint_letters(a, b)
    ka = len(a.alphabet)
    used = set(a.states)
    names = list(a.states) + [_fresh(q, used) for q in b.states]
    off = len(a.states)
    table = {}
    for q, x, p, w in a.edges():
        table[q, x] = (p, w)
    for q in range(len(a.states)):
        for y in range(len(b.alphabet)):
            table[q, ka + y] = (q, (ka + y,))
    for q, y, p, w in b.edges():
        table[q + off, ka + y] = (p + off, tuple(ka + z for z in w))
    for q in range(len(b.states)):
        for x in range(ka):
            table[q + off, x] = (q + off, b_on_a_letters(x))
    return _assemble(names, alphabet, table)


def normal_ideal_extension(a: Transducer, b: Transducer) -> Transducer:
    """States of ``a`` then ``b`` over the joined alphabet.

    ``a``-states fix ``b``'s letters; ``b``-states erase ``a``'s letters, so
    every ``b``-generated element absorbs ``a``-generated ones on both sides.
    """
    return _side_by_side(a, b, lambda x: ())


def direct_product(a: Transducer, b: Transducer) -> Transducer:
    """Each side acts on its own letters and fixes the other side's."""
    return _side_by_side(a, b, lambda x: (x,))


def fpcm_automaton(n: int, commuting: Union[CommutationRelation, Iterable[tuple[int, int]]] = ()) -> Transducer:
    """Synchronous automaton generating the trace monoid on ``y1..yn``.

    ``commuting`` uses 0-based generator indices.  Letters ``a_i, b_i`` carry
    an adding machine for ``y_i``; each non-commuting pair ``i < j`` gets
    letters ``c_ij, d_ij`` carrying a lamplighter automaton on ``y_i, y_j``.
    State ``1`` is the identity sink.
    """
    if n < 1:
        raise AutomatonError("need at least one generator")
    rel = commuting if isinstance(commuting, CommutationRelation) else CommutationRelation(commuting)
    for i, j in rel:
        if j >= n:
            raise AutomatonError(f"commutation pair ({i + 1}, {j + 1}) names a generator beyond y{n}")
    sep = "_" if n > 9 else ""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if not rel.commute(i, j)]
    letters = [f"a{i + 1}" for i in range(n)] + [f"b{i + 1}" for i in range(n)]
    letters += [f"c{i + 1}{sep}{j + 1}" for i, j in pairs] + [f"d{i + 1}{sep}{j + 1}" for i, j in pairs]
    alphabet = Alphabet(letters)
    # letter ids: a_i = i, b_i = n + i, c_k = 2n + k, d_k = 2n + |pairs| + k
    cbase, dbase = 2 * n, 2 * n + len(pairs)
    sink = n
    table = {}
    for x in range(len(alphabet)):
        for q in range(n + 1):
            table[q, x] = (sink, (x,))
    for i in range(n):
        table[i, i] = (sink, (n + i,))
        table[i, n + i] = (i, (i,))
    for k, (i, j) in enumerate(pairs):
        c, d = cbase + k, dbase + k
        table[i, c] = (j, (d,))
        table[i, d] = (i, (c,))
        table[j, c] = (i, (c,))
        table[j, d] = (j, (d,))
    return _assemble([f"y{i + 1}" for i in range(n)] + ["1"], alphabet, table)


def _words_over(x: Alphabet, words: Sequence[WordLike]) -> list[tuple[str, ...]]:
    return [x.word(w).tokens for w in words]


def _pcp_alphabet(x: Alphabet, n: int) -> tuple[Alphabet, list[str], str, str]:
    # fresh index and marker letters; primes appended on a clash with X
    used = set(x)
    index = [_fresh(str(i), used) for i in range(1, n + 1)]
    z1, z2 = _fresh("z1", used), _fresh("z2", used)
    return Alphabet(x.letters + tuple(index) + (z1, z2)), index, z1, z2


def _index_loop(x: Alphabet, name: str, images: Sequence[tuple], other: str) -> Transducer:
    sigma, index, z1, z2 = _pcp_alphabet(x, len(images))
    marker = {"z1": z1, "z2": z2}[other]
    edges = {(name, tok): (name, [marker]) for tok in sigma}
    for tok, img in zip(index, images):
        edges[name, tok] = (name, list(img))
    return Transducer.build(sigma, [name], edges)


def pcp_automaton(x: Union[Alphabet, Iterable[str]], v: Sequence[WordLike], w: Sequence[WordLike]) -> Transducer:
    """Two one-state loops ``a``, ``b`` over ``X + {1..n} + {z1, z2}``.

    On index letter ``i``, ``a`` writes ``v_i`` and ``b`` writes ``w_i``; on
    every other letter they write ``z1`` and ``z2``.  So ``a(u) = b(u)``
    forces ``u`` to be an index word solving the correspondence instance.
    """
    x = _alphabet(x)
    if not v or len(v) != len(w):
        raise AutomatonError("need two nonempty word lists of equal length")
    vs, ws = _words_over(x, v), _words_over(x, w)
    if any(not t for t in vs + ws):
        raise AutomatonError("empty tiles would make the automaton non-expanding")
    return union(_index_loop(x, "a", vs, "z1"), _index_loop(x, "b", ws, "z2"))


def check_prefix_code(words: Sequence[tuple]) -> None:
    if not words:
        raise AutomatonError("empty code")
    for i, c in enumerate(words):
        if not c:
            raise AutomatonError("code words must be nonempty")
        for j, d in enumerate(words):
            if i != j and d[: len(c)] == c:
                if c == d:
                    raise AutomatonError(f"code word {' '.join(c)} is repeated")
                raise AutomatonError(f"not a prefix code: {' '.join(c)} is a prefix of {' '.join(d)}")


def prefix_code_decoder(x: Union[Alphabet, Iterable[str]], code: Sequence[WordLike]) -> Transducer:
    """Asynchronous decoder for a prefix code, with root state ``c'``.

    A trie of the code words hangs off ``c'``: inner edges write nothing, the
    edge completing code word ``i`` writes the index letter ``i`` and returns
    to ``c'``.  Missing entries go to the identity sink ``i`` writing ``z1``.
    The alphabet matches :func:`pcp_automaton`, so the two can be joined
    with :func:`union`.
    """
    x = _alphabet(x)
    words = _words_over(x, code)
    check_prefix_code(words)
    sigma, index, z1, _ = _pcp_alphabet(x, len(words))
    prefixes = sorted({c[:k] for c in words for k in range(1, len(c))}, key=lambda p: (len(p), p))
    node = {(): "c'"}
    for n, p in enumerate(prefixes, 1):
        node[p] = f"c'{n}"
    finish = dict(zip(words, index))
    states = ["c'"] + [node[p] for p in prefixes] + ["i"]
    edges = {}
    for p, name in node.items():
        for tok in sigma:
            ext = p + (tok,)
            if ext in finish:
                edges[name, tok] = ("c'", [finish[ext]])
            elif ext in node:
                edges[name, tok] = (node[ext], [])
            else:
                edges[name, tok] = ("i", [z1])
    for tok in sigma:
        edges["i", tok] = ("i", [tok])
    return Transducer.build(sigma, states, edges)


def prefix_code_encoder(x: Union[Alphabet, Iterable[str]], code: Sequence[WordLike]) -> Transducer:
    """One-state encoder ``c`` writing code word ``i`` on index letter ``i``
    and ``z1`` elsewhere, over the decoder's alphabet."""
    x = _alphabet(x)
    words = _words_over(x, code)
    check_prefix_code(words)
    return _index_loop(x, "c", words, "z1")


# -- gallery ------------------------------------------------------------------


def example21() -> Transducer:
    """``a = (a, a)[11, 1]``, ``b = (a, a)[111, 11]``: ``a`` is an identity element."""
    return Transducer.build(
        "01",
        ["a", "b"],
        {
            ("a", "0"): ("a", "11"),
            ("a", "1"): ("a", "1"),
            ("b", "0"): ("a", "111"),
            ("b", "1"): ("a", "11"),
        },
    )


def smn(m: int, n: int) -> Transducer:
    """Automaton for ``<a, b | b^m = b^n, ab = b>`` over ``s1..sn``.

    ``a`` doubles ``s1`` and fixes the rest; ``b`` shifts ``s_i -> s_{i+1}``
    and sends ``s_n`` back to ``s_{m+1}``, so ``s1`` has tail ``m`` and period
    ``n - m`` under ``b``.
    """
    if not 1 < m < n:
        raise AutomatonError("smn needs 1 < m < n")
    letters = [f"s{i}" for i in range(1, n + 1)]
    edges = {("a", letters[0]): ("a", [letters[0], letters[0]])}
    for tok in letters[1:]:
        edges["a", tok] = ("a", [tok])
    for i, tok in enumerate(letters):
        edges["b", tok] = ("b", [letters[i + 1] if i + 1 < n else letters[m]])
    return Transducer.build(letters, ["a", "b"], edges)


def bicyclic() -> Transducer:
    """``a=(b)[0], b=(e)[-], c=(e)[00], e=(e)[0]``: ``a c = e`` but ``c a != e``."""
    return Transducer.build(
        ["0"],
        ["a", "b", "c", "e"],
        {
            ("a", "0"): ("b", "0"),
            ("b", "0"): ("e", "-"),
            ("c", "0"): ("e", "00"),
            ("e", "0"): ("e", "0"),
        },
    )


def thue_morse() -> Transducer:
    return Transducer.build("01", ["a"], {("a", "0"): ("a", "01"), ("a", "1"): ("a", "10")})


def adding_machine() -> Transducer:
    """Binary odometer ``a = (e, a)(0 1)`` with identity state ``e``."""
    return Transducer.build(
        "01",
        ["a", "e"],
        {
            ("a", "0"): ("e", "1"),
            ("a", "1"): ("a", "0"),
            ("e", "0"): ("e", "0"),
            ("e", "1"): ("e", "1"),
        },
    )


def lamplighter() -> Transducer:
    """``a = (b, a)(0 1)``, ``b = (a, b)``: the two-state lamplighter automaton."""
    return Transducer.build(
        "01",
        ["a", "b"],
        {
            ("a", "0"): ("b", "1"),
            ("a", "1"): ("a", "0"),
            ("b", "0"): ("a", "0"),
            ("b", "1"): ("b", "1"),
        },
    )


def identity(alphabet: Union[Alphabet, Iterable[str]] = ("0", "1")) -> Transducer:
    alphabet = _alphabet(alphabet)
    return Transducer.build(alphabet, ["i"], {("i", x): ("i", [x]) for x in alphabet})


GALLERY = {
    "example21": example21,
    "smn": smn,
    "bicyclic": bicyclic,
    "thue_morse": thue_morse,
    "adding_machine": adding_machine,
    "lamplighter": lamplighter,
    "identity": identity,
}


def gallery(name: str, *params) -> Transducer:
    """Named automaton; ``gallery("smn", 2, 3)``, ``gallery("identity", "abc")``."""
    try:
        make = GALLERY[name.replace("-", "_")]
    except KeyError:
        raise AutomatonError(f"unknown gallery automaton {name!r}; have {', '.join(GALLERY)}") from None
    try:
        return make(*params)
    except TypeError as exc:
        raise AutomatonError(f"bad parameters for {name}: {exc}") from None
