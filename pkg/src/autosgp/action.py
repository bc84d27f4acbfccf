"""Elements of automaton semigroups acting on the tree of finite words.

An element is a nonempty word over the states.  Functions compose so that
the rightmost factor reads the input first: ``Element("b a")(w) = b(a(w))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

from .automaton import AutomatonError, ClassViolation, Transducer
from .words import Word, split_tokens

Factors = tuple[int, ...]


@dataclass(frozen=True)
class Element:
    automaton: Transducer
    factors: Factors

    def __post_init__(self):
        if not self.factors:
            raise AutomatonError("an element needs at least one factor")
        n = len(self.automaton.states)
        if any(not 0 <= q < n for q in self.factors):
            raise AutomatonError(f"state id out of range in {self.factors}")

    @classmethod
    def parse(cls, t: Transducer, spec: Union[str, Sequence[str]]) -> "Element":
        names = split_tokens(spec, t._state_index) if isinstance(spec, str) else list(spec)
        return cls(t, tuple(t.state(q) for q in names))

    def __mul__(self, other: "Element") -> "Element":
        if other.automaton != self.automaton:
            raise AutomatonError("elements of different automata")
        return Element(self.automaton, self.factors + other.factors)

    def __pow__(self, n: int) -> "Element":
        if n < 1:
            raise ValueError("only positive powers exist in a semigroup")
        return Element(self.automaton, self.factors * n)

    def __len__(self) -> int:
        return len(self.factors)

    def __call__(self, w):
        return act(self, w)

    def __str__(self) -> str:
        return " ".join(self.automaton.states[q] for q in self.factors)

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"


def feed(t: Transducer, factors: Factors, word: Sequence[int]) -> tuple[tuple[int, ...], Factors]:
    """Run ``word`` through the cascade of factors (rightmost first).

    Returns the output and the section at ``word``.  Each factor's section is
    the endpoint of the path read by that factor; a factor that reads the
    empty word stays put.
    """
    trans, out = t.trans, t.out
    new = list(factors)
    for k in range(len(factors) - 1, -1, -1):
        q = factors[k]
        produced: list[int] = []
        for x in word:
            produced.extend(out[q][x])
            q = trans[q][x]
        new[k] = q
        word = produced
    return tuple(word), tuple(new)


class Stepper:
    """Memoised one-letter steps of factor tuples.  Not shared between calls."""

    __slots__ = ("t", "memo")

    def __init__(self, t: Transducer):
        self.t = t
        self.memo: dict = {}

    def __call__(self, factors: Factors, x: int):
        key = (factors, x)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = feed(self.t, factors, (x,))
        return hit


def _coerce(s: Element, w) -> Word:
    return s.automaton.alphabet.word(w)


def act(s: Element, w) -> Word:
    w = _coerce(s, w)
    return Word(w.alphabet, feed(s.automaton, s.factors, w.letters)[0])


def section(s: Element, w) -> Element:
    w = _coerce(s, w)
    return Element(s.automaton, feed(s.automaton, s.factors, w.letters)[1])


@dataclass(frozen=True)
class WreathForm:
    """``f = (f_x1, ..., f_xn) tau_f``: letter images and sections of ``element``."""

    element: Element
    tau: tuple[Word, ...]
    sections: tuple[Element, ...]

    def __str__(self) -> str:
        secs = ", ".join(str(s) for s in self.sections)
        taus = ", ".join(str(w) for w in self.tau)
        return f"({secs})[{taus}]"


def wreath(s: Element) -> WreathForm:
    t = s.automaton
    a = t.alphabet
    tau, secs = [], []
    for x in range(len(a)):
        out, sec = feed(t, s.factors, (x,))
        tau.append(Word(a, out))
        secs.append(Element(t, sec))
    return WreathForm(s, tuple(tau), tuple(secs))


def _through(f: WreathForm, v: Word) -> tuple[Word, Element]:
    # f(v) and f_v from f's first-level data; f at the empty word is f itself
    if not v.letters:
        return v, f.element
    x, rest = v.letters[0], v[1:]
    sec = f.sections[x]
    return f.tau[x] + act(sec, rest), section(sec, rest)


def compose_wreath(f: WreathForm, g: WreathForm) -> WreathForm:
    """Wreath form of ``f g``: ``(f_{v1} g_1, ...)[f(v1), ...]`` with ``v_i = tau_g(x_i)``."""
    if f.element.automaton != g.element.automaton:
        raise AutomatonError("wreath forms of different automata")
    tau, secs = [], []
    for v, g_sec in zip(g.tau, g.sections):
        image, f_sec = _through(f, v)
        tau.append(image)
        secs.append(f_sec * g_sec)
    return WreathForm(f.element * g.element, tuple(tau), tuple(secs))


def _tuple_name(t: Transducer, factors: Factors) -> str:
    return ".".join(t.states[q] for q in factors)


def section_automaton(s: Element) -> Element:
    """Materialise the automaton whose states are the sections of ``s``.

    States are literal factor tuples reachable from ``s`` (no semantic
    merging); the returned element is ``s`` as a single state of the new
    automaton, which is available as ``.automaton``.
    """
    t = s.automaton
    k = len(t.alphabet)
    order = [s.factors]
    index = {s.factors: 0}
    rows = []
    queue = deque([s.factors])
    while queue:
        cur = queue.popleft()
        row = []
        for x in range(k):
            out, sec = feed(t, cur, (x,))
            if sec not in index:
                index[sec] = len(order)
                order.append(sec)
                queue.append(sec)
            row.append((index[sec], out))
        rows.append(row)
    names, used = [], set()
    for f in order:
        name = _tuple_name(t, f)
        while name in used:
            name += "'"
        used.add(name)
        names.append(name)
    new = Transducer(
        tuple(names),
        t.alphabet,
        tuple(tuple(p for p, _ in row) for row in rows),
        tuple(tuple(w for _, w in row) for row in rows),
    )
    return Element(new, (0,))


def act_stream(s: Element, prefix) -> Word:
    """Image of a finite prefix of a boundary point.

    For expanding automata the images of longer prefixes extend this one, so
    the boundary image is the limit of these words.
    """
    if not s.automaton.is_expanding:
        raise ClassViolation("boundary images are only defined here for expanding automata")
    return act(s, prefix)
