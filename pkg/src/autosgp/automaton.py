"""Transducers (Q, Sigma, t, o), their classification, the .aut text format and DOT export."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .words import EMPTY_TOKEN, Alphabet, Word


class AutomatonError(ValueError):
    """Base class for domain errors raised by this package."""


class ParseError(AutomatonError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class ValidationError(AutomatonError):
    """Raised with the full list of problems found in a set of tables."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ClassViolation(AutomatonError):
    """An operation was applied to an automaton outside the class it needs."""


@dataclass(frozen=True)
class AutomatonClass:
    asynchronous: bool
    expanding: bool
    synchronous: bool
    invertible: bool

    def names(self) -> list[str]:
        return [k for k in ("asynchronous", "expanding", "synchronous", "invertible") if getattr(self, k)]


@dataclass(frozen=True)
class Transducer:
    """A total transducer with dense integer state and letter ids.

    ``trans[q][x]`` is the next state and ``out[q][x]`` the output (a tuple of
    letter ids, possibly empty) when state ``q`` reads letter ``x``.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    trans: tuple[tuple[int, ...], ...]
    out: tuple[tuple[tuple[int, ...], ...], ...]
    _state_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        problems = _table_problems(self.states, self.alphabet, self.trans, self.out)
        if problems:
            raise ValidationError(problems)
        object.__setattr__(self, "_state_index", {q: i for i, q in enumerate(self.states)})

    @classmethod
    def build(
        cls,
        alphabet: Union[Alphabet, Iterable[str]],
        states: Iterable[str],
        edges: Mapping[tuple[str, str], tuple[str, Union[str, Sequence[str]]]],
    ) -> "Transducer":
        """Build from names: ``edges[(state, letter)] = (next_state, output)``.

        Outputs are token sequences or text (``"0 1"``, ``"01"``, ``"-"`` for
        the empty word).
        """
        alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        raw = RawTables(alphabet=list(alphabet.letters), states=list(states))
        for (q, x), (p, w) in edges.items():
            toks = alphabet.word(w).tokens if isinstance(w, str) else tuple(w)
            raw.edges.append((q, x, p, toks, None))
        return validate(raw)

    def __len__(self) -> int:
        return len(self.states)

    def state(self, name: str) -> int:
        try:
            return self._state_index[name]
        except KeyError:
            raise AutomatonError(f"unknown state {name!r}") from None

    def element(self, spec):
        """An :class:`~autosgp.action.Element` from text like ``"b a"`` or a name list."""
        from .action import Element

        return Element.parse(self, spec)

    def next_state(self, q: str, x: str) -> str:
        return self.states[self.trans[self.state(q)][self.alphabet.index(x)]]

    def output(self, q: str, x: str) -> Word:
        return Word(self.alphabet, self.out[self.state(q)][self.alphabet.index(x)])

    def edges(self):
        """Yield ``(q, x, next, output)`` id tuples in state-then-letter order."""
        for q, row in enumerate(self.trans):
            for x, p in enumerate(row):
                yield q, x, p, self.out[q][x]

    @property
    def is_expanding(self) -> bool:
        return all(w for row in self.out for w in row)

    @property
    def is_synchronous(self) -> bool:
        return all(len(w) == 1 for row in self.out for w in row)

    @property
    def is_invertible(self) -> bool:
        n = len(self.alphabet)
        return self.is_synchronous and all(len({w[0] for w in row}) == n for row in self.out)

    def renamed(
        self,
        states: Union[Mapping[str, str], Callable[[str], str], None] = None,
        letters: Union[Mapping[str, str], Callable[[str], str], None] = None,
    ) -> "Transducer":
        """Same tables under new state and/or letter names."""

        def apply(f, name):
            if f is None:
                return name
            return f(name) if callable(f) else f.get(name, name)

        return Transducer(
            tuple(apply(states, q) for q in self.states),
            Alphabet(apply(letters, x) for x in self.alphabet),
            self.trans,
            self.out,
        )


def _table_problems(states, alphabet, trans, out) -> list[str]:
    problems = []
    n, k = len(states), len(alphabet)
    if n == 0:
        problems.append("no states")
    if len(set(states)) != n:
        problems.append("duplicate state names")
    for q in states:
        if not isinstance(q, str) or not q or any(c.isspace() for c in q):
            problems.append(f"invalid state name {q!r}")
    if len(trans) != n or len(out) != n:
        problems.append("table rows do not match the state count")
        return problems
    for q in range(n):
        if len(trans[q]) != k or len(out[q]) != k:
            problems.append(f"row of state {states[q]!r} does not cover the alphabet")
            continue
        for x in range(k):
            if not 0 <= trans[q][x] < n:
                problems.append(f"({states[q]}, {alphabet.letters[x]}) goes to an unknown state")
            if any(not 0 <= y < k for y in out[q][x]):
                problems.append(f"({states[q]}, {alphabet.letters[x]}) outputs an unknown letter")
    return problems


def classify(t: Transducer) -> AutomatonClass:
    return AutomatonClass(
        asynchronous=True,
        expanding=t.is_expanding,
        synchronous=t.is_synchronous,
        invertible=t.is_invertible,
    )


@dataclass
class RawTables:
    """Unchecked tables as read from text; edges are ``(q, x, p, out_tokens, lineno)``."""

    alphabet: list[str] = field(default_factory=list)
    states: list[str] = field(default_factory=list)
    edges: list[tuple] = field(default_factory=list)


def _where(lineno) -> str:
    return f"line {lineno}: " if lineno else ""


def _raw_problems(raw: RawTables, partial: bool):
    """Return ``(problems, alphabet, state_index, entries)``."""
    problems: list[str] = []
    alphabet = None
    try:
        alphabet = Alphabet(raw.alphabet)
    except ValueError as exc:
        problems.append(f"bad alphabet: {exc}")
    sidx: dict[str, int] = {}
    for q in raw.states:
        if q in sidx:
            problems.append(f"duplicate state {q!r}")
        else:
            sidx[q] = len(sidx)
    if not raw.states:
        problems.append("no states")
    entries: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    if alphabet is None:
        return problems, None, sidx, entries
    for q, x, p, toks, lineno in raw.edges:
        bad = False
        if q not in sidx:
            problems.append(f"{_where(lineno)}edge from unknown state {q!r}")
            bad = True
        if p not in sidx:
            problems.append(f"{_where(lineno)}edge to unknown state {p!r}")
            bad = True
        if x not in alphabet:
            problems.append(f"{_where(lineno)}edge reads unknown letter {x!r}")
            bad = True
        unknown = [y for y in toks if y not in alphabet]
        if unknown:
            problems.append(f"{_where(lineno)}output of ({q}, {x}) uses unknown letter(s) {' '.join(unknown)}")
            bad = True
        if bad:
            continue
        key = (sidx[q], alphabet.index(x))
        if key in entries:
            problems.append(f"{_where(lineno)}duplicate edge for ({q}, {x})")
            continue
        entries[key] = (sidx[p], tuple(alphabet.index(y) for y in toks))
    if not partial:
        for q, qi in sidx.items():
            for xi, x in enumerate(alphabet.letters):
                if (qi, xi) not in entries:
                    problems.append(f"missing edge for ({q}, {x})")
    return problems, alphabet, sidx, entries


def check_tables(raw: RawTables) -> list[str]:
    """Every problem preventing ``raw`` from being a valid total transducer."""
    return _raw_problems(raw, partial=False)[0]


def validate(raw: RawTables) -> Transducer:
    problems, alphabet, sidx, entries = _raw_problems(raw, partial=False)
    if problems:
        raise ValidationError(problems)
    n, k = len(sidx), len(alphabet)
    trans = tuple(tuple(entries[q, x][0] for x in range(k)) for q in range(n))
    out = tuple(tuple(entries[q, x][1] for x in range(k)) for q in range(n))
    return Transducer(tuple(raw.states), alphabet, trans, out)


@dataclass(frozen=True, eq=True)
class PartialTransducer:
    """Like :class:`Transducer` but ``trans``/``out`` are dicts on a common domain."""

    states: tuple[str, ...]
    alphabet: Alphabet
    trans: dict
    out: dict

    def __post_init__(self):
        if set(self.trans) != set(self.out):
            raise ValidationError(["transition and output domains differ"])
        n, k = len(self.states), len(self.alphabet)
        for (q, x), p in self.trans.items():
            if not (0 <= q < n and 0 <= x < k and 0 <= p < n):
                raise ValidationError([f"entry ({q}, {x}) -> {p} out of range"])
            if any(not 0 <= y < k for y in self.out[q, x]):
                raise ValidationError([f"output of ({q}, {x}) out of range"])

    @classmethod
    def from_transducer(cls, t: Transducer) -> "PartialTransducer":
        trans = {(q, x): p for q, x, p, _ in t.edges()}
        out = {(q, x): w for q, x, _, w in t.edges()}
        return cls(t.states, t.alphabet, trans, out)


def parse_raw(text: str) -> RawTables:
    raw = RawTables()
    seen_alphabet = False
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        kw, args = parts[0], parts[1:]
        if kw == "alphabet":
            if seen_alphabet:
                raise ParseError("alphabet declared twice", lineno)
            if not args:
                raise ParseError("empty alphabet", lineno)
            raw.alphabet = args
            seen_alphabet = True
            continue
        if not seen_alphabet:
            raise ParseError("no alphabet (the first directive must be 'alphabet')", lineno)
        if kw == "state":
            if len(args) != 1:
                raise ParseError("'state' takes exactly one name", lineno)
            raw.states.append(args[0])
        elif kw == "edge":
            if len(args) < 4:
                raise ParseError("'edge' needs: state letter next-state output...", lineno)
            q, x, p, toks = args[0], args[1], args[2], args[3:]
            if toks == [EMPTY_TOKEN]:
                toks = []
            elif EMPTY_TOKEN in toks:
                raise ParseError(f"'{EMPTY_TOKEN}' must stand alone as the empty output", lineno)
            raw.edges.append((q, x, p, tuple(toks), lineno))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)
    if not seen_alphabet:
        raise ParseError("no alphabet")
    return raw


def parse(text: str) -> Transducer:
    return validate(parse_raw(text))


def parse_partial(text: str) -> PartialTransducer:
    """Parse a .aut file in which some (state, letter) edges may be missing."""
    problems, alphabet, sidx, entries = _raw_problems(parse_raw(text), partial=True)
    if problems:
        raise ValidationError(problems)
    states = tuple(sidx)
    return PartialTransducer(
        states,
        alphabet,
        {k: v[0] for k, v in entries.items()},
        {k: v[1] for k, v in entries.items()},
    )


def serialize(t: Union[Transducer, PartialTransducer]) -> str:
    lines = ["alphabet " + " ".join(t.alphabet.letters)]
    lines += [f"state {q}" for q in t.states]
    a = t.alphabet
    for q in range(len(t.states)):
        for x in range(len(a)):
            if isinstance(t, Transducer):
                p, w = t.trans[q][x], t.out[q][x]
            elif (q, x) in t.trans:
                p, w = t.trans[q, x], t.out[q, x]
            else:
                continue
            lines.append(f"edge {t.states[q]} {a.letters[x]} {t.states[p]} {a.format(w)}")
    return "\n".join(lines) + "\n"


def _label(alphabet: Alphabet, w) -> str:
    if not w:
        return "ε"
    sep = "" if all(len(tok) == 1 for tok in alphabet.letters) else " "
    return sep.join(alphabet.letters[i] for i in w)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(t: Transducer, name: str = "automaton") -> str:
    """Graphviz source: one node per state, one edge per (state, letter) labelled ``x|w``."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    lines += [f"  {_quote(q)};" for q in t.states]
    for q, x, p, w in t.edges():
        label = f"{t.alphabet.letters[x]}|{_label(t.alphabet, w)}"
        lines.append(f"  {_quote(t.states[q])} -> {_quote(t.states[p])} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
