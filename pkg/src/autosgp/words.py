"""Alphabets, finite words, shortlex order and trace-monoid normal forms.

Letters are arbitrary whitespace-free tokens (``0``, ``y1``, ``c12``).  A
:class:`Word` stores dense letter indices together with the alphabet it lives
over; the empty word renders as ``-``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

EMPTY_TOKEN = "-"


class AlphabetMismatch(ValueError):
    pass


class Alphabet:
    """An ordered finite set of letter tokens.  Order is the position order."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        for tok in letters:
            if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
                raise ValueError(f"invalid letter token {tok!r}")
            if tok == EMPTY_TOKEN:
                raise ValueError(f"{EMPTY_TOKEN!r} is reserved for the empty word")
        index = {tok: i for i, tok in enumerate(letters)}
        if len(index) != len(letters):
            raise ValueError("duplicate letters in alphabet")
        self.letters = letters
        self._index = index

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, tok: object) -> bool:
        return tok in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.letters)!r})"

    def index(self, tok: str) -> int:
        try:
            return self._index[tok]
        except KeyError:
            raise ValueError(f"unknown letter {tok!r}") from None

    @property
    def empty(self) -> "Word":
        return Word(self, ())

    def letter(self, tok: str) -> "Word":
        return Word(self, (self.index(tok),))

    def word(self, spec: Union[str, Sequence[str], "Word"]) -> "Word":
        """Build a word from text, a token sequence, or an existing word.

        Text is split on whitespace; ``-`` (or blank text) is the empty word.
        A whitespace-free chunk that is not itself a letter is split into
        characters when every character is a letter, so ``"0110"`` works over
        ``{0, 1}``.
        """
        if isinstance(spec, Word):
            if spec.alphabet != self:
                raise AlphabetMismatch(f"word {spec} is over a different alphabet")
            return spec
        if isinstance(spec, str):
            return Word(self, tuple(self._index[t] for t in split_tokens(spec, self._index)))
        return Word(self, tuple(self.index(t) for t in spec))

    def words(self, length: int) -> Iterator["Word"]:
        """All words of exactly ``length`` letters, in dictionary order."""
        for idx in all_tuples(len(self), length):
            yield Word(self, idx)

    def words_upto(self, maxlen: int, start: int = 0) -> Iterator["Word"]:
        """Words with ``start <= |w| <= maxlen`` in shortlex order."""
        for n in range(start, maxlen + 1):
            yield from self.words(n)

    def format(self, letters: Sequence[int]) -> str:
        if not letters:
            return EMPTY_TOKEN
        return " ".join(self.letters[i] for i in letters)


def split_tokens(text: str, known) -> list[str]:
    """Split ``text`` into tokens drawn from ``known`` (see :meth:`Alphabet.word`)."""
    chunks = text.split()
    if chunks == [EMPTY_TOKEN] or not chunks:
        return []
    out = []
    for chunk in chunks:
        if chunk in known:
            out.append(chunk)
        elif all(c in known for c in chunk):
            out.extend(chunk)
        else:
            raise ValueError(f"cannot read {chunk!r} as a sequence of known tokens")
    return out


def all_tuples(k: int, length: int) -> Iterator[tuple[int, ...]]:
    """Every tuple over ``range(k)`` of the given length, lexicographically."""
    if length == 0:
        yield ()
        return
    for head in all_tuples(k, length - 1):
        for x in range(k):
            yield head + (x,)


@dataclass(frozen=True, slots=True)
class Word:
    alphabet: Alphabet
    letters: tuple[int, ...]

    def __post_init__(self):
        n = len(self.alphabet)
        for i in self.letters:
            if not 0 <= i < n:
                raise ValueError(f"letter index {i} out of range for {self.alphabet!r}")

    @classmethod
    def trusted(cls, alphabet: Alphabet, letters: tuple) -> "Word":
        """Skip the range check; for letters already known to be valid."""
        w = object.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "letters", letters)
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __str__(self) -> str:
        return self.alphabet.format(self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[i] for i in self.letters)


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u!r} and {v!r} are over different alphabets")


def concat(u: Word, v: Word) -> Word:
    _same_alphabet(u, v)
    return Word(u.alphabet, u.letters + v.letters)


def is_prefix(u: Word, w: Word) -> bool:
    _same_alphabet(u, w)
    return w.letters[: len(u.letters)] == u.letters


def project(w: Word, keep: Iterable[int]) -> Word:
    """Erase every letter of ``w`` whose index is not in ``keep``."""
    keep = frozenset(keep)
    n = len(w.alphabet)
    for i in keep:
        if not 0 <= i < n:
            raise ValueError(f"letter index {i} out of range")
    return Word(w.alphabet, tuple(x for x in w.letters if x in keep))


def shortlex_key(letters: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return len(letters), tuple(letters)


def shortlex_compare(u: Word, v: Word) -> Ordering:
    _same_alphabet(u, v)
    a, b = shortlex_key(u.letters), shortlex_key(v.letters)
    return Ordering.LT if a < b else Ordering.GT if a > b else Ordering.EQ


@dataclass(frozen=True)
class CommutationRelation:
    """Symmetric, irreflexive commutation pairs over generator indices.

    Pairs are stored normalised as ``(i, j)`` with ``i < j``.
    """

    pairs: frozenset

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        norm = set()
        for i, j in pairs:
            if i == j:
                raise ValueError(f"a generator cannot commute with itself: ({i}, {j})")
            if i < 0 or j < 0:
                raise ValueError(f"negative generator index in ({i}, {j})")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "pairs", frozenset(norm))

    def commute(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))


def trace_normal_form(w: Word, rel: CommutationRelation) -> Word:
    """Shortlex-least word equal to ``w`` in the free partially commutative monoid.

    Greedy: repeatedly emit the smallest letter whose first occurrence has only
    commuting (and different) letters in front of it.  Every word of a
    commutation class has the same length, so shortlex-least is lex-least.
    """
    rest = list(w.letters)
    out = []
    while rest:
        best = None
        best_pos = -1
        seen = set()
        for pos, x in enumerate(rest):
            if x in seen:
                continue
            if all(y != x and rel.commute(x, y) for y in rest[:pos]):
                if best is None or x < best:
                    best, best_pos = x, pos
            seen.add(x)
        out.append(best)
        del rest[best_pos]
    return Word(w.alphabet, tuple(out))


def is_trace_normal(w: Word, rel: CommutationRelation) -> bool:
    """Check that every factorisation ``y b u a z`` with ``a < b`` commuting
    has a letter of ``u`` that does not commute with ``a``."""
    s = w.letters
    for p, b in enumerate(s):
        for q in range(p + 1, len(s)):
            a = s[q]
            if a < b and rel.commute(a, b):
                if all(y != a and rel.commute(a, y) for y in s[p + 1 : q]):
                    return False
    return True
