"""Ball enumeration, relation discovery and presentation checks via the word problem."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .action import Element, feed
from .automaton import Transducer
from .deciders import equal
from .words import all_tuples

StateWord = tuple[int, ...]


@dataclass(frozen=True)
class BallReport:
    radius: int
    normal_forms: tuple[Element, ...]
    count_per_length: tuple[int, ...]
    relations_found: tuple[tuple[Element, Element], ...]

    def class_of(self, s: Element) -> int:
        """Index of the normal form equal to ``s``."""
        for i, nf in enumerate(self.normal_forms):
            if len(nf) <= self.radius and equal(s, nf):
                return i
        raise KeyError(f"{s} is not in the ball")


def _fingerprint(t: Transducer, factors: StateWord, depth: int = 2) -> tuple:
    # equal elements have equal fingerprints; used only to prune equal() calls
    k = len(t.alphabet)
    return tuple(feed(t, factors, w)[0] for n in range(1, depth + 1) for w in all_tuples(k, n))


def _generator_ids(t: Transducer, generators) -> list[int]:
    if generators is None:
        return list(range(len(t.states)))
    ids = sorted({g if isinstance(g, int) else t.state(g) for g in generators})
    if not ids:
        raise ValueError("need at least one generator")
    return ids


def generator_words(t: Transducer, radius: int, generators: Optional[Sequence] = None):
    """Nonempty words of length ``<= radius`` over the generating states
    (all states by default) in shortlex order."""
    ids = _generator_ids(t, generators)
    for n in range(1, radius + 1):
        for tup in all_tuples(len(ids), n):
            yield tuple(ids[i] for i in tup)


def _classify_words(t: Transducer, words) -> tuple[list[StateWord], dict[StateWord, int]]:
    reps: list[StateWord] = []
    buckets: dict[tuple, list[int]] = {}
    cls: dict[StateWord, int] = {}
    for w in words:
        fp = _fingerprint(t, w)
        bucket = buckets.setdefault(fp, [])
        e = Element(t, w)
        for r in bucket:
            if equal(e, Element(t, reps[r])):
                cls[w] = r
                break
        else:
            cls[w] = len(reps)
            bucket.append(len(reps))
            reps.append(w)
    return reps, cls


def enumerate_ball(t: Transducer, radius: int, generators: Optional[Sequence] = None) -> BallReport:
    """Partition generator words of length ``<= radius`` into equality classes.

    Words are scanned in shortlex order, so the first word of each class is
    its shortlex-least representative.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    words = list(generator_words(t, radius, generators))
    reps, cls = _classify_words(t, words)
    counts = [0] * radius
    for r in reps:
        counts[len(r) - 1] += 1
    relations = tuple(
        (Element(t, w), Element(t, reps[cls[w]])) for w in words if reps[cls[w]] != w
    )
    return BallReport(
        radius,
        tuple(Element(t, r) for r in reps),
        tuple(counts),
        relations,
    )


def growth(t: Transducer, radius: int, generators: Optional[Sequence] = None) -> list[int]:
    return list(enumerate_ball(t, radius, generators).count_per_length)


@dataclass
class PresentationReport:
    relations_hold: list[bool]
    complete: Optional[bool]
    length_preserving: bool
    missing: list[tuple[Element, Element]] = field(default_factory=list)
    inconclusive: list[tuple[Element, Element]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(self.relations_hold)


def _as_words(t: Transducer, rel) -> tuple[StateWord, StateWord]:
    def factors(side):
        return side.factors if isinstance(side, Element) else t.element(side).factors

    lhs, rhs = rel
    return factors(lhs), factors(rhs)


def _joinable_classes(rules: Sequence[tuple[StateWord, StateWord]], words, bound: int) -> dict[StateWord, int]:
    """Connected components of words (length ``<= bound``) under two-way rewriting."""
    both = list(rules) + [(r, l) for l, r in rules]
    comp: dict[StateWord, int] = {}
    cid = -1
    for w in words:
        if w in comp:
            continue
        cid += 1
        comp[w] = cid
        queue = deque([w])
        while queue:
            u = queue.popleft()
            for lhs, rhs in both:
                n = len(lhs)
                for i in range(len(u) - n + 1):
                    if u[i : i + n] == lhs:
                        v = u[:i] + rhs + u[i + n :]
                        if 0 < len(v) <= bound and v not in comp:
                            comp[v] = cid
                            queue.append(v)
    return comp


def check_presentation(
    t: Transducer,
    relations: Sequence[tuple[Union[str, Element], Union[str, Element]]],
    radius: int,
    generators: Optional[Sequence] = None,
) -> PresentationReport:
    """Check that ``relations`` hold in S(t) and account for every equality
    between generator words of length ``<= radius``.

    Joinability is a bounded closure (words no longer than the radius or the
    longest relation side).  It is exact when every relation preserves
    length; otherwise an equality the closure cannot reach is reported as
    inconclusive rather than missing.
    """
    rules = [_as_words(t, r) for r in relations]
    hold = [equal(Element(t, l), Element(t, r)) for l, r in rules]
    preserving = all(len(l) == len(r) for l, r in rules)
    bound = max([radius] + [max(len(l), len(r)) for l, r in rules])
    words = list(generator_words(t, radius, generators))
    _, semantic = _classify_words(t, words)
    joined = _joinable_classes(rules, words, bound)
    report = PresentationReport(hold, None, preserving)
    first_of: dict[int, StateWord] = {}
    for w in words:
        rep = first_of.setdefault(semantic[w], w)
        if joined[w] != joined[rep]:
            pair = (Element(t, w), Element(t, rep))
            (report.missing if preserving else report.inconclusive).append(pair)
    if report.missing:
        report.complete = False
    elif report.inconclusive:
        report.complete = None
    else:
        report.complete = True
    return report
