"""Decision procedures and bounded searches over automaton semigroups."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .action import Element, Factors, Stepper, feed
from .automaton import AutomatonError, ClassViolation, Transducer
from .words import Alphabet, Word, all_tuples, shortlex_key

# -- word problem -------------------------------------------------------------


def _same_automaton(s: Element, t: Element) -> Transducer:
    if s.automaton != t.automaton:
        raise AutomatonError("elements belong to different automata")
    return s.automaton


def difference_witness(s: Element, t: Element) -> Optional[Word]:
    """Shortlex-least word on which ``s`` and ``t`` act differently, or None.

    Breadth-first search over pairs of sections ``(s_w, t_w)``; sections keep
    the factor count of their element, so the pair space is finite.
    """
    a = _same_automaton(s, t)
    k = len(a.alphabet)
    step = Stepper(a)
    start = (s.factors, t.factors)
    if start[0] == start[1]:
        return None
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (u, v), w = queue.popleft()
        for x in range(k):
            ou, su = step(u, x)
            ov, sv = step(v, x)
            if ou != ov:
                return Word(a.alphabet, w + (x,))
            nxt = (su, sv)
            if su != sv and nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w + (x,)))
    return None


def equal(s: Element, t: Element) -> bool:
    return difference_witness(s, t) is None


def is_identity_function(s: Element) -> bool:
    a = s.automaton
    k = len(a.alphabet)
    step = Stepper(a)
    seen = {s.factors}
    queue = deque([s.factors])
    while queue:
        u = queue.popleft()
        for x in range(k):
            out, sec = step(u, x)
            if out != (x,):
                return False
            if sec not in seen:
                seen.add(sec)
                queue.append(sec)
    return True


def is_identity_element(s: Element) -> bool:
    a = s.automaton
    for q in range(len(a.states)):
        g = Element(a, (q,))
        if not (equal(s * g, g) and equal(g * s, g)):
            return False
    return True


def is_idempotent(s: Element) -> bool:
    return equal(s, s * s)


# -- injectivity --------------------------------------------------------------


@dataclass(frozen=True)
class PathNFA:
    """Nondeterministic acceptor over letters.

    ``edges`` is a sequence of ``(src, letter, dst)``; equal triples at
    different positions are distinct edges.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    edges: tuple[tuple[int, int, int], ...]
    start: int
    finals: frozenset

    def __post_init__(self):
        n = len(self.states)
        if not 0 <= self.start < n:
            raise AutomatonError("start state out of range")
        if any(not 0 <= f < n for f in self.finals):
            raise AutomatonError("final state out of range")
        for p, x, q in self.edges:
            if not (0 <= p < n and 0 <= q < n and 0 <= x < len(self.alphabet)):
                raise AutomatonError(f"edge {(p, x, q)} out of range")


def build_path_nfa(t: Transducer, q: Union[str, int]) -> PathNFA:
    """Drop the inputs and spell every output word along a fresh path.

    Final states are the original states, so accepting paths are exactly the
    images of input words read from ``q``.
    """
    if not t.is_expanding:
        raise ClassViolation("path acceptors need an expanding automaton (no empty outputs)")
    q = t.state(q) if isinstance(q, str) else q
    names = list(t.states)
    edges = []
    for src, x, dst, w in t.edges():
        cur = src
        for i, y in enumerate(w):
            if i == len(w) - 1:
                nxt = dst
            else:
                nxt = len(names)
                names.append(f"{t.states[src]}.{t.alphabet.letters[x]}.{i + 1}")
            edges.append((cur, y, nxt))
            cur = nxt
    return PathNFA(tuple(names), t.alphabet, tuple(edges), q, frozenset(range(len(t.states))))


def _out_edges(m: PathNFA):
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, (p, x, q) in enumerate(m.edges):
        adj.setdefault((p, x), []).append((i, q))
    return adj


def _subset_unambiguous(m: PathNFA) -> bool:
    adj = _out_edges(m)
    k = len(m.alphabet)
    start = (m.start,)
    seen = {start}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for x in range(k):
            into_finals = 0
            nxt = set()
            for r in subset:
                for _, d in adj.get((r, x), ()):
                    nxt.add(d)
                    if d in m.finals:
                        into_finals += 1
            if into_finals >= 2:
                return False
            if nxt:
                key = tuple(sorted(nxt))
                if key not in seen:
                    seen.add(key)
                    queue.append(key)
    return True


def _pair_unambiguous(m: PathNFA) -> bool:
    # (p, q, diverged): two same-label paths from the start, ending at p and q
    adj = _out_edges(m)
    k = len(m.alphabet)
    start = (m.start, m.start, False)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q, div = queue.popleft()
        if div and p in m.finals and q in m.finals:
            return False
        for x in range(k):
            for e1, d1 in adj.get((p, x), ()):
                for e2, d2 in adj.get((q, x), ()):
                    state = (d1, d2, div or e1 != e2)
                    if state not in seen:
                        seen.add(state)
                        queue.append(state)
    return True


def nfa_path_injective(m: PathNFA) -> bool:
    """True iff no two distinct accepting paths from the start share a label.

    Uses the subset construction: reject when some reachable subset has two
    distinct edges on one letter into final states.  That test is exact when
    every non-final state has at most one incoming edge (true for path
    acceptors); other acceptors fall back to a pairwise path product.
    """
    indeg: dict[int, int] = {}
    for _, _, q in m.edges:
        indeg[q] = indeg.get(q, 0) + 1
    if all(indeg.get(q, 0) <= 1 for q in range(len(m.states)) if q not in m.finals):
        return _subset_unambiguous(m)
    return _pair_unambiguous(m)


def injective(t: Transducer, q: Union[str, int]) -> bool:
    return nfa_path_injective(build_path_nfa(t, q))


# -- periodicity and residual finiteness --------------------------------------


def find_period(s: Element, bound: int) -> Optional[tuple[int, int]]:
    """Least ``(m, n)`` with ``m < n <= bound`` and ``s^m = s^n`` (by ``n``, then ``m``)."""
    powers = {}
    for n in range(1, bound + 1):
        powers[n] = s ** n
        for m in range(1, n):
            if equal(powers[m], powers[n]):
                return m, n
    return None


def prime_factors(n: int) -> set[int]:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def period_primes_ok(period: tuple[int, int], alphabet_size: int) -> bool:
    """Every prime factor of ``n - m`` divides ``|alphabet|!``."""
    m, n = period
    fact = math.factorial(alphabet_size)
    return all(fact % p == 0 for p in prime_factors(n - m))


DOLLAR = "$"


@dataclass(frozen=True)
class SeparationWitness:
    """Two transformations of ``{words of length 1..depth} + {$}`` telling a, b apart."""

    level: int
    depth: int
    table_a: dict
    table_b: dict

    def differences(self) -> list:
        return [x for x in self.table_a if self.table_a[x] != self.table_b[x]]


def truncated_transformation(s: Element, depth: int) -> dict:
    """``x -> s(x)`` on words of length ``1..depth``; images longer than
    ``depth`` (or empty) go to ``$``, and ``$`` is fixed."""
    a = s.automaton
    sigma = a.alphabet
    k = len(sigma)
    step = Stepper(a)
    table: dict = {DOLLAR: DOLLAR}
    # images only grow along a branch, so an overflowing prefix sends its
    # whole subtree to $ without further stepping
    level = [((), (), s.factors)]
    for _ in range(depth):
        nxt = []
        for w, img, sec in level:
            for x in range(k):
                nw = w + (x,)
                if sec is None:
                    table[Word.trusted(sigma, nw)] = DOLLAR
                    nxt.append((nw, img, None))
                    continue
                out, nsec = step(sec, x)
                nimg = img + out
                if len(nimg) > depth:
                    table[Word.trusted(sigma, nw)] = DOLLAR
                    nxt.append((nw, nimg, None))
                else:
                    table[Word.trusted(sigma, nw)] = Word.trusted(sigma, nimg) if nimg else DOLLAR
                    nxt.append((nw, nimg, nsec))
        level = nxt
    return table


def compose_tables(f: dict, g: dict) -> dict:
    """``f after g`` as transformations."""
    return {x: f[y] for x, y in g.items()}


def separate(a: Element, b: Element) -> SeparationWitness:
    """Finite quotient separating ``a`` from ``b``.

    The level is the least tree level where the actions differ and the depth
    the longest image over that level.  The map ``s -> table`` is a
    homomorphism when the automaton is expanding.
    """
    w = difference_witness(a, b)
    if w is None:
        raise AutomatonError(f"{a} and {b} are equal; nothing separates them")
    t = a.automaton
    level = len(w)
    depth = 0
    for letters in all_tuples(len(t.alphabet), level):
        depth = max(depth, len(feed(t, a.factors, letters)[0]), len(feed(t, b.factors, letters)[0]))
    wit = SeparationWitness(level, depth, truncated_transformation(a, depth), truncated_transformation(b, depth))
    assert wit.differences(), "truncated tables must differ"
    return wit


# -- bounded searches ---------------------------------------------------------


def _comparable(u: tuple, v: tuple) -> bool:
    n = min(len(u), len(v))
    return u[:n] == v[:n]


def fixed_words(s: Element, maxlen: int, restrict: Optional[Iterable] = None) -> list[Word]:
    """Nonempty words ``w`` over ``restrict`` with ``|w| <= maxlen`` and ``s(w) = w``.

    Images are prefix-preserving, so a prefix ``u`` of a fixed word has
    ``s(u)`` comparable with ``u`` and no longer than ``maxlen``; other
    branches are cut.
    """
    t = s.automaton
    letters = _restrict(t, restrict)
    step = Stepper(t)
    found = []
    stack = [((), (), s.factors)]
    while stack:
        w, img, sec = stack.pop()
        if w and img == w:
            found.append(w)
        if len(w) == maxlen:
            continue
        for x in letters:
            out, nsec = step(sec, x)
            nw, nimg = w + (x,), img + out
            if len(nimg) <= maxlen and _comparable(nw, nimg):
                stack.append((nw, nimg, nsec))
    found.sort(key=shortlex_key)
    return [Word(t.alphabet, w) for w in found]


def agreement_words(s: Element, t: Element, maxlen: int, restrict: Optional[Iterable] = None) -> list[Word]:
    """Words ``w`` with ``1 <= |w| <= maxlen`` and ``s(w) = t(w)``, shortlex order."""
    a = _same_automaton(s, t)
    letters = _restrict(a, restrict)
    step = Stepper(a)
    found = []
    stack = [((), (), (), s.factors, t.factors)]
    while stack:
        w, i1, i2, u, v = stack.pop()
        if w and i1 == i2:
            found.append(w)
        if len(w) == maxlen:
            continue
        for x in letters:
            o1, nu = step(u, x)
            o2, nv = step(v, x)
            n1, n2 = i1 + o1, i2 + o2
            if _comparable(n1, n2):
                stack.append((w + (x,), n1, n2, nu, nv))
    found.sort(key=shortlex_key)
    return [Word(a.alphabet, w) for w in found]


def _restrict(t: Transducer, restrict) -> list[int]:
    if restrict is None:
        return list(range(len(t.alphabet)))
    out = []
    for x in restrict:
        out.append(x if isinstance(x, int) else t.alphabet.index(x))
    return sorted(set(out))


# -- boundary fixed points ----------------------------------------------------


@dataclass(frozen=True)
class BoundaryCensus:
    """Fixed points on the boundary: ``kind`` is ``zero``, ``finite`` or ``infinite``.

    Finite censuses list each point as ``(prefix, cycle)`` meaning
    ``prefix cycle cycle ...``.
    """

    kind: str
    points: tuple[tuple[Word, Word], ...] = ()

    @property
    def count(self) -> float:
        return math.inf if self.kind == "infinite" else len(self.points)


def _canonical_point(prefix: list[int], cycle: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            cycle = cycle[:d]
            break
    prefix = list(prefix)
    while prefix and prefix[-1] == cycle[-1]:
        prefix.pop()
        cycle = [cycle[-1]] + cycle[:-1]
    return tuple(prefix), tuple(cycle)


def boundary_fixed_census(t: Transducer, q: Union[str, int]) -> BoundaryCensus:
    """Count infinite words fixed by state ``q`` of a synchronous automaton.

    Fixed points are infinite paths of inactive edges (``x|x``).  Restrict to
    inactive states reachable from ``q`` that still have an infinite inactive
    future.  Infinitely many points exist iff some state on a cycle there has
    two live inactive edges; otherwise every point is a finite path into a
    closed cycle.
    """
    if not t.is_synchronous:
        raise ClassViolation("boundary census needs a synchronous automaton")
    q = t.state(q) if isinstance(q, str) else q
    k = len(t.alphabet)
    succ = {
        p: [(x, t.trans[p][x]) for x in range(k) if t.out[p][x] == (x,)]
        for p in range(len(t.states))
    }
    reach, stack = {q}, [q]
    while stack:
        p = stack.pop()
        for _, r in succ[p]:
            if r not in reach:
                reach.add(r)
                stack.append(r)
    # live: has an infinite inactive path (greatest fixpoint of "has a live successor")
    live = set(reach)
    changed = True
    while changed:
        changed = False
        for p in list(live):
            if not any(r in live for _, r in succ[p]):
                live.discard(p)
                changed = True
    if q not in live:
        return BoundaryCensus("zero")
    lsucc = {p: [(x, r) for x, r in succ[p] if r in live] for p in live}

    def reaches(src, dst):
        seen, st = {src}, [src]
        while st:
            p = st.pop()
            for _, r in lsucc[p]:
                if r == dst:
                    return True
                if r not in seen:
                    seen.add(r)
                    st.append(r)
        return False

    on_cycle = {p for p in live if reaches(p, p)}
    if any(len(lsucc[p]) >= 2 for p in on_cycle):
        return BoundaryCensus("infinite")

    points = set()

    def walk(p, prefix):
        if p in on_cycle:
            cycle, r = [], p
            while True:
                (x, r), = lsucc[r]
                cycle.append(x)
                if r == p:
                    break
            points.add(_canonical_point(prefix, cycle))
            return
        for x, r in lsucc[p]:
            walk(r, prefix + [x])

    walk(q, [])
    a = t.alphabet
    ordered = sorted(points, key=lambda pc: (shortlex_key(pc[0]), shortlex_key(pc[1])))
    return BoundaryCensus("finite", tuple((Word(a, p), Word(a, c)) for p, c in ordered))
