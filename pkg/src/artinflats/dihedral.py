"""Exact word problem for dihedral Artin groups, two independent ways.

For two generators x, y with exponent m, the group element Delta is the
alternating product of length m (x y x ... = y x y ...).  Every element
has a unique left-greedy normal form

    Delta^p  f_1 f_2 ... f_k

where each factor f_i is a *simple* element -- an alternating word of
length strictly between 0 and m -- and each adjacent pair (f_i, f_{i+1})
is left-weighted: the first letter of f_{i+1} equals the last letter of
f_i, so no letter can migrate leftwards.  Simples are encoded as
(start_letter, length) with letters 0 and 1; the two spellings of Delta
and of the empty simple are collapsed to (0, m) and (0, 0).

The second route is a breadth-first closure over raw letter strings
under free cancellation, free insertion, and balanced relator rewrites
(u -> v with |u| = |v| = m, one rule for every rotation of the defining
relator and of its inverse).  The two implementations share no code and
are played against each other in the tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from artinflats.presentation import INFINITY, ArtinPresentation, Word

Simple = tuple[int, int]  # (start_letter, length), 0 <= length <= m

IDENTITY_SIMPLE: Simple = (0, 0)


def _canon(s: Simple, m: int) -> Simple:
    start, ln = s
    if ln == 0:
        return (0, 0)
    if ln == m:
        return (0, m)
    return s


def _last(s: Simple, m: int) -> int:
    """Last letter of a nonempty simple (Delta read in its (0, m) spelling)."""
    start, ln = s
    assert ln > 0
    return start if ln % 2 == 1 else 1 - start


def _tau(s: Simple, m: int, power: int) -> Simple:
    """Conjugation by Delta^power.  Swaps the two letters iff m and power
    are both odd; Delta and the identity are always fixed."""
    start, ln = s
    if ln == 0 or ln == m:
        return _canon(s, m)
    if m % 2 == 1 and power % 2 == 1:
        return (1 - start, ln)
    return s


def _left_complement(s: Simple, m: int) -> Simple:
    """The simple L with L * s = Delta."""
    start, ln = s
    if ln == 0:
        return (0, m)
    if ln == m:
        return (0, 0)
    # L has length m - ln and must end with the letter other than start.
    want_last = 1 - start
    if (m - ln) % 2 == 1:
        return (want_last, m - ln)
    return (1 - want_last, m - ln)


def _renorm(x: Simple, y: Simple, m: int) -> tuple[Simple, Simple]:
    """Slide letters from the front of y onto the back of x until the
    pair is left-weighted (or y is exhausted / x is full)."""
    while x[1] < m and y[1] > 0:
        if y[1] == m:
            # Delta can be spelled starting with either letter; pick the
            # one x can absorb.
            c = (1 - _last(x, m)) if x[1] > 0 else 0
        else:
            c = y[0]
        if x[1] > 0 and c == _last(x, m):
            break
        x = (x[0] if x[1] else c, x[1] + 1)
        y = (1 - c, y[1] - 1) if y[1] > 1 else (0, 0)
    return _canon(x, m), _canon(y, m)


def _normalise(factors: list[Simple], m: int) -> tuple[int, tuple[Simple, ...]]:
    """Comb a factor list into (delta_power, left-weighted proper chain).

    Repeated sweeps move letters (and whole Deltas) leftwards; each
    sweep strictly decreases the total position-weighted letter count,
    so the loop terminates at the unique normal form.
    """
    work = [_canon(f, m) for f in factors if f[1] > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(work) - 1):
            nx, ny = _renorm(work[i], work[i + 1], m)
            if (nx, ny) != (work[i], work[i + 1]):
                work[i], work[i + 1] = nx, ny
                changed = True
        if changed:
            work = [f for f in work if f[1] > 0]
    dpow = 0
    while work and work[0][1] == m:
        dpow += 1
        work.pop(0)
    return dpow, tuple(work)


def _assemble(pieces: list[tuple[int, Simple]], m: int, tail_power: int = 0) -> tuple[int, tuple[Simple, ...]]:
    """Normal form of  prod_i Delta^{d_i} f_i  followed by Delta^{tail_power}.

    Delta powers are pushed to the front; a power passing a factor from
    the right twists it by tau.
    """
    suffix = tail_power
    gs: list[Simple] = []
    for dpow, f in reversed(pieces):
        gs.append(_tau(f, m, suffix))
        suffix += dpow
    gs.reverse()
    extra, chain = _normalise(gs, m)
    return suffix + extra, chain


@dataclass(frozen=True)
class NormalForm:
    generators: tuple[str, str]
    m: int
    power: int
    factors: tuple[Simple, ...]

    @property
    def is_identity(self) -> bool:
        return self.power == 0 and not self.factors

    def factor_word(self, f: Simple) -> str:
        start, ln = f
        return "".join(self.generators[(start + i) % 2] for i in range(ln))

    def __str__(self) -> str:
        if self.is_identity:
            return "e"
        parts = []
        if self.power:
            parts.append(f"delta^{self.power}")
        parts.extend(self.factor_word(f) for f in self.factors)
        return " * ".join(parts)

    def to_word(self) -> Word:
        """A word spelling this element: Delta^power then the factors."""
        letters: list[tuple[str, int]] = []
        delta = [(self.generators[i % 2], 1) for i in range(self.m)]
        if self.power >= 0:
            letters.extend(delta * self.power)
        else:
            inv = [(g, -e) for g, e in reversed(delta)]
            letters.extend(inv * (-self.power))
        for f in self.factors:
            start, ln = f
            letters.extend((self.generators[(start + i) % 2], 1) for i in range(ln))
        return Word.from_letters(letters)


def _require_dihedral(pres: ArtinPresentation) -> tuple[str, str, int]:
    if len(pres.generators) != 2:
        raise ValueError("dihedral operations need exactly two generators")
    a, b = pres.generators
    m = pres.m(a, b)
    if m == INFINITY:
        raise ValueError("dihedral operations need a finite exponent")
    return a, b, int(m)


def subpresentation(pres: ArtinPresentation, a: str, b: str) -> ArtinPresentation:
    """The two-generator presentation spanned by a and b (finite m required)."""
    m = pres.m(a, b)
    if m == INFINITY:
        raise ValueError(f"pair ({a}, {b}) has no relation")
    return ArtinPresentation((a, b), {(a, b): int(m)})


def normal_form(pres: ArtinPresentation, word: Word) -> NormalForm:
    a, b, m = _require_dihedral(pres)
    index = {a: 0, b: 1}
    pieces: list[tuple[int, Simple]] = []
    for g, sign in word.letters():
        if g not in index:
            raise ValueError(f"letter {g!r} is not a generator")
        letter = index[g]
        if sign > 0:
            pieces.append((0, (letter, 1)))
        else:
            pieces.append((-1, _left_complement((letter, 1), m)))
    power, chain = _assemble(pieces, m)
    return NormalForm((a, b), m, power, chain)


def is_trivial(pres: ArtinPresentation, word: Word) -> bool:
    return normal_form(pres, word).is_identity


def multiply(nf1: NormalForm, nf2: NormalForm) -> NormalForm:
    if (nf1.generators, nf1.m) != (nf2.generators, nf2.m):
        raise ValueError("normal forms over different presentations")
    m = nf1.m
    gs = [_tau(f, m, nf2.power) for f in nf1.factors] + list(nf2.factors)
    extra, chain = _normalise(gs, m)
    return NormalForm(nf1.generators, m, nf1.power + nf2.power + extra, chain)


def invert(nf: NormalForm) -> NormalForm:
    m = nf.m
    pieces = [(-1, _left_complement(f, m)) for f in reversed(nf.factors)]
    power, chain = _assemble(pieces, m, tail_power=-nf.power)
    return NormalForm(nf.generators, m, power, chain)


def delta_word(pres: ArtinPresentation) -> Word:
    a, b, m = _require_dihedral(pres)
    gens = (a, b)
    return Word.from_letters((gens[i % 2], 1) for i in range(m))


# ---------------------------------------------------------------------------
# Breadth-first oracle over raw letter strings
# ---------------------------------------------------------------------------
#
# States are strings over "a", "b" (generators) and "A", "B" (inverses).
# Moves: delete an adjacent inverse pair, insert one, or rewrite a
# length-m window by a balanced relator rule.  Every move preserves the
# group element, so everything reachable from the empty string spells
# the identity.


class OracleBudgetError(RuntimeError):
    """The closure hit the state budget before reaching a verdict."""

    def __init__(self, message: str, visited: int):
        super().__init__(message)
        self.visited = visited


def _swapcase(s: str) -> str:
    return s.swapcase()


def _alternating(m: int, start: int) -> str:
    return "".join("ab"[(start + i) % 2] for i in range(m))


@lru_cache(maxsize=None)
def balanced_rules(m: int) -> dict[str, tuple[str, ...]]:
    """u -> v rewrites with |u| = |v| = m, from every rotation of the
    defining relator and of its inverse.  Closed under rule inversion."""
    relator = _alternating(m, 0) + _swapcase(_alternating(m, 1)[::-1])
    inverse = _swapcase(relator[::-1])
    rules: dict[str, set[str]] = {}
    for base in (relator, inverse):
        for r in range(2 * m):
            rot = base[r:] + base[:r]
            u, tail = rot[:m], rot[m:]
            v = _swapcase(tail[::-1])
            if u != v:
                rules.setdefault(u, set()).add(v)
    return {u: tuple(sorted(vs)) for u, vs in sorted(rules.items())}


def word_to_string(pres: ArtinPresentation, word: Word) -> str:
    a, b, _ = _require_dihedral(pres)
    lower = {a: "a", b: "b"}
    upper = {a: "A", b: "B"}
    return "".join((lower if sign > 0 else upper)[g] for g, sign in word.letters())


def _neighbours(state: str, rules: dict[str, tuple[str, ...]], max_len: int) -> list[str]:
    out = []
    n = len(state)
    for i in range(n - 1):
        if state[i] == state[i + 1].swapcase() and state[i] != state[i + 1]:
            out.append(state[:i] + state[i + 2 :])
    m = len(next(iter(rules))) if rules else 0
    if m:
        for i in range(n - m + 1):
            vs = rules.get(state[i : i + m])
            if vs:
                for v in vs:
                    out.append(state[:i] + v + state[i + m :])
    if n + 2 <= max_len:
        for i in range(n + 1):
            for pair in ("aA", "Aa", "bB", "Bb"):
                out.append(state[:i] + pair + state[i:])
    return out


@dataclass
class ClosureResult:
    reached_target: bool
    complete: bool
    visited_count: int
    states: frozenset[str] | None = None


def closure(
    m: int,
    start: str,
    max_len: int,
    max_states: int,
    target: str | None = None,
    keep_states: bool = False,
) -> ClosureResult:
    """Breadth-first closure of the move system from `start`, keeping
    every intermediate string at length <= max_len."""
    rules = balanced_rules(m)
    seen = {start}
    queue = deque([start])
    complete = True
    found = target is not None and start == target
    while queue and not found:
        state = queue.popleft()
        for nxt in _neighbours(state, rules, max_len):
            if len(nxt) > max_len or nxt in seen:
                continue
            if target is not None and nxt == target:
                found = True
                break
            if len(seen) >= max_states:
                complete = False
                continue
            seen.add(nxt)
            queue.append(nxt)
    return ClosureResult(
        reached_target=found,
        complete=complete,
        visited_count=len(seen),
        states=frozenset(seen) if keep_states else None,
    )


def bfs_oracle_is_trivial(
    pres: ArtinPresentation,
    word: Word,
    max_len: int | None = None,
    max_states: int = 500_000,
) -> bool:
    """Decide triviality by exhaustive search over the move system.

    True means the empty string was reached (always sound).  False is
    only returned when the whole closure within max_len was exhausted,
    so it is a genuine certificate of nontriviality at that length
    bound.  If the state budget runs out first, OracleBudgetError is
    raised rather than guessing.
    """
    _, _, m = _require_dihedral(pres)
    s = word_to_string(pres, word)
    if not s:
        return True
    if max_len is None:
        max_len = 4 * len(s)
    result = closure(m, s, max_len=max_len, max_states=max_states, target="")
    if result.reached_target:
        return True
    if result.complete:
        return False
    raise OracleBudgetError(
        f"no verdict for {word} within {max_states} states at length bound {max_len}",
        result.visited_count,
    )


def identity_ball(m: int, max_len: int, max_states: int = 4_000_000) -> frozenset[str]:
    """All strings spelling the identity reachable from the empty word
    with intermediates of length <= max_len.  Because the move system
    is symmetric, membership is equivalent to the oracle reaching the
    empty string from the member."""
    result = closure(m, "", max_len=max_len, max_states=max_states, keep_states=True)
    if not result.complete:
        raise OracleBudgetError(
            f"identity ball at length {max_len} exceeded {max_states} states",
            result.visited_count,
        )
    assert result.states is not None
    return result.states
