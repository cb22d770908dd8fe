"""Finite-radius views of spectrum elements, subsets of the free group.

A ``SpectrumBall`` of radius R records exactly which group elements of
length at most R belong to some element of the spectrum.  Balls come from
a point (``xi_ball``), from a convergent sequence of points
(``limit_ball``), or from left translation of another ball.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .shifts import (
    Subshift,
    config_included,
    in_language,
    run_word,
    survives,
)
from .verdict import Verdict
from .words import UNIT, Alphabet, EvPeriodicWord, FreeGroupElement, Word, positive_pair, reduce_concat

FORBIDDEN = "forbidden"
NECESSARY_ONLY = "necessary-only"
CERTIFIED_IN = "certified-in"


class RadiusTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class ExactPoint:
    x: object


@dataclass(frozen=True)
class LimitOf:
    descriptor: str
    index: int
    limit: Optional[EvPeriodicWord] = None


@dataclass(frozen=True)
class Translated:
    g: FreeGroupElement
    parent: object


Provenance = Union[ExactPoint, LimitOf, Translated]


@dataclass(frozen=True)
class SpectrumBall:
    radius: int
    members: FrozenSet[FreeGroupElement]
    stem_prefix: Word
    provenance: Provenance

    @classmethod
    def build(cls, radius: int, members: Iterable[FreeGroupElement], provenance: Provenance) -> "SpectrumBall":
        members = frozenset(members)
        stem = _chain(radius, members, UNIT) if UNIT in members else ()
        return cls(radius, members, stem, provenance)

    def stem_point(self) -> Optional[EvPeriodicWord]:
        """The full stem when the provenance pins it down exactly."""
        p = self.provenance
        if isinstance(p, ExactPoint) and isinstance(p.x, EvPeriodicWord):
            return p.x
        if isinstance(p, LimitOf):
            return p.limit
        return None

    def sorted_members(self, alphabet: Alphabet) -> List[FreeGroupElement]:
        return sorted(self.members, key=alphabet.element_key)

    def to_dict(self, alphabet: Alphabet) -> dict:
        stem = self.stem_point()
        return {
            "radius": self.radius,
            "members": [alphabet.format_element(g) for g in self.sorted_members(alphabet)],
            "stem_prefix": alphabet.format_word(self.stem_prefix),
            "stem": None if stem is None else alphabet.format_point(stem),
            "provenance": _provenance_dict(self.provenance, alphabet),
        }


def _provenance_dict(p, alphabet: Alphabet) -> dict:
    if isinstance(p, ExactPoint):
        x = p.x
        return {"kind": "point", "x": alphabet.format_point(x) if isinstance(x, EvPeriodicWord) else str(x)}
    if isinstance(p, LimitOf):
        return {
            "kind": "limit",
            "sequence": p.descriptor,
            "index": p.index,
            "limit": None if p.limit is None else alphabet.format_point(p.limit),
        }
    return {"kind": "translated", "g": alphabet.format_element(p.g), "parent": _provenance_dict(p.parent, alphabet)}


def _chain(radius: int, members, g: FreeGroupElement) -> Word:
    """Follow the unique positive successor from ``g`` as far as the ball determines it."""
    letters = []
    seen = {g}
    cur = g
    while True:
        steps = {}
        for s in _letters_of(members):
            nxt = reduce_concat(cur, FreeGroupElement(((s, 1),)))
            if len(nxt) <= radius:
                steps[s] = nxt
        hits = [s for s, n in steps.items() if n in members]
        if len(cur) < radius:
            if len(hits) != 1:
                break
        elif not hits:
            break
        s = hits[0]
        cur = steps[s]
        if cur in seen:
            break
        seen.add(cur)
        letters.append(s)
    return tuple(letters)


def _letters_of(members) -> List[str]:
    return sorted({s for g in members for s, _ in g.factors})


def xi_ball(S: Subshift, x, radius: int) -> SpectrumBall:
    """Elements ``alpha beta^-1`` of length at most ``radius`` with ``x = alpha y`` and ``beta y`` in the shift."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    start = frozenset([S.machine.start])
    members = []
    for i in range(radius + 1):
        alpha = x.prefix(i)
        y = x.shift(i)
        for n in range(radius - i + 1):
            for beta in S.alphabet.words(n):
                if alpha and beta and alpha[-1] == beta[-1]:
                    continue
                if survives(S, start, y, head=beta):
                    members.append(FreeGroupElement.from_pair(alpha, beta))
    return SpectrumBall.build(radius, members, ExactPoint(x))


def stem_of(ball: SpectrumBall) -> Word:
    return ball.stem_prefix


def stem_at(ball: SpectrumBall, g: FreeGroupElement) -> Word:
    """The positive chain leaving ``g`` inside the ball, as far as the ball determines it."""
    if g not in ball.members:
        raise ValueError(f"{g} is not a member of the ball")
    return _chain(ball.radius, ball.members | {g}, g)


def _geodesic(g: FreeGroupElement, h: FreeGroupElement) -> List[FreeGroupElement]:
    path = [g]
    step = reduce_concat(g.inverse(), h)
    cur = g
    for f in step.factors:
        cur = reduce_concat(cur, FreeGroupElement((f,)))
        path.append(cur)
    return path


def validate_element(ball: SpectrumBall, S: Optional[Subshift] = None) -> Verdict:
    """Check the necessary conditions for a spectrum element, reporting the first broken one."""
    fmt = (lambda g: S.alphabet.format_element(g)) if S is not None else str
    members = ball.members
    R = ball.radius

    def broken(clause, **detail):
        return Verdict(False, exact=S is None or S.exact, depth=None if S is None else S.depth,
                       witness={"clause": clause, **detail})

    if UNIT not in members:
        return broken("unit")
    for g in members:
        if len(g) > R:
            return broken("radius", element=fmt(g))
        if positive_pair(g) is None:
            return broken("positive-pair", element=fmt(g))
    ordered = sorted(members, key=lambda g: (len(g), str(g)))
    for i, g in enumerate(ordered):
        for h in ordered[i + 1 :]:
            for k in _geodesic(g, h):
                if len(k) <= R and k not in members:
                    return broken("convexity", between=[fmt(g), fmt(h)], missing=fmt(k))
    letters = list(S.alphabet) if S is not None else _letters_of(members)
    for g in ordered:
        if len(g) < R:
            hits = [a for a in letters if reduce_concat(g, FreeGroupElement(((a, 1),))) in members]
            if len(hits) != 1:
                return broken("unique-successor", element=fmt(g), successors=hits)
    if S is not None:
        for g in ordered:
            for h in ordered:
                pair = positive_pair(reduce_concat(g.inverse(), h))
                if pair is not None and not pair.beta and pair.alpha:
                    if not in_language(S, pair.alpha):
                        return broken("language", g=fmt(g), h=fmt(h))
    positives = {tuple(s for s, _ in g.factors) for g in members if all(e == 1 for _, e in g.factors)}
    expected = {ball.stem_prefix[:i] for i in range(len(ball.stem_prefix) + 1)}
    if positives != expected:
        return broken("stem")
    stem = ball.stem_point()
    if S is not None and stem is not None:
        full = xi_ball(S, stem, R).members
        extra = sorted(members - full, key=lambda g: (len(g), str(g)))
        if extra:
            return broken("containment", outside=[fmt(g) for g in extra])
    return Verdict(True, exact=S is None or S.exact, depth=None if S is None else S.depth)


def spectral_translate(g: FreeGroupElement, ball: SpectrumBall) -> SpectrumBall:
    """Left translate by ``g``; the new radius shrinks by ``|g|``."""
    if g.inverse() not in ball.members:
        raise ValueError(f"the inverse of {g} is not a member, so the translate is undefined")
    radius = ball.radius - len(g)
    members = []
    for h in ball.members:
        k = reduce_concat(g, h)
        if len(k) <= radius:
            members.append(k)
    return SpectrumBall.build(radius, members, Translated(g, ball.provenance))


def membership_tests(S: Subshift, stem, g: FreeGroupElement) -> str:
    """Classify ``g = alpha beta^-1`` for balls whose stem is ``stem``.

    ``forbidden``: no element with this stem contains g.
    ``certified-in``: the rest of the stem after alpha lies in the interior
    of the follower set of beta, so every element with this stem contains g.
    ``necessary-only``: anything else; for the ball of the point ``stem``
    itself this still means g is a member.
    """
    pair = positive_pair(g)
    if pair is None:
        return FORBIDDEN
    alpha, beta = pair.alpha, pair.beta
    if not stem.starts_with(alpha):
        raise ValueError("alpha must be a prefix of the stem")
    y = stem.shift(len(alpha))
    start = frozenset([S.machine.start])
    if not survives(S, start, y, head=beta):
        return FORBIDDEN
    if not S.exact or not isinstance(y, EvPeriodicWord):
        return NECESSARY_ONLY
    m = S.machine
    b = run_word(m, m.start, beta)
    # walk prefixes w of y: is the cylinder of w inside F_beta, i.e. F_w within F_(beta w)
    seen = set()
    w_state, bw_state = m.start, b
    i = 0
    while True:
        pos = i if i < len(y.preperiod) else len(y.preperiod) + (i - len(y.preperiod)) % len(y.period)
        key = (pos, w_state, bw_state)
        if key in seen:
            return NECESSARY_ONLY
        seen.add(key)
        if config_included(S, frozenset([w_state]), frozenset([bw_state])):
            return CERTIFIED_IN
        a = y.letter(i)
        w_state, bw_state = m.step(w_state, a), m.step(bw_state, a)
        i += 1


@dataclass(frozen=True)
class BasicOpenSpec:
    alpha: Word
    betas: Tuple[Word, ...] = ()
    gammas: Tuple[Word, ...] = ()


def basic_open_contains(ball: SpectrumBall, V: BasicOpenSpec) -> bool:
    a = FreeGroupElement.from_word(V.alpha)
    need = [a] + [FreeGroupElement.from_pair(V.alpha, b) for b in V.betas]
    avoid = [FreeGroupElement.from_pair(V.alpha, c) for c in V.gammas]
    for g in need + avoid:
        if len(g) > ball.radius:
            raise RadiusTooSmall(f"element {g} lies outside the radius-{ball.radius} ball")
    return all(g in ball.members for g in need) and not any(g in ball.members for g in avoid)


def infer_limit(points: Sequence[EvPeriodicWord], length: int = 64) -> Optional[EvPeriodicWord]:
    """Shortest eventually periodic word matching the common prefix of ``points`` on at least twice its description."""
    prefixes = [p.prefix(length) for p in points]
    n = 0
    while n < length and all(q[n] == prefixes[0][n] for q in prefixes):
        n += 1
    common = prefixes[0][:n]
    for total in range(1, n // 2 + 1):
        for pre_len in range(total):
            per = common[pre_len:total]
            guess = EvPeriodicWord.of(common[:pre_len], per)
            if guess.prefix(n) == common:
                return guess
    return None


def limit_ball(
    S: Subshift,
    sequence: Callable[[int], object],
    radius: int,
    k_max: int = 50,
    window: int = 3,
    limit: Optional[EvPeriodicWord] = None,
    descriptor: str = "sequence",
) -> Tuple[Optional[SpectrumBall], Dict]:
    """Balls of ``sequence(1), sequence(2), ...`` until ``window`` consecutive ones agree."""
    history = []
    points = []
    for k in range(1, k_max + 1):
        x = sequence(k)
        points.append(x)
        history.append(xi_ball(S, x, radius).members)
        if len(history) >= window and all(h == history[-1] for h in history[-window:]):
            first = k - window + 1
            guess = limit if limit is not None else infer_limit(points[-window:])
            ball = SpectrumBall.build(radius, history[-1], LimitOf(descriptor, first, guess))
            report = {"stabilized": True, "index": first, "confirmed_at": k, "window": window,
                      "k_max": k_max, "limit_inferred": limit is None}
            return ball, report
    return None, {"stabilized": False, "k_max": k_max, "window": window}


def to_dot(ball: SpectrumBall, alphabet: Alphabet) -> str:
    """Graphviz view: members as nodes, stem edges solid, tributaries dashed, arrows downstream."""
    name = alphabet.format_element
    members = ball.sorted_members(alphabet)
    lines = ["digraph spectrum {", "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    for g in members:
        style = ', style=filled, fillcolor="lightblue"' if g.is_unit else ""
        lines.append(f'  "{name(g)}" [label="{name(g)}"{style}];')
    for g in members:
        for a in alphabet:
            h = reduce_concat(g, FreeGroupElement(((a, 1),)))
            if h not in ball.members or len(h) > ball.radius:
                continue
            on_stem = all(e == 1 for _, e in g.factors) and all(e == 1 for _, e in h.factors)
            style = "solid" if on_stem else "dashed"
            lines.append(f'  "{name(g)}" -> "{name(h)}" [label="{a}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
