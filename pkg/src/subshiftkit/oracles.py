"""Built-in rule languages, named non-periodic points and point families.

A rule is a deterministic machine with a single start state whose step
function returns ``None`` when a word leaves the language.  Its state
space may be infinite, so every analysis on rule-based shifts is cut off
at a depth bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Optional, Tuple

from .words import EvPeriodicWord, Word


def thue_morse_letter(i: int) -> str:
    """Letter ``i`` of the fixed point of 1 -> 12, 2 -> 21."""
    return "1" if bin(i).count("1") % 2 == 0 else "2"


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


class Rule:
    name = ""
    symbols: Tuple[str, ...] = ()
    start: Hashable = None

    def step(self, state, letter) -> Optional[Hashable]:
        raise NotImplementedError

    def probes(self):
        """Points whose costs are expected to grow, used by supremum estimates."""
        return []


class PowersOfTwo(Rule):
    """Binary words whose 1-blocks enclosed by 0s have power-of-two length."""

    name = "pow2"
    symbols = ("0", "1")
    start = ("head",)

    def step(self, state, letter):
        if state[0] == "head":
            return ("run", 0) if letter == "0" else state
        k = state[1]
        if letter == "1":
            return ("run", k + 1)
        if k == 0 or is_power_of_two(k):
            return ("run", 0)
        return None

    def probes(self):
        return [
            (m, EvPeriodicWord.of(("1",) * (3 * 2 ** (m - 1)), ("0",)))
            for m in range(1, 7)
        ]


class ThueMorseTail(Rule):
    """{1,2}^N together with the single point 0z, z the Thue-Morse word."""

    name = "ex14"
    symbols = ("0", "1", "2")
    start = ("start",)

    def step(self, state, letter):
        tag = state[0]
        if tag == "start":
            return ("z", 0) if letter == "0" else ("free",)
        if letter == "0":
            return None
        if tag == "free":
            return state
        i = state[1]
        return ("z", i + 1) if thue_morse_letter(i) == letter else None


RULES: Dict[str, Rule] = {r.name: r for r in (PowersOfTwo(), ThueMorseTail())}


@dataclass(frozen=True)
class StreamPoint:
    """A named infinite word given by a letter function (not eventually periodic)."""

    name: str
    letter_fn: Callable[[int], str]

    def letter(self, i: int) -> str:
        return self.letter_fn(i)

    def prefix(self, n: int) -> Word:
        return tuple(self.letter_fn(i) for i in range(n))

    def shift(self, k: int = 1) -> "StreamPoint":
        fn = self.letter_fn
        return StreamPoint(f"{self.name}>>{k}", lambda i: fn(i + k))

    def starts_with(self, word) -> bool:
        return self.prefix(len(word)) == tuple(word)

    def __str__(self):
        return self.name


NAMED_POINTS: Dict[str, StreamPoint] = {
    "thue-morse": StreamPoint("thue-morse", thue_morse_letter),
}


@dataclass(frozen=True)
class PointFamily:
    """A sequence of points indexed by k = 1, 2, ... with an optional known limit."""

    name: str
    point: Callable[[int], EvPeriodicWord]
    limit: Optional[EvPeriodicWord] = None


FAMILIES: Dict[str, PointFamily] = {
    "even-odd-ones": PointFamily(
        "even-odd-ones",
        lambda k: EvPeriodicWord.of(("1",) * (2 * k + 1), ("0",)),
        EvPeriodicWord.periodic(("1",)),
    ),
    "zeros-then-one": PointFamily(
        "zeros-then-one",
        lambda k: EvPeriodicWord.of(("0",) * k + ("1",), ("0",)),
        EvPeriodicWord.periodic(("0",)),
    ),
}
