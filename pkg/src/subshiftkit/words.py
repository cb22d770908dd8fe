"""Finite words, eventually periodic words and reduced free-group elements."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

Word = Tuple[str, ...]

INVERSE_MARK = "^-1"


class Alphabet:
    """An ordered set of opaque symbols.

    Declaration order is the tie-breaking order for every search in the
    package: shorter words first, then lexicographic in this order.
    """

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        for s in symbols:
            if not isinstance(s, str) or not s:
                raise ValueError(f"symbols must be nonempty strings, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        self.symbols = symbols
        self.index = {s: i for i, s in enumerate(symbols)}
        # single-character symbols can be written without separators
        self.compact = all(len(s) == 1 and s not in "().^-e " for s in symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def key(self, word: Sequence[str]) -> Tuple[int, ...]:
        return tuple(self.index[s] for s in word)

    def order_key(self, word: Sequence[str]):
        """Sort key: shortest first, then lexicographic by declaration order."""
        return (len(word), self.key(word))

    def check_word(self, word: Sequence[str]) -> Word:
        word = tuple(word)
        for s in word:
            if s not in self.index:
                raise ValueError(f"symbol {s!r} is not in the alphabet {list(self.symbols)}")
        return word

    def words(self, length: int) -> Iterator[Word]:
        """All words of the given length in lexicographic order."""
        return itertools.product(self.symbols, repeat=length)

    def words_up_to(self, length: int) -> Iterator[Word]:
        for n in range(length + 1):
            yield from self.words(n)

    # text formats

    def parse_word(self, text) -> Word:
        if isinstance(text, (list, tuple)):
            return self.check_word(text)
        text = text.strip()
        if text in ("", "e", "∅") and "e" not in self.index:
            return ()
        if self.compact:
            return self.check_word(c for c in text if c not in ". ")
        return self.check_word(t for t in text.split(".") if t)

    def format_word(self, word: Sequence[str]) -> str:
        return ("" if self.compact else ".").join(word)

    def parse_point(self, text: str) -> "EvPeriodicWord":
        """Parse ``pre(per)``, e.g. ``0(1)`` for 0111..."""
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise ValueError(f"eventually periodic word must look like 'pre(period)', got {text!r}")
        head, _, tail = text[:-1].partition("(")
        return EvPeriodicWord.of(self.parse_word(head), self.parse_word(tail))

    def format_point(self, x: "EvPeriodicWord") -> str:
        return f"{self.format_word(x.preperiod)}({self.format_word(x.period)})"

    def parse_element(self, text: str) -> "FreeGroupElement":
        """Parse a group element such as ``10^-1`` or ``a.b^-1``; ``e`` is the unit."""
        text = text.strip()
        if text in ("", "e") and "e" not in self.index:
            return FreeGroupElement(())
        if self.compact:
            tokens = []
            i = 0
            while i < len(text):
                c = text[i]
                i += 1
                if c in ". ":
                    continue
                if text.startswith(INVERSE_MARK, i):
                    tokens.append(c + INVERSE_MARK)
                    i += len(INVERSE_MARK)
                else:
                    tokens.append(c)
        else:
            tokens = [t for t in text.split(".") if t]
        factors = []
        for t in tokens:
            if t.endswith(INVERSE_MARK):
                factors.append((t[: -len(INVERSE_MARK)], -1))
            else:
                factors.append((t, 1))
        for s, _ in factors:
            if s not in self.index:
                raise ValueError(f"symbol {s!r} is not in the alphabet {list(self.symbols)}")
        return FreeGroupElement.reduced(factors)

    def format_element(self, g: "FreeGroupElement") -> str:
        if not g.factors:
            return "e"
        parts = [s if e == 1 else s + INVERSE_MARK for s, e in g.factors]
        return ("" if self.compact else ".").join(parts)

    def element_key(self, g: "FreeGroupElement"):
        return (len(g), tuple((self.index[s], -e) for s, e in g.factors))


def _primitive_root(period: Word) -> Word:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class EvPeriodicWord:
    """The infinite word ``preperiod + period + period + ...`` in canonical form.

    Build values with :meth:`of`; the canonical form makes equality of
    infinite words the same as equality of the two tuples.
    """

    preperiod: Word
    period: Word

    @classmethod
    def of(cls, preperiod: Sequence[str], period: Sequence[str]) -> "EvPeriodicWord":
        pre = tuple(preperiod)
        per = tuple(period)
        if not per:
            raise ValueError("period must be nonempty")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        return cls(pre, per)

    @classmethod
    def periodic(cls, period: Sequence[str]) -> "EvPeriodicWord":
        return cls.of((), period)

    def __len__(self):
        raise TypeError("infinite word has no length; use description_length")

    @property
    def description_length(self) -> int:
        return len(self.preperiod) + len(self.period)

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def letter(self, i: int) -> str:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> Word:
        if n <= len(self.preperiod):
            return self.preperiod[:n]
        k = n - len(self.preperiod)
        reps = k // len(self.period) + 1
        return self.preperiod + (self.period * reps)[:k]

    def shift(self, k: int = 1) -> "EvPeriodicWord":
        """The word with its first ``k`` letters removed."""
        if k <= len(self.preperiod):
            return EvPeriodicWord.of(self.preperiod[k:], self.period)
        r = (k - len(self.preperiod)) % len(self.period)
        return EvPeriodicWord.of((), self.period[r:] + self.period[:r])

    def prepend(self, word: Sequence[str]) -> "EvPeriodicWord":
        return EvPeriodicWord.of(tuple(word) + self.preperiod, self.period)

    def starts_with(self, word: Sequence[str]) -> bool:
        return self.prefix(len(word)) == tuple(word)

    def __str__(self):
        return f"{''.join(self.preperiod)}({''.join(self.period)})"


@dataclass(frozen=True)
class FreeGroupElement:
    """A reduced word over symbols and their inverses.

    ``factors`` holds pairs ``(symbol, +1 or -1)``; the empty tuple is the unit.
    """

    factors: Tuple[Tuple[str, int], ...]

    @classmethod
    def reduced(cls, factors: Iterable[Tuple[str, int]]) -> "FreeGroupElement":
        stack = []
        for s, e in factors:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
            if stack and stack[-1][0] == s and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((s, e))
        return cls(tuple(stack))

    @classmethod
    def from_word(cls, word: Sequence[str]) -> "FreeGroupElement":
        return cls(tuple((s, 1) for s in word))

    @classmethod
    def from_pair(cls, alpha: Sequence[str], beta: Sequence[str]) -> "FreeGroupElement":
        """The reduced form of ``alpha beta^-1``."""
        return cls.reduced([(s, 1) for s in alpha] + [(s, -1) for s in reversed(beta)])

    def __len__(self):
        return len(self.factors)

    def __mul__(self, other: "FreeGroupElement") -> "FreeGroupElement":
        return reduce_concat(self, other)

    def inverse(self) -> "FreeGroupElement":
        return FreeGroupElement(tuple((s, -e) for s, e in reversed(self.factors)))

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def is_reduced(self) -> bool:
        return all(
            not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(self.factors, self.factors[1:])
        )

    def __str__(self):
        if not self.factors:
            return "e"
        return "".join(s if e == 1 else s + INVERSE_MARK for s, e in self.factors)


UNIT = FreeGroupElement(())


@dataclass(frozen=True)
class PositivePair:
    alpha: Word
    beta: Word

    def element(self) -> FreeGroupElement:
        return FreeGroupElement.from_pair(self.alpha, self.beta)


def reduce_concat(g: FreeGroupElement, h: FreeGroupElement) -> FreeGroupElement:
    """Multiply two reduced elements and reduce the result."""
    left = list(g.factors)
    right = list(h.factors)
    i = 0
    while left and i < len(right) and left[-1][0] == right[i][0] and left[-1][1] == -right[i][1]:
        left.pop()
        i += 1
    return FreeGroupElement(tuple(left) + tuple(right[i:]))


def positive_pair(g: FreeGroupElement) -> Optional[PositivePair]:
    """Split ``g`` as ``alpha beta^-1`` with both words positive, if possible."""
    factors = g.factors
    k = 0
    while k < len(factors) and factors[k][1] == 1:
        k += 1
    if any(e == 1 for _, e in factors[k:]):
        return None
    alpha = tuple(s for s, _ in factors[:k])
    beta = tuple(s for s, _ in reversed(factors[k:]))
    return PositivePair(alpha, beta)


def ball(alphabet: Alphabet, radius: int) -> list:
    """All reduced elements of length at most ``radius``, in shortlex order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    letters = [(s, 1) for s in alphabet] + [(s, -1) for s in alphabet]
    layer = [UNIT]
    out = [UNIT]
    for _ in range(radius):
        nxt = []
        for g in layer:
            for f in letters:
                if g.factors and g.factors[-1][0] == f[0] and g.factors[-1][1] == -f[1]:
                    continue
                nxt.append(FreeGroupElement(g.factors + (f,)))
        out.extend(nxt)
        layer = nxt
    return out


def ball_size(n: int, radius: int) -> int:
    return 1 + sum(2 * n * (2 * n - 1) ** (k - 1) for k in range(1, radius + 1))
