"""Brute-force references that only look at forbidden words or raw presentation edges."""
from __future__ import annotations

import itertools
from functools import lru_cache

from subshiftkit.words import EvPeriodicWord


def _forbidden_free(S, w):
    return not any(
        tuple(w[i : i + len(f)]) == f for f in S.forbidden for i in range(len(w) - len(f) + 1)
    )


def _paths_exist(S, w):
    """Some path of the raw presentation carries ``w``."""
    edges = S.to_spec()["edges"]
    current = set(S.to_spec()["states"])
    for a in w:
        current = {dst for src, lab, dst in edges if src in current and lab == a}
        if not current:
            return False
    return True


def extension_slack(S):
    if S.kind == "sft":
        m = max((len(f) for f in S.forbidden), default=1)
        return len(S.alphabet) ** m + m
    if S.kind == "sofic":
        return len(S.to_spec()["states"]) + 1
    return 0


@lru_cache(maxsize=None)
def in_language(S, w):
    """Word occurs in some point: it extends to the right by ``extension_slack`` letters."""
    w = tuple(w)
    if S.kind == "full":
        return True
    check = _forbidden_free if S.kind == "sft" else _paths_exist
    if not check(S, w):
        return False
    frontier = {w}
    for _ in range(extension_slack(S)):
        frontier = {v + (a,) for v in frontier for a in S.alphabet if check(S, v + (a,))}
        if not frontier:
            return False
        # only the tail matters for further extension of an SFT word
        if S.kind == "sft":
            keep = max((len(f) for f in S.forbidden), default=1)
            frontier = {v[-keep:] for v in frontier}
    return True


@lru_cache(maxsize=None)
def in_shift(S, x):
    """Eventually periodic point membership via a long prefix."""
    n = len(x.preperiod) + 12 * len(x.period) + 8
    return in_language(S, x.prefix(n))


@lru_cache(maxsize=None)
def all_points(S, max_desc):
    """All points of description length at most ``max_desc`` that lie in S."""
    out = set()
    letters = list(S.alphabet)
    for total in range(1, max_desc + 1):
        for cut in range(total):
            for pre in itertools.product(letters, repeat=cut):
                for per in itertools.product(letters, repeat=total - cut):
                    x = EvPeriodicWord.of(pre, per)
                    if x.description_length == total and x not in out and in_shift(S, x):
                        out.add(x)
    return tuple(sorted(out, key=lambda x: (x.description_length, x.preperiod, x.period)))


def in_follower(S, B, y):
    return all(in_shift(S, y.prepend(b)) for b in B)


def cost(S, B, x, max_alpha=8, max_gamma=6):
    """Least |alpha| + |gamma| found by exhaustive search, or None beyond the bounds."""
    best = None
    for a in range(max_alpha + 1):
        y = x.shift(a)
        for g in range(max_gamma + 1):
            if best is not None and a + g >= best:
                break
            if any(in_follower(S, [tuple(b) + gamma for b in B], y) for gamma in itertools.product(list(S.alphabet), repeat=g)):
                best = a + g
                break
    return best


def follower_points(S, B, max_desc=6):
    B = [tuple(b) for b in B]
    return [y for y in all_points(S, max_desc) if in_follower(S, B, y)]


def follower_words(S, B, length):
    """Words w with beta w in the language for all beta in B, grown letter by letter."""
    B = [tuple(b) for b in B]
    layer = [()]
    for _ in range(length):
        layer = [w + (a,) for w in layer for a in S.alphabet if all(in_language(S, b + w + (a,)) for b in B)]
    return layer
