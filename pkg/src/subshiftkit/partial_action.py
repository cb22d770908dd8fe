"""The standard partial action of the free group on a subshift.

For ``g = alpha beta^-1`` in reduced form, ``theta_g`` sends ``beta y`` to
``alpha y`` whenever both words lie in the shift.  Operator identities
between the associated partial isometries are checked here as identities
between partial maps on sampled points.
"""
from __future__ import annotations

import random
from typing import Iterable, List, Optional, Sequence, Tuple

from .shifts import Subshift, contains_point, iter_points, survives
from .verdict import Verdict
from .words import UNIT, EvPeriodicWord, FreeGroupElement, positive_pair, reduce_concat


def domain_contains(S: Subshift, g: FreeGroupElement, x) -> bool:
    """Whether ``x`` lies in the range ``X_g`` of ``theta_g``."""
    pair = positive_pair(g)
    if pair is None or not x.starts_with(pair.alpha):
        return False
    start = frozenset([S.machine.start])
    y = x.shift(len(pair.alpha))
    return survives(S, start, y, head=pair.alpha) and survives(S, start, y, head=pair.beta)


def apply(S: Subshift, g: FreeGroupElement, x) -> Optional[EvPeriodicWord]:
    """``theta_g(x)``, or ``None`` when ``x`` is outside the domain ``X_{g^-1}``."""
    if not domain_contains(S, g.inverse(), x):
        return None
    pair = positive_pair(g)
    return x.shift(len(pair.beta)).prepend(pair.alpha)


def act(S: Subshift, g: FreeGroupElement, x):
    y = apply(S, g, x)
    if y is None:
        raise ValueError(f"point {x} is outside the domain of theta_{g}")
    return y


def fixed_point(S: Subshift, g: FreeGroupElement) -> Optional[EvPeriodicWord]:
    """The unique fixed point of ``theta_g`` when ``g = nu alpha^(+-1) nu^-1`` with ``nu alpha^inf`` in the shift."""
    if g.is_unit:
        raise ValueError("every point is fixed by the unit")
    pair = positive_pair(g)
    if pair is None:
        return None
    mu, nu = pair.alpha, pair.beta
    if len(mu) == len(nu):
        return None
    if len(mu) < len(nu):
        mu, nu = nu, mu
    if mu[: len(nu)] != nu:
        return None
    x = EvPeriodicWord.of(nu, mu[len(nu) :])
    if not contains_point(S, x):
        return None
    return x


def sample_points(S: Subshift, count: int, max_len: int = 6, seed: int = 0) -> List[EvPeriodicWord]:
    """Up to ``count`` points of small description, drawn reproducibly."""
    pool = list(iter_points(S, frozenset([S.machine.start]), max_len))
    if len(pool) <= count:
        return pool
    return random.Random(seed).sample(pool, count)


def check_partial_rep_axioms(
    S: Subshift,
    pairs: Iterable[Tuple[FreeGroupElement, FreeGroupElement]],
    points: Sequence,
) -> Verdict:
    """Check the partial-representation identities pointwise and collect counterexamples."""
    fmt_g = S.alphabet.format_element

    def show(p):
        return None if p is None else S.alphabet.format_point(p)

    def th(g, x):
        return None if x is None else apply(S, g, x)

    failures = []

    def fail(axiom, g, h, x, lhs, rhs):
        failures.append(
            {
                "axiom": axiom,
                "g": fmt_g(g),
                "h": None if h is None else fmt_g(h),
                "x": show(x),
                "lhs": show(lhs),
                "rhs": show(rhs),
            }
        )

    pairs = list(pairs)
    elements = sorted({g for pair in pairs for g in pair}, key=S.alphabet.element_key)
    checks = 0
    for x in points:
        if th(UNIT, x) != x:
            fail("PR1", UNIT, None, x, th(UNIT, x), x)
        checks += 1
        for g in elements:
            y = th(g, x)
            if y is not None and th(g.inverse(), y) != x:
                fail("PR3", g, None, x, th(g.inverse(), y), x)
            checks += 1
        for g, h in pairs:
            gh = reduce_concat(g, h)
            z = th(h.inverse(), x)
            lhs = th(g, th(h, z))
            rhs = th(gh, z)
            if lhs != rhs:
                fail("PR2", g, h, x, lhs, rhs)
            if len(gh) == len(g) + len(h):
                lhs, rhs = th(g, th(h, x)), th(gh, x)
                if lhs != rhs:
                    fail("semi-saturation", g, h, x, lhs, rhs)
            # the final projections e_g, e_h commute
            eg = lambda p: th(g, th(g.inverse(), p))
            eh = lambda p: th(h, th(h.inverse(), p))
            lhs, rhs = eg(eh(x)), eh(eg(x))
            if lhs != rhs:
                fail("commutation", g, h, x, lhs, rhs)
            checks += 3
    return Verdict(
        not failures,
        exact=S.exact,
        depth=S.depth,
        witness={"checks": checks, "counterexamples": failures[:20], "failures": len(failures)},
    )
