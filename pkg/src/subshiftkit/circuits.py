"""Circuits, exits and strong exits."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .shifts import Subshift, contains_point, find_point, follower_config, run_word
from .words import EvPeriodicWord, Word


@dataclass(frozen=True)
class CircuitReport:
    gamma: Word
    is_circuit: bool
    exit: Optional[EvPeriodicWord]
    strong_exit: Optional[EvPeriodicWord]
    chain_length: int
    exact: bool

    def to_dict(self, alphabet) -> dict:
        fmt = alphabet.format_point
        return {
            "gamma": alphabet.format_word(self.gamma),
            "is_circuit": self.is_circuit,
            "exit": None if self.exit is None else fmt(self.exit),
            "strong_exit": None if self.strong_exit is None else fmt(self.strong_exit),
            "chain_length": self.chain_length,
            "exact": self.exact,
        }


def is_circuit(S: Subshift, gamma: Sequence[str]) -> bool:
    gamma = S.alphabet.check_word(gamma)
    if not gamma:
        raise ValueError("a circuit must be a nonempty word")
    return contains_point(S, EvPeriodicWord.periodic(gamma))


def _require_circuit(S: Subshift, gamma) -> Word:
    gamma = S.alphabet.check_word(gamma)
    if not is_circuit(S, gamma):
        raise ValueError(f"{S.alphabet.format_word(gamma)!r} is not a circuit")
    return gamma


def exit_of(S: Subshift, gamma: Sequence[str], max_len: int = 8) -> Optional[EvPeriodicWord]:
    """A point other than gamma^inf that may follow gamma, if any."""
    gamma = _require_circuit(S, gamma)
    cfg = follower_config(S, [gamma])
    return find_point(S, cfg.states, max_len, avoid_point=EvPeriodicWord.periodic(gamma))


def power_chain(S: Subshift, gamma: Word) -> Tuple[frozenset, int]:
    """Configuration for all powers of gamma at once, and how many powers it took to stabilize.

    The follower sets of gamma^n decrease with n, and the machine state of
    gamma^n is eventually periodic in n, so the intersection over all n is
    reached once a state repeats.
    """
    m = S.machine
    if S.exact:
        states = []
        s = run_word(m, m.start, gamma)
        while s is not None and s not in states:
            states.append(s)
            s = run_word(m, s, gamma)
        if s is None:
            return None, len(states)
        return m.canonical(states), len(states)
    count = max(1, S.depth_bound // len(gamma))
    states = []
    s = m.start
    for _ in range(count):
        s = run_word(m, s, gamma)
        if s is None:
            return None, len(states)
        states.append(s)
    return m.canonical(states), count


def strong_exit(S: Subshift, gamma: Sequence[str], max_len: int = 8) -> Optional[EvPeriodicWord]:
    """A point y, not starting with gamma, such that every power of gamma may precede y.

    Any strong exit starting with gamma can have copies of gamma stripped
    off until it no longer does, so the cylinder restriction loses nothing.
    """
    gamma = _require_circuit(S, gamma)
    config, _ = power_chain(S, gamma)
    if config is None:
        return None
    return find_point(S, config, max_len, avoid_prefix=gamma)


def circuit_report(S: Subshift, gamma: Sequence[str]) -> CircuitReport:
    gamma = S.alphabet.check_word(gamma)
    if not is_circuit(S, gamma):
        return CircuitReport(gamma, False, None, None, 0, S.exact)
    _, length = power_chain(S, gamma)
    return CircuitReport(gamma, True, exit_of(S, gamma), strong_exit(S, gamma), length, S.exact)
