"""Subshifts, their languages, and follower-set configurations.

Every shift is compiled to a deterministic machine with one start state:
a word is in the language iff its run from the start state is defined.
Full shifts, SFTs and sofic shifts compile to the subset construction of
a trimmed labelled graph, so the machine is finite and every question
below is decided exactly.  Rule-based (oracle) shifts use the rule's own
possibly infinite machine and answer up to their depth bound.

A follower configuration is a set of machine states.  The follower set
of a word is the set of infinite words runnable from the state the word
leads to, so an intersection of follower sets is the set of words
runnable from every state in a configuration at once.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .oracles import RULES, Rule
from .verdict import Verdict
from .words import Alphabet, EvPeriodicWord, Word

KINDS = ("full", "sft", "sofic", "oracle")
SPEC_FIELDS = {"alphabet", "kind", "forbidden", "states", "edges", "rule", "depth_bound"}
DEFAULT_DEPTH = 64
EXACT_PROFILE_LIMIT = 16


class DepthExceeded(ValueError):
    pass


class NotExact(ValueError):
    """Raised when an exact-only operation is called on a rule-based shift."""


class Presentation:
    """A labelled graph; the shift is the set of labels of its infinite paths.

    States that cannot start an infinite path are trimmed on construction.
    """

    def __init__(self, states: Iterable[Hashable], edges: Iterable[Tuple[Hashable, str, Hashable]]):
        states = list(dict.fromkeys(states))
        edges = sorted(set(tuple(e) for e in edges), key=repr)
        known = set(states)
        for src, _, dst in edges:
            if src not in known or dst not in known:
                raise ValueError(f"edge ({src!r}, {dst!r}) mentions an undeclared state")
        live = set(states)
        while True:
            has_out = {src for src, _, dst in edges if src in live and dst in live}
            if has_out == live:
                break
            live = has_out
        self.states = tuple(s for s in states if s in live)
        self.edges = tuple(e for e in edges if e[0] in live and e[2] in live)
        seen = set()
        self.deterministic = True
        for src, label, _ in self.edges:
            if (src, label) in seen:
                self.deterministic = False
            seen.add((src, label))

    def successors(self) -> Dict[Hashable, Dict[str, set]]:
        succ = {s: {} for s in self.states}
        for src, label, dst in self.edges:
            succ[src].setdefault(label, set()).add(dst)
        return succ


def _has_factor(word: Word, forbidden: Sequence[Word]) -> bool:
    n = len(word)
    for f in forbidden:
        k = len(f)
        for i in range(n - k + 1):
            if word[i : i + k] == f:
                return True
    return False


def sft_presentation(alphabet: Alphabet, forbidden: Sequence[Word]) -> Presentation:
    """Graph whose states are windows of the next ``m`` letters, m = longest forbidden length - 1."""
    m = max((len(f) for f in forbidden), default=1) - 1
    if m == 0:
        bad = {f[0] for f in forbidden}
        return Presentation([()], [((), a, ()) for a in alphabet if a not in bad])
    states = [w for w in alphabet.words(m) if not _has_factor(w, forbidden)]
    edges = []
    for w in states:
        for b in alphabet:
            if not _has_factor(w + (b,), forbidden):
                edges.append((w, w[0], w[1:] + (b,)))
    return Presentation(states, edges)


class FiniteMachine:
    """Subset construction of a presentation, started from the set of all states.

    Machine states are frozensets of presentation states; the state reached
    by a word is the set of end points of paths carrying that word.
    """

    exact = True
    depth = None

    def __init__(self, alphabet: Alphabet, presentation: Presentation):
        if not presentation.states:
            raise ValueError("the presented language is empty")
        self.alphabet = alphabet
        self.presentation = presentation
        succ = presentation.successors()
        self.start = frozenset(presentation.states)
        self.delta: Dict[Tuple[FrozenSet, str], Optional[FrozenSet]] = {}
        self.rep: Dict[FrozenSet, Word] = {self.start: ()}
        self.states: List[FrozenSet] = [self.start]
        queue = deque([self.start])
        while queue:
            s = queue.popleft()
            for a in alphabet:
                t = frozenset(q for p in s for q in succ[p].get(a, ()))
                t = t or None
                self.delta[(s, a)] = t
                if t is not None and t not in self.rep:
                    self.rep[t] = self.rep[s] + (a,)
                    self.states.append(t)
                    queue.append(t)
        self.order = {s: i for i, s in enumerate(self.states)}

    def step(self, state, letter):
        return self.delta[(state, letter)]

    def canonical(self, states: Iterable) -> FrozenSet:
        """Drop states whose follower set contains that of another member."""
        states = set(states)
        return frozenset(s for s in states if not any(t < s for t in states))

    def describe(self, state) -> List[str]:
        return sorted(str(q) for q in state)


class RuleMachine:
    exact = False

    def __init__(self, alphabet: Alphabet, rule: Rule, depth: int):
        self.alphabet = alphabet
        self.rule = rule
        self.start = rule.start
        self.depth = depth

    def step(self, state, letter):
        return self.rule.step(state, letter)

    def canonical(self, states: Iterable) -> FrozenSet:
        return frozenset(states)

    def describe(self, state) -> List[str]:
        return [repr(state)]


class Subshift:
    """A one-sided subshift over a finite alphabet.

    ``kind`` is one of ``full``, ``sft``, ``sofic`` or ``oracle``.  Instances are
    treated as immutable; analysis results are memoized on the instance.
    """

    def __init__(
        self,
        alphabet,
        kind: str,
        forbidden: Iterable[Sequence[str]] = (),
        presentation: Optional[Presentation] = None,
        rule: Optional[str] = None,
        depth_bound: int = DEFAULT_DEPTH,
        name: str = "",
    ):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        self.alphabet = alphabet
        self.kind = kind
        self.name = name
        self.forbidden: Tuple[Word, ...] = ()
        self.presentation = None
        self.rule = None
        self.depth_bound = depth_bound
        self._cache: Dict[str, dict] = {}
        if kind == "full":
            self.presentation = Presentation([()], [((), a, ()) for a in alphabet])
            self.machine = FiniteMachine(alphabet, self.presentation)
        elif kind == "sft":
            words = []
            for f in forbidden:
                f = alphabet.check_word(f)
                if not f:
                    raise ValueError("forbidden words must be nonempty")
                words.append(f)
            self.forbidden = tuple(sorted(set(words), key=alphabet.order_key))
            self.presentation = sft_presentation(alphabet, self.forbidden)
            self.machine = FiniteMachine(alphabet, self.presentation)
        elif kind == "sofic":
            if presentation is None:
                raise ValueError("a sofic shift needs a presentation")
            for _, label, _ in presentation.edges:
                if label not in alphabet:
                    raise ValueError(f"edge label {label!r} is not in the alphabet")
            self.presentation = presentation
            self.machine = FiniteMachine(alphabet, presentation)
        else:
            if rule not in RULES:
                raise ValueError(f"unknown rule {rule!r}; built-in rules: {sorted(RULES)}")
            if depth_bound is None or depth_bound < 1:
                raise ValueError("depth_bound must be a positive integer")
            self.rule = RULES[rule]
            if tuple(alphabet) != self.rule.symbols:
                raise ValueError(f"rule {rule!r} is defined over {list(self.rule.symbols)}")
            self.machine = RuleMachine(alphabet, self.rule, depth_bound)
            _validate_rule(self.machine)

    @property
    def exact(self) -> bool:
        return self.machine.exact

    @property
    def depth(self) -> Optional[int]:
        return None if self.exact else self.depth_bound

    def with_depth(self, depth: int) -> "Subshift":
        """Same shift with another depth bound; exact shifts are returned unchanged."""
        if self.exact or depth == self.depth_bound:
            return self
        return Subshift(self.alphabet, self.kind, rule=self.rule.name, depth_bound=depth, name=self.name)

    def memo(self, table: str) -> dict:
        return self._cache.setdefault(table, {})

    def __repr__(self):
        return f"Subshift({self.name or self.kind!r})"

    # serialization

    def to_spec(self) -> dict:
        spec = {"alphabet": list(self.alphabet), "kind": self.kind}
        fmt = self.alphabet.format_word
        if self.kind == "sft":
            spec["forbidden"] = [fmt(f) for f in self.forbidden]
        elif self.kind == "sofic":
            spec["states"] = [str(s) for s in self.presentation.states]
            spec["edges"] = [[str(s), a, str(t)] for s, a, t in self.presentation.edges]
        elif self.kind == "oracle":
            spec["rule"] = self.rule.name
            spec["depth_bound"] = self.depth_bound
        return spec


def _validate_rule(machine: RuleMachine, length: int = 6) -> None:
    """Check factoriality and right extendability on all short accepted words."""
    accepted = set()
    frontier = [((), machine.start)]
    for _ in range(length + 1):
        nxt = []
        for w, s in frontier:
            accepted.add(w)
            extended = False
            for a in machine.alphabet:
                t = machine.step(s, a)
                if t is not None:
                    extended = True
                    nxt.append((w + (a,), t))
            if not extended:
                raise ValueError(f"rule {machine.rule.name!r}: word {w} has no right extension")
        frontier = nxt
    for w in accepted:
        for i in range(len(w)):
            for j in range(i, len(w) + 1):
                if w[i:j] not in accepted:
                    raise ValueError(f"rule {machine.rule.name!r} is not factorial at {w}")
    if accepted == {()}:
        raise ValueError("the rule language is empty")


def from_spec(spec: dict, name: str = "") -> Subshift:
    if not isinstance(spec, dict):
        raise ValueError("shift spec must be a JSON object")
    unknown = set(spec) - SPEC_FIELDS
    if unknown:
        raise ValueError(f"unknown fields in shift spec: {sorted(unknown)}")
    for key in ("alphabet", "kind"):
        if key not in spec:
            raise ValueError(f"shift spec is missing {key!r}")
    alphabet = Alphabet(spec["alphabet"])
    kind = spec["kind"]
    if kind == "sft":
        forbidden = [alphabet.parse_word(w) for w in spec.get("forbidden", [])]
        return Subshift(alphabet, "sft", forbidden=forbidden, name=name)
    if kind == "sofic":
        if "states" not in spec or "edges" not in spec:
            raise ValueError("a sofic spec needs 'states' and 'edges'")
        for e in spec["edges"]:
            if not isinstance(e, (list, tuple)) or len(e) != 3:
                raise ValueError(f"edge must be [source, label, target], got {e!r}")
        pres = Presentation(spec["states"], [tuple(e) for e in spec["edges"]])
        return Subshift(alphabet, "sofic", presentation=pres, name=name)
    if kind == "oracle":
        return Subshift(
            alphabet,
            "oracle",
            rule=spec.get("rule"),
            depth_bound=spec.get("depth_bound", DEFAULT_DEPTH),
            name=name,
        )
    if kind == "full":
        return Subshift(alphabet, "full", name=name)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def builtin_names() -> List[str]:
    files = resources.files("subshiftkit") / "data"
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def load_spec(path_or_name: str) -> Subshift:
    """Load a shift from a JSON file, or from a built-in name such as ``even``."""
    path = Path(path_or_name)
    if path.is_file():
        text = path.read_text()
        name = path.stem
    else:
        name = path.name[: -len(".json")] if path.name.endswith(".json") else path.name
        res = resources.files("subshiftkit") / "data" / f"{name.lower()}.json"
        if not res.is_file():
            raise ValueError(f"no spec file {path_or_name!r} and no built-in shift named {name!r}")
        text = res.read_text()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed shift spec: {exc}") from None
    return from_spec(spec, name=name.lower())


def builtin(name: str) -> Subshift:
    return load_spec(name)


# language and points


def run_word(machine, state, word: Sequence[str]):
    for a in word:
        if state is None:
            return None
        state = machine.step(state, a)
    return state


def in_language(S: Subshift, w: Sequence[str]) -> bool:
    w = S.alphabet.check_word(w)
    if not S.exact and len(w) > S.depth_bound:
        raise DepthExceeded(f"word of length {len(w)} exceeds depth bound {S.depth_bound}")
    return run_word(S.machine, S.machine.start, w) is not None


def step_config(machine, config: FrozenSet, letter: str) -> Optional[FrozenSet]:
    out = set()
    for s in config:
        t = machine.step(s, letter)
        if t is None:
            return None
        out.add(t)
    return machine.canonical(out)


def run_config(machine, config, word: Sequence[str]):
    for a in word:
        if config is None:
            return None
        config = step_config(machine, config, a)
    return config


def survives(S: Subshift, config, point, head: Sequence[str] = ()) -> bool:
    """Whether ``head + point`` is runnable forever from every state of ``config``.

    Exact for finite machines and eventually periodic points; otherwise the
    run is checked up to the shift's depth bound.
    """
    m = S.machine
    config = run_config(m, config, head)
    if config is None:
        return False
    if not m.exact or not isinstance(point, EvPeriodicWord):
        depth = S.depth_bound if not m.exact else DEFAULT_DEPTH
        return run_config(m, config, point.prefix(depth)) is not None
    key = (config, point)
    table = S.memo("survives")
    if key in table:
        return table[key]
    c = run_config(m, config, point.preperiod)
    seen = set()
    result = c is not None
    while result and c not in seen:
        seen.add(c)
        c = run_config(m, c, point.period)
        result = c is not None
    table[key] = result
    return result


def contains_point(S: Subshift, x) -> bool:
    """Whether ``x`` lies in the shift (bounded by depth for rule-based shifts)."""
    return survives(S, frozenset([S.machine.start]), x)


# follower configurations


@dataclass(frozen=True)
class FollowerConfig:
    """Canonical set of machine states whose joint future is ``F_B``.

    ``states`` is ``None`` when some word of ``B`` is outside the language,
    so that ``F_B`` is empty.  Equality ignores the representative words.
    """

    shift: Subshift = field(compare=False, repr=False, hash=False)
    states: Optional[FrozenSet]
    words: Tuple[Word, ...] = field(default=(), compare=False)

    @property
    def dead(self) -> bool:
        return self.states is None

    def describe(self) -> List[List[str]]:
        if self.states is None:
            return []
        m = self.shift.machine
        return sorted(m.describe(s) for s in self.states)


def follower_config(S: Subshift, B: Iterable[Sequence[str]]) -> FollowerConfig:
    words = tuple(sorted({S.alphabet.check_word(b) for b in B}, key=S.alphabet.order_key))
    m = S.machine
    states = []
    for b in words:
        s = run_word(m, m.start, b)
        if s is None:
            return FollowerConfig(S, None, words)
        states.append(s)
    if not words:
        states = [m.start]
    return FollowerConfig(S, m.canonical(states), words)


def config_from_states(S: Subshift, states: Iterable) -> FollowerConfig:
    """Config for a set of finite-machine states, with shortest representative words."""
    m = S.machine
    states = m.canonical(states)
    words = tuple(sorted((m.rep[s] for s in states), key=S.alphabet.order_key))
    return FollowerConfig(S, states, words)


def _require_exact(S: Subshift, what: str):
    if not S.exact:
        raise NotExact(f"{what} needs an exact (full, sft or sofic) shift")


def config_graph(S: Subshift, config: FrozenSet):
    """Reachable configurations from ``config`` with their alive flags.

    A configuration is alive when some infinite word is runnable from it,
    found as a greatest fixpoint of "has an alive successor".
    """
    _require_exact(S, "config_graph")
    m = S.machine
    succ: Dict[FrozenSet, Dict[str, Optional[FrozenSet]]] = {}
    queue = deque([config])
    succ[config] = {}
    order = [config]
    while queue:
        c = queue.popleft()
        row = {}
        for a in S.alphabet:
            t = step_config(m, c, a)
            row[a] = t
            if t is not None and t not in succ:
                succ[t] = {}
                order.append(t)
                queue.append(t)
        succ[c] = row
    alive = set(succ)
    changed = True
    while changed:
        changed = False
        for c in list(alive):
            if not any(t in alive for t in succ[c].values() if t is not None):
                alive.discard(c)
                changed = True
    table = S.memo("alive")
    for c in succ:
        table[c] = c in alive
    return order, succ, alive


def config_alive(S: Subshift, config: Optional[FrozenSet]) -> bool:
    if config is None:
        return False
    if not S.exact:
        return _bounded_alive(S, config, S.depth_bound)
    table = S.memo("alive")
    if config not in table:
        config_graph(S, config)
    return table[config]


def _bounded_alive(S: Subshift, config, depth: int) -> bool:
    m = S.machine
    dead = set()

    def go(c, k):
        if k == 0:
            return True
        if (c, k) in dead:
            return False
        for a in S.alphabet:
            t = step_config(m, c, a)
            if t is not None and go(t, k - 1):
                return True
        dead.add((c, k))
        return False

    return go(config, depth)


def follower_nonempty(cfg: FollowerConfig) -> bool:
    return config_alive(cfg.shift, cfg.states)


def unique_point_of(S: Subshift, config) -> Optional[EvPeriodicWord]:
    order, succ, alive = config_graph(S, config)
    if config not in alive:
        raise ValueError("the follower set is empty")
    # only configurations reachable through alive ones matter
    seen = {config}
    queue = deque([config])
    while queue:
        c = queue.popleft()
        nxt = [(a, t) for a, t in succ[c].items() if t in alive]
        if len(nxt) != 1:
            return None
        t = nxt[0][1]
        if t not in seen:
            seen.add(t)
            queue.append(t)
    letters = []
    visited = {}
    c = config
    while c not in visited:
        visited[c] = len(letters)
        a, c = next((a, t) for a, t in succ[c].items() if t in alive)
        letters.append(a)
    i = visited[c]
    return EvPeriodicWord.of(letters[:i], letters[i:])


def follower_unique_point(cfg: FollowerConfig) -> Optional[EvPeriodicWord]:
    """The single point of ``F_B`` when it has exactly one element, else ``None``."""
    if cfg.dead:
        raise ValueError("the follower set is empty")
    return unique_point_of(cfg.shift, cfg.states)


# point search


def _point_key(S: Subshift, y: EvPeriodicWord):
    key = S.alphabet.key
    return (y.description_length, key(y.preperiod + y.period), len(y.preperiod))


def iter_points(S: Subshift, config, max_len: int) -> Iterator[EvPeriodicWord]:
    """Eventually periodic points runnable from ``config``, by description length then lexicographically."""
    m = S.machine
    alphabet = list(S.alphabet)

    def ok(c):
        return c is not None and (not m.exact or config_alive(S, c))

    for total in range(1, max_len + 1):
        found = []

        def periods(c_start, pre, per, c):
            if len(per) == total - len(pre):
                y = EvPeriodicWord.of(pre, per)
                if y.preperiod == pre and y.period == per and survives(S, c_start, y.shift(len(pre))):
                    found.append(y)
                return
            for a in alphabet:
                t = step_config(m, c, a)
                if ok(t):
                    periods(c_start, pre, per + (a,), t)

        def prefixes(pre, c):
            if len(pre) < total:
                periods(c, pre, (), c)
            if len(pre) < total - 1:
                for a in alphabet:
                    t = step_config(m, c, a)
                    if ok(t):
                        prefixes(pre + (a,), t)

        if ok(config):
            prefixes((), config)
        found.sort(key=lambda y: _point_key(S, y))
        yield from found


def greedy_tail(S: Subshift, config) -> EvPeriodicWord:
    """Lexicographically least point runnable from an alive configuration."""
    m = S.machine
    letters = []
    visited = {}
    c = config
    while c not in visited:
        visited[c] = len(letters)
        for a in S.alphabet:
            t = step_config(m, c, a)
            if t is not None and config_alive(S, t):
                letters.append(a)
                c = t
                break
        else:
            raise ValueError("configuration is not alive")
    i = visited[c]
    return EvPeriodicWord.of(letters[:i], letters[i:])


class _PrefixTracker:
    """Tracks whether a word has escaped the cylinder of ``gamma``."""

    def __init__(self, gamma: Word):
        self.gamma = gamma
        self.start = 0

    def step(self, t, a):
        if t == "free":
            return t
        if a != self.gamma[t]:
            return "free"
        return t + 1 if t + 1 < len(self.gamma) else None


class _PointTracker:
    """Tracks whether a word has diverged from the point ``p``."""

    def __init__(self, p: EvPeriodicWord):
        self.p = p
        self.start = 0

    def step(self, t, a):
        if t == "free":
            return t
        if a != self.p.letter(t):
            return "free"
        t += 1
        if t >= self.p.description_length:
            t = len(self.p.preperiod)
        return t


def _escape_point(S: Subshift, config, tracker) -> Optional[EvPeriodicWord]:
    """Shortest escape from the tracked set followed by the least tail, or None if none exists."""
    m = S.machine
    start = (config, tracker.start)
    parent = {start: None}
    queue = deque([start])
    while queue:
        c, t = node = queue.popleft()
        if t == "free":
            word = []
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            word.reverse()
            return greedy_tail(S, c).prepend(word)
        for a in S.alphabet:
            c2 = step_config(m, c, a)
            t2 = tracker.step(t, a)
            if c2 is None or t2 is None or not config_alive(S, c2):
                continue
            nxt = (c2, t2)
            if nxt not in parent:
                parent[nxt] = (node, a)
                queue.append(nxt)
    return None


def find_point(
    S: Subshift,
    config,
    max_len: int = 8,
    avoid_prefix: Optional[Word] = None,
    avoid_point: Optional[EvPeriodicWord] = None,
) -> Optional[EvPeriodicWord]:
    """A point runnable from ``config`` outside the given cylinder and distinct from the given point.

    Prefers the shortest description, then lexicographic order.  For exact
    shifts the answer ``None`` is a proof that no such point exists.
    """

    def ok(y):
        if avoid_prefix is not None and y.starts_with(avoid_prefix):
            return False
        return avoid_point is None or y != avoid_point

    for y in iter_points(S, config, max_len):
        if ok(y):
            return y
    if not S.exact or not config_alive(S, config):
        return None
    if avoid_prefix is not None and avoid_point is not None:
        raise ValueError("give at most one of avoid_prefix and avoid_point")
    if avoid_prefix is not None:
        if not avoid_prefix:
            return None
        return _escape_point(S, config, _PrefixTracker(tuple(avoid_prefix)))
    if avoid_point is not None:
        return _escape_point(S, config, _PointTracker(avoid_point))
    return greedy_tail(S, config)


# structural tests


def is_surjective(S: Subshift, bound: int = 8) -> Verdict:
    """Whether the shift map is onto, via left extendability of every word."""
    alphabet = list(S.alphabet)
    if not S.exact:
        return _bounded_surjective(S, min(bound, S.depth_bound - 1))
    m = S.machine
    start = (m.start, tuple(m.step(m.start, a) for a in alphabet))
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        s, ext = node
        if all(e is None for e in ext):
            word = []
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            word = tuple(reversed(word))
            w = S.alphabet.format_word(word)
            return Verdict(
                False,
                witness={"non_left_extendable": w},
                replay=[{"op": "left_extendable", "word": w, "expect": False}],
            )
        for a in alphabet:
            s2 = m.step(s, a)
            if s2 is None:
                continue
            nxt = (s2, tuple(None if e is None else m.step(e, a) for e in ext))
            if nxt not in parent:
                parent[nxt] = (node, a)
                queue.append(nxt)
    return Verdict(True)


def _bounded_surjective(S: Subshift, bound: int) -> Verdict:
    m = S.machine
    layer = [((), m.start)]
    for _ in range(bound + 1):
        nxt = []
        for w, s in layer:
            if not any(in_language(S, (a,) + w) for a in S.alphabet):
                text = S.alphabet.format_word(w)
                return Verdict(
                    False,
                    exact=False,
                    depth=bound,
                    witness={"non_left_extendable": text},
                    replay=[{"op": "left_extendable", "word": text, "expect": False}],
                )
            for a in S.alphabet:
                t = m.step(s, a)
                if t is not None:
                    nxt.append((w + (a,), t))
        layer = nxt
    return Verdict(True, exact=False, depth=bound)


def languages_equal(m1: FiniteMachine, m2: FiniteMachine) -> bool:
    start = (m1.start, m2.start)
    seen = {start}
    queue = deque([start])
    while queue:
        s1, s2 = queue.popleft()
        for a in m1.alphabet:
            t1, t2 = m1.step(s1, a), m2.step(s2, a)
            if (t1 is None) != (t2 is None):
                return False
            if t1 is not None and (t1, t2) not in seen:
                seen.add((t1, t2))
                queue.append((t1, t2))
    return True


def is_finite_type(S: Subshift, m_max: int = 8) -> Verdict:
    """Whether the shift is of finite type; ``value`` is ``None`` if no memory up to ``m_max`` works."""
    _require_exact(S, "is_finite_type")
    if S.kind == "full":
        return Verdict(True, witness={"memory": 0})
    if S.kind == "sft":
        memory = max((len(f) for f in S.forbidden), default=1) - 1
        return Verdict(True, witness={"memory": memory})
    for m in range(1, m_max + 1):
        forbidden = [w for w in S.alphabet.words(m + 1) if not in_language(S, w)]
        candidate = Subshift(S.alphabet, "sft", forbidden=forbidden)
        if languages_equal(S.machine, candidate.machine):
            fmt = S.alphabet.format_word
            return Verdict(True, witness={"memory": m, "forbidden": [fmt(w) for w in forbidden]})
    return Verdict(None, exact=False, depth=m_max, witness={"checked_memory_up_to": m_max})


def lambda_l(S: Subshift, x, l: int) -> List[Word]:
    """The words of length ``l`` that can be put in front of ``x``."""
    if l < 1:
        raise ValueError("l must be positive")
    start = frozenset([S.machine.start])
    return [w for w in S.alphabet.words(l) if survives(S, start, x, head=w)]


def exact_state_space(S: Subshift) -> List[FrozenSet]:
    """States of the finite machine, refusing sizes too large for subset enumeration."""
    _require_exact(S, "exact analysis")
    states = S.machine.states
    if len(states) > EXACT_PROFILE_LIMIT:
        raise ValueError(
            f"follower automaton has {len(states)} states; exact lattice analysis supports at most {EXACT_PROFILE_LIMIT}"
        )
    return states


def all_configs(S: Subshift) -> List[FrozenSet]:
    """Every distinct intersection of follower sets with a nonempty result."""
    table = S.memo("all_configs")
    if "list" in table:
        return table["list"]
    states = exact_state_space(S)
    m = S.machine
    out = []
    seen = set()
    for r in range(1, len(states) + 1):
        for combo in itertools.combinations(states, r):
            c = m.canonical(combo)
            if c in seen:
                continue
            seen.add(c)
            if config_alive(S, c):
                out.append(c)
    table["list"] = out
    return out


def config_included(S: Subshift, small, big) -> bool:
    """Whether every word runnable from ``small`` is runnable from ``big``."""
    _require_exact(S, "config_included")
    if small is None or not config_alive(S, small):
        return True
    if big is None:
        return False
    m = S.machine
    seen = {(small, big)}
    queue = deque(seen)
    while queue:
        c1, c2 = queue.popleft()
        for a in S.alphabet:
            t1 = step_config(m, c1, a)
            if t1 is None or not config_alive(S, t1):
                continue
            t2 = step_config(m, c2, a)
            if t2 is None:
                return False
            if (t1, t2) not in seen:
                seen.add((t1, t2))
                queue.append((t1, t2))
    return True
