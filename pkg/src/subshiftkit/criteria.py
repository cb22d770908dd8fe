"""Decision procedures: topological freeness, cofinality, minimality, simplicity.

Quantifiers over all finite word sets B are reduced to the finitely many
follower configurations; quantifiers over all points x are reduced to
profiles.  The profile of a point y is the set of machine states from
which y can be read forever.  Profiles satisfy a backward recurrence
(``prof(a y) = {s : step(s, a) in prof(y)}``) whose solutions along a word
are not unique, so the profile graph also carries a breakpoint set of
states whose runs must still die: a sequence of profiles is the true one
exactly when that set empties infinitely often.
"""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .shifts import (
    NotExact,
    Subshift,
    all_configs,
    config_alive,
    config_included,
    contains_point,
    exact_state_space,
    follower_config,
    follower_nonempty,
    follower_unique_point,
    in_language,
    iter_points,
    step_config,
    survives,
    unique_point_of,
)
from .verdict import INF, CostReport, Verdict
from .words import EvPeriodicWord, Word

CROSS_CHECK_LEN = 8


def _fmt_words(S: Subshift, words) -> List[str]:
    return [S.alphabet.format_word(w) for w in words]


def _fmt_point(S: Subshift, x) -> str:
    return S.alphabet.format_point(x) if isinstance(x, EvPeriodicWord) else str(x)


def _config_for(S: Subshift, B) -> Tuple[FrozenSet, Tuple[Word, ...]]:
    cfg = follower_config(S, B)
    if cfg.dead:
        raise ValueError("some word of B is not in the language")
    return cfg.states, cfg.words


def _rep_words(S: Subshift, config) -> Tuple[Word, ...]:
    m = S.machine
    return tuple(sorted((m.rep[s] for s in config), key=S.alphabet.order_key))


# costs


def bridge_table(S: Subshift, config, max_len: Optional[int] = None) -> List[Tuple[FrozenSet, Word]]:
    """Configurations reachable from ``config`` with their shortest (then least) connecting words."""
    table = S.memo("bridge")
    key = (config, max_len)
    if key in table:
        return table[key]
    m = S.machine
    words = {config: ()}
    order = [(config, ())]
    queue = deque([config])
    while queue:
        c = queue.popleft()
        w = words[c]
        if max_len is not None and len(w) >= max_len:
            continue
        for a in S.alphabet:
            t = step_config(m, c, a)
            if t is not None and t not in words:
                words[t] = w + (a,)
                order.append((t, w + (a,)))
                queue.append(t)
    table[key] = order
    return order


def _horizon(S: Subshift) -> Optional[int]:
    return None if S.exact else S.depth_bound


def _cost_search(S: Subshift, config, x, max_cost: int, shifts: Iterable[int]):
    table = bridge_table(S, config, None if S.exact else max_cost)
    best = None
    for a in shifts:
        if best is not None and a >= best[0]:
            break
        if a > max_cost:
            break
        y = x.shift(a)
        for k, gamma in table:
            total = a + len(gamma)
            if best is not None and total >= best[0]:
                break
            if total > max_cost:
                break
            if survives(S, k, y):
                best = (total, a, gamma)
                break
    return best


def cost(S: Subshift, B, x, max_cost: int = 64) -> CostReport:
    """Least ``|alpha| + |gamma|`` with ``x = alpha y`` and ``beta gamma y`` in the shift for every beta in B."""
    config, words = _config_for(S, B)
    if S.exact:
        shifts = range(x.description_length)
        max_cost = 10**9
    else:
        shifts = range(max_cost + 1)
    best = _cost_search(S, config, x, max_cost, shifts)
    report = CostReport(_fmt_words(S, words), _fmt_point(S, x), None, exact=S.exact, depth=S.depth)
    if best is None:
        report.cost = INF
        if not S.exact:
            report.witness = {"searched_up_to_cost": max_cost}
        return report
    total, a, gamma = best
    report.cost = total
    report.alpha = S.alphabet.format_word(x.prefix(a))
    report.gamma = S.alphabet.format_word(gamma)
    return report


def thomsen_bridge(S: Subshift, B, x, max_cost: int = 64):
    """Least ``|gamma|`` with ``beta gamma x`` in the shift for all beta in B (no prefix deletion)."""
    config, _ = _config_for(S, B)
    best = _cost_search(S, config, x, max_cost if not S.exact else 10**9, [0])
    return INF if best is None else best[0]


# profile graph


class ProfileGraph:
    """Breakpoint-tracked profile graph of an exact shift.

    Nodes are ``(profile, pending, reset)``; an edge labelled ``a`` goes from
    a node with profile P to one with profile P' when P is the set of states
    whose ``a``-successor lies in P'.  ``pending`` holds the runs (started at
    the last reset) of states outside the profile; they must all die, and
    when they have, the node is a reset node.  Paths through reset nodes
    infinitely often carry exactly the true profile sequences of points.
    """

    def __init__(self, S: Subshift):
        self.S = S
        m = S.machine
        R = exact_state_space(S)
        self.full = frozenset(R)
        cands = []
        for r in range(1, len(R) + 1):
            for combo in itertools.combinations(R, r):
                c = frozenset(combo)
                if m.start in c and all(t in c for s in c for t in R if s < t):
                    cands.append(c)
        self.candidates = cands
        by_pre = defaultdict(list)
        for P2 in cands:
            for a in S.alphabet:
                P = frozenset(s for s in R if m.step(s, a) in P2)
                by_pre[(a, P)].append(P2)
        self.starts = [(P, self.full - P, False) for P in cands]
        adj: Dict[tuple, List[tuple]] = {}
        queue = deque(self.starts)
        for node in self.starts:
            adj[node] = []
        while queue:
            node = queue.popleft()
            P, O, _ = node
            row = []
            for a in S.alphabet:
                O1 = frozenset(t for t in (m.step(s, a) for s in O) if t is not None)
                for P2 in by_pre.get((a, P), ()):
                    nxt = (P2, O1, False) if O1 else (P2, self.full - P2, True)
                    row.append((a, nxt))
                    if nxt not in adj:
                        adj[nxt] = []
                        queue.append(nxt)
            adj[node] = row
        self.adj = adj
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(adj)
        for node, row in adj.items():
            for _, nxt in row:
                self.graph.add_edge(node, nxt)
        self.live, self.good = self.buchi(set(adj))
        self.true_profiles = {n[0] for n in self.live}

    def buchi(self, nodes) -> Tuple[set, set]:
        """Nodes with an infinite path inside ``nodes`` through reset nodes infinitely often."""
        sub = self.graph.subgraph(nodes)
        good = set()
        for comp in nx.strongly_connected_components(sub):
            nontrivial = len(comp) > 1 or any(sub.has_edge(n, n) for n in comp)
            if nontrivial and any(n[2] for n in comp):
                good |= comp
        live = set(good)
        rev = sub.reverse(copy=False)
        queue = deque(good)
        while queue:
            n = queue.popleft()
            for p in rev.successors(n):
                if p not in live:
                    live.add(p)
                    queue.append(p)
        return live, good

    def lasso(self, node, nodes=None) -> EvPeriodicWord:
        """Shortest labelled lasso from ``node`` that passes a reset node forever, inside ``nodes``."""
        nodes = self.live if nodes is None else nodes
        live, good = (self.live, self.good) if nodes is self.live else self.buchi(nodes)
        if node not in live:
            raise ValueError("node has no accepting continuation")
        target = self._bfs(node, lambda n: n in good and n[2], live)
        u, hub = target
        # shortest cycle from the reset node back to itself within its component
        best = None
        for a, nxt in self.adj[hub]:
            if nxt not in good:
                continue
            path = self._bfs(nxt, lambda n: n == hub, good)
            if path is not None:
                cand = (a,) + path[0]
                if best is None or len(cand) < len(best):
                    best = cand
        return EvPeriodicWord.of(u, best)

    def _bfs(self, start, goal, allowed):
        parent = {start: None}
        queue = deque([start])
        while queue:
            n = queue.popleft()
            if goal(n):
                word = []
                cur = n
                while parent[cur] is not None:
                    cur, a = parent[cur]
                    word.append(a)
                return tuple(reversed(word)), n
            for a, nxt in self.adj[n]:
                if nxt in allowed and nxt not in parent:
                    parent[nxt] = (n, a)
                    queue.append(nxt)
        return None


def profile_graph(S: Subshift) -> ProfileGraph:
    table = S.memo("profile_graph")
    if "graph" not in table:
        table["graph"] = ProfileGraph(S)
    return table["graph"]


def bridge_length(S: Subshift, config, profile) -> Optional[Tuple[int, Word]]:
    for k, gamma in bridge_table(S, config):
        if k <= profile:
            return len(gamma), gamma
    return None


class ConfigAnalysis:
    """Cost structure of one follower configuration over all points of an exact shift."""

    def __init__(self, S: Subshift, config):
        self.S = S
        self.config = config
        g = profile_graph(S)
        self.g = g
        self.bridge = {}
        for P in g.true_profiles:
            b = bridge_length(S, config, P)
            self.bridge[P] = float("inf") if b is None else b[0]
        self.inf_nodes = {n for n in g.live if self.bridge[n[0]] == float("inf")}
        live_inf, _ = g.buchi(self.inf_nodes)
        self.cofinal = not live_inf
        self.infinite_cost_nodes = live_inf
        sub = g.graph.subgraph(self.inf_nodes)
        self.loop_nodes = set()
        for comp in nx.strongly_connected_components(sub):
            if len(comp) > 1 or any(sub.has_edge(n, n) for n in comp):
                self.loop_nodes |= comp
        self.thomsen = max(self.bridge[P] for P in g.true_profiles)
        if self.loop_nodes:
            self.sup = float("inf")
            self.values = None
        else:
            self.values = self._values()
            self.sup = max(self.values[n] for n in g.starts if n in g.live)

    def _values(self) -> Dict[tuple, float]:
        g = self.g
        V = {n: self.bridge[n[0]] for n in g.live}
        changed = True
        while changed:
            changed = False
            for n in g.live:
                succ = [V[w] for _, w in g.adj[n] if w in g.live]
                new = min(self.bridge[n[0]], 1 + max(succ))
                if new != V[n]:
                    V[n] = new
                    changed = True
        return V

    def sup_witness(self) -> EvPeriodicWord:
        """A point whose cost equals the finite supremum."""
        g, V = self.g, self.values
        node = next(n for n in g.starts if n in g.live and V[n] == self.sup)
        t = self.sup
        letters = []
        while t > 0:
            a, node = next((a, w) for a, w in g.adj[node] if w in g.live and V[w] >= t - 1)
            letters.append(a)
            t -= 1
        return g.lasso(node).prepend(letters)

    def infinite_cost_witness(self) -> EvPeriodicWord:
        node = min(self.infinite_cost_nodes, key=lambda n: (n not in self.g.starts, repr(n)))
        return self.g.lasso(node, self.infinite_cost_nodes)

    def growth_witness(self) -> Tuple[Word, EvPeriodicWord]:
        """A loop of infinite-bridge profiles and a tail: costs of loop^N tail grow without bound."""
        g = self.g
        node = min((n for n in self.loop_nodes if n in g.live), key=repr)
        return self._loop(node), g.lasso(node)

    def _loop(self, node):
        g = self.g
        for a, nxt in g.adj[node]:
            if nxt in self.loop_nodes:
                path = g._bfs(nxt, lambda n: n == node, self.loop_nodes)
                if path is not None:
                    return (a,) + path[0]
        raise ValueError("node is not on a loop")


def analysis(S: Subshift, config) -> ConfigAnalysis:
    table = S.memo("analysis")
    if config not in table:
        table[config] = ConfigAnalysis(S, config)
    return table[config]


def _enumerated_points(S: Subshift, max_len: int) -> List[EvPeriodicWord]:
    table = S.memo("points")
    if max_len not in table:
        table[max_len] = list(iter_points(S, frozenset([S.machine.start]), max_len))
    return table[max_len]


def _cost_value(S: Subshift, config, x):
    best = _cost_search(S, config, x, 10**9, range(x.description_length))
    return INF if best is None else best[0]


def sup_cost(S: Subshift, B, cross_check_len: int = CROSS_CHECK_LEN, max_cost: int = 64) -> CostReport:
    """Supremum of the cost of B over all points."""
    if not S.exact:
        return _bounded_sup_cost(S, B, max_cost)
    config, words = _config_for(S, B)
    if not config_alive(S, config):
        raise ValueError("the follower set of B is empty")
    an = analysis(S, config)
    Bf = _fmt_words(S, words)
    report = CostReport(Bf, "sup", None)
    # cross-check against every small eventually periodic point
    best_point, best = None, -1
    for x in _enumerated_points(S, cross_check_len):
        c = _cost_value(S, config, x)
        c = float("inf") if c == INF else c
        if c > best:
            best, best_point = c, x
    if best > an.sup:
        raise AssertionError(f"enumerated cost {best} exceeds computed supremum {an.sup}")
    if an.sup == float("inf"):
        report.cost = INF
        if not an.cofinal:
            x = best_point if best == float("inf") else an.infinite_cost_witness()
            report.witness = {"x": _fmt_point(S, x)}
            report.replay = [{"op": "cost", "B": Bf, "x": _fmt_point(S, x), "expect": INF}]
        else:
            loop, tail = an.growth_witness()
            report.witness = {"loop": S.alphabet.format_word(loop), "tail": _fmt_point(S, tail)}
            report.replay = [
                {"op": "cost", "B": Bf, "x": _fmt_point(S, tail.prepend(loop * n)), "at_least": n}
                for n in (1, 2, 3)
            ]
        return report
    x = best_point if best == an.sup else an.sup_witness()
    one = cost(S, words, x)
    if one.cost != an.sup:
        raise AssertionError(f"witness {x} has cost {one.cost}, expected {an.sup}")
    report.cost = int(an.sup)
    report.alpha, report.gamma = one.alpha, one.gamma
    report.witness = {"x": _fmt_point(S, x)}
    report.replay = [{"op": "cost", "B": Bf, "x": _fmt_point(S, x), "expect": int(an.sup)}]
    return report


def _bounded_sup_cost(S: Subshift, B, max_cost: int) -> CostReport:
    config, words = _config_for(S, B)
    Bf = _fmt_words(S, words)
    report = CostReport(Bf, "sup", None, exact=False, depth=S.depth)
    growth = []
    for m, x in S.rule.probes():
        c = cost(S, words, x, max_cost).cost
        growth.append({"m": m, "x": _fmt_point(S, x), "cost": c})
    costs = [g["cost"] for g in growth]
    if len(costs) >= 3 and all(c != INF for c in costs) and all(b > a for a, b in zip(costs, costs[1:])):
        report.cost = INF
        report.witness = {"growth": growth}
        report.replay = [
            {"op": "cost", "B": Bf, "x": g["x"], "at_least": g["cost"]} for g in growth
        ]
        return report
    best, best_x = -1, None
    for x in iter_points(S, frozenset([S.machine.start]), 5):
        c = cost(S, words, x, max_cost).cost
        c = float("inf") if c == INF else c
        if c > best:
            best, best_x = c, x
    for g in growth:
        c = float("inf") if g["cost"] == INF else g["cost"]
        if c > best:
            best, best_x = c, g["x"]
    report.cost = INF if best == float("inf") else best
    report.witness = {"x": best_x if isinstance(best_x, str) else _fmt_point(S, best_x), "growth": growth}
    return report


def thomsen_sup(S: Subshift, B, cross_check_len: int = CROSS_CHECK_LEN) -> CostReport:
    """Supremum over points of the shortest bridge with no prefix deletion."""
    if not S.exact:
        raise NotExact("thomsen_sup needs an exact (full, sft or sofic) shift")
    config, words = _config_for(S, B)
    if not config_alive(S, config):
        raise ValueError("the follower set of B is empty")
    an = analysis(S, config)
    Bf = _fmt_words(S, words)
    report = CostReport(Bf, "sup", None, alpha="")
    start = frozenset([S.machine.start])
    found = None
    for x in _enumerated_points(S, cross_check_len):
        b = thomsen_bridge(S, words, x)
        b = float("inf") if b == INF else b
        if b > an.thomsen:
            raise AssertionError(f"bridge {b} at {x} exceeds computed supremum {an.thomsen}")
        if b == an.thomsen and found is None:
            found = x
    if found is None:
        g = an.g
        node = next(n for n in g.live if an.bridge[n[0]] == an.thomsen)
        found = g.lasso(node)
    value = INF if an.thomsen == float("inf") else int(an.thomsen)
    report.cost = value
    report.witness = {"x": _fmt_point(S, found)}
    report.replay = [{"op": "bridge", "B": Bf, "x": _fmt_point(S, found), "expect": value}]
    if value != INF:
        b = bridge_length(S, config, _profile(S, found))
        report.gamma = S.alphabet.format_word(b[1])
    return report


def _profile(S: Subshift, y) -> FrozenSet:
    return frozenset(s for s in S.machine.states if survives(S, frozenset([s]), y))


# cofinality family


def _bounded_sample(S: Subshift):
    words = [w for w in S.alphabet.words_up_to(2) if w and in_language(S, w)]
    points = list(iter_points(S, frozenset([S.machine.start]), 4))
    return words, points


def is_cofinal(S: Subshift) -> Verdict:
    """Every word reaches every point at finite cost."""
    if not S.exact:
        return _bounded_cofinal(S, collective=False)
    for s in exact_state_space(S):
        an = analysis(S, frozenset([s]))
        if not an.cofinal:
            return _cofinal_failure(S, an)
    return Verdict(True)


def is_collectively_cofinal(S: Subshift) -> Verdict:
    """Every finite word set with a nonempty joint follower set reaches every point at finite cost."""
    if not S.exact:
        return _bounded_cofinal(S, collective=True)
    for c in all_configs(S):
        an = analysis(S, c)
        if not an.cofinal:
            return _cofinal_failure(S, an)
    return Verdict(True)


def _cofinal_failure(S: Subshift, an: ConfigAnalysis) -> Verdict:
    words = _rep_words(S, an.config)
    x = None
    for y in _enumerated_points(S, CROSS_CHECK_LEN):
        if _cost_value(S, an.config, y) == INF:
            x = y
            break
    if x is None:
        x = an.infinite_cost_witness()
    Bf, xf = _fmt_words(S, words), _fmt_point(S, x)
    return Verdict(
        False,
        witness={"B": Bf, "x": xf},
        replay=[{"op": "cost", "B": Bf, "x": xf, "expect": INF}],
    )


def _bounded_cofinal(S: Subshift, collective: bool) -> Verdict:
    words, points = _bounded_sample(S)
    sets = [[w] for w in words]
    if collective:
        sets += [list(p) for p in itertools.combinations(words, 2)]
    for B in sets:
        if not follower_nonempty(follower_config(S, B)):
            continue
        for x in points:
            r = cost(S, B, x)
            if r.cost == INF:
                return Verdict(
                    False,
                    exact=False,
                    depth=S.depth,
                    witness={"B": r.B, "x": r.x, "searched_up_to_cost": 64},
                    replay=[{"op": "cost", "B": r.B, "x": r.x, "expect": INF}],
                )
    return Verdict(True, exact=False, depth=S.depth, witness={"word_sets": len(sets), "points": len(points)})


def is_strongly_cofinal(S: Subshift) -> Verdict:
    """Each single word reaches all points within one uniform cost bound."""
    if not S.exact:
        return _bounded_sup(S, collective=False)
    for s in exact_state_space(S):
        an = analysis(S, frozenset([s]))
        if an.sup == float("inf"):
            return _sup_failure(S, an)
    return Verdict(True)


def is_hyper_cofinal(S: Subshift) -> Verdict:
    """Each word set with nonempty joint follower set reaches all points within a uniform bound."""
    if not S.exact:
        return _bounded_sup(S, collective=True)
    for c in all_configs(S):
        an = analysis(S, c)
        if an.sup == float("inf"):
            return _sup_failure(S, an)
    return Verdict(True)


def _sup_failure(S: Subshift, an: ConfigAnalysis) -> Verdict:
    words = _rep_words(S, an.config)
    r = sup_cost(S, words)
    return Verdict(False, witness={"B": r.B, **r.witness}, replay=r.replay)


def _bounded_sup(S: Subshift, collective: bool) -> Verdict:
    words, _ = _bounded_sample(S)
    sets = [[w] for w in words]
    if collective:
        sets += [list(p) for p in itertools.combinations(words, 2)]
    for B in sets:
        if not follower_nonempty(follower_config(S, B)):
            continue
        r = sup_cost(S, B)
        if r.cost == INF:
            return Verdict(False, exact=False, depth=S.depth, witness={"B": r.B, **r.witness}, replay=r.replay)
    return Verdict(True, exact=False, depth=S.depth, witness={"word_sets": len(sets)})


# freeness and points


def _memory_one_free(S: Subshift) -> Optional[bool]:
    """Circuit-exit test on the letter graph of an SFT with memory at most one."""
    if S.kind == "full":
        return len(S.alphabet) > 1
    if S.kind != "sft" or max((len(f) for f in S.forbidden), default=1) > 2:
        return None
    singles = {f[0] for f in S.forbidden if len(f) == 1}
    pairs = {f for f in S.forbidden if len(f) == 2}
    g = nx.DiGraph()
    g.add_nodes_from(a for a in S.alphabet if a not in singles)
    for a in list(g.nodes):
        for b in list(g.nodes):
            if (a, b) not in pairs:
                g.add_edge(a, b)
    while True:
        dead = [n for n in g.nodes if g.out_degree(n) == 0]
        if not dead:
            break
        g.remove_nodes_from(dead)
    for comp in nx.strongly_connected_components(g):
        nontrivial = len(comp) > 1 or any(g.has_edge(n, n) for n in comp)
        if nontrivial and all(g.out_degree(n) == 1 for n in comp):
            return False
    return True


def is_topologically_free(S: Subshift, depth: Optional[int] = None) -> Verdict:
    """No follower-set intersection is a single periodic point."""
    if not S.exact:
        return _bounded_top_free(S, depth or S.depth_bound)
    verdict = Verdict(True)
    for c in all_configs(S):
        p = unique_point_of(S, c)
        if p is not None and p.is_periodic:
            words = _rep_words(S, c)
            Bf = _fmt_words(S, words)
            verdict = Verdict(
                False,
                witness={"B": Bf, "gamma": S.alphabet.format_word(p.period)},
                replay=[{"op": "follower_unique_point", "B": Bf, "expect": _fmt_point(S, p)}],
            )
            break
    fast = _memory_one_free(S)
    if fast is not None and fast != verdict.value:
        raise AssertionError("circuit-exit test disagrees with the follower-configuration test")
    return verdict


def _bounded_top_free(S: Subshift, depth: int, circuit_len: int = 4, word_len: int = 3) -> Verdict:
    T = S.with_depth(depth)
    m = T.machine
    start = frozenset([m.start])
    words = [w for w in T.alphabet.words_up_to(word_len) if in_language(T, w)]
    checked = 0
    for n in range(1, circuit_len + 1):
        for gamma in T.alphabet.words(n):
            p = EvPeriodicWord.periodic(gamma)
            if p.period != gamma or not contains_point(T, p):
                continue
            # the hardest word set for gamma: every short word that gamma^inf may follow
            B = [w for w in words if survives(T, start, p, head=w)]
            config = m.canonical(follower_config(T, B).states)
            other = None
            for y in iter_points(T, config, 6):
                if y != p:
                    other = y
                    break
            checked += 1
            if other is None:
                Bf = _fmt_words(T, B)
                return Verdict(False, exact=False, depth=depth,
                               witness={"B": Bf, "gamma": T.alphabet.format_word(gamma)})
    return Verdict(True, exact=False, depth=depth,
                   witness={"circuits_checked": checked, "circuit_len": circuit_len, "word_len": word_len})


def has_non_ev_periodic_point(S: Subshift) -> Verdict:
    """Whether the shift contains a point that is not eventually periodic."""
    if not S.exact:
        return _growth_test(S)
    m = S.machine
    g = nx.DiGraph()
    g.add_nodes_from(m.states)
    for s in m.states:
        for a in S.alphabet:
            t = m.step(s, a)
            if t is not None:
                g.add_edge(s, t)
    for comp in sorted(nx.strongly_connected_components(g), key=lambda c: min(m.order[s] for s in c)):
        for s in sorted(comp, key=m.order.get):
            inside = [a for a in S.alphabet if m.step(s, a) in comp]
            if len(inside) < 2:
                continue
            cycles = []
            for a in inside[:2]:
                cycles.append((a,) + _path_within(S, m.step(s, a), s, comp))
            rep = m.rep[s]
            u, v = cycles
            checks = [rep + u + v, rep + v + u, rep + u + u + v + v, rep + v + v + u + u]
            return Verdict(
                True,
                witness={"state_word": S.alphabet.format_word(rep), "cycles": _fmt_words(S, cycles)},
                replay=[{"op": "in_language", "word": S.alphabet.format_word(w), "expect": True} for w in checks],
            )
    return Verdict(False)


def _path_within(S: Subshift, src, dst, comp) -> Word:
    m = S.machine
    parent = {src: None}
    queue = deque([src])
    while queue:
        s = queue.popleft()
        if s == dst:
            word = []
            while parent[s] is not None:
                s, a = parent[s]
                word.append(a)
            return tuple(reversed(word))
        for a in S.alphabet:
            t = m.step(s, a)
            if t in comp and t not in parent:
                parent[t] = (s, a)
                queue.append(t)
    raise ValueError("no path inside component")


def _growth_test(S: Subshift, n: int = 16) -> Verdict:
    n = min(n, S.depth_bound)
    m = S.machine
    counts = []
    layer = {m.start: 1}
    for _ in range(n):
        nxt = defaultdict(int)
        for s, k in layer.items():
            for a in S.alphabet:
                t = m.step(s, a)
                if t is not None:
                    nxt[t] += k
        layer = nxt
        counts.append(sum(layer.values()))
    half = counts[n // 2 - 1]
    value = counts[-1] > 2 * half + 2
    return Verdict(value, exact=False, depth=n, witness={"word_counts": counts})


# minimality and simplicity


def is_minimal(S: Subshift) -> Verdict:
    col = is_collectively_cofinal(S)
    strong = is_strongly_cofinal(S)
    exact = col.exact and strong.exact
    depth = S.depth
    if col.value is False:
        v = Verdict(False, exact, depth, {"failed": "collectively cofinal", **col.witness}, col.replay)
    elif strong.value is False:
        v = Verdict(False, exact, depth, {"failed": "strongly cofinal", **strong.witness}, strong.replay)
    else:
        v = Verdict(True if col.value and strong.value else None, exact, depth)
    if S.exact:
        hyper = is_hyper_cofinal(S)
        if hyper.value != v.value:
            raise AssertionError("hyper cofinality disagrees with collective and strong cofinality")
    return v


def is_simple(S: Subshift) -> Verdict:
    hyper = is_hyper_cofinal(S)
    points = has_non_ev_periodic_point(S)
    exact = hyper.exact and points.exact
    if hyper.value is False:
        v = Verdict(False, exact, S.depth, {"failed": "hyper cofinal", **hyper.witness}, hyper.replay)
    elif points.value is False:
        v = Verdict(False, exact, S.depth, {"failed": "no point outside the eventually periodic ones"})
    else:
        v = Verdict(True if hyper.value and points.value else None, exact, S.depth)
    if S.exact:
        other = (
            is_collectively_cofinal(S).value
            and is_strongly_cofinal(S).value
            and is_topologically_free(S).value
        )
        if bool(other) != bool(v.value):
            raise AssertionError("the two characterizations of simplicity disagree")
    return v


def find_crazy_inclusion(S: Subshift, B, budget: Optional[int] = None) -> Tuple[Optional[Tuple[str, str]], dict]:
    """Shortest words mu, nu with ``F_mu`` inside the joint follower set of ``B nu``."""
    if not S.exact:
        raise NotExact("find_crazy_inclusion needs an exact (full, sft or sofic) shift")
    config, _ = _config_for(S, B)
    m = S.machine
    mus = [(s, m.rep[s]) for s in m.states]
    nus = bridge_table(S, config)
    key = S.alphabet.key
    pairs = sorted(
        ((s, mu, k, nu) for s, mu in mus for k, nu in nus),
        key=lambda t: (len(t[1]) + len(t[3]), len(t[1]), key(t[1]), key(t[3])),
    )
    tried = 0
    for s, mu, k, nu in pairs:
        if budget is not None and len(mu) + len(nu) > budget:
            return None, {"exhausted": False, "pairs_tried": tried, "budget": budget}
        tried += 1
        if config_included(S, frozenset([s]), k):
            fmt = S.alphabet.format_word
            return (fmt(mu), fmt(nu)), {"exhausted": False, "pairs_tried": tried}
    return None, {"exhausted": True, "pairs_tried": tried}


# witness replay


def replay(S: Subshift, steps: Sequence[dict]) -> List[dict]:
    """Re-run witness steps through the public functions; returns the failing steps."""
    A = S.alphabet
    failures = []
    for step in steps:
        op = step["op"]
        if op == "in_language":
            got = in_language(S, A.parse_word(step["word"]))
        elif op == "left_extendable":
            w = A.parse_word(step["word"])
            got = any(in_language(S, (a,) + w) for a in A)
            if not in_language(S, w):
                got = None
        elif op == "contains_point":
            got = contains_point(S, A.parse_point(step["point"]))
        elif op == "follower_unique_point":
            cfg = follower_config(S, [A.parse_word(b) for b in step["B"]])
            p = follower_unique_point(cfg)
            got = None if p is None else A.format_point(p)
        elif op == "cost":
            got = cost(S, [A.parse_word(b) for b in step["B"]], A.parse_point(step["x"])).cost
        elif op == "bridge":
            got = thomsen_bridge(S, [A.parse_word(b) for b in step["B"]], A.parse_point(step["x"]))
        else:
            raise ValueError(f"unknown replay op {op!r}")
        if "expect" in step:
            ok = got == step["expect"]
        else:
            bound = step["at_least"]
            ok = got == INF or (isinstance(got, int) and got >= bound)
        if not ok:
            failures.append({**step, "got": got})
    return failures
