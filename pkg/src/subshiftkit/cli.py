"""Command-line front end.

Every command prints one JSON report document (stable key order, no
timestamps).  Exit status: 0 computed, 1 a property check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Tuple

from . import __version__
from . import criteria as crit
from .circuits import circuit_report, exit_of, is_circuit, strong_exit
from .oracles import FAMILIES, NAMED_POINTS
from .partial_action import apply, domain_contains, sample_points
from .shifts import (
    Subshift,
    builtin,
    follower_config,
    follower_nonempty,
    follower_unique_point,
    in_language,
    is_surjective,
    lambda_l,
    load_spec,
    survives,
)
from .spectrum import limit_ball, to_dot, validate_element, xi_ball
from .words import EvPeriodicWord, FreeGroupElement

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def parse_point(S: Subshift, text: str):
    if text in NAMED_POINTS:
        return NAMED_POINTS[text]
    return S.alphabet.parse_point(text)


def _document(command: str, S: Optional[Subshift], result) -> dict:
    doc = {"tool": "subshiftkit", "version": __version__, "command": command, "result": result}
    if S is not None:
        doc["shift"] = {"name": S.name, **S.to_spec()}
        doc["depth"] = S.depth
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# commands


def cmd_lang(args):
    S = load_spec(args.spec)
    w = S.alphabet.parse_word(args.word)
    return S, {"word": args.word, "in_language": in_language(S, w)}, True


def cmd_follower(args):
    S = load_spec(args.spec)
    cfg = follower_config(S, [S.alphabet.parse_word(b) for b in args.B])
    result = {"B": [S.alphabet.format_word(w) for w in cfg.words], "config": cfg.describe()}
    if cfg.dead:
        result.update(nonempty=False, unique_point=None)
    else:
        nonempty = follower_nonempty(cfg)
        result["nonempty"] = nonempty
        if S.exact and nonempty:
            p = follower_unique_point(cfg)
            result["unique_point"] = None if p is None else S.alphabet.format_point(p)
    return S, result, True


def cmd_circuit(args):
    S = load_spec(args.spec)
    return S, circuit_report(S, S.alphabet.parse_word(args.gamma)).to_dict(S.alphabet), True


def cmd_paction(args):
    S = load_spec(args.spec)
    g = S.alphabet.parse_element(args.g)
    x = parse_point(S, args.x)
    y = apply(S, g, x)
    result = {
        "g": S.alphabet.format_element(g),
        "x": str(x) if not isinstance(x, EvPeriodicWord) else S.alphabet.format_point(x),
        "in_domain": y is not None,
        "image": None if y is None else S.alphabet.format_point(y),
        "in_range_of_g": domain_contains(S, g, x),
    }
    return S, result, True


def _ball_result(S, ball, dot_path):
    check = validate_element(ball, S)
    result = {"ball": ball.to_dict(S.alphabet), "validation": check.to_dict()}
    if dot_path:
        with open(dot_path, "w") as fh:
            fh.write(to_dot(ball, S.alphabet))
        result["dot"] = dot_path
    return result, check.value is not False


def cmd_spectrum(args):
    S = load_spec(args.spec)
    ball = xi_ball(S, parse_point(S, args.x), args.radius)
    result, ok = _ball_result(S, ball, args.dot)
    return S, result, ok


def cmd_limit(args):
    S = load_spec(args.spec)
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; built-in: {sorted(FAMILIES)}")
    fam = FAMILIES[args.family]
    ball, report = limit_ball(S, fam.point, args.radius, k_max=args.k_max, limit=fam.limit, descriptor=fam.name)
    if ball is None:
        return S, {"report": report, "ball": None}, False
    result, ok = _ball_result(S, ball, args.dot)
    result["report"] = report
    return S, result, ok


CRITERIA_GROUPS = {
    "top-free": ["top_free"],
    "minimal": ["minimal"],
    "simple": ["simple"],
    "cofinality": ["cofinal", "strongly_cofinal", "collectively_cofinal", "hyper_cofinal"],
}

CRITERIA: Dict[str, Callable] = {
    "surjective": is_surjective,
    "top_free": crit.is_topologically_free,
    "non_ev_periodic_point": crit.has_non_ev_periodic_point,
    "cofinal": crit.is_cofinal,
    "strongly_cofinal": crit.is_strongly_cofinal,
    "collectively_cofinal": crit.is_collectively_cofinal,
    "hyper_cofinal": crit.is_hyper_cofinal,
    "minimal": crit.is_minimal,
    "simple": crit.is_simple,
}


def cmd_criteria(args):
    S = load_spec(args.spec)
    names = CRITERIA_GROUPS[args.only] if args.only else list(CRITERIA)
    result = {}
    ok = True
    for name in names:
        v = CRITERIA[name](S)
        d = v.to_dict()
        if v.replay:
            failures = crit.replay(S, v.replay)
            d["replay_failures"] = failures
            ok = ok and not failures
        result[name] = d
    return S, result, ok


def cmd_cost(args):
    S = load_spec(args.spec)
    B = [S.alphabet.parse_word(b) for b in args.B]
    if args.sup:
        r = crit.sup_cost(S, B)
    else:
        r = crit.cost(S, B, parse_point(S, args.x))
    d = r.to_dict()
    ok = True
    if r.replay:
        failures = crit.replay(S, r.replay)
        d["replay_failures"] = failures
        ok = not failures
    return S, d, ok


# reproduction suite


Check = Tuple[str, object, object]


def _even_strong_exits() -> List[Check]:
    S = builtin("even")
    checks = []
    for n in range(1, 9):
        for gamma in S.alphabet.words(n):
            if not is_circuit(S, gamma):
                continue
            y = strong_exit(S, gamma)
            ok = y is not None and not y.starts_with(gamma) and all(
                survives(S, frozenset([S.machine.start]), y, head=gamma * k) for k in range(1, 6)
            )
            checks.append((f"strong exit of {S.alphabet.format_word(gamma)}", True, ok))
    return checks


def _even_isolated_point() -> List[Check]:
    S = builtin("even")
    p = follower_unique_point(follower_config(S, [("0", "1"), ("0", "1", "1")]))
    return [("follower_unique_point {01, 011}", "(1)", None if p is None else S.alphabet.format_point(p))]


def _even_not_topfree() -> List[Check]:
    S = builtin("even")
    v = crit.is_topologically_free(S)
    return [
        ("topologically free", False, v.value),
        ("witness circuit", "1", v.witness.get("gamma")),
        ("witness replays", [], crit.replay(S, v.replay)),
    ]


def _even_not_minimal() -> List[Check]:
    S = builtin("even")
    v = crit.is_minimal(S)
    return [
        ("minimal", False, v.value),
        ("simple", False, crit.is_simple(S).value),
        ("witness replays", [], crit.replay(S, v.replay)),
    ]


def _even_anomalous_xi() -> List[Check]:
    S = builtin("even")
    fam = FAMILIES["even-odd-ones"]
    ball, report = limit_ball(S, fam.point, 2, limit=fam.limit, descriptor=fam.name)
    inverse_zero = S.alphabet.parse_element("0^-1")
    exact = xi_ball(S, EvPeriodicWord.periodic(("1",)), 2)
    return [
        ("stabilized within k <= 10", True, ball is not None and report["index"] <= 10),
        ("stem", "(1)", None if ball is None else S.alphabet.format_point(ball.stem_point())),
        ("0^-1 in limit ball", False, ball is not None and inverse_zero in ball.members),
        ("0^-1 in xi ball of (1)", True, inverse_zero in exact.members),
        ("limit ball validates", True, ball is not None and validate_element(ball, S).value),
        ("balls differ", True, ball is not None and ball.members != exact.members),
    ]


def pow2_distance(n: int) -> int:
    return min(abs(n - 2**j) for j in range(n.bit_length() + 1))


def _pow2_unbounded_cost() -> List[Check]:
    S = builtin("pow2")
    table = []
    for n in range(1, 65):
        x = EvPeriodicWord.of(("1",) * n, ("0",))
        table.append(crit.cost(S, [("0",)], x).cost == pow2_distance(n))
    r = crit.sup_cost(S, [("0",)])
    growth = r.witness.get("growth", [])
    return [
        ("cost table n = 1..64 matches distance to a power of two", True, all(table)),
        ("sup cost", "inf", r.cost),
        ("growth at 3 * 2^(m-1)", True, len(growth) == 6 and all(g["cost"] >= 2 ** (g["m"] - 1) for g in growth)),
        ("bounded confidence", False, r.exact),
    ]


def _markov3_simple_nonthomsen() -> List[Check]:
    S = builtin("markov3")
    surj = is_surjective(S)
    th = crit.thomsen_sup(S, [("2",)])
    return [
        ("simple", True, crit.is_simple(S).value),
        ("surjective", False, surj.value),
        ("non left-extendable word", "1", surj.witness.get("non_left_extendable")),
        ("thomsen sup {2}", "inf", th.cost),
        ("thomsen witness", "1(2)", th.witness.get("x")),
    ]


def _ex14_cond_i() -> List[Check]:
    S = builtin("ex14")
    z = NAMED_POINTS["thue-morse"]
    tail = z.shift(1)
    aperiodic = all(any(tail.letter(i) != tail.letter(i + p) for i in range(256)) for p in range(1, 65))
    lam_z = ["".join(w) for w in lambda_l(S, z, 1)]
    samples = [x for x in sample_points(S, 20) if x != z]
    lam_x = all(["".join(w) for w in lambda_l(S, x, 1)] == ["1", "2"] for x in samples)
    tf = crit.is_topologically_free(S, depth=32)
    return [
        ("Thue-Morse tail has no period <= 64", True, aperiodic),
        ("Lambda_1(z)", ["0", "1", "2"], lam_z),
        ("Lambda_1(x) = {1, 2} on 20 sampled x", True, len(samples) == 20 and lam_x),
        ("topologically free", True, tf.value),
        ("bounded confidence depth", 32, None if tf.exact else tf.depth),
    ]


def _sft001_exits() -> List[Check]:
    S = builtin("sft001")
    e0 = exit_of(S, ("0",))
    e00 = exit_of(S, ("0", "0"))
    return [
        ("exit of 0 exists", True, e0 is not None),
        ("exit of 00", None, None if e00 is None else S.alphabet.format_point(e00)),
    ]


REPRODUCE: Dict[str, Callable[[], List[Check]]] = {
    "even-strong-exits": _even_strong_exits,
    "even-isolated-point": _even_isolated_point,
    "even-not-topfree": _even_not_topfree,
    "even-not-minimal": _even_not_minimal,
    "even-anomalous-xi": _even_anomalous_xi,
    "pow2-unbounded-cost": _pow2_unbounded_cost,
    "markov3-simple-nonthomsen": _markov3_simple_nonthomsen,
    "ex14-condI": _ex14_cond_i,
    "sft001-exits": _sft001_exits,
}


def reproduce(example_id: str) -> dict:
    if example_id not in REPRODUCE:
        raise InputError(f"unknown example id {example_id!r}; known: {sorted(REPRODUCE)}")
    checks = [
        {"name": name, "expected": expected, "got": got, "ok": expected == got}
        for name, expected, got in REPRODUCE[example_id]()
    ]
    return {"id": example_id, "passed": all(c["ok"] for c in checks), "checks": checks}


def cmd_reproduce(args):
    result = reproduce(args.example_id)
    return None, result, result["passed"]


# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subshiftkit", description="Analyse one-sided subshifts and their partial actions.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def spec_cmd(name, func, help_text):
        q = sub.add_parser(name, help=help_text)
        q.add_argument("spec", help="JSON spec file or built-in shift name")
        q.set_defaults(func=func)
        return q

    q = spec_cmd("lang", cmd_lang, "language membership of a word")
    q.add_argument("word")
    q = spec_cmd("follower", cmd_follower, "follower configuration of a word set")
    q.add_argument("B", nargs="*")
    q = spec_cmd("circuit", cmd_circuit, "exit and strong exit of a circuit")
    q.add_argument("gamma")
    q = spec_cmd("paction", cmd_paction, "apply theta_g to a point")
    q.add_argument("g")
    q.add_argument("x")
    q = spec_cmd("spectrum", cmd_spectrum, "truncated spectrum element of a point")
    q.add_argument("x")
    q.add_argument("--radius", type=int, required=True)
    q.add_argument("--dot")
    q = spec_cmd("limit", cmd_limit, "limit of balls along a built-in point family")
    q.add_argument("--family", required=True)
    q.add_argument("--radius", type=int, required=True)
    q.add_argument("--k-max", type=int, default=50)
    q.add_argument("--dot")
    q = spec_cmd("criteria", cmd_criteria, "freeness, cofinality, minimality and simplicity")
    q.add_argument("--only", choices=sorted(CRITERIA_GROUPS))
    q = spec_cmd("cost", cmd_cost, "cost of a word set at a point, or its supremum")
    q.add_argument("--B", nargs="+", required=True)
    group = q.add_mutually_exclusive_group(required=True)
    group.add_argument("--x")
    group.add_argument("--sup", action="store_true")
    q = sub.add_parser("reproduce", help="run a registered worked example")
    q.add_argument("example_id", choices=sorted(REPRODUCE))
    q.set_defaults(func=cmd_reproduce)
    return p


def run(argv: Optional[List[str]] = None) -> Tuple[int, Optional[str]]:
    """Run one command; returns the exit code and the report text (``None`` on input errors)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), None
    try:
        S, result, ok = args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT, None
    text = dumps(_document(args.command, S, result))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), text


def main(argv: Optional[List[str]] = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
