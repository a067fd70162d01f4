"""Command line frontend.

Subcommands:

* curves    - emit the bound curves for one alphabet size as CSV
* verify    - exhaustively certify a strategy, write a JSON report
* zcap      - solve the zero-error covering program for a channel
* session   - run and print a single feedback session
* campaign  - run a batch of the above from a config file

Exit codes: 0 success, 2 counterexample, 3 inconclusive search, 1 usage or
config error.  Reports carry no timestamps; wall times go to a sidecar
".log" file so reruns reproduce outputs byte for byte.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
import time
from typing import Optional

from .bounds import (
    binary_symmetric_capacity,
    capacity_upper_bound,
    degree_two_bound,
    lower_envelope,
    min_max_output_mass,
    modified_rubber_bound,
    zero_error_capacity,
)
from .channels import (
    make_inverse_z_channel,
    make_star_channel,
    make_symmetric_channel,
    make_unidirectional_pair,
    make_z_channel,
)
from .session import GreedyAdversary, PassiveAdversary, PathAdversary, run_session
from .strategies import (
    identity_strategy,
    modified_rubber_strategy,
    unidirectional_rubber_strategy,
    zero_error_unidirectional_strategy,
)
from .verifier import DEFAULT_NODE_BUDGET, verify_successful

_GRAPH_CHANNELS = {
    "z": make_z_channel,
    "invz": make_inverse_z_channel,
    "sym": make_symmetric_channel,
    "star": make_star_channel,
}

_STRATEGY_NAMES = ("modified_rubber", "zero_error", "unidirectional_rubber", "identity")


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for counterexamples, so usage errors exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write_text(path: str, text: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _build_strategy(name: str, q: int, n: int, t: int, r: Optional[int], side: str):
    if name == "modified_rubber":
        if r is None:
            raise ValueError("modified_rubber requires r")
        return modified_rubber_strategy(q, r, side, n, t)
    if name == "unidirectional_rubber":
        if r is None:
            raise ValueError("unidirectional_rubber requires r")
        return unidirectional_rubber_strategy(q, r, n, t)
    if name == "zero_error":
        return zero_error_unidirectional_strategy(q, n)
    if name == "identity":
        return identity_strategy(q, n)
    raise ValueError(f"unknown strategy {name!r}")


def _build_channel(channel_id: Optional[str], strategy_name: str, side: str, q: int):
    if channel_id is None:
        if strategy_name == "modified_rubber":
            channel_id = side
        elif strategy_name in ("zero_error", "unidirectional_rubber"):
            channel_id = "uni"
        else:
            channel_id = "z"
    if channel_id == "uni":
        return channel_id, make_unidirectional_pair(q)
    if channel_id in _GRAPH_CHANNELS:
        return channel_id, _GRAPH_CHANNELS[channel_id](q)
    raise ValueError(f"unknown channel {channel_id!r}")


def _build_adversary(selector: str, n: int):
    if selector == "greedy":
        return GreedyAdversary()
    if selector == "passive":
        return PassiveAdversary()
    if selector.startswith("path:"):
        try:
            outputs = [int(part) for part in selector[len("path:"):].split(",")]
        except ValueError:
            raise ValueError(f"malformed adversary path {selector!r}") from None
        if len(outputs) != n:
            raise ValueError(f"adversary path has {len(outputs)} symbols, block length is {n}")
        return PathAdversary(outputs)
    raise ValueError(f"unknown adversary {selector!r}")


# ---------------------------------------------------------------------------
# curves


def _curve_functions(q: int) -> dict:
    zero_error = math.log((q + 1) // 2) / math.log(q)
    funcs = {
        "upper": lambda tau: capacity_upper_bound(q, tau),
        "lower_envelope": lambda tau: lower_envelope(q, tau),
        "modified_rubber": lambda tau: modified_rubber_bound(q, tau),
        "zero_error": lambda tau: zero_error,
    }
    if q >= 3:
        funcs["degree_two"] = lambda tau: degree_two_bound(q, tau)
    if q == 2:
        funcs["symmetric"] = binary_symmetric_capacity
    return funcs


def write_curves(q: int, step: float, path: str) -> None:
    """CSV of every bound curve for one q, rows sorted by curve then tau."""
    if not 0.0 < step <= 0.5:
        raise ValueError(f"grid step must lie in (0, 0.5], got {step}")
    taus = []
    i = 0
    while i * step <= 1.0 + 1e-9:
        taus.append(min(i * step, 1.0))
        i += 1
    funcs = _curve_functions(q)
    lines = ["tau,value,curve"]
    for curve in sorted(funcs):
        evaluate = funcs[curve]
        for tau in taus:
            lines.append(f"{tau:.12g},{evaluate(tau):.12g},{curve}")
    _write_text(path, "\n".join(lines) + "\n")


def _cmd_curves(args) -> int:
    write_curves(args.q, args.step, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify


def run_verify_job(
    strategy_name: str,
    q: int,
    n: int,
    t: int,
    r: Optional[int],
    side: str,
    channel_id: Optional[str],
    budget: int,
    out_path: str,
) -> str:
    """Run one verification, write report plus timing sidecar, return outcome."""
    strategy = _build_strategy(strategy_name, q, n, t, r, side)
    channel_id, channel = _build_channel(channel_id, strategy_name, side, q)
    started = time.perf_counter()
    verdict = verify_successful(strategy, channel, t, node_budget=budget)
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    report = {
        "strategy": strategy.name,
        "channel": channel_id,
        "n": n,
        "M": strategy.message_count,
        "t": t,
        "outcome": verdict.outcome,
        "nodes": verdict.nodes,
    }
    if verdict.outcome == "counterexample":
        report["counterexample"] = {
            "message": verdict.message,
            "sent": list(verdict.sent),
            "received": list(verdict.received),
            "decoded": verdict.decoded,
        }
    _write_text(out_path, _dump_json(report))
    _write_text(out_path + ".log", f"wall_time_ms={elapsed_ms}\n")
    return verdict.outcome


_OUTCOME_EXIT = {"success": 0, "counterexample": 2, "inconclusive": 3}


def _cmd_verify(args) -> int:
    outcome = run_verify_job(
        args.strategy, args.q, args.n, args.t, args.r, args.side, args.channel, args.budget, args.out
    )
    return _OUTCOME_EXIT[outcome]


# ---------------------------------------------------------------------------
# zcap


def zcap_report(channel_id: str, q: int) -> dict:
    if channel_id not in _GRAPH_CHANNELS:
        raise ValueError(f"unknown channel {channel_id!r}")
    graph = _GRAPH_CHANNELS[channel_id](q)
    mass = min_max_output_mass(graph)
    return {
        "channel": channel_id,
        "q": q,
        "alphabet_size": len(graph.symbols),
        "min_max_output_mass": f"{mass.numerator}/{mass.denominator}",
        "capacity": zero_error_capacity(graph),
    }


def _cmd_zcap(args) -> int:
    sys.stdout.write(_dump_json(zcap_report(args.channel, args.q)))
    return 0


# ---------------------------------------------------------------------------
# session


def run_single_session(
    strategy_name: str,
    q: int,
    n: int,
    t: int,
    r: Optional[int],
    side: str,
    channel_id: Optional[str],
    message: int,
    adversary_selector: str,
):
    strategy = _build_strategy(strategy_name, q, n, t, r, side)
    _, channel = _build_channel(channel_id, strategy_name, side, q)
    adversary = _build_adversary(adversary_selector, n)
    return run_session(strategy, channel, adversary, message, t), message


def _cmd_session(args) -> int:
    transcript, message = run_single_session(
        args.strategy, args.q, args.n, args.t, args.r, args.side, args.channel, args.message, args.adversary
    )
    sys.stdout.write(_dump_json(transcript.to_json_dict()))
    return 0 if transcript.decoded == message else 2


# ---------------------------------------------------------------------------
# campaign


def _job_get(job, section: str, key: str, cast, default=_Parser):
    if key not in job:
        if default is not _Parser:
            return default
        raise ValueError(f"config error in [{section}]: missing '{key}'")
    raw = job[key]
    try:
        return cast(raw)
    except ValueError:
        raise ValueError(f"config error in [{section}]: bad value {raw!r} for '{key}'") from None


def run_campaign(config_path: str, workers: int = 1) -> int:
    """Run every job in the config; exit severity aggregates verify outcomes."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    parser = configparser.ConfigParser()
    if not parser.read(config_path):
        raise ValueError(f"cannot read config file {config_path!r}")
    any_counterexample = False
    any_inconclusive = False
    for section in parser.sections():
        job = parser[section]
        kind = _job_get(job, section, "kind", str)
        if kind == "curves":
            write_curves(
                _job_get(job, section, "q", int),
                _job_get(job, section, "step", float, 0.01),
                _job_get(job, section, "out", str),
            )
        elif kind == "verify":
            outcome = run_verify_job(
                _job_get(job, section, "strategy", str),
                _job_get(job, section, "q", int),
                _job_get(job, section, "n", int),
                _job_get(job, section, "t", int),
                _job_get(job, section, "r", int, None),
                _job_get(job, section, "side", str, "z"),
                _job_get(job, section, "channel", str, None),
                _job_get(job, section, "budget", int, DEFAULT_NODE_BUDGET),
                _job_get(job, section, "out", str),
            )
            if outcome == "counterexample":
                any_counterexample = True
            elif outcome == "inconclusive":
                any_inconclusive = True
        elif kind == "zcap":
            report = zcap_report(
                _job_get(job, section, "channel", str),
                _job_get(job, section, "q", int),
            )
            _write_text(_job_get(job, section, "out", str), _dump_json(report))
        elif kind == "session":
            transcript, message = run_single_session(
                _job_get(job, section, "strategy", str),
                _job_get(job, section, "q", int),
                _job_get(job, section, "n", int),
                _job_get(job, section, "t", int),
                _job_get(job, section, "r", int, None),
                _job_get(job, section, "side", str, "z"),
                _job_get(job, section, "channel", str, None),
                _job_get(job, section, "message", int),
                _job_get(job, section, "adversary", str),
            )
            _write_text(_job_get(job, section, "out", str), _dump_json(transcript.to_json_dict()))
            if transcript.decoded != message:
                any_counterexample = True
        else:
            raise ValueError(f"config error in [{section}]: unknown kind {kind!r}")
    if any_counterexample:
        return 2
    if any_inconclusive:
        return 3
    return 0


def _cmd_campaign(args) -> int:
    return run_campaign(args.config, args.workers)


# ---------------------------------------------------------------------------


def _add_strategy_arguments(parser) -> None:
    parser.add_argument("--strategy", required=True, choices=_STRATEGY_NAMES)
    parser.add_argument("--q", type=int, required=True, help="alphabet size")
    parser.add_argument("--n", type=int, required=True, help="block length")
    parser.add_argument("--t", type=int, required=True, help="adversary error budget")
    parser.add_argument("--r", type=int, default=None, help="rubber run length")
    parser.add_argument("--side", choices=("z", "invz"), default="z")
    parser.add_argument("--channel", choices=("z", "invz", "sym", "star", "uni"), default=None)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qfeedback", description="Feedback coding over adversarial q-ary channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    curves = sub.add_parser("curves", help="emit bound curves as CSV")
    curves.add_argument("--q", type=int, required=True)
    curves.add_argument("--step", type=float, default=0.01)
    curves.add_argument("--out", required=True)
    curves.set_defaults(func=_cmd_curves)

    verify = sub.add_parser("verify", help="exhaustively certify a strategy")
    _add_strategy_arguments(verify)
    verify.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    verify.add_argument("--out", required=True)
    verify.set_defaults(func=_cmd_verify)

    zcap = sub.add_parser("zcap", help="zero-error covering program for a channel")
    zcap.add_argument("--channel", required=True, choices=tuple(_GRAPH_CHANNELS))
    zcap.add_argument("--q", type=int, required=True)
    zcap.set_defaults(func=_cmd_zcap)

    session = sub.add_parser("session", help="run one feedback session")
    _add_strategy_arguments(session)
    session.add_argument("--message", type=int, required=True)
    session.add_argument("--adversary", default="greedy", help="greedy, passive, or path:y1,y2,...")
    session.set_defaults(func=_cmd_session)

    campaign = sub.add_parser("campaign", help="run a batch config")
    campaign.add_argument("--config", required=True)
    campaign.add_argument("--workers", type=int, default=1)
    campaign.set_defaults(func=_cmd_campaign)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"qfeedback: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"qfeedback: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
