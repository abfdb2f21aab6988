"""Command-line interface.

Exit codes: 0 for a positive answer (cyclic, witness emitted, oracle hit,
reduction written), 1 for a negative one, 2 for errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .engine import compute_lambda, verify_witness
from .net import PetriNet, zero
from .oracle import (
    SearchBudget,
    bounded_reach,
    brute_cyclic,
    brute_forward_markable,
    brute_zero_cycle_transitions,
)
from .reductions import (
    LossyInstance,
    NotLossy,
    cfg_to_net,
    cyclicity_to_revreach,
    dag_automaton_to_net,
    lossy_to_cyclicity,
)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget_bound, args.budget_states, args.max_depth)


def _fmt_set(items) -> str:
    return "{" + ", ".join(str(x) for x in items) + "}"


def cmd_analyze(args) -> int:
    net = io.parse_net(_read(args.path))
    report = compute_lambda(net, witness=not args.no_witness)
    length = verify_witness(net, report.witness).expanded_length if report.witness else None
    if args.text:
        doc = io.report_to_json(net, report)
        lines = [
            f"dimension: {net.dimension}",
            f"transitions: {len(net)}",
            f"structurally cyclic: {'yes' if report.structurally_cyclic else 'no'}",
            f"lambda: {_fmt_set(doc['lambda_set'])}",
            f"rounds: {len(report.rounds) - 1} strict",
            f"I+: {_fmt_set(doc['i_plus'])}  I-: {_fmt_set(doc['i_minus'])}  I: {_fmt_set(doc['i_both'])}",
        ]
        if args.rounds:
            for k, r in enumerate(doc["rounds"]):
                lines.append(f"  T{k} = {_fmt_set(r)}")
        if length is not None:
            lines.append(f"witness length: {length}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(io.dumps(io.report_to_json(net, report, rounds=args.rounds,
                                                    expanded_length=length)))
    return EXIT_YES if report.structurally_cyclic else EXIT_NO


def cmd_witness(args) -> int:
    net = io.parse_net(_read(args.path))
    report = compute_lambda(net, witness=True)
    if report.witness is None:
        sys.stdout.write(io.dumps({"structurally_cyclic": False, "witness": None}))
        return EXIT_NO
    verdict = verify_witness(net, report.witness)
    if not verdict.valid:
        # never emit an unverified witness
        print(f"error: synthesized witness failed verification: {verdict.error}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(io.dumps({
        "structurally_cyclic": True,
        "witness": io.powerword_to_json(report.witness, net),
        "verified": True,
        "expanded_length": str(verdict.expanded_length),
        "transitions_used": io.transition_names(net, verdict.transitions_used),
    }))
    return EXIT_YES


def cmd_oracle(args) -> int:
    net = io.parse_net(_read(args.path))
    budget = _budget(args)
    if args.mode == "markable":
        fwd = brute_forward_markable(net, budget)
        doc = {"mode": "markable", "forward_markable": [i + 1 for i in sorted(fwd)]}
        code = EXIT_YES if fwd else EXIT_NO
    elif args.mode == "zero-cycles":
        ts = brute_zero_cycle_transitions(net, budget)
        doc = {"mode": "zero-cycles", "transitions": io.transition_names(net, ts)}
        code = EXIT_YES if ts else EXIT_NO
    else:
        if args.mode == "cyclic":
            c = io.parse_config(args.config, net.dimension) if args.config else zero(net.dimension)
            res = brute_cyclic(net, c, budget)
        else:
            if args.source is None or args.target is None:
                raise ValueError("reach mode needs --source and --target")
            res = bounded_reach(net, io.parse_config(args.source, net.dimension),
                                io.parse_config(args.target, net.dimension), budget)
        doc = {
            "mode": args.mode,
            "status": res.status,
            "path": None if res.path is None else [io.transition_name(net, j) for j in res.path],
            "states": res.states,
        }
        code = EXIT_YES if res.found else EXIT_NO
    sys.stdout.write(io.dumps(doc))
    return code


def _emit_reduction(args, net: PetriNet, mapping: dict) -> int:
    text = io.serialize_net(net)
    if args.json:
        sys.stdout.write(io.dumps({"net": text, "mapping": mapping}))
        return EXIT_YES
    _write(args.output, text)
    sidecar = args.sidecar
    if sidecar is None and args.output not in (None, "-"):
        sidecar = args.output + ".map.json"
    if sidecar is not None:
        _write(sidecar, io.dumps(mapping))
    return EXIT_YES


def _index_of(net: PetriNet, pre, post) -> int:
    for j, t in enumerate(net):
        if t.pre == pre and t.post == post:
            return j
    raise LookupError


def cmd_from_cfg(args) -> int:
    g = io.parse_grammar(_read(args.path))
    net = cfg_to_net(g)
    index = {s: i for i, s in enumerate(g.symbols)}
    productions = []
    for lhs, rhs in g.productions:
        pre = tuple(1 if i == index[lhs] else 0 for i in range(net.dimension))
        post = tuple(sum(1 for s in rhs if index[s] == i) for i in range(net.dimension))
        productions.append({"production": f"{lhs} -> {' '.join(rhs)}".rstrip(),
                            "transition": _index_of(net, pre, post) + 1})
    mapping = {
        "dimensions": {s: i + 1 for s, i in index.items()},
        "terminals": list(g.terminals),
        "start_transition": 1,
        "productions": productions,
    }
    return _emit_reduction(args, net, mapping)


def cmd_from_dag(args) -> int:
    a = io.parse_dag(_read(args.path))
    net = dag_automaton_to_net(a)
    index = {q: i for i, q in enumerate(a.states)}
    rules = []
    for r in a.rules:
        pre = tuple(r.heads.count(q) for q in a.states)
        post = tuple(r.tails.count(q) for q in a.states)
        rules.append({"rule": io.serialize_dag(type(a)(a.states, (r,))).strip(),
                      "transition": _index_of(net, pre, post) + 1})
    mapping = {"dimensions": {q: i + 1 for q, i in index.items()}, "rules": rules}
    return _emit_reduction(args, net, mapping)


def cmd_lossy_reduce(args) -> int:
    net = io.parse_net(_read(args.path))
    inst = LossyInstance(net, io.parse_config(args.source, net.dimension),
                         io.parse_config(args.target, net.dimension))
    s, query = lossy_to_cyclicity(inst, auto_insert=args.auto_insert)
    mapping = {
        "dimension": s.dimension,
        "counter_dimension": s.dimension,
        "query": list(query),
        "s_down": len(s) - 1,
        "s_reset": len(s),
        "phi": list(range(1, len(s) - 1)),
    }
    return _emit_reduction(args, s, mapping)


def cmd_revreach(args) -> int:
    net = io.parse_net(_read(args.path))
    x = io.parse_config(args.config, net.dimension)
    instances = cyclicity_to_revreach(net, x)
    if args.text:
        for inst in instances:
            sys.stdout.write(f"{' '.join(map(str, inst.x))} <-> {' '.join(map(str, inst.y))}"
                             f"  via {io.transition_name(net, inst.via)}\n")
    else:
        sys.stdout.write(io.dumps({
            "x": list(x),
            "instances": [{"x": list(i.x), "y": list(i.y), "via": io.transition_name(net, i.via)}
                          for i in instances],
        }))
    return EXIT_YES if instances else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default for reports)")
    fmt.add_argument("--text", action="store_true", help="human-readable output")
    common.add_argument("--budget-bound", type=int, default=6, metavar="B",
                        help="oracle: prune configurations with an entry above B")
    common.add_argument("--budget-states", type=int, default=100_000, metavar="N",
                        help="oracle: stop after N distinct configurations")
    common.add_argument("--max-depth", type=int, default=None, help=argparse.SUPPRESS)
    common.add_argument("--no-witness", action="store_true", help="skip witness synthesis")
    common.add_argument("--rounds", action="store_true", help="emit per-round sets")

    parser = argparse.ArgumentParser(prog="structcyc", description=
                                     "Structural cyclicity of Petri nets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("path", help="input file, or - for stdin")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "compute Λ(T) and decide structural cyclicity")
    add("witness", cmd_witness, "emit a verified zero-to-zero cycle")
    p = add("oracle", cmd_oracle, "bounded brute-force searches")
    p.add_argument("--mode", choices=["markable", "zero-cycles", "cyclic", "reach"],
                   default="zero-cycles")
    p.add_argument("--config", help="configuration for --mode cyclic")
    p.add_argument("--source")
    p.add_argument("--target")
    for name, func, help_ in (("from-cfg", cmd_from_cfg, "grammar to net"),
                              ("from-dag", cmd_from_dag, "DAG automaton to net")):
        p = add(name, func, help_)
        p.add_argument("-o", "--output")
        p.add_argument("--sidecar")
    p = add("lossy-reduce", cmd_lossy_reduce, "lossy reachability to cyclicity")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--auto-insert", action="store_true",
                   help="add missing loss transitions instead of failing")
    p.add_argument("-o", "--output")
    p.add_argument("--sidecar")
    p = add("revreach-instances", cmd_revreach, "cyclicity to reversible reachability")
    p.add_argument("--config", required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_YES
    try:
        return args.func(args)
    except NotLossy as e:
        print(f"error: NotLossy: {e}", file=sys.stderr)
    except (ValueError, LookupError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
