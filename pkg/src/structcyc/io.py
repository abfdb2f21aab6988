"""Text formats for nets, grammars and DAG automata; JSON for reports.

Net format::

    petri <d>
    [label:] u1 ... ud -> v1 ... vd      # one transition per line

``#`` starts a comment and blank lines are ignored.  Indices are written
from 1.  Big integers (exponents, certificate entries, lengths) go into
JSON as decimal strings.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional, Union

from .engine import AnalysisReport, RoundInfo
from .lp import CyclicCertificate
from .markable import MarkableResult
from .net import Concat, DimensionMismatch, Leaf, PetriNet, Power, PowerWord, Transition
from .reductions import DagAutomaton, Grammar, Rule


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class NetDimensionMismatch(ParseError, DimensionMismatch):
    pass


_TOKEN = re.compile(r"\S+")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _numbers(text: str, lineno: int, offset: int) -> tuple[int, ...]:
    out = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not tok.isdigit() or not tok.isascii():
            raise ParseError(f"expected a non-negative integer, got {tok!r}",
                             lineno, offset + m.start() + 1)
        out.append(int(tok))
    return tuple(out)


def parse_net(text: str) -> PetriNet:
    dimension: Optional[int] = None
    transitions: list[Transition] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if dimension is None:
            toks = line.split()
            if len(toks) != 2 or toks[0] != "petri" or not toks[1].isdigit():
                raise ParseError("expected header 'petri <d>'", lineno)
            dimension = int(toks[1])
            continue
        if "->" not in line:
            raise ParseError("expected '->'", lineno, len(line.rstrip()) + 1)
        left, right = line.split("->", 1)
        right_at = len(left) + 2
        label = None
        start = 0
        if ":" in left:
            label, left = left.split(":", 1)
            start = len(label) + 1
            label = label.strip()
            if not label or any(c.isspace() for c in label):
                raise ParseError("invalid transition label", lineno)
        pre = _numbers(left, lineno, start)
        post = _numbers(right, lineno, right_at)
        for side, col in ((pre, start + 1), (post, right_at + 1)):
            if len(side) != dimension:
                raise NetDimensionMismatch(
                    f"expected {dimension} entries, got {len(side)}", lineno, col)
        transitions.append(Transition(pre, post, label))
    if dimension is None:
        raise ParseError("missing header 'petri <d>'", 1)
    try:
        return PetriNet(dimension, transitions)
    except ValueError as e:
        raise ParseError(str(e), 1) from None


def serialize_net(net: PetriNet) -> str:
    lines = [f"petri {net.dimension}"]
    for t in net:
        body = " ".join(map(str, t.pre)) + " -> " + " ".join(map(str, t.post))
        lines.append(f"{t.label}: {body}" if t.label is not None else body)
    return "\n".join(lines) + "\n"


def parse_config(text: str, dimension: int) -> tuple[int, ...]:
    """Configuration written as integers separated by spaces or commas."""
    toks = text.replace(",", " ").split()
    if not all(t.isdigit() for t in toks):
        raise ValueError(f"configuration must be non-negative integers: {text!r}")
    if len(toks) != dimension:
        raise DimensionMismatch(f"configuration {text!r} has {len(toks)} entries, expected {dimension}")
    return tuple(int(t) for t in toks)


# -- grammars ------------------------------------------------------------------


def _is_terminal(symbol: str) -> bool:
    return symbol[0].islower()


def parse_grammar(text: str) -> Grammar:
    """``A -> B C`` per line, ``A ->`` for an empty right-hand side.

    The left-hand side of the first production is the start symbol;
    lowercase-initial symbols are terminals.
    """
    nonterminals: list[str] = []
    terminals: list[str] = []
    productions = []

    def note(sym: str):
        bucket = terminals if _is_terminal(sym) else nonterminals
        if sym not in bucket:
            bucket.append(sym)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if "->" not in line:
            raise ParseError("expected '->'", lineno)
        left, right = line.split("->", 1)
        lhs = left.split()
        if len(lhs) != 1:
            raise ParseError("left-hand side must be a single nonterminal", lineno)
        if _is_terminal(lhs[0]):
            raise ParseError(f"terminal {lhs[0]!r} on a left-hand side", lineno)
        rhs = tuple(right.split())
        note(lhs[0])
        for s in rhs:
            note(s)
        productions.append((lhs[0], rhs))
    if not productions:
        raise ParseError("grammar has no productions", 1)
    return Grammar(tuple(nonterminals), tuple(productions), tuple(terminals))


def serialize_grammar(g: Grammar) -> str:
    return "".join(f"{lhs} -> {' '.join(rhs)}".rstrip() + "\n" for lhs, rhs in g.productions)


# -- DAG automata ----------------------------------------------------------------

_RULE = re.compile(r"^\s*\{([^{}]*)\}\s*-(\S+?)->\s*\{([^{}]*)\}\s*$")


def _multiset(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def parse_dag(text: str) -> DagAutomaton:
    """``{p,q} -a-> {r}`` per line; ``{}`` is the empty multiset."""
    states: list[str] = []
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _RULE.match(line)
        if m is None:
            raise ParseError("expected '{p,...} -label-> {q,...}'", lineno)
        heads, tails = _multiset(m.group(1)), _multiset(m.group(3))
        for q in heads + tails:
            if q not in states:
                states.append(q)
        rules.append(Rule(heads, m.group(2), tails))
    return DagAutomaton(tuple(states), tuple(rules))


def serialize_dag(a: DagAutomaton) -> str:
    return "".join(f"{{{','.join(r.heads)}}} -{r.label}-> {{{','.join(r.tails)}}}\n"
                   for r in a.rules)


# -- JSON ----------------------------------------------------------------------------

Name = Union[int, str]


def transition_name(net: PetriNet, j: int) -> Name:
    label = net[j].label
    return label if label is not None else j + 1


def transition_names(net: PetriNet, indices) -> list[Name]:
    return [transition_name(net, j) for j in sorted(indices)]


def _resolve(net: PetriNet, name: Name) -> int:
    if isinstance(name, bool):
        raise ValueError(f"bad transition reference {name!r}")
    if isinstance(name, int):
        if not 1 <= name <= len(net):
            raise ValueError(f"transition {name} out of range")
        return name - 1
    for j, t in enumerate(net):
        if t.label == name:
            return j
    raise ValueError(f"unknown transition {name!r}")


def _coords(indices) -> list[int]:
    return [i + 1 for i in sorted(indices)]


def powerword_to_json(pw: PowerWord, net: Optional[PetriNet] = None) -> Any:
    if isinstance(pw, Leaf):
        doc: dict[str, Any] = {"leaf": pw.index + 1}
        if net is not None and net[pw.index].label is not None:
            doc["label"] = net[pw.index].label
        return doc
    if isinstance(pw, Concat):
        return {"concat": [powerword_to_json(p, net) for p in pw.parts]}
    return {"power": powerword_to_json(pw.body, net), "exponent": str(pw.exponent)}


def powerword_from_json(doc: Any) -> PowerWord:
    if "leaf" in doc:
        return Leaf(int(doc["leaf"]) - 1)
    if "concat" in doc:
        return Concat(tuple(powerword_from_json(p) for p in doc["concat"]))
    return Power(powerword_from_json(doc["power"]), int(doc["exponent"]))


def _psi_to_json(net: PetriNet, psi: dict[int, int]) -> list:
    return [[transition_name(net, j), str(k)] for j, k in sorted(psi.items())]


def markable_to_json(net: PetriNet, mk: MarkableResult) -> dict:
    return {
        "i_plus": _coords(mk.i_plus),
        "i_minus": _coords(mk.i_minus),
        "i_both": _coords(mk.i_both),
        "forward_witness": powerword_to_json(mk.forward_witness, net),
        "backward_witness": powerword_to_json(mk.backward_witness, net),
        "mutually_fireable": transition_names(net, mk.mutually_fireable),
    }


def markable_from_json(net: PetriNet, doc: dict) -> MarkableResult:
    return MarkableResult(
        frozenset(i - 1 for i in doc["i_plus"]),
        frozenset(i - 1 for i in doc["i_minus"]),
        frozenset(i - 1 for i in doc["i_both"]),
        powerword_from_json(doc["forward_witness"]),
        powerword_from_json(doc["backward_witness"]),
        frozenset(_resolve(net, n) for n in doc["mutually_fireable"]),
    )


def report_to_json(net: PetriNet, report: AnalysisReport, rounds: bool = False,
                   expanded_length: Optional[int] = None) -> dict:
    """JSON document for an analysis.

    The nested ``markable`` and ``u_certificate`` objects mirror the
    report; ``i_plus`` ... ``psi`` repeat them at top level for consumers
    that want flat fields.
    """
    mk, cert = report.markable, report.u_certificate
    doc: dict[str, Any] = {
        "dimension": net.dimension,
        "transitions": len(net),
        "structurally_cyclic": report.structurally_cyclic,
        "lambda_set": transition_names(net, report.lambda_set),
        "rounds": [transition_names(net, r) for r in report.rounds],
        "i_plus": _coords(mk.i_plus),
        "i_minus": _coords(mk.i_minus),
        "i_both": _coords(mk.i_both),
        "m_set": transition_names(net, mk.mutually_fireable),
        "u_set": transition_names(net, cert.u_set),
        "psi": _psi_to_json(net, cert.psi),
        "markable": markable_to_json(net, mk),
        "u_certificate": {"u_set": transition_names(net, cert.u_set), "psi": _psi_to_json(net, cert.psi)},
        "witness": None if report.witness is None else powerword_to_json(report.witness, net),
    }
    if expanded_length is not None:
        doc["witness_expanded_length"] = str(expanded_length)
    if rounds:
        doc["round_details"] = [
            {
                "active": transition_names(net, info.active),
                "markable": markable_to_json(net, info.markable),
                "u_set": transition_names(net, info.u_set),
                "result": transition_names(net, info.result),
            }
            for info in report.round_details
        ]
    return doc


def report_from_json(net: PetriNet, doc: dict) -> AnalysisReport:
    ids = lambda names: frozenset(_resolve(net, n) for n in names)  # noqa: E731
    cert = doc["u_certificate"]
    return AnalysisReport(
        markable=markable_from_json(net, doc["markable"]),
        u_certificate=CyclicCertificate(
            ids(cert["u_set"]), {_resolve(net, n): int(k) for n, k in cert["psi"]}),
        lambda_set=ids(doc["lambda_set"]),
        rounds=[ids(r) for r in doc["rounds"]],
        structurally_cyclic=bool(doc["structurally_cyclic"]),
        witness=None if doc["witness"] is None else powerword_from_json(doc["witness"]),
        round_details=[
            RoundInfo(ids(r["active"]), markable_from_json(net, r["markable"]),
                      ids(r["u_set"]), ids(r["result"]))
            for r in doc.get("round_details", [])
        ],
    )


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
