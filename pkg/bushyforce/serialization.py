"""
Scenario and certificate files.

Both are line-delimited text with a versioned header and ``key: value`` lines.
Values are tagged constructor expressions in the same notation the domain types
print themselves in, e.g. ``UpFin([0],[1,>=3])``, ``Threshold([],[6,4])`` or
``LB(Threshold([],[]),Empty,[])``; rationals are written ``p/2^k``.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union as TUnion

from bushyforce import exceptions
from bushyforce.bigness import BushyWitness
from bushyforce.conditions import Condition, HBCond, ICond, LBCond
from bushyforce.engine import (
    DEFAULT_DEPTH,
    GenericRun,
    Pi02Evidence,
    SchnorrEvidence,
    SchnorrReplay,
    TaskCertificate,
    TraceEvidence,
)
from bushyforce.exceptions import BushyForceError, ScenarioParseError
from bushyforce.maps import BinaryMap, MaxMap, MonotoneMap, SlowedMap, SplicedMap
from bushyforce.measure import CylinderUnion, SchnorrApprox, format_dyadic
from bushyforce.pairs import (
    EMPTY_P,
    MinLenSecond,
    PairSetRep,
    StretchGE,
    inter_p,
    union_p,
    up_fin_p,
)
from bushyforce.sets import EMPTY, AtLeast, CoordGE, SetRep, min_len, union, up_fin
from bushyforce.strings import format_pair, format_str
from bushyforce.tasks import (
    BoundedFunctional,
    CohenDense,
    DensityTask,
    Dominate,
    DominateCohen,
    ExtendStem,
    MeetOpen,
    MeetPi02,
    PairFunctional,
    SchnorrCapture,
    Trace,
    TraceTask,
)
from bushyforce.trees import CLOSED, Graft, Shape, Threshold, TreeRep

logger = logging.getLogger(__name__)

SCENARIO_HEADER = "bushyforce-scenario 1"
CERTIFICATE_HEADER = "bushyforce-certificate 1"
FORCINGS = ("LB", "HB", "IT")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<dyadic>\d+/2\^\d+)|(?P<atleast>>=\d+)|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[\[\](){},:]))"
)
_CLOSING = {"[": "]", "(": ")", "{": "}"}
_PAIR_SET_NAMES = {"UpFinP", "MinLenSecond", "StretchGE", "EmptyP", "UnionP", "InterP"}


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Seq:
    """A bracketed sequence; ``open`` is one of ``[``, ``(``, ``{``."""

    open: str
    items: tuple = ()


@dataclass(frozen=True)
class KeyValue:
    key: Any
    value: Any


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ScenarioParseError(f"Unexpected character at {pos}: {text[pos:pos + 10]!r}")
        tokens.append((match.lastgroup, match.group(match.lastgroup)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        token = self._peek()
        if token is None:
            raise ScenarioParseError("Unexpected end of expression")
        self.pos += 1
        return token

    def _at(self, text: str) -> bool:
        token = self._peek()
        return token is not None and token[0] == "punct" and token[1] == text

    def parse(self) -> Any:
        node = self._expr()
        if self._peek() is not None:
            raise ScenarioParseError(f"Trailing input at token {self._peek()[1]!r}")
        return node

    def _expr(self) -> Any:
        node = self._atom()
        if self._at(":"):
            self._take()
            return KeyValue(node, self._expr())
        return node

    def _items(self, close: str) -> tuple:
        items = []
        if self._at(close):
            self._take()
            return ()
        while True:
            items.append(self._expr())
            kind, text = self._take()
            if text == close:
                return tuple(items)
            if text != ",":
                raise ScenarioParseError(f"Expected ',' or {close!r}, got {text!r}")

    def _atom(self) -> Any:
        kind, text = self._take()
        if kind == "dyadic":
            num, exp = text.split("/2^")
            return Fraction(int(num), 2 ** int(exp))
        if kind == "atleast":
            return AtLeast(int(text[2:]))
        if kind == "int":
            return int(text)
        if kind == "name":
            if self._at("("):
                self._take()
                return Call(text, self._items(")"))
            return Call(text)
        if text in _CLOSING:
            return Seq(text, self._items(_CLOSING[text]))
        raise ScenarioParseError(f"Unexpected token {text!r}")


def parse_expr(text: str) -> Any:
    """
    Parse one tagged expression into Call / Seq / KeyValue nodes and atoms.

    Raises:
        ScenarioParseError: On malformed text
    """
    return _Parser(text).parse()


# builders


def _expect_call(node: Any, *names: str) -> Call:
    if not isinstance(node, Call) or (names and node.name not in names):
        raise ScenarioParseError(f"Expected one of {', '.join(names)}, got {node!r}")
    return node


def _arity(node: Call, n: int) -> tuple:
    if len(node.args) != n:
        raise ScenarioParseError(f"{node.name} takes {n} arguments, got {len(node.args)}")
    return node.args


def _int(node: Any) -> int:
    if not isinstance(node, int):
        raise ScenarioParseError(f"Expected an integer, got {node!r}")
    return node


def _str(node: Any) -> tuple:
    if not isinstance(node, Seq) or node.open != "[":
        raise ScenarioParseError(f"Expected a string like [6,4], got {node!r}")
    return tuple(_int(x) for x in node.items)


def _pattern(node: Any) -> tuple:
    if not isinstance(node, Seq) or node.open != "[":
        raise ScenarioParseError(f"Expected a pattern like [0,>=3], got {node!r}")
    for x in node.items:
        if not isinstance(x, (int, AtLeast)):
            raise ScenarioParseError(f"Bad pattern entry {x!r}")
    return tuple(node.items)


def _tuple(node: Any, n: int) -> tuple:
    if not isinstance(node, Seq) or node.open != "(" or len(node.items) != n:
        raise ScenarioParseError(f"Expected a {n}-tuple, got {node!r}")
    return node.items


def _pair(node: Any) -> tuple:
    first, second = _tuple(node, 2)
    return _str(first), _str(second)


def _kv(node: Any) -> KeyValue:
    if not isinstance(node, KeyValue):
        raise ScenarioParseError(f"Expected key:value, got {node!r}")
    return node


def build_set(node: Any) -> SetRep:
    call = _expect_call(node, "UpFin", "MinLen", "CoordGE", "Empty", "Union")
    if call.name == "UpFin":
        return up_fin(_pattern(a) for a in call.args)
    if call.name == "MinLen":
        return min_len(_int(_arity(call, 1)[0]))
    if call.name == "CoordGE":
        i, m = _arity(call, 2)
        return CoordGE(_int(i), _int(m))
    if call.name == "Empty":
        return EMPTY
    return union(*(build_set(a) for a in call.args))


def build_pair_set(node: Any) -> PairSetRep:
    call = _expect_call(node, *sorted(_PAIR_SET_NAMES))
    if call.name == "UpFinP":
        gens = []
        for a in call.args:
            first, second = _tuple(a, 2)
            gens.append((_str(first), _pattern(second)))
        return up_fin_p(gens)
    if call.name == "MinLenSecond":
        return MinLenSecond(_int(_arity(call, 1)[0]))
    if call.name == "StretchGE":
        s, r, c = _arity(call, 3)
        return StretchGE(_int(s), _int(r), _int(c))
    if call.name == "EmptyP":
        return EMPTY_P
    parts = [build_pair_set(a) for a in call.args]
    return union_p(*parts) if call.name == "UnionP" else inter_p(*parts)


def build_any_set(node: Any) -> TUnion[SetRep, PairSetRep]:
    if isinstance(node, Call) and node.name in _PAIR_SET_NAMES:
        return build_pair_set(node)
    return build_set(node)


def build_tree(node: Any) -> TreeRep:
    call = _expect_call(node, "Threshold", "Graft")
    if call.name == "Threshold":
        stem, theta = _arity(call, 2)
        return Threshold(_str(stem), _str(theta))
    return Graft(build_shape(_arity(call, 1)[0]))


def build_shape(node: Any) -> Shape:
    call = _expect_call(node, "Leaf", "Tail", "Node")
    if call.name == "Leaf":
        return CLOSED
    if call.name == "Tail":
        return Shape(tail=build_tree(_arity(call, 1)[0]))
    named, generic, tail, cut = [], None, None, frozenset()
    for arg in call.args:
        item = _kv(arg)
        if isinstance(item.key, int):
            named.append((item.key, build_shape(item.value)))
        elif isinstance(item.key, AtLeast):
            generic = (item.key.bound, build_shape(item.value))
        elif item.key == Call("else"):
            tail = build_tree(item.value)
        elif item.key == Call("cut"):
            cut = frozenset(_str(item.value))
        else:
            raise ScenarioParseError(f"Unknown node entry {item.key!r}")
    return Shape(tuple(named), generic, tail, cut)


def build_map(node: Any) -> BinaryMap:
    call = _expect_call(node, "Pad", "Map", "Splice", "Slow", "Max")
    if call.name == "Pad":
        stretch, fill = _arity(call, 2)
        return MonotoneMap.pad(_int(stretch), _int(fill))
    if call.name == "Map":
        if len(call.args) < 2:
            raise ScenarioParseError("Map needs a stretch and a fill")
        table = tuple((_str(_kv(a).key), _str(_kv(a).value)) for a in call.args[2:])
        return MonotoneMap(table, _int(call.args[0]), _int(call.args[1]))
    if call.name == "Splice":
        inner, at, value = _arity(call, 3)
        return SplicedMap(build_map(inner), _str(at), _str(value))
    if call.name == "Slow":
        inner, start, until, value = _arity(call, 4)
        return SlowedMap(build_map(inner), _str(start), _str(until), _str(value))
    left, right, root, floor = _arity(call, 4)
    return MaxMap(build_map(left), build_map(right), _str(root), _int(floor))


def build_functional(node: Any) -> TUnion[BoundedFunctional, PairFunctional]:
    call = _expect_call(node, "Functional", "PairFunctional")
    if call.name == "PairFunctional":
        table = []
        for arg in call.args:
            item = _kv(arg)
            first, second = _tuple(item.key, 2)
            table.append(((_str(first), _pattern(second)), _str(item.value)))
        return PairFunctional(tuple(table))
    if not call.args:
        raise ScenarioParseError("Functional needs a bound or Unbounded")
    head = call.args[0]
    bound = None if head == Call("Unbounded") else _str(head)
    table = tuple((_pattern(_kv(a).key), _str(_kv(a).value)) for a in call.args[1:])
    return BoundedFunctional(table, bound)


def build_trace(node: Any) -> Trace:
    call = _expect_call(node, "Trace")
    levels = []
    for arg in call.args:
        if not isinstance(arg, Seq) or arg.open != "{":
            raise ScenarioParseError(f"Expected a set like {{0,1}}, got {arg!r}")
        levels.append(frozenset(x if isinstance(x, int) else _str(x) for x in arg.items))
    return Trace(tuple(levels))


def build_task(node: Any) -> DensityTask:
    call = _expect_call(
        node,
        "ExtendStem",
        "Dominate",
        "MeetOpen",
        "MeetPi02",
        "TraceTask",
        "Schnorr",
        "Cohen",
        "DominateCohen",
    )
    if call.name == "ExtendStem":
        return ExtendStem(_int(_arity(call, 1)[0]))
    if call.name == "Dominate":
        return Dominate(_str(_arity(call, 1)[0]))
    if call.name == "MeetOpen":
        return MeetOpen(build_any_set(_arity(call, 1)[0]))
    if call.name == "MeetPi02":
        if not call.args:
            raise ScenarioParseError("MeetPi02 needs a depth")
        return MeetPi02(tuple(build_set(a) for a in call.args[1:]), _int(call.args[0]))
    if call.name == "TraceTask":
        functional, depth = _arity(call, 2)
        return TraceTask(build_functional(functional), _int(depth))
    if call.name == "Schnorr":
        functional, depth, samples = _arity(call, 3)
        return SchnorrCapture(build_functional(functional), _int(depth), _int(samples))
    if call.name == "Cohen":
        return CohenDense(_str(_arity(call, 1)[0]))
    return DominateCohen(build_map(_arity(call, 1)[0]))


def build_condition(node: Any) -> Condition:
    call = _expect_call(node, *FORCINGS)
    if call.name == "LB":
        tree, bad, stem = _arity(call, 3)
        return LBCond(build_tree(tree), build_set(bad), _str(stem))
    if call.name == "HB":
        stem, f, bad = _arity(call, 3)
        return HBCond(_str(stem), _str(f), build_set(bad))
    stm, f, mindom, bad = _arity(call, 4)
    return ICond(_str(stm), build_map(f), _str(mindom), build_pair_set(bad))


def build_point(node: Any) -> tuple:
    if isinstance(node, Seq) and node.open == "(":
        return _pair(node)
    return _str(node)


def top_condition(forcing: str) -> Condition:
    if forcing == "LB":
        return LBCond.top()
    if forcing == "HB":
        return HBCond.top()
    return ICond.top()


# scenarios


@dataclass(frozen=True)
class Scenario:
    forcing: str
    condition: Condition
    tasks: tuple = ()
    depth: int = DEFAULT_DEPTH
    seed: int = 0


def _lines(text: str, header: str) -> list[tuple[int, str, str]]:
    """Numbered ``key: value`` lines after the header, skipping blanks and comments."""
    entries = []
    seen_header = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != header:
                raise ScenarioParseError(f"line {number}: expected header {header!r}")
            seen_header = True
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ScenarioParseError(f"line {number}: expected 'key: value'")
        entries.append((number, key.strip(), value.strip()))
    if not seen_header:
        raise ScenarioParseError(f"Missing header {header!r}")
    return entries


def _at_line(number: int, build, value: str):
    try:
        return build(parse_expr(value))
    except (ScenarioParseError, BushyForceError, ValueError, TypeError) as e:
        raise ScenarioParseError(f"line {number}: {e}") from e


def _forcing_of(c: Condition) -> str:
    return c.forcing


def _read_common(entries) -> tuple[dict, list]:
    fields: dict = {}
    rest = []
    for number, key, value in entries:
        if key == "forcing":
            if value not in FORCINGS:
                raise ScenarioParseError(f"line {number}: unknown forcing {value!r}")
            fields["forcing"] = value
        elif key in ("depth", "seed"):
            if not value.isdigit():
                raise ScenarioParseError(f"line {number}: {key} must be a natural number")
            fields[key] = int(value)
        elif key == "condition":
            fields["condition"] = _at_line(number, build_condition, value)
        elif key == "task":
            fields.setdefault("tasks", []).append(_at_line(number, build_task, value))
        else:
            rest.append((number, key, value))
    if "forcing" not in fields:
        raise ScenarioParseError("Missing 'forcing' line")
    condition = fields.get("condition") or top_condition(fields["forcing"])
    if _forcing_of(condition) != fields["forcing"]:
        raise ScenarioParseError(
            f"Condition is {_forcing_of(condition)} but forcing is {fields['forcing']}"
        )
    scenario = Scenario(
        fields["forcing"],
        condition,
        tuple(fields.get("tasks", ())),
        fields.get("depth", DEFAULT_DEPTH),
        fields.get("seed", 0),
    )
    return {"scenario": scenario}, rest


def parse_scenario(text: str) -> Scenario:
    """
    Parse scenario text.

    Raises:
        ScenarioParseError: On a missing header, an unknown key or a malformed value
    """
    fields, rest = _read_common(_lines(text, SCENARIO_HEADER))
    if rest:
        number, key, _ = rest[0]
        raise ScenarioParseError(f"line {number}: unknown key {key!r}")
    return fields["scenario"]


def load_scenario(path: TUnion[str, Path]) -> Scenario:
    """
    Raises:
        ScenarioParseError: If the file cannot be read or parsed
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioParseError(f"Cannot read {path}: {e}") from e
    return parse_scenario(text)


def _scenario_lines(scenario: Scenario) -> list[str]:
    lines = [
        f"forcing: {scenario.forcing}",
        f"depth: {scenario.depth}",
        f"seed: {scenario.seed}",
        f"condition: {scenario.condition}",
    ]
    lines += [f"task: {task}" for task in scenario.tasks]
    return lines


def format_scenario(scenario: Scenario) -> str:
    return "\n".join([SCENARIO_HEADER] + _scenario_lines(scenario)) + "\n"


# certificates


def format_point(x: tuple) -> str:
    if len(x) == 2 and isinstance(x[0], tuple):
        return format_pair(x)
    return format_str(x)


def _format_trace_step(step: tuple) -> str:
    n, tau, value = step
    return f"({n},{format_str(tau)},{value})"


def _format_cylinders(u: CylinderUnion) -> str:
    return "Cylinders(" + ",".join(format_str(g) for g in u.sorted_generators()) + ")"




def _format_schnorr(evidence: SchnorrEvidence) -> str:
    levels = ",".join(
        f"Level({_format_cylinders(u)},{format_dyadic(measure)})"
        for u, measure in evidence.approx.levels
    )
    h = ",".join(f"{m}:{format_str(v)}" for m, v in evidence.interleaver)
    replays = ",".join(f"Replay({r.q},{r.n},{r.r},{r.m})" for r in evidence.replays)
    return f"SchnorrEvidence(Levels({levels}),Interleaver({h}),Replays({replays}))"


def format_evidence(cert: TaskCertificate, after: Condition) -> str:
    """The detail of a certificate as a tagged expression; after is the condition it produced."""
    kind, detail = cert.kind, cert.detail
    if kind == "stem" or (kind == "enter" and isinstance(after, HBCond)):
        return "Walk(" + ",".join(format_point(x) for x in detail) + ")"
    if kind == "enter":
        return str(detail) if isinstance(detail, BushyWitness) else format_pair(detail)
    if kind in ("dominate", "cohen"):
        return format_str(detail) if isinstance(detail, tuple) else str(detail)
    if kind == "avoid":
        return str(detail)
    if kind == "pi02":
        steps = ",".join(f"({r},{j},{format_str(t)},{label})" for r, j, t, label in detail.steps)
        return f"Steps({steps})"
    if kind == "trace":
        steps = ",".join(_format_trace_step(s) for s in detail.steps)
        return f"TraceEvidence({detail.trace},Steps({steps}))"
    if kind == "schnorr":
        return _format_schnorr(detail)
    raise ValueError(f"Unknown certificate kind {kind!r}")


def _build_label(node: Any) -> TUnion[int, str]:
    if isinstance(node, int):
        return node
    return _expect_call(node).name


def _build_schnorr(node: Any) -> SchnorrEvidence:
    levels_node, h_node, replays_node = _arity(_expect_call(node, "SchnorrEvidence"), 3)
    levels = []
    for level in _expect_call(levels_node, "Levels").args:
        cylinders, measure = _arity(_expect_call(level, "Level"), 2)
        if not isinstance(measure, Fraction):
            raise ScenarioParseError(f"Expected a dyadic measure, got {measure!r}")
        gens = [_str(g) for g in _expect_call(cylinders, "Cylinders").args]
        levels.append((CylinderUnion.of(gens), measure))
    h = tuple(
        (_int(_kv(a).key), _str(_kv(a).value)) for a in _expect_call(h_node, "Interleaver").args
    )
    replays = []
    for replay in _expect_call(replays_node, "Replays").args:
        q, n, r, m = _arity(_expect_call(replay, "Replay"), 4)
        replays.append(SchnorrReplay(build_condition(q), _int(n), build_condition(r), _int(m)))
    return SchnorrEvidence(SchnorrApprox(tuple(levels)), h, tuple(replays))


def build_evidence(kind: str, node: Any) -> Any:
    """
    Raises:
        ScenarioParseError: If node does not fit the certificate kind
    """
    if kind == "stem":
        return tuple(build_point(a) for a in _expect_call(node, "Walk").args)
    if kind == "enter":
        if isinstance(node, Seq):
            return _pair(node)
        call = _expect_call(node, "Witness", "Walk")
        if call.name == "Walk":
            return tuple(build_point(a) for a in call.args)
        stem, shape = _arity(call, 2)
        return BushyWitness(_str(stem), build_shape(shape))
    if kind == "dominate":
        return _str(node) if isinstance(node, Seq) else build_map(node)
    if kind == "cohen":
        return _str(node)
    if kind == "avoid":
        return build_any_set(node)
    if kind == "pi02":
        steps = []
        for step in _expect_call(node, "Steps").args:
            r, j, tau, label = _tuple(step, 4)
            steps.append((_int(r), _int(j), _str(tau), _build_label(label)))
        return Pi02Evidence(tuple(steps))
    if kind == "trace":
        trace, steps_node = _arity(_expect_call(node, "TraceEvidence"), 2)
        steps = []
        for step in _expect_call(steps_node, "Steps").args:
            n, tau, value = _tuple(step, 3)
            steps.append((_int(n), _str(tau), _build_label(value)))
        return TraceEvidence(build_trace(trace), tuple(steps))
    if kind == "schnorr":
        return _build_schnorr(node)
    raise ScenarioParseError(f"Unknown certificate kind {kind!r}")


@dataclass(frozen=True)
class Certificate:
    """A scenario echo together with the run it produced."""

    scenario: Scenario
    run: GenericRun
    prefix: Any = None


def format_certificate(scenario: Scenario, run: GenericRun) -> str:
    lines = [CERTIFICATE_HEADER] + _scenario_lines(scenario)
    lines += [f"chain: {c}" for c in run.chain]
    lines.append(f"prefix: {format_point(run.prefix)}")
    for cert, after in zip(run.certificates, run.chain[1:]):
        lines.append(f"evidence: {cert.kind} {format_evidence(cert, after)}")
    if run.error is None:
        lines.append("status: complete")
    else:
        lines.append(f"status: failed {run.failed_at} {type(run.error).__name__}: {run.error}")
    return "\n".join(lines) + "\n"


def _build_status(number: int, value: str) -> tuple[Optional[BushyForceError], Optional[int]]:
    if value == "complete":
        return None, None
    match = re.match(r"^failed (\d+) (\w+): ?(.*)$", value)
    if not match:
        raise ScenarioParseError(f"line {number}: malformed status {value!r}")
    error_class = getattr(exceptions, match.group(2), None)
    if not (isinstance(error_class, type) and issubclass(error_class, BushyForceError)):
        error_class = BushyForceError
    return error_class(match.group(3)), int(match.group(1))


def parse_certificate(text: str) -> Certificate:
    """
    Parse certificate text back into its scenario and run.

    Raises:
        ScenarioParseError: On malformed text, or evidence lines not matching the tasks
    """
    fields, rest = _read_common(_lines(text, CERTIFICATE_HEADER))
    scenario: Scenario = fields["scenario"]
    chain: list = []
    evidence: list = []
    prefix = None
    error, failed_at = None, None
    for number, key, value in rest:
        if key == "chain":
            chain.append(_at_line(number, build_condition, value))
        elif key == "prefix":
            prefix = _at_line(number, build_point, value)
        elif key == "evidence":
            kind, _, expr = value.partition(" ")
            detail = _at_line(number, lambda node, k=kind: build_evidence(k, node), expr)
            evidence.append((kind, detail))
        elif key == "status":
            error, failed_at = _build_status(number, value)
        else:
            raise ScenarioParseError(f"line {number}: unknown key {key!r}")
    if not chain:
        raise ScenarioParseError("Certificate has no chain")
    if len(evidence) != len(chain) - 1 or len(evidence) > len(scenario.tasks):
        raise ScenarioParseError(
            f"{len(chain)} chain entries and {len(evidence)} evidence lines do not match"
        )
    certificates = tuple(
        TaskCertificate(task, kind, detail)
        for task, (kind, detail) in zip(scenario.tasks, evidence)
    )
    run = GenericRun(tuple(chain), certificates, error, failed_at)
    return Certificate(scenario, run, prefix)


def load_certificate(path: TUnion[str, Path]) -> Certificate:
    """
    Raises:
        ScenarioParseError: If the file cannot be read or parsed
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioParseError(f"Cannot read {path}: {e}") from e
    return parse_certificate(text)


def write_text(path: TUnion[str, Path], text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
