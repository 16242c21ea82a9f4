"""Tests for bushyforce.serialization module."""

import pytest

from bushyforce.conditions import LBCond
from bushyforce.engine import run_generic, verify_run
from bushyforce.exceptions import RepresentationError, ScenarioParseError, TaskInapplicable
from bushyforce.maps import MonotoneMap
from bushyforce.sets import AtLeast, up_fin
from bushyforce.serialization import (
    Call,
    Seq,
    build_condition,
    build_functional,
    build_map,
    build_set,
    build_task,
    build_trace,
    build_tree,
    format_certificate,
    format_scenario,
    load_certificate,
    load_scenario,
    parse_certificate,
    parse_expr,
    parse_scenario,
    write_text,
)
from bushyforce.tasks import BoundedFunctional, Dominate, ExtendStem, MeetOpen, Trace
from bushyforce.trees import Threshold

HB_SCENARIO = """bushyforce-scenario 1
forcing: HB
condition: HB([],[3,3],Empty)
task: Dominate([4])
task: ExtendStem(1)
task: MeetOpen(MinLen(2))
"""


class TestParseExpr:
    def test_call(self):
        assert parse_expr("MinLen(2)") == Call("MinLen", (2,))

    def test_sequence(self):
        assert parse_expr("[1,>=3]") == Seq("[", (1, AtLeast(3)))

    def test_bare_name(self):
        assert parse_expr("Empty") == Call("Empty")

    def test_unexpected_character(self):
        with pytest.raises(ScenarioParseError):
            parse_expr("MinLen(2);")

    def test_trailing_input(self):
        with pytest.raises(ScenarioParseError):
            parse_expr("MinLen(2) MinLen(3)")

    def test_unclosed(self):
        with pytest.raises(ScenarioParseError):
            parse_expr("UpFin([0]")


class TestBuilders:
    def test_set(self):
        bad = build_set(parse_expr("UpFin([0],[1,>=3])"))

        assert bad == up_fin([(0,), (1, AtLeast(3))])

    def test_set_prints_back(self):
        text = "Union(CoordGE(0,5),MinLen(2))"

        assert str(build_set(parse_expr(text))) == text

    def test_tree(self):
        assert build_tree(parse_expr("Threshold([],[6,4])")) == Threshold((), (6, 4))

    def test_graft(self):
        tree = build_tree(parse_expr("Graft(Node(1:Leaf,>=3:Tail(Threshold([],[]))))"))

        assert tree.member((1,))
        assert tree.member((4, 9))
        assert not tree.member((2,))

    def test_condition(self, hb_33):
        assert build_condition(parse_expr("HB([],[3,3],Empty)")) == hb_33

    def test_map(self):
        assert build_map(parse_expr("Pad(1,2)")) == MonotoneMap.pad(1, 2)

    def test_map_table(self):
        f = build_map(parse_expr("Map(2,0,[0]:[5])"))

        assert f == MonotoneMap((((0,), (5,)),), 2, 0)
        assert f((0, 1, 1)) == (5,)

    def test_map_zero_stretch(self):
        with pytest.raises(RepresentationError):
            build_map(parse_expr("Pad(0,1)"))

    def test_functional(self):
        phi = BoundedFunctional.parity(1, 2)

        assert build_functional(parse_expr(str(phi))) == phi

    def test_trace(self):
        assert build_trace(parse_expr("Trace({0},{0,1})")) == Trace(({0}, {0, 1}))

    def test_task(self):
        assert build_task(parse_expr("Dominate([5,3])")) == Dominate((5, 3))

    def test_wrong_arity(self):
        with pytest.raises(ScenarioParseError):
            build_set(parse_expr("MinLen(1,2)"))

    def test_unknown_constructor(self):
        with pytest.raises(ScenarioParseError):
            build_task(parse_expr("Jump(3)"))


class TestScenario:
    def test_parse(self, lb_scenario_text):
        scenario = parse_scenario(lb_scenario_text)

        assert scenario.forcing == "LB"
        assert scenario.condition == LBCond.top()
        assert scenario.tasks == (
            ExtendStem(2),
            Dominate((5, 3)),
            MeetOpen(up_fin([(0,)])),
        )
        assert (scenario.depth, scenario.seed) == (6, 1)

    def test_format_parses_back(self, lb_scenario_text):
        scenario = parse_scenario(lb_scenario_text)

        assert parse_scenario(format_scenario(scenario)) == scenario

    def test_missing_header(self):
        with pytest.raises(ScenarioParseError):
            parse_scenario("forcing: LB\n")

    def test_unknown_key(self, lb_scenario_text):
        with pytest.raises(ScenarioParseError, match="line 9"):
            parse_scenario(lb_scenario_text + "colour: blue\n")

    def test_unknown_forcing(self):
        with pytest.raises(ScenarioParseError):
            parse_scenario("bushyforce-scenario 1\nforcing: XX\n")

    def test_condition_must_match_forcing(self):
        text = "bushyforce-scenario 1\nforcing: LB\ncondition: HB([],[],Empty)\n"

        with pytest.raises(ScenarioParseError):
            parse_scenario(text)

    def test_bad_value_reports_line(self):
        text = "bushyforce-scenario 1\nforcing: HB\ntask: ExtendStem([1])\n"

        with pytest.raises(ScenarioParseError, match="line 3"):
            parse_scenario(text)

    def test_load(self, tmp_path, hb_33):
        path = tmp_path / "hb.scn"
        path.write_text(HB_SCENARIO)

        assert load_scenario(path).condition == hb_33

    def test_load_missing(self, tmp_path):
        with pytest.raises(ScenarioParseError):
            load_scenario(tmp_path / "missing.scn")


class TestCertificate:
    def test_hb_round_trip(self):
        scenario = parse_scenario(HB_SCENARIO)
        run = run_generic(scenario.condition, scenario.tasks)

        parsed = parse_certificate(format_certificate(scenario, run))

        assert parsed.run.chain == run.chain
        assert parsed.prefix == run.prefix
        assert parsed.run.complete
        assert verify_run(parsed.run)

    def test_lb_certificate_replays(self, lb_scenario_text, tmp_path):
        scenario = parse_scenario(lb_scenario_text)
        run = run_generic(scenario.condition, scenario.tasks)
        path = tmp_path / "lb.cert"
        write_text(path, format_certificate(scenario, run))

        parsed = load_certificate(path)

        assert parsed.prefix == run.prefix
        assert [c.kind for c in parsed.run.certificates] == ["stem", "dominate", "enter"]
        assert verify_run(parsed.run)

    def test_failed_status(self):
        scenario = parse_scenario(
            "bushyforce-scenario 1\nforcing: HB\ntask: ExtendStem(1)\ntask: Cohen([1])\n"
        )
        run = run_generic(scenario.condition, scenario.tasks, partial=True)

        parsed = parse_certificate(format_certificate(scenario, run))

        assert isinstance(parsed.run.error, TaskInapplicable)
        assert parsed.run.failed_at == 1

    def test_evidence_count_mismatch(self):
        scenario = parse_scenario(HB_SCENARIO)
        run = run_generic(scenario.condition, scenario.tasks)
        lines = format_certificate(scenario, run).splitlines()
        text = "\n".join(line for line in lines if not line.startswith("evidence:"))

        with pytest.raises(ScenarioParseError):
            parse_certificate(text)

    def test_header_required(self):
        with pytest.raises(ScenarioParseError):
            parse_certificate("chain: HB([],[],Empty)\n")
