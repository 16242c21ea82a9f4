"""Tests for bushyforce.laws module."""

import random

import pytest

from bushyforce.laws import LAWS, SLOW_LAWS, random_icond, run_law, run_law_suite


class TestLawSuite:
    def test_deterministic(self):
        first = run_law_suite(seed=3, cases=10, laws=["union", "oracle", "marcone"])
        second = run_law_suite(seed=3, cases=10, laws=["union", "oracle", "marcone"])

        assert first == second

    def test_selected_laws_in_order(self):
        report = run_law_suite(cases=5, laws=["empty", "extensive"])

        assert [o.name for o in report.outcomes] == ["empty", "extensive"]
        assert report.all_passed

    def test_union_mutation_is_caught(self):
        outcome = run_law("union", seed=1, cases=100, mutate="union")

        assert not outcome.ok
        assert outcome.counterexample.startswith("case ")

    def test_unknown_law(self):
        with pytest.raises(ValueError):
            run_law_suite(laws=["no-such-law"])

    def test_unknown_mutation(self):
        with pytest.raises(ValueError):
            run_law_suite(mutate="swap")

    def test_slow_laws_run_fewer_cases(self):
        name = sorted(SLOW_LAWS)[0]

        assert run_law(name, cases=20).cases == 2

    def test_render(self):
        report = run_law_suite(seed=2, cases=4, laws=["empty"])
        text = report.render()

        assert text.startswith("law suite: seed 2, 4 cases, depth 3")
        assert "✓ empty: 4/4" in text
        assert text.endswith("all laws passed\n")

    @pytest.mark.slow
    def test_full_suite_passes(self):
        report = run_law_suite(seed=1, cases=500, depth=3)

        assert len(report.outcomes) == len(LAWS)
        assert report.all_passed, report.render()

    @pytest.mark.slow
    def test_pair_laws_pass(self):
        names = [name for name in LAWS if name.startswith("pair-")]
        report = run_law_suite(seed=2, cases=300, depth=3, laws=names)

        assert [o.cases for o in report.outcomes] == [300] * len(names)
        assert report.all_passed, report.render()

    def test_possible_extensions_with_tables(self):
        outcome = run_law("possible-extensions", seed=4, cases=200)

        assert outcome.cases == 20
        assert outcome.ok, outcome.counterexample


class TestGenerators:
    def test_conditions_carry_tables_and_stretch(self):
        rng = random.Random(5)
        conditions = [p for p in (random_icond(rng) for _ in range(200)) if p is not None]

        assert any(p.f.table for p in conditions)
        assert any(p.f.stretch == 2 for p in conditions)
        assert any(p.mindom for p in conditions)
