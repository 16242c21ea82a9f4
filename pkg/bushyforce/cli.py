#!/usr/bin/env python3
"""
bushyforce CLI - bigness queries, generic runs and the law suite.

Usage:
    bushyforce COMMAND [ARGS] [OPTIONS]

Examples:
    bushyforce big-check "UpFin([>=7])" --node "[6]"
    bushyforce witness "MinLen(2)"
    bushyforce dichotomy "UpFin([0])" --tree "Threshold([],[])"
    bushyforce run scenario.txt --out scenario.cert
    bushyforce verify scenario.cert
    bushyforce laws --seed 1 --cases 100 --depth 3
"""

import argparse
import configparser
import logging
import sys
from pathlib import Path
from typing import Any, Optional

from bushyforce import __version__
from bushyforce.bigness import (
    HechlerAvoid,
    big_dichotomy,
    extract_witness,
    marcone_bounded,
    omega_rank,
    verify_witness,
)
from bushyforce.engine import GenericRun, fuse, run_generic, verify_run
from bushyforce.exceptions import BushyForceError, RankOverflow, ScenarioParseError
from bushyforce.laws import MUTATIONS, run_law_suite
from bushyforce.measure import format_dyadic, parse_dyadic, schnorr_levels, validate_schnorr
from bushyforce.pairs import PairSetRep, extract_pair_witness, pair_rank, verify_pair_witness
from bushyforce.serialization import (
    Call,
    KeyValue,
    build_any_set,
    build_pair_set,
    build_point,
    build_set,
    build_tree,
    format_certificate,
    format_point,
    load_certificate,
    load_scenario,
    parse_expr,
    write_text,
)
from bushyforce.strings import parse_str
from bushyforce.trees import FULL_TREE, t_plus_complement

DEFAULTS = {"depth": 6, "budget": 16, "seed": 1, "cases": 100}


def load_config() -> dict[str, int]:
    """Load depth, budget, seed, cases from ~/.config/bushyforce/config and /etc/bushyforce.conf."""
    out: dict[str, int] = {}
    config = configparser.ConfigParser()
    for path in [
        Path.home() / ".config" / "bushyforce" / "config",
        Path("/etc/bushyforce.conf"),
    ]:
        if not path.exists():
            continue
        try:
            config.read(path, encoding="utf-8")
            if config.has_section("bushyforce"):
                s = config["bushyforce"]
                for key in DEFAULTS:
                    if s.get(key) and key not in out:
                        out[key] = int(s[key].strip())
        except (configparser.Error, OSError, ValueError):
            pass
    return {key: out.get(key, value) for key, value in DEFAULTS.items()}


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure logging based on verbosity."""
    if quiet:
        level = logging.WARNING
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO

    logging.basicConfig(
        level=level, format="%(asctime)s [%(levelname)s] %(message)s", datefmt="%H:%M:%S"
    )


class _HelpAllArgumentParser(argparse.ArgumentParser):
    """Parser that shows short help by default and full help with --help-all."""

    def format_help(self) -> str:
        if "--help-all" in sys.argv:
            return super().format_help()
        short = (
            f"{self.description}\n\n"
            "usage: bushyforce COMMAND [ARGS] [OPTIONS]\n\n"
            "Queries:\n"
            "  big-check SET      Rank of a node for a set (or pair set) in a tree\n"
            "  witness SET        Extract and verify a bushy witness\n"
            "  pair-witness SET   Extract and verify a pair witness\n"
            "  dichotomy SET      Laver tree into the set, or a Threshold tree avoiding it\n"
            "  marcone TREE       Bigness of the complement of T+\n"
            "  fuse TREE...       Fuse a sequence of trees\n\n"
            "Runs:\n"
            "  run SCENARIO       Meet the scenario's tasks and write a certificate\n"
            "  verify CERT        Replay a certificate\n"
            "  schnorr H          Schnorr levels of an interleaver\n"
            "  laws               Run the randomized law suite\n\n"
            "Common options:\n"
            "  -v, --verbose      Enable verbose output\n"
            "  -q, --quiet        Suppress non-error output\n"
            "  --depth N          Depth budget (default: from config or 6)\n\n"
            "Full list of options: bushyforce --help-all\n"
        )
        return short


def create_parser() -> argparse.ArgumentParser:
    """Create argument parser."""
    cfg = load_config()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose output")
    common.add_argument("-q", "--quiet", action="store_true", help="Suppress non-error output")
    common.add_argument(
        "--depth",
        type=int,
        default=cfg["depth"],
        help=f"Depth budget (default: {cfg['depth']})",
    )
    common.add_argument("--out", metavar="PATH", help="Write the result to PATH")

    budgeted = argparse.ArgumentParser(add_help=False)
    budgeted.add_argument(
        "--budget",
        type=int,
        default=cfg["budget"],
        help=f"Pair rank recursion budget (default: {cfg['budget']})",
    )

    parser = _HelpAllArgumentParser(
        prog="bushyforce",
        description="Bigness calculus and bad-set forcings at desk scale",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Rank of [6] for the set of strings starting with an entry >= 7
  bushyforce big-check "UpFin([>=7])" --node "[6]"

  # Rank-2 Marcone example
  bushyforce marcone "Nodes([],[3])"

  # Generic run with a certificate, then replay it
  bushyforce run scenario.txt --out scenario.cert
  bushyforce verify scenario.cert

  # Law suite, and the broken union rule it must catch
  bushyforce laws --seed 1 --cases 100 --depth 3
  bushyforce laws --mutate union
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--help-all",
        action="store_true",
        help="Show all options (default help shows only common ones)",
    )

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def query(name: str, help_text: str, pairs: bool = False) -> argparse.ArgumentParser:
        parents = [common, budgeted] if pairs else [common]
        return sub.add_parser(name, parents=parents, help=help_text)

    p = query("big-check", "Rank of a node for a set in a tree", pairs=True)
    p.add_argument("set", help="Set expression, e.g. UpFin([0]) or UpFinP(([],[0]))")
    p.add_argument("--tree", default=str(FULL_TREE), help="Tree expression (default: full)")
    p.add_argument("--node", default="[]", help="Node, or ([σ],[τ]) for pair sets")

    p = query("witness", "Extract and verify a bushy witness")
    p.add_argument("set", help="Set expression")
    p.add_argument("--tree", default=str(FULL_TREE), help="Tree expression (default: full)")
    p.add_argument("--node", default="[]", help="Node")

    p = query("pair-witness", "Extract and verify a pair witness", pairs=True)
    p.add_argument("set", help="Pair set expression")
    p.add_argument("--node", default="([],[])", help="Pair ([σ],[τ])")

    p = query("dichotomy", "Laver tree into the set or Threshold tree avoiding it")
    p.add_argument("set", help="Set expression")
    p.add_argument("--tree", default=str(FULL_TREE), help="Threshold tree expression")
    p.add_argument("--node", default="[]", help="Node at or above the stem")

    p = query("marcone", "Bigness of the complement of T+")
    p.add_argument("tree", help="Nodes([..],...) for a finite tree, or a tree expression")

    p = query("fuse", "Fuse a sequence of trees")
    p.add_argument("trees", nargs="+", help="Tree expressions in order")

    p = query("run", "Run a scenario and write its certificate", pairs=True)
    p.add_argument("scenario", help="Scenario file")

    p = query("verify", "Replay a certificate", pairs=True)
    p.add_argument("certificate", help="Certificate file")

    p = query("schnorr", "Schnorr levels of an interleaver")
    p.add_argument("interleaver", help="Interleaver(m:[..],...)")
    p.add_argument("--cutoff", type=int, default=3, help="Number of levels (default: 3)")
    p.add_argument("--eps", default="1/2^2", help="Final level bound p/2^k (default: 1/2^2)")

    p = query("laws", "Run the randomized law suite")
    p.add_argument("--seed", type=int, default=cfg["seed"], help="Random seed")
    p.add_argument("--cases", type=int, default=cfg["cases"], help="Cases per law")
    p.add_argument("--mutate", choices=MUTATIONS, help="Break a rule on purpose")
    p.add_argument("--law", action="append", dest="laws", help="Run only this law")

    return parser


def exit_code_for(error: BaseException) -> int:
    """2 for parse errors, 4 for rank overflow, 3 for other task errors, 1 otherwise."""
    if isinstance(error, ScenarioParseError):
        return 2
    if isinstance(error, RankOverflow):
        return 4
    if isinstance(error, BushyForceError):
        return 3
    return 1


def _emit(text: str, out: Optional[str]) -> None:
    print(text, end="" if text.endswith("\n") else "\n")
    if out:
        write_text(out, text if text.endswith("\n") else text + "\n")


def _parse_node(text: str) -> Any:
    return build_point(parse_expr(text))


def print_run_result(run: GenericRun, verified: bool) -> None:
    """Print run summary."""
    print("\n" + "=" * 60)
    print("RUN SUMMARY")
    print("=" * 60)

    if run.complete and verified:
        print("Status: SUCCESS ✓")
    else:
        print("Status: FAILED ✗")

    print(f"Tasks met: {len(run.certificates)}")
    print(f"Prefix: {format_point(run.prefix)}")

    if run.certificates:
        print("\nTasks:")
        for cert in run.certificates:
            print(f"  ✓ {cert.task}: {cert.kind}")

    if run.error is not None:
        print(f"\n  ✗ task {run.failed_at}: {type(run.error).__name__}: {run.error}")

    print("=" * 60)


def cmd_big_check(set_text: str, tree_text: str, node_text: str, budget: int) -> int:
    """Print the rank of a node for a set."""
    try:
        bad = build_any_set(parse_expr(set_text))
        node = _parse_node(node_text)
        if isinstance(bad, PairSetRep):
            result = pair_rank(bad, node, budget)
        else:
            result = omega_rank(build_tree(parse_expr(tree_text)), bad, node)
        print(f"{bad} at {node_text}: {result}")
        return 0
    except BushyForceError as e:
        logging.error(f"Rank computation failed: {e}")
        return exit_code_for(e)


def cmd_witness(set_text: str, tree_text: str, node_text: str, out: Optional[str]) -> int:
    """Extract a witness and check it."""
    try:
        bad = build_set(parse_expr(set_text))
        tree = build_tree(parse_expr(tree_text))
        witness = extract_witness(tree, bad, parse_str(node_text))
        ok = verify_witness(tree, bad, witness)
        _emit(str(witness), out)
        print("✓ Witness verified" if ok else "✗ Witness rejected")
        return 0 if ok else 1
    except BushyForceError as e:
        logging.error(f"Witness extraction failed: {e}")
        return exit_code_for(e)


def cmd_pair_witness(set_text: str, node_text: str, budget: int, out: Optional[str]) -> int:
    """Extract a pair witness and check it."""
    try:
        bad = build_pair_set(parse_expr(set_text))
        witness = extract_pair_witness(bad, _parse_node(node_text), budget)
        ok = verify_pair_witness(bad, witness)
        lines = [f"stem: {witness.stem}"]
        lines += [f"edge: {parent} -> {child}" for parent, child in witness.edges()]
        _emit("\n".join(lines), out)
        print("✓ Pair witness verified" if ok else "✗ Pair witness rejected")
        return 0 if ok else 1
    except BushyForceError as e:
        logging.error(f"Pair witness extraction failed: {e}")
        return exit_code_for(e)


def cmd_dichotomy(set_text: str, tree_text: str, node_text: str, out: Optional[str]) -> int:
    """Print the arm of the dichotomy and its tree."""
    try:
        bad = build_set(parse_expr(set_text))
        arm = big_dichotomy(build_tree(parse_expr(tree_text)), bad, parse_str(node_text))
        label = "HechlerAvoid" if isinstance(arm, HechlerAvoid) else "LaverInto"
        _emit(f"{label}: {arm.tree}", out)
        return 0
    except BushyForceError as e:
        logging.error(f"Dichotomy failed: {e}")
        return exit_code_for(e)


def cmd_marcone(tree_text: str, depth: int) -> int:
    """Bigness of the complement of T+ for a finite node list or a tree."""
    try:
        node = parse_expr(tree_text)
        if isinstance(node, Call) and node.name == "Nodes":
            nodes = [build_point(x) for x in node.args]
            complement = t_plus_complement(nodes)
            result = omega_rank(FULL_TREE, complement, ())
            print(f"complement: {complement}")
        else:
            result = marcone_bounded(build_tree(node), depth)
        print(f"rank: {result}")
        return 0
    except BushyForceError as e:
        logging.error(f"Marcone check failed: {e}")
        return exit_code_for(e)


def cmd_fuse(tree_texts: list[str], out: Optional[str]) -> int:
    """Fuse trees and print the result."""
    try:
        fused = fuse([build_tree(parse_expr(t)) for t in tree_texts])
        _emit(str(fused), out)
        return 0
    except BushyForceError as e:
        logging.error(f"Fusion failed: {e}")
        return exit_code_for(e)


def cmd_run(scenario_path: str, out: Optional[str], depth: int, budget: int) -> int:
    """Run a scenario and write its certificate."""
    try:
        scenario = load_scenario(scenario_path)
    except ScenarioParseError as e:
        logging.error(f"Cannot parse scenario: {e}")
        return 2

    logging.info(f"Running {len(scenario.tasks)} tasks on {scenario.condition}")
    try:
        run = run_generic(scenario.condition, scenario.tasks, partial=True, budget=budget)
        verified = run.complete and verify_run(run, max(depth, scenario.depth), budget)
    except BushyForceError as e:
        logging.error(f"Run failed: {e}")
        return exit_code_for(e)

    target = out or str(Path(scenario_path).with_suffix(".cert"))
    write_text(target, format_certificate(scenario, run))
    print_run_result(run, verified)

    if run.error is not None:
        logging.error(f"Task {run.failed_at} failed: {run.error}")
        return exit_code_for(run.error)
    return 0 if verified else 1


def cmd_verify(certificate_path: str, depth: int, budget: int) -> int:
    """Replay a certificate."""
    try:
        certificate = load_certificate(certificate_path)
    except ScenarioParseError as e:
        logging.error(f"Cannot parse certificate: {e}")
        return 2

    run = certificate.run
    if run.chain[0] != certificate.scenario.condition:
        print("✗ Chain does not start at the scenario condition")
        return 1
    if certificate.prefix is not None and certificate.prefix != run.prefix:
        print("✗ Recorded prefix differs from the chain")
        return 1
    ok = verify_run(run, max(depth, certificate.scenario.depth), budget)
    print("✓ Certificate replays" if ok else "✗ Certificate does not replay")
    return 0 if ok else 1


def cmd_schnorr(h_text: str, cutoff: int, eps_text: str, out: Optional[str]) -> int:
    """Print the Schnorr levels of an interleaver."""
    try:
        node = parse_expr(h_text)
        if not isinstance(node, Call) or node.name != "Interleaver":
            raise ScenarioParseError("Expected Interleaver(m:[..],...)")
        h = {}
        for item in node.args:
            if not isinstance(item, KeyValue) or not isinstance(item.key, int):
                raise ScenarioParseError(f"Expected m:[..], got {item!r}")
            h[item.key] = build_point(item.value)
        approx = schnorr_levels(h, cutoff)
        ok = validate_schnorr(approx, parse_dyadic(eps_text))
        lines = [
            f"level {n}: {format_dyadic(measure)}"
            for n, (_, measure) in enumerate(approx.levels, start=1)
        ]
        _emit("\n".join(lines), out)
        print("✓ Valid Schnorr approximation" if ok else "✗ Invalid Schnorr approximation")
        return 0 if ok else 1
    except BushyForceError as e:
        logging.error(f"Schnorr levels failed: {e}")
        return exit_code_for(e)


def cmd_laws(
    seed: int,
    cases: int,
    depth: int,
    mutate: Optional[str],
    laws: Optional[list[str]],
    out: Optional[str],
) -> int:
    """Run the law suite and print its report."""
    try:
        report = run_law_suite(seed, cases, depth, mutate, laws)
    except ValueError as e:
        logging.error(str(e))
        return 2
    _emit(report.render(), out)
    return 0 if report.all_passed else 1


def main(args: Optional[list[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    try:
        opts = parser.parse_args(args)
    except SystemExit as e:
        return int(e.code or 0)

    if getattr(opts, "help_all", False):
        print(parser.format_help())
        return 0

    if not opts.command:
        parser.print_help()
        return 2

    setup_logging(opts.verbose, opts.quiet)

    try:
        if opts.command == "big-check":
            return cmd_big_check(opts.set, opts.tree, opts.node, opts.budget)
        if opts.command == "witness":
            return cmd_witness(opts.set, opts.tree, opts.node, opts.out)
        if opts.command == "pair-witness":
            return cmd_pair_witness(opts.set, opts.node, opts.budget, opts.out)
        if opts.command == "dichotomy":
            return cmd_dichotomy(opts.set, opts.tree, opts.node, opts.out)
        if opts.command == "marcone":
            return cmd_marcone(opts.tree, opts.depth)
        if opts.command == "fuse":
            return cmd_fuse(opts.trees, opts.out)
        if opts.command == "run":
            return cmd_run(opts.scenario, opts.out, opts.depth, opts.budget)
        if opts.command == "verify":
            return cmd_verify(opts.certificate, opts.depth, opts.budget)
        if opts.command == "schnorr":
            return cmd_schnorr(opts.interleaver, opts.cutoff, opts.eps, opts.out)
        return cmd_laws(opts.seed, opts.cases, opts.depth, opts.mutate, opts.laws, opts.out)
    except Exception as e:
        logging.exception(f"Unexpected error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
