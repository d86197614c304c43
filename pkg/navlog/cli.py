"""Navlog command line interface."""

import argparse
import json
import logging
import logging.config
import os
import sys
import time

from . import __version__
from .api.amnesic import check_atom_amnesic, evaluate, navigability_table, objective_of
from .api.canonical import (
    audit_canonical,
    canonical_model,
    certify_chain,
    gstar_chain,
    valid_views,
    verify_truth_lemma
)
from .api.fuzz import fuzz_soundness
from .api.proof import check_derived_lemmas, derives, explain, saturate
from .api.recall import check_atom_recall
from .api.types import CheckMode, ExitStatus, FuzzProperty
from .config import default_config, load_config, validate_fuzz_config
from .errors import InvariantViolation, NavlogError
from .fixtures import FIXTURES, load_fixture
from .syntax import (
    parse_atom,
    parse_formula,
    parse_strategy,
    parse_system,
    parse_theory,
    parse_view_set,
    render_atom,
    render_formula,
    render_strategy,
    render_system,
    render_view_set
)
from .system import ViewUniverse, check_strategy

LOGGER = logging.getLogger(__name__)


def configure_logging(verbose=False):
    """Send navlog log records to stderr."""
    logging.config.dictConfig({
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'verbose': {
                'format': '%(name)s: %(message)s'
            }
        },
        'handlers': {
            'console': {
                'level': 'DEBUG',
                'class': 'logging.StreamHandler',
                'formatter': 'verbose',
            },
        },
        'loggers': {
            'navlog': {
                'level': 'DEBUG' if verbose else 'WARNING',
                'propagate': False,
                'handlers': ['console'],
            },
        }
    })


def _read_text(path):
    with open(path, "r") as text_file:
        return text_file.read()


def _read_system(path):
    """Load a system file, falling back to the bundled fixtures by name."""
    if os.path.exists(path):
        return parse_system(_read_text(path))
    name = os.path.splitext(os.path.basename(path))[0]
    if name in FIXTURES:
        return load_fixture(name)
    raise NavlogError("System file {} does not exist".format(path))


def _comma_list(text):
    return [name.strip() for name in text.split(",") if name.strip()]


def _theory(args):
    universe = ViewUniverse(_comma_list(args.views))
    assumptions = [parse_atom(text, universe) for text in args.assume]
    if args.theory:
        assumptions.extend(parse_theory(_read_text(args.theory), universe))
    return universe, assumptions


def _closure(args, config):
    universe, assumptions = _theory(args)
    return saturate(universe, assumptions, max_views=config.saturation.max_views)


def _counterexample_json(system, witness):
    if witness is None:
        return None
    return {
        "states": [system.states[state] for state in witness.states],
        "loop_start": witness.loop_start,
        "reason": witness.reason
    }


def _render_counterexample(system, witness):
    text = "counterexample: {} {}".format(
        witness.reason, " ".join(system.states[state] for state in witness.states))
    if witness.loop_start is not None:
        text += " (loop back to {})".format(system.states[witness.states[witness.loop_start]])
    return text


def _belief_label(system, belief):
    return "{}{{{}}}".format(
        system.views.names[belief.view], ", ".join(system.states[state] for state in belief.states()))


class _Output(object):
    """Collect the lines or JSON document printed by a command."""

    def __init__(self, stream, as_json):
        self.stream = stream
        self.as_json = as_json

    def line(self, text=""):
        if not self.as_json:
            self.stream.write(text + "\n")

    def document(self, payload):
        if self.as_json:
            self.stream.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _verdict_status(args, holds):
    if args.fail_if_false and not holds:
        return ExitStatus.VERDICT_FALSE
    return ExitStatus.ANSWERED


def command_check(args, config, out):
    system = _read_system(args.file)
    atom = parse_atom(args.formula, system.views)
    query = render_atom(atom, system.views)
    started = time.time()
    witness_json = None
    counterexample = None
    stats = {}

    if args.strategy:
        strategy = parse_strategy(_read_text(args.strategy), system)
        counterexample = check_strategy(system, strategy, objective_of(system, atom))
        holds = counterexample is None
        witness_json = dict(zip(system.views, (system.instructions[index] for index in strategy.choice)))
        mode = "strategy"
    elif args.mode == CheckMode.AMNESIC:
        decision = check_atom_amnesic(system, atom)
        holds = decision.holds
        if decision.witness is not None:
            witness_json = dict(zip(system.views, (system.instructions[index] for index in decision.witness.choice)))
        stats["strategies_examined"] = decision.strategies_examined
        mode = CheckMode.AMNESIC
    else:
        decision = check_atom_recall(system, atom)
        holds = decision.holds
        if holds:
            witness_json = [
                {"view": system.views.names[belief.view],
                 "states": [system.states[state] for state in belief.states()],
                 "instruction": system.instructions[instruction]}
                for belief, instruction in sorted(decision.witness.items())]
        stats["beliefs_explored"] = decision.explored
        mode = CheckMode.RECALL
    stats["elapsed_ms"] = int((time.time() - started) * 1000)

    out.line("HOLDS" if holds else "FAILS")
    if args.witness and holds and mode == CheckMode.AMNESIC and decision.witness is not None:
        out.line("witness: " + render_strategy(system, decision.witness))
    elif args.witness and holds and mode == CheckMode.RECALL:
        for belief, instruction in sorted(decision.witness.items()):
            out.line("witness: {} -> {}".format(_belief_label(system, belief), system.instructions[instruction]))
    if counterexample is not None:
        out.line(_render_counterexample(system, counterexample))
    out.document({
        "query": query,
        "mode": mode,
        "holds": holds,
        "witness": witness_json,
        "counterexample": _counterexample_json(system, counterexample),
        "stats": stats
    })
    return _verdict_status(args, holds)


def command_eval(args, config, out):
    system = _read_system(args.file)
    formula = parse_formula(args.formula, system.views)
    started = time.time()
    holds = evaluate(system, formula)
    out.line("TRUE" if holds else "FALSE")
    out.document({
        "query": render_formula(formula, system.views),
        "mode": CheckMode.AMNESIC,
        "holds": holds,
        "witness": None,
        "counterexample": None,
        "stats": {"elapsed_ms": int((time.time() - started) * 1000)}
    })
    return _verdict_status(args, holds)


def command_table(args, config, out):
    system = _read_system(args.file)
    classes = _comma_list(args.classes)
    table = navigability_table(system, classes)
    width = max(len(name) for name in classes) if classes else 1
    out.line(" " * (width + 1) + " ".join(name.ljust(width) for name in classes).rstrip())
    for name, row in zip(classes, table.rows):
        out.line(name.ljust(width) + " " + " ".join(cell.ljust(width) for cell in row).rstrip())
    out.document({"classes": classes, "rows": table.rows})
    return ExitStatus.ANSWERED


def command_saturate(args, config, out):
    closure = _closure(args, config)
    universe = closure.universe
    valid = valid_views(closure)
    out.line("derived {} atoms from {} assumptions".format(len(closure), len(closure.assumptions)))
    out.line("valid views: " + render_view_set(valid, universe))
    status = ExitStatus.ANSWERED
    violations = []
    if args.lemmas:
        report = check_derived_lemmas(closure)
        violations = report.violations
        for lemma in sorted(report.checked):
            out.line("lemma {}: {} instances".format(lemma, report.checked[lemma]))
        for violation in violations:
            out.line("violation {}: {}".format(violation.lemma, render_atom(violation.conclusion, universe)))
        if violations:
            status = ExitStatus.INVARIANT_VIOLATION
    out.document({
        "views": list(universe),
        "assumptions": [render_atom(atom, universe) for atom in sorted(closure.assumptions)],
        "derived": [render_atom(atom, universe) for atom in sorted(closure.derived)],
        "valid": list(universe.names_of(valid)),
        "lemma_violations": [
            {"lemma": violation.lemma, "conclusion": render_atom(violation.conclusion, universe)}
            for violation in violations]
    })
    return status


def command_derive(args, config, out):
    closure = _closure(args, config)
    atom = parse_atom(args.atom, closure.universe)
    derived = derives(closure, atom)
    out.line("DERIVED" if derived else "NOT DERIVED")
    out.document({"query": render_atom(atom, closure.universe), "derived": derived})
    return _verdict_status(args, derived)


def _tree_json(tree, universe):
    return {
        "atom": render_atom(tree.atom, universe),
        "rule": tree.rule,
        "children": [_tree_json(child, universe) for child in tree.children]
    }


def command_explain(args, config, out):
    closure = _closure(args, config)
    universe = closure.universe
    tree = explain(closure, parse_atom(args.atom, universe))

    def show(node, depth):
        out.line("{}{}  [{}]".format("  " * depth, render_atom(node.atom, universe), node.rule))
        for child in node.children:
            show(child, depth + 1)

    show(tree, 0)
    out.document(_tree_json(tree, universe))
    return ExitStatus.ANSWERED


def command_canonical(args, config, out):
    closure = _closure(args, config)
    model = canonical_model(closure)
    universe = closure.universe
    out.line("{} states, {} instructions, valid views {}".format(
        len(model.states), len(model.instructions), render_view_set(model.valid, universe)))
    for index, instruction in enumerate(model.instructions):
        out.line("i{}: ({}, {}, {})".format(index, *(render_view_set(mask, universe) for mask in instruction)))
    if args.emit:
        with open(args.emit, "w") as emit_file:
            emit_file.write(render_system(model.system))
    payload = {
        "states": list(model.system.states),
        "instructions": [[list(universe.names_of(mask)) for mask in instruction]
                         for instruction in model.instructions],
        "valid": list(universe.names_of(model.valid))
    }
    status = ExitStatus.ANSWERED
    if args.verify:
        findings = audit_canonical(model)
        sample = None
        if len(universe) > config.truth_lemma.exhaustive_max_views:
            sample = config.truth_lemma.sample_size
        report = verify_truth_lemma(closure, sample=sample, seed=config.truth_lemma.seed)
        out.line("truth lemma: {} atoms checked, {} mismatches".format(report.checked, len(report.mismatches)))
        for mismatch in report.mismatches:
            out.line("mismatch {}: derived={} holds={}".format(
                render_atom(mismatch.atom, universe), mismatch.derived, mismatch.holds))
        for finding in findings:
            out.line("finding: " + finding)
        payload["truth_lemma"] = {
            "checked": report.checked,
            "mismatches": [render_atom(mismatch.atom, universe) for mismatch in report.mismatches]
        }
        payload["findings"] = findings
        if report.mismatches or findings:
            status = ExitStatus.INVARIANT_VIOLATION
    out.document(payload)
    return status


def command_gchain(args, config, out):
    closure = _closure(args, config)
    universe = closure.universe
    model = canonical_model(closure)
    strategy = parse_strategy(_read_text(args.strategy), model.system)
    f = parse_view_set(args.F, universe)
    g = parse_view_set(args.G, universe)
    chain = gstar_chain(closure, strategy, f, g)
    failures = certify_chain(closure, chain)
    for stage in chain.stages:
        out.line("G{} = {} via i{}, H{} = {}".format(
            stage.n, render_view_set(stage.g, universe), stage.index,
            stage.n, render_view_set(stage.h, universe)))
    out.line("G* = " + render_view_set(chain.g_star, universe))
    for failure in failures:
        out.line("failure at stage {}: {}".format(failure.n, failure.check))
    out.document({
        "stages": [{"n": stage.n, "instruction": "i{}".format(stage.index),
                    "g": list(universe.names_of(stage.g)), "h": list(universe.names_of(stage.h))}
                   for stage in chain.stages],
        "g_star": list(universe.names_of(chain.g_star)),
        "failures": [{"n": failure.n, "check": failure.check} for failure in failures]
    })
    return ExitStatus.INVARIANT_VIOLATION if failures else ExitStatus.ANSWERED


def command_fuzz(args, config, out):
    overrides = dict((name, value) for name, value in (
        ("seed", args.seed),
        ("trials", args.trials),
        ("max_states", args.max_states),
        ("max_views", args.max_views),
        ("max_instructions", args.max_instructions),
        ("transition_density", args.density)) if value is not None)
    fuzz_config = validate_fuzz_config(config.fuzz._replace(**overrides))
    report = fuzz_soundness(fuzz_config)
    for name in FuzzProperty.ALL:
        tally = report.tallies[name]
        out.line("{}: {} checked, {} passed, {} failed".format(name, tally.checked, tally.passed, tally.failed))
    for expected in report.expected_counterexamples:
        out.line("expected counterexample at trial {}: {}".format(expected.trial, " ; ".join(expected.queries)))
    for failure in report.failures:
        out.line("failure at trial {}: {} {}".format(failure.trial, failure.property, " ; ".join(failure.queries)))
    out.line("{} trials in {:.2f}s".format(fuzz_config.trials, report.elapsed))
    out.document({
        "config": fuzz_config._asdict(),
        "tallies": dict((name, tally._asdict()) for name, tally in report.tallies.items()),
        "failures": [failure._asdict() for failure in report.failures],
        "expected_counterexamples": [expected._asdict() for expected in report.expected_counterexamples],
        "elapsed_ms": int(report.elapsed * 1000)
    })
    return ExitStatus.INVARIANT_VIOLATION if report.failures else ExitStatus.ANSWERED


def build_parser():
    """Build the argument parser of every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document")
    common.add_argument("--fail-if-false", action="store_true", help="exit 1 when the verdict is false")
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--verbose", "-v", action="store_true", help="log search progress")

    theory = argparse.ArgumentParser(add_help=False)
    theory.add_argument("--views", required=True, help="comma separated view universe")
    theory.add_argument("--assume", action="append", default=[], help="assumed atom, repeatable")
    theory.add_argument("--theory", help="file with one assumed atom per line")

    parser = argparse.ArgumentParser(prog="navlog", description="Navigability checker and proof engine")
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    check = commands.add_parser("check", parents=[common], help="decide one atom")
    check.add_argument("file")
    check.add_argument("formula")
    check.add_argument("--mode", choices=CheckMode.ALL, default=CheckMode.AMNESIC)
    check.add_argument("--witness", action="store_true")
    check.add_argument("--strategy", help="check one fixed strategy from a file")
    check.set_defaults(handler=command_check)

    evaluate_parser = commands.add_parser("eval", parents=[common], help="evaluate a formula")
    evaluate_parser.add_argument("file")
    evaluate_parser.add_argument("formula")
    evaluate_parser.set_defaults(handler=command_eval)

    table = commands.add_parser("table", parents=[common], help="tabulate navigability between classes")
    table.add_argument("file")
    table.add_argument("--classes", required=True)
    table.set_defaults(handler=command_table)

    saturate_parser = commands.add_parser("saturate", parents=[common, theory], help="saturate a theory")
    saturate_parser.add_argument("--lemmas", action="store_true", help="sweep the admissible lemmas")
    saturate_parser.set_defaults(handler=command_saturate)

    derive = commands.add_parser("derive", parents=[common, theory], help="check derivability")
    derive.add_argument("atom")
    derive.set_defaults(handler=command_derive)

    explain_parser = commands.add_parser("explain", parents=[common, theory], help="print a derivation")
    explain_parser.add_argument("atom")
    explain_parser.set_defaults(handler=command_explain)

    canonical = commands.add_parser("canonical", parents=[common, theory], help="build the canonical model")
    canonical.add_argument("--emit", help="write the model as an .ets file")
    canonical.add_argument("--verify", action="store_true", help="check the truth lemma")
    canonical.set_defaults(handler=command_canonical)

    gchain = commands.add_parser("gchain", parents=[common, theory], help="grow a G chain")
    gchain.add_argument("--strategy", required=True, help="file mapping views to canonical instructions")
    gchain.add_argument("--F", required=True)
    gchain.add_argument("--G", required=True)
    gchain.set_defaults(handler=command_gchain)

    fuzz = commands.add_parser("fuzz", parents=[common], help="run the soundness campaign")
    fuzz.add_argument("--seed", type=int)
    fuzz.add_argument("--trials", type=int)
    fuzz.add_argument("--max-states", type=int)
    fuzz.add_argument("--max-views", type=int)
    fuzz.add_argument("--max-instructions", type=int)
    fuzz.add_argument("--density", type=float)
    fuzz.set_defaults(handler=command_fuzz)
    return parser


def run_cli(argv, stdout=None):
    """Run one command.

    Args:
        argv: Argument vector without the program name
        stdout: Stream receiving the output, sys.stdout by default

    Returns:
        ExitStatus value
    """
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return ExitStatus.ANSWERED if not error.code else ExitStatus.USAGE_ERROR

    configure_logging(args.verbose)
    out = _Output(stdout, args.json)
    try:
        config = load_config(args.config) if args.config else default_config()
        return args.handler(args, config, out)
    except InvariantViolation as error:
        LOGGER.error("Invariant violation: %s", error)
        sys.stderr.write("error: {}\n".format(error))
        return ExitStatus.INVARIANT_VIOLATION
    except (NavlogError, IOError) as error:
        sys.stderr.write("error: {}\n".format(error))
        return ExitStatus.USAGE_ERROR
    except Exception:
        LOGGER.exception("Unexpected failure")
        return ExitStatus.INVARIANT_VIOLATION


def main():
    """Console entry point."""
    sys.exit(run_cli(sys.argv[1:]))
