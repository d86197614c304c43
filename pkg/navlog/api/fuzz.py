"""Random systems and the seeded soundness campaign."""

import logging
import random
import time

from collections import namedtuple

from ..config import validate_fuzz_config
from ..fixtures import load_fixture
from ..syntax import Atom, render_atom, render_system
from ..system import AmnesicStrategy, TransitionSystem, check_strategy
from .amnesic import check_atom_amnesic, objective_of
from .recall import check_atom_recall
from .types import FuzzProperty

LOGGER = logging.getLogger(__name__)

FIXTURE_COUNTEREXAMPLE = "unrestricted-amnesic-transitivity"

PropertyTally = namedtuple('PropertyTally', ['checked', 'passed', 'failed'])

FuzzFailure = namedtuple('FuzzFailure', ['trial', 'property', 'system', 'queries', 'detail'])

ExpectedCounterexample = namedtuple('ExpectedCounterexample', ['trial', 'property', 'queries'])

FuzzReport = namedtuple('FuzzReport', ['tallies', 'failures', 'expected_counterexamples', 'elapsed'])


def _rng(seed, trial, purpose=""):
    return random.Random("{}:{}{}".format(seed, trial, purpose))


def generate_random_system(fuzz_config, trial):
    """Generate a random system, deterministically from the seed and trial index.

    Sizes are drawn uniformly between one and their bound, each state observes a uniformly
    drawn view, and every (state, instruction, state) triple is a transition with
    probability `transition_density`.

    Args:
        fuzz_config: FuzzConfig instance
        trial: Trial index

    Returns:
        TransitionSystem instance
    """
    validate_fuzz_config(fuzz_config)
    rng = _rng(fuzz_config.seed, trial)
    state_count = rng.randint(1, fuzz_config.max_states)
    view_count = rng.randint(1, fuzz_config.max_views)
    instruction_count = rng.randint(1, fuzz_config.max_instructions)
    observation = [rng.randrange(view_count) for _ in range(state_count)]
    transitions = [
        (source, instruction, target)
        for source in range(state_count)
        for instruction in range(instruction_count)
        for target in range(state_count)
        if rng.random() < fuzz_config.transition_density]
    return TransitionSystem(
        views=["v{}".format(view) for view in range(view_count)],
        instructions=[str(instruction) for instruction in range(instruction_count)],
        states=["s{}".format(state) for state in range(state_count)],
        observation=observation,
        transitions=transitions)


class _Campaign(object):
    """Property bookkeeping of one soundness campaign."""

    def __init__(self):
        self.checked = dict((name, 0) for name in FuzzProperty.ALL)
        self.failed = dict((name, 0) for name in FuzzProperty.ALL)
        self.failures = []

    def record(self, trial, system, name, ok, atoms, detail=None):
        self.checked[name] += 1
        if ok:
            return
        self.failed[name] += 1
        self.failures.append(FuzzFailure(
            trial, name, render_system(system),
            [render_atom(atom, system.views) for atom in atoms], detail))
        LOGGER.warning("Trial %d violates %s", trial, name)

    def tallies(self):
        return dict(
            (name, PropertyTally(self.checked[name], self.checked[name] - self.failed[name], self.failed[name]))
            for name in FuzzProperty.ALL)


def _amnesic(system, atom):
    return check_atom_amnesic(system, atom, canonical_witness=False)


def _check_trial(campaign, trial, system, rng):
    full = system.views.full
    instructions = len(system.instructions)

    def views():
        return rng.randint(0, full)

    def corridor():
        return rng.randint(0, full) | rng.randint(0, full)

    def record(name, ok, *atoms):
        campaign.record(trial, system, name, ok, atoms)

    a, b, c, d, e = views(), corridor(), views(), views(), views()

    reflexive = Atom(a, b, a | c)
    record(FuzzProperty.REFLEXIVITY, _amnesic(system, reflexive).holds, reflexive)

    premise = _amnesic(system, Atom(a, b, c))
    if premise.holds:
        augmented = Atom(a | d, b, c | d)
        record(FuzzProperty.AUGMENTATION, _amnesic(system, augmented).holds, Atom(a, b, c), augmented)
        early = Atom(a, b & ~c, c)
        record(FuzzProperty.EARLY_BIRD, _amnesic(system, early).holds, Atom(a, b, c), early)
        record(FuzzProperty.AMNESIC_IMPLIES_RECALL, check_atom_recall(system, Atom(a, b, c)).holds, Atom(a, b, c))

        outside = [view for view in range(len(system.views)) if not b >> view & 1]
        switched = list(premise.witness.choice)
        for view in outside:
            switched[view] = rng.randrange(instructions)
        switched = AmnesicStrategy(tuple(switched))
        witness = check_strategy(system, switched, objective_of(system, Atom(a, b, c)))
        record(FuzzProperty.SWITCH_S, witness is None, Atom(a, b, c))

        second_corridor = corridor() & ~b
        second = _amnesic(system, Atom(c, second_corridor, e))
        if second.holds:
            composed = Atom(a, b | second_corridor, e)
            record(FuzzProperty.TRANSITIVITY, _amnesic(system, composed).holds,
                   Atom(a, b, c), Atom(c, second_corridor, e), composed)
            strategy = AmnesicStrategy(tuple(
                premise.witness.choice[view] if b >> view & 1 else second.witness.choice[view]
                for view in range(len(system.views))))
            witness = check_strategy(system, strategy, objective_of(system, composed))
            record(FuzzProperty.TRANSITIVITY_COMPOSITION, witness is None,
                   Atom(a, b, c), Atom(c, second_corridor, e), composed)

    trivial = Atom(a, 0, c)
    if _amnesic(system, trivial).holds:
        conclusion = Atom(a & ~c, 0, 0)
        record(FuzzProperty.TRIVIAL_PATH, _amnesic(system, conclusion).holds, trivial, conclusion)

    nowhere = Atom(a, b, 0)
    if _amnesic(system, nowhere).holds:
        conclusion = Atom(a, 0, 0)
        record(FuzzProperty.PATH_TO_NOWHERE, _amnesic(system, conclusion).holds, nowhere, conclusion)

    first, second = Atom(a, full, c), Atom(c, full, e)
    if check_atom_recall(system, first).holds and check_atom_recall(system, second).holds:
        conclusion = Atom(a, full, e)
        record(FuzzProperty.RECALL_TRANSITIVITY, check_atom_recall(system, conclusion).holds,
               first, second, conclusion)


def _fixture_counterexample(campaign, expected, trial, system):
    """Confirm that unrestricted amnesic transitivity fails on the bundled T0 system."""
    views = system.views
    full = views.full
    first = Atom(views.mask(["v1"]), full, views.mask(["v6"]))
    second = Atom(views.mask(["v6"]), full, views.mask(["v2"]))
    conclusion = Atom(views.mask(["v1"]), full, views.mask(["v2"]))
    queries = [render_atom(atom, views) for atom in (first, second, conclusion)]
    confirmed = (_amnesic(system, first).holds and _amnesic(system, second).holds
                 and not _amnesic(system, conclusion).holds)
    if confirmed:
        expected.append(ExpectedCounterexample(trial, FIXTURE_COUNTEREXAMPLE, queries))
    else:
        campaign.failures.append(FuzzFailure(
            trial, FIXTURE_COUNTEREXAMPLE, render_system(system), queries,
            "expected counterexample was not reproduced"))


def fuzz_soundness(fuzz_config, inject_fixture=True):
    """Run the seeded soundness campaign.

    Every trial draws a random system (the bundled T0 system for trial 0 when
    `inject_fixture` is set) and random view sets, then checks the semantic form of each
    rule of the proof system together with the strategy-level lemmas behind them.

    Args:
        fuzz_config: FuzzConfig instance
        inject_fixture: Use the T0 fixture as trial 0

    Returns:
        FuzzReport instance
    """
    validate_fuzz_config(fuzz_config)
    started = time.time()
    campaign = _Campaign()
    expected = []
    for trial in range(fuzz_config.trials):
        if trial == 0 and inject_fixture:
            system = load_fixture("t0")
            _fixture_counterexample(campaign, expected, trial, system)
        else:
            system = generate_random_system(fuzz_config, trial)
        _check_trial(campaign, trial, system, _rng(fuzz_config.seed, trial, ":sets"))
    report = FuzzReport(campaign.tallies(), campaign.failures, expected, time.time() - started)
    LOGGER.info("Fuzzed %d trials in %.2fs with %d failures",
                fuzz_config.trials, report.elapsed, len(report.failures))
    return report
