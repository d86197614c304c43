"""Canonical transition system of a closure and the checks of its completeness machinery."""

import logging
import random

from collections import namedtuple

from ..errors import InvalidQueryError, NotDerivedError
from ..syntax import Atom
from ..system import TransitionSystem, is_subset, iter_bits, iter_submasks
from .amnesic import check_atom_amnesic
from .proof import derives, ensure_closed, void_views

LOGGER = logging.getLogger(__name__)

CanonicalInstruction = namedtuple('CanonicalInstruction', ['a', 'b', 'c'])

Plain = namedtuple('Plain', ['view'])

Partial = namedtuple('Partial', ['view', 'instruction'])

CanonicalModel = namedtuple('CanonicalModel', [
    'system',
    'instructions',
    'states',
    'valid'
])

TruthLemmaMismatch = namedtuple('TruthLemmaMismatch', ['atom', 'derived', 'holds'])

TruthLemmaReport = namedtuple('TruthLemmaReport', ['checked', 'mismatches'])

GStage = namedtuple('GStage', ['n', 'index', 'instruction', 'a_plus', 'b_plus', 'g', 'h'])

GChain = namedtuple('GChain', ['stages', 'f', 'g', 'strategy', 'g_star'])

ChainFailure = namedtuple('ChainFailure', ['n', 'check', 'detail'])


def valid_views(closure):
    """Mask of the views v for which {v} ▷_∅ ∅ is not derivable."""
    return closure.universe.full & ~void_views(closure)


def canonical_instructions(closure):
    """Enumerate the canonical instructions of a closure.

    These are the pairwise disjoint triples (A, B, C) of valid views with
    A ▷_{A∪B} C derivable, sorted by their masks.

    Returns:
        Tuple of CanonicalInstruction
    """
    valid = valid_views(closure)
    derived = closure.derived
    instructions = []
    for a in iter_submasks(valid):
        for b in iter_submasks(valid & ~a):
            for c in iter_submasks(valid & ~(a | b)):
                if Atom(a, a | b, c) in derived:
                    instructions.append(CanonicalInstruction(a, b, c))
    return tuple(sorted(instructions))


def canonical_model(closure):
    """Build the canonical transition system of a closure.

    States are the valid views themselves followed by one partial state per valid view
    and instruction. Instruction (A, B, C) leads from every A-observing state to the
    plain C states, from A-observing states not already partial for it into its partial
    states over A∪B, and from those partial states to the plain C states.

    Args:
        closure: Closure instance, closed under the rules

    Returns:
        CanonicalModel instance
    """
    ensure_closed(closure)
    universe = closure.universe
    valid = valid_views(closure)
    instructions = canonical_instructions(closure)
    views = list(iter_bits(valid))

    states = [Plain(view) for view in views]
    for view in views:
        states.extend(Partial(view, index) for index in range(len(instructions)))
    position = dict((state, index) for index, state in enumerate(states))

    def plain_targets(mask):
        return [position[Plain(view)] for view in iter_bits(mask)]

    transitions = []
    for index, (a, b, c) in enumerate(instructions):
        completions = plain_targets(c)
        entries = [position[Partial(view, index)] for view in iter_bits(a | b)]
        for state in states:
            if not a >> state.view & 1:
                continue
            source = position[state]
            transitions.extend((source, index, target) for target in completions)
            if not (isinstance(state, Partial) and state.instruction == index):
                transitions.extend((source, index, target) for target in entries)
        for source in entries:
            transitions.extend((source, index, target) for target in completions)

    names = []
    for state in states:
        if isinstance(state, Plain):
            names.append(universe.names[state.view])
        else:
            names.append("{}__i{}".format(universe.names[state.view], state.instruction))

    system = TransitionSystem(
        views=universe,
        instructions=["i{}".format(index) for index in range(len(instructions))],
        states=names,
        observation=[state.view for state in states],
        transitions=transitions)
    LOGGER.info("Canonical model has %d states and %d instructions", len(states), len(instructions))
    return CanonicalModel(system, instructions, tuple(states), valid)


def build_canonical(closure):
    """Build the canonical transition system of a closure."""
    return canonical_model(closure).system


def audit_canonical(model):
    """Check the structural properties of a canonical model.

    Returns:
        List of human readable findings, empty when every property holds
    """
    findings = []
    system = model.system
    for index, instruction in enumerate(model.instructions):
        if instruction.c == 0 and instruction.a != 0:
            findings.append("instruction i{} has an empty target but a nonempty start".format(index))
    for state, view in zip(system.states, system.observation):
        if not model.valid >> view & 1:
            findings.append("state {} observes an invalid view".format(state))
    for source, index, target in system.transitions():
        a, b, c = model.instructions[index]
        origin, destination = model.states[source], model.states[target]
        completes = isinstance(destination, Plain) and c >> destination.view & 1
        full_step = a >> origin.view & 1 and completes
        entry = (a >> origin.view & 1
                 and not (isinstance(origin, Partial) and origin.instruction == index)
                 and destination == Partial(destination.view, index)
                 and (a | b) >> destination.view & 1)
        completion = (isinstance(origin, Partial) and origin.instruction == index
                      and (a | b) >> origin.view & 1 and completes)
        if not (full_step or entry or completion):
            findings.append("transition {} {} {} matches no clause".format(
                system.states[source], system.instructions[index], system.states[target]))
    return findings


def dedicated_instruction(closure, atom):
    """Get the canonical instruction associated with a derivable atom.

    Throws:
        NotDerivedError if the atom is not derivable

    Returns:
        CanonicalInstruction ((A∖C)∩Valid, (B∖(A∪C))∩Valid, C∩Valid)
    """
    if not derives(closure, atom):
        raise NotDerivedError("Atom {} is not derivable".format(atom))
    valid = valid_views(closure)
    a, b, c = atom
    return CanonicalInstruction(a & ~c & valid, b & ~(a | c) & valid, c & valid)


def _all_atoms(full):
    for a in range(full + 1):
        for b in range(full + 1):
            for c in range(full + 1):
                yield Atom(a, b, c)


def verify_truth_lemma(closure, sample=None, seed=0):
    """Compare derivability with truth in the canonical model.

    Args:
        closure: Closure instance
        sample: Number of random atoms to check, or None to check every atom
        seed: Seed of the atom sampler

    Returns:
        TruthLemmaReport listing every atom where the two disagree
    """
    system = build_canonical(closure)
    full = closure.universe.full
    if sample is None:
        atoms = _all_atoms(full)
    else:
        rng = random.Random(seed)
        atoms = [Atom(rng.randint(0, full), rng.randint(0, full), rng.randint(0, full))
                 for _ in range(sample)]
    checked = 0
    mismatches = []
    for atom in atoms:
        checked += 1
        derived = atom in closure.derived
        holds = check_atom_amnesic(system, atom, canonical_witness=False).holds
        if derived != holds:
            mismatches.append(TruthLemmaMismatch(atom, derived, holds))
    LOGGER.info("Truth lemma checked %d atoms, %d mismatches", checked, len(mismatches))
    return TruthLemmaReport(checked, mismatches)


def _stage_conditions(instruction, index, strategy, f, g, previous):
    """Evaluate the five chain conditions for one candidate instruction.

    Returns:
        Pair (A+, B+) when every condition holds, otherwise None
    """
    a, b, c = instruction
    a_plus = sum(1 << view for view in iter_bits(a) if strategy(view) == index)
    b_plus = sum(1 << view for view in iter_bits(b) if strategy(view) == index)
    if not is_subset(a | b, f | g):
        return None
    if not a_plus & ~previous:
        return None
    if not is_subset(a & ~a_plus, previous) or not is_subset(b & ~b_plus, previous):
        return None
    if not is_subset(c, previous):
        return None
    return a_plus, b_plus


def gstar_chain(closure, strategy, f, g, order=None):
    """Grow the G chain of a strategy in the canonical model until it stabilises.

    Args:
        closure: Closure instance
        strategy: AmnesicStrategy over the canonical model's views
        f: View mask F
        g: View mask G
        order: Instruction indices in the order candidates are scanned, canonical order
            by default

    Returns:
        GChain whose g_star is the last G_n
    """
    model = canonical_model(closure)
    instructions = model.instructions
    if len(strategy.choice) != len(closure.universe):
        raise InvalidQueryError("Strategy must be defined on all {} views".format(len(closure.universe)))
    if any(not 0 <= index < len(instructions) for index in strategy.choice):
        raise InvalidQueryError("Strategy uses an unknown canonical instruction")
    candidates = list(range(len(instructions)) if order is None else order)

    stages = []
    current_g, current_h = g, 0
    while True:
        for index in candidates:
            found = _stage_conditions(instructions[index], index, strategy, f, g, current_g)
            if found is not None:
                break
        else:
            break
        a_plus, b_plus = found
        current_g |= a_plus
        current_h |= b_plus
        stages.append(GStage(len(stages) + 1, index, instructions[index], a_plus, b_plus, current_g, current_h))
        LOGGER.debug("G chain stage %d chose i%d, G=%#x", len(stages), index, current_g)
    return GChain(tuple(stages), f, g, strategy, current_g)


def certify_chain(closure, chain):
    """Check every stage of a G chain against the closure.

    Returns:
        List of ChainFailure, empty when the chain is certified
    """
    failures = []
    previous = chain.g
    starts = set()
    for stage in chain.stages:
        if _stage_conditions(stage.instruction, stage.index, chain.strategy, chain.f, chain.g, previous) is None:
            failures.append(ChainFailure(stage.n, "conditions", stage.instruction))
        base = Atom(stage.g, stage.g | stage.b_plus, previous)
        if base not in closure.derived:
            failures.append(ChainFailure(stage.n, "ggg-base", base))
        main = Atom(stage.g, stage.g | stage.h, chain.g)
        if main not in closure.derived:
            failures.append(ChainFailure(stage.n, "main", main))
        if stage.instruction.a in starts:
            failures.append(ChainFailure(stage.n, "distinct-start", stage.instruction.a))
        starts.add(stage.instruction.a)
        if not is_subset(stage.g | stage.h, chain.f | chain.g):
            failures.append(ChainFailure(stage.n, "bounded", stage.g | stage.h))
        previous = stage.g
    return failures
