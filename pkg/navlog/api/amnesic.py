"""Amnesic navigability: strategy search and formula evaluation."""

import itertools
import logging

from collections import namedtuple

from ..errors import InvalidQueryError
from ..syntax import Atom, AtomNode, Implies, Not
from ..system import (
    AmnesicStrategy,
    UntilObjective,
    explore_partial_strategy,
    validate_objective
)
from .recall import check_atom_recall
from .types import CellVerdict, CheckMode

LOGGER = logging.getLogger(__name__)

AmnesicDecision = namedtuple('AmnesicDecision', [
    'holds',
    'witness',
    'strategies_examined',
    'note'
])

NavigabilityTable = namedtuple('NavigabilityTable', [
    'classes',
    'rows'
])


def objective_of(system, atom):
    """Build the until objective of an atom, checking it against the system's views."""
    objective = UntilObjective(atom.a, atom.b, atom.c)
    validate_objective(system, objective)
    return objective


class _Search(object):
    """Backtracking search over partial strategies."""

    def __init__(self, system, objective):
        self.system = system
        self.objective = objective
        self.examined = 0

    def exists(self, choice):
        """Find a successful completion of a partial strategy.

        Views left unassigned in `choice` are assigned only when the exploration meets
        them; views never met are completed with the first instruction.

        Args:
            choice: List indexed by view holding an instruction index or None

        Returns:
            Completed choice tuple, or None when no completion succeeds
        """
        self.examined += 1
        witness, pending = explore_partial_strategy(self.system, choice, self.objective)
        if witness is not None:
            LOGGER.debug("Pruned partial strategy %s: %s", choice, witness.reason)
            return None
        if pending is None:
            return tuple(0 if instruction is None else instruction for instruction in choice)
        for instruction in range(len(self.system.instructions)):
            choice[pending] = instruction
            found = self.exists(choice)
            if found is not None:
                choice[pending] = None
                return found
        choice[pending] = None
        return None

    def constant(self):
        """Find the first constant strategy that succeeds."""
        views = len(self.system.views)
        for instruction in range(len(self.system.instructions)):
            self.examined += 1
            witness, _ = explore_partial_strategy(self.system, [instruction] * views, self.objective)
            if witness is None:
                return (instruction,) * views
        return None

    def least(self, found):
        """Lower a successful strategy to the lexicographically least one, view by view."""
        choice = list(found)
        for view in range(len(choice)):
            for instruction in range(choice[view]):
                candidate = choice[:view] + [instruction] + [None] * (len(choice) - view - 1)
                lowered = self.exists(candidate)
                if lowered is not None:
                    choice = list(lowered)
                    break
        return tuple(choice)


def check_atom_amnesic(system, atom, canonical_witness=True):
    """Decide whether some amnesic strategy navigates from A to C through B.

    The reported witness is the first constant strategy that works, if any, otherwise the
    lexicographically least successful strategy in declaration order. A constant strategy
    is reported even when a mixed strategy is lexicographically smaller. A system without
    instructions has no strategy at all: atoms it satisfies without moving hold with
    witness None.

    Args:
        system: TransitionSystem instance
        atom: Atom instance over the system's views
        canonical_witness: When False, report the first strategy found without lowering it

    Returns:
        AmnesicDecision instance
    """
    objective = objective_of(system, atom)
    search = _Search(system, objective)

    if not system.instructions and len(system.views):
        witness, pending = explore_partial_strategy(system, [None] * len(system.views), objective)
        holds = witness is None and pending is None
        return AmnesicDecision(holds, None, 1, "satisfied without moving" if holds else
                               "no strategy exists without instructions")

    found = None
    note = None
    if canonical_witness:
        found = search.constant()
        if found is not None:
            note = "constant strategy"
    if found is None:
        found = search.exists([None] * len(system.views))
        if found is not None and canonical_witness:
            found = search.least(found)

    decision = AmnesicDecision(
        holds=found is not None,
        witness=AmnesicStrategy(found) if found is not None else None,
        strategies_examined=search.examined,
        note=note)
    LOGGER.info("Amnesic check %s: holds=%s after %d explorations",
                atom, decision.holds, decision.strategies_examined)
    return decision


def brute_force_amnesic(system, atom):
    """Decide amnesic navigability by enumerating every total strategy.

    Strategies are tried constants first, then in lexicographic order, so the witness
    agrees with check_atom_amnesic.

    Returns:
        AmnesicDecision instance
    """
    objective = objective_of(system, atom)
    views = len(system.views)
    if not system.instructions and views:
        witness, pending = explore_partial_strategy(system, [None] * views, objective)
        return AmnesicDecision(witness is None and pending is None, None, 1, None)
    instructions = range(len(system.instructions))
    candidates = itertools.chain(
        ((instruction,) * views for instruction in instructions),
        itertools.product(instructions, repeat=views))
    examined = 0
    for choice in candidates:
        examined += 1
        witness, _ = explore_partial_strategy(system, choice, objective)
        if witness is None:
            return AmnesicDecision(True, AmnesicStrategy(tuple(choice)), examined, None)
    return AmnesicDecision(False, None, examined, None)


def evaluate(system, formula):
    """Evaluate a formula, reading atoms as amnesic navigability.

    Args:
        system: TransitionSystem instance
        formula: AtomNode, Not or Implies tree

    Returns:
        Truth value of the formula in the system
    """
    cache = {}

    def truth(node):
        if isinstance(node, AtomNode):
            if node.atom not in cache:
                cache[node.atom] = check_atom_amnesic(system, node.atom, canonical_witness=False).holds
            return cache[node.atom]
        if isinstance(node, Not):
            return not truth(node.operand)
        if isinstance(node, Implies):
            return not truth(node.antecedent) or truth(node.consequent)
        raise InvalidQueryError("Not a formula: {!r}".format(node))

    return truth(formula)


def navigability_table(system, classes, modes=CheckMode.ALL):
    """Tabulate unrestricted navigability between single-view classes.

    Args:
        system: TransitionSystem instance
        classes: View names, one per class
        modes: Check modes to consult; recall is only tried when amnesic fails

    Returns:
        NavigabilityTable whose rows hold CellVerdict values
    """
    for mode in modes:
        if mode not in CheckMode.ALL:
            raise InvalidQueryError("Unknown check mode {}".format(mode))
    indices = [system.views.index(name) for name in classes]
    full = system.views.full
    rows = []
    for source in indices:
        row = []
        for target in indices:
            atom = Atom(1 << source, full, 1 << target)
            if CheckMode.AMNESIC in modes and check_atom_amnesic(system, atom, canonical_witness=False).holds:
                row.append(CellVerdict.AMNESIC)
            elif CheckMode.RECALL in modes and check_atom_recall(system, atom).holds:
                row.append(CellVerdict.RECALL)
            else:
                row.append(CellVerdict.NONE)
        rows.append(row)
    return NavigabilityTable(tuple(classes), rows)
