"""Perfect-recall navigability through the knowledge-subset construction."""

import logging

from collections import deque, namedtuple

from ..system import UntilObjective, iter_bits, validate_objective

LOGGER = logging.getLogger(__name__)


class Belief(namedtuple('Belief', ['view', 'possible'])):
    """Observed view plus the mask of states consistent with the history so far."""

    __slots__ = ()

    def states(self):
        """List the possible states in canonical order."""
        return list(iter_bits(self.possible))


class DeadEndFlag(object):
    """Marker for an instruction some possible state cannot execute."""

    def __repr__(self):
        return "DEAD_END"


DEAD_END = DeadEndFlag()

RecallDecision = namedtuple('RecallDecision', [
    'holds',
    'witness',
    'explored'
])


def initial_beliefs(system, views):
    """Build one belief per start view that has at least one state.

    Args:
        system: TransitionSystem instance
        views: Mask of start views

    Returns:
        List of Belief instances in view order
    """
    beliefs = []
    for view in iter_bits(views):
        possible = system.class_masks[view]
        if possible:
            beliefs.append(Belief(view, possible))
    return beliefs


def belief_successors(system, belief, instruction):
    """Split the image of a belief under an instruction by observed view.

    Returns:
        DEAD_END when some possible state has no successor, otherwise a tuple of
        beliefs in view order
    """
    table = system.successor_table
    image = 0
    for state in iter_bits(belief.possible):
        targets = table[state][instruction]
        if not targets:
            return DEAD_END
        for target in targets:
            image |= 1 << target
    return tuple(Belief(view, image & possible)
                 for view, possible in enumerate(system.class_masks)
                 if image & possible)


def _discover(system, objective, initial):
    """Collect the beliefs reachable from the initial ones under any instruction.

    Target beliefs and beliefs outside the corridor are not expanded.
    """
    corridor_only = objective.corridor & ~objective.target
    edges = {}
    seen = set(initial)
    order = list(initial)
    queue = deque(initial)
    while queue:
        belief = queue.popleft()
        if not corridor_only >> belief.view & 1:
            continue
        edges[belief] = [belief_successors(system, belief, instruction)
                         for instruction in range(len(system.instructions))]
        for outcome in edges[belief]:
            if outcome is DEAD_END:
                continue
            for successor in outcome:
                if successor not in seen:
                    seen.add(successor)
                    order.append(successor)
                    queue.append(successor)
    return order, edges


def check_atom_recall(system, atom):
    """Decide navigability for an agent with perfect recall.

    Winning beliefs are computed as a least fixpoint: target beliefs win, and a corridor
    belief wins once some instruction avoids dead ends and leads only to beliefs that
    won in an earlier round. The least such instruction is recorded.

    Args:
        system: TransitionSystem instance
        atom: Atom instance over the system's views

    Returns:
        RecallDecision whose witness maps each winning corridor belief reachable under it
        to an instruction index
    """
    objective = UntilObjective(atom.a, atom.b, atom.c)
    validate_objective(system, objective)
    initial = initial_beliefs(system, objective.start)
    order, edges = _discover(system, objective, initial)

    won = {belief: None for belief in order if objective.target >> belief.view & 1}
    rounds = 0
    while True:
        fresh = {}
        for belief in order:
            if belief in won or belief not in edges:
                continue
            for instruction, outcome in enumerate(edges[belief]):
                if outcome is not DEAD_END and all(successor in won for successor in outcome):
                    fresh[belief] = instruction
                    break
        if not fresh:
            break
        rounds += 1
        LOGGER.debug("Recall fixpoint round %d added %d beliefs", rounds, len(fresh))
        won.update(fresh)

    holds = all(belief in won for belief in initial)
    witness = None
    if holds:
        witness = {}
        stack = list(initial)
        while stack:
            belief = stack.pop()
            instruction = won[belief]
            if instruction is None or belief in witness:
                continue
            witness[belief] = instruction
            stack.extend(edges[belief][instruction])

    LOGGER.info("Recall check %s: holds=%s after exploring %d beliefs", atom, holds, len(order))
    return RecallDecision(holds=holds, witness=witness, explored=len(order))


def replay_recall_witness(system, atom, decision):
    """Replay a recall witness against every resolution of nondeterminism.

    Every run from a start state must reach a target view, keeping its earlier views in
    the corridor, by following the instruction the witness assigns to its belief.

    Returns:
        True if the witness is winning from every start state
    """
    if not decision.holds or decision.witness is None:
        return False
    objective = UntilObjective(atom.a, atom.b, atom.c)
    corridor_only = objective.corridor & ~objective.target
    observation = system.observation
    table = system.successor_table
    verdicts = {}
    on_stack = set()

    def wins(state, belief):
        key = (state, belief)
        if key in verdicts:
            return verdicts[key]
        if key in on_stack:
            return False
        view = observation[state]
        if view != belief.view or not belief.possible >> state & 1:
            return False
        if objective.target >> view & 1:
            return True
        if not corridor_only >> view & 1 or belief not in decision.witness:
            return False
        instruction = decision.witness[belief]
        outcome = belief_successors(system, belief, instruction)
        targets = table[state][instruction]
        if outcome is DEAD_END or not targets:
            return False
        by_view = {successor.view: successor for successor in outcome}
        on_stack.add(key)
        result = all(observation[target] in by_view and wins(target, by_view[observation[target]])
                     for target in targets)
        on_stack.discard(key)
        verdicts[key] = result
        return result

    return all(wins(state, belief)
               for belief in initial_beliefs(system, objective.start)
               for state in belief.states())
