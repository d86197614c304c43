"""Epistemic transition systems and the per-strategy until checker."""

import logging

from collections import namedtuple

from .api.types import WitnessReason
from .errors import (
    InvalidQueryError,
    InvariantViolation,
    SystemValidationError,
    ValidationIssue
)

LOGGER = logging.getLogger(__name__)

# DFS colouring of states
_FRESH = 0
_ON_PATH = 1
_DONE = 2


def iter_bits(mask):
    """Iterate over the indices of the bits set in a mask, lowest first."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def iter_submasks(mask):
    """Iterate over every submask of a mask, the empty mask first."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def iter_supermasks(mask, full):
    """Iterate over every mask between `mask` and `full`, smallest first."""
    rest = full & ~mask
    for extra in iter_submasks(rest):
        yield mask | extra


def is_subset(small, large):
    """Check bitmask inclusion."""
    return small & ~large == 0


class ViewUniverse(object):
    """Finite ordered set of views, interned to dense indices.

    Sets of views are plain integers used as bit vectors: bit `k` is set when the view with
    index `k` belongs to the set.
    """

    def __init__(self, names):
        """Constructor.

        Args:
            names: View names in declaration order
        """
        self.names = tuple(names)
        self._index = {}
        for position, name in enumerate(self.names):
            if name in self._index:
                raise InvalidQueryError("Duplicate view {}".format(name))
            self._index[name] = position

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, ViewUniverse) and self.names == other.names

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "ViewUniverse({!r})".format(list(self.names))

    @property
    def full(self):
        """Mask of the whole universe."""
        return (1 << len(self.names)) - 1

    def index(self, name):
        """Get the dense index of a view.

        Args:
            name: View name

        Returns:
            Index of the view in declaration order
        """
        try:
            return self._index[name]
        except KeyError:
            raise InvalidQueryError("Unknown view {}".format(name))

    def mask(self, names):
        """Build the bit vector of a collection of view names."""
        result = 0
        for name in names:
            result |= 1 << self.index(name)
        return result

    def names_of(self, mask):
        """Get the names of the views in a mask, in declaration order."""
        if mask & ~self.full:
            raise InvalidQueryError("View set {:#x} exceeds the universe".format(mask))
        return tuple(self.names[index] for index in iter_bits(mask))


Declaration = namedtuple('Declaration', ['name', 'line'])

StateDeclaration = namedtuple('StateDeclaration', ['name', 'view', 'line'])

TransitionDeclaration = namedtuple('TransitionDeclaration', ['source', 'instruction', 'target', 'line'])


class SystemDescription(namedtuple('SystemDescription', ['views', 'instructions', 'states', 'transitions'])):
    """Unvalidated system description, as produced by a parser.

    Every entry carries the line it was read from (None when not read from text).
    """

    __slots__ = ()

    @classmethod
    def build(cls, views, instructions, states, transitions):
        """Create a description from plain names.

        Args:
            views: View names
            instructions: Instruction names
            states: Pairs (state name, view name)
            transitions: Triples (source, instruction, target)

        Returns:
            SystemDescription instance
        """
        return cls(
            views=[Declaration(name, None) for name in views],
            instructions=[Declaration(name, None) for name in instructions],
            states=[StateDeclaration(name, view, None) for name, view in states],
            transitions=[TransitionDeclaration(source, instruction, target, None)
                         for source, instruction, target in transitions])


class TransitionSystem(object):
    """Finite epistemic transition system.

    States, views and instructions are addressed by dense indices; their declaration order
    is the canonical order every search iterates in.
    """

    def __init__(self, views, instructions, states, observation, transitions):
        """Constructor.

        Args:
            views: ViewUniverse (or view names)
            instructions: Instruction names
            states: State names
            observation: View index of each state, aligned with `states`
            transitions: Iterable of (state index, instruction index, state index)
        """
        self.views = views if isinstance(views, ViewUniverse) else ViewUniverse(views)
        self.instructions = tuple(instructions)
        self.states = tuple(states)
        self.observation = tuple(observation)
        if len(self.observation) != len(self.states):
            raise InvariantViolation("Observation must be defined on every state")
        if any(not 0 <= view < len(self.views) for view in self.observation):
            raise InvariantViolation("Observation maps a state outside the view universe")

        table = [[set() for _ in self.instructions] for _ in self.states]
        for source, instruction, target in transitions:
            table[source][instruction].add(target)
        self.successor_table = tuple(
            tuple(tuple(sorted(targets)) for targets in row) for row in table)

        self._state_index = {name: position for position, name in enumerate(self.states)}
        self._instruction_index = {name: position for position, name in enumerate(self.instructions)}
        classes = [0] * len(self.views)
        for state, view in enumerate(self.observation):
            classes[view] |= 1 << state
        self.class_masks = tuple(classes)

    def __repr__(self):
        return "TransitionSystem(views={}, instructions={}, states={})".format(
            len(self.views), len(self.instructions), len(self.states))

    def state_index(self, name):
        """Get the index of a state by name."""
        try:
            return self._state_index[name]
        except KeyError:
            raise InvalidQueryError("Unknown state {}".format(name))

    def instruction_index(self, name):
        """Get the index of an instruction by name."""
        try:
            return self._instruction_index[name]
        except KeyError:
            raise InvalidQueryError("Unknown instruction {}".format(name))

    def states_observing(self, views):
        """List the states whose view lies in a view set, in canonical order.

        Args:
            views: View set mask

        Returns:
            List of state indices
        """
        return [state for state, view in enumerate(self.observation) if views >> view & 1]

    def transitions(self):
        """Iterate over every transition as (source, instruction, target) indices."""
        for source, row in enumerate(self.successor_table):
            for instruction, targets in enumerate(row):
                for target in targets:
                    yield source, instruction, target


def validate_system(description):
    """Validate a system description.

    Args:
        description: SystemDescription instance

    Throws:
        SystemValidationError listing every violated invariant with its location

    Returns:
        TransitionSystem instance
    """
    issues = []

    def collect(declarations, kind):
        index = {}
        for declaration in declarations:
            if declaration.name in index:
                issues.append(ValidationIssue(
                    declaration.line, "duplicate {} {}".format(kind, declaration.name)))
                continue
            index[declaration.name] = len(index)
        return index

    view_index = collect(description.views, "view")
    instruction_index = collect(description.instructions, "instruction")
    state_index = collect(description.states, "state")

    observation = {}
    for declaration in description.states:
        if declaration.name in observation:
            continue
        if declaration.view is None:
            issues.append(ValidationIssue(
                declaration.line, "state {} has no observation".format(declaration.name)))
        elif declaration.view not in view_index:
            issues.append(ValidationIssue(
                declaration.line, "state {} observes unknown view {}".format(
                    declaration.name, declaration.view)))
        else:
            observation[declaration.name] = view_index[declaration.view]

    transitions = []
    for declaration in description.transitions:
        problems = []
        if declaration.source not in state_index:
            problems.append("unknown state {}".format(declaration.source))
        if declaration.instruction not in instruction_index:
            problems.append("unknown instruction {}".format(declaration.instruction))
        if declaration.target not in state_index:
            problems.append("unknown state {}".format(declaration.target))
        for problem in problems:
            issues.append(ValidationIssue(declaration.line, "transition {} {} {}: {}".format(
                declaration.source, declaration.instruction, declaration.target, problem)))
        if not problems:
            transitions.append((
                state_index[declaration.source],
                instruction_index[declaration.instruction],
                state_index[declaration.target]))

    if issues:
        raise SystemValidationError(issues)

    states = sorted(state_index, key=state_index.get)
    system = TransitionSystem(
        views=sorted(view_index, key=view_index.get),
        instructions=sorted(instruction_index, key=instruction_index.get),
        states=states,
        observation=[observation[name] for name in states],
        transitions=transitions)
    LOGGER.debug("Validated %r", system)
    return system


def successors(system, state, instruction):
    """Get the successors of a state under an instruction.

    Args:
        system: TransitionSystem instance
        state: State index
        instruction: Instruction index

    Returns:
        Frozen set of state indices; empty when the instruction terminates in the state
    """
    return frozenset(system.successor_table[state][instruction])


class AmnesicStrategy(namedtuple('AmnesicStrategy', ['choice'])):
    """Total map from views to instructions, stored as a tuple indexed by view."""

    __slots__ = ()

    def __call__(self, view):
        return self.choice[view]


def constant_strategy(system, instruction):
    """Build the strategy that uses one instruction in every view."""
    return AmnesicStrategy((instruction,) * len(system.views))


def strategy_from_names(system, mapping):
    """Build a strategy from a {view name: instruction name} mapping.

    Throws:
        InvalidQueryError if the mapping is not total on the view universe
    """
    missing = [name for name in system.views if name not in mapping]
    if missing:
        raise InvalidQueryError("Strategy is undefined on views {}".format(", ".join(missing)))
    return AmnesicStrategy(tuple(
        system.instruction_index(mapping[name]) for name in system.views))


def validate_strategy(system, strategy):
    """Check that a strategy is total on the views of a system.

    Throws:
        InvalidQueryError otherwise
    """
    if len(strategy.choice) != len(system.views):
        raise InvalidQueryError("Strategy must be defined on all {} views".format(len(system.views)))
    for instruction in strategy.choice:
        if not 0 <= instruction < len(system.instructions):
            raise InvalidQueryError("Strategy uses unknown instruction {}".format(instruction))


UntilObjective = namedtuple('UntilObjective', ['start', 'corridor', 'target'])


def validate_objective(system, objective):
    """Check that every set of an objective lies inside the view universe."""
    full = system.views.full
    for mask in objective:
        if mask & ~full:
            raise InvalidQueryError("View set {:#x} exceeds the universe".format(mask))


PathWitness = namedtuple('PathWitness', ['states', 'loop_start', 'reason'])


def explore_partial_strategy(system, choice, objective):
    """Depth-first search for a counterexample under a partial strategy.

    States whose view has no assigned instruction are treated as unexplored leaves. The
    search starts from every state observing a start view and stops at target views.

    Args:
        system: TransitionSystem instance
        choice: Sequence indexed by view holding an instruction index or None
        objective: UntilObjective instance

    Returns:
        Pair (PathWitness or None, first unassigned view met or None)
    """
    observation = system.observation
    table = system.successor_table
    corridor, target = objective.corridor, objective.target
    colour = bytearray(len(observation))
    pending = None

    for root in system.states_observing(objective.start):
        if colour[root]:
            continue
        path = []
        frontier = []
        node = root
        while True:
            if node is not None:
                view = observation[node]
                if target >> view & 1:
                    colour[node] = _DONE
                elif not corridor >> view & 1:
                    path.append(node)
                    return PathWitness(tuple(path), None, WitnessReason.LEFT_CORRIDOR), pending
                elif choice[view] is None:
                    colour[node] = _DONE
                    if pending is None:
                        pending = view
                else:
                    targets = table[node][choice[view]]
                    path.append(node)
                    if not targets:
                        return PathWitness(tuple(path), None, WitnessReason.DEAD_END), pending
                    colour[node] = _ON_PATH
                    frontier.append(iter(targets))
            if not frontier:
                break
            node = None
            for successor in frontier[-1]:
                if colour[successor] == _ON_PATH:
                    return (PathWitness(tuple(path), path.index(successor), WitnessReason.NEVER_REACHES),
                            pending)
                if colour[successor] == _FRESH:
                    node = successor
                    break
            if node is None:
                colour[path.pop()] = _DONE
                frontier.pop()
    return None, pending


def check_strategy(system, strategy, objective):
    """Decide whether every maximal path of a strategy satisfies an until objective.

    Args:
        system: TransitionSystem instance
        strategy: AmnesicStrategy total on the views of the system
        objective: UntilObjective instance

    Returns:
        None when every maximal path from every start state keeps its views in the
        corridor strictly before reaching a target view, otherwise the first
        PathWitness found in canonical order
    """
    validate_strategy(system, strategy)
    validate_objective(system, objective)
    witness, _ = explore_partial_strategy(system, strategy.choice, objective)
    return witness


def replay_witness(system, strategy, objective, witness):
    """Re-validate a counterexample against a system and strategy.

    Returns:
        True if the witness is a genuine refutation of the objective under the strategy
    """
    states = witness.states
    if not states:
        return False
    observation = system.observation
    corridor_only = objective.corridor & ~objective.target
    if not objective.start >> observation[states[0]] & 1:
        return False
    for current, following in zip(states, states[1:]):
        if following not in system.successor_table[current][strategy(observation[current])]:
            return False

    prefix = states if witness.reason == WitnessReason.NEVER_REACHES else states[:-1]
    if any(not corridor_only >> observation[state] & 1 for state in prefix):
        return False
    last = states[-1]
    if witness.reason == WitnessReason.LEFT_CORRIDOR:
        return witness.loop_start is None and not (
            (objective.corridor | objective.target) >> observation[last] & 1)
    if witness.reason == WitnessReason.DEAD_END:
        return (witness.loop_start is None
                and corridor_only >> observation[last] & 1
                and not system.successor_table[last][strategy(observation[last])])
    if witness.reason == WitnessReason.NEVER_REACHES:
        if witness.loop_start is None or not 0 <= witness.loop_start < len(states):
            return False
        return states[witness.loop_start] in system.successor_table[last][strategy(observation[last])]
    return False


def reachable_under(system, strategy, states):
    """Collect every state reachable when a strategy is followed everywhere.

    Args:
        system: TransitionSystem instance
        strategy: AmnesicStrategy instance
        states: Iterable of start state indices

    Returns:
        Frozen set of state indices, including the start states
    """
    seen = set(states)
    stack = sorted(seen, reverse=True)
    while stack:
        state = stack.pop()
        for successor in system.successor_table[state][strategy(system.observation[state])]:
            if successor not in seen:
                seen.add(successor)
                stack.append(successor)
    return frozenset(seen)
