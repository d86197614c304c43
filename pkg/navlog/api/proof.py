"""Forward-chaining saturation of the navigability proof system."""

import logging

from collections import defaultdict, deque, namedtuple

from ..errors import InvalidQueryError, NotClosedError, NotDerivedError, UniverseTooLargeError
from ..syntax import Atom
from ..system import ViewUniverse, is_subset, iter_bits, iter_submasks, iter_supermasks
from .types import LemmaName, RuleName

LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_VIEWS = 5

Derivation = namedtuple('Derivation', ['rule', 'premises'])

DerivationTree = namedtuple('DerivationTree', ['atom', 'rule', 'children'])

LemmaViolation = namedtuple('LemmaViolation', ['lemma', 'premises', 'conclusion'])

LemmaReport = namedtuple('LemmaReport', ['checked', 'violations'])


class Closure(object):
    """Set of atoms derivable from a theory, with the first derivation of each."""

    def __init__(self, universe, assumptions, derived, provenance):
        """Constructor.

        Args:
            universe: ViewUniverse the atoms range over
            assumptions: Iterable of assumed atoms
            derived: Iterable of derived atoms
            provenance: Dict mapping atoms to Derivation records
        """
        self.universe = universe
        self.assumptions = frozenset(assumptions)
        self.derived = frozenset(derived)
        self.provenance = dict(provenance)

    def __contains__(self, atom):
        return atom in self.derived

    def __len__(self):
        return len(self.derived)

    def __repr__(self):
        return "Closure(views={}, assumptions={}, derived={})".format(
            len(self.universe), len(self.assumptions), len(self.derived))


def _check_atom(universe, atom):
    if any(mask & ~universe.full for mask in atom):
        raise InvalidQueryError("Atom {} mentions views outside the universe".format(atom))


def saturate(universe, assumptions=(), max_views=DEFAULT_MAX_VIEWS):
    """Close a theory under the six rules of the proof system.

    Args:
        universe: ViewUniverse (or view names)
        assumptions: Iterable of Atom instances
        max_views: Largest universe accepted

    Throws:
        UniverseTooLargeError when the universe exceeds `max_views`

    Returns:
        Closure instance
    """
    if not isinstance(universe, ViewUniverse):
        universe = ViewUniverse(universe)
    if len(universe) > max_views:
        raise UniverseTooLargeError("Universe of {} views exceeds the saturation cap of {}".format(
            len(universe), max_views))
    assumptions = sorted(set(assumptions))
    for atom in assumptions:
        _check_atom(universe, atom)

    full = universe.full
    provenance = {}
    worklist = deque()

    def add(atom, rule, premises=()):
        if atom not in provenance:
            provenance[atom] = Derivation(rule, premises)
            worklist.append(atom)

    for atom in assumptions:
        add(atom, RuleName.ASSUMPTION)
    for target in range(full + 1):
        for start in iter_submasks(target):
            for corridor in range(full + 1):
                add(Atom(start, corridor, target), RuleName.REFLEXIVITY)

    by_first = defaultdict(list)
    by_third = defaultdict(list)
    processed = 0
    while worklist:
        atom = worklist.popleft()
        a, b, c = atom
        by_first[a].append(atom)
        by_third[c].append(atom)

        for extra in range(full + 1):
            add(Atom(a | extra, b, c | extra), RuleName.AUGMENTATION, (atom,))
        add(Atom(a, b & ~c, c), RuleName.EARLY_BIRD, (atom,))
        if b == 0:
            add(Atom(a & ~c, 0, 0), RuleName.TRIVIAL_PATH, (atom,))
        if c == 0:
            add(Atom(a, 0, 0), RuleName.PATH_TO_NOWHERE, (atom,))
        for right in by_first[c]:
            if b & right.b == 0:
                add(Atom(a, b | right.b, right.c), RuleName.TRANSITIVITY, (atom, right))
        for left in by_third[a]:
            if left.b & b == 0:
                add(Atom(left.a, left.b | b, c), RuleName.TRANSITIVITY, (left, atom))

        processed += 1
        if processed % 4096 == 0:
            LOGGER.debug("Saturation processed %d atoms, %d queued", processed, len(worklist))

    closure = Closure(universe, assumptions, provenance, provenance)
    LOGGER.info("Saturated %d assumptions over %d views into %d atoms",
                len(assumptions), len(universe), len(closure))
    return closure


def derives(closure, atom):
    """Check whether an atom is derivable in a closure."""
    _check_atom(closure.universe, atom)
    return atom in closure.derived


def validate_step(universe, rule, conclusion, premises):
    """Check that a conclusion follows from premises by one instance of a rule.

    Args:
        universe: ViewUniverse the atoms range over
        rule: RuleName value
        conclusion: Atom instance
        premises: Tuple of Atom instances

    Returns:
        True if the side conditions of the rule hold
    """
    full = universe.full
    if any(mask & ~full for atom in (conclusion,) + tuple(premises) for mask in atom):
        return False
    a, b, c = conclusion
    if rule == RuleName.ASSUMPTION:
        return not premises
    if rule == RuleName.REFLEXIVITY:
        return not premises and is_subset(a, c)
    if rule == RuleName.TRANSITIVITY:
        if len(premises) != 2:
            return False
        left, right = premises
        return (left.c == right.a and left.b & right.b == 0
                and conclusion == Atom(left.a, left.b | right.b, right.c))
    if len(premises) != 1:
        return False
    premise = premises[0]
    if rule == RuleName.AUGMENTATION:
        extra = (a & ~premise.a) | (c & ~premise.c)
        return b == premise.b and premise.a | extra == a and premise.c | extra == c
    if rule == RuleName.EARLY_BIRD:
        return conclusion == Atom(premise.a, premise.b & ~premise.c, premise.c)
    if rule == RuleName.TRIVIAL_PATH:
        return premise.b == 0 and conclusion == Atom(premise.a & ~premise.c, 0, 0)
    if rule == RuleName.PATH_TO_NOWHERE:
        return premise.c == 0 and conclusion == Atom(premise.a, 0, 0)
    return False


def check_provenance(closure):
    """List the atoms whose recorded derivation does not replay.

    Returns:
        List of atoms with invalid provenance entries
    """
    broken = []
    for atom in sorted(closure.derived):
        entry = closure.provenance.get(atom)
        if entry is None:
            broken.append(atom)
        elif entry.rule == RuleName.ASSUMPTION and atom not in closure.assumptions:
            broken.append(atom)
        elif any(premise not in closure.derived for premise in entry.premises):
            broken.append(atom)
        elif not validate_step(closure.universe, entry.rule, atom, entry.premises):
            broken.append(atom)
    return broken


def explain(closure, atom):
    """Build the derivation tree of an atom from the closure's provenance.

    Throws:
        NotDerivedError if the atom is not derivable

    Returns:
        DerivationTree instance
    """
    if not derives(closure, atom):
        raise NotDerivedError("Atom {} is not derivable".format(atom))
    trees = {}

    def build(node):
        if node not in trees:
            entry = closure.provenance[node]
            trees[node] = DerivationTree(node, entry.rule, tuple(build(premise) for premise in entry.premises))
        return trees[node]

    return build(atom)


def _one_step(closure):
    """Iterate over every conclusion of one rule application to derived atoms."""
    full = closure.universe.full
    derived = closure.derived
    by_first = defaultdict(list)
    for atom in derived:
        by_first[atom.a].append(atom)
    for target in range(full + 1):
        for start in iter_submasks(target):
            for corridor in range(full + 1):
                yield Atom(start, corridor, target)
    for atom in closure.assumptions:
        yield atom
    for a, b, c in derived:
        for extra in range(full + 1):
            yield Atom(a | extra, b, c | extra)
        yield Atom(a, b & ~c, c)
        if b == 0:
            yield Atom(a & ~c, 0, 0)
        if c == 0:
            yield Atom(a, 0, 0)
        for right in by_first[c]:
            if b & right.b == 0:
                yield Atom(a, b | right.b, right.c)


def is_closed(closure):
    """Check that applying any rule to the closure adds nothing."""
    derived = closure.derived
    return all(atom in derived for atom in _one_step(closure))


def ensure_closed(closure):
    """Reject a closure that is not closed under the rules.

    Throws:
        NotClosedError naming the first missing conclusion
    """
    for atom in _one_step(closure):
        if atom not in closure.derived:
            raise NotClosedError("Closure is missing the conclusion {}".format(atom))
    return closure


def void_views(closure):
    """Mask of the views v with {v} ▷_∅ ∅ derivable."""
    mask = 0
    for view in range(len(closure.universe)):
        if Atom(1 << view, 0, 0) in closure.derived:
            mask |= 1 << view
    return mask


def check_derived_lemmas(closure):
    """Sweep the admissible lemmas of the proof system over a closure.

    Each lemma instance whose premises are derived must have a derived conclusion.

    Returns:
        LemmaReport with the number of instances checked per lemma and every violation
    """
    full = closure.universe.full
    derived = closure.derived
    checked = dict((lemma, 0) for lemma in LemmaName.ALL)
    violations = []

    def expect(lemma, premises, conclusion):
        checked[lemma] += 1
        if conclusion not in derived:
            violations.append(LemmaViolation(lemma, premises, conclusion))

    by_first = defaultdict(list)
    for atom in derived:
        by_first[atom.a].append(atom)
    voids = sorted(atom.a for atom in derived if atom.b == 0 and atom.c == 0)
    invalid = void_views(closure)
    valid = full & ~invalid

    for atom in sorted(derived):
        a, b, c = atom
        for smaller in iter_submasks(a):
            expect(LemmaName.REMOVE_LEFT, (atom,), Atom(smaller, b, c))
        for larger in iter_supermasks(b, full):
            expect(LemmaName.ADD_DOWN, (atom,), Atom(a, larger, c))
        for larger in iter_supermasks(c, full):
            expect(LemmaName.ADD_RIGHT, (atom,), Atom(a, b, larger))
        for void in voids:
            expect(LemmaName.REMOVE_VOID, (Atom(void, 0, 0), atom), Atom(a, b & ~void, c))
        for right in by_first[c]:
            if is_subset(b & right.b, c):
                expect(LemmaName.SUPER_TRANSITIVITY, (atom, right), Atom(a, b | right.b, right.c))
        expect(LemmaName.CORRIDOR_CAP_VALID, (atom,), Atom(a, b & valid, c))
        expect(LemmaName.TARGET_CAP_VALID, (atom,), Atom(a, b, c & valid))

    for views in iter_submasks(invalid):
        premises = tuple(Atom(1 << view, 0, 0) for view in iter_bits(views))
        expect(LemmaName.VOID_UNION, premises, Atom(views, 0, 0))

    if violations:
        LOGGER.warning("Lemma sweep found %d violations", len(violations))
    return LemmaReport(checked, violations)
