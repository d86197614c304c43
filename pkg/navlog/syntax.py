"""Concrete syntax of navigability formulas, system files, theories and strategy files."""

import logging

from collections import namedtuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from .errors import FormulaSyntaxError, SystemSyntaxError, SystemValidationError, UnknownViewError, ValidationIssue
from .system import (
    Declaration,
    StateDeclaration,
    SystemDescription,
    TransitionDeclaration,
    strategy_from_names,
    validate_system
)

LOGGER = logging.getLogger(__name__)

FORMULA_GRAMMAR = r"""
    ?formula: implies

    ?implies: unary
            | unary "->" implies -> implies

    ?unary: "!" unary -> negation
          | "(" formula ")"
          | atom

    atom: "nav" "(" set ";" set ";" set ")"

    view_set: set

    set: "{" (VIEW ("," VIEW)*)? "}" -> explicit_set
       | "ALL" -> full_set

    VIEW: /[A-Za-z_][A-Za-z0-9_]*|[0-9]+/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

SYSTEM_GRAMMAR = r"""
    system: _NL? (_statement _NL)*
    strategy: _NL? (entry _NL)*

    _statement: views | instructions | state | trans

    views: "views" NAME+
    instructions: "instructions" NAME+
    state: "state" NAME NAME
    trans: "trans" NAME NAME NAME
    entry: NAME NAME

    NAME: /[A-Za-z_][A-Za-z0-9_]*|[0-9]+/
    COMMENT: /#[^\n]*/
    _NL: (/\r?\n[\t ]*/ | COMMENT)+

    %import common.WS_INLINE
    %ignore WS_INLINE
    %ignore COMMENT
"""

_FORMULA_PARSER = Lark(FORMULA_GRAMMAR, parser='lalr', start=['formula', 'view_set'])

_SYSTEM_PARSER = Lark(SYSTEM_GRAMMAR, parser='lalr', start=['system', 'strategy'])


class Atom(namedtuple('Atom', ['a', 'b', 'c'])):
    """Navigability atom `A ▷_B C`, each set stored as a view mask.

    Masks make the representation canonical: equal sets compare equal whatever order
    their views were written in.
    """

    __slots__ = ()


AtomNode = namedtuple('AtomNode', ['atom'])

Not = namedtuple('Not', ['operand'])

Implies = namedtuple('Implies', ['antecedent', 'consequent'])


def _position(error):
    line = getattr(error, 'line', None)
    column = getattr(error, 'column', None)
    if line is None or line < 0:
        return None, None
    return line, column


class _FormulaBuilder(Transformer):
    """Turn a formula parse tree into Formula nodes over a view universe."""

    def __init__(self, universe):
        super(_FormulaBuilder, self).__init__()
        self.universe = universe

    def explicit_set(self, children):
        mask = 0
        for token in children:
            if token not in self.universe:
                raise UnknownViewError("Unknown view {}".format(token), token.line, token.column)
            mask |= 1 << self.universe.index(str(token))
        return mask

    def full_set(self, children):
        return self.universe.full

    def view_set(self, children):
        return children[0]

    def atom(self, children):
        return AtomNode(Atom(*children))

    def negation(self, children):
        return Not(children[0])

    def implies(self, children):
        return Implies(children[0], children[1])


def _parse_formula_tree(text, universe, start):
    try:
        tree = _FORMULA_PARSER.parse(text, start=start)
    except UnexpectedInput as error:
        line, column = _position(error)
        raise FormulaSyntaxError("Unexpected input in {!r}".format(text), line, column)
    try:
        return _FormulaBuilder(universe).transform(tree)
    except VisitError as error:
        raise error.orig_exc


def parse_formula(text, universe):
    """Parse a formula.

    Args:
        text: Formula text
        universe: ViewUniverse the formula's views are resolved in

    Throws:
        FormulaSyntaxError with the offending position, UnknownViewError for undeclared views

    Returns:
        AtomNode, Not or Implies tree
    """
    return _parse_formula_tree(text, universe, 'formula')


def parse_atom(text, universe):
    """Parse a formula that must be a single atom.

    Returns:
        Atom instance
    """
    formula = parse_formula(text, universe)
    if not isinstance(formula, AtomNode):
        raise FormulaSyntaxError("Expected a single atom, got {!r}".format(text))
    return formula.atom


def parse_view_set(text, universe):
    """Parse a view set such as `{v1, v2}` or `ALL` into a mask.

    Bare comma separated names (`v1,v2`) are accepted as well.
    """
    text = text.strip()
    if text != "ALL" and not text.startswith("{"):
        text = "{" + text + "}"
    return _parse_formula_tree(text, universe, 'view_set')


def render_view_set(mask, universe):
    """Render a view mask as `{v1, v2}`."""
    return "{" + ", ".join(universe.names_of(mask)) + "}"


def render_atom(atom, universe):
    """Render an atom as `nav({..}; {..}; {..})`."""
    return "nav({}; {}; {})".format(
        render_view_set(atom.a, universe),
        render_view_set(atom.b, universe),
        render_view_set(atom.c, universe))


def render_formula(formula, universe):
    """Render a formula with the fewest parentheses that parse back to the same tree.

    Args:
        formula: AtomNode, Not or Implies tree
        universe: ViewUniverse used to name the views

    Returns:
        Formula text
    """
    if isinstance(formula, AtomNode):
        return render_atom(formula.atom, universe)
    if isinstance(formula, Not):
        operand = render_formula(formula.operand, universe)
        if isinstance(formula.operand, Implies):
            operand = "(" + operand + ")"
        return "!" + operand
    if isinstance(formula, Implies):
        antecedent = render_formula(formula.antecedent, universe)
        if isinstance(formula.antecedent, Implies):
            antecedent = "(" + antecedent + ")"
        return "{} -> {}".format(antecedent, render_formula(formula.consequent, universe))
    raise TypeError("Not a formula: {!r}".format(formula))


class _SystemBuilder(Transformer):
    """Collect `.ets` statements into a SystemDescription."""

    def __init__(self):
        super(_SystemBuilder, self).__init__()
        self._views = []
        self._instructions = []
        self._states = []
        self._transitions = []

    def views(self, children):
        self._views.extend(Declaration(str(token), token.line) for token in children)

    def instructions(self, children):
        self._instructions.extend(Declaration(str(token), token.line) for token in children)

    def state(self, children):
        name, view = children
        self._states.append(StateDeclaration(str(name), str(view), name.line))

    def trans(self, children):
        source, instruction, target = children
        self._transitions.append(TransitionDeclaration(
            str(source), str(instruction), str(target), source.line))

    def system(self, children):
        return SystemDescription(self._views, self._instructions, self._states, self._transitions)

    def entry(self, children):
        return str(children[0]), str(children[1]), children[0].line

    def strategy(self, children):
        return children


def _parse_lines(text, start, error_class):
    try:
        tree = _SYSTEM_PARSER.parse(text + "\n", start=start)
    except UnexpectedInput as error:
        line, column = _position(error)
        raise error_class("Unexpected input", line, column)
    try:
        return _SystemBuilder().transform(tree)
    except VisitError as error:
        raise error.orig_exc


def _forward_references(description):
    """Report uses of views and states that appear before their declaration."""
    issues = []
    view_lines = {}
    for declaration in description.views:
        view_lines.setdefault(declaration.name, declaration.line)
    state_lines = {}
    for declaration in description.states:
        state_lines.setdefault(declaration.name, declaration.line)
    instruction_lines = {}
    for declaration in description.instructions:
        instruction_lines.setdefault(declaration.name, declaration.line)

    def check(name, kind, lines, line):
        declared = lines.get(name)
        if declared is not None and line is not None and declared > line:
            issue = ValidationIssue(line, "{} {} used before its declaration on line {}".format(
                kind, name, declared))
            if issue not in issues:
                issues.append(issue)

    for declaration in description.states:
        check(declaration.view, "view", view_lines, declaration.line)
    for declaration in description.transitions:
        check(declaration.source, "state", state_lines, declaration.line)
        check(declaration.instruction, "instruction", instruction_lines, declaration.line)
        check(declaration.target, "state", state_lines, declaration.line)
    return issues


def parse_system_description(text):
    """Parse `.ets` text into an unvalidated SystemDescription."""
    return _parse_lines(text, 'system', SystemSyntaxError)


def parse_system(text):
    """Parse and validate a system in the `.ets` format.

    The format is line oriented: `views <id>...`, `instructions <id>...`,
    `state <id> <view>` and `trans <from> <instruction> <to>`, with `#` comments.

    Throws:
        SystemSyntaxError with line and column, SystemValidationError listing every issue

    Returns:
        TransitionSystem instance
    """
    description = parse_system_description(text)
    issues = _forward_references(description)
    try:
        system = validate_system(description)
    except SystemValidationError as error:
        issues.extend(issue for issue in error.issues if issue not in issues)
    if issues:
        raise SystemValidationError(sorted(issues, key=lambda issue: issue.line or 0))
    LOGGER.info("Parsed system with %d states, %d views, %d instructions",
                len(system.states), len(system.views), len(system.instructions))
    return system


def render_system(system):
    """Serialize a system to the `.ets` format."""
    lines = []
    if len(system.views):
        lines.append("views " + " ".join(system.views))
    if system.instructions:
        lines.append("instructions " + " ".join(system.instructions))
    for state, view in zip(system.states, system.observation):
        lines.append("state {} {}".format(state, system.views.names[view]))
    for source, instruction, target in system.transitions():
        lines.append("trans {} {} {}".format(
            system.states[source], system.instructions[instruction], system.states[target]))
    return "\n".join(lines) + "\n"


def parse_strategy_entries(text):
    """Parse a strategy file into (view, instruction) name pairs.

    Each non-comment line holds `<view> <instruction>`.

    Returns:
        Dict mapping view names to instruction names
    """
    mapping = {}
    for view, instruction, line in _parse_lines(text, 'strategy', SystemSyntaxError):
        if view in mapping:
            raise SystemSyntaxError("Strategy assigns view {} twice".format(view), line, 1)
        mapping[view] = instruction
    return mapping


def parse_strategy(text, system):
    """Parse a strategy file for a system.

    Returns:
        AmnesicStrategy instance
    """
    return strategy_from_names(system, parse_strategy_entries(text))


def render_strategy(system, strategy):
    """Render a strategy as `v1→1 v2→0 ...` in view order."""
    return " ".join("{}→{}".format(view, system.instructions[instruction])
                    for view, instruction in zip(system.views, strategy.choice))


def parse_theory(text, universe):
    """Parse a theory file holding one atom per line in formula syntax.

    Returns:
        List of Atom instances
    """
    atoms = []
    for number, line in enumerate(text.splitlines(), 1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        try:
            atoms.append(parse_atom(content, universe))
        except FormulaSyntaxError as error:
            raise type(error)(
                "Invalid theory atom {!r}".format(content), number, error.column)
    return atoms

