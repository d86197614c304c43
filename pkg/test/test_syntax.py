"""Formula, system file, strategy and theory syntax test module."""
import unittest

from hypothesis import given, settings, strategies as st

from navlog.errors import (
    FormulaSyntaxError,
    SystemSyntaxError,
    SystemValidationError,
    UnknownViewError,
    ValidationIssue
)
from navlog.fixtures import fixture_path, load_fixture
from navlog.syntax import (
    Atom,
    AtomNode,
    Implies,
    Not,
    parse_atom,
    parse_formula,
    parse_strategy,
    parse_strategy_entries,
    parse_system,
    parse_system_description,
    parse_theory,
    parse_view_set,
    render_atom,
    render_formula,
    render_strategy,
    render_system
)
from navlog.system import ViewUniverse, constant_strategy

UNIVERSE = ViewUniverse(["v1", "v2", "v3", "v4", "v5", "v6"])


class FormulaParserTestCase(unittest.TestCase):
    """Formula text to formula trees."""

    def test_atom(self):
        formula = parse_formula("nav({v1}; ALL; {v3})", UNIVERSE)
        self.assertEqual(formula, AtomNode(Atom(1, 63, 4)))

    def test_view_order_is_irrelevant(self):
        self.assertEqual(parse_atom("nav({v2, v1}; {}; {v3,v1})", UNIVERSE),
                         parse_atom("nav({v1,v2};{};{v1, v3})", UNIVERSE))

    def test_implication_is_right_associative(self):
        first = AtomNode(Atom(1, 0, 1))
        second = AtomNode(Atom(2, 0, 2))
        formula = parse_formula("nav({v1};{};{v1}) -> nav({v2};{};{v2}) -> nav({v1};{};{v1})", UNIVERSE)
        self.assertEqual(formula, Implies(first, Implies(second, first)))

    def test_negation_binds_tighter(self):
        formula = parse_formula("!nav({};{};{}) -> nav({};{};{})", UNIVERSE)
        self.assertEqual(formula, Implies(Not(AtomNode(Atom(0, 0, 0))), AtomNode(Atom(0, 0, 0))))

    def test_syntax_error_position(self):
        with self.assertRaises(FormulaSyntaxError) as context:
            parse_formula("nav({v1}, ALL; {v3})", UNIVERSE)
        self.assertEqual(context.exception.line, 1)
        self.assertEqual(context.exception.column, 9)

    def test_unknown_view_position(self):
        with self.assertRaises(UnknownViewError) as context:
            parse_formula("nav({v9}; ALL; {v1})", UNIVERSE)
        self.assertEqual(context.exception.line, 1)
        self.assertEqual(context.exception.column, 6)

    def test_parse_atom_rejects_compound(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_atom("!nav({};{};{})", UNIVERSE)

    def test_view_sets(self):
        self.assertEqual(parse_view_set("{v1, v3}", UNIVERSE), 5)
        self.assertEqual(parse_view_set("v1,v3", UNIVERSE), 5)
        self.assertEqual(parse_view_set("ALL", UNIVERSE), 63)
        self.assertEqual(parse_view_set("{}", UNIVERSE), 0)
        with self.assertRaises(UnknownViewError):
            parse_view_set("v7", UNIVERSE)

    def test_numeric_view_names(self):
        universe = ViewUniverse(["0", "1"])
        self.assertEqual(parse_atom("nav({0}; {1}; {1})", universe), Atom(1, 2, 2))


class FormulaRenderTestCase(unittest.TestCase):
    """Formula trees back to text."""

    def test_render_atom(self):
        self.assertEqual(render_atom(Atom(1, 0, 1), UNIVERSE), "nav({v1}; {}; {v1})")

    def test_parenthesized_antecedent(self):
        text = "(nav({v1}; {}; {v1}) -> nav({}; {}; {})) -> !(nav({}; {}; {}) -> nav({}; {}; {}))"
        self.assertEqual(render_formula(parse_formula(text, UNIVERSE), UNIVERSE), text)


def formulas(universe):
    full = universe.full
    masks = st.integers(min_value=0, max_value=full)
    atoms = st.builds(lambda a, b, c: AtomNode(Atom(a, b, c)), masks, masks, masks)
    return st.recursive(atoms, lambda children: st.one_of(
        st.builds(Not, children),
        st.builds(Implies, children, children)), max_leaves=6)


class FormulaRenderPropertiesTestCase(unittest.TestCase):
    """Rendering keeps the tree shape."""

    @settings(deadline=None, max_examples=200)
    @given(formulas(UNIVERSE))
    def test_render_then_parse(self, formula):
        self.assertEqual(parse_formula(render_formula(formula, UNIVERSE), UNIVERSE), formula)


class SystemParserTestCase(unittest.TestCase):
    """`.ets` system files."""

    def test_fixture_round_trip(self):
        system = load_fixture("t0")
        again = parse_system(render_system(system))
        self.assertEqual(again.states, system.states)
        self.assertEqual(again.observation, system.observation)
        self.assertEqual(list(again.transitions()), list(system.transitions()))

    def test_comments_and_blank_lines(self):
        system = parse_system("# header\n\nviews x  # trailing\ninstructions go\n\nstate p x\ntrans p go p\n")
        self.assertEqual(system.states, ("p",))
        self.assertEqual(list(system.transitions()), [(0, 0, 0)])

    def test_description_keeps_lines(self):
        description = parse_system_description("views x\ninstructions i\nstate p x\n")
        self.assertEqual(description.states[0].line, 3)

    def test_syntax_error_line(self):
        with self.assertRaises(SystemSyntaxError) as context:
            parse_system("views x\nstate p\n")
        self.assertEqual(context.exception.line, 2)

    def test_validation_issues_carry_lines(self):
        with self.assertRaises(SystemValidationError) as context:
            parse_system("views x\ninstructions i\nstate p x\nstate p x\ntrans p j q\n")
        lines = sorted(issue.line for issue in context.exception.issues)
        self.assertEqual(lines, [4, 5, 5])

    def test_use_before_declaration(self):
        with self.assertRaises(SystemValidationError) as context:
            parse_system("state p x\nviews x\ninstructions i\n")
        issue = context.exception.issues[0]
        self.assertEqual(issue.line, 1)
        self.assertIn("used before its declaration", issue.message)

    def test_forward_references_and_unknown_names_reported_together(self):
        with self.assertRaises(SystemValidationError) as context:
            parse_system("views x\ninstructions i\ntrans p i p\nstate p x\ntrans p j p\n")
        self.assertEqual(context.exception.issues, [
            ValidationIssue(3, "state p used before its declaration on line 4"),
            ValidationIssue(5, "transition p j p: unknown instruction j")])

    def test_fixture_paths(self):
        self.assertTrue(fixture_path("t1").endswith("t1.ets"))


class StrategyParserTestCase(unittest.TestCase):
    """Strategy files."""

    def setUp(self):
        self.system = load_fixture("t0")

    def test_parse(self):
        text = "# all ones\nv1 1\nv2 1\nv3 1\nv4 1\nv5 1\nv6 1\n"
        self.assertEqual(parse_strategy(text, self.system), constant_strategy(self.system, 1))

    def test_duplicate_view(self):
        with self.assertRaises(SystemSyntaxError) as context:
            parse_strategy_entries("v1 0\nv1 1\n")
        self.assertEqual(context.exception.line, 2)

    def test_render(self):
        self.assertEqual(render_strategy(self.system, constant_strategy(self.system, 1)),
                         "v1→1 v2→1 v3→1 v4→1 v5→1 v6→1")


class TheoryParserTestCase(unittest.TestCase):
    """Theory files."""

    def test_parse(self):
        atoms = parse_theory("# assumptions\nnav({v1}; {}; {v2})\n\nnav({v2}; ALL; {})  # void\n", UNIVERSE)
        self.assertEqual(atoms, [Atom(1, 0, 2), Atom(2, 63, 0)])

    def test_error_reports_line(self):
        with self.assertRaises(FormulaSyntaxError) as context:
            parse_theory("nav({v1}; {}; {v2})\nnav({v1}; {}\n", UNIVERSE)
        self.assertEqual(context.exception.line, 2)


if __name__ == "__main__":
    unittest.main()
