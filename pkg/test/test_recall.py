"""Perfect recall navigability test module."""
import unittest

from hypothesis import given, settings, strategies as st

from navlog.api.recall import (
    DEAD_END,
    Belief,
    belief_successors,
    check_atom_recall,
    initial_beliefs,
    replay_recall_witness
)
from navlog.fixtures import load_fixture
from navlog.syntax import Atom
from navlog.system import SystemDescription, validate_system

from .helpers import class_atom, random_system, states_mask


class BeliefTestCase(unittest.TestCase):
    """Belief construction and successors."""

    def setUp(self):
        self.system = load_fixture("t0")

    def test_initial_beliefs(self):
        beliefs = initial_beliefs(self.system, self.system.views.mask(["v1", "v3"]))
        self.assertEqual(beliefs, [
            Belief(0, states_mask(self.system, ["a", "g"])),
            Belief(2, states_mask(self.system, ["c", "e"]))])
        self.assertEqual(beliefs[1].possible, 20)
        self.assertEqual(beliefs[1].states(), [2, 4])

    def test_empty_class_has_no_belief(self):
        system = validate_system(SystemDescription.build(["x", "y"], ["i"], [("p", "y")], []))
        self.assertEqual(initial_beliefs(system, 3), [Belief(1, 1)])

    def test_successors_split_by_view(self):
        belief = Belief(2, states_mask(self.system, ["c", "e"]))
        self.assertEqual(belief_successors(self.system, belief, 0), (
            Belief(1, states_mask(self.system, ["b"])),
            Belief(3, states_mask(self.system, ["d"]))))

    def test_dead_end(self):
        system = validate_system(SystemDescription.build(
            ["x"], ["i"], [("p", "x"), ("q", "x")], [("p", "i", "q")]))
        self.assertIs(belief_successors(system, Belief(0, 3), 0), DEAD_END)
        self.assertEqual(belief_successors(system, Belief(0, 1), 0), (Belief(0, 2),))


class CheckRecallTestCase(unittest.TestCase):
    """Recall decisions on the bundled systems."""

    def setUp(self):
        self.t0 = load_fixture("t0")

    def test_knowledge_splits_shared_view(self):
        atom = class_atom(self.t0, ["v3"], ["v4"])
        decision = check_atom_recall(self.t0, atom)
        self.assertTrue(decision.holds)
        self.assertEqual(decision.witness, {
            Belief(2, 20): 0,
            Belief(1, states_mask(self.t0, ["b"])): 1,
            Belief(2, states_mask(self.t0, ["c"])): 1})
        self.assertTrue(replay_recall_witness(self.t0, atom, decision))

    def test_recall_beyond_amnesic(self):
        atom = class_atom(self.t0, ["v1"], ["v2"])
        decision = check_atom_recall(self.t0, atom)
        self.assertTrue(decision.holds)
        self.assertTrue(replay_recall_witness(self.t0, atom, decision))

    def test_restricted_corridor(self):
        atom = class_atom(self.t0, ["v1"], ["v3"], corridor=["v1", "v2", "v3", "v4", "v6"])
        decision = check_atom_recall(self.t0, atom)
        self.assertTrue(decision.holds)
        self.assertTrue(replay_recall_witness(self.t0, atom, decision))

    def test_reaches_shared_class(self):
        atom = class_atom(self.t0, ["v2"], ["v5"])
        decision = check_atom_recall(self.t0, atom)
        self.assertTrue(decision.holds)
        self.assertTrue(replay_recall_witness(self.t0, atom, decision))

    def test_sink_class(self):
        decision = check_atom_recall(self.t0, class_atom(self.t0, ["v4"], ["v1"]))
        self.assertFalse(decision.holds)
        self.assertIsNone(decision.witness)
        self.assertGreater(decision.explored, 0)

    def test_distinct_classes_share_a_view(self):
        t1 = load_fixture("t1")
        atom = class_atom(t1, ["vb", "vf"], ["vd"])
        decision = check_atom_recall(t1, atom)
        self.assertTrue(decision.holds)
        self.assertTrue(replay_recall_witness(t1, atom, decision))

    def test_target_start_needs_no_instruction(self):
        decision = check_atom_recall(self.t0, Atom(4, 0, 4))
        self.assertTrue(decision.holds)
        self.assertEqual(decision.witness, {})

    def test_replay_rejects_failed_decision(self):
        atom = class_atom(self.t0, ["v4"], ["v1"])
        self.assertFalse(replay_recall_witness(self.t0, atom, check_atom_recall(self.t0, atom)))


trials = st.integers(min_value=0, max_value=10 ** 6)
masks = st.integers(min_value=0, max_value=15)


class RecallPropertiesTestCase(unittest.TestCase):
    """Recall navigability on random systems."""

    @settings(deadline=None, max_examples=150)
    @given(trials, masks, masks, masks)
    def test_witness_replays(self, trial, a, b, c):
        system = random_system(trial)
        full = system.views.full
        atom = Atom(a & full, b & full, c & full)
        decision = check_atom_recall(system, atom)
        if decision.holds:
            self.assertTrue(replay_recall_witness(system, atom, decision))

    @settings(deadline=None, max_examples=150)
    @given(trials, masks, masks, masks)
    def test_unrestricted_transitivity(self, trial, a, c, e):
        system = random_system(trial)
        full = system.views.full
        first = Atom(a & full, full, c & full)
        second = Atom(c & full, full, e & full)
        if check_atom_recall(system, first).holds and check_atom_recall(system, second).holds:
            self.assertTrue(check_atom_recall(system, Atom(a & full, full, e & full)).holds)


if __name__ == "__main__":
    unittest.main()
