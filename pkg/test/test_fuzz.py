"""Random system generator and soundness campaign test module."""
import unittest

from navlog.api.fuzz import FIXTURE_COUNTEREXAMPLE, fuzz_soundness, generate_random_system
from navlog.api.types import FuzzProperty
from navlog.config import FuzzConfig
from navlog.errors import ConfigurationError
from navlog.syntax import render_system

FUZZ_CONFIG = FuzzConfig(
    seed=1,
    trials=500,
    max_states=6,
    max_views=4,
    max_instructions=2,
    transition_density=0.5)


class GenerateRandomSystemTestCase(unittest.TestCase):
    """Seeded system generation."""

    def test_deterministic(self):
        first = generate_random_system(FUZZ_CONFIG, 12)
        second = generate_random_system(FUZZ_CONFIG, 12)
        self.assertEqual(render_system(first), render_system(second))

    def test_within_bounds(self):
        for trial in range(50):
            system = generate_random_system(FUZZ_CONFIG, trial)
            self.assertTrue(1 <= len(system.states) <= 6)
            self.assertTrue(1 <= len(system.views) <= 4)
            self.assertTrue(1 <= len(system.instructions) <= 2)

    def test_density_extremes(self):
        empty = generate_random_system(FUZZ_CONFIG._replace(transition_density=0.0), 3)
        self.assertEqual(list(empty.transitions()), [])
        full = generate_random_system(FUZZ_CONFIG._replace(transition_density=1.0), 3)
        self.assertEqual(len(list(full.transitions())),
                         len(full.states) ** 2 * len(full.instructions))

    def test_invalid_bounds(self):
        with self.assertRaises(ConfigurationError):
            generate_random_system(FUZZ_CONFIG._replace(max_states=0), 0)
        with self.assertRaises(ConfigurationError):
            generate_random_system(FUZZ_CONFIG._replace(transition_density=1.5), 0)


class FuzzSoundnessTestCase(unittest.TestCase):
    """Soundness campaign."""

    def test_default_campaign_is_clean(self):
        report = fuzz_soundness(FUZZ_CONFIG)
        self.assertEqual(report.failures, [])
        self.assertEqual(report.tallies[FuzzProperty.REFLEXIVITY].checked, 500)
        for name in FuzzProperty.ALL:
            tally = report.tallies[name]
            self.assertEqual(tally.failed, 0, name)
            self.assertEqual(tally.passed, tally.checked, name)

    def test_fixture_counterexample(self):
        report = fuzz_soundness(FUZZ_CONFIG._replace(trials=1))
        self.assertEqual(len(report.expected_counterexamples), 1)
        expected = report.expected_counterexamples[0]
        self.assertEqual(expected.trial, 0)
        self.assertEqual(expected.property, FIXTURE_COUNTEREXAMPLE)
        self.assertEqual(expected.queries[2], "nav({v1}; {v1, v2, v3, v4, v5, v6}; {v2})")

    def test_without_fixture(self):
        report = fuzz_soundness(FUZZ_CONFIG._replace(trials=20), inject_fixture=False)
        self.assertEqual(report.expected_counterexamples, [])
        self.assertEqual(report.failures, [])

    def test_zero_trials(self):
        report = fuzz_soundness(FUZZ_CONFIG._replace(trials=0))
        self.assertEqual(report.failures, [])
        self.assertTrue(all(tally.checked == 0 for tally in report.tallies.values()))

    def test_reproducible(self):
        config = FUZZ_CONFIG._replace(seed=99, trials=40)
        first = fuzz_soundness(config)
        second = fuzz_soundness(config)
        self.assertEqual(first.tallies, second.tallies)


if __name__ == "__main__":
    unittest.main()
