"""Navlog configuration test module."""
import json
import os
import tempfile
import unittest

from unittest import mock

from navlog.config import (
    DEFAULT_CONFIG,
    default_config,
    load_config,
    parse_config,
    validate_config
)
from navlog.errors import ConfigurationError

SAMPLE_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "config", "navlog.json")


class ParseConfigTestCase(unittest.TestCase):
    """Configuration layering."""

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        config = parse_config()
        self.assertEqual(config.saturation.max_views, 5)
        self.assertEqual(config.truth_lemma.exhaustive_max_views, 3)
        self.assertEqual(config.fuzz.trials, 500)
        self.assertEqual(config.fuzz.transition_density, 0.5)

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_dict_overrides_defaults(self):
        config = parse_config({"fuzz": {"seed": 8, "maxViews": 3}})
        self.assertEqual(config.fuzz.seed, 8)
        self.assertEqual(config.fuzz.max_views, 3)
        self.assertEqual(config.fuzz.max_states, 6)

    @mock.patch.dict(os.environ, {"NAVLOG_MAX_VIEWS": "4", "NAVLOG_FUZZ_TRIALS": "7"}, clear=True)
    def test_environment_wins(self):
        config = parse_config({"saturation": {"maxViews": 2}, "fuzz": {"trials": 3}})
        self.assertEqual(config.saturation.max_views, 4)
        self.assertEqual(config.fuzz.trials, 7)

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_invalid_values(self):
        with self.assertRaises(ConfigurationError):
            parse_config({"saturation": {"maxViews": 0}})
        with self.assertRaises(ConfigurationError):
            parse_config({"fuzz": {"seed": "many"}})
        with self.assertRaises(ConfigurationError):
            parse_config({"fuzz": {"transitionDensity": 2}})
        with self.assertRaises(ConfigurationError):
            parse_config([])


class LoadConfigTestCase(unittest.TestCase):
    """Configuration files."""

    def test_validate_config(self):
        validate_config(DEFAULT_CONFIG)
        with self.assertRaises(ConfigurationError):
            validate_config({"saturation": {}})
        with self.assertRaises(ConfigurationError):
            validate_config({"saturation": {}, "truthLemma": {}, "fuzz": 3})

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_sample_file(self):
        self.assertEqual(load_config(SAMPLE_CONFIG), parse_config(DEFAULT_CONFIG))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_config(os.path.join(tempfile.gettempdir(), "navlog-missing.json"))

    def test_malformed_file(self):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as config_file:
            config_file.write("{not json")
        self.addCleanup(os.remove, config_file.name)
        with self.assertRaises(ConfigurationError):
            load_config(config_file.name)

    def test_default_config_honours_environment(self):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as config_file:
            json.dump(dict(DEFAULT_CONFIG, fuzz={"seed": 42}), config_file)
        self.addCleanup(os.remove, config_file.name)
        with mock.patch.dict(os.environ, {"NAVLOG_CONFIG": config_file.name}, clear=True):
            self.assertEqual(default_config().fuzz.seed, 42)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(default_config().fuzz.seed, 1)


if __name__ == "__main__":
    unittest.main()
