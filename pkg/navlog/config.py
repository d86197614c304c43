"""Navlog configuration."""

import json
import logging
import os

from collections import namedtuple

from .errors import ConfigurationError

LOGGER = logging.getLogger(__name__)

MANDATORY_ROOT_KEYS = ["saturation", "truthLemma", "fuzz"]

DEFAULT_CONFIG = {
    "saturation": {
        "maxViews": 5
    },
    "truthLemma": {
        "exhaustiveMaxViews": 3,
        "sampleSize": 200,
        "seed": 0
    },
    "fuzz": {
        "seed": 1,
        "trials": 500,
        "maxStates": 6,
        "maxViews": 4,
        "maxInstructions": 2,
        "transitionDensity": 0.5
    }
}

SaturationConfig = namedtuple('SaturationConfig', [
    'max_views'
])

TruthLemmaConfig = namedtuple('TruthLemmaConfig', [
    'exhaustive_max_views',
    'sample_size',
    'seed'
])

FuzzConfig = namedtuple('FuzzConfig', [
    'seed',
    'trials',
    'max_states',
    'max_views',
    'max_instructions',
    'transition_density'
])

NavlogConfig = namedtuple('NavlogConfig', [
    'saturation',
    'truth_lemma',
    'fuzz'
])


def _lookup(config, section, key):
    """Get a value from a config dict, falling back to the defaults."""
    value = config.get(section, {}).get(key)
    if value is None:
        value = DEFAULT_CONFIG[section][key]
    return value


def _number(value, name, kind=int):
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigurationError("Invalid value {!r} for {}".format(value, name))


def _positive(value, name):
    value = _number(value, name)
    if value < 1:
        raise ConfigurationError("{} must be at least 1, got {}".format(name, value))
    return value


def validate_fuzz_config(fuzz_config):
    """Validate the bounds of a fuzz configuration.

    Args:
        fuzz_config: FuzzConfig instance

    Throws:
        ConfigurationError when a bound is below 1 or the density lies outside [0, 1]
    """
    for name in ('max_states', 'max_views', 'max_instructions'):
        if getattr(fuzz_config, name) < 1:
            raise ConfigurationError("{} must be at least 1, got {}".format(
                name, getattr(fuzz_config, name)))
    if fuzz_config.trials < 0:
        raise ConfigurationError("trials must not be negative, got {}".format(fuzz_config.trials))
    if not 0 <= fuzz_config.transition_density <= 1:
        raise ConfigurationError("transition density must lie in [0, 1], got {}".format(
            fuzz_config.transition_density))
    return fuzz_config


def parse_config(config={}):
    """Parse navlog configuration from dict.

    Environment variables take precedence over dict values, which take precedence over
    DEFAULT_CONFIG.

    Args:
        config (dict): Configuration dictionary
    Returns:
        NavlogConfig instance
    """
    if not isinstance(config, dict):
        raise ConfigurationError("Navlog configuration must be a dictionary")

    saturation = SaturationConfig(
        max_views=_positive(
            os.getenv("NAVLOG_MAX_VIEWS") or _lookup(config, "saturation", "maxViews"),
            "saturation.maxViews"))

    truth_lemma = TruthLemmaConfig(
        exhaustive_max_views=_number(
            _lookup(config, "truthLemma", "exhaustiveMaxViews"), "truthLemma.exhaustiveMaxViews"),
        sample_size=_positive(_lookup(config, "truthLemma", "sampleSize"), "truthLemma.sampleSize"),
        seed=_number(_lookup(config, "truthLemma", "seed"), "truthLemma.seed"))

    fuzz = validate_fuzz_config(FuzzConfig(
        seed=_number(os.getenv("NAVLOG_FUZZ_SEED") or _lookup(config, "fuzz", "seed"), "fuzz.seed"),
        trials=_number(os.getenv("NAVLOG_FUZZ_TRIALS") or _lookup(config, "fuzz", "trials"), "fuzz.trials"),
        max_states=_number(_lookup(config, "fuzz", "maxStates"), "fuzz.maxStates"),
        max_views=_number(_lookup(config, "fuzz", "maxViews"), "fuzz.maxViews"),
        max_instructions=_number(_lookup(config, "fuzz", "maxInstructions"), "fuzz.maxInstructions"),
        transition_density=_number(
            _lookup(config, "fuzz", "transitionDensity"), "fuzz.transitionDensity", float)))

    return NavlogConfig(saturation=saturation, truth_lemma=truth_lemma, fuzz=fuzz)


def validate_config(config):
    """Validate a given configuration dict.

    Args:
        config: The configuration object to be validated
    """
    if not isinstance(config, dict):
        raise ConfigurationError("Navlog configuration must be a dictionary")

    missing_mandatory_keys = [key for key in MANDATORY_ROOT_KEYS if key not in config]
    if missing_mandatory_keys:
        raise ConfigurationError("The following mandatory keys (\"{0}\") are missing.".format(
            '\",\"'.join(missing_mandatory_keys)))

    for key in MANDATORY_ROOT_KEYS:
        if not isinstance(config[key], dict):
            raise ConfigurationError("Configuration key \"{}\" must be an object".format(key))


def load_config(config_filepath):
    """Load configuration from a JSON file.

    Args:
        config_filepath: Path to the JSON configuration file

    Returns:
        NavlogConfig instance
    """
    if not os.path.exists(config_filepath):
        raise ConfigurationError("Configuration file path {} does not exist".format(config_filepath))

    with open(config_filepath, "r") as config_file:
        try:
            config = json.load(config_file)
        except ValueError as error:
            raise ConfigurationError("Malformed configuration file {}: {}".format(config_filepath, error))
    validate_config(config)
    LOGGER.debug("Loaded configuration from %s", config_filepath)
    return parse_config(config)


def default_config():
    """Get the configuration, honouring NAVLOG_CONFIG when set."""
    config_filepath = os.getenv("NAVLOG_CONFIG")
    if config_filepath:
        return load_config(config_filepath)
    return parse_config({})
