"""Bundled example systems."""

import os

from ..errors import InvalidQueryError
from ..syntax import parse_system

FIXTURE_DIR = os.path.dirname(os.path.abspath(__file__))

FIXTURES = ("t0", "t1")


def fixture_path(name):
    """Get the path of a bundled `.ets` fixture."""
    if name not in FIXTURES:
        raise InvalidQueryError("Unknown fixture {}".format(name))
    return os.path.join(FIXTURE_DIR, "{}.ets".format(name))


def load_fixture(name):
    """Parse a bundled fixture.

    Args:
        name: Fixture name, `t0` or `t1`

    Returns:
        TransitionSystem instance
    """
    with open(fixture_path(name), "r") as fixture_file:
        return parse_system(fixture_file.read())
