"""Shared builders for the navlog tests."""

import random

from navlog.config import FuzzConfig
from navlog.api.fuzz import generate_random_system
from navlog.syntax import Atom
from navlog.system import ViewUniverse

XY = ViewUniverse(["x", "y"])

SMALL_SYSTEMS = FuzzConfig(
    seed=7,
    trials=0,
    max_states=6,
    max_views=4,
    max_instructions=2,
    transition_density=0.5)


def states_mask(system, names):
    """Bit mask of the named states."""
    mask = 0
    for name in names:
        mask |= 1 << system.state_index(name)
    return mask


def views_mask(system, names):
    """Bit mask of the named views."""
    return system.views.mask(names)


def class_atom(system, start, target, corridor=None):
    """Atom between two view lists, unrestricted unless a corridor is given."""
    if corridor is None:
        corridor_mask = system.views.full
    else:
        corridor_mask = system.views.mask(corridor)
    return Atom(system.views.mask(start), corridor_mask, system.views.mask(target))


def random_system(trial, seed=7, **bounds):
    """Random system from the fuzz generator."""
    return generate_random_system(SMALL_SYSTEMS._replace(seed=seed, **bounds), trial)


def random_atom(rng, system):
    """Random atom over the views of a system."""
    full = system.views.full
    return Atom(rng.randint(0, full), rng.randint(0, full), rng.randint(0, full))


def seeded(seed):
    """Independent random source for a test."""
    return random.Random(seed)


def random_theory(rng, universe, size=None):
    """Random list of assumptions over a universe."""
    full = universe.full
    if size is None:
        size = rng.randint(1, 3)
    return [Atom(rng.randint(0, full), rng.randint(0, full), rng.randint(0, full)) for _ in range(size)]
