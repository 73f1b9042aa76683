# encoding: utf-8
import numpy as np
import pytest

from aoisched import Instance, demo_instance, min_deadline
from aoisched.files import dump_instance

# Durations are drawn on this grid so that the oracle lattice with the same
# step always contains the greedy schedule.
DURATION_STEP = 0.02


def random_instance(rng, n, factor=None):
    """Draw an instance with durations in [0.1, 1.0] and a deadline of
    min_deadline * factor, factor drawn in [1, 3] if not given."""
    tx = np.round(rng.integers(5, 51, size=n) * DURATION_STEP, 2)
    comp = np.round(rng.integers(5, 51, size=n) * DURATION_STEP, 2)
    age = round(float(rng.integers(0, 51)) * DURATION_STEP, 2)
    draft = Instance(tx, comp, age, 1.0)
    if factor is None:
        factor = rng.uniform(1.0, 3.0)
    return draft.with_deadline(min_deadline(draft) * factor)


@pytest.fixture
def demo():
    """The five-packet instance, as a function of the deadline."""
    return demo_instance


@pytest.fixture
def single():
    """One packet, T_1 = C_1 = 1, initial age 1, deadline 3."""
    return Instance((1.0,), (1.0,), 1.0, 3.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_instances(rng):
    def make(count, sizes=(2, 3, 4), factor=None):
        return [random_instance(rng, int(rng.choice(sizes)), factor) for _ in range(count)]
    return make


@pytest.fixture
def instance_file(tmp_path):
    """Write an instance to a JSON file and return its path."""
    def write(instance, name="instance.json"):
        path = tmp_path / name
        dump_instance(str(path), instance)
        return str(path)
    return write
