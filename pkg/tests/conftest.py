import itertools
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from lefdt import fixtures as F
from lefdt.enumeration import random_continuous_map
from lefdt.image import CT, DigitalImage

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_FIXTURES = ["point", "interval", "I1", "I2", "I3", "Y", "Z",
                  "C3", "C4", "C5", "C6", "C7", "C8"]

BOXES = [
    ((3, 3), 2),
    ((4, 2), 2),
    ((2, 2, 2), 3),
    ((6,), 1),
    ((3, 2, 2), 3),
]


@st.composite
def images(draw, max_points=8, c1_only=False):
    """Random subsets of small boxes with a random c_t adjacency."""
    shape, dim = draw(st.sampled_from(BOXES))
    box = list(itertools.product(*(range(s) for s in shape)))
    k = draw(st.integers(1, min(max_points, len(box))))
    pts = draw(st.lists(st.sampled_from(box), min_size=k, max_size=k, unique=True))
    t = 1 if c1_only else draw(st.integers(1, dim))
    return DigitalImage(dim, tuple(pts), CT(t))


@st.composite
def self_maps(draw, max_points=8, c1_only=False):
    img = draw(images(max_points, c1_only))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_continuous_map(img, img, random.Random(seed))


@st.composite
def map_pairs(draw, max_points=8, c1_only=False):
    img = draw(images(max_points, c1_only))
    a, b = draw(st.integers(0, 2**32 - 1)), draw(st.integers(0, 2**32 - 1))
    return (random_continuous_map(img, img, random.Random(a)),
            random_continuous_map(img, img, random.Random(b)))


@pytest.fixture(scope="session")
def small_fixtures():
    return {name: F.get(name) for name in SMALL_FIXTURES}
