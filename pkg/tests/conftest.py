"""Shared corpus of fans and ample divisors used across the test suite."""

import pytest

from syzstab import Divisor, Fan, ToricSurface

P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
BL2P2_RAYS = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]
DP6_RAYS = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
RANK5_RAYS = [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
RANK6_RAYS = [
    (1, 0),
    (2, 1),
    (1, 1),
    (1, 2),
    (0, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
]


def hirzebruch_rays(ell):
    return [(1, 0), (0, 1), (-1, ell), (0, -1)]


CORPUS_RAYS = {
    "p2": P2_RAYS,
    "f0": hirzebruch_rays(0),
    "f1": hirzebruch_rays(1),
    "f2": hirzebruch_rays(2),
    "f3": hirzebruch_rays(3),
    "f4": hirzebruch_rays(4),
    "bl2p2": BL2P2_RAYS,
    "dp6": DP6_RAYS,
    "rank5": RANK5_RAYS,
    "rank6": RANK6_RAYS,
}

# One fixed ample divisor per fan of Picard rank >= 3: the anticanonical
# class where it is ample (the del Pezzo cases), hand-picked coefficients
# otherwise.  Ampleness is asserted in a test below.
AMPLE_FOR_DRIVER = {
    "bl2p2": (1, 1, 1, 1, 1),
    "dp6": (1, 1, 1, 1, 1, 1),
    "rank5": (2, 3, 2, 3, 2, 2, 2),
    "rank6": (3, 4, 2, 4, 3, 3, 3, 3),
}

# Abstract presentation of the plane blown up in two points, on the basis
# of the three (-1)-curves.
BL2P2_ABSTRACT = {
    "labels": ["E1", "E2", "L12"],
    "pairing": [[-1, 0, 1], [0, -1, 1], [1, 1, -1]],
    "canonical": [-2, -2, -3],
    "effective_generators": [0, 1, 2],
}


@pytest.fixture(scope="session")
def corpus():
    return {name: Fan(rays) for name, rays in CORPUS_RAYS.items()}


@pytest.fixture(scope="session")
def surfaces(corpus):
    return {name: ToricSurface(fan) for name, fan in corpus.items()}


@pytest.fixture(scope="session")
def f1(surfaces):
    return surfaces["f1"]


@pytest.fixture(scope="session")
def p2(surfaces):
    return surfaces["p2"]


def driver_divisor(name, X) -> Divisor:
    """The fixed ample divisor used in end-to-end runs on this fan."""
    return Divisor(AMPLE_FOR_DRIVER[name])


def ample_on(name, X) -> Divisor:
    """A fixed ample divisor on each corpus surface."""
    if name in AMPLE_FOR_DRIVER:
        return Divisor(AMPLE_FOR_DRIVER[name])
    if name == "p2":
        return Divisor([1, 1, 1])
    ell = X.fan.surface_type().ell
    if ell == 0:
        return Divisor([1, 1, 1, 1])
    # the section plus (ell + 1) fibers
    return X.from_section_fiber(1, ell + 1)
