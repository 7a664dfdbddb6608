import random
from fractions import Fraction
from functools import lru_cache

import pytest

from planepoisson.polyring import Poly, WeightSystem, monomials_of_degree
from planepoisson.polyvector import Bivector, VectorField
from planepoisson.arnold import instantiate, parse_type


def rational(rng, num=3, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_poly(rng, max_degree=12, max_terms=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        a = rng.randint(0, max_degree)
        b = rng.randint(0, max_degree - a)
        c = rational(rng)
        if c:
            terms[(a, b)] = c
    return Poly(terms)


def random_vf(rng, max_degree=12):
    return VectorField(random_poly(rng, max_degree), random_poly(rng, max_degree))


def random_biv(rng, max_degree=12):
    return Bivector(random_poly(rng, max_degree))


def random_polyvector(rng, degree, max_degree=12):
    if degree == 0:
        return random_poly(rng, max_degree)
    if degree == 1:
        return random_vf(rng, max_degree)
    return random_biv(rng, max_degree)


def random_homogeneous(rng, w: WeightSystem, degree: int):
    mons = monomials_of_degree(w, degree).monomials
    return Poly({m: rational(rng) for m in mons})


@lru_cache(maxsize=None)
def structure(name, lam="0", mu="0"):
    """Catalog structures shared across tests so jet caches are reused."""
    return instantiate(parse_type(name, Fraction(lam), Fraction(mu)))


@pytest.fixture
def rng():
    return random.Random(20260810)
