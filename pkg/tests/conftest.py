"""Shared fixtures: small matroids, their fans, and valuated-matroid complexes."""

import random
from fractions import Fraction

import pytest

from troplin.complexes import Cell, WeightedComplex, chain_fan
from troplin.matroids import ChainFamily, matroid_from_bases
from troplin.points import TropPoint
from troplin.valuated import ValuatedMatroid


@pytest.fixture(scope="session")
def u23():
    return matroid_from_bases(3, [[1, 2], [1, 3], [2, 3]])


@pytest.fixture(scope="session")
def u24():
    return matroid_from_bases(4, [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]])


@pytest.fixture(scope="session")
def u23_fan(u23):
    return chain_fan(ChainFamily(3, u23.flats | {u23.ground}))


@pytest.fixture(scope="session")
def u23_valuated(u23):
    weights = {
        frozenset({1, 2}): Fraction(0),
        frozenset({1, 3}): Fraction(0),
        frozenset({2, 3}): Fraction(1),
    }
    return ValuatedMatroid(u23, weights)


@pytest.fixture(scope="session")
def tripod_complex():
    """The tropical line of U(2,3) with valuation (0,0,1): vertex (0,1,1)."""
    apex = TropPoint((0, 1, 1))
    cells = [
        Cell.from_torus(3, [apex], rays=[(-1, 0, 0)]),
        Cell.from_torus(3, [apex], rays=[(0, -1, 0)]),
        Cell.from_torus(3, [apex], rays=[(0, 0, -1)]),
    ]
    return WeightedComplex(3, cells, [1, 1, 1])


@pytest.fixture(scope="session")
def u24_tree_valuated(u24):
    weights = {b: Fraction(0) for b in u24.bases}
    weights[frozenset({1, 2})] = Fraction(-1)
    return ValuatedMatroid(u24, weights)


def make_tree_cells(offset=(0, 0, 0, 0)):
    u0 = TropPoint(offset)
    u1 = u0.translate((-1, -1, 0, 0))
    return [
        Cell.from_torus(4, [u0, u1]),
        Cell.from_torus(4, [u1], rays=[(-1, 0, 0, 0)]),
        Cell.from_torus(4, [u1], rays=[(0, -1, 0, 0)]),
        Cell.from_torus(4, [u0], rays=[(0, 0, -1, 0)]),
        Cell.from_torus(4, [u0], rays=[(0, 0, 0, -1)]),
    ]


@pytest.fixture(scope="session")
def tree_complex():
    """The tropical line of U(2,4) with valuation -1 on basis {1,2}."""
    return WeightedComplex(4, make_tree_cells(), [1] * 5)


@pytest.fixture(scope="session")
def plus_e_fan():
    cells = [
        Cell.from_torus(3, [TropPoint((0, 0, 0))], rays=[(1, 0, 0)]),
        Cell.from_torus(3, [TropPoint((0, 0, 0))], rays=[(0, 1, 0)]),
        Cell.from_torus(3, [TropPoint((0, 0, 0))], rays=[(0, 0, 1)]),
    ]
    return WeightedComplex(3, cells, [1, 1, 1], validate=False)


def rand_rational(rng: random.Random, span: int = 8, denominators: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, denominators))


def rand_point(rng: random.Random, n: int, span: int = 8) -> TropPoint:
    return TropPoint(rand_rational(rng, span) for _ in range(n))
