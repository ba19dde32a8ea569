"""Torus point arithmetic: canonical forms, segments, norms, balls."""

import random
from fractions import Fraction

import pytest

from troplin.errors import InvalidInputError
from troplin.points import (
    TropPoint,
    canonicalize,
    heterogeneity,
    imax,
    imin,
    partition,
    segment,
    tconv_contains,
    trop_ball,
    trop_combine,
    trop_norm,
)

from conftest import rand_point, rand_rational

F = Fraction
fs = frozenset


class TestCanonicalize:
    def test_subtracts_first_coordinate(self):
        assert canonicalize((1, 0, 0)).coords == (0, -1, -1)

    def test_already_canonical(self):
        assert canonicalize((0, 2, 1)).coords == (0, 2, 1)

    def test_multiple_of_ones_is_origin(self):
        assert canonicalize((5, 5, 5)).coords == (0, 0, 0)

    def test_empty_rejected(self):
        with pytest.raises(InvalidInputError):
            canonicalize(())

    def test_equality_through_representatives(self):
        assert TropPoint((3, 4, 5)) == TropPoint((0, 1, 2))
        assert hash(TropPoint((3, 4, 5))) == hash(TropPoint((0, 1, 2)))


class TestTropCombine:
    def test_two_term_combination(self):
        x = TropPoint((0, -1, -1))
        y = TropPoint((0, 2, 1))
        assert trop_combine([(0, x), (-1, y)]) == TropPoint((0, 1, 0))

    def test_single_term_identity(self):
        x = TropPoint((0, 3, -2))
        assert trop_combine([(0, x)]) == x

    def test_idempotent(self):
        x = TropPoint((0, 3, -2))
        assert trop_combine([(0, x), (0, x)]) == x

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            trop_combine([(0, TropPoint((0, 1))), (0, TropPoint((0, 1, 2)))])

    def test_scale_translation_equivariance(self):
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.randint(2, 5)
            terms = [
                (rand_rational(rng), rand_point(rng, n)) for _ in range(rng.randint(1, 4))
            ]
            c = rand_rational(rng)
            shifted = [(lam + c, x) for lam, x in terms]
            assert trop_combine(shifted) == trop_combine(terms)


class TestPartition:
    def test_heterogeneity_examples(self):
        assert heterogeneity(TropPoint((0, -1, -1))) == 2
        assert heterogeneity(TropPoint((0, 0, 0))) == 1

    def test_partition_example(self):
        part = partition(TropPoint((0, 3, 2)))
        assert part.blocks == (fs({2}), fs({3}), fs({1}))
        assert part.values == (F(3), F(2), F(0))

    def test_blocks_cover_and_order(self):
        rng = random.Random(7)
        for _ in range(200):
            x = rand_point(rng, rng.randint(1, 6))
            part = partition(x)
            union = set()
            for b in part.blocks:
                assert b, "empty block"
                assert not (union & b), "blocks overlap"
                union |= b
            assert union == set(range(1, x.n + 1))
            assert list(part.values) == sorted(part.values, reverse=True)
            assert len(part.blocks) == heterogeneity(x)


class TestSegment:
    def test_worked_example(self):
        x = TropPoint((0, -1, -1))
        y = TropPoint((0, 2, 1))
        assert segment(x, y) == [
            TropPoint((0, -1, -1)),
            TropPoint((0, 0, -1)),
            TropPoint((0, 2, 1)),
        ]

    def test_degenerate(self):
        x = TropPoint((0, 5, -1))
        assert segment(x, x) == [x]

    def test_breakpoints_are_two_term_combinations(self):
        x = TropPoint((0, 0, 0))
        y = TropPoint((0, 1, 2))
        pts = segment(x, y)
        assert pts == [TropPoint((0, 0, 0)), TropPoint((0, 0, 1)), TropPoint((0, 1, 2))]
        assert pts[1] == trop_combine([(0, x), (-1, y)])

    def test_endpoint_and_count(self):
        rng = random.Random(99)
        for _ in range(300):
            n = rng.randint(1, 6)
            x, y = rand_point(rng, n), rand_point(rng, n)
            pts = segment(x, y)
            assert pts[0] == x and pts[-1] == y
            assert len(pts) == heterogeneity(y.minus(x))

    def test_nested_zero_one_slopes(self):
        rng = random.Random(100)
        for _ in range(200):
            n = rng.randint(2, 6)
            pts = segment(rand_point(rng, n), rand_point(rng, n))
            previous = None
            for a, b in zip(pts, pts[1:]):
                delta = b.minus(a)
                support = fs(
                    i for i, c in enumerate(delta.coords, start=1) if c != min(delta.coords)
                )
                positive = {c for c in delta.coords if c != min(delta.coords)}
                assert len(positive) == 1, "slope is not a scaled 0/1 vector"
                if previous is not None:
                    assert previous < support, "supports are not strictly nested"
                previous = support

    def test_symmetry_as_point_sets(self):
        rng = random.Random(4)
        for _ in range(200):
            n = rng.randint(1, 6)
            x, y = rand_point(rng, n), rand_point(rng, n)
            assert set(segment(x, y)) == set(segment(y, x))

    def test_breakpoints_lie_in_the_hull(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(1, 5)
            x, y = rand_point(rng, n), rand_point(rng, n)
            for p in segment(x, y):
                assert tconv_contains([x, y], p)


class TestHullMembership:
    def test_generator_in_hull(self):
        x = TropPoint((0, -1, -1))
        assert tconv_contains([x], x)

    def test_breakpoint_in_hull(self):
        gens = [TropPoint((0, -1, -1)), TropPoint((0, 2, 1))]
        assert tconv_contains(gens, TropPoint((0, 0, -1)))

    def test_outside_point(self):
        gens = [TropPoint((0, -1, -1)), TropPoint((0, 2, 1))]
        assert not tconv_contains(gens, TropPoint((0, -1, 1)))

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            tconv_contains([TropPoint((0, 1))], TropPoint((0, 1, 2)))

    def test_combinations_always_contained(self):
        rng = random.Random(6)
        for _ in range(200):
            n = rng.randint(2, 5)
            gens = [rand_point(rng, n) for _ in range(rng.randint(1, 4))]
            terms = [(rand_rational(rng), g) for g in gens]
            assert tconv_contains(gens, trop_combine(terms))


class TestNorm:
    def test_examples(self):
        assert trop_norm(TropPoint((0, 3, 2))) == 3
        assert trop_norm(TropPoint((0, 0, 0))) == 0

    def test_zero_iff_origin(self):
        rng = random.Random(8)
        for _ in range(200):
            x = rand_point(rng, rng.randint(1, 5))
            assert (trop_norm(x) == 0) == (x == TropPoint((0,) * x.n))

    def test_scaling(self):
        rng = random.Random(9)
        for _ in range(200):
            x = rand_point(rng, rng.randint(1, 5))
            lam = rand_rational(rng)
            assert trop_norm(x.scale(lam)) == abs(lam) * trop_norm(x)

    def test_triangle_inequality(self):
        rng = random.Random(10)
        for _ in range(300):
            n = rng.randint(1, 5)
            x, y = rand_point(rng, n), rand_point(rng, n)
            assert trop_norm(TropPoint([a + b for a, b in zip(x.coords, y.coords)])) \
                <= trop_norm(x) + trop_norm(y)

    def test_additivity_along_segments(self):
        # the norm of the difference splits over the breakpoint differences
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(1, 6)
            x, y = rand_point(rng, n), rand_point(rng, n)
            pts = segment(x, y)
            total = sum(
                (trop_norm(b.minus(a)) for a, b in zip(pts, pts[1:])), F(0)
            )
            assert total == trop_norm(y.minus(x))

    def test_worked_additivity(self):
        x = TropPoint((0, -1, -1))
        y = TropPoint((0, 2, 1))
        p = TropPoint((0, 0, -1))
        assert trop_norm(p.minus(x)) + trop_norm(y.minus(p)) == F(3)
        assert trop_norm(y.minus(x)) == F(3)


class TestArgExtremes:
    def test_examples(self):
        assert imax(TropPoint((0, 3, 2))) == fs({2})
        assert imin(TropPoint((0, 3, 2))) == fs({1})
        assert imax(TropPoint((0, 0, 0))) == fs({1, 2, 3})

    def test_max_index_inclusion_along_segments(self):
        # for any breakpoint p of the segment from x to y and any z:
        # imax(p - z) is inside imax(x - z) union imax(y - z)
        rng = random.Random(12)
        for _ in range(400):
            n = rng.randint(2, 6)
            x, y, z = (rand_point(rng, n) for _ in range(3))
            allowed = imax(x.minus(z)) | imax(y.minus(z))
            for p in segment(x, y):
                assert imax(p.minus(z)) <= allowed


class TestBall:
    def test_zero_radius(self):
        x = TropPoint((0, 5, -2))
        ball = trop_ball(x, 0)
        assert ball.vertices == (x,)

    def test_unit_sphere_hexagon(self):
        ball = trop_ball(TropPoint((0, 0, 0)), 1)
        assert len(ball.vertices) == 6
        for v in ball.vertices:
            assert trop_norm(v) == 1

    def test_negative_radius(self):
        with pytest.raises(InvalidInputError):
            trop_ball(TropPoint((0, 0)), -1)

    def test_membership_matches_norm(self):
        rng = random.Random(13)
        for _ in range(4):
            n = rng.randint(2, 5)
            center = rand_point(rng, n)
            r = abs(rand_rational(rng))
            ball = trop_ball(center, r)
            for _ in range(100):
                y = rand_point(rng, n, span=4)
                assert ball.contains(y) == (trop_norm(y.minus(center)) <= r)

    def test_vertices_on_sphere_and_convex(self):
        center = TropPoint((0, -1, 2, 0))
        ball = trop_ball(center, F(3, 2))
        assert len(ball.vertices) == 2**4 - 2
        for v in ball.vertices:
            assert trop_norm(v.minus(center)) == F(3, 2)
        # polytropes are tropically convex: combinations with nonpositive
        # coefficients, one of them zero, stay inside
        rng = random.Random(14)
        for _ in range(100):
            a, b = rng.choice(ball.vertices), rng.choice(ball.vertices)
            lam = -abs(rand_rational(rng, 2))
            z = trop_combine([(0, a), (lam, b)])
            assert ball.contains(z)
