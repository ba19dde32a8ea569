"""Cross-cutting structural properties checked against independent oracles."""

import random
from fractions import Fraction
from itertools import combinations

from troplin.complexes import (
    Cell,
    WeightedComplex,
    chain_fan,
    is_balanced,
    point_in_support,
    recession_fan,
    segment_in_support,
    star_fan,
)
from troplin.matroids import ChainFamily, enumerate_matroids
from troplin.points import TropPoint, flat_direction, segment, tconv_contains, trop_combine
from troplin.polyhedra import Polyhedron, _in_hull

from conftest import rand_rational

F = Fraction
fs = frozenset


class TestChainConePoints:
    def test_cone_points_are_combinations_of_scaled_generators(self):
        # any nonnegative combination of nested negated indicators equals a
        # tropical combination of scaled single generators, so chain cones
        # are tropically convex and lie in any hull containing their rays
        rng = random.Random(19)
        for _ in range(200):
            n = rng.randint(2, 6)
            sizes = sorted(rng.sample(range(1, n), rng.randint(1, n - 1)))
            elements = list(range(1, n + 1))
            rng.shuffle(elements)
            chain = [fs(elements[: s]) for s in sizes]
            lams = [F(rng.randint(0, 5), rng.randint(1, 3)) for _ in chain]
            total = [F(0)] * n
            for lam, f in zip(lams, chain):
                for i in range(n):
                    total[i] += lam * flat_direction(n, f).coords[i]
            point = TropPoint(total)
            # identity: the cone point is the componentwise maximum over the
            # scaled raw generators -mu0*e_F shifted by the tail sums -mu_j;
            # the representatives have to be anchored consistently, so the
            # maximum is taken on raw vectors before canonicalizing
            mu0 = sum(lams, F(0))
            raw_terms = []
            for j, f in enumerate(chain):
                mu_j = sum(lams[j + 1 :], F(0))
                raw_terms.append(
                    [(-mu0 if i in f else F(0)) - mu_j for i in range(1, n + 1)]
                )
            combined = [max(col) for col in zip(*raw_terms)]
            assert TropPoint(combined) == point
            # membership in the hull of the scaled generators, quantifying
            # over coefficients, is exactly what tconv_contains decides
            scaled = [flat_direction(n, f).scale(mu0) for f in chain]
            assert tconv_contains(scaled, point)


class TestStarsStayBalanced:
    def test_star_of_balanced_complex_is_balanced(self, tree_complex, tripod_complex):
        rng = random.Random(23)
        for complex_ in (tree_complex, tripod_complex):
            for _ in range(15):
                cell = complex_.cells[rng.randrange(len(complex_.cells))]
                q = list(cell.poly.vertices[rng.randrange(len(cell.poly.vertices))])
                for r in cell.poly.rays:
                    c = F(rng.randint(0, 4), rng.randint(1, 2))
                    for i, x in enumerate(r):
                        q[i] += c * x
                p = TropPoint((0,) + tuple(q))
                star = star_fan(complex_, p)
                assert is_balanced(star).ok, p


class TestSegmentCoverageOracle:
    def test_verdict_matches_dense_sampling(self, u23_fan, plus_e_fan, tree_complex):
        # the interval union verdict must agree with pointwise membership of
        # densely sampled segment points
        rng = random.Random(29)
        complexes = [u23_fan, plus_e_fan, tree_complex]
        for _ in range(120):
            complex_ = complexes[rng.randrange(len(complexes))]
            n = complex_.n
            x = TropPoint([F(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(n)])
            y = TropPoint([F(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(n)])
            verdict = segment_in_support(complex_, x, y)
            points = segment(x, y)
            sampled_outside = None
            for a, b in zip(points, points[1:]):
                for k in range(8):
                    t = F(k, 7)
                    mid = TropPoint(
                        [
                            (1 - t) * ca + t * cb
                            for ca, cb in zip(a.coords, b.coords)
                        ]
                    )
                    if point_in_support(complex_, mid) is None:
                        sampled_outside = mid
                        break
                if sampled_outside:
                    break
            if sampled_outside is not None:
                assert not verdict.covered
            if not verdict.covered:
                assert point_in_support(complex_, verdict.gap_point) is None


class TestHigherDimensionalDuality:
    def test_hrep_matches_hull_oracle_in_dim_four(self):
        rng = random.Random(31)
        for _ in range(25):
            m = 4
            verts = [
                tuple(F(rng.randint(-2, 2)) for _ in range(m))
                for _ in range(rng.randint(1, 5))
            ]
            rays = [
                t
                for t in (
                    tuple(rng.randint(-1, 1) for _ in range(m))
                    for _ in range(rng.randint(0, 3))
                )
                if any(t)
            ]
            lin = [
                t
                for t in (
                    tuple(rng.randint(-1, 1) for _ in range(m))
                    for _ in range(rng.randint(0, 1))
                )
                if any(t)
            ]
            poly = Polyhedron(m, verts, rays, lin)
            for _ in range(20):
                q = tuple(F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(m))
                assert poly.contains(q) == _in_hull(
                    q, list(poly.vertices), list(poly.rays), list(poly.lineality), m
                )


class TestRecessionRepairOracle:
    def test_repaired_fan_covers_union_of_recession_cones(self):
        # random pairs of translated two-dimensional cells whose recession
        # cones overlap arbitrarily; the repaired fan must have the same
        # support as the union of the recession cones
        rng = random.Random(37)
        built = 0
        while built < 12:
            rays_a = [
                t
                for t in (
                    tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(2)
                )
                if any(t)
            ]
            rays_b = [
                t
                for t in (
                    tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(2)
                )
                if any(t)
            ]
            if len(rays_a) < 2 or len(rays_b) < 2:
                continue
            a = Cell(3, Polyhedron(2, [(0, 0)], rays_a))
            b = Cell(3, Polyhedron(2, [(50, 81)], rays_b))
            if a.dim != 2 or b.dim != 2:
                continue
            try:
                complex_ = WeightedComplex(3, [a, b], [1, 2], validate=True)
            except Exception:
                continue
            built += 1
            rec = recession_fan(complex_)
            rec_polys = [c.poly for c in rec.cells]
            originals = [a.poly.recession(), b.poly.recession()]
            for _ in range(60):
                q = tuple(F(rng.randint(-5, 5), rng.randint(1, 2)) for _ in range(2))
                in_union = any(p.contains(q) for p in originals)
                in_fan = any(p.contains(q) for p in rec_polys)
                assert in_union == in_fan, (rays_a, rays_b, q)
            # the output is a valid fan with positive weights
            WeightedComplex(3, rec.cells, rec.weights, validate=True)


class TestMutationRejection:
    def test_removing_any_maximal_cone_breaks_recognition(self):
        # every codimension-one face of a chains-of-flats fan lies in at
        # least two maximal cones, so deleting one cone always unbalances
        from troplin.recognize import recognize_fan

        for n in range(2, 5):
            for matroid in enumerate_matroids(n):
                if matroid.rank < 2:
                    continue
                fan = chain_fan(ChainFamily(n, matroid.flats | {matroid.ground}))
                if len(fan.cells) < 2:
                    continue
                for drop in range(len(fan.cells)):
                    cells = [c for i, c in enumerate(fan.cells) if i != drop]
                    mutated = WeightedComplex(
                        n, cells, [1] * len(cells), validate=False
                    )
                    report = recognize_fan(mutated)
                    assert not report.accepted, (matroid, drop)
                    assert report.reason.kind == "unbalanced"


class TestBergmanSupportsAgainstCircuitCriterion:
    def test_chain_fan_support_equals_circuit_membership(self):
        # independent oracle: the chains-of-flats fan of a matroid and the
        # doubly-attained-maximum criterion over circuits define the same set
        rng = random.Random(41)
        for n in range(2, 5):
            for matroid in enumerate_matroids(n):
                fan = chain_fan(ChainFamily(n, matroid.flats | {matroid.ground}))
                for _ in range(25):
                    x = TropPoint(
                        [F(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(n)]
                    )
                    by_circuits = all(
                        sum(
                            1
                            for i in c
                            if x.coords[i - 1] == max(x.coords[j - 1] for j in c)
                        )
                        >= 2
                        for c in matroid.circuits
                    )
                    by_fan = point_in_support(fan, x) is not None
                    assert by_circuits == by_fan, (matroid, x)
