"""Weighted rational polyhedral complexes in the tropical projective torus.

Geometry lives in quotient coordinates: a torus point with canonical
representative (0, y_2, ..., y_n) maps to (y_2, ..., y_n) in R^(n-1), an
isomorphism that also identifies the quotient lattice with Z^(n-1).  Cells
wrap exact polyhedra in these coordinates; complexes carry positive integer
weights on their maximal cells.

The operations here are the tropical-variety toolkit: primitive normal
vectors and the balancing test, recession and star fans, fans of chains of
subsets, and exact coverage tests for tropical segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError, ResourceLimitError
from .linalg import (
    hermite_normal_form,
    in_span,
    lattice_quotient_generator,
    vec_dot,
    vec_is_zero,
)
from .matroids import ChainFamily, GroundSet
from .points import TropPoint, _frac, flat_direction, partition, segment
from .polyhedra import IntVec, Polyhedron, Vec

DEFAULT_BUDGET = 20000


def to_quotient(x: TropPoint) -> Vec:
    """Drop the leading zero of the canonical representative."""
    return x.coords[1:]


def from_quotient(n: int, q: Sequence) -> TropPoint:
    return TropPoint((0,) + tuple(q))


def direction_to_quotient(vec: Sequence) -> tuple[Fraction, ...]:
    v = [_frac(c) for c in vec]
    return tuple(c - v[0] for c in v[1:])


def lift_direction(d: Sequence) -> tuple:
    """Length-n integer representative of a quotient direction."""
    return (0,) + tuple(d)


def coordinate_difference(n: int, i: int, j: int) -> tuple[int, ...]:
    """The functional x_i - x_j of the torus, in quotient coordinates."""
    a = [0] * (n - 1)
    if i > 1:
        a[i - 2] += 1
    if j > 1:
        a[j - 2] -= 1
    return tuple(a)


class Cell:
    """A rational polyhedron in the torus, optionally tagged with the chain
    of subsets whose cone it is."""

    def __init__(self, n: int, poly: Polyhedron, chain: tuple[GroundSet, ...] | None = None):
        if poly.m != n - 1:
            raise InvalidInputError("cell dimension does not match ambient size")
        self.n = n
        self.poly = poly
        self.chain = chain

    @classmethod
    def from_torus(
        cls,
        n: int,
        vertices: Iterable[TropPoint | Sequence],
        rays: Iterable[Sequence] = (),
        lineality: Iterable[Sequence] = (),
        reduce: bool = True,
        chain: tuple[GroundSet, ...] | None = None,
    ) -> "Cell":
        verts = []
        for v in vertices:
            pt = v if isinstance(v, TropPoint) else TropPoint(v)
            if pt.n != n:
                raise InvalidInputError("ambient size mismatch")
            verts.append(to_quotient(pt))
        qrays = [direction_to_quotient(r) for r in rays]
        qrays = [r for r in qrays if not vec_is_zero(r)]
        qlin = [direction_to_quotient(l) for l in lineality]
        qlin = [l for l in qlin if not vec_is_zero(l)]
        return cls(n, Polyhedron(n - 1, verts, qrays, qlin, reduce=reduce), chain=chain)

    @property
    def dim(self) -> int:
        return self.poly.dim

    @property
    def vertices(self) -> list[TropPoint]:
        return [from_quotient(self.n, v) for v in self.poly.vertices]

    @property
    def rays(self) -> list[tuple]:
        return [lift_direction(r) for r in self.poly.rays]

    @property
    def lineality(self) -> list[tuple]:
        return [lift_direction(l) for l in self.poly.lineality]

    def contains_point(self, x: TropPoint) -> bool:
        if x.n != self.n:
            raise InvalidInputError("ambient size mismatch")
        return self.poly.contains(to_quotient(x))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cell)
            and self.n == other.n
            and self.poly.canonical_key == other.poly.canonical_key
        )

    def __hash__(self) -> int:
        return hash((self.n, self.poly.canonical_key))

    def __repr__(self) -> str:
        return f"Cell(n={self.n}, dim={self.dim}, vertices={self.vertices}, rays={self.rays})"


@dataclass(frozen=True)
class BalanceCheck:
    ok: bool
    witness: Cell | None = None


@dataclass(frozen=True)
class SegmentCheck:
    covered: bool
    gap_param: Fraction | None = None
    gap_point: TropPoint | None = None


class WeightedComplex:
    """A polyhedral complex with positive integer weights on maximal cells."""

    def __init__(
        self,
        n: int,
        cells: Sequence[Cell],
        weights: Sequence[int],
        validate: bool = True,
    ):
        if len(cells) != len(weights):
            raise InvalidInputError("one weight per maximal cell required")
        if not cells:
            raise InvalidInputError("empty complex")
        for c in cells:
            if c.n != n:
                raise InvalidInputError("ambient size mismatch")
        for w in weights:
            if not isinstance(w, int) or w <= 0:
                raise InvalidInputError("weights must be positive integers")
        keys = [c.poly.canonical_key for c in cells]
        if len(set(keys)) != len(keys):
            raise InvalidInputError("duplicate maximal cells")
        self.n = n
        self.cells = tuple(cells)
        self.weights = tuple(weights)
        if validate:
            self._validate_common_faces()

    def _validate_common_faces(self) -> None:
        for i, a in enumerate(self.cells):
            for b in self.cells[i + 1 :]:
                if a.poly.contains_polyhedron(b.poly) or b.poly.contains_polyhedron(
                    a.poly
                ):
                    raise InvalidInputError(
                        "maximal cells must not contain one another"
                    )
        for i, a in enumerate(self.cells):
            for b in self.cells[i + 1 :]:
                meet = a.poly.intersection(b.poly)
                if meet is None:
                    continue
                fa = _minimal_face_containing(a.poly, meet)
                fb = _minimal_face_containing(b.poly, meet)
                if not (b.poly.contains_polyhedron(fa) and a.poly.contains_polyhedron(fb)):
                    raise InvalidInputError(
                        "cells do not intersect in a common face"
                    )

    @cached_property
    def dim(self) -> int:
        return max(c.dim for c in self.cells)

    @property
    def is_pure(self) -> bool:
        return all(c.dim == self.dim for c in self.cells)

    @property
    def is_fan(self) -> bool:
        return all(c.poly.is_cone for c in self.cells)

    @property
    def chain_tagged(self) -> bool:
        return all(c.chain is not None for c in self.cells)

    def weight_of(self, cell: Cell) -> int:
        for c, w in zip(self.cells, self.weights):
            if c == cell:
                return w
        raise InvalidInputError("not a maximal cell of this complex")

    def all_cells(self) -> list[Cell]:
        """Face closure of the maximal cells."""
        seen: dict = {}
        for c in self.cells:
            for f in c.poly.all_faces():
                seen.setdefault(f.canonical_key, Cell(self.n, f))
        return sorted(seen.values(), key=lambda c: (c.dim, c.poly.canonical_key))

    def support_contains(self, x: TropPoint) -> bool:
        if self.chain_tagged:
            chain = chn_cell_of(x)
            proper = [f for f in chain if len(f) < self.n]
            return any(
                all(f in c.chain for f in proper) for c in self.cells
            )
        return any(c.contains_point(x) for c in self.cells)

    def __repr__(self) -> str:
        return f"WeightedComplex(n={self.n}, dim={self.dim}, cells={len(self.cells)})"


def _minimal_face_containing(poly: Polyhedron, sub: Polyhedron) -> Polyhedron:
    """Smallest face of poly containing the sub-polyhedron."""
    tight = []
    for a, b in poly.inequalities:
        if all(vec_dot(a, v) == b for v in sub.vertices) and all(
            vec_dot(a, r) == 0 for r in sub.rays
        ) and all(vec_dot(a, l) == 0 for l in sub.lineality):
            tight.append((a, b))
    verts = [
        v for v in poly.vertices if all(vec_dot(a, v) == b for a, b in tight)
    ]
    rays = [r for r in poly.rays if all(vec_dot(a, r) == 0 for a, _ in tight)]
    return Polyhedron(poly.m, verts, rays, poly.lineality, reduce=False)


def point_in_support(complex_: WeightedComplex, x: TropPoint) -> Cell | None:
    """The minimal cell of the complex containing x, or None."""
    if x.n != complex_.n:
        raise InvalidInputError("ambient size mismatch")
    q = to_quotient(x)
    best: Polyhedron | None = None
    for c in complex_.cells:
        if c.poly.contains(q):
            face = c.poly.minimal_face_containing(q)
            if best is None or face.dim < best.dim:
                best = face
    return None if best is None else Cell(complex_.n, best)


def _is_unimodular_simplicial(poly: Polyhedron) -> bool:
    if poly.lineality or not poly.is_cone:
        return False
    if len(poly.rays) != poly.dim:
        return False
    return hermite_normal_form(list(poly.rays)) == poly.lattice_basis


def primitive_normal(sigma: Cell, tau: Cell) -> tuple:
    """Primitive generator of the lattice quotient of a cell by a facet.

    Returned as an integer vector of length n (a representative of the
    quotient direction), signed so it points from the facet into the cell.
    """
    if sigma.n != tau.n:
        raise InvalidInputError("ambient size mismatch")
    u = _primitive_normal_quotient(sigma.poly, tau.poly)
    return lift_direction(u)


def _primitive_normal_quotient(sp: Polyhedron, tp: Polyhedron) -> IntVec:
    if sp.dim != tp.dim + 1 or not sp.contains_polyhedron(tp):
        raise InvalidInputError("second argument is not a facet of the first")
    cutting = None
    for a, b in sp.inequalities:
        if all(vec_dot(a, v) == b for v in tp.vertices) and all(
            vec_dot(a, r) == 0 for r in tp.rays
        ) and all(vec_dot(a, l) == 0 for l in tp.lineality):
            if sp._tight_face(a, b).canonical_key == tp.canonical_key:
                cutting = (a, b)
                break
    if cutting is None:
        raise InvalidInputError("second argument is not a facet of the first")
    a, _ = cutting
    if _is_unimodular_simplicial(sp) and set(tp.rays) < set(sp.rays):
        (u,) = set(sp.rays) - set(tp.rays)
    else:
        u = lattice_quotient_generator(sp.lattice_basis, tp.lattice_basis)
    if vec_dot(a, u) > 0:
        u = tuple(-x for x in u)
    assert vec_dot(a, u) < 0
    return u


def is_balanced(complex_: WeightedComplex, require_pure: bool = True) -> BalanceCheck:
    """Check the balancing equation at every codimension-one face.

    At each such face the weighted sum of primitive normal vectors of the
    adjacent maximal cells must lie in the linear span of the face.
    """
    if require_pure and not complex_.is_pure:
        raise InvalidInputError("balancing is defined for pure complexes")
    groups: dict = {}
    for cell, weight in zip(complex_.cells, complex_.weights):
        for face, ineq in cell.poly.faces_of_facets():
            key = face.canonical_key
            entry = groups.setdefault(key, (face, []))
            a, _ = ineq
            if _is_unimodular_simplicial(cell.poly) and set(face.rays) < set(
                cell.poly.rays
            ):
                (u,) = set(cell.poly.rays) - set(face.rays)
            else:
                u = lattice_quotient_generator(
                    cell.poly.lattice_basis, face.lattice_basis
                )
            if vec_dot(a, u) > 0:
                u = tuple(-x for x in u)
            entry[1].append((weight, u))
    for key in sorted(groups):
        face, contributions = groups[key]
        total = [0] * face.m
        for weight, u in contributions:
            for i, x in enumerate(u):
                total[i] += weight * x
        span_rows = face.direction_rows
        if vec_is_zero(total):
            continue
        if not in_span(span_rows, tuple(total)):
            return BalanceCheck(False, Cell(complex_.n, face))
    return BalanceCheck(True)


def recession_fan(complex_: WeightedComplex, budget: int = DEFAULT_BUDGET) -> WeightedComplex:
    """The fan of recession cones, with aggregated weights on maximal cones."""
    if complex_.is_fan:
        return WeightedComplex(
            complex_.n, complex_.cells, complex_.weights, validate=False
        )
    rec_of_cell = [c.poly.recession() for c in complex_.cells]
    distinct: dict = {}
    for poly in rec_of_cell:
        distinct.setdefault(poly.canonical_key, poly)
    cones = [distinct[k] for k in sorted(distinct)]
    cones = _drop_contained(cones)
    cones = _repair_fan(cones, budget)
    out_cells = []
    out_weights = []
    for poly in cones:
        weight = 0
        for rec_poly, w in zip(rec_of_cell, complex_.weights):
            if rec_poly.dim == poly.dim and rec_poly.contains_polyhedron(poly):
                weight += w
        if weight > 0:
            out_cells.append(Cell(complex_.n, poly))
            out_weights.append(weight)
    return WeightedComplex(complex_.n, out_cells, out_weights, validate=False)


def _drop_contained(cones: list[Polyhedron]) -> list[Polyhedron]:
    kept = []
    for p in cones:
        if not any(
            q is not p and q.contains_polyhedron(p) for q in cones
        ):
            kept.append(p)
    return kept


def _repair_fan(cones: list[Polyhedron], budget: int) -> list[Polyhedron]:
    """Split cones pairwise until every intersection is a common face."""
    work = list(cones)
    steps = 0
    while True:
        violation = None
        for i, a in enumerate(work):
            for b in work[i + 1 :]:
                meet = a.intersection(b)
                if meet is None:
                    continue
                fa = _minimal_face_containing(a, meet)
                fb = _minimal_face_containing(b, meet)
                if not (b.contains_polyhedron(fa) and a.contains_polyhedron(fb)):
                    violation = (a, b)
                    break
            if violation:
                break
        if violation is None:
            return _drop_contained(_dedup(work))
        a, b = violation
        steps += 1
        if steps > budget:
            raise ResourceLimitError("fan repair exceeded its budget")
        cut = None
        for first, second in ((a, b), (b, a)):
            eqs, ineqs = second.hrep
            for normal, offset in list(ineqs) + list(eqs):
                if first.cuts(normal, offset):
                    cut = (first, normal, offset)
                    break
            if cut:
                break
        if cut is None:
            # mutually uncut overlap means equality, which is not a violation
            raise InvalidInputError("irreparable cone overlap")
        first, normal, offset = cut
        work.remove(first)
        for piece in first.split(normal, offset):
            if piece is not None:
                work.append(
                    Polyhedron(
                        piece.m,
                        piece.vertices,
                        piece.rays,
                        piece.lineality,
                        reduce=True,
                    )
                )


def _dedup(cones: list[Polyhedron]) -> list[Polyhedron]:
    seen: dict = {}
    for p in cones:
        seen.setdefault(p.canonical_key, p)
    return [seen[k] for k in sorted(seen)]


def star_fan(complex_: WeightedComplex, p: TropPoint) -> WeightedComplex:
    """The fan of directions into the complex at a point of its support."""
    if p.n != complex_.n:
        raise InvalidInputError("ambient size mismatch")
    q = to_quotient(p)
    cones: dict = {}
    for cell, weight in zip(complex_.cells, complex_.weights):
        if cell.poly.contains(q):
            local = cell.poly.cone_from(q)
            key = local.canonical_key
            if key in cones:
                cones[key] = (cones[key][0], cones[key][1] + weight)
            else:
                cones[key] = (local, weight)
    if not cones:
        raise InvalidInputError("point outside the support")
    cells = []
    weights = []
    for key in sorted(cones):
        poly, weight = cones[key]
        cells.append(Cell(complex_.n, poly))
        weights.append(weight)
    return WeightedComplex(complex_.n, cells, weights, validate=False)


def chain_fan(family: ChainFamily, weight: int = 1) -> WeightedComplex:
    """The fan of cones over chains in a subset family containing the ground set.

    Each maximal chain of proper nonempty members spans a unimodular cone on
    the negated indicator vectors of its members.
    """
    n = family.n
    zero = [Fraction(0)] * (n - 1)
    cells = []
    for chain in family.maximal_chains():
        rays = [to_quotient(flat_direction(n, f)) for f in chain]
        poly = Polyhedron(n - 1, [zero], rays, reduce=False)
        cells.append(Cell(n, poly, chain=chain))
    weights = [weight] * len(cells)
    return WeightedComplex(n, cells, weights, validate=False)


def chn_cell_of(x: TropPoint) -> tuple[GroundSet, ...]:
    """The chain of subsets whose cone minimally contains x.

    Reading the partition of -x in ascending order of the coordinate values of
    x yields nested prefix unions F_1 through F_{s-1}; the returned chain ends
    with the full ground set and has the cone dimension het(x) - 1.
    """
    neg = TropPoint(tuple(-c for c in x.coords))
    part = partition(neg)
    ground = frozenset(range(1, x.n + 1))
    chain: list[GroundSet] = []
    acc: set[int] = set()
    for block in part.blocks[:-1]:
        acc |= block
        chain.append(frozenset(acc))
    chain.append(ground)
    return tuple(chain)


def segment_in_support(
    complex_: WeightedComplex, x: TropPoint, y: TropPoint
) -> SegmentCheck:
    """Is the tropical segment between two points inside the support?

    Each ordinary piece of the segment is tested by computing, per maximal
    cell, the closed parameter subinterval mapped into that cell and merging;
    on failure a rational parameter in the first uncovered gap (measured
    along the whole segment, scaled to [0, 1]) is returned with its point.
    """
    if x.n != complex_.n or y.n != complex_.n:
        raise InvalidInputError("ambient size mismatch")
    points = segment(x, y)
    if len(points) == 1:
        if complex_.support_contains(x):
            return SegmentCheck(True)
        return SegmentCheck(False, Fraction(0), x)
    pieces = len(points) - 1
    for j in range(pieces):
        start = to_quotient(points[j])
        end = to_quotient(points[j + 1])
        direction = tuple(e - s for s, e in zip(start, end))
        intervals = []
        for cell in complex_.cells:
            iv = _segment_interval(cell.poly, start, direction)
            if iv is not None:
                intervals.append(iv)
        gap = _first_gap(intervals)
        if gap is not None:
            global_param = Fraction(j, pieces) + gap / pieces
            witness = from_quotient(
                complex_.n,
                tuple(s + gap * d for s, d in zip(start, direction)),
            )
            return SegmentCheck(False, global_param, witness)
    return SegmentCheck(True)


def _segment_interval(poly: Polyhedron, start: Vec, direction: Vec):
    """Parameters t in [0,1] with start + t*direction inside the polyhedron."""
    lo = Fraction(0)
    hi = Fraction(1)
    eqs, ineqs = poly.hrep
    for a, b in eqs:
        base = vec_dot(a, start)
        slope = vec_dot(a, direction)
        if slope == 0:
            if base != b:
                return None
        else:
            t = (b - base) / slope
            lo = max(lo, t)
            hi = min(hi, t)
    for a, b in ineqs:
        base = vec_dot(a, start)
        slope = vec_dot(a, direction)
        if slope == 0:
            if base > b:
                return None
        elif slope > 0:
            hi = min(hi, (b - base) / slope)
        else:
            lo = max(lo, (b - base) / slope)
    if lo > hi:
        return None
    return (lo, hi)


def _first_gap(intervals) -> Fraction | None:
    """A rational in the earliest part of [0,1] not covered by the intervals."""
    covered_to: Fraction | None = None
    for lo, hi in sorted(intervals):
        if covered_to is None:
            if lo > 0:
                return Fraction(0)
            covered_to = hi
        elif lo > covered_to:
            return (covered_to + lo) / 2
        else:
            covered_to = max(covered_to, hi)
        if covered_to >= 1:
            return None
    if covered_to is None:
        return Fraction(0)
    return (covered_to + 1) / 2
