"""Deciding whether weighted complexes are supported on tropical linear spaces.

The fan decision recovers the candidate flat family from incidence-vector
membership, verifies the flat axioms, and compares supports with the fan of
chains of that family.  Complexes are decided through their recession fan;
the local route recognizes the star at every vertex.  A seeded segment
sampler provides sound (never complete) convexity rejection for arbitrary
complexes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .complexes import (
    DEFAULT_BUDGET,
    Cell,
    SegmentCheck,
    WeightedComplex,
    chn_cell_of,
    coordinate_difference,
    from_quotient,
    is_balanced,
    recession_fan,
    segment_in_support,
    star_fan,
    to_quotient,
)
from .errors import InvalidInputError, ResourceLimitError
from .linalg import vec_dot
from .matroids import (
    ChainFamily,
    GroundSet,
    Matroid,
    _sorted_sets,
    matroid_from_flats,
    verify_flat_family,
)
from .points import TropPoint, flat_direction, heterogeneity
from .polyhedra import Polyhedron

REASON_NON_PURE = "non-pure"
REASON_WEIGHT = "weight-not-one"
REASON_UNBALANCED = "unbalanced"
REASON_HET = "het-bound"
REASON_FLAT_AXIOM = "flat-axiom"
REASON_SUPPORT = "support-mismatch"
REASON_RECESSION = "recession-mismatch"


@dataclass(frozen=True)
class Reason:
    kind: str
    witness: object = None


@dataclass(frozen=True)
class RecognitionReport:
    verdict: str  # "accepted" | "rejected"
    matroid: Matroid | None = None
    reason: Reason | None = None
    multiplier: int = 1
    flats: tuple[GroundSet, ...] | None = None

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"


def _accept(matroid: Matroid, flats, multiplier: int = 1) -> RecognitionReport:
    return RecognitionReport(
        "accepted",
        matroid=matroid,
        multiplier=multiplier,
        flats=tuple(_sorted_sets(flats)),
    )


def _reject(kind: str, witness=None) -> RecognitionReport:
    return RecognitionReport("rejected", reason=Reason(kind, witness))


def recover_flat_family(
    complex_: WeightedComplex, bound: int = 12
) -> ChainFamily:
    """Subsets whose negated incidence vector lies in the support."""
    n = complex_.n
    if n > bound:
        raise ResourceLimitError(f"flat recovery capped at n <= {bound}")
    members = []
    for size in range(1, n + 1):
        for combo in combinations(range(1, n + 1), size):
            f = frozenset(combo)
            if complex_.support_contains(flat_direction(n, f)):
                members.append(f)
    return ChainFamily(n, members)


def _coordinate_classes(cell: Cell) -> list[frozenset[int]]:
    """Group torus coordinates that agree identically on the cell."""
    n = cell.n
    gens: list[tuple] = [tuple(v.coords) for v in cell.vertices]
    gens += [tuple(r) for r in cell.rays]
    gens += [tuple(l) for l in cell.lineality]
    classes: list[list[int]] = []
    for i in range(1, n + 1):
        placed = False
        for cls in classes:
            j = cls[0]
            if all(g[i - 1] == g[j - 1] for g in gens):
                cls.append(i)
                placed = True
                break
        if not placed:
            classes.append([i])
    return [frozenset(c) for c in classes]


def _generic_point(cell: Cell, num_classes: int) -> TropPoint:
    """A cell point realizing the cell's maximal heterogeneity."""
    base = list(cell.poly.vertices[0])
    directions = list(cell.poly.rays) + list(cell.poly.lineality)
    for scale in range(1, 64):
        coeffs = [Fraction(scale**k, scale + k + 1) for k in range(len(directions))]
        q = list(base)
        for c, r in zip(coeffs, directions):
            for i, x in enumerate(r):
                q[i] += c * x
        pt = from_quotient(cell.n, q)
        if heterogeneity(pt) == num_classes:
            return pt
    raise AssertionError("could not realize the generic heterogeneity")


def _braid_hyperplanes(n: int) -> list[tuple[int, ...]]:
    """Functionals x_i - x_j in quotient coordinates, for 1 <= i < j <= n."""
    return [
        coordinate_difference(n, i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]


def _braid_pieces(poly: Polyhedron, n: int, budget: int) -> list[Polyhedron]:
    """Refine along all coordinate-comparison hyperplanes."""
    pieces = [poly]
    for a in _braid_hyperplanes(n):
        nxt = []
        for p in pieces:
            if p.cuts(a, 0):
                neg, pos = p.split(a, 0)
                nxt.extend(x for x in (neg, pos) if x is not None)
            else:
                nxt.append(p)
            if len(nxt) + len(pieces) > budget:
                raise ResourceLimitError("braid refinement exceeded its budget")
        pieces = nxt
    return pieces


def _uncovered_witness(
    piece: Polyhedron, cells: list[Polyhedron], counter: list[int], budget: int
) -> Polyhedron | None:
    """A sub-piece not covered by the union of the cells, or None."""
    counter[0] += 1
    if counter[0] > budget:
        raise ResourceLimitError("coverage check exceeded its budget")
    if not cells:
        return piece
    head, rest = cells[0], cells[1:]
    current: Polyhedron | None = piece
    eqs, ineqs = head.hrep
    constraints = list(ineqs)
    for a, b in eqs:
        constraints.append((a, b))
        constraints.append((tuple(-x for x in a), -b))
    for a, b in constraints:
        if current is None:
            return None
        above = current.intersect_halfspace(tuple(-x for x in a), -b)
        if above is not None and above.dim == current.dim:
            strict = (
                any(vec_dot(a, v) > b for v in above.vertices)
                or any(vec_dot(a, r) > 0 for r in above.rays)
                or any(vec_dot(a, l) != 0 for l in above.lineality)
            )
            if strict:
                witness = _uncovered_witness(above, rest, counter, budget)
                if witness is not None:
                    return witness
        current = current.intersect_halfspace(a, b)
    return None


def _support_equal(
    complex_: WeightedComplex,
    family: ChainFamily,
    budget: int,
) -> TropPoint | None:
    """Witness point in the symmetric difference of |X| and |Ch_X|, or None."""
    n = complex_.n
    members = set(family.sets)
    # every refined piece of every cell must sit on a chain of the family
    for cell in complex_.cells:
        if cell.chain is not None and all(f in members for f in cell.chain):
            continue
        for piece in _braid_pieces(cell.poly, n, budget):
            point = from_quotient(n, piece.relative_interior_point())
            chain = chn_cell_of(point)
            if any(f not in members for f in chain):
                return point
    # every maximal chain cone must be covered by the cells
    cell_keys = {c.poly.canonical_key for c in complex_.cells}
    cell_polys = [c.poly for c in complex_.cells]
    zero = [Fraction(0)] * (n - 1)
    for chain in family.maximal_chains():
        rays = [to_quotient(flat_direction(n, f)) for f in chain]
        cone = Polyhedron(n - 1, [zero], rays, reduce=False)
        if cone.canonical_key in cell_keys:
            continue
        witness = _uncovered_witness(cone, cell_polys, [0], budget)
        if witness is not None:
            return from_quotient(n, witness.relative_interior_point())
    return None


def recognize_fan(
    complex_: WeightedComplex, budget: int = DEFAULT_BUDGET
) -> RecognitionReport:
    """Decide whether a weighted fan is the chains-of-flats fan of a matroid.

    Rejection reasons are checked in a fixed order: purity, unit weights,
    balancing, the heterogeneity bound, the flat axioms for the recovered
    family, and finally support equality with the chain fan.
    """
    if not complex_.is_fan:
        raise InvalidInputError("input complex is not a fan")
    if not complex_.is_pure:
        dims = sorted({c.dim for c in complex_.cells})
        return _reject(REASON_NON_PURE, dims)
    if any(w != 1 for w in complex_.weights):
        bad = next(w for w in complex_.weights if w != 1)
        return _reject(REASON_WEIGHT, bad)
    balance = is_balanced(complex_)
    if not balance.ok:
        return _reject(REASON_UNBALANCED, balance.witness)
    d = complex_.dim
    for cell in complex_.cells:
        classes = _coordinate_classes(cell)
        if len(classes) > d + 1:
            return _reject(REASON_HET, _generic_point(cell, len(classes)))
    family = recover_flat_family(complex_)
    check = verify_flat_family(complex_.n, family.sets)
    if not check.ok:
        return _reject(REASON_FLAT_AXIOM, (check.axiom, check.witness))
    witness = _support_equal(complex_, family, budget)
    if witness is not None:
        return _reject(REASON_SUPPORT, witness)
    matroid = matroid_from_flats(family)
    return _accept(matroid, family.sets)


def decide_complex(
    complex_: WeightedComplex, budget: int = DEFAULT_BUDGET
) -> RecognitionReport:
    """Decide whether a weighted complex is supported on a tropical linear space.

    The complex must be pure and balanced, and its recession fan with
    aggregated weights has to be recognized as a matroid fan with unit
    weights.
    """
    if not complex_.is_pure:
        dims = sorted({c.dim for c in complex_.cells})
        return _reject(REASON_NON_PURE, dims)
    balance = is_balanced(complex_)
    if not balance.ok:
        return _reject(REASON_UNBALANCED, balance.witness)
    rec = recession_fan(complex_, budget=budget)
    inner = recognize_fan(rec, budget=budget)
    if not inner.accepted:
        return _reject(REASON_RECESSION, inner.reason)
    return _accept(inner.matroid, inner.flats)


@dataclass(frozen=True)
class LocalCheckReport:
    global_report: RecognitionReport
    vertex_reports: tuple[tuple[TropPoint, RecognitionReport], ...]
    multipliers: tuple[int, ...]

    @property
    def accepted(self) -> bool:
        return self.global_report.accepted


def _components(complex_: WeightedComplex) -> int:
    cells = complex_.cells
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if cells[i].poly.intersection(cells[j].poly) is not None:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(cells))})


def _structure_vertices(complex_: WeightedComplex) -> list[TropPoint]:
    seen = []
    for cell in complex_.cells:
        for v in cell.vertices:
            if v not in seen:
                seen.append(v)
    return sorted(seen, key=lambda p: p.coords)


def local_check(
    complex_: WeightedComplex, budget: int = DEFAULT_BUDGET
) -> LocalCheckReport:
    """Recognize the star at every vertex and demand one common multiplier.

    The star at each vertex is normalized by the gcd of its weights before
    recognition; acceptance additionally requires the support to be
    connected and the gcd multiplier to agree across vertices.
    """
    if not complex_.is_pure:
        dims = sorted({c.dim for c in complex_.cells})
        return LocalCheckReport(_reject(REASON_NON_PURE, dims), (), ())
    if _components(complex_) > 1:
        return LocalCheckReport(_reject(REASON_SUPPORT, "disconnected"), (), ())
    vertex_reports = []
    multipliers = []
    for p in _structure_vertices(complex_):
        star = star_fan(complex_, p)
        g = 0
        for w in star.weights:
            g = gcd(g, w)
        normalized = WeightedComplex(
            complex_.n,
            star.cells,
            [w // g for w in star.weights],
            validate=False,
        )
        report = recognize_fan(normalized, budget=budget)
        vertex_reports.append((p, report))
        multipliers.append(g)
    if all(r.accepted for _, r in vertex_reports) and len(set(multipliers)) == 1:
        report = RecognitionReport(
            "accepted", multiplier=multipliers[0] if multipliers else 1
        )
        return LocalCheckReport(report, tuple(vertex_reports), tuple(multipliers))
    failing = next(
        (r.reason for _, r in vertex_reports if not r.accepted),
        Reason(REASON_SUPPORT, "multiplier mismatch"),
    )
    return LocalCheckReport(
        RecognitionReport("rejected", reason=failing),
        tuple(vertex_reports),
        tuple(multipliers),
    )


@dataclass(frozen=True)
class ProbeResult:
    counterexample_found: bool
    pair: tuple[TropPoint, TropPoint] | None = None
    segment_check: SegmentCheck | None = None

    @property
    def ok(self) -> bool:
        return not self.counterexample_found


def _sample_point(cell: Cell, rng: random.Random) -> TropPoint:
    q = list(cell.poly.vertices[rng.randrange(len(cell.poly.vertices))])
    for r in cell.poly.rays:
        c = Fraction(rng.randint(0, 6), rng.randint(1, 3))
        for i, x in enumerate(r):
            q[i] += c * x
    for l in cell.poly.lineality:
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        for i, x in enumerate(l):
            q[i] += c * x
    return from_quotient(cell.n, q)


def convexity_probe(
    complex_: WeightedComplex, samples: int = 200, seed: int = 0
) -> ProbeResult:
    """Sound, incomplete convexity rejection by seeded segment sampling.

    Any failure certifies that the support is not tropically convex; running
    clean only reports that no counterexample was found.
    """
    pairs: list[tuple[TropPoint, TropPoint]] = []
    verts: list[TropPoint] = []
    for cell in complex_.cells:
        for v in cell.vertices:
            if v not in verts:
                verts.append(v)
    verts.sort(key=lambda p: p.coords)
    for a, b in combinations(verts, 2):
        pairs.append((a, b))
    rng = random.Random(seed)
    for _ in range(samples):
        ca = complex_.cells[rng.randrange(len(complex_.cells))]
        cb = complex_.cells[rng.randrange(len(complex_.cells))]
        pairs.append((_sample_point(ca, rng), _sample_point(cb, rng)))
    for a, b in pairs:
        check = segment_in_support(complex_, a, b)
        if not check.covered:
            return ProbeResult(True, (a, b), check)
    return ProbeResult(False)
