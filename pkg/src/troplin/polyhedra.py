"""Exact rational polyhedra in R^m, generator based.

A polyhedron is conv(vertices) + cone(rays) + span(lineality).  Vertices are
projected modulo the lineality space and rays are stored as primitive integer
directions, so structural equality of the reduced form decides geometric
equality.  The H-representation (affine hull equations plus facet
inequalities) is derived on demand by brute-force enumeration over generator
subsets, which is exact and fast at the small dimensions this package works
in.  Intersections with halfspaces and hyperplanes are double-description
steps on the generators; no floating point and, on these paths, no LP.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .linalg import (
    nullspace,
    primitive_direction,
    rank,
    rref,
    saturate_rows,
    vec_dot,
    vec_is_zero,
    vec_sub,
)
from .lp import lp_feasible
from .points import _frac

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]
HalfSpace = tuple[IntVec, Fraction]  # (a, b) meaning a.x <= b


def _fvec(v) -> Vec:
    return tuple(_frac(x) for x in v)


class Polyhedron:
    """A nonempty closed rational polyhedron given by generators."""

    def __init__(
        self,
        m: int,
        vertices: Iterable[Sequence],
        rays: Iterable[Sequence] = (),
        lineality: Iterable[Sequence] = (),
        reduce: bool = True,
    ):
        self.m = m
        lin_rows = [primitive_direction(l) for l in lineality if not vec_is_zero(l)]
        self.lineality: tuple[IntVec, ...] = tuple(saturate_rows(lin_rows))
        ray_list = self._project_rays(rays)
        if reduce:
            ray_list = self._promote_hidden_lineality(ray_list)
            ray_list = self._reduce_rays(ray_list)
        verts = []
        for v in vertices:
            vv = self._project(_fvec(v))
            if vv not in verts:
                verts.append(vv)
        if not verts:
            raise InvalidInputError("a polyhedron needs at least one vertex generator")
        if reduce:
            verts = self._reduce_vertices(verts, ray_list)
        self.vertices: tuple[Vec, ...] = tuple(sorted(verts))
        self.rays: tuple[IntVec, ...] = tuple(sorted(ray_list))

    def _project_rays(self, rays) -> list[IntVec]:
        out: list[IntVec] = []
        for r in rays:
            fr = self._project(_fvec(r))
            if vec_is_zero(fr):
                continue
            pr = primitive_direction(fr)
            if pr not in out:
                out.append(pr)
        return out

    def _promote_hidden_lineality(self, ray_list: list[IntVec]) -> list[IntVec]:
        """Move any ray whose opposite lies in the cone into the lineality."""
        while True:
            promoted = None
            for r in ray_list:
                if _in_cone(
                    tuple(-x for x in r), ray_list, self.lineality, self.m
                ):
                    promoted = r
                    break
            if promoted is None:
                return ray_list
            self.lineality = tuple(
                saturate_rows(list(self.lineality) + [promoted])
            )
            ray_list = self._project_rays(ray_list)

    # -- normalization ------------------------------------------------

    def _project(self, v: Vec) -> Vec:
        """Orthogonal projection modulo the lineality span."""
        if not self.lineality:
            return v
        lin = self.lineality
        gram = [[Fraction(vec_dot(a, b)) for b in lin] for a in lin]
        rhs = [Fraction(vec_dot(a, v)) for a in lin]
        from .linalg import solve_exact

        coeffs = solve_exact(gram, rhs)
        out = list(v)
        for c, l in zip(coeffs, lin):
            for i, x in enumerate(l):
                out[i] -= c * x
        return tuple(out)

    def _reduce_rays(self, rays: list[IntVec]) -> list[IntVec]:
        kept = list(rays)
        for r in sorted(rays):
            others = [x for x in kept if x != r]
            if _in_cone(r, others, self.lineality, self.m):
                kept = others
        return kept

    def _reduce_vertices(self, verts: list[Vec], rays: list[IntVec]) -> list[Vec]:
        kept = list(verts)
        for v in sorted(verts):
            if len(kept) == 1:
                break
            others = [x for x in kept if x != v]
            if _in_hull(v, others, rays, self.lineality, self.m):
                kept = others
        return kept

    # -- basic geometry -----------------------------------------------

    @cached_property
    def direction_rows(self) -> list[IntVec]:
        """Primitive integer spanning set of the direction space."""
        rows = [list(r) for r in self.rays] + [list(l) for l in self.lineality]
        v0 = self.vertices[0]
        for v in self.vertices[1:]:
            rows.append(list(primitive_direction(vec_sub(v, v0))))
        return [tuple(r) for r in rows]

    @cached_property
    def dim(self) -> int:
        return rank(self.direction_rows)

    @cached_property
    def lattice_basis(self) -> list[IntVec]:
        """Saturated basis of the direction span intersected with Z^m."""
        return saturate_rows(self.direction_rows)

    @property
    def is_cone(self) -> bool:
        zero = tuple(Fraction(0) for _ in range(self.m))
        return self.vertices == (zero,)

    @cached_property
    def canonical_key(self):
        return (self.m, self.vertices, self.rays, self.lineality)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyhedron) and self.canonical_key == other.canonical_key

    def __hash__(self) -> int:
        return hash(self.canonical_key)

    def __repr__(self) -> str:
        return (
            f"Polyhedron(m={self.m}, vertices={list(self.vertices)}, "
            f"rays={list(self.rays)}, lineality={list(self.lineality)})"
        )

    # -- H-representation ----------------------------------------------

    @cached_property
    def hrep(self) -> tuple[tuple[HalfSpace, ...], tuple[HalfSpace, ...]]:
        """(equations, facet inequalities); each is (a, b) over primitive a."""
        v0 = self.vertices[0]
        normals = nullspace(self.direction_rows, self.m) if self.direction_rows else [
            tuple(Fraction(int(i == j)) for j in range(self.m)) for i in range(self.m)
        ]
        eqs = []
        for nrm in normals:
            a = primitive_direction(nrm)
            eqs.append((a, Fraction(vec_dot(a, v0))))
        return tuple(sorted(eqs)), tuple(sorted(self._facets()))

    @property
    def equations(self) -> tuple[HalfSpace, ...]:
        return self.hrep[0]

    @property
    def inequalities(self) -> tuple[HalfSpace, ...]:
        return self.hrep[1]

    def _homogeneous_generators(self) -> list[Vec]:
        gens = [tuple(v) + (Fraction(1),) for v in self.vertices]
        gens += [_fvec(r) + (Fraction(0),) for r in self.rays]
        for l in self.lineality:
            gens.append(_fvec(l) + (Fraction(0),))
            gens.append(_fvec(tuple(-x for x in l)) + (Fraction(0),))
        return gens

    def _facets(self) -> list[HalfSpace]:
        from itertools import combinations

        gens = self._homogeneous_generators()
        k1 = rank(gens)
        if k1 <= 1:
            return []
        span_basis, _ = rref([list(g) for g in gens])
        found: set[HalfSpace] = set()
        for subset in combinations(range(len(gens)), k1 - 1):
            sub = [gens[i] for i in subset]
            if rank(sub) != k1 - 1:
                continue
            # normals inside the generator span that vanish on the subset
            mat = [[vec_dot(b, s) for b in span_basis] for s in sub]
            kernel = nullspace(mat, len(span_basis))
            if len(kernel) != 1:
                continue
            h = tuple(
                sum(c * b[i] for c, b in zip(kernel[0], span_basis))
                for i in range(self.m + 1)
            )
            values = [vec_dot(h, g) for g in gens]
            if all(v <= 0 for v in values):
                pass
            elif all(v >= 0 for v in values):
                h = tuple(-x for x in h)
                values = [-v for v in values]
            else:
                continue
            if all(v == 0 for v in values):
                continue
            # a genuine facet is tight on at least one vertex generator
            if not any(
                values[i] == 0 for i in range(len(self.vertices))
            ):
                continue
            scaled = primitive_direction(h)
            ineq = (scaled[: self.m], -_frac(scaled[self.m]))
            found.add(ineq)
        return sorted(found)

    # -- predicates -----------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        p = _fvec(point)
        eqs, ineqs = self.hrep
        return all(vec_dot(a, p) == b for a, b in eqs) and all(
            vec_dot(a, p) <= b for a, b in ineqs
        )

    def contains_direction(self, direction: Sequence) -> bool:
        """Is the direction in the recession cone?"""
        d = _fvec(direction)
        eqs, ineqs = self.hrep
        return all(vec_dot(a, d) == 0 for a, b in eqs) and all(
            vec_dot(a, d) <= 0 for a, b in ineqs
        )

    def contains_polyhedron(self, other: Polyhedron) -> bool:
        return all(self.contains(v) for v in other.vertices) and all(
            self.contains_direction(r) for r in other.rays
        ) and all(
            self.contains_direction(l) and self.contains_direction([-x for x in l])
            for l in other.lineality
        )

    def relative_interior_point(self) -> Vec:
        """A strictly positive combination of all generators lies in the
        relative interior regardless of generator redundancy."""
        k = len(self.vertices)
        acc = [Fraction(0)] * self.m
        for v in self.vertices:
            for i, x in enumerate(v):
                acc[i] += Fraction(x, k)
        for r in self.rays:
            for i, x in enumerate(r):
                acc[i] += x
        return tuple(acc)

    # -- derived polyhedra ----------------------------------------------

    def recession(self) -> Polyhedron:
        zero = [Fraction(0)] * self.m
        return Polyhedron(self.m, [zero], self.rays, self.lineality, reduce=False)

    def translate(self, vec: Sequence) -> Polyhedron:
        t = _fvec(vec)
        return Polyhedron(
            self.m,
            [tuple(a + b for a, b in zip(v, t)) for v in self.vertices],
            self.rays,
            self.lineality,
            reduce=False,
        )

    def cone_from(self, apex: Sequence) -> Polyhedron:
        """The cone of directions from an apex into this polyhedron."""
        p = _fvec(apex)
        zero = [Fraction(0)] * self.m
        rays = [r for r in self.rays]
        for v in self.vertices:
            d = vec_sub(v, p)
            if not vec_is_zero(d):
                rays.append(primitive_direction(d))
        return Polyhedron(self.m, [zero], rays, self.lineality, reduce=True)

    def faces_of_facets(self) -> list[tuple[Polyhedron, HalfSpace]]:
        """Codimension-one faces, each with its cutting inequality."""
        out = []
        for a, b in self.inequalities:
            out.append((self._tight_face(a, b), (a, b)))
        return out

    def _tight_face(self, a: IntVec, b: Fraction) -> Polyhedron:
        verts = [v for v in self.vertices if vec_dot(a, v) == b]
        rays = [r for r in self.rays if vec_dot(a, r) == 0]
        return Polyhedron(self.m, verts, rays, self.lineality, reduce=False)

    def all_faces(self) -> list[Polyhedron]:
        """The full face lattice, this polyhedron included."""
        seen = {self.canonical_key: self}
        frontier = [self]
        while frontier:
            nxt = []
            for f in frontier:
                for sub, _ in f.faces_of_facets():
                    if sub.canonical_key not in seen:
                        seen[sub.canonical_key] = sub
                        nxt.append(sub)
            frontier = nxt
        return sorted(seen.values(), key=lambda p: (p.dim, p.canonical_key))

    def minimal_face_containing(self, point: Sequence) -> Polyhedron:
        """The smallest face containing a point of this polyhedron."""
        p = _fvec(point)
        if not self.contains(p):
            raise InvalidInputError("point outside the polyhedron")
        tight = [(a, b) for a, b in self.inequalities if vec_dot(a, p) == b]
        verts = [
            v
            for v in self.vertices
            if all(vec_dot(a, v) == b for a, b in tight)
        ]
        rays = [
            r for r in self.rays if all(vec_dot(a, r) == 0 for a, _ in tight)
        ]
        return Polyhedron(self.m, verts, rays, self.lineality, reduce=False)

    # -- double description steps ----------------------------------------

    def _materialized(self, a: IntVec) -> tuple[list[Vec], list, list[IntVec]]:
        """Split off lineality directions not orthogonal to a as explicit rays."""
        keep: list[IntVec] = []
        pivot = None
        for l in self.lineality:
            if vec_dot(a, l) != 0:
                if pivot is None:
                    pivot = l
                else:
                    s = Fraction(vec_dot(a, l), vec_dot(a, pivot))
                    keep.append(
                        primitive_direction(
                            tuple(_frac(x) - s * y for x, y in zip(l, pivot))
                        )
                    )
            else:
                keep.append(l)
        rays = list(self.rays)
        if pivot is not None:
            rays.append(pivot)
            rays.append(tuple(-x for x in pivot))
        return [list(v) for v in self.vertices], rays, keep

    def _split_parts(self, a: IntVec, b: Fraction):
        verts, rays, lin = self._materialized(a)
        b = _frac(b)
        vs = [(v, vec_dot(a, v) - b) for v in verts]
        rs = [(r, vec_dot(a, r)) for r in rays]
        cross_verts: list[Vec] = []
        cross_rays: list[Vec] = []
        for v1, s1 in vs:
            for v2, s2 in vs:
                if s1 > 0 > s2:
                    t = s1 / (s1 - s2)
                    cross_verts.append(
                        tuple(x + t * (y - x) for x, y in zip(v1, v2))
                    )
        for v, sv in vs:
            for r, sr in rs:
                if sv * sr < 0:
                    t = -sv / sr
                    cross_verts.append(tuple(x + t * y for x, y in zip(v, r)))
        for r1, s1 in rs:
            for r2, s2 in rs:
                if s1 > 0 > s2:
                    cross_rays.append(
                        tuple(s1 * y - s2 * x for x, y in zip(r1, r2))
                    )
        return vs, rs, lin, cross_verts, cross_rays

    def _halfspace_status(self, a: IntVec, b: Fraction) -> int:
        """-1 if entirely inside a.x <= b, 0 if cut or touching, +1 if entirely
        in the strict outside."""
        has_pos = False
        has_neg = False
        for v in self.vertices:
            s = vec_dot(a, v) - b
            has_pos |= s > 0
            has_neg |= s < 0
        for r in self.rays:
            s = vec_dot(a, r)
            has_pos |= s > 0
            has_neg |= s < 0
        for l in self.lineality:
            s = vec_dot(a, l)
            has_pos |= s != 0
            has_neg |= s != 0
        if not has_pos:
            return -1
        if not has_neg:
            return 1
        return 0

    def intersect_halfspace(self, a: IntVec, b) -> Polyhedron | None:
        """This polyhedron intersected with {x : a.x <= b}, or None if empty."""
        b = _frac(b)
        if self._halfspace_status(a, b) == -1:
            return self
        vs, rs, lin, cross_verts, cross_rays = self._split_parts(a, b)
        verts = [v for v, s in vs if s <= 0] + cross_verts
        rays = [r for r, s in rs if s <= 0] + cross_rays
        if not verts:
            return None
        return Polyhedron(self.m, verts, rays, lin, reduce=False)

    def intersect_hyperplane(self, a: IntVec, b) -> Polyhedron | None:
        """This polyhedron intersected with {x : a.x = b}, or None if empty."""
        b = _frac(b)
        if all(vec_dot(a, v) == b for v in self.vertices) and all(
            vec_dot(a, r) == 0 for r in self.rays
        ) and all(vec_dot(a, l) == 0 for l in self.lineality):
            return self
        vs, rs, lin, cross_verts, cross_rays = self._split_parts(a, b)
        verts = [v for v, s in vs if s == 0] + cross_verts
        rays = [r for r, s in rs if s == 0] + cross_rays
        lin = [l for l in lin if vec_dot(a, l) == 0]
        if not verts:
            return None
        return Polyhedron(self.m, verts, rays, lin, reduce=False)

    def intersection(self, other: Polyhedron) -> Polyhedron | None:
        """Exact intersection via successive halfspace and hyperplane cuts."""
        piece: Polyhedron | None = self
        eqs, ineqs = other.hrep
        for a, b in eqs:
            piece = piece.intersect_hyperplane(a, b)
            if piece is None:
                return None
        for a, b in ineqs:
            piece = piece.intersect_halfspace(a, b)
            if piece is None:
                return None
        return piece

    def split(self, a: IntVec, b) -> tuple[Polyhedron | None, Polyhedron | None]:
        """Both closed sides of a hyperplane cut."""
        neg = self.intersect_halfspace(a, b)
        pos = self.intersect_halfspace(tuple(-x for x in a), -_frac(b))
        return neg, pos

    def cuts(self, a: IntVec, b) -> bool:
        """Does the hyperplane separate the polyhedron into two full pieces?"""
        b = _frac(b)
        has_pos = False
        has_neg = False
        for v in self.vertices:
            s = vec_dot(a, v) - b
            has_pos |= s > 0
            has_neg |= s < 0
        for r in list(self.rays) + [l for l in self.lineality] + [
            tuple(-x for x in l) for l in self.lineality
        ]:
            s = vec_dot(a, r)
            has_pos |= s > 0
            has_neg |= s < 0
        return has_pos and has_neg


def _in_cone(target, rays, lineality, m) -> bool:
    """Is target in cone(rays) + span(lineality)?  Decided by exact LP."""
    gens = list(rays) + list(lineality) + [tuple(-x for x in l) for l in lineality]
    if not gens:
        return vec_is_zero(target)
    k = len(gens)
    eqs = []
    for i in range(m):
        eqs.append((tuple(Fraction(g[i]) for g in gens), Fraction(target[i])))
    ineqs = []
    for j in range(k):
        row = [Fraction(0)] * k
        row[j] = Fraction(-1)
        ineqs.append((tuple(row), Fraction(0)))
    return lp_feasible(k, ineqs, eqs).feasible


def _in_hull(target, verts, rays, lineality, m) -> bool:
    """Is target in conv(verts) + cone(rays) + span(lineality)?"""
    gens = [_fvec(v) for v in verts] + [_fvec(r) for r in rays] + [
        _fvec(l) for l in lineality
    ] + [_fvec(tuple(-x for x in l)) for l in lineality]
    nv = len(verts)
    k = len(gens)
    if k == 0:
        return False
    eqs = []
    for i in range(m):
        eqs.append((tuple(g[i] for g in gens), _frac(target[i])))
    eqs.append(
        (tuple(Fraction(1) if j < nv else Fraction(0) for j in range(k)), Fraction(1))
    )
    ineqs = []
    for j in range(k):
        row = [Fraction(0)] * k
        row[j] = Fraction(-1)
        ineqs.append((tuple(row), Fraction(0)))
    return lp_feasible(k, ineqs, eqs).feasible
