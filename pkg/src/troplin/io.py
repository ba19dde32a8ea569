"""JSON serialization for points, matroids, complexes, and reports.

Rationals travel as strings like "3" or "-1/2" so nothing is ever rounded.
Ground elements are 1-indexed and listed ascending.  Reading canonicalizes:
points get their first coordinate subtracted and basis valuations are checked
against the Pluecker relations.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complexes import Cell, WeightedComplex
from .errors import InvalidInputError
from .matroids import ChainFamily, Matroid, _sorted_sets
from .points import TropPoint
from .recognize import LocalCheckReport, ProbeResult, Reason, RecognitionReport
from .valuated import ValuatedMatroid


def frac_str(x: Fraction) -> str:
    return str(x)


def parse_frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational: {s!r}") from exc


def point_to_json(p: TropPoint) -> list[str]:
    return [frac_str(c) for c in p.coords]


def point_from_json(data) -> TropPoint:
    if not isinstance(data, (list, tuple)) or not data:
        raise InvalidInputError("a point is a nonempty array of rationals")
    return TropPoint(parse_frac(c) for c in data)


def vector_to_json(v) -> list[str]:
    return [frac_str(Fraction(c)) for c in v]


def matroid_to_json(m: Matroid) -> dict:
    return {
        "n": m.n,
        "bases": [sorted(b) for b in _sorted_sets(m.bases)],
    }


def matroid_from_json(data) -> Matroid:
    try:
        n = int(data["n"])
        bases = data["bases"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError("matroid JSON needs fields 'n' and 'bases'") from exc
    return Matroid(n, bases)


def valuated_to_json(v: ValuatedMatroid) -> dict:
    out = matroid_to_json(v.matroid)
    out["weights"] = {
        ",".join(str(i) for i in sorted(b)): frac_str(v.weights[b])
        for b in _sorted_sets(v.matroid.bases)
    }
    return out


def valuated_from_json(data) -> ValuatedMatroid:
    matroid = matroid_from_json(data)
    raw = data.get("weights")
    if not isinstance(raw, dict):
        raise InvalidInputError("valuated matroid JSON needs a 'weights' mapping")
    weights = {}
    for key, val in raw.items():
        try:
            elems = frozenset(int(x) for x in str(key).split(","))
        except ValueError as exc:
            raise InvalidInputError(f"bad basis key {key!r}") from exc
        weights[elems] = parse_frac(val)
    return ValuatedMatroid(matroid, weights)


def chain_family_to_json(f: ChainFamily) -> dict:
    return {"n": f.n, "sets": [sorted(s) for s in _sorted_sets(f.sets)]}


def chain_family_from_json(data) -> ChainFamily:
    try:
        n = int(data["n"])
        sets = data["sets"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError("family JSON needs fields 'n' and 'sets'") from exc
    return ChainFamily(n, [frozenset(int(x) for x in s) for s in sets])


def cell_to_json(cell: Cell, weight: int | None = None) -> dict:
    out = {
        "vertices": [point_to_json(v) for v in cell.vertices],
        "rays": [vector_to_json(r) for r in cell.rays],
    }
    if cell.lineality:
        out["lineality"] = [vector_to_json(l) for l in cell.lineality]
    if weight is not None:
        out["weight"] = weight
    return out


def complex_to_json(c: WeightedComplex) -> dict:
    return {
        "n": c.n,
        "cells": [
            cell_to_json(cell, weight) for cell, weight in zip(c.cells, c.weights)
        ],
    }


def complex_from_json(data, validate: bool = True) -> WeightedComplex:
    try:
        n = int(data["n"])
        raw_cells = data["cells"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError("complex JSON needs fields 'n' and 'cells'") from exc
    if not isinstance(raw_cells, list) or not raw_cells:
        raise InvalidInputError("'cells' must be a nonempty array")
    cells = []
    weights = []
    for raw in raw_cells:
        verts = raw.get("vertices")
        if not verts:
            raise InvalidInputError("each cell needs at least one vertex")
        vertices = [point_from_json(v) for v in verts]
        rays = [[parse_frac(x) for x in r] for r in raw.get("rays", [])]
        lineality = [[parse_frac(x) for x in l] for l in raw.get("lineality", [])]
        for vec in list(rays) + list(lineality):
            if len(vec) != n:
                raise InvalidInputError("direction vectors must have length n")
        weight = raw.get("weight", 1)
        if not isinstance(weight, int) or weight <= 0:
            raise InvalidInputError("cell weights must be positive integers")
        cells.append(Cell.from_torus(n, vertices, rays, lineality, reduce=True))
        weights.append(weight)
    return WeightedComplex(n, cells, weights, validate=validate)


def _jsonable(obj):
    if obj is None or isinstance(obj, (str, int, bool)):
        return obj
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, TropPoint):
        return point_to_json(obj)
    if isinstance(obj, Matroid):
        return matroid_to_json(obj)
    if isinstance(obj, Cell):
        return cell_to_json(obj)
    if isinstance(obj, Reason):
        return {"kind": obj.kind, "witness": _jsonable(obj.witness)}
    if isinstance(obj, frozenset):
        return sorted(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return str(obj)


def report_to_json(report: RecognitionReport) -> dict:
    return {
        "verdict": report.verdict,
        "matroid": _jsonable(report.matroid),
        "reason": _jsonable(report.reason),
        "multiplier": report.multiplier,
        "flats": _jsonable(report.flats),
    }


def local_check_to_json(report: LocalCheckReport) -> dict:
    return {
        "global": report_to_json(report.global_report),
        "vertices": [
            {
                "point": point_to_json(p),
                "report": report_to_json(r),
                "multiplier": m,
            }
            for (p, r), m in zip(report.vertex_reports, report.multipliers)
        ],
    }


def probe_to_json(result: ProbeResult) -> dict:
    if result.ok:
        return {"counterexample": None, "verdict": "no counterexample found"}
    x, y = result.pair
    return {
        "counterexample": {
            "from": point_to_json(x),
            "to": point_to_json(y),
            "gap_parameter": frac_str(result.segment_check.gap_param),
            "gap_point": point_to_json(result.segment_check.gap_point),
        },
        "verdict": "not tropically convex",
    }


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
