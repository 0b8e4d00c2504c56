"""Preparation of a curve against a complete fan: recession support check,
subdivision so that every edge and ray lies in a single cone, and global
rescaling to integral length/weight ratios."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .curves import (
    BoundedEdge,
    CurveRay,
    TropicalCurve,
    edge_data,
    require_valid,
)
from .errors import DimMismatch, NotInSupport
from .latticefan import (
    Fan,
    IntVec,
    RatVec,
    cone_contains,
    cone_halfspaces,
    dot,
    smallest_containing_cone,
)


@dataclass(frozen=True)
class RecessionSupport:
    ok: bool
    missing: tuple[tuple[str, IntVec], ...]  # (ray id, direction) not on a fan ray


@dataclass(frozen=True)
class NewVertex:
    id: str
    host: str
    host_kind: str  # "edge" or "ray"
    cone_before: int  # index into fan.cones of the piece before the crossing
    cone_after: int


@dataclass(frozen=True)
class SubdivisionRecord:
    output: TropicalCurve
    new_vertices: tuple[NewVertex, ...]
    piece_cones: dict[str, int]  # output edge/ray id -> index of its containing cone


def check_recession_support(c: TropicalCurve, f: Fan) -> RecessionSupport:
    """Whether every ray direction of the curve is a ray generator of the fan."""
    require_valid(c)
    if c.ambient_dim != f.ambient_dim:
        raise DimMismatch(
            f"curve in dim {c.ambient_dim} against fan in dim {f.ambient_dim}"
        )
    fan_rays = set(f.rays())
    missing = tuple(
        (r.id, r.direction) for r in c.rays if r.direction not in fan_rays
    )
    return RecessionSupport(ok=not missing, missing=missing)


def _crossing_params(f: Fan, base: RatVec, direction: Sequence) -> list[Fraction]:
    """Parameters t > 0 where base + t*direction meets a wall or span hyperplane of some cone."""
    params: set[Fraction] = set()
    for cone in f.cones:
        h = cone_halfspaces(cone)
        for normal in h.equations + h.inequalities:
            a = dot(normal, direction)
            if a == 0:
                continue  # parallel to, or contained in, the hyperplane
            t = Fraction(-dot(normal, base), a)
            if t > 0:
                params.add(t)
    return sorted(params)


def _interval_cone(f: Fan, base: RatVec, direction: Sequence, t: Fraction) -> int:
    point = tuple(b + t * d for b, d in zip(base, direction))
    cone = smallest_containing_cone(f, point)
    return f.cones.index(cone)


def _point_at(base: RatVec, direction: Sequence, t: Fraction) -> RatVec:
    return tuple(b + t * d for b, d in zip(base, direction))


def subdivide_along_fan(c: TropicalCurve, f: Fan) -> SubdivisionRecord:
    """Insert 2-valent vertices where edges or rays of the curve cross cone walls of the fan.

    Crossing parameters are found exactly by intersecting each edge or ray
    with every facet and span hyperplane of the fan's cones; spurious
    candidates (hyperplane extensions crossing the interior of another cone)
    are discarded by merging consecutive pieces that land in the same cone of
    the fan.  Every output piece is verified to lie in a single cone; weights
    are inherited, and balancing, genus, support, and the recession fan are
    preserved.  The fan must be complete (trusted); a traversed point outside
    its support raises NotInSupport.
    """
    require_valid(c)
    if c.ambient_dim != f.ambient_dim:
        raise DimMismatch(
            f"curve in dim {c.ambient_dim} against fan in dim {f.ambient_dim}"
        )

    vertices = dict(c.vertices)
    new_edges: list[BoundedEdge] = []
    new_rays: list[CurveRay] = []
    record: list[NewVertex] = []
    piece_cones: dict[str, int] = {}

    for e in sorted(c.edges, key=lambda e: e.id):
        pu = c.position(e.ends[0])
        pw = c.position(e.ends[1])
        direction = tuple(b - a for a, b in zip(pu, pw))
        cuts = [t for t in _crossing_params(f, pu, direction) if t < 1]
        # cone of each open piece between consecutive candidate parameters
        bounds = [Fraction(0)] + cuts + [Fraction(1)]
        cones = [
            _interval_cone(f, pu, direction, (lo + hi) / 2)
            for lo, hi in zip(bounds, bounds[1:])
        ]
        breaks = [t for t, c1, c2 in zip(cuts, cones, cones[1:]) if c1 != c2]
        piece_cone_ids = [c1 for c1, c2 in zip(cones, cones[1:]) if c1 != c2] + [cones[-1]]
        if not breaks:
            new_edges.append(e)
            piece_cones[e.id] = cones[0]
            _check_piece(f, cones[0], [pu, pw], None, e.id)
            continue
        chain = [e.ends[0]]
        for k, t in enumerate(breaks, start=1):
            vid = f"{e.id}#{k}"
            vertices[vid] = _point_at(pu, direction, t)
            chain.append(vid)
            record.append(
                NewVertex(
                    id=vid,
                    host=e.id,
                    host_kind="edge",
                    cone_before=piece_cone_ids[k - 1],
                    cone_after=piece_cone_ids[k],
                )
            )
        chain.append(e.ends[1])
        for k in range(len(chain) - 1):
            pid = f"{e.id}:{k}"
            new_edges.append(BoundedEdge(pid, (chain[k], chain[k + 1]), e.weight))
            piece_cones[pid] = piece_cone_ids[k]
            _check_piece(
                f, piece_cone_ids[k], [vertices[chain[k]], vertices[chain[k + 1]]], None, pid
            )

    for r in sorted(c.rays, key=lambda r: r.id):
        pb = c.position(r.base)
        cuts = _crossing_params(f, pb, r.direction)
        bounds = [Fraction(0)] + cuts
        cones = [
            _interval_cone(f, pb, r.direction, (lo + hi) / 2)
            for lo, hi in zip(bounds, bounds[1:])
        ]
        # representative point past the last candidate for the unbounded tail
        tail_cone = _interval_cone(f, pb, r.direction, (cuts[-1] if cuts else Fraction(0)) + 1)
        cones.append(tail_cone)
        breaks = [t for t, c1, c2 in zip(cuts, cones, cones[1:]) if c1 != c2]
        piece_cone_ids = [c1 for c1, c2 in zip(cones, cones[1:]) if c1 != c2] + [cones[-1]]
        if not breaks:
            new_rays.append(r)
            piece_cones[r.id] = tail_cone
            _check_piece(f, tail_cone, [pb], r.direction, r.id)
            continue
        chain = [r.base]
        for k, t in enumerate(breaks, start=1):
            vid = f"{r.id}#{k}"
            vertices[vid] = _point_at(pb, r.direction, t)
            chain.append(vid)
            record.append(
                NewVertex(
                    id=vid,
                    host=r.id,
                    host_kind="ray",
                    cone_before=piece_cone_ids[k - 1],
                    cone_after=piece_cone_ids[k],
                )
            )
        for k in range(len(chain) - 1):
            pid = f"{r.id}:{k}"
            new_edges.append(BoundedEdge(pid, (chain[k], chain[k + 1]), r.weight))
            piece_cones[pid] = piece_cone_ids[k]
            _check_piece(
                f, piece_cone_ids[k], [vertices[chain[k]], vertices[chain[k + 1]]], None, pid
            )
        tail_id = f"{r.id}:{len(chain) - 1}"
        new_rays.append(CurveRay(tail_id, chain[-1], r.direction, r.weight))
        piece_cones[tail_id] = piece_cone_ids[-1]
        _check_piece(f, piece_cone_ids[-1], [vertices[chain[-1]]], r.direction, tail_id)

    out = TropicalCurve(c.ambient_dim, vertices, tuple(new_edges), tuple(new_rays))
    return SubdivisionRecord(output=out, new_vertices=tuple(record), piece_cones=piece_cones)


def _check_piece(f: Fan, cone_index: int, points: list[RatVec], direction, piece_id: str):
    """Post-hoc verification that a piece lies in its assigned cone.

    For a segment it is enough that both endpoints are in the closed cone;
    for a ray, the base point and the direction (a cone is stable under
    adding its own elements).
    """
    cone = f.cones[cone_index]
    for p in points:
        if not cone_contains(cone, p, "closure"):
            raise NotInSupport(
                f"piece {piece_id}: point {p} escapes cone {cone.generators}"
            )
    if direction is not None and not cone_contains(cone, direction, "closure"):
        raise NotInSupport(
            f"piece {piece_id}: unbounded direction {direction} leaves cone "
            f"{cone.generators}; fan may not be complete along the tail"
        )


def rescale_integral(c: TropicalCurve) -> tuple[TropicalCurve, int]:
    """Scale all positions by the least N making every length/weight ratio integral.

    Combinatorial type, primitive directions, weights, and the balancing
    verdict are unchanged; only the embedding is dilated.
    """
    require_valid(c)
    n = 1
    for e in c.edges:
        _, length = edge_data(c, e.id)
        ratio = length / e.weight
        n = lcm(n, ratio.denominator)
    if n == 1:
        return c, 1
    vs = {v: tuple(n * x for x in pos) for v, pos in c.vertices.items()}
    return TropicalCurve(c.ambient_dim, vs, c.edges, c.rays), n
