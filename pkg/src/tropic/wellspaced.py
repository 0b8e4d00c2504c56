"""Genus-1 well-spacedness: the known combinatorial obstruction to realizing
superabundant genus-1 curves.

The check implemented here uses the affine span of the unique cycle: collect
the connected subgraph through the cycle that stays inside that span, find
every vertex of it incident to an edge or ray leaving the span, and measure
each one's lattice distance to the cycle inside the subgraph.  The curve is
well-spaced when there are no such departure vertices or when the minimum
distance is attained at least twice.  Only the exact affine span of the
cycle is tested, not every subspace containing it; this suffices for the
catalogued failure modes and is recorded as a limitation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .curves import TropicalCurve, edge_data, genus, require_valid
from .errors import GenusNotOne
from .latticefan import IntVec, RatVec, rank


@dataclass(frozen=True)
class CycleData:
    """The unique cycle of a genus-1 curve and the affine span of its support."""

    vertices: tuple[str, ...]  # in cyclic walk order, starting at the smallest id
    edges: tuple[str, ...]
    base_point: RatVec
    span_directions: tuple[IntVec, ...]  # basis of the direction space
    codim: int


@dataclass(frozen=True)
class Departure:
    vertex: str
    distance: Fraction


@dataclass(frozen=True)
class WellSpacedVerdict:
    well_spaced: bool
    span_codim: int
    departures: tuple[Departure, ...]


def cycle(c: TropicalCurve) -> CycleData:
    """Locate the unique cycle by peeling leaves; requires genus exactly 1."""
    require_valid(c)
    if genus(c) != 1:
        raise GenusNotOne(f"genus is {genus(c)}, not 1")
    alive_edges = {e.id: e for e in c.edges}
    degree: dict[str, int] = {v: 0 for v in c.vertices}
    for e in c.edges:
        degree[e.ends[0]] += 1
        degree[e.ends[1]] += 1
    changed = True
    while changed:
        changed = False
        for eid, e in list(alive_edges.items()):
            if degree[e.ends[0]] == 1 or degree[e.ends[1]] == 1:
                del alive_edges[eid]
                degree[e.ends[0]] -= 1
                degree[e.ends[1]] -= 1
                changed = True
    cycle_vertices = sorted(v for v, d in degree.items() if d > 0)
    start = cycle_vertices[0]
    walk = [start]
    walk_edges: list[str] = []
    used: set[str] = set()
    current = start
    while True:
        nxt = None
        for eid, e in sorted(alive_edges.items()):
            if eid in used or current not in e.ends:
                continue
            nxt = (eid, e.ends[1] if e.ends[0] == current else e.ends[0])
            break
        if nxt is None:
            break
        used.add(nxt[0])
        walk_edges.append(nxt[0])
        current = nxt[1]
        if current == start:
            break
        walk.append(current)
    base = c.position(start)
    directions = [edge_data(c, eid)[0] for eid in walk_edges]
    basis = _row_space_basis(directions)
    return CycleData(
        vertices=tuple(walk),
        edges=tuple(walk_edges),
        base_point=base,
        span_directions=basis,
        codim=c.ambient_dim - len(basis),
    )


def _row_space_basis(rows: list[IntVec]) -> tuple[IntVec, ...]:
    basis: list[IntVec] = []
    for row in rows:
        if rank(basis + [row]) > len(basis):
            basis.append(row)
    return tuple(basis)


def _in_direction_space(span: tuple[IntVec, ...], v) -> bool:
    return rank(list(span) + [tuple(Fraction(x) for x in v)]) == len(span)


def well_spaced(c: TropicalCurve) -> WellSpacedVerdict:
    """Genus-1 well-spacedness verdict with the departure vertices as witnesses.

    Vacuously well-spaced when the cycle spans the whole ambient space.
    Distances are lattice lengths of shortest paths, within the in-span
    subgraph through the cycle; a departure sitting on the cycle has
    distance 0.
    """
    data = cycle(c)
    if data.codim == 0:
        return WellSpacedVerdict(well_spaced=True, span_codim=0, departures=())

    span = data.span_directions
    base = data.base_point

    def in_span(point: RatVec) -> bool:
        return _in_direction_space(span, tuple(p - b for p, b in zip(point, base)))

    vertices_in = {v for v in c.vertices if in_span(c.position(v))}
    edges_in = [
        e for e in c.edges if e.ends[0] in vertices_in and e.ends[1] in vertices_in
    ]
    # connected component of the cycle inside the in-span subgraph
    adj: dict[str, list[tuple[str, Fraction]]] = {v: [] for v in vertices_in}
    for e in edges_in:
        _, length = edge_data(c, e.id)
        adj[e.ends[0]].append((e.ends[1], length))
        adj[e.ends[1]].append((e.ends[0], length))
    component: set[str] = set(data.vertices)
    stack = list(data.vertices)
    while stack:
        for w, _ in adj[stack.pop()]:
            if w not in component:
                component.add(w)
                stack.append(w)

    # multi-source shortest lattice distance from the cycle
    dist: dict[str, Fraction] = {v: Fraction(0) for v in data.vertices}
    heap = [(Fraction(0), v) for v in sorted(data.vertices)]
    heapq.heapify(heap)
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for w, length in adj[v]:
            nd = d + length
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))

    departures: list[Departure] = []
    for v in sorted(component):
        leaves = any(
            (e.ends[0] == v and e.ends[1] not in vertices_in)
            or (e.ends[1] == v and e.ends[0] not in vertices_in)
            for e in c.edges
        ) or any(
            r.base == v and not _in_direction_space(span, r.direction) for r in c.rays
        )
        if leaves:
            departures.append(Departure(vertex=v, distance=dist[v]))

    if not departures:
        return WellSpacedVerdict(True, data.codim, ())
    minimum = min(d.distance for d in departures)
    count = sum(1 for d in departures if d.distance == minimum)
    return WellSpacedVerdict(
        well_spaced=count >= 2,
        span_codim=data.codim,
        departures=tuple(departures),
    )
