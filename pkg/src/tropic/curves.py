"""Embedded tropical curves: weighted 1-dimensional rational polyhedral complexes in R^n.

A curve is a connected graph of vertices with exact rational positions,
bounded edges with positive integer weights, and weighted rays (unbounded
edges) with explicit primitive directions.  The defining check is the
balancing condition: at every vertex the weighted primitive outgoing
directions sum to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateEdge,
    InvalidCurve,
    NoSuchVertex,
    ValidationReport,
)
from .latticefan import (
    Cone,
    Fan,
    IntVec,
    RatVec,
    as_ratvec,
    primitive,
    primitive_and_scale,
)


@dataclass(frozen=True)
class BoundedEdge:
    id: str
    ends: tuple[str, str]
    weight: int


@dataclass(frozen=True)
class CurveRay:
    id: str
    base: str
    direction: IntVec
    weight: int


@dataclass(frozen=True, eq=True)
class TropicalCurve:
    """Immutable embedded tropical curve; treat all fields as read-only.

    Vertices, edges, and rays are kept sorted by id, so equal curves compare
    equal regardless of construction order and serialization is canonical.
    """

    ambient_dim: int
    vertices: dict[str, RatVec]
    edges: tuple[BoundedEdge, ...]
    rays: tuple[CurveRay, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "vertices", {v: self.vertices[v] for v in sorted(self.vertices)}
        )
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        object.__setattr__(self, "rays", tuple(sorted(self.rays, key=lambda r: r.id)))

    @staticmethod
    def build(
        ambient_dim: int,
        vertices: Mapping[str, Sequence],
        edges: Iterable[tuple[str, tuple[str, str], int]] = (),
        rays: Iterable[tuple[str, str, Sequence[int], int]] = (),
    ) -> "TropicalCurve":
        vs = {str(k): as_ratvec(v) for k, v in vertices.items()}
        es = tuple(BoundedEdge(str(i), (str(u), str(w)), int(wt)) for i, (u, w), wt in edges)
        rs = tuple(
            CurveRay(str(i), str(b), tuple(int(c) for c in d), int(wt)) for i, b, d, wt in rays
        )
        return TropicalCurve(ambient_dim, vs, es, rs)

    def position(self, vertex: str) -> RatVec:
        try:
            return self.vertices[vertex]
        except KeyError:
            raise NoSuchVertex(f"no vertex {vertex!r}") from None

    def edge(self, edge_id: str) -> BoundedEdge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise DegenerateEdge(f"no bounded edge {edge_id!r}")

    def edges_at(self, vertex: str) -> list[BoundedEdge]:
        return [e for e in self.edges if vertex in e.ends]

    def rays_at(self, vertex: str) -> list[CurveRay]:
        return [r for r in self.rays if r.base == vertex]


@dataclass(frozen=True)
class InfinityPoint:
    id: str
    ray: str


@dataclass(frozen=True)
class CompactifiedCurve:
    """A curve plus one formal point at infinity per ray."""

    base: TropicalCurve
    infinity_points: tuple[InfinityPoint, ...]


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    defects: tuple[tuple[str, IntVec], ...]  # (vertex, nonzero weighted direction sum)


@dataclass(frozen=True)
class Star:
    """One-dimensional fan of outgoing directions at a vertex, with ray weights."""

    vertex: str
    fan: Fan
    ray_weights: tuple[tuple[IntVec, int], ...]


def validate(c: TropicalCurve) -> ValidationReport:
    """Check the structural invariants; lists every violation found."""
    report = ValidationReport()
    if c.ambient_dim < 1:
        report.add("DimMismatch", f"ambient dimension {c.ambient_dim} < 1")
    if not c.vertices:
        report.add("Empty", "curve has no vertices")
    for v, pos in c.vertices.items():
        if len(pos) != c.ambient_dim:
            report.add("DimMismatch", f"vertex {v} has {len(pos)} coordinates")
    seen_ids: set[str] = set()
    for e in c.edges:
        if e.id in seen_ids:
            report.add("DuplicateId", f"edge id {e.id} reused")
        seen_ids.add(e.id)
        if e.weight < 1:
            report.add("NonpositiveWeight", f"edge {e.id} has weight {e.weight}")
        missing = [v for v in e.ends if v not in c.vertices]
        if missing:
            report.add("NoSuchVertex", f"edge {e.id} references {missing}")
            continue
        if c.vertices[e.ends[0]] == c.vertices[e.ends[1]]:
            report.add("DegenerateEdge", f"edge {e.id} has coincident endpoints")
    for r in c.rays:
        if r.id in seen_ids:
            report.add("DuplicateId", f"ray id {r.id} reused")
        seen_ids.add(r.id)
        if r.weight < 1:
            report.add("NonpositiveWeight", f"ray {r.id} has weight {r.weight}")
        if r.base not in c.vertices:
            report.add("NoSuchVertex", f"ray {r.id} based at unknown vertex {r.base}")
        if len(r.direction) != c.ambient_dim:
            report.add("DimMismatch", f"ray {r.id} direction has {len(r.direction)} coordinates")
        elif all(x == 0 for x in r.direction):
            report.add("ZeroDirection", f"ray {r.id} has zero direction")
        elif primitive(r.direction) != r.direction:
            report.add("NonPrimitiveDirection", f"ray {r.id} direction {r.direction}")
    if c.vertices and not _connected(c):
        report.add("Disconnected", "underlying graph is not connected")
    return report


def require_valid(c: TropicalCurve) -> None:
    report = validate(c)
    if not report.valid:
        raise InvalidCurve("; ".join(f"{v.code}: {v.detail}" for v in report.violations))


def _connected(c: TropicalCurve) -> bool:
    verts = list(c.vertices)
    adj: dict[str, set[str]] = {v: set() for v in verts}
    for e in c.edges:
        if e.ends[0] in adj and e.ends[1] in adj:
            adj[e.ends[0]].add(e.ends[1])
            adj[e.ends[1]].add(e.ends[0])
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def edge_data(c: TropicalCurve, edge_id: str) -> tuple[IntVec, Fraction]:
    """Primitive direction and lattice length of a bounded edge, oriented by stored endpoint order."""
    e = c.edge(edge_id)
    pu, pw = c.position(e.ends[0]), c.position(e.ends[1])
    disp = tuple(b - a for a, b in zip(pu, pw))
    if all(x == 0 for x in disp):
        raise DegenerateEdge(f"edge {edge_id} has zero length")
    return primitive_and_scale(disp)


def outgoing(c: TropicalCurve, vertex: str) -> list[tuple[IntVec, int]]:
    """Primitive outgoing directions at a vertex with weights; bounded edges counted from each end."""
    out: list[tuple[IntVec, int]] = []
    for e in c.edges_at(vertex):
        d, _ = edge_data(c, e.id)
        if e.ends[0] == vertex:
            out.append((d, e.weight))
        if e.ends[1] == vertex:
            out.append((tuple(-x for x in d), e.weight))
    for r in c.rays_at(vertex):
        out.append((r.direction, r.weight))
    return out


def is_balanced(c: TropicalCurve) -> BalanceReport:
    """Balancing condition: weighted primitive outgoing directions sum to zero at every vertex."""
    require_valid(c)
    defects = []
    for v in sorted(c.vertices):
        total = [0] * c.ambient_dim
        for d, w in outgoing(c, v):
            for i, x in enumerate(d):
                total[i] += w * x
        if any(x != 0 for x in total):
            defects.append((v, tuple(total)))
    return BalanceReport(balanced=not defects, defects=tuple(defects))


def genus(c: TropicalCurve) -> int:
    """First Betti number of the underlying graph: #edges - #vertices + 1."""
    require_valid(c)
    return len(c.edges) - len(c.vertices) + 1


def recession_fan(c: TropicalCurve) -> Fan:
    """Fan of unbounded directions: one ray per distinct primitive ray direction, plus the origin."""
    require_valid(c)
    dirs = sorted({r.direction for r in c.rays})
    cones = [Cone((), c.ambient_dim)] + [Cone((d,), c.ambient_dim) for d in dirs]
    return Fan.build(cones, c.ambient_dim)


def star(c: TropicalCurve, vertex: str) -> Star:
    """Fan of primitive outgoing directions at a vertex, with weights attached to rays.

    Parallel edges or rays leaving the vertex in the same direction contribute
    one ray whose weight is the sum.
    """
    if vertex not in c.vertices:
        raise NoSuchVertex(f"no vertex {vertex!r}")
    weights: dict[IntVec, int] = {}
    for d, w in outgoing(c, vertex):
        weights[d] = weights.get(d, 0) + w
    dirs = sorted(weights)
    cones = [Cone((), c.ambient_dim)] + [Cone((d,), c.ambient_dim) for d in dirs]
    return Star(
        vertex=vertex,
        fan=Fan.build(cones, c.ambient_dim),
        ray_weights=tuple((d, weights[d]) for d in dirs),
    )


def compactify(c: TropicalCurve) -> CompactifiedCurve:
    """Adjoin one 1-valent point at infinity per ray; the base curve is unchanged."""
    require_valid(c)
    points = tuple(InfinityPoint(id=f"inf:{r.id}", ray=r.id) for r in c.rays)
    return CompactifiedCurve(base=c, infinity_points=points)


def translated(c: TropicalCurve, offset: Sequence) -> TropicalCurve:
    off = as_ratvec(offset)
    vs = {v: tuple(a + b for a, b in zip(pos, off)) for v, pos in c.vertices.items()}
    return TropicalCurve(c.ambient_dim, vs, c.edges, c.rays)


def scaled(c: TropicalCurve, factor) -> TropicalCurve:
    f = Fraction(factor)
    if f <= 0:
        raise InvalidCurve("scaling factor must be positive")
    vs = {v: tuple(f * a for a in pos) for v, pos in c.vertices.items()}
    return TropicalCurve(c.ambient_dim, vs, c.edges, c.rays)
