"""JSON interchange for curves, fans, and certificates.

Rationals are serialized as plain integers when possible and as exact "p/q"
strings otherwise, so no value is ever routed through floating point.  All
serializers emit keys in a fixed order and sort lists, making reports
byte-identical across runs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .curves import BoundedEdge, CurveRay, TropicalCurve
from .degeneration import (
    BasePoint,
    Component,
    DualCurve,
    MarkedPoint,
    Node,
    NodeData,
    RealizationCertificate,
)
from .errors import SchemaError
from .latticefan import Cone, Fan


def rat_to_json(x) -> int | str:
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def rat_from_json(value) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as ex:
            raise SchemaError(f"bad rational string {value!r}: {ex}") from None
    raise SchemaError(f"expected int or 'p/q' string, got {type(value).__name__}")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def _int(value, what: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


# ---------------------------------------------------------------------------
# curves


def curve_to_dict(c: TropicalCurve) -> dict:
    return {
        "ambient_dim": c.ambient_dim,
        "vertices": [
            {"id": v, "coords": [rat_to_json(x) for x in c.vertices[v]]}
            for v in sorted(c.vertices)
        ],
        "edges": [
            {"id": e.id, "ends": list(e.ends), "weight": e.weight}
            for e in sorted(c.edges, key=lambda e: e.id)
        ],
        "rays": [
            {"id": r.id, "base": r.base, "direction": list(r.direction), "weight": r.weight}
            for r in sorted(c.rays, key=lambda r: r.id)
        ],
    }


def curve_from_dict(data) -> TropicalCurve:
    _require(isinstance(data, dict), "curve document must be an object")
    n = _int(data.get("ambient_dim"), "ambient_dim")
    vertices = {}
    _require(isinstance(data.get("vertices"), list), "vertices must be a list")
    for entry in data["vertices"]:
        _require(isinstance(entry, dict) and "id" in entry and "coords" in entry,
                 "vertex entries need 'id' and 'coords'")
        vid = str(entry["id"])
        _require(vid not in vertices, f"duplicate vertex id {vid}")
        _require(isinstance(entry["coords"], list) and len(entry["coords"]) == n,
                 f"vertex {vid} needs {n} coordinates")
        vertices[vid] = tuple(rat_from_json(x) for x in entry["coords"])
    edges = []
    for entry in data.get("edges", []):
        _require(isinstance(entry, dict) and {"id", "ends", "weight"} <= set(entry),
                 "edge entries need 'id', 'ends', 'weight'")
        ends = entry["ends"]
        _require(isinstance(ends, list) and len(ends) == 2, "edge 'ends' must list two vertices")
        edges.append(BoundedEdge(str(entry["id"]), (str(ends[0]), str(ends[1])),
                                 _int(entry["weight"], "edge weight")))
    rays = []
    for entry in data.get("rays", []):
        _require(isinstance(entry, dict) and {"id", "base", "direction", "weight"} <= set(entry),
                 "ray entries need 'id', 'base', 'direction', 'weight'")
        direction = entry["direction"]
        _require(isinstance(direction, list) and len(direction) == n,
                 f"ray {entry['id']} direction needs {n} integer entries")
        rays.append(CurveRay(str(entry["id"]), str(entry["base"]),
                             tuple(_int(x, "direction entry") for x in direction),
                             _int(entry["weight"], "ray weight")))
    return TropicalCurve(n, vertices, tuple(edges), tuple(rays))


# ---------------------------------------------------------------------------
# fans


def fan_to_dict(f: Fan) -> dict:
    ray_list = sorted({g for c in f.cones for g in c.generators})
    index = {g: i for i, g in enumerate(ray_list)}
    return {
        "ambient_dim": f.ambient_dim,
        "rays": [list(g) for g in ray_list],
        "cones": [[index[g] for g in c.generators] for c in f.cones],
        "trusted_complete": f.trusted_complete,
    }


def fan_from_dict(data) -> Fan:
    _require(isinstance(data, dict), "fan document must be an object")
    n = _int(data.get("ambient_dim"), "ambient_dim")
    _require(isinstance(data.get("rays"), list), "fan needs a 'rays' list")
    rays = []
    for entry in data["rays"]:
        _require(isinstance(entry, list) and len(entry) == n,
                 f"fan rays must be integer vectors of length {n}")
        rays.append(tuple(_int(x, "ray entry") for x in entry))
    _require(isinstance(data.get("cones"), list), "fan needs a 'cones' list")
    cones = []
    for idx_list in data["cones"]:
        _require(isinstance(idx_list, list), "each cone must be a list of ray indices")
        gens = []
        for i in idx_list:
            _require(isinstance(i, int) and 0 <= i < len(rays), f"bad ray index {i!r}")
            gens.append(rays[i])
        cones.append(Cone.from_rays(gens, n) if gens else Cone((), n))
    trusted = data.get("trusted_complete", False)
    _require(isinstance(trusted, bool), "trusted_complete must be a boolean")
    # keep the file's cone order: certificate fields reference cones by index
    return Fan(tuple(cones), n, trusted)


# ---------------------------------------------------------------------------
# certificates


def certificate_to_dict(cert: RealizationCertificate) -> dict:
    return {
        "curve": curve_to_dict(cert.rescaled_curve),
        "fan": fan_to_dict(cert.fan),
        "multiplier": cert.multiplier,
        "vertex_cones": {v: idx for v, idx in cert.vertex_cones},
        "vertex_stars": {v: [list(d) for d in dirs] for v, dirs in cert.vertex_stars},
        "dual_curve": {
            "components": [
                {"id": comp.id, "vertex": comp.vertex} for comp in cert.dual.components
            ],
            "nodes": [
                {"id": nd.id, "edge": nd.edge, "components": list(nd.components)}
                for nd in cert.dual.nodes
            ],
            "marked_points": [
                {
                    "id": mp.id,
                    "ray": mp.ray,
                    "component": mp.component,
                    "contact_order": mp.contact_order,
                }
                for mp in cert.dual.marked_points
            ],
        },
        "node_data": [
            {"edge": nd.edge, "k": nd.k, "rho": nd.rho, "u_q": list(nd.u_q)}
            for nd in cert.node_data
        ],
        "base_point": {
            "edge_valuations": {e: rat_to_json(v) for e, v in cert.base_point.edge_valuations},
            "vertex_positions": {
                v: [rat_to_json(x) for x in pos]
                for v, pos in cert.base_point.vertex_positions
            },
        },
    }


def certificate_from_dict(data) -> RealizationCertificate:
    _require(isinstance(data, dict), "certificate document must be an object")
    for key in ("curve", "fan", "multiplier", "vertex_cones", "dual_curve", "node_data",
                "base_point"):
        _require(key in data, f"certificate is missing {key!r}")
    curve = curve_from_dict(data["curve"])
    fan = fan_from_dict(data["fan"])
    dual_data = data["dual_curve"]
    _require(isinstance(dual_data, dict), "dual_curve must be an object")
    dual = DualCurve(
        components=tuple(
            Component(id=str(x["id"]), vertex=str(x["vertex"]))
            for x in dual_data.get("components", [])
        ),
        nodes=tuple(
            Node(
                id=str(x["id"]),
                edge=str(x["edge"]),
                components=(str(x["components"][0]), str(x["components"][1])),
            )
            for x in dual_data.get("nodes", [])
        ),
        marked_points=tuple(
            MarkedPoint(
                id=str(x["id"]),
                ray=str(x["ray"]),
                component=str(x["component"]),
                contact_order=_int(x["contact_order"], "contact_order"),
            )
            for x in dual_data.get("marked_points", [])
        ),
    )
    node_data = tuple(
        NodeData(
            edge=str(x["edge"]),
            k=_int(x["k"], "k"),
            rho=_int(x["rho"], "rho"),
            u_q=tuple(_int(v, "u_q entry") for v in x["u_q"]),
        )
        for x in data["node_data"]
    )
    bp = data["base_point"]
    _require(isinstance(bp, dict) and "edge_valuations" in bp, "base_point needs edge_valuations")
    base_point = BasePoint(
        edge_valuations=tuple(
            sorted((str(k), rat_from_json(v)) for k, v in bp["edge_valuations"].items())
        ),
        vertex_positions=tuple(
            sorted(
                (str(k), tuple(rat_from_json(x) for x in v))
                for k, v in bp.get("vertex_positions", {}).items()
            )
        ),
    )
    stars = data.get("vertex_stars", {})
    return RealizationCertificate(
        rescaled_curve=curve,
        multiplier=_int(data["multiplier"], "multiplier"),
        fan=fan,
        vertex_cones=tuple(
            sorted((str(k), _int(v, "cone index")) for k, v in data["vertex_cones"].items())
        ),
        vertex_stars=tuple(
            sorted(
                (str(k), tuple(tuple(_int(x, "star entry") for x in d) for d in dirs))
                for k, dirs in stars.items()
            )
        ),
        dual=dual,
        node_data=node_data,
        base_point=base_point,
    )


def dumps(obj: Any) -> str:
    """Deterministic JSON text: fixed key order from the serializers, two-space indent."""
    return json.dumps(obj, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise SchemaError(f"malformed JSON: {ex}") from None
