from fractions import Fraction

import pytest

from tropic import fixtures
from tropic.curves import (
    TropicalCurve,
    compactify,
    edge_data,
    genus,
    is_balanced,
    recession_fan,
    scaled,
    star,
    translated,
    validate,
)
from tropic.errors import DegenerateEdge, NoSuchVertex


def test_fixtures_validate():
    for name, fn in fixtures.CURVES.items():
        assert validate(fn()).valid, name


def test_disconnected_reported():
    c = TropicalCurve.build(
        2,
        {"a": (0, 0), "b": (1, 0), "c": (5, 5), "d": (6, 5)},
        edges=[("e0", ("a", "b"), 1), ("e1", ("c", "d"), 1)],
    )
    report = validate(c)
    assert any(v.code == "Disconnected" for v in report.violations)


def test_zero_weight_reported():
    c = TropicalCurve.build(
        2,
        {"a": (0, 0), "b": (1, 0)},
        edges=[("e0", ("a", "b"), 0)],
    )
    assert any(v.code == "NonpositiveWeight" for v in validate(c).violations)


def test_zero_length_edge_reported():
    c = TropicalCurve.build(
        2,
        {"a": (0, 0), "b": (0, 0)},
        edges=[("e0", ("a", "b"), 1)],
    )
    assert any(v.code == "DegenerateEdge" for v in validate(c).violations)


def test_edge_data_examples():
    c = TropicalCurve.build(
        2,
        {"a": (0, 0), "b": (2, 0), "c": (3, 6), "d": (Fraction(1, 2), Fraction(1, 2))},
        edges=[("e0", ("a", "b"), 1), ("e1", ("a", "c"), 1), ("e2", ("a", "d"), 1)],
    )
    assert edge_data(c, "e0") == ((1, 0), Fraction(2))
    assert edge_data(c, "e1") == ((1, 2), Fraction(3))  # gcd extraction
    assert edge_data(c, "e2") == ((1, 1), Fraction(1, 2))


def test_edge_data_degenerate():
    c = TropicalCurve.build(2, {"a": (0, 0), "b": (0, 0)}, edges=[("e0", ("a", "b"), 1)])
    with pytest.raises(DegenerateEdge):
        edge_data(c, "e0")


def test_balancing_catalog():
    for name in ("line", "tripod", "segfan", "cycle3", "speyer3"):
        assert is_balanced(fixtures.CURVES[name]()).balanced, name
    report = is_balanced(fixtures.unbal())
    assert not report.balanced
    assert report.defects == (("v0", (1, 1)),)


def test_balancing_invariant_under_translation_and_scaling():
    for name in ("tripod", "segfan", "cycle3"):
        c = fixtures.CURVES[name]()
        assert is_balanced(translated(c, (7, Fraction(5, 3)))).balanced
        assert is_balanced(scaled(c, Fraction(3, 2))).balanced
    u = fixtures.unbal()
    assert not is_balanced(translated(u, (1, 1))).balanced
    assert not is_balanced(scaled(u, 4)).balanced


def test_global_balancing():
    # summing the vertex identities cancels bounded edges, leaving the rays
    for name in ("line", "tripod", "segfan", "cycle3", "speyer3", "speyer3_ws", "diag"):
        c = fixtures.CURVES[name]()
        total = [0] * c.ambient_dim
        for r in c.rays:
            for i, x in enumerate(r.direction):
                total[i] += r.weight * x
        assert not any(total), name


def test_genus():
    assert genus(fixtures.tripod()) == 0
    assert genus(fixtures.cycle3()) == 1
    assert genus(fixtures.speyer3()) == 1  # 3 bounded edges, 3 vertices


def test_genus_zero_iff_tree():
    for name, fn in fixtures.CURVES.items():
        c = fn()
        g = genus(c)
        assert g >= 0
        is_tree = len(c.edges) == len(c.vertices) - 1
        assert (g == 0) == is_tree


def test_recession_fan():
    assert recession_fan(fixtures.tripod()).rays() == ((-1, -1), (0, 1), (1, 0))
    assert recession_fan(fixtures.line()).rays() == ((-1, 0), (1, 0))
    assert recession_fan(fixtures.speyer3()).rays() == (
        (-1, -1, -1),
        (-1, 2, 0),
        (0, 0, 1),
        (2, -1, 0),
    )


def test_recession_fan_ignores_bounded_edges():
    # doubling the segment (weights rebalanced) leaves the recession fan alone
    doubled = TropicalCurve.build(
        2,
        {"v0": (0, 0), "v1": (2, 0)},
        edges=[("e0", ("v0", "v1"), 2), ("e1", ("v0", "v1"), 2)],
        rays=[("r0", "v0", (-1, 0), 4), ("r1", "v1", (1, 0), 4)],
    )
    assert is_balanced(doubled).balanced
    assert recession_fan(doubled) == recession_fan(fixtures.segfan())


def test_star():
    s = star(fixtures.tripod(), "v0")
    assert s.ray_weights == (((-1, -1), 1), ((0, 1), 1), ((1, 0), 1))
    s = star(fixtures.segfan(), "v0")
    assert s.ray_weights == (((-1, 0), 2), ((1, 0), 2))
    s = star(fixtures.cycle3(), "v0")  # two cycle edges plus the balancing ray
    assert s.ray_weights == (((-1, -1), 1), ((0, 1), 1), ((1, 0), 1))
    with pytest.raises(NoSuchVertex):
        star(fixtures.tripod(), "nope")


def test_compactify():
    comp = compactify(fixtures.tripod())
    assert len(comp.infinity_points) == 3
    assert compactify(fixtures.line()).infinity_points[0].ray == "r+"
    assert len(compactify(fixtures.segfan()).infinity_points) == 2
    # forgetting the infinity points recovers the curve
    assert comp.base == fixtures.tripod()


def test_two_valent_vertex_allowed_when_collinear():
    c = TropicalCurve.build(
        2,
        {"a": (0, 0), "m": (1, 0), "b": (2, 0)},
        edges=[("e0", ("a", "m"), 2), ("e1", ("m", "b"), 2)],
        rays=[("r0", "a", (-1, 0), 2), ("r1", "b", (1, 0), 2)],
    )
    assert validate(c).valid
    assert is_balanced(c).balanced


def test_ambient_dimension_one_end_to_end():
    from tropic.degeneration import certify, verify_certificate
    from tropic.latticefan import fan_from_maximal, fan_validate

    c = TropicalCurve.build(
        1,
        {"a": (0,), "b": (3,)},
        edges=[("e0", ("a", "b"), 1)],
        rays=[("r-", "a", (-1,), 1), ("r+", "b", (1,), 1)],
    )
    assert validate(c).valid
    assert is_balanced(c).balanced
    assert genus(c) == 0
    fan = fan_from_maximal([(1,), (-1,)], [[0], [1]], 1)
    assert fan_validate(fan).valid
    cert = certify(c, fan)
    assert verify_certificate(cert).ok
    (nd,) = cert.node_data
    assert (nd.k, nd.rho, nd.u_q) == (3, 1, (-3,))
