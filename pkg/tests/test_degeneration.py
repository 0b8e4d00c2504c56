from dataclasses import replace
from fractions import Fraction

import pytest

from helpers import monoid_closure
from tropic import fixtures
from tropic.degeneration import (
    certify,
    dual_curve,
    node_monoid,
    node_slope,
    verify_certificate,
)
from tropic.errors import NonIntegralRatio, RecessionNotSupported, Unbalanced
from tropic.latticefan import Cone


CERTIFY_PAIRS = [
    ("line", "fan_p1xp1"),
    ("tripod", "fan_p2"),
    ("segfan", "fan_p1xp1"),
    ("cycle3", "fan_cycle3"),
    ("speyer3", "fan_r3"),
    ("speyer3_ws", "fan_r3_ws"),
    ("diag", "fan_diag"),
]


def test_dual_curve_tripod():
    d = dual_curve(fixtures.tripod())
    assert len(d.components) == 1
    assert len(d.nodes) == 0
    assert [m.contact_order for m in d.marked_points] == [1, 1, 1]


def test_dual_curve_cycle3():
    d = dual_curve(fixtures.cycle3())
    assert len(d.components) == 3
    assert len(d.nodes) == 3
    joined = {n.components for n in d.nodes}
    assert joined == {("C_v0", "C_v1"), ("C_v1", "C_v2"), ("C_v2", "C_v0")}


def test_dual_curve_segfan_contact_orders_equal_weights():
    d = dual_curve(fixtures.segfan())
    assert len(d.components) == 2 and len(d.nodes) == 1
    assert [m.contact_order for m in d.marked_points] == [2, 2]


def test_dual_curve_rejects_unbalanced():
    with pytest.raises(Unbalanced):
        dual_curve(fixtures.unbal())


def test_node_monoid_k1_is_everything():
    m = node_monoid(2, 2)
    assert m.k == 1
    assert m.contains(5, 3)
    assert m.contains(0, 17)


def test_node_monoid_k2_membership():
    m = node_monoid(4, 2)
    assert m.contains(1, 3)
    assert not m.contains(1, 2)


def test_node_monoid_rejects_non_integral_ratio():
    with pytest.raises(NonIntegralRatio):
        node_monoid(3, 2)
    with pytest.raises(NonIntegralRatio):
        node_monoid(Fraction(1, 2), 1)


def test_node_monoid_k3_truncated_enumeration():
    m = node_monoid(3, 1)
    members = {(a, b) for a in range(5) for b in range(5) if a + b <= 4 and m.contains(a, b)}
    assert members == monoid_closure(3, 4)
    assert members == {(0, 0), (1, 1), (2, 2), (0, 3), (3, 0)}


def test_node_monoid_congruence_equals_closure():
    for k in range(1, 9):
        m = node_monoid(k, 1)
        closure = monoid_closure(k, 30)
        for n1 in range(31):
            for n2 in range(31 - n1):
                assert m.contains(n1, n2) == ((n1, n2) in closure), (k, n1, n2)


def test_node_slope_examples():
    assert node_slope(fixtures.segfan(), "e0") == (-1, 0)
    assert node_slope(fixtures.cycle3(), "e0") == (-1, 0)


def test_node_slope_identity():
    for name in ("segfan", "cycle3", "speyer3"):
        c = fixtures.CURVES[name]()
        for e in c.edges:
            u_q = node_slope(c, e.id)
            p1, p2 = c.position(e.ends[0]), c.position(e.ends[1])
            assert tuple(e.weight * x for x in u_q) == tuple(a - b for a, b in zip(p1, p2))


def test_certify_tripod():
    cert = certify(fixtures.tripod(), fixtures.fan_p2())
    assert cert.node_data == ()
    assert [m.contact_order for m in cert.dual.marked_points] == [1, 1, 1]
    (pair,) = cert.vertex_cones
    assert cert.fan.cones[pair[1]] == Cone((), 2)  # the origin cone


def test_certify_segfan():
    cert = certify(fixtures.segfan(), fixtures.fan_p1xp1())
    (nd,) = cert.node_data
    assert (nd.k, nd.rho, nd.u_q) == (1, 2, (-1, 0))
    assert dict(cert.base_point.edge_valuations) == {"e0": Fraction(1)}


def test_certify_speyer3():
    cert = certify(fixtures.speyer3(), fixtures.fan_r3())
    assert len(cert.dual.nodes) == 3
    assert sorted(m.contact_order for m in cert.dual.marked_points) == [1, 1, 1, 1]
    assert verify_certificate(cert).ok


@pytest.mark.parametrize("curve_name,fan_name", CERTIFY_PAIRS)
def test_certify_round_trip(curve_name, fan_name):
    cert = certify(fixtures.CURVES[curve_name](), fixtures.FANS[fan_name]())
    check = verify_certificate(cert)
    assert check.ok, check.violations


def test_certify_requires_recession_support():
    with pytest.raises(RecessionNotSupported):
        certify(fixtures.tripod(), fixtures.fan_p1xp1())


def test_certify_rejects_unbalanced():
    with pytest.raises(Unbalanced):
        certify(fixtures.unbal(), fixtures.fan_p1xp1())


def test_fault_injection_u_q():
    cert = certify(fixtures.segfan(), fixtures.fan_p1xp1())
    bad_nodes = tuple(
        replace(nd, u_q=(nd.u_q[0] + 1,) + nd.u_q[1:]) for nd in cert.node_data
    )
    check = verify_certificate(replace(cert, node_data=bad_nodes))
    assert not check.ok
    assert any("e0" in v for v in check.violations)


def test_fault_injection_contact_order():
    cert = certify(fixtures.speyer3(), fixtures.fan_r3())
    marked = cert.dual.marked_points
    tampered = (replace(marked[0], contact_order=marked[0].contact_order + 1),) + marked[1:]
    check = verify_certificate(replace(cert, dual=replace(cert.dual, marked_points=tampered)))
    assert not check.ok


def test_node_slopes_recover_balancing():
    # directions recovered from node slopes (d = -u_q/k) reproduce the
    # balancing sums of the rescaled curve
    for curve_name, fan_name in CERTIFY_PAIRS:
        cert = certify(fixtures.CURVES[curve_name](), fixtures.FANS[fan_name]())
        hat = cert.rescaled_curve
        by_edge = {nd.edge: nd for nd in cert.node_data}
        for v in hat.vertices:
            total = [0] * hat.ambient_dim
            for e in hat.edges:
                nd = by_edge[e.id]
                if e.ends[0] == v:  # outgoing primitive direction is -u_q/k
                    for i, x in enumerate(nd.u_q):
                        total[i] += -e.weight * x // nd.k
                if e.ends[1] == v:
                    for i, x in enumerate(nd.u_q):
                        total[i] += e.weight * x // nd.k
            for r in hat.rays:
                if r.base == v:
                    for i, x in enumerate(r.direction):
                        total[i] += r.weight * x
            assert not any(total), (curve_name, v)


def test_certificates_are_deterministic():
    from tropic.jsonio import certificate_to_dict, dumps

    a = dumps(certificate_to_dict(certify(fixtures.speyer3(), fixtures.fan_r3())))
    b = dumps(certificate_to_dict(certify(fixtures.speyer3(), fixtures.fan_r3())))
    assert a == b


def test_node_monoid_rejects_bad_weight():
    with pytest.raises(NonIntegralRatio):
        node_monoid(4, 0)


def test_fault_injection_vertex_cone_and_base_point():
    cert = certify(fixtures.cycle3(), fixtures.fan_cycle3())
    # off-by-one cone index
    (v0, idx0), *rest = cert.vertex_cones
    bad = replace(cert, vertex_cones=((v0, idx0 + 1),) + tuple(rest))
    assert not verify_certificate(bad).ok
    # tampered valuation
    (e0, val0), *vals = cert.base_point.edge_valuations
    bad_bp = replace(
        cert.base_point, edge_valuations=((e0, val0 + 1),) + tuple(vals)
    )
    assert not verify_certificate(replace(cert, base_point=bad_bp)).ok
    # tampered multiplier
    assert not verify_certificate(replace(cert, multiplier=cert.multiplier + 1)).ok


def test_certify_with_real_subdivision_keeps_split_valuations():
    cert = certify(fixtures.diag(), fixtures.fan_diag())
    assert [nd.edge for nd in cert.node_data] == ["e0:0", "e0:1"]
    assert dict(cert.base_point.edge_valuations) == {
        "e0:0": Fraction(1),
        "e0:1": Fraction(1),
    }
    assert verify_certificate(cert).ok
