import json

import numpy as np
import pytest

from qsetalg.cliff import build_gammas
from qsetalg.vertexnet import (
    GammaVertex,
    IotaNode,
    VertexNetwork,
    dense_oracle,
)


def test_gamma_vertex_entries_match_matrices():
    v = GammaVertex(2, 1)
    gs = build_gammas(2, 1)
    ent = v.entries()
    for m in range(3):
        g = np.asarray(gs.gamma(m + 1))
        for y2 in range(gs.dim):
            for y1 in range(gs.dim):
                want = int(g[y2, y1])
                got = ent.get((y2, m, y1), 0)
                assert got == want


def test_gamma_vertex_slots():
    v = GammaVertex(3, 1)
    assert v.slot_dims == {"dual": 4, "vector": 4, "spinor": 4}
    assert v.slot_parity == {"dual": 1, "vector": 0, "spinor": 1}
    with pytest.raises(ValueError):
        GammaVertex(0, 0)
    with pytest.raises(ValueError):
        GammaVertex(5, 4)


def test_iota_node_entries_are_a_grade_selector():
    node = IotaNode(1, 2)
    # two generators at rank 2: the grade-1 labels are codes 1 and 2
    assert node.slot_dims == {"out": 4, "in": 2}
    ent = node.entries()
    assert ent == {(1, 0): 1, (2, 1): 1}


def test_iota_node_dims_follow_binomials():
    node = IotaNode(2, 3)
    assert node.slot_dims["in"] == 6   # C(4, 2)
    assert node.slot_dims["out"] == 16
    with pytest.raises(ValueError):
        IotaNode(5, 3)
    with pytest.raises(ValueError):
        IotaNode(1, 4)


def test_network_rejects_incompatible_wiring():
    g = GammaVertex(2, 1)
    with pytest.raises(ValueError):
        VertexNetwork(
            [g],
            edges=[((0, "vector"), (0, "spinor"))],
            open_legs=[(0, "dual")],
        )


def test_network_rejects_dimension_mismatch():
    a = GammaVertex(2, 1)  # spinor dim 2
    b = GammaVertex(4, 4)  # dual dim 16
    with pytest.raises(ValueError):
        VertexNetwork(
            [a, b],
            edges=[((0, "spinor"), (1, "dual"))],
            open_legs=[
                (0, "dual"), (0, "vector"),
                (1, "vector"), (1, "spinor"),
            ],
        )


def test_network_requires_every_slot_exactly_once():
    g = GammaVertex(2, 1)
    with pytest.raises(ValueError):
        VertexNetwork([g], edges=[], open_legs=[(0, "vector")])
    with pytest.raises(ValueError):
        VertexNetwork(
            [g],
            edges=[((0, "dual"), (0, "spinor"))],
            open_legs=[(0, "vector"), (0, "vector")],
        )


def test_parity_passes_pure_gamma_networks():
    g = GammaVertex(2, 1)
    net = VertexNetwork(
        [g], edges=[((0, "dual"), (0, "spinor"))], open_legs=[(0, "vector")]
    )
    rep = net.parity_check()
    assert rep.ok
    assert rep.flags == ()


def test_parity_flags_even_grade_selector():
    node = IotaNode(2, 2)
    net = VertexNetwork([node], edges=[], open_legs=[(0, "out"), (0, "in")])
    rep = net.parity_check()
    assert not rep.ok
    assert len(rep.flags) == 1
    assert "parity sum" in rep.flags[0].reason


def test_parity_flags_odd_grade_selector_differently():
    node = IotaNode(1, 2)
    net = VertexNetwork([node], edges=[], open_legs=[(0, "out"), (0, "in")])
    rep = net.parity_check()
    assert not rep.ok
    assert "rank" in rep.flags[0].reason


def test_single_gamma_trace_is_zero():
    net = VertexNetwork(
        [GammaVertex(2, 1)],
        edges=[((0, "dual"), (0, "spinor"))],
        open_legs=[(0, "vector")],
    )
    arr = net.contract()
    assert arr.shape == (3,)
    assert np.array_equal(arr, np.zeros(3, dtype=arr.dtype))


def test_gamma_loop_recovers_the_direction_metric():
    g = GammaVertex(2, 1)
    net = VertexNetwork(
        [g, GammaVertex(2, 1)],
        edges=[((0, "spinor"), (1, "dual")), ((1, "spinor"), (0, "dual"))],
        open_legs=[(0, "vector"), (1, "vector")],
    )
    arr = net.contract()
    gs = build_gammas(2, 1)
    want = np.array(
        [[gs.dim * (gs.eta_entry(m + 1) if m == n else 0) for n in range(3)]
         for m in range(3)]
    )
    # tr(g_m g_n) = dim * eta_m delta_mn
    assert np.array_equal(arr, want)


def test_sparse_and_dense_paths_agree_with_einsum():
    g1 = GammaVertex(2, 2)
    g2 = GammaVertex(2, 2)
    net = VertexNetwork(
        [g1, g2],
        edges=[((0, "spinor"), (1, "dual")), ((0, "vector"), (1, "vector"))],
        open_legs=[(0, "dual"), (1, "spinor")],
    )
    dense = net.contract(dense_cutoff=10 ** 9)
    sparse = net.contract(dense_cutoff=0)
    oracle = dense_oracle(net)
    assert np.array_equal(dense, sparse)
    assert np.allclose(dense.astype(float), oracle)


def test_grade_selector_chain_contracts():
    lift = IotaNode(1, 2)    # blades of 2 generators -> monad space dim 4
    lift2 = IotaNode(1, 3)   # blades of 4 generators -> monad space dim 16
    net = VertexNetwork(
        [lift, lift2],
        edges=[((0, "out"), (1, "in"))],
        open_legs=[(0, "in"), (1, "out")],
    )
    arr = net.contract()
    assert arr.shape[0] * arr.shape[1] == 32
    oracle = dense_oracle(net)
    assert np.allclose(arr.astype(float), oracle)
    # one unit entry per source generator, nothing else
    assert sorted(arr.ravel().tolist()) == [0] * 30 + [1, 1]


def test_empty_network_is_the_unit_scalar():
    net = VertexNetwork([], edges=[], open_legs=[])
    arr = net.contract()
    assert arr.shape == ()
    assert arr == 1


def test_json_round_trip(tmp_path):
    g = GammaVertex(2, 1)
    net = VertexNetwork(
        [g, IotaNode(1, 2)],
        edges=[],
        open_legs=[
            (0, "dual"), (0, "vector"), (0, "spinor"),
            (1, "out"), (1, "in"),
        ],
    )
    blob = net.to_json()
    again = VertexNetwork.from_json(blob)
    assert again.open_legs == net.open_legs
    path = tmp_path / "net.json"
    path.write_text(json.dumps(blob))
    loaded = VertexNetwork.load(str(path))
    assert loaded.to_json() == blob
