"""Smoke tests for the python bindings."""

import json
import math
import os
import subprocess

import polarkit as pk


def test_exact_erasure_evolution():
    assert [pk.evolve_erasure(0.5, 2, i) for i in (1, 2, 3, 4)] == [
        0.9375,
        0.5625,
        0.4375,
        0.0625,
    ]


def test_joint_and_higher_order():
    d = pk.evolve_joint(0.5, 1, 1, 2)
    assert (d.p00, d.p01, d.p10, d.p11) == (0.25, 0.5, 0.0, 0.25)
    s = pk.evolve_joint_s(0.5, 2, [2, 3, 4])
    b = pk.brute_force_events(0.5, 2, [2, 3, 4])
    assert max(abs(x - y) for x, y in zip(s.probs, b.probs)) < 1e-12


def test_density_evolution_and_construction():
    ch = pk.ChannelModel.parse("bec:0.5")
    de = pk.density_evolution_tree(pk.llr_density(ch), 2)
    assert de.conv_count == 6
    info = pk.select_info_set(de.error_prob, 2)
    assert info == [3, 4]
    assert pk.minimal_elements(info, 2) == [3]
    assert pk.precedes(3, 4, 2)


def test_density_functionals():
    ch = pk.ChannelModel.bsc(0.1)
    d = pk.llr_density(ch)
    assert math.isclose(pk.error_prob(d), 0.1, rel_tol=1e-12)
    assert math.isclose(pk.bhattacharyya(d), 0.6, rel_tol=1e-3)


def test_bounds_sandwich():
    es = pk.EventSystem.bec_erasure(0.5, 2, [3, 4])
    lower = pk.pairwise_lower_bound(es, [3, 4])
    upper = pk.tree_upper_bound(es, [3, 4])
    assert math.isclose(lower.value, 0.4375, rel_tol=1e-12)
    assert math.isclose(upper.value, 0.4375, rel_tol=1e-12)
    assert lower.subset == [3]


def test_codec_round_trip():
    assert pk.polar_encode([0, 0, 1, 1]) == [0, 0, 1, 1]
    code = pk.CodeSpec()
    code.n = 3
    code.channel = "bec:0.5"
    code.info_set = list(range(1, 9))
    code.values = [0.0] * 8
    u = [1, 0, 1, 1, 0, 0, 1, 0]
    x = pk.polar_encode(u)
    llr = [-math.inf if b else math.inf for b in x]
    u_hat, erasure, ops = pk.sc_decode(llr, code)
    assert u_hat == u
    assert not erasure
    assert ops == 8 * 3


def test_simulation():
    code = pk.CodeSpec()
    code.n = 2
    code.channel = "bec:0.5"
    code.info_set = [3, 4]
    code.values = [0.0] * 4
    r = pk.simulate_block(code, pk.ChannelModel.bec(1.0), 200, 1, pk.FailureKind.ERASURE)
    assert r.estimate == 1.0
    r0 = pk.simulate_block(code, pk.ChannelModel.bec(0.0), 200, 1, pk.FailureKind.ERASURE)
    assert r0.estimate == 0.0


def test_cli_binary_if_available():
    cli = os.environ.get("POLARKIT_CLI")
    if not cli or not os.path.exists(cli):
        return
    out = subprocess.run(
        [cli, "construct", "--channel", "bec:0.5", "--n", "2", "--rate", "0.5",
         "--out", "/tmp/polarkit_smoke_code.json"],
        capture_output=True, text=True, check=True)
    assert "K=2" in out.stdout
    spec = json.load(open("/tmp/polarkit_smoke_code.json"))
    assert spec["info_set"] == [3, 4]
