"""Round mechanics of the semi-random algorithm.

Small instances cannot satisfy the completion caps for k >= 3, so those
rounds collapse by design; the k = 2 case has single-digit caps and runs
whole rounds end to end, which is what most tests here lean on.
"""

import math

import pytest

from hyperind.algorithms import akpss_run, akpss_step, deg_i_to_j, mu_i_to_j
from hyperind.core import LayeredHypergraph
from hyperind.errors import PreconditionFailed, RoundCollapsed
from hyperind.generators import gen_layered_bouquet
from hyperind.rng import stream
from hyperind.schedule import build_schedule
from hyperind.structure import check_bouquet


def two_layer_sched(n=1000):
    return build_schedule(n, math.e ** 2, 2)


def test_deg_contraction_hand_case():
    H = LayeredHypergraph(7, 4)
    H.add_edge((0, 1, 2))
    H.add_edge((0, 1, 3, 4))
    H.add_edge((0, 5, 6))
    H.add_edge((1, 2, 5))
    vprime = {1, 2}
    sampled = {3, 4, 5}
    assert deg_i_to_j(H, 0, vprime, sampled, 3, 3) == 1
    assert deg_i_to_j(H, 0, vprime, sampled, 3, 2) == 0
    assert deg_i_to_j(H, 0, vprime, sampled, 4, 2) == 1
    assert deg_i_to_j(H, 0, vprime, sampled, 4, 3) == 0
    assert deg_i_to_j(H, 5, vprime, sampled, 3, 3) == 1
    assert deg_i_to_j(H, 5, vprime, sampled, 3, 2) == 0
    assert deg_i_to_j(H, 1, vprime, sampled, 3, 2) == 1


def test_mu_hand_value():
    H = LayeredHypergraph(25, 3)
    for a in range(10):
        H.add_edge((0, 2 * a + 1, 2 * a + 2))
    # C(2,1) * 10 * 0.1 * e^-1
    assert mu_i_to_j(H, 0, 0.1, 3, 2) == pytest.approx(2.0 / math.e)
    assert mu_i_to_j(H, 0, 0.1, 3, 3) == pytest.approx(10 * math.e ** -2)
    assert mu_i_to_j(H, 1, 0.1, 3, 2) == pytest.approx(0.2 / math.e)


def run_one_step(n, seed, collect=False):
    H = LayeredHypergraph(n, 2)
    sched = two_layer_sched(n)
    rng = stream(seed, "step")
    return akpss_step(
        H, sched, 0, rng, collect_contraction_data=collect
    ), sched


def test_step_state_consistency():
    (h_next, relabel, state), sched = run_one_step(800, 41, collect=True)
    n = 800
    everyone = set(range(n))

    assert state.independent <= state.sampled
    assert not state.independent & state.dominated
    assert not state.independent & state.waste
    assert not state.survivors & (state.sampled | state.dominated | state.waste)

    H2 = state.diagnostics["completed"]
    nb = H2.neighborhood(state.irregular, 1)
    assert state.waste == nb | state.overflow
    assert (
        state.survivors
        == everyone - state.sampled - state.dominated - state.waste
    )

    dominated = set()
    for _, e in H2.edges():
        missing = [v for v in e if v not in state.sampled]
        if not missing:
            dominated.update(e)
        elif len(missing) == 1:
            dominated.add(missing[0])
    assert state.dominated == dominated

    assert h_next.n == len(state.survivors)
    assert sorted(relabel) == sorted(state.survivors)
    assert sorted(relabel.values()) == list(range(h_next.n))
    assert check_bouquet(h_next).holds
    assert state.diagnostics["p"] == pytest.approx(sched.p_at(1))


def test_step_contraction_degrees_match_direct_count():
    (h_next, relabel, state), sched = run_one_step(600, 17, collect=True)
    H2 = state.diagnostics["completed"]
    vprime = set(state.diagnostics["vprime_set"])
    sampled = set(state.sampled)
    deg_ij = state.diagnostics["deg_ij"]
    for i in range(2, H2.k + 1):
        for j in range(1, i + 1):
            bucket = deg_ij.get((i, j), {})
            for x in range(H2.n):
                direct = deg_i_to_j(H2, x, vprime, sampled, i, j)
                assert bucket.get(x, 0) == direct, (i, j, x)


def test_step_force_sample_is_honored():
    H = LayeredHypergraph(100, 2)
    sched = two_layer_sched(100)
    rng = stream(5, "forced")
    # empty sample: nothing is harvested and projected degrees overshoot
    # their means everywhere, so the round wipes the graph out
    with pytest.raises(RoundCollapsed) as err:
        akpss_step(H, sched, 0, rng, force_sample=set())
    state = err.value.state
    assert state is not None
    assert state.sampled == frozenset()
    assert state.independent == frozenset()
    assert state.survivors == frozenset()


def test_run_two_layer_round_end_to_end():
    H = LayeredHypergraph(1000, 2)
    sched = two_layer_sched(1000)
    cert = akpss_run(H, sched, seed=23, retries_per_round=4, verify_rounds=True)
    assert cert.verified
    assert cert.algorithm == "akpss"
    assert len(cert.rounds) == 1
    info = cert.rounds[0]
    assert info["structure_ok"]
    assert info["n_before"] == 1000
    assert info["harvested"] == len(cert.independent_set)
    assert len(cert.independent_set) > 0
    ok, witness = H.is_independent(cert.independent_set)
    assert ok and witness is None


def test_run_is_deterministic():
    sched = two_layer_sched(600)
    certs = []
    for _ in range(2):
        H = LayeredHypergraph(600, 2)
        certs.append(akpss_run(H, sched, seed=77, retries_per_round=2))
    assert certs[0].independent_set == certs[1].independent_set
    assert certs[0].rounds == certs[1].rounds
    assert certs[0].warnings == certs[1].warnings


def test_run_collapse_is_banked_and_reported():
    H, info = gen_layered_bouquet(
        200, 3, {2: 20, 3: 15}, stream(9, "collapse-input")
    )
    sched = build_schedule(200, math.e ** 3, 3)
    cert = akpss_run(H, sched, seed=10, retries_per_round=2)
    assert cert.verified
    assert cert.diagnostics["collapsed"]
    assert any("collapsed" in w for w in cert.warnings)
    assert cert.rounds[-1]["n_after"] == 0
    ok, _ = H.is_independent(cert.independent_set)
    assert ok


def test_run_rejects_cycle_heavy_input():
    H = LayeredHypergraph(9, 3)
    H.add_edge((0, 1, 4))
    H.add_edge((1, 2, 5))
    H.add_edge((0, 2, 6))
    sched = build_schedule(9, math.e ** 2, 3)
    with pytest.raises(PreconditionFailed):
        akpss_run(H, sched, seed=1)


def test_run_warns_on_degrees_above_round_zero_caps():
    H = LayeredHypergraph(40, 2)
    for v in range(1, 9):
        H.add_edge((0, v))  # degree 8 beats the cap of 7 at T = e^2
    sched = two_layer_sched(40)
    assert sched.vertex_cap(0, 2) == 7
    cert = akpss_run(H, sched, seed=3, retries_per_round=2)
    assert any("exceeds round-0 cap" in w for w in cert.warnings)


def test_certificate_serialization_round_trip():
    H = LayeredHypergraph(120, 2)
    sched = two_layer_sched(120)
    cert = akpss_run(H, sched, seed=8, retries_per_round=2)
    d = cert.to_dict()
    assert d["algorithm"] == "akpss"
    assert d["independent_set"] == list(cert.independent_set)
    assert d["verified"] is True
    assert isinstance(d["rounds"], list)
