import random

from citor.homres import tor_profile
from citor.modules import direct_sum, random_module
from citor.pairings import eta
from citor.theorems import (
    CERTIFIED,
    CHECKERS,
    NOT_APPLICABLE,
    REFUTED,
    check_depth_formula,
    check_lemma_hypersurface,
    check_sp,
    check_tor1,
    rigidity_infer,
)


def test_depth_formula_certified(node_modules):
    v = check_depth_formula(node_modules["rxpy"], node_modules["rx"], 8)
    assert v.conclusion["status"] == CERTIFIED
    assert v.all_hold and not v.red_alarm
    ev = v.conclusion["evidence"]
    assert ev["depth_M"] + ev["depth_N"] == ev["depth_R"] + ev["depth_tensor"]


def test_lemma_hypersurface_theta_obstruction(node_modules):
    v = check_lemma_hypersurface(node_modules["rx"], node_modules["rx2"], 8)
    by_name = {h["name"]: h["status"] for h in v.to_json()["hypotheses"]}
    assert by_name["theta_zero"] == "fails"
    assert v.conclusion["status"] == REFUTED
    assert not v.red_alarm


def test_tor1_sp_failure(node_modules):
    # M (x) N = k is torsion: the SP hypothesis is the designated failure
    v = check_tor1(node_modules["rx"], node_modules["ry"], 1, 8)
    by_name = {h["name"]: h["status"] for h in v.to_json()["hypotheses"]}
    assert by_name["sp_c"] == "fails"
    assert v.conclusion["status"] == REFUTED
    assert not v.red_alarm


def test_hw_missing_rank(node_modules):
    v = CHECKERS["hw"](node_modules["rx"], node_modules["ry"], 8)
    by_name = {h["name"]: h["status"] for h in v.to_json()["hypotheses"]}
    assert by_name["rank_defined"] == "fails"
    assert not v.red_alarm


def test_sp_report(node_modules):
    rep = check_sp(node_modules["rx"], node_modules["rx2"], 1, 8)
    assert rep.holds
    rep2 = check_sp(node_modules["rx"], node_modules["ry"], 1, 8)
    assert not rep2.holds  # the tensor product k is torsion


def test_rigidity_finite_pd(node_modules):
    prof = tor_profile(node_modules["rxpy"], node_modules["rx"], 8)
    cert = rigidity_infer(node_modules["rxpy"], node_modules["rx"], prof)
    assert cert["certified"] and cert["rule"] == "finite_pd"


def test_rigidity_eta_gate(node_modules):
    # eta_1(rx, rx2) != 0, so the c-rigidity rule must not fire
    prof = tor_profile(node_modules["rx"], node_modules["rx2"], 8)
    e = eta(node_modules["rx"], node_modules["rx2"], 1)
    cert = rigidity_infer(node_modules["rx"], node_modules["rx2"], prof, eta_cert=e)
    assert cert["rule"] != "c_rigid"


def test_trivial_free_pair_certified(node_modules):
    for name in ("main", "tor1", "cor-dao"):
        v = CHECKERS[name](node_modules["free"], node_modules["free"], 8)
        assert v.conclusion["status"] in (CERTIFIED, NOT_APPLICABLE)
        assert not v.red_alarm


def test_verdict_json_shape(node_modules):
    v = CHECKERS["main"](node_modules["rx"], node_modules["ry"], 8)
    rep = v.to_json()
    assert set(rep) == {"theorem", "hypotheses", "conclusion", "probes", "red_alarm"}
    for h in rep["hypotheses"]:
        assert h["status"] in ("holds", "fails", "verified_up_to")
    assert v.exit_code in (0, 2)


def test_no_red_alarm_small_sweep(node):
    rng = random.Random(42)
    for _ in range(5):
        M = random_module(node, rng)
        N = random_module(node, rng)
        for name, fn in CHECKERS.items():
            v = fn(M, N, 5)
            assert not v.red_alarm, (name, M.to_json(), N.to_json())


def test_direct_sum_pair(node_modules):
    MM = direct_sum(node_modules["rx"], node_modules["ry"])
    v = CHECKERS["main"](MM, node_modules["rx"], 8)
    assert not v.red_alarm
