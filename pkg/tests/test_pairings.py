from fractions import Fraction

import pytest

from citor.homres import residue_field
from citor.modules import free_module
from citor.pairings import (
    NotHypersurface,
    PairingResult,
    default_bound,
    eta,
    theta,
)


def test_theta_node_values(node_modules):
    assert theta(node_modules["rx"], node_modules["rx2"]).value == Fraction(-1)
    assert theta(node_modules["rx"], node_modules["rx"]).value == Fraction(-1)
    assert theta(node_modules["ry_m1"], node_modules["rx"]).value == Fraction(1)


def test_theta_of_free_vanishes(node, node_modules):
    assert theta(free_module(node), node_modules["rx"]).value == 0


def test_theta_additivity(node_modules):
    """theta is additive along 0 -> R/(y)(-1) -> R -> R/(x) -> 0."""
    for n in ("rx", "rx2"):
        N = node_modules[n]
        total = (
            theta(node_modules["ry_m1"], N).value
            + theta(node_modules["rx"], N).value
            - theta(node_modules["free"], N).value
        )
        assert total == 0


def test_theta_requires_hypersurface(dim0, dim0_modules):
    with pytest.raises(NotHypersurface):
        theta(dim0_modules["k"], dim0_modules["k"])


def test_eta1_is_half_theta(node_modules):
    pairs = [("rx", "rx2"), ("rx", "ry"), ("rx", "rx"), ("ry_m1", "rx")]
    for a, b in pairs:
        t = theta(node_modules[a], node_modules[b])
        e = eta(node_modules[a], node_modules[b], 1)
        assert not e.divergent
        assert e.value == t.value / 2


def test_eta_above_codim_vanishes(node_modules):
    # node is a hypersurface: eta_e = 0 for e = 2 > codim
    for a, b in [("rx", "rx2"), ("rx", "ry")]:
        e = eta(node_modules[a], node_modules[b], 2)
        assert e.value == 0


def test_eta2_kk_dim0(dim0):
    k = residue_field(dim0)
    e = eta(k, k, 2)
    assert e.value == 0 and not e.divergent


def test_eta1_kk_dim0_divergent(dim0):
    k = residue_field(dim0)
    e = eta(k, k, 1)
    assert e.divergent


def test_pairing_json_rationals(node_modules):
    rep = eta(node_modules["rx"], node_modules["rx2"], 1).to_json()
    assert rep["value"] == {"num": "-1", "den": "2"}
    assert rep["status"] == "ok"


def test_default_bound(node, dim0):
    assert default_bound(node) == node.dim + 2 * node.rel_codim + 10
    assert default_bound(dim0) == dim0.dim + 2 * dim0.rel_codim + 10


def test_theta_deterministic(node_modules):
    a = theta(node_modules["rx"], node_modules["rx2"]).to_json()
    b = theta(node_modules["rx"], node_modules["rx2"]).to_json()
    assert a == b
