import pytest

from citor.constructions import (
    NotTorsionFree,
    pushforward,
    pushforward_chain,
    quasi_lifting,
    restrict_to_stage,
)
from citor.homres import depth, is_torsion_free, serre_check, tor
from citor.pairings import eta


def test_pushforward_rx(node_modules):
    pf = pushforward(node_modules["rx"])
    assert pf.nu == 1
    assert pf.certificate["injective"]
    # cokernel is R/(y) twisted by -1
    assert pf.M1.twists == (-1,)


def test_pushforward_rejects_torsion(node_modules):
    with pytest.raises(NotTorsionFree):
        pushforward(node_modules["rx2"])


def test_pushforward_chain_alternates(node, node_modules):
    chain = pushforward_chain(node_modules["rx"], 4)
    rels = [M.minimalize().to_json()["relations"] for M in chain]
    assert rels == [[["x"]], [["y"]], [["x"]], [["y"]], [["x"]]]
    twists = [M.minimalize().twists for M in chain]
    assert twists == [(0,), (-1,), (-2,), (-3,), (-4,)]


def test_pushforward_duality(node, node_modules, dim0, dim0_modules):
    """(S_{n+1})(M) <=> (S_n)(M1), and MCM(M) => M1 zero or MCM."""
    for ring, mods in ((node, node_modules), (dim0, dim0_modules)):
        for M in mods.values():
            if M.is_zero() or not is_torsion_free(M):
                continue
            pf = pushforward(M)
            M1 = pf.M1
            for n in range(1, 4):
                if M1.is_zero():
                    break
                assert serre_check(M, n + 1)["holds"] == serre_check(M1, n)["holds"]
            if depth(M) == ring.dim:  # M is MCM
                assert M1.is_zero() or depth(M1) == ring.dim


def test_quasi_lifting_rx(node, node_modules):
    ql = quasi_lifting(node_modules["rx"])
    assert list(ql.stage.relations) == []  # lower stage is the polynomial ring
    assert ql.dropped_relation == "x*y"
    # the quasi-lifting of R/(x) is free over k[x,y]
    assert list(ql.E.minimalize().rels) == []
    assert ql.nu == 1


def test_quasi_lifting_identity(node, node_modules):
    """eta_1^S(E, F) = 4 * eta_2^R(M, N) on node pairs (both sides zero)."""
    pairs = [("rx", "ry"), ("rx", "ry_m1"), ("ry", "free")]
    for a, b in pairs:
        M, N = node_modules[a], node_modules[b]
        qm, qn = quasi_lifting(M), quasi_lifting(N)
        lhs = eta(qm.E, qn.E, 1, bound=10)
        rhs = eta(M, N, 2)
        assert not lhs.divergent and not rhs.divergent
        assert lhs.value == 4 * rhs.value == 0


def test_change_of_rings_tor(node, node_modules):
    """Tor^S_i(E, F) matches Tor^S_i(M, N) for i >= 2 (per-degree dims)."""
    M, N = node_modules["rx"], node_modules["ry"]
    qm, qn = quasi_lifting(M), quasi_lifting(N)
    S = qm.stage
    MS, NS = restrict_to_stage(M, S), restrict_to_stage(N, S)
    for i in range(2, 7):
        lhs = tor(qm.E, qn.E, i).hilbert.vector(0, 8)
        rhs = tor(MS, NS, i).hilbert.vector(0, 8)
        assert lhs == rhs


def test_restrict_to_stage_hilbert(node, node_modules):
    S = node.tower()[-2]
    M = node_modules["rx"]
    MS = restrict_to_stage(M, S)
    assert MS.hilbert.vector(0, 6) == M.hilbert.vector(0, 6)
