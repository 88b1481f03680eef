import pytest

from citor.rings import (
    InhomogeneousRelation,
    NotRegularSequence,
    make_ci_ring,
    ring_from_json,
)


def test_node_invariants(node):
    assert node.dim == 1
    assert node.rel_codim == 1
    assert node.is_hypersurface
    assert len(node.min_primes) == 2


def test_dim0_invariants(dim0):
    assert dim0.dim == 0
    assert dim0.rel_codim == 2
    assert not dim0.is_hypersurface


def test_tower(dim0):
    tower = dim0.tower()
    # polynomial ring, one hypersurface stage, then the full quotient
    assert len(tower) == 3
    assert [len(s.relations) for s in tower] == [0, 1, 2]
    assert tower[0].dim == 2 and tower[-1] is not None


def test_non_regular_sequence_rejected():
    with pytest.raises(NotRegularSequence):
        make_ci_ring(101, [("x", 1), ("y", 1)], ["x*y", "x^2*y"])


def test_inhomogeneous_relation_rejected():
    with pytest.raises(InhomogeneousRelation):
        make_ci_ring(101, [("x", 1), ("y", 1)], ["x^2+y"])


def test_ring_json_round_trip(node):
    again = ring_from_json(node.to_json())
    assert again.key() == node.key()
    assert ring_from_json(again.to_json()).to_json() == again.to_json()


def test_gorenstein_probe(node, dim0):
    """Ext^i(k, R) vanishes below dim R and has length 1 at i = dim R."""
    from citor.homres import ext, residue_field
    from citor.modules import free_module

    for ring in (node, dim0):
        k = residue_field(ring)
        R1 = free_module(ring)
        for i in range(ring.dim):
            assert ext(k, R1, i).is_zero()
        assert ext(k, R1, ring.dim).length() == 1
