import random

import pytest
from hypothesis import given, settings, strategies as st

from citor.modules import (
    ModuleMap,
    annihilator,
    direct_sum,
    dual,
    fitting_ideal,
    fp_module,
    free_module,
    module_from_json,
    random_module,
    tensor,
    zero_module,
)
from citor.polyalg import InvalidInput


def hvec(M, lo=0, hi=6):
    return M.hilbert.vector(lo, hi)


def test_module_json_round_trip(node, node_modules):
    for M in node_modules.values():
        again = module_from_json(node, M.to_json())
        assert again.key() == M.key()


def test_minimalize_preserves_hilbert(node, node_modules):
    for M in node_modules.values():
        P = M.minimalize()
        assert hvec(P) == hvec(M)


def test_direct_sum_hilbert_additive(node_modules):
    M, N = node_modules["rx"], node_modules["rx2"]
    S = direct_sum(M, N)
    assert hvec(S) == [a + b for a, b in zip(hvec(M), hvec(N))]


def test_tensor_symmetric_hilbert(node_modules):
    names = ["rx", "rx2", "ry", "k", "free"]
    for a in names:
        for b in names:
            assert hvec(tensor(node_modules[a], node_modules[b])) == hvec(
                tensor(node_modules[b], node_modules[a])
            )


def test_tensor_with_free_is_identity(node, node_modules):
    M = node_modules["rx"]
    assert hvec(tensor(M, free_module(node))) == hvec(M)


def test_zero_module(node):
    Z = zero_module(node)
    assert Z.is_zero() and Z.length() == 0


def test_dual_of_free(node):
    F = free_module(node, (0, -1))
    D = dual(F)
    assert sorted(D.minimalize().twists) == [0, 1]


def test_module_map_degree_validation(node):
    M = free_module(node)
    with pytest.raises(InvalidInput):
        # multiplication by x is not degree 0 from R to R
        ModuleMap(M, M, [{(0, (1, 0)): 1}])


def test_annihilator_of_fitting_ideal(node, node_modules):
    # Fitt_0(R/(x)) = (x) and (0 : (x)) = (y) over the node
    fitt = fitting_ideal(node_modules["rx"], 0)
    assert fitt.contains(node.ambient.parse("x").terms)
    ann = annihilator(fitt)
    assert ann.contains(node.ambient.parse("y").terms)
    assert not ann.contains(node.ambient.parse("x").terms)


def test_fitting_ideal_free(node):
    F = free_module(node, (0, 0))
    # Fitt_r(R^2) is 0 for r < 2 and R for r >= 2
    assert fitting_ideal(F, 2).is_unit()
    assert fitting_ideal(F, 1).gens_text() == []


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_random_module_well_formed(node, seed):
    rng = random.Random(seed)
    M = random_module(node, rng)
    assert len(M.twists) >= 1
    P = M.minimalize()
    assert hvec(P) == hvec(M)
    # interning: identical presentations share the object
    again = fp_module(node, M.twists, list(M.rels))
    assert again is M
