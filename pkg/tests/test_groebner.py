from hypothesis import given, settings, strategies as st

from citor.groebner import (
    FreeModule,
    buchberger,
    mono_ideal_dimension,
    mono_ideal_length,
    normal_form,
    vec_from_poly,
)
from citor.polyalg import PolyRing

R = PolyRing(101, ["x", "y", "z"])
F = FreeModule(R, (0,))


def _ideal_gb(texts):
    gens = [vec_from_poly(R.parse(t).terms) for t in texts]
    return buchberger(F, gens)


def test_membership_via_normal_form():
    gb = _ideal_gb(["x^2-y*z", "x*y-z^2"])
    # x^2*y - y^2*z = y*(x^2 - y*z) is in the ideal
    v = vec_from_poly(R.parse("x^2*y-y^2*z").terms)
    assert normal_form(F, v, gb) == {}
    w = vec_from_poly(R.parse("x^2").terms)
    assert normal_form(F, w, gb) != {}


def test_normal_form_idempotent():
    gb = _ideal_gb(["x^2", "x*y+z^2"])
    v = vec_from_poly(R.parse("x^2*y+x*z+y^3").terms)
    nf = normal_form(F, v, gb)
    assert normal_form(F, nf, gb) == nf


@given(st.lists(st.sampled_from(["x^2", "x*y", "y^2-x*z", "z^3", "x+y"]), min_size=1, max_size=3))
@settings(max_examples=25, deadline=None)
def test_gb_reduces_own_generators(texts):
    gens = [vec_from_poly(R.parse(t).terms) for t in texts]
    gb = buchberger(F, gens)
    for g in gens:
        assert normal_form(F, g, gb) == {}


def test_mono_ideal_dimension():
    assert mono_ideal_dimension(R, [(2, 0, 0), (0, 2, 0)]) == 1
    assert mono_ideal_dimension(R, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 0
    assert mono_ideal_dimension(R, []) == 3


def test_mono_ideal_length():
    # k[x,y,z]/(x,y,z^2) has length 2
    assert mono_ideal_length(R, [(1, 0, 0), (0, 1, 0), (0, 0, 2)]) == 2
    assert mono_ideal_length(R, [(2, 0, 0)]) is None


def test_hilbert_data_node(node):
    from citor.modules import free_module

    h = free_module(node).hilbert
    # node: 1 in degree 0, then 2 standard monomials per degree
    assert [h.value(d) for d in range(5)] == [1, 2, 2, 2, 2]
    assert h.dimension == 1
