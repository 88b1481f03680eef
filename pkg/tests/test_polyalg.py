import pytest
from hypothesis import given, settings, strategies as st

from citor.polyalg import InvalidInput, PolyRing

R = PolyRing(101, ["x", "y"])


def rand_poly(draw):
    nterms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(nterms):
        m = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
        c = draw(st.integers(1, 100))
        terms[m] = c
    return R.from_terms(terms)


polys = st.composite(lambda draw: rand_poly(draw))()


def test_parse_and_text_round_trip():
    for text in ("x^2+3*y", "x*y", "5", "x^3+100*x*y^2+7"):
        f = R.parse(text)
        assert R.parse(f.text(pretty=False)) == f


def test_parse_rejects_garbage():
    for bad in ("x+", "z", "x^", "(", "x**2"):
        with pytest.raises(InvalidInput):
            R.parse(bad)


def test_prime_field_required():
    with pytest.raises(InvalidInput):
        PolyRing(10, ["x"])


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_add_commutative(f, g):
    assert f + g == g + f


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_mul_distributes(f, g, h):
    assert f * (g + h) == f * g + f * h


@given(polys, polys, polys)
@settings(max_examples=40, deadline=None)
def test_mul_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


@given(polys)
@settings(max_examples=40, deadline=None)
def test_additive_inverse(f):
    assert (f - f).is_zero()


@given(polys)
@settings(max_examples=40, deadline=None)
def test_text_round_trip_random(f):
    if f.is_zero():
        assert f.text(pretty=False) == "0"
    else:
        assert R.parse(f.text(pretty=False)) == f


def test_graded_degree():
    f = R.parse("x^2+x*y")
    assert f.is_homogeneous() and f.degree() == 2
    assert not R.parse("x^2+y").is_homogeneous()


def test_weighted_grading():
    W = PolyRing(101, ["u", "v"], weights=[1, 2])
    assert W.parse("u^2+v").is_homogeneous()
    assert W.parse("u^2+v").degree() == 2
