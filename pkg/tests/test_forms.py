import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternaryforms.forms import (
    FormError,
    TernaryForm,
    apply_map,
    content,
    discriminant,
    is_positive_definite,
    is_primitive,
    to_convenient_shape_1,
    to_convenient_shape_2,
    _is_shape1,
    _is_shape2,
)
from ternaryforms.matrices import IDENTITY

H1 = TernaryForm(31, 5, 11, 1, -14, 6)


def test_parse_round_trip():
    f = TernaryForm.parse("31,5,11,1,-14,6")
    assert f == H1
    assert TernaryForm.parse(str(f)) == f


def test_parse_wrong_count():
    with pytest.raises(FormError, match="6"):
        TernaryForm.parse("1,2,3")


def test_parse_names_bad_coefficient():
    with pytest.raises(FormError, match="coefficient c"):
        TernaryForm.parse("1,2,x,4,5,6")


def test_gram_round_trip():
    g = H1.gram()
    assert g == ((62, 6, -14), (6, 10, 1), (-14, 1, 22))
    assert TernaryForm.from_gram(g) == H1


def test_from_gram_rejects_odd_diagonal():
    with pytest.raises(FormError):
        TernaryForm.from_gram(((1, 0, 0), (0, 2, 0), (0, 0, 2)))


def test_from_gram_rejects_asymmetric():
    with pytest.raises(FormError):
        TernaryForm.from_gram(((2, 1, 0), (0, 2, 0), (0, 0, 2)))


def test_discriminant_values():
    assert discriminant(TernaryForm(1, 1, 1, 0, 0, 0)) == 4
    assert discriminant(TernaryForm(1, 1, 3, 0, 0, 1)) == 9
    assert discriminant(TernaryForm(4, 3, 4, 0, 4, 0)) == 144
    assert discriminant(H1) == 73 * 73


def test_evaluate():
    f = TernaryForm(1, 2, 3, 4, 5, 6)
    x, y, z = 2, -1, 3
    assert f(x, y, z) == x * x + 2 * y * y + 3 * z * z + 4 * y * z + 5 * z * x + 6 * x * y


def test_positive_definite():
    assert is_positive_definite(H1)
    assert not is_positive_definite(TernaryForm(-1, 1, 1, 0, 0, 0))
    assert not is_positive_definite(TernaryForm(1, 1, -1, 0, 0, 0))
    assert not is_positive_definite(TernaryForm(-1, 0, 0, 1, 0, 0))


def test_content_and_primitive():
    assert is_primitive(H1)
    assert content(TernaryForm(2, 4, 6, 8, 10, 12)) == 2
    assert not is_primitive(TernaryForm(2, 4, 6, 8, 10, 12))


def test_apply_map_rejects_non_unimodular():
    with pytest.raises(FormError):
        apply_map(H1, ((2, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_apply_map_identity():
    assert apply_map(H1, IDENTITY) == H1


small = st.integers(-3, 3)


@given(small, small, small, small, small, small)
@settings(max_examples=200, deadline=None)
def test_apply_shear_preserves_discriminant(p, q, r, s, t, u):
    m = ((1, p, q), (0, 1, r), (0, 0, 1))
    f = TernaryForm(3 + abs(s), 4 + abs(t), 5 + abs(u), 1, -1, 2)
    assert discriminant(apply_map(f, m)) == discriminant(f)


TG1_SAMPLE = [
    TernaryForm(1, 1, 3, 0, 0, 1),
    TernaryForm(2, 2, 2, 1, 1, -1),
    TernaryForm(1, 2, 7, 0, 0, 1),
    TernaryForm(1, 3, 11, 0, 0, 1),
    TernaryForm(3, 4, 4, 3, 2, -2),
    H1,
]


@pytest.mark.parametrize("form", TG1_SAMPLE, ids=str)
def test_shape1_conversion(form):
    out, u = to_convenient_shape_1(form)
    assert _is_shape1(out)
    assert apply_map(form, u) == out
    assert (out.a + discriminant(form)) % 4 == 0


def test_shape1_requires_odd_discriminant():
    with pytest.raises(FormError):
        to_convenient_shape_1(TernaryForm(1, 1, 1, 0, 0, 0))


TG2_SAMPLE = [
    TernaryForm(3, 4, 4, 4, 0, 0),
    TernaryForm(3, 7, 7, 6, 2, -2),
    TernaryForm(4, 7, 8, 0, 4, 0),
    TernaryForm(11, 28, 80, 28, 4, 8),
]


@pytest.mark.parametrize("form", TG2_SAMPLE, ids=str)
def test_shape2_conversion(form):
    out, u = to_convenient_shape_2(form)
    assert _is_shape2(out)
    assert apply_map(form, u) == out


def test_shape2_rejects_wrong_discriminant():
    with pytest.raises(FormError):
        to_convenient_shape_2(TernaryForm(1, 1, 3, 0, 0, 1))


def test_shape2_rejects_odd_cross_terms():
    # discriminant 48 = 16 * 3, but f is odd
    f = TernaryForm(1, 1, 16, 0, 0, -1)
    assert discriminant(f) == 48
    with pytest.raises(FormError, match="even"):
        to_convenient_shape_2(f)
