import pytest

from ternaryforms.counting import rep_count
from ternaryforms.forms import (
    FormError,
    TernaryForm,
    apply_map,
    discriminant,
    to_convenient_shape_1,
)
from ternaryforms.genus import build_tg2, enumerate_tg1
from ternaryforms.isometry import automorphs, equivalent
from ternaryforms.watson import (
    lambda_lattice,
    lambda_m,
    phi,
    phi_inverse,
    transport_automorph,
)

PRIMES = [3, 5, 7, 11, 13]


def test_phi_is_a_coefficient_map_on_shape_1():
    shape1, _ = to_convenient_shape_1(TernaryForm(1, 1, 3, 0, 0, 1))
    a, b, c, d, e, f = shape1.coeffs
    image = phi(shape1, reduce=False)
    assert image == TernaryForm(a, 4 * b, 4 * c, 4 * d, 2 * e, 2 * f)


def test_phi_requires_odd_discriminant():
    with pytest.raises(FormError):
        phi(TernaryForm(1, 1, 1, 0, 0, 0))


@pytest.mark.parametrize("p", PRIMES)
def test_phi_scales_discriminant_by_sixteen(p):
    for form, _ in enumerate_tg1(p).classes:
        assert discriminant(phi(form)) == 16 * discriminant(form)


@pytest.mark.parametrize("p", PRIMES)
def test_phi_inverse_round_trip(p):
    tg1 = enumerate_tg1(p)
    tg2 = build_tg2(tg1)
    for form, _ in tg1.classes:
        assert phi_inverse(phi(form)) == form
    for form, _ in tg2.classes:
        assert phi(phi_inverse(form)) == form


@pytest.mark.parametrize("p", PRIMES)
def test_lambda_4_equals_phi(p):
    for form, _ in enumerate_tg1(p).classes:
        assert lambda_m(form, 4) == phi(form)
        assert lambda_m(lambda_m(form, 4), 4) == form


def test_lambda_lattice_structure():
    form = TernaryForm(1, 1, 3, 0, 0, 1)
    lat = lambda_lattice(form, 4)
    assert lat.modulus == 4
    g = form.gram()
    cols = [tuple(lat.basis[i][j] for i in range(3)) for j in range(3)]
    for v in cols:
        assert form(*v) % 4 == 0
        assert all(sum(g[i][k] * v[k] for k in range(3)) % 4 == 0 for i in range(3))


def test_lambda_rejects_bad_modulus():
    with pytest.raises(FormError):
        lambda_m(TernaryForm(1, 1, 1, 0, 0, 0), 1)


def test_rep_scaling_under_phi():
    for p in (3, 5, 11):
        for form, _ in enumerate_tg1(p).classes:
            image = phi(form)
            for n in range(1, 80):
                assert rep_count(form, n) == rep_count(image, 4 * n), (form, n)
            for n in range(1, 80):
                if n % 4 in (1, 2):
                    assert rep_count(image, n) == 0


def test_transport_automorph_bijection():
    form = TernaryForm(3, 4, 4, 3, 2, -2)  # TG1(11) class with |Aut| = 12
    image = phi(form)
    pre = automorphs(form)
    img = automorphs(image)
    transported = {transport_automorph(form, image, 4, r) for r in pre.elements}
    assert transported == set(img.elements)


def test_transport_rejects_non_automorph():
    form = TernaryForm(3, 4, 4, 3, 2, -2)
    image = phi(form)
    shear = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    with pytest.raises(FormError):
        transport_automorph(form, image, 4, shear)


def test_transport_respects_composition():
    form = TernaryForm(2, 2, 2, 1, 1, -1)
    image = phi(form)
    from ternaryforms.matrices import mat_mul

    elems = automorphs(form).elements
    tmap = {r: transport_automorph(form, image, 4, r) for r in elems}
    for r1 in elems:
        for r2 in elems:
            assert tmap[mat_mul(r1, r2)] == mat_mul(tmap[r1], tmap[r2])


def test_lambda_9_on_nine_divisible_form():
    # x^2 + y^2 + z^2 restricted to 3 * Z^3 and rescaled by 9 returns itself.
    form = TernaryForm(9, 9, 9, 0, 0, 0)
    out = lambda_m(form, 9)
    assert out == TernaryForm(1, 1, 1, 0, 0, 0)
