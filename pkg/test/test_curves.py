import pytest

from rcsplit.bundles import SplittingType, kernel_model
from rcsplit.curves import (CurveMap, canonical_rnc, charp_curve, conormal_Pn,
                            cotangent_differential, euler_cotangent_model, explicit_conormal_basis,
                            require_valid, rnc_conormal_prediction, validate_curve)
from rcsplit.errors import CurveValidationError, DegreeMismatchError
from rcsplit.exact import BinForm, field

K = field(0)
s = BinForm.monomial(1, 0, K)
t = BinForm.monomial(0, 1, K)

cubic = canonical_rnc(3, 3, K)


def test_canonical_rnc():
    assert cubic.label == 'rnc:3,3'
    assert cubic.degrees == (3,)
    assert cubic.coordinate_degrees == (-3, -3, -3, -3)
    assert canonical_rnc(2, 4, K).coordinates[3].is_zero
    with pytest.raises(CurveValidationError):
        canonical_rnc(4, 3, K)
    with pytest.raises(DegreeMismatchError):
        CurveMap([[s, t ** 2]], K)


def test_curve_json():
    curve = canonical_rnc(2, 3, K)
    assert CurveMap.from_json(curve.to_json(), K) == curve


def test_validation():
    assert validate_curve(cubic).valid
    double_cover = CurveMap([[s ** 2, t ** 2]], K)
    certificate = validate_curve(double_cover)
    assert certificate.basepoint_free
    assert not certificate.immersion
    assert sorted(certificate.ramification_points) == ['(0:1)', '(1:0)']
    with pytest.raises(CurveValidationError):
        require_valid(double_cover)
    require_valid(double_cover, immersion=False)
    with pytest.raises(CurveValidationError):
        require_valid(CurveMap([[s ** 2, s * t]], K))


def test_restricted_cotangent():
    assert euler_cotangent_model(cubic).splitting == SplittingType([-4, -4, -4])


def test_rnc_conormal():
    for e, n in ((3, 3), (3, 5), (4, 4)):
        curve = canonical_rnc(e, n, K)
        model = conormal_Pn(curve)
        assert model.splitting == rnc_conormal_prediction(e, n)
        for name, twist, sections in explicit_conormal_basis(e, n, K):
            model.express(sections, twist)
    assert rnc_conormal_prediction(3, 5) == SplittingType([-5, -5, -3, -3])


def test_conormal_is_kernel_of_differential():
    differential = cotangent_differential(cubic)
    assert differential.target == (-2,)
    assert kernel_model(differential).splitting == conormal_Pn(cubic).splitting


def test_charp_curve_is_an_immersion():
    curve = charp_curve(3)
    assert curve.domain.characteristic() == 3
    assert curve.degrees == (4,)
    assert validate_curve(curve).valid


def test_rnc_conormal_over_prime_fields():
    for p in (7, 32003):
        Fp = field(p)
        for e, n in ((3, 3), (4, 4)):
            assert conormal_Pn(canonical_rnc(e, n, Fp)).splitting == rnc_conormal_prediction(e, n)
