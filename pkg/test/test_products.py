import pytest

from rcsplit.bundles import SplittingType
from rcsplit.curves import canonical_rnc
from rcsplit.errors import HypothesisError
from rcsplit.exact import BinForm, field
from rcsplit.products import (FactorProfile, characteristic_condition, charp_demo,
                              charp_image_dimension, charp_monomial_image_dimension, d0,
                              factor_image, predicted_normal, product_formula, twisted_product,
                              verify_product_theorem, wronskian)

K = field(0)
F = field(32003)
cubic = canonical_rnc(3, 3, F)


def test_twisted_product():
    product = twisted_product([cubic, cubic], seed=1)
    assert product.block_sizes == (4, 4)
    assert product.degrees == (3, 3)
    assert product.blocks[0] == cubic.blocks[0]
    with pytest.raises(HypothesisError):
        twisted_product([cubic, cubic], [((1, 1), (1, 1))])


def test_factor_profiles():
    profile = FactorProfile.of_curve(cubic)
    assert profile.cotangent == SplittingType([-4, -4, -4])
    assert profile.conormal == SplittingType([-5, -5])
    with pytest.raises(HypothesisError):
        FactorProfile([-4, -4, -4], [-5, -6])


def test_product_formula():
    profiles = [FactorProfile.of_curve(cubic)] * 2
    assert [product_formula(profiles, d) for d in (3, 4, 5, 6)] == [0, 3, 8, 13]
    assert predicted_normal(profiles) == SplittingType([4, 4, 4, 5, 5])
    example = FactorProfile.from_normal([5, 5, 6], [6, 8])
    assert predicted_normal([example, example]) == SplittingType([6] * 5)


def test_images_of_the_differential():
    assert factor_image(cubic, 3).v == 0
    assert factor_image(cubic, 4).full
    assert d0([cubic]) == 4
    assert characteristic_condition([canonical_rnc(3, 3, K)])['holds']


def test_wronskian():
    s2, st, t2 = (BinForm.monomial(2 - i, i, K) for i in range(3))
    assert not wronskian([s2, st, t2]).is_zero
    F2 = field(2)
    assert wronskian([BinForm.monomial(2, 0, F2), BinForm.monomial(0, 2, F2)]).is_zero


def test_product_theorem_for_twisted_cubics():
    report = verify_product_theorem([cubic, cubic], (2, 6), trials=3, seed=0)
    assert report['pass']
    assert report['one_sided']
    assert report['normal'] == [4, 4, 4, 5, 5]
    assert report['predicted_normal'] == [4, 4, 4, 5, 5]


def test_charp_image_dimensions():
    assert [charp_monomial_image_dimension(3, d) for d in range(2, 9)] == [0, 0, 0, 2, 5, 6, 7]
    assert [charp_image_dimension(3, d) for d in range(2, 9)] == [0, 0, 0, 2, 4, 6, 7]
    assert charp_monomial_image_dimension(5, 10) == charp_image_dimension(5, 10) + 1


def test_charp_counterexample():
    report = charp_demo(3, samples=2, seed=0)
    assert report['cotangent'] == [-6, -5, -5]
    assert {d: v['computed'] for d, v in report['images'].items()} == \
        {'2': 0, '3': 0, '4': 0, '5': 2, '6': 5, '7': 6, '8': 7}
    assert report['images_match_monomials']
    assert not report['images_match']
    assert report['observed'] == [[-7, -7, -6, -5, -5]] * 2
    assert report['consistent']
    assert not report['all_expected']
    assert report['formula_conormal'] == [-6] * 5
    assert report['formula_mismatch']
    assert len(report['discrepancies']) == 2
