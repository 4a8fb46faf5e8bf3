from fractions import Fraction

import pytest

from rcsplit.ambient import (DivisorClass, b_search, b_sequence_gaps, certify_flag_curve,
                             conormal_in_ambient, construct, default_curve, flag_curve,
                             product_curve, recipe_b_sequence, tangent_splitting,
                             validate_along_curve, wps_curve, wps_monomials)
from rcsplit.bundles import SplittingType
from rcsplit.curves import canonical_rnc
from rcsplit.errors import (ContainmentError, HypothesisError, InvalidSequenceError,
                            RankDropError)
from rcsplit.exact import field

K = field(0)
F = field(32003)


def test_divisor_classes():
    D = DivisorClass([2, 3])
    curve = product_curve([1, 2], K)
    assert D.dot(curve) == 2 * 1 + 3 * 2
    assert (D - DivisorClass([1, 1])).multidegree == (1, 2)
    assert not (-D).is_positive
    assert DivisorClass([Fraction(5, 2)]).to_json() == ['5/2']


def test_catalog_shapes():
    P3 = construct('projective', 3, domain=K)
    assert (P3.dim, P3.codim, P3.anticanonical) == (3, 0, DivisorClass([4]))
    G24 = construct('grassmannian', 2, 4, domain=K)
    assert len(G24.equations) == 1
    assert G24.dim == 4 and G24.codim == 1
    assert G24.block_sizes == (6,)
    assert G24.anticanonical == DivisorClass([4])
    flag = construct('flag', (1, 2), 3, domain=K)
    assert flag.dim == 3
    assert len(flag.equations) == 1
    assert flag.equation_degrees == (DivisorClass([1, 1]),)
    assert flag.anticanonical == DivisorClass([2, 2])
    with pytest.raises(HypothesisError):
        construct('flag', (2, 1), 3, domain=K)


def test_weighted_projective_space():
    ambient = construct('wps', (1, 1, 1, 2), 2, domain=K)
    assert len(wps_monomials((1, 1, 1, 2), 2)) == 7
    assert ambient.block_sizes == (7,)
    assert ambient.dim == 3
    assert ambient.anticanonical == DivisorClass([Fraction(5, 2)])
    with pytest.raises(HypothesisError):
        construct('wps', (1, 1, 2), 3, domain=K)
    with pytest.raises(HypothesisError):
        construct('wps', (2, 2, 1), 2, domain=K)


def test_b_sequences():
    assert recipe_b_sequence((1, 1, 1, 2), 2) == (0, 1, 3, 6)
    assert b_sequence_gaps((1, 1, 1, 2), 2, (0, 1, 3, 6)) == [5]
    assert b_search((1, 1, 1, 2), 2) == (0, 1, 3, 5)
    assert b_search((1, 1, 1, 3), 3) == (0, 1, 3, 8)
    assert b_search((1, 1, 2), 2) is None
    with pytest.raises(InvalidSequenceError) as info:
        wps_curve((1, 1, 1, 2), 2, (0, 1, 3, 6), K)
    assert info.value.context['ell'] == 5


def test_containment_and_smoothness():
    G24 = construct('grassmannian', 2, 4, domain=K)
    curve = flag_curve([2], 4, K)
    certificate = validate_along_curve(G24, curve)
    assert certificate.smooth_along_curve and certificate.jacobian_rank == 1
    P5 = construct('projective', 5, domain=K)
    cut = P5.augmented([P5.ring.gens[0] ** 2])
    with pytest.raises(ContainmentError):
        validate_along_curve(cut, canonical_rnc(5, 5, K))
    x = P5.ring.gens
    singular = P5.augmented([x[0] * x[2] - x[1] ** 2, 2 * (x[0] * x[2] - x[1] ** 2)])
    with pytest.raises(RankDropError):
        validate_along_curve(singular, canonical_rnc(5, 5, K))


def test_tangent_and_normal_in_projective_space():
    P3 = construct('projective', 3, domain=K)
    cubic = canonical_rnc(3, 3, K)
    assert tangent_splitting(P3, cubic) == SplittingType([4, 4, 4])
    assert conormal_in_ambient(P3, cubic).normal == SplittingType([5, 5])


def test_product_of_lines():
    ambient = construct('product', (1, 1), domain=K)
    diagonal = default_curve(ambient)
    assert tangent_splitting(ambient, diagonal) == SplittingType([2, 2])
    assert conormal_in_ambient(ambient, diagonal).normal == SplittingType([2])


def test_grassmannian_curve():
    certificate = certify_flag_curve([2], 4, K)
    assert certificate['h_degree'] == 4
    assert certificate['span_dimension'] == 5
    assert certificate['linearly_normal']
    assert certificate['subbundle'] == SplittingType([-2, -2])
    G24 = construct('grassmannian', 2, 4, domain=F)
    curve = flag_curve([2], 4, F)
    assert tangent_splitting(G24, curve) == SplittingType([3, 3, 5, 5])
    normal = conormal_in_ambient(G24, curve).normal
    assert normal.rank == 3 and normal.degree == 14


def test_flag_curve_degrees():
    certificate = certify_flag_curve([1, 2], 3, K)
    assert certificate['factor_degrees'] == [2, 2]
    ambient = construct('flag', (1, 2), 3, domain=K)
    tangent = tangent_splitting(ambient, certificate['curve'])
    assert tangent.rank == 3 and tangent.degree == 8
    assert tangent.is_ample


def test_weighted_curve():
    ambient = construct('wps', (1, 1, 1, 2), 2, domain=F)
    curve = default_curve(ambient)
    assert curve.h_degree == 6
    tangent = tangent_splitting(ambient, curve)
    assert tangent.rank == 3 and tangent.degree == 15
