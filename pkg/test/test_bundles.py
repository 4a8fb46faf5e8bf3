import pytest

from rcsplit.bundles import (BundleMap, SplittingType, cokernel_model, factor_through,
                             fiberwise_certificate, generic_kernel_splitting, kernel_model,
                             phi_witness, require_fiberwise_surjective, sections_matrix,
                             GenericKernelAlgorithm)
from rcsplit.errors import DegreeMismatchError, HypothesisError, NotSurjectiveError
from rcsplit.exact import BinForm, field
from rcsplit.montecarlo import dominant_splitting, trial_seeds

K = field(0)
F = field(32003)
s = BinForm.monomial(1, 0, K)
t = BinForm.monomial(0, 1, K)
one = BinForm.constant(K.one, K)


def test_splitting_type():
    E = SplittingType([3, -1, 0])
    assert E.summands == (-1, 0, 3)
    assert E.rank == 3 and E.degree == 2
    assert E.h0() == 1 + 4
    assert E.h0(-2) == 2
    assert E.h1() == 0
    assert E.h1(-1) == 1
    assert E.dual() == SplittingType([-3, 0, 1])
    assert E.twist(1) == SplittingType([0, 1, 4])
    assert SplittingType.from_h0(E.h0, 3) == E
    assert str(E) == '[-1,0,3]'
    assert SplittingType([0, 2]).render() == 'O(0) ⊕ O(2)'


def test_predicates_and_dominance():
    assert SplittingType([1, 1]).dominated_by(SplittingType([0, 2]))
    assert not SplittingType([0, 2]).dominated_by(SplittingType([1, 1]))
    assert SplittingType([1, 2]).is_ample
    assert not SplittingType([0, 2]).is_ample
    assert SplittingType([0, 2]).is_globally_generated
    assert not SplittingType([0, 2]).is_balanced
    assert dominant_splitting([SplittingType([0, 2]), SplittingType([1, 1])]) == SplittingType([1, 1])


def test_trial_seeds_are_reproducible():
    assert trial_seeds(7, 4) == trial_seeds(7, 4)
    assert trial_seeds(7, 4) != trial_seeds(8, 4)


def test_bundle_map_checks_degrees():
    with pytest.raises(DegreeMismatchError):
        BundleMap([0, 0], [1], [[s, s * t]], K)
    euler = BundleMap([0, 0], [1], [[s, t]], K)
    assert euler.generic_rank() == 1
    assert euler.transpose().shape == (2, 1)
    assert BundleMap.identity([1], K).compose(euler) == euler


def test_kernel_of_euler_map():
    euler = BundleMap([0, 0], [1], [[s, t]], K)
    model = kernel_model(euler)
    assert model.splitting == SplittingType([-1])
    certificate = model.certify(euler)
    assert certificate['fiberwise_injective']
    assert certificate['annihilated']


def test_cokernel_and_factorization():
    inclusion = BundleMap([-1], [0, 0], [[s], [t]], K)
    quotient_type, quotient = cokernel_model(inclusion)
    assert quotient_type == SplittingType([1])
    assert fiberwise_certificate(quotient)['full_rank']
    euler = BundleMap([0, 0], [1], [[s, t]], K)
    M = BundleMap([0, 0], [2], [[s ** 2, s * t]], K)
    assert factor_through(euler, M).entries == ((s,),)


def test_fiberwise_certificate_reports_points():
    bad = BundleMap([0, 0], [2], [[s ** 2, s * t]], K)
    certificate = fiberwise_certificate(bad)
    assert not certificate['full_rank']
    assert certificate['points'] == ['(0:1)']
    with pytest.raises(NotSurjectiveError):
        require_fiberwise_surjective(bad)


def test_generic_kernels():
    assert generic_kernel_splitting([0, 2, 2], [2]) == SplittingType([0, 2])
    assert generic_kernel_splitting([1, 1, 1], [3], domain=F) == SplittingType([0, 0])
    algorithm = GenericKernelAlgorithm([1, 1, 1], [3], F, trials=3, seed=1)
    algorithm.compute_splitting()
    assert len(algorithm.getSamples()) + algorithm.getDegenerateNumber() == 3


def test_phi_witness():
    witness = phi_witness(SplittingType([0, 1, 2]), 3, K)
    assert witness.entries[0][0].is_zero
    assert witness.entries[0][1] == s ** 2
    assert witness.entries[0][2] == t
    assert require_fiberwise_surjective(witness)['full_rank']
    assert kernel_model(witness).splitting == SplittingType([0, 0])
    with pytest.raises(HypothesisError):
        phi_witness(SplittingType([4, 1]), 3, K)


def test_generic_kernels_of_balanced_maps():
    assert generic_kernel_splitting([1, 1, 1], [2], domain=F) == SplittingType([0, 1])
    assert generic_kernel_splitting([6, 6, 6], [12], domain=F) == SplittingType([3, 3])


def test_sections_matrix_of_the_twisted_cubic():
    row = BundleMap([-3] * 4, [0], [[s ** 3, s ** 2 * t, s * t ** 2, t ** 3]], K)
    matrix = sections_matrix(row, 4)
    assert matrix.shape == (5, 8)
    assert matrix.shape[1] - matrix.rank() == 3
    assert sections_matrix(row, 2).shape == (3, 0)
    assert sections_matrix(BundleMap([0], [1], [[s]], K), 0).to_Matrix().tolist() == [[1], [0]]


def test_rank_of_degenerate_maps_over_prime_fields():
    for p in (3, 5, 32003):
        Fp = field(p)
        x, y = BinForm.monomial(1, 0, Fp), BinForm.monomial(0, 1, Fp)
        coordinates = [x ** 3, x ** 2 * y, x * y ** 2, y ** 3]
        stacked = BundleMap([-3] * 4, [0, -1, -1],
                            [coordinates, [f.partial_s() for f in coordinates],
                             [f.partial_t() for f in coordinates]], Fp)
        assert stacked.exact_rank() == 2
        assert stacked.generic_rank(seed=p) == 2
        assert kernel_model(stacked).splitting.rank == 2


def test_cokernel_ignores_redundant_columns():
    x, y = BinForm.monomial(1, 0, F), BinForm.monomial(0, 1, F)
    minimal = BundleMap([-1], [0, 0], [[x], [y]], F)
    redundant = BundleMap([-1, -1, -1], [0, 0], [[x, 2 * x, -x], [y, 2 * y, -y]], F)
    minimal_type, _ = cokernel_model(minimal)
    redundant_type, quotient = cokernel_model(redundant)
    assert redundant_type == minimal_type == SplittingType([1])
    assert all(entry.is_zero for row in quotient.compose(redundant).entries for entry in row)
    assert fiberwise_certificate(quotient)['full_rank']
