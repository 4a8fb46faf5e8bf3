import numpy as np
import pytest

from rcsplit.ambient import conormal_in_ambient, construct, flag_curve
from rcsplit.bundles import SplittingType
from rcsplit.ci import (construct_from_surjection, degree_bound, generic_ci_splitting,
                        ideal_sections, nstar_surjective, quadric, random_surjection,
                        rathmann_check, restriction_surjectivity_check, schubert_gate,
                        src_certificate, sum_surjectivity_check)
from rcsplit.curves import canonical_rnc
from rcsplit.errors import HypothesisError
from rcsplit.exact import field

K = field(0)
F = field(32003)

P3 = construct('projective', 3, domain=K)
P4 = construct('projective', 4, domain=F)
cubic = canonical_rnc(3, 3, K)
quartic = canonical_rnc(4, 4, F)


def test_ideal_sections():
    quadrics = ideal_sections(P3, cubic, 2)
    assert quadrics.dim == 3
    assert quadrics.restriction_surjective
    assert ideal_sections(P4, quartic, 2).dim == 6
    assert ideal_sections(P4, quartic, 3).dim == 35 - 13
    x = P3.ring.gens
    assert quadric(0, 2, x) == x[0] * x[2] - x[1] ** 2


def test_rathmann_dimensions():
    report = rathmann_check(3, 3, 1, K)
    assert (report.source_dim, report.target_dim, report.rank) == (6, 6, 6)
    assert report.surjective and report.preimages_verified
    report = rathmann_check(3, 4, 1, K)
    assert (report.source_dim, report.target_dim) == (16, 11)
    assert report.formula_dim == 11
    assert report.surjective and report.preimages_verified
    assert rathmann_check(3, 4, 2, field(5), preimages=False).surjective
    with pytest.raises(HypothesisError):
        rathmann_check(4, 3, 1)


def test_rathmann_preimage_out_of_range():
    report = rathmann_check(2, 2, 4, K)
    assert report.surjective
    assert any(not p.applicable for p in report.preimages)
    assert report.preimages_verified


def test_nstar_surjectivity():
    quadrics = nstar_surjective(P4, quartic, 2)
    assert not quadrics['surjective']
    assert quadrics['corank'] == 3
    assert nstar_surjective(P4, quartic, 3)['surjective']
    assert sum_surjectivity_check(P4, quartic, 3, 1)['consistent']


def test_restriction_to_grassmannian():
    G24 = construct('grassmannian', 2, 4, domain=F)
    report = restriction_surjectivity_check(G24, flag_curve([2], 4, F), 3)
    assert report['consistent']
    assert report['surjective']


def test_prescribed_normal_bundle():
    conormal = conormal_in_ambient(P4, quartic)
    assert conormal.normal == SplittingType([6, 6, 6])
    rng = np.random.default_rng(3)
    data = random_surjection(P4, quartic, [3], rng, conormal)
    result = construct_from_surjection(P4, quartic, data, conormal)
    assert result.agrees
    assert result.normal.degree == 6


def test_generic_complete_intersection():
    result = generic_ci_splitting(P4, quartic, [3], trials=3, seed=0)
    assert result['splitting'] == SplittingType([3, 3])
    assert result['agrees']
    with pytest.raises(HypothesisError):
        generic_ci_splitting(P3, cubic, [2, 2])


def test_degree_gates():
    assert degree_bound(2, 4, [3]) == 4
    assert degree_bound(2, 4, [4]) is None
    assert schubert_gate(16, 4, 1, 4, [3])['pass']
    assert not schubert_gate(30, 6, 2, 6, [3, 3])['pass']


def test_src_certificate_on_grassmannian():
    G24 = construct('grassmannian', 2, 4, domain=F)
    certificate = src_certificate(G24, flag_curve([2], 4, F), [3], trials=3, seed=7)
    assert certificate.gate['pass']
    assert certificate.gate['kxc'] - certificate.gate['dc'] == 4
    assert certificate.splitting == SplittingType([1, 1])
    assert certificate.very_free
    assert certificate.flags['grassmannian_gate']
    report = certificate.to_json()
    assert report['field'] == {'char': 32003}
    assert report['degrees'] == [[3]]


def test_nstar_corank_table_of_the_twisted_cubic():
    table = {d: nstar_surjective(P3, cubic, d) for d in (1, 2, 3)}
    assert table[1]['surjective'] and table[1]['corank'] == 0
    assert not table[2]['surjective'] and table[2]['corank'] == 1
    assert table[3]['surjective'] and table[3]['corank'] == 0


def test_src_certificate_fails_the_fano_gate():
    G25 = construct('grassmannian', 2, 5, domain=F)
    certificate = src_certificate(G25, flag_curve([2], 5, F), [3, 3], trials=2, seed=7)
    assert certificate.gate == {'kxc': 30, 'dc': 36, 'm': 6, 'c': 2, 'threshold': 5,
                                'pass': False}
    assert not certificate.very_free
    assert not certificate.flags['fano']
