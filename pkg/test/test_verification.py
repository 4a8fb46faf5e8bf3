from rcsplit.bundles import SplittingType
from rcsplit.errors import HypothesisError
from rcsplit.exact import field
from rcsplit.verification import (CHECKS, check_charp, check_generic_kernels, check_rathmann,
                                  check_rnc_conormal, lemma_grid, run_all)

F = field(32003)


def test_rows_have_the_report_shape():
    row = check_rnc_conormal(F, cases=((3, 3), (3, 4)))
    assert set(row) == {'reference', 'check', 'passed', 'detail'}
    assert row['passed']
    assert row['detail'][1]['splitting'] == [-5, -5, -3]


def test_lemma_grid():
    grid = list(lemma_grid(3, 1, 2))
    assert (SplittingType([0, 2]), SplittingType([2])) in grid
    assert all(E.rank > F.rank and E.degree >= F.degree for E, F in grid)


def test_generic_kernel_check():
    row = check_generic_kernels(F, trials=2, grid=[(SplittingType([0, 1, 2]), SplittingType([3]))])
    assert row['passed']
    assert row['detail']['example'] == [0, 2]


def test_small_rathmann_grid():
    row = check_rathmann(characteristics=(32003,), max_e=3, max_n=4, max_b=2,
                         explicit=((3, 3, 1),))
    assert row['passed']


def test_charp_check():
    row = check_charp(primes=(3,), samples=2)
    assert row['passed']
    assert row['detail'][0]['observed'] == [[-7, -7, -6, -5, -5]] * 2
    assert row['detail'][0]['discrepancies'] == [
        'image at twist 6 is 5, closed form 4',
        'conormal [-7,-7,-6,-5,-5], closed form [-8,-6,-6,-5,-5]']


def test_errors_become_failed_rows():
    def check_broken(domain=None):
        """Always raises."""
        raise HypothesisError('broken on purpose', reason='test')

    rows = run_all(32003, trials=1, checks=[check_broken])
    assert rows[0]['reference'] == 'broken'
    assert not rows[0]['passed']
    assert rows[0]['detail']['code'] == 'hypothesis'


def test_every_check_is_registered():
    assert len(CHECKS) == 10
    assert all(check.__doc__ for check in CHECKS)
