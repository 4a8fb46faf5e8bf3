import pytest
import numpy as np
from sympy.polys.domains import QQ

from rcsplit.errors import FieldError, InexactDivisionError, DegreeMismatchError
from rcsplit.exact import (BinForm, LinearSolver, dm, field, form_det, minor_gcd, parse_scalar,
                           random_form, roots_of_form, scalar_to_str)

K = field(0)
F7 = field(7)
s = BinForm.monomial(1, 0, K)
t = BinForm.monomial(0, 1, K)


def test_fields():
    assert field(0) == QQ
    assert field(7).characteristic() == 7
    with pytest.raises(FieldError):
        field(4)
    assert scalar_to_str(parse_scalar('1/2', F7), F7) == '4'


def test_arithmetic():
    assert (s + t) * (s - t) == s ** 2 - t ** 2
    assert ((s ** 2 - t ** 2).exact_div(s + t)) == s - t
    with pytest.raises(InexactDivisionError):
        (s ** 2 + t ** 2).exact_div(s + t)
    with pytest.raises(DegreeMismatchError):
        s + t ** 2
    assert (s * 0).is_zero
    assert str(s ** 2 + 2 * s * t) == 's^2 + 2*s*t'


def test_derivatives_and_euler():
    f = s ** 3 + 2 * s * t ** 2
    assert f.partial_s() == 3 * s ** 2 + 2 * t ** 2
    assert f.partial_t() == 4 * s * t
    assert s * f.partial_s() + t * f.partial_t() == 3 * f


def test_evaluation_and_substitution():
    f = s ** 2 + t ** 2
    assert f.eval_at((1, 2)) == K(5)
    assert f.eval_at((1, 0)) == K(1)
    swap = ((K.zero, K.one), (K.one, K.zero))
    assert s.substitute(swap) == t
    assert (s ** 2 * t).substitute(swap) == s * t ** 2


def test_gcd_and_roots():
    assert BinForm.gcd(s ** 2 * t, s * t ** 2) == s * t
    assert BinForm.gcd(s, t).degree == 0
    assert BinForm.gcd(BinForm.zero(K)) is None
    roots = roots_of_form(s * t)
    assert (K.one, K.zero) in roots
    assert (K.zero, K.one) in roots


def test_determinants():
    assert form_det([[s, t], [t, s]], K) == s ** 2 - t ** 2
    assert minor_gcd([[s, t]], 1, K).degree == 0
    assert minor_gcd([[s ** 2, s * t]], 1, K) == s


def test_linear_solver():
    solver = LinearSolver(dm([[K(1), K(2)], [K(2), K(4)]], 2, 2, K))
    assert solver.rank == 1
    assert solver.nullspace() == [[K(-2), K(1)]]
    assert solver.solve([K(1), K(2)]) == [K(1), K(0)]
    assert solver.solve([K(1), K(3)]) is None


def test_json_and_random_forms():
    rng = np.random.default_rng(0)
    f = random_form(4, F7, rng)
    assert BinForm.from_json(f.to_json(), F7) == f
    assert random_form(-1, F7, rng).is_zero


def test_euler_identity_on_random_forms():
    rng = np.random.default_rng(3)
    for domain in (K, F7, field(2), field(3)):
        x, y = BinForm.monomial(1, 0, domain), BinForm.monomial(0, 1, domain)
        for e in range(1, 8):
            f = random_form(e, domain, rng)
            assert x * f.partial_s() + y * f.partial_t() == e * f
    cube = BinForm.monomial(3, 0, field(3)) + BinForm.monomial(1, 2, field(3))
    euler = BinForm.monomial(1, 0, field(3)) * cube.partial_s() \
        + BinForm.monomial(0, 1, field(3)) * cube.partial_t()
    assert euler.is_zero


def test_derivative_in_characteristic_two():
    F2 = field(2)
    assert BinForm.monomial(0, 2, F2).partial_t().is_zero
    assert BinForm.monomial(2, 1, F2).partial_t() == BinForm.monomial(2, 0, F2)


def test_exact_division_undoes_products():
    rng = np.random.default_rng(5)
    for domain in (K, F7):
        for e, k in ((0, 2), (3, 1), (4, 4), (2, 5)):
            f = random_form(e, domain, rng)
            g = random_form(k, domain, rng)
            if g.is_zero:
                continue
            assert (f * g).exact_div(g) == f
