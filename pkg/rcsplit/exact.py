# -*- coding: utf-8 -*-

"""Provide exact fields, binary forms in s, t and exact linear algebra.

Fields are sympy domains: ``QQ`` for characteristic 0 and ``GF(p)`` for a
prime p. A :class:`BinForm` of degree e stores the coefficient of
s^(e-i) t^i at index i, which is also the dense univariate representation of
its dehomogenization at t = 1, so sympy's ``dup_*`` routines apply directly.
"""

import logging
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations

from sympy import isprime
from sympy.polys.densearith import dup_div, dup_mul
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_diff, dup_eval
from sympy.polys.domains import GF, QQ
from sympy.polys.euclidtools import dup_gcd
from sympy.polys.factortools import dup_factor_list
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from .errors import (DegreeMismatchError, FieldError, FieldMismatchError,
                     HypothesisError, InexactDivisionError)

logger = logging.getLogger(__name__)

DEFAULT_CHARACTERISTIC = 32003
RATIONAL_SAMPLE_BOUND = 2 ** 15


@lru_cache(maxsize=None)
def field(characteristic=DEFAULT_CHARACTERISTIC):
    """
    Exact field of the given characteristic

    :characteristic: integer, 0 for the rationals or a prime p for F_p
    """
    characteristic = int(characteristic)
    if characteristic == 0:
        return QQ
    if characteristic < 0 or not isprime(characteristic):
        raise FieldError('characteristic must be 0 or a prime',
                         characteristic=characteristic)
    return GF(characteristic)


def characteristic(domain):
    return int(domain.characteristic())


def parse_scalar(text, domain):
    """Read an exact decimal integer or an "a/b" rational into ``domain``."""
    value = Fraction(str(text).strip())
    return domain(value.numerator) / domain(value.denominator)


def scalar_to_str(value, domain):
    p = characteristic(domain)
    if p:
        return str(int(domain.to_sympy(value)) % p)
    return str(domain.to_sympy(value))


def random_scalar(domain, rng, nonzero=False):
    """
    Uniform random element of F_p, or a bounded random integer over QQ

    :rng: :py:class:`numpy.random.Generator`
    """
    p = characteristic(domain)
    while True:
        if p:
            value = domain(int(rng.integers(p)))
        else:
            value = domain(int(rng.integers(-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND + 1)))
        if value or not nonzero:
            return value


def check_same_field(first, second):
    if first != second:
        raise FieldMismatchError('operands live over different fields',
                                 left=first, right=second)


class BinForm:
    """
    Homogeneous binary form in s, t with exact coefficients

    :coeffs: sequence of field elements, index i holds the coefficient of s^(e-i) t^i

    :domain: exact field of the coefficients

    A sequence of zeros gives the zero form, which carries no degree.
    """

    __slots__ = ('domain', 'degree', 'coeffs')

    def __init__(self, coeffs, domain):
        coeffs = tuple(coeffs)
        self.domain = domain
        if any(coeffs):
            self.degree = len(coeffs) - 1
            self.coeffs = coeffs
        else:
            self.degree = None
            self.coeffs = ()

    @classmethod
    def zero(cls, domain):
        return cls((), domain)

    @classmethod
    def constant(cls, value, domain):
        return cls((value,), domain)

    @classmethod
    def monomial(cls, i, j, domain, coefficient=None):
        """Form c * s^i * t^j."""
        coeffs = [domain.zero] * (i + j + 1)
        coeffs[j] = domain.one if coefficient is None else coefficient
        return cls(coeffs, domain)

    @classmethod
    def from_ints(cls, coeffs, domain):
        return cls([domain(int(c)) for c in coeffs], domain)

    @classmethod
    def from_dup(cls, poly, degree, domain):
        """Homogenize the dense polynomial ``poly`` in s to the given degree."""
        poly = dup_strip(list(poly))
        if not poly:
            return cls.zero(domain)
        if len(poly) > degree + 1:
            raise DegreeMismatchError('polynomial does not fit the requested degree',
                                      degree=degree, length=len(poly))
        return cls([domain.zero] * (degree + 1 - len(poly)) + poly, domain)

    @property
    def is_zero(self):
        return self.degree is None

    def padded(self, degree):
        """Coefficient list at the given degree; the zero form gives zeros."""
        if self.is_zero:
            return [self.domain.zero] * (degree + 1) if degree >= 0 else []
        if self.degree != degree:
            raise DegreeMismatchError('form has the wrong degree',
                                      expected=degree, found=self.degree)
        return list(self.coeffs)

    def dehomogenized(self):
        return dup_strip(list(self.coeffs))

    @property
    def t_valuation(self):
        """Power of t dividing the form (number of leading zero coefficients)."""
        if self.is_zero:
            return None
        count = 0
        for c in self.coeffs:
            if c:
                break
            count += 1
        return count

    def _other(self, other):
        if not isinstance(other, BinForm):
            return None
        check_same_field(self.domain, other.domain)
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise DegreeMismatchError('cannot add forms of different degrees',
                                      left=self.degree, right=other.degree)
        return BinForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.domain)

    def __neg__(self):
        return BinForm([-a for a in self.coeffs], self.domain) if not self.is_zero else self

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinForm):
            check_same_field(self.domain, other.domain)
            if self.is_zero or other.is_zero:
                return BinForm.zero(self.domain)
            product = dup_mul(self.dehomogenized(), other.dehomogenized(), self.domain)
            return BinForm.from_dup(product, self.degree + other.degree, self.domain)
        value = self.domain.convert(other)
        return BinForm([value * a for a in self.coeffs], self.domain) if not self.is_zero else self

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = BinForm.constant(self.domain.one, self.domain)
        for _ in range(int(exponent)):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BinForm):
            return NotImplemented
        return (self.domain == other.domain and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def partial_s(self):
        if self.is_zero or self.degree == 0:
            return BinForm.zero(self.domain)
        return BinForm.from_dup(dup_diff(list(self.coeffs), 1, self.domain),
                                self.degree - 1, self.domain)

    def partial_t(self):
        if self.is_zero or self.degree == 0:
            return BinForm.zero(self.domain)
        swapped = dup_diff(list(reversed(self.coeffs)), 1, self.domain)
        swapped = BinForm.from_dup(swapped, self.degree - 1, self.domain)
        if swapped.is_zero:
            return swapped
        return BinForm(reversed(swapped.coeffs), self.domain)

    def exact_div(self, divisor):
        """
        Exact quotient h with divisor * h == self

        Raises :class:`InexactDivisionError` when the division leaves a remainder.
        """
        check_same_field(self.domain, divisor.domain)
        if divisor.is_zero:
            raise InexactDivisionError('division by the zero form')
        if self.is_zero:
            return self
        if self.degree < divisor.degree:
            raise InexactDivisionError('divisor has larger degree',
                                       dividend=str(self), divisor=str(divisor))
        quotient, remainder = dup_div(self.dehomogenized(), divisor.dehomogenized(), self.domain)
        if remainder:
            raise InexactDivisionError('division leaves a remainder',
                                       dividend=str(self), divisor=str(divisor))
        try:
            result = BinForm.from_dup(quotient, self.degree - divisor.degree, self.domain)
        except DegreeMismatchError:
            raise InexactDivisionError('quotient is not a form',
                                       dividend=str(self), divisor=str(divisor))
        if result * divisor != self:
            raise InexactDivisionError('division leaves a remainder',
                                       dividend=str(self), divisor=str(divisor))
        return result

    def eval_at(self, point):
        s0, t0 = (self.domain.convert(x) for x in point)
        if not s0 and not t0:
            raise HypothesisError('(0, 0) is not a point of P^1')
        if self.is_zero:
            return self.domain.zero
        if t0:
            return t0 ** self.degree * dup_eval(list(self.coeffs), s0 / t0, self.domain)
        return self.coeffs[0] * s0 ** self.degree

    def substitute(self, alpha):
        """Form f(a s + b t, c s + d t) for alpha = ((a, b), (c, d))."""
        if self.is_zero:
            return self
        (a, b), (c, d) = alpha
        first = BinForm([a, b], self.domain)
        second = BinForm([c, d], self.domain)
        result = BinForm.zero(self.domain)
        for i, coeff in enumerate(self.coeffs):
            if coeff:
                result = result + (first ** (self.degree - i)) * (second ** i) * coeff
        if result.is_zero:
            return result
        return BinForm.from_dup(result.coeffs, self.degree, self.domain)

    @staticmethod
    def gcd(*forms):
        """Monic greatest common divisor of the nonzero forms, None if all are zero."""
        forms = [f for f in forms if not f.is_zero]
        if not forms:
            return None
        domain = forms[0].domain
        common = reduce(lambda a, b: dup_gcd(a, b, domain), (f.dehomogenized() for f in forms))
        valuation = min(f.t_valuation for f in forms)
        return BinForm([domain.zero] * valuation + list(common), domain)

    def to_poly(self, polyring):
        if self.is_zero:
            return polyring.zero
        return polyring.from_dict({(self.degree - i, i): c for i, c in enumerate(self.coeffs) if c})

    @classmethod
    def from_poly(cls, poly, domain):
        if not poly:
            return cls.zero(domain)
        terms = poly.terms()
        degree = sum(terms[0][0])
        coeffs = [domain.zero] * (degree + 1)
        for (i, j), c in terms:
            if i + j != degree:
                raise DegreeMismatchError('polynomial is not homogeneous', poly=str(poly))
            coeffs[j] = c
        return cls(coeffs, domain)

    def to_json(self):
        return [scalar_to_str(c, self.domain) for c in self.coeffs]

    @classmethod
    def from_json(cls, data, domain):
        return cls([parse_scalar(c, domain) for c in data], domain)

    def __str__(self):
        if self.is_zero:
            return '0'
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            powers = ['%s^%d' % (v, k) if k > 1 else v
                      for v, k in (('s', self.degree - i), ('t', i)) if k > 0]
            coefficient = scalar_to_str(c, self.domain)
            if powers and coefficient == '1':
                terms.append('*'.join(powers))
            else:
                terms.append('*'.join([coefficient] + powers))
        return ' + '.join(terms)

    def __repr__(self):
        return 'BinForm(%s)' % self


def monomial_basis(degree, domain):
    """Monomials s^degree, s^(degree-1) t, ..., t^degree."""
    return [BinForm.monomial(degree - k, k, domain) for k in range(degree + 1)]


def random_form(degree, domain, rng):
    if degree < 0:
        return BinForm.zero(domain)
    return BinForm([random_scalar(domain, rng) for _ in range(degree + 1)], domain)


def form_sum(forms, domain):
    return reduce(lambda a, b: a + b, forms, BinForm.zero(domain))


def form_ops(f, g=None, kind='add', point=None):
    """
    Dispatch an elementary operation on binary forms

    :kind: one of add, mul, partial_s, partial_t, exact_div, eval_at
    """
    if kind == 'add':
        return f + g
    if kind == 'mul':
        return f * g
    if kind == 'partial_s':
        return f.partial_s()
    if kind == 'partial_t':
        return f.partial_t()
    if kind == 'exact_div':
        return f.exact_div(g)
    if kind == 'eval_at':
        return f.eval_at(point)
    raise ValueError('unknown form operation %r' % kind)


@lru_cache(maxsize=None)
def binary_ring(domain):
    """Bivariate ring K[s, t] used for determinants of form matrices."""
    return ring('s,t', domain)[0]


def form_det(matrix, domain):
    """Determinant of a square matrix of binary forms."""
    size = len(matrix)
    if size == 0:
        return BinForm.constant(domain.one, domain)
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    R = binary_ring(domain)
    rows = [[entry.to_poly(R) for entry in row] for row in matrix]
    det = DomainMatrix(rows, (size, size), R.to_domain()).det()
    return BinForm.from_poly(det, domain)


def minor_gcd(matrix, size, domain):
    """
    Monic gcd of the size x size minors of a matrix of binary forms

    Returns a degree 0 form as soon as a constant gcd is reached, the zero
    form when every minor vanishes.
    """
    if size == 0:
        return BinForm.constant(domain.one, domain)
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    current = None
    for rows in combinations(range(nrows), size):
        for cols in combinations(range(ncols), size):
            minor = form_det([[matrix[i][j] for j in cols] for i in rows], domain)
            if minor.is_zero:
                continue
            current = BinForm.gcd(minor) if current is None else BinForm.gcd(current, minor)
            if current.degree == 0:
                return current
    return current if current is not None else BinForm.zero(domain)


def roots_of_form(form):
    """Points (s0, t0) of P^1 over the base field where the form vanishes."""
    domain = form.domain
    if form.is_zero:
        return []
    points = []
    if form.t_valuation:
        points.append((domain.one, domain.zero))
    poly = form.dehomogenized()
    if len(poly) > 1:
        _, factors = dup_factor_list(poly, domain)
        for factor, _ in factors:
            if len(factor) == 2:
                points.append((-factor[1] / factor[0], domain.one))
    return points


def point_to_str(point, domain):
    return '(%s:%s)' % tuple(scalar_to_str(x, domain) for x in point)


def dm(rows, nrows, ncols, domain):
    """DomainMatrix from a list of rows, tolerating empty shapes."""
    if nrows == 0 or ncols == 0:
        return DomainMatrix.zeros((nrows, ncols), domain)
    return DomainMatrix(rows, (nrows, ncols), domain)


class LinearSolver:
    """
    Row reduction of a matrix A, reused to solve A x = b for many b

    :matrix: :py:class:`sympy.polys.matrices.DomainMatrix` over an exact field

    The reduction of [A | I] yields both the pivots of A and a transform T
    with T A in reduced row echelon form.
    """

    def __init__(self, matrix):
        self.domain = matrix.domain
        self.nrows, self.ncols = matrix.shape
        m, n = self.nrows, self.ncols
        K = self.domain
        if m == 0 or n == 0:
            self.pivots = ()
            self._reduced = []
            self._transform = [[K.one if i == j else K.zero for j in range(m)] for i in range(m)]
            return
        identity = [[K.one if i == j else K.zero for j in range(m)] for i in range(m)]
        augmented = [list(row) + identity[i] for i, row in enumerate(matrix.to_list())]
        reduced, pivots = DomainMatrix(augmented, (m, n + m), K).rref()
        reduced = reduced.to_list()
        self.pivots = tuple(p for p in pivots if p < n)
        self._reduced = [row[:n] for row in reduced[:len(self.pivots)]]
        self._transform = [row[n:] for row in reduced]

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def nullity(self):
        return self.ncols - self.rank

    def nullspace(self):
        """Basis of {x : A x = 0}, one vector per free column."""
        K = self.domain
        pivot_set = set(self.pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vector = [K.zero] * self.ncols
            vector[free] = K.one
            for row, pivot in enumerate(self.pivots):
                vector[pivot] = -self._reduced[row][free]
            basis.append(vector)
        return basis

    def solve(self, rhs):
        """A solution x of A x = rhs with free variables set to zero, None if inconsistent."""
        K = self.domain
        y = [sum((t * b for t, b in zip(row, rhs) if t and b), K.zero) for row in self._transform]
        if any(y[self.rank:]):
            return None
        x = [K.zero] * self.ncols
        for row, pivot in enumerate(self.pivots):
            x[pivot] = y[row]
        return x


def matrix_rank(rows, ncols, domain):
    return LinearSolver(dm(rows, len(rows), ncols, domain)).rank


def independent_columns(columns, length, domain):
    """Indices of a maximal independent subset of the columns, greedy from the left."""
    if not columns or length == 0:
        return []
    rows = [[column[i] for column in columns] for i in range(length)]
    _, pivots = DomainMatrix(rows, (length, len(columns)), domain).rref()
    return list(pivots)


def random_point(domain, rng):
    """Random point (s0, t0) of P^1 over the base field."""
    while True:
        point = (random_scalar(domain, rng), random_scalar(domain, rng))
        if point[0] or point[1]:
            return point
