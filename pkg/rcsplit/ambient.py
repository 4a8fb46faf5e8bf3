# -*- coding: utf-8 -*-

"""Provide embedded ambient varieties and the tangent and normal bundles of curves inside them.

An ambient is a subvariety of a product of projective spaces given by explicit
multihomogeneous equations: projective spaces and their products, Grassmannians
and flag varieties in their Pluecker embeddings, and weighted projective spaces
through a monomial embedding.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import reduce
from itertools import combinations, combinations_with_replacement, product
from math import gcd

import numpy as np
from sympy.polys.rings import ring

from .bundles import BundleMap, SplittingType, cokernel_model, fiberwise_certificate, kernel_model
from .curves import CurveMap, canonical_rnc, conormal_Pn, euler_cotangent_model, require_valid, rnc_forms
from .errors import (AnticanonicalMismatchError, ContainmentError, DegreeMismatchError,
                     HypothesisError, InvalidSequenceError, RankDropError)
from .exact import (BinForm, dm, field, form_det, form_sum, matrix_rank, minor_gcd,
                    point_to_str, random_form, random_point, random_scalar, roots_of_form,
                    scalar_to_str)
from .montecarlo import DEFAULT_SEED

logger = logging.getLogger(__name__)

RANDOM_POINTS = 3


@dataclass(frozen=True)
class DivisorClass:
    """
    Class of a divisor given by its multidegree on the coordinate blocks

    :multidegree: one integer (or fraction for weighted spaces) per block
    """
    multidegree: tuple

    def __post_init__(self):
        object.__setattr__(self, 'multidegree', tuple(
            d if isinstance(d, Fraction) and d.denominator != 1 else int(d)
            for d in self.multidegree))

    def dot(self, curve):
        """Intersection number with a curve, sum of d_j e_j."""
        value = sum(Fraction(d) * e for d, e in zip(self.multidegree, curve.degrees))
        return int(value) if value.denominator == 1 else value

    def __add__(self, other):
        return DivisorClass(a + b for a, b in zip(self.multidegree, other.multidegree))

    def __sub__(self, other):
        return DivisorClass(a - b for a, b in zip(self.multidegree, other.multidegree))

    def __neg__(self):
        return DivisorClass(-a for a in self.multidegree)

    @property
    def is_positive(self):
        return all(d > 0 for d in self.multidegree)

    def to_json(self):
        return [d if isinstance(d, int) else str(d) for d in self.multidegree]

    def __str__(self):
        return '(' + ','.join(str(d) for d in self.multidegree) + ')'


class Ambient:
    """
    Embedded variety inside a product of projective spaces

    :kind: string, catalog kind (projective, product, grassmannian, flag, wps, complete-intersection)

    :params: dictionary, construction parameters

    :block_sizes: number of coordinates of each projective factor

    :dim: integer, dimension of the variety

    :polyring: :py:class:`sympy.polys.rings.PolyRing` of the coordinates

    :equations: multihomogeneous polynomials of the ring cutting out the variety

    :anticanonical: :class:`DivisorClass` of -K

    :domain: exact field

    :gen_degree: largest degree of an ideal generator

    :label: descriptor used in reports

    :cataloged: False for ambients whose ideal is not known to be complete
    """

    def __init__(self, kind, params, block_sizes, dim, polyring, equations, anticanonical,
                 domain, gen_degree=1, label=None, cataloged=True):
        self.kind = kind
        self.params = dict(params)
        self.block_sizes = tuple(int(n) for n in block_sizes)
        self.dim = int(dim)
        self.ring = polyring
        self.equations = tuple(equations)
        self.anticanonical = anticanonical
        self.domain = domain
        self.gen_degree = gen_degree
        self.label = label or kind
        self.cataloged = cataloged
        offsets = np.concatenate(([0], np.cumsum(self.block_sizes))).astype(int)
        self.variable_blocks = tuple(tuple(range(offsets[j], offsets[j + 1]))
                                     for j in range(len(self.block_sizes)))
        self.equation_degrees = tuple(self.multidegree(F) for F in self.equations)

    @property
    def codim(self):
        return sum(self.block_sizes) - len(self.block_sizes) - self.dim

    def multidegree(self, poly):
        degrees = set()
        for monom in poly.monoms():
            degrees.add(tuple(sum(monom[i] for i in block) for block in self.variable_blocks))
        if len(degrees) != 1:
            raise DegreeMismatchError('polynomial is not multihomogeneous', poly=str(poly))
        return DivisorClass(degrees.pop())

    def monomials(self, divisor):
        """Monomials of the given multidegree, block by block in lexicographic order."""
        per_block = []
        for size, d, block in zip(self.block_sizes, divisor.multidegree, self.variable_blocks):
            exponents = []
            for choice in combinations_with_replacement(range(size), int(d)):
                counts = [0] * size
                for index in choice:
                    counts[index] += 1
                exponents.append(counts)
            per_block.append(exponents)
        monomials = []
        for parts in product(*per_block):
            monom = tuple(k for part in parts for k in part)
            monomials.append(self.ring.from_dict({monom: self.domain.one}))
        return monomials

    def check_curve(self, curve):
        if curve.block_sizes != self.block_sizes:
            raise DegreeMismatchError('curve blocks do not match the ambient blocks',
                                      curve=curve.block_sizes, ambient=self.block_sizes)
        if curve.domain != self.domain:
            raise DegreeMismatchError('curve and ambient live over different fields')

    def pullback(self, poly, curve):
        """Binary form F(f(s, t)) of degree D.C."""
        K = self.domain
        coordinates = curve.coordinates
        powers = {}
        total = BinForm.zero(K)
        for monom, coeff in poly.terms():
            term = BinForm.constant(coeff, K)
            for l, k in enumerate(monom):
                if not k:
                    continue
                if (l, k) not in powers:
                    powers[(l, k)] = coordinates[l] ** k
                term = term * powers[(l, k)]
                if term.is_zero:
                    break
            total = total + term
        return total

    def gradient(self, poly, curve):
        """Section (dF/dx_l)(f) of sum O(-e_j)(D.C), one entry per coordinate."""
        return tuple(self.pullback(poly.diff(x), curve) for x in self.ring.gens)

    def jacobian_map(self, curve, polys=None):
        """Map sum_q O(-D_q.C) -> sum_j O(-e_j)^(n_j+1) whose columns are the gradients."""
        polys = self.equations if polys is None else polys
        degrees = [self.multidegree(F).dot(curve) for F in polys]
        columns = [self.gradient(F, curve) for F in polys]
        rows = [[column[l] for column in columns] for l in range(len(curve.coordinates))]
        return BundleMap([-d for d in degrees], curve.coordinate_degrees, rows, self.domain)

    def projective_cover(self):
        """Product of projective spaces containing the ambient."""
        return product_of_projective_spaces([n - 1 for n in self.block_sizes], self.domain)

    def augmented(self, forms, label=None):
        """
        Complete intersection of the ambient with the given hypersurfaces

        The anticanonical class follows adjunction, -K_Y = -K_X - sum D_i.
        """
        forms = list(forms)
        degrees = [self.multidegree(F) for F in forms]
        anticanonical = reduce(lambda a, b: a - b, degrees, self.anticanonical)
        gen_degree = max([self.gen_degree] + [sum(D.multidegree) for D in degrees])
        label = label or '%s cut by %s' % (self.label, ' '.join(str(D) for D in degrees))
        return Ambient('complete-intersection',
                       {'base': self.label, 'degrees': [D.to_json() for D in degrees]},
                       self.block_sizes, self.dim - len(forms), self.ring,
                       self.equations + tuple(forms), anticanonical, self.domain,
                       gen_degree, label, self.cataloged)

    def to_json(self):
        return {'kind': self.kind, 'params': self.params, 'label': self.label,
                'blocks': list(self.block_sizes), 'dim': self.dim,
                'anticanonical': self.anticanonical.to_json(),
                'equations': [equation_to_json(F, D, self.domain)
                              for F, D in zip(self.equations, self.equation_degrees)]}

    def __repr__(self):
        return 'Ambient(%s)' % self.label


def equation_to_json(poly, divisor, domain):
    return {'multidegree': divisor.to_json(),
            'terms': [{'exponents': list(monom), 'coeff': scalar_to_str(coeff, domain)}
                      for monom, coeff in poly.terms()]}


def independent_polys(polys, polyring, domain):
    """Row reduced basis of the span of the given polynomials."""
    polys = [F for F in polys if F]
    if not polys:
        return []
    monoms = sorted({m for F in polys for m in F.monoms()}, reverse=True)
    position = {m: i for i, m in enumerate(monoms)}
    rows = []
    for F in polys:
        row = [domain.zero] * len(monoms)
        for m, c in F.terms():
            row[position[m]] = c
        rows.append(row)
    reduced, pivots = dm(rows, len(rows), len(monoms), domain).rref()
    reduced = reduced.to_list()
    return [polyring.from_dict({monoms[i]: c for i, c in enumerate(reduced[r]) if c})
            for r in range(len(pivots))]


def _sorted_index(sequence):
    if len(set(sequence)) < len(sequence):
        return 0, None
    inversions = sum(1 for x, y in combinations(sequence, 2) if x > y)
    return (-1) ** inversions, tuple(sorted(sequence))


def incidence_relations(k, l, n, first, second):
    """
    Quadratic relations sum_t (-1)^t p_(I + j_t) q_(J - j_t) for |I| = k-1, |J| = l+1

    :first: dictionary k-subset -> Pluecker coordinate p

    :second: dictionary l-subset -> Pluecker coordinate q

    With first == second and k == l these are the Pluecker relations of G(k, n);
    otherwise they express the incidence of a k-plane in an l-plane.
    """
    relations = []
    for I in combinations(range(n), k - 1):
        for J in combinations(range(n), l + 1):
            total = None
            for t, j in enumerate(J):
                sign, index = _sorted_index(I + (j,))
                if index is None:
                    continue
                term = first[index] * second[J[:t] + J[t + 1:]] * (sign * (-1) ** t)
                total = term if total is None else total + term
            if total:
                relations.append(total)
    return relations


def _index_name(subset, n):
    separator = '_' if n > 9 else ''
    return separator.join(str(i + 1) for i in subset)


def projective_space(n, domain=None):
    domain = domain or field()
    polyring = ring(['x%d' % i for i in range(n + 1)], domain)[0]
    return Ambient('projective', {'n': n}, [n + 1], n, polyring, [],
                   DivisorClass([n + 1]), domain, 1, 'projective:%d' % n)


def product_of_projective_spaces(dims, domain=None):
    domain = domain or field()
    dims = [int(a) for a in dims]
    if len(dims) == 1:
        return projective_space(dims[0], domain)
    names = ['x%d_%d' % (j, i) for j, a in enumerate(dims) for i in range(a + 1)]
    polyring = ring(names, domain)[0]
    return Ambient('product', {'dims': dims}, [a + 1 for a in dims], sum(dims), polyring, [],
                   DivisorClass([a + 1 for a in dims]), domain, 1,
                   'product:' + ','.join(str(a) for a in dims))


def flag_variety(ks, n, domain=None):
    """
    Flag variety F(k_1, ..., k_r; n) in the product of the Pluecker spaces of its factors

    Equations are the Pluecker relations of every factor and the incidence
    relations of consecutive factors; -K has degree k_(i+1) - k_(i-1) on factor i.
    """
    domain = domain or field()
    ks = [int(k) for k in ks]
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])) or ks[0] < 1 or ks[-1] > n - 1:
        raise HypothesisError('need 1 <= k_1 < ... < k_r <= n - 1', ks=ks, n=n)
    grassmannian = len(ks) == 1
    subsets = [list(combinations(range(n), k)) for k in ks]
    if grassmannian:
        names = ['p' + _index_name(I, n) for I in subsets[0]]
    else:
        names = ['p%d_%s' % (k, _index_name(I, n)) for k, block in zip(ks, subsets) for I in block]
    polyring = ring(names, domain)[0]
    gens = list(polyring.gens)
    coordinates, position = [], 0
    for block in subsets:
        coordinates.append({I: gens[position + i] for i, I in enumerate(block)})
        position += len(block)

    equations = []
    for k, coords in zip(ks, coordinates):
        equations.extend(independent_polys(incidence_relations(k, k, n, coords, coords),
                                           polyring, domain))
    for i in range(len(ks) - 1):
        equations.extend(independent_polys(
            incidence_relations(ks[i], ks[i + 1], n, coordinates[i], coordinates[i + 1]),
            polyring, domain))

    bounds = [0] + ks + [n]
    dim = sum((bounds[i] - bounds[i - 1]) * (n - bounds[i]) for i in range(1, len(ks) + 1))
    anticanonical = DivisorClass([bounds[i + 1] - bounds[i - 1] for i in range(1, len(ks) + 1)])
    if grassmannian:
        kind, params, label = 'grassmannian', {'k': ks[0], 'n': n}, 'grassmannian:%d,%d' % (ks[0], n)
    else:
        kind, params = 'flag', {'ks': ks, 'n': n}
        label = 'flag:%s;%d' % (','.join(str(k) for k in ks), n)
    return Ambient(kind, params, [len(block) for block in subsets], dim, polyring, equations,
                   anticanonical, domain, 2, label)


def grassmannian(k, n, domain=None):
    return flag_variety([k], n, domain)


def wps_monomials(weights, a):
    """Exponent vectors of the monomials of weighted degree a, lexicographically descending."""
    found = []

    def extend(prefix, remaining):
        index = len(prefix)
        if index == len(weights):
            if remaining == 0:
                found.append(tuple(prefix))
            return
        for c in range(remaining // weights[index], -1, -1):
            extend(prefix + [c], remaining - c * weights[index])

    extend([], a)
    return found


def weighted_projective_space(weights, a, domain=None):
    """
    Weighted projective space P(w_0, ..., w_m) through its degree a monomial embedding

    Equations are the binomials y_A y_B - y_C y_D with A + B = C + D; -K is
    (sum w_i / a) times the hyperplane class.
    """
    domain = domain or field()
    weights = [int(w) for w in weights]
    if any(w < 1 for w in weights) or len(weights) < 2:
        raise HypothesisError('weights must be positive', weights=weights)
    if a % reduce(lambda x, y: x * y // gcd(x, y), weights):
        raise HypothesisError('embedding degree must be a multiple of every weight',
                              weights=weights, a=a)
    for i in range(len(weights)):
        others = weights[:i] + weights[i + 1:]
        if reduce(gcd, others) != 1:
            raise HypothesisError('weights are not well formed', weights=weights)
    monomials = wps_monomials(weights, a)
    polyring = ring(['y%d' % i for i in range(len(monomials))], domain)[0]
    gens = polyring.gens
    pairs = {}
    for (i, A), (j, B) in combinations_with_replacement(list(enumerate(monomials)), 2):
        key = tuple(x + y for x, y in zip(A, B))
        pairs.setdefault(key, []).append((i, j))
    equations = []
    for key in sorted(pairs, reverse=True):
        group = pairs[key]
        for (i, j), (k, l) in zip(group, group[1:]):
            equations.append(gens[i] * gens[j] - gens[k] * gens[l])
    m = len(weights) - 1
    label = 'wps:%s;%d' % (','.join(str(w) for w in weights), a)
    return Ambient('wps', {'weights': weights, 'a': a}, [len(monomials)], m, polyring,
                   equations, DivisorClass([Fraction(sum(weights), a)]), domain, 2, label)


def construct(kind, *params, domain=None):
    """
    Ambient of the catalog

    :kind: projective (n), product (dims), grassmannian (k, n), flag (ks, n),
        wps (weights, a)
    """
    domain = domain or field()
    if kind == 'projective':
        return projective_space(int(params[0]), domain)
    if kind == 'product':
        dims = params[0] if len(params) == 1 and not isinstance(params[0], int) else params
        return product_of_projective_spaces(dims, domain)
    if kind == 'grassmannian':
        return grassmannian(int(params[0]), int(params[1]), domain)
    if kind == 'flag':
        return flag_variety(params[0], int(params[1]), domain)
    if kind == 'wps':
        return weighted_projective_space(params[0], int(params[1]), domain)
    raise HypothesisError('unknown ambient kind', kind=kind)


@dataclass
class AmbientCertificate:
    """Containment and smoothness of an ambient along a curve."""
    contained: bool
    codim: int
    jacobian_rank: int
    minor_gcd: str
    smooth_along_curve: bool
    points: list = dataclass_field(default_factory=list)

    def to_json(self):
        return {'contained': self.contained, 'codim': self.codim,
                'jacobian_rank': self.jacobian_rank, 'minor_gcd': self.minor_gcd,
                'smooth_along_curve': self.smooth_along_curve, 'points': self.points}


def _compressed_columns(jacobian, degrees, width, domain, rng):
    """Random combinations of the Jacobian columns, at most ``width`` per column degree."""
    groups = {}
    for q, degree in enumerate(degrees):
        groups.setdefault(degree, []).append(q)
    columns = []
    for degree in sorted(groups):
        members = groups[degree]
        if len(members) <= width:
            columns.extend([row[q] for row in jacobian] for q in members)
            continue
        for _ in range(width):
            weights = [random_scalar(domain, rng) for _ in members]
            columns.append([form_sum((row[q] * w for q, w in zip(members, weights)), domain)
                            for row in jacobian])
    return [[column[l] for column in columns] for l in range(len(jacobian))]


def validate_along_curve(ambient, curve, seed=DEFAULT_SEED):
    """
    Containment of the curve and constant Jacobian rank codim along it

    Every equation must pull back to the zero form. The Jacobian must have
    rank codim at random points and the gcd of its codim-minors must be a
    nonzero constant. Minors of random combinations of the columns are tried
    first; their rank never exceeds the rank of the Jacobian.
    """
    ambient.check_curve(curve)
    require_valid(curve, immersion=False)
    K = ambient.domain
    for F in ambient.equations:
        if not ambient.pullback(F, curve).is_zero:
            raise ContainmentError('curve does not lie on the ambient', equation=str(F),
                                   ambient=ambient.label)
    codim = ambient.codim
    if codim == 0:
        return AmbientCertificate(True, 0, 0, '1', True)
    jacobian_map = ambient.jacobian_map(curve)
    jacobian = [list(row) for row in jacobian_map.entries]
    rng = np.random.default_rng(seed)
    rank = 0
    for _ in range(RANDOM_POINTS):
        point = random_point(K, rng)
        values = [[f.eval_at(point) for f in row] for row in jacobian]
        rank = max(rank, matrix_rank(values, len(ambient.equations), K))
    if rank < codim:
        raise RankDropError('Jacobian rank is below the codimension along the curve',
                            rank=rank, codim=codim, ambient=ambient.label)
    if rank > codim:
        raise RankDropError('Jacobian rank exceeds the codimension; the dimension is wrong',
                            rank=rank, codim=codim, ambient=ambient.label)
    degrees = [-a for a in jacobian_map.source]
    gcd_form = None
    for _ in range(RANDOM_POINTS):
        gcd_form = minor_gcd(_compressed_columns(jacobian, degrees, codim, K, rng), codim, K)
        if not gcd_form.is_zero and gcd_form.degree == 0:
            break
    else:
        gcd_form = minor_gcd(jacobian, codim, K)
    if gcd_form.is_zero or gcd_form.degree > 0:
        points = [] if gcd_form.is_zero else [point_to_str(p, K) for p in roots_of_form(gcd_form)]
        raise RankDropError('Jacobian drops rank at points of the curve',
                            gcd=str(gcd_form), points=points, ambient=ambient.label)
    return AmbientCertificate(True, codim, rank, str(gcd_form), True)


def jacobian_in_model(model, jacobian):
    """Jacobian columns written in the coordinates of a model."""
    rows = [[None] * len(jacobian.source) for _ in model.degrees]
    for q, degree in enumerate(jacobian.source):
        coordinates = model.express(jacobian.column(q), -degree)
        for l, form in enumerate(coordinates):
            rows[l][q] = form
    return BundleMap(jacobian.source, model.degrees, rows, model.domain)


def tangent_splitting(ambient, curve, seed=DEFAULT_SEED):
    """
    Splitting type of the restricted tangent bundle

    Omega_X restricted to the curve is the quotient of the restricted
    cotangent bundle of the projective spaces by the saturated image of the
    Jacobian columns. Its degree is checked against -K_X.C.
    """
    validate_along_curve(ambient, curve, seed)
    model = euler_cotangent_model(curve, seed)
    if ambient.equations:
        cotangent, _ = cokernel_model(jacobian_in_model(model, ambient.jacobian_map(curve)), seed)
    else:
        cotangent = model.splitting
    tangent = cotangent.dual()
    expected = ambient.anticanonical.dot(curve)
    if tangent.rank != ambient.dim or tangent.degree != expected:
        raise AnticanonicalMismatchError('restricted tangent bundle disagrees with -K.C',
                                         splitting=str(tangent), degree=tangent.degree,
                                         expected=expected, rank=tangent.rank, dim=ambient.dim)
    return tangent


@dataclass
class ConormalData:
    """Normal bundle of a curve in an ambient with the quotient realizing it."""
    normal: SplittingType
    model: object
    quotient: BundleMap

    @property
    def conormal(self):
        return self.normal.dual()

    def restricted_ambient_conormal(self, seed=DEFAULT_SEED):
        """Splitting of the conormal bundle of the ambient restricted to the curve."""
        return kernel_model(self.quotient, seed).splitting


def conormal_in_ambient(ambient, curve, seed=DEFAULT_SEED):
    """
    Normal bundle of the curve in the ambient

    The conormal bundle of the curve in the ambient is the cokernel of the
    Jacobian columns inside the conormal model of the curve in the projective
    spaces; the returned quotient maps model coordinates onto it.
    """
    validate_along_curve(ambient, curve, seed)
    model = conormal_Pn(curve, seed)
    if ambient.equations:
        conormal, quotient = cokernel_model(jacobian_in_model(model, ambient.jacobian_map(curve)), seed)
    else:
        conormal, quotient = model.splitting, BundleMap.identity(model.degrees, ambient.domain)
    normal = conormal.dual()
    if normal.rank != ambient.dim - 1:
        raise RankDropError('normal bundle has the wrong rank; equations do not generate the ideal along the curve',
                            rank=normal.rank, expected=ambient.dim - 1, ambient=ambient.label)
    expected = ambient.anticanonical.dot(curve) - 2
    if normal.degree != expected:
        raise AnticanonicalMismatchError('normal bundle degree disagrees with -K.C - 2',
                                         splitting=str(normal), expected=expected)
    return ConormalData(normal, model, quotient)


def _span_basis(forms, degree, domain):
    rows = [f.padded(degree) for f in forms if not f.is_zero]
    if not rows:
        return []
    reduced, pivots = dm(rows, len(rows), degree + 1, domain).rref()
    reduced = reduced.to_list()
    return [BinForm(reduced[r], domain) for r in range(len(pivots))]


def product_span_dimension(curve):
    """Dimension of the span of the products of one coordinate per block."""
    K = curve.domain
    basis, degree = [BinForm.constant(K.one, K)], 0
    for e, block in zip(curve.degrees, curve.blocks):
        degree += e
        basis = _span_basis([a * b for a in basis for b in block], degree, K)
    return len(basis)


def flag_vectors(ks, n, domain=None):
    """
    Frame of the flag along the curve, one list of vectors per factor

    The top factor uses v_j = sum_i s^(n-k_r-i) t^i e_(i+j); lower factors
    v_(k_i, j) = s^delta v_(k_(i+1), j) + t^delta v_(k_(i+1), j+delta).
    """
    domain = domain or field()
    zero = BinForm.zero(domain)
    top = ks[-1]
    vectors = {top: []}
    for j in range(top):
        vector = [zero] * n
        for i in range(n - top + 1):
            vector[i + j] = BinForm.monomial(n - top - i, i, domain)
        vectors[top].append(vector)
    for lower, upper in reversed(list(zip(ks, ks[1:]))):
        delta = upper - lower
        s_power = BinForm.monomial(delta, 0, domain)
        t_power = BinForm.monomial(0, delta, domain)
        vectors[lower] = [[s_power * a + t_power * b
                           for a, b in zip(vectors[upper][j], vectors[upper][j + delta])]
                          for j in range(lower)]
    return [vectors[k] for k in ks]


def flag_curve(ks, n, domain=None):
    """Rational curve in F(k_1, ..., k_r; n) given by the Pluecker coordinates of the frame."""
    domain = domain or field()
    ks = [int(k) for k in ks]
    blocks = []
    for k, vectors in zip(ks, flag_vectors(ks, n, domain)):
        block = []
        for rows in combinations(range(n), k):
            block.append(form_det([[vectors[j][i] for j in range(k)] for i in rows], domain))
        blocks.append(block)
    label = 'flag:%s;%d' % (','.join(str(k) for k in ks), n)
    return CurveMap(blocks, domain, [k * (n - k) for k in ks], label)


def certify_flag_curve(ks, n, domain=None):
    """
    Degree, linear normality and restricted universal subbundle of the flag curve
    """
    domain = domain or field()
    ks = [int(k) for k in ks]
    curve = flag_curve(ks, n, domain)
    top = ks[-1]
    frame = flag_vectors(ks, n, domain)[-1]
    inclusion = BundleMap([top - n] * top, [0] * n,
                          [[frame[j][i] for j in range(top)] for i in range(n)], domain)
    certificate = fiberwise_certificate(inclusion)
    span = product_span_dimension(curve)
    return {'curve': curve,
            'factor_degrees': list(curve.degrees),
            'h_degree': curve.h_degree,
            'span_dimension': span,
            'linearly_normal': span == curve.h_degree + 1,
            'subbundle': SplittingType([top - n] * top) if certificate['full_rank'] else None,
            'subbundle_certificate': certificate}


def product_curve(dims, domain=None):
    """Rational normal curve of degree a_j in each factor P^(a_j)."""
    domain = domain or field()
    dims = [int(a) for a in dims]
    if any(a < 1 for a in dims):
        raise HypothesisError('factor dimensions must be positive', dims=dims)
    return CurveMap([rnc_forms(a, domain) for a in dims], domain, dims,
                    'product:' + ','.join(str(a) for a in dims))


def b_sequence_gaps(weights, a, b, total=None):
    """
    Integers 0 <= l <= m a not of the form sum c_i b_i with sum c_i w_i = total

    ``total`` defaults to a, the weighted degree of the embedding monomials,
    so an empty result means every monomial s^l t^(ma - l) is hit.
    """
    m = len(weights) - 1
    total = a if total is None else total
    reached = {sum(c * x for c, x in zip(combo, b)) for combo in wps_monomials(weights, total)}
    return [l for l in range(m * a + 1) if l not in reached]


def recipe_b_sequence(weights, a):
    """b_i = i, b_(m-1) = m and b_m = m w_m."""
    m = len(weights) - 1
    b = list(range(m + 1))
    b[m - 1] = m
    b[m] = m * weights[m]
    return tuple(b)


def b_search(weights, a):
    """
    Exponents b_i <= m w_i making the monomial curve a rational normal curve

    The recipe sequence is tried first, then an exhaustive lexicographic search;
    returns None when no sequence exists.
    """
    weights = [int(w) for w in weights]
    m = len(weights) - 1
    recipe = recipe_b_sequence(weights, a)
    if all(0 <= x <= m * w for x, w in zip(recipe, weights)) and not b_sequence_gaps(weights, a, recipe):
        return recipe
    logger.info('recipe sequence %s misses %s, searching exhaustively',
                recipe, b_sequence_gaps(weights, a, recipe))
    for b in product(*[range(m * w + 1) for w in weights]):
        if not b_sequence_gaps(weights, a, b):
            return tuple(b)
    return None


def wps_curve(weights, a, b, domain=None):
    """
    Monomial curve x_i = s^(b_i) t^(m w_i - b_i) mapped through the degree a embedding
    """
    domain = domain or field()
    weights = [int(w) for w in weights]
    m = len(weights) - 1
    b = [int(x) for x in b]
    if len(b) != len(weights) or any(not 0 <= x <= m * w for x, w in zip(b, weights)):
        raise InvalidSequenceError('need 0 <= b_i <= m w_i', b=b, weights=weights)
    gaps = b_sequence_gaps(weights, a, b)
    if gaps:
        raise InvalidSequenceError('integer is not expressible from the b sequence',
                                   ell=gaps[0], b=b, weights=weights)
    coordinates = []
    for exponents in wps_monomials(weights, a):
        power = sum(c * x for c, x in zip(exponents, b))
        coordinates.append(BinForm.monomial(power, m * a - power, domain))
    return CurveMap([coordinates], domain, [m * a],
                    'wps:%s;%d b=%s' % (','.join(str(w) for w in weights), a,
                                        ','.join(str(x) for x in b)))


def general_wps_curve(weights, a, domain=None, seed=DEFAULT_SEED):
    """Curve given by a general tuple of forms f_i of degrees m w_i."""
    domain = domain or field()
    weights = [int(w) for w in weights]
    m = len(weights) - 1
    rng = np.random.default_rng(seed)
    forms = [random_form(m * w, domain, rng) for w in weights]
    coordinates = []
    for exponents in wps_monomials(weights, a):
        coordinate = BinForm.constant(domain.one, domain)
        for f, c in zip(forms, exponents):
            coordinate = coordinate * f ** c
        coordinates.append(coordinate)
    return CurveMap([coordinates], domain, [m * a],
                    'wps:%s;%d general seed=%d' % (','.join(str(w) for w in weights), a, seed))


def default_curve(ambient):
    """Curve the catalog associates with an ambient."""
    K = ambient.domain
    if ambient.kind == 'projective':
        return canonical_rnc(ambient.params['n'], ambient.params['n'], K)
    if ambient.kind == 'product':
        return product_curve(ambient.params['dims'], K)
    if ambient.kind == 'grassmannian':
        return flag_curve([ambient.params['k']], ambient.params['n'], K)
    if ambient.kind == 'flag':
        return flag_curve(ambient.params['ks'], ambient.params['n'], K)
    if ambient.kind == 'wps':
        weights, a = ambient.params['weights'], ambient.params['a']
        b = b_search(weights, a)
        if b is None:
            raise InvalidSequenceError('no valid b sequence exists', weights=weights, a=a)
        return wps_curve(weights, a, b, K)
    raise HypothesisError('no default curve for this ambient', kind=ambient.kind)
