# -*- coding: utf-8 -*-

"""Provide normal bundles of products of rational curves.

For maps f_i : P^1 -> X_i the diagonal map g = (f_1, f_2 o alpha_2, ...)
into the product has conormal sections at twist d equal to the sections of
f*T*X(d) killed by the differential. The differential's image in
H0(O(d - 2)) is the sum of the factor images V_(i,d); when these are
transverse, h0(N*_g(d)) is given by

    max(h0(f*T*X(d)) - (d - 1), sum_i h0(N*_(f_i)(d))).
"""

import logging
from dataclasses import dataclass

import numpy as np

from .ambient import jacobian_in_model, validate_along_curve
from .bundles import SplittingType, cokernel_model, factor_through, sections_matrix
from .curves import (CurveMap, charp_curve, conormal_Pn, cotangent_differential,
                     euler_cotangent_model, require_valid)
from .errors import HypothesisError
from .exact import BinForm, characteristic, field, form_det, independent_columns, random_scalar
from .montecarlo import DEFAULT_SEED, DEFAULT_TRIALS, MonteCarloSplittingAlgorithm, trial_seeds

logger = logging.getLogger(__name__)

IDENTITY = ((1, 0), (0, 1))


def random_automorphism(domain, rng):
    """Uniform invertible 2 x 2 matrix over the field, by rejection on the determinant."""
    while True:
        (a, b), (c, d) = [[random_scalar(domain, rng) for _ in range(2)] for _ in range(2)]
        if a * d - b * c:
            return ((a, b), (c, d))


def _check_invertible(alpha, domain):
    (a, b), (c, d) = [[domain.convert(x) for x in row] for row in alpha]
    if not a * d - b * c:
        raise HypothesisError('automorphism is singular', alpha=str(alpha))
    return ((a, b), (c, d))


def twisted_product(curves, alphas=None, seed=None, check=True):
    """
    Product map (f_1, f_2 o alpha_2, ..., f_r o alpha_r)

    :curves: factor :class:`~rcsplit.curves.CurveMap` objects over a common field

    :alphas: automorphisms for the factors 2..r (or 1..r, the first one must
        then be the identity); drawn at random from ``seed`` when omitted

    With ``check``, the cotangent splitting of every factor is asserted
    unchanged by the twist.
    """
    curves = list(curves)
    K = curves[0].domain
    if alphas is None:
        rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
        alphas = [random_automorphism(K, rng) for _ in curves[1:]]
    alphas = list(alphas)
    if len(alphas) == len(curves) - 1:
        alphas = [IDENTITY] + alphas
    if len(alphas) != len(curves):
        raise HypothesisError('one automorphism per twisted factor is needed',
                              factors=len(curves), alphas=len(alphas))
    alphas = [_check_invertible(alpha, K) for alpha in alphas]
    blocks, degrees, labels = [], [], []
    for index, (curve, alpha) in enumerate(zip(curves, alphas)):
        require_valid(curve)
        twisted = curve if index == 0 else curve.substitute(alpha)
        if check and index > 0:
            before = euler_cotangent_model(curve).splitting
            after = euler_cotangent_model(twisted).splitting
            if before != after:
                raise HypothesisError('twisting changed the cotangent splitting',
                                      before=str(before), after=str(after))
        blocks.extend(twisted.blocks)
        degrees.extend(twisted.degrees)
        labels.append(curve.label)
    return CurveMap(blocks, K, degrees, ' x '.join(labels))


@dataclass
class TwistSubspace:
    """
    Image V_d of H0(f*T*X(d)) in H0(T*P^1(d)) = H0(O(d - 2))

    :d: twist

    :basis: independent forms of degree d - 2
    """
    d: int
    basis: list

    @property
    def v(self):
        return len(self.basis)

    @property
    def full(self):
        return self.v == max(0, self.d - 1)

    def to_json(self):
        return {'d': self.d, 'v': self.v, 'basis': [str(f) for f in self.basis]}


def differential_map(curve, ambient=None, seed=DEFAULT_SEED):
    """
    Map f*T*X -> T*P^1 on model coordinates

    For a projective space the cotangent model maps directly; inside an
    ambient the differential is factored through the quotient onto
    Omega_X restricted to the curve.
    """
    model = euler_cotangent_model(curve, seed)
    differential = cotangent_differential(curve, model, seed)
    if ambient is None or not ambient.equations:
        return differential
    validate_along_curve(ambient, curve, seed)
    _, quotient = cokernel_model(jacobian_in_model(model, ambient.jacobian_map(curve)), seed)
    return factor_through(quotient, differential)


def _image(differential, d):
    K = differential.domain
    if d < 2:
        return TwistSubspace(d, [])
    matrix = sections_matrix(differential, d)
    columns = [list(column) for column in zip(*matrix.to_list())] if matrix.shape[1] else []
    basis = [BinForm(columns[i], K) for i in independent_columns(columns, d - 1, K)]
    return TwistSubspace(d, basis)


def factor_image(curve, d, ambient=None, seed=DEFAULT_SEED):
    """Subspace V_d of H0(O(d - 2)) hit by the differential of the curve at twist d."""
    return _image(differential_map(curve, ambient, seed), d)


def subspace_sum_dimension(subspaces, d, domain):
    """Dimension of the sum of subspaces of H0(O(d - 2))."""
    columns = [f.padded(d - 2) for space in subspaces for f in space.basis]
    return len(independent_columns(columns, d - 1, domain)) if columns else 0


def d0(curves, ambients=None, seed=DEFAULT_SEED):
    """
    Smallest d >= 2 where some factor image is all of H0(O(d - 2))

    The scan stops at the twist after which every N*_(f_i)(d) has no h1, where
    the images are full.
    """
    ambients = ambients or [None] * len(curves)
    differentials = [differential_map(c, X, seed) for c, X in zip(curves, ambients)]
    bound = 2
    for curve in curves:
        bound = max(bound, -min(conormal_Pn(curve, seed).splitting.summands) - 1)
    for d in range(2, bound + 1):
        if any(_image(m, d).full for m in differentials):
            return d
    return bound


def wronskian(forms):
    """Determinant of the iterated t-derivatives of a tuple of binary forms."""
    forms = list(forms)
    if not forms:
        raise HypothesisError('wronskian of an empty tuple')
    K = forms[0].domain
    rows, current = [], forms
    for _ in range(len(forms)):
        rows.append(current)
        current = [f.partial_t() for f in current]
    return form_det(rows, K)


def characteristic_condition(curves, ambients=None, seed=DEFAULT_SEED):
    """
    Whether the product formula is expected in the characteristic of the field

    Holds in characteristic 0, when p >= d0 - 1, or when some factor image at
    twist p + 2 is all of H0(O(p)).
    """
    K = curves[0].domain
    p = characteristic(K)
    if p == 0:
        return {'holds': True, 'reason': 'characteristic zero'}
    value = d0(curves, ambients, seed)
    if p >= value - 1:
        return {'holds': True, 'reason': 'p >= d0 - 1', 'd0': value}
    ambients = ambients or [None] * len(curves)
    for index, (curve, X) in enumerate(zip(curves, ambients)):
        if factor_image(curve, p + 2, X, seed).full:
            return {'holds': True, 'reason': 'factor %d surjective at twist p + 2' % index,
                    'd0': value}
    return {'holds': False, 'reason': 'p < d0 - 1 and no factor surjective at p + 2',
            'd0': value}


@dataclass
class FactorProfile:
    """Restricted cotangent and conormal splittings of one factor."""
    cotangent: SplittingType
    conormal: SplittingType

    def __post_init__(self):
        self.cotangent = SplittingType(self.cotangent)
        self.conormal = SplittingType(self.conormal)
        if self.conormal.rank != self.cotangent.rank - 1 or \
                self.conormal.degree != self.cotangent.degree + 2:
            raise HypothesisError('conormal is not the kernel of a map onto O(-2)',
                                  cotangent=str(self.cotangent), conormal=str(self.conormal))

    @classmethod
    def from_normal(cls, tangent, normal):
        return cls(SplittingType(tangent).dual(), SplittingType(normal).dual())

    @classmethod
    def of_curve(cls, curve, seed=DEFAULT_SEED):
        return cls(euler_cotangent_model(curve, seed).splitting, conormal_Pn(curve, seed).splitting)

    def to_json(self):
        return {'cotangent': self.cotangent.to_json(), 'conormal': self.conormal.to_json()}


def product_formula(profiles, d):
    """h0(N*_g(d)) predicted from the factor profiles."""
    cotangent = sum(profile.cotangent.h0(d) for profile in profiles)
    conormal = sum(profile.conormal.h0(d) for profile in profiles)
    return max(cotangent - max(0, d - 1), conormal)


def predicted_splitting(profiles):
    """Conormal splitting of g read off the h0 formula."""
    rank = sum(profile.cotangent.rank for profile in profiles) - 1
    return SplittingType.from_h0(lambda d: product_formula(profiles, d), rank)


def predicted_normal(profiles):
    return predicted_splitting(profiles).dual()


def _d_range(d_range):
    first, last = d_range
    return range(int(first), int(last) + 1)


class ProductTheoremAlgorithm(MonteCarloSplittingAlgorithm):
    """
    Monte-Carlo check of the product formula over random twists

    :curves: factor curves in projective spaces

    :d_range: pair (first, last) of twists compared

    Each trial draws automorphisms, computes N*_g of the twisted product and
    compares h0 at every twist with the formula and the transversality
    identity dim(sum V_(i,d)) = min(d - 1, sum v_(i,d)).
    """

    def __init__(self, curves, d_range=(2, 8), trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                 verbose=False):
        super().__init__(trials, seed, verbose)
        self.curves = list(curves)
        if len(self.curves) < 1:
            raise HypothesisError('at least one factor is needed')
        self.domain = self.curves[0].domain
        self.d_range = tuple(d_range)
        self.profiles = [FactorProfile.of_curve(c, seed) for c in self.curves]

    def sample(self, rng):
        K = self.domain
        alphas = [random_automorphism(K, rng) for _ in self.curves[1:]]
        product = twisted_product(self.curves, alphas, check=False)
        conormal = conormal_Pn(product).splitting
        twisted = [self.curves[0]] + [c.substitute(a) for c, a in zip(self.curves[1:], alphas)]
        differentials = [cotangent_differential(c) for c in twisted]
        per_d = {}
        for d in _d_range(self.d_range):
            images = [_image(m, d) for m in differentials]
            expected = min(max(0, d - 1), sum(image.v for image in images))
            per_d[d] = {'observed': conormal.h0(d),
                        'formula': product_formula(self.profiles, d),
                        'transversal': subspace_sum_dimension(images, d, K) == expected}
        return conormal, {'per_d': per_d,
                          'alphas': [[[str(x) for x in row] for row in a] for a in alphas]}


def verify_product_theorem(curves, d_range=(2, 8), trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                           verbose=False):
    """
    Report on the product formula for the given factors

    A trial passes when observed and predicted h0 agree at every twist of the
    range; the report passes when some trial does. Observed values never fall
    below the formula by semicontinuity, which is reported as ``one_sided``.
    """
    curves = list(curves)
    condition = characteristic_condition(curves)
    if not condition['holds']:
        logger.warning('characteristic condition fails: %s', condition['reason'])
    algorithm = ProductTheoremAlgorithm(curves, d_range, trials, seed, verbose)
    conormal = algorithm.compute_splitting()
    records = []
    for record in algorithm.getSamples():
        per_d = record.data['per_d']
        records.append({'alphas_seed': record.seed,
                        'per_d': {str(d): values for d, values in per_d.items()},
                        'pass': all(v['observed'] == v['formula'] for v in per_d.values())})
    one_sided = all(v['observed'] >= v['formula']
                    for record in algorithm.getSamples() for v in record.data['per_d'].values())
    return {'factors': [c.label for c in curves],
            'd_range': list(d_range),
            'characteristic_condition': condition,
            'trials': records,
            'one_sided': one_sided,
            'normal': conormal.dual().to_json(),
            'predicted_normal': predicted_normal(algorithm.profiles).to_json(),
            'pass': any(r['pass'] for r in records)}


def charp_image_dimension(p, d):
    """Closed-form dimension of the differential's image at twist d for the curve of charp_curve."""
    return max(0, min(2 * (d - p - 1), d - 1))


def charp_monomial_image_dimension(p, d):
    """
    Dimension of the differential's image at twist d for the curve of charp_curve

    The partials of the curve are (s^p, 0, t^p, 0) and (0, s^p, 0, t^p), so the
    image is spanned by the monomials h of degree d - 2 with s h and t h in
    the ideal (s^p, t^p).
    """
    n = d - 2

    def in_ideal(a, b):
        return a >= p or b >= p

    return sum(1 for a in range(n + 1) if in_ideal(a + 1, n - a) and in_ideal(a, n - a + 1))


def charp_demo(p, samples=10, seed=DEFAULT_SEED):
    """
    Counterexample to the product formula in characteristic p

    The pair of copies of (s^(p+1), s^p t, s t^p, t^(p+1)) in P^3 x P^3 is
    twisted by random automorphisms; its conormal splitting is the same for
    every sample and differs from the formula. Image dimensions and the
    conormal splitting are also compared with their closed forms, and
    each disagreement is listed under ``discrepancies``.
    """
    K = field(p)
    curve = charp_curve(p, K)
    profile = FactorProfile.of_curve(curve, seed)
    differential = cotangent_differential(curve)
    images = {}
    for d in range(2, 2 * p + 3):
        images[d] = {'computed': _image(differential, d).v,
                     'monomials': charp_monomial_image_dimension(p, d),
                     'expected': charp_image_dimension(p, d)}
    observed = []
    for trial_seed in trial_seeds(seed, samples):
        product = twisted_product([curve, curve], seed=trial_seed)
        observed.append(conormal_Pn(product).splitting)
    predicted = predicted_splitting([profile, profile])
    expected = SplittingType([-2 * p - 2, -2 * p, -2 * p, -p - 2, -p - 2])
    discrepancies = ['image at twist %d is %d, closed form %d'
                     % (d, v['computed'], v['expected'])
                     for d, v in images.items() if v['computed'] != v['expected']]
    discrepancies.extend('conormal %s, closed form %s' % (s, expected)
                         for s in sorted(set(observed), key=str) if s != expected)
    if discrepancies:
        logger.warning('characteristic %d: %s', p, '; '.join(discrepancies))
    return {'p': p,
            'cotangent': profile.cotangent.to_json(),
            'expected_cotangent': [-2 * p, -p - 2, -p - 2],
            'conormal_factor': profile.conormal.to_json(),
            'differential': [str(f) for f in differential.row(0)],
            'images': {str(d): v for d, v in images.items()},
            'images_match': all(v['computed'] == v['expected'] for v in images.values()),
            'images_match_monomials': all(v['computed'] == v['monomials'] for v in images.values()),
            'observed': [s.to_json() for s in observed],
            'expected_conormal': expected.to_json(),
            'all_expected': all(s == expected for s in observed),
            'consistent': len(set(observed)) == 1,
            'discrepancies': discrepancies,
            'formula_conormal': predicted.to_json(),
            'formula_mismatch': all(s != predicted for s in observed)}
