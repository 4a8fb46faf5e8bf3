# -*- coding: utf-8 -*-

"""Provide split bundles on P^1, bundle maps and their kernel and cokernel models.

A map between split bundles E = sum O(a_i) and F = sum O(b_j) is a matrix of
binary forms, entry (j, i) of degree b_j - a_i. Sheaf kernels are realized
degree by degree: the kernel of the induced map on sections at twist d is
computed exactly and its minimal generators give a free basis of the kernel.
"""

import logging
from dataclasses import dataclass

import numpy as np
from sympy.polys.fields import field as fraction_field

from .errors import (DegreeMismatchError, HypothesisError, InconsistentProfileError, NotInModelError,
                     NotSurjectiveError, SearchBoundError)
from .exact import (BinForm, LinearSolver, dm, field, form_sum, independent_columns,
                    matrix_rank, minor_gcd, point_to_str, random_form, random_point,
                    roots_of_form)
from .montecarlo import DEFAULT_SEED, DEFAULT_TRIALS, MonteCarloSplittingAlgorithm

logger = logging.getLogger(__name__)

GENERIC_RANK_RETRIES = 3
VERIFICATION_WINDOW = 2
INFERENCE_LIMIT = 10000


@dataclass(frozen=True)
class SplittingType:
    """
    Splitting type of a bundle sum O(a_i) on P^1

    :summands: sequence of integers, stored ascending
    """
    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'summands', tuple(sorted(int(a) for a in self.summands)))

    @property
    def rank(self):
        return len(self.summands)

    @property
    def degree(self):
        return sum(self.summands)

    def dual(self):
        return SplittingType(-a for a in self.summands)

    def twist(self, d):
        return SplittingType(a + d for a in self.summands)

    def h0(self, d=0):
        return sum(max(0, a + d + 1) for a in self.summands)

    def h1(self, d=0):
        return sum(max(0, -a - d - 1) for a in self.summands)

    def profile(self, first, last):
        """h0 at every twist from first to last inclusive."""
        return tuple(self.h0(d) for d in range(first, last + 1))

    def dominated_by(self, other):
        """True when h0 of self is at most h0 of other at every twist."""
        entries = self.summands + other.summands
        if not entries:
            return True
        first, last = -max(entries) - 1, -min(entries) + 1
        return all(self.h0(d) <= other.h0(d) for d in range(first, last + 1))

    @property
    def is_ample(self):
        return all(a >= 1 for a in self.summands)

    @property
    def is_globally_generated(self):
        return all(a >= 0 for a in self.summands)

    @property
    def is_balanced(self):
        return not self.summands or self.summands[-1] - self.summands[0] <= 1

    def predicates(self):
        return {'ample': self.is_ample,
                'globally_generated': self.is_globally_generated,
                'balanced': self.is_balanced,
                'degree': self.degree,
                'rank': self.rank}

    def to_json(self):
        return list(self.summands)

    def render(self):
        if not self.summands:
            return '0'
        return ' ⊕ '.join('O(%d)' % a for a in self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def __str__(self):
        return '[' + ','.join(str(a) for a in self.summands) + ']'

    @classmethod
    def from_h0(cls, oracle, rank, start=None):
        """
        Recover a splitting type from its h0 profile

        :oracle: callable, d -> h0(V(d)) exact for every integer d

        :rank: integer, rank of V

        :start: optional twist where h0 vanishes; searched downward from 0 otherwise

        Uses the first differences h0(d) - h0(d-1) = #{i : a_i >= -d}.
        """
        if start is None:
            start = 0
            while oracle(start) != 0:
                start -= 1
                if -start > INFERENCE_LIMIT:
                    raise InconsistentProfileError('h0 never vanishes', rank=rank)
        elif oracle(start) != 0:
            raise InconsistentProfileError('h0 does not vanish at the start twist', start=start)
        summands = []
        previous_value, previous_delta = 0, 0
        d = start
        while len(summands) < rank:
            d += 1
            if d - start > INFERENCE_LIMIT:
                raise InconsistentProfileError('profile never reaches the rank', rank=rank)
            value = oracle(d)
            delta = value - previous_value
            if delta < previous_delta or delta > rank:
                raise InconsistentProfileError('h0 differences are not those of a split bundle',
                                               twist=d, delta=delta, rank=rank)
            summands.extend([-d] * (delta - previous_delta))
            previous_value, previous_delta = value, delta
        return cls(summands)


def h0_and_inference(source, d=None, rank=None, start=None):
    """
    h0 of a splitting type at twist d, or the splitting type of an h0 oracle

    :source: :class:`SplittingType` (direct mode) or callable d -> h0 (oracle mode)
    """
    if isinstance(source, SplittingType):
        return source.h0(d)
    if rank is None:
        raise HypothesisError('oracle mode needs the rank')
    return SplittingType.from_h0(source, rank, start)


def bundle_predicates(splitting):
    return splitting.predicates()


def _as_degrees(degrees):
    if isinstance(degrees, SplittingType):
        return degrees.summands
    return tuple(int(a) for a in degrees)


class BundleMap:
    """
    Morphism between split bundles on P^1

    :source: sequence of integers, ordered summand degrees a_i of the source

    :target: sequence of integers, ordered summand degrees b_j of the target

    :entries: matrix of :class:`BinForm` with one row per target summand,
        entry (j, i) of degree b_j - a_i and zero when b_j < a_i

    :domain: exact field
    """

    def __init__(self, source, target, entries, domain):
        self.source = _as_degrees(source)
        self.target = _as_degrees(target)
        self.entries = tuple(tuple(row) for row in entries)
        self.domain = domain
        if len(self.entries) != len(self.target):
            raise DegreeMismatchError('one row per target summand is needed',
                                      rows=len(self.entries), target=self.target)
        for j, row in enumerate(self.entries):
            if len(row) != len(self.source):
                raise DegreeMismatchError('one column per source summand is needed',
                                          row=j, source=self.source)
            for i, entry in enumerate(row):
                if entry.is_zero:
                    continue
                if entry.domain != domain or entry.degree != self.target[j] - self.source[i]:
                    raise DegreeMismatchError('entry has the wrong degree', row=j, column=i,
                                              expected=self.target[j] - self.source[i],
                                              found=entry.degree)

    @classmethod
    def zero(cls, source, target, domain):
        source, target = _as_degrees(source), _as_degrees(target)
        return cls(source, target, [[BinForm.zero(domain)] * len(source) for _ in target], domain)

    @classmethod
    def identity(cls, degrees, domain):
        degrees = _as_degrees(degrees)
        one = BinForm.constant(domain.one, domain)
        return cls(degrees, degrees, [[one if i == j else BinForm.zero(domain)
                                       for i in range(len(degrees))]
                                      for j in range(len(degrees))], domain)

    @classmethod
    def random(cls, source, target, domain, rng):
        """Map with independent uniformly random entries."""
        source, target = _as_degrees(source), _as_degrees(target)
        return cls(source, target, [[random_form(b - a, domain, rng) for a in source]
                                    for b in target], domain)

    @property
    def shape(self):
        return len(self.target), len(self.source)

    @property
    def source_type(self):
        return SplittingType(self.source)

    @property
    def target_type(self):
        return SplittingType(self.target)

    def transpose(self):
        """Dual map F^v -> E^v."""
        return BundleMap([-b for b in self.target], [-a for a in self.source],
                         [[self.entries[j][i] for j in range(len(self.target))]
                          for i in range(len(self.source))], self.domain)

    def compose(self, other):
        """The map self o other."""
        if tuple(other.target) != tuple(self.source):
            raise DegreeMismatchError('maps are not composable',
                                      inner=other.target, outer=self.source)
        return BundleMap(other.source, self.target,
                         [[form_sum((self.entries[k][j] * other.entries[j][i]
                                     for j in range(len(self.source))), self.domain)
                           for i in range(len(other.source))]
                          for k in range(len(self.target))], self.domain)

    def row(self, j):
        return self.entries[j]

    def column(self, i):
        return tuple(row[i] for row in self.entries)

    def apply(self, sections):
        """Image of a section tuple of E(d), a section tuple of F(d)."""
        return tuple(form_sum((entry * v for entry, v in zip(row, sections)), self.domain)
                     for row in self.entries)

    def evaluate(self, point):
        return [[entry.eval_at(point) for entry in row] for row in self.entries]

    def generic_rank(self, seed=DEFAULT_SEED, retries=GENERIC_RANK_RETRIES):
        """
        Rank over the function field

        Evaluated at random points first; when no point reaches full rank the
        rank is computed exactly over K(x) on the dehomogenized matrix.
        """
        full = min(self.shape)
        if full == 0:
            return 0
        rng = np.random.default_rng(seed)
        best = 0
        for _ in range(retries):
            point = random_point(self.domain, rng)
            best = max(best, matrix_rank(self.evaluate(point), len(self.source), self.domain))
            if best == full:
                return best
        return self.exact_rank()

    def exact_rank(self):
        """Rank over K(x), with the entries dehomogenized at t = 1."""
        F, x = fraction_field('x', self.domain)
        rows = [[sum((F.ground_new(c) * x**(entry.degree - k)
                      for k, c in enumerate(entry.coeffs) if c), F.zero)
                 for entry in row] for row in self.entries]
        return dm(rows, len(self.target), len(self.source), F.to_domain()).rank()

    def structural_rank(self):
        """
        Largest rank of a map with the same source and target

        Maximum matching between target and source summands joined by an
        allowed (nonnegative degree) entry.
        """
        match = {}

        def augment(j, seen):
            for i, a in enumerate(self.source):
                if self.target[j] < a or i in seen:
                    continue
                seen.add(i)
                if i not in match or augment(match[i], seen):
                    match[i] = j
                    return True
            return False

        return sum(1 for j in range(len(self.target)) if augment(j, set()))

    def __eq__(self, other):
        if not isinstance(other, BundleMap):
            return NotImplemented
        return (self.source, self.target, self.entries) == (other.source, other.target, other.entries)

    def to_json(self):
        return {'source': list(self.source), 'target': list(self.target),
                'entries': [[entry.to_json() for entry in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data, domain):
        return cls(data['source'], data['target'],
                   [[BinForm.from_json(entry, domain) for entry in row] for row in data['entries']],
                   domain)


def section_vector(sections, degrees, d):
    """Coordinates of a section tuple of sum O(a_i)(d) in the monomial bases."""
    vector = []
    for form, a in zip(sections, degrees):
        if a + d < 0:
            if not form.is_zero:
                raise DegreeMismatchError('nonzero section of a negative line bundle',
                                          degree=a, twist=d)
            continue
        vector.extend(form.padded(a + d))
    return vector


def section_forms(vector, degrees, d, domain):
    """Section tuple of sum O(a_i)(d) with the given monomial coordinates."""
    forms, position = [], 0
    for a in degrees:
        size = max(0, a + d + 1)
        forms.append(BinForm(vector[position:position + size], domain))
        position += size
    return tuple(forms)


def sections_matrix(bundle_map, d):
    """
    Matrix of H0(E(d)) -> H0(F(d)) in the monomial bases

    Bases run s^(a+d), s^(a+d-1) t, ..., t^(a+d) for each summand in order.
    """
    K = bundle_map.domain
    source_sizes = [max(0, a + d + 1) for a in bundle_map.source]
    target_sizes = [max(0, b + d + 1) for b in bundle_map.target]
    source_offsets = np.concatenate(([0], np.cumsum(source_sizes))).astype(int)
    target_offsets = np.concatenate(([0], np.cumsum(target_sizes))).astype(int)
    nrows, ncols = int(target_offsets[-1]), int(source_offsets[-1])
    rows = [[K.zero] * ncols for _ in range(nrows)]
    for i, size in enumerate(source_sizes):
        for j, entry in enumerate(bundle_map.column(i)):
            if entry.is_zero:
                continue
            for k in range(size):
                for l, c in enumerate(entry.coeffs):
                    if c:
                        rows[target_offsets[j] + k + l][source_offsets[i] + k] += c
    return dm(rows, nrows, ncols, K)


class SubbundleModel:
    """
    Free basis of a saturated subsheaf of a split bundle E

    :ambient: ordered summand degrees of E

    :twists: twists d_l at which the generators live

    :generators: sequence of columns, column l a section tuple of E(d_l)

    :domain: exact field

    The modeled bundle is sum O(-d_l) with inclusion given by the columns.
    """

    def __init__(self, ambient, twists, generators, domain):
        self.ambient = _as_degrees(ambient)
        self.twists = tuple(int(d) for d in twists)
        self.generators = tuple(tuple(column) for column in generators)
        self.domain = domain
        self._solvers = {}

    @property
    def rank(self):
        return len(self.twists)

    @property
    def degrees(self):
        """Ordered summand degrees c_l = -d_l of the modeled bundle."""
        return tuple(-d for d in self.twists)

    @property
    def splitting(self):
        return SplittingType(self.degrees)

    def inclusion(self):
        return BundleMap(self.degrees, self.ambient,
                         [[column[i] for column in self.generators]
                          for i in range(len(self.ambient))], self.domain)

    def _solver(self, d):
        if d not in self._solvers:
            self._solvers[d] = LinearSolver(sections_matrix(self.inclusion(), d))
        return self._solvers[d]

    def express_many(self, sections_list, d):
        """Model coordinates of several section tuples of E(d)."""
        solver = self._solver(d)
        coordinates = []
        for sections in sections_list:
            solution = solver.solve(section_vector(sections, self.ambient, d))
            if solution is None:
                raise NotInModelError('section does not lie in the modeled subsheaf',
                                      twist=d, section=[str(f) for f in sections])
            coordinates.append(section_forms(solution, self.degrees, d, self.domain))
        return coordinates

    def express(self, sections, d=None):
        if d is None:
            d = _section_twist(sections, self.ambient)
        return self.express_many([sections], d)[0]

    def fiberwise_gcd(self):
        return minor_gcd(self.inclusion().entries, self.rank, self.domain)

    def certify(self, bundle_map=None):
        """Fiberwise injectivity of the generators, and M.G = 0 when M is given."""
        gcd = self.fiberwise_gcd()
        certificate = {'fiberwise_injective': self.rank == 0 or (not gcd.is_zero and gcd.degree == 0),
                       'minor_gcd': str(gcd)}
        if bundle_map is not None:
            product = bundle_map.compose(self.inclusion()) if self.rank else None
            certificate['annihilated'] = product is None or all(
                entry.is_zero for row in product.entries for entry in row)
        return certificate


def _section_twist(sections, degrees):
    for form, a in zip(sections, degrees):
        if not form.is_zero:
            return form.degree - a
    return 0


def express_in_model(model, sections, d=None):
    """Coefficients u with G.u equal to the given section tuple of E(d)."""
    return model.express(sections, d)


def _multiples(twists, generators, degrees, d, domain):
    """Coordinates of every monomial multiple of the generators at twist d."""
    vectors = []
    for twist, column in zip(twists, generators):
        k = d - twist
        for a in range(k, -1, -1):
            monomial = BinForm.monomial(a, k - a, domain)
            vectors.append(section_vector([monomial * g for g in column], degrees, d))
    return vectors


def kernel_model(bundle_map, seed=DEFAULT_SEED):
    """
    Minimal free generators of the kernel of a bundle map

    Twists are scanned upward from -max(a_i). At each twist, kernel vectors of
    the sections matrix outside the span of multiples of earlier generators
    become new generators, until rank(E) - generic rank generators are found.
    The result is checked against kernel dimensions on a window past the
    search bound.
    """
    K = bundle_map.domain
    E = bundle_map.source
    if not E:
        return SubbundleModel(E, (), (), K)
    generic = bundle_map.generic_rank(seed)
    expected = len(E) - generic
    if expected == 0:
        return SubbundleModel(E, (), (), K)
    top = max(E)
    sigma = sum(sorted(bundle_map.target)[len(bundle_map.target) - generic:]) if generic else 0
    bound = sigma - sum(E) + (expected - 1) * top

    twists, generators = [], []
    d = -top
    while len(generators) < expected:
        if d > bound:
            raise SearchBoundError('kernel generators not found below the search bound',
                                   bound=bound, found=len(generators), expected=expected,
                                   source=E, target=bundle_map.target)
        kernel = LinearSolver(sections_matrix(bundle_map, d)).nullspace()
        if kernel:
            spanned = _multiples(twists, generators, E, d, K)
            length = len(kernel[0])
            fresh = [p - len(spanned) for p in independent_columns(spanned + kernel, length, K)
                     if p >= len(spanned)]
            if len(generators) + len(fresh) > expected:
                raise SearchBoundError('more kernel generators than the kernel rank',
                                       twist=d, expected=expected, source=E,
                                       target=bundle_map.target)
            for index in fresh:
                twists.append(d)
                generators.append(section_forms(kernel[index], E, d, K))
            logger.debug('twist %d: %d kernel sections, %d new generators', d, len(kernel), len(fresh))
        d += 1

    model = SubbundleModel(E, twists, generators, K)
    splitting = model.splitting
    for check in range(max(d, bound + 1), max(d, bound + 1) + VERIFICATION_WINDOW):
        observed = LinearSolver(sections_matrix(bundle_map, check)).nullity
        if observed != splitting.h0(check):
            raise SearchBoundError('kernel dimension disagrees with the generated submodule',
                                   twist=check, observed=observed, predicted=splitting.h0(check))
    return model


def cokernel_model(bundle_map, seed=DEFAULT_SEED):
    """
    Quotient of the target by the saturated image of a bundle map

    Returns the splitting type of the quotient Q and the fiberwise surjective
    map F -> Q, whose rows are the generators of the kernel of the transpose.
    """
    annihilator = kernel_model(bundle_map.transpose(), seed)
    K = bundle_map.domain
    quotient = BundleMap(bundle_map.target, annihilator.twists,
                         [[column[j] for j in range(len(bundle_map.target))]
                          for column in annihilator.generators], K)
    return SplittingType(annihilator.twists), quotient


def factor_through(quotient, bundle_map):
    """
    Map M' with M' o quotient = M

    :quotient: fiberwise surjective :class:`BundleMap` A -> Q

    :bundle_map: :class:`BundleMap` A -> B vanishing on the kernel of the quotient
    """
    if tuple(quotient.source) != tuple(bundle_map.source):
        raise DegreeMismatchError('maps do not share their source',
                                  quotient=quotient.source, source=bundle_map.source)
    K = quotient.domain
    dual = quotient.transpose()
    rows = []
    for k, beta in enumerate(bundle_map.target):
        solver = LinearSolver(sections_matrix(dual, beta))
        solution = solver.solve(section_vector(bundle_map.row(k), dual.target, beta))
        if solution is None:
            raise NotInModelError('map does not factor through the quotient', row=k)
        rows.append(section_forms(solution, dual.source, beta, K))
    return BundleMap(quotient.target, bundle_map.target, rows, K)


def fiberwise_certificate(bundle_map):
    """
    Fiberwise full rank certificate of a bundle map

    The map has full rank min(shape) at every point iff the gcd of its
    maximal minors is a nonzero constant; otherwise the roots of the gcd over
    the base field are reported.
    """
    K = bundle_map.domain
    size = min(bundle_map.shape)
    gcd = minor_gcd(bundle_map.entries, size, K)
    full = size == 0 or (not gcd.is_zero and gcd.degree == 0)
    return {'full_rank': full, 'gcd': str(gcd),
            'points': [] if full or gcd.is_zero else [point_to_str(p, K) for p in roots_of_form(gcd)]}


def require_fiberwise_surjective(bundle_map):
    certificate = fiberwise_certificate(bundle_map)
    if len(bundle_map.target) > len(bundle_map.source) or not certificate['full_rank']:
        raise NotSurjectiveError('map is not fiberwise surjective',
                                 gcd=certificate['gcd'], points=certificate['points'])
    return certificate


def phi_witness(splitting, b, domain=None):
    """
    Explicit map E -> O(b) with globally generated kernel

    :splitting: :class:`SplittingType` with 0 <= a_i <= b, rank > 1 and degree >= b

    Columns with a_i = 0 are zero; the others are s^(b - A_i) t^(A_i - a_i)
    with A_i the partial sums of the positive a_i capped at b.
    """
    domain = domain or field()
    entries = splitting.summands
    if len(entries) < 2 or any(a < 0 or a > b for a in entries) or sum(entries) < b:
        raise HypothesisError('need rank > 1, 0 <= a_i <= b and degree >= b',
                              splitting=list(entries), b=b)
    row, partial = [], 0
    for a in entries:
        if a == 0:
            row.append(BinForm.zero(domain))
            continue
        partial = min(b, partial + a)
        row.append(BinForm.monomial(b - partial, partial - a, domain))
    return BundleMap(entries, (b,), [row], domain)


class GenericKernelAlgorithm(MonteCarloSplittingAlgorithm):
    """
    Monte-Carlo estimate of the splitting type of the kernel of a general map E -> F

    :source: :class:`SplittingType` E

    :target: :class:`SplittingType` F

    :domain: exact field, F_32003 by default

    :trials: integer, number of random maps

    :seed: integer, seed of the run

    :verbose: verbosity parameter
    """

    def __init__(self, source, target, domain=None, trials=DEFAULT_TRIALS,
                 seed=DEFAULT_SEED, verbose=False):
        super().__init__(trials, seed, verbose)
        self.source = SplittingType(source)
        self.target = SplittingType(target)
        self.domain = domain or field()
        self.structural_rank = BundleMap.zero(self.source, self.target,
                                              self.domain).structural_rank()

    def sample(self, rng):
        bundle_map = BundleMap.random(self.source, self.target, self.domain, rng)
        point_seed = int(rng.integers(2 ** 31))
        rank = bundle_map.generic_rank(point_seed)
        if rank < self.structural_rank:
            return None
        model = kernel_model(bundle_map, point_seed)
        return model.splitting, {'generic_rank': rank}


def generic_kernel_splitting(source, target, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                             domain=None, verbose=False):
    """Splitting type of the kernel of a general map between split bundles."""
    algorithm = GenericKernelAlgorithm(source, target, domain, trials, seed, verbose)
    return algorithm.compute_splitting()
