# -*- coding: utf-8 -*-

"""Provide complete intersections containing a curve and their normal bundles.

The central object is the map sending a form F vanishing on the curve to its
gradient, read as a section of the conormal bundle of the curve in the
ambient. Its surjectivity lets any fiberwise surjective
q : N_{C|X} -> sum O(D_i.C) be realized as the normal data of hypersurfaces
containing C, and makes the normal bundle of a general complete intersection
the kernel of a general such q.
"""

import logging
from dataclasses import dataclass, field as dataclass_field

from .ambient import (DivisorClass, conormal_in_ambient, projective_space, tangent_splitting,
                      validate_along_curve)
from .bundles import (BundleMap, SplittingType, generic_kernel_splitting, kernel_model,
                      require_fiberwise_surjective, section_vector)
from .curves import canonical_rnc, conormal_Pn, explicit_conormal_basis
from .errors import (DegenerateSampleError, HypothesisError, LiftError, NotSurjectiveError,
                     RankDropError, RcsplitError)
from .exact import (BinForm, LinearSolver, characteristic, dm, field, monomial_basis,
                    random_scalar)
from .montecarlo import DEFAULT_SEED, DEFAULT_TRIALS, MonteCarloSplittingAlgorithm

logger = logging.getLogger(__name__)

SURJECTION_ATTEMPTS = 10


def as_divisor(degree, ambient):
    """Divisor class from an integer (same degree on every block) or a multidegree."""
    if isinstance(degree, DivisorClass):
        return degree
    if isinstance(degree, int):
        return DivisorClass([degree] * len(ambient.block_sizes))
    degree = [int(d) for d in degree]
    if len(degree) != len(ambient.block_sizes):
        raise HypothesisError('multidegree needs one entry per block',
                              degree=degree, blocks=len(ambient.block_sizes))
    return DivisorClass(degree)


@dataclass
class IdealSections:
    """Forms of a multidegree vanishing on a curve."""
    divisor: DivisorClass
    forms: list
    monomial_count: int
    restriction_rank: int
    curve_degree: int

    @property
    def dim(self):
        return len(self.forms)

    @property
    def restriction_surjective(self):
        return self.restriction_rank == self.curve_degree + 1


def ideal_sections(ambient, curve, divisor):
    """
    Basis of the forms of class D in the ambient coordinates vanishing on the curve

    Kernel of the restriction F -> F(f(s, t)) on the monomials of multidegree D.
    """
    divisor = as_divisor(divisor, ambient)
    ambient.check_curve(curve)
    K = ambient.domain
    degree = divisor.dot(curve)
    if degree < 0:
        raise HypothesisError('divisor has negative degree on the curve', degree=degree)
    monomials = ambient.monomials(divisor)
    columns = [ambient.pullback(m, curve).padded(degree) for m in monomials]
    matrix = dm([[column[i] for column in columns] for i in range(degree + 1)],
                degree + 1, len(monomials), K)
    solver = LinearSolver(matrix)
    forms = []
    for vector in solver.nullspace():
        forms.append(sum((m * c for m, c in zip(monomials, vector) if c), ambient.ring.zero))
    logger.debug('%d forms of class %s vanish on %s', len(forms), divisor, curve.label)
    return IdealSections(divisor, forms, len(monomials), solver.rank, degree)


@dataclass
class NstarMap:
    """Matrix of H0(I_C(D)) -> H0(N*_{C|X}(D.C)) with the data to lift through it."""
    divisor: DivisorClass
    ideal: IdealSections
    images: list
    twist: int
    target_dim: int
    solver: object

    @property
    def rank(self):
        return self.solver.rank

    @property
    def corank(self):
        return self.target_dim - self.rank

    @property
    def surjective(self):
        return self.corank == 0

    def to_json(self):
        return {'divisor': self.divisor.to_json(), 'surjective': self.surjective,
                'corank': self.corank, 'rank': self.rank, 'source_dim': self.ideal.dim,
                'target_dim': self.target_dim}


def nstar_map(ambient, curve, divisor, conormal=None, seed=DEFAULT_SEED):
    """
    Linear map sending a form of I_C(D) to its conormal section

    Gradients are written in the conormal model of the curve in its product
    of projective spaces, then pushed through the quotient onto N*_{C|X}.
    """
    divisor = as_divisor(divisor, ambient)
    conormal = conormal or conormal_in_ambient(ambient, curve, seed)
    ideal = ideal_sections(ambient, curve, divisor)
    twist = divisor.dot(curve)
    quotient = conormal.quotient
    target_dim = SplittingType(quotient.target).h0(twist)
    gradients = [ambient.gradient(F, curve) for F in ideal.forms]
    coordinates = conormal.model.express_many(gradients, twist) if gradients else []
    images = [section_vector(quotient.apply(u), quotient.target, twist) for u in coordinates]
    matrix = dm([[image[i] for image in images] for i in range(target_dim)],
                target_dim, len(images), ambient.domain)
    return NstarMap(divisor, ideal, images, twist, target_dim, LinearSolver(matrix))


def nstar_surjective(ambient, curve, divisor, conormal=None, seed=DEFAULT_SEED):
    """Whether D is N*-surjective for the curve, with the corank."""
    return nstar_map(ambient, curve, divisor, conormal, seed).to_json()


def restriction_surjective(ambient, curve, divisor):
    """Surjectivity of H0(O_X(E)) -> H0(O_C(E)) through the ambient monomials."""
    divisor = as_divisor(divisor, ambient)
    return ideal_sections(ambient, curve, divisor).restriction_surjective


def restriction_surjectivity_check(ambient, curve, d, seed=DEFAULT_SEED):
    """
    From the projective cover to the ambient

    When dH is N*-surjective for C in the projective spaces and the
    restricted conormal bundle of X has no h1 after the twist, dH is
    N*-surjective for C in X.
    """
    cover = ambient.projective_cover()
    divisor = as_divisor(d, ambient)
    twist = divisor.dot(curve)
    cover_surjective = nstar_map(cover, curve, divisor, seed=seed).surjective
    data = conormal_in_ambient(ambient, curve, seed)
    restricted = data.restricted_ambient_conormal(seed)
    vanishing = restricted.h1(twist) == 0
    conclusion = nstar_map(ambient, curve, divisor, data, seed).surjective
    return {'divisor': divisor.to_json(), 'cover_surjective': cover_surjective,
            'h1_vanishes': vanishing, 'restricted_conormal': restricted.to_json(),
            'surjective': conclusion,
            'consistent': conclusion or not (cover_surjective and vanishing)}


def sum_surjectivity_check(ambient, curve, D, E, seed=DEFAULT_SEED):
    """
    From D to D + E

    D N*-surjective, H0(O_X(E)) -> H0(O_C(E)) surjective and N*_{C|X}(D)
    globally generated give D + E N*-surjective.
    """
    D, E = as_divisor(D, ambient), as_divisor(E, ambient)
    data = conormal_in_ambient(ambient, curve, seed)
    first = nstar_map(ambient, curve, D, data, seed).surjective
    restriction = restriction_surjective(ambient, curve, E)
    generated = data.conormal.twist(D.dot(curve)).is_globally_generated
    conclusion = nstar_map(ambient, curve, D + E, data, seed).surjective
    return {'D': D.to_json(), 'E': E.to_json(), 'D_surjective': first,
            'E_restriction_surjective': restriction, 'twisted_conormal_generated': generated,
            'sum_surjective': conclusion,
            'consistent': conclusion or not (first and restriction and generated)}


def quadric(i, j, ring_gens):
    """f_(i,j) = x_i x_j - x_(i+1) x_(j-1) with 0-based indices."""
    x = ring_gens
    return x[i] * x[j] - x[i + 1] * x[j - 1]


@dataclass
class Preimage:
    """Explicit tensor mapping to one basis section of N*(2e + b)."""
    target: str
    preimage: str
    applicable: bool
    verified: bool = False

    def to_json(self):
        return {'target': self.target, 'preimage': self.preimage,
                'applicable': self.applicable, 'verified': self.verified}


@dataclass
class RathmannReport:
    e: int
    n: int
    b: int
    source_dim: int
    target_dim: int
    formula_dim: int
    rank: int
    preimages: list = dataclass_field(default_factory=list)

    @property
    def surjective(self):
        return self.rank == self.target_dim

    @property
    def preimages_verified(self):
        return all(p.verified for p in self.preimages if p.applicable)

    def to_json(self):
        return {'e': self.e, 'n': self.n, 'b': self.b, 'source_dim': self.source_dim,
                'target_dim': self.target_dim, 'formula_dim': self.formula_dim,
                'rank': self.rank, 'surjective': self.surjective,
                'preimages_verified': self.preimages_verified,
                'preimages': [p.to_json() for p in self.preimages]}


def _tensor_image(ambient, curve, poly, form):
    return tuple(form * g for g in ambient.gradient(poly, curve))


def _scaled(sections, monomial):
    return tuple(monomial * g for g in sections)


def rathmann_check(e, n, b, domain=None, preimages=True):
    """
    Surjectivity of H0(I_C(2)) x H0(O_C(b)) -> H0(N*(2e + b)) for the degree e
    rational normal curve in P^n

    The rank of the bilinear map is compared to h0 of the conormal model and to
    (e - 1)(e + b - 1) + (n - e)(e + b + 1). With ``preimages``, the explicit
    tensors hitting s^k t^l q_i and s^k t^l dx_i are checked one by one.
    """
    if not 1 <= e <= n or b < 1:
        raise HypothesisError('need 1 <= e <= n and b >= 1', e=e, n=n, b=b)
    K = domain or field()
    curve = canonical_rnc(e, n, K)
    space = projective_space(n, K)
    twist = 2 * e + b
    degrees = curve.coordinate_degrees
    quadrics = ideal_sections(space, curve, DivisorClass([2])).forms
    multipliers = monomial_basis(b, K)
    vectors = [section_vector(_tensor_image(space, curve, F, g), degrees, twist)
               for F in quadrics for g in multipliers]
    length = len(degrees) * (e + b + 1)
    rank = LinearSolver(dm([[v[i] for v in vectors] for i in range(length)],
                           length, len(vectors), K)).rank if vectors else 0
    target_dim = conormal_Pn(curve).splitting.h0(twist)
    formula = (e - 1) * (e + b - 1) + (n - e) * (e + b + 1)
    report = RathmannReport(e, n, b, len(vectors), target_dim, formula, rank)
    if preimages:
        report.preimages = explicit_preimages(space, curve, e, n, b)
    logger.info('rathmann (%d, %d, %d): rank %d of %d', e, n, b, rank, target_dim)
    return report


def explicit_preimages(space, curve, e, n, b):
    """Closed-form tensors mapping to every basis section of N*(2e + b)."""
    K = space.domain
    x = space.ring.gens
    basis = {name: sections for name, _, sections in explicit_conormal_basis(e, n, K)}
    found = []

    def check(target_name, target, terms, text):
        image = None
        for poly, form in terms:
            part = _tensor_image(space, curve, poly, form)
            image = part if image is None else tuple(a + c for a, c in zip(image, part))
        verified = all((a - c).is_zero for a, c in zip(image, target))
        found.append(Preimage(target_name, text, True, verified))

    for i in range(e - 1):
        q = basis['q_%d' % i]
        for k in range(e + b - 1):
            l = e + b - 2 - k
            name = 's^%d t^%d q_%d' % (k, l, i)
            target = _scaled(q, BinForm.monomial(k, l, K))
            if k >= b - 1:
                terms = [(quadric(i, l + 1, x), BinForm.monomial(b - 1, 1, K)),
                         (quadric(i + 1, l + 1, x), -BinForm.monomial(b, 0, K))]
                text = 'f_%d,%d (x) s^%d t - f_%d,%d (x) s^%d' % (i, l + 1, b - 1, i + 1, l + 1, b)
            else:
                j = l - b + 2
                if j - 1 < 0:
                    found.append(Preimage(name, 'index out of range', False))
                    continue
                terms = [(quadric(i, j, x), BinForm.monomial(0, b, K)),
                         (quadric(i + 1, j, x), -BinForm.monomial(1, b - 1, K))]
                text = 'f_%d,%d (x) t^%d - f_%d,%d (x) s t^%d' % (i, j, b, i + 1, j, b - 1)
            check(name, target, terms, text)

    for i in range(e + 1, n + 1):
        dx = basis['dx_%d' % i]
        for k in range(e + b + 1):
            l = e + b - k
            name = 's^%d t^%d dx_%d' % (k, l, i)
            target = _scaled(dx, BinForm.monomial(k, l, K))
            if k >= b:
                terms = [(x[l] * x[i], BinForm.monomial(b, 0, K))]
                text = 'x_%d x_%d (x) s^%d' % (l, i, b)
            else:
                terms = [(x[l - b] * x[i], BinForm.monomial(0, b, K))]
                text = 'x_%d x_%d (x) t^%d' % (l - b, i, b)
            check(name, target, terms, text)
    return found


@dataclass
class SurjectionData:
    """
    Fiberwise surjective q : N_{C|X} -> sum O(D_i.C)

    :q: :class:`BundleMap` whose source lists the normal summands in the order
        of the conormal quotient

    :degrees: list of :class:`DivisorClass`
    """
    q: BundleMap
    degrees: list

    def __post_init__(self):
        require_fiberwise_surjective(self.q)


def normal_source(conormal):
    """Normal bundle degrees in the order of the conormal quotient."""
    return tuple(-d for d in conormal.quotient.target)


def random_surjection(ambient, curve, degrees, rng, conormal=None, seed=DEFAULT_SEED):
    """Random q : N_{C|X} -> sum O(D_i.C), redrawn until fiberwise surjective."""
    degrees = [as_divisor(D, ambient) for D in degrees]
    conormal = conormal or conormal_in_ambient(ambient, curve, seed)
    target = [D.dot(curve) for D in degrees]
    for _ in range(SURJECTION_ATTEMPTS):
        q = BundleMap.random(normal_source(conormal), target, ambient.domain, rng)
        try:
            return SurjectionData(q, degrees)
        except NotSurjectiveError:
            logger.debug('random q is not fiberwise surjective, drawing again')
    raise NotSurjectiveError('no fiberwise surjective q found', attempts=SURJECTION_ATTEMPTS)


@dataclass
class ConstructedIntersection:
    """Hypersurfaces realizing a prescribed q, with the verification."""
    forms: list
    intersection: object
    normal: SplittingType
    kernel: SplittingType

    @property
    def agrees(self):
        return self.normal == self.kernel

    def to_json(self):
        return {'forms': [str(F) for F in self.forms], 'normal': self.normal.to_json(),
                'kernel': self.kernel.to_json(), 'agrees': self.agrees}


def construct_from_surjection(ambient, curve, data, conormal=None, seed=DEFAULT_SEED):
    """
    Hypersurfaces s_i in H0(I_C(D_i)) whose normal data is q

    Each row of q, a section of N*_{C|X}(D_i.C), is lifted through the
    N*-map. The intersection Y is then certified smooth along the curve and
    N_{C|Y} compared with the kernel of q.
    """
    c = len(data.degrees)
    if c > ambient.dim - 2:
        raise HypothesisError('need c <= dim X - 2', c=c, dim=ambient.dim)
    conormal = conormal or conormal_in_ambient(ambient, curve, seed)
    if tuple(data.q.source) != normal_source(conormal):
        raise HypothesisError('q must start from the normal bundle of the curve',
                              source=data.q.source, normal=normal_source(conormal))
    forms = []
    for i, D in enumerate(data.degrees):
        nstar = nstar_map(ambient, curve, D, conormal, seed)
        row = section_vector(data.q.row(i), conormal.quotient.target, nstar.twist)
        solution = nstar.solver.solve(row)
        if solution is None:
            raise LiftError('row of q is not the conormal section of a form in the ideal',
                            row=i, divisor=D.to_json(), corank=nstar.corank)
        forms.append(sum((F * c for F, c in zip(nstar.ideal.forms, solution) if c),
                         ambient.ring.zero))
    intersection = ambient.augmented(forms)
    validate_along_curve(intersection, curve, seed)
    normal = conormal_in_ambient(intersection, curve, seed).normal
    kernel = kernel_model(data.q, seed).splitting
    if normal != kernel:
        logger.warning('normal bundle %s differs from ker q %s', normal, kernel)
    return ConstructedIntersection(forms, intersection, normal, kernel)


class GenericCompleteIntersectionAlgorithm(MonteCarloSplittingAlgorithm):
    """
    Monte-Carlo estimate of N_{C|Y} for general hypersurfaces Y_i of class D_i containing C

    :ambient: :class:`~rcsplit.ambient.Ambient` X

    :curve: :class:`~rcsplit.curves.CurveMap` on X

    :degrees: divisor classes D_i

    Draws singular along the curve count as degenerate.
    """

    def __init__(self, ambient, curve, degrees, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                 verbose=False):
        super().__init__(trials, seed, verbose)
        self.ambient = ambient
        self.curve = curve
        self.degrees = [as_divisor(D, ambient) for D in degrees]
        if len(self.degrees) > ambient.dim - 2:
            raise HypothesisError('need c <= dim X - 2', c=len(self.degrees), dim=ambient.dim)
        self.ideals = [ideal_sections(ambient, curve, D) for D in self.degrees]

    def sample(self, rng):
        K = self.ambient.domain
        forms = []
        for ideal in self.ideals:
            weights = [random_scalar(K, rng) for _ in ideal.forms]
            forms.append(sum((F * w for F, w in zip(ideal.forms, weights) if w),
                             self.ambient.ring.zero))
        if any(not F for F in forms):
            return None
        intersection = self.ambient.augmented(forms)
        point_seed = int(rng.integers(2 ** 31))
        try:
            validate_along_curve(intersection, self.curve, point_seed)
            normal = conormal_in_ambient(intersection, self.curve, point_seed).normal
        except RankDropError as error:
            logger.debug('degenerate draw: %s', error)
            return None
        return normal, {'forms': [str(F) for F in forms]}


def generic_ci_splitting(ambient, curve, degrees, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                         verbose=False):
    """
    Normal bundle of a general complete intersection containing the curve

    Returns the observed splitting, the prediction as the kernel of a general
    map N_{C|X} -> sum O(D_i.C), and whether both agree.
    """
    algorithm = GenericCompleteIntersectionAlgorithm(ambient, curve, degrees, trials, seed, verbose)
    observed = algorithm.compute_splitting()
    normal = conormal_in_ambient(ambient, curve, seed).normal
    prediction = generic_kernel_splitting(normal, [D.dot(curve) for D in algorithm.degrees],
                                          trials, seed, ambient.domain)
    if observed != prediction:
        logger.warning('complete intersection gives %s, general kernel gives %s',
                       observed, prediction)
    return {'splitting': observed, 'prediction': prediction, 'agrees': observed == prediction,
            'normal_in_ambient': normal, 'degenerate': algorithm.getDegenerateNumber()}


def degree_bound(k, n, degrees, c=None):
    """Smallest curve degree e with e (n - sum d_i) > k (n - k) - c, None when sum d_i >= n."""
    c = len(degrees) if c is None else c
    slack = n - sum(degrees)
    if slack <= 0:
        return None
    return max(1, (k * (n - k) - c) // slack + 1)


def schubert_gate(kxc, m, c, e, degrees):
    """Numerical hypothesis -K.C >= m + 1 - c + e sum d_i for a degree e curve."""
    threshold = m + 1 - c + e * sum(degrees)
    return {'kxc': kxc, 'threshold': threshold, 'pass': kxc >= threshold}


@dataclass
class Certificate:
    """Very free curve certificate of a complete intersection."""
    ambient: str
    curve: dict
    degrees: list
    gate: dict
    splitting: SplittingType
    flags: dict
    characteristic: int
    trials: int
    seed: int

    @property
    def very_free(self):
        return self.flags['very_free']

    def to_json(self):
        return {'ambient': self.ambient, 'curve': self.curve, 'degrees': self.degrees,
                'gate': self.gate, 'splitting': self.splitting.to_json(), 'flags': self.flags,
                'field': {'char': self.characteristic}, 'trials': self.trials, 'seed': self.seed}


def _curve_descriptor(curve, seed):
    kind, _, params = curve.label.partition(':')
    return {'kind': kind or 'custom', 'params': params, 'seed': seed}


def src_certificate(ambient, curve, degrees, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                    verbose=False):
    """
    Certificate that C is a very free curve on the complete intersection Y

    The gate -K_X.C - sum D_i.C >= m - c + 1 uses -K_X.C from the tangent
    splitting; very_free needs the gate, an ample N_{C|Y} and smoothness of
    Y along C.
    """
    degrees = [as_divisor(D, ambient) for D in degrees]
    K = ambient.domain
    kxc = tangent_splitting(ambient, curve, seed).degree
    dc = sum(D.dot(curve) for D in degrees)
    m, c = ambient.dim, len(degrees)
    threshold = m - c + 1
    gate = {'kxc': kxc, 'dc': dc, 'm': m, 'c': c, 'threshold': threshold,
            'pass': kxc - dc >= threshold}

    smooth = True
    try:
        result = generic_ci_splitting(ambient, curve, degrees, trials, seed, verbose)
        splitting, agrees = result['splitting'], result['agrees']
    except (DegenerateSampleError, RankDropError) as error:
        logger.warning('no smooth complete intersection along the curve: %s', error)
        smooth, splitting, agrees = False, SplittingType(), False

    residual = ambient.anticanonical
    for D in degrees:
        residual = residual - D
    generator_degree = ambient.gen_degree
    flags = {'smooth_along_C': smooth,
             'ample': smooth and splitting.is_ample,
             'balanced': smooth and splitting.is_balanced,
             'globally_generated': smooth and splitting.is_globally_generated,
             'very_free': gate['pass'] and smooth and splitting.is_ample,
             'fano': residual.is_positive,
             'prediction_agrees': agrees,
             'degrees_at_least_max_k_3': all(min(D.multidegree) >= max(generator_degree, 3)
                                             for D in degrees),
             'cataloged_ambient': ambient.cataloged}
    if ambient.kind == 'grassmannian':
        k, n = ambient.params['k'], ambient.params['n']
        e = curve.h_degree
        total = sum(D.multidegree[0] for D in degrees)
        flags['grassmannian_gate'] = e * (n - total) > k * (n - k) - c
        if flags['grassmannian_gate'] != gate['pass']:
            raise RcsplitError('the two forms of the degree gate disagree', gate=gate)
    return Certificate(ambient.label, _curve_descriptor(curve, seed),
                       [D.to_json() for D in degrees], gate, splitting, flags,
                       characteristic(K), trials, seed)
