# -*- coding: utf-8 -*-

"""Provide parametrized rational curves and their restricted cotangent and conormal models.
"""

import logging
from dataclasses import dataclass, field as dataclass_field

from .bundles import BundleMap, SplittingType, kernel_model
from .errors import CurveValidationError, DegreeMismatchError, InexactDivisionError
from .exact import (BinForm, field, form_sum, minor_gcd, point_to_str,
                    roots_of_form)
from .montecarlo import DEFAULT_SEED

logger = logging.getLogger(__name__)


class CurveMap:
    """
    Rational curve P^1 -> P^(n_1) x ... x P^(n_k) given by blocks of binary forms

    :blocks: sequence of coordinate blocks, each a sequence of :class:`BinForm`
        of a common degree e_j >= 1

    :domain: exact field

    :degrees: optional per-block degrees, required for a block of zero forms

    :label: free text descriptor
    """

    def __init__(self, blocks, domain, degrees=None, label=''):
        self.blocks = tuple(tuple(block) for block in blocks)
        self.domain = domain
        self.label = label
        inferred = []
        for j, block in enumerate(self.blocks):
            found = {f.degree for f in block if not f.is_zero}
            if len(found) > 1:
                raise DegreeMismatchError('forms of a block must share their degree',
                                          block=j, degrees=sorted(found))
            if degrees is not None:
                expected = int(degrees[j])
                if found and found != {expected}:
                    raise DegreeMismatchError('block degree differs from the declared one',
                                              block=j, expected=expected, found=sorted(found))
                inferred.append(expected)
            elif found:
                inferred.append(found.pop())
            else:
                raise DegreeMismatchError('degree of a zero block must be declared', block=j)
        self.degrees = tuple(inferred)

    @property
    def block_sizes(self):
        return tuple(len(block) for block in self.blocks)

    @property
    def dims(self):
        return tuple(len(block) - 1 for block in self.blocks)

    @property
    def h_degree(self):
        return sum(self.degrees)

    @property
    def coordinates(self):
        return tuple(f for block in self.blocks for f in block)

    @property
    def coordinate_degrees(self):
        """Degrees -e_j of the summands O(-e_j) indexed by the coordinates."""
        return tuple(-e for e, block in zip(self.degrees, self.blocks) for _ in block)

    def block_of(self):
        """Block index of every coordinate."""
        return tuple(j for j, block in enumerate(self.blocks) for _ in block)

    def substitute(self, alpha):
        return CurveMap([[f.substitute(alpha) for f in block] for block in self.blocks],
                        self.domain, self.degrees, self.label)

    def to_json(self):
        return {'blocks': [[f.to_json() if not f.is_zero else ['0'] * (e + 1) for f in block]
                           for e, block in zip(self.degrees, self.blocks)],
                'degrees': list(self.degrees)}

    @classmethod
    def from_json(cls, data, domain, label=''):
        blocks = [[BinForm.from_json(f, domain) for f in block] for block in data['blocks']]
        degrees = data.get('degrees')
        if degrees is None:
            degrees = [len(block[0]) - 1 for block in data['blocks']]
        return cls(blocks, domain, degrees, label or data.get('label', ''))

    def __eq__(self, other):
        return isinstance(other, CurveMap) and (self.blocks, self.degrees) == (other.blocks, other.degrees)

    def __hash__(self):
        return hash((self.blocks, self.degrees))

    def __repr__(self):
        return 'CurveMap(%s)' % '; '.join(', '.join(str(f) for f in block) for block in self.blocks)


@dataclass
class CurveCertificate:
    """Basepoint and immersion certificates of a curve."""
    basepoint_free: bool
    immersion: bool
    basepoint_gcds: list = dataclass_field(default_factory=list)
    immersion_gcd: str = ''
    basepoints: list = dataclass_field(default_factory=list)
    ramification_points: list = dataclass_field(default_factory=list)

    @property
    def valid(self):
        return self.basepoint_free and self.immersion

    def to_json(self):
        return {'basepoint_free': self.basepoint_free, 'immersion': self.immersion,
                'basepoint_gcds': self.basepoint_gcds, 'immersion_gcd': self.immersion_gcd,
                'basepoints': self.basepoints, 'ramification_points': self.ramification_points}


def validate_curve(curve):
    """
    Basepoint freeness and immersion certificates

    A block is basepoint free iff the gcd of its forms is constant. The map
    is an immersion iff at every point some block has rank 2 on its forms and
    their partial derivatives, i.e. the gcd of all 2 x 2 minors of the
    matrices [f; d_s f; d_t f] over every block is constant.
    """
    K = curve.domain
    gcds, basepoints, free = [], [], True
    for block in curve.blocks:
        gcd = BinForm.gcd(*block)
        if gcd is None or gcd.degree > 0:
            free = False
            if gcd is not None:
                basepoints.extend(point_to_str(p, K) for p in roots_of_form(gcd))
        gcds.append(str(gcd) if gcd is not None else '0')

    immersion_gcd = None
    for block in curve.blocks:
        rows = [list(block), [f.partial_s() for f in block], [f.partial_t() for f in block]]
        gcd = minor_gcd(rows, 2, K)
        if gcd.is_zero:
            continue
        immersion_gcd = gcd if immersion_gcd is None else BinForm.gcd(immersion_gcd, gcd)
        if immersion_gcd.degree == 0:
            break
    immersion = immersion_gcd is not None and immersion_gcd.degree == 0
    ramification = []
    if immersion_gcd is not None and not immersion:
        ramification = [point_to_str(p, K) for p in roots_of_form(immersion_gcd)]
    return CurveCertificate(free, immersion, gcds,
                            str(immersion_gcd) if immersion_gcd is not None else '0',
                            basepoints, ramification)


def require_valid(curve, immersion=True):
    certificate = validate_curve(curve)
    if not certificate.basepoint_free:
        raise CurveValidationError('curve has basepoints', gcds=certificate.basepoint_gcds,
                                   points=certificate.basepoints)
    if immersion and not certificate.immersion:
        raise CurveValidationError('curve is not an immersion', gcd=certificate.immersion_gcd,
                                   points=certificate.ramification_points)
    return certificate


def euler_map(curve):
    """Map sum_j O(-e_j)^(n_j+1) -> O^k with one Euler row per block."""
    K = curve.domain
    blocks = curve.block_of()
    rows = [[f if blocks[l] == j else BinForm.zero(K) for l, f in enumerate(curve.coordinates)]
            for j in range(len(curve.blocks))]
    return BundleMap(curve.coordinate_degrees, [0] * len(curve.blocks), rows, curve.domain)


def derivative_map(curve):
    """Map sum_j O(-e_j)^(n_j+1) -> O(-1)^2 given by the s and t derivatives."""
    rows = [[f.partial_s() for f in curve.coordinates],
            [f.partial_t() for f in curve.coordinates]]
    return BundleMap(curve.coordinate_degrees, [-1, -1], rows, curve.domain)


def stack_maps(*maps):
    """Maps with a common source stacked into one map to the sum of targets."""
    source = maps[0].source
    for m in maps[1:]:
        if m.source != source:
            raise DegreeMismatchError('stacked maps need a common source')
    return BundleMap(source, [b for m in maps for b in m.target],
                     [row for m in maps for row in m.entries], maps[0].domain)


def euler_cotangent_model(curve, seed=DEFAULT_SEED):
    """Model of f*Omega of a product of projective spaces, kernel of the Euler rows."""
    require_valid(curve, immersion=False)
    return kernel_model(euler_map(curve), seed)


def conormal_Pn(curve, seed=DEFAULT_SEED):
    """
    Model of the conormal bundle of the curve in its product of projective spaces

    Kernel of the Euler rows together with both derivative rows.
    """
    require_valid(curve)
    model = kernel_model(stack_maps(euler_map(curve), derivative_map(curve)), seed)
    expected = sum(curve.dims) - 1
    if model.rank != expected:
        raise CurveValidationError('conormal model has the wrong rank',
                                   rank=model.rank, expected=expected)
    return model


def differential_form(curve, sections, d=None):
    """
    Image of a section of f*Omega(d) in Omega_P1(d) = O(d - 2)

    Computed as (sum g_l d_t f_l) / s, checked against -(sum g_l d_s f_l) / t.
    """
    K = curve.domain
    coordinates = curve.coordinates
    along_t = form_sum((g * f.partial_t() for g, f in zip(sections, coordinates)), K)
    along_s = form_sum((g * f.partial_s() for g, f in zip(sections, coordinates)), K)
    s = BinForm.monomial(1, 0, K)
    t = BinForm.monomial(0, 1, K)
    first = along_t.exact_div(s) if not along_t.is_zero else along_t
    second = -along_s.exact_div(t) if not along_s.is_zero else along_s
    if first != second:
        raise InexactDivisionError('section does not satisfy the Euler rows',
                                   twist=d, along_s=str(along_s), along_t=str(along_t))
    if d is not None and not first.is_zero and first.degree != d - 2:
        raise DegreeMismatchError('differential has the wrong degree',
                                  expected=d - 2, found=first.degree)
    return first


def cotangent_differential(curve, model=None, seed=DEFAULT_SEED):
    """Map from the cotangent model to O(-2) sending each generator to its differential."""
    model = model or euler_cotangent_model(curve, seed)
    row = [differential_form(curve, column, twist)
           for column, twist in zip(model.generators, model.twists)]
    return BundleMap(model.degrees, [-2], [row], curve.domain)


def rnc_forms(e, domain):
    return [BinForm.monomial(e - i, i, domain) for i in range(e + 1)]


def canonical_rnc(e, n=None, domain=None):
    """Rational normal curve (s^e, s^(e-1) t, ..., t^e, 0, ..., 0) in P^n."""
    domain = domain or field()
    n = e if n is None else n
    if not 1 <= e <= n:
        raise CurveValidationError('need 1 <= e <= n', e=e, n=n)
    coordinates = rnc_forms(e, domain) + [BinForm.zero(domain)] * (n - e)
    return CurveMap([coordinates], domain, [e], 'rnc:%d,%d' % (e, n))


def charp_curve(p, domain=None):
    """Curve (s^(p+1), s^p t, s t^p, t^(p+1)) in P^3."""
    domain = domain or field(p)
    coordinates = [BinForm.monomial(p + 1, 0, domain), BinForm.monomial(p, 1, domain),
                   BinForm.monomial(1, p, domain), BinForm.monomial(0, p + 1, domain)]
    return CurveMap([coordinates], domain, [p + 1], 'charp:%d' % p)


def explicit_conormal_basis(e, n, domain=None):
    """
    Explicit conormal sections of the canonical rational normal curve

    dx_i for e < i <= n at twist e, and
    q_i = s^2 dx_(i+2) + t^2 dx_i - 2 s t dx_(i+1) for 0 <= i <= e - 2 at twist e + 2.
    Returns a list of (name, twist, section tuple).
    """
    domain = domain or field()
    zero = BinForm.zero(domain)
    basis = []
    for i in range(e + 1, n + 1):
        sections = [zero] * (n + 1)
        sections[i] = BinForm.constant(domain.one, domain)
        basis.append(('dx_%d' % i, e, tuple(sections)))
    for i in range(e - 1):
        sections = [zero] * (n + 1)
        sections[i + 2] = BinForm.monomial(2, 0, domain)
        sections[i] = BinForm.monomial(0, 2, domain)
        sections[i + 1] = BinForm.monomial(1, 1, domain, domain(-2))
        basis.append(('q_%d' % i, e + 2, tuple(sections)))
    return basis


def rnc_conormal_prediction(e, n):
    """Splitting of the conormal bundle of the degree e rational normal curve in P^n."""
    return SplittingType([-e - 2] * (e - 1) + [-e] * (n - e))