# -*- coding: utf-8 -*-

"""Provide the ``rcsplit`` command line.

Reports go to standard output, diagnostics to standard error. Exit status
is 0 on success, 1 when a verification fails and 2 on a usage error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .ambient import (b_search, construct, default_curve, flag_curve, product_curve,
                      tangent_splitting, conormal_in_ambient, wps_curve)
from .bundles import SplittingType, generic_kernel_splitting
from .ci import (as_divisor, construct_from_surjection, generic_ci_splitting, random_surjection,
                 rathmann_check, src_certificate)
from .curves import CurveMap, canonical_rnc, charp_curve
from .errors import RcsplitError, UsageError
from .exact import DEFAULT_CHARACTERISTIC, characteristic, field
from .montecarlo import DEFAULT_SEED, DEFAULT_TRIALS
from .products import charp_demo, verify_product_theorem
from .verification import CHECKS, run_all

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """Options shared by every subcommand."""
    characteristic: int = DEFAULT_CHARACTERISTIC
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    json: bool = False
    out: str = None
    verbose: bool = False

    @classmethod
    def from_args(cls, args):
        if args.trials < 1:
            raise UsageError('--trials must be at least 1', trials=args.trials)
        return cls(args.char, args.seed, args.trials, args.json, args.out, args.verbose)

    @property
    def domain(self):
        return field(self.characteristic)


def parse_ints(text, separator=','):
    try:
        return [int(x) for x in text.split(separator) if x.strip()]
    except ValueError:
        raise UsageError('expected a list of integers', text=text)


def parse_ambient(text, domain):
    """Ambient from projective:N, product:a1,a2, grassmannian:k,n, flag:k1,k2;n or wps:w0,..,wm;a."""
    kind, _, params = text.partition(':')
    if kind in ('projective', 'product', 'grassmannian') and params:
        values = parse_ints(params)
        if kind == 'projective' and len(values) == 1:
            return construct(kind, values[0], domain=domain)
        if kind == 'product' and values:
            return construct(kind, values, domain=domain)
        if kind == 'grassmannian' and len(values) == 2:
            return construct(kind, *values, domain=domain)
    if kind in ('flag', 'wps') and ';' in params:
        left, _, right = params.partition(';')
        values, last = parse_ints(left), parse_ints(right)
        if values and len(last) == 1:
            return construct(kind, values, last[0], domain=domain)
    raise UsageError('cannot read the ambient descriptor', ambient=text)


def parse_curve(text, ambient, domain):
    """Curve from rnc:e[,n], flag, product, wps[:b0,..,bm], charp:p or @file.json."""
    if text is None:
        return default_curve(ambient)
    if text.startswith('@'):
        try:
            with open(text[1:]) as handle:
                data = json.load(handle)
        except (OSError, ValueError) as error:
            raise UsageError('cannot read the curve file', path=text[1:], reason=str(error))
        return CurveMap.from_json(data, domain, data.get('label', text[1:]))
    kind, _, params = text.partition(':')
    if kind == 'rnc' and params:
        values = parse_ints(params)
        n = values[1] if len(values) > 1 else (ambient.params.get('n') if ambient else values[0])
        return canonical_rnc(values[0], n, domain)
    if kind == 'charp' and params:
        return charp_curve(parse_ints(params)[0], domain)
    if kind == 'flag' and ambient is not None and ambient.kind in ('flag', 'grassmannian'):
        ks = ambient.params.get('ks') or [ambient.params['k']]
        return flag_curve(ks, ambient.params['n'], domain)
    if kind == 'product' and ambient is not None and ambient.kind == 'product':
        return product_curve(ambient.params['dims'], domain)
    if kind == 'wps' and ambient is not None and ambient.kind == 'wps':
        weights, a = ambient.params['weights'], ambient.params['a']
        b = parse_ints(params) if params else b_search(weights, a)
        if b is None:
            raise UsageError('no valid b sequence for these weights', weights=weights, a=a)
        return wps_curve(weights, a, b, domain)
    raise UsageError('cannot read the curve descriptor', curve=text)


def parse_degrees(text, ambient):
    """Divisor classes from "3,3" (one entry per hypersurface) or "3x4,2x2" (per block)."""
    divisors = []
    for item in text.split(','):
        if not item.strip():
            continue
        divisors.append(as_divisor(parse_ints(item, 'x') if 'x' in item else parse_ints(item)[0],
                                   ambient))
    if not divisors:
        raise UsageError('at least one degree is needed', degrees=text)
    return divisors


def _encode(value):
    if hasattr(value, 'to_json'):
        return value.to_json()
    raise TypeError('cannot serialize %r' % (value,))


def emit(report, config):
    """Write a report as JSON or as key: value lines."""
    if config.json or config.out:
        text = json.dumps(report, default=_encode, indent=2)
    else:
        lines = []
        for key, value in report.items():
            if isinstance(value, SplittingType):
                lines.append('%s: %s  %s' % (key, value, value.render()))
            else:
                lines.append('%s: %s' % (key, json.dumps(value, default=_encode)))
        text = '\n'.join(lines)
    if config.out:
        with open(config.out, 'w') as handle:
            handle.write(text + '\n')
    if config.json or not config.out:
        print(text)


def cmd_splitting(args, config):
    source = SplittingType(parse_ints(args.source))
    target = SplittingType(parse_ints(args.target))
    kernel = generic_kernel_splitting(source, target, config.trials, config.seed,
                                      config.domain, config.verbose)
    return {'source': source, 'target': target, 'kernel': kernel,
            'predicates': kernel.predicates()}, True


def cmd_normal_bundle(args, config):
    ambient = parse_ambient(args.ambient, config.domain)
    curve = parse_curve(args.curve, ambient, config.domain)
    tangent = tangent_splitting(ambient, curve, config.seed)
    report = {'ambient': ambient.label, 'curve': curve.label, 'tangent': tangent,
              'kxc': tangent.degree}
    if ambient.dim >= 2:
        report['normal'] = conormal_in_ambient(ambient, curve, config.seed).normal
    return report, True


def cmd_rathmann(args, config):
    report = rathmann_check(args.e, args.n, args.b, config.domain)
    return report.to_json(), report.surjective and report.preimages_verified


def cmd_ci(args, config):
    ambient = parse_ambient(args.ambient, config.domain)
    curve = parse_curve(args.curve, ambient, config.domain)
    degrees = parse_degrees(args.degrees, ambient)
    if args.construct:
        rng = np.random.default_rng(config.seed)
        conormal = conormal_in_ambient(ambient, curve, config.seed)
        data = random_surjection(ambient, curve, degrees, rng, conormal, config.seed)
        result = construct_from_surjection(ambient, curve, data, conormal, config.seed)
        return {'ambient': ambient.label, 'curve': curve.label, 'q': data.q.to_json(),
                **result.to_json()}, result.agrees
    result = generic_ci_splitting(ambient, curve, degrees, config.trials, config.seed,
                                  config.verbose)
    return {'ambient': ambient.label, 'curve': curve.label, **result}, True


def cmd_src_certify(args, config):
    ambient = parse_ambient(args.ambient, config.domain)
    curve = parse_curve(args.curve, ambient, config.domain)
    degrees = parse_degrees(args.degrees, ambient)
    certificate = src_certificate(ambient, curve, degrees, config.trials, config.seed,
                                  config.verbose)
    return certificate.to_json(), certificate.very_free


def cmd_product(args, config):
    curves = [parse_curve(text, None, config.domain) for text in args.curves]
    d_range = parse_ints(args.d_range)
    if len(d_range) != 2:
        raise UsageError('--d-range needs two integers', d_range=args.d_range)
    report = verify_product_theorem(curves, d_range, config.trials, config.seed, config.verbose)
    return report, report['pass']


def cmd_charp_demo(args, config):
    report = charp_demo(args.p, args.samples, config.seed)
    return report, (report['formula_mismatch'] and report['consistent']
                    and report['images_match_monomials'])


def cmd_verify_paper(args, config):
    checks = CHECKS
    if args.only:
        names = {check.__name__[len('check_'):]: check for check in CHECKS}
        unknown = [name for name in args.only if name not in names]
        if unknown:
            raise UsageError('unknown check', names=unknown, available=sorted(names))
        checks = [names[name] for name in args.only]
    rows = run_all(config.characteristic, config.trials, config.seed, checks)
    if not config.json:
        for row in rows:
            print('%-28s %s  %s' % (row['reference'], 'pass' if row['passed'] else 'FAIL',
                                    row['check']), file=sys.stderr)
    return {'rows': rows, 'pass': all(row['passed'] for row in rows)}, all(r['passed'] for r in rows)


class ArgumentParser(argparse.ArgumentParser):
    """Parser raising :class:`UsageError` instead of exiting on bad arguments."""

    def error(self, message):
        raise UsageError(message, usage=self.format_usage().strip())


def build_parser():
    parser = ArgumentParser(prog='rcsplit', description='Splitting types of normal '
                            'bundles of rational curves, computed exactly.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    common = ArgumentParser(add_help=False)
    common.add_argument('--char', type=int, default=DEFAULT_CHARACTERISTIC,
                        help='field characteristic, 0 for the rationals')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED)
    common.add_argument('--trials', type=int, default=DEFAULT_TRIALS)
    common.add_argument('--json', action='store_true', help='print the report as JSON')
    common.add_argument('--out', help='also write the JSON report to this file')
    common.add_argument('--verbose', action='store_true')
    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser('splitting', parents=[common],
                              help='kernel of a general map between split bundles')
    sub.add_argument('--source', required=True, help='degrees of E, e.g. 0,2,2')
    sub.add_argument('--target', required=True, help='degrees of F, e.g. 2')
    sub.set_defaults(func=cmd_splitting)

    sub = commands.add_parser('normal-bundle', parents=[common],
                              help='restricted tangent and normal bundles of a curve')
    sub.add_argument('--ambient', required=True)
    sub.add_argument('--curve')
    sub.set_defaults(func=cmd_normal_bundle)

    sub = commands.add_parser('rathmann', parents=[common],
                              help='quadric surjectivity for rational normal curves')
    sub.add_argument('e', type=int)
    sub.add_argument('n', type=int)
    sub.add_argument('b', type=int)
    sub.set_defaults(func=cmd_rathmann)

    for name, func, text in (('ci', cmd_ci, 'normal bundle of complete intersections'),
                             ('src-certify', cmd_src_certify, 'very free curve certificate')):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument('--ambient', required=True)
        sub.add_argument('--curve')
        sub.add_argument('--degrees', required=True)
        if name == 'ci':
            sub.add_argument('--construct', action='store_true',
                             help='realize a random surjection instead of sampling')
        sub.set_defaults(func=func)

    sub = commands.add_parser('product', parents=[common], help='product formula check')
    sub.add_argument('--curves', nargs='+', required=True)
    sub.add_argument('--d-range', default='2,8')
    sub.set_defaults(func=cmd_product)

    sub = commands.add_parser('charp-demo', parents=[common],
                              help='characteristic p counterexample')
    sub.add_argument('p', type=int)
    sub.add_argument('--samples', type=int, default=10)
    sub.set_defaults(func=cmd_charp_demo)

    sub = commands.add_parser('verify-paper', parents=[common], help='run the reference checks')
    sub.add_argument('--only', nargs='+')
    sub.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s',
                            level=logging.INFO if args.verbose else logging.WARNING)
        config = RunConfig.from_args(args)
        field(config.characteristic)
        report, passed = args.func(args, config)
        emit(report, config)
    except RcsplitError as error:
        print(json.dumps(error.to_dict()), file=sys.stderr)
        return error.exit_status
    logger.info('done in characteristic %d', characteristic(config.domain))
    return 0 if passed else 1


if __name__ == '__main__':
    sys.exit(main())
