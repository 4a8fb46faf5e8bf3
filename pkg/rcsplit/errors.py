# -*- coding: utf-8 -*-

"""Provide the exception hierarchy of rcsplit.

Every error carries a short machine-readable ``code``, a human message and a
``context`` dictionary; the command line prints ``to_dict()``.
"""

from fractions import Fraction


def _jsonable(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


class RcsplitError(Exception):
    """
    Base class of all rcsplit errors

    :message: string, human readable description

    :context: keyword arguments, diagnostics attached to the error
    """

    code = 'error'
    exit_status = 1

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        return {'code': self.code,
                'message': self.message,
                'context': _jsonable(self.context)}


class UsageError(RcsplitError):
    code = 'usage'
    exit_status = 2


class FieldError(RcsplitError):
    code = 'invalid-field'
    exit_status = 2


class FieldMismatchError(RcsplitError):
    code = 'field-mismatch'


class DegreeMismatchError(RcsplitError):
    code = 'degree-mismatch'


class InexactDivisionError(RcsplitError):
    code = 'inexact-division'


class InconsistentProfileError(RcsplitError):
    code = 'inconsistent-profile'


class SearchBoundError(RcsplitError):
    code = 'search-bound-exceeded'


class NotInModelError(RcsplitError):
    code = 'not-in-model'


class DegenerateSampleError(RcsplitError):
    code = 'degenerate-samples'


class HypothesisError(RcsplitError):
    code = 'hypothesis'


class InvalidSequenceError(HypothesisError):
    code = 'invalid-b-sequence'


class CurveValidationError(RcsplitError):
    code = 'invalid-curve'


class ContainmentError(RcsplitError):
    code = 'containment'


class RankDropError(RcsplitError):
    code = 'rank-drop'


class AnticanonicalMismatchError(RcsplitError):
    code = 'anticanonical-mismatch'


class NotSurjectiveError(RcsplitError):
    code = 'not-fiberwise-surjective'


class LiftError(RcsplitError):
    code = 'lift-infeasible'
