#!/usr/bin/env python3
'''
Exceptions raised throughout the medagg package.  Every error that names a
structural failure carries the witness elements as attributes, so callers can
report or re-check the offending pair or triple.
'''


class MedAggError(Exception):
    '''
    Base class for all errors raised by medagg.
    '''
    pass


class NotReflexive(MedAggError):

    def __init__(self, x: int):
        self.x = x
        super().__init__('leq is not reflexive at element {0}'.format(x))


class NotAntisymmetric(MedAggError):

    def __init__(self, x: int, y: int):
        self.x = x
        self.y = y
        super().__init__(
            'leq is not antisymmetric: {0} <= {1} and {1} <= {0}'.format(x, y))


class NotTransitive(MedAggError):

    def __init__(self, x: int, y: int, z: int):
        self.x = x
        self.y = y
        self.z = z
        super().__init__(
            'leq is not transitive: {0} <= {1} <= {2} but not {0} <= {2}'.
            format(x, y, z))


class NotJoinSemilattice(MedAggError):

    def __init__(self, x: int, y: int):
        self.x = x
        self.y = y
        super().__init__('{{{0}, {1}}} has no least upper bound'.format(x, y))


class NotMedian(MedAggError):

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__('context is not median: {0}'.format(reason))


class NotGraded(MedAggError):

    def __init__(self, x: int, y: int):
        self.x = x
        self.y = y
        super().__init__(
            'context is not graded: cover {0} << {1} breaks the rank function'.
            format(x, y))


class MeetUndefined(MedAggError):

    def __init__(self, elements, pair=None):
        self.elements = tuple(elements)
        self.pair = pair
        if pair is None:
            message = 'meet of {0} is undefined'.format(self.elements)
        else:
            message = 'meet of {0} is undefined: {1} and {2} have no common '\
                'lower bound'.format(self.elements, pair[0], pair[1])
        super().__init__(message)


class SizeLimit(MedAggError):

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(
            '{0} of size {1} exceeds the configured limit {2} '
            '(pass allow_large to override)'.format(what, size, limit))


class WrongFlavor(MedAggError):

    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__('operation requires flavor {0}, got {1}'.format(
            expected, got))


class BadProfile(MedAggError):

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__('bad profile: {0}'.format(reason))


class NoLinearOrders(MedAggError):

    def __init__(self):
        super().__init__('space contains no linear orders')


class InternalInvariantViolation(MedAggError):
    '''
    Raised when a result guaranteed by the underlying order theory fails to
    hold.  This always signals a bug (or an input outside the guarantee, such
    as a sponsorship family whose meets are not total).
    '''
    pass
