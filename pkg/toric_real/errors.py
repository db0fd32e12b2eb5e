from typing import Any

from toric_real.utils import to_jsonable


class ToricError(Exception):
    """ Base class for every domain error. `name` is the stable error name shown by the CLI, `datum` is the offending value or certificate. """
    name = 'ToricError'

    def __init__(self, message: str, datum: Any = None):
        super().__init__(message)
        self.datum = datum

    def to_dict(self):
        return {'name': self.name, 'message': str(self), 'datum': to_jsonable(self.datum)}


##################################################
# lattice
##################################################

class RaysDoNotSpan(ToricError, ValueError):
    name = 'RaysDoNotSpan'


class NotPrimitiveSystem(ToricError, ValueError):
    name = 'NotPrimitiveSystem'


class NotABasis(ToricError, ValueError):
    name = 'NotABasis'


##################################################
# fan / polytope
##################################################

class InvalidFan(ToricError, ValueError):
    name = 'InvalidFan'


class NotComplete(ToricError, ValueError):
    name = 'NotComplete'


class DegenerateChern(ToricError):
    name = 'DegenerateChern'


class Unbounded(ToricError, ValueError):
    name = 'Unbounded'


class EmptyPolytope(ToricError, ValueError):
    name = 'EmptyPolytope'


class NotFullDimensional(ToricError, ValueError):
    name = 'NotFullDimensional'


class NotLattice(ToricError, ValueError):
    name = 'NotLattice'


class NotDelzant(ToricError, ValueError):
    name = 'NotDelzant'


class RedundantFacet(ToricError, ValueError):
    name = 'RedundantFacet'


class ZeroVector(ToricError, ValueError):
    name = 'ZeroVector'


##################################################
# homology / morse
##################################################

class NotACurveClass(ToricError, ValueError):
    name = 'NotACurveClass'


class NotACone(ToricError, ValueError):
    name = 'NotACone'


class NonGenericXi(ToricError, ValueError):
    name = 'NonGenericXi'


class MismatchedInput(ToricError, ValueError):
    name = 'MismatchedInput'


##################################################
# curves
##################################################

class OutsideU(ToricError, ValueError):
    name = 'OutsideU'


class WrongLength(ToricError, ValueError):
    name = 'WrongLength'


class NotInChart(ToricError, ValueError):
    name = 'NotInChart'


class DegenerateMobius(ToricError, ValueError):
    name = 'DegenerateMobius'


class InvalidLift(ToricError, ValueError):
    name = 'InvalidLift'


class NotApplicable(ToricError):
    name = 'NotApplicable'


class InfinityConditionFails(ToricError):
    name = 'InfinityConditionFails'


class BadExtension(ToricError, ValueError):
    name = 'BadExtension'


##################################################
# quantum
##################################################

class NotFano(ToricError, ValueError):
    name = 'NotFano'


class DegreeNotDivisible(ToricError):
    name = 'DegreeNotDivisible'


class InhomogeneousClass(ToricError, ValueError):
    name = 'InhomogeneousClass'


class ChernTooSmall(ToricError):
    name = 'ChernTooSmall'


##################################################
# cli
##################################################

class ParseError(ToricError, ValueError):
    name = 'ParseError'


class ValidationError(ToricError, ValueError):
    name = 'ValidationError'
