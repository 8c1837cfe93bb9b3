"""Exception hierarchy shared by the whole package.

Every error carries a short machine-readable ``code`` that the CLI and the
service echo verbatim in error payloads.
"""


class GeometryError(Exception):
    """Base class for all domain errors."""

    code = "geometry_error"


class ZeroVector(GeometryError):
    code = "ZeroVector"


class AtInfinity(GeometryError):
    code = "AtInfinity"


class NotNegative(GeometryError):
    code = "NotNegative"


class NotPositive(GeometryError):
    code = "NotPositive"


class NotUnimodular(GeometryError):
    code = "NotUnimodular"


class NotFormPreserving(GeometryError):
    code = "NotFormPreserving"


class NotLoxodromic(GeometryError):
    code = "NotLoxodromic"


class NumericalFault(GeometryError):
    """Internal inconsistency, e.g. a distance ratio below its lower bound."""

    code = "NumericalFault"


class BadSpec(GeometryError):
    code = "BadSpec"


class WrongSignature(GeometryError):
    code = "WrongSignature"


class DegenerateGram(GeometryError):
    code = "Degenerate"


class OutOfRange(GeometryError):
    code = "OutOfRange"


class DegenerateConfiguration(GeometryError):
    code = "DegenerateConfiguration"


class EllipticInput(GeometryError):
    code = "EllipticInput"


class SeedNotNull(GeometryError):
    code = "SeedNotNull"


class CoincidentPoints(GeometryError):
    code = "CoincidentPoints"


class PoleInput(GeometryError):
    code = "PoleInput"


class Ambiguous(GeometryError):
    code = "Ambiguous"


class NoTransition(GeometryError):
    code = "NoTransition"


class BadRequest(GeometryError):
    code = "bad_request"
