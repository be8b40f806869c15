"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can report it without string matching.
"""


class WittBenchError(Exception):
    code = "Error"
    #: CLI exit status for this error family
    exit_status = 1


class MixedRings(WittBenchError):
    code = "MixedRings"


class ShapeMismatch(WittBenchError):
    code = "ShapeMismatch"


class NotSquare(ShapeMismatch):
    code = "NotSquare"


class NotInvertible(WittBenchError):
    code = "NotInvertible"


class BadCertificate(WittBenchError):
    code = "BadCertificate"


class BadSpec(WittBenchError):
    code = "BadSpec"


class NotAlternating(WittBenchError):
    code = "NotAlternating"
    exit_status = 2


class NotUnimodular(WittBenchError):
    """The supplied section does not satisfy a.b = 1.

    This only says the certificate is bad; it is not a proof that the row
    is not unimodular.
    """
    code = "NotUnimodular"


class WrongLength(WittBenchError):
    code = "WrongLength"


class SizeCap(WittBenchError):
    code = "SizeCap"


class BadWitness(WittBenchError):
    code = "BadWitness"


class BudgetExceeded(WittBenchError):
    code = "BudgetExceeded"


class ParseError(WittBenchError, ValueError):
    code = "ParseError"
    exit_status = 2
