"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures without a lookup table: 1 parse, 2 validation, 3 unsupported
degree, 4 internal assertion.
"""


class WebError(Exception):
    exit_code = 2


# -- parsing ---------------------------------------------------------------

class ParseError(WebError):
    exit_code = 1

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class AmbiguityError(ParseError):
    pass


class VariableError(ParseError):
    pass


# -- kernel ----------------------------------------------------------------

class InvalidVariableError(WebError):
    pass


class DegenerateInputError(WebError):
    pass


class SingularSystemError(WebError):
    pass


class DimensionError(WebError):
    pass


# -- web presentations -----------------------------------------------------

class DegreeError(WebError):
    pass


class LeadingCoefficientError(WebError):
    pass


class NonReducedWebError(WebError):
    pass


class DuplicateSlopeError(WebError):
    pass


class NonInvertibleRescaleError(WebError):
    pass


class SlopeRequiredError(WebError):
    pass


class UnsupportedDegreeError(WebError):
    exit_code = 3


# -- construction failures (bugs or inputs off the generic locus) ----------

class ConstructionError(WebError):
    exit_code = 4


class ProlongationError(ConstructionError):
    pass


class AdaptedBasisError(ConstructionError):
    pass
