"""Exception hierarchy shared by the whole package.

Every domain error carries a stable ``code`` (used for JSON output and exit
codes in the CLI) and, where useful, a structured ``payload``.
"""

from __future__ import annotations


class DownUpError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def payload(self):
        """Structured data for JSON error reports (may be empty)."""
        return {}


# ---------------------------------------------------------------- exactfield

class NotMonic(DownUpError):
    code = "not_monic"


class Reducible(DownUpError):
    """Minimal polynomial is reducible; carries a nontrivial factor."""

    code = "reducible"

    def __init__(self, message, factor):
        super().__init__(message)
        self.factor = factor  # ascending rational coefficient list

    def payload(self):
        return {"factor": [str(c) for c in self.factor]}


class DivisionByZero(DownUpError):
    code = "division_by_zero"


class FieldMismatch(DownUpError):
    code = "field_mismatch"


class ZeroInput(DownUpError):
    code = "zero_input"


class FieldNotSplit(DownUpError):
    """A required root lives outside the field.

    Carries the monic polynomial (ascending coefficient list of field
    elements) that must split; the caller may rebuild over an extension.
    """

    code = "field_not_split"

    def __init__(self, message, quadratic):
        super().__init__(message)
        self.quadratic = quadratic

    def payload(self):
        return {"adjoin": [c.to_json() for c in self.quadratic]}


# --------------------------------------------------------------- skewalgebra

class BetaZero(DownUpError):
    code = "beta_zero"


class ParamsMismatch(DownUpError):
    code = "params_mismatch"


class ExprSyntaxError(DownUpError):
    """Parse failure; ``position`` is a 0-based offset into the source."""

    code = "syntax_error"

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position

    def payload(self):
        return {"position": self.position}


# -------------------------------------------------------------------- repmod

class NotSubmoduleBoundary(DownUpError):
    """The tail span at the requested index is not a submodule."""

    code = "not_submodule_boundary"

    def __init__(self, message, offending_value):
        super().__init__(message)
        self.offending_value = offending_value

    def payload(self):
        return {"offending_value": self.offending_value.to_json()}


class NoZeroWithinBound(DownUpError):
    code = "no_zero_within_bound"


class NotSimple(DownUpError):
    """Internal-consistency failure: a constructed minimal quotient
    failed the Burnside test."""

    code = "not_simple"


class NotAnOrbit(DownUpError):
    code = "not_an_orbit"


class RelationFailure(DownUpError):
    code = "relation_failure"


class EigenvaluesNotInField(DownUpError):
    """Some characteristic-polynomial factor does not split."""

    code = "eigenvalues_not_in_field"

    def __init__(self, message, factor):
        super().__init__(message)
        self.factor = factor  # ascending coefficients, field elements

    def payload(self):
        return {"factor": [c.to_json() for c in self.factor]}


# ------------------------------------------------------------------ classify

class NotTypeC(DownUpError):
    code = "not_type_c"


class NotTypeD(DownUpError):
    code = "not_type_d"
