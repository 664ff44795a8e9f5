"""Exception hierarchy for linkhom.

Every error carries a diagnostic code looked up in diagnostics.ERROR_DB.
Library code raises; only main.py turns these into exit codes.
"""


class LinkHomError(Exception):
    code = "E000"

    def __init__(self, msg=None, loc=None, field=None):
        super().__init__(msg or self.__class__.__name__)
        self.msg = msg
        self.loc = loc        # (line, col) in a chain file, if known
        self.field = field    # e.g. "g_fwd[1]"


# --- exact arithmetic -----------------------------------------------------

class BothZero(LinkHomError):
    code = "E101"


class ZeroDenominator(LinkHomError):
    code = "E102"


class PoleAtPoint(LinkHomError):
    code = "E103"

    def __init__(self, value, point, msg=None):
        super().__init__(msg or f"{value} has a pole at t={point}")
        self.value = value
        self.point = point


# --- linear algebra -------------------------------------------------------

class Singular(LinkHomError):
    code = "E201"


class DimensionError(LinkHomError):
    code = "E202"


# --- chain files and chain model -----------------------------------------

class ParseError(LinkHomError):
    code = "E301"


class ShapeMismatch(LinkHomError):
    code = "E302"

    def __init__(self, list_name, index, expected, got, loc=None):
        where = list_name if index is None else f"{list_name}[{index}]"
        super().__init__(f"{where}: expected {expected}, got {got}", loc=loc, field=where)
        self.list_name = list_name
        self.index = index
        self.expected = expected
        self.got = got


class IndexOutOfRange(LinkHomError):
    code = "E303"


class NotASpecialPoint(LinkHomError):
    code = "E304"

    def __init__(self, point):
        super().__init__(f"s does not vanish at {point}")
        self.point = point


# --- solver ---------------------------------------------------------------

class ComplementarityFailure(LinkHomError):
    code = "E401"

    def __init__(self, index, msg=None):
        super().__init__(msg or f"transported blocks are not complementary in G_{index}")
        self.index = index


class FullRankFailure(LinkHomError):
    code = "E402"

    def __init__(self, which, index, msg=None):
        super().__init__(msg or f"{which} map does not have full rank at index {index}")
        self.which = which
        self.index = index


# --- generator ------------------------------------------------------------

class Infeasible(LinkHomError):
    code = "E501"

    def __init__(self, target, msg=None):
        super().__init__(msg or f"cannot build a chain breaking condition {target}")
        self.target = target
