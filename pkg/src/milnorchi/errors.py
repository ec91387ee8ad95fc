"""Exception types raised by the engine.

Every engine failure carries a short upper-case ``code`` so front-ends can
report it in structured form.
"""


class EngineError(Exception):
    """Base class for failures of a well-formed computation."""

    code = "ENGINE_ERROR"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class PolynomialParseError(ValueError):
    """Malformed polynomial text. ``position`` is a 0-based column."""

    code = "PARSE_ERROR"

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at column {position + 1}")

    def to_dict(self):
        return {"code": self.code, "message": str(self), "column": self.position + 1}


class NotFinite(EngineError):
    """The quotient algebra is infinite dimensional."""

    code = "NOT_FINITE"


class NonIsolatedZero(NotFinite):
    """The origin is not an algebraically isolated zero of a map germ."""

    code = "NON_ISOLATED_ZERO"


class GermError(EngineError):
    """Input is not a map germ (R^n, 0) -> (R^n, 0)."""

    code = "NOT_A_GERM"


class DegeneratePairing(EngineError):
    code = "DEGENERATE_PAIRING"


class NotWeightedHomogeneous(EngineError):
    code = "NOT_WEIGHTED_HOMOGENEOUS"


class RegularPoint(EngineError):
    """df(0) != 0 where a critical point at the origin is required."""

    code = "DF_NONZERO"


class EvenDegree(EngineError):
    code = "D_EVEN"


class KExhausted(EngineError):
    code = "K_EXHAUSTED"


class ConsistencyFail(EngineError):
    code = "CONSISTENCY_FAIL"


class NegativeCount(EngineError):
    code = "NEGATIVE_COUNT"


class HypothesisNotAsserted(EngineError):
    code = "HYPOTHESIS_NOT_ASSERTED"


class ZeroOnMesh(EngineError):
    code = "ZERO_ON_MESH"


class Unstable(EngineError):
    code = "UNSTABLE"


class DegenerateTarget(EngineError):
    code = "DEGENERATE_TARGET"
