"""Exception hierarchy.

Every domain error carries a short ``code`` plus keyword details so the CLI
can print a single machine-parseable line.
"""


class ManiforgeError(Exception):
    code = "Error"

    def __init__(self, message="", **details):
        self.details = details
        super().__init__(message or self.code)

    def oneline(self):
        parts = [self.code]
        parts += [f"{k}={v}" for k, v in self.details.items()]
        reason = str(self)
        if reason != self.code:
            parts.append(f"reason={reason!r}")
        return " ".join(parts)


def _make(name, base=ManiforgeError):
    return type(name, (base,), {"code": name})


class ValidationError(ManiforgeError):
    code = "ValidationError"


NotInvolution = _make("NotInvolution", ValidationError)
CommutationFail = _make("CommutationFail", ValidationError)
Disconnected = _make("Disconnected", ValidationError)
SemiEdge = _make("SemiEdge", ValidationError)
ParallelEdge = _make("ParallelEdge", ValidationError)
NotPermutation = _make("NotPermutation", ValidationError)

ColorOutOfRange = _make("ColorOutOfRange")
RankNotThree = _make("RankNotThree")
RankMismatch = _make("RankMismatch")
RankNotOdd = _make("RankNotOdd")

NotFree = _make("NotFree")
NotFreeAction = _make("NotFreeAction")
ForeignElement = _make("ForeignElement")
LengthMismatch = _make("LengthMismatch")
Incomplete = _make("Incomplete")
EmptyPresentation = _make("EmptyPresentation")

NotAutomorphism = _make("NotAutomorphism")
UnknownOperator = _make("UnknownOperator")
BadParams = _make("BadParams")
NotChiral = _make("NotChiral")
SigmaNotCentral = _make("SigmaNotCentral")
FacetsNotIsomorphic = _make("FacetsNotIsomorphic")
XZeroDisconnected = _make("XZeroDisconnected")


class ParseError(ManiforgeError):
    code = "ParseError"

    def __init__(self, message, line=None, path=None):
        details = {}
        if path is not None:
            details["path"] = path
        if line is not None:
            details["line"] = line
        super().__init__(message, **details)
        self.reason = message
