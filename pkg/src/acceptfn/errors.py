"""Exception hierarchy.

Everything a caller can trigger with bad input derives from
:class:`AcceptfnError`.  :class:`IndifferenceLevelMismatch` is the exception:
it signals a broken invariant inside the library and is never expected.
"""


class AcceptfnError(Exception):
    pass


class UniverseError(AcceptfnError, ValueError):
    pass


class DuplicateAtom(UniverseError):
    pass


class TooManyAtoms(UniverseError):
    pass


class BadAtomName(UniverseError):
    pass


class ValidationError(AcceptfnError, ValueError):
    """An input value breaks the invariants of its kind."""


class NotAConfidenceMeasure(ValidationError):
    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"not a confidence measure: {first}")


class BadDistribution(ValidationError):
    pass


class BadMass(ValidationError):
    pass


class EmptyFocal(BadMass):
    pass


class NonPositiveMass(BadMass):
    pass


class MassSumNotOne(BadMass):
    pass


class NotNormalized(ValidationError):
    pass


class SkeletonInconsistent(ValidationError):
    pass


class IncompleteCoverage(SkeletonInconsistent):
    pass


class ParseError(AcceptfnError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnknownAtom(ParseError):
    pass


class DuplicateEntry(ParseError):
    pass


class MissingEntry(ParseError):
    pass


class ContextError(AcceptfnError, ValueError):
    pass


class EmptyContext(ContextError):
    pass


class ZeroProbabilityContext(ContextError):
    pass


class ZeroPossibilityContext(ContextError):
    pass


class NotAcceptanceFunction(AcceptfnError, ValueError):
    pass


class SizeLimitError(AcceptfnError, ValueError):
    pass


class UniverseTooLargeForOracle(SizeLimitError):
    pass


class UniverseTooLargeForExhaustive(SizeLimitError):
    pass


class IndifferenceLevelMismatch(AssertionError):
    """Undecided events of an acceptance function carry different values.

    Unreachable for a correct implementation; raising it means the kernel
    decision is wrong.
    """
