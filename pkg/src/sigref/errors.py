"""Exception types shared across the package."""


class SigrefError(Exception):
    """Base class for all library errors."""


class OverlapError(SigrefError):
    """An element appears in more than one block."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} appears in more than one block")


class CoverageError(SigrefError):
    """An element of the ground set is missing from every block."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} is not covered by any block")


class GroundMismatchError(SigrefError):
    """Operands live on different ground sets."""


class OracleBoundExceeded(SigrefError):
    """Exhaustive enumeration requested beyond the configured bound."""


class NotARefinementError(SigrefError):
    """The claimed coarse/fine pair is not ordered by refinement."""


class WeightSumError(SigrefError):
    """Weights do not sum to exactly one."""


class NegativeWeightError(SigrefError):
    """A weight is negative."""


class ShapeError(SigrefError):
    """Weight vectors do not match the atom structure."""


class InvalidGroup(SigrefError):
    """A group element fails to preserve the partition it must act on."""


class CommutativityViolation(SigrefError):
    """The coarsening closure of the generators contains a non-commuting pair."""

    def __init__(self, a, b, witness):
        self.a = a
        self.b = b
        self.witness = witness
        super().__init__(
            f"partitions {a} and {b} do not commute; witness pair {witness}"
        )


class EmptyDomainError(SigrefError):
    """A compatibility domain must contain at least one partition."""


class NotApplicableError(SigrefError):
    """A refinement operator cannot act on the given partition."""


class SourceMismatchError(SigrefError):
    """Two refinement steps do not share the required source partition."""


class LabelConflictError(SigrefError):
    """The same label names two different refinement steps."""


class CyclicityError(SigrefError):
    """The precedence relation extracted from the chains contains a cycle."""


class EmptyBranchSet(SigrefError):
    """A branch set must contain at least one refinement."""


class IncompatibleInput(SigrefError):
    """Branch sets must consist of pairwise non-commuting refinements."""


class PolicyError(SigrefError):
    """A scripted or rule-driven simulation step is not applicable."""


class FixtureValidationError(SigrefError):
    """A JSON fixture does not match its schema."""
