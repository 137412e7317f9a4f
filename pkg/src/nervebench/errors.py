"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class CategoryLawError(WorkbenchError):
    """A raw category description violates the category laws.

    Carries the full list of violations so a caller can report all of
    them at once instead of fixing one law at a time.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"category laws violated: {lines}")


class ShapeMismatch(WorkbenchError):
    """Functors or transformations with incompatible (co)domains."""


class SearchSpaceTooLarge(WorkbenchError):
    """An enumeration exceeded its configured candidate budget."""

    def __init__(self, budget, context=""):
        self.budget = budget
        super().__init__(f"search space exceeds budget {budget} {context}".rstrip())


class EnumerationBudget(WorkbenchError):
    """A functor/transformation enumeration exceeded its budget."""

    def __init__(self, budget, context=""):
        self.budget = budget
        super().__init__(f"enumeration exceeds budget {budget} {context}".rstrip())


class ExactModeUnavailable(WorkbenchError):
    """Exact reduced nerves need an acyclic shape; carries a witness cycle."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"shape has a cycle of non-identity morphisms: {' -> '.join(self.cycle)}")


class AdmissibilityLoss(WorkbenchError):
    """A functor image of an admissible simplex left the reduced nerve."""

    def __init__(self, simplex, detail=""):
        self.simplex = simplex
        super().__init__(f"image of simplex {simplex} is not admissible {detail}".rstrip())


class NoInitialObject(WorkbenchError):
    """The shape lacks the extremal object required by the construction."""


class TruncationTooSmall(WorkbenchError):
    """The requested operation needs more truncation headroom."""


class MissingColimit(WorkbenchError):
    """The target fails to certify a needed (co)limit; carries the shape."""

    def __init__(self, kind, shape_name, detail=""):
        self.kind = kind
        self.shape_name = shape_name
        super().__init__(f"target lacks {kind} over {shape_name} {detail}".rstrip())


class NotOpfibration(WorkbenchError):
    """An operation required an opfibration and got something else."""


class ParseError(WorkbenchError):
    """A category file could not be parsed."""
