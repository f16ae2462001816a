"""Exception hierarchy shared across the package."""


class LearningMachineError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LearningMachineError):
    """A record, schema or config violates a declared invariant."""


class EmptyWindowError(LearningMachineError):
    """A year-range selection matched no records."""

    def __init__(self, start: int, end: int):
        super().__init__(f"no records with diagnosis_year in [{start}, {end}]")
        self.start = start
        self.end = end


class MissingOutcomeError(LearningMachineError):
    """A record without a definitive outcome was asked for its label."""


class ConfigError(LearningMachineError):
    """A configuration document is malformed or out of range."""


class DriftInputError(LearningMachineError):
    """Inputs to a drift test are unusable (empty sample, no shared categories, ...)."""


class SchemaMismatchError(LearningMachineError):
    """Two datasets that must share a schema do not."""


class TrainingError(LearningMachineError):
    """Model training could not produce a valid artifact."""


class ConvergenceError(TrainingError):
    """The optimizer hit its iteration cap before reaching tolerance."""

    def __init__(self, grad_inf_norm: float, max_iter: int):
        super().__init__(
            f"gradient descent did not converge within {max_iter} iterations "
            f"(last gradient inf-norm {grad_inf_norm:.3e})"
        )
        self.grad_inf_norm = grad_inf_norm
        self.max_iter = max_iter


class SearchSpaceError(LearningMachineError):
    """A hyperparameter space or a point in it is invalid."""


class LifecycleError(LearningMachineError):
    """An event or transition violates the lifecycle state machine."""


class PromotionError(LifecycleError):
    """A candidate failed the promotion gate; carries the comparison."""

    def __init__(self, message: str, comparison: dict):
        super().__init__(message)
        self.comparison = comparison
