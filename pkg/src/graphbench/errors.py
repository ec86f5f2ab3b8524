"""Exception types raised across the library."""


class GraphBenchError(Exception):
    """Base class for all graphbench errors."""


class GraphConstructionError(GraphBenchError, ValueError):
    """Invalid input while building a graph (bad index, non-finite weight)."""


class DatasetFormatError(GraphBenchError, ValueError):
    """Malformed dataset file (ragged rows, empty content, unknown layout)."""


class SplitError(GraphBenchError, ValueError):
    """A stratified split cannot be produced (e.g. a class is too small)."""


class ContractError(GraphBenchError, ValueError):
    """An operation was called on a graph that violates its precondition."""


class ConfigError(GraphBenchError, ValueError):
    """Invalid benchmark or model configuration."""


class ConvergenceError(GraphBenchError, RuntimeError):
    """An iterative solver failed to converge within its iteration budget."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class TrainingFault(GraphBenchError, RuntimeError):
    """Training produced a non-finite loss; carries the offending epoch."""

    def __init__(self, message, epoch):
        super().__init__(message)
        self.epoch = epoch
