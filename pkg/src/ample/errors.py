"""Exception types shared across the package."""


class AmpleError(Exception):
    """Base class for all errors raised by this package."""


class BaseMismatchError(AmpleError):
    """Two objects defined over different radix sequences were combined."""


class DepthLimitError(AmpleError):
    """A computation would refine past the configured depth budget."""


class DisjointnessError(AmpleError):
    """The images required to be disjoint by a generalized permutation overlap."""


class PartitionError(AmpleError):
    """A family of clopen sets expected to partition a set fails to do so."""


class KRCoverageError(AmpleError):
    """Some orbit never visits the tower base, so return times are unbounded."""


class ClosureCapError(AmpleError):
    """A brute-force group closure exceeded its configured element cap."""
