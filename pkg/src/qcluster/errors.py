"""Exception types shared across the package.

Everything raised on purpose derives from ClusterError so callers (CLI,
HTTP service) can map failures to exit codes / status codes in one place.
"""

from __future__ import annotations


class ClusterError(Exception):
    """Base class for all deliberate failures."""


class MalformedInput(ClusterError):
    """Input data does not parse or violates a structural invariant."""


class ShapeMismatch(ClusterError):
    """Two objects disagree on (n, m) or on matrix dimensions."""


class DimensionMismatch(ClusterError):
    """A vector or matrix has the wrong length for the ambient lattice."""


class DivisionByZero(ClusterError):
    """Exact division with zero divisor."""


class NotDivisible(ClusterError):
    """Exact division has a nonzero remainder."""


class ZeroDivisor(ClusterError):
    """Right division by an element whose leading term is not invertible
    (e.g. it contains odd generators, which square to zero)."""


class Incompatible(ClusterError):
    """The (B, Lambda) pair fails the compatibility check.

    Carries the full report object in args[0].
    """

    @property
    def report(self):
        return self.args[0]


class NotAllowed(ClusterError):
    """Mutation at this vertex is not admissible for the super quiver.

    args = (vertex, analysis) with vertex 0-based and analysis the per-target
    condition breakdown from quiver.allowedness_analysis.
    """

    @property
    def vertex(self) -> int:
        return self.args[0]

    @property
    def analysis(self):
        return self.args[1]

    def __str__(self) -> str:
        return f"mutation at vertex {self.vertex + 1} is not allowed"


class MutationOnFrozen(ClusterError):
    """Mutation requested at a frozen (or odd) vertex."""


class NegativePowerOfPolynomialVariable(ClusterError):
    """A frame monomial asks for a negative power of a cluster variable
    that is not a single invertible term."""
