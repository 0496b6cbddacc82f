"""Exception taxonomy shared by all gapforge modules.

Two broad families matter to callers (and to the CLI exit-code mapping):
ValidationFailure for inputs that violate a contract, and ResourceExhausted
for inputs that are well formed but exceed a configured compute or memory
budget.
"""


class GapforgeError(Exception):
    """Base class for every library-defined error."""


class ValidationFailure(GapforgeError):
    """Input violates an operation precondition or a config invariant."""


class ResourceExhausted(GapforgeError):
    """Input is valid but exceeds a configured budget (time, memory, width)."""


class UndefinedIterate(ValidationFailure):
    """An iterated logarithm hit a nonpositive value before the final level."""


class NonMonotone(ValidationFailure):
    """A normalizer decreased on its sampled validation grid."""


class Overflow(ResourceExhausted):
    """A result exceeds the supported native integer width."""


class RangeTooLarge(ResourceExhausted):
    """A sieve request would materialize more memory than the budget allows."""


class BudgetExceeded(ResourceExhausted):
    """An exact enumeration would exceed the configured compute budget."""


class FactorBudgetExceeded(ResourceExhausted):
    """Factorization gave up: a cofactor resisted the configured effort."""


class NoPlacement(ValidationFailure):
    """No tuple satisfies the placement windows and divisibility constraints."""


class OrderingViolated(ValidationFailure):
    """Derived or supplied construction parameters break v < y <= L/2 < L <= U."""


class UnclassifiableForm(ValidationFailure):
    """A survivor fits none of the recognized factorization shapes."""


class NoAllowedClass(ValidationFailure):
    """Every residue class modulo p is forbidden by the tuple avoidance rule."""


class HViolation(GapforgeError):
    """A constructed residue system hits a designated tuple element; fatal."""


class IoFailure(GapforgeError):
    """Reading or writing a report failed at the OS level."""


class NegativeRegimeWarning(RuntimeWarning):
    """The normalizer formula was evaluated where its slowest iterate is
    negative; the value is reported but is not meaningful asymptotically."""
