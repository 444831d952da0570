"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: domain/range problems are
usage errors (exit 2), numeric and resource failures are exit 3, and
structured certification rejections are exit 1.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the operation's stated domain."""


class InputRangeError(DomainError):
    """An integer input or result does not fit the declared 63-bit width."""


class NumericError(ArithmeticError):
    """A floating-point computation failed its accuracy contract."""


class IntegralityError(NumericError):
    """An analytic class number did not round cleanly to an integer.

    Carries the offending float so callers can inspect it.  When the value
    sits near an integer divided by 3, the likely culprit is a unit index
    larger than 1 rather than precision loss; ``unit_index_suspected``
    records that diagnosis without deciding it.
    """

    def __init__(self, message: str, value: float, gap: float,
                 unit_index_suspected: bool = False):
        super().__init__(message)
        self.value = value
        self.gap = gap
        self.unit_index_suspected = unit_index_suspected

    def __reduce__(self):
        # keep the diagnostic fields across process boundaries
        return (
            IntegralityError,
            (self.args[0], self.value, self.gap, self.unit_index_suspected),
        )


class ResourceLimitError(RuntimeError):
    """A search or closure exceeded its configured element budget."""


class CertificationRejected(Exception):
    """The input cannot enter the certification pipeline.

    ``reasons`` holds machine-readable tags ("composite", "residue",
    "not_shanks_form"); ``context`` holds the offending values.
    """

    def __init__(self, reasons, **context):
        self.reasons = tuple(reasons)
        self.context = dict(context)
        super().__init__(f"rejected: {', '.join(self.reasons)} ({self.context})")

    def __reduce__(self):
        return (CertificationRejected, (self.reasons,), {"context": self.context})

    def __setstate__(self, state):
        self.context = state["context"]
