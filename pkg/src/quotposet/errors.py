"""Exception types raised by the library."""

from __future__ import annotations

from typing import Any


class QuotposetError(Exception):
    """Base class for every library error."""


class CyclicInput(QuotposetError):
    def __init__(self, cycle: list[int]):
        self.cycle = cycle
        super().__init__(f"cover relation contains a cycle through {cycle}")


class BadIndex(QuotposetError):
    def __init__(self, index: Any, n: int):
        self.index = index
        self.n = n
        super().__init__(f"element index {index!r} out of range for n={n}")


class InvalidOrder(QuotposetError):
    """A relation matrix failed one of the partial order axioms."""


class InvalidPartition(QuotposetError):
    pass


class TooLarge(QuotposetError):
    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotLattice(QuotposetError):
    pass


class NotGraded(QuotposetError):
    pass


class NoUniqueMin(QuotposetError):
    pass


class WitnessError(QuotposetError):
    """An error that carries a failure certificate."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class NotWeakOrder(WitnessError):
    pass


class NotCompatible(WitnessError):
    pass


class NotOrderCongruence(WitnessError):
    pass


class NotAutomorphism(QuotposetError):
    def __init__(self, generator: int, pair: tuple[int, int]):
        self.generator = generator
        self.pair = pair
        super().__init__(
            f"generator {generator} is not an automorphism: breaks the pair {pair}"
        )


class ConditionFails(QuotposetError):
    """The summation condition of a characteristic-polynomial check failed.

    Both polynomials are attached so callers can compare them anyway.
    """

    def __init__(self, block: int, chi_original: Any, chi_quotient: Any, detail: str):
        self.block = block
        self.chi_original = chi_original
        self.chi_quotient = chi_quotient
        super().__init__(detail)


class ImplicationViolation(QuotposetError):
    def __init__(self, violations: list[Any]):
        self.violations = violations
        names = ", ".join(str(v) for v in violations)
        super().__init__(f"implication(s) violated: {names}")


class PreconditionFailed(QuotposetError):
    pass


class FormatError(QuotposetError):
    """Malformed input document; ``where`` names the line/column or field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
