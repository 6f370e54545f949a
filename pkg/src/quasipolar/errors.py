"""Exception hierarchy shared by every module."""
from __future__ import annotations


class RingError(Exception):
    """Base class for all errors raised by this package."""


class AxiomViolation(RingError):
    """A Cayley table fails one of the ring axioms.

    ``kind`` is one of the :class:`~quasipolar.ring.Axiom` values and
    ``witness`` is the tuple of element indices exhibiting the failure.
    """

    def __init__(self, kind, witness: tuple[int, ...]):
        self.kind = kind
        self.witness = witness
        super().__init__(f"{kind.value} fails at {witness}")


class RingMismatch(RingError):
    pass


class RequiresUnity(RingError):
    pass


class FeasibilityExceeded(RingError):
    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"ring of order {order} exceeds feasibility cap {cap}")


class BimoduleViolation(RingError):
    def __init__(self, law: str, witness: tuple[int, ...]):
        self.law = law
        self.witness = witness
        super().__init__(f"bimodule law {law!r} fails at {witness}")


class CharacteristicMismatch(RingError):
    pass


class SemanticError(RingError):
    """A well-formed ring expression that cannot be evaluated."""


class NotIdempotent(SemanticError):
    pass


class AmbiguousInverse(RingError):
    """Two distinct witnesses were found where uniqueness is claimed."""

    def __init__(self, what: str, element: int, first: int, second: int):
        self.what = what
        self.element = element
        self.candidates = (first, second)
        super().__init__(f"{what} of element {element} is not unique: {first} and {second}")


class InternalInvariantBroken(RingError):
    pass


class CertificateError(RingError):
    pass


class ParseError(RingError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")

