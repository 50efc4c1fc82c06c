"""Exception types shared across the package."""


class DesignError(Exception):
    """Base class for every domain-level failure raised by this package."""


class TagStarvedError(DesignError):
    """The harvesting floor exceeds what even a perfectly matched load collects.

    Raised when the tag-sensitivity radicand goes negative: no reflection
    state, not even full absorption, can keep the tag circuitry alive.
    """


class InfeasibleError(DesignError):
    """The constraint set admits no coefficient assignment.

    Carries a human-readable diagnostic explaining which requirement failed
    (separation cap exceeded, crossed bounds, or an empty oracle grid).
    """


class SustainabilityError(DesignError):
    """Average harvested power does not cover the tag's minimum consumption."""


class DegenerateCircuitError(DesignError):
    """Load and antenna put a zero in the reflection-map denominator."""


class OpenCircuitError(DesignError):
    """A unit-real reflection state has no finite realizing load impedance."""
