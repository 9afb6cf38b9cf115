"""Exception types raised across the package."""


class BundleLiftError(ValueError):
    """Base class for all domain errors."""


class InvalidClassError(BundleLiftError):
    """A cohomology class does not fit the lattice of the base manifold."""


class InvalidBundleError(BundleLiftError):
    """Characteristic data that no principal bundle realizes."""


class DiagramError(BundleLiftError):
    """A group diagram that violates its consistency congruences."""


class ActionError(BundleLiftError):
    """A lift query whose action does not act on the given base."""
