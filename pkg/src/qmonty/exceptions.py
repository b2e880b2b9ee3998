"""Exception types shared across the package.

Every error that maps to a client-visible condition in the game service
derives from QmontyError, so the HTTP layer can translate them uniformly.
"""


class QmontyError(Exception):
    """Base class for all package errors."""

    code = "Error"


class InvalidAngles(QmontyError):
    """A rotator angle lies outside [0, pi/2]."""

    code = "InvalidAngles"


class InvalidDoorRegion(QmontyError):
    """A door pair (phi1, phi2) violates sin(phi1) <= sin(phi2)."""

    code = "InvalidDoorRegion"


class DegenerateDoorOpening(QmontyError):
    """The door operator annihilated the state; probabilities undefined."""

    code = "DegenerateDoorOpening"


class InvalidWeights(QmontyError):
    """Pauli mixing weights outside [0, 1] or summing past 1."""

    code = "InvalidWeights"


class InvalidBoxCount(QmontyError):
    """Classical payoff parameters violate n >= 2 or 0 <= m <= n - 2."""

    code = "InvalidBoxCount"


class IllegalPhaseTransition(QmontyError):
    """A game action was requested in a phase that does not allow it."""

    code = "IllegalPhaseTransition"
