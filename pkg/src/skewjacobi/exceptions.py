"""Exception types raised by the coefficient maps and evaluators."""


class PositiveIndexGammaTerm(ValueError):
    """A gamma-type term would need the incomplete gamma at a negative argument."""


class SupportViolation(ValueError):
    """A coefficient sits outside the exponent class its component allows."""


class SymmetryViolation(ValueError):
    """Components l and -l disagree where the map requires them to match."""


class PlusSpaceViolation(ValueError):
    """A scalar expansion has coefficients outside the plus space."""


class NotPrimeIndex(ValueError):
    """The index m is neither 1 nor a prime."""
