"""Exception types raised by the library.

Each class carries a short ``category`` string which the command line front
end prints on stderr so that scripted callers can branch on the failure kind.
"""

import numpy as np


class BdrisError(Exception):
    category = "error"


class ConversionError(BdrisError, np.linalg.LinAlgError):
    """Z <-> S conversion hit a singular matrix."""

    category = "conversion"


class ModelError(BdrisError, np.linalg.LinAlgError):
    """A channel model needed the inverse of a singular matrix."""

    category = "model"


class AssumptionError(BdrisError, ValueError):
    """Impedance blocks do not have the shape required by a reduced model."""

    category = "assumption"


class ConfigError(BdrisError, ValueError):
    """Scenario configuration could not be parsed or failed validation."""

    category = "config"


class BudgetError(BdrisError, ValueError):
    """An exhaustive oracle was asked to enumerate too many candidates."""

    category = "argument"
