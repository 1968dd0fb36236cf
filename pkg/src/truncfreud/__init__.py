"""Extended-precision orthogonal polynomials for the weight exp(-x^4) on [-z, z]."""

__version__ = "0.1.0"

from .specfun import PrecisionContext, lower_incomplete_gamma, complete_gamma  # noqa: E402
from .moments import MomentTable, moment, moment_table  # noqa: E402
from .recurrence import GammaSequence, gamma_from_moments, gamma_laguerre_freud  # noqa: E402
from .polyeval import PolyEval, evaluate  # noqa: E402
from .zeros import ZeroSet, ElectrostaticModel, zeros, electrostatic_points  # noqa: E402

__all__ = [
    "PrecisionContext", "lower_incomplete_gamma", "complete_gamma",
    "MomentTable", "moment", "moment_table",
    "GammaSequence", "gamma_from_moments", "gamma_laguerre_freud",
    "PolyEval", "evaluate",
    "ZeroSet", "ElectrostaticModel", "zeros", "electrostatic_points",
]
