"""Dual minimal and maximal surfaces via isotropic curves."""
from .vectors import Signature
from .weierstrass import IsotropicCurve, WeierstrassData, dual, dual_curve

__version__ = "0.1.0"

__all__ = ["Signature", "IsotropicCurve", "WeierstrassData", "dual", "dual_curve", "__version__"]
