"""Björling problem in E^3 and L^3.

Given an analytic core curve alpha and an analytic unit normal field V along
it (timelike when sig = -1), the solution surface has isotropic curve

    alpha'(z) - i sig V(z) x alpha'(z)

with the signature-dependent cross product, and base value Re alpha(z0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import expr as ex
from .errors import IsotropyBroken
from .expr import Expr
from .vectors import Signature, cross, inner, signature
from .weierstrass import IsotropicCurve

INVARIANT_TOL = 1e-9


@dataclass(frozen=True)
class BjorlingData:
    alpha: tuple
    V: tuple
    sig: Signature = Signature.EUCLIDEAN
    z0: complex = 0.0
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(ex.as_expr(a) for a in self.alpha))
        object.__setattr__(self, "V", tuple(ex.as_expr(v) for v in self.V))
        object.__setattr__(self, "sig", signature(self.sig))
        object.__setattr__(self, "z0", complex(self.z0))

    @property
    def velocity(self) -> tuple:
        return tuple(ex.differentiate(a) for a in self.alpha)

    def invariant_residuals(self, n: int = 25) -> tuple[float, float]:
        """(max |<V,V> - sig|, max |<V, alpha'>|) at real points near z0."""
        ts = self.z0.real + np.linspace(-1.0, 1.0, n)
        V = np.array([ex.evaluate(v, ts, self.params) for v in self.V])
        da = np.array([ex.evaluate(a, ts, self.params) for a in self.velocity])
        unit = np.max(np.abs(inner(V, V, self.sig) - int(self.sig)))
        orth = np.max(np.abs(inner(V, da, self.sig)))
        return float(unit), float(orth)

    def base_point(self) -> np.ndarray:
        return np.array([ex.evaluate(a, self.z0, self.params) for a in self.alpha]).real


def bjorling_isotropic(d: BjorlingData, check: bool = True) -> IsotropicCurve:
    if check:
        unit, orth = d.invariant_residuals()
        if unit > INVARIANT_TOL or orth > INVARIANT_TOL:
            raise IsotropyBroken(
                f"Björling data invalid: |<V,V>-sig|={unit:.2e}, |<V,alpha'>|={orth:.2e}")
    da = d.velocity
    w = cross(d.V, da, d.sig)
    k = -1j * int(d.sig)
    comps = tuple(ex.add(a, ex.mul(k, c)) for a, c in zip(da, w))
    curve = IsotropicCurve(comps, d.sig, (), d.params)
    return curve.check_isotropic()


def bjorling_surface(d: BjorlingData) -> tuple[IsotropicCurve, complex, np.ndarray]:
    """(curve, z0, X(z0)) ready for sampling."""
    return bjorling_isotropic(d), d.z0, d.base_point()


# common frames ------------------------------------------------------------

def rotational_timelike(a: float = 0.0) -> BjorlingData:
    """Circle in the plane z = 0 with V = sinh(a) n + cosh(a) b."""
    params = {"a": float(a)}
    a = ex.param("a")
    z = ex.Z
    n = (-ex.cos(z), -ex.sin(z), ex.ZERO)
    b = (ex.ZERO, ex.ZERO, ex.ONE)
    V = tuple(ex.add(ex.mul(ex.sinh(a), ni), ex.mul(ex.cosh(a), bi)) for ni, bi in zip(n, b))
    return BjorlingData((ex.cos(z), ex.sin(z), ex.ZERO), V, -1, 0.0, params)


def rotational_spacelike(a: float = 0.0) -> BjorlingData:
    """Hyperbola (0, sinh t, cosh t) with V = cosh(a) n + sinh(a) b."""
    params = {"a": float(a)}
    a = ex.param("a")
    z = ex.Z
    n = (ex.ZERO, ex.sinh(z), ex.cosh(z))
    b = (ex.ONE, ex.ZERO, ex.ZERO)
    V = tuple(ex.add(ex.mul(ex.cosh(a), ni), ex.mul(ex.sinh(a), bi)) for ni, bi in zip(n, b))
    return BjorlingData((ex.ZERO, ex.sinh(z), ex.cosh(z)), V, -1, 0.0, params)


def rotational_lightlike(a: float = 0.0) -> BjorlingData:
    """Parabola (-1 + t^2/2, t, t^2/2) with V = sinh(a) e2 + cosh(a) e3,
    e2 = n - b, e3 = n + b."""
    params = {"a": float(a)}
    a = ex.param("a")
    z = ex.Z
    z2 = ex.power(z, 2)
    n = (ex.const(0.5), ex.ZERO, ex.const(0.5))
    b = (ex.mul(0.5, ex.sub(z2, 1)), z, ex.mul(0.5, ex.add(z2, 1)))
    e2 = tuple(ex.sub(ni, bi) for ni, bi in zip(n, b))
    e3 = tuple(ex.add(ni, bi) for ni, bi in zip(n, b))
    V = tuple(ex.add(ex.mul(ex.sinh(a), p), ex.mul(ex.cosh(a), q)) for p, q in zip(e2, e3))
    alpha = (ex.add(-1, ex.mul(0.5, z2)), z, ex.mul(0.5, z2))
    return BjorlingData(alpha, V, -1, 0.0, params)


def rotated_circle(rotation: np.ndarray) -> BjorlingData:
    """Euclidean circle moved by ``rotation`` with principal normal V = -alpha''."""
    z = ex.Z
    circle = (ex.cos(z), ex.sin(z), ex.ZERO)
    alpha = tuple(_lincomb(row, circle) for row in np.asarray(rotation, dtype=float))
    V = tuple(ex.neg(ex.differentiate(ex.differentiate(a))) for a in alpha)
    return BjorlingData(alpha, V, 1, 0.0)


def _lincomb(row, vec) -> Expr:
    acc = ex.ZERO
    for c, e in zip(row, vec):
        if c != 0:
            acc = ex.add(acc, ex.mul(float(c), e))
    return acc
