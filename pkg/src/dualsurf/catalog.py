"""Named zero-mean-curvature surfaces with their data and parametrizations.

Every entry carries an isotropic curve together with the base point z0 and
base value X0 that make the integrated surface coincide with the closed-form
parametrization (when one exists) on the entry's default domain.  ``data`` is
Weierstrass data in the same chart as the curve; ``normal_form`` is a
simplified representative in another chart, ``periodic`` a rational chart
(w = e^z) in which real periods are loop integrals around w = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import bjorling as bj
from . import expr as ex
from .errors import ParameterOutOfRange, UnknownName
from .isometry import make
from .quadrature import Path, circle, closed_form_patch, grid, sample_patch
from .weierstrass import (
    IsotropicCurve,
    WeierstrassData,
    associate,
    isotropic_from_weierstrass,
    weierstrass_from_isotropic,
)

Z = ex.Z
I = 1j


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: Mapping[str, float]
    data: WeierstrassData
    curve: IsotropicCurve
    z0: complex = 0.0
    X0: tuple = (0.0, 0.0, 0.0)
    domain: tuple = (-0.6, 0.6, -0.6, 0.6)
    closed_form: Callable | None = None
    normal_form: WeierstrassData | None = None
    periodic: WeierstrassData | None = None
    loop: Path | None = None
    axis: tuple | None = None
    summary: str = ""
    extra: Mapping[str, object] = field(default_factory=dict)

    @property
    def sig(self):
        return self.curve.sig

    def grid(self, nu: int = 49, nv: int = 49):
        return grid(*self.domain, nu, nv)

    def patch(self, nu: int = 49, nv: int = 49, u=None, v=None):
        if u is None or v is None:
            u, v = self.grid(nu, nv)
        return sample_patch(self.curve, self.z0, np.array(self.X0), u, v)

    def closed_patch(self, nu: int = 49, nv: int = 49, u=None, v=None):
        if self.closed_form is None:
            raise ValueError(f"{self.name} has no closed-form parametrization")
        if u is None or v is None:
            u, v = self.grid(nu, nv)
        return closed_form_patch(self.closed_form, u, v, self.sig, self.z0)


def _p(name):
    return ex.param(name)


# Euclidean --------------------------------------------------------------

def euclidean_catenoid() -> CatalogEntry:
    data = WeierstrassData(Z, Z ** -2, 1, (0,))
    return CatalogEntry(
        "euclidean_catenoid", {}, data, isotropic_from_weierstrass(data),
        z0=1.0, periodic=data, loop=circle(0, 1),
        axis=(0, 0, 1), domain=(2.1, 3.3, -0.6, 0.6),
        summary="catenoid of E^3, g = z, f = 1/z^2")


def helicoid_E3() -> CatalogEntry:
    base = WeierstrassData(Z, Z ** -2, 1, (0,))
    curve = associate(base, math.pi / 2)
    data = WeierstrassData(Z, ex.mul(I, Z ** -2), 1, (0,))
    return CatalogEntry(
        "helicoid_E3", {}, data, curve, z0=1.0, periodic=data, loop=circle(0, 1), axis=(0, 0, 1),
        domain=(2.1, 3.3, -0.6, 0.6),
        summary="adjoint of the catenoid")


def enneper() -> CatalogEntry:
    data = WeierstrassData(Z, 1, 1)
    return CatalogEntry("enneper", {}, data, isotropic_from_weierstrass(data),
                        domain=(-0.6, 0.6, 1.5, 2.7),
        summary="Enneper surface, g = z, f = 1")


def rotated_catenoid_Ct(t: float = 0.5) -> CatalogEntry:
    """Euclidean catenoid rotated by angle t about the y-axis."""
    if not 0 <= t <= math.pi / 2:
        raise ParameterOutOfRange(f"t must lie in [0, pi/2], got {t}")
    T = _p("t")
    phi = (
        ex.sub(ex.neg(ex.mul(ex.cos(T), ex.sin(Z))), ex.mul(I, ex.sin(T))),
        ex.cos(Z),
        ex.sub(ex.mul(ex.sin(T), ex.sin(Z)), ex.mul(I, ex.cos(T))),
    )
    params = {"t": float(t)}
    curve = IsotropicCurve(phi, 1, (), params)
    G = make("euclidean_y", t).linear

    def closed(u, v):
        base = np.array([np.cos(u) * np.cosh(v), np.sin(u) * np.cosh(v), v + 0 * u])
        return np.einsum("ij,j...->i...", G, base)

    return CatalogEntry(
        "rotated_catenoid_Ct", params, weierstrass_from_isotropic(curve), curve,
        X0=tuple(G @ np.array([1.0, 0.0, 0.0])), closed_form=closed,
        axis=tuple(G @ np.array([0.0, 0.0, 1.0])),
        domain=(-0.6, 0.6, 1.2, 2.4),
        summary="catenoid with axis rotated by t about (0,1,0)")


def bonnet_minimal(lam: float = 1.0) -> CatalogEntry:
    if not lam > 0:
        raise ParameterOutOfRange(f"lambda must be positive, got {lam}")
    L = _p("lam")
    params = {"lam": float(lam)}
    data = WeierstrassData(ex.add(ex.exp(Z), L), ex.exp(ex.neg(Z)), 1, (), params)
    periodic = WeierstrassData(ex.add(Z, L), Z ** -2, 1, (0,), params)
    return CatalogEntry(
        "bonnet_minimal", params, data, isotropic_from_weierstrass(data),
        periodic=periodic, loop=circle(0, 1),
        domain=(-0.6, 0.6, -0.6, 0.6),
        summary="Bonnet minimal surface, g = e^z + lambda, f = e^-z")


def bonnet_minimal_Yt(t: float = 1.0) -> CatalogEntry:
    """Dual of the elliptic catenoid moved by the boost H_t."""
    T = _p("t")
    params = {"t": float(t)}
    ch, sh = ex.cosh(ex.mul(0.5, T)), ex.sinh(ex.mul(0.5, T))
    E = ex.exp(Z)
    g = ex.mul(-I, ex.div(ex.add(ex.mul(E, ch), ex.mul(I, sh)),
                          ex.add(ex.mul(-I, ex.mul(E, sh)), ch)))
    f = ex.mul(I, ex.mul(ex.exp(ex.neg(Z)), ex.power(ex.sub(ch, ex.mul(I, ex.mul(E, sh))), 2)))
    data = WeierstrassData(g, f, 1, (), params)

    def closed(u, v):
        c, s = math.cosh(t), math.sinh(t)
        return (-np.cosh(u) * np.sin(v),
                c * np.cosh(u) * np.cos(v) - v * s - c,
                np.sin(v) * np.sinh(u) * s + u * c)

    E_w = Z
    g_w = ex.mul(-I, ex.div(ex.add(ex.mul(E_w, ch), ex.mul(I, sh)),
                            ex.add(ex.mul(-I, ex.mul(E_w, sh)), ch)))
    f_w = ex.mul(I, ex.mul(Z ** -2, ex.power(ex.sub(ch, ex.mul(I, ex.mul(E_w, sh))), 2)))
    periodic = WeierstrassData(g_w, f_w, 1, (0,), params)
    return CatalogEntry(
        "bonnet_minimal_Yt", params, data, isotropic_from_weierstrass(data),
        closed_form=closed, periodic=periodic, loop=circle(0, 0.5),
        domain=(-0.6, 0.6, -0.3, 0.9),
        summary="Bonnet minimal surface from a boosted elliptic catenoid")


def goursat_bonnet_Zt(t: float = 0.5) -> CatalogEntry:
    """Dual of the elliptic catenoid moved by the null rotation P_t."""
    T = _p("t")
    params = {"t": float(t)}

    def gauss(E):
        return ex.mul(-I, ex.div(ex.sub(ex.mul(ex.add(T, 2j), E), T),
                                 ex.add(ex.mul(T, E), ex.sub(2j, T))))

    base = lambda E: ex.power(ex.add(ex.mul(T, E), ex.sub(2j, T)), 2)
    E = ex.exp(Z)
    data = WeierstrassData(gauss(E), ex.mul(-0.25j, ex.div(base(E), E)), 1, (), params)
    periodic = WeierstrassData(gauss(Z), ex.mul(-0.25j, ex.mul(base(Z), Z ** -2)), 1, (0,), params)

    def closed(u, v):
        ch, sh, c, s = np.cosh(u), np.sinh(u), np.cos(v), np.sin(v)
        return (t * t * ch * s / 2 - t * t * v / 2 + t * ch * c - t - ch * s,
                ch * (t * s + c) - t * v - 1,
                -t * t * sh * c / 2 + t * t * u / 2 + t * sh * s + u)

    return CatalogEntry(
        "goursat_bonnet_Zt", params, data, isotropic_from_weierstrass(data),
        closed_form=closed, periodic=periodic, loop=circle(0, 0.5),
        domain=(-0.6, 0.6, 0.4, 1.6),
        summary="Goursat transform of a Bonnet surface (elliptic catenoid, P_t)")


def goursat_bonnet_Wt(t: float = 0.5) -> CatalogEntry:
    """Dual of the hyperbolic catenoid moved by the null rotation P_t.

    The density f carries the sign that reproduces the integrated curve
    (the opposite sign yields the point-reflected surface).
    """
    T = _p("t")
    params = {"t": float(t)}

    def gauss(E):
        num = ex.add(ex.mul(ex.add(T, 1 + 1j), E), ex.add(-1 - 1j, ex.mul(I, T)))
        den = ex.add(ex.mul(ex.add(ex.mul(I, T), 1 + 1j), E), ex.sub(1 + 1j, T))
        return ex.div(num, den)

    base = lambda E: ex.power(ex.add(ex.mul(ex.add(T, 1 - 1j), E), ex.add(1 - 1j, ex.mul(I, T))), 2)
    E = ex.exp(Z)
    data = WeierstrassData(gauss(E), ex.mul(0.25j, ex.div(base(E), E)), 1, (), params)
    periodic = WeierstrassData(gauss(Z), ex.mul(0.25j, ex.mul(base(Z), Z ** -2)), 1, (0,), params)

    def closed(u, v):
        ch, sh, c, s = np.cosh(u), np.sinh(u), np.cos(v), np.sin(v)
        return (-t * t * u / 2 - t * s * (t * sh + 2 * ch) / 2 + u,
                -s * (t * sh + ch) - t * u,
                ((t * t + 2) * ch * c - (v + 1) * t * t + 2 * t * sh * c - 2) / 2)

    return CatalogEntry(
        "goursat_bonnet_Wt", params, data, isotropic_from_weierstrass(data),
        closed_form=closed, periodic=periodic, loop=circle(0, 0.5),
        domain=(0.9, 2.1, -0.6, 0.6),
        summary="Goursat transform of a Bonnet surface (hyperbolic catenoid, P_t)")


def enneper_family_Xt(t: float = 1.0) -> CatalogEntry:
    """Dual of the parabolic catenoid moved by the boost H_t."""
    T = _p("t")
    params = {"t": float(t)}
    ch, sh = ex.cosh(T), ex.sinh(T)
    z2 = Z ** 2
    phi = (
        ex.add(ex.add(1, ex.mul(I, Z)), ex.mul(-0.5, z2)),
        ex.sub(ex.add(ex.mul(I, ch), ex.mul(ex.add(ex.neg(ch), ex.mul(I, sh)), Z)),
               ex.mul(0.5, ex.mul(sh, z2))),
        ex.add(ex.add(sh, ex.mul(ex.add(ch, ex.mul(I, sh)), Z)), ex.mul(0.5j, ex.mul(ch, z2))),
    )
    curve = IsotropicCurve(phi, 1, (), params)

    def closed(u, v):
        c, s = math.cosh(t), math.sinh(t)
        return (-u * (u * u - 3 * v * v + 6 * v - 6) / 6,
                (-u * s * (u * u - 3 * v * v + 6 * v) - 3 * c * (u * u - v * v + 2 * v)) / 6,
                (c * (-3 * u * u * v + 3 * u * u + v ** 3 - 3 * v * v) - (6 * u * v - 6 * u) * s) / 6)

    return CatalogEntry(
        "enneper_family_Xt", params, weierstrass_from_isotropic(curve), curve,
        closed_form=closed,
        domain=(0.0, 1.2, -0.9, 0.3),
        summary="dual of the boosted parabolic catenoid (an Enneper surface)")


# Lorentzian -------------------------------------------------------------

def elliptic_catenoid(a: float = 1.0) -> CatalogEntry:
    """Rotational maximal surface with timelike axis (0,0,1)."""
    d = bj.rotational_timelike(a)
    curve = bj.bjorling_isotropic(d)
    A = _p("a")
    g = ex.mul(ex.neg(ex.div(ex.sinh(ex.mul(0.5, A)), ex.cosh(ex.mul(0.5, A)))), ex.exp(ex.mul(I, Z)))
    ea = ex.exp(A)
    f = ex.mul(ex.div(ex.mul(-I, ex.power(ex.add(1, ea), 2)), ex.mul(2, ea)), ex.exp(ex.mul(-I, Z)))
    data = WeierstrassData(g, f, -1, (), d.params)
    normal = WeierstrassData(Z, Z ** -2, -1, (0,))

    def closed(u, v):
        r = np.cosh(a) * np.sinh(v) + np.cosh(v)
        return np.cos(u) * r, np.sin(u) * r, -v * np.sinh(a) + 0 * u

    return CatalogEntry(
        "elliptic_catenoid", d.params, data, curve, X0=tuple(d.base_point()),
        closed_form=closed, normal_form=normal,
        axis=(0, 0, 1), domain=(-0.6, 0.6, 0.8, 2.0),
        summary="maximal catenoid with timelike axis",
        extra={"bjorling": d})


def hyperbolic_catenoid(a: float = 0.0) -> CatalogEntry:
    """Rotational maximal surface with spacelike axis (1,0,0)."""
    d = bj.rotational_spacelike(a)
    curve = bj.bjorling_isotropic(d)
    A = _p("a")
    ea, ez, eaz = ex.exp(A), ex.exp(Z), ex.exp(ex.add(A, Z))
    den = ex.add(ex.add(ex.add(eaz, ex.mul(I, ea)), ex.mul(I, ez)), 1)
    num = ex.sub(ex.sub(ex.add(ex.mul(I, eaz), ea), ez), I)
    data = WeierstrassData(ex.div(num, den), ex.neg(ex.div(ex.power(den, 2), ex.mul(4, eaz))),
                           -1, (), d.params)
    E = ex.exp(Z)
    normal = WeierstrassData(ex.mul(I, ex.div(ex.sub(E, 1), ex.add(E, 1))),
                             ex.mul(-I, ex.div(ex.power(ex.add(E, 1), 2), ex.mul(2, E))), -1)

    def closed(u, v):
        r = np.sinh(a) * np.sin(v) + np.cos(v)
        return v * np.cosh(a) + 0 * u, np.sinh(u) * r, np.cosh(u) * r

    return CatalogEntry(
        "hyperbolic_catenoid", d.params, data, curve, X0=tuple(d.base_point()),
        closed_form=closed, normal_form=normal, axis=(1, 0, 0),
        domain=(-0.6, 0.6, -0.6, 0.6),
        summary="maximal catenoid with spacelike axis", extra={"bjorling": d})


def parabolic_catenoid(a: float = 0.0) -> CatalogEntry:
    """Rotational maximal surface with lightlike axis (1,0,1)."""
    d = bj.rotational_lightlike(a)
    curve = bj.bjorling_isotropic(d)
    A = _p("a")
    ea = ex.exp(A)
    iz = ex.mul(I, Z)
    data = WeierstrassData(
        ex.div(ex.sub(ex.add(ea, iz), 1), ex.add(ex.add(ea, iz), 1)),
        ex.mul(-I, ex.div(ex.power(ex.add(ex.add(ea, iz), 1), 2), ex.mul(2, ea))),
        -1, (), d.params)
    normal = WeierstrassData(ex.div(Z, ex.sub(Z, 2j)), ex.mul(0.5j, ex.power(ex.sub(Z, 2j), 2)), -1)

    def closed(u, v):
        e = np.exp(-a)
        cubic = e * (v ** 3 / 6 - u * u * v / 2)
        quad = u * u / 2 - v * v / 2
        return (cubic + np.cosh(a) * v + quad - 1, u - e * u * v, cubic + np.sinh(a) * v + quad)

    return CatalogEntry(
        "parabolic_catenoid", d.params, data, curve, X0=tuple(d.base_point()),
        closed_form=closed, normal_form=normal,
        axis=(1, 0, 1), domain=(-0.6, 0.6, -1.6, -0.4),
        summary="maximal catenoid with lightlike axis", extra={"bjorling": d})


def bonnet_maximal(t: float = 0.5) -> CatalogEntry:
    """Dual of the rotated Euclidean catenoid C_t: a Bonnet maximal surface.

    ``curve`` is the dual of the C_t curve and integrates to the closed form.
    ``normal_form`` is the normalized Bonnet maximal data (g a Moebius image
    of e^z), congruent to the curve's data after a change of chart.
    """
    if not 0 <= t <= math.pi / 2:
        raise ParameterOutOfRange(f"t must lie in [0, pi/2], got {t}")
    T = _p("t")
    params = {"t": float(t)}
    psi = (
        ex.add(ex.neg(ex.sin(T)), ex.mul(I, ex.mul(ex.cos(T), ex.sin(Z)))),
        ex.mul(-I, ex.cos(Z)),
        ex.sub(ex.mul(ex.sin(T), ex.sin(Z)), ex.mul(I, ex.cos(T))),
    )
    curve = IsotropicCurve(psi, -1, (), params)
    c, s = ex.cos(ex.mul(0.5, T)), ex.sin(ex.mul(0.5, T))

    def bonnet(E, f_scale):
        g = ex.div(ex.sub(ex.mul(c, E), s), ex.add(ex.mul(s, E), c))
        return g, ex.mul(ex.power(ex.add(ex.mul(s, E), c), 2), f_scale)

    g, f = bonnet(ex.exp(Z), ex.exp(ex.neg(Z)))
    normal = WeierstrassData(g, f, -1, (), params)
    gw, fw = bonnet(Z, Z ** -2)
    periodic = WeierstrassData(gw, fw, -1, (0,), params)

    def closed(u, v):
        st, ct = math.sin(t), math.cos(t)
        return (-u * st - ct * np.sin(u) * np.sinh(v),
                np.cos(u) * np.sinh(v),
                -st * np.cos(u) * np.cosh(v) + v * ct + st)

    return CatalogEntry(
        "bonnet_maximal", params, weierstrass_from_isotropic(curve), curve,
        closed_form=closed, normal_form=normal, periodic=periodic, loop=circle(0, 0.5),
        domain=(-0.6, 0.6, 1.5, 2.7),
        summary="Bonnet maximal surface, dual of C_t")


# registry ---------------------------------------------------------------

_BUILDERS = {
    "euclidean_catenoid": (euclidean_catenoid, {}),
    "helicoid_E3": (helicoid_E3, {}),
    "enneper": (enneper, {}),
    "elliptic_catenoid": (elliptic_catenoid, {"a": 1.0}),
    "hyperbolic_catenoid": (hyperbolic_catenoid, {"a": 0.0}),
    "parabolic_catenoid": (parabolic_catenoid, {"a": 0.0}),
    "rotated_catenoid_Ct": (rotated_catenoid_Ct, {"t": 0.5}),
    "bonnet_maximal": (bonnet_maximal, {"t": 0.5}),
    "bonnet_minimal": (bonnet_minimal, {"lam": 1.0}),
    "bonnet_minimal_Yt": (bonnet_minimal_Yt, {"t": 1.0}),
    "goursat_bonnet_Zt": (goursat_bonnet_Zt, {"t": 0.5}),
    "goursat_bonnet_Wt": (goursat_bonnet_Wt, {"t": 0.5}),
    "enneper_family_Xt": (enneper_family_Xt, {"t": 1.0}),
}

NAMES = tuple(_BUILDERS)


def defaults(name: str) -> dict:
    if name not in _BUILDERS:
        raise UnknownName(name)
    return dict(_BUILDERS[name][1])


def build(name: str, params: Mapping[str, float] | None = None, **kwargs) -> CatalogEntry:
    if name not in _BUILDERS:
        raise UnknownName(name)
    fn, defs = _BUILDERS[name]
    given = {**(params or {}), **kwargs}
    unknown = set(given) - set(defs)
    if unknown:
        raise ParameterOutOfRange(f"{name} takes parameters {sorted(defs)}, got {sorted(unknown)}")
    return fn(**{**defs, **{k: float(v) for k, v in given.items()}})
