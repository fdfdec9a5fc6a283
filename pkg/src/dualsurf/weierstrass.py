"""Weierstrass data, isotropic curves and the transformations acting on them.

A zero-mean-curvature surface is X(z) = X(z0) + Re int_{z0}^z phi(w) dw where
the isotropic curve phi satisfies phi1^2 + phi2^2 + sig phi3^2 = 0.  With
Weierstrass data (g, f dz):

    phi = ( (1 - sig g^2) f / 2,  i (1 + sig g^2) f / 2,  g f ).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from . import expr as ex
from .errors import (
    DegenerateGaussMap,
    DegenerateMetric,
    DegenerateMoebius,
    DivisionByZero,
    IsotropyBroken,
    SingularChange,
)
from .expr import Expr
from .vectors import Signature, signature

EQUALITY_POINTS = 20
EQUALITY_TOL = 1e-10
ISOTROPY_POINTS = 200
ISOTROPY_TOL = 1e-10


def sample_points(n: int, punctures: Sequence[complex] = (), seed: int = 0,
                  rmin: float = 0.3, rmax: float = 1.3, clearance: float = 0.05) -> np.ndarray:
    """Deterministic pseudo-random points in an annulus, away from punctures."""
    rng = np.random.default_rng(seed)
    pts: list[complex] = []
    while len(pts) < n:
        r = rng.uniform(rmin, rmax)
        t = rng.uniform(-np.pi, np.pi)
        p = r * cmath.exp(1j * t)
        if all(abs(p - q) > clearance for q in punctures):
            pts.append(p)
    return np.array(pts)


def _close(a, b, tol):
    a, b = np.asarray(a), np.asarray(b)
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all(np.abs(a - b) <= tol * scale))


def exprs_equal(e1: Expr, e2: Expr, params: Mapping[str, float] | None = None,
                punctures: Sequence[complex] = (), tol: float = EQUALITY_TOL,
                n: int = EQUALITY_POINTS) -> bool:
    """Decide function equality by evaluation at ``n`` sample points."""
    zs = sample_points(n, punctures)
    return _close(ex.evaluate(e1, zs, params), ex.evaluate(e2, zs, params), tol)


@dataclass(frozen=True)
class WeierstrassData:
    g: Expr
    f: Expr
    sig: Signature = Signature.EUCLIDEAN
    punctures: tuple = ()
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sig", signature(self.sig))
        object.__setattr__(self, "punctures", tuple(complex(p) for p in self.punctures))
        object.__setattr__(self, "g", ex.as_expr(self.g))
        object.__setattr__(self, "f", ex.as_expr(self.f))
        if self.f.is_const(0):
            raise ValueError("f must not vanish identically")

    def gauss(self, z):
        return ex.evaluate(self.g, z, self.params)

    def density(self, z):
        return ex.evaluate(self.f, z, self.params)


@dataclass(frozen=True)
class IsotropicCurve:
    components: tuple
    sig: Signature = Signature.EUCLIDEAN
    punctures: tuple = ()
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        comps = tuple(ex.as_expr(c) for c in self.components)
        if len(comps) != 3:
            raise ValueError("an isotropic curve has exactly three components")
        if all(c.is_const(0) for c in comps):
            raise ValueError("isotropic curve must not vanish identically")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "sig", signature(self.sig))
        object.__setattr__(self, "punctures", tuple(complex(p) for p in self.punctures))

    def __call__(self, z) -> np.ndarray:
        """Values at ``z``; shape (3,) + shape(z)."""
        zz = np.asarray(z, dtype=complex)
        return np.array([np.broadcast_to(ex.evaluate(c, zz, self.params), zz.shape)
                         for c in self.components])

    def isotropy_residual(self, n: int = ISOTROPY_POINTS, seed: int = 1) -> float:
        """max |<phi, phi>_sig| / max(1, |phi|^2) over sample points."""
        phi = self(sample_points(n, self.punctures, seed=seed))
        q = phi[0] ** 2 + phi[1] ** 2 + int(self.sig) * phi[2] ** 2
        norm2 = np.sum(np.abs(phi) ** 2, axis=0)
        return float(np.max(np.abs(q) / np.maximum(1.0, norm2)))

    def check_isotropic(self, tol: float = ISOTROPY_TOL) -> "IsotropicCurve":
        res = self.isotropy_residual()
        if not res <= tol:
            raise IsotropyBroken(f"isotropy residual {res:.3e} exceeds {tol:.1e}")
        return self

    def with_params(self, **params) -> "IsotropicCurve":
        return replace(self, params={**self.params, **params})


def curves_equal(c1: IsotropicCurve, c2: IsotropicCurve, tol: float = EQUALITY_TOL) -> bool:
    """Evaluation equality at sample points; signatures must agree."""
    if c1.sig != c2.sig:
        return False
    zs = sample_points(EQUALITY_POINTS, c1.punctures + c2.punctures)
    return _close(c1(zs), c2(zs), tol)


def data_equal(w1: WeierstrassData, w2: WeierstrassData, tol: float = EQUALITY_TOL) -> bool:
    if w1.sig != w2.sig:
        return False
    zs = sample_points(EQUALITY_POINTS, w1.punctures + w2.punctures)
    return (_close(w1.gauss(zs), w2.gauss(zs), tol)
            and _close(w1.density(zs), w2.density(zs), tol))


# conversions ------------------------------------------------------------

def isotropic_from_weierstrass(w: WeierstrassData) -> IsotropicCurve:
    eps = int(w.sig)
    g2 = ex.power(w.g, 2)
    phi1 = ex.mul(0.5, ex.mul(ex.sub(1, ex.mul(eps, g2)), w.f))
    phi2 = ex.mul(0.5j, ex.mul(ex.add(1, ex.mul(eps, g2)), w.f))
    phi3 = ex.mul(w.g, w.f)
    return IsotropicCurve((phi1, phi2, phi3), w.sig, w.punctures, w.params)


def weierstrass_from_isotropic(c: IsotropicCurve) -> WeierstrassData:
    p1, p2, p3 = c.components
    f = ex.sub(p1, ex.mul(1j, p2))
    zs = sample_points(EQUALITY_POINTS, c.punctures)
    if f.is_const(0) or np.all(np.abs(ex.evaluate(f, zs, c.params)) < 1e-14):
        raise DegenerateGaussMap("phi1 - i phi2 vanishes identically")
    return WeierstrassData(ex.div(p3, f), f, c.sig, c.punctures, c.params)


# duality and associates --------------------------------------------------

def dual(w: WeierstrassData) -> WeierstrassData:
    """Minimal -> maximal is (i g, -i f); maximal -> minimal is (-i g, i f)."""
    k = 1j if w.sig == Signature.EUCLIDEAN else -1j
    return WeierstrassData(ex.mul(k, w.g), ex.mul(-k, w.f),
                           Signature(-int(w.sig)), w.punctures, w.params)


def dual_curve(c: IsotropicCurve) -> IsotropicCurve:
    """phi -> (-i phi1, -i phi2, phi3) from E^3; psi -> (i psi1, i psi2, psi3) from L^3."""
    k = -1j if c.sig == Signature.EUCLIDEAN else 1j
    p1, p2, p3 = c.components
    return IsotropicCurve((ex.mul(k, p1), ex.mul(k, p2), p3),
                          Signature(-int(c.sig)), c.punctures, c.params)


def _as_curve(x) -> IsotropicCurve:
    return isotropic_from_weierstrass(x) if isinstance(x, WeierstrassData) else x


def associate(w, theta: float) -> IsotropicCurve:
    """Curve e^{i theta} phi of the associate surface (adjoint at theta = pi/2)."""
    c = _as_curve(w)
    k = cmath.exp(1j * theta)
    if theta == np.pi / 2:
        k = 1j
    return IsotropicCurve(tuple(ex.mul(k, p) for p in c.components), c.sig, c.punctures, c.params)


def scale(c: IsotropicCurve, factor: complex) -> IsotropicCurve:
    return IsotropicCurve(tuple(ex.mul(factor, p) for p in c.components), c.sig, c.punctures, c.params)


def apply_linear(A, c, sig=None, tol: float = 1e-9) -> IsotropicCurve:
    """Componentwise action of a complex 3x3 matrix.

    ``sig`` retags the signature of the result (default: unchanged).  The
    result is checked for isotropy and :class:`IsotropyBroken` is raised when
    ``A`` does not map the null cone of the input to that of the output.
    """
    c = _as_curve(c)
    A = np.asarray(A, dtype=complex)
    if A.shape != (3, 3):
        raise ValueError("A must be 3x3")
    comps = []
    for row in A:
        acc = ex.ZERO
        for a, p in zip(row, c.components):
            if a != 0:
                acc = ex.add(acc, ex.mul(complex(a), p))
        comps.append(acc)
    if all(p.is_const(0) for p in comps):
        raise IsotropyBroken("A annihilates the curve")
    out = IsotropicCurve(tuple(comps), c.sig if sig is None else sig, c.punctures, c.params)
    return out.check_isotropic(tol)


# Moebius / Goursat --------------------------------------------------------

@dataclass(frozen=True)
class MoebiusMap:
    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, w):
        return (self.a * w + self.b) / (self.c * w + self.d)

    def derivative(self, w):
        return self.det / (self.c * w + self.d) ** 2

    def apply(self, e: Expr) -> Expr:
        num = ex.add(ex.mul(complex(self.a), e), complex(self.b))
        den = ex.add(ex.mul(complex(self.c), e), complex(self.d))
        return ex.div(num, den)


IDENTITY_MOEBIUS = MoebiusMap(1, 0, 0, 1)


def goursat(w: WeierstrassData, T: MoebiusMap) -> WeierstrassData:
    """(g, f) -> (T(g), f / T'(g)); preserves the Hopf differential f g'."""
    if abs(T.det) < 1e-14:
        raise DegenerateMoebius(f"ad - bc = {T.det}")
    T = MoebiusMap(*(complex(x) for x in (T.a, T.b, T.c, T.d)))
    den = ex.add(ex.mul(T.c, w.g), T.d)
    f_new = ex.mul(ex.div(w.f, T.det), ex.power(den, 2))
    return WeierstrassData(T.apply(w.g), f_new, w.sig, w.punctures, w.params)


def hopf_density(w: WeierstrassData) -> Expr:
    return ex.mul(w.f, ex.differentiate(w.g))


# reparametrization ------------------------------------------------------

def _check_change(h: Expr, params, punctures):
    dh = ex.differentiate(h)
    zs = sample_points(EQUALITY_POINTS, punctures)
    try:
        vals = ex.evaluate(dh, zs, params)
    except DivisionByZero as err:
        raise SingularChange(str(err)) from None
    if np.any(np.abs(vals) < 1e-12):
        raise SingularChange("h' vanishes at a sample point")
    return dh


def reparametrize(w: WeierstrassData, h: Expr, punctures: Sequence[complex] | None = None) -> WeierstrassData:
    """Pull back by z -> h(z): (g o h, (f o h) h').

    ``punctures`` are those of the new chart (default: none declared).
    """
    punctures = tuple(punctures or ())
    dh = _check_change(h, w.params, punctures)
    return WeierstrassData(ex.compose(w.g, h), ex.mul(ex.compose(w.f, h), dh),
                           w.sig, punctures, w.params)


def reparametrize_curve(c: IsotropicCurve, h: Expr,
                        punctures: Sequence[complex] | None = None) -> IsotropicCurve:
    punctures = tuple(punctures or ())
    dh = _check_change(h, c.params, punctures)
    return IsotropicCurve(tuple(ex.mul(ex.compose(p, h), dh) for p in c.components),
                          c.sig, punctures, c.params)


# metric -------------------------------------------------------------------

def conformal_factor(w, z: complex, tol: float = 1e-14) -> float:
    """lambda with ds = lambda |dz|, from lambda^2 = (|phi1|^2 + |phi2|^2 + sig |phi3|^2) / 2.

    For sig = +1 this is |f| (1 + |g|^2) / 2, for sig = -1 it is |f| |1 - |g|^2| / 2.
    """
    c = _as_curve(w)
    phi = c(z)
    lam2 = 0.5 * (abs(phi[0]) ** 2 + abs(phi[1]) ** 2 + int(c.sig) * abs(phi[2]) ** 2)
    if not lam2 > tol:
        raise DegenerateMetric(f"induced metric degenerates at z={z}")
    return float(np.sqrt(lam2))
