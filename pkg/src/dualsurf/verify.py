"""Numerical certificates for the duality statements.

A certificate passes exactly when its residual does not exceed its
tolerance.  Lower-bound claims ("this period is nonzero") are stored with
negated residual and tolerance so that the same rule applies.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from . import catalog
from . import expr as ex
from .errors import GridMismatch, ParameterOutOfRange
from .isometry import act_on_curve, act_on_patch, make, translation
from .quadrature import (
    SurfacePatch,
    circle,
    closed_form_patch,
    grid,
    mean_curvature_fd,
    real_period,
    sample_patch,
    total_curvature,
)
from .weierstrass import (
    IsotropicCurve,
    MoebiusMap,
    WeierstrassData,
    associate,
    dual,
    dual_curve,
    goursat,
    isotropic_from_weierstrass,
    reparametrize,
    sample_points,
)

PATCH_TOL = 1e-8
DATA_TOL = 1e-9
ISOTROPY_TOL = 1e-10
H_TOL = 1e-5
FD_STEP = 1e-2
PERIOD_TOL = 1e-8
PERIOD_FLOOR = 1e-3
TOTAL_CURVATURE_RTOL = 0.05
CHECK_GRID = 49


@dataclass(frozen=True)
class Certificate:
    claim: str
    status: str
    residual: float
    tolerance: float
    inputs: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def of(cls, claim: str, residual: float, tolerance: float, **inputs) -> "Certificate":
        residual = float(residual)
        status = "pass" if residual <= tolerance else "fail"
        return cls(claim, status, residual, float(tolerance), inputs)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"claim": self.claim, "status": self.status, "residual": self.residual,
                "tolerance": self.tolerance, "inputs": _jsonable(self.inputs)}


def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def report_json(certs: Iterable[Certificate]) -> str:
    certs = list(certs)
    doc = {"passed": all(c.passed for c in certs),
           "count": len(certs),
           "certificates": [c.to_dict() for c in certs]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# patch comparison -----------------------------------------------------------

def _center(patch: SurfacePatch):
    nu, nv = patch.shape
    return nu // 2, nv // 2


def translation_residual(A: SurfacePatch, B: SurfacePatch) -> float:
    if A.u.shape != B.u.shape or A.v.shape != B.v.shape \
            or not (np.array_equal(A.u, B.u) and np.array_equal(A.v, B.v)):
        raise GridMismatch("patches are sampled on different grids")
    i, j = _center(A)
    dA = A.points - A.points[i, j]
    dB = B.points - B.points[i, j]
    return float(np.max(np.linalg.norm(dA - dB, axis=-1)))


def patches_equal_up_to_translation(A: SurfacePatch, B: SurfacePatch, tol: float = PATCH_TOL,
                                    claim: str = "patches_equal_up_to_translation",
                                    **inputs) -> Certificate:
    """Compare A - A(ref) with B - B(ref), ref being the central grid node."""
    return Certificate.of(claim, translation_residual(A, B), tol, **inputs)


def pointwise_residual(A: SurfacePatch, B: SurfacePatch) -> float:
    if not (np.array_equal(A.u, B.u) and np.array_equal(A.v, B.v)):
        raise GridMismatch("patches are sampled on different grids")
    return float(np.max(np.linalg.norm(A.points - B.points, axis=-1)))


def data_residual(w1: WeierstrassData, w2: WeierstrassData, n: int = 20) -> float:
    """Max relative mismatch of g and f at n sample points."""
    zs = sample_points(n, tuple(w1.punctures) + tuple(w2.punctures))
    out = 0.0
    for a, b in ((w1.gauss(zs), w2.gauss(zs)), (w1.density(zs), w2.density(zs))):
        scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
        out = max(out, float(np.max(np.abs(a - b) / scale)))
    return out


def _patch(curve: IsotropicCurve, domain, z0=0.0, X0=(0.0, 0.0, 0.0), n: int = CHECK_GRID):
    u, v = grid(*domain, n, n)
    return sample_patch(curve, z0, np.asarray(X0, dtype=float), u, v)


def _fd_patch(curve: IsotropicCurve, domain, z0=0.0, h: float = FD_STEP):
    umin, umax, vmin, vmax = domain
    nu = int(round((umax - umin) / h)) + 1
    nv = int(round((vmax - vmin) / h)) + 1
    u, v = grid(umin, umax, vmin, vmax, nu, nv)
    return sample_patch(curve, z0, np.zeros(3), u, v, spot_check=False)


# duality commutes with similarities and associates --------------

MINIMAL_ENTRIES = ("euclidean_catenoid", "helicoid_E3", "enneper", "rotated_catenoid_Ct",
                   "bonnet_minimal", "bonnet_minimal_Yt", "goursat_bonnet_Zt",
                   "goursat_bonnet_Wt", "enneper_family_Xt")

PR1_THETA = math.pi / 3
PR1_DILATION = 2.0
PR1_SHIFT = (1.0, -2.0, 0.5)


def _motion_transforms():
    rot = make("elliptic", PR1_THETA)
    dil = make("dilation", PR1_DILATION)
    shift = translation(PR1_SHIFT)

    def motion(iso):
        def before(c):
            return act_on_curve(iso, c)

        def after(patch):
            return act_on_patch(iso, patch)

        return before, after

    def assoc_before(c):
        return associate(c, PR1_THETA)

    return {
        "identity": (lambda c: c, lambda p: p, None),
        "translation": (*motion(shift), None),
        "rotation": (*motion(rot), None),
        "dilation": (*motion(dil), None),
        "associate": (assoc_before, None, assoc_before),
    }


def check_prop_pr1(names: Iterable[str] = MINIMAL_ENTRIES, tol: float = PATCH_TOL,
                   n: int = 25) -> list[Certificate]:
    """(T M)^flat equals T (M^flat) up to translation for each transformation T."""
    certs = []
    for name in names:
        entry = catalog.build(name)
        c = entry.curve
        u, v = grid(*entry.domain, n, n)
        for label, (before, after, on_dual) in _motion_transforms().items():
            lhs = sample_patch(dual_curve(before(c)), entry.z0, np.zeros(3), u, v)
            d = dual_curve(c)
            if on_dual is not None:
                rhs = sample_patch(on_dual(d), entry.z0, np.zeros(3), u, v)
            else:
                rhs = after(sample_patch(d, entry.z0, np.zeros(3), u, v))
            certs.append(patches_equal_up_to_translation(
                lhs, rhs, tol, claim=f"motion_commutes.{name}.{label}", entry=name, transform=label))
    return certs


# Enneper certificate ------------------------------------------------------

def enneper_certificate(claim: str, w: WeierstrassData, fd_domain, *, R: float = 10.0,
                        loops=(1.0, 5.0)) -> list[Certificate]:
    """Isotropy, vanishing mean curvature, no real periods, total curvature -4 pi."""
    curve = isotropic_from_weierstrass(w)
    certs = [Certificate.of(f"{claim}.isotropy", curve.isotropy_residual(), ISOTROPY_TOL)]
    patch = _fd_patch(curve, fd_domain)
    certs.append(Certificate.of(f"{claim}.mean_curvature", mean_curvature_fd(patch), H_TOL,
                                domain=list(fd_domain), step=FD_STEP))
    worst = max(float(np.max(np.abs(real_period(curve, circle(0, r))))) for r in loops)
    certs.append(Certificate.of(f"{claim}.periods", worst, PERIOD_TOL, radii=list(loops)))
    K = total_curvature(w, R)
    certs.append(Certificate.of(f"{claim}.total_curvature", abs(K + 4 * math.pi) / (4 * math.pi),
                                TOTAL_CURVATURE_RTOL, R=R, value=K))
    return certs


# duals of the rotational catenoids ----------------------------------------

PARABOLIC_FD_DOMAIN = (-0.6, 0.6, -1.8, -0.6)


def _hyperbolic_dual_closed(u, v):
    return u + 0 * v, -np.cosh(u) * np.sin(v), np.cos(v) * np.cosh(u) - 1


def _parabolic_dual_closed(u, v):
    return ((6 * (u - u * v) - u ** 3 + 3 * u * v * v) / 6,
            (v * v - u * u - 2 * v) / 2,
            (3 * (u * u - v * v - u * u * v) + v ** 3) / 6)


def check_prop_t1(tol: float = PATCH_TOL) -> list[Certificate]:
    certs = []

    # timelike axis: dual of (z, 1/z^2) pulled back by z = i w is (w, 1/w^2)
    ell = catalog.build("elliptic_catenoid").normal_form
    euc = catalog.build("euclidean_catenoid")
    moved = reparametrize(dual(ell), ex.mul(1j, ex.Z), punctures=(0,))
    lhs = _patch(isotropic_from_weierstrass(moved), euc.domain, euc.z0)
    rhs = _patch(euc.curve, euc.domain, euc.z0)
    certs.append(patches_equal_up_to_translation(
        lhs, rhs, tol, claim="dual_catenoid.elliptic", reparametrization="z = i w",
        motion="identity", axis=[0, 0, 1]))

    # spacelike axis: integrated dual against the explicit Euclidean catenoid
    hyp = catalog.build("hyperbolic_catenoid", a=0.0)
    dom = hyp.domain
    d = isotropic_from_weierstrass(dual(hyp.normal_form))
    lhs = _patch(d, dom)
    u, v = grid(*dom, CHECK_GRID, CHECK_GRID)
    rhs = closed_form_patch(_hyperbolic_dual_closed, u, v, 1)
    certs.append(Certificate.of("dual_catenoid.hyperbolic", pointwise_residual(lhs, rhs), tol,
                                reparametrization="identity", motion="identity",
                                axis=[1, 0, 0]))

    # lightlike axis: the dual is an Enneper surface
    par = catalog.build("parabolic_catenoid", a=0.0)
    pd = dual(par.normal_form)
    lhs = _patch(isotropic_from_weierstrass(pd), par.domain)
    u, v = grid(*par.domain, CHECK_GRID, CHECK_GRID)
    rhs = closed_form_patch(_parabolic_dual_closed, u, v, 1)
    certs.append(Certificate.of("dual_catenoid.parabolic.closed_form", pointwise_residual(lhs, rhs), tol))
    certs += enneper_certificate("dual_catenoid.parabolic", pd, PARABOLIC_FD_DOMAIN)
    return certs


# Bonnet maximal family ----------------------------------------------------

BONNET_TS = (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2)


def check_bonnet_family(ts: Iterable[float] = BONNET_TS, tol: float = PATCH_TOL) -> list[Certificate]:
    certs = []
    for t in ts:
        ct = catalog.build("rotated_catenoid_Ct", t=t)
        bm = catalog.build("bonnet_maximal", t=t)
        u, v = grid(*bm.domain, CHECK_GRID, CHECK_GRID)
        lhs = sample_patch(dual_curve(ct.curve), 0.0, np.zeros(3), u, v)
        rhs = bm.closed_patch(u=u, v=v)
        certs.append(Certificate.of(f"bonnet_family.closed_form[t={t!r}]",
                                    pointwise_residual(lhs, rhs), tol, t=t))
        p2 = float(real_period(isotropic_from_weierstrass(bm.periodic), bm.loop)[1])
        endpoint = math.isclose(t, 0.0, abs_tol=1e-15) or math.isclose(t, math.pi / 2)
        if endpoint:
            certs.append(Certificate.of(f"bonnet_family.period_vanishes[t={t!r}]", abs(p2),
                                        PERIOD_TOL, t=t, period_y=p2))
        else:
            certs.append(Certificate.of(f"bonnet_family.period_nonzero[t={t!r}]", -abs(p2),
                                        -PERIOD_FLOOR, t=t, period_y=p2))
    return certs


# Goursat transformations --------------------------------------------------

def zt_moebius(t: float, mu: float) -> MoebiusMap:
    return MoebiusMap(2 - 1j * t, mu - 0.5j * (mu - 2) * t, t, 0.5 * (mu - 2) * t + 2j)


def wt_moebius(t: float, mu: float) -> MoebiusMap:
    return MoebiusMap(1 + t + 1j, mu + 1j * (t * t + mu) / (t + 1), 1 + 1j + 1j * t,
                      (2 + mu - t * t) / (1 + t) + (2 + mu) * 1j)


def check_goursat_thm51(t: float, mu: float, tol: float = DATA_TOL) -> Certificate:
    if not mu < 0:
        raise ParameterOutOfRange(f"mu must be negative, got {mu}")
    lam = -mu / 2
    src = catalog.build("bonnet_minimal", lam=lam).data
    target = catalog.build("goursat_bonnet_Zt", t=t).data
    out = goursat(src, zt_moebius(t, mu))
    return Certificate.of(f"goursat_to_Zt[t={t!r},mu={mu!r}]", data_residual(out, target), tol,
                          t=t, mu=mu, lam=lam)


def check_goursat_thm52(t: float, mu: float, tol: float = DATA_TOL) -> Certificate:
    if t == -1:
        raise ParameterOutOfRange("t = -1 is excluded")
    lam = -(1 + mu) / (1 + t)
    if not lam > 0:
        raise ParameterOutOfRange(f"lambda = -(1 + mu)/(1 + t) = {lam} must be positive")
    src = catalog.build("bonnet_minimal", lam=lam).data
    target = catalog.build("goursat_bonnet_Wt", t=t).data
    out = goursat(src, wt_moebius(t, mu))
    return Certificate.of(f"goursat_to_Wt[t={t!r},mu={mu!r}]", data_residual(out, target), tol,
                          t=t, mu=mu, lam=lam)


ZT_CASES = ((1.0, -2.0), (0.5, -1.0))
WT_CASES = ((1.0, -3.0), (0.5, -2.0))


def check_goursat(tol: float = DATA_TOL) -> list[Certificate]:
    return ([check_goursat_thm51(t, mu, tol) for t, mu in ZT_CASES]
            + [check_goursat_thm52(t, mu, tol) for t, mu in WT_CASES])


# boosted Enneper family ---------------------------------------------------

XT_FD_DOMAINS = {0.0: (-0.6, 0.6, -1.8, -0.6), 1.0: (0.0, 1.2, -0.9, 0.3), 2.0: (-0.3, 0.9, -0.8, 0.4)}


def check_thm53(ts: Iterable[float] = (0.0, 1.0, 2.0)) -> list[Certificate]:
    certs = []
    for t in ts:
        entry = catalog.build("enneper_family_Xt", t=t)
        dom = XT_FD_DOMAINS.get(float(t), entry.domain)
        certs += enneper_certificate(f"enneper_family[t={t!r}]", entry.data, dom)
    return certs


# suites -------------------------------------------------------------------

SUITES: dict[str, Callable[..., list[Certificate]]] = {
    "motions": lambda tol: check_prop_pr1(tol=tol or PATCH_TOL),
    "catenoids": lambda tol: check_prop_t1(tol=tol or PATCH_TOL),
    "bonnet": lambda tol: check_bonnet_family(tol=tol or PATCH_TOL),
    "goursat": lambda tol: check_goursat(tol=tol or DATA_TOL),
    "enneper": lambda tol: check_thm53(),
}


def run_suite(selector: str = "all", tol: float | None = None) -> list[Certificate]:
    """Run one suite (or all).  ``tol`` overrides the equality tolerance of
    patch and data comparisons; curvature and period thresholds are fixed."""
    if selector == "all":
        return [c for name in SUITES for c in SUITES[name](tol)]
    if selector not in SUITES:
        raise KeyError(f"unknown suite {selector!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[selector](tol)
