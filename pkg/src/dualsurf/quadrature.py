"""Path integration of isotropic curves, surface sampling, periods and curvature.

Integration uses adaptive composite Gauss-Legendre (16 nodes, bisection up to
depth 20).  All pieces of all paths in one call are processed as a single
vectorized batch, so sampling a 49x49 patch costs a handful of expression
evaluations on large arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import expr as ex
from .errors import (
    DegenerateFirstForm,
    DivisionByZero,
    NotIsolatedPole,
    PathThroughPuncture,
    ToleranceNotMet,
)
from .vectors import METRICS, Signature, cross, signature
from .weierstrass import IsotropicCurve, WeierstrassData

GL_ORDER = 16
MAX_DEPTH = 20
ABS_TOL = 1e-12
REPORT_RTOL = 1e-10
CLEARANCE = 1e-3
DEFLECT_RADIUS = 1e-2
PERIOD_TOL = 1e-8
BATCH = 8192

_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)


# paths --------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    @property
    def start(self):
        return self.a

    @property
    def end(self):
        return self.b

    def distance(self, p: complex) -> float:
        d = self.b - self.a
        if d == 0:
            return abs(p - self.a)
        s = min(1.0, max(0.0, ((p - self.a) * d.conjugate()).real / abs(d) ** 2))
        return abs(p - (self.a + s * d))


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    sweep: float

    @property
    def start(self):
        return self.center + self.radius * np.exp(1j * self.theta0)

    @property
    def end(self):
        return self.center + self.radius * np.exp(1j * (self.theta0 + self.sweep))

    def distance(self, p: complex) -> float:
        ang = self.theta0 + self.sweep * np.linspace(0.0, 1.0, 257)
        return float(np.min(np.abs(self.center + self.radius * np.exp(1j * ang) - p)))


@dataclass(frozen=True)
class Path:
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for p, q in zip(self.pieces, self.pieces[1:]):
            if abs(p.end - q.start) > 1e-12 * (1 + abs(p.end)):
                raise ValueError("consecutive path pieces must share endpoints")

    @property
    def start(self) -> complex:
        return complex(self.pieces[0].start)

    @property
    def end(self) -> complex:
        return complex(self.pieces[-1].end)

    @property
    def closed(self) -> bool:
        return abs(self.end - self.start) <= 1e-12 * (1 + abs(self.start))

    def clearance(self, punctures: Sequence[complex]) -> float:
        if not punctures:
            return math.inf
        return min(p.distance(q) for p in self.pieces for q in punctures)


def segment(a: complex, b: complex) -> Path:
    return Path((Segment(complex(a), complex(b)),))


def circle(center: complex = 0.0, radius: float = 1.0) -> Path:
    """Positively oriented full circle, starting at center + radius."""
    return Path((Arc(complex(center), float(radius), 0.0, 2 * math.pi),))


def canonical_path(z0: complex, z1: complex, punctures: Sequence[complex] = (),
                   clearance: float = CLEARANCE, radius: float = DEFLECT_RADIUS) -> Path:
    """Straight segment, detouring counterclockwise around punctures it grazes.

    A puncture closer than ``clearance`` to the segment is bypassed along an
    arc of the circle of radius ``radius`` about it.
    """
    z0, z1 = complex(z0), complex(z1)
    grazed = [complex(q) for q in punctures if Segment(z0, z1).distance(q) < clearance]
    for q in grazed:
        if abs(q - z0) < radius or abs(q - z1) < radius:
            raise PathThroughPuncture(f"endpoint within {radius} of puncture {q}")
    d = z1 - z0
    if d == 0:
        return Path((Segment(z0, z1),))
    L = abs(d)
    u = d / L
    hits = sorted((((q - z0) * u.conjugate()).real, q) for q in grazed)
    pieces = []
    cur = z0
    for s_proj, q in hits:
        off = ((q - z0) * u.conjugate()).imag
        half = math.sqrt(radius ** 2 - off ** 2)
        enter = z0 + (s_proj - half) * u
        leave = z0 + (s_proj + half) * u
        pieces.append(Segment(cur, enter))
        th_a = math.atan2((enter - q).imag, (enter - q).real)
        th_b = math.atan2((leave - q).imag, (leave - q).real)
        sweep = (th_b - th_a) % (2 * math.pi)
        arc = Arc(q, radius, th_a, sweep)
        pieces.append(arc)
        cur = complex(arc.end)
    pieces.append(Segment(cur, z1))
    path = Path(tuple(pieces))
    if path.clearance(punctures) < clearance:
        raise PathThroughPuncture("no admissible detour (punctures too close together)")
    return path


# integration engine -------------------------------------------------------

def _piece_table(pieces):
    n = len(pieces)
    kind = np.zeros(n, dtype=bool)  # True for arcs
    p0 = np.zeros(n, dtype=complex)
    p1 = np.zeros(n, dtype=complex)
    rad = np.zeros(n)
    th0 = np.zeros(n)
    sw = np.zeros(n)
    for k, p in enumerate(pieces):
        if isinstance(p, Arc):
            kind[k] = True
            p0[k] = p.center
            rad[k], th0[k], sw[k] = p.radius, p.theta0, p.sweep
        else:
            p0[k], p1[k] = p.a, p.b
    return kind, p0, p1, rad, th0, sw


def _gauss(curve: IsotropicCurve, table, idx, lo, hi):
    kind, p0, p1, rad, th0, sw = table
    half = 0.5 * (hi - lo)
    s = (0.5 * (hi + lo))[:, None] + half[:, None] * _GL_X[None, :]
    arc = kind[idx][:, None]
    zseg = p0[idx][:, None] + s * (p1 - p0)[idx][:, None]
    dseg = np.broadcast_to((p1 - p0)[idx][:, None], s.shape)
    e = np.exp(1j * (th0[idx][:, None] + s * sw[idx][:, None]))
    zarc = p0[idx][:, None] + rad[idx][:, None] * e
    darc = 1j * (rad * sw)[idx][:, None] * e
    z = np.where(arc, zarc, zseg)
    dz = np.where(arc, darc, dseg)
    vals = curve(z) * dz
    return np.einsum("cmk,k->cm", vals, _GL_W) * half


def _integrate_pieces(curve: IsotropicCurve, pieces, abs_tol=ABS_TOL, max_depth=MAX_DEPTH):
    """Per-piece integrals (3, n) and error estimates (n,)."""
    n = len(pieces)
    table = _piece_table(pieces)
    totals = np.zeros((3, n), dtype=complex)
    errs = np.zeros(n)
    idx = np.arange(n)
    lo = np.zeros(n)
    hi = np.ones(n)
    depth = 0
    coarse = _gauss(curve, table, idx, lo, hi)
    while idx.size:
        mid = 0.5 * (lo + hi)
        left = _gauss(curve, table, idx, lo, mid)
        right = _gauss(curve, table, idx, mid, hi)
        fine = left + right
        err = np.max(np.abs(fine - coarse), axis=0)
        scale = np.max(np.abs(fine), axis=0)
        ok = (err <= np.maximum(abs_tol * (hi - lo), 1e-15 * scale)) | (depth >= max_depth)
        if not np.all(np.isfinite(fine)):
            raise ToleranceNotMet("non-finite integrand on path")
        np.add.at(totals, (slice(None), idx[ok]), fine[:, ok])
        np.add.at(errs, idx[ok], err[ok])
        bad = ~ok
        idx = np.concatenate([idx[bad], idx[bad]])
        lo, hi = np.concatenate([lo[bad], mid[bad]]), np.concatenate([mid[bad], hi[bad]])
        coarse = np.concatenate([left[:, bad], right[:, bad]], axis=1)
        depth += 1
    return totals, errs


def integrate_paths(curve: IsotropicCurve, paths: Sequence[Path], check: bool = True) -> np.ndarray:
    """Complex integrals of ``curve`` along each path; shape (len(paths), 3)."""
    pieces, owner = [], []
    for k, path in enumerate(paths):
        if check and curve.punctures and path.clearance(curve.punctures) < CLEARANCE:
            raise PathThroughPuncture(f"path {k} passes within {CLEARANCE} of a puncture")
        pieces.extend(path.pieces)
        owner.extend([k] * len(path.pieces))
    if not pieces:
        return np.zeros((0, 3), dtype=complex)
    vals = np.zeros((3, len(pieces)), dtype=complex)
    errs = np.zeros(len(pieces))
    try:
        # pieces are integrated independently, so batching only bounds memory
        for start in range(0, len(pieces), BATCH):
            sl = slice(start, start + BATCH)
            vals[:, sl], errs[sl] = _integrate_pieces(curve, pieces[sl])
    except DivisionByZero as err:
        raise PathThroughPuncture(f"undeclared pole on path: {err}") from None
    owner = np.asarray(owner)
    out = np.zeros((len(paths), 3), dtype=complex)
    err = np.zeros(len(paths))
    np.add.at(out, owner, vals.T)
    np.add.at(err, owner, errs)
    bound = REPORT_RTOL * (1 + np.max(np.abs(out), axis=1))
    if np.any(err > bound):
        k = int(np.argmax(err - bound))
        raise ToleranceNotMet(f"error estimate {err[k]:.2e} on path {k} exceeds {bound[k]:.2e}")
    return out


def integrate(curve: IsotropicCurve, path: Path) -> np.ndarray:
    """Complex line integral of the three components along ``path``."""
    return integrate_paths(curve, [path])[0]


# surface sampling ---------------------------------------------------------

@dataclass(frozen=True)
class SurfacePatch:
    u: np.ndarray
    v: np.ndarray
    points: np.ndarray  # (nu, nv, 3)
    sig: Signature
    z0: complex
    X0: np.ndarray
    provenance: str = "integrated"

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        pts = np.asarray(self.points, dtype=float)
        if np.any(np.diff(u) <= 0) or np.any(np.diff(v) <= 0):
            raise ValueError("grid must be strictly increasing in u and v")
        if pts.shape != (u.size, v.size, 3):
            raise ValueError(f"points shape {pts.shape} does not match grid {(u.size, v.size)}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("patch contains non-finite points")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "sig", signature(self.sig))
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "X0", np.asarray(self.X0, dtype=float))

    @property
    def shape(self):
        return self.points.shape[:2]

    def nodes(self) -> np.ndarray:
        U, V = np.meshgrid(self.u, self.v, indexing="ij")
        return U + 1j * V


def grid(umin: float, umax: float, vmin: float, vmax: float, nu: int = 49, nv: int = 49):
    return np.linspace(umin, umax, nu), np.linspace(vmin, vmax, nv)


def sample_nodes(curve: IsotropicCurve, z0: complex, X0, nodes) -> np.ndarray:
    """X at arbitrary nodes via canonical paths from z0; shape nodes.shape + (3,)."""
    nodes = np.asarray(nodes, dtype=complex)
    flat = nodes.ravel()
    paths = [canonical_path(z0, zk, curve.punctures) for zk in flat]
    vals = integrate_paths(curve, paths, check=False)
    X = np.asarray(X0, dtype=float) + vals.real
    return X.reshape(nodes.shape + (3,))


def _spot_check(curve, z0, X0, nodes, X, count=5, tol=1e-9):
    rng = np.random.default_rng(0)
    flat = nodes.ravel()
    Xf = X.reshape(-1, 3)
    picks = rng.choice(flat.size, size=min(count, flat.size), replace=False)
    for k in sorted(int(p) for p in picks):
        zk = flat[k]
        corner = complex(zk.real, z0.imag)
        if _puncture_in_triangle(z0, corner, zk, curve.punctures):
            continue
        try:
            p = Path(canonical_path(z0, corner, curve.punctures).pieces
                     + canonical_path(corner, zk, curve.punctures).pieces)
        except PathThroughPuncture:
            continue
        alt = np.asarray(X0) + integrate(curve, p).real
        if np.max(np.abs(alt - Xf[k])) > tol * (1 + np.max(np.abs(alt))):
            raise ToleranceNotMet(f"path dependence at node {zk}: {np.max(np.abs(alt - Xf[k])):.2e}")


def _puncture_in_triangle(a, b, c, punctures, margin=DEFLECT_RADIUS):
    for q in punctures:
        if min(Segment(a, b).distance(q), Segment(b, c).distance(q), Segment(c, a).distance(q)) < margin:
            return True
        d1 = ((b - a) * (q - a).conjugate()).imag
        d2 = ((c - b) * (q - b).conjugate()).imag
        d3 = ((a - c) * (q - c).conjugate()).imag
        if (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0):
            return True
    return False


def sample_patch(curve: IsotropicCurve, z0: complex, X0, u, v, spot_check: bool = True) -> SurfacePatch:
    """Integrated patch X(u + iv) = X0 + Re int_{z0}^{u+iv} curve."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    nodes = u[:, None] + 1j * v[None, :]
    X = sample_nodes(curve, z0, X0, nodes)
    if spot_check:
        _spot_check(curve, complex(z0), X0, nodes, X)
    return SurfacePatch(u, v, X, curve.sig, z0, X0, "integrated")


def closed_form_patch(fn: Callable, u, v, sig, z0: complex = 0.0) -> SurfacePatch:
    """Patch of a closed-form parametrization ``fn(u, v) -> (x, y, z)``."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    U, V = np.meshgrid(u, v, indexing="ij")
    pts = np.stack([np.broadcast_to(c, U.shape) for c in fn(U, V)], axis=-1)
    X0 = np.array([float(c) for c in fn(np.float64(z0.real), np.float64(z0.imag))])
    return SurfacePatch(u, v, pts, sig, z0, X0, "closed-form")


# periods and residues -----------------------------------------------------

def real_period(curve: IsotropicCurve, loop: Path) -> np.ndarray:
    """Re of the componentwise loop integral."""
    if not loop.closed:
        raise ValueError("loop must be closed")
    return integrate(curve, loop).real


def is_period_free(period, tol: float = PERIOD_TOL) -> bool:
    return bool(np.all(np.abs(period) < tol))


def residue_oracle(e: ex.Expr, pole: complex, params=None, radius: float = 0.1,
                   n: int = 512, tol: float = 1e-9) -> complex:
    """Residue by trapezoidal quadrature on circles of radius r and r/2.

    The point must be an isolated pole: the expression must blow up there and
    both radii must give the same value within ``tol``.
    """
    pole = complex(pole)
    try:
        near = abs(ex.evaluate(e, pole + 1e-6, params))
        far = abs(ex.evaluate(e, pole + 1e-2, params))
        blows_up = near > 10 * far
    except DivisionByZero:
        blows_up = True
    if not blows_up:
        raise NotIsolatedPole(f"no blow-up of the expression at {pole}")
    theta = 2 * np.pi * np.arange(n) / n

    def trap(r):
        w = r * np.exp(1j * theta)
        return complex(np.mean(ex.evaluate(e, pole + w, params) * w))

    big, small = trap(radius), trap(radius / 2)
    if not abs(big - small) <= tol * max(1.0, abs(small)):
        raise NotIsolatedPole(f"residue estimates disagree: {big} vs {small}")
    return small


def period_from_residues(curve: IsotropicCurve, poles: Iterable[complex]) -> np.ndarray:
    """Re(2 pi i * sum of residues) per component, for a loop enclosing ``poles``."""
    out = np.zeros(3)
    for k, comp in enumerate(curve.components):
        total = 0j
        for p in poles:
            try:
                total += residue_oracle(comp, p, curve.params)
            except NotIsolatedPole:
                # analytic there: no contribution
                ex.evaluate(comp, complex(p) + 1e-3, curve.params)
        out[k] = (2j * np.pi * total).real
    return out


# curvature ----------------------------------------------------------------

def _uniform_step(x):
    d = np.diff(x)
    if not np.allclose(d, d[0], rtol=1e-9, atol=0):
        raise ValueError("finite differences need a uniform grid")
    return float(d[0])


def mean_curvature_field(patch: SurfacePatch) -> np.ndarray:
    """|H| at interior nodes from central second-order differences."""
    X = patch.points
    hu, hv = _uniform_step(patch.u), _uniform_step(patch.v)
    c = X[1:-1, 1:-1]
    Xu = (X[2:, 1:-1] - X[:-2, 1:-1]) / (2 * hu)
    Xv = (X[1:-1, 2:] - X[1:-1, :-2]) / (2 * hv)
    Xuu = (X[2:, 1:-1] - 2 * c + X[:-2, 1:-1]) / hu ** 2
    Xvv = (X[1:-1, 2:] - 2 * c + X[1:-1, :-2]) / hv ** 2
    Xuv = (X[2:, 2:] - X[2:, :-2] - X[:-2, 2:] + X[:-2, :-2]) / (4 * hu * hv)
    J = METRICS[int(patch.sig)]

    def ip(a, b):
        return np.einsum("...i,ij,...j->...", a, J, b)

    E, F, G = ip(Xu, Xu), ip(Xu, Xv), ip(Xv, Xv)
    det = E * G - F ** 2
    N = np.moveaxis(cross(np.moveaxis(Xu, -1, 0), np.moveaxis(Xv, -1, 0), patch.sig), 0, -1)
    nn = ip(N, N)
    if patch.sig == Signature.EUCLIDEAN:
        if np.any(det <= 0):
            raise DegenerateFirstForm("EG - F^2 <= 0 at some node")
    elif np.any(nn >= 0) or np.any(det <= 0):
        raise DegenerateFirstForm("patch is not spacelike at some node")
    N = N / np.sqrt(np.abs(nn))[..., None]
    L, M, Nn = ip(Xuu, N), ip(Xuv, N), ip(Xvv, N)
    return np.abs((E * Nn - 2 * F * M + G * L) / (2 * det))


def mean_curvature_fd(patch: SurfacePatch) -> float:
    return float(np.max(mean_curvature_field(patch)))


def gaussian_curvature(w: WeierstrassData, z: complex) -> float:
    """K = -(4|g'| / (|f| (1 + |g|^2)^2))^2, or +(4|g'| / (|f| (1 - |g|^2)^2))^2 in L^3."""
    dg = abs(ex.evaluate(ex.differentiate(w.g), z, w.params))
    g = abs(w.gauss(z))
    f = abs(w.density(z))
    if w.sig == Signature.EUCLIDEAN:
        return -(4 * dg / (f * (1 + g ** 2) ** 2)) ** 2
    return (4 * dg / (f * (1 - g ** 2) ** 2)) ** 2


def total_curvature(w: WeierstrassData, R: float, panels: int | None = None,
                    n_theta: int = 256) -> float:
    """Integral of K dA over the disc |z| < R (Euclidean data only).

    K lambda^2 = -4 |g'|^2 / (1 + |g|^2)^2, which stays finite at poles of g
    and zeros of f; Gauss-Legendre panels in r, trapezoid in theta.
    """
    if w.sig != Signature.EUCLIDEAN:
        raise ValueError("total curvature is defined here for minimal surfaces only")
    if not R > 0:
        raise ValueError("R must be positive")
    panels = panels or max(8, int(math.ceil(4 * R)))
    edges = np.linspace(0.0, R, panels + 1)
    half = 0.5 * np.diff(edges)
    r = ((0.5 * (edges[1:] + edges[:-1]))[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    wr = (half[:, None] * _GL_W[None, :]).ravel()
    theta = 2 * np.pi * (np.arange(n_theta) + 0.5) / n_theta
    zz = r[:, None] * np.exp(1j * theta[None, :])
    dg = ex.evaluate(ex.differentiate(w.g), zz, w.params)
    g = ex.evaluate(w.g, zz, w.params)
    with np.errstate(over="ignore", invalid="ignore"):
        dens = -4 * np.abs(dg) ** 2 / (1 + np.abs(g) ** 2) ** 2
    dens = np.where(np.isfinite(dens), dens, 0.0)
    return float(np.sum(dens.mean(axis=1) * 2 * np.pi * r * wr))
