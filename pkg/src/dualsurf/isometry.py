"""One-parameter isometry groups of E^3 and L^3, translations and dilations."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .errors import InvalidParameter, SignatureMismatch
from .vectors import METRICS, Signature
from .weierstrass import IsotropicCurve, apply_linear


class Kind(str, Enum):
    ELLIPTIC = "elliptic"        # rotations about (0,0,1)
    HYPERBOLIC = "hyperbolic"    # boosts about (1,0,0), Lorentzian only
    PARABOLIC = "parabolic"      # null rotations about (1,0,1), Lorentzian only
    EUCLIDEAN_Y = "euclidean_y"  # rotations about (0,1,0), Euclidean only
    TRANSLATION = "translation"
    DILATION = "dilation"


_ALLOWED = {
    Kind.ELLIPTIC: {1, -1},
    Kind.HYPERBOLIC: {-1},
    Kind.PARABOLIC: {-1},
    Kind.EUCLIDEAN_Y: {1},
    Kind.TRANSLATION: {1, -1},
    Kind.DILATION: {1, -1},
}


@dataclass(frozen=True)
class AmbientIsometry:
    linear: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))
    kind: Kind = Kind.TRANSLATION
    param: float = 0.0

    def __call__(self, X):
        """Apply to points with the coordinate axis last."""
        return np.asarray(X) @ self.linear.T + self.translation

    def __matmul__(self, other: "AmbientIsometry") -> "AmbientIsometry":
        kind = self.kind if self.kind == other.kind else Kind.TRANSLATION
        return AmbientIsometry(self.linear @ other.linear,
                               self.linear @ other.translation + self.translation,
                               kind, self.param + other.param)

    def allows(self, sig) -> bool:
        return int(sig) in _ALLOWED[self.kind]


def make(kind, param: float, vector=None) -> AmbientIsometry:
    """Closed-form group element.  For translations the displacement is
    ``param * vector`` (default vector (1, 0, 0))."""
    kind = Kind(kind)
    t = float(param)
    c, s = np.cos(t), np.sin(t)
    ch, sh = np.cosh(t), np.sinh(t)
    if kind is Kind.ELLIPTIC:
        A = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    elif kind is Kind.HYPERBOLIC:
        A = np.array([[1.0, 0.0, 0.0], [0.0, ch, sh], [0.0, sh, ch]])
    elif kind is Kind.PARABOLIC:
        A = np.array([[1 - t * t / 2, t, t * t / 2],
                      [-t, 1.0, t],
                      [-t * t / 2, t, 1 + t * t / 2]])
    elif kind is Kind.EUCLIDEAN_Y:
        A = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    elif kind is Kind.DILATION:
        if not t > 0:
            raise InvalidParameter(f"dilation ratio must be positive, got {t}")
        A = t * np.eye(3)
    else:
        vec = np.array([1.0, 0.0, 0.0] if vector is None else vector, dtype=float)
        return AmbientIsometry(np.eye(3), t * vec, kind, t)
    return AmbientIsometry(A, np.zeros(3), kind, t)


def translation(vector) -> AmbientIsometry:
    return AmbientIsometry(np.eye(3), np.asarray(vector, dtype=float), Kind.TRANSLATION, 1.0)


def form_defect(A, sig) -> float:
    """max |A^T J A - J| for the metric J of signature ``sig``."""
    J = METRICS[int(sig)]
    A = np.asarray(A)
    return float(np.max(np.abs(A.T @ J @ A - J)))


def act_on_patch(iso: AmbientIsometry, patch):
    if not iso.allows(patch.sig):
        raise SignatureMismatch(f"{iso.kind.value} motion does not act on signature {int(patch.sig)}")
    return replace(patch, points=iso(patch.points), X0=iso(patch.X0))


def act_on_curve(iso: AmbientIsometry, c: IsotropicCurve) -> IsotropicCurve:
    """Linear part acting componentwise; translations drop out of dX."""
    if not iso.allows(c.sig):
        raise SignatureMismatch(f"{iso.kind.value} motion does not act on signature {int(c.sig)}")
    A = iso.linear
    if iso.kind is Kind.DILATION:
        A = A / iso.param  # form check on the rotational part only
    if form_defect(A, c.sig) > 1e-12:
        raise SignatureMismatch("linear part does not preserve the ambient form")
    return apply_linear(iso.linear, c)


def conjugate(outer: AmbientIsometry, inner: AmbientIsometry) -> AmbientIsometry:
    """outer . inner . outer^{-1} (used for rotations about a moved axis)."""
    inv = np.linalg.inv(outer.linear)
    A = outer.linear @ inner.linear @ inv
    b = outer.linear @ inner.translation + outer.translation - A @ outer.translation
    return AmbientIsometry(A, b, inner.kind, inner.param)


__all__ = ["AmbientIsometry", "Kind", "make", "translation", "act_on_patch", "act_on_curve",
           "conjugate", "form_defect", "Signature"]
