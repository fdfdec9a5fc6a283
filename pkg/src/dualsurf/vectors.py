"""Signature-aware bilinear algebra on 3-vectors.

``sig`` is +1 for Euclidean space and -1 for Lorentz-Minkowski space; the
metric is diag(1, 1, sig).  Both functions are generic: components may be
numbers, numpy arrays (leading axis of length 3) or :class:`Expr` objects.
"""
from __future__ import annotations

from enum import IntEnum

import numpy as np


class Signature(IntEnum):
    EUCLIDEAN = 1
    LORENTZIAN = -1


def signature(value) -> Signature:
    try:
        return Signature(int(value))
    except ValueError:
        raise ValueError(f"signature must be +1 or -1, got {value!r}") from None


def inner(u, v, sig):
    """Complex bilinear (not Hermitian) form u1 v1 + u2 v2 + sig u3 v3."""
    return u[0] * v[0] + u[1] * v[1] + int(sig) * (u[2] * v[2])


def cross(u, v, sig):
    """The vector w with <w, e_k>_sig = det(u, v, e_k) for k = 1, 2, 3."""
    w0 = u[1] * v[2] - u[2] * v[1]
    w1 = u[2] * v[0] - u[0] * v[2]
    w2 = u[0] * v[1] - u[1] * v[0]
    if int(sig) == -1:
        w2 = -w2
    if isinstance(u, np.ndarray) or isinstance(v, np.ndarray):
        return np.array([w0, w1, w2])
    return (w0, w1, w2)


METRICS = {1: np.diag([1.0, 1.0, 1.0]), -1: np.diag([1.0, 1.0, -1.0])}
