"""Vectorized enumeration kernels over finite fields (numpy code arrays).

The characteristic-2 bitangent test: writing F(sP + tR) = a s^4 + b s^3 t +
c s^2 t^2 + d s t^3 + e t^4, the binary quartic is a square exactly when
b = d = 0, where b = sum R_i dF/dx_i(P) and d = sum P_i dF/dx_i(R).
"""
from __future__ import annotations

import numpy as np

from .poly import MultiPoly


def p2_points(field) -> np.ndarray:
    """Normalized points of P^2 as a (Q^2+Q+1, 3) array, in canonical order."""
    q = field.order
    a = np.repeat(np.arange(q, dtype=np.int64), q)
    b = np.tile(np.arange(q, dtype=np.int64), q)
    block0 = np.stack([np.ones(q * q, dtype=np.int64), a, b], axis=1)
    r = np.arange(q, dtype=np.int64)
    block1 = np.stack([np.zeros(q, dtype=np.int64), np.ones(q, dtype=np.int64), r], axis=1)
    block2 = np.array([[0, 0, 1]], dtype=np.int64)
    return np.concatenate([block0, block1, block2])


def p3_points(field) -> np.ndarray:
    q = field.order
    blocks = []
    for lead in range(4):
        n = 3 - lead
        if n:
            grids = np.meshgrid(*[np.arange(q, dtype=np.int64)] * n, indexing="ij")
            tail = np.stack([g.ravel() for g in grids], axis=1)
        else:
            tail = np.zeros((1, 0), dtype=np.int64)
        m = tail.shape[0]
        head = np.zeros((m, lead + 1), dtype=np.int64)
        head[:, lead] = 1
        blocks.append(np.concatenate([head, tail], axis=1))
    return np.concatenate(blocks)


def partners_through(field, j: int) -> np.ndarray:
    """Points r of the plane x_j = 0, one per line through a point whose first nonzero index is j."""
    pts = p2_points(field)
    return np.insert(pts, j, 0, axis=1)


def p2_line_spans(field) -> tuple[np.ndarray, np.ndarray]:
    """Two spanning points (in plane coordinates) for every line of P^2, indexed by dual points."""
    dual = p2_points(field)
    a, b, c = dual[:, 0], dual[:, 1], dual[:, 2]
    n = dual.shape[0]
    U = np.zeros((n, 3), dtype=np.int64)
    V = np.zeros((n, 3), dtype=np.int64)
    m0 = a == 1
    m1 = (a == 0) & (b == 1)
    m2 = (a == 0) & (b == 0)
    # a = 1: (-b, 1, 0), (-c, 0, 1)
    U[m0, 0] = field.vneg(b[m0])
    U[m0, 1] = 1
    V[m0, 0] = field.vneg(c[m0])
    V[m0, 2] = 1
    # a = 0, b = 1: (1, 0, 0), (0, -c, 1)
    U[m1, 0] = 1
    V[m1, 1] = field.vneg(c[m1])
    V[m1, 2] = 1
    # a = b = 0: (1, 0, 0), (0, 1, 0)
    U[m2, 0] = 1
    V[m2, 1] = 1
    return U, V


def lift_plane(field, lam: np.ndarray, basis) -> np.ndarray:
    """Map plane coordinates to P^3 through the three basis points."""
    out = np.zeros((lam.shape[0], 4), dtype=np.int64)
    for k, B in enumerate(basis):
        for i in range(4):
            if B[i]:
                out[:, i] = field.vadd(out[:, i], field.vmul_scalar(lam[:, k], B[i]))
    return out


def veval(F: MultiPoly, cols) -> np.ndarray:
    """Evaluate F at many points; ``cols[i]`` holds the codes of coordinate i."""
    fld = F.field
    n = len(cols[0])
    acc = np.zeros(n, dtype=np.int64)
    cache: dict = {}
    for e, c in F.terms.items():
        t = None
        for i, k in enumerate(e):
            if not k:
                continue
            key = (i, k)
            if key not in cache:
                cache[key] = fld.vpow(cols[i], k) if k > 1 else cols[i]
            t = cache[key] if t is None else fld.vmul(t, cache[key])
        if t is None:
            t = np.full(n, c, dtype=np.int64)
        else:
            t = fld.vmul_scalar(t, c)
        acc = fld.vadd(acc, t)
    return acc


def square_mask_char2(grads, P: np.ndarray, R: np.ndarray, gradP=None) -> np.ndarray:
    """Mask of lines <P_i, R_i> on which the quartic restricts to a square (char 2).

    ``grads`` are the partial derivatives of F; ``gradP`` may hold their values
    at a single fixed point P (then P is a 1-D code vector).
    """
    fld = grads[0].field
    nv = len(grads)
    if gradP is not None:
        b = np.zeros(R.shape[0], dtype=np.int64)
        for i in range(nv):
            if gradP[i]:
                b = fld.vadd(b, fld.vmul_scalar(R[:, i], gradP[i]))
        d = np.zeros(R.shape[0], dtype=np.int64)
        gR = None
        for i in range(nv):
            if P[i]:
                gR = veval(grads[i], [R[:, k] for k in range(nv)])
                d = fld.vadd(d, fld.vmul_scalar(gR, int(P[i])))
        return (b == 0) & (d == 0)
    Pc = [P[:, k] for k in range(nv)]
    Rc = [R[:, k] for k in range(nv)]
    b = np.zeros(R.shape[0], dtype=np.int64)
    d = np.zeros(R.shape[0], dtype=np.int64)
    for i in range(nv):
        if grads[i]:
            b = fld.vadd(b, fld.vmul(Rc[i], veval(grads[i], Pc)))
            d = fld.vadd(d, fld.vmul(Pc[i], veval(grads[i], Rc)))
    return (b == 0) & (d == 0)


def common_zero_mask(polys, pts: np.ndarray) -> np.ndarray:
    """Points (rows) where every polynomial vanishes."""
    cols = [pts[:, k] for k in range(pts.shape[1])]
    mask = np.ones(pts.shape[0], dtype=bool)
    for f in polys:
        if not f:
            continue
        idx = np.nonzero(mask)[0]
        if idx.size == 0:
            break
        vals = veval(f, [c[idx] for c in cols])
        mask[idx[vals != 0]] = False
    return mask
