"""Shared numerical machinery: adaptive Simpson quadrature and sign-change
localization for smooth scalar functions of time.

All routines take vectorized callables (accepting and returning numpy arrays)
so that batches of subintervals or bisection brackets advance in single
evaluations.
"""

import numpy as np


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, max_depth: int = 48) -> float:
    """Integrate f over [a, b] by adaptive Simpson subdivision.

    Each subinterval is accepted once the classic |S_halves - S_whole|/15
    error estimate drops below its share of the tolerance, and the accepted
    value includes the Richardson correction.  Subintervals still open at
    max_depth are accepted as-is.

    f must accept a numpy array of evaluation points.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_depth)

    left = np.array([a])
    right = np.array([b])
    mid = 0.5 * (left + right)
    fl, fm, fr = (np.asarray(f(x), dtype=float) for x in (left, mid, right))
    whole = (right - left) / 6.0 * (fl + 4.0 * fm + fr)
    tols = np.array([tol], dtype=float)

    total = 0.0
    for _ in range(max_depth):
        lm = 0.5 * (left + mid)
        rm = 0.5 * (mid + right)
        flm = np.asarray(f(lm), dtype=float)
        frm = np.asarray(f(rm), dtype=float)
        s_left = (mid - left) / 6.0 * (fl + 4.0 * flm + fm)
        s_right = (right - mid) / 6.0 * (fm + 4.0 * frm + fr)
        err = (s_left + s_right - whole) / 15.0
        done = np.abs(err) < tols
        total += np.sum((s_left + s_right + err)[done])
        keep = ~done
        if not keep.any():
            return float(total)
        # halve every surviving interval; each half inherits half the budget
        left = np.concatenate([left[keep], mid[keep]])
        right = np.concatenate([mid[keep], right[keep]])
        fl = np.concatenate([fl[keep], fm[keep]])
        fr = np.concatenate([fm[keep], fr[keep]])
        mid = np.concatenate([lm[keep], rm[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
        whole = np.concatenate([s_left[keep], s_right[keep]])
        tols = 0.5 * np.concatenate([tols[keep], tols[keep]])
    # depth exhausted: accept the remaining Simpson estimates
    return float(total + np.sum(whole))


def refine_roots(f, lo: np.ndarray, hi: np.ndarray, time_tol: float = 1e-9) -> np.ndarray:
    """Bisect a batch of sign-change brackets of f down to width time_tol.

    Each (lo[i], hi[i]) must bracket a sign change.  Brackets are narrowed in
    lockstep, one vectorized evaluation of f per bisection step.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    if lo.size == 0:
        return lo
    neg_lo = np.asarray(f(lo)) <= 0
    while np.max(hi - lo) > time_tol:
        mid = 0.5 * (lo + hi)
        neg_mid = np.asarray(f(mid)) <= 0
        same = neg_mid == neg_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def sign_segments(
    f,
    t0: float,
    t1: float,
    n_points: int | None = None,
    zero_tol: float = 1e-12,
    time_tol: float = 1e-9,
    grid_density: int = 2000,
):
    """Partition [t0, t1] into maximal runs of constant sign of f.

    Scans a uniform grid, treats |f| <= zero_tol as zero (suppressing
    spurious micro-intervals), and refines every detected sign flip by
    bisection to time_tol.  Returns (boundaries, signs) where boundaries has
    one more entry than signs and signs[i] in {-1, 0, +1} labels
    (boundaries[i], boundaries[i+1]).  A single 0 sign means f never left the
    zero band.
    """
    if not t1 > t0:
        raise ValueError("empty scan window")
    if n_points is None:
        n_points = max(int(round((t1 - t0) * grid_density)), 256) + 1
    ts = np.linspace(t0, t1, n_points)
    vals = np.asarray(f(ts), dtype=float)
    s = np.where(np.abs(vals) <= zero_tol, 0, np.sign(vals)).astype(int)

    nz = np.nonzero(s)[0]
    if nz.size == 0:
        return np.array([t0, t1]), [0]

    # indices where the (nonzero) sign flips relative to the previous nonzero one
    flips = nz[1:][s[nz[1:]] != s[nz[:-1]]]
    prev = nz[:-1][s[nz[1:]] != s[nz[:-1]]]
    roots = refine_roots(f, ts[prev], ts[flips], time_tol)

    boundaries = np.concatenate([[t0], roots, [t1]])
    signs = [int(s[nz[0]])]
    for i in flips:
        signs.append(int(s[i]))
    return boundaries, signs
