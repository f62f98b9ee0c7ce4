"""Pure-numpy implementations of the hot kernels (fallback backend).

Each function here has an @njit twin in _kernels_numba with the same
signature and semantics; kernels.py selects the backend.

The corrected-flux kernels return the flux for BOTH adjacent elements.  The
interior-pressure correction of each side is folded into the pressure average
before the single multiplication by g/4:

    (P*_own)/2 + g eta_own (h_own - h*_own) + (P*_other)/2
      = g/4 [ eta_own (4 h_own - 2 h*_own - eta_own)
              + eta_other (2 h*_other - eta_other) ]

which keeps the lake-at-rest identity (corrected flux == interior flux) at
one or two ulps instead of accumulating it across separately rounded terms.
"""

import numpy as np


def _desing(m, h, hdry):
    hp = np.maximum(h, 0.0)
    return m * hp / np.maximum(hp * hp, hdry * hdry)


def _reconstruct(etaL, BL, etaR, BR, hdry):
    bmax = np.maximum(BL, BR)
    hL, hR = etaL - BL, etaR - BR
    hsl = np.maximum(0.0, etaL - bmax)
    hsr = np.maximum(0.0, etaR - bmax)
    rl = _desing(hsl, hL, hdry)
    rr = _desing(hsr, hR, hdry)
    return hL, hR, hsl, hsr, rl, rr


def edge_flux_1d(etaL, mL, BL, etaR, mR, BR, nx, xd, alpha, g, hdry,
                 p0L, p0R):
    """Corrected Lax-Friedrichs flux at 1D interface points.

    Returns (f1, f2L, f2R): the surface-level flux (shared by both sides; the
    right element uses -f1) and the momentum flux seen by the left / right
    element (the right element uses -f2R).  p0L/p0R are the per-element
    reference pressures subtracted on each side; the matching constant is
    dropped from that element's volume integral, which is an exact identity
    (divergence theorem for a constant) that only improves conditioning.
    """
    hL, hR, hsl, hsr, rl, rr = _reconstruct(etaL, BL, etaR, BR, hdry)
    msl, msr = rl * mL, rr * mR
    usl, usr = _desing(msl, hsl, hdry), _desing(msr, hsr, hdry)
    xdn = xd * nx
    f1 = 0.5 * ((msl + msr) * nx - (etaL + etaR) * xdn - alpha * (etaR - etaL))
    adv = 0.5 * ((msl * usl + msr * usr) * nx - (msl + msr) * xdn
                 - alpha * (msr - msl))
    pL = 0.25 * g * (etaL * (4.0 * hL - 2.0 * hsl - etaL)
                     + etaR * (2.0 * hsr - etaR))
    pR = 0.25 * g * (etaR * (4.0 * hR - 2.0 * hsr - etaR)
                     + etaL * (2.0 * hsl - etaL))
    return f1, adv + (pL - p0L) * nx, adv + (pR - p0R) * nx


def edge_flux_2d(etaL, mL, wL, BL, etaR, mR, wR, BR, nx, ny, xd, yd,
                 alpha, g, hdry, p0L, p0R):
    """2D analogue of edge_flux_1d.

    Returns (f1, f2L, f3L, f2R, f3R); the right element uses the negated
    (f1, f2R, f3R).
    """
    hL, hR, hsl, hsr, rl, rr = _reconstruct(etaL, BL, etaR, BR, hdry)
    msl, wsl = rl * mL, rl * wL
    msr, wsr = rr * mR, rr * wR
    usl, vsl = _desing(msl, hsl, hdry), _desing(wsl, hsl, hdry)
    usr, vsr = _desing(msr, hsr, hdry), _desing(wsr, hsr, hdry)
    xdn = xd * nx + yd * ny
    f1 = 0.5 * ((msl + msr) * nx + (wsl + wsr) * ny - (etaL + etaR) * xdn
                - alpha * (etaR - etaL))
    adv2 = 0.5 * ((msl * usl + msr * usr) * nx + (msl * vsl + msr * vsr) * ny
                  - (msl + msr) * xdn - alpha * (msr - msl))
    adv3 = 0.5 * ((wsl * usl + wsr * usr) * nx + (wsl * vsl + wsr * vsr) * ny
                  - (wsl + wsr) * xdn - alpha * (wsr - wsl))
    pressL = 0.25 * g * (etaL * (4.0 * hL - 2.0 * hsl - etaL)
                         + etaR * (2.0 * hsr - etaR)) - p0L
    pressR = 0.25 * g * (etaR * (4.0 * hR - 2.0 * hsr - etaR)
                         + etaL * (2.0 * hsl - etaL)) - p0R
    return (f1, adv2 + pressL * nx, adv3 + pressL * ny,
            adv2 + pressR * nx, adv3 + pressR * ny)


def edge_speeds(etaL, mL, wL, BL, etaR, mR, wR, BR, nx, ny, xd, yd, g, hdry):
    """Max |eigenvalue| per point on the reconstructed traces.

    Returns (moving, fixed): with and without the mesh-velocity shift.
    """
    hL, hR, hsl, hsr, rl, rr = _reconstruct(etaL, BL, etaR, BR, hdry)
    unl = _desing(rl * mL, hsl, hdry) * nx + _desing(rl * wL, hsl, hdry) * ny
    unr = _desing(rr * mR, hsr, hdry) * nx + _desing(rr * wR, hsr, hdry) * ny
    cl, cr = np.sqrt(g * hsl), np.sqrt(g * hsr)
    xdn = xd * nx + yd * ny
    moving = np.maximum(np.abs(unl - xdn) + cl, np.abs(unr - xdn) + cr)
    fixed = np.maximum(np.abs(unl) + cl, np.abs(unr) + cr)
    return moving, fixed


def pp_theta(hvals, hbar, dry_tol):
    """Linear-scaling limiter factor per element.

    hvals: (N, ncp) depth at check points, hbar: (N,) cell averages.
    Non-positive averages give theta = 0 (dry); the caller rejects averages
    below -dry_tol before calling.
    """
    del dry_tol
    hmin = hvals.min(axis=1)
    theta = np.ones_like(hbar)
    dry = hbar <= 0.0
    theta[dry] = 0.0
    need = (~dry) & (hmin < 0.0)
    theta[need] = np.minimum(1.0, hbar[need] / (hbar[need] - hmin[need]))
    return theta


def minmod_mod(a, b, c, thresh):
    """Modified minmod: keep a where |a| <= thresh, else minmod(a, b, c)."""
    keep = np.abs(a) <= thresh
    sg = np.sign(a)
    same = (sg == np.sign(b)) & (sg == np.sign(c))
    mm = sg * np.minimum(np.abs(a), np.minimum(np.abs(b), np.abs(c)))
    out = np.where(same, mm, 0.0)
    return np.where(keep, a, out)


def mmpde_velocities_1d(xi, elems, len_phys, area, Minv, sdetM, detM_m14):
    """Local mesh-movement velocities per 1D element: (N, 2)."""
    del area
    xlen = len_phys
    xilen = xi[elems[:, 1], 0] - xi[elems[:, 0], 0]
    J = xilen / xlen
    T = J * J * Minv[:, 0, 0]
    dGdJ = 0.5 * sdetM * T ** (-0.25) * Minv[:, 0, 0] * J
    dGddet = 0.5 * detM_m14 * np.sqrt(np.maximum(J, 0.0))
    v1 = -(dGdJ + dGddet) / xlen
    return np.stack([-v1, v1], axis=1)


def mmpde_velocities_2d(xi, elems, Einv_phys, det_phys, Minv, sdetM, detM_m14):
    """Local mesh-movement velocities per 2D element: (N, 3, 2)."""
    x0 = xi[elems[:, 0]]
    Ec = np.stack([xi[elems[:, 1]] - x0, xi[elems[:, 2]] - x0], axis=2)
    detEc = Ec[:, 0, 0] * Ec[:, 1, 1] - Ec[:, 0, 1] * Ec[:, 1, 0]
    J = np.einsum("nij,njk->nik", Ec, Einv_phys)
    JMinvJt = np.einsum("nij,njk,nlk->nil", J, Minv, J)
    T = JMinvJt[:, 0, 0] + JMinvJt[:, 1, 1]
    dGdJ = (sdetM * np.sqrt(np.maximum(T, 0.0)))[:, None, None] * \
        np.einsum("nij,nkj->nik", Minv, J)
    detJ = detEc / det_phys
    dGddet = 0.5 * (2.0 ** 1.5) * detM_m14 * np.sqrt(np.maximum(detJ, 0.0))
    adj = np.empty_like(Ec)
    adj[:, 0, 0] = Ec[:, 1, 1]
    adj[:, 0, 1] = -Ec[:, 0, 1]
    adj[:, 1, 0] = -Ec[:, 1, 0]
    adj[:, 1, 1] = Ec[:, 0, 0]
    # (dGddet*detEc/det_phys) * Ecinv = (dGddet/det_phys) * adj(Ec)
    rows = -np.einsum("nij,njk->nik", Einv_phys, dGdJ) \
        - (dGddet / det_phys)[:, None, None] * adj
    v = np.empty((len(elems), 3, 2))
    v[:, 1, :] = rows[:, 0, :]
    v[:, 2, :] = rows[:, 1, :]
    v[:, 0, :] = -rows[:, 0, :] - rows[:, 1, :]
    return v


def locate_points(pts, xi, elems, nbr, start):
    """Element containing each point plus barycentric coords (brute force)."""
    del nbr, start  # the numba twin walks the adjacency; here we scan
    npts = len(pts)
    x0 = xi[elems[:, 0]]
    E = np.stack([xi[elems[:, 1]] - x0, xi[elems[:, 2]] - x0], axis=2)
    det = E[:, 0, 0] * E[:, 1, 1] - E[:, 0, 1] * E[:, 1, 0]
    inv = np.empty_like(E)
    inv[:, 0, 0] = E[:, 1, 1] / det
    inv[:, 0, 1] = -E[:, 0, 1] / det
    inv[:, 1, 0] = -E[:, 1, 0] / det
    inv[:, 1, 1] = E[:, 0, 0] / det
    owner = np.empty(npts, dtype=np.int64)
    bary = np.empty((npts, 3))
    for p in range(npts):
        rhs = pts[p] - x0
        l12 = np.einsum("nij,nj->ni", inv, rhs)
        lam0 = 1.0 - l12[:, 0] - l12[:, 1]
        score = np.minimum(lam0, np.minimum(l12[:, 0], l12[:, 1]))
        e = int(np.argmax(score))
        owner[p] = e
        bary[p] = (lam0[e], l12[e, 0], l12[e, 1])
    return owner, bary
