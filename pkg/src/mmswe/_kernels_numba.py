"""Numba @njit twins of the kernels in _kernels_numpy (same signatures)."""

import numpy as np
from numba import njit

_OPTS = dict(cache=True, fastmath=False)


@njit(**_OPTS)
def _desing1(m, h, hdry):
    hp = h if h > 0.0 else 0.0
    d = hp * hp
    e2 = hdry * hdry
    if d < e2:
        d = e2
    return m * hp / d


@njit(**_OPTS)
def edge_flux_1d(etaL, mL, BL, etaR, mR, BR, nx, xd, alpha, g, hdry,
                 p0L, p0R):
    n = etaL.shape[0]
    f1 = np.empty(n)
    f2L = np.empty(n)
    f2R = np.empty(n)
    for i in range(n):
        bmax = max(BL[i], BR[i])
        hL = etaL[i] - BL[i]
        hR = etaR[i] - BR[i]
        hsl = max(0.0, etaL[i] - bmax)
        hsr = max(0.0, etaR[i] - bmax)
        msl = _desing1(hsl, hL, hdry) * mL[i]
        msr = _desing1(hsr, hR, hdry) * mR[i]
        usl = _desing1(msl, hsl, hdry)
        usr = _desing1(msr, hsr, hdry)
        xdn = xd[i] * nx[i]
        f1[i] = 0.5 * ((msl + msr) * nx[i] - (etaL[i] + etaR[i]) * xdn
                       - alpha * (etaR[i] - etaL[i]))
        adv = 0.5 * ((msl * usl + msr * usr) * nx[i] - (msl + msr) * xdn
                     - alpha * (msr - msl))
        pL = 0.25 * g * (etaL[i] * (4.0 * hL - 2.0 * hsl - etaL[i])
                         + etaR[i] * (2.0 * hsr - etaR[i])) - p0L[i]
        pR = 0.25 * g * (etaR[i] * (4.0 * hR - 2.0 * hsr - etaR[i])
                         + etaL[i] * (2.0 * hsl - etaL[i])) - p0R[i]
        f2L[i] = adv + pL * nx[i]
        f2R[i] = adv + pR * nx[i]
    return f1, f2L, f2R


@njit(**_OPTS)
def edge_flux_2d(etaL, mL, wL, BL, etaR, mR, wR, BR, nx, ny, xd, yd,
                 alpha, g, hdry, p0L, p0R):
    n = etaL.shape[0]
    f1 = np.empty(n)
    f2L = np.empty(n)
    f3L = np.empty(n)
    f2R = np.empty(n)
    f3R = np.empty(n)
    for i in range(n):
        bmax = max(BL[i], BR[i])
        hL = etaL[i] - BL[i]
        hR = etaR[i] - BR[i]
        hsl = max(0.0, etaL[i] - bmax)
        hsr = max(0.0, etaR[i] - bmax)
        rl = _desing1(hsl, hL, hdry)
        rr = _desing1(hsr, hR, hdry)
        msl = rl * mL[i]
        wsl = rl * wL[i]
        msr = rr * mR[i]
        wsr = rr * wR[i]
        usl = _desing1(msl, hsl, hdry)
        vsl = _desing1(wsl, hsl, hdry)
        usr = _desing1(msr, hsr, hdry)
        vsr = _desing1(wsr, hsr, hdry)
        xdn = xd[i] * nx[i] + yd[i] * ny[i]
        f1[i] = 0.5 * ((msl + msr) * nx[i] + (wsl + wsr) * ny[i]
                       - (etaL[i] + etaR[i]) * xdn - alpha * (etaR[i] - etaL[i]))
        adv2 = 0.5 * ((msl * usl + msr * usr) * nx[i]
                      + (msl * vsl + msr * vsr) * ny[i]
                      - (msl + msr) * xdn - alpha * (msr - msl))
        adv3 = 0.5 * ((wsl * usl + wsr * usr) * nx[i]
                      + (wsl * vsl + wsr * vsr) * ny[i]
                      - (wsl + wsr) * xdn - alpha * (wsr - wsl))
        pressL = 0.25 * g * (etaL[i] * (4.0 * hL - 2.0 * hsl - etaL[i])
                             + etaR[i] * (2.0 * hsr - etaR[i])) - p0L[i]
        pressR = 0.25 * g * (etaR[i] * (4.0 * hR - 2.0 * hsr - etaR[i])
                             + etaL[i] * (2.0 * hsl - etaL[i])) - p0R[i]
        f2L[i] = adv2 + pressL * nx[i]
        f3L[i] = adv3 + pressL * ny[i]
        f2R[i] = adv2 + pressR * nx[i]
        f3R[i] = adv3 + pressR * ny[i]
    return f1, f2L, f3L, f2R, f3R


@njit(**_OPTS)
def edge_speeds(etaL, mL, wL, BL, etaR, mR, wR, BR, nx, ny, xd, yd, g, hdry):
    n = etaL.shape[0]
    moving = np.empty(n)
    fixed = np.empty(n)
    for i in range(n):
        bmax = max(BL[i], BR[i])
        hL = etaL[i] - BL[i]
        hR = etaR[i] - BR[i]
        hsl = max(0.0, etaL[i] - bmax)
        hsr = max(0.0, etaR[i] - bmax)
        rl = _desing1(hsl, hL, hdry)
        rr = _desing1(hsr, hR, hdry)
        unl = _desing1(rl * mL[i], hsl, hdry) * nx[i] \
            + _desing1(rl * wL[i], hsl, hdry) * ny[i]
        unr = _desing1(rr * mR[i], hsr, hdry) * nx[i] \
            + _desing1(rr * wR[i], hsr, hdry) * ny[i]
        cl = np.sqrt(g * hsl)
        cr = np.sqrt(g * hsr)
        xdn = xd[i] * nx[i] + yd[i] * ny[i]
        moving[i] = max(abs(unl - xdn) + cl, abs(unr - xdn) + cr)
        fixed[i] = max(abs(unl) + cl, abs(unr) + cr)
    return moving, fixed


@njit(**_OPTS)
def pp_theta(hvals, hbar, dry_tol):
    n = hvals.shape[0]
    theta = np.ones(n)
    for e in range(n):
        hmin = hvals[e, 0]
        for p in range(1, hvals.shape[1]):
            if hvals[e, p] < hmin:
                hmin = hvals[e, p]
        if hbar[e] <= 0.0:
            theta[e] = 0.0
        elif hmin < 0.0:
            t = hbar[e] / (hbar[e] - hmin)
            theta[e] = t if t < 1.0 else 1.0
    return theta


@njit(**_OPTS)
def minmod_mod(a, b, c, thresh):
    out = np.empty_like(a)
    flat_a = a.ravel()
    flat_b = b.ravel()
    flat_c = c.ravel()
    flat_t = thresh.ravel()
    flat_o = out.ravel()
    for i in range(flat_a.shape[0]):
        ai = flat_a[i]
        if abs(ai) <= flat_t[i]:
            flat_o[i] = ai
        else:
            bi = flat_b[i]
            ci = flat_c[i]
            if ai > 0.0 and bi > 0.0 and ci > 0.0:
                flat_o[i] = min(ai, min(bi, ci))
            elif ai < 0.0 and bi < 0.0 and ci < 0.0:
                flat_o[i] = max(ai, max(bi, ci))
            else:
                flat_o[i] = 0.0
    return out


@njit(**_OPTS)
def mmpde_velocities_1d(xi, elems, len_phys, area, Minv, sdetM, detM_m14):
    n = elems.shape[0]
    v = np.empty((n, 2))
    for e in range(n):
        xlen = len_phys[e]
        xilen = xi[elems[e, 1], 0] - xi[elems[e, 0], 0]
        J = xilen / xlen
        T = J * J * Minv[e, 0, 0]
        dGdJ = 0.5 * sdetM[e] * T ** (-0.25) * Minv[e, 0, 0] * J
        dGddet = 0.5 * detM_m14[e] * np.sqrt(max(J, 0.0))
        v1 = -(dGdJ + dGddet) / xlen
        v[e, 0] = -v1
        v[e, 1] = v1
    return v


@njit(**_OPTS)
def mmpde_velocities_2d(xi, elems, Einv_phys, det_phys, Minv, sdetM, detM_m14):
    n = elems.shape[0]
    v = np.empty((n, 3, 2))
    for e in range(n):
        x0x = xi[elems[e, 0], 0]
        x0y = xi[elems[e, 0], 1]
        a00 = xi[elems[e, 1], 0] - x0x
        a10 = xi[elems[e, 1], 1] - x0y
        a01 = xi[elems[e, 2], 0] - x0x
        a11 = xi[elems[e, 2], 1] - x0y
        detEc = a00 * a11 - a01 * a10
        # J = Ec @ Einv_phys
        b00, b01 = Einv_phys[e, 0, 0], Einv_phys[e, 0, 1]
        b10, b11 = Einv_phys[e, 1, 0], Einv_phys[e, 1, 1]
        J00 = a00 * b00 + a01 * b10
        J01 = a00 * b01 + a01 * b11
        J10 = a10 * b00 + a11 * b10
        J11 = a10 * b01 + a11 * b11
        m00, m01 = Minv[e, 0, 0], Minv[e, 0, 1]
        m10, m11 = Minv[e, 1, 0], Minv[e, 1, 1]
        # T = tr(J Minv J^T)
        c00 = J00 * m00 + J01 * m10
        c01 = J00 * m01 + J01 * m11
        c10 = J10 * m00 + J11 * m10
        c11 = J10 * m01 + J11 * m11
        T = c00 * J00 + c01 * J01 + c10 * J10 + c11 * J11
        coef = sdetM[e] * np.sqrt(max(T, 0.0))
        # dGdJ = coef * Minv @ J^T
        d00 = coef * (m00 * J00 + m01 * J01)
        d01 = coef * (m00 * J10 + m01 * J11)
        d10 = coef * (m10 * J00 + m11 * J01)
        d11 = coef * (m10 * J10 + m11 * J11)
        detJ = detEc / det_phys[e]
        dGddet = 0.5 * (2.0 ** 1.5) * detM_m14[e] * np.sqrt(max(detJ, 0.0))
        # rows = -Einv_phys @ dGdJ - (dGddet*detEc/det_phys) * Ecinv,
        # with Ecinv = adj(Ec)/detEc, so the detEc factors cancel:
        s = dGddet / det_phys[e]
        r00 = -(b00 * d00 + b01 * d10) - s * a11
        r01 = -(b00 * d01 + b01 * d11) - s * (-a01)
        r10 = -(b10 * d00 + b11 * d10) - s * (-a10)
        r11 = -(b10 * d01 + b11 * d11) - s * a00
        v[e, 1, 0] = r00
        v[e, 1, 1] = r01
        v[e, 2, 0] = r10
        v[e, 2, 1] = r11
        v[e, 0, 0] = -r00 - r10
        v[e, 0, 1] = -r01 - r11
    return v


@njit(**_OPTS)
def locate_points(pts, xi, elems, nbr, start):
    npts = pts.shape[0]
    nel = elems.shape[0]
    owner = np.empty(npts, dtype=np.int64)
    bary = np.empty((npts, 3))
    for p in range(npts):
        e = start[p]
        found = False
        for _ in range(4 * nel):
            i0, i1, i2 = elems[e, 0], elems[e, 1], elems[e, 2]
            e00 = xi[i1, 0] - xi[i0, 0]
            e10 = xi[i1, 1] - xi[i0, 1]
            e01 = xi[i2, 0] - xi[i0, 0]
            e11 = xi[i2, 1] - xi[i0, 1]
            det = e00 * e11 - e01 * e10
            rx = pts[p, 0] - xi[i0, 0]
            ry = pts[p, 1] - xi[i0, 1]
            l1 = (e11 * rx - e01 * ry) / det
            l2 = (-e10 * rx + e00 * ry) / det
            l0 = 1.0 - l1 - l2
            if min(l0, min(l1, l2)) >= -1e-12:
                owner[p] = e
                bary[p, 0] = l0
                bary[p, 1] = l1
                bary[p, 2] = l2
                found = True
                break
            # hop across the most violated face; faces (0,1),(1,2),(2,0)
            # are opposite barycentric components 2, 0, 1 respectively
            if l0 <= l1 and l0 <= l2:
                face = 1
            elif l1 <= l0 and l1 <= l2:
                face = 2
            else:
                face = 0
            nb = nbr[e, face]
            if nb < 0:
                break
            e = nb
        if not found:
            # exhaustive fallback: element with the best barycentric score
            best_e = 0
            best_score = -1e300
            for ee in range(nel):
                i0, i1, i2 = elems[ee, 0], elems[ee, 1], elems[ee, 2]
                e00 = xi[i1, 0] - xi[i0, 0]
                e10 = xi[i1, 1] - xi[i0, 1]
                e01 = xi[i2, 0] - xi[i0, 0]
                e11 = xi[i2, 1] - xi[i0, 1]
                det = e00 * e11 - e01 * e10
                rx = pts[p, 0] - xi[i0, 0]
                ry = pts[p, 1] - xi[i0, 1]
                l1 = (e11 * rx - e01 * ry) / det
                l2 = (-e10 * rx + e00 * ry) / det
                l0 = 1.0 - l1 - l2
                score = min(l0, min(l1, l2))
                if score > best_score:
                    best_score = score
                    best_e = ee
            i0, i1, i2 = elems[best_e, 0], elems[best_e, 1], elems[best_e, 2]
            e00 = xi[i1, 0] - xi[i0, 0]
            e10 = xi[i1, 1] - xi[i0, 1]
            e01 = xi[i2, 0] - xi[i0, 0]
            e11 = xi[i2, 1] - xi[i0, 1]
            det = e00 * e11 - e01 * e10
            rx = pts[p, 0] - xi[i0, 0]
            ry = pts[p, 1] - xi[i0, 1]
            l1 = (e11 * rx - e01 * ry) / det
            l2 = (-e10 * rx + e00 * ry) / det
            owner[p] = best_e
            bary[p, 0] = 1.0 - l1 - l2
            bary[p, 1] = l1
            bary[p, 2] = l2
    return owner, bary
