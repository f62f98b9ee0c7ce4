"""Semi-discrete DG spatial operator on a moving mesh.

For every element and test function the operator assembles

    - sum_edges int(phi Hhat* ds) + int_K H(U,h).grad(phi) dx + int_K S phi dx

with H = F - U (x) Xdot the moving flux, Hhat* the hydrostatically corrected
global Lax-Friedrichs flux, and S the topography source built from the
polynomial gradient of the projected bottom.  All integrals are reference
quadrature sums scaled by the element Jacobian, so the lake-at-rest
cancellation between edge, volume, and source terms is exact to round-off.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import MeshSingularError, NumericalBlowupError
from .mesh import (EDGE_REFLECTIVE, divergence_numerators, edge_geometry,
                   edge_matrices, min_heights)
from .physics import G_DEFAULT, H_DRY


@dataclass
class StageGeometry:
    """Element and edge geometry of one stage mesh."""

    verts: np.ndarray
    E: np.ndarray        # (N, d, d)
    Einv: np.ndarray
    detE: np.ndarray     # (N,)
    meas: np.ndarray     # (N,) element measures
    normals: np.ndarray  # (E, d) outward from the left element
    elens: np.ndarray    # (E,)
    a_min: float


def stage_geometry(space, verts):
    mesh = space.mesh
    E = edge_matrices(mesh, verts)
    if mesh.dim == 1:
        detE = E[:, 0, 0]
        Einv = (1.0 / detE)[:, None, None]
    else:
        detE = E[:, 0, 0] * E[:, 1, 1] - E[:, 0, 1] * E[:, 1, 0]
        Einv = np.empty_like(E)
        Einv[:, 0, 0] = E[:, 1, 1] / detE
        Einv[:, 0, 1] = -E[:, 0, 1] / detE
        Einv[:, 1, 0] = -E[:, 1, 0] / detE
        Einv[:, 1, 1] = E[:, 0, 0] / detE
    if np.any(detE <= 0):
        bad = int(np.argmin(detE))
        raise MeshSingularError(f"element {bad} inverted (detE={detE[bad]:.3e})")
    meas = detE * space.ref_measure
    normals, elens = edge_geometry(mesh, verts)
    return StageGeometry(verts=verts, E=E, Einv=Einv, detE=detE, meas=meas,
                         normals=normals, elens=elens,
                         a_min=float(np.min(min_heights(mesh, verts))))


def edge_traces(space, U, B, normals):
    """Interior/exterior traces of U and B on all edges, ghosts applied.

    Returns (UL, UR, BL, BR) with shapes (E, nq, ncomp) and (E, nq).
    Ghost rules: transmissive copies the interior trace, reflective mirrors
    the normal discharge, periodic edges read the paired element directly.
    """
    mesh = space.mesh
    UL = space.edge_values(U, "L")
    BL = space.edge_values(B, "L")[:, :, 0]
    UR = space.edge_values(U, "R")
    BR = space.edge_values(B, "R")[:, :, 0]
    wall = mesh.edge_right < 0
    if np.any(wall):
        UR[wall] = UL[wall]
        BR[wall] = BL[wall]
        refl = mesh.edge_kind == EDGE_REFLECTIVE
        if np.any(refl):
            nn = normals[refl]                     # (nr, d)
            qn = UL[refl, :, 1] * nn[:, None, 0]
            if mesh.dim == 2:
                qn = qn + UL[refl, :, 2] * nn[:, None, 1]
            UR[refl, :, 1] = UL[refl, :, 1] - 2.0 * qn * nn[:, None, 0]
            if mesh.dim == 2:
                UR[refl, :, 2] = UL[refl, :, 2] - 2.0 * qn * nn[:, None, 1]
    return UL, UR, BL, BR


def edge_mesh_velocity(space, xdot):
    """Mesh velocity at the edge quadrature points, (E, nq, d)."""
    mesh = space.mesh
    if mesh.dim == 1:
        return xdot[mesh.edge_verts[:, 0]][:, None, :]
    va = xdot[mesh.edge_verts[:, 0]]
    vb = xdot[mesh.edge_verts[:, 1]]
    t = space.edge_param[None, :, None]
    return va[:, None, :] * (1.0 - t) + vb[:, None, :] * t


def trace_flat(space, geom, U, B, xdot):
    """Flattened per-point trace arrays for the flux/speed kernels."""
    mesh = space.mesh
    UL, UR, BL, BR = edge_traces(space, U, B, geom.normals)
    xde = edge_mesh_velocity(space, xdot)
    nq = UL.shape[1]
    n_rep = np.repeat(geom.normals[:, None, :], nq, axis=1)
    flat = {
        "etaL": UL[:, :, 0].ravel(), "mL": UL[:, :, 1].ravel(),
        "etaR": UR[:, :, 0].ravel(), "mR": UR[:, :, 1].ravel(),
        "BL": BL.ravel(), "BR": BR.ravel(),
        "nx": n_rep[:, :, 0].ravel(), "xd": xde[:, :, 0].ravel(),
    }
    if mesh.dim == 2:
        flat["wL"] = UL[:, :, 2].ravel()
        flat["wR"] = UR[:, :, 2].ravel()
        flat["ny"] = n_rep[:, :, 1].ravel()
        flat["yd"] = xde[:, :, 1].ravel()
    else:
        z = np.zeros_like(flat["etaL"])
        flat["wL"] = z
        flat["wR"] = z
        flat["ny"] = z
        flat["yd"] = z
    return {k: np.ascontiguousarray(v) for k, v in flat.items()}


def max_speeds(space, geom, U, B, xdot, g=G_DEFAULT, hdry=H_DRY):
    """(alpha, fixed): global max moving/fixed wave speeds on edge traces."""
    f = trace_flat(space, geom, U, B, xdot)
    moving, fixed = kernels.edge_speeds(
        f["etaL"], f["mL"], f["wL"], f["BL"],
        f["etaR"], f["mR"], f["wR"], f["BR"],
        f["nx"], f["ny"], f["xd"], f["yd"], g, hdry)
    return float(moving.max()), float(fixed.max())


def semi_discrete_rhs(space, geom, U, B, xdot, g=G_DEFAULT, hdry=H_DRY,
                      alpha=None):
    """Spatial operator values per element/component/mode, (N, ncomp, nb)."""
    mesh = space.mesh
    ncomp = U.shape[1]
    f = trace_flat(space, geom, U, B, xdot)
    if alpha is None:
        moving, _ = kernels.edge_speeds(
            f["etaL"], f["mL"], f["wL"], f["BL"],
            f["etaR"], f["mR"], f["wR"], f["BR"],
            f["nx"], f["ny"], f["xd"], f["yd"], g, hdry)
        alpha = float(moving.max())

    # per-element reference pressure; subtracting it from both the edge flux
    # and the volume flux of the same element is an exact identity (constant
    # pressure integrates to zero force) and removes the large cancellation
    # between the two quadratures at near-balanced states
    means = space.cell_means(U)
    Bmean = space.cell_means(B)[:, 0]
    p0 = 0.5 * g * means[:, 0] * (2.0 * (means[:, 0] - Bmean) - means[:, 0])
    eright = np.where(mesh.edge_right >= 0, mesh.edge_right, mesh.edge_left)
    p0L = np.ascontiguousarray(
        np.repeat(p0[mesh.edge_left], space.n_eq))
    p0R = np.ascontiguousarray(np.repeat(p0[eright], space.n_eq))

    E, nq = mesh.n_edges, space.n_eq
    if mesh.dim == 1:
        f1, f2L, f2R = kernels.edge_flux_1d(
            f["etaL"], f["mL"], f["BL"], f["etaR"], f["mR"], f["BR"],
            f["nx"], f["xd"], alpha, g, hdry, p0L, p0R)
        rowsL, rowsR = [f1, f2L], [f1, f2R]
    else:
        f1, f2L, f3L, f2R, f3R = kernels.edge_flux_2d(
            f["etaL"], f["mL"], f["wL"], f["BL"],
            f["etaR"], f["mR"], f["wR"], f["BR"],
            f["nx"], f["ny"], f["xd"], f["yd"], alpha, g, hdry, p0L, p0R)
        rowsL, rowsR = [f1, f2L, f3L], [f1, f2R, f3R]
    FL = np.stack([r.reshape(E, nq) for r in rowsL], axis=2)  # (E, nq, ncomp)
    FR = -np.stack([r.reshape(E, nq) for r in rowsR], axis=2)

    wgt = geom.elens[:, None] * space.edge_wts[None, :]       # (E, nq)
    IL = np.einsum("eq,eqc,eqj->ecj", wgt, FL, space.edge_basis_L,
                   optimize=True)
    out = np.zeros((mesh.n_elems, ncomp, space.nb))
    np.add.at(out, mesh.edge_left, -IL)
    has_r = mesh.edge_right >= 0
    if np.any(has_r):
        IR = np.einsum("eq,eqc,eqj->ecj", wgt[has_r], FR[has_r],
                       space.edge_basis_R[has_r], optimize=True)
        np.add.at(out, mesh.edge_right[has_r], -IR)

    # volume flux + source
    Uv = space.values(U, space.V)                             # (N, nq, ncomp)
    Bv = space.values(B, space.V)[:, :, 0]
    gradB = space.gradients(B, geom.Einv)[:, :, 0, :]         # (N, nq, d)
    xde = np.einsum("qv,evd->eqd", space.vol_bary, xdot[mesh.elems])
    Hvol = _moving_flux_vol(Uv, Uv[:, :, 0] - Bv, xde, g, hdry)
    for ax in range(mesh.dim):
        Hvol[:, :, 1 + ax, ax] -= p0[:, None]
    gradphys = np.einsum("qjd,edD->eqjD", space.Gref, geom.Einv, optimize=True)
    wdet = space.vol_wts[None, :] * geom.detE[:, None]        # (N, nq)
    out += np.einsum("eq,eqcD,eqjD->ecj", wdet, Hvol, gradphys, optimize=True)
    S = np.zeros_like(Uv)
    for ax in range(mesh.dim):
        S[:, :, 1 + ax] = -g * Uv[:, :, 0] * gradB[:, :, ax]
    out += np.einsum("eq,eqc,qj->ecj", wdet, S, space.V, optimize=True)

    if not np.all(np.isfinite(out)):
        bad = int(np.argwhere(~np.isfinite(out))[0][0])
        raise NumericalBlowupError(f"non-finite RHS in element {bad}")
    return out


def _moving_flux_vol(Uv, hv, xde, g, hdry):
    """Moving flux H(U,h) at volume points without physics-module overhead."""
    ncomp = Uv.shape[2]
    eta, m = Uv[:, :, 0], Uv[:, :, 1]
    hp = np.maximum(hv, 0.0)
    dnm = np.maximum(hp * hp, hdry * hdry)
    u = m * hp / dnm
    P = 0.5 * g * eta * (2.0 * hv - eta)
    if ncomp == 2:
        H = np.empty(Uv.shape + (1,))
        H[:, :, 0, 0] = m
        H[:, :, 1, 0] = m * u + P
    else:
        w = Uv[:, :, 2]
        v = w * hp / dnm
        H = np.empty(Uv.shape + (2,))
        H[:, :, 0, 0] = m
        H[:, :, 0, 1] = w
        H[:, :, 1, 0] = m * u + P
        H[:, :, 1, 1] = m * v
        H[:, :, 2, 0] = w * u
        H[:, :, 2, 1] = w * v + P
    return H - Uv[:, :, :, None] * xde[:, :, None, :]


def motion_term(space, geom, U, xdot):
    """int_K phi div(U Xdot) dx per element/component/mode."""
    mesh = space.mesh
    Uv = space.values(U, space.V)
    gradU = space.gradients(U, geom.Einv)                     # (N,nq,ncomp,d)
    xde = np.einsum("qv,evd->eqd", space.vol_bary, xdot[mesh.elems])
    div = divergence_numerators(mesh, geom.verts, xdot) * space.ref_measure \
        / geom.meas
    integ = np.einsum("eqcd,eqd->eqc", gradU, xde) + Uv * div[:, None, None]
    wdet = space.vol_wts[None, :] * geom.detE[:, None]
    return np.einsum("eq,eqc,qj->ecj", wdet, integ, space.V, optimize=True)


def wellbalance_residual(space, geom, U, B, xdot, g=G_DEFAULT, hdry=H_DRY):
    """max |L - int(phi div(U Xdot))| over elements, components, and modes."""
    L = semi_discrete_rhs(space, geom, U, B, xdot, g, hdry)
    M = motion_term(space, geom, U, xdot)
    return float(np.max(np.abs(L - M)))
