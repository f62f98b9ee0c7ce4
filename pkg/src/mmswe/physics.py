"""Pointwise shallow-water physics in pre-balanced variables.

The conserved state is U = (eta, m[, w]) with eta the free-surface level and
(m, w) the discharges; the water depth h = eta - B enters the flux explicitly
because the numerical flux modifies h (hydrostatic reconstruction) while
keeping eta untouched.  All functions broadcast over leading array axes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PhysicsDomainError

G_DEFAULT = 9.812
H_DRY = 1e-12


def desingularized_velocity(m, h, hdry=H_DRY):
    """Velocity m/h regularized so it vanishes as h -> 0 (or h <= 0)."""
    hp = np.maximum(h, 0.0)
    return m * hp / np.maximum(hp * hp, hdry * hdry)


def pressure_term(eta, h, g):
    """Momentum pressure (g/2)(2 h eta - eta^2); equals (g/2) h^2 when B=0."""
    return 0.5 * g * eta * (2.0 * h - eta)


def sound_speed(h, g):
    return np.sqrt(g * np.maximum(h, 0.0))


def physical_flux(U, h, g=G_DEFAULT, hdry=H_DRY):
    """Flux tensor F(U, h), shape (..., ncomp, dim) with ncomp = dim + 1."""
    U = np.asarray(U, dtype=float)
    if not (np.all(np.isfinite(U)) and np.all(np.isfinite(h))):
        raise PhysicsDomainError("non-finite state passed to the flux")
    ncomp = U.shape[-1]
    eta, m = U[..., 0], U[..., 1]
    P = pressure_term(eta, h, g)
    u = desingularized_velocity(m, h, hdry)
    if ncomp == 2:
        return np.stack([m[..., None], (m * u + P)[..., None]], axis=-2)
    w = U[..., 2]
    v = desingularized_velocity(w, h, hdry)
    row1 = np.stack([m, w], axis=-1)
    row2 = np.stack([m * u + P, m * v], axis=-1)
    row3 = np.stack([w * u, w * v + P], axis=-1)
    return np.stack([row1, row2, row3], axis=-2)


def moving_flux(U, h, xdot, g=G_DEFAULT, hdry=H_DRY):
    """H(U, h) = F(U, h) - U (x) Xdot, the flux seen on a moving mesh."""
    F = physical_flux(U, h, g, hdry)
    U = np.asarray(U, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    return F - U[..., :, None] * xdot[..., None, :]


def eigenvalues_moving(U, h, xdot, n, g=G_DEFAULT, hdry=H_DRY):
    """Sorted eigenvalues of the moving-flux Jacobian in direction n."""
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise PhysicsDomainError("negative depth in eigenvalue computation")
    U = np.asarray(U, dtype=float)
    n = np.asarray(n, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    u = desingularized_velocity(U[..., 1], h, hdry)
    rel = (u - xdot[..., 0]) * n[..., 0]
    if U.shape[-1] > 2:
        v = desingularized_velocity(U[..., 2], h, hdry)
        rel = rel + (v - xdot[..., 1]) * n[..., 1]
    c = sound_speed(h, g)
    return np.stack([rel - c, rel, rel + c], axis=-1)


def eigenvalues_fixed(U, h, n, g=G_DEFAULT, hdry=H_DRY):
    """Eigenvalues of F'(U, h).n (stationary mesh)."""
    zero = np.zeros(np.shape(np.asarray(n, dtype=float)))
    return eigenvalues_moving(U, h, zero, n, g, hdry)


@dataclass
class EdgeTrace:
    """Interior/exterior traces at edge quadrature points plus edge data."""

    U_int: np.ndarray      # (..., ncomp)
    U_ext: np.ndarray
    B_int: np.ndarray      # (...,)
    B_ext: np.ndarray
    n: np.ndarray          # (..., dim) outward unit normal of the interior side
    xdot: np.ndarray       # (..., dim) mesh velocity at the points

    @property
    def h_int(self):
        return self.U_int[..., 0] - self.B_int

    @property
    def h_ext(self):
        return self.U_ext[..., 0] - self.B_ext


def hydrostatic_reconstruct(trace, hdry=H_DRY):
    """Clip edge depths against max(B_int, B_ext); eta stays unmodified.

    Returns (U*_int, h*_int, U*_ext, h*_ext); discharges are scaled by the
    desingularized ratio h*/h so they vanish with the reconstructed depth.
    """
    bmax = np.maximum(trace.B_int, trace.B_ext)
    out = []
    for U, B in ((trace.U_int, trace.B_int), (trace.U_ext, trace.B_ext)):
        eta = U[..., 0]
        h = eta - B
        hstar = np.maximum(0.0, eta - bmax)
        hp = np.maximum(h, 0.0)
        ratio = hstar * hp / np.maximum(hp * hp, hdry * hdry)
        Ustar = U.copy()
        for comp in range(1, U.shape[-1]):
            Ustar[..., comp] = ratio * U[..., comp]
        out += [Ustar, hstar]
    return tuple(out)


def _flux_dot_n(U, h, n, xdot, g, hdry):
    H = moving_flux(U, h, xdot, g, hdry)
    return np.einsum("...cd,...d->...c", H, n)


def lax_friedrichs_flux(trace, alpha, g=G_DEFAULT, hdry=H_DRY):
    """Global Lax-Friedrichs flux of the (possibly reconstructed) traces."""
    Hi = _flux_dot_n(trace.U_int, trace.h_int, trace.n, trace.xdot, g, hdry)
    He = _flux_dot_n(trace.U_ext, trace.h_ext, trace.n, trace.xdot, g, hdry)
    jump = trace.U_ext - trace.U_int
    return 0.5 * (Hi + He - np.asarray(alpha)[..., None] * jump)


def corrected_flux(trace, alpha, g=G_DEFAULT, hdry=H_DRY):
    """Hydrostatically corrected numerical flux seen by the interior element.

    The raw traces are reconstructed, the Lax-Friedrichs flux is evaluated on
    the reconstruction, and the interior-trace pressure correction restores
    consistency with the interior flux at lake-at-rest states.
    """
    Us_i, hs_i, Us_e, hs_e = hydrostatic_reconstruct(trace, hdry)
    star = EdgeTrace(U_int=Us_i, U_ext=Us_e,
                     B_int=Us_i[..., 0] - hs_i, B_ext=Us_e[..., 0] - hs_e,
                     n=trace.n, xdot=trace.xdot)
    base = lax_friedrichs_flux(star, alpha, g, hdry)
    eta_i = trace.U_int[..., 0]
    corr = g * eta_i * (trace.h_int - hs_i)
    out = base.copy()
    for ax in range(trace.n.shape[-1]):
        out[..., 1 + ax] += corr * trace.n[..., ax]
    return out


def characteristic_basis(U_left, U_right, h_left, h_right, n,
                         g=G_DEFAULT, hdry=H_DRY):
    """Eigenvector matrices (R, R^-1) at the arithmetic-average state.

    Falls back to identity matrices when the average depth is dry, so
    characteristic limiting degrades to componentwise limiting.
    """
    U = 0.5 * (np.asarray(U_left, dtype=float) + np.asarray(U_right, dtype=float))
    h = 0.5 * (np.asarray(h_left) + np.asarray(h_right))
    ncomp = U.shape[-1]
    if h <= hdry:
        return np.eye(ncomp), np.eye(ncomp)
    u = float(desingularized_velocity(U[..., 1], h, hdry))
    c = float(np.sqrt(g * h))
    if ncomp == 2:
        R = np.array([[1.0, 1.0], [u - c, u + c]])
        Rinv = np.array([[(u + c) / (2 * c), -1.0 / (2 * c)],
                         [(c - u) / (2 * c), 1.0 / (2 * c)]])
        return R, Rinv
    v = float(desingularized_velocity(U[..., 2], h, hdry))
    nx, ny = float(n[0]), float(n[1])
    un = u * nx + v * ny
    ut = -u * ny + v * nx
    R = np.array([
        [1.0, 0.0, 1.0],
        [u - c * nx, -ny, u + c * nx],
        [v - c * ny, nx, v + c * ny],
    ])
    Rinv = np.array([
        [(un + c) / (2 * c), -nx / (2 * c), -ny / (2 * c)],
        [-ut, -ny, nx],
        [(c - un) / (2 * c), nx / (2 * c), ny / (2 * c)],
    ])
    return R, Rinv
