"""DG space on a (possibly moving) simplicial mesh.

A DGSpace bundles the orthonormal reference basis, the quadrature rules, and
every topology-dependent evaluation table (volume points, per-edge trace
tables for both sides, positivity check points, error-sampling points).
Because the basis is orthonormal on the reference element, the mass matrix of
any element under an affine map is (|K|/|K_ref|) I, projections reduce to
reference-space quadrature sums, and cell averages are the first modal
coefficient scaled by the constant-mode value.
"""

from dataclasses import dataclass

import numpy as np

from .basis import ModalBasis
from .errors import InvalidArgumentError
from .mesh import edge_matrices, signed_measures
from .quadrature import make_quadrature, triangle_lattice

_REF_VERTS = {
    1: np.array([[0.0], [1.0]]),
    2: np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
}


def _bary(pts, dim):
    """Barycentric weights of reference points, shape (npts, dim+1)."""
    pts = np.atleast_2d(pts)
    if dim == 1:
        return np.stack([1.0 - pts[:, 0], pts[:, 0]], axis=1)
    return np.stack([1.0 - pts[:, 0] - pts[:, 1], pts[:, 0], pts[:, 1]], axis=1)


class DGSpace:
    """Degree-k DG space bound to one mesh topology."""

    def __init__(self, mesh, k):
        self.mesh = mesh
        self.k = k
        self.dim = mesh.dim
        self.basis = ModalBasis(k, mesh.dim)
        self.nb = self.basis.nb
        self.quad = make_quadrature(k, mesh.dim)
        self.ref_measure = self.quad.ref_measure

        q = self.quad
        self.vol_pts = q.vol_pts
        self.vol_wts = q.vol_wts
        self.V = self.basis.eval(q.vol_pts)                  # (nq, nb)
        self.Gref = self.basis.grad(q.vol_pts)               # (nq, nb, d)
        self.vol_bary = _bary(q.vol_pts, self.dim)

        self.check_pts = q.check_pts
        self.Vcheck = self.basis.eval(q.check_pts)
        self.check_bary = _bary(q.check_pts, self.dim)

        if self.dim == 1:
            self.sample_pts = np.linspace(0.0, 1.0, 21)[:, None]
        else:
            self.sample_pts = triangle_lattice(5)
        self.Vsample = self.basis.eval(self.sample_pts)
        self.sample_bary = _bary(self.sample_pts, self.dim)

        self.Vvert = self.basis.eval(_REF_VERTS[self.dim])   # (d+1, nb)

        self._build_edge_tables()

    # -- edge trace tables --------------------------------------------------

    def _build_edge_tables(self):
        mesh = self.mesh
        if self.dim == 1:
            t = np.zeros((1, 1))  # parameter placeholder; traces sit at endpoints
            ends = self.basis.eval(_REF_VERTS[1])            # (2, nb)
            self.n_eq = 1
            self.edge_wts = np.ones(1)
            L = ends[mesh.edge_lvert[:, 0]][:, None, :]
            rv = np.where(mesh.edge_rvert[:, 0] >= 0, mesh.edge_rvert[:, 0], 0)
            R = ends[rv][:, None, :]
            self.edge_basis_L = np.ascontiguousarray(L)
            self.edge_basis_R = np.ascontiguousarray(R)
            self.edge_param = np.array([0.5])
            return
        t = self.quad.edge_pts
        self.n_eq = len(t)
        self.edge_wts = self.quad.edge_wts
        self.edge_param = t
        vhat = _REF_VERTS[2]
        tables = {}
        for ia in range(3):
            for ib in range(3):
                if ia == ib:
                    continue
                pts = vhat[ia][None, :] + t[:, None] * (vhat[ib] - vhat[ia])[None, :]
                tables[(ia, ib)] = self.basis.eval(pts)
        E = mesh.n_edges
        self.edge_basis_L = np.empty((E, self.n_eq, self.nb))
        self.edge_basis_R = np.zeros((E, self.n_eq, self.nb))
        for e in range(E):
            ia, ib = mesh.edge_lvert[e]
            self.edge_basis_L[e] = tables[(ia, ib)]
            if mesh.edge_right[e] >= 0:
                ra, rb = mesh.edge_rvert[e]
                self.edge_basis_R[e] = tables[(ra, rb)]

    # -- evaluation ---------------------------------------------------------

    def values(self, coeffs, table):
        """Evaluate coefficient array (N, ncomp, nb) at table points (np, nb)."""
        return np.einsum("ecj,pj->epc", coeffs, table, optimize=True)

    def edge_values(self, coeffs, side):
        """Traces on every edge from the given side ('L' interior of left)."""
        mesh = self.mesh
        if side == "L":
            return np.einsum("ecj,eqj->eqc", coeffs[mesh.edge_left],
                             self.edge_basis_L, optimize=True)
        el = np.where(mesh.edge_right >= 0, mesh.edge_right, 0)
        return np.einsum("ecj,eqj->eqc", coeffs[el], self.edge_basis_R,
                         optimize=True)

    def cell_means(self, coeffs):
        """Cell averages, shape (N, ncomp)."""
        return coeffs[:, :, 0] * self.basis.const_value

    def gradients(self, coeffs, Einv, table_grad=None):
        """Physical gradients at volume points: (N, nq, ncomp, dim)."""
        G = self.Gref if table_grad is None else table_grad
        # grad_x phi_j = Einv^T grad_ref phi_j
        return np.einsum("ecj,qjd,edD->eqcD", coeffs, G, Einv, optimize=True)

    def physical_points(self, verts, table_pts):
        """Physical coordinates of reference points in every element."""
        mesh = self.mesh
        x0 = verts[mesh.elems[:, 0]]
        E = edge_matrices(mesh, verts)
        return x0[:, None, :] + np.einsum("edr,qr->eqd", E, np.atleast_2d(table_pts))

    # -- projection ---------------------------------------------------------

    def project(self, funcs, verts=None):
        """L2-project analytic scalar functions onto the space.

        ``funcs`` is one callable or a sequence; each is called with the
        coordinate arrays (x[, y]).  Returns coefficients (N, ncomp, nb).
        """
        if callable(funcs):
            funcs = [funcs]
        verts = self.mesh.verts if verts is None else verts
        pts = self.physical_points(verts, self.vol_pts)     # (N, nq, d)
        args = [pts[..., ax] for ax in range(self.dim)]
        coeffs = np.empty((self.mesh.n_elems, len(funcs), self.nb))
        WV = self.vol_wts[:, None] * self.V                  # (nq, nb)
        for c, f in enumerate(funcs):
            vals = np.asarray(f(*args), dtype=float)
            if vals.shape != pts.shape[:2]:
                vals = np.broadcast_to(vals, pts.shape[:2])
            coeffs[:, c, :] = vals @ WV
        return coeffs


@dataclass
class DGField:
    """Per-element modal coefficients of one or more scalar components."""

    space: DGSpace
    coeffs: np.ndarray  # (N, ncomp, nb)

    @property
    def ncomp(self):
        return self.coeffs.shape[1]

    def copy(self):
        return DGField(self.space, self.coeffs.copy())


def l2_project(f, space, verts=None):
    """Project an analytic function (or list of them) into the DG space."""
    return DGField(space, space.project(f, verts))


def evaluate(field, K, points, verts=None):
    """Evaluate a DGField at physical points inside element K."""
    space = field.space
    mesh = space.mesh
    verts = mesh.verts if verts is None else verts
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x0 = verts[mesh.elems[K, 0]]
    E = edge_matrices(mesh, verts)[K]
    ref = np.linalg.solve(E, (pts - x0).T).T
    table = field.space.basis.eval(ref)
    out = np.einsum("cj,pj->pc", field.coeffs[K], table)
    return out[0] if np.asarray(points).ndim == 1 else out


def cell_average(field, K=None):
    """Cell average(s): one element or all (None)."""
    means = field.space.cell_means(field.coeffs)
    return means if K is None else means[K]


def vertex_samples(space, coeffs):
    """Solution sampled at mesh vertices, averaged over incident elements."""
    mesh = space.mesh
    vals = np.einsum("ecj,pj->epc", coeffs, space.Vvert)     # (N, d+1, ncomp)
    out = np.zeros((mesh.n_verts, coeffs.shape[1]))
    cnt = np.zeros(mesh.n_verts)
    elems = mesh.elems
    for loc in range(mesh.dim + 1):
        np.add.at(out, elems[:, loc], vals[:, loc, :])
        np.add.at(cnt, elems[:, loc], 1.0)
    return out / cnt[:, None]


def total_integrals(space, coeffs, verts=None):
    """Integral of each component over the domain."""
    meas = signed_measures(space.mesh, verts)
    means = space.cell_means(coeffs)
    return meas @ means


def check_point_depth(space, U_coeffs, B_coeffs):
    """Water depth h = eta - B at the positivity check points, (N, ncp)."""
    eta = np.einsum("ej,pj->ep", U_coeffs[:, 0, :], space.Vcheck, optimize=True)
    bott = np.einsum("ej,pj->ep", B_coeffs[:, 0, :], space.Vcheck, optimize=True)
    return eta - bott


def mass_factor(space, measures):
    """Diagonal mass-matrix factor |K|/|K_ref| per element."""
    return measures / space.ref_measure
