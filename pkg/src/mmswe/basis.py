"""Orthonormal modal basis on the reference simplex.

The basis is built by Cholesky-orthonormalizing the monomials with respect to
the reference-element measure, so the Gram matrix is the identity and every
physical mass matrix under an affine map is the scaled identity
(|K|/|K_ref|) I.  The first function is the constant 1/sqrt(|K_ref|) and the
next ``dim`` functions are linear.
"""

import numpy as np

from .errors import InvalidArgumentError
from .quadrature import REF_MEASURE, gauss01, monomial_integral, triangle_rule

_MONOMIALS = {
    1: [(0,), (1,), (2,)],
    2: [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)],
}


def n_basis(k, dim):
    return k + 1 if dim == 1 else (k + 1) * (k + 2) // 2


class ModalBasis:
    """Degree-k orthonormal basis; evaluates values and gradients at points."""

    def __init__(self, k, dim):
        if k not in (1, 2) or dim not in (1, 2):
            raise InvalidArgumentError(f"unsupported basis (k={k}, dim={dim})")
        self.k = k
        self.dim = dim
        self.nb = n_basis(k, dim)
        self.powers = _MONOMIALS[dim][: self.nb]
        gram = np.empty((self.nb, self.nb))
        for i, pi in enumerate(self.powers):
            for j, pj in enumerate(self.powers):
                gram[i, j] = monomial_integral(tuple(a + b for a, b in zip(pi, pj)), dim)
        # phi = C m with C = L^{-1}, so C G C^T = I
        L = np.linalg.cholesky(gram)
        self.coeff = np.linalg.inv(L)
        self.const_value = self.coeff[0, 0]  # = 1/sqrt(|K_ref|)
        self.ref_measure = REF_MEASURE[dim]

    def _mono(self, pts):
        pts = np.atleast_2d(pts)
        vals = np.ones((len(pts), self.nb))
        for j, pw in enumerate(self.powers):
            for ax, p in enumerate(pw):
                if p:
                    vals[:, j] *= pts[:, ax] ** p
        return vals

    def _mono_grad(self, pts):
        pts = np.atleast_2d(pts)
        grads = np.zeros((len(pts), self.nb, self.dim))
        for j, pw in enumerate(self.powers):
            for ax in range(self.dim):
                if pw[ax] == 0:
                    continue
                g = np.full(len(pts), float(pw[ax]))
                for ax2, p in enumerate(pw):
                    q = p - 1 if ax2 == ax else p
                    if q:
                        g *= pts[:, ax2] ** q
                grads[:, j, ax] = g
        return grads

    def eval(self, pts):
        """Basis values at reference points; shape (npts, nb)."""
        return self._mono(pts) @ self.coeff.T

    def grad(self, pts):
        """Reference gradients at reference points; shape (npts, nb, dim)."""
        return np.einsum("ij,pjd->pid", self.coeff, self._mono_grad(pts))

    def orthonormality_defect(self):
        """Max |<phi_i, phi_j> - delta_ij| under an exact quadrature."""
        if self.dim == 1:
            x, w = gauss01(4)
            pts = x[:, None]
        else:
            pts, w = triangle_rule(6)
        V = self.eval(pts)
        gram = (V * w[:, None]).T @ V
        return float(np.max(np.abs(gram - np.eye(self.nb))))
