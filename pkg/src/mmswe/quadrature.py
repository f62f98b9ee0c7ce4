"""Quadrature rules on the reference interval [0,1] and reference triangle.

Reference elements: the unit interval (measure 1) and the triangle with
vertices (0,0), (1,0), (0,1) (measure 1/2).  Area-rule weights sum to the
reference measure, edge/interval parameter rules are given on [0,1] with
weights summing to 1.  Stated exactness degrees are verified against monomial
integrals at construction time.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

REF_MEASURE = {1: 1.0, 2: 0.5}


def gauss01(n):
    """n-point Gauss-Legendre rule on [0,1]; exact for degree 2n-1."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def gauss_lobatto01(n):
    """n-point Gauss-Lobatto rule on [0,1] (endpoints included), n in 3..5."""
    if n == 3:
        x = [0.0, 0.5, 1.0]
        w = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0]
    elif n == 4:
        s = 1.0 / math.sqrt(5.0)
        x = [0.0, 0.5 * (1 - s), 0.5 * (1 + s), 1.0]
        w = [1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0]
    elif n == 5:
        s = math.sqrt(3.0 / 7.0)
        x = [0.0, 0.5 * (1 - s), 0.5, 0.5 * (1 + s), 1.0]
        w = [1.0 / 20.0, 49.0 / 180.0, 16.0 / 45.0, 49.0 / 180.0, 1.0 / 20.0]
    else:
        raise InvalidArgumentError(f"Gauss-Lobatto rule with {n} points not tabulated")
    return np.asarray(x), np.asarray(w)


def _tri_orbit3(a):
    return [(a, a), (a, 1 - 2 * a), (1 - 2 * a, a)]


def _tri_orbit6(a, b):
    c = 1 - a - b
    return [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)]


def triangle_rule(degree):
    """Symmetric positive-weight rule on the reference triangle.

    Returns (points (n,2), weights (n,)) with weights summing to 1/2.
    Available exactness degrees: 4 (6 points) and 6 (12 points).
    """
    if degree <= 4:
        pts = _tri_orbit3(0.445948490915965) + _tri_orbit3(0.091576213509771)
        wts = [0.223381589678011] * 3 + [0.109951743655322] * 3
    elif degree <= 6:
        pts = (
            _tri_orbit3(0.249286745170910)
            + _tri_orbit3(0.063089014491502)
            + _tri_orbit6(0.310352451033785, 0.053145049844816)
        )
        wts = [0.116786275726379] * 3 + [0.050844906370207] * 3 + [0.082851075618374] * 6
    else:
        raise InvalidArgumentError(f"no triangle rule of degree {degree} tabulated")
    return np.asarray(pts), 0.5 * np.asarray(wts)


def triangle_lattice(order):
    """Barycentric lattice points (i/order, j/order) on the reference triangle."""
    pts = []
    for i in range(order + 1):
        for j in range(order + 1 - i):
            pts.append((i / order, j / order))
    return np.asarray(pts)


def monomial_integral(powers, dim):
    """Exact integral of the reference-element monomial with given powers."""
    if dim == 1:
        (p,) = powers
        return 1.0 / (p + 1)
    p, q = powers
    return math.factorial(p) * math.factorial(q) / math.factorial(p + q + 2)


def _verify_exactness(pts, wts, degree, dim):
    pts = np.atleast_2d(pts.T).T if pts.ndim == 1 else pts
    for total in range(degree + 1):
        for p in range(total + 1):
            powers = (p,) if dim == 1 else (p, total - p)
            if dim == 1 and p != total:
                continue
            vals = np.ones(len(wts))
            for ax, pw in enumerate(powers):
                vals = vals * pts[:, ax] ** pw
            approx = float(wts @ vals)
            exact = monomial_integral(powers, dim)
            if abs(approx - exact) > 1e-12 * max(1.0, abs(exact)):
                raise AssertionError(
                    f"quadrature not exact at degree {total} (dim {dim}): "
                    f"{approx} vs {exact}"
                )


def pp_check_points(k, dim):
    """Water-depth check points for the linear-scaling positivity limiter.

    1D: (k+2)-point Gauss-Lobatto.  2D: the three edge-aligned families built
    from (k+2)-point Gauss-Lobatto (toward each vertex) tensored with the
    (k+2)-point Gauss edge parameters, so the set contains the element
    vertices and the edge flux quadrature points.
    """
    gl, _ = gauss_lobatto01(k + 2)
    if dim == 1:
        return gl[:, None]
    ge, _ = gauss01(k + 2)
    vhat = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    pts = []
    for apex in range(3):
        others = [v for v in range(3) if v != apex]
        for lb in gl:
            for ga in ge:
                lam = np.zeros(3)
                lam[apex] = lb
                lam[others[0]] = (1 - lb) * ga
                lam[others[1]] = (1 - lb) * (1 - ga)
                pts.append(lam @ vhat)
    # dedupe (the apex point repeats for every Gauss parameter)
    uniq = []
    for p in pts:
        if not any(abs(p[0] - q[0]) < 1e-12 and abs(p[1] - q[1]) < 1e-12 for q in uniq):
            uniq.append((p[0], p[1]))
    return np.asarray(uniq)


@dataclass(frozen=True)
class QuadratureSet:
    """Reference rules for one polynomial degree and dimension."""

    dim: int
    degree: int
    vol_pts: np.ndarray      # (nq, dim)
    vol_wts: np.ndarray      # sums to the reference measure
    vol_degree: int
    edge_pts: np.ndarray     # (nqe,) parameters on [0,1]; empty in 1D
    edge_wts: np.ndarray
    edge_degree: int
    check_pts: np.ndarray    # (ncp, dim) positivity check points

    @property
    def ref_measure(self):
        return REF_MEASURE[self.dim]


def make_quadrature(k, dim):
    """Build the verified rule set for P^k elements in the given dimension."""
    if k not in (1, 2):
        raise InvalidArgumentError(f"polynomial degree {k} not supported")
    if dim == 1:
        nvol = {1: 2, 2: 4}[k]
        xq, wq = gauss01(nvol)
        vol_pts, vol_wts = xq[:, None], wq
        vol_degree = 2 * nvol - 1
        edge_pts = np.zeros(0)
        edge_wts = np.zeros(0)
        edge_degree = 0
    elif dim == 2:
        vol_degree = {1: 4, 2: 6}[k]
        vol_pts, vol_wts = triangle_rule(vol_degree)
        edge_pts, edge_wts = gauss01(k + 2)
        edge_degree = 2 * (k + 2) - 1
    else:
        raise InvalidArgumentError(f"dimension {dim} not supported")
    _verify_exactness(vol_pts, vol_wts, vol_degree, dim)
    if dim == 2:
        _verify_exactness(edge_pts[:, None], edge_wts, edge_degree, 1)
    return QuadratureSet(
        dim=dim,
        degree=k,
        vol_pts=vol_pts,
        vol_wts=vol_wts,
        vol_degree=vol_degree,
        edge_pts=edge_pts,
        edge_wts=edge_wts,
        edge_degree=edge_degree,
        check_pts=pp_check_points(k, dim),
    )
