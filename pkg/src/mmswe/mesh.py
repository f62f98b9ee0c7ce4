"""Simplicial meshes (1D intervals, 2D triangles) and per-step mesh motion.

Topology (connectivity, edges, patches, boundary pairing) is built once and
shared by every mesh in a run; only vertex coordinates change when the mesh
moves.  All triangles are stored counterclockwise so the affine-map Jacobian
determinant is positive, and each edge carries a canonical direction taken
from its left element's boundary traversal, making the stored normal the
outward normal of the left element.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidConfigError, MeshSingularError, OutOfRangeError
from .quadrature import REF_MEASURE

PERIODIC = "periodic"
TRANSMISSIVE = "transmissive"
REFLECTIVE = "reflective"

EDGE_INTERIOR = 0
EDGE_PERIODIC = 1
EDGE_TRANSMISSIVE = 2
EDGE_REFLECTIVE = 3

_KIND = {TRANSMISSIVE: EDGE_TRANSMISSIVE, REFLECTIVE: EDGE_REFLECTIVE}


@dataclass
class SimplicialMesh:
    """Interval or triangle mesh with fixed topology and movable vertices."""

    dim: int
    verts: np.ndarray          # (Nv, dim)
    elems: np.ndarray          # (N, dim+1), CCW in 2D
    box_lo: np.ndarray
    box_hi: np.ndarray
    boundary: str
    # edges
    edge_verts: np.ndarray     # (E, dim) vertex ids; canonical direction in 2D
    edge_left: np.ndarray      # (E,)
    edge_right: np.ndarray     # (E,), -1 on non-periodic boundary
    edge_kind: np.ndarray      # (E,)
    edge_lvert: np.ndarray     # (E, dim) local indices of edge vertices in left elem
    edge_rvert: np.ndarray     # (E, dim) local indices in right elem (periodic: shifted)
    edge_sign1d: np.ndarray    # (E,) outward normal of left element (1D only)
    edge_rshift: np.ndarray    # (E, dim) coordinate shift right side -> left side
    # vertex classification
    corner: np.ndarray         # (Nv,) bool
    on_boundary: np.ndarray    # (Nv,) bool
    frozen: np.ndarray         # (Nv, dim) bool, mesh-velocity components forced to 0
    # incidence
    patch_ptr: np.ndarray      # CSR over vertices -> incident elements
    patch_elem: np.ndarray
    patch_local: np.ndarray    # local index of the vertex within patch_elem
    vadj_ptr: np.ndarray       # CSR vertex -> neighbor vertices (excluding self)
    vadj: np.ndarray
    elem_nbr: np.ndarray       # (N, dim+1) neighbor across local edge, -1 if wall
    elem_edge: np.ndarray      # (N, dim+1) global edge id of local edge

    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n_elems(self):
        return len(self.elems)

    @property
    def n_verts(self):
        return len(self.verts)

    @property
    def n_edges(self):
        return len(self.edge_left)

    def with_vertices(self, verts):
        """New mesh sharing this topology with different vertex coordinates."""
        out = SimplicialMesh(**{k: getattr(self, k) for k in _TOPOLOGY_FIELDS},
                             verts=np.ascontiguousarray(verts, dtype=float))
        return out

    def domain_measure(self):
        return float(np.prod(self.box_hi - self.box_lo))


_TOPOLOGY_FIELDS = [f for f in SimplicialMesh.__dataclass_fields__
                    if f not in ("verts", "_cache")]


# ---------------------------------------------------------------------------
# construction


def build_initial_mesh(domain, resolution, pattern=None, boundary=TRANSMISSIVE):
    """Uniform mesh of an axis-aligned box.

    1D: ``domain=(a, b)``, ``resolution=n`` segments.  2D: ``domain`` is
    ``((ax, bx), (ay, by))``, ``resolution=(nx, ny)`` cells, and the
    ``four-triangles`` pattern splits each cell into 4 triangles around the
    cell center, so N = nx*ny*4.
    """
    dom = np.asarray(domain, dtype=float)
    if dom.ndim == 1:
        if pattern not in (None, "segments"):
            raise InvalidConfigError(f"pattern {pattern!r} invalid for a 1D domain")
        n = int(resolution)
        if n < 1:
            raise InvalidConfigError(f"resolution must be >= 1, got {resolution}")
        a, b = float(dom[0]), float(dom[1])
        if not b > a:
            raise InvalidConfigError("empty domain interval")
        verts = np.linspace(a, b, n + 1)[:, None]
        elems = np.stack([np.arange(n), np.arange(n) + 1], axis=1)
        return _assemble_mesh(1, verts, elems, np.array([a]), np.array([b]), boundary)

    if pattern not in (None, "four-triangles", "four-triangles-per-cell"):
        raise InvalidConfigError(f"unknown 2D mesh pattern {pattern!r}")
    try:
        nx, ny = (int(r) for r in np.atleast_1d(resolution))
    except (TypeError, ValueError) as exc:
        raise InvalidConfigError(f"bad 2D resolution {resolution!r}") from exc
    if nx < 1 or ny < 1:
        raise InvalidConfigError(f"resolution must be >= 1 per axis, got {resolution}")
    (ax, bx), (ay, by) = dom
    if not (bx > ax and by > ay):
        raise InvalidConfigError("empty domain box")
    xs = np.linspace(ax, bx, nx + 1)
    ys = np.linspace(ay, by, ny + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="xy")
    corners = np.stack([gx.ravel(), gy.ravel()], axis=1)          # j*(nx+1)+i
    cx = 0.5 * (xs[:-1] + xs[1:])
    cy = 0.5 * (ys[:-1] + ys[1:])
    gx, gy = np.meshgrid(cx, cy, indexing="xy")
    centers = np.stack([gx.ravel(), gy.ravel()], axis=1)          # j*nx+i
    verts = np.vstack([corners, centers])
    ncor = len(corners)
    elems = []
    for j in range(ny):
        for i in range(nx):
            v00 = j * (nx + 1) + i
            v10 = v00 + 1
            v01 = v00 + (nx + 1)
            v11 = v01 + 1
            c = ncor + j * nx + i
            elems += [(v00, v10, c), (v10, v11, c), (v11, v01, c), (v01, v00, c)]
    elems = np.asarray(elems)
    return _assemble_mesh(2, verts, elems,
                          np.array([ax, ay]), np.array([bx, by]), boundary)


def _assemble_mesh(dim, verts, elems, lo, hi, boundary):
    verts = np.ascontiguousarray(verts, dtype=float)
    elems = np.ascontiguousarray(elems, dtype=np.int64)
    if boundary not in (PERIODIC, TRANSMISSIVE, REFLECTIVE):
        raise InvalidConfigError(f"unknown boundary rule {boundary!r}")
    n, nv = len(elems), len(verts)

    # patches
    order = np.argsort(elems.ravel(), kind="stable")
    patch_ptr = np.zeros(nv + 1, dtype=np.int64)
    np.add.at(patch_ptr, elems.ravel() + 1, 1)
    patch_ptr = np.cumsum(patch_ptr)
    patch_elem = (order // (dim + 1)).astype(np.int64)
    patch_local = (order % (dim + 1)).astype(np.int64)

    if dim == 1:
        mesh = _edges_1d(verts, elems, lo, hi, boundary)
    else:
        mesh = _edges_2d(verts, elems, lo, hi, boundary)
    (edge_verts, edge_left, edge_right, edge_kind, edge_lvert, edge_rvert,
     edge_sign1d, edge_rshift, elem_nbr, elem_edge) = mesh

    # vertex adjacency (ring 1, excluding self)
    pairs = set()
    if dim == 1:
        for e in elems:
            pairs.add((e[0], e[1]))
    else:
        for e in elems:
            for a in range(3):
                pairs.add((e[a], e[(a + 1) % 3]))
    adj = [[] for _ in range(nv)]
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    vadj_ptr = np.zeros(nv + 1, dtype=np.int64)
    for i in range(nv):
        adj[i] = sorted(set(adj[i]))
        vadj_ptr[i + 1] = vadj_ptr[i] + len(adj[i])
    vadj = np.asarray([v for lst in adj for v in lst], dtype=np.int64)

    tol = 1e-9 * float(np.max(hi - lo))
    on_lo = np.abs(verts - lo) < tol
    on_hi = np.abs(verts - hi) < tol
    on_side = on_lo | on_hi
    on_boundary = on_side.any(axis=1)
    corner = on_side.all(axis=1) & on_boundary
    frozen = np.zeros((nv, dim), dtype=bool)
    if dim == 1:
        frozen[on_boundary, 0] = True
    else:
        if boundary == PERIODIC:
            frozen[on_boundary] = True  # keep periodic edge pairing intact
        else:
            frozen[:, 0] |= on_side[:, 0]
            frozen[:, 1] |= on_side[:, 1]

    mesh = SimplicialMesh(
        dim=dim, verts=verts, elems=elems, box_lo=lo, box_hi=hi,
        boundary=boundary,
        edge_verts=edge_verts, edge_left=edge_left, edge_right=edge_right,
        edge_kind=edge_kind, edge_lvert=edge_lvert, edge_rvert=edge_rvert,
        edge_sign1d=edge_sign1d, edge_rshift=edge_rshift,
        corner=corner, on_boundary=on_boundary, frozen=frozen,
        patch_ptr=patch_ptr, patch_elem=patch_elem, patch_local=patch_local,
        vadj_ptr=vadj_ptr, vadj=vadj, elem_nbr=elem_nbr, elem_edge=elem_edge,
    )
    if np.any(signed_measures(mesh, verts) <= 0):
        raise MeshSingularError("initial mesh has a non-positive element")
    return mesh


def _edges_1d(verts, elems, lo, hi, boundary):
    n = len(elems)
    rows = []  # (vertex, left, right, kind, lloc, rloc, sign)
    for i in range(1, n):
        rows.append((elems[i - 1][1], i - 1, i, EDGE_INTERIOR, 1, 0, 1.0, 0.0))
    if boundary == PERIODIC:
        rows.append((elems[n - 1][1], n - 1, 0, EDGE_PERIODIC, 1, 0, 1.0,
                     float(hi[0] - lo[0])))
    else:
        kind = _KIND[boundary]
        rows.append((elems[0][0], 0, -1, kind, 0, -1, -1.0, 0.0))
        rows.append((elems[n - 1][1], n - 1, -1, kind, 1, -1, 1.0, 0.0))
    rows = sorted(rows, key=lambda r: (r[1], r[6]))
    edge_verts = np.array([[r[0]] for r in rows], dtype=np.int64)
    edge_left = np.array([r[1] for r in rows], dtype=np.int64)
    edge_right = np.array([r[2] for r in rows], dtype=np.int64)
    edge_kind = np.array([r[3] for r in rows], dtype=np.int64)
    edge_lvert = np.array([[r[4]] for r in rows], dtype=np.int64)
    edge_rvert = np.array([[r[5]] for r in rows], dtype=np.int64)
    edge_sign = np.array([r[6] for r in rows], dtype=float)
    edge_rshift = np.array([[r[7]] for r in rows], dtype=float)

    elem_nbr = np.full((n, 2), -1, dtype=np.int64)
    elem_edge = np.full((n, 2), -1, dtype=np.int64)
    for eid, r in enumerate(rows):
        left, right = r[1], r[2]
        if r[6] > 0:
            elem_edge[left, 1] = eid
            if right >= 0:
                elem_nbr[left, 1] = right
                elem_edge[right, 0] = eid
                elem_nbr[right, 0] = left
        else:
            elem_edge[left, 0] = eid
    return (edge_verts, edge_left, edge_right, edge_kind, edge_lvert,
            edge_rvert, edge_sign, edge_rshift, elem_nbr, elem_edge)


def _edges_2d(verts, elems, lo, hi, boundary):
    n = len(elems)
    edge_of = {}
    rows = []  # dicts
    for e in range(n):
        for a in range(3):
            va, vb = elems[e][a], elems[e][(a + 1) % 3]
            key = (min(va, vb), max(va, vb))
            if key not in edge_of:
                edge_of[key] = len(rows)
                rows.append({"v": (va, vb), "left": e, "lloc": (a, (a + 1) % 3),
                             "right": -1, "rloc": (-1, -1), "kind": EDGE_INTERIOR,
                             "shift": (0.0, 0.0), "lface": a, "rface": -1})
            else:
                r = rows[edge_of[key]]
                r["right"] = e
                ra = list(elems[e]).index(r["v"][0])
                rb = list(elems[e]).index(r["v"][1])
                r["rloc"] = (ra, rb)
                r["rface"] = _face_of(ra, rb)
    # classify boundary edges and pair periodic ones
    boundary_rows = [i for i, r in enumerate(rows) if r["right"] < 0]
    if boundary == PERIODIC:
        _pair_periodic(rows, boundary_rows, verts, elems, lo, hi)
        rows = [r for r in rows if not r.get("drop", False)]
    else:
        for i in boundary_rows:
            rows[i]["kind"] = _KIND[boundary]

    edge_verts = np.array([r["v"] for r in rows], dtype=np.int64)
    edge_left = np.array([r["left"] for r in rows], dtype=np.int64)
    edge_right = np.array([r["right"] for r in rows], dtype=np.int64)
    edge_kind = np.array([r["kind"] for r in rows], dtype=np.int64)
    edge_lvert = np.array([r["lloc"] for r in rows], dtype=np.int64)
    edge_rvert = np.array([r["rloc"] for r in rows], dtype=np.int64)
    edge_sign = np.ones(len(rows))
    edge_rshift = np.array([r["shift"] for r in rows], dtype=float)

    elem_nbr = np.full((n, 3), -1, dtype=np.int64)
    elem_edge = np.full((n, 3), -1, dtype=np.int64)
    for eid, r in enumerate(rows):
        elem_edge[r["left"], r["lface"]] = eid
        if r["right"] >= 0:
            elem_nbr[r["left"], r["lface"]] = r["right"]
            elem_edge[r["right"], r["rface"]] = eid
            elem_nbr[r["right"], r["rface"]] = r["left"]
    return (edge_verts, edge_left, edge_right, edge_kind, edge_lvert,
            edge_rvert, edge_sign, edge_rshift, elem_nbr, elem_edge)


def _face_of(ra, rb):
    # local face index of the directed pair: faces are (0,1),(1,2),(2,0)
    for f in range(3):
        if {f, (f + 1) % 3} == {ra, rb}:
            return f
    raise AssertionError("edge vertices not a local face")


def _pair_periodic(rows, boundary_rows, verts, elems, lo, hi):
    span = hi - lo
    tol = 1e-9 * float(np.max(span))

    def side_of(r):
        p = 0.5 * (verts[r["v"][0]] + verts[r["v"][1]])
        for ax in range(2):
            if abs(p[ax] - lo[ax]) < tol:
                return ax, 0
            if abs(p[ax] - hi[ax]) < tol:
                return ax, 1
        raise MeshSingularError("boundary edge not on the domain box")

    groups = {}
    for i in boundary_rows:
        groups.setdefault(side_of(rows[i]), []).append(i)
    for ax in range(2):
        low = groups.get((ax, 0), [])
        high = groups.get((ax, 1), [])
        if len(low) != len(high):
            raise MeshSingularError("periodic boundary edges do not pair up")
        other = 1 - ax
        keymid = lambda i: 0.5 * (verts[rows[i]["v"][0]][other] + verts[rows[i]["v"][1]][other])
        low = sorted(low, key=keymid)
        high = sorted(high, key=keymid)
        for i, j in zip(low, high):
            r, p = rows[i], rows[j]
            if abs(keymid(i) - keymid(j)) > tol:
                raise MeshSingularError("periodic edges misaligned")
            # keep r (low side); its exterior neighbor is p's element
            r["right"] = p["left"]
            r["kind"] = EDGE_PERIODIC
            shift = np.zeros(2)
            shift[ax] = span[ax]  # add to right-side coords to land on left side? see below
            r["shift"] = tuple(-shift)  # x_left + (-shift) maps... stored for reference
            # match p's vertices to r's by the transverse coordinate
            va, vb = r["v"]
            pa, pb = p["v"]
            if abs(verts[pa][other] - verts[va][other]) < tol:
                rpair = (pa, pb)
            else:
                rpair = (pb, pa)
            e = p["left"]
            ra = list(elems[e]).index(rpair[0])
            rb = list(elems[e]).index(rpair[1])
            r["rloc"] = (ra, rb)
            r["rface"] = _face_of(ra, rb)
            p["drop"] = True


# ---------------------------------------------------------------------------
# geometry


def edge_matrices(mesh, verts=None):
    """Edge matrices E_K = [x_1-x_0, ..., x_d-x_0] per element, (N, d, d)."""
    v = mesh.verts if verts is None else verts
    x0 = v[mesh.elems[:, 0]]
    cols = [v[mesh.elems[:, j]] - x0 for j in range(1, mesh.dim + 1)]
    return np.stack(cols, axis=2)


def signed_measures(mesh, verts=None):
    """Signed measures |K| (lengths or areas) per element."""
    E = edge_matrices(mesh, verts)
    if mesh.dim == 1:
        return E[:, 0, 0]
    return 0.5 * (E[:, 0, 0] * E[:, 1, 1] - E[:, 0, 1] * E[:, 1, 0])


def min_heights(mesh, verts=None):
    """Minimum element heights a_K; in 1D this is the element length."""
    v = mesh.verts if verts is None else verts
    if mesh.dim == 1:
        return signed_measures(mesh, v)
    area = signed_measures(mesh, v)
    hmin = np.full(len(area), np.inf)
    for a in range(3):
        d = v[mesh.elems[:, (a + 1) % 3]] - v[mesh.elems[:, a]]
        ell = np.hypot(d[:, 0], d[:, 1])
        hmin = np.minimum(hmin, 2.0 * area / ell)
    return hmin


def element_geometry(mesh, K, verts=None):
    """Geometry record for one element: measure, min height, normals, lengths."""
    v = mesh.verts if verts is None else verts
    meas = float(signed_measures(mesh, v)[K])
    if meas <= 0:
        raise MeshSingularError(f"element {K} has measure {meas}")
    if mesh.dim == 1:
        return {"measure": meas, "a_min": meas,
                "normals": np.array([-1.0, 1.0]), "edge_lengths": np.ones(2)}
    xs = v[mesh.elems[K]]
    normals, lengths = [], []
    for a in range(3):
        d = xs[(a + 1) % 3] - xs[a]
        ell = float(np.hypot(d[0], d[1]))
        normals.append(np.array([d[1], -d[0]]) / ell)
        lengths.append(ell)
    return {"measure": meas, "a_min": float(min_heights(mesh, v)[K]),
            "normals": np.array(normals), "edge_lengths": np.array(lengths)}


def edge_geometry(mesh, verts=None):
    """Per-edge outward normal (from the left element) and length.

    1D: normals are the stored +-1 signs and lengths are 1 (point 'edges').
    """
    v = mesh.verts if verts is None else verts
    if mesh.dim == 1:
        return mesh.edge_sign1d[:, None].copy(), np.ones(mesh.n_edges)
    a = v[mesh.edge_verts[:, 0]]
    b = v[mesh.edge_verts[:, 1]]
    d = b - a
    ell = np.hypot(d[:, 0], d[:, 1])
    if np.any(ell <= 0):
        raise MeshSingularError("zero-length edge")
    normals = np.stack([d[:, 1], -d[:, 0]], axis=1) / ell[:, None]
    return normals, ell


def vertex_patches(mesh):
    """Element patch of each vertex: (patch_ptr, patch_elem, patch_local)."""
    return mesh.patch_ptr, mesh.patch_elem, mesh.patch_local


# ---------------------------------------------------------------------------
# motion


@dataclass
class MeshMotion:
    """Linear-in-time vertex motion over one step [t0, t0+dt]."""

    mesh: SimplicialMesh
    x0: np.ndarray
    x1: np.ndarray
    t0: float
    dt: float

    @property
    def xdot(self):
        if self.dt == 0.0:
            return np.zeros_like(self.x0)
        return (self.x1 - self.x0) / self.dt

    @property
    def is_stationary(self):
        return np.array_equal(self.x0, self.x1)

    def positions(self, t):
        if not (self.t0 - 1e-14 <= t <= self.t0 + self.dt + 1e-14):
            raise OutOfRangeError(
                f"t={t} outside the motion step [{self.t0}, {self.t0 + self.dt}]")
        if self.dt == 0.0 or t <= self.t0:
            return self.x0.copy()
        if t >= self.t0 + self.dt:
            return self.x1.copy()
        s = (t - self.t0) / self.dt
        return (1.0 - s) * self.x0 + s * self.x1


def stationary_motion(mesh, t0=0.0, dt=0.0):
    return MeshMotion(mesh=mesh, x0=mesh.verts.copy(), x1=mesh.verts.copy(),
                      t0=t0, dt=dt)


def mesh_at_time(motion, base, t):
    """Vertex coordinates of the interpolated mesh at time t in the step."""
    del base  # topology is carried by the motion's mesh
    return motion.positions(t)


def mesh_velocity(motion, K, x, t=None):
    """Piecewise-linear mesh velocity at point x inside element K."""
    mesh = motion.mesh
    verts = motion.x0 if t is None else motion.positions(t)
    xd = motion.xdot
    lam = barycentric(mesh, verts, K, np.asarray(x, dtype=float))
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam / lam.sum()
    return lam @ xd[mesh.elems[K]]


def mesh_divergence(motion, t=None, verts=None, measures=None):
    """Per-element divergence of the mesh velocity on the mesh at time t.

    ``measures`` overrides the element measures in the denominator (used by
    the discrete geometric-conservation update, which divides by its own
    running areas).
    """
    mesh = motion.mesh
    if verts is None:
        verts = motion.x0 if t is None else motion.positions(t)
    numer = divergence_numerators(mesh, verts, motion.xdot)
    if measures is None:
        measures = signed_measures(mesh, verts)
    return numer * REF_MEASURE[mesh.dim] / measures


def divergence_numerators(mesh, verts, xdot):
    """det(E)*div(Xdot) per element, from vertex coordinates and velocities.

    div(Xdot) = numerator * |K_ref| / |K|; the numerator depends only on the
    vertex coordinates at the evaluation time, not on which measure is used
    in the denominator.
    """
    el = mesh.elems
    if mesh.dim == 1:
        return xdot[el[:, 1], 0] - xdot[el[:, 0], 0]
    x0, x1, x2 = verts[el[:, 0]], verts[el[:, 1]], verts[el[:, 2]]
    u1, u2 = xdot[el[:, 1]] - xdot[el[:, 0]], xdot[el[:, 2]] - xdot[el[:, 0]]
    a, b = x1 - x0, x2 - x0
    # d/dt det[a+t u1, b+t u2] at t=0
    return (u1[:, 0] * b[:, 1] - u1[:, 1] * b[:, 0]
            + a[:, 0] * u2[:, 1] - a[:, 1] * u2[:, 0])


def barycentric(mesh, verts, K, x):
    """Barycentric coordinates of point x in element K."""
    xs = verts[mesh.elems[K]]
    if mesh.dim == 1:
        L = xs[1, 0] - xs[0, 0]
        t = (x[0] - xs[0, 0]) / L
        return np.array([1.0 - t, t])
    E = np.stack([xs[1] - xs[0], xs[2] - xs[0]], axis=1)
    lam12 = np.linalg.solve(E, x - xs[0])
    return np.array([1.0 - lam12[0] - lam12[1], lam12[0], lam12[1]])


def check_motion_measures(motion):
    """Positive element measures at t0, midpoint, and t0+dt."""
    mesh = motion.mesh
    for s in (0.0, 0.5, 1.0):
        v = (1.0 - s) * motion.x0 + s * motion.x1
        if np.any(signed_measures(mesh, v) <= 0):
            return False
    return True


# ---------------------------------------------------------------------------
# export


def write_mesh_snapshot(path, mesh, verts=None):
    """One CSV row per element: id, vertex ids, vertex coordinates."""
    v = mesh.verts if verts is None else verts
    d = mesh.dim
    cols = ["element"]
    cols += [f"v{j}" for j in range(d + 1)]
    for j in range(d + 1):
        cols += ([f"x{j}"] if d == 1 else [f"x{j}", f"y{j}"])
    with open(path, "w") as f:
        f.write(",".join(cols) + "\n")
        for e in range(mesh.n_elems):
            ids = mesh.elems[e]
            coords = v[ids].ravel()
            row = [str(e)] + [str(i) for i in ids] + [f"{c:.17g}" for c in coords]
            f.write(",".join(row) + "\n")


def append_trajectory(path, t, verts, header_nv=None):
    """Append one 1D mesh-trajectory row: t followed by all vertex positions."""
    import os

    new = not os.path.exists(path)
    with open(path, "a") as f:
        if new:
            nv = header_nv if header_nv is not None else len(verts)
            f.write("t," + ",".join(f"x{i}" for i in range(nv)) + "\n")
        f.write(f"{t:.17g}," + ",".join(f"{x:.17g}" for x in np.ravel(verts)) + "\n")
