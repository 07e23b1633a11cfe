"""Projections onto Coxeter planes and the H3/H4 parallel spaces.

Everything here is floating point.  Exact points come in, are mapped to
Euclidean coordinates (through the Cholesky factor of the ambient Gram
matrix when there is one) and are then projected with an orthonormal
basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .exactnum import GoldenMatrix, Vector, vector_to_float
from .rootsys import RootSystem

__all__ = [
    "ProjectionError",
    "ProjectionBasis",
    "FloatPointSet",
    "euclidean_map",
    "an_k_coordinates",
    "an_coxeter_plane",
    "coxeter_plane_basis",
    "span_basis",
    "h_parallel_basis",
    "aligned_h_frame",
    "restrict",
    "rotation_angle",
    "project",
    "project_vectors",
    "rotation_invariance_check",
    "shell_classify",
    "square_lattice_fit",
    "emit",
    "read_csv",
]

DEFAULT_TOL = 1e-8


class ProjectionError(ValueError):
    """Degenerate eigenplane, rank deficiency or dimension mismatch."""


@dataclass(frozen=True)
class ProjectionBasis:
    """Orthonormal ``rows`` (Euclidean) composed with the ambient ``metric``.

    A point ``x`` in ambient coordinates projects to ``rows @ metric @ x``.
    """

    rows: np.ndarray
    kind: str
    metric: np.ndarray | None = None

    @property
    def matrix(self) -> np.ndarray:
        return self.rows if self.metric is None else self.rows @ self.metric

    @property
    def dim(self) -> int:
        return self.rows.shape[0]


@dataclass
class FloatPointSet:
    points: np.ndarray
    source: str = ""
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(0, 2) if pts.size == 0 else pts.reshape(1, -1)
        self.points = pts

    def __len__(self):
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def euclidean_map(gram: GoldenMatrix | None, dim: int) -> np.ndarray | None:
    """``L`` with ``G = L^T L``, or None for an orthonormal ambient."""
    if gram is None:
        return None
    G = gram.to_float()
    return np.linalg.cholesky(G).T


def _euclid(sys_or_gram, dim) -> np.ndarray | None:
    if isinstance(sys_or_gram, RootSystem):
        return euclidean_map(sys_or_gram.gram, sys_or_gram.ambient_dim)
    return euclidean_map(sys_or_gram, dim)


# --------------------------------------------------------------- A_n frames


def an_k_coordinates(n: int) -> np.ndarray:
    """Rows are real coordinates of ``k_1 .. k_{n+1}`` built from roots of unity.

    With ``h = n + 1`` each ``k_j`` is ``sqrt(2/h)`` times the complex
    components ``exp(2 pi i m j / h)``, ``m = 1 .. floor((h-1)/2)``, written
    as (re, im) pairs; for odd ``n`` a final real component
    ``(-1)**j / sqrt(2)`` completes the frame.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    h = n + 1
    j = np.arange(1, h + 1)
    cols = []
    for m in range(1, (h - 1) // 2 + 1):
        phase = 2 * np.pi * m * j / h
        cols.append(np.cos(phase))
        cols.append(np.sin(phase))
    if h % 2 == 0:
        cols.append((-1.0) ** j / math.sqrt(2))
    return math.sqrt(2.0 / h) * np.stack(cols, axis=1)


def an_coxeter_plane(n: int) -> ProjectionBasis:
    """Plane of the first complex component of the k-frame, in l-coordinates.

    On sum-zero vectors this is the map ``x -> sum_j x_j * first(k_j)``;
    the cyclic Coxeter element ``k_j -> k_{j+1}`` rotates it by ``2 pi/h``.
    """
    h = n + 1
    j = np.arange(1, h + 1)
    c = math.sqrt(2.0 / h)
    rows = c * np.stack([np.cos(2 * np.pi * j / h), np.sin(2 * np.pi * j / h)])
    return ProjectionBasis(rows, "coxeter_plane")


# --------------------------------------------------------------- eigenplanes


def _to_euclid(M: np.ndarray, L: np.ndarray | None) -> np.ndarray:
    if L is None:
        return M
    return L @ M @ np.linalg.inv(L)


def restrict(M: GoldenMatrix | np.ndarray, basis: ProjectionBasis, check: float = 1e-9) -> np.ndarray:
    """Matrix of ``M`` on the span of ``basis``; raises if the span is not invariant."""
    Mf = M.to_float() if isinstance(M, GoldenMatrix) else np.asarray(M, dtype=float)
    Me = _to_euclid(Mf, basis.metric)
    Q = basis.rows
    R = Q @ Me @ Q.T
    if np.abs(Me @ Q.T - Q.T @ R).max() > check:
        raise ProjectionError("subspace is not invariant under the matrix")
    return R


def rotation_angle(R2: np.ndarray) -> float:
    """Counter-clockwise angle in [0, 2 pi) of a 2x2 rotation."""
    return math.atan2(R2[1, 0], R2[0, 0]) % (2 * math.pi)


def coxeter_plane_basis(
    sys: RootSystem, R1: GoldenMatrix | None = None, R2: GoldenMatrix | None = None
) -> ProjectionBasis:
    """Invariant plane on which ``R1 R2`` rotates by ``+2 pi / h``.

    The orientation of the returned basis is fixed by that sign.
    """
    from .group import dihedral_generators

    h = sys.coxeter_number
    if R1 is None or R2 is None:
        R1, R2, h = dihedral_generators(sys)
    L = _euclid(sys, sys.ambient_dim)
    C = _to_euclid((R1 @ R2).to_float(), L)
    w, V = np.linalg.eig(C)
    target = np.exp(2j * np.pi / h)
    dist = np.abs(w - target)
    order = np.argsort(dist)
    i = order[0]
    if dist[i] > 1e-8 or (len(w) > 1 and dist[order[1]] < 1e-8):
        raise ProjectionError("eigenvalue exp(2 pi i/h) is missing or not simple")
    v = V[:, i]
    x, y = v.real, -v.imag
    x = x / np.linalg.norm(x)
    y = y - (y @ x) * x
    y = y / np.linalg.norm(y)
    basis = ProjectionBasis(np.stack([x, y]), "coxeter_plane", L)
    ang = rotation_angle(restrict(R1 @ R2, basis))
    if abs(ang - 2 * math.pi / h) > 1e-9:
        raise ProjectionError(f"plane rotation {ang} differs from 2pi/{h}")
    return basis


def span_basis(vectors: Sequence[Vector], metric: np.ndarray | None = None, kind: str = "span") -> ProjectionBasis:
    """Orthonormal basis (Gram-Schmidt in the given order) of the span."""
    X = np.array([vector_to_float(v) for v in vectors])
    if metric is not None:
        X = X @ metric.T
    rows = []
    for x in X:
        for r in rows:
            x = x - (x @ r) * r
        nx = np.linalg.norm(x)
        if nx < 1e-9:
            raise ProjectionError("vectors are linearly dependent")
        rows.append(x / nx)
    return ProjectionBasis(np.array(rows), kind, metric)


def h_parallel_basis(fold_or_sys) -> ProjectionBasis:
    """Orthonormal basis of the span of the H3 or H4 simple roots."""
    sys = getattr(fold_or_sys, "target", fold_or_sys)
    roots = sys.simple_roots
    kind = {3: "h3_parallel", 4: "h4_parallel"}.get(len(roots))
    if kind is None:
        raise ProjectionError("parallel spaces exist for H3 and H4 only")
    # folded roots live in the parent's orthonormal coordinates
    return span_basis(roots, None, kind)


def aligned_h_frame(fold_or_sys) -> ProjectionBasis:
    """Orthonormal frame used to read off the extended root's direction.

    H3: axes 1 and 3 along b1 and b3, axis 2 the part of b2 orthogonal to
    them.  H4: axes 1-3 from b2, b3, b4 (Gram-Schmidt), axis 4 the part of
    b1 orthogonal to them.
    """
    sys = getattr(fold_or_sys, "target", fold_or_sys)
    b = sys.simple_roots
    if len(b) == 3:
        gs = span_basis([b[0], b[2], b[1]]).rows
        rows = np.stack([gs[0], gs[2], gs[1]])
        kind = "h3_parallel"
    elif len(b) == 4:
        rows = span_basis([b[1], b[2], b[3], b[0]]).rows
        kind = "h4_parallel"
    else:
        raise ProjectionError("aligned frames exist for H3 and H4 only")
    return ProjectionBasis(rows, kind)


# --------------------------------------------------------------- point sets


def _dedup_sorted(P: np.ndarray, tol: float) -> np.ndarray:
    if len(P) == 0:
        return P
    tree = cKDTree(P)
    keep = np.ones(len(P), dtype=bool)
    for i, j in sorted(tree.query_pairs(tol)):
        if keep[i] and keep[j]:
            keep[j] = False
    Q = P[keep]
    order = np.lexsort(tuple(np.round(Q[:, k], 9) for k in reversed(range(Q.shape[1]))))
    return Q[order]


def project_vectors(points: Iterable[Vector], basis: ProjectionBasis) -> np.ndarray:
    X = np.array([vector_to_float(p) for p in points], dtype=float)
    if X.size == 0:
        return np.zeros((0, basis.dim))
    if X.shape[1] != basis.matrix.shape[1]:
        raise ProjectionError("ambient dimension mismatch")
    return X @ basis.matrix.T


def project(points, basis: ProjectionBasis, tol: float = DEFAULT_TOL, source: str = "") -> FloatPointSet:
    """Project exact points and deduplicate the images at ``tol``."""
    pts = getattr(points, "points", points)
    label = source or getattr(points, "label", "")
    Y = project_vectors(pts, basis)
    return FloatPointSet(_dedup_sorted(Y, tol), label, tol)


def rotation_invariance_check(ps: FloatPointSet, m: int, tol: float | None = None) -> bool:
    """True iff rotation by ``2 pi / m`` maps the planar set onto itself."""
    if ps.dim != 2:
        raise ProjectionError("rotation check needs a planar set")
    if len(ps) == 0:
        return True
    tol = ps.tolerance if tol is None else tol
    c, s = math.cos(2 * math.pi / m), math.sin(2 * math.pi / m)
    rot = ps.points @ np.array([[c, s], [-s, c]])
    tree = cKDTree(ps.points)
    dist, idx = tree.query(rot)
    return bool(dist.max() <= tol and len(set(idx.tolist())) == len(ps))


def shell_classify(ps: FloatPointSet | np.ndarray, tol: float | None = None) -> list[tuple[float, int]]:
    """Squared norms clustered at ``tol``, as sorted ``(value, count)`` pairs."""
    P = ps.points if isinstance(ps, FloatPointSet) else np.asarray(ps, dtype=float)
    if tol is None:
        tol = ps.tolerance if isinstance(ps, FloatPointSet) else DEFAULT_TOL
    norms = np.sort(np.einsum("ij,ij->i", P, P))
    shells: list[list[float]] = []
    for v in norms:
        if shells and v - shells[-1][-1] <= tol:
            shells[-1].append(v)
        else:
            shells.append([v])
    return [(float(np.mean(s)), len(s)) for s in shells]


def square_lattice_fit(ps: FloatPointSet) -> tuple[float, np.ndarray]:
    """Fit a square lattice through the origin; return (residual, basis).

    The basis is the shortest nonzero image and the shortest image not
    parallel to it.  The residual is the largest distance from a point to
    the nearest integer combination, plus the defects in orthogonality and
    equal length of the two basis vectors.
    """
    P = ps.points
    norms = np.linalg.norm(P, axis=1)
    nz = np.argsort(norms)
    nz = nz[norms[nz] > ps.tolerance]
    if len(nz) < 2:
        raise ProjectionError("need two nonzero points")
    u = P[nz[0]]
    v = None
    for i in nz[1:]:
        w = P[i]
        if abs(u[0] * w[1] - u[1] * w[0]) > ps.tolerance * max(1.0, norms[i]):
            v = w
            break
    if v is None:
        raise ProjectionError("all images are collinear")
    B = np.stack([u, v], axis=1)
    coeffs = np.linalg.solve(B, P.T)
    resid = np.abs(P.T - B @ np.round(coeffs)).max()
    shape_defect = abs(u @ v) + abs(u @ u - v @ v)
    return float(resid + shape_defect), B.T


def emit(ps: FloatPointSet, fmt: str, path: str | Path, radius: float | None = None) -> Path:
    """Write ``x,y[,z]`` csv (15 significant digits) or a planar svg."""
    path = Path(path)
    if fmt == "csv":
        cols = "xyz"[: max(ps.dim, 2)] if ps.dim <= 3 else [f"x{i}" for i in range(ps.dim)]
        lines = [",".join(cols)]
        for p in ps.points:
            lines.append(",".join(f"{v:.15g}" for v in p))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path
    if fmt == "svg":
        if ps.dim != 2:
            raise ProjectionError("svg output needs a planar point set")
        path.write_text(_svg(ps.points, radius), encoding="utf-8")
        return path
    raise ValueError(f"unknown format {fmt!r}")


def _svg(P: np.ndarray, radius: float | None) -> str:
    if len(P):
        lo, hi = P.min(axis=0), P.max(axis=0)
    else:
        lo, hi = np.zeros(2), np.zeros(2)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1.0))
    r = radius if radius is not None else span / 200
    pad = 4 * r
    x0, y0 = lo[0] - pad, -hi[1] - pad
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0:.6f} {y0:.6f} {w:.6f} {h:.6f}">'
    ]
    for x, y in P:
        out.append(f'<circle cx="{x:.9f}" cy="{-y:.9f}" r="{r:.6f}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def read_csv(path: str | Path, tol: float = DEFAULT_TOL) -> FloatPointSet:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:] if ln.strip()]
    dim = len(lines[0].split(",")) if lines else 2
    return FloatPointSet(np.array(rows, dtype=float).reshape(-1, dim), str(path), tol)
