"""Euclidean lattices in dimensions 1 to 3.

Construction, duals, point enumeration in balls, packing/covering radii and
fundamental-domain reduction.  Bases are n x n matrices whose *columns* are
the generating vectors in Cartesian units; lattice points carry integer
coordinates in that basis.  Shortest-vector and closest-vector searches are
exhaustive over bounded integer boxes, which is exact and fast at n <= 3.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BallTooLarge, MalformedLatticeFile, SingularBasis
from .textio import fmt

DEFAULT_POINT_CAP = 10**8
# exhaustive searches refuse boxes beyond this per-axis half width
_MAX_SEARCH_HALFWIDTH = 4096


def ball_volume(dim: int, r: float) -> float:
    """Volume of the Euclidean ball of radius r in ``dim`` dimensions."""
    r = float(r)
    if dim == 1:
        return 2.0 * r
    if dim == 2:
        return math.pi * r * r
    if dim == 3:
        return 4.0 / 3.0 * math.pi * r**3
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0) * r**dim


@dataclass(frozen=True, eq=False)
class Lattice:
    """Full-rank lattice spanned by the columns of ``basis``.

    Instances are immutable; the basis array is marked read-only.  Equality
    means bit-identical bases (serialization round-trips preserve it).
    """

    dim: int
    basis: np.ndarray
    det_abs: float
    packing_radius: float

    @cached_property
    def inv_basis(self) -> np.ndarray:
        inv = np.linalg.inv(self.basis)
        inv.setflags(write=False)
        return inv

    @cached_property
    def inv_opnorm(self) -> float:
        return float(np.linalg.norm(self.inv_basis, 2))

    def cartesian(self, coords) -> np.ndarray:
        """Map integer coordinates (shape (..., dim)) to Cartesian points."""
        return np.asarray(coords, dtype=float) @ self.basis.T

    def lattice_coords(self, x) -> np.ndarray:
        """Inverse of :meth:`cartesian` (real-valued coordinates)."""
        return np.asarray(x, dtype=float) @ self.inv_basis.T

    def dual(self) -> "Lattice":
        return dual(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, basis={self.basis.tolist()!r})"


def make_lattice(basis) -> Lattice:
    """Build a :class:`Lattice` from an n x n basis matrix (columns generate).

    Caches |det| and the packing radius (half the shortest nonzero vector,
    found by exhaustive enumeration over the integer box bounded through the
    operator norm of the inverse basis).

    Raises ``SingularBasis`` when |det| falls below 1e-12 times the n-th
    power of the largest column norm.
    """
    B = np.array(basis, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise SingularBasis(f"basis must be square, got shape {B.shape}")
    n = B.shape[0]
    if not 1 <= n <= 3:
        raise SingularBasis(f"dimension must be 1..3, got {n}")
    if not np.all(np.isfinite(B)):
        raise SingularBasis("basis entries must be finite")
    col_norms = np.linalg.norm(B, axis=0)
    det = float(np.linalg.det(B))
    if abs(det) <= 1e-12 * float(np.max(col_norms)) ** n:
        raise SingularBasis(f"|det| = {abs(det):.3e} below tolerance")
    B.setflags(write=False)

    inv = np.linalg.inv(B)
    # any m with |Bm| <= min column norm satisfies |m|_inf <= ||B^-1||_2 |Bm|
    half = int(math.ceil(float(np.linalg.norm(inv, 2)) * float(np.min(col_norms)) * (1 + 1e-12)))
    if half > _MAX_SEARCH_HALFWIDTH:
        raise SingularBasis(f"basis too ill-conditioned for exhaustive search (box half-width {half})")
    rng = np.arange(-half, half + 1)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    ms = np.stack([g.ravel() for g in grids], axis=1)
    ms = ms[np.any(ms != 0, axis=1)]
    lengths = np.linalg.norm(ms @ B.T, axis=1)
    shortest = float(np.min(lengths))
    return Lattice(dim=n, basis=B, det_abs=abs(det), packing_radius=shortest / 2.0)


def density(lat: Lattice) -> float:
    """Points per unit volume, the closed form 1/|det(basis)|."""
    return 1.0 / lat.det_abs


def dual(lat: Lattice) -> Lattice:
    """Dual lattice: basis is the transpose-inverse of the primal basis."""
    return make_lattice(np.linalg.inv(lat.basis.T))


def enumerate_ball(lat: Lattice, r: float, center=None, max_points: int = DEFAULT_POINT_CAP) -> np.ndarray:
    """Integer coordinates of all lattice points in the *open* ball B_r(center).

    Returns an (M, dim) int64 array in lexicographic coordinate order.
    Membership is the strict inequality |x - center| < r.  Raises
    ``BallTooLarge`` when the bounding integer box exceeds ``max_points``.
    """
    r = float(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    n = lat.dim
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    mc = lat.inv_basis @ c
    half = lat.inv_opnorm * r * (1 + 1e-12)
    los = np.ceil(mc - half).astype(np.int64)
    his = np.floor(mc + half).astype(np.int64)
    predicted = int(np.prod((his - los + 1).astype(float)))
    if predicted > max_points:
        raise BallTooLarge(f"enumeration box holds {predicted} points, cap is {max_points}")
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(los, his)]
    grids = np.meshgrid(*axes, indexing="ij")
    ms = np.stack([g.ravel() for g in grids], axis=1)
    x = ms.astype(float) @ lat.basis.T - c
    mask = np.einsum("ij,ij->i", x, x) < r * r
    return ms[mask]


def shell_count_check(lat: Lattice, radii) -> list[tuple[float, float]]:
    """Deviation of the ball point count from density times ball volume.

    residual(r) = | |Gamma_r| / vol(B_r) - density |, expected to decay
    like 1/r; returns [(r, residual), ...] for inspection.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    if radii and radii[0] <= lat.packing_radius:
        raise ValueError("radii must exceed the packing radius")
    dens = density(lat)
    out = []
    for r in radii:
        count = enumerate_ball(lat, r).shape[0]
        out.append((r, abs(count / ball_volume(lat.dim, r) - dens)))
    return out


@dataclass(frozen=True)
class FundamentalDomainSpec:
    """How to pick one representative per lattice-translation orbit."""

    mode: str  # "parallelepiped" or "voronoi"
    lattice: Lattice

    def __post_init__(self):
        if self.mode not in ("parallelepiped", "voronoi"):
            raise ValueError(f"unknown fundamental-domain mode {self.mode!r}")


def closest_lattice_vector(lat: Lattice, x, tie_tol: float = 1e-9) -> np.ndarray:
    """Integer coords of the lattice vector nearest to Cartesian x.

    Candidates are offsets in {-2..2}^n around the rounded basis coordinates.
    Equidistant candidates (within ``tie_tol`` relative) resolve to the
    lexicographically smallest coordinate tuple, so every translation orbit
    has exactly one representative.
    """
    x = np.asarray(x, dtype=float)
    n = lat.dim
    base = np.round(lat.inv_basis @ x).astype(np.int64)
    offsets = np.array(list(itertools.product(range(-2, 3), repeat=n)), dtype=np.int64)
    cands = base[None, :] + offsets
    d = np.linalg.norm(cands.astype(float) @ lat.basis.T - x, axis=1)
    dmin = float(np.min(d))
    thr = dmin + tie_tol * (1.0 + float(np.linalg.norm(x)))
    tied = cands[d <= thr]
    best = min(map(tuple, tied))
    return np.array(best, dtype=np.int64)


def nearest_lattice_distances(lat: Lattice, xs) -> np.ndarray:
    """Distance from each row of ``xs`` to its nearest lattice point."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    n = lat.dim
    base = np.round(xs @ lat.inv_basis.T)
    offsets = np.array(list(itertools.product(range(-2, 3), repeat=n)), dtype=float)
    cands = base[:, None, :] + offsets[None, :, :]  # (P, O, n)
    diff = cands @ lat.basis.T - xs[:, None, :]
    return np.sqrt(np.einsum("poi,poi->po", diff, diff).min(axis=1))


def reduce_to_fundamental_domain(spec: FundamentalDomainSpec, x) -> np.ndarray:
    """Map x to its unique representative in the chosen fundamental domain.

    Parallelepiped mode takes basis coordinates mod 1 into [0, 1); Voronoi
    mode subtracts the closest lattice vector (ties broken lexicographically,
    one representative per boundary translation pair).
    """
    x = np.asarray(x, dtype=float)
    lat = spec.lattice
    if spec.mode == "parallelepiped":
        k = np.floor(lat.inv_basis @ x)
        return x - lat.basis @ k
    v = closest_lattice_vector(lat, x)
    return x - lat.basis @ v.astype(float)


def covering_radius_estimate(lat: Lattice, grid_density: int) -> float:
    """Deep-hole search: max over a basis-cell grid of the distance to the
    nearest lattice point.

    Converges to the covering radius from below as the grid refines.
    """
    g = int(grid_density)
    if g < 8:
        raise ValueError("grid_density must be at least 8")
    n = lat.dim
    fr = np.arange(g) / g
    grids = np.meshgrid(*([fr] * n), indexing="ij")
    fracs = np.stack([a.ravel() for a in grids], axis=1)
    pts = fracs @ lat.basis.T
    return float(np.max(nearest_lattice_distances(lat, pts)))


def fundamental_domain_grid(spec: FundamentalDomainSpec, n_per_axis: int) -> np.ndarray:
    """Uniform sample of a fundamental domain, one point per basis-cell cell.

    Points start as fractional multiples of the basis vectors and are then
    reduced per ``spec`` (a no-op in parallelepiped mode).
    """
    g = int(n_per_axis)
    if g < 1:
        raise ValueError("n_per_axis must be positive")
    lat = spec.lattice
    fr = np.arange(g) / g
    grids = np.meshgrid(*([fr] * lat.dim), indexing="ij")
    fracs = np.stack([a.ravel() for a in grids], axis=1)
    pts = fracs @ lat.basis.T
    if spec.mode == "voronoi":
        pts = np.array([reduce_to_fundamental_domain(spec, p) for p in pts])
    return pts


def save_lattice(lat: Lattice, path) -> None:
    """Write ``dim`` and the row-major basis at full double precision."""
    rows = " ".join(fmt(v) for v in lat.basis.ravel(order="C"))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"dim {lat.dim}\nbasis {rows}\n")


def load_lattice(path) -> Lattice:
    """Read a lattice record written by :func:`save_lattice`."""
    dim = None
    basis = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            key, vals = fields[0], fields[1:]
            if key == "dim":
                try:
                    dim = int(vals[0])
                except (IndexError, ValueError):
                    raise MalformedLatticeFile(path, lineno, "dim expects one integer") from None
            elif key == "basis":
                if dim is None:
                    raise MalformedLatticeFile(path, lineno, "basis line before dim line")
                if len(vals) != dim * dim:
                    raise MalformedLatticeFile(
                        path, lineno, f"basis expects {dim * dim} entries, got {len(vals)}"
                    )
                try:
                    basis = np.array([float(v) for v in vals]).reshape(dim, dim)
                except ValueError:
                    raise MalformedLatticeFile(path, lineno, "basis entries must be floats") from None
            else:
                raise MalformedLatticeFile(path, lineno, f"unknown field {key!r}")
    if dim is None or basis is None:
        raise MalformedLatticeFile(path, 0, "missing dim or basis record")
    try:
        return make_lattice(basis)
    except SingularBasis as exc:
        raise MalformedLatticeFile(path, 0, str(exc)) from None
