"""Finite-radius autocorrelation coefficients and their smooth regularization.

Two summation variants are supported for the coefficient at separation z:

* ``pair_in_window``: both points of a pair must lie in the averaging
  window.  This is the autocorrelation of the window-restricted comb, hence
  positive definite at every finite radius.
* ``single_window``: the first point runs over the window while the second
  uses the comb's full tabulation (zero beyond the cutoff ball).  The two
  variants differ by boundary terms that decay like 1/r.

The window radius defaults to the comb's cutoff; passing a smaller window
exposes the boundary gap while the tabulated data still covers the shifted
points.  All coefficients are normalized by the window-ball volume.

The regularization replaces each point pair by a translated copy of the
smooth bump pair-convolution, giving a continuous function that matches the
coefficients exactly at lattice points and vanishes between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend
from .comb import WeightedComb, generate
from .errors import EpsilonTooLarge, ZRangeExceedsData
from .lattice import Lattice, ball_volume, closest_lattice_vector, enumerate_ball

VARIANTS = ("pair_in_window", "single_window")

_REL_TOL = 1e-12


@dataclass(frozen=True)
class AutocorrTable:
    """Coefficients z -> nu_r(z) for |z| <= z_max at one window radius."""

    comb: WeightedComb
    radius: float
    variant: str
    z_max: float
    entries: dict

    def __getitem__(self, z) -> complex:
        return self.entries[tuple(int(c) for c in z)]

    def get(self, z, default=0j) -> complex:
        return self.entries.get(tuple(int(c) for c in z), default)

    def __len__(self) -> int:
        return len(self.entries)


def _closed_ball(lat: Lattice, r: float) -> np.ndarray:
    """Lattice coords with |cartesian| <= r (closed, small relative slack)."""
    pts = enumerate_ball(lat, r * (1 + 1e-9) + 1e-9)
    x = pts.astype(float) @ lat.basis.T
    keep = np.einsum("ij,ij->i", x, x) <= (r * r) * (1 + 1e-9)
    return pts[keep]


def _dense(comb: WeightedComb):
    """Dense complex weight box over the comb support, cached on the comb."""
    if "dense" not in comb._cache:
        coords = comb.coords_array()
        w = comb.weights_array()
        n = comb.lattice.dim
        if coords.shape[0] == 0:
            lo = np.zeros(n, dtype=np.int64)
            dense = np.zeros((1,) * n, dtype=np.complex128)
            r2 = np.zeros(0)
        else:
            lo = coords.min(axis=0)
            hi = coords.max(axis=0)
            dense = np.zeros(tuple(hi - lo + 1), dtype=np.complex128)
            dense[tuple((coords - lo).T)] = w
            x = coords.astype(float) @ comb.lattice.basis.T
            r2 = np.einsum("ij,ij->i", x, x)
        comb._cache["dense"] = (dense, lo, r2)
    return comb._cache["dense"]


def _windowed(comb: WeightedComb, window: float) -> np.ndarray:
    dense, lo, r2 = _dense(comb)
    if window >= comb.cutoff_radius:
        return dense
    coords = comb.coords_array()
    keep = r2 < window * window
    masked = np.zeros_like(dense)
    kept = coords[keep]
    if kept.shape[0]:
        masked[tuple((kept - lo).T)] = comb.weights_array()[keep]
    return masked


def _resolve_window(comb: WeightedComb, window_radius) -> float:
    window = comb.cutoff_radius if window_radius is None else float(window_radius)
    if window <= 0:
        raise ValueError("window radius must be positive")
    if window > comb.cutoff_radius * (1 + _REL_TOL):
        raise ValueError("window radius exceeds the tabulated cutoff")
    return window


def _coefficients(comb: WeightedComb, zs: np.ndarray, variant: str, window: float) -> np.ndarray:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    dense, _, _ = _dense(comb)
    x = _windowed(comb, window)
    y = x if variant == "pair_in_window" else dense
    vol = ball_volume(comb.lattice.dim, window)
    return _backend.pair_sums(x, y, zs) / vol


def autocorr_coefficient(comb, z, variant="pair_in_window", window_radius=None) -> complex:
    """nu_r(z) for a single lattice separation z."""
    window = _resolve_window(comb, window_radius)
    z = np.asarray([z], dtype=np.int64).reshape(1, comb.lattice.dim)
    return complex(_coefficients(comb, z, variant, window)[0])


def autocorrelation(comb: WeightedComb, z_max: float, variant: str = "pair_in_window",
                    window_radius=None) -> AutocorrTable:
    """Tabulate nu_r(z) for every lattice vector with |z| <= z_max.

    Coefficients are computed on the lexicographically positive half of the
    separation set and mirrored by conjugation, so hermitian symmetry holds
    exactly.  Raises ``ZRangeExceedsData`` when z_max exceeds twice the
    comb's cutoff radius.
    """
    z_max = float(z_max)
    if z_max < 0:
        raise ValueError("z_max must be nonnegative")
    if z_max > 2 * comb.cutoff_radius * (1 + _REL_TOL):
        raise ZRangeExceedsData(
            f"z_max {z_max} exceeds twice the cutoff radius {comb.cutoff_radius}"
        )
    window = _resolve_window(comb, window_radius)
    zs = _closed_ball(comb.lattice, z_max)
    # lexicographically positive half plus the origin
    order = np.lexsort(zs.T[::-1])
    zs = zs[order]
    nonneg = []
    for z in zs:
        first = next((v for v in z if v != 0), 0)
        if first >= 0:
            nonneg.append(z)
    half = np.array(nonneg, dtype=np.int64).reshape(-1, comb.lattice.dim)
    vals = _coefficients(comb, half, variant, window)
    entries = {}
    for z, v in zip(half, vals):
        zt = tuple(int(c) for c in z)
        entries[zt] = complex(v)
        mt = tuple(-c for c in zt)
        if mt != zt:
            entries[mt] = complex(v.conjugate())
    return AutocorrTable(comb=comb, radius=window, variant=variant, z_max=z_max, entries=entries)


def variant_gap(comb: WeightedComb, z, radii) -> list[tuple[float, float]]:
    """|nu_pair - nu_single| at separation z over a ladder of window radii.

    The comb must be tabulated out to max(radii) + |z| so the single-window
    sum never truncates; the gap then measures pure boundary contributions,
    which decay like 1/r.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    zc = np.asarray(z, dtype=float) @ comb.lattice.basis.T
    need = radii[-1] + float(np.linalg.norm(zc))
    if need > comb.cutoff_radius * (1 + _REL_TOL):
        raise ValueError(
            f"comb cutoff {comb.cutoff_radius} too small; need at least {need} "
            "(max window radius plus |z|)"
        )
    out = []
    for r in radii:
        nu_pair = autocorr_coefficient(comb, z, "pair_in_window", window_radius=r)
        nu_single = autocorr_coefficient(comb, z, "single_window", window_radius=r)
        out.append((r, abs(nu_pair - nu_single)))
    return out


def convergence_scan(rule, lat: Lattice, z, radii) -> list[tuple[float, complex]]:
    """Regenerate the comb at each radius and report nu_r(z).

    Exposes the radius dependence of the approximant family; a single limit
    point shows up as a Cauchy tail, oscillation as several accumulation
    values.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    out = []
    for r in radii:
        comb = generate(rule, lat, r)
        out.append((r, autocorr_coefficient(comb, z, "pair_in_window")))
    return out


def gram_matrix(comb: WeightedComb, zs, window_radius=None) -> np.ndarray:
    """Matrix [nu_r(z_i - z_j)] from pair_in_window coefficients."""
    zs = np.asarray(zs, dtype=np.int64).reshape(-1, comb.lattice.dim)
    window = _resolve_window(comb, window_radius)
    diffs = zs[:, None, :] - zs[None, :, :]
    flat = diffs.reshape(-1, comb.lattice.dim)
    vals = _coefficients(comb, flat, "pair_in_window", window)
    return vals.reshape(zs.shape[0], zs.shape[0])


# --- smooth bump regularization -------------------------------------------


def bump_profile(s) -> np.ndarray:
    """The unit bump exp(s^2 / (s^2 - 1)) on |s| < 1, zero outside."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0 - 1e-12
    si = s[inside]
    out[inside] = np.exp(si * si / (si * si - 1.0))
    return out


@dataclass(frozen=True)
class BumpConfig:
    """Scaled bump c(x) = c0 * profile(|x|/epsilon) with unit L2 norm."""

    dimension: int
    epsilon: float
    c0: float
    quadrature_points: int
    packing_radius: float


@lru_cache(maxsize=16)
def _unit_quadrature(dimension: int, points: int):
    """Midpoint nodes on [-1, 1]^n and the profile values at those nodes."""
    h = 2.0 / points
    axis = -1.0 + h * (np.arange(points) + 0.5)
    grids = np.meshgrid(*([axis] * dimension), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    vals = bump_profile(np.linalg.norm(nodes, axis=1))
    return nodes, vals, h**dimension


def make_bump_config(lat: Lattice, epsilon=None, quadrature_points: int = 64) -> BumpConfig:
    """Calibrate the peak value so the numeric L2 norm of the bump is one.

    ``epsilon`` defaults to a quarter of the packing radius and may not
    exceed half of it (neighboring bumps must stay disjoint).
    """
    eps = lat.packing_radius / 4.0 if epsilon is None else float(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if eps > lat.packing_radius / 2.0 * (1 + _REL_TOL):
        raise EpsilonTooLarge(
            f"epsilon {eps} exceeds half the packing radius {lat.packing_radius / 2.0}"
        )
    q = int(quadrature_points)
    if q < 8:
        raise ValueError("quadrature_points must be at least 8")
    _, vals, cell = _unit_quadrature(lat.dim, q)
    norm_unit = float(np.sum(vals * vals)) * cell
    c0 = 1.0 / math.sqrt(eps**lat.dim * norm_unit)
    return BumpConfig(
        dimension=lat.dim,
        epsilon=eps,
        c0=c0,
        quadrature_points=q,
        packing_radius=lat.packing_radius,
    )


def bump_eval(cfg: BumpConfig, x) -> float:
    """c(x) = c0 * profile(|x|/epsilon); zero for |x| >= epsilon."""
    x = np.asarray(x, dtype=float)
    s = float(np.linalg.norm(x)) / cfg.epsilon
    return cfg.c0 * float(bump_profile(s))


@lru_cache(maxsize=16)
def _bump_grid(cfg: BumpConfig):
    nodes, vals, cell = _unit_quadrature(cfg.dimension, cfg.quadrature_points)
    pts = nodes * cfg.epsilon
    cvals = cfg.c0 * vals
    return pts, cvals, cell * cfg.epsilon**cfg.dimension


def bump_pair_convolution(cfg: BumpConfig, y) -> float:
    """(c * c~)(y) by midpoint quadrature over the bump support box.

    Normalization makes the value at y = 0 exactly the calibrated unit
    L2 norm; support is the open ball of radius 2*epsilon.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    pts, cvals, cell = _bump_grid(cfg)
    shifted = cfg.c0 * bump_profile(np.linalg.norm(pts - y, axis=1) / cfg.epsilon)
    return float(np.dot(cvals, shifted)) * cell


def pair_convolution_lipschitz(cfg: BumpConfig, samples: int = 2048) -> float:
    """Numeric Lipschitz constant of the (radial) bump pair-convolution."""
    ts = np.linspace(0.0, 2.0 * cfg.epsilon, samples)
    e1 = np.zeros(cfg.dimension)
    vals = []
    for t in ts:
        e1[0] = t
        vals.append(bump_pair_convolution(cfg, e1))
    vals = np.array(vals)
    return float(np.max(np.abs(np.diff(vals))) / (ts[1] - ts[0]))


def regularized_autocorr(comb: WeightedComb, cfg: BumpConfig, x) -> complex:
    """Smooth interpolant g_r at the Cartesian point x.

    Only the pair difference closest to x can contribute (bump supports are
    disjoint by the epsilon constraint), so g_r(x) is the coefficient at
    that difference times the pair-convolution offset factor; at lattice
    points this reproduces nu_r exactly, and between supports g_r vanishes.
    """
    lat = comb.lattice
    if cfg.dimension != lat.dim:
        raise ValueError("bump config dimension does not match the lattice")
    if cfg.epsilon > lat.packing_radius / 2.0 * (1 + _REL_TOL):
        raise EpsilonTooLarge("epsilon exceeds half the packing radius of the comb's lattice")
    x = np.asarray(x, dtype=float)
    d = closest_lattice_vector(lat, x)
    delta = x - lat.cartesian(d)
    if float(np.linalg.norm(delta)) >= 2.0 * cfg.epsilon:
        return 0j
    nu = autocorr_coefficient(comb, d, "pair_in_window")
    return nu * bump_pair_convolution(cfg, delta)
