"""Diffraction-side computations for tabulated combs.

The exponential sum S_r(k) = sum_t w(t) exp(-2 pi i k.x_t) is evaluated in
lattice coordinates (phases are <B^T k, m> with integer m), which makes the
dual-lattice periodicity of the intensity |S_r(k)|^2 / vol(B_r) exact to
rounding at every finite radius.  On top of it sit Bragg-amplitude ladders,
fundamental-domain intensity grids with spike flagging, scatterer-profile
damping and the complement/homometry identities for indicator subsets.
"""

from __future__ import annotations

import numpy as np

from . import _backend
from .autocorr import autocorr_coefficient
from .comb import WeightedComb, complement, empirical_density, generate
from .errors import DensityNotHalf, NotADualLatticePoint
from .lattice import (
    FundamentalDomainSpec,
    Lattice,
    ball_volume,
    density,
    dual,
    enumerate_ball,
    nearest_lattice_distances,
    reduce_to_fundamental_domain,
)
from dataclasses import dataclass


def exp_sums(comb: WeightedComb, ks) -> np.ndarray:
    """Exponential sums at each row of ``ks`` (Cartesian dual-space points)."""
    ks = np.atleast_2d(np.asarray(ks, dtype=float))
    kappas = ks @ comb.lattice.basis
    return _backend.exp_sums(comb.coords_array(), comb.weights_array(), kappas)


def exp_sum(comb: WeightedComb, k) -> complex:
    return complex(exp_sums(comb, np.atleast_2d(np.asarray(k, dtype=float)))[0])


def intensities(comb: WeightedComb, ks) -> np.ndarray:
    """D_r(k) = |S_r(k)|^2 / vol(B_r), nonnegative and dual-lattice periodic."""
    s = exp_sums(comb, ks)
    return (s.real * s.real + s.imag * s.imag) / ball_volume(comb.lattice.dim, comb.cutoff_radius)


def intensity(comb: WeightedComb, k) -> float:
    return float(intensities(comb, np.atleast_2d(np.asarray(k, dtype=float)))[0])


def profiled_intensity(comb: WeightedComb, k, sigma: float) -> float:
    """Intensity damped by a unit-mass Gaussian scatterer profile of width sigma."""
    sigma = float(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    k = np.asarray(k, dtype=float)
    damp = float(np.exp(-4.0 * np.pi**2 * sigma**2 * float(k @ k)))
    return damp * intensity(comb, k)


def dual_point(lat: Lattice, coords) -> np.ndarray:
    """Cartesian position of the dual-lattice point with integer ``coords``."""
    return dual(lat).cartesian(np.asarray(coords, dtype=float))


def dual_coords(lat: Lattice, k, tol: float = 1e-9) -> tuple:
    """Integer dual coordinates of k, or ``NotADualLatticePoint`` beyond tol."""
    k = np.asarray(k, dtype=float)
    p = lat.basis.T @ k  # B^T (dual basis) = identity, so this recovers coords
    rounded = np.round(p)
    if float(np.max(np.abs(p - rounded), initial=0.0)) > tol:
        raise NotADualLatticePoint(f"point {k.tolist()} deviates from dual coords {rounded.tolist()}")
    return tuple(int(v) for v in rounded)


# --- Bragg amplitudes -------------------------------------------------------


@dataclass(frozen=True)
class BraggTable:
    """Amplitude ladders A_r(k*) per dual point, with the last-r estimate.

    ``trend`` holds the difference between the two largest-radius values;
    ladders are reported as data, no convergence claim is attached.
    """

    entries: dict  # dual coords -> list[(r, amplitude)]
    extrapolated: dict  # dual coords -> amplitude at the largest radius
    trend: dict  # dual coords -> last difference along the ladder


def bragg_amplitude(rule, lat: Lattice, kstar, radii) -> list[tuple[float, float]]:
    """Ladder of A_r(k*) = |S_r(k*) / vol(B_r)|^2 over increasing radii.

    ``kstar`` must be a dual-lattice point.  For constant unit weights the
    values converge to the squared lattice density.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    kstar = np.asarray(kstar, dtype=float)
    dual_coords(lat, kstar)  # raises NotADualLatticePoint when off-lattice
    out = []
    for r in radii:
        comb = generate(rule, lat, r)
        s = exp_sum(comb, kstar)
        out.append((r, abs(s / ball_volume(lat.dim, r)) ** 2))
    return out


def bragg_table(rule, lat: Lattice, kstars, radii) -> BraggTable:
    entries = {}
    extrapolated = {}
    trend = {}
    for kstar in kstars:
        coords = dual_coords(lat, np.asarray(kstar, dtype=float))
        ladder = bragg_amplitude(rule, lat, kstar, radii)
        entries[coords] = ladder
        extrapolated[coords] = ladder[-1][1]
        trend[coords] = ladder[-1][1] - ladder[-2][1] if len(ladder) > 1 else 0.0
    return BraggTable(entries=entries, extrapolated=extrapolated, trend=trend)


# --- intensity grids ---------------------------------------------------------


@dataclass(frozen=True)
class DiffractionGrid:
    """Sampled intensities over a fundamental domain of the dual lattice.

    ``bragg_flag`` marks samples within ``flag_radius`` of a dual-lattice
    point, where the volume-growing spike dominates the diffuse part.
    """

    comb: WeightedComb
    radius: float
    k_points: np.ndarray
    intensity: np.ndarray
    bragg_flag: np.ndarray
    domain_spec: FundamentalDomainSpec
    flag_radius: float


def diffraction_grid(comb: WeightedComb, ks, domain_spec: FundamentalDomainSpec,
                     flag_radius=None) -> DiffractionGrid:
    """Reduce sample points into the dual fundamental domain and evaluate D_r.

    ``domain_spec`` must describe the dual of the comb's lattice.  The flag
    radius defaults to 1/r, the width of the finite-window spike.
    """
    dl = dual(comb.lattice)
    if not np.allclose(domain_spec.lattice.basis, dl.basis, rtol=0, atol=1e-12):
        raise ValueError("domain_spec must be built over the dual lattice of the comb")
    ks = np.atleast_2d(np.asarray(ks, dtype=float))
    reduced = np.array([reduce_to_fundamental_domain(domain_spec, k) for k in ks])
    if flag_radius is None:
        flag_radius = 1.0 / comb.cutoff_radius
    vals = intensities(comb, reduced)
    flags = nearest_lattice_distances(domain_spec.lattice, reduced) < flag_radius
    return DiffractionGrid(
        comb=comb,
        radius=comb.cutoff_radius,
        k_points=reduced,
        intensity=vals,
        bragg_flag=flags,
        domain_spec=domain_spec,
        flag_radius=float(flag_radius),
    )


# --- complement and homometry relations -------------------------------------


def _windowed_sums(comb: WeightedComb, kstar, radii):
    """(total weight, exponential sum) of the ball-restricted comb per radius."""
    coords = comb.coords_array()
    w = comb.weights_array()
    x = comb.lattice.cartesian(coords)
    r2 = np.einsum("ij,ij->i", x, x)
    kappa = np.asarray(kstar, dtype=float) @ comb.lattice.basis
    out = []
    for r in radii:
        keep = r2 < r * r
        s = _backend.exp_sums(coords[keep], w[keep], kappa[None, :])
        out.append((complex(w[keep].sum()), complex(s[0])))
    return out


def complement_autocorr_check(comb: WeightedComb, zs) -> list[tuple[tuple, float]]:
    """Residual of the complement identity per separation z.

    Both sides subtract the respective empirical density from the pair
    coefficient; the residual is a pure boundary term of order 1/r.
    """
    comp = complement(comb)
    d = empirical_density(comb).real
    dp = empirical_density(comp).real
    out = []
    for z in zs:
        nu = autocorr_coefficient(comb, z, "pair_in_window").real
        nup = autocorr_coefficient(comp, z, "pair_in_window").real
        out.append((tuple(int(c) for c in np.atleast_1d(z)), abs((nup - dp) - (nu - d))))
    return out


def homometry_check(comb: WeightedComb, zs) -> float:
    """Max |nu_S(z) - nu_S'(z)| over the separations, for half-density sets.

    Raises ``DensityNotHalf`` unless the empirical density is within 5% of
    half the lattice density.
    """
    dens = density(comb.lattice)
    d = empirical_density(comb).real
    if abs(d - dens / 2.0) > 0.05 * dens:
        raise DensityNotHalf(f"empirical density {d} not within 5% of {dens / 2.0}")
    comp = complement(comb)
    worst = 0.0
    for z in zs:
        nu = autocorr_coefficient(comb, z, "pair_in_window")
        nup = autocorr_coefficient(comp, z, "pair_in_window")
        worst = max(worst, abs(nu - nup))
    return worst


def complement_bragg_check(comb: WeightedComb, kstar, radii) -> list[tuple[float, float]]:
    """Residual tying the Bragg-amplitude difference of S and its complement
    to the difference of squared empirical densities, per window radius.

    At dual-lattice points the restricted exponential sum is the restricted
    point count, so the residual collapses to rounding; it is reported per
    radius for inspection.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    if radii[-1] > comb.cutoff_radius * (1 + 1e-12):
        raise ValueError("window radii exceed the tabulated cutoff")
    kstar = np.asarray(kstar, dtype=float)
    dual_coords(comb.lattice, kstar)
    comp = complement(comb)
    n = comb.lattice.dim
    rows_s = _windowed_sums(comb, kstar, radii)
    rows_c = _windowed_sums(comp, kstar, radii)
    out = []
    for r, (tw_s, es_s), (tw_c, es_c) in zip(radii, rows_s, rows_c):
        vol = ball_volume(n, r)
        a_s = abs(es_s / vol) ** 2
        a_c = abs(es_c / vol) ** 2
        d_s = (tw_s / vol).real
        d_c = (tw_c / vol).real
        out.append((r, abs(a_c - a_s - (d_c * d_c - d_s * d_s))))
    return out


def windowed_bragg_amplitudes(comb: WeightedComb, kstar, radii) -> list[tuple[float, float]]:
    """A_r(k*) ladders from ball restrictions of one tabulated comb."""
    radii = [float(r) for r in radii]
    kstar = np.asarray(kstar, dtype=float)
    dual_coords(comb.lattice, kstar)
    rows = _windowed_sums(comb, kstar, radii)
    return [
        (r, abs(es / ball_volume(comb.lattice.dim, r)) ** 2) for r, (_, es) in zip(radii, rows)
    ]
