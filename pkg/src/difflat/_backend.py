"""Kernel backend selection.

The compiled extension (``difflat._kernels``) is preferred when it imported
successfully; otherwise the numpy implementations in ``_kernels_ref`` take
over.  Set ``DIFFLAT_FORCE_NUMPY=1`` to force the fallback.  Both backends
are deterministic run to run; they may differ from each other in the last
few ulps (the benchmark and the backend tests compare them at 1e-12).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_ref

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built on this install
    _compiled = None


def _normalize_exp_inputs(coords, weights, kappas):
    coords = np.ascontiguousarray(coords, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    kappas = np.ascontiguousarray(np.atleast_2d(kappas), dtype=np.float64)
    if coords.ndim != 2 or kappas.shape[1] != coords.shape[1]:
        raise ValueError("coords and kappas must agree on the spatial dimension")
    if weights.shape[0] != coords.shape[0]:
        raise ValueError("one weight per coordinate row required")
    return coords, weights, kappas


def _normalize_pair_inputs(x, y, shifts):
    x = np.ascontiguousarray(x, dtype=np.complex128)
    y = np.ascontiguousarray(y, dtype=np.complex128)
    shifts = np.ascontiguousarray(np.atleast_2d(shifts), dtype=np.int64)
    if x.shape != y.shape:
        raise ValueError("x and y must share a shape")
    if shifts.shape[1] != x.ndim:
        raise ValueError("shift width must match array rank")
    return x, y, shifts


def _numpy_exp_sums(coords, weights, kappas):
    coords, weights, kappas = _normalize_exp_inputs(coords, weights, kappas)
    return _kernels_ref.exp_sums(coords, weights, kappas)


def _numpy_pair_sums(x, y, shifts):
    x, y, shifts = _normalize_pair_inputs(x, y, shifts)
    return _kernels_ref.pair_sums(x, y, shifts)


def _compiled_exp_sums(coords, weights, kappas):
    coords, weights, kappas = _normalize_exp_inputs(coords, weights, kappas)
    out2 = np.zeros((kappas.shape[0], 2), dtype=np.float64)
    _compiled.exp_sums_f64(
        coords,
        np.ascontiguousarray(weights.real),
        np.ascontiguousarray(weights.imag),
        kappas,
        out2,
    )
    return out2.view(np.complex128).ravel()


def _compiled_pair_sums(x, y, shifts):
    x, y, shifts = _normalize_pair_inputs(x, y, shifts)
    out2 = np.zeros((shifts.shape[0], 2), dtype=np.float64)
    xr = np.ascontiguousarray(x.real)
    xi = np.ascontiguousarray(x.imag)
    yr = np.ascontiguousarray(y.real)
    yi = np.ascontiguousarray(y.imag)
    fn = {1: _compiled.pair_sums_1d, 2: _compiled.pair_sums_2d, 3: _compiled.pair_sums_3d}[x.ndim]
    fn(xr, xi, yr, yi, shifts, out2)
    return out2.view(np.complex128).ravel()


_BACKENDS = {"numpy": (_numpy_exp_sums, _numpy_pair_sums)}
if _compiled is not None:
    _BACKENDS["compiled"] = (_compiled_exp_sums, _compiled_pair_sums)

if _compiled is not None and os.environ.get("DIFFLAT_FORCE_NUMPY") != "1":
    BACKEND = "compiled"
else:
    BACKEND = "numpy"

exp_sums, pair_sums = _BACKENDS[BACKEND]


def available_backends() -> dict:
    """Name -> (exp_sums, pair_sums) for every importable backend."""
    return dict(_BACKENDS)
