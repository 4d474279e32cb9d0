"""Pure-numpy implementations of the hot kernels.

Import-time fallback when the compiled extension is unavailable (or when
``DIFFLAT_FORCE_NUMPY=1``).  Same contracts as ``_kernels``: see
``_backend`` for the dispatch and the dtype normalization.
"""

from __future__ import annotations

import numpy as np

# cap on entries per phase-matrix chunk (~64 MB complex)
_CHUNK_ENTRIES = 4_000_000


def exp_sums(coords: np.ndarray, weights: np.ndarray, kappas: np.ndarray) -> np.ndarray:
    """S[i] = sum_j weights[j] * exp(-2 pi i <kappas[i], coords[j]>).

    Phases are reduced mod 1 before the complex exponential so large
    integer parts do not eat the fractional precision.
    """
    M = coords.shape[0]
    K = kappas.shape[0]
    out = np.zeros(K, dtype=np.complex128)
    if M == 0 or K == 0:
        return out
    ct = coords.T.astype(float)
    step = max(1, _CHUNK_ENTRIES // M)
    for s in range(0, K, step):
        ph = kappas[s : s + step] @ ct
        ph -= np.round(ph)
        out[s : s + step] = np.exp(-2j * np.pi * ph) @ weights
    return out


def _overlap_slices(shape, shift):
    los = [max(0, int(z)) for z in shift]
    his = [shape[d] + min(0, int(shift[d])) for d in range(len(shape))]
    if any(lo >= hi for lo, hi in zip(los, his)):
        return None
    sx = tuple(slice(lo, hi) for lo, hi in zip(los, his))
    sy = tuple(slice(lo - int(z), hi - int(z)) for lo, hi, z in zip(los, his, shift))
    return sx, sy


def pair_sums(x: np.ndarray, y: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """out[k] = sum_m x[m] * conj(y[m - shifts[k]]) over in-bounds indices."""
    out = np.zeros(shifts.shape[0], dtype=np.complex128)
    for i, z in enumerate(shifts):
        sl = _overlap_slices(x.shape, z)
        if sl is None:
            continue
        sx, sy = sl
        out[i] = np.vdot(y[sy], x[sx])  # vdot conjugates its first argument
    return out
