"""Numpy implementations of the hot kernels.

Same contracts as the compiled extension in _kernels.pyx; this module is the
fallback when the extension is not built. The modulus must fit in 31 bits so
each Horner step (value below m times point below m, plus a coefficient)
stays inside int64.
"""

from __future__ import annotations

import numpy as np


def _eval_all(coeffs, m: int) -> np.ndarray:
    a = np.arange(m, dtype=np.int64)
    acc = np.full(m, coeffs[-1], dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        acc *= a
        acc += c
        acc %= m
    return acc


def hist_eval(coeffs, m: int) -> np.ndarray:
    """counts[v] = #{a in [0, m) : poly(a) = v mod m}; coeffs reduced in [0, m)."""
    if m >= 1 << 31:
        raise ValueError(f"modulus must be < 2^31, got {m}")
    if not coeffs:
        counts = np.zeros(m, dtype=np.int64)
        counts[0] = m
        return counts
    return np.bincount(_eval_all(coeffs, m), minlength=m)


def roots_scan(coeffs, m: int) -> np.ndarray:
    """All a in [0, m) with poly(a) = 0 mod m, ascending."""
    if m >= 1 << 31:
        raise ValueError(f"modulus must be < 2^31, got {m}")
    if not coeffs:
        return np.arange(m, dtype=np.int64)
    return np.flatnonzero(_eval_all(coeffs, m) == 0).astype(np.int64)
