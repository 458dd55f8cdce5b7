"""Batch kernels for scanning small finite fields.

The only truly hot inner loops in this package are exhaustive scans:
enumerating curve points, root-finding by evaluation over a whole field,
and evaluating isogeny coordinate maps at many points at once.  Those all
reduce to one primitive: Horner evaluation of a polynomial over F_{p^k} at
a batch of field elements.

Two interchangeable implementations are provided:

* a numba ``@njit`` kernel (default when numba imports cleanly), and
* a pure-numpy vectorised fallback.

Select with the environment variable ``ISODUAL_BACKEND`` set to ``numba``,
``numpy`` or ``auto`` (default).  ``benchmarks/bench_backends.py`` compares
the two.

Array conventions: a batch of n elements of F_{p^k} is an int64 array of
shape (n, k) holding base-p digit vectors, little-endian by modulus power.
``red`` holds the reductions of x^(k+j) modulo the field modulus, one row
per j in 0..k-2 (shape (k-1, k); empty for prime fields).  Digit values and
intermediate sums stay far below 2^63 for every field within the
desk-scale guard (p^k <= 10^6).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    _HAVE_NUMBA = False


def _poly_eval_batch_numpy(coeffs: np.ndarray, xs: np.ndarray, p: int,
                           red: np.ndarray) -> np.ndarray:
    """Vectorised Horner evaluation; see module docstring for conventions."""
    n, k = xs.shape
    d = coeffs.shape[0]
    if d == 0:
        return np.zeros((n, k), dtype=np.int64)
    acc = np.repeat(coeffs[d - 1][None, :], n, axis=0)
    if k == 1:
        x = xs[:, 0]
        a = acc[:, 0]
        for idx in range(d - 2, -1, -1):
            a = (a * x + coeffs[idx, 0]) % p
        return a[:, None].copy()
    for idx in range(d - 2, -1, -1):
        conv = np.zeros((n, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            ai = acc[:, i]
            for j in range(k):
                conv[:, i + j] += ai * xs[:, j]
        low = conv[:, :k]
        for j in range(k - 1):
            low += conv[:, k + j][:, None] * red[j][None, :]
        acc = (low + coeffs[idx][None, :]) % p
    return acc


if _HAVE_NUMBA:

    @njit(cache=True)
    def _poly_eval_batch_numba(coeffs, xs, p, red):  # pragma: no cover - jit
        n, k = xs.shape
        d = coeffs.shape[0]
        out = np.zeros((n, k), dtype=np.int64)
        if d == 0:
            return out
        conv = np.zeros(2 * k - 1, dtype=np.int64)
        acc = np.zeros(k, dtype=np.int64)
        for t in range(n):
            for i in range(k):
                acc[i] = coeffs[d - 1, i]
            for idx in range(d - 2, -1, -1):
                for c in range(2 * k - 1):
                    conv[c] = 0
                for i in range(k):
                    ai = acc[i]
                    if ai != 0:
                        for j in range(k):
                            conv[i + j] += ai * xs[t, j]
                for j in range(k - 2, -1, -1):
                    hi = conv[k + j]
                    if hi != 0:
                        for i in range(k):
                            conv[i] += hi * red[j, i]
                for i in range(k):
                    acc[i] = (conv[i] + coeffs[idx, i]) % p
            for i in range(k):
                out[t, i] = acc[i]
        return out

else:  # pragma: no cover
    _poly_eval_batch_numba = None


def _resolve_backend() -> str:
    choice = os.environ.get("ISODUAL_BACKEND", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if _HAVE_NUMBA else "numpy"
    if choice == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("ISODUAL_BACKEND=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise RuntimeError(f"unknown ISODUAL_BACKEND value: {choice!r}")


_BACKEND = _resolve_backend()


def active_backend() -> str:
    return _BACKEND


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def poly_eval_batch(coeffs: np.ndarray, xs: np.ndarray, p: int,
                    red: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Evaluate one polynomial at a batch of field elements.

    coeffs: (d+1, k) digit rows, little-endian by degree; xs: (n, k).
    Returns an (n, k) array of digit rows.
    """
    which = backend or _BACKEND
    if which == "numba":
        return _poly_eval_batch_numba(coeffs, xs, np.int64(p), red)
    return _poly_eval_batch_numpy(coeffs, xs, p, red)


def all_element_digits(p: int, k: int) -> np.ndarray:
    """Digit rows of every element of F_{p^k}, in code order (shape (p^k, k))."""
    q = p ** k
    rem = np.arange(q, dtype=np.int64)
    digits = np.empty((q, k), dtype=np.int64)
    for i in range(k):
        digits[:, i] = rem % p
        rem //= p
    return digits


def pack_codes(digits: np.ndarray, p: int) -> np.ndarray:
    """Inverse of all_element_digits row-wise: little-endian base-p packing."""
    k = digits.shape[1]
    powers = (np.int64(p) ** np.arange(k, dtype=np.int64))
    return digits @ powers
