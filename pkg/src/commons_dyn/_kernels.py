"""Fixed-step RK4 kernels for the shifted dynamics.

Two interchangeable implementations: a numba ``@njit`` kernel (default when
numba imports) and a pure-numpy loop.  Selection is controlled by the
environment variable ``COMMONS_DYN_BACKEND``:

* unset or ``auto``: numba when available, numpy otherwise
* ``numba``: require the jit kernel (raises if numba is missing)
* ``numpy``: force the pure-numpy path

Both paths implement the same classical RK4 recurrence; results agree to
rounding but are only guaranteed bit-identical within one backend.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via COMMONS_DYN_BACKEND
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

BACKEND_ENV = "COMMONS_DYN_BACKEND"


def active_backend() -> str:
    """Resolve the backend name ('numba' or 'numpy') from the environment."""
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("COMMONS_DYN_BACKEND=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"unknown {BACKEND_ENV} value {choice!r}")


@njit(cache=True)
def _field_inplace(x0, g, M, v, w, dw):  # pragma: no cover - jit body
    n = w.shape[0]
    ev1 = np.expm1(v)
    s = 0.0
    for i in range(n):
        s += w[i]
    dv = -x0 * ev1 - s
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += M[i, j] * w[j]
        dw[i] = g[i] * ev1 - acc
    return dv


@njit(cache=True)
def _rk4_shifted_numba(x0, g, M, v0, w0, h, n_full, rem):  # pragma: no cover
    n = w0.shape[0]
    n_steps = n_full + (1 if rem > 0.0 else 0)
    v = np.empty(n_steps + 1)
    w = np.empty((n_steps + 1, n))
    dv = np.empty(n_steps + 1)
    dw = np.empty((n_steps + 1, n))

    v[0] = v0
    for i in range(n):
        w[0, i] = w0[i]

    k1w = np.empty(n)
    k2w = np.empty(n)
    k3w = np.empty(n)
    k4w = np.empty(n)
    tmpw = np.empty(n)

    stored = 0
    for step in range(n_steps):
        hs = h if step < n_full else rem
        vc = v[step]
        wc = w[step]

        k1v = _field_inplace(x0, g, M, vc, wc, k1w)
        dv[step] = k1v
        for i in range(n):
            dw[step, i] = k1w[i]

        for i in range(n):
            tmpw[i] = wc[i] + 0.5 * hs * k1w[i]
        k2v = _field_inplace(x0, g, M, vc + 0.5 * hs * k1v, tmpw, k2w)

        for i in range(n):
            tmpw[i] = wc[i] + 0.5 * hs * k2w[i]
        k3v = _field_inplace(x0, g, M, vc + 0.5 * hs * k2v, tmpw, k3w)

        for i in range(n):
            tmpw[i] = wc[i] + hs * k3w[i]
        k4v = _field_inplace(x0, g, M, vc + hs * k3v, tmpw, k4w)

        vn = vc + (hs / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        ok = np.isfinite(vn)
        for i in range(n):
            wni = wc[i] + (hs / 6.0) * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i])
            if not np.isfinite(wni):
                ok = False
            w[step + 1, i] = wni
        v[step + 1] = vn
        if not ok:
            break
        stored = step + 1

    dv[stored] = _field_inplace(x0, g, M, v[stored], w[stored], tmpw)
    for i in range(n):
        dw[stored, i] = tmpw[i]
    diverged = stored < n_steps
    return v, w, dv, dw, stored, diverged


def _rk4_shifted_numpy(x0, g, M, v0, w0, h, n_full, rem):
    n = w0.shape[0]
    n_steps = n_full + (1 if rem > 0.0 else 0)
    v = np.empty(n_steps + 1)
    w = np.empty((n_steps + 1, n))
    dv = np.empty(n_steps + 1)
    dw = np.empty((n_steps + 1, n))
    v[0] = v0
    w[0] = w0

    def field(vc, wc):
        ev1 = np.expm1(vc)
        return -x0 * ev1 - wc.sum(), g * ev1 - M @ wc

    stored = 0
    for step in range(n_steps):
        hs = h if step < n_full else rem
        vc = v[step]
        wc = w[step]
        k1v, k1w = field(vc, wc)
        dv[step] = k1v
        dw[step] = k1w
        k2v, k2w = field(vc + 0.5 * hs * k1v, wc + 0.5 * hs * k1w)
        k3v, k3w = field(vc + 0.5 * hs * k2v, wc + 0.5 * hs * k2w)
        k4v, k4w = field(vc + hs * k3v, wc + hs * k3w)
        vn = vc + (hs / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        wn = wc + (hs / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        v[step + 1] = vn
        w[step + 1] = wn
        if not (np.isfinite(vn) and np.isfinite(wn).all()):
            break
        stored = step + 1

    dv[stored], dw[stored] = field(v[stored], w[stored])
    diverged = stored < n_steps
    return v, w, dv, dw, stored, diverged


def rk4_shifted(x0, g, M, v0, w0, h, n_full, rem, backend: str | None = None):
    """Dispatch the RK4 run to the selected backend."""
    name = backend or active_backend()
    if name == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        fn = _rk4_shifted_numba
    elif name == "numpy":
        fn = _rk4_shifted_numpy
    else:
        raise ValueError(f"unknown backend {name!r}")
    return fn(float(x0), np.ascontiguousarray(g, dtype=float),
              np.ascontiguousarray(M, dtype=float), float(v0),
              np.ascontiguousarray(w0, dtype=float), float(h), int(n_full),
              float(rem))
