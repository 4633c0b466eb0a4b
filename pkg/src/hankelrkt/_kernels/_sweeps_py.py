"""Pure-numpy sweep kernels (fallback when the compiled core is absent).

Same contracts as ``_sweeps_cy``: Horner recursions over the symbol length,
vectorized across the lambda array.
"""

import numpy as np


def garsia_values(modsq, gamma, lams):
    """Garsia quantity |phi|^2(lam) - |phi(lam)|^2 for an array of lambdas.

    modsq holds c_0..c_{m-1}, the nonnegative-frequency coefficients of
    |phi|^2 on the circle (c_{-n} = conj(c_n)); gamma is the (m, d) symbol
    coefficient table.
    """
    lams = np.asarray(lams, dtype=complex)
    m, d = gamma.shape
    out = np.zeros(lams.shape, dtype=float)
    if m == 0:
        return out
    p = np.zeros_like(lams)
    for k in range(m - 1, 0, -1):
        p = (p + modsq[k]) * lams
    ext = modsq[0].real + 2.0 * p.real
    t = np.zeros(lams.shape + (d,), dtype=complex)
    w = np.conj(lams)[..., None]
    for k in range(m, 0, -1):
        t = gamma[k - 1] + w * t
    phi = w * t
    mag = np.sum(phi.real**2 + phi.imag**2, axis=-1)
    return ext - mag


def kernel_image_values(gamma, lams):
    """||Gamma k_lam||^2 by the direct finite double sum, for an array of lambdas.

    Equals (1-|lam|^2) * sum_{j=1}^m |sum_{k=j}^m gamma_k conj(lam)^{k-j}|^2.
    """
    lams = np.asarray(lams, dtype=complex)
    m, d = gamma.shape
    out = np.zeros(lams.shape, dtype=float)
    if m == 0:
        return out
    w = np.conj(lams)[..., None]
    t = np.zeros(lams.shape + (d,), dtype=complex)
    acc = np.zeros(lams.shape, dtype=float)
    for j in range(m, 0, -1):
        t = gamma[j - 1] + w * t
        acc += np.sum(t.real**2 + t.imag**2, axis=-1)
    return (1.0 - np.abs(lams) ** 2) * acc
