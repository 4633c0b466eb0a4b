"""Hankel operators with finite antianalytic symbols.

A symbol is the coefficient table gamma_1..gamma_m (vectors in C^d) of
phi = sum_k gamma_k zbar^k.  Because the table is finite, the operator
f -> P_-(phi f) on H^2 is exactly a finite block matrix, so operator norms
and kernel-image norms below are exact up to floating point, with no
truncation analysis anywhere.

Two independent evaluations of ||Gamma k_lam||^2 are provided: the direct
double sum (:func:`kernel_image_norm_direct`) and the Garsia-type difference
of harmonic extensions (:func:`garsia_value`).  Their equality is the module's
central identity and is enforced by the test suite, never assumed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hardy import (
    TrigPolynomial,
    check_disk_point,
    harmonic_extension,
    multiply,
    norm_sq,
    reproducing_kernel,
    riesz_project,
    subtract,
)

__all__ = [
    "HankelSymbol",
    "HankelMatrix",
    "build_matrix",
    "apply_symbol",
    "operator_norm",
    "kernel_image_norm_direct",
    "garsia_value",
    "garsia_values",
    "toeplitz_eigen_residual",
]


class HankelSymbol:
    """Finite antianalytic symbol; the generator of everything downstream.

    ``gamma[k-1]`` is the d-vector gamma_k, k = 1..m.  The zero symbol is the
    empty table (m = 0).  Instances are immutable; the Gram data of |phi|^2
    is computed once and cached.
    """

    __slots__ = ("gamma", "_modsq")

    def __init__(self, gamma, dim: int | None = None):
        arr = np.asarray(gamma, dtype=complex)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("gamma must be a 1-D or 2-D array")
        if dim is not None and arr.shape[1] != dim:
            if arr.shape[0] == 0:
                arr = arr.reshape(0, dim)
            else:
                raise ValueError(f"gamma dim {arr.shape[1]} != declared dim {dim}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("symbol coefficients must be finite")
        # drop trailing zero coefficients so m is the true highest index
        m = arr.shape[0]
        while m > 0 and not np.any(arr[m - 1]):
            m -= 1
        arr = np.ascontiguousarray(arr[:m])
        arr.setflags(write=False)
        object.__setattr__(self, "gamma", arr)
        object.__setattr__(self, "_modsq", None)

    def __setattr__(self, name, value):
        raise AttributeError("HankelSymbol is immutable")

    @property
    def m(self) -> int:
        return self.gamma.shape[0]

    @property
    def dim(self) -> int:
        return self.gamma.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.m == 0

    def phi_minus(self) -> TrigPolynomial:
        """The symbol as a circle function: coefficient gamma_k at n = -k."""
        if self.is_zero:
            return TrigPolynomial.zero(self.dim)
        return TrigPolynomial(self.gamma[::-1], -self.m)

    def modsq_profile(self) -> np.ndarray:
        """Coefficients c_0..c_{m-1} of |phi|^2 on the circle.

        c_n = sum_j <gamma_{j+n}, gamma_j>; the negative side is c_{-n} =
        conj(c_n).  Read-only, shared across sweeps.
        """
        if self._modsq is None:
            m = self.m
            c = np.array([np.vdot(self.gamma[n:], self.gamma[: m - n]) for n in range(m)])
            c.setflags(write=False)
            object.__setattr__(self, "_modsq", c)
        return self._modsq

    def modsq_boundary(self) -> TrigPolynomial:
        """|phi|^2 on the circle as a scalar trigonometric polynomial."""
        c = self.modsq_profile()
        m = self.m
        if m == 0:
            return TrigPolynomial.zero(1)
        full = np.concatenate([np.conj(c[1:][::-1]), c])
        return TrigPolynomial(full, -(m - 1))

    def scaled(self, factor) -> "HankelSymbol":
        return HankelSymbol(self.gamma * complex(factor), dim=self.dim)

    def rotated(self, alpha: float) -> "HankelSymbol":
        """gamma_k -> e^{i k alpha} gamma_k."""
        phases = np.exp(1j * alpha * np.arange(1, self.m + 1))
        return HankelSymbol(self.gamma * phases[:, None], dim=self.dim)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "gamma": [[[float(c.real), float(c.imag)] for c in row] for row in self.gamma],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "HankelSymbol":
        from . import _jsonio

        return _jsonio.parse_symbol(obj)

    def sha256(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.dim).encode())
        h.update(np.ascontiguousarray(self.gamma).tobytes())
        return h.hexdigest()

    def __repr__(self):
        return f"HankelSymbol(m={self.m}, dim={self.dim})"


@dataclass(frozen=True)
class HankelMatrix:
    """Exact matrix of the operator: block row j holds gamma_{j+k+1} in column k."""

    entries: np.ndarray  # (m*dim, m) complex
    m: int
    dim: int

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def block(self, j: int, k: int) -> np.ndarray:
        """The d-vector at block position (j, k); zero when j+k+1 > m."""
        return self.entries[j * self.dim : (j + 1) * self.dim, k]


def build_matrix(s: HankelSymbol) -> HankelMatrix:
    m, d = s.m, s.dim
    entries = np.zeros((m * d, m), dtype=complex)
    for j in range(m):
        for k in range(m - j):
            entries[j * d : (j + 1) * d, k] = s.gamma[j + k]
    return HankelMatrix(entries=entries, m=m, dim=d)


def apply_symbol(s: HankelSymbol, f: TrigPolynomial) -> TrigPolynomial:
    """Gamma f = P_-(phi f) for analytic scalar f."""
    if f.dim != 1:
        raise ValueError("argument of the Hankel operator must be scalar")
    if not f.is_analytic:
        raise ValueError("argument of the Hankel operator must be analytic")
    return riesz_project(multiply(f, s.phi_minus()), "minus")


def operator_norm(s: HankelSymbol) -> float:
    """Exact ||Gamma|| as the largest singular value of the finite matrix."""
    if s.is_zero:
        return 0.0
    return float(np.linalg.svd(build_matrix(s).entries, compute_uv=False)[0])


def kernel_image_norm_direct(s: HankelSymbol, lam) -> float:
    """||Gamma k_lam||^2 by the finite double sum (the oracle route)."""
    lam = check_disk_point(lam)
    return float(_kernels.kernel_image_values(s.gamma, [lam])[0])


def garsia_value(s: HankelSymbol, lam) -> float:
    """||Gamma k_lam||^2 as |phi|^2(lam) - |phi(lam)|^2 (the fast route)."""
    lam = check_disk_point(lam)
    return float(_kernels.garsia_values(s.modsq_profile(), s.gamma, [lam])[0])


def garsia_values(s: HankelSymbol, lams) -> np.ndarray:
    """Vectorized :func:`garsia_value` over an array of disk points."""
    lams = np.asarray(lams, dtype=complex)
    if lams.size and np.max(np.abs(lams)) >= 1.0:
        raise ValueError("all points must lie inside the open unit disk")
    return _kernels.garsia_values(s.modsq_profile(), s.gamma, lams.ravel()).reshape(lams.shape)


def toeplitz_eigen_residual(s: HankelSymbol, lam, N: int) -> float:
    """Distance between P_+(phi k_lam) and phi(lam) k_lam on degrees <= N.

    k_lam is truncated at N+m so the analytic coefficients up to degree N are
    unaffected by the truncation; the residual is pure roundoff.
    """
    lam = check_disk_point(lam)
    N = int(N)
    if N < 0:
        raise ValueError("N must be >= 0")
    if s.is_zero:
        return 0.0
    k_big, _ = reproducing_kernel(lam, N + s.m)
    plus = riesz_project(multiply(k_big, s.phi_minus()), "plus")
    lhs = plus.coeff_window(0, N)
    phi_at = harmonic_extension(s.phi_minus(), lam)
    rhs = k_big.coeff_window(0, N) * phi_at[None, :]
    return float(np.linalg.norm(lhs - rhs))
