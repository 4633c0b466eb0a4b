"""Finite Fourier series on the unit circle and Hardy-space primitives.

Functions on the circle are represented as vector-valued trigonometric
polynomials: a finite table of Fourier coefficients f_hat(n) in C^d over a
contiguous frequency window.  Everything here is exact finite arithmetic
(convolutions, coefficient sums); nothing is sampled.  Points of the open
unit disk are plain ``complex`` numbers, validated at every entry point.

Conventions:
  * the L^2 norm is the Parseval sum ||f||^2 = sum_n |f_hat(n)|^2,
  * inner products are conjugate-linear in the second slot,
  * "analytic" means support in n >= 0, "antianalytic" in n <= -1.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "TrigPolynomial",
    "check_disk_point",
    "harmonic_extension",
    "riesz_project",
    "reproducing_kernel",
    "default_kernel_degree",
    "inner_product",
    "multiply",
    "conjugate_function",
    "add",
    "subtract",
    "scale",
    "norm_sq",
]

KERNEL_TAIL_EPS = 1e-14
KERNEL_DEGREE_CAP = 2**14


def check_disk_point(lam) -> complex:
    """Validate and return a point of the open unit disk."""
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise ValueError("disk point must be finite")
    if abs(lam) >= 1.0:
        raise ValueError(f"point {lam} is not inside the open unit disk")
    return lam


class TrigPolynomial:
    """Finitely supported Fourier series with coefficients in C^d.

    ``coeffs[i]`` is the d-vector at frequency ``n_min + i``.  Instances are
    immutable (the coefficient array is frozen), so they are safe to share
    across threads.
    """

    __slots__ = ("n_min", "coeffs")

    def __init__(self, coeffs, n_min: int = 0, dim: int | None = None):
        arr = np.asarray(coeffs, dtype=complex)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("coeffs must be a 1-D or 2-D array")
        if dim is not None and arr.shape[1] != dim:
            if arr.shape[0] == 0:
                arr = arr.reshape(0, dim)
            else:
                raise ValueError(f"coefficient dim {arr.shape[1]} != declared dim {dim}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        # trim zero rows at both ends so the support window is canonical
        nz = np.nonzero(np.any(arr != 0, axis=1))[0]
        if len(nz) == 0:
            n_min = 0
            arr = arr[:0]
        else:
            n_min = int(n_min) + int(nz[0])
            arr = arr[nz[0] : nz[-1] + 1]
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "n_min", n_min)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TrigPolynomial is immutable")

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def n_max(self) -> int:
        return self.n_min + self.coeffs.shape[0] - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    @property
    def is_analytic(self) -> bool:
        return self.is_zero or self.n_min >= 0

    @property
    def is_antianalytic(self) -> bool:
        return self.is_zero or self.n_max <= -1

    @classmethod
    def zero(cls, dim: int = 1) -> "TrigPolynomial":
        return cls(np.zeros((0, dim), dtype=complex), 0)

    @classmethod
    def monomial(cls, n: int, coeff=1.0, dim: int = 1) -> "TrigPolynomial":
        c = np.zeros((1, dim), dtype=complex)
        c[0] = coeff
        return cls(c, n)

    @classmethod
    def from_terms(cls, terms: dict, dim: int = 1) -> "TrigPolynomial":
        """Build from a ``{frequency: vector}`` mapping."""
        if not terms:
            return cls.zero(dim)
        n_min = min(terms)
        n_max = max(terms)
        arr = np.zeros((n_max - n_min + 1, dim), dtype=complex)
        for n, v in terms.items():
            arr[n - n_min] = v
        return cls(arr, n_min)

    def coeff(self, n: int) -> np.ndarray:
        """Coefficient vector at frequency n (zero outside the support)."""
        if self.is_zero or n < self.n_min or n > self.n_max:
            return np.zeros(self.dim, dtype=complex)
        return self.coeffs[n - self.n_min]

    def coeff_window(self, n_lo: int, n_hi: int) -> np.ndarray:
        """Dense (n_hi-n_lo+1, dim) coefficient block over [n_lo, n_hi]."""
        out = np.zeros((n_hi - n_lo + 1, self.dim), dtype=complex)
        if not self.is_zero:
            lo = max(n_lo, self.n_min)
            hi = min(n_hi, self.n_max)
            if lo <= hi:
                out[lo - n_lo : hi - n_lo + 1] = self.coeffs[lo - self.n_min : hi - self.n_min + 1]
        return out

    def sample(self, z: np.ndarray) -> np.ndarray:
        """Evaluate at unimodular points z (shape (k,)), returning (k, dim)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (self.dim,), dtype=complex)
        for i in range(self.coeffs.shape[0]):
            out += np.power(z, self.n_min + i)[..., None] * self.coeffs[i]
        return out

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "n_min": int(self.n_min),
            "coeffs": [[[float(c.real), float(c.imag)] for c in row] for row in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "TrigPolynomial":
        from . import _jsonio

        return _jsonio.parse_trig_polynomial(obj)

    def __repr__(self):
        if self.is_zero:
            return f"TrigPolynomial(zero, dim={self.dim})"
        return f"TrigPolynomial(n in [{self.n_min}, {self.n_max}], dim={self.dim})"


def _check_same_dim(f: TrigPolynomial, g: TrigPolynomial):
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} != {g.dim}")


def harmonic_extension(f: TrigPolynomial, lam) -> np.ndarray:
    """Harmonic (Poisson) extension of f evaluated at a disk point.

    Returns sum_{n>=0} f_hat(n) lam^n + sum_{n<0} f_hat(n) conj(lam)^{-n},
    exactly (finite sums).  For analytic f this is the analytic value f(lam).
    """
    lam = check_disk_point(lam)
    out = np.zeros(f.dim, dtype=complex)
    if f.is_zero:
        return out
    if f.n_max >= 0:
        acc = f.coeff(f.n_max).copy()
        for n in range(f.n_max - 1, -1, -1):
            acc = acc * lam + f.coeff(n)
        out += acc
    if f.n_min < 0:
        w = np.conj(lam)
        acc = f.coeff(f.n_min).copy()
        for n in range(f.n_min + 1, 0):
            acc = acc * w + f.coeff(n)
        out += acc * w
    return out


def riesz_project(f: TrigPolynomial, side: str) -> TrigPolynomial:
    """Riesz projection: ``side="plus"`` keeps n >= 0, ``"minus"`` keeps n <= -1."""
    if side not in ("plus", "minus"):
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    if f.is_zero:
        return f
    if side == "plus":
        if f.n_min >= 0:
            return f
        return TrigPolynomial(f.coeffs[-f.n_min :], 0, dim=f.dim) if f.n_max >= 0 else TrigPolynomial.zero(f.dim)
    if f.n_max <= -1:
        return f
    if f.n_min >= 0:
        return TrigPolynomial.zero(f.dim)
    return TrigPolynomial(f.coeffs[: -f.n_min], f.n_min, dim=f.dim)


def default_kernel_degree(lam, eps: float = KERNEL_TAIL_EPS, cap: int = KERNEL_DEGREE_CAP) -> int:
    """Truncation degree making the kernel tail |lam|^(2(N+1)) <= eps."""
    lam = check_disk_point(lam)
    r = abs(lam)
    if r == 0.0:
        return 0
    n = math.ceil(math.log(eps) / (2.0 * math.log(r)))
    return int(min(max(n, 0), cap))


def reproducing_kernel(lam, N: int | None = None) -> tuple[TrigPolynomial, float]:
    """Degree-N truncation of the normalized reproducing kernel k_lam.

    The n-th coefficient is (1-|lam|^2)^(1/2) * conj(lam)^n; the returned tail
    is the exact discarded mass ||k_lam - truncation||^2 = |lam|^(2(N+1)).
    With ``N=None`` the degree comes from :func:`default_kernel_degree`.
    """
    lam = check_disk_point(lam)
    if N is None:
        N = default_kernel_degree(lam)
    N = int(N)
    if N < 0:
        raise ValueError("truncation degree must be >= 0")
    amp = math.sqrt(1.0 - abs(lam) ** 2)
    coeffs = amp * np.conj(lam) ** np.arange(N + 1)
    tail = abs(lam) ** (2 * (N + 1))
    return TrigPolynomial(coeffs, 0), tail


def inner_product(f: TrigPolynomial, g: TrigPolynomial) -> complex:
    """L^2 pairing sum_n <f_hat(n), g_hat(n)>, conjugate-linear in g."""
    _check_same_dim(f, g)
    if f.is_zero or g.is_zero:
        return 0j
    lo = max(f.n_min, g.n_min)
    hi = min(f.n_max, g.n_max)
    if lo > hi:
        return 0j
    a = f.coeffs[lo - f.n_min : hi - f.n_min + 1]
    b = g.coeffs[lo - g.n_min : hi - g.n_min + 1]
    return complex(np.sum(a * np.conj(b)))


def norm_sq(f: TrigPolynomial) -> float:
    """Parseval norm squared."""
    return float(np.sum(f.coeffs.real**2 + f.coeffs.imag**2))


def multiply(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    """Pointwise product on the circle: exact coefficient convolution.

    f must be scalar (dim 1); g may be vector-valued.
    """
    if f.dim != 1:
        raise ValueError("multiplier must be scalar (dim 1)")
    if f.is_zero or g.is_zero:
        return TrigPolynomial.zero(g.dim)
    a = f.coeffs[:, 0]
    out = np.empty((f.coeffs.shape[0] + g.coeffs.shape[0] - 1, g.dim), dtype=complex)
    for i in range(g.dim):
        out[:, i] = np.convolve(a, g.coeffs[:, i])
    return TrigPolynomial(out, f.n_min + g.n_min)


def conjugate_function(h: TrigPolynomial) -> TrigPolynomial:
    """Coordinatewise complex conjugate: coeff(n) -> conj(coeff(-n))."""
    if h.is_zero:
        return h
    return TrigPolynomial(np.conj(h.coeffs[::-1]), -h.n_max)


def add(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    _check_same_dim(f, g)
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    lo = min(f.n_min, g.n_min)
    hi = max(f.n_max, g.n_max)
    return TrigPolynomial(f.coeff_window(lo, hi) + g.coeff_window(lo, hi), lo)


def scale(f: TrigPolynomial, c) -> TrigPolynomial:
    return TrigPolynomial(f.coeffs * complex(c), f.n_min, dim=f.dim)


def subtract(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    return add(f, scale(g, -1.0))
