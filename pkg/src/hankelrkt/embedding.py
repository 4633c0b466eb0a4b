"""Model-space projections for finite Blaschke products and the embedding test.

For an inner function theta the projection onto H^2 (-) theta H^2 acts as
P f = f - theta P_+(conj(theta) f) = theta P_-(conj(theta) f).  Both formulas
are evaluated on oversampled circle grids of different sizes; their
disagreement measures the sampling/truncation error and trips the contracted
"increase N" failure instead of silently returning garbage.

A finite atomic measure with one Blaschke product per atom turns the
generalized embedding estimate into a finite stacked matrix: its largest
singular value squared is the best embedding constant on the degree-N
polynomial subspace, to be compared with 4e times the kernel testing bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hardy import TrigPolynomial, check_disk_point, harmonic_extension, reproducing_kernel
from .rkt import LambdaGrid, sup_over_disk

__all__ = [
    "EMBEDDING_BOUND",
    "BlaschkeProduct",
    "DiscreteMeasure",
    "EmbeddingReport",
    "TruncationError",
    "model_projection",
    "projection_matrix",
    "elementary_projection",
    "embedding_norm",
    "rkt_embedding_test",
    "carleson_box_constant",
]

EMBEDDING_BOUND = 4.0 * math.e
CROSS_CHECK_TOL = 1e-9
DEGREE_GUARD = 8
UNIMODULAR_TOL = 1e-12


class TruncationError(ValueError):
    """The two projection formulas disagree: the truncation degree is too low."""

    def __init__(self, disagreement: float, N: int):
        self.disagreement = disagreement
        self.N = N
        super().__init__(
            f"projection cross-check failed at N={N} (disagreement {disagreement:.3g}); "
            "increase N (zeros close to the circle need a larger truncation degree)"
        )


class BlaschkeProduct:
    """Finite Blaschke product: front * prod (z - z_i) / (1 - conj(z_i) z)."""

    __slots__ = ("zeros", "front")

    def __init__(self, zeros=(), front: complex = 1.0):
        zeros = tuple(check_disk_point(z) for z in zeros)
        front = complex(front)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "front", front)
        samples = np.exp(2j * np.pi * np.arange(16) / 16)
        dev = np.abs(np.abs(self.evaluate(samples)) - 1.0)
        if np.max(dev) > UNIMODULAR_TOL:
            raise ValueError("not unimodular on the circle (is |front| = 1?)")

    def __setattr__(self, name, value):
        raise AttributeError("BlaschkeProduct is immutable")

    @classmethod
    def elementary(cls, lam) -> "BlaschkeProduct":
        return cls(zeros=(lam,))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def evaluate(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.front, dtype=complex)
        for zero in self.zeros:
            out *= (z - zero) / (1.0 - np.conj(zero) * z)
        return out

    def __repr__(self):
        return f"BlaschkeProduct(degree={self.degree})"


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite atomic measure on the disk: points with nonnegative weights."""

    points: tuple
    weights: tuple

    def __init__(self, points, weights):
        points = tuple(check_disk_point(p) for p in points)
        weights = tuple(float(w) for w in weights)
        if len(points) != len(weights):
            raise ValueError("points and weights must have equal length")
        if any(w < 0 or not math.isfinite(w) for w in weights):
            raise ValueError("weights must be finite and nonnegative")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def natoms(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class EmbeddingReport:
    C_est: float
    A_test: float
    arg_sup: complex
    ratio: float
    bound: float
    passed: bool
    N: int
    grid_size: int

    def to_json_dict(self) -> dict:
        return {
            "C_est": self.C_est,
            "A_test": self.A_test,
            "arg_sup": [self.arg_sup.real, self.arg_sup.imag],
            "ratio": self.ratio,
            "bound": self.bound,
            "passed": self.passed,
            "N": self.N,
            "grid_size": self.grid_size,
        }


def _grid_size(N: int, deg_theta: int) -> int:
    return max(2 * N + 8, 4 * (N + deg_theta) + 64)


def _project_columns(theta: BlaschkeProduct, samples_fn, N: int, M: int, formula: str) -> np.ndarray:
    """Apply the projection to columns sampled on an M-point circle grid.

    ``samples_fn(z)`` returns an (M, ncols) matrix of analytic-function values
    at the grid points z.  Returns the (N+1, ncols) coefficient block of the
    projection images.
    """
    z = np.exp(2j * np.pi * np.arange(M) / M)
    ts = theta.evaluate(z)
    F = samples_fn(z)
    H = np.fft.fft(np.conj(ts)[:, None] * F, axis=0) / M
    half = M // 2
    if formula == "minus":
        mask = np.zeros(M, dtype=bool)
        mask[half + 1 :] = True  # negative frequencies -1 .. -(M-half-1)
        Hm = np.where(mask[:, None], H, 0.0)
        proj_samples = ts[:, None] * (np.fft.ifft(Hm, axis=0) * M)
    else:
        mask = np.zeros(M, dtype=bool)
        mask[: half + 1] = True  # frequencies 0 .. half
        Hp = np.where(mask[:, None], H, 0.0)
        proj_samples = F - ts[:, None] * (np.fft.ifft(Hp, axis=0) * M)
    C = np.fft.fft(proj_samples, axis=0) / M
    return C[: N + 1]


def projection_matrix(theta: BlaschkeProduct, N: int) -> np.ndarray:
    """Matrix of the model-space projection on the monomial basis 1..z^N.

    Computed twice (the two projection formulas on grids of different sizes)
    and cross-checked; raises :class:`TruncationError` on disagreement.
    """
    N = int(N)
    if N < theta.degree + DEGREE_GUARD:
        raise ValueError(f"N must be at least deg(theta) + {DEGREE_GUARD}")
    M = _grid_size(N, theta.degree)

    def monomials(z):
        return z[:, None] ** np.arange(N + 1)[None, :]

    via_minus = _project_columns(theta, monomials, N, M, "minus")
    via_plus = _project_columns(theta, monomials, N, 2 * M, "plus")
    disagreement = float(np.max(np.linalg.norm(via_minus - via_plus, axis=0)))
    if disagreement > CROSS_CHECK_TOL:
        raise TruncationError(disagreement, N)
    return via_plus


def model_projection(theta: BlaschkeProduct, f: TrigPolynomial, N: int) -> TrigPolynomial:
    """P_theta f as a degree-N analytic polynomial (both formulas cross-checked)."""
    if not f.is_analytic or f.dim != 1:
        raise ValueError("f must be a scalar analytic polynomial")
    N = int(N)
    deg_f = 0 if f.is_zero else f.n_max
    if N < deg_f + theta.degree + DEGREE_GUARD:
        raise ValueError(f"N must be at least deg(f) + deg(theta) + {DEGREE_GUARD}")
    M = _grid_size(N, theta.degree)

    def f_samples(z):
        return f.sample(z)[:, :1]

    via_minus = _project_columns(theta, f_samples, N, M, "minus")
    via_plus = _project_columns(theta, f_samples, N, 2 * M, "plus")
    disagreement = float(np.linalg.norm(via_minus - via_plus))
    if disagreement > CROSS_CHECK_TOL:
        raise TruncationError(disagreement, N)
    return TrigPolynomial(via_plus[:, 0], 0)


def elementary_projection(lam, f: TrigPolynomial, N: int | None = None) -> TrigPolynomial:
    """Projection onto the span of k_lam: (1-|lam|^2)^(1/2) f(lam) k_lam.

    For the elementary Blaschke factor at lam this is P_theta f in closed
    form, with exact norm^2 = (1-|lam|^2) |f(lam)|^2.
    """
    lam = check_disk_point(lam)
    if not f.is_analytic or f.dim != 1:
        raise ValueError("f must be a scalar analytic polynomial")
    k, _ = reproducing_kernel(lam, N)
    amp = math.sqrt(1.0 - abs(lam) ** 2) * harmonic_extension(f, lam)[0]
    return TrigPolynomial(k.coeffs * amp, 0)


def _stacked_matrix(mu: DiscreteMeasure, family, N: int) -> np.ndarray:
    if mu.natoms != len(family):
        raise ValueError("need exactly one Blaschke product per atom")
    blocks = []
    for w, theta in zip(mu.weights, family):
        blocks.append(math.sqrt(w) * projection_matrix(theta, N))
    if not blocks:
        return np.zeros((0, N + 1), dtype=complex)
    return np.vstack(blocks)


def embedding_norm(mu: DiscreteMeasure, family, N: int) -> float:
    """Best constant of sum_i w_i ||P_i f||^2 <= C ||f||^2 over degree-N polynomials.

    The largest singular value squared of the stacked sqrt(w_i) P_i matrix;
    a lower bound for the true embedding constant, nondecreasing in N.
    """
    S = _stacked_matrix(mu, family, N)
    if S.shape[0] == 0:
        return 0.0
    return float(np.linalg.svd(S, compute_uv=False)[0] ** 2)


def rkt_embedding_test(
    mu: DiscreteMeasure,
    family,
    grid: LambdaGrid | None = None,
    N: int = 64,
) -> EmbeddingReport:
    """Kernel testing bound vs. embedding constant, checked against 4e.

    A_test = sup_a sum_i w_i ||P_i k_a||^2 over the refinement grid; the pass
    condition is C_est <= 4e * A_test * (1 + 1e-6) * 1.01.
    """
    grid = grid or LambdaGrid()
    S = _stacked_matrix(mu, family, N)
    if S.shape[0] == 0:
        return EmbeddingReport(
            C_est=0.0, A_test=0.0, arg_sup=0j, ratio=0.0, bound=EMBEDDING_BOUND,
            passed=True, N=N, grid_size=grid.size,
        )
    C_est = float(np.linalg.svd(S, compute_uv=False)[0] ** 2)

    powers = np.arange(N + 1)

    def values_at(lams: np.ndarray) -> np.ndarray:
        K = np.sqrt(1.0 - np.abs(lams) ** 2)[None, :] * np.conj(lams)[None, :] ** powers[:, None]
        img = S @ K
        return np.sum(img.real**2 + img.imag**2, axis=0)

    A_test, arg_sup = sup_over_disk(values_at, grid)
    if A_test <= 0.0:
        ratio = math.inf if C_est > 0 else 0.0
    else:
        ratio = C_est / A_test
    passed = C_est <= EMBEDDING_BOUND * A_test * (1.0 + 1e-6) * 1.01 if A_test > 0 else C_est == 0.0
    return EmbeddingReport(
        C_est=C_est, A_test=A_test, arg_sup=arg_sup, ratio=ratio,
        bound=EMBEDDING_BOUND, passed=passed, N=N, grid_size=grid.size,
    )


def carleson_box_constant(mu: DiscreteMeasure) -> float:
    """Dyadic Carleson constant of nu = sum w_i (1 - |lam_i|^2) delta_{lam_i}.

    sup over dyadic boxes Q(I) = {r e^it : t in I, r >= 1 - |I|/2pi} of
    nu(Q) / (|I|/2pi), walking arc generations from the whole circle down to
    the finest scale still containing an atom.
    """
    if mu.natoms == 0:
        return 0.0
    pts = np.array(mu.points, dtype=complex)
    mass = np.array(mu.weights, dtype=float) * (1.0 - np.abs(pts) ** 2)
    radii = np.abs(pts)
    angles = np.mod(np.angle(pts), 2.0 * np.pi)
    k_max = 0
    for r in radii:
        if r > 0:
            k_max = max(k_max, int(math.floor(-math.log2(max(1.0 - r, 1e-300)))))
    best = 0.0
    for k in range(k_max + 1):
        ell = 2.0**-k
        inside = radii >= 1.0 - ell
        if not np.any(inside):
            continue
        arcs = np.minimum((angles[inside] / (2.0 * np.pi) * 2**k).astype(int), 2**k - 1)
        sums = {}
        for arc, m in zip(arcs, mass[inside]):
            sums[arc] = sums.get(arc, 0.0) + m
        best = max(best, max(sums.values()) / ell)
    return best
