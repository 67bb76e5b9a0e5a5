"""Discretized matrix-valued Schwartz space on the periodic box.

A ModuleFunction samples a map R^n -> M_k(C) on a GridSpec.  The space
carries the algebra-valued inner product <f, g> = integral f(x)* g(x) dx,
realized as the plain Riemann sum (spectrally accurate for smooth decayed
integrands on the periodic box), the norm ||f||_2 = ||<f, f>||^(1/2), the
symmetric-normalization Fourier transform, and weighted sup-seminorms
||x^alpha D^beta f||_inf.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraElement, cnorm, cnorm_entries
from .errors import CapabilityError, GridMismatchError
from .grids import GridSpec, axis_shift, axis_transform, central_derivative, \
    spectral_derivative


@dataclass(frozen=True)
class ModuleFunction:
    """A sampled function R^n -> M_k(C) on a uniform periodic grid.

    samples has shape grid.shape + (k, k), complex.
    """

    grid: GridSpec
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex)
        k = arr.shape[-1]
        if arr.shape != self.grid.shape + (k, k):
            raise GridMismatchError(
                f"samples shape {arr.shape} does not match grid {self.grid.shape} + (k, k)")
        object.__setattr__(self, "samples", arr)

    @property
    def algebra_dim(self) -> int:
        return self.samples.shape[-1]

    @classmethod
    def from_scalar(cls, grid: GridSpec, values: np.ndarray,
                    matrix: np.ndarray | None = None) -> "ModuleFunction":
        """Scalar field times a constant matrix (identity 1x1 by default)."""
        values = np.asarray(values, dtype=complex)
        if matrix is None:
            matrix = np.ones((1, 1), dtype=complex)
        matrix = np.asarray(matrix, dtype=complex)
        return cls(grid, values[..., None, None] * matrix)

    @classmethod
    def from_function(cls, grid: GridSpec, fn, algebra_dim: int = 1) -> "ModuleFunction":
        """Sample fn(*coords) -> array broadcastable to grid.shape + (k, k)."""
        vals = np.asarray(fn(*grid.mesh()), dtype=complex)
        if vals.shape == grid.shape:
            vals = vals[..., None, None] * np.eye(algebra_dim)
        return cls(grid, np.broadcast_to(vals, grid.shape + (algebra_dim,) * 2).copy())

    def __add__(self, other: "ModuleFunction") -> "ModuleFunction":
        _check_compatible(self, other)
        return ModuleFunction(self.grid, self.samples + other.samples)

    def __sub__(self, other: "ModuleFunction") -> "ModuleFunction":
        _check_compatible(self, other)
        return ModuleFunction(self.grid, self.samples - other.samples)

    def __mul__(self, scalar: complex) -> "ModuleFunction":
        return ModuleFunction(self.grid, self.samples * scalar)

    __rmul__ = __mul__

    def right_multiply(self, a: AlgebraElement) -> "ModuleFunction":
        """The module action f -> f*a (pointwise right matrix multiplication)."""
        return ModuleFunction(self.grid, self.samples @ a.entries)

    def sup_norm(self) -> float:
        return float(cnorm_entries(self.samples).max())


def _check_compatible(f: ModuleFunction, g: ModuleFunction):
    if not f.grid.compatible(g.grid) or f.algebra_dim != g.algebra_dim:
        raise GridMismatchError("module functions on different grids or algebra dims")


def inner_product(f: ModuleFunction, g: ModuleFunction) -> AlgebraElement:
    """<f, g> = integral f(x)* g(x) dx, conjugate-linear in f, linear in g."""
    _check_compatible(f, g)
    weight = f.grid.spacing ** f.grid.n
    axes = tuple(range(f.grid.n))
    acc = np.einsum(f.samples.conj(), [*axes, f.grid.n + 1, f.grid.n],
                    g.samples, [*axes, f.grid.n + 1, f.grid.n + 2],
                    [f.grid.n, f.grid.n + 2])
    return AlgebraElement(weight * acc)


def module_norm(f: ModuleFunction) -> float:
    """||f||_2 = ||<f, f>||^(1/2) with the C*-norm of the Gram matrix."""
    return float(np.sqrt(max(cnorm(inner_product(f, f)), 0.0)))


def fourier(f: ModuleFunction, inverse: bool = False) -> ModuleFunction:
    """Symmetric-normalization Fourier transform, entrywise over the matrix.

    Forward: F(f)(xi) = (2*pi)^(-n/2) * integral e^{-i x xi} f(x) dx sampled
    on the ascending dual grid; the result lives on f.grid.dual(), so inner
    products of transforms carry the frequency-side measure and Parseval
    holds exactly.  inverse=True applies e^{+i x xi} with the dual measure.
    """
    g = f.grid
    d = g.dual()
    out = f.samples
    for ax in range(g.n):
        if inverse:
            out = axis_transform(out, ax, d.spacing, -d.half_width, inverse=True)
        else:
            out = axis_transform(out, ax, g.spacing, -g.half_width)
    return ModuleFunction(d, out)


def translate(f: ModuleFunction, z) -> ModuleFunction:
    """Samples of x -> f(x - z), trig-interpolated (exact for commensurate z)."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    out = f.samples
    g = f.grid
    for ax in range(g.n):
        if z[ax] != 0.0:
            out = axis_shift(out, ax, g.spacing, -g.half_width, z[ax])
    return ModuleFunction(g, out)


def modulate(f: ModuleFunction, zeta, phase: float = 0.0) -> ModuleFunction:
    """Samples of x -> e^{i*phase} e^{i zeta.x} f(x)."""
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    mesh = f.grid.mesh()
    arg = sum(zeta[ax] * mesh[ax] for ax in range(f.grid.n)) + phase
    return ModuleFunction(f.grid, np.exp(1j * arg)[..., None, None] * f.samples)


def schwartz_seminorm(f: ModuleFunction, alpha=(), beta=(),
                      scheme: str = "central4") -> float:
    """sup over the grid of ||x^alpha * D^beta f(x)||.

    alpha and beta are multi-indices of length n.  Derivatives use 4th-order
    central differences with periodic wrap, or exact Fourier multipliers when
    scheme="spectral".  Central differencing supports |beta| <= 4.
    """
    g = f.grid
    alpha = tuple(alpha) if alpha else (0,) * g.n
    beta = tuple(beta) if beta else (0,) * g.n
    if len(alpha) != g.n or len(beta) != g.n:
        raise ValueError("multi-index length must equal grid dimension")
    if scheme == "central4" and sum(beta) > 4:
        raise CapabilityError("central differencing supports derivative order <= 4")
    if scheme not in ("central4", "spectral"):
        raise CapabilityError(f"unknown derivative scheme {scheme!r}")
    out = f.samples
    for ax, b in enumerate(beta):
        if b == 0:
            continue
        if scheme == "spectral":
            out = spectral_derivative(out, ax, g.spacing, -g.half_width, order=b)
        else:
            out = central_derivative(out, ax, g.spacing, order=b)
    mesh = g.mesh()
    weight = np.ones(g.shape)
    for ax, a in enumerate(alpha):
        if a:
            weight = weight * mesh[ax] ** a
    return float((np.abs(weight) * cnorm_entries(out)).max())


def boundary_report(f: ModuleFunction, layers: int = 2) -> float:
    """Largest sample norm in the outermost grid layers (decay diagnostic)."""
    mags = cnorm_entries(f.samples)
    best = 0.0
    for ax in range(f.grid.n):
        sl_lo = [slice(None)] * f.grid.n
        sl_hi = [slice(None)] * f.grid.n
        sl_lo[ax] = slice(0, layers)
        sl_hi[ax] = slice(-layers, None)
        best = max(best, float(mags[tuple(sl_lo)].max()), float(mags[tuple(sl_hi)].max()))
    return best
