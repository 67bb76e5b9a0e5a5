"""Uniform periodic grids on [-L, L)^n and their Fourier duals.

Conventions, written out once and used everywhere:

  * spatial nodes      x_j   = -L + j*h,          h = 2L/N,  j = 0..N-1
  * dual (frequency)   xi_m  = (pi/L) * m,        m = -N/2..N/2-1 (ascending)
  * forward transform  F(xi) = (2*pi)^(-1/2) * integral e^{-i x xi} f(x) dx
    realized per axis as

        F_m = (2*pi)^(-1/2) * h * exp(-i*x0*xi_m) * DFT_m((-1)^j f_j)

    because x_j*xi_m = x0*xi_m + 2*pi*j*m/N - pi*j.  The inverse applies the
    conjugate phases with measure dxi = pi/L.  Round trips are exact.

The same helper transforms axes whose nodes start at any offset x0 with any
spacing dx (used for the frequency slots of phase-space symbols, whose dual
grid is the spatial grid again).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class GridSpec:
    """Truncated uniform grid on the box [-L, L)^n."""

    n: int
    points: int
    half_width: float

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError(f"spatial dimension must be 1 or 2, got {self.n}")
        if self.points < 8 or self.points % 2 != 0:
            raise ValueError(f"points must be even and >= 8, got {self.points}")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    @property
    def dual_spacing(self) -> float:
        return np.pi / self.half_width

    @property
    def shape(self) -> tuple:
        return (self.points,) * self.n

    def dual(self) -> "GridSpec":
        """The frequency-side grid: same point count, box [-pi/h, pi/h)^n.

        Its spacing is this grid's dual_spacing, and its dual is this grid
        again (up to float rounding; compare grids with `compatible`).
        """
        return GridSpec(self.n, self.points,
                        self.points * np.pi / (2.0 * self.half_width))

    def compatible(self, other: "GridSpec") -> bool:
        return (self.n == other.n and self.points == other.points
                and np.isclose(self.half_width, other.half_width,
                               rtol=1e-12, atol=0.0))

    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)

    def dual_axis(self) -> np.ndarray:
        return self.dual_spacing * np.arange(-self.points // 2, self.points // 2)

    def mesh(self) -> list:
        """Coordinate arrays of shape self.shape, one per dimension."""
        return list(np.meshgrid(*([self.axis()] * self.n), indexing="ij"))

    def dual_mesh(self) -> list:
        return list(np.meshgrid(*([self.dual_axis()] * self.n), indexing="ij"))


def axis_transform(samples: np.ndarray, axis: int, dx: float, x0: float,
                   inverse: bool = False) -> np.ndarray:
    """Symmetric-normalization Fourier transform along one uniform axis.

    Input nodes are x_j = x0 + j*dx; output nodes are the ascending dual
    frequencies nu_m = (m - M/2) * 2*pi/(M*dx).  The inverse maps back.
    """
    m = samples.shape[axis]
    nu = (TWO_PI / (m * dx)) * np.arange(-m // 2, m // 2)
    alt = np.where(np.arange(m) % 2 == 0, 1.0, -1.0)
    shape = [1] * samples.ndim
    shape[axis] = m
    alt = alt.reshape(shape)
    if not inverse:
        out = np.fft.fft(samples * alt, axis=axis)
        phase = np.exp(-1j * x0 * nu).reshape(shape)
        return (dx / np.sqrt(TWO_PI)) * phase * out
    phase = np.exp(1j * x0 * nu).reshape(shape)
    out = np.fft.ifft(samples * phase, axis=axis)
    dnu = TWO_PI / (m * dx)
    return (m * dnu / np.sqrt(TWO_PI)) * alt * out


def axis_shift(samples: np.ndarray, axis: int, dx: float, x0: float,
               t: float) -> np.ndarray:
    """Samples of f(x - t) along one axis via trigonometric interpolation.

    Exact for band-limited data; exact translation when t is a multiple of dx.
    """
    hat = axis_transform(samples, axis, dx, x0)
    m = samples.shape[axis]
    nu = (TWO_PI / (m * dx)) * np.arange(-m // 2, m // 2)
    shape = [1] * samples.ndim
    shape[axis] = m
    hat = hat * np.exp(-1j * t * nu).reshape(shape)
    return axis_transform(hat, axis, dx, x0, inverse=True)


def spectral_derivative(samples: np.ndarray, axis: int, dx: float, x0: float,
                        order: int = 1) -> np.ndarray:
    """d^order/dx^order along one axis by Fourier multiplier (i*nu)^order."""
    hat = axis_transform(samples, axis, dx, x0)
    m = samples.shape[axis]
    nu = (TWO_PI / (m * dx)) * np.arange(-m // 2, m // 2)
    shape = [1] * samples.ndim
    shape[axis] = m
    hat = hat * ((1j * nu) ** order).reshape(shape)
    return axis_transform(hat, axis, dx, x0, inverse=True)


def central_derivative(samples: np.ndarray, axis: int, dx: float,
                       order: int = 1) -> np.ndarray:
    """Repeated 4th-order central first differences with periodic wrap."""
    out = samples
    for _ in range(order):
        p1 = np.roll(out, -1, axis=axis)
        m1 = np.roll(out, 1, axis=axis)
        p2 = np.roll(out, -2, axis=axis)
        m2 = np.roll(out, 2, axis=axis)
        out = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * dx)
    return out
