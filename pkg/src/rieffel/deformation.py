"""The deformed product x_J, its left/right actions, and the mollifier family.

The product of F and G induced by an antisymmetric matrix J is

    (F x_J G)(x) = integral F(x+Ju) G(x+v) e^{i u.v}  d/u d/v,
    d/u = (2*pi)^(-n/2) du,

equivalently the single-Fourier form

    (F x_J G)(x) = integral e^{i u(x-v)} F(x-Ju) G(v)  d/v d/u.

On the periodic grid the single-Fourier form collapses to an exact twisted
convolution of Fourier coefficients,

    C^(r) = (2*pi)^(-n/2) * dxi^n * sum_{p+q=r}  e^{-i p.Jq}  F^(p) G^(q),

where p, q run over the in-band dual lattice and p+q wraps.  For n = 2 every
antisymmetric J is theta*[[0,1],[-1,0]], so the twist e^{-i theta (p1 q2 -
p2 q1)} splits into separate (p1,q2) and (p2,q1) factors; sweeping q2 turns
the remaining q1-sum into a cyclic convolution done by FFT.  This evaluates
the product exactly (to roundoff) for band-limited factors in
O(N^(n+1) log N) instead of the naive O(N^(2n)).

Matrix order: values of the left factor always multiply from the left.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraElement
from .errors import DivergenceError, GridMismatchError, ResolutionError
from .grids import GridSpec, axis_transform
from .module_space import ModuleFunction, _check_compatible

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SkewForm:
    """Real antisymmetric n x n matrix defining the deformation."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("J must be square")
        if not np.array_equal(arr, -arr.T):
            raise ValueError("J must be exactly antisymmetric")
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def theta(self) -> float:
        """The (1,2) entry; every 2x2 antisymmetric matrix is theta*Omega."""
        if self.n == 1:
            return 0.0
        return float(self.entries[0, 1])

    @classmethod
    def zero(cls, n: int) -> "SkewForm":
        return cls(np.zeros((n, n)))

    @classmethod
    def standard(cls, theta: float, n: int = 2) -> "SkewForm":
        """theta * [[0, 1], [-1, 0]] for n = 2; the zero form for n = 1."""
        if n == 1:
            if theta != 0.0:
                raise ValueError("the only antisymmetric 1x1 matrix is zero")
            return cls.zero(1)
        return cls(np.array([[0.0, theta], [-theta, 0.0]]))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.entries @ np.asarray(v, dtype=float)

    def rescaled(self, factor: float) -> "SkewForm":
        return SkewForm(self.entries * factor)


def _grid_fourier(samples: np.ndarray, grid: GridSpec, inverse: bool = False) -> np.ndarray:
    out = samples
    for ax in range(grid.n):
        out = axis_transform(out, ax, grid.spacing, -grid.half_width, inverse=inverse)
    return out


def twisted_coefficients(fhat: np.ndarray, ghat: np.ndarray, grid: GridSpec,
                         theta: float) -> np.ndarray:
    """Fourier coefficients of the deformed product from factor coefficients."""
    n, npts = grid.n, grid.points
    xi = grid.dual_axis()
    scale = (TWO_PI) ** (-n / 2.0) * grid.dual_spacing ** n
    if n == 1 or theta == 0.0:
        # plain cyclic convolution with in-band wrap
        axes = tuple(range(n))
        a = np.roll(fhat, (-(npts // 2),) * n, axis=axes)
        fa = np.fft.fftn(a, axes=axes)
        fb = np.fft.fftn(ghat, axes=axes)
        prod = np.einsum("...ab,...bc->...ac", fa, fb)
        return scale * np.fft.ifftn(prod, axes=axes)

    out = np.zeros_like(fhat)
    half = npts // 2
    for q2 in range(npts):
        # left factor picks up e^{-i theta xi(p1) xi(q2)}
        mod = np.exp(-1j * theta * xi * xi[q2])
        a = fhat * mod[:, None, None, None]
        a = np.roll(a, -half, axis=0)
        fa = np.fft.fft(a, axis=0)
        # right factor picks up e^{+i theta xi(p2) xi(q1)}, indexed [q1, p2]
        bphase = np.exp(1j * theta * np.outer(xi, xi))  # [q1, p2]
        b = ghat[:, q2][:, None, :, :] * bphase[:, :, None, None]
        fb = np.fft.fft(b, axis=0)
        d = np.fft.ifft(np.einsum("zpab,zpbc->zpac", fa, fb), axis=0)
        out += np.roll(d, q2 - half, axis=1)
    return scale * out


def deformed_product(f: ModuleFunction, g: ModuleFunction, J: SkewForm,
                     rieffel_convention: bool = False) -> ModuleFunction:
    """(f x_J g) on the grid; rieffel_convention rescales J by 2*pi."""
    _check_compatible(f, g)
    if J.n != f.grid.n:
        raise GridMismatchError(f"J dimension {J.n} != grid dimension {f.grid.n}")
    theta = J.theta * (TWO_PI if rieffel_convention else 1.0)
    fhat = _grid_fourier(f.samples, f.grid)
    ghat = _grid_fourier(g.samples, g.grid)
    chat = twisted_coefficients(fhat, ghat, f.grid, theta)
    return ModuleFunction(f.grid, _grid_fourier(chat, f.grid, inverse=True))


def left_action(f: ModuleFunction, g: ModuleFunction, J: SkewForm) -> ModuleFunction:
    """L_f g = f x_J g; a right-module map (commutes with g -> g*a)."""
    return deformed_product(f, g, J)


def right_action(g: ModuleFunction, f: ModuleFunction, J: SkewForm) -> ModuleFunction:
    """R_g f = f x_J g; not a right-module map for noncommutative coefficients."""
    return deformed_product(f, g, J)


# ---------------------------------------------------------------------------
# cutoff families and the slow oscillatory-integral oracle


def bump_profile(r: np.ndarray) -> np.ndarray:
    """The C^inf bump exp(1 - 1/(1 - r^2)) on |r| < 1, zero outside."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    inside = np.abs(r) < 1.0
    ri = r[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ri * ri))
    return out


def _smoothstep(t: np.ndarray) -> np.ndarray:
    """C^inf transition, 0 at t<=0 rising to 1 at t>=1."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        e0 = np.where(t > 0.0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        e1 = np.where(t < 1.0, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return e0 / (e0 + e1)


@dataclass(frozen=True)
class CutoffFamily:
    """Smooth plateau cutoffs psi_m: identically 1 on |x| <= plateau*r_m,
    supported in |x| < r_m, with radii r_m = base_radius * 2^m."""

    base_radius: float = 2.0
    rungs: int = 4
    plateau: float = 0.5

    def radius(self, m: int) -> float:
        return self.base_radius * 2.0 ** m

    def evaluate(self, m: int, points: np.ndarray) -> np.ndarray:
        """psi_m at points of shape (..., n)."""
        r = np.linalg.norm(np.atleast_2d(points), axis=-1).reshape(
            np.asarray(points).shape[:-1])
        rm = self.radius(m)
        return _smoothstep((rm - r) / (rm * (1.0 - self.plateau)))


def oscillatory_integral(amplitude, n: int, cutoffs: CutoffFamily,
                         nodes_per_unit: float = 4.0, tol: float = 1e-4,
                         algebra_dim: int = 1):
    """Cutoff-regularized evaluation of
    integral amplitude(u, v) e^{i u.v} d/u d/v over R^{2n}.

    amplitude(u, v) takes arrays of shape (..., n) and returns (..., k, k).
    Walks the radius ladder until successive values are Cauchy within tol;
    returns (AlgebraElement, report dict).  This is the slow reference path
    that the fast product is validated against.
    """
    values = []
    for m in range(cutoffs.rungs):
        rad = cutoffs.radius(m)
        npts = max(8, int(np.ceil(2 * rad * nodes_per_unit / 2)) * 2)
        ax = np.linspace(-rad, rad, npts, endpoint=False)
        du = ax[1] - ax[0]
        ugrid = np.stack(np.meshgrid(*([ax] * n), indexing="ij"), axis=-1).reshape(-1, n)
        psi_u = cutoffs.evaluate(m, ugrid)
        keep = psi_u > 1e-300
        ugrid, psi_u = ugrid[keep], psi_u[keep]
        total = np.zeros((algebra_dim, algebra_dim), dtype=complex)
        chunk = max(1, 2_000_000 // max(len(ugrid), 1))
        for lo in range(0, len(ugrid), chunk):
            ub = ugrid[lo:lo + chunk]
            wu = psi_u[lo:lo + chunk]
            phase = np.exp(1j * (ub @ ugrid.T))            # [u, v]
            amp = amplitude(ub[:, None, :], ugrid[None, :, :])  # [u, v, k, k]
            w = (wu[:, None] * psi_u[None, :]) * phase
            total += np.einsum("uv,uvab->ab", w, amp)
        values.append(total * (du ** (2 * n)) * TWO_PI ** (-n))
        if m > 0:
            gap = float(np.linalg.norm(values[-1] - values[-2], ord=2))
            if gap <= tol:
                return AlgebraElement(values[-1]), {
                    "converged": True, "rungs_used": m + 1, "cauchy_gap": gap}
    gap = float(np.linalg.norm(values[-1] - values[-2], ord=2)) if len(values) > 1 else np.inf
    if gap > tol:
        raise DivergenceError(
            f"oscillatory integral Cauchy gap {gap:.3e} above {tol:.3e} at max radius")
    return AlgebraElement(values[-1]), {
        "converged": True, "rungs_used": cutoffs.rungs, "cauchy_gap": gap}


# ---------------------------------------------------------------------------
# approximate identity


def mollifier_hat(index: int, grid: GridSpec) -> np.ndarray:
    """Frequency samples of the scaled bump psi_index, mass-normalized.

    psi_index(xi) = index^n psi(index*xi) supported in |xi| < 1/index; the
    discrete mass dxi^n * sum is normalized to exactly 1, which keeps the
    mollifier an approximate identity on the grid.
    """
    if index < 1:
        raise ValueError("index must be >= 1")
    xi = grid.dual_mesh()
    r = np.sqrt(sum(c * c for c in xi)) * index
    raw = bump_profile(r)
    # require at least ~1.5 dual spacings inside the support per axis
    if 1.0 / index < 1.5 * grid.dual_spacing:
        raise ResolutionError(
            f"mollifier support 1/{index} below dual resolution {grid.dual_spacing:.4f}")
    mass = raw.sum() * grid.dual_spacing ** grid.n
    return raw / mass


def approximate_identity(index: int, J: SkewForm, grid: GridSpec,
                         algebra_dim: int = 1) -> ModuleFunction:
    """The mollifier e_index with L_{e_index} f -> f as index grows.

    Built by inverse transform of the normalized frequency bump tensored
    with the identity matrix (the approximate unit of a unital algebra).
    """
    if J.n != grid.n:
        raise GridMismatchError("J dimension does not match grid")
    psi = mollifier_hat(index, grid)
    hat = (TWO_PI ** (grid.n / 2.0)) * psi[..., None, None] * np.eye(algebra_dim)
    return ModuleFunction(grid, _grid_fourier(hat, grid, inverse=True))
