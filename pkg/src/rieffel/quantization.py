"""Kohn-Nirenberg quantization of matrix-valued phase-space symbols.

A symbol a(x, xi) acts on module functions through

    a(x,D) u(x) = integral e^{i x xi} a(x, xi) u^(xi) d/xi,

with the frequency integral realized on the dual grid.  The module also
provides the sup-derivative seminorm pi(a) over multi-indices <= (1,...,1),
the adjoint symbol p with <a(x,D)u, v> = <u, p(x,D)v>, the symbol-to-kernel
transform, and a randomized lower estimate of the operator norm.

Symbol backings:

  * CallableSymbol    -- closed-form evaluator, optional analytic partials
  * TrigPolySymbol    -- finite sum  C e^{i p.x} e^{i w.xi}  (band-limited;
                         derivatives, shifts, adjoints and quantized
                         application are all exact and fast)
  * GridSymbol        -- samples on grid.axis()^n x grid.dual_axis()^n with
                         spectral derivatives
  * TranslationSymbol -- a(x, xi) = F(x - J xi), the symbols of the left
                         actions L_F

The adjoint symbol uses the fact that p is the convolution of a* against the
kernel e^{-i z.eta} (2*pi)^(-n), whose 2n-dimensional Fourier transform is
the pure phase e^{i u.w}: p = Finv[ F[a*](u, w) * e^{i u.w} ].
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import cnorm_entries
from .deformation import SkewForm, left_action
from .errors import CapabilityError, GridMismatchError
from .grids import GridSpec, axis_transform
from .module_space import ModuleFunction, fourier, module_norm, modulate, translate

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# symbol backings


class PhaseSymbol:
    """Base class: a function R^n x R^n -> M_k(C)."""

    n: int
    algebra_dim: int

    def eval(self, x, xi) -> np.ndarray:
        """Evaluate at coordinate arrays x = (x_1..x_n), xi = (xi_1..xi_n),
        broadcastable against each other; returns broadcast shape + (k, k)."""
        raise NotImplementedError

    def partial(self, dx, dxi) -> "PhaseSymbol":
        """The symbol d^dx_x d^dxi_xi a; dx, dxi are multi-indices."""
        raise CapabilityError(f"{type(self).__name__} has no derivative capability")

    def shift(self, z, zeta) -> "PhaseSymbol":
        """The symbol (x, xi) -> a(x + z, xi + zeta)."""
        raise CapabilityError(f"{type(self).__name__} has no shift capability")

    def star(self) -> "PhaseSymbol":
        """Pointwise involution (x, xi) -> a(x, xi)*."""
        raise CapabilityError(f"{type(self).__name__} has no star capability")

    def _coords(self, z, zeta):
        return list(z), list(zeta)


class CallableSymbol(PhaseSymbol):
    """Closed-form symbol; fn(x, xi) -> broadcast + (k, k).

    partials, when given, maps (dx, dxi) multi-index pairs to evaluators of
    the same signature (analytic derivative scheme).
    """

    def __init__(self, n, algebra_dim, fn, partials=None):
        self.n = n
        self.algebra_dim = algebra_dim
        self.fn = fn
        self.partials = partials or {}

    def eval(self, x, xi):
        return np.asarray(self.fn(list(x), list(xi)), dtype=complex)

    def partial(self, dx, dxi):
        dx, dxi = tuple(dx), tuple(dxi)
        if sum(dx) == sum(dxi) == 0:
            return self
        key = (dx, dxi)
        if key not in self.partials:
            raise CapabilityError(f"no analytic partial for {key}")
        return CallableSymbol(self.n, self.algebra_dim, self.partials[key])

    def shift(self, z, zeta):
        z = np.asarray(z, dtype=float)
        zeta = np.asarray(zeta, dtype=float)
        shifted_partials = {
            key: (lambda x, xi, f=f: f([x[d] + z[d] for d in range(self.n)],
                                       [xi[d] + zeta[d] for d in range(self.n)]))
            for key, f in self.partials.items()}
        return CallableSymbol(
            self.n, self.algebra_dim,
            lambda x, xi: self.fn([x[d] + z[d] for d in range(self.n)],
                                  [xi[d] + zeta[d] for d in range(self.n)]),
            shifted_partials)

    def star(self):
        return CallableSymbol(
            self.n, self.algebra_dim,
            lambda x, xi: np.swapaxes(np.conj(self.fn(x, xi)), -1, -2))


class TrigPolySymbol(PhaseSymbol):
    """Finite trigonometric polynomial  sum_t C_t e^{i p_t.x} e^{i w_t.xi}."""

    def __init__(self, n, algebra_dim, terms):
        """terms: list of (p, w, coeff) with p, w length-n vectors and coeff
        a (k, k) matrix."""
        self.n = n
        self.algebra_dim = algebra_dim
        self.terms = [(np.asarray(p, dtype=float), np.asarray(w, dtype=float),
                       np.asarray(c, dtype=complex)) for p, w, c in terms]

    def eval(self, x, xi):
        x, xi = self._coords(x, xi)
        shape = np.broadcast(*(list(np.atleast_1d(c) for c in x + xi))).shape
        out = np.zeros(shape + (self.algebra_dim,) * 2, dtype=complex)
        for p, w, c in self.terms:
            arg = sum(p[d] * np.asarray(x[d]) for d in range(self.n)) + \
                sum(w[d] * np.asarray(xi[d]) for d in range(self.n))
            out += np.exp(1j * arg)[..., None, None] * c
        return out

    def partial(self, dx, dxi):
        terms = []
        for p, w, c in self.terms:
            fac = np.prod([(1j * p[d]) ** dx[d] for d in range(self.n)]) * \
                np.prod([(1j * w[d]) ** dxi[d] for d in range(self.n)])
            terms.append((p, w, fac * c))
        return TrigPolySymbol(self.n, self.algebra_dim, terms)

    def shift(self, z, zeta):
        z, zeta = np.asarray(z, float), np.asarray(zeta, float)
        return TrigPolySymbol(self.n, self.algebra_dim, [
            (p, w, np.exp(1j * (p @ z + w @ zeta)) * c) for p, w, c in self.terms])

    def star(self):
        return TrigPolySymbol(self.n, self.algebra_dim, [
            (-p, -w, c.conj().T) for p, w, c in self.terms])

    def adjoint(self) -> "TrigPolySymbol":
        """Exact adjoint symbol: the term C e^{i(p.x + w.xi)} contributes
        C* e^{i w.p} e^{-i(p.x + w.xi)} (delta collapse of the twisted
        double integral)."""
        return TrigPolySymbol(self.n, self.algebra_dim, [
            (-p, -w, np.exp(1j * (w @ p)) * c.conj().T) for p, w, c in self.terms])


class GridSymbol(PhaseSymbol):
    """Symbol sampled on grid.axis()^n (x slots) x grid.dual_axis()^n (xi)."""

    def __init__(self, grid: GridSpec, samples: np.ndarray):
        self.grid = grid
        self.n = grid.n
        samples = np.asarray(samples, dtype=complex)
        k = samples.shape[-1]
        if samples.shape != grid.shape * 2 + (k, k):
            raise GridMismatchError("grid symbol samples have wrong shape")
        self.samples = samples
        self.algebra_dim = k

    def _axis_params(self, ax: int):
        """(spacing, origin) of sample axis ax (x slots then xi slots)."""
        g = self.grid
        if ax < g.n:
            return g.spacing, -g.half_width
        return g.dual_spacing, float(g.dual_axis()[0])

    def eval(self, x, xi):
        x, xi = self._coords(x, xi)
        g = self.grid
        idx = []
        for ax, coords in enumerate(x + xi):
            dx, x0 = self._axis_params(ax)
            j = np.rint((np.asarray(coords, dtype=float) - x0) / dx).astype(int)
            if not np.allclose(j * dx + x0, coords, atol=1e-9 * dx):
                raise CapabilityError("grid symbol evaluated off its sample nodes")
            idx.append(j % g.points)
        idx = np.broadcast_arrays(*idx)
        return self.samples[tuple(idx)]

    def partial(self, dx, dxi):
        out = self.samples
        for ax, order in enumerate(tuple(dx) + tuple(dxi)):
            if order:
                d, x0 = self._axis_params(ax)
                hat = axis_transform(out, ax, d, x0)
                m = out.shape[ax]
                nu = (TWO_PI / (m * d)) * np.arange(-m // 2, m // 2)
                shape = [1] * out.ndim
                shape[ax] = m
                hat = hat * ((1j * nu) ** order).reshape(shape)
                out = axis_transform(hat, ax, d, x0, inverse=True)
        return GridSymbol(self.grid, out)

    def shift(self, z, zeta):
        out = self.samples
        for ax, t in enumerate(tuple(z) + tuple(zeta)):
            if t:
                d, x0 = self._axis_params(ax)
                hat = axis_transform(out, ax, d, x0)
                m = out.shape[ax]
                nu = (TWO_PI / (m * d)) * np.arange(-m // 2, m // 2)
                shape = [1] * out.ndim
                shape[ax] = m
                # samples of a(. + t): translate by -t
                hat = hat * np.exp(1j * float(t) * nu).reshape(shape)
                out = axis_transform(hat, ax, d, x0, inverse=True)
        return GridSymbol(self.grid, out)

    def star(self):
        return GridSymbol(self.grid, np.swapaxes(self.samples.conj(), -1, -2))


class TranslationSymbol(PhaseSymbol):
    """a(x, xi) = F(x - J xi): the symbol of the left action L_F."""

    def __init__(self, F: ModuleFunction, J: SkewForm):
        if J.n != F.grid.n:
            raise GridMismatchError("J dimension does not match F's grid")
        self.F = F
        self.J = J
        self.n = F.grid.n
        self.algebra_dim = F.algebra_dim

    def eval(self, x, xi):
        x, xi = self._coords(x, xi)
        # F evaluated by its Fourier series at y = x - J xi
        g = self.F.grid
        from .deformation import _grid_fourier
        fhat = _grid_fourier(self.F.samples, g)
        dual = g.dual_mesh()
        y = [np.asarray(x[d]) - sum(self.J.entries[d, e] * np.asarray(xi[e])
                                    for e in range(self.n)) for d in range(self.n)]
        shape = np.broadcast(*(np.atleast_1d(c) for c in y)).shape
        out = np.zeros(shape + (self.algebra_dim,) * 2, dtype=complex)
        scale = (TWO_PI) ** (-g.n / 2.0) * g.dual_spacing ** g.n
        flatq = np.stack([d.ravel() for d in dual], axis=-1)
        fh = fhat.reshape(-1, self.algebra_dim, self.algebra_dim)
        for t in range(flatq.shape[0]):
            if not np.any(fh[t]):
                continue
            arg = sum(flatq[t, d] * y[d] for d in range(self.n))
            out += np.exp(1j * arg)[..., None, None] * fh[t]
        return scale * out

    def partial(self, dx, dxi):
        from .grids import spectral_derivative
        g = self.F.grid
        out = self.F.samples
        # d/dxi_i = sum_j J_ij d/dy_j; expand the xi-orders into y-derivatives
        work = [(np.ones((), dtype=complex), out)]
        for d in range(self.n):
            for _ in range(dx[d]):
                work = [(c, spectral_derivative(s, d, g.spacing, -g.half_width))
                        for c, s in work]
        for i in range(self.n):
            for _ in range(dxi[i]):
                new = []
                for c, s in work:
                    for j in range(self.n):
                        coef = self.J.entries[i, j]
                        if coef:
                            new.append((c * coef,
                                        spectral_derivative(s, j, g.spacing, -g.half_width)))
                work = new
        total = sum(c * s for c, s in work) if work else np.zeros_like(out)
        return TranslationSymbol(ModuleFunction(g, total), self.J)

    def shift(self, z, zeta):
        # a(x+z, xi+zeta) = F'(x - J xi) with F'(y) = F(y + z - J zeta)
        offset = np.asarray(z, float) - self.J.apply(np.asarray(zeta, float))
        return TranslationSymbol(translate(self.F, -offset), self.J)

    def star(self):
        return TranslationSymbol(
            ModuleFunction(self.F.grid, np.swapaxes(self.F.samples.conj(), -1, -2)),
            self.J)


def constant_symbol(n: int, matrix: np.ndarray) -> TrigPolySymbol:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    zero = np.zeros(n)
    return TrigPolySymbol(n, matrix.shape[0], [(zero, zero, matrix)])


def sample_symbol(a: PhaseSymbol, grid: GridSpec) -> GridSymbol:
    """Sample any symbol onto the product grid grid.axis^n x grid.dual_axis^n."""
    if isinstance(a, GridSymbol) and a.grid.compatible(grid):
        return a
    if isinstance(a, TranslationSymbol) and a.F.grid.compatible(grid):
        # shear fast path: translate along x-axis d by (J xi)_d, realized as
        # one frequency-phase multiply per axis over the whole product grid
        n, k = grid.n, a.algebra_dim
        xim = grid.dual_mesh()
        out = np.broadcast_to(
            a.F.samples.reshape(grid.shape + (1,) * n + (k, k)),
            grid.shape * 2 + (k, k)).copy()
        for d in range(n):
            t = sum(a.J.entries[d, e] * xim[e] for e in range(n))
            if np.allclose(t, 0.0):
                continue
            hat = axis_transform(out, d, grid.spacing, -grid.half_width)
            nu_shape = [1] * (2 * n)
            nu_shape[d] = grid.points
            nu = grid.dual_axis().reshape(nu_shape)
            hat = hat * np.exp(-1j * nu * t.reshape((1,) * n + grid.shape))[..., None, None]
            out = axis_transform(hat, d, grid.spacing, -grid.half_width, inverse=True)
        return GridSymbol(grid, out)
    xs = grid.axis()
    xis = grid.dual_axis()
    coords = np.meshgrid(*([xs] * grid.n + [xis] * grid.n), indexing="ij")
    vals = a.eval(coords[:grid.n], coords[grid.n:])
    return GridSymbol(grid, np.broadcast_to(
        vals, grid.shape * 2 + (a.algebra_dim,) * 2).copy())


# ---------------------------------------------------------------------------
# quantization


def pdo_apply(a: PhaseSymbol, u: ModuleFunction, chunk: int = 64) -> ModuleFunction:
    """a(x,D) u: transform u, weight by a(x, xi) on the dual grid, invert."""
    g = u.grid
    if a.n != g.n or a.algebra_dim != u.algebra_dim:
        raise GridMismatchError("symbol and function dimensions do not match")
    if isinstance(a, TranslationSymbol):
        if not a.F.grid.compatible(g):
            raise GridMismatchError("translation symbol lives on a different grid")
        return left_action(a.F, u, a.J)
    from .deformation import _grid_fourier
    uhat = _grid_fourier(u.samples, g)
    mesh = g.mesh()
    if isinstance(a, TrigPolySymbol):
        # each term C e^{i p.x} e^{i w.xi} maps u to C e^{i p.x} u(x + w)
        out = np.zeros_like(u.samples)
        for p, w, c in a.terms:
            shifted = translate(u, -w).samples
            arg = sum(p[d] * mesh[d] for d in range(g.n))
            out += np.exp(1j * arg)[..., None, None] * \
                np.einsum("ab,...bc->...ac", c, shifted)
        return ModuleFunction(g, out)

    dual = g.dual_mesh()
    flatq = np.stack([d.ravel() for d in dual], axis=-1)       # (M, n)
    uh = uhat.reshape(-1, u.algebra_dim, u.algebra_dim)        # (M, k, k)
    scale = (TWO_PI) ** (-g.n / 2.0) * g.dual_spacing ** g.n
    out = np.zeros_like(u.samples)
    if isinstance(a, GridSymbol):
        if not a.grid.compatible(g):
            raise GridMismatchError("grid symbol lives on a different grid")
        sym = a.samples.reshape(g.shape + (-1, u.algebra_dim, u.algebra_dim))
    else:
        sym = None
    for lo in range(0, flatq.shape[0], chunk):
        q = flatq[lo:lo + chunk]                               # (C, n)
        if sym is None:
            xc = [m[None, ...] for m in mesh]
            qc = [q[:, d].reshape((-1,) + (1,) * g.n) for d in range(g.n)]
            avals = a.eval(xc, qc)                             # (C,)+shape+(k,k)
        else:
            avals = np.moveaxis(sym[..., lo:lo + chunk, :, :], g.n, 0)
        arg = sum(q[:, d].reshape((-1,) + (1,) * g.n) * mesh[d][None]
                  for d in range(g.n))
        term = np.einsum("c...ab,cbd->c...ad", avals, uh[lo:lo + chunk])
        out += (np.exp(1j * arg)[..., None, None] * term).sum(axis=0)
    return ModuleFunction(g, scale * out)


def pi_seminorm(a: PhaseSymbol, grid: GridSpec) -> float:
    """sup over the sample box of ||d^beta_x d^gamma_xi a|| for all
    beta, gamma <= (1, ..., 1)."""
    n = a.n
    best = 0.0
    for bx in np.ndindex(*((2,) * n)):
        for gx in np.ndindex(*((2,) * n)):
            try:
                d = a.partial(bx, gx)
            except CapabilityError:
                d = sample_symbol(a, grid).partial(bx, gx)
            s = sample_symbol(d, grid)
            best = max(best, float(cnorm_entries(s.samples).max()))
    return best


def adjoint_symbol(a: PhaseSymbol, grid: GridSpec) -> PhaseSymbol:
    """The symbol p with <a(x,D)u, v> = <u, p(x,D)v>.

    p(y, xi) = integral e^{-i z eta} a(y-z, xi-eta)* d/z d/eta, evaluated by
    the Fourier-multiplier form p = Finv[ F[a*](u, w) e^{i u.w} ].
    """
    if isinstance(a, TrigPolySymbol):
        return a.adjoint()
    s = sample_symbol(a.star(), grid)
    out = s.samples
    for ax in range(2 * grid.n):
        d, x0 = s._axis_params(ax)
        out = axis_transform(out, ax, d, x0)
    # frequency axes: duals of x slots are the dual grid, duals of xi slots
    # are the spatial grid
    freqs = [grid.dual_axis()] * grid.n + [grid.axis()] * grid.n
    arg = 0.0
    for d in range(grid.n):
        u = freqs[d].reshape((-1,) + (1,) * (2 * grid.n - 1 - d))
        w = freqs[grid.n + d].reshape((-1,) + (1,) * (grid.n - 1 - d))
        arg = arg + u * w
    out = out * np.exp(1j * arg)[..., None, None]
    for ax in range(2 * grid.n):
        d, x0 = s._axis_params(ax)
        out = axis_transform(out, ax, d, x0, inverse=True)
    return GridSymbol(grid, out)


@dataclass(frozen=True)
class KernelField:
    """Integral-kernel samples K(x, y) on grid.axis^n x grid.axis^n."""

    grid: GridSpec
    samples: np.ndarray = field(repr=False)

    def apply(self, v: ModuleFunction) -> ModuleFunction:
        if not v.grid.compatible(self.grid):
            raise GridMismatchError("kernel and function grids differ")
        g = self.grid
        weight = g.spacing ** g.n
        xa = list(range(g.n))
        ya = list(range(g.n, 2 * g.n))
        acc = np.einsum(self.samples, [*xa, *ya, 2 * g.n, 2 * g.n + 1],
                        v.samples, [*ya, 2 * g.n + 1, 2 * g.n + 2],
                        [*xa, 2 * g.n, 2 * g.n + 2])
        return ModuleFunction(g, weight * acc)


def symbol_to_kernel(a: PhaseSymbol, grid: GridSpec) -> KernelField:
    """K(x, y) = (2*pi)^(-n) integral e^{i (x-y).xi} a(x, xi) dxi."""
    s = sample_symbol(a, grid)
    out = s.samples
    for ax in range(grid.n, 2 * grid.n):
        # (2*pi)^(-1/2) * dxi * sum_q e^{+i t q} per xi slot; the inverse
        # reads its input on the dual of the spatial axis, t lands on axis()
        out = axis_transform(out, ax, grid.spacing, -grid.half_width, inverse=True)
    out = out * (TWO_PI) ** (-grid.n / 2.0)
    # shear: K[i, j] = k[i, t] at t = x_i - y_j, i.e. index (i - j + N/2) mod N
    npts = grid.points
    i = np.arange(npts)
    tidx = (i[:, None] - i[None, :] + npts // 2) % npts
    if grid.n == 1:
        out = out[i[:, None], tidx]
    else:
        out = out[i[:, None, None, None], i[None, :, None, None],
                  tidx[:, None, :, None].repeat(npts, axis=1),
                  tidx[None, :, None, :].repeat(npts, axis=0)]
        # reorder axes from (x1, x2, y1, y2) -- already in that order
    return KernelField(grid, out)


# ---------------------------------------------------------------------------
# operator handles and norm estimation


class OperatorHandle:
    """Composable description of an operator on module functions."""

    def apply(self, u: ModuleFunction) -> ModuleFunction:
        raise NotImplementedError

    def adjoint(self) -> "OperatorHandle":
        raise NotImplementedError

    def __matmul__(self, other: "OperatorHandle") -> "OperatorHandle":
        return ComposedOp([self, other])


class IdentityOp(OperatorHandle):
    def apply(self, u):
        return u

    def adjoint(self):
        return self


class LeftActionOp(OperatorHandle):
    def __init__(self, F: ModuleFunction, J: SkewForm):
        self.F = F
        self.J = J

    def apply(self, u):
        return left_action(self.F, u, self.J)

    def adjoint(self):
        starred = ModuleFunction(self.F.grid, np.swapaxes(self.F.samples.conj(), -1, -2))
        return LeftActionOp(starred, self.J)


class RightActionOp(OperatorHandle):
    def __init__(self, G: ModuleFunction, J: SkewForm):
        self.G = G
        self.J = J

    def apply(self, u):
        from .deformation import right_action
        return right_action(self.G, u, self.J)

    def adjoint(self):
        raise CapabilityError("right actions are not adjointable module maps")


class PdoOp(OperatorHandle):
    def __init__(self, symbol: PhaseSymbol, grid: GridSpec):
        self.symbol = symbol
        self.grid = grid
        self._adj = None

    def apply(self, u):
        return pdo_apply(self.symbol, u)

    def adjoint(self):
        if self._adj is None:
            self._adj = PdoOp(adjoint_symbol(self.symbol, self.grid), self.grid)
            self._adj._adj = self
        return self._adj


class WeylOp(OperatorHandle):
    """E_{z, zeta, phi} = e^{i phi} M_zeta T_z (or its inverse)."""

    def __init__(self, z, zeta, phi: float = 0.0, inverse: bool = False):
        self.z = np.atleast_1d(np.asarray(z, dtype=float))
        self.zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
        self.phi = float(phi)
        self.inverse = inverse

    def apply(self, u):
        if not self.inverse:
            return modulate(translate(u, self.z), self.zeta, self.phi)
        return translate(modulate(u, -self.zeta, -self.phi), -self.z)

    def adjoint(self):
        # unitary: adjoint = inverse
        return WeylOp(self.z, self.zeta, self.phi, inverse=not self.inverse)


class ComposedOp(OperatorHandle):
    """parts applied right to left, like operator composition."""

    def __init__(self, parts):
        self.parts = list(parts)

    def apply(self, u):
        for part in reversed(self.parts):
            u = part.apply(u)
        return u

    def adjoint(self):
        return ComposedOp([p.adjoint() for p in reversed(self.parts)])


def random_band_limited(grid: GridSpec, algebra_dim: int, rng,
                        band: int = 4) -> ModuleFunction:
    """Random trial function with dual support in the centered band."""
    from .deformation import _grid_fourier
    hat = np.zeros(grid.shape + (algebra_dim,) * 2, dtype=complex)
    half = grid.points // 2
    sl = tuple(slice(half - band, half + band + 1) for _ in range(grid.n))
    block = rng.normal(size=hat[sl].shape) + 1j * rng.normal(size=hat[sl].shape)
    hat[sl] = block
    return ModuleFunction(grid, _grid_fourier(hat, grid, inverse=True))


def operator_norm_estimate(T: OperatorHandle, grid: GridSpec, algebra_dim: int = 1,
                           trials: int = 8, power_iters: int = 15,
                           seed: int = 0, band: int = 4):
    """Lower estimate of sup ||T u||_2 / ||u||_2 with a witness record.

    Random band-limited trials pick a starting vector; power iteration on
    T*T (adjoint applied through the handle) refines it.  The returned value
    is a lower bound by construction.
    """
    rng = np.random.default_rng(seed)
    best_ratio, best_u = 0.0, None
    for _ in range(trials):
        u = random_band_limited(grid, algebra_dim, rng, band=band)
        nu = module_norm(u)
        if nu == 0.0:
            continue
        r = module_norm(T.apply(u)) / nu
        if r > best_ratio:
            best_ratio, best_u = r, u
    record = {"trials": trials, "seed": seed, "trial_best": best_ratio,
              "power_iters": 0}
    try:
        Tadj = T.adjoint()
    except CapabilityError:
        return best_ratio, record
    u = best_u
    for it in range(power_iters):
        v = T.apply(u)
        nv = module_norm(v)
        if nv == 0.0:
            break
        ratio = nv / module_norm(u)
        if ratio > best_ratio:
            best_ratio = ratio
        u = Tadj.apply(v)
        nu = module_norm(u)
        if nu == 0.0:
            break
        u = (1.0 / nu) * u
        record["power_iters"] = it + 1
    record["estimate"] = best_ratio
    return best_ratio, record
