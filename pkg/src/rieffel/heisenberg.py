"""Heisenberg group action on module functions and operator conjugation.

E_{z, zeta, phi} = e^{i phi} M_zeta T_z with T_z f(x) = f(x - z) and
M_zeta f(x) = e^{i zeta.x} f(x).  Composition picks up the commutation phase

    E_{z, zeta} E_{z', zeta'} = e^{-i zeta'.z} E_{z + z', zeta + zeta'},

conjugation T_{z, zeta} = E^{-1} T E is phi-independent, and for quantized
symbols it shifts the symbol argument: the conjugate of a(x, D) is
a(x + z, xi + zeta)(x, D).  The module also provides finite-difference
smoothness probes for the map (z, zeta) -> T_{z, zeta} u and the Fourier /
right-action intertwining residuals used by the recovery pipeline.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .deformation import SkewForm, right_action
from .module_space import ModuleFunction, fourier, module_norm, translate
from .quantization import ComposedOp, OperatorHandle, PhaseSymbol, WeylOp


@dataclass(frozen=True)
class HeisenbergPoint:
    """Group element (z, zeta, phi) acting as e^{i phi} M_zeta T_z."""

    z: np.ndarray = field(repr=True)
    zeta: np.ndarray = field(repr=True)
    phi: float = 0.0

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.z, dtype=float))
        zeta = np.atleast_1d(np.asarray(self.zeta, dtype=float))
        if z.shape != zeta.shape:
            raise ValueError("z and zeta must have equal dimension")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "phi", float(self.phi))

    def compose(self, other: "HeisenbergPoint") -> "HeisenbergPoint":
        """self acting after other (operator product E_self E_other)."""
        return HeisenbergPoint(
            self.z + other.z, self.zeta + other.zeta,
            self.phi + other.phi - float(other.zeta @ self.z))

    def inverse(self) -> "HeisenbergPoint":
        return HeisenbergPoint(-self.z, -self.zeta,
                               -self.phi - float(self.zeta @ self.z))

    def operator(self) -> WeylOp:
        return WeylOp(self.z, self.zeta, self.phi)


def weyl_shift(f: ModuleFunction, g: HeisenbergPoint) -> ModuleFunction:
    """E_{z, zeta, phi} f = e^{i phi} e^{i zeta.x} f(x - z).

    Exact for z commensurate with the grid spacing; trig-interpolated
    otherwise.  Unitary for the module inner product.
    """
    return g.operator().apply(f)


def weyl_shift_inverse(f: ModuleFunction, g: HeisenbergPoint) -> ModuleFunction:
    return weyl_shift(f, g.inverse())


def conjugate_operator(T: OperatorHandle, z, zeta, phi: float = 0.0) -> OperatorHandle:
    """T_{z, zeta} = E^{-1}_{z, zeta, phi} T E_{z, zeta, phi}; phi cancels."""
    E = WeylOp(z, zeta, phi)
    return ComposedOp([E.adjoint(), T, E])


def shifted_symbol(a: PhaseSymbol, z, zeta) -> PhaseSymbol:
    """The symbol (x, xi) -> a(x + z, xi + zeta) of the conjugated operator."""
    return a.shift(z, zeta)


def smoothness_probe(family, direction, steps, u: ModuleFunction,
                     derivative: OperatorHandle | None = None,
                     base=None, centered: bool = False) -> dict:
    """Convergence report for the map p -> T_p u along a direction in R^{2n}.

    family maps a point p in R^{2n} (z then zeta) to an OperatorHandle.
    Difference quotients (T_{p + t d} - T_p) / t (or centered) are applied to
    u; when a derivative handle is given the quotients are compared against
    it, otherwise successive quotients are compared against the finest one.
    The observed order is the least-squares slope of log residual vs log t.
    """
    steps = [float(t) for t in steps]
    if len(steps) < 3 or any(steps[i] <= steps[i + 1] for i in range(len(steps) - 1)):
        raise ValueError("steps must be at least 3 decreasing values")
    d = np.asarray(direction, dtype=float)
    p0 = np.zeros_like(d) if base is None else np.asarray(base, dtype=float)
    n = d.size // 2

    def handle(p):
        return family(p[:n], p[n:])

    base_u = handle(p0).apply(u)
    quotients = []
    for t in steps:
        if centered:
            hi = handle(p0 + t * d).apply(u)
            lo = handle(p0 - t * d).apply(u)
            quotients.append((1.0 / (2.0 * t)) * (hi - lo))
        else:
            hi = handle(p0 + t * d).apply(u)
            quotients.append((1.0 / t) * (hi - base_u))
    if derivative is not None:
        ref = derivative.apply(u)
        residuals = [module_norm(q - ref) for q in quotients]
    else:
        ref = quotients[-1]
        residuals = [module_norm(q - ref) for q in quotients[:-1]]
    used = steps[:len(residuals)]
    logs_t = np.log(np.asarray(used))
    logs_r = np.log(np.maximum(np.asarray(residuals), 1e-300))
    order = float(np.polyfit(logs_t, logs_r, 1)[0]) if len(used) >= 2 else np.nan
    return {"steps": used, "residuals": residuals, "order": order,
            "centered": centered, "converged": bool(order >= 0.5)}


def intertwine_check(z, zeta, g: ModuleFunction, J: SkewForm,
                     u: ModuleFunction) -> dict:
    """Residuals of the Fourier and right-action intertwining identities.

    Fourier transform swaps the roles of translation and modulation:
    F E_{z, zeta} = (E_{-zeta, z})^{-1} F and F (E_{z, zeta})^{-1} =
    E_{-zeta, z} F.  The right action R_g intertwines as E_{z, zeta} R_g =
    R_{T_{z + J zeta} g} E_{z, zeta}.
    """
    p = HeisenbergPoint(z, zeta)
    swapped = HeisenbergPoint(-p.zeta, p.z)
    lhs1 = fourier(weyl_shift(u, p))
    rhs1 = weyl_shift_inverse(fourier(u), swapped)
    lhs2 = fourier(weyl_shift_inverse(u, p))
    rhs2 = weyl_shift(fourier(u), swapped)
    shifted_g = translate(g, p.z + J.apply(p.zeta))
    lhs3 = weyl_shift(right_action(g, u, J), p)
    rhs3 = right_action(shifted_g, weyl_shift(u, p), J)
    return {"fourier_forward": module_norm(lhs1 - rhs1),
            "fourier_inverse": module_norm(lhs2 - rhs2),
            "right_action": module_norm(lhs3 - rhs3)}
