"""Closed-form prepotentials, G-functions, and the Cauchy derivative engine.

``eval_F``/``eval_G`` accept a point of shape (n,) or a batch (..., n) and
evaluate vectorized; n is 3 for ``holo-s`` and 6 for the doubles.  The
derivative engine differentiates holomorphic functions of several complex
variables by trapezoid quadrature of Cauchy integrals over per-variable
circles (spectrally accurate); mixed partials use nested circles by default
or a central-difference scheme as a cross-check path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConditioningError, DomainError
from .frobenius import StructureKind
from .specialfn import DEFAULT_SERIES, SeriesConfig, dedekind_eta, gamma_chazy

__all__ = [
    "DerivativeEngine",
    "DEFAULT_ENGINE",
    "eval_F",
    "eval_G",
    "derivative",
    "third_tensor",
    "gradient",
    "singular_distance",
    "validate_point",
]

_TWO_PI_I = 2j * np.pi
_C = 1.0 / _TWO_PI_I  # the recurring constant 1/(2 pi i)
_HARD_PROXIMITY = 1e-9
SINGULARITY_TOLERANCE = 1e-3


@dataclass(frozen=True)
class DerivativeEngine:
    """Cauchy-integral differentiation config.

    ``radius`` caps the circle radius; the effective radius at a point is
    also bounded by half its distance to the nearest singular locus of the
    integrand.  ``nodes`` is the trapezoid count per circle (power of two).
    """

    radius: float = 0.05
    nodes: int = 32
    cross_scheme: str = "nested_cauchy"

    def __post_init__(self):
        if self.nodes < 16 or self.nodes & (self.nodes - 1):
            raise DomainError("DerivativeEngine.nodes must be a power of two >= 16")
        if not self.radius > 0:
            raise DomainError("DerivativeEngine.radius must be positive")
        if self.cross_scheme not in ("nested_cauchy", "mixed_central"):
            raise DomainError("cross_scheme must be 'nested_cauchy' or 'mixed_central'")


DEFAULT_ENGINE = DerivativeEngine()


# ---------------------------------------------------------------------------
# domain geometry


def _gamma_args(skind: StructureKind, t):
    """Gamma arguments and coordinate-ball bounds on their derivatives.

    Returns a list of (argument, gradient_bound) pairs; perturbing every
    coordinate by r moves the argument by at most r * gradient_bound.
    """
    t = np.asarray(t)
    if skind.kind == "holo-s":
        return [(_TWO_PI_I * t[..., 2], 2.0 * np.pi * np.ones(t.shape[:-1]))]
    t3, t6 = t[..., 2], t[..., 5]
    a1 = t3 / t6
    g1 = np.abs(1.0 / t6) + np.abs(t3 / t6**2)
    if skind.kind == "double-s":
        den = 1.0 - _TWO_PI_I * t6
        a2 = _TWO_PI_I * t3 / den
        g2 = np.abs(_TWO_PI_I / den) + np.abs(_TWO_PI_I * t3 * _TWO_PI_I / den**2)
    elif skind.kind == "double-t":
        a2 = (1.0 - _TWO_PI_I * t3) / (_TWO_PI_I * t6)
        g2 = np.abs(1.0 / t6) + np.abs((1.0 - _TWO_PI_I * t3) / (_TWO_PI_I * t6**2))
    else:
        den = 1.0 - _TWO_PI_I * t6
        a2 = (_TWO_PI_I * t3 - skind.sigma) / den
        g2 = np.abs(_TWO_PI_I / den) + np.abs((_TWO_PI_I * t3 - skind.sigma) * _TWO_PI_I / den**2)
    return [(a1, g1), (a2, g2)]


def _denominators(skind: StructureKind, t):
    """Denominator loci with coordinate-ball gradient bounds."""
    t = np.asarray(t)
    if skind.kind == "holo-s":
        return []
    t3, t6 = t[..., 2], t[..., 5]
    if skind.kind == "double-s":
        return [(t3, 1.0), (t6, 1.0), (_TWO_PI_I * t6 - 1.0, 2.0 * np.pi)]
    if skind.kind == "double-t":
        return [(t6, 1.0)]
    sg = skind.sigma
    return [(t6, 1.0), (t3 - sg * t6, 1.0 + abs(sg)), (_TWO_PI_I * t6 - 1.0, 2.0 * np.pi)]


def singular_distance(skind: StructureKind, t) -> float:
    """Safe coordinate-ball radius around ``t``: no singular locus and no
    gamma argument leaving the upper half-plane within that ball."""
    dists = [np.inf]
    for den, grad in _denominators(skind, t):
        dists.append(float(np.min(np.abs(den) / grad)))
    for arg, grad in _gamma_args(skind, t):
        dists.append(float(np.min(np.imag(arg) / grad)))
    return min(dists)


def validate_point(skind: StructureKind, t, tolerance: float = SINGULARITY_TOLERANCE) -> None:
    """Enforce the sampling-policy proximity bound (relative tolerance)."""
    t = np.asarray(t, dtype=complex)
    if t.shape[-1] != skind.dim:
        raise DomainError(f"{skind.kind} expects {skind.dim} coordinates, got {t.shape[-1]}")
    scale = float(np.max(np.abs(t)))
    if singular_distance(skind, t) < tolerance * max(1.0, scale):
        raise DomainError(f"point too close to a singular locus of {skind.kind}")


def _check_evaluable(skind: StructureKind, t) -> None:
    t = np.asarray(t, dtype=complex)
    if t.shape[-1] != skind.dim:
        raise DomainError(f"{skind.kind} expects {skind.dim} coordinates, got {t.shape[-1]}")
    scale = float(np.max(np.abs(t)))
    for den, _ in _denominators(skind, t):
        if np.any(np.abs(den) < _HARD_PROXIMITY * max(1.0, scale)):
            raise DomainError(f"singular-locus proximity in {skind.kind} evaluation")


def _gamma_term(coeff, arg, name: str, cfg: SeriesConfig):
    """coeff * gamma(arg), skipping gamma wherever the coefficient vanishes."""
    coeff = np.asarray(coeff, dtype=complex)
    arg = np.asarray(arg, dtype=complex)
    coeff_b, arg_b = np.broadcast_arrays(coeff, arg)
    dead = coeff_b == 0
    if np.all(dead):
        return np.zeros(coeff_b.shape, dtype=complex)
    bad = np.imag(arg_b) <= 0
    if np.any(bad & ~dead):
        raise DomainError(f"gamma argument {name} off the upper half-plane")
    out = np.zeros(coeff_b.shape, dtype=complex)
    safe_arg = np.where(dead, 1j, arg_b)
    out = coeff_b * np.asarray(gamma_chazy(safe_arg, cfg))
    return np.where(dead, 0.0, out)


# ---------------------------------------------------------------------------
# prepotentials


def eval_F(skind: StructureKind, t, cfg: SeriesConfig = DEFAULT_SERIES):
    """Closed-form prepotential value(s) at ``t`` (shape (..., n))."""
    t = np.asarray(t, dtype=complex)
    _check_evaluable(skind, t)
    scalar = t.ndim == 1
    if skind.kind == "holo-s":
        t1, t2, t3 = t[..., 0], t[..., 1], t[..., 2]
        out = -0.25 * t1 * t2**2 + 0.5 * t1**2 * t3
        out = out + _gamma_term(-1j * np.pi / 32.0 * t2**4, _TWO_PI_I * t3, "2 pi i t3", cfg)
        return complex(out) if scalar else out
    t1, t2, t3, t4, t5, t6 = (t[..., k] for k in range(6))
    if skind.kind == "double-s":
        out = -0.25 * t1 * t2**2 - 0.25 * t1 * t5**2 + 0.5 * t1**2 * t3 - 0.5 * t1 * t4 * (2.0 * t6 - _C)
        out = out + (0.25 * t2**2 * t4 * (t6 - _C) + 0.25 * t4 * t5**2 * t6
                     + 0.5 * t4**2 * t6 * (t6 - _C) + t2**2 * t5**2 / 16.0) / t3
        out = out + t2**4 / 32.0 * (1.0 / t3 - 1.0 / (_TWO_PI_I * t3 * t6))
        out = out + _gamma_term(-t2**4 / (128.0 * np.pi * 1j * t6**2), t3 / t6, "t3/t6", cfg)
        out = out + t5**4 / 32.0 * (1.0 / t3 + 1.0 / (t3 * (_TWO_PI_I * t6 - 1.0)))
        out = out + _gamma_term(-1j * np.pi / 32.0 * t5**4 / (_TWO_PI_I * t6 - 1.0) ** 2,
                                _TWO_PI_I * t3 / (1.0 - _TWO_PI_I * t6), "2 pi i t3/(1 - 2 pi i t6)", cfg)
    elif skind.kind == "double-t":
        out = -0.25 * t1 * t2**2 - 0.25 * t1 * t5**2 + 0.5 * t1 * t4 * (2.0 * t3 - _C) - 0.5 * t1**2 * t6
        out = out - 0.5 * t3 * (t3 - _C) * t4**2 / t6 - t2**2 * t5**2 / (16.0 * t6)
        out = out - t2**4 / (32.0 * t6) + t3 * t4 * t5**2 / (4.0 * t6)
        out = out - t5**4 / (32.0 * t6) + (t3 - _C) * t4 * t2**2 / (4.0 * t6)
        out = out + _gamma_term(-t2**4 / (128.0 * np.pi * 1j * t6**2), t3 / t6, "t3/t6", cfg)
        out = out + _gamma_term(-t5**4 / (128.0 * np.pi * 1j * t6**2),
                                (1.0 - _TWO_PI_I * t3) / (_TWO_PI_I * t6), "(1 - 2 pi i t3)/(2 pi i t6)", cfg)
    else:
        sg = skind.sigma
        out = _gamma_term(-t2**4 / (64.0 * np.pi * 1j * t6**2), t3 / t6, "t3/t6", cfg)
        out = out + _gamma_term(-1j * np.pi / 16.0 * t5**4 / (_TWO_PI_I * t6 - 1.0) ** 2,
                                (_TWO_PI_I * t3 - sg) / (1.0 - _TWO_PI_I * t6),
                                "(2 pi i t3 - sigma)/(1 - 2 pi i t6)", cfg)
        out = out - t2**2 * (t1 + t4) / (8.0 * np.pi * 1j * t6)
        out = out - sg * (t1**2 - t4**2) / (8.0 * np.pi * 1j)
        out = out + t3 * (t1 + t4) ** 2 / (8.0 * np.pi * 1j * t6)
        inner = ((t2**2 + t5**2) * t6 / 2.0 - t2**2 / (4.0 * np.pi * 1j)
                 - (t1 + t4) * t3 * t6 + (t1 + t4) * t3 / _TWO_PI_I
                 + sg * (t1 - t4) * t6**2 - sg * (t1 - t4) * t6 / _TWO_PI_I)
        out = out + 1j * np.pi / (2.0 * t6 * (t3 - sg * t6) * (_TWO_PI_I * t6 - 1.0)) * inner**2
    return complex(out) if scalar else out


# ---------------------------------------------------------------------------
# G-functions


def eval_G_factors(skind: StructureKind, t, cfg: SeriesConfig = DEFAULT_SERIES):
    """(factor, weight) pairs with G = -sum_k weight_k * Log(factor_k).

    Principal logarithms of the individual factors; the free additive
    constant of G is fixed to 0 in this representation.
    """
    t = np.asarray(t, dtype=complex)
    _check_evaluable(skind, t)
    args = _gamma_args(skind, t)
    for arg, _ in args:
        if np.any(np.imag(arg) <= 0):
            raise DomainError("eta argument off the upper half-plane in eval_G")
    if skind.kind == "holo-s":
        return [(dedekind_eta(args[0][0], cfg), 1.0), (t[..., 1], 0.125)]
    t2, t3, t5, t6 = t[..., 1], t[..., 2], t[..., 4], t[..., 5]
    factors = [
        (dedekind_eta(args[0][0], cfg), 1.0),
        (dedekind_eta(args[1][0], cfg), 1.0),
        (t2, 0.125),
        (t5, 0.125),
    ]
    if skind.kind == "double-s":
        factors.append((_TWO_PI_I * t3 / (t6 * (_TWO_PI_I * t6 - 1.0)), 0.5))
    elif skind.kind == "double-t":
        factors.append((t6, -0.5))  # section-7 exponent; 'intro' variant uses -3/4
    else:
        sg = skind.sigma
        factors.append(((t3 - sg * t6) / (t6 * (1.0 - _TWO_PI_I * t6)), 0.5))
    return factors


def eval_G(skind: StructureKind, t, cfg: SeriesConfig = DEFAULT_SERIES, t6_exponent: str = "sec7"):
    """G-function (additive constant fixed to 0, principal branches).

    ``t6_exponent`` selects between the two displayed t6 powers for
    ``double-t``: 'sec7' (t6^{-1/2}) or 'intro' (t6^{-3/4}); the two differ
    by (1/4) log t6 and give identical quasihomogeneity responses since the
    t6 weight vanishes.
    """
    if t6_exponent not in ("sec7", "intro"):
        raise DomainError("t6_exponent must be 'sec7' or 'intro'")
    factors = eval_G_factors(skind, t, cfg)
    if skind.kind == "double-t" and t6_exponent == "intro":
        factors = factors[:-1] + [(factors[-1][0], -0.75)]
    t = np.asarray(t, dtype=complex)
    out = np.zeros(t.shape[:-1], dtype=complex)
    for fac, w in factors:
        out = out - w * np.log(fac)
    return complex(out) if t.ndim == 1 else out


# ---------------------------------------------------------------------------
# Cauchy-integral differentiation


_RADIUS_FRACTION = 0.25


def _constrained_vars(skind: StructureKind) -> tuple:
    """Variables that enter denominators or gamma arguments (t3, t6)."""
    return (2,) if skind.kind == "holo-s" else (2, 5)


def _effective_radius(skind: StructureKind, t, eng: DerivativeEngine) -> float:
    """Scalar safe radius (all variables moving simultaneously)."""
    r = min(eng.radius, _RADIUS_FRACTION * singular_distance(skind, t))
    if not r > 0:
        raise DomainError("no positive safe radius: point sits on a singular locus")
    return r


def _effective_radii(skind: StructureKind, t, eng: DerivativeEngine) -> np.ndarray:
    """Per-variable circle radii at ``t``.

    Only t3 and t6 appear in denominators and gamma arguments, so only they
    are bounded by the singular distance; the remaining directions keep the
    engine cap (the prepotential is polynomial in them).  The fraction 0.25
    balances quadrature truncation (r/dist)^nodes against roundoff growth
    1/r^m: at one half of the distance the (1/2)^32 tail measurably pollutes
    third derivatives, since the double structures have |t6| ~ 1/(4 pi
    Im mu) and singular distances of a few 1e-2 are typical.
    """
    radii = np.full(skind.dim, float(eng.radius))
    r = min(eng.radius, _RADIUS_FRACTION * singular_distance(skind, t))
    if not r > 0:
        raise DomainError("no positive safe radius: point sits on a singular locus")
    for v in _constrained_vars(skind):
        radii[v] = r
    return radii


def _factorial(m: int) -> float:
    return float(math.factorial(m))


def _cauchy_multi(fbatch, t, orders: dict, radii, nodes: int):
    """Nested-circle Cauchy value of the mixed partial given by ``orders``.

    ``radii`` is a scalar or per-variable array.  Returns (value,
    half_node_value); the latter reuses every second node and bounds the
    quadrature error.
    """
    n = len(t)
    radii = np.broadcast_to(np.asarray(radii, dtype=float), (n,))
    active = sorted(orders)
    k = len(active)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    shape = [nodes] * k
    pts = np.broadcast_to(np.asarray(t, dtype=complex), tuple(shape) + (n,)).copy()
    for axis, var in enumerate(active):
        sl = [None] * k
        sl[axis] = slice(None)
        pts[..., var] += (radii[var] * np.exp(1j * theta))[tuple(sl)]
    vals = np.asarray(fbatch(pts.reshape(-1, n)), dtype=complex).reshape(shape)
    pref = 1.0
    for var in active:
        m = orders[var]
        pref *= _factorial(m) / radii[var] ** m
    weights = [np.exp(-1j * orders[var] * theta) for var in active]

    def contract(values, ws, count):
        out = values
        for w in reversed(ws):
            out = np.tensordot(out, w, axes=([out.ndim - 1], [0])) / count
        return out

    full = pref * contract(vals, weights, nodes)
    half_idx = (slice(None, None, 2),) * k
    half = pref * contract(vals[half_idx], [w[::2] for w in weights], nodes // 2)
    return complex(full), complex(half)


_CENTRAL_STEP_FACTOR = 0.125


def _central_mixed(fbatch, t, orders: dict, radii):
    """Central-difference mixed partial (cross-check scheme, O(h^2)).

    Steps are a fraction of the safe radii: the scheme trades the spectral
    accuracy of the nested circles for a plain second-order stencil, so it
    serves as an independent code path rather than a precision reference.
    """
    n = len(t)
    radii = _CENTRAL_STEP_FACTOR * np.broadcast_to(np.asarray(radii, dtype=float), (n,))
    stencils = {
        1: [(1.0, 0.5), (-1.0, -0.5)],
        2: [(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)],
    }
    points = [((), 1.0)]
    for var in sorted(orders):
        m = orders[var]
        new_points = []
        for offs, coeff in points:
            for s, c in stencils[m]:
                new_points.append((offs + ((var, s),), coeff * c))
        points = new_points
    pts = []
    coeffs = []
    for offs, coeff in points:
        p = np.array(t, dtype=complex)
        for var, s in offs:
            p[var] += s * radii[var]
        pts.append(p)
        coeffs.append(coeff)
    vals = np.asarray(fbatch(np.array(pts)), dtype=complex)
    total = np.sum(vals * np.array(coeffs))
    scale = 1.0
    for var in sorted(orders):
        scale *= radii[var] ** orders[var]
    return complex(total / scale)


def derivative(f, t, multi_index, eng: DerivativeEngine = DEFAULT_ENGINE,
               radius=None):
    """Mixed partial of a holomorphic function by the configured scheme.

    ``f`` maps a batch of points (m, n) to m values; ``multi_index`` has one
    nonnegative integer per variable with total order <= 3.  ``radius``
    (scalar or per-variable) overrides the engine cap; it must stay below
    the distance to the nearest singularity of ``f``.
    """
    multi_index = tuple(int(m) for m in multi_index)
    t = np.asarray(t, dtype=complex)
    if len(multi_index) != t.shape[-1]:
        raise DomainError("multi_index length must match the number of variables")
    total = sum(multi_index)
    if total < 1 or total > 3 or min(multi_index) < 0:
        raise DomainError("total derivative order must be between 1 and 3")
    orders = {i: m for i, m in enumerate(multi_index) if m > 0}
    r = eng.radius if radius is None else radius
    if len(orders) > 1 and eng.cross_scheme == "mixed_central":
        return _central_mixed(f, t, orders, r)
    value, _ = _cauchy_multi(f, t, orders, r, eng.nodes)
    return value


def gradient(f, t, eng: DerivativeEngine = DEFAULT_ENGINE, radius=None) -> np.ndarray:
    """All first partials of ``f`` at ``t``."""
    n = len(t)
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        mi = [0] * n
        mi[i] = 1
        out[i] = derivative(f, t, mi, eng, radius)
    return out


class ThirdTensorResult(NamedTuple):
    tensor: np.ndarray          # (n, n, n), symmetric in all indices
    consistency: float          # max node-halving discrepancy over entries


def third_tensor(skind: StructureKind, t, eng: DerivativeEngine = DEFAULT_ENGINE,
                 cfg: SeriesConfig = DEFAULT_SERIES) -> ThirdTensorResult:
    """All third partials of the prepotential, assembled symmetrically.

    One nested-Cauchy evaluation per index multiset; the product trapezoid
    rule is permutation-invariant, so the tensor is symmetric by
    construction and the reported residual is the node-halving consistency
    of the quadrature (an upper estimate of its error).
    """
    t = np.asarray(t, dtype=complex)
    n = t.shape[-1]
    if n != skind.dim:
        raise DomainError(f"{skind.kind} expects {skind.dim} coordinates")
    radii = _effective_radii(skind, t, eng)

    def fbatch(pts):
        return eval_F(skind, pts, cfg)

    tensor = np.zeros((n, n, n), dtype=complex)
    worst = 0.0
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                orders: dict = {}
                for a in (i, j, k):
                    orders[a] = orders.get(a, 0) + 1
                if eng.cross_scheme == "mixed_central" and len(orders) > 1:
                    val = _central_mixed(fbatch, t, orders, radii)
                    half = val
                else:
                    val, half = _cauchy_multi(fbatch, t, orders, radii, eng.nodes)
                worst = max(worst, abs(val - half))
                for p in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
                    tensor[p] = val
    return ThirdTensorResult(tensor, worst)


def f1_matrix(tensor: np.ndarray) -> np.ndarray:
    """Matrix (F_1)_{lm} = d^3 F / dt1 dt_l dt_m from a third-derivative tensor."""
    return tensor[0]


def f1_matrix_at(skind: StructureKind, t, eng: DerivativeEngine = DEFAULT_ENGINE,
                 cfg: SeriesConfig = DEFAULT_SERIES) -> np.ndarray:
    """Only the F_1 slice of the third-derivative tensor (constancy checks)."""
    t = np.asarray(t, dtype=complex)
    n = t.shape[-1]
    if n != skind.dim:
        raise DomainError(f"{skind.kind} expects {skind.dim} coordinates")
    radii = _effective_radii(skind, t, eng)

    def fbatch(pts):
        return eval_F(skind, pts, cfg)

    out = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(j, n):
            orders: dict = {0: 1}
            for a in (j, k):
                orders[a] = orders.get(a, 0) + 1
            if eng.cross_scheme == "mixed_central" and len(orders) > 1:
                val = _central_mixed(fbatch, t, orders, radii)
            else:
                val, _ = _cauchy_multi(fbatch, t, orders, radii, eng.nodes)
            out[j, k] = out[k, j] = val
    return out


def invert_f1(f1: np.ndarray, cond_limit: float = 1e8) -> np.ndarray:
    cond = np.linalg.cond(f1)
    if not np.isfinite(cond) or cond > cond_limit:
        raise ConditioningError(f"F1 too ill-conditioned: cond = {cond:.3e}")
    return np.linalg.inv(f1)
