"""Quadrature engines shared by the spectral and kernel modules.

Composite/adaptive Gauss-Legendre panels for complex-valued integrands, the
generalized Gauss-Laguerre radial rules used for eigenfunction inner
products, and the fixed "published" grid behind every L^p evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as _sp

from .errors import QuadratureError
from .geometry import ConeConfig

_LEG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _LEG_CACHE:
        _LEG_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _LEG_CACHE[n]


def gauss_panel(f, a: float, b: float, order: int = 16) -> complex:
    """Gauss-Legendre quadrature of a vectorized integrand on one panel."""
    x, w = _leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * np.sum(w * f(mid + half * x))


def _panel_with_l1(f, a: float, b: float, order: int) -> tuple[complex, float]:
    x, w = _leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = np.asarray(f(mid + half * x))
    return half * np.sum(w * vals), abs(half) * float(np.sum(w * np.abs(vals)))


def adaptive_panel(f, a: float, b: float, tol: float, order: int = 16, depth: int = 28) -> complex:
    """Adaptive bisection: accept a panel when halving changes it by < tol.

    Also accepts once the change falls below the panel's own rounding floor
    (a small multiple of its L1 mass), so integrands dominated by
    cancellation noise cannot recurse forever.
    """
    coarse, l1 = _panel_with_l1(f, a, b, order)
    mid = 0.5 * (a + b)
    fine = gauss_panel(f, a, mid, order) + gauss_panel(f, mid, b, order)
    if abs(fine - coarse) <= max(tol, 1e-15 * l1) or depth <= 0:
        return fine
    return adaptive_panel(f, a, mid, 0.5 * tol, order, depth - 1) + adaptive_panel(
        f, mid, b, 0.5 * tol, order, depth - 1
    )


def adaptive_line(f, edges, tol: float, order: int = 16) -> complex:
    """Adaptive integration over consecutive panels between the given edges."""
    edges = np.asarray(edges, dtype=float)
    total = 0.0 + 0.0j
    per_panel = tol / max(len(edges) - 1, 1)
    for a, b in zip(edges[:-1], edges[1:]):
        total += adaptive_panel(f, a, b, per_panel, order)
    return total


def decaying_halfline(f, start: float, rate: float, tol: float, order: int = 16,
                      width: float = 2.0, s_cap: float = 600.0) -> complex:
    """Integrate f from start to infinity given an e^{-rate*s} envelope."""
    total = 0.0 + 0.0j
    a = start
    while a < s_cap:
        total += adaptive_panel(f, a, a + width, tol, order)
        a += width
        if math.exp(-rate * (a - start)) < tol / max(abs(total), tol):
            break
    return total


def oscillatory_bessel_tail(f_analytic, rho: float, decay_rate: float, tol: float,
                            order: int = 16) -> complex:
    """Integrate f(s) = e^{-i rho cosh s} g(s) over [0, inf) for decaying analytic g.

    g (hence f_analytic) must be analytic in Re s > 0 with |g| <= C e^{-decay_rate s}.
    The path is deformed: a short real segment [0, s0] (bounded oscillation),
    a vertical drop to Im s = -pi/2, then the horizontal line where
    -i rho cosh s is pure decay.  f_analytic(s) takes complex s.
    """
    rho = float(rho)
    if rho < 0.0:
        # e^{+i rho cosh s}: conjugate path; handled by conjugating the whole problem
        raise QuadratureError("oscillatory_bessel_tail expects rho >= 0")
    s0 = min(max(0.5, math.acosh(1.0 + 20.0 * math.pi / max(rho, 1e-12))), 6.0)

    # real segment, apportioned so each panel spans O(2 pi) of phase
    n_a = max(4, int(math.ceil(rho * (math.cosh(s0) - 1.0) / (2.0 * math.pi))) + 4)
    total = adaptive_line(f_analytic, np.linspace(0.0, s0, n_a + 1), tol, order)

    # vertical drop s0 -> s0 - i pi/2
    def f_vert(v):
        return f_analytic(s0 - 1j * v) * (-1j)

    n_b = max(4, int(math.ceil(rho * math.cosh(s0) / (2.0 * math.pi))) + 4)
    total += adaptive_line(f_vert, np.linspace(0.0, 0.5 * math.pi, n_b + 1), tol, order)

    # horizontal line at Im s = -pi/2: |e^{-i rho cosh s}| = e^{-rho sinh a}.
    # Panels grow geometrically: with tiny decay_rate (flux near an endpoint)
    # and tiny rho the tail is long but log-scale smooth.
    def f_horiz(a):
        return f_analytic(a - 0.5j * math.pi)

    a = s0
    width = 2.0
    while True:
        total += adaptive_panel(f_horiz, a, a + width, tol, order)
        a += width
        envelope = math.exp(-rho * math.sinh(min(a, 700.0))) * math.exp(-decay_rate * min(a, 1e120))
        if envelope < tol or a > 1e120:
            break
        width = min(1.5 * width, 0.5 * a + 2.0)
    return total


@lru_cache(maxsize=4096)
def genlaguerre_rule(n: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the weight u^alpha e^{-u} on (0, inf)."""
    x, w = _sp.roots_genlaguerre(n, alpha)
    return x, w


@lru_cache(maxsize=64)
def laguerre_flat_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Plain Gauss-Laguerre nodes with the e^{-u} weight divided back out.

    Returns (u, omega) with  int_0^inf h(u) du ~= sum omega_i h(u_i)  for
    decaying h; omega = w * e^{u} assembled in log space to dodge overflow.
    Weights that underflowed to zero (very large n) keep zero flat weight.
    """
    u, w = _sp.roots_laguerre(n)
    with np.errstate(divide="ignore"):
        omega = np.where(w > 0.0, np.exp(np.log(np.where(w > 0.0, w, 1.0)) + u), 0.0)
    return u, omega


@dataclass(frozen=True)
class EvaluationGrid:
    """Fixed product grid on the cone used for every L^p quadrature norm.

    r:        radial nodes (from plain Gauss-Laguerre in u = b0 r^2 / 2)
    r_weight: weights w_i with  int g r dr ~= sum w_i g(r_i)
    theta:    uniform angular nodes on [0, 2 pi sigma)
    d_theta:  angular weight (uniform)
    """

    r: np.ndarray
    r_weight: np.ndarray
    theta: np.ndarray
    d_theta: float

    def lp_norm(self, values: np.ndarray, p: float) -> float:
        """L^p(X) norm of values sampled as values[i_r, j_theta]."""
        mags = np.abs(values)
        if math.isinf(p):
            return float(mags.max())
        wp = (mags ** p) * self.r_weight[:, None]
        return float((wp.sum() * self.d_theta) ** (1.0 / p))


def evaluation_grid(cfg: ConeConfig, n_radial: int = 80, n_theta: int = 128) -> EvaluationGrid:
    u, omega = laguerre_flat_rule(n_radial)
    r = np.sqrt(2.0 * u / cfg.b0)
    # measure r dr = du / b0
    r_weight = omega / cfg.b0
    theta = np.arange(n_theta) * (cfg.period / n_theta)
    return EvaluationGrid(r=r, r_weight=r_weight, theta=theta, d_theta=cfg.period / n_theta)
