"""Quadrature for integrals with logarithmic weights on (0, 1).

All outer integrals in this package have the form

    integral over t in (a,b) of  t^(s-1) * (1 - log t)^beta * F(t) dt

with F piecewise analytic.  Substituting u = -log t removes the 1/t factor and
turns the weight into e^(-s u) * (1 + u)^beta, which is analytic on every
bounded u-interval and decays exponentially when s > 0.  Panels of bounded
width with Gauss-Legendre nodes then integrate each analytic piece to near
machine precision, and the unbounded tail is handled by adaptive panels plus a
rigorous geometric remainder bound (or in closed form when s = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "QuadratureSpec",
    "DEFAULT_QUAD",
    "gauss_nodes",
    "panel_edges",
    "panel_quad",
    "power_log_moment",
    "plain_log_moment",
    "sup_power_log_weight",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution and error-target contract for the weighted log integrals.

    panels_per_cell: Gauss panels per analytic piece in the variable u = -log t
        (pieces wider than ~2 in u are split further regardless).
    tail_cut: depth in u beyond the last breakpoint after which the remaining
        exponentially decaying integrand is bounded analytically instead of
        quadratured.
    rel_tol: relative error target; adaptive loops stop when their certified
        remainder (or stabilization estimate) drops below it.
    """

    panels_per_cell: int = 4
    tail_cut: float = 60.0
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.panels_per_cell < 1:
            raise DomainError("panels_per_cell must be >= 1")
        if self.tail_cut <= 0 or self.rel_tol <= 0:
            raise DomainError("tail_cut and rel_tol must be positive")


DEFAULT_QUAD = QuadratureSpec()

_GAUSS_ORDER = 24
_MAX_PANEL_WIDTH = 2.0


@lru_cache(maxsize=16)
def gauss_nodes(order: int = _GAUSS_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_edges(a: float, b: float, panels: int, grade_left: bool = False,
                grade_right: bool = False, levels: int = 10) -> np.ndarray:
    """Panel boundaries on [a, b]: uniform base split plus optional geometric
    grading toward an edge (for integrands with an algebraic kink there)."""
    if b <= a:
        return np.array([a, b])
    width = b - a
    n = max(panels, int(math.ceil(width / _MAX_PANEL_WIDTH)))
    edges = list(np.linspace(a, b, n + 1))
    if grade_left:
        h0 = edges[1] - edges[0]
        extra = [a + h0 * 0.5 ** k for k in range(1, levels + 1)]
        edges = sorted(set(edges) | set(extra))
    if grade_right:
        h1 = edges[-1] - edges[-2]
        extra = [b - h1 * 0.5 ** k for k in range(1, levels + 1)]
        edges = sorted(set(edges) | set(extra))
    return np.array(edges)


def panel_quad(fn, edges: np.ndarray, order: int = _GAUSS_ORDER) -> float:
    """Gauss-Legendre quadrature of a vectorized integrand over given panels."""
    edges = np.asarray(edges, dtype=float)
    if len(edges) < 2:
        return 0.0
    x, w = gauss_nodes(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(fn(pts), dtype=float).reshape(len(half), len(x))
    return float(np.sum(half * (vals @ w)))


def plain_log_moment(beta: float, u0: float) -> float:
    """Closed form of the power-log tail with no exponential factor.

    Returns the integral over (u0, inf) of (1+u)^beta du, which is
    (1+u0)^(beta+1) / (-beta-1) for beta < -1, and +inf otherwise.
    """
    if u0 < 0:
        raise DomainError("u0 must be >= 0")
    if beta >= -1.0:
        return math.inf
    return (1.0 + u0) ** (beta + 1.0) / (-beta - 1.0)


def power_log_moment(s: float, beta: float, u0: float,
                     rel_tol: float = 1e-12) -> float:
    """Integral over (u0, inf) of e^(-s u) * (1+u)^beta du.

    s = 0 falls back to the closed form (divergent unless beta < -1, reported
    as +inf).  For s > 0 the integral is always finite; panels of width ~1/s
    are accumulated until a rigorous bound on the remainder drops below
    rel_tol relative to the accumulated value.
    """
    if s < 0:
        raise DomainError("decay rate s must be >= 0")
    if u0 < 0:
        raise DomainError("u0 must be >= 0")
    if s == 0.0:
        return plain_log_moment(beta, u0)

    h = min(max(1.0, 2.0 / s), 25.0)
    total = 0.0
    u = u0
    for _ in range(100000):
        total += panel_quad(lambda t: np.exp(-s * t) * (1.0 + t) ** beta,
                            panel_edges(u, u + h, 2))
        u += h
        # Remainder past u: exact for beta <= 0; integration by parts gives a
        # factor-2 bound once s(1+u) >= 2*beta for beta > 0.
        if beta <= 0:
            bound = (1.0 + u) ** beta * math.exp(-s * u) / s
        elif s * (1.0 + u) >= 2.0 * beta:
            bound = 2.0 * (1.0 + u) ** beta * math.exp(-s * u) / s
        else:
            continue
        if bound <= rel_tol * max(total, 1e-300):
            return total
    raise DomainError("power_log_moment failed to converge")  # pragma: no cover


def sup_power_log_weight(s: float, beta: float, ua: float, ub: float) -> float:
    """Supremum of e^(-s u) * (1+u)^beta for u in [ua, ub] (ub may be inf).

    In the t variable this is the sup of t^s (1 - log t)^beta over a cell of
    (0, 1].  The weight has at most one interior critical point, at
    1 + u = beta / s, so the sup is attained there or at an endpoint.
    """
    if ua < 0 or ub < ua:
        raise DomainError("need 0 <= ua <= ub")

    def w(u: float) -> float:
        return math.exp(-s * u) * (1.0 + u) ** beta

    cands = [w(ua)]
    if math.isinf(ub):
        if s == 0.0:
            if beta > 0:
                return math.inf
            cands.append(1.0 if beta == 0.0 else 0.0)
        # s > 0: limit is 0, no contribution.
    else:
        cands.append(w(ub))
    if s > 0 and beta > 0:
        uc = beta / s - 1.0
        if ua < uc < ub:
            cands.append(w(uc))
    return max(cands)
