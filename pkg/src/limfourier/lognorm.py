"""Lorentz-Zygmund quasi-norms and limiting head/tail-energy quasi-norms.

Function norms act on the decreasing rearrangement f* of a step function, so
every inner integral is piecewise analytic and the only numerical work is the
outer integral against the weight t^(s-1) (1 - log t)^beta.  That integral is
evaluated in the variable u = -log t (see quadrature.py): bounded pieces get
Gauss panels, and the piece touching t = 0 is either a closed-form power-log
moment or a constant part (closed form) plus an exponentially decaying
remainder.

Sequence norms are finite sums, except the prefix-side limiting norm whose
summand saturates: its tail is summed exactly to a large cutoff and the rest
is bracketed between two closed-form integrals.

Divergent norms are reported as +inf, never raised, so that campaigns over
parameter grids can filter them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .measure import (FiniteSequence, StepFunction, rearrange_function,
                      rearrange_sequence)
from .quadrature import (DEFAULT_QUAD, QuadratureSpec, panel_edges, panel_quad,
                         plain_log_moment, power_log_moment,
                         sup_power_log_weight)

__all__ = [
    "LZParams",
    "LimParams",
    "lz_function_norm",
    "lz_sequence_norm",
    "limiting_function_norm",
    "limiting_sequence_norm",
]

INF = math.inf


def _check_extended_positive(value: float, name: str) -> float:
    value = float(value)
    if not (value > 0):
        raise DomainError(f"{name} must be positive (possibly inf), got {value}")
    return value


def _inv(q: float) -> float:
    return 0.0 if math.isinf(q) else 1.0 / q


@dataclass(frozen=True)
class LZParams:
    """Parameters (p, q, alpha) of the log-weighted Lorentz scale."""

    p: float
    q: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_extended_positive(self.p, "p"))
        object.__setattr__(self, "q", _check_extended_positive(self.q, "q"))
        if not math.isfinite(self.alpha):
            raise DomainError("alpha must be finite")


@dataclass(frozen=True)
class LimParams:
    """Parameters of the limiting head/tail-energy norms.

    side "L" integrates the inner energy over (0, t), side "R" over (t, 1).
    ``condition_holds`` records the side's usual admissibility condition in
    the operator-bound campaigns (R: alpha < -1/q, L: alpha > -1/q); actual
    finiteness on the discrete models is decided by the norm routines.
    """

    q: float
    alpha: float
    r: float = 2.0
    side: str = "R"
    p: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "q", _check_extended_positive(self.q, "q"))
        object.__setattr__(self, "r", _check_extended_positive(self.r, "r"))
        object.__setattr__(self, "p", _check_extended_positive(self.p, "p"))
        if not math.isfinite(self.alpha):
            raise DomainError("alpha must be finite")
        if self.side not in ("L", "R"):
            raise DomainError("side must be 'L' or 'R'")

    @property
    def condition_holds(self) -> bool:
        if self.side == "R":
            return self.alpha < -_inv(self.q)
        return self.alpha > -_inv(self.q)


def _max_on_interval(fn, ua: float, ub: float, coarse: int = 33,
                     refine: int = 80) -> float:
    """Maximum of a vectorized scalar function on [ua, ub]: dense scan plus
    golden-section refinement around the best sample."""
    if ub <= ua:
        return float(fn(np.array([ua]))[0])
    us = np.linspace(ua, ub, coarse)
    vs = np.asarray(fn(us), dtype=float)
    i = int(np.argmax(vs))
    a = us[max(i - 1, 0)]
    b = us[min(i + 1, coarse - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1 = float(fn(np.array([x1]))[0])
    f2 = float(fn(np.array([x2]))[0])
    for _ in range(refine):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = float(fn(np.array([x1]))[0])
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = float(fn(np.array([x2]))[0])
    return max(float(np.max(vs)), f1, f2)


# ---------------------------------------------------------------------------
# Lorentz-Zygmund norms


def lz_function_norm(f: StepFunction, prm: LZParams,
                     quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Weighted-rearrangement norm with weight t^(1/p - 1/q) (1 + |log t|)^alpha."""
    g = rearrange_function(f)
    edges, vals = g.support_pieces()
    if len(vals) == 0:
        return 0.0
    p, q, alpha = prm.p, prm.q, prm.alpha
    u_edges = -np.log(edges[1:])          # piece i lives on u in [u_edges[i], prev)

    if math.isinf(q):
        best = 0.0
        for i, v in enumerate(vals):
            ua = u_edges[i]
            ub = INF if i == 0 else u_edges[i - 1]
            best = max(best, v * sup_power_log_weight(_inv(p), alpha, ua, ub))
            if math.isinf(best):
                return INF
        return best

    s = q * _inv(p)
    b = q * alpha
    first = power_log_moment(s, b, float(u_edges[0]), rel_tol=quad.rel_tol)
    if math.isinf(first):
        return INF
    total = vals[0] ** q * first
    for i in range(1, len(vals)):
        cell = panel_quad(lambda u: np.exp(-s * u) * (1.0 + u) ** b,
                          panel_edges(float(u_edges[i]), float(u_edges[i - 1]),
                                      quad.panels_per_cell))
        total += vals[i] ** q * cell
    return total ** (1.0 / q)


def lz_sequence_norm(c: FiniteSequence, prm: LZParams) -> float:
    """Exact finite sum (or supremum) of the weighted rearranged sequence."""
    m = rearrange_sequence(c).entries
    m = m[m > 0]
    if len(m) == 0:
        return 0.0
    p, q, alpha = prm.p, prm.q, prm.alpha
    k = np.arange(1, len(m) + 1, dtype=float)
    logw = (1.0 + np.log(k)) ** alpha
    if math.isinf(q):
        return float(np.max(k ** _inv(p) * logw * m))
    terms = k ** (q * _inv(p) - 1.0) * logw ** q * m ** q
    return math.fsum(terms) ** (1.0 / q)


# ---------------------------------------------------------------------------
# Limiting norms: functions


def _inner_pieces(g, p: float, r: float):
    """Per-piece representation of the inner energy integral.

    Returns (u_edges, const, slope, total) such that on piece i (u between
    u_edges[i] and u_edges[i-1], i.e. t in (edges[i], edges[i+1]]) the head
    energy equals const[i] + slope[i] * e^(-rho u) with rho = r / p, and
    total is the full-support energy.
    """
    edges, vals = g.support_pieces()
    rho = r / p
    coef = p / r
    tpow = edges ** rho
    increments = coef * vals ** r * np.diff(tpow)
    head_at_left = np.concatenate(([0.0], np.cumsum(increments)[:-1]))
    slope = coef * vals ** r
    const = head_at_left - slope * tpow[:-1]
    total = head_at_left[-1] + increments[-1] if len(increments) else 0.0
    u_edges = -np.log(edges[1:])
    return u_edges, const, slope, float(np.cumsum(increments)[-1]), vals


def _require_integral_params(prm: LimParams, model: str) -> None:
    if math.isinf(prm.r):
        raise DomainError("inner supremum form (r = inf) is not supported")
    if model == "function" and math.isinf(prm.p):
        raise DomainError("p = inf makes the inner integral divergent on functions")


def limiting_function_norm(f: StepFunction, prm: LimParams,
                           quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Outer log-weighted norm of the head (side L) or tail (side R) energy.

    The outer integral is computed in u = -log t.  Beyond the last breakpoint
    the energy is affine in t = e^(-u): the head side decays like e^(-(r/p) u)
    and reduces to a closed-form power-log moment; the tail side splits into a
    constant part, which integrates in closed form and diverges unless
    q * alpha < -1, plus an exponentially decaying remainder quadratured over
    a window [u0, u0 + tail_cut] that is widened until the certified bound on
    the rest is below rel_tol.
    """
    _require_integral_params(prm, "function")
    g = rearrange_function(f)
    if not np.any(g.values > 0):
        return 0.0
    q, alpha, r = prm.q, prm.alpha, prm.r
    rho = prm.r / prm.p
    u_edges, const, slope, total, vals = _inner_pieces(g, prm.p, prm.r)
    npieces = len(vals)

    def head(u, i):
        return np.maximum(const[i] + slope[i] * np.exp(-rho * u), 0.0)

    def tail(u, i):
        return np.maximum(total - const[i] - slope[i] * np.exp(-rho * u), 0.0)

    if math.isinf(q):
        return _limiting_function_sup(prm, quad, u_edges, const, slope, total,
                                      vals, rho, head, tail)

    a = q / r
    b = q * alpha
    if prm.side == "R" and b >= -1.0:
        return INF

    acc = 0.0
    # Deep piece touching t = 0.
    u0 = float(u_edges[0])
    if prm.side == "L":
        acc += slope[0] ** a * power_log_moment(rho * a, b, u0, rel_tol=quad.rel_tol)
    else:
        acc += total ** a * plain_log_moment(b, u0)
        single = npieces == 1
        window = quad.tail_cut / min(rho, 1.0)

        def rem(u):
            return (1.0 + u) ** b * (tail(u, 0) ** a - total ** a)

        while True:
            part = panel_quad(rem, panel_edges(u0, u0 + window,
                                               quad.panels_per_cell,
                                               grade_left=single))
            if a >= 1.0:
                bound = a * total ** (a - 1.0) * slope[0] * \
                    power_log_moment(rho, b, u0 + window, rel_tol=quad.rel_tol)
            else:
                bound = slope[0] ** a * \
                    power_log_moment(rho * a, b, u0 + window, rel_tol=quad.rel_tol)
            scale = max(abs(acc + part), total ** a * max(u0, 1.0) ** (b + 1))
            if bound <= quad.rel_tol * max(scale, 1e-300) or window > 1e6:
                acc += part
                break
            window *= 2.0

    # Bounded pieces.
    energy = head if prm.side == "L" else tail
    for i in range(1, npieces):
        ua, ub = float(u_edges[i]), float(u_edges[i - 1])
        grade_left = prm.side == "R" and i == npieces - 1

        def integrand(u, i=i):
            return (1.0 + u) ** b * energy(u, i) ** a

        acc += panel_quad(integrand,
                          panel_edges(ua, ub, quad.panels_per_cell,
                                      grade_left=grade_left))
    return max(acc, 0.0) ** (1.0 / q)


def _limiting_function_sup(prm, quad, u_edges, const, slope, total, vals, rho,
                           head, tail):
    """q = inf branch: supremum of (1 - log t)^alpha * energy(t)^{1/r}."""
    alpha, r = prm.alpha, prm.r
    best = 0.0
    npieces = len(vals)
    if prm.side == "L":
        # Deep piece: pure power-log weight, closed form.
        best = slope[0] ** (1.0 / r) * sup_power_log_weight(
            rho / r, alpha, float(u_edges[0]), INF)
    else:
        if alpha > 0:
            return INF
        if alpha == 0.0:
            best = total ** (1.0 / r)
        window = quad.tail_cut / min(rho, 1.0)

        def f0(u):
            return (1.0 + u) ** alpha * tail(u, 0) ** (1.0 / r)

        best = max(best, _max_on_interval(f0, float(u_edges[0]),
                                          float(u_edges[0]) + window))
    for i in range(1, npieces):
        energy = head if prm.side == "L" else tail

        def fi(u, i=i):
            return (1.0 + u) ** alpha * energy(u, i) ** (1.0 / r)

        best = max(best, _max_on_interval(fi, float(u_edges[i]),
                                          float(u_edges[i - 1])))
    return best


# ---------------------------------------------------------------------------
# Limiting norms: sequences


@lru_cache(maxsize=256)
def _log_tail_partial(b: float, n: int, kmax: int) -> tuple[float, float, float]:
    """Exact sum of (1 + ln k)^b / k for n < k <= kmax plus the integral
    bracket [lo, hi] for the remainder beyond kmax (requires b < -1)."""
    acc = 0.0
    start = n + 1
    while start <= kmax:
        stop = min(start + (1 << 20) - 1, kmax)
        k = np.arange(start, stop + 1, dtype=float)
        acc += float(np.sum((1.0 + np.log(k)) ** b / k))
        start = stop + 1
    lo = plain_log_moment(b, math.log(kmax + 1.0))
    hi = plain_log_moment(b, math.log(float(kmax)))
    return acc, lo, hi


def limiting_sequence_norm(c: FiniteSequence, prm: LimParams,
                           rel_tol: float = 1e-10) -> float:
    """Outer log-weighted norm of prefix (side L) or suffix (side R) energies.

    Side R is an exact finite sum: suffix energies vanish beyond the support.
    Side L saturates, so the summand behaves like (1 + ln k)^(q alpha) / k for
    large k: the sum is taken exactly up to a cutoff of at least 2^20 and the
    rest is bracketed by the comparison integrals; the cutoff is enlarged
    until the bracket width is below rel_tol relative to the result.
    """
    _require_integral_params(prm, "sequence")
    m = rearrange_sequence(c).entries
    m = m[m > 0]
    n = len(m)
    if n == 0:
        return 0.0
    q, alpha, r, p = prm.q, prm.alpha, prm.r, prm.p
    k = np.arange(1, n + 1, dtype=float)
    inner_terms = k ** (r * _inv(p) - 1.0) * m ** r
    logk = 1.0 + np.log(k)

    if prm.side == "R":
        suffix = np.cumsum(inner_terms[::-1])[::-1]
        if math.isinf(q):
            return float(np.max(logk ** alpha * suffix ** (1.0 / r)))
        terms = logk ** (q * alpha) / k * suffix ** (q / r)
        return math.fsum(terms) ** (1.0 / q)

    prefix = np.cumsum(inner_terms)
    if math.isinf(q):
        if alpha > 0:
            return INF
        return float(np.max(logk ** alpha * prefix ** (1.0 / r)))
    b = q * alpha
    if b >= -1.0:
        return INF
    head = math.fsum(logk ** b / k * prefix ** (q / r))
    sat = prefix[-1] ** (q / r)
    kmax = max(2 * n, 1 << 20)
    while True:
        part, lo, hi = _log_tail_partial(b, n, kmax)
        total = head + sat * (part + 0.5 * (lo + hi))
        if sat * (hi - lo) <= rel_tol * total or kmax >= (1 << 25):
            return total ** (1.0 / q)
        kmax *= 2
