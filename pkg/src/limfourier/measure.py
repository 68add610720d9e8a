"""Step functions on (0,1], finite sequences, and their non-increasing rearrangements.

Everything downstream (quasi-norms, K-functionals, coefficient maps) is built
on two finite models: complex piecewise-constant functions on (0,1] and complex
sequences with finitely many nonzero entries.  Both make the inner integrals of
every norm in the package piecewise-analytic, so prefix/suffix energies are
exact finite arithmetic.

All types are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "StepFunction",
    "Rearrangement",
    "FiniteSequence",
    "SortedSequence",
    "rearrange_function",
    "rearrange_sequence",
    "head_energy",
    "tail_energy",
    "prefix_sq",
    "suffix_sq",
]


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StepFunction:
    """Complex piecewise-constant function on (0,1].

    ``breakpoints`` is strictly increasing with first entry 0 and last entry 1;
    ``values[i]`` is the constant value on cell ``(breakpoints[i], breakpoints[i+1]]``.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = _as_readonly(np.asarray(self.breakpoints, dtype=float))
        vals = _as_readonly(np.asarray(self.values, dtype=complex))
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if bp.ndim != 1 or vals.ndim != 1 or len(bp) != len(vals) + 1:
            raise DomainError("need N+1 breakpoints for N cell values")
        if len(vals) < 1:
            raise DomainError("at least one cell required")
        if bp[0] != 0.0 or bp[-1] != 1.0:
            raise DomainError("breakpoints must start at 0 and end at 1")
        if not np.all(np.diff(bp) > 0):
            raise DomainError("breakpoints must be strictly increasing")
        if not np.all(np.isfinite(bp)) or not np.all(np.isfinite(vals)):
            raise DomainError("non-finite entries in step function")

    @property
    def num_cells(self) -> int:
        return len(self.values)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def measure_above(self, level: float) -> float:
        """Lebesgue measure of ``{ |f| > level }``."""
        mask = np.abs(self.values) > level
        return math.fsum(self.widths[mask])

    def l2_norm_sq(self) -> float:
        return math.fsum(self.widths * np.abs(self.values) ** 2)

    def scaled(self, factor: complex) -> "StepFunction":
        return StepFunction(self.breakpoints, self.values * factor)

    @staticmethod
    def constant(value: complex) -> "StepFunction":
        return StepFunction(np.array([0.0, 1.0]), np.array([value], dtype=complex))

    @staticmethod
    def characteristic(s: float) -> "StepFunction":
        """Indicator of (0, s]; for s = 1 this is the constant-1 function."""
        if not 0.0 < s <= 1.0:
            raise DomainError("characteristic cutoff must lie in (0, 1]")
        if s == 1.0:
            return StepFunction.constant(1.0)
        return StepFunction(np.array([0.0, s, 1.0]), np.array([1.0, 0.0], dtype=complex))

    def to_json(self) -> str:
        payload = {
            "breakpoints": [repr(float(b)) for b in self.breakpoints],
            "values": [[repr(float(v.real)), repr(float(v.imag))] for v in self.values],
        }
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "StepFunction":
        payload = json.loads(text)
        bp = np.array([float(b) for b in payload["breakpoints"]])
        vals = np.array([complex(float(re), float(im)) for re, im in payload["values"]])
        return StepFunction(bp, vals)


@dataclass(frozen=True)
class Rearrangement:
    """Non-negative non-increasing step function on (0,1], the shape of some |f|.

    Stores the exact cell widths alongside the cumulative breakpoints so that
    distribution-function computations reuse the same width multiset as the
    source function (no cumsum/diff round-trip error).
    """

    breakpoints: np.ndarray
    values: np.ndarray
    cell_widths: np.ndarray = field(default=None)

    def __post_init__(self):
        bp = _as_readonly(np.asarray(self.breakpoints, dtype=float))
        vals = _as_readonly(np.asarray(self.values, dtype=float))
        if self.cell_widths is None:
            cw = _as_readonly(np.diff(bp))
        else:
            cw = _as_readonly(np.asarray(self.cell_widths, dtype=float))
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "cell_widths", cw)
        if len(bp) != len(vals) + 1 or len(cw) != len(vals):
            raise DomainError("inconsistent rearrangement arrays")
        if bp[0] != 0.0 or abs(bp[-1] - 1.0) > 1e-12:
            raise DomainError("rearrangement must cover (0, 1]")
        if np.any(vals < 0) or np.any(np.diff(vals) > 0):
            raise DomainError("rearrangement values must be non-negative and non-increasing")
        if abs(math.fsum(cw) - 1.0) > 1e-12:
            raise DomainError("cell widths must sum to 1")

    @property
    def num_cells(self) -> int:
        return len(self.values)

    def measure_above(self, level: float) -> float:
        mask = self.values > level
        return math.fsum(self.cell_widths[mask])

    def as_step(self) -> StepFunction:
        bp = np.array(self.breakpoints, copy=True)
        bp[-1] = 1.0
        return StepFunction(bp, self.values.astype(complex))

    def support_pieces(self) -> tuple[np.ndarray, np.ndarray]:
        """Breakpoints and values restricted to the cells with positive value.

        The rearrangement is non-increasing, so positive cells are an initial
        segment; returns (edges, vals) with edges of length len(vals)+1 and
        edges[0] = 0.
        """
        k = int(np.count_nonzero(self.values > 0.0))
        return self.breakpoints[: k + 1], self.values[:k]


@dataclass(frozen=True)
class FiniteSequence:
    """Complex sequence c_1, ..., c_n with implicit zeros beyond n."""

    entries: np.ndarray

    def __post_init__(self):
        e = _as_readonly(np.asarray(self.entries, dtype=complex))
        object.__setattr__(self, "entries", e)
        if e.ndim != 1:
            raise DomainError("sequence entries must be one-dimensional")
        if not np.all(np.isfinite(e)):
            raise DomainError("non-finite entries in sequence")

    def __len__(self) -> int:
        return len(self.entries)

    def l2_norm_sq(self) -> float:
        return math.fsum(np.abs(self.entries) ** 2)

    def scaled(self, factor: complex) -> "FiniteSequence":
        return FiniteSequence(self.entries * factor)

    @staticmethod
    def unit(k: int, n: int | None = None) -> "FiniteSequence":
        """Standard basis sequence e_k (1-based); length defaults to k."""
        n = k if n is None else n
        e = np.zeros(n, dtype=complex)
        e[k - 1] = 1.0
        return FiniteSequence(e)

    def to_json(self) -> str:
        payload = {"entries": [[repr(float(v.real)), repr(float(v.imag))] for v in self.entries]}
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "FiniteSequence":
        payload = json.loads(text)
        vals = np.array(
            [complex(float(re), float(im)) for re, im in payload["entries"]], dtype=complex
        )
        return FiniteSequence(vals)


@dataclass(frozen=True)
class SortedSequence:
    """Non-negative non-increasing entries c*_1 >= ... >= c*_n >= 0."""

    entries: np.ndarray

    def __post_init__(self):
        e = _as_readonly(np.asarray(self.entries, dtype=float))
        object.__setattr__(self, "entries", e)
        if e.ndim != 1:
            raise DomainError("sequence entries must be one-dimensional")
        if np.any(e < 0) or np.any(np.diff(e) > 0):
            raise DomainError("entries must be non-negative and non-increasing")

    def __len__(self) -> int:
        return len(self.entries)


def rearrange_function(f: StepFunction) -> Rearrangement:
    """Decreasing rearrangement of |f|: cells sorted by modulus, widths kept.

    The output is equimeasurable with |f| exactly: it reorders the same
    (width, modulus) multiset, so distribution functions coincide.
    """
    moduli = np.abs(f.values)
    order = np.argsort(-moduli, kind="stable")
    widths = f.widths[order]
    vals = moduli[order]
    bp = np.concatenate(([0.0], np.cumsum(widths)))
    bp[-1] = 1.0
    return Rearrangement(bp, vals, cell_widths=widths)


def rearrange_sequence(c: FiniteSequence) -> SortedSequence:
    moduli = np.abs(c.entries)
    return SortedSequence(np.sort(moduli)[::-1])


def head_energy(g: Rearrangement, t: float) -> float:
    """Exact value of the squared-head integral of g over (0, t)."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t = {t} outside [0, 1]")
    bp, vals = g.breakpoints, g.values
    covered = np.minimum(np.maximum(t - bp[:-1], 0.0), g.cell_widths)
    return math.fsum(covered * vals ** 2)


def tail_energy(g: Rearrangement, t: float) -> float:
    """Exact value of the squared-tail integral of g over (t, 1)."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t = {t} outside [0, 1]")
    return head_energy(g, 1.0) - head_energy(g, t)


def prefix_sq(c: SortedSequence) -> np.ndarray:
    """prefix_sq[k-1] = sum of squared entries with index <= k (1-based k)."""
    return np.cumsum(c.entries ** 2)


def suffix_sq(c: SortedSequence) -> np.ndarray:
    """suffix_sq[k-1] = sum of squared entries with index >= k; zero beyond n."""
    return np.cumsum((c.entries ** 2)[::-1])[::-1]
