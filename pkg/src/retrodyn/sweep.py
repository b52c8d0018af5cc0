"""Parameter sweeps over the infection rate alpha and burst size k.

Every grid cell re-solves the model at (alpha, k) with the remaining
parameters taken from a base set, then records whether the coexistence
equilibrium exists and what the local and Lyapunov diagnostics say
about it.  Cells are independent, so the map is evaluated on a thread
pool and reassembled by index.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Optional, Sequence, Tuple

import numpy as np

from .equilibria import inner_equilibrium
from .errors import ParameterError
from .lyapunov import Condition4Variant, condition4, search_coeffs
from .model import ModelParams
from .stability import Verdict, classify_equilibrium

ALPHA_BISECT_LO = 1e-6


def _check_axis(name: str, values: Sequence[float]) -> tuple:
    if len(values) == 0:
        raise ParameterError(f"{name} must be nonempty")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ParameterError(f"{name} entries must be finite numbers, got {v!r}")
        if v <= 0.0:
            raise ParameterError(f"{name} entries must be > 0, got {v!r}")
        out.append(float(v))
    for prev, nxt in zip(out, out[1:]):
        if not nxt > prev:
            raise ParameterError(f"{name} must be strictly increasing")
    return tuple(out)


@dataclass(frozen=True)
class SweepGrid:
    """Axes of the sweep plus the base parameter set the cells override."""

    base: ModelParams
    alpha_values: tuple
    k_values: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha_values", _check_axis("alpha_values", self.alpha_values))
        object.__setattr__(self, "k_values", _check_axis("k_values", self.k_values))


@dataclass(frozen=True)
class SweepCell:
    """Diagnostics at one (alpha, k) cell; fields after the first are
    None when the coexistence equilibrium is absent there."""

    inner_exists: bool
    rh_verdict: Optional[Verdict]
    sylvester_pd: Optional[bool]
    cond4_as_written: Optional[bool]
    cond4_corrected: Optional[bool]


@dataclass
class SweepResult:
    grid: SweepGrid
    cells: list  # cells[i][j] for (alpha_values[i], k_values[j])
    alpha0: Optional[float]
    k0: Optional[float]

    def write_csv(self, stream: IO[str]):
        """Rows in row-major (alpha outer, k inner) order; a trailing
        comment carries the stable-rectangle corner when one exists."""
        stream.write("alpha,k,inner_exists,rh_verdict,sylvester_pd,cond4_as_written,cond4_corrected\n")
        for i, alpha in enumerate(self.grid.alpha_values):
            for j, k in enumerate(self.grid.k_values):
                cell = self.cells[i][j]
                if cell.inner_exists:
                    tail = "%s,%s,%s,%s" % (
                        cell.rh_verdict.value,
                        _csv_bool(cell.sylvester_pd),
                        _csv_bool(cell.cond4_as_written),
                        _csv_bool(cell.cond4_corrected),
                    )
                else:
                    tail = ",,,"
                stream.write("%.17g,%.17g,%s,%s\n" % (alpha, k, _csv_bool(cell.inner_exists), tail))
        if self.alpha0 is not None and self.k0 is not None:
            stream.write("# alpha0=%.17g,k0=%.17g\n" % (self.alpha0, self.k0))


def _csv_bool(flag: bool) -> str:
    return "true" if flag else "false"


def evaluate_cell(base: ModelParams, alpha: float, k: float) -> SweepCell:
    """Full diagnostic battery for a single (alpha, k) combination."""
    p = base.replace(alpha=alpha, k=k)
    eq = inner_equilibrium(p)
    if eq is None:
        return SweepCell(False, None, None, None, None)
    report = classify_equilibrium(p, eq)
    definite = search_coeffs(p, eq) is not None
    c4_aw = condition4(p, eq, Condition4Variant.AS_WRITTEN).holds
    c4_co = condition4(p, eq, Condition4Variant.CORRECTED).holds
    return SweepCell(True, report.verdict, definite, c4_aw, c4_co)


def _anchored_rectangle(stable: np.ndarray) -> Optional[Tuple[int, int]]:
    """Largest-area rectangle of True anchored at [0, 0].

    Returns the far-corner indices (i, j), or None when the anchor cell
    itself is False.  Area ties resolve toward the larger alpha extent.
    """
    if not stable[0, 0]:
        return None
    n_alpha, n_k = stable.shape
    best = None
    best_area = 0
    min_run = n_k
    for i in range(n_alpha):
        row = stable[i]
        run = 0
        while run < n_k and row[run]:
            run += 1
        if run == 0:
            break
        min_run = min(min_run, run)
        area = (i + 1) * min_run
        if area >= best_area:
            best_area = area
            best = (i, min_run - 1)
    return best


def stability_map(grid: SweepGrid, max_workers: Optional[int] = None) -> SweepResult:
    """Evaluate every cell of the grid (threaded) and locate the largest
    all-stable rectangle anchored at the smallest (alpha, k) corner.

    The result is independent of worker count and scheduling order.
    """
    alphas, ks = grid.alpha_values, grid.k_values
    n_alpha, n_k = len(alphas), len(ks)

    def work(idx: int):
        i, j = divmod(idx, n_k)
        return idx, evaluate_cell(grid.base, alphas[i], ks[j])

    flat = [None] * (n_alpha * n_k)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        for idx, cell in pool.map(work, range(n_alpha * n_k)):
            flat[idx] = cell
    cells = [flat[i * n_k : (i + 1) * n_k] for i in range(n_alpha)]

    stable = np.array(
        [[c.inner_exists and c.rh_verdict is Verdict.STABLE for c in row] for row in cells],
        dtype=bool,
    )
    corner = _anchored_rectangle(stable)
    if corner is None:
        alpha0 = k0 = None
    else:
        alpha0, k0 = alphas[corner[0]], ks[corner[1]]
    return SweepResult(grid=grid, cells=cells, alpha0=alpha0, k0=k0)


def find_alpha_margin(base: ModelParams, k_fixed: float, alpha_hi: float) -> Optional[float]:
    """Largest infection rate (up to ``alpha_hi``) keeping coexistence stable.

    Scans by bisection on [1e-6, alpha_hi] assuming stability is lost
    monotonically; returns alpha_hi itself when the whole range is
    stable and None when even alpha = 1e-6 is not.
    """
    if not (isinstance(k_fixed, (int, float)) and math.isfinite(k_fixed) and k_fixed > 0):
        raise ParameterError(f"k_fixed must be finite and > 0, got {k_fixed!r}")
    if not (isinstance(alpha_hi, (int, float)) and math.isfinite(alpha_hi) and alpha_hi > ALPHA_BISECT_LO):
        raise ParameterError(f"alpha_hi must be finite and > {ALPHA_BISECT_LO}, got {alpha_hi!r}")

    def stable_at(alpha: float) -> bool:
        p = base.replace(alpha=alpha, k=k_fixed)
        eq = inner_equilibrium(p)
        return eq is not None and classify_equilibrium(p, eq).verdict is Verdict.STABLE

    if not stable_at(ALPHA_BISECT_LO):
        return None
    if stable_at(alpha_hi):
        return alpha_hi
    lo, hi = ALPHA_BISECT_LO, alpha_hi
    while hi - lo > 1e-6 * alpha_hi:
        mid = 0.5 * (lo + hi)
        if stable_at(mid):
            lo = mid
        else:
            hi = mid
    return lo
