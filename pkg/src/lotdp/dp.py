"""Exact dynamic program over rational volume grids.

If an optimal plan serves H suppliers strictly inside their volume windows,
its volumes are rationals whose denominators divide H * c_hold (times the
denominator of the consumption intensity when that is not an integer): the
remaining volumes sit at 0, m, or M, and the interior ones are pinned by the
equal-marginal formula in :mod:`lotdp.closed_form`.  For each hypothesis H the
solver therefore restricts batch volumes to the grid m_k, m_k + h, ..., M_k
with step h = 1 / (H * c_hold * den(lam)), fills a Bellman table

    phi[k][p] = cheapest way to cover residual demand p using suppliers 1..k

and backtracks the winning volumes.  Sweeping H and keeping the cheapest table
yields the exact optimum.  Table cells hold integer numerators over one common
denominator internally, so the sweep is exact and reasonably fast.

Demand may also be covered by over-delivery: a batch at least as large as the
open residual closes the plan on its own.  Single-delivery costs increase with
volume, so only the smallest such batch matters there, but in multi-delivery
mode the aggregated per-supplier cost is not monotone (a new batch count
unlocks each time the total crosses a multiple of m) and every larger grid
total is a candidate; the fill handles both through per-supplier suffix
minima of the candidate costs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .closed_form import multi_delivery_cost
from .errors import InfeasibleInstanceError, ResourceLimitError
from .model import (
    MULTI,
    SINGLE,
    Instance,
    Solution,
    Supplier,
    make_solution,
    require_valid,
)

SKIP = -1

AGGREGATED = "aggregated"
DUPLICATION = "duplication"


@dataclass(frozen=True)
class Grid:
    H: int
    step: Fraction
    denominator: int  # volumes are index / denominator
    demand_points: int  # residual-demand indices run 0 .. P*denominator
    spans: tuple[tuple[int, int], ...]  # per supplier: (m*denominator, M*denominator)

    def volume(self, index: int) -> Fraction:
        return Fraction(index, self.denominator)

    def candidates(self, supplier_pos: int) -> range:
        lo, hi = self.spans[supplier_pos]
        return range(lo, hi + 1)


def build_grid(inst: Instance, H: int) -> Grid:
    if H < 1:
        raise ValueError("H must be a positive integer")
    den = H * inst.c_hold * inst.lam.denominator
    return Grid(
        H=H,
        step=Fraction(1, den),
        denominator=den,
        demand_points=inst.P * den + 1,
        spans=tuple((s.m * den, s.M * den) for s in inst.suppliers),
    )


@dataclass
class DPTable:
    H: int
    grid: Grid
    kind: str  # "single" | "multi-aggregated" | "multi-duplication"
    phi: list  # (n+1) x demand_points, Fraction or None for "cannot cover"
    choice: list  # same shape; SKIP or the chosen volume index
    cells: int

    @property
    def final(self) -> Fraction | None:
        """phi(n, P): cheapest cover of the full demand, if any."""
        return self.phi[-1][-1]


def _single_candidate_costs(inst: Instance, grid: Grid) -> list[list[Fraction]]:
    """Cost of one batch of each grid volume: alpha + beta*v + c*v^2/(2*lam)."""
    out = []
    two_lam = 2 * inst.lam
    for pos, s in enumerate(inst.suppliers):
        lo, hi = grid.spans[pos]
        den = grid.denominator
        row = []
        for idx in range(lo, hi + 1):
            v = Fraction(idx, den)
            row.append(s.alpha + s.beta * v + inst.c_hold * v * v / two_lam)
        out.append(row)
    return out


def _aggregated_candidate_costs(inst: Instance, grid: Grid) -> list[list[Fraction]]:
    """Cheapest multi-batch purchase of each grid total, batch count free."""
    out = []
    for pos, s in enumerate(inst.suppliers):
        lo, hi = grid.spans[pos]
        den = grid.denominator
        row = []
        for idx in range(lo, hi + 1):
            _, cost = multi_delivery_cost(s, Fraction(idx, den), inst.lam, inst.c_hold)
            row.append(cost)
        out.append(row)
    return out


def _best_balanced_split(
    supplier: Supplier, idx: int, den: int, lam: Fraction, c_hold: int
) -> tuple[int, Fraction]:
    """Cheapest split of the grid total idx/den into equal-as-possible batches
    that themselves sit on the grid.  Returns (batch_count, cost); ties go to
    the smaller count."""
    m_idx = supplier.m * den
    j_max = idx // m_idx
    x = Fraction(idx, den)
    linear = supplier.beta * x
    scale = Fraction(c_hold, 2 * lam * den * den)
    best_j, best_cost = 1, supplier.alpha + linear + scale * idx * idx
    for j in range(2, j_max + 1):
        q, rem = divmod(idx, j)
        sumsq = (j - rem) * q * q + rem * (q + 1) * (q + 1)
        cost = j * supplier.alpha + linear + scale * sumsq
        if cost < best_cost:
            best_j, best_cost = j, cost
    return best_j, best_cost


def _duplication_candidate_costs(inst: Instance, grid: Grid) -> list[list[Fraction]]:
    """Like the aggregated costs, but every individual batch is forced onto the
    grid; this is the supplier-duplication reduction with copies sharing the
    cap, collapsed to a per-total cost."""
    out = []
    for pos, s in enumerate(inst.suppliers):
        lo, hi = grid.spans[pos]
        row = []
        for idx in range(lo, hi + 1):
            _, cost = _best_balanced_split(s, idx, grid.denominator, inst.lam, inst.c_hold)
            row.append(cost)
        out.append(row)
    return out


def _fill(
    inst: Instance,
    grid: Grid,
    costs: list[list[Fraction]],
    kind: str,
    max_cells: int | None,
) -> DPTable:
    n = inst.n
    cols = grid.demand_points
    cells = (n + 1) * cols
    if max_cells is not None and cells > max_cells:
        raise ResourceLimitError(
            f"table for H={grid.H} needs {cells} cells, above the cap {max_cells}"
        )

    # One common denominator turns every cell update into integer arithmetic.
    den = 1
    for row in costs:
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
    num_costs = [[c.numerator * (den // c.denominator) for c in row] for row in costs]

    prev = [None] * cols
    prev[0] = 0
    phi_rows = [prev]
    choice_rows = [[SKIP] * cols]
    for k in range(1, n + 1):
        lo, hi = grid.spans[k - 1]
        ck = num_costs[k - 1]
        # suffix minima over candidate costs, for the over-delivery branch
        width = hi - lo + 1
        sufmin = [0] * width
        sufarg = [0] * width
        best_c, best_i = ck[width - 1], hi
        for j in range(width - 1, -1, -1):
            if ck[j] <= best_c:
                best_c, best_i = ck[j], lo + j
            sufmin[j], sufarg[j] = best_c, best_i
        row = [None] * cols
        ch = [SKIP] * cols
        for p in range(cols):
            best = prev[p]
            bidx = SKIP
            hi_p = hi if hi <= p else p
            if lo <= hi_p:
                base = p - lo
                for j in range(hi_p - lo + 1):
                    s = prev[base - j]
                    if s is None:
                        continue
                    val = ck[j] + s
                    if best is None or val < best:
                        best, bidx = val, lo + j
            start = p + 1 if p + 1 > lo else lo
            if start <= hi:
                j = start - lo
                val = sufmin[j] + prev[0]
                if best is None or val < best:
                    best, bidx = val, sufarg[j]
            row[p] = best
            ch[p] = bidx
            assert best is None or prev[p] is None or best <= prev[p]
            if p:
                if row[p - 1] is None:
                    assert row[p] is None
                else:
                    assert row[p] is None or row[p] >= row[p - 1]
        phi_rows.append(row)
        choice_rows.append(ch)
        prev = row
    phi = [
        [Fraction(v, den) if v is not None else None for v in row] for row in phi_rows
    ]
    return DPTable(H=grid.H, grid=grid, kind=kind, phi=phi, choice=choice_rows, cells=cells)


def solve_fixed_H(inst: Instance, H: int, *, max_cells: int | None = None) -> DPTable:
    """Fill the Bellman table for one grid-step hypothesis H.

    Single-delivery instances price each candidate volume as one batch;
    multi-delivery instances price it as the cheapest batch split.
    """
    grid = build_grid(inst, H)
    if inst.mode == MULTI:
        return _fill(inst, grid, _aggregated_candidate_costs(inst, grid), "multi-aggregated", max_cells)
    return _fill(inst, grid, _single_candidate_costs(inst, grid), SINGLE, max_cells)


def backtrack(table: DPTable, inst: Instance) -> Solution:
    """Recover the winning volumes of a filled table.

    Raises InfeasibleInstanceError when the table carries no feasible plan.
    """
    if table.final is None:
        raise InfeasibleInstanceError(
            f"no feasible plan exists on the H={table.H} grid"
        )
    den = table.grid.denominator
    chosen: dict[int, int] = {}
    p = table.grid.demand_points - 1
    for k in range(inst.n, 0, -1):
        c = table.choice[k][p]
        if c == SKIP:
            continue
        chosen[k] = c
        p = p - c if c < p else 0
    deliveries: list[tuple[int, Fraction]] = []
    for k in sorted(chosen):
        idx = chosen[k]
        s = inst.suppliers[k - 1]
        vol = Fraction(idx, den)
        if table.kind == "multi-aggregated":
            r, _ = multi_delivery_cost(s, vol, inst.lam, inst.c_hold)
            deliveries.extend((k, vol / r) for _ in range(r))
        elif table.kind == "multi-duplication":
            j, _ = _best_balanced_split(s, idx, den, inst.lam, inst.c_hold)
            q, rem = divmod(idx, j)
            deliveries.extend((k, Fraction(q + 1, den)) for _ in range(rem))
            deliveries.extend((k, Fraction(q, den)) for _ in range(j - rem))
        else:
            deliveries.append((k, vol))
    return make_solution(inst, deliveries)


@dataclass(frozen=True)
class HTrace:
    H: int
    objective: Fraction | None
    cells: int
    micros: int


@dataclass(frozen=True)
class SolveReport:
    best_H: int
    per_H_objectives: tuple[tuple[int, Fraction | None], ...]
    solution: Solution
    elapsed_seconds: float
    table_cells_filled: int
    trace: tuple[HTrace, ...]
    kind: str


def _sweep(inst: Instance, h_values, build_table) -> SolveReport:
    t_start = time.perf_counter()
    traces = []
    best_table = None
    best_val = None
    for H in h_values:
        t0 = time.perf_counter()
        table = build_table(H)
        micros = int((time.perf_counter() - t0) * 1_000_000)
        val = table.final
        traces.append(HTrace(H, val, table.cells, micros))
        # <= so that among cost-ties the finest grid names best_H; every tied
        # table backtracks to an equally cheap plan
        if val is not None and (best_val is None or val <= best_val):
            best_val, best_table = val, table
    if best_table is None:
        raise InfeasibleInstanceError("no grid admits a feasible plan")
    solution = backtrack(best_table, inst)
    assert solution.objective == best_val  # recomputed from scratch in make_solution
    return SolveReport(
        best_H=best_table.H,
        per_H_objectives=tuple((t.H, t.objective) for t in traces),
        solution=solution,
        elapsed_seconds=time.perf_counter() - t_start,
        table_cells_filled=sum(t.cells for t in traces),
        trace=tuple(traces),
        kind=best_table.kind,
    )


def solve(inst: Instance, *, max_cells: int | None = None) -> SolveReport:
    """Exact optimum of a single-delivery instance via the H sweep."""
    require_valid(inst)
    if inst.mode != SINGLE:
        raise ValueError("solve expects a single-delivery instance; use solve_multi")
    return _sweep(
        inst, range(1, inst.n + 1), lambda H: solve_fixed_H(inst, H, max_cells=max_cells)
    )


def multi_h_limit(inst: Instance) -> int:
    """Upper bound on the interior batch count of an optimal multi-delivery
    plan: floor(P/m) batches per supplier.  Plans that over-deliver consist of
    minimum-size batches only, which every grid carries, so H=1 covers them."""
    return max(1, sum(inst.P // s.m for s in inst.suppliers))


def solve_multi(
    inst: Instance, *, strategy: str = AGGREGATED, max_cells: int | None = None
) -> SolveReport:
    """Exact optimum when suppliers may deliver repeatedly.

    ``aggregated`` (the default) prices each grid total with the closed-form
    batch split; ``duplication`` forces every batch onto the grid, mirroring
    the reduction that clones each supplier floor(P/m) times.  Both are exact;
    the second is kept as a structurally different cross-check.
    """
    require_valid(inst)
    if inst.mode != MULTI:
        raise ValueError("solve_multi expects a multi-delivery instance; use solve")
    if strategy == AGGREGATED:
        build = lambda H: solve_fixed_H(inst, H, max_cells=max_cells)
    elif strategy == DUPLICATION:
        def build(H):
            grid = build_grid(inst, H)
            costs = _duplication_candidate_costs(inst, grid)
            return _fill(inst, grid, costs, "multi-duplication", max_cells)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return _sweep(inst, range(1, multi_h_limit(inst) + 1), build)
