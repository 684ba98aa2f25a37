"""Independent brute-force solvers used to cross-check the dynamic program.

Both are exponential and meant for small instances only; neither shares any
table machinery with :mod:`lotdp.dp`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .closed_form import lemma1_solution
from .errors import ResourceLimitError
from .model import (
    SINGLE,
    Instance,
    Solution,
    delivery_cost,
    holding_cost,
    make_solution,
    require_valid,
)

ZERO, AT_MIN, AT_MAX, INTERIOR = "zero", "at_m", "at_M", "interior"
LABELS = (ZERO, AT_MIN, AT_MAX, INTERIOR)


@dataclass(frozen=True)
class BoundaryAssignment:
    """One guess of where each supplier's volume sits: switched off, pinned at
    a window edge, or strictly inside the window."""

    labels: tuple[str, ...]


def _require_single(inst: Instance, caller: str) -> None:
    if inst.mode != SINGLE:
        raise ValueError(f"{caller} handles single-delivery instances only")


def structural_oracle(inst: Instance, *, max_suppliers: int = 10) -> Solution:
    """Exact optimum by enumerating boundary assignments.

    At an optimum every volume is 0, m_i, M_i, or strictly interior, and the
    interior group is pinned by the equal-marginal formula applied to whatever
    demand the fixed volumes leave open.  Trying all 4**n assignments and
    keeping the cheapest consistent candidate is therefore exhaustive.  The
    enumeration order is deterministic, so ties resolve identically run to run.
    """
    require_valid(inst)
    _require_single(inst, "structural_oracle")
    if inst.n > max_suppliers:
        raise ResourceLimitError(
            f"{inst.n} suppliers means 4**{inst.n} assignments; cap is {max_suppliers}"
        )
    if inst.capacity == inst.P:
        # Demand ties up every unit of capacity: the all-at-maximum plan is
        # the one feasible point.
        return make_solution(inst, [(i + 1, s.M) for i, s in enumerate(inst.suppliers)])

    best_cost = None
    best_volumes = None
    for labels in itertools.product(LABELS, repeat=inst.n):
        volumes = [Fraction(0)] * inst.n
        interior = []
        fixed_sum = 0
        for i, (label, s) in enumerate(zip(labels, inst.suppliers)):
            if label == AT_MIN:
                volumes[i] = Fraction(s.m)
                fixed_sum += s.m
            elif label == AT_MAX:
                volumes[i] = Fraction(s.M)
                fixed_sum += s.M
            elif label == INTERIOR:
                interior.append(i)
        if interior:
            residual = inst.P - fixed_sum
            if residual <= 0:
                continue
            group = lemma1_solution(
                [inst.suppliers[i].beta for i in interior],
                residual,
                inst.lam,
                inst.c_hold,
            )
            consistent = True
            for i, x in zip(interior, group.volumes):
                s = inst.suppliers[i]
                if not s.m < x < s.M:
                    consistent = False
                    break
                volumes[i] = x
            if not consistent:
                continue
        elif fixed_sum < inst.P:
            continue
        cost = Fraction(0)
        for s, v in zip(inst.suppliers, volumes):
            if v:
                cost += delivery_cost(s, v) + holding_cost(v, inst.lam, inst.c_hold)
        if best_cost is None or cost < best_cost:
            best_cost, best_volumes = cost, list(volumes)
    return make_solution(inst, [(i + 1, v) for i, v in enumerate(best_volumes)])


def grid_oracle(
    inst: Instance, denominator_bound: int, *, max_candidates: int = 2_000_000
) -> Solution:
    """Exact optimum by exhausting every combination of grid volumes.

    Each supplier may take volume 0 or any point of [m, M] whose denominator
    divides H * c_hold * den(lam) for some H up to ``denominator_bound``.
    Depth-first search with two safe prunes (a partial plan already costing at
    least the incumbent, or one that cannot reach the demand even with every
    remaining cap) keeps it exhaustive in effect.
    """
    require_valid(inst)
    _require_single(inst, "grid_oracle")
    if denominator_bound < 1:
        raise ValueError("denominator_bound must be >= 1")

    menus = []
    total = 1
    for pos, s in enumerate(inst.suppliers):
        volumes = {Fraction(0)}
        for H in range(1, denominator_bound + 1):
            den = H * inst.c_hold * inst.lam.denominator
            volumes.update(Fraction(i, den) for i in range(s.m * den, s.M * den + 1))
        menu = [
            (v, delivery_cost(s, v) + holding_cost(v, inst.lam, inst.c_hold) if v else Fraction(0))
            for v in sorted(volumes)
        ]
        menus.append(menu)
        total *= len(menu)
        if total > max_candidates:
            raise ResourceLimitError(
                f"grid enumeration needs more than {max_candidates} candidate plans"
            )

    rest_cap = [0] * (inst.n + 1)
    for i in range(inst.n - 1, -1, -1):
        rest_cap[i] = rest_cap[i + 1] + inst.suppliers[i].M

    # feasible incumbent to prune against: everyone at the cap
    best_volumes = [Fraction(s.M) for s in inst.suppliers]
    best_cost = sum(
        (delivery_cost(s, s.M) + holding_cost(s.M, inst.lam, inst.c_hold) for s in inst.suppliers),
        Fraction(0),
    )
    demand = inst.P
    chosen = [Fraction(0)] * inst.n

    def search(pos: int, volume_so_far: Fraction, cost_so_far: Fraction):
        nonlocal best_cost, best_volumes
        if pos == inst.n:
            if volume_so_far >= demand and cost_so_far < best_cost:
                best_cost, best_volumes = cost_so_far, chosen.copy()
            return
        cap_after = rest_cap[pos + 1]
        for v, c in menus[pos]:
            if volume_so_far + v + cap_after < demand:
                continue
            cost = cost_so_far + c
            if cost >= best_cost:
                break  # menu is volume-sorted and cost grows with volume
            chosen[pos] = v
            search(pos + 1, volume_so_far + v, cost)
        chosen[pos] = Fraction(0)

    search(0, Fraction(0), Fraction(0))
    return make_solution(inst, [(i + 1, v) for i, v in enumerate(best_volumes)])
