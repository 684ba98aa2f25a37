"""Closed-form building blocks used by the solvers and the oracles.

Two small optimization problems admit exact formulas:

* splitting a residual demand across a group of suppliers so that every one of
  them ends at the same marginal cost, and
* splitting one supplier's total volume into the best number of equal batches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import VolumeBoundsError
from .model import Supplier, as_rational


@dataclass(frozen=True)
class InteriorSolution:
    volumes: tuple[Fraction, ...]
    residual_demand: Fraction
    group_size: int


def lemma1_solution(betas, p, lam, c_hold) -> InteriorSolution:
    """Cheapest split of demand ``p`` across suppliers with unit costs ``betas``
    when volume windows are ignored.

    Minimizing  sum_i (beta_i * x_i + c_hold * x_i**2 / (2*lam))  subject to
    sum_i x_i = p equalizes the marginal costs beta_i + c_hold * x_i / lam,
    which pins each volume to

        x_i = p/H + lam * (sum(betas) - H * beta_i) / (H * c_hold)

    with H the group size.  With integer betas, c_hold, lam and integer p every
    component is a rational with denominator dividing H * c_hold.
    """
    betas = tuple(betas)
    H = len(betas)
    if H == 0:
        raise ValueError("the supplier group must not be empty")
    p = as_rational(p)
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError("consumption intensity must be positive")
    total_beta = sum(betas)
    volumes = tuple(
        p / H + lam * (total_beta - H * beta) / (H * c_hold) for beta in betas
    )
    return InteriorSolution(volumes, p, H)


def marginal_costs(sol: InteriorSolution, betas, lam, c_hold) -> tuple[Fraction, ...]:
    """Per-supplier marginal cost beta_i + c_hold * x_i / lam; equal across the
    group exactly when ``sol`` came from lemma1_solution with these betas."""
    lam = as_rational(lam)
    return tuple(
        beta + c_hold * x / lam for beta, x in zip(betas, sol.volumes, strict=True)
    )


def multi_delivery_cost(supplier: Supplier, volume, lam, c_hold) -> tuple[int, Fraction]:
    """Best way to buy ``volume`` units from one supplier using repeated batches.

    Splitting a fixed total x into r equal batches costs

        r * alpha + beta * x + c_hold * x**2 / (2 * lam * r)

    (equal batches are optimal for a fixed r by convexity of the holding term),
    and r may range over 1..floor(x/m) so each batch stays >= m.  Returns the
    best (r, cost); ties go to the smaller r.
    """
    x = as_rational(volume)
    if x < supplier.m or x > supplier.M:
        raise VolumeBoundsError(
            f"total volume {x} outside the allowed window [{supplier.m}, {supplier.M}]"
        )
    lam = as_rational(lam)
    r_max = math.floor(x / supplier.m)
    linear = supplier.beta * x
    quad = c_hold * x * x / (2 * lam)
    best_r, best_cost = 1, supplier.alpha + linear + quad
    for r in range(2, r_max + 1):
        cost = r * supplier.alpha + linear + quad / r
        if cost < best_cost:
            best_r, best_cost = r, cost
    return best_r, best_cost
