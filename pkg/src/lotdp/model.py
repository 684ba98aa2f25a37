"""Problem data model: suppliers, instances, solutions, exact cost arithmetic.

A single product is consumed at a constant intensity ``lam`` (units per time)
and a total of ``P`` units must be procured over the horizon.  Each delivery of
``v > 0`` units from a supplier costs ``alpha + beta * v``; an empty delivery is
free.  A batch of ``v`` units sits in stock while it is consumed, which costs
``v**2 * c_hold / (2 * lam)``.  Per-supplier volumes are restricted to
``{0} union [m, M]`` and the per-supplier total over the horizon may not
exceed ``M``.

Every quantity is an exact rational (`fractions.Fraction`); floats never enter
cost computations.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FeasibilityError,
    InfeasibleInstanceError,
    InvalidInstanceError,
    SchemaError,
    VolumeBoundsError,
)

Rational = Fraction

SINGLE = "single"
MULTI = "multi"


def is_integer(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def as_rational(value) -> Fraction:
    """Coerce an int or Fraction to Fraction.  Floats are rejected: they carry
    rounding error and this package promises exact answers."""
    if isinstance(value, Fraction):
        return value
    if is_integer(value):
        return Fraction(int(value))
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class Supplier:
    """One source of product: fixed-plus-linear pricing and volume limits."""

    alpha: int  # fixed cost charged per delivery
    beta: int  # cost per delivered unit
    m: int  # smallest allowed single-delivery volume
    M: int  # largest total volume over the whole horizon


@dataclass(frozen=True)
class Instance:
    suppliers: tuple[Supplier, ...]
    P: int  # total demand over the horizon
    lam: Fraction = Fraction(1)  # consumption intensity, units per time
    c_hold: int = 1  # holding cost per unit per time-unit in stock
    mode: str = SINGLE  # "single": one delivery per supplier; "multi": repeats allowed

    def __post_init__(self):
        object.__setattr__(self, "suppliers", tuple(self.suppliers))
        object.__setattr__(self, "lam", as_rational(self.lam))

    @property
    def n(self) -> int:
        return len(self.suppliers)

    @property
    def capacity(self) -> int:
        """Sum of the per-supplier volume caps."""
        return sum(s.M for s in self.suppliers)


@dataclass(frozen=True)
class Delivery:
    supplier_index: int  # 1-based, matching the wire format
    volume: Fraction

    def __post_init__(self):
        object.__setattr__(self, "volume", as_rational(self.volume))
        if self.volume <= 0:
            raise ValueError("delivery volume must be positive; omit zero batches")


@dataclass(frozen=True)
class Solution:
    deliveries: tuple[Delivery, ...]
    objective: Fraction
    per_supplier_totals: tuple[Fraction, ...]

    @property
    def total_volume(self) -> Fraction:
        return sum(self.per_supplier_totals, Fraction(0))


def delivery_cost(supplier: Supplier, volume) -> Fraction:
    """Purchase cost of one batch: zero for an empty batch, else alpha + beta*v.

    Raises VolumeBoundsError when 0 < v < m or v > M.
    """
    v = as_rational(volume)
    if v == 0:
        return Fraction(0)
    if v < supplier.m or v > supplier.M:
        raise VolumeBoundsError(
            f"batch volume {v} outside the allowed window [{supplier.m}, {supplier.M}]"
        )
    return supplier.alpha + supplier.beta * v


def holding_cost(volume, lam, c_hold) -> Fraction:
    """Storage cost of one batch consumed at rate lam: v**2 * c_hold / (2*lam).

    The batch arrives when stock hits zero and is drawn down linearly, so the
    stored quantity traces a triangle of height v and base v/lam.
    """
    v = as_rational(volume)
    if v < 0:
        raise ValueError("batch volume must be nonnegative")
    return v * v * c_hold / (2 * as_rational(lam))


def _delivery_violations(inst: Instance, deliveries) -> list[str]:
    problems = []
    totals = [Fraction(0)] * inst.n
    for d in deliveries:
        if not 1 <= d.supplier_index <= inst.n:
            problems.append(
                f"delivery names supplier {d.supplier_index}, "
                f"but the instance has suppliers 1..{inst.n}"
            )
            continue
        s = inst.suppliers[d.supplier_index - 1]
        if d.volume < s.m or d.volume > s.M:
            problems.append(
                f"batch of {d.volume} from supplier {d.supplier_index} "
                f"outside its window [{s.m}, {s.M}]"
            )
        totals[d.supplier_index - 1] += d.volume
    for i, t in enumerate(totals):
        cap = inst.suppliers[i].M
        if t > cap:
            problems.append(f"supplier {i + 1} delivers {t} in total, above its cap {cap}")
    delivered = sum(totals, Fraction(0))
    if delivered < inst.P:
        problems.append(f"total delivered volume {delivered} is below the demand {inst.P}")
    return problems


def _cost_of(inst: Instance, deliveries) -> Fraction:
    total = Fraction(0)
    for d in deliveries:
        s = inst.suppliers[d.supplier_index - 1]
        total += delivery_cost(s, d.volume) + holding_cost(d.volume, inst.lam, inst.c_hold)
    return total


def solution_cost(inst: Instance, sol: Solution) -> Fraction:
    """Recompute the objective of a solution from scratch.

    Raises FeasibilityError listing every violated constraint (demand coverage,
    per-supplier caps, per-batch volume windows).
    """
    problems = _delivery_violations(inst, sol.deliveries)
    if problems:
        raise FeasibilityError(problems)
    return _cost_of(inst, sol.deliveries)


def make_solution(inst: Instance, deliveries) -> Solution:
    """Build a Solution from (supplier_index, volume) pairs or Delivery objects.

    Zero-volume entries are dropped, feasibility is checked, and the objective
    is computed here so the stored value always matches a recomputation.
    """
    batch: list[Delivery] = []
    for d in deliveries:
        if not isinstance(d, Delivery):
            idx, vol = d
            vol = as_rational(vol)
            if vol == 0:
                continue
            d = Delivery(idx, vol)
        batch.append(d)
    problems = _delivery_violations(inst, batch)
    if problems:
        raise FeasibilityError(problems)
    totals = [Fraction(0)] * inst.n
    for d in batch:
        totals[d.supplier_index - 1] += d.volume
    return Solution(tuple(batch), _cost_of(inst, batch), tuple(totals))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]
    notes: tuple[str, ...] = ()

    @property
    def infeasible_demand(self) -> bool:
        return any(v.code == "demand_exceeds_capacity" for v in self.violations)


def validate_instance(inst: Instance) -> ValidationReport:
    """Check every structural invariant of an instance and report all failures.

    Constructors are deliberately lenient so that malformed data can be
    collected into one report instead of failing fast on the first field.
    """
    violations: list[Violation] = []
    notes: list[str] = []

    def bad(code, message):
        violations.append(Violation(code, message))

    if inst.n == 0:
        bad("no_suppliers", "instance has no suppliers")
    bounds_ok = True
    for i, s in enumerate(inst.suppliers, start=1):
        if not is_integer(s.alpha) or s.alpha < 0:
            bad("bad_alpha", f"supplier {i}: fixed cost must be a nonnegative integer, got {s.alpha!r}")
        if not is_integer(s.beta) or s.beta < 0:
            bad("bad_beta", f"supplier {i}: unit cost must be a nonnegative integer, got {s.beta!r}")
        if not is_integer(s.m) or s.m <= 0:
            bad("bad_min_volume", f"supplier {i}: minimum volume must be a positive integer, got {s.m!r}")
            bounds_ok = False
        if not is_integer(s.M) or s.M <= 0:
            bad("bad_max_volume", f"supplier {i}: maximum volume must be a positive integer, got {s.M!r}")
            bounds_ok = False
        if is_integer(s.m) and is_integer(s.M) and s.m > s.M:
            bad("min_exceeds_max", f"supplier {i}: minimum volume {s.m} exceeds maximum {s.M}")
    if not is_integer(inst.P) or inst.P < 0:
        bad("bad_demand", f"demand must be a nonnegative integer, got {inst.P!r}")
        bounds_ok = False
    if not is_integer(inst.c_hold) or inst.c_hold < 1:
        bad("bad_holding_rate", f"holding rate must be an integer >= 1, got {inst.c_hold!r}")
    if inst.lam <= 0:
        bad("bad_intensity", f"consumption intensity must be positive, got {inst.lam}")
    if inst.mode not in (SINGLE, MULTI):
        bad("bad_mode", f"mode must be {SINGLE!r} or {MULTI!r}, got {inst.mode!r}")
    if bounds_ok and inst.n > 0:
        cap = inst.capacity
        if cap < inst.P:
            bad(
                "demand_exceeds_capacity",
                f"total supplier capacity {cap} cannot cover the demand {inst.P}",
            )
        elif cap == inst.P:
            notes.append(
                "capacity equals demand exactly: the only feasible plan delivers "
                "every supplier's maximum volume"
            )
    return ValidationReport(not violations, tuple(violations), tuple(notes))


def require_valid(inst: Instance) -> ValidationReport:
    """Raise on an invalid instance; used as the entry check of every solver."""
    report = validate_instance(inst)
    if report.ok:
        return report
    if report.infeasible_demand and len(report.violations) == 1:
        raise InfeasibleInstanceError(report.violations[0].message)
    raise InvalidInstanceError(report)


# --- JSON wire format -------------------------------------------------------
#
# Instance: {"P": int, "lambda": int | {"num", "den"}, "c_hold": int,
#            "mode": "single" | "multi",
#            "suppliers": [{"alpha", "beta", "m", "M"}, ...]}
# Solution: {"objective": {"num", "den"},
#            "deliveries": [{"supplier": int (1-based), "volume": {"num", "den"}}]}


def rational_to_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def rational_from_json(obj, where: str = "value") -> Fraction:
    if is_integer(obj):
        return Fraction(int(obj))
    if isinstance(obj, dict):
        for key in ("num", "den"):
            if key not in obj:
                raise SchemaError(f"{where}: missing field {key!r}")
            if not is_integer(obj[key]):
                raise SchemaError(f"{where}.{key}: expected an integer, got {obj[key]!r}")
        if obj["den"] < 1:
            raise SchemaError(f"{where}.den: denominator must be >= 1, got {obj['den']}")
        return Fraction(obj["num"], obj["den"])
    raise SchemaError(f"{where}: expected an integer or a num/den object, got {obj!r}")


def _int_field(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    if not is_integer(obj[key]):
        raise SchemaError(f"{where}.{key}: expected an integer, got {obj[key]!r}")
    return int(obj[key])


def instance_to_json(inst: Instance) -> dict:
    lam = inst.lam
    return {
        "P": inst.P,
        "lambda": lam.numerator if lam.denominator == 1 else rational_to_json(lam),
        "c_hold": inst.c_hold,
        "mode": inst.mode,
        "suppliers": [
            {"alpha": s.alpha, "beta": s.beta, "m": s.m, "M": s.M} for s in inst.suppliers
        ],
    }


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise SchemaError("instance: top level must be a JSON object")
    for key in ("P", "lambda", "c_hold", "mode", "suppliers"):
        if key not in obj:
            raise SchemaError(f"instance: missing field {key!r}")
    if not isinstance(obj["suppliers"], list):
        raise SchemaError("instance.suppliers: expected a list")
    suppliers = []
    for i, raw in enumerate(obj["suppliers"]):
        where = f"instance.suppliers[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{where}: expected an object")
        suppliers.append(
            Supplier(
                alpha=_int_field(raw, "alpha", where),
                beta=_int_field(raw, "beta", where),
                m=_int_field(raw, "m", where),
                M=_int_field(raw, "M", where),
            )
        )
    mode = obj["mode"]
    if mode not in (SINGLE, MULTI):
        raise SchemaError(f"instance.mode: expected 'single' or 'multi', got {mode!r}")
    return Instance(
        suppliers=tuple(suppliers),
        P=_int_field(obj, "P", "instance"),
        lam=rational_from_json(obj["lambda"], "instance.lambda"),
        c_hold=_int_field(obj, "c_hold", "instance"),
        mode=mode,
    )


def solution_to_json(sol: Solution, approx: bool = False) -> dict:
    out = {
        "objective": rational_to_json(sol.objective),
        "deliveries": [
            {"supplier": d.supplier_index, "volume": rational_to_json(d.volume)}
            for d in sol.deliveries
        ],
    }
    if approx:
        out["objective"]["approx"] = float(sol.objective)
        for entry, d in zip(out["deliveries"], sol.deliveries):
            entry["volume"]["approx"] = float(d.volume)
    return out


def solution_from_json(obj, inst: Instance) -> Solution:
    if not isinstance(obj, dict):
        raise SchemaError("solution: top level must be a JSON object")
    for key in ("objective", "deliveries"):
        if key not in obj:
            raise SchemaError(f"solution: missing field {key!r}")
    stated = rational_from_json(obj["objective"], "solution.objective")
    pairs = []
    for i, raw in enumerate(obj["deliveries"]):
        where = f"solution.deliveries[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{where}: expected an object")
        idx = _int_field(raw, "supplier", where)
        if "volume" not in raw:
            raise SchemaError(f"{where}: missing field 'volume'")
        pairs.append((idx, rational_from_json(raw["volume"], f"{where}.volume")))
    sol = make_solution(inst, pairs)
    if sol.objective != stated:
        raise SchemaError(
            f"solution.objective: stated value {stated} does not match the "
            f"recomputed cost {sol.objective}"
        )
    return sol
