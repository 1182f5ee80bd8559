"""Instance data model, exact file format, normalization and generators.

An instance holds items with a profit, a leader cost vector (s_a dims) and
a follower weight vector (s_b dims), plus the two budget vectors.  The
on-disk format is JSON with every rational encoded as a strict "num/den"
(or plain integer) string, so serialize -> parse is the identity.

Document layout (version 1)::

    {"version": 1, "s_a": 1, "s_b": 2,
     "leader_budget": ["3/2"], "follower_budget": ["1", "2"],
     "items": [{"p": "1/2", "cost": ["1"], "weight": ["1/4", "1/3"]}]}
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    DeltaOutOfRange,
    DimensionTooSmall,
    EmptyInstance,
    FormatError,
    InvalidHittingSet,
    ModeMismatch,
    NegativeEntry,
)
from .rational import ONE, ZERO, Rational, ceil_to_geometric, floor_to_geometric, rat, rat_from_str, rat_to_str


@dataclass(frozen=True)
class Item:
    """One item: profit, leader cost vector and follower weight vector."""

    id: int
    profit: Rational
    cost: tuple
    weight: tuple

    def __post_init__(self):
        if self.profit < 0:
            raise NegativeEntry(f"item {self.id}: negative profit")
        if any(c < 0 for c in self.cost) or any(w < 0 for w in self.weight):
            raise NegativeEntry(f"item {self.id}: negative cost/weight entry")


@dataclass(frozen=True)
class Instance:
    items: tuple
    leader_budget: tuple
    follower_budget: tuple
    s_a: int
    s_b: int

    def __post_init__(self):
        if self.s_a < 1 or self.s_b < 1:
            raise FormatError("budget dimensions must be positive")
        if len(self.leader_budget) != self.s_a or len(self.follower_budget) != self.s_b:
            raise FormatError("budget vector length does not match dimension")
        if any(b < 0 for b in self.leader_budget + self.follower_budget):
            raise NegativeEntry("negative budget entry")
        for it in self.items:
            if len(it.cost) != self.s_a or len(it.weight) != self.s_b:
                raise FormatError(f"item {it.id}: vector length mismatch")
            if it.profit <= 0:
                raise FormatError(f"item {it.id}: profit must be positive")

    @property
    def n(self) -> int:
        return len(self.items)

    def total_profit(self) -> Rational:
        return sum((it.profit for it in self.items), ZERO)

    def to_doc(self) -> dict:
        return {
            "version": 1,
            "s_a": self.s_a,
            "s_b": self.s_b,
            "leader_budget": [rat_to_str(b) for b in self.leader_budget],
            "follower_budget": [rat_to_str(b) for b in self.follower_budget],
            "items": [
                {
                    "p": rat_to_str(it.profit),
                    "cost": [rat_to_str(c) for c in it.cost],
                    "weight": [rat_to_str(w) for w in it.weight],
                }
                for it in self.items
            ],
        }

    @staticmethod
    def from_doc(doc: dict) -> "Instance":
        try:
            if doc["version"] != 1:
                raise FormatError(f"unsupported version {doc['version']!r}")
            s_a, s_b = int(doc["s_a"]), int(doc["s_b"])
            lb = tuple(rat_from_str(b) for b in doc["leader_budget"])
            fb = tuple(rat_from_str(b) for b in doc["follower_budget"])
            items = tuple(
                Item(
                    id=j,
                    profit=rat_from_str(rec["p"]),
                    cost=tuple(rat_from_str(c) for c in rec["cost"]),
                    weight=tuple(rat_from_str(w) for w in rec["weight"]),
                )
                for j, rec in enumerate(doc["items"])
            )
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed instance document: {exc}") from exc
        return Instance(items=items, leader_budget=lb, follower_budget=fb, s_a=s_a, s_b=s_b)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_doc(), fh, indent=1)
            fh.write("\n")

    @staticmethod
    def load(path) -> "Instance":
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FormatError(f"not a JSON document: {exc}") from exc
        return Instance.from_doc(doc)


@dataclass(frozen=True)
class ScaledInstance:
    """Instance with unit budgets plus the bookkeeping to map back.

    ``profit_scale`` maps scaled profits to originals (original = scaled *
    profit_scale).  Items whose scaled weight exceeds 1 in some dimension
    are retained but listed in ``follower_infeasible``; items that cannot
    be interdicted because a zero leader-budget dimension was dropped are
    listed in ``leader_forbidden``.
    """

    instance: Instance
    profit_scale: Rational
    original_index_map: tuple
    leader_forbidden: frozenset = field(default_factory=frozenset)
    follower_infeasible: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class Classification:
    """Per-item profit class (large/medium/small) and weight class (large/small)."""

    delta: Rational
    mode: str
    profit_class: tuple
    weight_class: tuple

    def is_large(self, pos: int) -> bool:
        return self.profit_class[pos] == "large" or self.weight_class[pos] == "large"

    def large_positions(self):
        return tuple(i for i in range(len(self.profit_class)) if self.is_large(i))

    def small_positions(self):
        return tuple(i for i in range(len(self.profit_class)) if not self.is_large(i))


@dataclass(frozen=True)
class HittingSetInstance:
    """Ground set {1..n_elements}, 3-element subsets, and the pick budget k."""

    n_elements: int
    sets: tuple
    k: int

    def __post_init__(self):
        if self.n_elements < 1 or self.k < 1:
            raise InvalidHittingSet("need a nonempty ground set and k >= 1")
        covered = set()
        for s in self.sets:
            if len(s) != 3 or len(set(s)) != 3:
                raise InvalidHittingSet(f"subset {s!r} must have exactly 3 distinct elements")
            if any(not (1 <= u <= self.n_elements) for u in s):
                raise InvalidHittingSet(f"subset {s!r} leaves the ground set")
            covered.update(s)
        if covered != set(range(1, self.n_elements + 1)):
            raise InvalidHittingSet("union of subsets must equal the ground set")


def normalize(instance: Instance) -> ScaledInstance:
    """Rescale budgets to all-ones, dividing costs/weights componentwise.

    Zero-budget dimensions are dropped first: a leader dimension with zero
    budget makes every item with positive cost there un-interdictable, and
    symmetrically for the follower.  Profits are divided by max(1, max p)
    so the scaled profits stay within [0, 1]; profit_scale restores them.
    """
    if not instance.items:
        raise EmptyInstance("normalize needs at least one item")

    keep_a = [d for d in range(instance.s_a) if instance.leader_budget[d] > 0]
    keep_b = [d for d in range(instance.s_b) if instance.follower_budget[d] > 0]

    leader_forbidden = set()
    follower_infeasible = set()
    for it in instance.items:
        if any(it.cost[d] > 0 for d in range(instance.s_a) if d not in keep_a):
            leader_forbidden.add(it.id)
        if any(it.weight[d] > 0 for d in range(instance.s_b) if d not in keep_b):
            follower_infeasible.add(it.id)

    # A dimension set may empty out entirely; keep one vacuous unit dimension.
    a_div = [instance.leader_budget[d] for d in keep_a] or [ONE]
    b_div = [instance.follower_budget[d] for d in keep_b] or [ONE]

    max_p = max(it.profit for it in instance.items)
    p_scale = max_p if max_p > 1 else ONE

    items = []
    for it in instance.items:
        cost = tuple(it.cost[d] / instance.leader_budget[d] for d in keep_a) or (ZERO,)
        weight = tuple(it.weight[d] / instance.follower_budget[d] for d in keep_b) or (ZERO,)
        if any(w > 1 for w in weight):
            follower_infeasible.add(it.id)
        items.append(Item(id=it.id, profit=it.profit / p_scale, cost=cost, weight=weight))

    scaled = Instance(
        items=tuple(items),
        leader_budget=tuple(ONE for _ in a_div),
        follower_budget=tuple(ONE for _ in b_div),
        s_a=len(a_div),
        s_b=len(b_div),
    )
    return ScaledInstance(
        instance=scaled,
        profit_scale=p_scale,
        original_index_map=tuple(it.id for it in instance.items),
        leader_forbidden=frozenset(leader_forbidden),
        follower_infeasible=frozenset(follower_infeasible),
    )


def _check_delta(delta) -> Rational:
    delta = rat(delta)
    if not (0 < delta < 1):
        raise DeltaOutOfRange(f"delta must lie in (0,1), got {delta}")
    return delta


def round_profit_value(p, delta) -> Rational:
    """Round one profit down onto the delta^2*(1+delta)^h grid; below delta^2 it is kept."""
    delta = rat(delta)
    base = delta * delta
    if p <= base:
        return rat(p)
    _, grid = floor_to_geometric(p, base, 1 + delta)
    return grid


def round_profits(scaled: ScaledInstance, delta) -> ScaledInstance:
    """Round every profit above delta^2 down to the nearest delta^2*(1+delta)^h."""
    delta = _check_delta(delta)
    inst = scaled.instance
    if any(it.profit > 1 for it in inst.items):
        raise DeltaOutOfRange("profits must not exceed 1 before rounding")
    items = tuple(
        Item(id=it.id, profit=round_profit_value(it.profit, delta), cost=it.cost, weight=it.weight)
        for it in inst.items
    )
    return ScaledInstance(
        instance=Instance(items, inst.leader_budget, inst.follower_budget, inst.s_a, inst.s_b),
        profit_scale=scaled.profit_scale,
        original_index_map=scaled.original_index_map,
        leader_forbidden=scaled.leader_forbidden,
        follower_infeasible=scaled.follower_infeasible,
    )


def round_weight_coordinate(v, delta, s_b) -> Rational:
    """Round one non-principal weight coordinate up onto the (delta^2/s_b)*(1+delta)^h grid."""
    base = rat(delta) * rat(delta) / s_b
    if v <= base:
        return base
    _, grid = ceil_to_geometric(v, base, 1 + rat(delta))
    return grid


def round_weights_general(scaled: ScaledInstance, delta) -> ScaledInstance:
    """Round up non-principal weight coordinates of large-weight items.

    Dimension 1 is kept intact.  Only items with infinity-norm weight above
    delta are touched; the rounded vector dominates the original one.
    """
    delta = _check_delta(delta)
    inst = scaled.instance
    if inst.s_b < 2:
        raise DimensionTooSmall("weight rounding needs s_b >= 2")
    items = []
    for it in inst.items:
        if max(it.weight) > delta:
            weight = (it.weight[0],) + tuple(
                round_weight_coordinate(it.weight[d], delta, inst.s_b) for d in range(1, inst.s_b)
            )
            items.append(Item(id=it.id, profit=it.profit, cost=it.cost, weight=weight))
        else:
            items.append(it)
    return ScaledInstance(
        instance=Instance(tuple(items), inst.leader_budget, inst.follower_budget, inst.s_a, inst.s_b),
        profit_scale=scaled.profit_scale,
        original_index_map=scaled.original_index_map,
        leader_forbidden=scaled.leader_forbidden,
        follower_infeasible=scaled.follower_infeasible,
    )


def classify(scaled: ScaledInstance, delta, mode: str = "scalar") -> Classification:
    """Split items into profit classes and weight classes.

    mode 'scalar' reads the single weight coordinate (s_b must be 1);
    mode 'infinity_norm' uses the largest weight coordinate.
    """
    delta = _check_delta(delta)
    inst = scaled.instance
    if mode == "scalar":
        if inst.s_b != 1:
            raise ModeMismatch("scalar mode needs s_b == 1")
        crit = [it.weight[0] for it in inst.items]
    elif mode == "infinity_norm":
        crit = [max(it.weight) for it in inst.items]
    else:
        raise ModeMismatch(f"unknown mode {mode!r}")

    base = delta * delta
    profit_class = tuple(
        "large" if it.profit > delta else ("medium" if it.profit > base else "small")
        for it in inst.items
    )
    weight_class = tuple("large" if c > delta else "small" for c in crit)
    return Classification(delta=delta, mode=mode, profit_class=profit_class, weight_class=weight_class)


DEFAULT_GRID = tuple(rat(k, 8) for k in range(1, 9))


def gen_random(n: int, s_a: int, s_b: int, value_grid: Optional[Sequence] = None, seed: int = 0) -> Instance:
    """Deterministic random instance with every entry drawn from a small grid.

    Profits and weights come from the positive grid values (the greedy and
    critical-item machinery assumes positive weights); costs may be zero.
    Budgets are sums of n//3 + 1 grid draws per dimension, which keeps a
    nontrivial fraction of the items feasible for both players.
    """
    grid = tuple(rat(v) for v in (value_grid if value_grid is not None else DEFAULT_GRID))
    if not grid:
        raise ValueError("value grid must be nonempty")
    pos = tuple(v for v in grid if v > 0)
    if not pos:
        raise ValueError("value grid needs at least one positive entry")

    rng = random.Random(seed)
    items = []
    for j in range(n):
        profit = rng.choice(pos)
        cost = tuple(rng.choice(grid) for _ in range(s_a))
        weight = tuple(rng.choice(pos) for _ in range(s_b))
        items.append(Item(id=j, profit=profit, cost=cost, weight=weight))
    draws = n // 3 + 1
    leader_budget = tuple(sum((rng.choice(pos) for _ in range(draws)), ZERO) for _ in range(s_a))
    follower_budget = tuple(sum((rng.choice(pos) for _ in range(draws)), ZERO) for _ in range(s_b))
    return Instance(tuple(items), leader_budget, follower_budget, s_a, s_b)


def gen_3hs_reduction(hs: HittingSetInstance) -> Instance:
    """Encode a 3-hitting-set question as an interdiction instance.

    Element u_i becomes an item of cost 1 and weight (10^i, Q - 10^i); each
    3-subset becomes an item of cost k+1 (never interdictable) and weight
    (E - 10^i - 10^j - 10^k, Q - E + 10^i + 10^j + 10^k), with
    E = 10 * sum_i 10^i and Q = 10E.  Every profit is 1, the leader budget
    is k and the follower budget is (E, 4Q - E).  The two weight
    coordinates of every item sum to exactly Q.
    """
    n = hs.n_elements
    E = 10 * sum(10**i for i in range(1, n + 1))
    Q = 10 * E
    items = []
    for i in range(1, n + 1):
        items.append(
            Item(id=i - 1, profit=ONE, cost=(ONE,), weight=(rat(10**i), rat(Q - 10**i)))
        )
    for h, (i, j, k3) in enumerate(hs.sets):
        powers = 10**i + 10**j + 10**k3
        items.append(
            Item(
                id=n + h,
                profit=ONE,
                cost=(rat(hs.k + 1),),
                weight=(rat(E - powers), rat(Q - E + powers)),
            )
        )
    return Instance(
        items=tuple(items),
        leader_budget=(rat(hs.k),),
        follower_budget=(rat(E), rat(4 * Q - E)),
        s_a=1,
        s_b=2,
    )
