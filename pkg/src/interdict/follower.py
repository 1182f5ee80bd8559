"""Exact and approximate solvers for the follower's knapsack problem.

The exact path is a depth-first branch-and-bound with a fractional upper
bound.  All rational data is rescaled once to integers (common denominator
per dimension), so the search loop runs on machine/big integers while the
public API stays exact-rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import DimensionMismatch, MissingDummy, NotSorted
from .instance import Instance, Item
from .rational import ONE, ZERO, Rational, rat


@dataclass(frozen=True)
class FollowerSolution:
    selected: tuple
    value: Rational
    consumed: tuple


@dataclass(frozen=True)
class GreedyOutcome:
    fractions: tuple
    value: Rational
    critical_index: int


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _int_scale(values) -> int:
    d = 1
    for v in values:
        d = _lcm(d, int(rat(v).denominator))
    return d


class KnapsackSolver:
    """Reusable exact solver for one (item set, budget) pair.

    ``solve`` takes an availability bitmask, so one instance serves every
    leader decision; completed results are cached per mask.
    """

    def __init__(self, profits: Sequence, weights: Sequence, budget: Sequence):
        self.n = len(profits)
        self.s = len(budget)
        if any(len(w) != self.s for w in weights):
            raise DimensionMismatch("weight vector length does not match budget")
        self.profits = [rat(p) for p in profits]
        self.pden = _int_scale(self.profits)
        self.pnum = [int(p.numerator) * (self.pden // int(p.denominator)) for p in self.profits]
        self.wnum = []
        self.cap = []
        for d in range(self.s):
            col = [rat(w[d]) for w in weights]
            scale = _int_scale(col + [rat(budget[d])])
            self.wnum.append([int(w.numerator) * (scale // int(w.denominator)) for w in col])
            b = rat(budget[d])
            self.cap.append(int(b.numerator) * (scale // int(b.denominator)))
        # per-dimension ratio orders for the fractional bound (zero weight first)
        self.order = []
        for d in range(self.s):
            keys = []
            for j in range(self.n):
                w = self.wnum[d][j]
                keys.append(((0, ZERO, j) if w == 0 else (1, -rat(self.pnum[j], w), j)))
            self.order.append([k[2] for k in sorted(keys)])
        self._cache: dict = {}

    def _bound(self, suffix_mask, val, cons):
        best = None
        for d in range(self.s):
            cap = self.cap[d] - cons[d]
            b = val
            wrow = self.wnum[d]
            for j in self.order[d]:
                if not (suffix_mask >> j) & 1:
                    continue
                w = wrow[j]
                if w <= cap:
                    b += self.pnum[j]
                    cap -= w
                else:
                    if cap > 0:
                        b += (self.pnum[j] * cap) // w + 1
                    break
            if best is None or b < best:
                best = b
        return val if best is None else best

    def solve_mask(self, avail_mask: int, cutoff: Optional[int] = None):
        """Return (value, mask, exact) in integer profit units.

        With a cutoff, the search may stop early once the incumbent proves
        the optimum exceeds it; ``exact`` is False in that case.
        """
        cached = self._cache.get(avail_mask)
        if cached is not None:
            return cached[0], cached[1], True
        ids = [j for j in range(self.n) if (avail_mask >> j) & 1]
        m = len(ids)
        suffix = [0] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix[i] = suffix[i + 1] | (1 << ids[i])
        best_val = -1
        best_mask = 0
        aborted = False
        cons = [0] * self.s
        caps = self.cap
        wnum = self.wnum
        pnum = self.pnum

        def rec(i, val, cur_mask):
            nonlocal best_val, best_mask, aborted
            if aborted:
                return
            if i == m:
                if val > best_val:
                    best_val = val
                    best_mask = cur_mask
                    if cutoff is not None and best_val > cutoff:
                        aborted = True
                return
            if self._bound(suffix[i], val, cons) <= best_val:
                return
            j = ids[i]
            rec(i + 1, val, cur_mask)  # skip branch first: lexicographic order
            if aborted:
                return
            fits = True
            for d in range(self.s):
                if cons[d] + wnum[d][j] > caps[d]:
                    fits = False
                    break
            if fits:
                for d in range(self.s):
                    cons[d] += wnum[d][j]
                rec(i + 1, val + pnum[j], cur_mask | (1 << j))
                for d in range(self.s):
                    cons[d] -= wnum[d][j]

        rec(0, 0, 0)
        if not aborted:
            self._cache[avail_mask] = (best_val, best_mask)
        return best_val, best_mask, not aborted

    def value_of(self, val_int: int) -> Rational:
        return rat(val_int, self.pden)


def solve_exact(instance: Instance, available: Sequence, budget: Optional[Sequence] = None,
                profits: Optional[Sequence] = None) -> FollowerSolution:
    """Optimal follower response given an availability mask and budget.

    Ties between optimal sets break toward the lexicographically smallest
    selection vector.
    """
    if len(available) != instance.n:
        raise DimensionMismatch("availability mask length != n")
    budget = tuple(budget if budget is not None else instance.follower_budget)
    if len(budget) != instance.s_b:
        raise DimensionMismatch("budget length != s_b")
    if any(b < 0 for b in budget):
        raise DimensionMismatch("budget must be nonnegative")
    profs = list(profits) if profits is not None else [it.profit for it in instance.items]
    solver = KnapsackSolver(profs, [it.weight for it in instance.items], budget)
    mask = 0
    for j, a in enumerate(available):
        if a:
            mask |= 1 << j
    val, sel, _ = solver.solve_mask(mask)
    selected = tuple(1 if (sel >> j) & 1 else 0 for j in range(instance.n))
    consumed = tuple(
        sum((instance.items[j].weight[d] for j in range(instance.n) if selected[j]), ZERO)
        for d in range(instance.s_b)
    )
    return FollowerSolution(selected=selected, value=rat(val, solver.pden), consumed=consumed)


def greedy_fractional(items: Sequence[Item], availability: Sequence, budget) -> GreedyOutcome:
    """Fractional greedy packing of ratio-sorted items against a scalar budget.

    ``items`` must be sorted by profit/weight descending (ties by id) with
    a zero-profit dummy item of sufficiently large weight appended last.
    Everything strictly before the critical item is taken at its
    availability; the critical item absorbs whatever budget remains.
    """
    budget = rat(budget)
    if not items:
        raise MissingDummy("need at least the dummy item")
    if any(len(it.weight) != 1 for it in items):
        raise DimensionMismatch("greedy packing is single-dimensional")
    dummy = items[-1]
    if dummy.profit != 0 or dummy.weight[0] < budget or dummy.weight[0] <= 0:
        raise MissingDummy("last item must have zero profit and weight >= budget")
    real = items[:-1]
    if any(it.profit <= 0 for it in real):
        raise NotSorted("real items must have positive profit")

    def key(it):
        w = it.weight[0]
        return (0, ZERO, it.id) if w == 0 else (1, -(it.profit / w), it.id)

    for a, b in zip(real, real[1:]):
        if key(a) >= key(b):
            raise NotSorted(f"items {a.id} and {b.id} out of ratio order")
    if len(availability) != len(items):
        raise DimensionMismatch("availability length mismatch")
    for a in availability:
        if not (0 <= a <= 1):
            raise DimensionMismatch("availability entries must lie in [0,1]")

    remaining = budget
    fractions = [ZERO] * len(items)
    value = ZERO
    critical = None
    for t, it in enumerate(items):
        a = rat(availability[t])
        w = it.weight[0]
        if a > 0 and w > 0 and w * a >= remaining:
            fractions[t] = remaining / w
            value += it.profit * fractions[t]
            critical = it.id
            remaining = ZERO
            break
        if a > 0:
            fractions[t] = a
            value += it.profit * a
            remaining -= w * a
    if critical is None:
        raise MissingDummy("dummy item failed to absorb the residual budget")
    return GreedyOutcome(fractions=tuple(fractions), value=value, critical_index=critical)


class ExactOracle:
    """Follower oracle that always returns the optimal solution (rho = 1)."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.rho = ONE

    def solve(self, profits, available, budget) -> FollowerSolution:
        return solve_exact(self.instance, available, budget=budget, profits=profits)


class GreedyOracle:
    """Ratio-greedy packing compared against the best single item.

    The classic 2-approximation for one dimension; for general dimensions
    the quality label is only validated empirically.
    """

    def __init__(self, instance: Instance, rho=None):
        self.instance = instance
        self.rho = rat(rho) if rho is not None else rat(2)

    def solve(self, profits, available, budget) -> FollowerSolution:
        inst = self.instance
        budget = tuple(rat(b) for b in budget)
        usable = []
        for j, it in enumerate(inst.items):
            if not available[j] or rat(profits[j]) <= 0:
                continue
            if any(it.weight[d] > budget[d] for d in range(inst.s_b)):
                continue
            usable.append(j)

        def aggregate(j):
            g = ZERO
            for d in range(inst.s_b):
                if budget[d] > 0:
                    g += inst.items[j].weight[d] / budget[d]
                elif inst.items[j].weight[d] > 0:
                    return None
            return g

        ranked = []
        for j in usable:
            g = aggregate(j)
            if g is None:
                continue
            ranked.append(((0, ZERO, j) if g == 0 else (1, -(rat(profits[j]) / g), j), j))
        ranked.sort()

        consumed = [ZERO] * inst.s_b
        pack = []
        pack_value = ZERO
        for _, j in ranked:
            it = inst.items[j]
            if all(consumed[d] + it.weight[d] <= budget[d] for d in range(inst.s_b)):
                pack.append(j)
                pack_value += rat(profits[j])
                for d in range(inst.s_b):
                    consumed[d] += it.weight[d]

        single = None
        single_value = ZERO
        for _, j in ranked:
            if rat(profits[j]) > single_value:
                single_value = rat(profits[j])
                single = j

        chosen = pack if pack_value >= single_value else ([single] if single is not None else [])
        selected = tuple(1 if j in chosen else 0 for j in range(inst.n))
        value = sum((rat(profits[j]) for j in chosen), ZERO)
        cons = tuple(
            sum((inst.items[j].weight[d] for j in chosen), ZERO) for d in range(inst.s_b)
        )
        return FollowerSolution(selected=selected, value=value, consumed=cons)


def make_exact_oracle(instance: Instance) -> ExactOracle:
    return ExactOracle(instance)


def make_approx_oracle(instance: Instance, rho=None, strategy: str = "greedy-by-ratio-with-best-single-item"):
    if strategy == "exact":
        return ExactOracle(instance)
    if strategy == "greedy-by-ratio-with-best-single-item":
        return GreedyOracle(instance, rho=rho)
    raise ValueError(f"unknown oracle strategy {strategy!r}")
