"""Ground-truth bilevel solver: exhaustive leader enumeration with exact
follower best responses.  Intended for desk-scale instances; every
approximation algorithm in this package is checked against it."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InstanceTooLarge
from .follower import FollowerSolution, KnapsackSolver, solve_exact
from .instance import Instance
from .rational import ONE, ZERO, Rational, rat

EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class BilevelResult:
    leader: tuple
    follower_response: FollowerSolution
    objective: Rational
    bound_claim: str
    budget_multiplier: Rational = ONE


@dataclass(frozen=True)
class VerificationReport:
    leader_feasible: bool
    follower_feasible: bool
    objective_matches: bool
    recomputed_objective: Rational
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def _lex_smaller(mask_a: int, mask_b: int, n: int) -> bool:
    """Compare leader selections as 0/1 vectors in index order."""
    for j in range(n):
        a = (mask_a >> j) & 1
        b = (mask_b >> j) & 1
        if a != b:
            return a < b
    return False


def solve(instance: Instance, leader_cap: Optional[int] = None, max_items: int = EXHAUSTIVE_LIMIT) -> BilevelResult:
    """Minimize the follower's best response over all feasible leader sets.

    Enumeration runs in increasing popcount with budget-infeasible
    prefixes pruned; items whose cost alone exceeds the leader budget are
    dropped from the enumeration.  Ties break toward the lexicographically
    smallest leader vector.
    """
    n = instance.n
    if n > max_items:
        raise InstanceTooLarge(f"{n} items exceeds the exhaustive limit {max_items}")
    a = instance.leader_budget
    s_a = instance.s_a
    items = instance.items
    eligible = [j for j in range(n) if all(items[j].cost[d] <= a[d] for d in range(s_a))]
    solver = KnapsackSolver(
        [it.profit for it in items], [it.weight for it in items], instance.follower_budget
    )
    full_mask = (1 << n) - 1

    # profits sorted descending for the cheap "best available single item" bound
    usable = [
        j
        for j in range(n)
        if all(items[j].weight[d] <= instance.follower_budget[d] for d in range(instance.s_b))
    ]
    by_profit = sorted(usable, key=lambda j: (-items[j].profit, j))

    best_val_int: Optional[int] = None
    best_mask = 0

    def top_available_value(taken_mask: int) -> int:
        for j in by_profit:
            if not (taken_mask >> j) & 1:
                return solver.pnum[j]
        return 0

    def consider(taken_mask: int):
        nonlocal best_val_int, best_mask
        if best_val_int is not None and top_available_value(taken_mask) > best_val_int:
            return
        cutoff = best_val_int if best_val_int is not None else None
        val, _, exact = solver.solve_mask(full_mask & ~taken_mask, cutoff=cutoff)
        if not exact:
            return
        if best_val_int is None or val < best_val_int:
            best_val_int = val
            best_mask = taken_mask
        elif val == best_val_int and _lex_smaller(taken_mask, best_mask, n):
            best_mask = taken_mask

    cap = len(eligible) if leader_cap is None else min(leader_cap, len(eligible))

    def combos(start: int, left: int, taken_mask: int, cost):
        if left == 0:
            consider(taken_mask)
            return
        for pos in range(start, len(eligible) - left + 1):
            j = eligible[pos]
            new_cost = tuple(cost[d] + items[j].cost[d] for d in range(s_a))
            if any(new_cost[d] > a[d] for d in range(s_a)):
                continue
            combos(pos + 1, left - 1, taken_mask | (1 << j), new_cost)

    zero_cost = tuple(ZERO for _ in range(s_a))
    for k in range(cap + 1):
        combos(0, k, 0, zero_cost)

    leader = tuple(1 if (best_mask >> j) & 1 else 0 for j in range(n))
    response = solve_exact(instance, tuple(1 - x for x in leader))
    return BilevelResult(
        leader=leader,
        follower_response=response,
        objective=response.value,
        bound_claim="exact optimum by exhaustive leader enumeration",
    )


def verify(instance: Instance, result: BilevelResult) -> VerificationReport:
    """Re-check leader feasibility and the claimed objective from scratch."""
    failures = []
    mult = rat(result.budget_multiplier)
    n = instance.n
    leader_ok = True
    if len(result.leader) != n:
        leader_ok = False
        failures.append("leader-length-mismatch")
    else:
        for d in range(instance.s_a):
            spent = sum(
                (instance.items[j].cost[d] for j in range(n) if result.leader[j]), ZERO
            )
            if spent > mult * instance.leader_budget[d]:
                leader_ok = False
                failures.append(f"leader-infeasible-dim-{d}")
                break

    follower_ok = True
    resp = result.follower_response
    if len(resp.selected) != n:
        follower_ok = False
        failures.append("follower-length-mismatch")
    else:
        if any(resp.selected[j] and result.leader[j] for j in range(n)):
            follower_ok = False
            failures.append("follower-overlaps-leader")
        for d in range(instance.s_b):
            used = sum(
                (instance.items[j].weight[d] for j in range(n) if resp.selected[j]), ZERO
            )
            if used > instance.follower_budget[d]:
                follower_ok = False
                failures.append(f"follower-infeasible-dim-{d}")
                break

    recomputed = ZERO
    objective_ok = True
    if leader_ok:
        best = solve_exact(instance, tuple(1 - x for x in result.leader))
        recomputed = best.value
        if recomputed != result.objective:
            objective_ok = False
            failures.append("objective-mismatch")
    return VerificationReport(
        leader_feasible=leader_ok,
        follower_feasible=follower_ok,
        objective_matches=objective_ok,
        recomputed_objective=recomputed,
        failures=tuple(failures),
    )
