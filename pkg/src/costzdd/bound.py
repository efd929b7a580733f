"""Cost-bounded filtering of ZDD families.

Given a per-item cost vector and a bound b, produce the ZDD holding
exactly the member sets whose total cost is at most b.  Three variants
share one recursion shape and differ only in memoization:

* ``backtrack_naive``: no memo; call count equals the number of root to
  terminal paths, exponential in general.  Oracle and baseline.
* ``backtrack_memo``: memo keyed on the exact (node, residual bound)
  pair, the classic DP-state table.
* ``backtrack_interval_memo``: memo keyed on node alone, each entry
  recording the half-open interval of residual bounds for which one
  result stays valid.  The workhorse: one stored entry answers every
  future query whose residual bound falls inside the interval, so the
  memo keeps paying off across queries with different bounds.

The interval variant reports two diagnostics per query: ``accept_worst``,
the highest cost among accepted sets, and ``reject_best``, the lowest
cost among rejected ones.  They are exactly the endpoints of the validity
interval, and they double as optimizers: at b = -infinity reject_best is
the minimum member cost, at b = +infinity accept_worst is the maximum.

All variants count every procedure invocation, including terminal and
memo-hit returns; ``BoundResult.calls`` is the per-query total and
``Bounder.call_counter`` accumulates across queries.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .extint import (
    INT64_MAX,
    INT64_MIN,
    NEG_INF,
    POS_INF,
    CostOverflowError,
    ExtInt,
    check_finite,
    format_ext,
)
from .forest import Forest, ONE, ZERO


class MemoInvariantError(AssertionError):
    """Stored intervals for one node overlap with conflicting results."""


class CallBudgetError(RuntimeError):
    """A single query exceeded the session's invocation budget.

    The naive and flat-memo variants can need astronomically many calls
    (and, for the flat memo, one table entry per distinct residual bound,
    so memory grows with the call count).  A budget turns that into a
    clean failure; ``calls`` reports how far the query got, which is by
    construction a lower bound on the full cost.
    """

    def __init__(self, calls: int, limit: int):
        super().__init__(f"query aborted after {calls} calls (budget {limit})")
        self.calls = calls
        self.limit = limit


@dataclass(frozen=True)
class BoundResult:
    """Outcome of one bounded-filter query.

    ``root`` is the canonical ZDD of the surviving sets.  ``accept_worst``
    and ``reject_best`` are set by the interval variant only (None
    otherwise).  ``calls`` counts this query's invocations.
    """

    root: int
    accept_worst: ExtInt | None
    reject_best: ExtInt | None
    calls: int


class Bounder:
    """Bounded-filter session over one forest and one cost vector.

    Memos are valid only for the bound cost vector, so a different vector
    needs a fresh Bounder.  Like the forest, a Bounder is single-owner:
    every query may mutate its memos and the forest.

    ``call_limit``, when given, aborts any single query whose invocation
    count passes it with :class:`CallBudgetError`.
    """

    def __init__(self, forest: Forest, costs: list[int], call_limit: int | None = None):
        if len(costs) != forest.n_items:
            raise ValueError(
                f"cost vector has {len(costs)} entries, forest has {forest.n_items} items"
            )
        self.forest = forest
        self.costs = [check_finite(c) for c in costs]
        # Residual bounds stay in [b - pos, b - neg]; interval endpoints in
        # [neg, pos].  With both sums checked here and the bound checked per
        # query, the hot loops below can use raw int arithmetic and still
        # honor the 64-bit overflow contract.
        self._pos_sum = sum(c for c in self.costs if c > 0)
        self._neg_sum = sum(c for c in self.costs if c < 0)
        if self._pos_sum > INT64_MAX or self._neg_sum < INT64_MIN:
            raise CostOverflowError("total cost mass exceeds the 64-bit range")
        # item -> cost, 1-based
        self._cost_of = [0] + self.costs
        if call_limit is not None and call_limit < 1:
            raise ValueError(f"call limit must be positive, got {call_limit}")
        self.call_limit = call_limit
        self.call_counter = 0
        self.flat_memo: dict[tuple[int, ExtInt], int] = {}
        # node -> (sorted accept_worst list, parallel (reject_best, result) list)
        self.interval_memo: dict[int, tuple[list[ExtInt], list[tuple[ExtInt, int]]]] = {}
        self._minmax_cache: dict[int, tuple[ExtInt, ExtInt]] = {}
        self._power_root: int | None = None

    def _check_bound(self, b: ExtInt) -> ExtInt:
        if type(b) is int:
            if not INT64_MIN <= b <= INT64_MAX:
                raise CostOverflowError(f"bound {b} outside the 64-bit range")
            if b - self._pos_sum < INT64_MIN or b - self._neg_sum > INT64_MAX:
                raise CostOverflowError(
                    f"bound {b} leaves no 64-bit headroom for this cost vector"
                )
            return b
        if b is NEG_INF or b is POS_INF:
            return b
        if isinstance(b, int):
            return self._check_bound(int(b))
        raise TypeError(f"bound must be an int or an infinity, got {type(b).__name__}")

    # ------------------------------------------------------------------
    # the three filter variants

    def backtrack_naive(self, f: int, b: ExtInt) -> BoundResult:
        """Filter with no memo.  Exponential in general; keep f small."""
        self.forest._check_valid(f)
        b = self._check_bound(b)
        forest = self.forest
        varr, lo, hi = forest._var, forest._lo, forest._hi
        make = forest.make_node
        cost = self._cost_of
        limit = self.call_limit or 0
        calls = 0

        def go(u: int, rem: ExtInt) -> int:
            nonlocal calls
            calls += 1
            if u == ZERO:
                return ZERO
            if u == ONE:
                return ONE if rem >= 0 else ZERO
            if limit and calls > limit:
                raise CallBudgetError(calls, limit)
            c = cost[varr[u]]
            h0 = go(lo[u], rem)
            h1 = go(hi[u], rem - c if type(rem) is int else rem)
            return make(varr[u], h0, h1)

        try:
            root = go(f, b)
        finally:
            self.call_counter += calls
        return BoundResult(root, None, None, calls)

    def backtrack_memo(self, f: int, b: ExtInt) -> BoundResult:
        """Filter with a flat memo keyed on (node, residual bound)."""
        self.forest._check_valid(f)
        b = self._check_bound(b)
        forest = self.forest
        varr, lo, hi = forest._var, forest._lo, forest._hi
        make = forest.make_node
        cost = self._cost_of
        memo = self.flat_memo
        limit = self.call_limit or 0
        calls = 0

        def go(u: int, rem: ExtInt) -> int:
            nonlocal calls
            calls += 1
            if u == ZERO:
                return ZERO
            if u == ONE:
                return ONE if rem >= 0 else ZERO
            key = (u, rem)
            h = memo.get(key)
            if h is not None:
                return h
            if limit and calls > limit:
                raise CallBudgetError(calls, limit)
            c = cost[varr[u]]
            h0 = go(lo[u], rem)
            h1 = go(hi[u], rem - c if type(rem) is int else rem)
            h = make(varr[u], h0, h1)
            memo[key] = h
            return h

        try:
            root = go(f, b)
        finally:
            self.call_counter += calls
        return BoundResult(root, None, None, calls)

    def backtrack_interval_memo(self, f: int, b: ExtInt) -> BoundResult:
        """Filter with the per-node interval memo.

        Every stored entry (node, [accept_worst, reject_best) -> result)
        is reused for any residual bound inside the interval, across
        queries.  An interval reaching +infinity also covers the
        +infinity bound itself.
        """
        self.forest._check_valid(f)
        b = self._check_bound(b)
        forest = self.forest
        varr, lo, hi = forest._var, forest._lo, forest._hi
        make = forest.make_node
        cost = self._cost_of
        memo = self.interval_memo
        insert = self._memo_insert
        limit = self.call_limit or 0
        calls = 0

        def go(u: int, rem: ExtInt) -> tuple[int, ExtInt, ExtInt]:
            nonlocal calls
            calls += 1
            if u == ZERO:
                return ZERO, NEG_INF, POS_INF
            if u == ONE:
                if rem >= 0:
                    return ONE, 0, POS_INF
                return ZERO, NEG_INF, 0
            entry = memo.get(u)
            if entry is not None:
                aws, ents = entry
                i = bisect_right(aws, rem) - 1
                if i >= 0:
                    rb, h = ents[i]
                    if rem < rb or (rb is POS_INF and rem is POS_INF):
                        return h, aws[i], rb
            if limit and calls > limit:
                raise CallBudgetError(calls, limit)
            c = cost[varr[u]]
            h0, aw0, rb0 = go(lo[u], rem)
            h1, aw1, rb1 = go(hi[u], rem - c if type(rem) is int else rem)
            h = make(varr[u], h0, h1)
            aw = aw1 if aw1 is NEG_INF else aw1 + c
            if aw0 > aw:
                aw = aw0
            rb = rb1 if rb1 is POS_INF else rb1 + c
            if rb0 < rb:
                rb = rb0
            if entry is None:
                memo[u] = ([aw], [(rb, h)])
            else:
                insert(u, entry, aw, rb, h)
            return h, aw, rb

        try:
            root, aw, rb = go(f, b)
        finally:
            self.call_counter += calls
        return BoundResult(root, aw, rb, calls)

    @staticmethod
    def _memo_insert(
        u: int,
        entry: tuple[list[ExtInt], list[tuple[ExtInt, int]]],
        aw: ExtInt,
        rb: ExtInt,
        h: int,
    ) -> None:
        # Intervals derived for one node are equal or disjoint; anything
        # else is a bug, never tolerated silently.
        aws, ents = entry
        pos = bisect_right(aws, aw)
        if pos > 0 and aws[pos - 1] == aw:
            old_rb, old_h = ents[pos - 1]
            if old_rb != rb or old_h != h:
                raise MemoInvariantError(
                    f"node {u}: interval starting at {format_ext(aw)} stored twice "
                    f"with conflicting contents"
                )
            return
        if pos > 0 and ents[pos - 1][0] > aw:
            raise MemoInvariantError(
                f"node {u}: new interval [{format_ext(aw)}, {format_ext(rb)}) "
                f"overlaps a stored one from the left"
            )
        if pos < len(aws) and aws[pos] < rb:
            raise MemoInvariantError(
                f"node {u}: new interval [{format_ext(aw)}, {format_ext(rb)}) "
                f"overlaps a stored one from the right"
            )
        aws.insert(pos, aw)
        ents.insert(pos, (rb, h))

    # ------------------------------------------------------------------
    # memo inspection

    def memo_lookup(self, node: int, b: ExtInt) -> tuple[int, tuple[ExtInt, ExtInt]] | None:
        """Stored entry whose interval contains b: (result, (aw, rb)), or None."""
        entry = self.interval_memo.get(node)
        if entry is None:
            return None
        aws, ents = entry
        i = bisect_right(aws, b) - 1
        if i < 0:
            return None
        rb, h = ents[i]
        if b < rb or (rb is POS_INF and b is POS_INF):
            return h, (aws[i], rb)
        return None

    def stored_intervals(self):
        """Yield every stored memo entry as (node, aw, rb, result)."""
        for u, (aws, ents) in self.interval_memo.items():
            for aw, (rb, h) in zip(aws, ents):
                yield u, aw, rb, h

    # ------------------------------------------------------------------
    # derived queries

    def build_cost_constraint(self, b: ExtInt) -> int:
        """ZDD of every subset of 1..n_items whose total cost is at most b."""
        if self._power_root is None:
            self._power_root = self.forest.power_set()
        return self.backtrack_interval_memo(self._power_root, b).root

    def bound_via_intersection(self, f: int, b: ExtInt) -> int:
        """Baseline filter: intersect f with the cost-constraint ZDD."""
        g = self.build_cost_constraint(b)
        return self.forest.intersection(f, g)

    def range_query(self, f: int, lb: ExtInt, ub: ExtInt) -> int:
        """ZDD of members with cost in the half-open range (lb, ub]."""
        if lb > ub:
            raise ValueError(f"empty range: ({format_ext(lb)}, {format_ext(ub)}]")
        upper = self.backtrack_interval_memo(f, ub).root
        lower = self.backtrack_interval_memo(f, lb).root
        return self.forest.difference(upper, lower)

    def rank(self, f: int, c: ExtInt) -> int:
        """Number of members with cost at most c."""
        return self.forest.count(self.backtrack_interval_memo(f, c).root)

    def min_max(self, f: int) -> tuple[ExtInt, ExtInt]:
        """Minimum and maximum member cost, cached across queries."""
        return self.forest.min_max_cost(f, self.costs, self._minmax_cache)


def estimate_naive_calls(forest: Forest, f: int) -> int:
    """Exact invocation count backtrack_naive would need on f.

    One invocation per root-to-node path, terminals included, so the
    total is the path count summed over every reachable node.  Cheap to
    compute (linear in reachable nodes) and used to refuse hopeless
    naive runs before they start.
    """
    if forest.is_terminal(f):
        return 1
    order = forest.reachable(f)
    paths = {u: 0 for u in order}
    paths[f] = 1
    total = 0
    lo, hi = forest._lo, forest._hi
    for u in reversed(order):
        p = paths[u]
        total += p
        for child in (lo[u], hi[u]):
            if child <= ONE:
                total += p
            else:
                paths[child] += p
    return total
