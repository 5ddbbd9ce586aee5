"""Amalgamation machinery: the 4-values condition, one-point Katětov
extensions, finite saturation stages, and the checks that make a stage's
universality and homogeneity claims verifiable.

A stage grows a space over a finite distance set A by repeatedly realizing
the first unrealized one-point extension demand, in a fixed deterministic
order, until either no demand is left at the requested levels or the size
budget is hit. Determinism makes stages replayable and prefix-monotone in
the budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional

from .errors import BudgetTooSmall, FourValuesFails, InvariantViolation, SpectrumNotInA
from .metric import FiniteMetricSpace, distance_spectrum, validate_metric
from .oracles import find_embedding, find_isometry

ZERO = Fraction(0)


def _is_metric_triple(a: Fraction, b: Fraction, c: Fraction) -> bool:
    return a <= b + c and b <= a + c and c <= a + b


def four_values_check(values: Iterable[Fraction]) -> tuple[bool, Optional[tuple]]:
    """Whether two triangles sharing a side can always be amalgamated.

    For all a, b, c, d in A: if some x in A makes (a, b, x) and (c, d, x)
    metric, some y in A must make (b, c, y) and (a, d, y) metric. Returns
    (True, None) or (False, (a, b, c, d, x)) with the first failure in lex
    order.
    """
    A = sorted(set(values))
    for a in A:
        for b in A:
            for c in A:
                for d in A:
                    x = next(
                        (
                            v
                            for v in A
                            if _is_metric_triple(a, b, v) and _is_metric_triple(c, d, v)
                        ),
                        None,
                    )
                    if x is None:
                        continue
                    if not any(
                        _is_metric_triple(b, c, y) and _is_metric_triple(a, d, y) for y in A
                    ):
                        return False, (a, b, c, d, x)
    return True, None


@dataclass(frozen=True)
class KatetovFunction:
    """Candidate one-point extension: a distance from each point of base.

    Not validated on construction; extend_one_point rejects invalid data so
    tests can force the failure path.
    """

    base: FiniteMetricSpace
    values: tuple[Fraction, ...]


def is_valid_katetov(base: FiniteMetricSpace, values: tuple[Fraction, ...]) -> bool:
    if len(values) != base.n or any(v <= 0 for v in values):
        return False
    for i in range(base.n):
        for j in range(i + 1, base.n):
            d = base.dist[i][j]
            if not abs(values[i] - values[j]) <= d <= values[i] + values[j]:
                return False
    return True


def katetov_extensions(X: FiniteMetricSpace, A: Iterable[Fraction]) -> list[KatetovFunction]:
    """All one-point extension value tuples over A, in lex order."""
    allowed = set(A)
    for v in distance_spectrum(X):
        if v not in allowed:
            raise SpectrumNotInA(v)
    positive = sorted(v for v in allowed if v > 0)
    out = []
    for values in product(positive, repeat=X.n):
        if is_valid_katetov(X, values):
            out.append(KatetovFunction(X, values))
    return out


def extend_one_point(X: FiniteMetricSpace, g: KatetovFunction) -> FiniteMetricSpace:
    """Adjoin one point at the distances g prescribes."""
    if not is_valid_katetov(X, g.values):
        raise InvariantViolation(
            "extension values break the two-sided bounds |g(x)-g(y)| <= d(x,y) <= g(x)+g(y)"
        )
    n = X.n + 1
    rows = [list(X.dist[i]) + [g.values[i]] for i in range(X.n)]
    rows.append(list(g.values) + [ZERO])
    return validate_metric(rows)


@dataclass(frozen=True)
class StageResult:
    space: FiniteMetricSpace
    saturated: bool
    log: tuple[tuple[Fraction, ...], ...]


def _realized_patterns(dist, n: int, subset: tuple[int, ...]) -> set:
    pats = set()
    outside = [w for w in range(n) if w not in subset]
    for w in outside:
        pats.add(tuple(dist[w][s] for s in subset))
    return pats


def _first_unmet_demand(dist, n: int, positive, j_max: int, skipped: set):
    for j in range(1, j_max + 1):
        for subset in combinations(range(n), j):
            base_ok = True
            realized = _realized_patterns(dist, n, subset)
            for g in product(positive, repeat=j):
                if g in realized or (subset, g) in skipped:
                    continue
                for a in range(j):
                    for b in range(a + 1, j):
                        d = dist[subset[a]][subset[b]]
                        if not abs(g[a] - g[b]) <= d <= g[a] + g[b]:
                            base_ok = False
                            break
                    if not base_ok:
                        break
                if base_ok:
                    return subset, g
                base_ok = True
    return None


def _complete_new_point(dist, n: int, positive, subset, g) -> Optional[list[Fraction]]:
    """Distances of a new point realizing g over subset, or None.

    Free coordinates are filled by depth-first search; candidate values are
    ranked by how rare the pair patterns they produce currently are (weight
    1/(1+multiplicity) per pair), ties to the smallest value. Rewarding rare
    patterns keeps rows decorrelated; a plain unmet-only count lets one
    value flood the space and pair demands then regenerate forever.
    """
    new = [None] * n
    for idx, s in enumerate(subset):
        new[s] = g[idx]
    free = [u for u in range(n) if new[u] is None]

    multiplicity: dict = {}
    for u, t in combinations(range(n), 2):
        for w in range(n):
            if w != u and w != t:
                key = (u, t, dist[w][u], dist[w][t])
                multiplicity[key] = multiplicity.get(key, 0) + 1

    def consistent(u: int, val: Fraction) -> bool:
        for t in range(n):
            if new[t] is None or t == u:
                continue
            if not abs(val - new[t]) <= dist[u][t] <= val + new[t]:
                return False
        return True

    def coverage(u: int, val: Fraction) -> Fraction:
        hits = Fraction(0)
        for t in range(n):
            if new[t] is None or t == u:
                continue
            a, b = (u, t) if u < t else (t, u)
            va, vb = (val, new[t]) if u < t else (new[t], val)
            hits += Fraction(1, 1 + multiplicity.get((a, b, va, vb), 0))
        return hits

    def fill(pos: int) -> bool:
        if pos == len(free):
            return True
        u = free[pos]
        ranked = sorted(
            (v for v in positive if consistent(u, v)),
            key=lambda v: (-coverage(u, v), v),
        )
        for v in ranked:
            new[u] = v
            if fill(pos + 1):
                return True
            new[u] = None
        return False

    return list(new) if fill(0) else None


def urysohn_stage(
    A: Iterable[Fraction],
    size_budget: int,
    embed_bound: int,
    homog_bound: int,
    *,
    strict: bool = False,
) -> StageResult:
    """Grow a deterministic saturation stage over the finite set A.

    Demands are one-point extension patterns over subsets of size below
    embed_bound or up to homog_bound; processing order is (subset size,
    subset, value tuple), all lex. Returns the space, a saturation flag, and
    the replay log of adjoined value tuples. With strict=True an unsaturated
    stage raises BudgetTooSmall instead; the exception carries the result.
    """
    values = set(A)
    ok, witness = four_values_check(values)
    if not ok:
        raise FourValuesFails(witness)
    if ZERO not in values:
        raise ValueError("the distance set must contain 0")
    if size_budget < 1 or embed_bound < 1 or homog_bound < 1:
        raise ValueError("budgets and bounds must be >= 1")

    positive = sorted(v for v in values if v > 0)
    j_max = max(embed_bound - 1, homog_bound)
    dist: list[list[Fraction]] = [[ZERO]]
    n = 1
    log: list[tuple[Fraction, ...]] = []
    skipped: set = set()

    while n < size_budget:
        demand = _first_unmet_demand(dist, n, positive, j_max, skipped)
        if demand is None:
            break
        subset, g = demand
        new = _complete_new_point(dist, n, positive, subset, g)
        if new is None:
            skipped.add((subset, g))
            continue
        for i in range(n):
            dist[i].append(new[i])
        dist.append(new + [ZERO])
        n += 1
        log.append(tuple(new))

    saturated = _first_unmet_demand(dist, n, positive, j_max, set()) is None
    space = validate_metric(dist)
    result = StageResult(space, saturated, tuple(log))
    if strict and not saturated:
        raise BudgetTooSmall(result)
    return result


def enumerate_spaces_up_to_isometry(A: Iterable[Fraction], max_size: int) -> list[FiniteMetricSpace]:
    """All spaces with distances in A on at most max_size points, one per
    isometry class, smallest first."""
    positive = sorted(v for v in set(A) if v > 0)
    reps: list[FiniteMetricSpace] = []
    for n in range(1, max_size + 1):
        slots = list(combinations(range(n), 2))
        for choice in product(positive, repeat=len(slots)):
            rows = [[ZERO] * n for _ in range(n)]
            for (i, j), v in zip(slots, choice):
                rows[i][j] = v
                rows[j][i] = v
            ok = True
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if rows[i][j] > rows[i][k] + rows[k][j]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                continue
            space = FiniteMetricSpace(n, tuple(tuple(r) for r in rows))
            if not any(
                cand.n == n and find_isometry(space, cand, max_points=n) is not None
                for cand in reps
            ):
                reps.append(space)
    return reps


def verify_universality(
    U: FiniteMetricSpace, A: Iterable[Fraction], s: int
) -> tuple[bool, Optional[FiniteMetricSpace]]:
    """Check every A-space on at most s points embeds in U.

    Returns (True, None) or (False, missing-space).
    """
    cap = max(U.n, s)
    for space in enumerate_spaces_up_to_isometry(A, s):
        if find_embedding(space, U, max_points=cap) is None:
            return False, space
    return True, None


def verify_one_point_homogeneity(
    U: FiniteMetricSpace, k: int
) -> tuple[bool, Optional[tuple]]:
    """Check every partial isometry on at most k points extends by any point.

    Tuples are grouped by their pairwise-distance pattern; within a group the
    sets of reachable one-point distance patterns must coincide. Returns
    (True, None) or (False, (domain_tuple, codomain_tuple, stuck_point)).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d = U.dist
    for j in range(1, k + 1):
        groups: dict = {}
        for tup in _ordered_tuples(U.n, j):
            sig = tuple(d[tup[a]][tup[b]] for a in range(j) for b in range(a + 1, j))
            groups.setdefault(sig, []).append(tup)
        for members in groups.values():
            first = members[0]
            base = _extension_patterns(d, U.n, first)
            for other in members[1:]:
                pats = _extension_patterns(d, U.n, other)
                if pats == base:
                    continue
                for pattern in sorted(base - pats):
                    e = _point_realizing(d, U.n, first, pattern)
                    return False, (first, other, e)
                for pattern in sorted(pats - base):
                    e = _point_realizing(d, U.n, other, pattern)
                    return False, (other, first, e)
    return True, None


def _ordered_tuples(n: int, j: int):
    def rec(prefix):
        if len(prefix) == j:
            yield tuple(prefix)
            return
        for p in range(n):
            if p not in prefix:
                yield from rec(prefix + [p])

    yield from rec([])


def _extension_patterns(d, n: int, tup: tuple[int, ...]) -> set:
    return {
        tuple(d[e][t] for t in tup) for e in range(n) if e not in tup
    }


def _point_realizing(d, n: int, tup: tuple[int, ...], pattern) -> int:
    for e in range(n):
        if e not in tup and tuple(d[e][t] for t in tup) == pattern:
            return e
    raise AssertionError("pattern was drawn from the extension set")
