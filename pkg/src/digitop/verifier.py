"""Exhaustive decision procedures for freezing, s-cold, (m,n)-limiting and
minimal-freezing queries.

All three properties reduce to one counterexample search: find a continuous
self-map f whose values stay inside per-vertex candidate sets (singletons for
pointwise-fixed vertices, displacement balls for bounded ones) such that some
vertex escapes its allowed displacement ball.  The search is a complete
depth-first assignment over bitset domains with arc-consistency propagation,
plus three individually toggleable pruning rules:

  unique_path       vertices on a unique shortest path between two pinned
                    vertices are pinned too (applied to closure at the root);
  far_values_first  try values far from the vertex before the identity value;
  pulling           on coordinate-backed c_u images, a pinned vertex moved
                    past itself in coordinate i drags each neighbor behind it
                    in the same direction.

Exceeding the node or wall-clock budget yields the distinguished verdict
"unknown", never a guess.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph import DigitalImage, DisconnectedImageError
from .maps import Mapping, fixed_points, is_continuous, max_displacement

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"

FOUND = "found"
NONE = "none"


@dataclass(frozen=True)
class SearchBudget:
    """Node-count and wall-clock ceilings; exceeding either aborts to unknown."""

    max_nodes: int = 100_000_000
    max_millis: int = 120_000

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.max_millis < 1:
            raise ValueError("budget ceilings must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class PruningRules:
    unique_path: bool = True
    far_values_first: bool = True
    pulling: bool = True


DEFAULT_RULES = PruningRules()
NO_RULES = PruningRules(False, False, False)


class _BudgetExceeded(Exception):
    pass


class _CapExceeded(Exception):
    pass


@dataclass
class SearchResult:
    status: str  # found | none | unknown
    witness: Optional[Mapping]
    nodes: int
    elapsed_ms: float
    stats: Dict[str, int]


@dataclass
class VerificationReport:
    property: str
    params: Dict[str, int]
    subset: FrozenSet[int]
    verdict: str  # holds | fails | unknown
    witness: Optional[Mapping]
    detail: Optional[str]
    nodes_expanded: int
    elapsed_ms: float
    pruning_stats: Dict[str, int]
    budget: SearchBudget = DEFAULT_BUDGET


@dataclass
class MapCount:
    count: int
    exact: bool  # False when the cap was exceeded


@dataclass
class MinimalSearchResult:
    status: str  # found | unknown
    members: Optional[FrozenSet[int]]
    nodes: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _SelfMapSearch:
    """Complete DFS over continuous self-maps with bitset domains."""

    def __init__(
        self,
        image: DigitalImage,
        domains: Sequence[int],
        escape: Optional[Sequence[int]],
        budget: SearchBudget,
        rules: PruningRules,
        count_cap: Optional[int] = None,
    ) -> None:
        self.img = image
        self.n = image.n
        self.full = (1 << self.n) - 1
        self.domains0 = list(domains)
        self.escape = list(escape) if escape is not None else None
        self.budget = budget
        self.rules = rules
        self.count_cap = count_cap
        self.count = 0
        self.nodes = 0
        self.stats: Dict[str, int] = {
            "unique_path_forced": 0,
            "pulling_filtered": 0,
            "viability_pruned": 0,
            "wipeouts": 0,
        }
        self._union_memo: Dict[int, int] = {}
        self._coord_masks: Dict[Tuple[str, int, int], int] = {}
        anchors = [x for x in range(self.n) if self.domains0[x] != self.full]
        self._layer = self._bfs_layers(anchors)
        if rules.far_values_first and image.is_connected():
            dm = image._distance_matrix()
            self._value_order = [
                sorted(range(self.n), key=lambda v, x=x: (-dm[x][v], v))
                for x in range(self.n)
            ]
        else:
            self._value_order = [list(range(self.n))] * self.n
        self._pull_on = rules.pulling and image.is_coordinate_backed

    def _bfs_layers(self, anchors: List[int]) -> List[int]:
        layer = [self.n + 1] * self.n
        frontier = sorted(anchors) if anchors else ([0] if self.n else [])
        for x in frontier:
            layer[x] = 0
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for x in frontier:
                for y in self.img.neighbors(x):
                    if layer[y] > depth:
                        layer[y] = depth
                        nxt.append(y)
            frontier = nxt
        return layer

    # -- propagation -------------------------------------------------------

    def _union_nbhd(self, mask: int) -> int:
        cached = self._union_memo.get(mask)
        if cached is None:
            cached = 0
            for v in _bits(mask):
                cached |= self.img.closed_neighborhood_bits(v)
            self._union_memo[mask] = cached
        return cached

    def _coord_mask(self, kind: str, i: int, t: int) -> int:
        key = (kind, i, t)
        cached = self._coord_masks.get(key)
        if cached is None:
            cached = 0
            for v in range(self.n):
                c = self.img.coords[v][i]
                if (kind == "gt" and c > t) or (kind == "lt" and c < t):
                    cached |= 1 << v
            self._coord_masks[key] = cached
        return cached

    def _propagate(self, dom: List[int], queue: List[int]) -> bool:
        """Arc-consistency (plus pulling on pinned values) to fixpoint."""
        while queue:
            x = queue.pop()
            dx = dom[x]
            if dx == 0:
                self.stats["wipeouts"] += 1
                return False
            allowed = self._union_nbhd(dx)
            pull = self._pull_on and dx & (dx - 1) == 0
            if pull:
                v = dx.bit_length() - 1
                pv = self.img.coords[v]
                px = self.img.coords[x]
            for y in self.img.neighbors(x):
                ny = dom[y] & allowed
                if pull:
                    py = self.img.coords[y]
                    for i in range(len(px)):
                        if pv[i] > px[i] > py[i]:
                            ny &= self._coord_mask("gt", i, py[i])
                        elif pv[i] < px[i] < py[i]:
                            ny &= self._coord_mask("lt", i, py[i])
                if ny != dom[y]:
                    if ny != dom[y] & allowed:
                        self.stats["pulling_filtered"] += 1
                    if ny == 0:
                        self.stats["wipeouts"] += 1
                        return False
                    dom[y] = ny
                    queue.append(y)
        return True

    def _force_unique_paths(self, dom: List[int]) -> Optional[bool]:
        """Pin interiors of unique shortest paths between pinned-to-self
        vertices, to closure.  Returns False on wipeout, True if anything
        changed, None if nothing changed."""
        if not self.rules.unique_path:
            return None
        tried: set = set()
        any_change = False
        while True:
            pinned = [x for x in range(self.n) if dom[x] == 1 << x]
            changed = False
            for ai in range(len(pinned)):
                for bi in range(ai + 1, len(pinned)):
                    pair = (pinned[ai], pinned[bi])
                    if pair in tried:
                        continue
                    tried.add(pair)
                    try:
                        path = self.img.unique_shortest_path(*pair)
                    except DisconnectedImageError:
                        continue
                    if path is None:
                        continue
                    for v in path[1:-1]:
                        if dom[v] & (1 << v) == 0:
                            self.stats["wipeouts"] += 1
                            return False
                        if dom[v] != 1 << v:
                            dom[v] = 1 << v
                            self.stats["unique_path_forced"] += 1
                            changed = True
                            any_change = True
            if not changed:
                return True if any_change else None

    def _viable(self, dom: List[int]) -> bool:
        """In counterexample mode: can any completion still escape?"""
        if self.escape is None:
            return True
        esc = self.escape
        for x in range(self.n):
            if dom[x] & esc[x]:
                return True
        self.stats["viability_pruned"] += 1
        return False

    # -- search ------------------------------------------------------------

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetExceeded
        if self.nodes % 256 == 0:
            if (time.monotonic() - self._t0) * 1000 > self.budget.max_millis:
                raise _BudgetExceeded

    def _pick(self, dom: List[int]) -> Optional[int]:
        best = None
        best_key = None
        for x in range(self.n):
            dx = dom[x]
            if dx & (dx - 1):
                key = (self._layer[x], dx.bit_count(), x)
                if best_key is None or key < best_key:
                    best, best_key = x, key
        return best

    def _dfs(self, dom: List[int]) -> Optional[Tuple[int, ...]]:
        self._tick()
        if not self._viable(dom):
            return None
        x = self._pick(dom)
        if x is None:
            # Leaf: every domain is a singleton; AC fixpoint => continuous.
            if self.escape is None:
                self.count += 1
                if self.count_cap is not None and self.count > self.count_cap:
                    raise _CapExceeded
                return None
            assignment = tuple(d.bit_length() - 1 for d in dom)
            for v, e in zip(assignment, self.escape):
                if (1 << v) & e:
                    return assignment
            return None
        for v in self._value_order[x]:
            if (dom[x] >> v) & 1 == 0:
                continue
            nd = dom.copy()
            nd[x] = 1 << v
            if self._propagate(nd, [x]):
                res = self._dfs(nd)
                if res is not None:
                    return res
        return None

    def run(self) -> SearchResult:
        self._t0 = time.monotonic()
        status = NONE
        witness = None
        try:
            dom = list(self.domains0)
            ok = self._propagate(dom, list(range(self.n)))
            while ok:
                forced = self._force_unique_paths(dom)
                if forced is False:
                    ok = False
                elif forced is True:
                    ok = self._propagate(dom, list(range(self.n)))
                else:
                    break
            if ok:
                found = self._dfs(dom)
                if found is not None:
                    status = FOUND
                    witness = Mapping(self.img, self.img, found)
        except _BudgetExceeded:
            status = UNKNOWN
        except _CapExceeded:
            status = FOUND  # count cap exceeded; caller inspects .count
        elapsed = (time.monotonic() - self._t0) * 1000
        return SearchResult(status, witness, self.nodes, elapsed, dict(self.stats))


# -- domain builders ---------------------------------------------------------


def _check_subset(image: DigitalImage, subset: Iterable[int]) -> List[int]:
    members = sorted(set(subset))
    for x in members:
        image.check_vertex(x)
    return members


def _ball_masks(image: DigitalImage, r: int) -> List[int]:
    dm = image._distance_matrix()
    return [
        sum(1 << v for v in range(image.n) if dm[x][v] <= r) for x in range(image.n)
    ]


def _require_connected(image: DigitalImage) -> None:
    if not image.is_connected():
        raise DisconnectedImageError("this query requires a connected image")


def _freezing_search(
    image: DigitalImage,
    subset: Iterable[int],
    budget: SearchBudget,
    rules: PruningRules,
) -> SearchResult:
    _require_connected(image)
    members = _check_subset(image, subset)
    full = (1 << image.n) - 1
    domains = [full] * image.n
    for x in members:
        domains[x] = 1 << x
    escape = [full & ~(1 << x) for x in range(image.n)]
    return _SelfMapSearch(image, domains, escape, budget, rules).run()


def find_counterexample_freezing(
    image: DigitalImage,
    subset: Iterable[int],
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> SearchResult:
    """Search for a continuous non-identity self-map fixing `subset`."""
    members = _check_subset(image, subset)
    result = _freezing_search(image, members, budget, rules)
    if result.status == FOUND:
        _check_witness_freezing(image, members, result.witness)
    return result


def _check_witness_freezing(image, members, witness) -> None:
    if (
        not is_continuous(witness)
        or not set(members) <= fixed_points(witness)
        or witness.assignment == tuple(range(image.n))
    ):  # pragma: no cover - internal soundness guard
        raise RuntimeError("search produced an invalid freezing witness")


def _report(
    prop: str,
    params: Dict[str, int],
    subset: Iterable[int],
    result: SearchResult,
    budget: SearchBudget,
    detail: Optional[str] = None,
) -> VerificationReport:
    verdict = {FOUND: FAILS, NONE: HOLDS, UNKNOWN: UNKNOWN}[result.status]
    return VerificationReport(
        property=prop,
        params=dict(params),
        subset=frozenset(subset),
        verdict=verdict,
        witness=result.witness,
        detail=detail,
        nodes_expanded=result.nodes,
        elapsed_ms=result.elapsed_ms,
        pruning_stats=result.stats,
        budget=budget,
    )


def is_freezing(
    image: DigitalImage,
    subset: Iterable[int],
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> VerificationReport:
    """Holds iff the identity is the only continuous self-map fixing subset."""
    members = _check_subset(image, subset)
    result = find_counterexample_freezing(image, members, budget, rules)
    return _report("freezing", {}, members, result, budget)


def is_s_cold(
    image: DigitalImage,
    subset: Iterable[int],
    s: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> VerificationReport:
    """Holds iff every continuous map fixing subset displaces nothing past s."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    _require_connected(image)
    members = _check_subset(image, subset)
    full = (1 << image.n) - 1
    domains = [full] * image.n
    for x in members:
        domains[x] = 1 << x
    balls = _ball_masks(image, s)
    escape = [full & ~balls[x] for x in range(image.n)]
    result = _SelfMapSearch(image, domains, escape, budget, rules).run()
    if result.status == FOUND:
        w = result.witness
        if (
            not is_continuous(w)
            or not set(members) <= fixed_points(w)
            or max_displacement(w) <= s
        ):  # pragma: no cover
            raise RuntimeError("search produced an invalid cold witness")
    return _report("s_cold", {"s": s}, members, result, budget)


def is_limiting(
    image: DigitalImage,
    subset: Iterable[int],
    m: int,
    n: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> VerificationReport:
    """Holds iff every continuous m-map on subset is an n-map on all of X."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    _require_connected(image)
    members = _check_subset(image, subset)
    full = (1 << image.n) - 1
    m_balls = _ball_masks(image, m)
    domains = [full] * image.n
    for x in members:
        domains[x] = m_balls[x]
    n_balls = _ball_masks(image, n)
    escape = [full & ~n_balls[x] for x in range(image.n)]
    result = _SelfMapSearch(image, domains, escape, budget, rules).run()
    if result.status == FOUND:
        w = result.witness
        if (
            not is_continuous(w)
            or max_displacement(w, members) > m
            or max_displacement(w) <= n
        ):  # pragma: no cover
            raise RuntimeError("search produced an invalid limiting witness")
    return _report("limiting", {"m": m, "n": n}, members, result, budget)


def is_minimal_freezing(
    image: DigitalImage,
    subset: Iterable[int],
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> VerificationReport:
    """Holds iff subset is freezing and no single-vertex deletion is.

    Single deletions suffice: supersets of freezing sets are freezing, so any
    freezing proper subset extends to some one-vertex deletion.  A failing
    verdict carries either a non-identity witness (subset is not freezing) or
    the removable vertex in `detail` (subset is freezing but not minimal).
    """
    members = _check_subset(image, subset)
    base = find_counterexample_freezing(image, members, budget, rules)
    nodes = base.nodes
    elapsed = base.elapsed_ms
    stats = dict(base.stats)
    if base.status == FOUND:
        return _report(
            "minimal_freezing", {}, members, base, budget, detail="not a freezing set"
        )
    if base.status == UNKNOWN:
        return _report("minimal_freezing", {}, members, base, budget)
    for a in members:
        sub = find_counterexample_freezing(
            image, [x for x in members if x != a], budget, rules
        )
        nodes += sub.nodes
        elapsed += sub.elapsed_ms
        for k, v in sub.stats.items():
            stats[k] = stats.get(k, 0) + v
        if sub.status == UNKNOWN:
            return VerificationReport(
                "minimal_freezing", {}, frozenset(members), UNKNOWN, None,
                f"sub-query for deletion of {a} exhausted the budget",
                nodes, elapsed, stats, budget,
            )
        if sub.status == NONE:
            return VerificationReport(
                "minimal_freezing", {}, frozenset(members), FAILS, None,
                f"vertex {a} is removable: the set stays freezing without it",
                nodes, elapsed, stats, budget,
            )
    return VerificationReport(
        "minimal_freezing", {}, frozenset(members), HOLDS, None, None,
        nodes, elapsed, stats, budget,
    )


def search_minimal_freezing(
    image: DigitalImage,
    seed_set: Optional[Iterable[int]] = None,
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> MinimalSearchResult:
    """Greedy deletion from a freezing seed down to a minimal freezing set.

    The seed defaults to Bd(X) for coordinate-backed images, else all of X.
    Deletion repeatedly removes the lowest-id vertex whose removal leaves a
    freezing set; the result admits no single deletion, hence is minimal.
    """
    _require_connected(image)
    if seed_set is None:
        if image.is_coordinate_backed:
            from .lattice import c1_boundary

            d = len(image.coords[0])
            boundary = c1_boundary([p for p in image.coords], d)
            current = sorted(image.vertex_at(p) for p in boundary)
        else:
            current = list(range(image.n))
    else:
        current = _check_subset(image, seed_set)
    check = find_counterexample_freezing(image, current, budget, rules)
    nodes = check.nodes
    if check.status == UNKNOWN:
        return MinimalSearchResult(UNKNOWN, None, nodes)
    if check.status == FOUND:
        raise ValueError("seed set is not a freezing set")
    while True:
        removed = None
        for a in list(current):
            sub = find_counterexample_freezing(
                image, [x for x in current if x != a], budget, rules
            )
            nodes += sub.nodes
            if sub.status == UNKNOWN:
                return MinimalSearchResult(UNKNOWN, None, nodes)
            if sub.status == NONE:
                removed = a
                break
        if removed is None:
            return MinimalSearchResult(FOUND, frozenset(current), nodes)
        current.remove(removed)


def enumerate_continuous_self_maps(
    image: DigitalImage,
    fixed: Iterable[int] = (),
    cap: int = 10**9,
    budget: SearchBudget = DEFAULT_BUDGET,
    rules: PruningRules = DEFAULT_RULES,
) -> MapCount:
    """Exact count of continuous self-maps fixing `fixed` pointwise.

    Counts leaves of the same complete search used by the deciders (every
    pruning step preserves the full solution set), so this doubles as the
    brute-force oracle for validating them.
    """
    if image.n > 64:
        raise ValueError("enumeration is guarded to images with <= 64 vertices")
    if cap < 1:
        raise ValueError("cap must be positive")
    members = _check_subset(image, fixed)
    full = (1 << image.n) - 1
    domains = [full] * image.n
    for x in members:
        domains[x] = 1 << x
    search = _SelfMapSearch(image, domains, None, budget, rules, count_cap=cap)
    result = search.run()
    if result.status == UNKNOWN:
        raise _budget_error()
    return MapCount(count=search.count, exact=search.count <= cap)


def _budget_error() -> Exception:
    return TimeoutError("enumeration exhausted its search budget")
