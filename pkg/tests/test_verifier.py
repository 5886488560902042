from itertools import product

import pytest

from digitop.constructions import (
    box,
    cone,
    interval,
    pyramid,
    simple_closed_curve,
    solid_pyramid,
    suspension,
)
from digitop.graph import DigitalImage, DisconnectedImageError
from digitop.maps import Mapping, fixed_points, is_continuous, max_displacement
from digitop.verifier import (
    FAILS,
    FOUND,
    HOLDS,
    UNKNOWN,
    NO_RULES,
    PruningRules,
    SearchBudget,
    enumerate_continuous_self_maps,
    find_counterexample_freezing,
    is_freezing,
    is_limiting,
    is_minimal_freezing,
    is_s_cold,
    search_minimal_freezing,
)


def brute_force_count(image, fixed=frozenset()):
    """Plain product-space filter, independent of the search engine."""
    count = 0
    for values in product(range(image.n), repeat=image.n):
        if any(values[x] != x for x in fixed):
            continue
        if is_continuous(Mapping(image, image, values)):
            count += 1
    return count


def test_enumeration_matches_brute_force_on_paths():
    assert enumerate_continuous_self_maps(interval(0, 1).image).count == 4
    assert enumerate_continuous_self_maps(interval(0, 2).image).count == 17
    for nc in (interval(0, 1), interval(0, 2), interval(0, 3)):
        engine = enumerate_continuous_self_maps(nc.image)
        assert engine.exact
        assert engine.count == brute_force_count(nc.image)


def test_enumeration_matches_brute_force_on_cycles():
    c4 = simple_closed_curve(4).image
    assert enumerate_continuous_self_maps(c4).count == brute_force_count(c4)
    assert enumerate_continuous_self_maps(c4, fixed=range(4)).count == 1


def test_enumeration_cap():
    result = enumerate_continuous_self_maps(interval(0, 2).image, cap=5)
    assert not result.exact
    assert result.count > 5


def test_enumeration_guard():
    with pytest.raises(ValueError):
        enumerate_continuous_self_maps(DigitalImage(65, []))


def test_freezing_cone_base():
    cx = cone(simple_closed_curve(8).image)
    base = sorted(cx.named_sets["X_base"])
    report = is_freezing(cx.image, base)
    assert report.verdict == HOLDS
    assert report.witness is None
    result = find_counterexample_freezing(cx.image, base[1:])
    assert result.status == FOUND
    f = result.witness
    assert is_continuous(f)
    assert set(base[1:]) <= fixed_points(f)
    assert f.assignment[base[0]] != base[0]


def test_freezing_corners_c2_fail():
    b2 = box([2, 2], 2)
    report = is_freezing(b2.image, b2.named_sets["corners"])
    assert report.verdict == FAILS
    f = report.witness
    assert is_continuous(f)
    assert b2.named_sets["corners"] <= fixed_points(f)
    assert f.assignment != tuple(range(b2.image.n))


def test_freezing_pyramid_ring():
    p2 = pyramid(2)
    assert is_freezing(p2.image, p2.named_sets["T_2"]).verdict == HOLDS


def test_freezing_solid_pyramid():
    q2 = solid_pyramid(2)
    a = q2.named_sets["U"] | q2.named_sets["W_2"]
    assert is_freezing(q2.image, a).verdict == HOLDS
    report = is_freezing(q2.image, q2.named_sets["W_2"])
    assert report.verdict == FAILS
    apex = min(q2.named_sets["U"])
    assert report.witness.assignment[apex] != apex


def test_s_cold():
    cx = cone(simple_closed_curve(8).image)
    assert is_s_cold(cx.image, range(cx.image.n), 0).verdict == HOLDS
    assert is_s_cold(cx.image, cx.named_sets["X_base"], 1).verdict == HOLDS
    sx = suspension(simple_closed_curve(8).image)
    report = is_s_cold(sx.image, sx.named_sets["X_base"], 0)
    assert report.verdict == FAILS
    assert max_displacement(report.witness) > 0
    with pytest.raises(ValueError):
        is_s_cold(cx.image, [0], -1)


def test_limiting():
    cx = cone(simple_closed_curve(6).image)
    assert is_limiting(cx.image, [], 0, 2).verdict == HOLDS
    assert is_limiting(cx.image, range(cx.image.n), 0, 0).verdict == HOLDS
    sx = suspension(simple_closed_curve(8).image)
    u = min(sx.named_sets["U"])
    rest = [v for v in range(sx.image.n) if v != u]
    report = is_limiting(sx.image, rest, 1, 1)
    assert report.verdict == FAILS
    f = report.witness
    assert max_displacement(f, rest) <= 1
    assert max_displacement(f) == 2


def test_minimal_freezing():
    p2 = pyramid(2)
    assert is_minimal_freezing(p2.image, p2.named_sets["T_2"]).verdict == HOLDS
    b1 = box([2, 2], 1)
    report = is_minimal_freezing(b1.image, b1.named_sets["Bd"])
    assert report.verdict == FAILS
    assert "removable" in report.detail
    not_freezing = is_minimal_freezing(b1.image, b1.named_sets["corners"] - {0})
    assert not_freezing.verdict == FAILS
    assert not_freezing.witness is not None


def test_search_minimal_freezing():
    edge = DigitalImage(2, [(0, 1)])
    result = search_minimal_freezing(edge)
    assert result.status == FOUND
    assert result.members == frozenset({0, 1})

    b1 = box([2, 2], 1)
    found = search_minimal_freezing(b1.image, b1.named_sets["Bd"])
    assert found.members == b1.named_sets["corners"]

    p2 = pyramid(2)
    assert search_minimal_freezing(p2.image).members == p2.named_sets["T_2"]

    with pytest.raises(ValueError):
        search_minimal_freezing(b1.image, b1.named_sets["corners"] - {0})


def test_pruning_rules_do_not_change_verdicts():
    queries = []
    cx = cone(simple_closed_curve(5).image)
    queries.append((cx.image, sorted(cx.named_sets["X_base"])[1:]))
    b1 = box([2, 2], 1)
    queries.append((b1.image, sorted(b1.named_sets["corners"])))
    queries.append((b1.image, sorted(b1.named_sets["corners"])[:3]))
    p1 = pyramid(1)
    queries.append((p1.image, sorted(p1.named_sets["T_1"])))
    for image, subset in queries:
        verdicts = set()
        for a, b, c in product((False, True), repeat=3):
            rules = PruningRules(unique_path=a, far_values_first=b, pulling=c)
            verdicts.add(is_freezing(image, subset, rules=rules).verdict)
        assert len(verdicts) == 1


def test_pruning_preserves_enumeration():
    for nc in (interval(0, 3), box([2, 2], 1), cone(simple_closed_curve(4).image)):
        baseline = enumerate_continuous_self_maps(nc.image, rules=NO_RULES).count
        assert enumerate_continuous_self_maps(nc.image).count == baseline


def test_freezing_monotone_under_supersets():
    b1 = box([2, 2], 1)
    corners = b1.named_sets["corners"]
    assert is_freezing(b1.image, corners).verdict == HOLDS
    for extra in range(b1.image.n):
        assert is_freezing(b1.image, corners | {extra}).verdict == HOLDS


def test_reports_are_deterministic():
    q2 = solid_pyramid(2)
    first = is_freezing(q2.image, q2.named_sets["W_2"])
    second = is_freezing(q2.image, q2.named_sets["W_2"])
    assert first.witness.assignment == second.witness.assignment
    assert first.nodes_expanded == second.nodes_expanded


def test_budget_exhaustion_is_unknown():
    q2 = solid_pyramid(2)
    starved = is_freezing(
        q2.image, q2.named_sets["W_2"], SearchBudget(max_nodes=1)
    )
    assert starved.verdict == UNKNOWN
    assert starved.witness is None


def test_disconnected_rejected():
    img = DigitalImage(3, [(0, 1)])
    with pytest.raises(DisconnectedImageError):
        is_freezing(img, [0])


def test_invalid_subset_rejected():
    img = interval(0, 2).image
    with pytest.raises(Exception):
        is_freezing(img, [0, 9])


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)
    with pytest.raises(ValueError):
        SearchBudget(max_millis=0)
