import random

import pytest

from skorodist.cadlag import ValueSpaceMismatch
from skorodist.maps import SquareCoords
from skorodist.pseudometric import (
    Coordinate,
    Discrete,
    Euclidean,
    MaxOf,
    PulledBack,
    Scaled,
    check_axioms,
    coordinate_family,
    family_from_config,
    max_close,
    metric_from_config,
)


def rand_pairs(rng, n, dim=2):
    return [tuple(rng.uniform(-3, 3) for _ in range(dim)) for _ in range(n)]


def test_evaluate_examples():
    assert Coordinate(1)((0.0, 3.0), (4.0, 3.0)) == 4.0
    assert Euclidean()((0.0, 0.0), (3.0, 4.0)) == 5.0
    assert Discrete()((1.0, 2.0), (1.0, 2.0)) == 0.0
    assert Discrete()("a", "a") == 0.0
    assert Discrete()("a", "b") == 1.0


def test_evaluate_space_mismatch():
    with pytest.raises(ValueSpaceMismatch):
        Euclidean()((0.0,), (0.0, 1.0))
    with pytest.raises(ValueSpaceMismatch):
        Coordinate(3)((0.0, 1.0), (1.0, 1.0))
    with pytest.raises(ValueSpaceMismatch):
        Euclidean()("a", "b")
    with pytest.raises(ValueSpaceMismatch):
        Discrete()("a", (0.0,))


def test_max_close_indices():
    fam = max_close([Coordinate(1)])
    assert fam.indices() == [frozenset({1})]
    fam2 = coordinate_family(2)
    assert fam2.indices() == [frozenset({1}), frozenset({2}), frozenset({1, 2})]


def test_max_close_index_metric_is_exact_max():
    rng = random.Random(0)
    fam = coordinate_family(3)
    pts = rand_pairs(rng, 40, dim=3)
    for a in pts[:10]:
        for b in pts[10:20]:
            for idx in fam.indices():
                want = max(fam.generators[i - 1](a, b) for i in idx)
                assert fam.evaluate(idx, a, b) == want  # bit-exact, no tolerance


def test_domination_axiom_holds_with_equality():
    rng = random.Random(1)
    fam = coordinate_family(2)
    pts = rand_pairs(rng, 30)
    i, j = frozenset({1}), frozenset({2})
    for a, b in zip(pts[:15], pts[15:]):
        lhs = max(fam.evaluate(i, a, b), fam.evaluate(j, a, b))
        assert lhs == fam.evaluate(i | j, a, b)


def test_index_monotonicity():
    rng = random.Random(2)
    fam = coordinate_family(3)
    pts = rand_pairs(rng, 20, dim=3)
    for a, b in zip(pts[:10], pts[10:]):
        for i in fam.indices():
            for j in fam.indices():
                if i <= j:
                    assert fam.evaluate(i, a, b) <= fam.evaluate(j, a, b)


def test_max_dominates_parts():
    rng = random.Random(3)
    fam = coordinate_family(2)
    pts = rand_pairs(rng, 20)
    for a, b in zip(pts[:10], pts[10:]):
        assert fam.evaluate({1, 2}, a, b) >= fam.evaluate({1}, a, b)


def test_check_axioms_clean_metrics():
    rng = random.Random(4)
    triples = [tuple(rand_pairs(rng, 3)) for _ in range(100)]
    for metric in (Euclidean(), Discrete(), coordinate_family(2).metric({1, 2})):
        assert check_axioms(metric, triples).ok


def test_check_axioms_catches_negativity():
    rng = random.Random(5)
    triples = [tuple(rand_pairs(rng, 3)) for _ in range(20)]
    report = check_axioms(Scaled(-1.0, Euclidean()), triples)
    assert not report.ok
    assert any(v.kind == "negativity" for v in report.violations)


def test_pulled_back_is_a_pseudometric():
    rng = random.Random(6)
    triples = [tuple(rand_pairs(rng, 3)) for _ in range(60)]
    pulled = PulledBack(SquareCoords(), Euclidean())
    assert check_axioms(pulled, triples).ok


def test_separates_points():
    fam = coordinate_family(2)
    assert fam.separates_points((0.0, 0.0), (0.0, 1.0)) == frozenset({2})
    assert fam.separates_points((1.0, 0.0), (0.0, 0.0)) == frozenset({1})
    degenerate = max_close([Coordinate(1)])
    assert degenerate.separates_points((0.0, 0.0), (0.0, 1.0)) is None
    assert max_close([Euclidean()]).separates_points((0.0, 0.0), (0.0, 1.0)) == frozenset({1})


def test_family_config_round_trip():
    config = {
        "space": {"dim": 2},
        "generators": [{"kind": "coordinate", "k": 1}, {"kind": "coordinate", "k": 2}],
    }
    fam = family_from_config(config)
    assert fam.generators == (Coordinate(1), Coordinate(2))
    again = family_from_config(fam.to_config())
    assert again == fam


def test_metric_config_round_trip():
    metrics = [
        Euclidean(),
        Discrete(),
        Coordinate(2),
        Scaled(2.0, Euclidean()),
        MaxOf((Coordinate(1), Euclidean())),
        PulledBack(SquareCoords(), Euclidean()),
    ]
    for m in metrics:
        assert metric_from_config(m.to_config()) == m


def test_invalid_configs():
    with pytest.raises(ValueError):
        family_from_config({"generators": []})
    with pytest.raises(ValueError):
        metric_from_config({"kind": "nope"})
    with pytest.raises(ValueError):
        max_close([])


def test_invalid_index():
    fam = coordinate_family(2)
    with pytest.raises(ValueError):
        fam.metric(frozenset())
    with pytest.raises(ValueError):
        fam.metric({1, 5})
