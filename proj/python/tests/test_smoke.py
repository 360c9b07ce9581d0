import math

import pytest

import hardy

R, S, T = 0.8392, 0.5436, 0.5436


def test_behavior_rows_and_zeros():
    p = hardy.hardy_behavior(R, S, T)
    assert len(p) == 64
    for row in range(8):
        assert sum(p[8 * row : 8 * row + 8]) == pytest.approx(1.0, abs=1e-12)
    report = hardy.check_behavior(p)
    assert report["pass"]
    assert report["p_hardy"] == pytest.approx(0.018194, abs=1e-6)


def test_born_rule_matches_closed_form():
    closed = hardy.hardy_behavior(0.3, 0.4, 0.5)
    born = hardy.born_behavior(0.3, 0.4, 0.5)
    assert max(abs(a - b) for a, b in zip(closed, born)) < 1e-10


def test_domain_error():
    with pytest.raises(ValueError):
        hardy.hardy_behavior(1.5, 0.5, 0.5)
    assert not hardy.in_domain(0.5, 0.9, 0.9)


def test_ontic_models():
    assert hardy.nsbl_strategy_count() == 288
    assert hardy.max_hardy_fully_local() == pytest.approx(0.0, abs=1e-9)
    assert hardy.max_hardy_nsbl() == pytest.approx(0.0, abs=1e-9)
    assert hardy.max_hardy_nsbl(include_triple_zero=False) > 0.5


def test_concavity_named_points():
    label, eig = hardy.classify_point(R, S, T)
    assert label == "strictly-concave"
    assert max(eig) < 0


def test_cover_small_grid():
    rows = hardy.self_test_region(grid=8)
    assert rows[-2]["in_region"] and rows[-1]["in_region"]
    assert all(r["gap"] >= -1e-9 for r in rows)


def test_randomness_bits():
    p = hardy.hardy_behavior(R, S, T)
    g = hardy.guessing_probability(p, (1, 1, 1))
    assert hardy.certified_bits(R, S, T) == pytest.approx(-math.log2(g))


def test_npa_bound_sound():
    value, status = hardy.npa_max_hardy("local1")
    assert status == "optimal"
    assert value >= hardy.hardy_probability(R, S, T) - 1e-6
    bits, status = hardy.npa_bits(0.0179)
    assert status == "optimal"
    assert 0 < bits <= math.log2(7)
