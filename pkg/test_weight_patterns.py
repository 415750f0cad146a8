"""
Tests for Schur-multiplier weight patterns and the embedded-pair multiplier experiments.
"""

import math
import sys

import numpy as np
import pytest

from weight_patterns import (
    WeightPattern,
    WeightPatternError,
    WeightPatternRegistry,
    bennett_tails,
    embedded_pair_weights,
    schur_multiplier_search,
)


def test_registry_kinds():
    """Test that all four kinds are registered."""
    kinds = WeightPatternRegistry.get_kinds()
    for kind in ("skew_log", "skew_radial", "homog_mask", "constant"):
        assert kind in kinds, f"Missing weight kind {kind}"
    with pytest.raises(WeightPatternError):
        WeightPatternRegistry.get("nope")


def test_invalid_patterns():
    """Test parameter validation."""
    with pytest.raises(WeightPatternError):
        WeightPattern("nope")
    with pytest.raises(WeightPatternError):
        WeightPattern.constant(1.5)
    with pytest.raises(WeightPatternError):
        WeightPattern("homog_mask", 1.5)


def test_skew_log_values():
    """Test w(m, n) = log n / (log m + log n) and the (1, 1) convention."""
    w = WeightPattern.skew_log()
    assert w.weight(1, 1) == 0.0
    assert w.weight(1, 7) == 1.0
    assert w.weight(7, 1) == 0.0
    assert abs(w.weight(2, 3) - math.log(3) / math.log(6)) < 1e-15
    assert abs(w.weight(5, 5) - 0.5) < 1e-15


def test_skew_log_pairs_sum_to_one():
    """Test w(m, n) + w(n, m) = 1 off (1, 1)."""
    idx = [1, 2, 3, 4, 6, 12]
    W = WeightPattern.skew_log().matrix(idx)
    S = W + W.T
    S[0, 0] = 1.0
    assert np.allclose(S, 1.0, atol=1e-15)


def test_skew_radial_and_mask():
    """Test Omega-based weights."""
    radial = WeightPattern.skew_radial()
    assert radial.weight(2, 3) == 0.5
    assert abs(radial.weight(2, 12) - 0.75) < 1e-15
    mask = WeightPattern.homog_mask(3)
    assert mask.weight(2, 6) == 1.0
    assert mask.weight(2, 3) == 0.0
    assert mask.name == "homog_mask(3)"


def test_masks_partition_unity():
    """Test that the homogeneous masks over all levels sum to the all-ones matrix."""
    idx = list(range(1, 25))
    total = sum(WeightPattern.homog_mask(m).matrix(idx) for m in range(0, 9))
    assert np.array_equal(total, np.ones((24, 24)))


def test_constant_pattern():
    """Test the constant weight and its rectangular shape."""
    W = WeightPattern.constant(0.25).matrix([1, 2], [3, 4, 5])
    assert W.shape == (2, 3)
    assert np.all(W == 0.25)


def test_embedded_pair_weights():
    """Test W_{jk} = skew_log(p_{2j-1}, p_{2k})."""
    W = embedded_pair_weights(2, 3)
    assert W.shape == (2, 3)
    # (p_1, p_2) = (2, 3); (p_3, p_6) = (5, 13)
    assert abs(W[0, 0] - math.log(3) / math.log(6)) < 1e-15
    assert abs(W[1, 2] - math.log(13) / math.log(65)) < 1e-15


def test_bennett_tails_fixture():
    """Test the frozen gap at table size 10^4 and the straddling of 1/2."""
    from utils import fixture_value

    tails = bennett_tails(10_000)
    assert tails.row_tail > 0.5 > tails.column_tail
    assert tails.gap >= 0.4, f"Gap {tails.gap} below 0.4"
    assert abs(tails.row_tail - 0.943427) < 5e-5
    assert abs(tails.column_tail - 0.086794) < 5e-5
    fixture = fixture_value("bennett_gap_10000")
    assert fixture is not None, "bennett_gap_10000 fixture missing"
    assert abs(tails.gap - fixture["value"]) <= fixture["tolerance"]


def test_bennett_tails_outer_index():
    """Test the outer-index range check."""
    with pytest.raises(WeightPatternError):
        bennett_tails(10, outer_index=5)
    with pytest.raises(WeightPatternError):
        bennett_tails(10, outer_index=0)


def test_multiplier_search_nondecreasing():
    """Test that the alternating search never decreases the ratio."""
    result = schur_multiplier_search(8, iterations=30, seed=1)
    assert len(result.ratios) == 31
    assert result.is_nondecreasing(1e-12), f"Ratios decreased: {result.ratios}"
    assert 0.0 < result.ratios[0] <= result.lower_bound
    assert abs(np.linalg.norm(result.best_matrix, 2) - 1.0) < 1e-10


def test_multiplier_search_all_ones():
    """Test that W = 1 reaches ratio 1 at once."""
    result = schur_multiplier_search(4, iterations=3, weights=np.ones((4, 4)))
    assert all(abs(r - 1.0) < 1e-12 for r in result.ratios)


def run_all_tests():
    """Run all tests."""
    print("=" * 60)
    print("Weight patterns - Test Suite")
    print("=" * 60)
    try:
        test_registry_kinds()
        test_invalid_patterns()
        test_skew_log_values()
        test_skew_log_pairs_sum_to_one()
        test_skew_radial_and_mask()
        test_masks_partition_unity()
        test_constant_pattern()
        test_embedded_pair_weights()
        test_bennett_tails_fixture()
        test_bennett_tails_outer_index()
        test_multiplier_search_nondecreasing()
        test_multiplier_search_all_ones()
        print("✓ ALL TESTS PASSED!")
        return True
    except AssertionError as e:
        print(f"\n✗ TEST FAILED: {e}")
        return False


if __name__ == "__main__":
    sys.exit(0 if run_all_tests() else 1)
