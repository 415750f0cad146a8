"""
Tests for the coefficient and matrix CSV formats.
"""

import os
import sys
import tempfile

import numpy as np
import pytest

from coefficient_io import (
    CoefficientFormatError,
    read_matrix_csv,
    read_polynomial_csv,
    write_matrix_csv,
    write_polynomial_csv,
)
from dirichlet_poly import DirichletPolynomial


def _write_text(directory: str, name: str, text: str) -> str:
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return path


def test_polynomial_file_is_read_back_exactly():
    """Test that repr-formatted floats come back bit for bit."""
    f = DirichletPolynomial({1: 1.0 / 3.0, 6: -2.5 + 0.1j, 35: 1e-300j})
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_polynomial_csv(f, os.path.join(tmpdir, "sub", "phi.csv"))
        assert os.path.exists(path), "Parent directory was not created"
        with open(path, encoding='utf-8') as fh:
            assert fh.readline().strip() == "n,re,im"
        assert read_polynomial_csv(path) == f


def test_polynomial_header_and_order_errors():
    """Test rejection of bad headers, malformed rows and unordered indices."""
    with tempfile.TemporaryDirectory() as tmpdir:
        bad_header = _write_text(tmpdir, "a.csv", "k,re,im\n1,1,0\n")
        with pytest.raises(CoefficientFormatError):
            read_polynomial_csv(bad_header)
        unordered = _write_text(tmpdir, "b.csv", "n,re,im\n3,1,0\n2,1,0\n")
        with pytest.raises(CoefficientFormatError):
            read_polynomial_csv(unordered)
        repeated = _write_text(tmpdir, "c.csv", "n,re,im\n2,1,0\n2,1,0\n")
        with pytest.raises(CoefficientFormatError):
            read_polynomial_csv(repeated)
        malformed = _write_text(tmpdir, "d.csv", "n,re,im\n2,x,0\n")
        with pytest.raises(CoefficientFormatError):
            read_polynomial_csv(malformed)
        empty = _write_text(tmpdir, "e.csv", "")
        with pytest.raises(CoefficientFormatError):
            read_polynomial_csv(empty)


def test_polynomial_zero_rows_are_dropped():
    """Test that explicit zero coefficients do not enter the support."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write_text(tmpdir, "z.csv", "n,re,im\n1,0,0\n4,2,-1\n")
        f = read_polynomial_csv(path)
    assert f.support == (4,)
    assert f.coefficient(4) == 2 - 1j


def test_matrix_file_positional_labels():
    """Test that a matrix written with default labels is read back with its shape."""
    C = np.array([[1.0, 0.0, 2.5], [0.0, -1j, 0.0]])
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_matrix_csv(C, os.path.join(tmpdir, "C.csv"))
        back = read_matrix_csv(path)
    assert back.shape == (2, 3)
    assert np.array_equal(back, C.astype(complex))


def test_matrix_trailing_zeros_need_shape():
    """Test that an explicit shape keeps trailing zero rows and columns."""
    C = np.zeros((4, 3), dtype=complex)
    C[0, 1] = 2.0
    C[1, 0] = -1j
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_matrix_csv(C, os.path.join(tmpdir, "C.csv"))
        assert read_matrix_csv(path).shape == (2, 2)
        back = read_matrix_csv(path, shape=(4, 3))
        assert np.array_equal(back, C)
        with pytest.raises(CoefficientFormatError):
            read_matrix_csv(path, shape=(1, 1))


def test_matrix_labels_and_errors():
    """Test rejection of 1-D input and of non-positive labels."""
    with pytest.raises(CoefficientFormatError):
        write_matrix_csv(np.ones(3), "unused.csv")
    with tempfile.TemporaryDirectory() as tmpdir:
        zero_label = _write_text(tmpdir, "m.csv", "i,j,re,im\n0,1,1,0\n")
        with pytest.raises(CoefficientFormatError):
            read_matrix_csv(zero_label)
        no_entries = _write_text(tmpdir, "n.csv", "i,j,re,im\n")
        with pytest.raises(CoefficientFormatError):
            read_matrix_csv(no_entries)
        wrong_header = _write_text(tmpdir, "w.csv", "n,re,im\n1,1,0\n")
        with pytest.raises(CoefficientFormatError):
            read_matrix_csv(wrong_header)


def run_all_tests():
    """Run all tests."""
    print("=" * 60)
    print("Coefficient I/O - Test Suite")
    print("=" * 60)
    tests = [
        test_polynomial_file_is_read_back_exactly,
        test_polynomial_header_and_order_errors,
        test_polynomial_zero_rows_are_dropped,
        test_matrix_file_positional_labels,
        test_matrix_trailing_zeros_need_shape,
        test_matrix_labels_and_errors,
    ]
    try:
        for test in tests:
            test()
            print(f"✓ {test.__name__} passed")
        print("✓ ALL TESTS PASSED!")
        return True
    except AssertionError as e:
        print(f"\n✗ TEST FAILED: {e}")
        return False


if __name__ == "__main__":
    sys.exit(0 if run_all_tests() else 1)
