"""
Coefficient I/O Module - CSV formats for symbols, polynomials and matrices.

Formats:
    Symbol / polynomial: header `n,re,im`, one row per nonzero coefficient,
    n strictly increasing.
    Matrix: header `i,j,re,im`, one row per nonzero entry, row-major. The
    labels i, j are 1-based row and column positions.
"""

import csv
import logging
import os
from typing import Dict, List, Optional, Tuple

import numpy as np

from dirichlet_poly import DirichletPolynomial

_logger = logging.getLogger(__name__)

SYMBOL_HEADER = ["n", "re", "im"]
MATRIX_HEADER = ["i", "j", "re", "im"]


class CoefficientFormatError(ValueError):
    """Exception raised when a coefficient or matrix CSV file is malformed."""
    pass


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_polynomial_csv(f: DirichletPolynomial, path: str) -> str:
    """
    Write a polynomial (or the rho map of a symbol) as `n,re,im` rows.

    Args:
        f: Coefficient map to write.
        path: Output file path.

    Returns:
        str: The path written.
    """
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SYMBOL_HEADER)
        for n, a in f.items():
            writer.writerow([n, repr(a.real), repr(a.imag)])
    _logger.debug("Wrote %d coefficients to %s", len(f), path)
    return path


def read_polynomial_csv(path: str) -> DirichletPolynomial:
    """
    Read an `n,re,im` file.

    Raises:
        CoefficientFormatError: On a wrong header, a non-integer index or
            indices that are not strictly increasing.
    """
    coeffs: Dict[int, complex] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SYMBOL_HEADER:
            raise CoefficientFormatError(f"{path}: expected header {','.join(SYMBOL_HEADER)}, got {header}")
        last = 0
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                n = int(row[0])
                value = complex(float(row[1]), float(row[2]))
            except (ValueError, IndexError) as e:
                raise CoefficientFormatError(f"{path}:{lineno}: malformed row {row}: {e}")
            if n <= last:
                raise CoefficientFormatError(f"{path}:{lineno}: index {n} is not strictly increasing")
            last = n
            coeffs[n] = value
    return DirichletPolynomial(coeffs)


def write_matrix_csv(matrix: np.ndarray, path: str) -> str:
    """
    Write the nonzero entries of a square or rectangular matrix.

    Labels are 1-based row and column positions; the shape is not stored,
    so readers of matrices with trailing zero rows or columns pass it back
    to read_matrix_csv.

    Args:
        matrix: The matrix.
        path: Output file path.

    Returns:
        str: The path written.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise CoefficientFormatError(f"Expected a 2-D matrix, got shape {matrix.shape}")
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(MATRIX_HEADER)
        for i, j in zip(*np.nonzero(matrix)):
            value = complex(matrix[i, j])
            writer.writerow([i + 1, j + 1, repr(value.real), repr(value.imag)])
    _logger.debug("Wrote %s matrix to %s", matrix.shape, path)
    return path


def read_matrix_csv(path: str, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """
    Read an `i,j,re,im` file with 1-based positional labels into a dense matrix.

    Args:
        path: Input file path.
        shape: Matrix shape; defaults to (max i, max j). Entries not listed are zero.

    Raises:
        CoefficientFormatError: On a wrong header, malformed rows, labels < 1
            or labels outside the given shape.
    """
    entries: List[Tuple[int, int, complex]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != MATRIX_HEADER:
            raise CoefficientFormatError(f"{path}: expected header {','.join(MATRIX_HEADER)}, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                i, j = int(row[0]), int(row[1])
                value = complex(float(row[2]), float(row[3]))
            except (ValueError, IndexError) as e:
                raise CoefficientFormatError(f"{path}:{lineno}: malformed row {row}: {e}")
            if i < 1 or j < 1:
                raise CoefficientFormatError(f"{path}:{lineno}: labels must be positive, got ({i}, {j})")
            entries.append((i, j, value))
    if not entries:
        raise CoefficientFormatError(f"{path}: no matrix entries")
    if shape is None:
        shape = (max(i for i, _, _ in entries), max(j for _, j, _ in entries))
    elif any(i > shape[0] or j > shape[1] for i, j, _ in entries):
        raise CoefficientFormatError(f"{path}: entries lie outside the shape {tuple(shape)}")
    matrix = np.zeros(shape, dtype=complex)
    for i, j, value in entries:
        matrix[i - 1, j - 1] = value
    return matrix
