"""
Hilbert Kernels Module - Multiplicative and additive Hilbert matrices and the Nehari symbol.

Kernels:
- mult:          1 / (sqrt(mn) (log m + log n)) on {2..N}
- quehilbert:    same kernel on {1..N}, with the (1, 1) entry set to 0
- ahilb1:        1 / (m + n), m, n >= 1
- shifted:       1 / (m + n + 1), m, n >= 0
- ahilb4:        1 / (m + n), m, n >= 0, the (0, 0) entry is 0
- mult_shifted:  1 / (sqrt((m+1/2)(n+1/2)) log((m+1/2)(n+1/2))), m, n >= 1

Every kernel is available as a dense matrix and as a scipy LinearOperator
that evaluates row blocks on the fly, so matrix-free runs never store the
N x N matrix.
"""

import logging
import math
from typing import Callable, Dict, Tuple

import numpy as np
from scipy.integrate import simpson
from scipy.sparse.linalg import LinearOperator

from bohr_arith import log_integer

_logger = logging.getLogger(__name__)

# Rows evaluated per block in matrix-free products
DEFAULT_BLOCK = 512


class HilbertKernelError(ValueError):
    """Exception raised for unknown kernel variants or bad sizes."""
    pass


def _log_table(labels: np.ndarray) -> np.ndarray:
    return np.array([log_integer(int(m)) for m in labels], dtype=float)


def _multiplicative_kernel(labels: np.ndarray) -> Callable[[slice], np.ndarray]:
    logs = _log_table(labels)
    roots = np.sqrt(labels.astype(float))

    def block(rows: slice) -> np.ndarray:
        den = roots[rows, None] * roots[None, :] * (logs[rows, None] + logs[None, :])
        out = np.zeros(den.shape, dtype=float)
        np.divide(1.0, den, out=out, where=den > 0)
        return out

    return block


def _additive_kernel(labels: np.ndarray, shift: float) -> Callable[[slice], np.ndarray]:
    values = labels.astype(float)

    def block(rows: slice) -> np.ndarray:
        den = values[rows, None] + values[None, :] + shift
        out = np.zeros(den.shape, dtype=float)
        np.divide(1.0, den, out=out, where=den > 0)
        return out

    return block


def _shifted_multiplicative_kernel(labels: np.ndarray) -> Callable[[slice], np.ndarray]:
    half = labels.astype(float) + 0.5
    logs = np.log(half)
    roots = np.sqrt(half)

    def block(rows: slice) -> np.ndarray:
        return 1.0 / (roots[rows, None] * roots[None, :] * (logs[rows, None] + logs[None, :]))

    return block


def _kernel(variant: str, N: int) -> Tuple[np.ndarray, Callable[[slice], np.ndarray]]:
    """Labels and block evaluator for a variant at size parameter N."""
    if N < 1:
        raise HilbertKernelError(f"N must be positive, got {N}")
    if variant == "mult":
        if N < 2:
            raise HilbertKernelError("The multiplicative kernel on {2..N} needs N >= 2")
        labels = np.arange(2, N + 1)
        return labels, _multiplicative_kernel(labels)
    if variant == "quehilbert":
        labels = np.arange(1, N + 1)
        return labels, _multiplicative_kernel(labels)
    if variant == "ahilb1":
        labels = np.arange(1, N + 1)
        return labels, _additive_kernel(labels, 0.0)
    if variant == "shifted":
        labels = np.arange(0, N)
        return labels, _additive_kernel(labels, 1.0)
    if variant == "ahilb4":
        labels = np.arange(0, N)
        return labels, _additive_kernel(labels, 0.0)
    if variant == "mult_shifted":
        labels = np.arange(1, N + 1)
        return labels, _shifted_multiplicative_kernel(labels)
    raise HilbertKernelError(f"Unknown Hilbert variant: {variant}")


VARIANT_ALIASES: Dict[str, str] = {
    "additive-shifted": "shifted",
    "mult-shifted": "mult_shifted",
}

MULTIPLICATIVE_VARIANTS = ("mult", "quehilbert")
ADDITIVE_VARIANTS = ("ahilb1", "shifted", "ahilb4", "mult_shifted")


def canonical_variant(variant: str) -> str:
    """Resolve CLI spellings such as `additive-shifted` to kernel names."""
    name = VARIANT_ALIASES.get(variant, variant)
    if name not in MULTIPLICATIVE_VARIANTS + ADDITIVE_VARIANTS:
        raise HilbertKernelError(f"Unknown Hilbert variant: {variant}")
    return name


def hilbert_matrix(variant: str, N: int) -> np.ndarray:
    """Dense matrix of any variant."""
    labels, block = _kernel(canonical_variant(variant), N)
    return block(slice(0, labels.size))


def hilbert_operator(variant: str, N: int, block_size: int = DEFAULT_BLOCK) -> LinearOperator:
    """
    Matrix-free operator of any variant.

    Row blocks are evaluated on demand and reduced in block order, so the
    product does not depend on how the work is split.

    Args:
        variant: Kernel name.
        N: Size parameter.
        block_size: Rows evaluated per block.

    Returns:
        LinearOperator: Real symmetric operator; rmatvec equals matvec.
    """
    labels, block = _kernel(canonical_variant(variant), N)
    size = labels.size

    def matvec(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x).reshape(-1)
        out = np.zeros(size, dtype=np.result_type(x.dtype, float))
        for start in range(0, size, block_size):
            rows = slice(start, min(start + block_size, size))
            out[rows] = block(rows) @ x
        return out

    return LinearOperator(shape=(size, size), matvec=matvec, rmatvec=matvec, dtype=float)


def multiplicative_hilbert_matrix(N: int, include_one: bool = False) -> np.ndarray:
    """
    Dense kernel 1 / (sqrt(mn) log(mn)).

    Args:
        N: Largest index.
        include_one: Index set {1..N} with a zero (1, 1) entry instead of {2..N}.

    Returns:
        np.ndarray: The real symmetric matrix.
    """
    return hilbert_matrix("quehilbert" if include_one else "mult", N)


def multiplicative_hilbert_operator(N: int, include_one: bool = False,
                                    block_size: int = DEFAULT_BLOCK) -> LinearOperator:
    """Matrix-free form of multiplicative_hilbert_matrix."""
    return hilbert_operator("quehilbert" if include_one else "mult", N, block_size)


def additive_hilbert_matrix(variant: str, N: int) -> np.ndarray:
    """
    Dense N x N additive-type Hilbert matrix.

    Args:
        variant: One of ahilb1, shifted (or additive-shifted), ahilb4,
            mult_shifted (or mult-shifted).
        N: Matrix size.

    Raises:
        HilbertKernelError: On an unknown variant.
    """
    name = canonical_variant(variant)
    if name not in ADDITIVE_VARIANTS:
        raise HilbertKernelError(f"{variant} is not an additive Hilbert variant")
    return hilbert_matrix(name, N)


# ============================================================================
# NEHARI SYMBOL
# ============================================================================

def nehari_symbol_values(theta: np.ndarray) -> np.ndarray:
    """Phi(e^{i theta}) = i (pi - theta) for theta in [0, 2 pi]."""
    return 1j * (math.pi - np.asarray(theta, dtype=float))


def nehari_symbol_coefficients(k_max: int, grid_size: int) -> np.ndarray:
    """
    Fourier coefficients c_k = (1/2pi) int_0^{2pi} Phi(theta) e^{-ik theta} d theta, k = 1..k_max.

    Composite Simpson quadrature on the grid_size + 1 uniform nodes of
    [0, 2 pi]; the endpoint values are the one-sided limits i pi and -i pi.

    Args:
        k_max: Largest frequency.
        grid_size: Number of panels, a power of two >= 4 * k_max.

    Returns:
        np.ndarray: Complex array of length k_max; entry k - 1 approximates 1/k.
    """
    if k_max < 1:
        raise HilbertKernelError(f"k_max must be positive, got {k_max}")
    if grid_size < 4 * k_max or grid_size & (grid_size - 1):
        raise HilbertKernelError(f"grid_size must be a power of two >= 4*k_max, got {grid_size}")
    theta = np.linspace(0.0, 2.0 * math.pi, grid_size + 1)
    phi = nehari_symbol_values(theta)
    coeffs = np.empty(k_max, dtype=complex)
    for k in range(1, k_max + 1):
        coeffs[k - 1] = simpson(phi * np.exp(-1j * k * theta), x=theta) / (2.0 * math.pi)
    return coeffs


def nehari_symbol_sup(grid_size: int) -> float:
    """max |Phi| over the uniform grid theta_j = 2 pi j / grid_size, j < grid_size."""
    theta = 2.0 * math.pi * np.arange(grid_size) / grid_size
    return float(np.max(np.abs(nehari_symbol_values(theta))))
