"""
Hankel Spectra Module - Truncated multiplicative Hankel matrices and their norms.

A symbol rho generates the bilinear form rho(a, b) = sum_{m,n} a_m b_n rho_{mn}.
Its analytic symbol is phi(s) = sum conj(rho_n) n^{-s}, so that
H_phi(fg) = <fg, phi> = rho(a, b) with no further conjugation.

Features:
- Symbol / analytic symbol conversion
- Hankel matrices on range and divisor-closed index sets
- Spectral norm by seeded power iteration (dense or matrix-free)
- Schatten norms by full SVD and the divisor-count Frobenius identity
- Schur multipliers from weight_patterns
- The prime-pair matrix embedding and the phi_d family
- Pairings: Hankel, first-row decomposition, skew and radial-skew
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse.linalg import LinearOperator, aslinearoperator

from bohr_arith import divisor_count, divisor_pairs, get_prime_table, log_integer, omega
from coefficient_io import write_matrix_csv, write_polynomial_csv
from dirichlet_poly import (
    DirichletPolynomial,
    multiply,
    primitive_halfplane,
    derivative_halfplane,
    radial_derivative,
    radial_primitive,
)
from weight_patterns import WeightPattern

_logger = logging.getLogger(__name__)

SYMBOL_CONVENTION = "phi(s) = sum conj(rho_n) n^-s"

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


class HankelError(ValueError):
    """Exception raised for invalid Hankel constructions or evaluations."""
    pass


# ============================================================================
# SYMBOLS
# ============================================================================

@dataclass(frozen=True)
class Symbol:
    """
    Finitely supported Hankel symbol n -> rho_n.

    Attributes:
        rho: The coefficient map, stored as a DirichletPolynomial.
        convention: How the analytic symbol is obtained from rho.
    """
    rho: DirichletPolynomial
    convention: str = SYMBOL_CONVENTION

    @classmethod
    def from_mapping(cls, rho: Dict[int, complex]) -> "Symbol":
        return cls(DirichletPolynomial(rho))

    @property
    def support(self) -> Tuple[int, ...]:
        return self.rho.support

    def coefficient(self, n: int) -> complex:
        return self.rho.coefficient(n)

    def analytic(self) -> DirichletPolynomial:
        """phi = sum conj(rho_n) n^{-s}."""
        return self.rho.map_coefficients(lambda n, r: r.conjugate())

    def to_csv(self, path: str) -> str:
        """Write rho in the `n,re,im` format."""
        return write_polynomial_csv(self.rho, path)

    def to_dict(self) -> Dict:
        return {
            "convention": self.convention,
            "rho": [[n, r.real, r.imag] for n, r in self.rho.items()],
        }


def analytic_symbol(symbol: Symbol) -> DirichletPolynomial:
    """The analytic symbol phi of a Hankel symbol."""
    return symbol.analytic()


def symbol_from_analytic(phi: DirichletPolynomial) -> Symbol:
    """The Hankel symbol rho_n = conj(phi_n)."""
    return Symbol(phi.map_coefficients(lambda n, c: c.conjugate()))


# ============================================================================
# INDEX SETS AND MATRICES
# ============================================================================

@dataclass(frozen=True)
class IndexSetSpec:
    """
    Recipe for the index set of a truncated Hankel matrix.

    Kinds:
        range_full(N):  {1, ..., N}
        range_zero(N):  {2, ..., N}
        divisor_closed: every m >= threshold with m * n in supp(rho) for some n >= threshold
        explicit:       a given list
    """
    kind: str
    size: int = 0
    threshold: int = 1
    indices: Tuple[int, ...] = ()

    @classmethod
    def range_full(cls, N: int) -> "IndexSetSpec":
        return cls("range_full", size=N)

    @classmethod
    def range_zero(cls, N: int) -> "IndexSetSpec":
        return cls("range_zero", size=N, threshold=2)

    @classmethod
    def divisor_closed(cls, threshold: int = 1) -> "IndexSetSpec":
        if threshold not in (1, 2):
            raise HankelError(f"Divisor-closed threshold must be 1 or 2, got {threshold}")
        return cls("divisor_closed", threshold=threshold)

    @classmethod
    def explicit(cls, indices: Sequence[int]) -> "IndexSetSpec":
        return cls("explicit", indices=tuple(sorted(set(int(m) for m in indices))))

    def resolve(self, symbol: Optional[Symbol] = None) -> List[int]:
        """
        Materialize the index set.

        Args:
            symbol: Required for divisor_closed sets.

        Returns:
            list: Sorted positive integers.
        """
        if self.kind == "range_full":
            return list(range(1, self.size + 1))
        if self.kind == "range_zero":
            return list(range(2, self.size + 1))
        if self.kind == "explicit":
            if self.indices and self.indices[0] < 1:
                raise HankelError(f"Index sets hold positive integers, got {self.indices[0]}")
            return list(self.indices)
        if self.kind == "divisor_closed":
            if symbol is None:
                raise HankelError("A divisor-closed index set needs a symbol")
            found = set()
            for N in symbol.support:
                found.update(m for m, _ in divisor_pairs(N, self.threshold))
            return sorted(found)
        raise HankelError(f"Unknown index set kind: {self.kind}")


@dataclass(frozen=True, eq=False)
class HankelMatrix:
    """
    Dense truncation (rho_{mn}) over an index set.

    Attributes:
        index_set: Sorted row/column labels.
        entries: Read-only complex matrix, symmetric (not Hermitian).
    """
    index_set: Tuple[int, ...]
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.index_set)

    def position(self, m: int) -> int:
        """Row/column position of the label m."""
        k = int(np.searchsorted(self.index_set, m))
        if k >= self.size or self.index_set[k] != m:
            raise HankelError(f"{m} is not in the index set")
        return k

    def to_csv(self, path: str) -> str:
        """
        Write nonzero entries as `i,j,re,im` with 1-based positions.

        Position k stands for index_set[k - 1]; read the file back with
        read_matrix_csv(path, shape=(size, size)).
        """
        return write_matrix_csv(self.entries, path)


def build_hankel(symbol: Symbol, index_set: IndexSetSpec) -> HankelMatrix:
    """
    Build the truncated Hankel matrix (rho_{mn})_{m,n in index set}.

    Entries are looked up by the integer product mn in the sorted support.

    Args:
        symbol: The symbol.
        index_set: Index set recipe.

    Returns:
        HankelMatrix: The dense matrix.

    Raises:
        HankelError: If the resolved index set is empty.
    """
    indices = index_set.resolve(symbol)
    if not indices:
        raise HankelError(f"Empty index set ({index_set.kind})")
    labels = np.asarray(indices, dtype=np.int64)
    entries = np.zeros((labels.size, labels.size), dtype=complex)
    if symbol.support:
        support = np.asarray(symbol.support, dtype=np.int64)
        values = np.asarray([r for _, r in symbol.rho.items()], dtype=complex)
        products = labels[:, None] * labels[None, :]
        where = np.minimum(np.searchsorted(support, products), support.size - 1)
        hit = support[where] == products
        entries[hit] = values[where[hit]]
    _logger.debug("Built %dx%d Hankel matrix (%s)", labels.size, labels.size, index_set.kind)
    return HankelMatrix(index_set=tuple(indices), entries=entries)


MatrixLike = Union[HankelMatrix, np.ndarray, LinearOperator]


def _as_array(M: MatrixLike) -> np.ndarray:
    if isinstance(M, HankelMatrix):
        return M.entries
    if isinstance(M, LinearOperator):
        raise HankelError("A dense matrix is required for this operation")
    return np.asarray(M)


# ============================================================================
# NORMS
# ============================================================================

@dataclass
class SpectralResult:
    """
    Outcome of a largest-singular-value computation.

    Attributes:
        value: Estimate of the largest singular value.
        iterations: Power iterations performed (0 for a direct SVD).
        residual: |value_k - value_{k-1}| / max(1, value_k) at the last step.
        converged: True when residual <= tol.
        operation: Name of the method that produced the value.
        parameters: Method parameters (tolerance, iteration cap, shape).
        seed: Seed of the start vector, None for a direct SVD.
    """
    value: float
    iterations: int
    residual: float
    converged: bool
    operation: str = "spectral_norm"
    parameters: Dict = field(default_factory=dict)
    seed: Optional[int] = None

    def to_dict(self) -> Dict:
        return {
            "operation": self.operation,
            "parameters": dict(self.parameters),
            "value": self.value,
            "residual": self.residual,
            "iterations": self.iterations,
            "seed": self.seed,
            "converged": self.converged,
        }


def svd_result(M: MatrixLike, **parameters) -> SpectralResult:
    """operator_norm wrapped as a SpectralResult record."""
    dense = _as_array(M)
    parameters.setdefault("shape", list(dense.shape))
    return SpectralResult(operator_norm(dense), 0, 0.0, True, operation="operator_norm", parameters=parameters)


def spectral_norm(M: MatrixLike, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                  seed: int = 0) -> SpectralResult:
    """
    Largest singular value by power iteration on M* M.

    The start vector is a pseudo-random unit vector drawn from `seed`; the
    iteration stops once |value_k - value_{k-1}| <= tol * max(1, value_k).

    Args:
        M: HankelMatrix, dense array or scipy LinearOperator.
        tol: Relative stopping tolerance.
        max_iter: Iteration cap.
        seed: Seed of the start vector.

    Returns:
        SpectralResult: Value and convergence report; non-convergence is
            reported with converged=False, not raised.
    """
    if isinstance(M, LinearOperator):
        op = M
    else:
        dense = _as_array(M)
        if not np.all(np.isfinite(dense)):
            raise HankelError("Matrix has non-finite entries")
        op = aslinearoperator(dense)
    rows, cols = op.shape
    if rows == 0 or cols == 0:
        raise HankelError("Empty matrix")

    params = {"tol": tol, "max_iter": max_iter, "shape": [rows, cols]}

    def result(value: float, iterations: int, residual: float, converged: bool) -> SpectralResult:
        return SpectralResult(value, iterations, residual, converged, parameters=params, seed=seed)

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(cols)
    if np.issubdtype(op.dtype, np.complexfloating):
        v = v + 1j * rng.standard_normal(cols)
    v = v / np.linalg.norm(v)

    value = previous = 0.0
    residual = math.inf
    for it in range(1, max_iter + 1):
        w = op.matvec(v)
        value = float(np.linalg.norm(w))
        if value == 0.0:
            return result(0.0, it, 0.0, True)
        residual = abs(value - previous) / max(1.0, value)
        if it > 1 and residual <= tol:
            _logger.debug("Power iteration converged after %d steps: %.12g", it, value)
            return result(value, it, residual, True)
        u = op.rmatvec(w)
        norm_u = float(np.linalg.norm(u))
        if norm_u == 0.0:
            return result(value, it, 0.0, True)
        v = u / norm_u
        previous = value
    _logger.warning("Power iteration did not converge in %d steps (residual %.3g)", max_iter, residual)
    return result(value, max_iter, residual, False)


def singular_values(M: MatrixLike) -> np.ndarray:
    """All singular values, decreasing, by full SVD."""
    return np.linalg.svd(_as_array(M), compute_uv=False)


def operator_norm(M: MatrixLike) -> float:
    """Largest singular value by full SVD, the oracle for spectral_norm."""
    s = singular_values(M)
    return float(s[0]) if s.size else 0.0


def schatten_norm(M: MatrixLike, p: float) -> float:
    """
    Schatten p-norm (sum sigma_k^p)^{1/p} over all singular values.

    Args:
        M: Dense matrix or HankelMatrix.
        p: Exponent > 0; math.inf gives the operator norm.

    Returns:
        float: The norm.
    """
    if not p > 0:
        raise HankelError(f"Schatten exponent must be positive, got {p}")
    s = singular_values(M)
    if math.isinf(p):
        return float(s[0]) if s.size else 0.0
    return float(np.sum(s ** p) ** (1.0 / p))


def frobenius_via_divisors(symbol: Symbol) -> float:
    """
    Frobenius norm of the restricted matrix (rho_{mn})_{m,n>=2}.

    Each n with Omega(n) >= 2 appears d(n) - 2 times, once per factorization
    n = m * (n/m) with both factors >= 2.

    Raises:
        HankelError: If some support element has Omega(n) <= 1.
    """
    total = []
    for n, r in symbol.rho.items():
        if omega(n) < 2:
            raise HankelError(f"Support element {n} has Omega(n) <= 1")
        total.append((divisor_count(n) - 2) * abs(r) ** 2)
    return math.sqrt(math.fsum(total))


def schur_apply(M: HankelMatrix, pattern: WeightPattern) -> np.ndarray:
    """Entrywise product entries(i, j) * w(index_i, index_j)."""
    return M.entries * pattern.matrix(M.index_set)


def hankel_norm(symbol: Symbol, threshold: int = 1, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Exact form norm on the divisor-closed index set of the symbol."""
    return spectral_norm(build_hankel(symbol, IndexSetSpec.divisor_closed(threshold)), tol=tol)


# ============================================================================
# EVALUATION AND PAIRINGS
# ============================================================================

def _coefficient_vector(M: MatrixLike, a, size: int) -> np.ndarray:
    if isinstance(a, DirichletPolynomial):
        if not isinstance(M, HankelMatrix):
            raise HankelError("Polynomial arguments need a HankelMatrix with an index set")
        vec = np.zeros(size, dtype=complex)
        for n, c in a.items():
            vec[M.position(n)] = c
        return vec
    vec = np.asarray(a)
    if vec.shape != (size,):
        raise HankelError(f"Coefficient vector of shape {vec.shape} does not match size {size}")
    return vec


def bilinear_eval(M: MatrixLike, a, b) -> complex:
    """
    a^T M b, without conjugation.

    Args:
        M: HankelMatrix or dense matrix.
        a: Coefficient vector, or polynomial supported in the index set.
        b: Same for the second argument.

    Returns:
        complex: The bilinear form value.
    """
    entries = _as_array(M)
    a_vec = _coefficient_vector(M, a, entries.shape[0])
    b_vec = _coefficient_vector(M, b, entries.shape[1])
    return complex(a_vec @ entries @ b_vec)


def hankel_pairing(f: DirichletPolynomial, g: DirichletPolynomial, symbol: Symbol) -> complex:
    """H_phi(fg) = <fg, phi> = sum (fg)_n rho_n."""
    return sum((c * symbol.coefficient(n) for n, c in multiply(f, g).items()), 0j)


@dataclass(frozen=True)
class PairingDecomposition:
    """
    The four terms of H_phi(fg) after splitting off the constant terms of f and g.

    Attributes:
        constant: a_1 b_1 rho_1
        row: a_1 <g - b_1, phi>
        column: b_1 <f - a_1, phi>
        restricted: H_phi((f - a_1)(g - b_1))
    """
    constant: complex
    row: complex
    column: complex
    restricted: complex

    @property
    def total(self) -> complex:
        return self.constant + self.row + self.column + self.restricted


def first_row_decomposition(f: DirichletPolynomial, g: DirichletPolynomial,
                            symbol: Symbol) -> PairingDecomposition:
    """Split the pairing into its first row, first column and restricted parts."""
    a1, b1 = f.constant_term(), g.constant_term()
    f0 = f - DirichletPolynomial.constant(a1)
    g0 = g - DirichletPolynomial.constant(b1)
    one = DirichletPolynomial.constant(1.0)
    return PairingDecomposition(
        constant=a1 * b1 * symbol.coefficient(1),
        row=a1 * hankel_pairing(one, g0, symbol),
        column=b1 * hankel_pairing(one, f0, symbol),
        restricted=hankel_pairing(f0, g0, symbol),
    )


def skew_pairing(f: DirichletPolynomial, g: DirichletPolynomial, symbol: Symbol) -> complex:
    """
    <D^{-1}(f * Dg), phi>, the skew form with weight log n / (log m + log n) on a_m b_n.
    """
    F = primitive_halfplane(multiply(f, derivative_halfplane(g)))
    return hankel_pairing(F, DirichletPolynomial.constant(1.0), symbol)


def radial_skew_pairing(f: DirichletPolynomial, g: DirichletPolynomial, symbol: Symbol) -> complex:
    """
    <R^{-1}(f * Rg), phi>, with weight Omega(n) / (Omega(m) + Omega(n)) on a_m b_n.
    """
    F = radial_primitive(multiply(f, radial_derivative(g)))
    return hankel_pairing(F, DirichletPolynomial.constant(1.0), symbol)


# ============================================================================
# NAMED CONSTRUCTIONS
# ============================================================================

def embed_matrix(C: np.ndarray) -> Symbol:
    """
    Symbol with rho at p_{2j-1} p_{2k} equal to c_{jk} (1-based j, k).

    Args:
        C: A J x K complex matrix.

    Returns:
        Symbol: The embedded symbol.
    """
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    if C.ndim != 2:
        raise HankelError(f"embed_matrix expects a 2-D matrix, got shape {C.shape}")
    rows, cols = C.shape
    table = get_prime_table(min_count=2 * max(rows, cols, 1))
    rho = {}
    for j, k in zip(*np.nonzero(C)):
        rho[table.primes[2 * j] * table.primes[2 * k + 1]] = C[j, k]
    return Symbol(DirichletPolynomial(rho))


def phi_d_symbol(d: int) -> DirichletPolynomial:
    """phi_d = prod_{j=1}^d (p_{2j-1}^{-s} + p_{2j}^{-s})."""
    if d < 1:
        raise HankelError(f"phi_d needs d >= 1, got {d}")
    table = get_prime_table(min_count=2 * d)
    phi = DirichletPolynomial.constant(1.0)
    for j in range(d):
        pair = DirichletPolynomial({table.primes[2 * j]: 1.0, table.primes[2 * j + 1]: 1.0})
        phi = multiply(phi, pair)
    return phi


def mult_hilbert_symbol(N: int) -> Symbol:
    """rho_n = 1 / (sqrt(n) log n) for 2 <= n <= N, rho_1 = 0."""
    if N < 2:
        raise HankelError(f"The multiplicative Hilbert symbol needs N >= 2, got {N}")
    return Symbol(DirichletPolynomial({n: 1.0 / (math.sqrt(n) * log_integer(n)) for n in range(2, N + 1)}))
