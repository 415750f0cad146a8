"""
Weight Patterns Module - Entrywise Schur-multiplier weights w(m, n) for Hankel matrices.

Implements a small registry of weight kinds:
- skew_log:    w(m, n) = log n / (log m + log n), w(1, 1) = 0
- skew_radial: w(m, n) = Omega(n) / (Omega(m) + Omega(n)), w(1, 1) = 0
- homog_mask:  indicator of Omega(mn) = level
- constant:    w(m, n) = c, 0 <= c <= 1

Also provides the two multiplier experiments built on skew_log restricted to
embedded prime pairs (p_{2j-1}, p_{2k}): the iterated-limit tails and an
alternating lower-bound search for the multiplier norm.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bohr_arith import get_prime_table, log_integer, omega

_logger = logging.getLogger(__name__)


class WeightPatternError(ValueError):
    """Exception raised for unknown or invalid weight patterns."""
    pass


def _log_array(indices: Sequence[int]) -> np.ndarray:
    return np.array([log_integer(int(n)) for n in indices], dtype=float)


def _omega_array(indices: Sequence[int]) -> np.ndarray:
    return np.array([omega(int(n)) for n in indices], dtype=float)


def _skew_ratio(row_vals: np.ndarray, col_vals: np.ndarray) -> np.ndarray:
    """col / (row + col), with 0 where both vanish."""
    num = np.broadcast_to(col_vals[None, :], (row_vals.size, col_vals.size))
    den = row_vals[:, None] + col_vals[None, :]
    out = np.zeros(den.shape, dtype=float)
    np.divide(num, den, out=out, where=den > 0)
    return out


def _skew_log(rows, cols, parameter):
    return _skew_ratio(_log_array(rows), _log_array(cols))


def _skew_radial(rows, cols, parameter):
    return _skew_ratio(_omega_array(rows), _omega_array(cols))


def _homog_mask(rows, cols, parameter):
    level = _omega_array(rows)[:, None] + _omega_array(cols)[None, :]
    return (level == parameter).astype(float)


def _constant(rows, cols, parameter):
    return np.full((len(rows), len(cols)), float(parameter))


@dataclass(frozen=True)
class WeightPattern:
    """
    A named entrywise weight w(m, n).

    Attributes:
        kind: One of the registered kinds.
        parameter: Level m for homog_mask, value c for constant, unused otherwise.
    """
    kind: str
    parameter: float = 0.0

    def __post_init__(self):
        if self.kind not in WeightPatternRegistry.get_kinds():
            raise WeightPatternError(f"Unknown weight pattern kind: {self.kind}")
        if self.kind == "constant" and not 0.0 <= self.parameter <= 1.0:
            raise WeightPatternError(f"Constant weight must lie in [0, 1], got {self.parameter}")
        if self.kind == "homog_mask" and (self.parameter < 0 or self.parameter != int(self.parameter)):
            raise WeightPatternError(f"Homogeneity level must be a non-negative integer, got {self.parameter}")

    @classmethod
    def skew_log(cls) -> "WeightPattern":
        return cls("skew_log")

    @classmethod
    def skew_radial(cls) -> "WeightPattern":
        return cls("skew_radial")

    @classmethod
    def homog_mask(cls, level: int) -> "WeightPattern":
        return cls("homog_mask", float(level))

    @classmethod
    def constant(cls, c: float) -> "WeightPattern":
        return cls("constant", float(c))

    @property
    def name(self) -> str:
        if self.kind == "homog_mask":
            return f"homog_mask({int(self.parameter)})"
        if self.kind == "constant":
            return f"constant({self.parameter:g})"
        return self.kind

    def matrix(self, rows: Sequence[int], cols: Optional[Sequence[int]] = None) -> np.ndarray:
        """
        Weight matrix (w(rows[i], cols[j]))_{i,j}.

        Args:
            rows: Row indices (positive integers).
            cols: Column indices; defaults to rows.

        Returns:
            np.ndarray: Real matrix with entries in [0, 1].
        """
        cols = rows if cols is None else cols
        return WeightPatternRegistry.get(self.kind)(list(rows), list(cols), self.parameter)

    def weight(self, m: int, n: int) -> float:
        """Single weight w(m, n)."""
        return float(self.matrix([m], [n])[0, 0])


class WeightPatternRegistry:
    """
    Registry of weight kinds and their vectorized evaluators.
    """

    _evaluators: Dict[str, Callable] = {}

    @classmethod
    def register(cls, kind: str, evaluator: Callable) -> None:
        """Register an evaluator(rows, cols, parameter) -> matrix."""
        cls._evaluators[kind] = evaluator

    @classmethod
    def get(cls, kind: str) -> Callable:
        try:
            return cls._evaluators[kind]
        except KeyError:
            raise WeightPatternError(f"Unknown weight pattern kind: {kind}")

    @classmethod
    def get_kinds(cls) -> List[str]:
        return list(cls._evaluators.keys())


WeightPatternRegistry.register("skew_log", _skew_log)
WeightPatternRegistry.register("skew_radial", _skew_radial)
WeightPatternRegistry.register("homog_mask", _homog_mask)
WeightPatternRegistry.register("constant", _constant)


# ============================================================================
# MULTIPLIER EXPERIMENTS ON EMBEDDED PAIRS
# ============================================================================

def embedded_pair_weights(rows: int, cols: int) -> np.ndarray:
    """
    W_{jk} = skew_log(p_{2j-1}, p_{2k}) for 1 <= j <= rows, 1 <= k <= cols.

    Args:
        rows: Number of odd-indexed primes.
        cols: Number of even-indexed primes.

    Returns:
        np.ndarray: The rows x cols weight matrix.
    """
    table = get_prime_table(min_count=2 * max(rows, cols))
    odd = [table.prime(2 * j - 1) for j in range(1, rows + 1)]
    even = [table.prime(2 * k) for k in range(1, cols + 1)]
    return WeightPattern.skew_log().matrix(odd, even)


@dataclass(frozen=True)
class BennettTails:
    """
    Iterated-limit tails of the embedded skew_log weights.

    Attributes:
        table_size: Number of primes used.
        outer_index: Index held fixed while the inner index runs to the table end.
        row_tail: w(p_{2j-1}, p_{2L}) with j = outer_index, L the last pair.
        column_tail: w(p_{2L-1}, p_{2k}) with k = outer_index.
        gap: row_tail - column_tail.
    """
    table_size: int
    outer_index: int
    row_tail: float
    column_tail: float
    gap: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "table_size": self.table_size,
            "outer_index": self.outer_index,
            "row_tail": self.row_tail,
            "column_tail": self.column_tail,
            "gap": self.gap,
        }


def bennett_tails(table_size: int = 10_000, outer_index: int = 1) -> BennettTails:
    """
    Evaluate the two iterated tails of w(p_{2j-1}, p_{2k}) on a prime table.

    The inner limit is taken at the last embedded pair of the table, the
    outer index is held at `outer_index`.

    Args:
        table_size: Number of primes, at least 2 * outer_index + 2.
        outer_index: The fixed outer index.

    Returns:
        BennettTails: The row tail (near 1), the column tail (near 0) and their gap.
    """
    last = table_size // 2
    if outer_index < 1 or outer_index >= last:
        raise WeightPatternError(f"outer_index must lie in [1, {last - 1}], got {outer_index}")
    table = get_prime_table(min_count=table_size)
    log_p = lambda j: math.log(table.prime(j))
    row_tail = log_p(2 * last) / (log_p(2 * outer_index - 1) + log_p(2 * last))
    column_tail = log_p(2 * outer_index) / (log_p(2 * last - 1) + log_p(2 * outer_index))
    return BennettTails(table_size, outer_index, row_tail, column_tail, row_tail - column_tail)


def _top_singular_pair(A: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    u, s, vh = np.linalg.svd(A)
    return float(s[0]), u[:, 0], vh[0, :].conj()


def _polar_factor(G: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(G, full_matrices=False)
    return u @ vh


@dataclass
class MultiplierSearchResult:
    """
    Lower-bound sequence for the Schur multiplier norm of W on bounded matrices.

    Attributes:
        size: K, the weight matrix is K x K.
        ratios: ||W o C_t|| / ||C_t|| for t = 0, 1, ...
        best_matrix: The last iterate C_t.
    """
    size: int
    ratios: List[float] = field(default_factory=list)
    best_matrix: Optional[np.ndarray] = None

    @property
    def lower_bound(self) -> float:
        return self.ratios[-1] if self.ratios else 0.0

    def is_nondecreasing(self, slack: float = 1e-12) -> bool:
        return all(b >= a - slack for a, b in zip(self.ratios, self.ratios[1:]))


def schur_multiplier_search(size: int, iterations: int = 50, seed: int = 0,
                            weights: Optional[np.ndarray] = None) -> MultiplierSearchResult:
    """
    Alternating maximization of ||W o C|| / ||C||.

    Each step takes the top singular pair (u, v) of W o C and replaces C by
    the polar factor of W o (u v^*), which maximizes Re u^*(W o C)v over the
    unit ball; the ratio therefore never decreases.

    Args:
        size: K for the K x K embedded-pair weights.
        iterations: Number of alternating steps.
        seed: Seed of the random complex starting matrix.
        weights: Optional explicit weight matrix instead of the embedded pairs.

    Returns:
        MultiplierSearchResult: The ratio sequence and final matrix.
    """
    W = embedded_pair_weights(size, size) if weights is None else np.asarray(weights, dtype=float)
    rng = np.random.default_rng(seed)
    C = rng.standard_normal(W.shape) + 1j * rng.standard_normal(W.shape)
    C = C / np.linalg.norm(C, 2)
    result = MultiplierSearchResult(size=W.shape[0])
    for step in range(iterations + 1):
        sigma, u, v = _top_singular_pair(W * C)
        result.ratios.append(sigma / np.linalg.norm(C, 2))
        if step == iterations:
            break
        G = W * np.outer(u, v.conj())
        C = _polar_factor(G)
    result.best_matrix = C
    _logger.debug("Multiplier search K=%d: %.6f -> %.6f", size, result.ratios[0], result.ratios[-1])
    return result
