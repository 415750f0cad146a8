"""
Hardy MC Module - Monte Carlo and quadrature estimation of H^p norms on the polytorus.

A Dirichlet polynomial supported on p_1, ..., p_d is integrated over T^d
through its Bohr lift. Points are angle vectors theta = 2 pi u with u drawn
from counter-based Philox streams; chunk i of a run with seed s always uses
the substream SeedSequence([s, stream, i]), and chunk results are reduced in
chunk order, so estimates do not depend on the number of worker threads.

Features:
- TorusSampler: reproducible uniform points on T^d
- McEstimate: mean / standard error / sample count, delta-method roots
- mc_hp_norm, slice_hp_norm, nested_hp_norm
- helson_lower, hardy_homog_sum, hardy_inequality_1d
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from bohr_arith import divisor_count
from dirichlet_poly import (
    CharacterPoint,
    DirichletPolynomial,
    exponent_matrix,
    homogeneous_levels,
    homogeneous_project,
    slice_polynomial,
)

_logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1_000_000
DEFAULT_CHUNK = 1 << 15
GRID_OVERSAMPLING = 8


class EstimationError(ValueError):
    """Exception raised for invalid estimator parameters."""
    pass


@dataclass(frozen=True)
class TorusSampler:
    """
    Uniform points on T^d from a seeded counter-based generator.

    Attributes:
        dimension: d.
        seed: Base seed; identical seeds give identical streams.
        stream: Extra key separating independent estimators under one seed.
        chunk_size: Points per chunk.
    """
    dimension: int
    seed: int = 0
    stream: int = 0
    chunk_size: int = DEFAULT_CHUNK

    def generator(self, counter: int) -> np.random.Generator:
        """Generator for chunk number `counter`."""
        return np.random.Generator(np.random.Philox(np.random.SeedSequence([self.seed, self.stream, counter])))

    def angles(self, counter: int, size: Optional[int] = None) -> np.ndarray:
        """
        Angles of chunk `counter`, shape (size, dimension), in [0, 2 pi).
        """
        size = self.chunk_size if size is None else size
        return 2.0 * math.pi * self.generator(counter).random((size, self.dimension))

    def points(self, counter: int, size: Optional[int] = None) -> np.ndarray:
        """Chunk points as complex unimodular numbers z_j = exp(i theta_j)."""
        return np.exp(1j * self.angles(counter, size))

    def chunk_sizes(self, samples: int) -> List[int]:
        full, rest = divmod(samples, self.chunk_size)
        return [self.chunk_size] * full + ([rest] if rest else [])


@dataclass(frozen=True)
class McEstimate:
    """
    A Monte Carlo estimate.

    Attributes:
        mean: The estimate.
        stderr: Standard error (sample standard deviation / sqrt(samples),
            propagated through roots by the delta method).
        samples: Number of samples, >= 2.
        seed: Seed of the run, if any.
    """
    mean: float
    stderr: float
    samples: int
    seed: Optional[int] = None

    def scaled(self, factor: float) -> "McEstimate":
        return McEstimate(self.mean * factor, self.stderr * abs(factor), self.samples, self.seed)

    @staticmethod
    def combine_sum(estimates: Sequence["McEstimate"]) -> "McEstimate":
        """Sum of independent estimates, stderrs added in quadrature."""
        if not estimates:
            raise EstimationError("Nothing to combine")
        return McEstimate(
            mean=math.fsum(e.mean for e in estimates),
            stderr=math.sqrt(math.fsum(e.stderr ** 2 for e in estimates)),
            samples=min(e.samples for e in estimates),
            seed=estimates[0].seed,
        )

    def upper(self, sigmas: float = 3.0) -> float:
        return self.mean + sigmas * self.stderr

    def agrees_with(self, value: float, sigmas: float = 3.0, other_stderr: float = 0.0) -> bool:
        """|mean - value| <= sigmas * combined stderr (exact match when both stderrs vanish)."""
        band = sigmas * math.hypot(self.stderr, other_stderr)
        return abs(self.mean - value) <= band + 1e-12 * max(1.0, abs(value))

    def to_dict(self) -> Dict:
        return {"mean": self.mean, "stderr": self.stderr, "samples": self.samples, "seed": self.seed}


# ============================================================================
# CHUNKED REDUCTION
# ============================================================================

@dataclass(frozen=True)
class _ChunkMoments:
    count: int
    mean: float
    m2: float


def _moments(values: np.ndarray) -> _ChunkMoments:
    mean = float(np.mean(values))
    return _ChunkMoments(values.size, mean, float(np.sum((values - mean) ** 2)))


def _merge(a: _ChunkMoments, b: _ChunkMoments) -> _ChunkMoments:
    count = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * b.count / count
    return _ChunkMoments(count, mean, a.m2 + b.m2 + delta * delta * a.count * b.count / count)


def _sample_mean(sampler: TorusSampler, samples: int, integrand: Callable[[np.ndarray], np.ndarray],
                 workers: int = 1) -> Tuple[float, float]:
    """
    Mean and standard error of integrand over `samples` uniform points.

    The integrand maps an (n, d) angle array to n real values.
    """
    sizes = sampler.chunk_sizes(samples)

    def run(counter: int) -> _ChunkMoments:
        return _moments(integrand(sampler.angles(counter, sizes[counter])))

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            chunks = list(executor.map(run, range(len(sizes))))
    else:
        chunks = [run(counter) for counter in range(len(sizes))]

    total = chunks[0]
    for chunk in chunks[1:]:
        total = _merge(total, chunk)
    variance = total.m2 / (total.count - 1)
    _logger.debug("Reduced %d chunks (%d samples), mean %.6g", len(chunks), total.count, total.mean)
    return total.mean, math.sqrt(max(variance, 0.0) / total.count)


def _root_estimate(mean: float, stderr: float, p: float, samples: int, seed: Optional[int]) -> McEstimate:
    """p-th root of a mean, stderr by the delta method."""
    if mean <= 0.0:
        return McEstimate(0.0, 0.0, samples, seed)
    value = mean ** (1.0 / p)
    return McEstimate(value, value * stderr / (p * mean), samples, seed)


def _check_parameters(p: float, samples: int) -> None:
    if not p > 0:
        raise EstimationError(f"Exponent p must be positive, got {p}")
    if samples < 2:
        raise EstimationError(f"At least 2 samples are required, got {samples}")


# ============================================================================
# NORMS
# ============================================================================

def mc_hp_norm(F: DirichletPolynomial, p: float, samples: int = DEFAULT_SAMPLES, seed: int = 0,
               workers: int = 1, stream: int = 0) -> McEstimate:
    """
    Monte Carlo estimate of ||F||_{H^p} = (E |F(z)|^p)^{1/p} over T^d.

    Args:
        F: The polynomial; d is its support dimension.
        p: Exponent > 0.
        samples: Number of points, >= 2.
        seed: Base seed.
        workers: Threads used for chunk evaluation.
        stream: Extra stream key for independent estimators under one seed.

    Returns:
        McEstimate: Norm estimate; exact with zero stderr when F has at most one term.
    """
    _check_parameters(p, samples)
    if F.is_zero():
        return McEstimate(0.0, 0.0, samples, seed)
    if len(F) == 1:
        return McEstimate(abs(F.items()[0][1]), 0.0, samples, seed)

    K, a, _ = exponent_matrix(F)
    K = K.astype(float)
    sampler = TorusSampler(dimension=K.shape[1], seed=seed, stream=stream)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return np.abs(np.exp(1j * (theta @ K.T)) @ a) ** p

    mean, stderr = _sample_mean(sampler, samples, integrand, workers)
    return _root_estimate(mean, stderr, p, samples, seed)


def _check_grid(degree: int, grid: int) -> None:
    if grid < GRID_OVERSAMPLING * (degree + 1):
        raise EstimationError(f"Grid {grid} is below {GRID_OVERSAMPLING} * (degree + 1) = {GRID_OVERSAMPLING * (degree + 1)}")


def slice_hp_norm(F: DirichletPolynomial, p: float, z: CharacterPoint, grid: Optional[int] = None) -> float:
    """
    ||F_z||_{H^p(T)} by the uniform rule on `grid` points of the circle.

    Args:
        F: The polynomial.
        p: Exponent > 0.
        z: Point covering the support of F.
        grid: Number of nodes, >= 8 * (degree + 1); defaults to that bound.

    Returns:
        float: ((1/grid) sum |F_z(w_k)|^p)^{1/p}.
    """
    if not p > 0:
        raise EstimationError(f"Exponent p must be positive, got {p}")
    sliced = slice_polynomial(F, z)
    grid = GRID_OVERSAMPLING * (sliced.degree + 1) if grid is None else grid
    _check_grid(sliced.degree, grid)
    values = np.abs(sliced.values_on_circle(grid)) ** p
    return float(np.mean(values) ** (1.0 / p))


def nested_hp_norm(F: DirichletPolynomial, p: float, samples: int = DEFAULT_SAMPLES,
                   grid: Optional[int] = None, seed: int = 0, workers: int = 1,
                   stream: int = 0) -> McEstimate:
    """
    ||F||_{H^p} as (E_z ||F_z||^p_{H^p(T)})^{1/p}, Monte Carlo over z.

    Slice coefficients c_m(z) = P_mF(z) are evaluated for a whole chunk of
    points at once and the circle rule is applied row by row.
    By default the torus points are those of mc_hp_norm under the same seed.

    Returns:
        McEstimate: Norm estimate with delta-method stderr.
    """
    _check_parameters(p, samples)
    if F.is_zero():
        return McEstimate(0.0, 0.0, samples, seed)
    degree = F.degree()
    grid = GRID_OVERSAMPLING * (degree + 1) if grid is None else grid
    _check_grid(degree, grid)
    d = F.support_dimension()
    if d == 0:
        return McEstimate(abs(F.constant_term()), 0.0, samples, seed)

    K, a, levels = exponent_matrix(F, d)
    K = K.astype(float)
    level_map = np.zeros((len(a), degree + 1), dtype=complex)
    level_map[np.arange(len(a)), levels] = a
    circle = np.exp(2j * math.pi * np.outer(np.arange(degree + 1), np.arange(grid)) / grid)
    sampler = TorusSampler(dimension=d, seed=seed, stream=stream)

    def integrand(theta: np.ndarray) -> np.ndarray:
        slice_coeffs = np.exp(1j * (theta @ K.T)) @ level_map
        return np.mean(np.abs(slice_coeffs @ circle) ** p, axis=1)

    mean, stderr = _sample_mean(sampler, samples, integrand, workers)
    return _root_estimate(mean, stderr, p, samples, seed)


# ============================================================================
# INEQUALITIES
# ============================================================================

def helson_lower(f: DirichletPolynomial) -> float:
    """(sum |a_n|^2 / d(n))^{1/2}, a lower bound for ||f||_{H^1}."""
    return math.sqrt(math.fsum(abs(a) ** 2 / divisor_count(n) for n, a in f.items()))


def hardy_homog_sum(f: DirichletPolynomial, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                    workers: int = 1) -> McEstimate:
    """
    sum_m ||P_m f||_{H^1} / (m + 1) over the nonempty homogeneity levels.

    Each level is estimated on its own stream; stderrs combine in quadrature.
    """
    if f.is_zero():
        return McEstimate(0.0, 0.0, samples, seed)
    parts = []
    for m in homogeneous_levels(f):
        part = mc_hp_norm(homogeneous_project(f, m), 1.0, samples, seed, workers, stream=100 + m)
        parts.append(part.scaled(1.0 / (m + 1)))
    return McEstimate.combine_sum(parts)


@dataclass(frozen=True)
class HardyCheck:
    """
    Both sides of sum |b_m| / (m + 1) <= pi ||sum b_m w^m||_{H^1(T)}.
    """
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> Dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def hardy_inequality_1d(coeffs: Iterable[complex], grid: Optional[int] = None) -> HardyCheck:
    """
    One-variable Hardy inequality for the polynomial sum b_m w^m.

    Args:
        coeffs: b_0, ..., b_M.
        grid: Circle nodes, >= 8 * (M + 1); defaults to that bound.

    Returns:
        HardyCheck: lhs = sum |b_m|/(m+1), rhs = pi * H^1 norm by the uniform rule.
    """
    b = np.asarray(list(coeffs), dtype=complex)
    if b.size == 0:
        return HardyCheck(0.0, 0.0)
    grid = GRID_OVERSAMPLING * b.size if grid is None else grid
    _check_grid(b.size - 1, grid)
    w = np.exp(2j * math.pi * np.arange(grid) / grid)
    h1 = float(np.mean(np.abs(np.polyval(b[::-1], w))))
    lhs = math.fsum(abs(c) / (m + 1) for m, c in enumerate(b))
    return HardyCheck(lhs, math.pi * h1)
