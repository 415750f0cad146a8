"""
Dirichlet Polynomial Module - Finitely supported Dirichlet series f(s) = sum a_n n^{-s}.

Provides:
- DirichletPolynomial: immutable coefficient map n -> a_n, sorted by n
- Linear algebra and Dirichlet convolution
- Homogeneous projections P_m (Omega(n) = m)
- Half-plane calculus D, D^{-1} and radial calculus R, R^{-1}
- Twisting by characters, evaluation of the Bohr lift, slice polynomials
- H^2 norm and inner product (Parseval over coefficients)
- The linear-free decomposition F = sum z_j F_j on finite polytori

All logarithms of integers are computed as sum kappa_j log p_j.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from bohr_arith import factorize, log_integer, omega, get_prime_table

_logger = logging.getLogger(__name__)

# Unimodularity tolerance for character points
UNIMODULAR_TOL = 1e-12


class PolynomialError(ValueError):
    """Exception raised when a polynomial operation's precondition fails."""
    pass


class DirichletPolynomial:
    """
    A Dirichlet polynomial stored as a sorted map n -> a_n.

    Zero coefficients are never stored, so the zero polynomial is the
    empty map and h2_norm sums exactly the stored entries.
    """

    __slots__ = ("_items", "_lookup")

    def __init__(self, coeffs: Optional[Mapping[int, complex]] = None):
        """
        Initialize from a mapping n -> coefficient.

        Args:
            coeffs: Mapping from positive integers to complex numbers.

        Raises:
            PolynomialError: If a key is not a positive integer.
        """
        cleaned: Dict[int, complex] = {}
        for key, a in (coeffs or {}).items():
            n = int(key)
            if n != key:
                raise PolynomialError(f"Dirichlet polynomial index must be an integer, got {key!r}")
            if n < 1:
                raise PolynomialError(f"Dirichlet polynomial index must be positive, got {n}")
            a = complex(a)
            if a != 0:
                cleaned[n] = a
        self._items: Tuple[Tuple[int, complex], ...] = tuple(sorted(cleaned.items()))
        self._lookup = dict(self._items)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "DirichletPolynomial":
        """The zero polynomial."""
        return cls()

    @classmethod
    def constant(cls, c: complex) -> "DirichletPolynomial":
        """The constant polynomial c = c * 1^{-s}."""
        return cls({1: c})

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> "DirichletPolynomial":
        """The monomial c * n^{-s}."""
        return cls({n: c})

    @classmethod
    def from_coefficients(cls, indices: Iterable[int], values: Iterable[complex]) -> "DirichletPolynomial":
        """Build from parallel sequences of indices and coefficients."""
        return cls(dict(zip(indices, values)))

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def support(self) -> Tuple[int, ...]:
        """Indices with nonzero coefficient, increasing."""
        return tuple(n for n, _ in self._items)

    def items(self) -> Tuple[Tuple[int, complex], ...]:
        """Pairs (n, a_n) in increasing n."""
        return self._items

    def coefficient(self, n: int) -> complex:
        """a_n, zero off the support."""
        return self._lookup.get(n, 0j)

    def to_dict(self) -> Dict[int, complex]:
        """Copy of the coefficient map."""
        return dict(self._items)

    def is_zero(self) -> bool:
        return not self._items

    def constant_term(self) -> complex:
        """a_1 = f(+infinity)."""
        return self.coefficient(1)

    def support_dimension(self) -> int:
        """Smallest d such that supp(f) only involves p_1, ..., p_d."""
        return max((len(factorize(n)) for n in self.support), default=0)

    def degree(self) -> int:
        """Largest Omega(n) over the support (0 for the zero polynomial)."""
        return max((omega(n) for n in self.support), default=0)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self) -> str:
        if not self._items:
            return "DirichletPolynomial(0)"
        terms = " + ".join(f"({a:.6g})*{n}^-s" for n, a in self._items[:6])
        more = " + ..." if len(self._items) > 6 else ""
        return f"DirichletPolynomial({terms}{more})"

    def allclose(self, other: "DirichletPolynomial", tol: float = 1e-12) -> bool:
        """Coefficientwise comparison up to an absolute tolerance."""
        keys = set(self.support) | set(other.support)
        return all(abs(self.coefficient(n) - other.coefficient(n)) <= tol for n in keys)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: "DirichletPolynomial") -> "DirichletPolynomial":
        return add(self, other)

    def __sub__(self, other: "DirichletPolynomial") -> "DirichletPolynomial":
        return add(self, scale(other, -1.0))

    def __neg__(self) -> "DirichletPolynomial":
        return scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, DirichletPolynomial):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def map_coefficients(self, fn) -> "DirichletPolynomial":
        """Apply fn(n, a_n) to every stored coefficient."""
        return DirichletPolynomial({n: fn(n, a) for n, a in self._items})


@dataclass(frozen=True)
class CharacterPoint:
    """
    A point of the finite polytorus T^d, values chi(p_1), ..., chi(p_d).

    Attributes:
        values: Unimodular complex numbers, one per prime.
    """
    values: Tuple[complex, ...]

    def __post_init__(self):
        for v in self.values:
            if abs(abs(v) - 1.0) > UNIMODULAR_TOL:
                raise PolynomialError(f"Character values must be unimodular, got {v}")

    @property
    def dimension(self) -> int:
        return len(self.values)

    @classmethod
    def ones(cls, d: int) -> "CharacterPoint":
        """The identity character on T^d."""
        return cls(tuple(1.0 + 0j for _ in range(d)))

    @classmethod
    def from_angles(cls, angles: Sequence[float]) -> "CharacterPoint":
        """Character with chi(p_j) = exp(i * angles[j])."""
        return cls(tuple(cmath.exp(1j * float(t)) for t in angles))

    @classmethod
    def random(cls, d: int, rng: np.random.Generator) -> "CharacterPoint":
        """Uniform random point of T^d drawn from rng."""
        return cls.from_angles(2.0 * np.pi * rng.random(d))

    def power(self, kappa: Sequence[int]) -> complex:
        """chi^kappa = prod chi_j^kappa_j."""
        if len(kappa) > len(self.values):
            raise PolynomialError(
                f"Character of dimension {len(self.values)} cannot evaluate multi-index of length {len(kappa)}"
            )
        value = 1.0 + 0j
        for v, k in zip(self.values, kappa):
            if k:
                value *= v ** k
        return value


@dataclass(frozen=True)
class SlicePolynomial:
    """
    One-variable polynomial F_z(w) = sum_m P_mF(z) w^m.

    Attributes:
        coeffs: c_0, ..., c_M.
    """
    coeffs: Tuple[complex, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, w: complex) -> complex:
        value = 0j
        for c in reversed(self.coeffs):
            value = value * w + c
        return value

    def values_on_circle(self, grid: int) -> np.ndarray:
        """Values at w = exp(2 pi i k / grid), k = 0, ..., grid - 1."""
        w = np.exp(2j * np.pi * np.arange(grid) / grid)
        return np.polyval(np.asarray(self.coeffs[::-1], dtype=complex), w)


def _check_point(f: DirichletPolynomial, z: CharacterPoint) -> None:
    need = f.support_dimension()
    if z.dimension < need:
        raise PolynomialError(f"Point of dimension {z.dimension} does not cover support dimension {need}")


# ----------------------------------------------------------------------
# Linear algebra and products
# ----------------------------------------------------------------------

def add(f: DirichletPolynomial, g: DirichletPolynomial) -> DirichletPolynomial:
    """Coefficientwise sum f + g."""
    total = f.to_dict()
    for n, b in g.items():
        total[n] = total.get(n, 0j) + b
    return DirichletPolynomial(total)


def scale(f: DirichletPolynomial, c: complex) -> DirichletPolynomial:
    """Scalar multiple c * f."""
    return DirichletPolynomial({n: c * a for n, a in f.items()})


def multiply(f: DirichletPolynomial, g: DirichletPolynomial) -> DirichletPolynomial:
    """
    Dirichlet convolution (fg)_n = sum_{d | n} f_d g_{n/d}.

    Args:
        f: First factor.
        g: Second factor.

    Returns:
        DirichletPolynomial: The product series.
    """
    product: Dict[int, complex] = {}
    for m, a in f.items():
        for n, b in g.items():
            product[m * n] = product.get(m * n, 0j) + a * b
    return DirichletPolynomial(product)


def homogeneous_project(f: DirichletPolynomial, m: int) -> DirichletPolynomial:
    """P_m f: restriction of the coefficients to {n : Omega(n) = m}."""
    return DirichletPolynomial({n: a for n, a in f.items() if omega(n) == m})


def homogeneous_levels(f: DirichletPolynomial) -> List[int]:
    """Levels m with P_m f nonzero, increasing."""
    return sorted({omega(n) for n in f.support})


# ----------------------------------------------------------------------
# Calculus
# ----------------------------------------------------------------------

def derivative_halfplane(f: DirichletPolynomial) -> DirichletPolynomial:
    """Df = f' : a_n -> -a_n log n (the constant term is killed)."""
    return DirichletPolynomial({n: -a * log_integer(n) for n, a in f.items() if n > 1})


def primitive_halfplane(f: DirichletPolynomial) -> DirichletPolynomial:
    """
    D^{-1} f: a_n -> -a_n / log n, with constant term 0.

    Raises:
        PolynomialError: If f has a nonzero constant term.
    """
    if f.constant_term() != 0:
        raise PolynomialError("The half-plane primitive requires a zero constant term")
    return DirichletPolynomial({n: -a / log_integer(n) for n, a in f.items()})


def radial_derivative(f: DirichletPolynomial) -> DirichletPolynomial:
    """Rf: a_n -> Omega(n) a_n."""
    return DirichletPolynomial({n: omega(n) * a for n, a in f.items() if n > 1})


def radial_primitive(f: DirichletPolynomial) -> DirichletPolynomial:
    """
    R^{-1} f: a_n -> a_n / Omega(n), with constant term 0.

    Raises:
        PolynomialError: If f has a nonzero constant term.
    """
    if f.constant_term() != 0:
        raise PolynomialError("The radial primitive requires a zero constant term")
    return DirichletPolynomial({n: a / omega(n) for n, a in f.items()})


# ----------------------------------------------------------------------
# Characters, evaluation, slices
# ----------------------------------------------------------------------

def twist(f: DirichletPolynomial, chi: CharacterPoint) -> DirichletPolynomial:
    """f_chi: a_n -> a_n chi^{kappa(n)}."""
    _check_point(f, chi)
    return DirichletPolynomial({n: a * chi.power(factorize(n)) for n, a in f.items()})


def evaluate(f: DirichletPolynomial, z: CharacterPoint) -> complex:
    """Value of the Bohr lift, sum a_n z^{kappa(n)}."""
    _check_point(f, z)
    value = 0j
    for n, a in f.items():
        value += a * z.power(factorize(n))
    return value


def slice_polynomial(f: DirichletPolynomial, z: CharacterPoint) -> SlicePolynomial:
    """
    The slice F_z(w) = F(zw), with c_m = P_m F(z).

    Args:
        f: The polynomial.
        z: A point covering supp(f).

    Returns:
        SlicePolynomial: Coefficients c_0, ..., c_M with M = max Omega over supp(f).
    """
    _check_point(f, z)
    coeffs = [0j] * (f.degree() + 1)
    for n, a in f.items():
        coeffs[omega(n)] += a * z.power(factorize(n))
    return SlicePolynomial(tuple(coeffs))


def exponent_matrix(f: DirichletPolynomial, d: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Dense multi-index data for vectorized evaluation on T^d.

    Args:
        f: The polynomial.
        d: Torus dimension; defaults to the support dimension.

    Returns:
        tuple: (K, a, levels) with K the (terms x d) exponent matrix,
            a the coefficient vector and levels the Omega of each term.
    """
    d = f.support_dimension() if d is None else d
    if d < f.support_dimension():
        raise PolynomialError(f"Dimension {d} does not cover support dimension {f.support_dimension()}")
    exps = np.zeros((len(f), d), dtype=np.int64)
    coeffs = np.zeros(len(f), dtype=complex)
    for row, (n, a) in enumerate(f.items()):
        kappa = factorize(n)
        exps[row, :len(kappa)] = kappa
        coeffs[row] = a
    return exps, coeffs, exps.sum(axis=1)


# ----------------------------------------------------------------------
# Hilbert space structure
# ----------------------------------------------------------------------

def h2_norm(f: DirichletPolynomial) -> float:
    """||f||_{H^2} = (sum |a_n|^2)^{1/2}."""
    return math.sqrt(math.fsum(abs(a) ** 2 for _, a in f.items()))


def inner_product(f: DirichletPolynomial, g: DirichletPolynomial) -> complex:
    """<f, g> = sum a_n conj(b_n)."""
    value = 0j
    for n, a in f.items():
        b = g.coefficient(n)
        if b != 0:
            value += a * b.conjugate()
    return value


@dataclass(frozen=True)
class LinearFreeDecomposition:
    """
    Result of F = sum_j z_j F_j on T^d.

    Attributes:
        parts: F_1, ..., F_d.
        cost_bound: sum_j 1 * ||F_j||, an upper bound for the weak-product norm.
        sqrt_d_bound: sqrt(d) ||F||, which dominates cost_bound.
    """
    parts: Tuple[DirichletPolynomial, ...]
    cost_bound: float
    sqrt_d_bound: float


def linear_free_decompose(F: DirichletPolynomial, d: int) -> LinearFreeDecomposition:
    """
    Split F into parts F_j with F = sum_j p_j^{-s} F_j and disjoint supports.

    The monomial n goes to the part of its smallest prime divisor p_j, divided by p_j.

    Args:
        F: Polynomial with no constant or linear part, supported on p_1..p_d.
        d: Torus dimension.

    Returns:
        LinearFreeDecomposition: The parts and the weak-product cost bounds.

    Raises:
        PolynomialError: On a constant term, a prime in the support, or a
            prime beyond p_d.
    """
    if F.constant_term() != 0:
        raise PolynomialError("linear_free_decompose requires a zero constant term")
    if F.support_dimension() > d:
        raise PolynomialError(f"Support involves primes beyond p_{d}")
    table = get_prime_table()
    parts: List[Dict[int, complex]] = [{} for _ in range(d)]
    for n, a in F.items():
        if omega(n) == 1:
            raise PolynomialError(f"linear_free_decompose requires no linear part, found {n}^-s")
        kappa = factorize(n)
        j = next(i for i, k in enumerate(kappa) if k)
        parts[j][n // table.primes[j]] = a
    polys = tuple(DirichletPolynomial(p) for p in parts)
    cost = math.fsum(h2_norm(p) for p in polys)
    return LinearFreeDecomposition(parts=polys, cost_bound=cost, sqrt_d_bound=math.sqrt(d) * h2_norm(F))


def random_polynomial(rng: np.random.Generator, support: Iterable[int], density: float = 1.0,
                      real: bool = False) -> DirichletPolynomial:
    """
    Random polynomial with standard Gaussian coefficients on a subset of `support`.

    Args:
        rng: Random generator.
        support: Candidate indices.
        density: Probability that a candidate index is kept.
        real: Real coefficients if True, complex otherwise.

    Returns:
        DirichletPolynomial: The random polynomial (never zero unless support is empty).
    """
    support = list(support)
    coeffs: Dict[int, complex] = {}
    for n in support:
        if density < 1.0 and rng.random() >= density:
            continue
        a = rng.standard_normal()
        if not real:
            a = a + 1j * rng.standard_normal()
        coeffs[n] = a
    if not coeffs and support:
        coeffs[support[0]] = 1.0
    return DirichletPolynomial(coeffs)
