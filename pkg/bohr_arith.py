"""
Bohr Arithmetic Module - Exact integer arithmetic behind the Bohr correspondence.
Provides the prime table, factorization into multi-indices, divisor structure
and the lift/drop maps between positive integers and multi-indices.

Conventions:
    Prime indices are 1-based, p_1 = 2, p_2 = 3, ...
    A multi-index is a tuple of non-negative exponents with trailing zeros trimmed,
    so the multi-index of 1 is the empty tuple.

Thread safety:
    PrimeTable instances are immutable. The shared table returned by
    get_prime_table() is created and grown under a lock.
"""

import bisect
import itertools
import logging
import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

_logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]

# Enough primes to factor every integer the experiments touch (n <= ~10^6)
# without regrowing, and to evaluate the Bennett tails at table size 10^4.
DEFAULT_TABLE_SIZE = 80_000


class ArithmeticDomainError(ValueError):
    """Exception raised when an integer lies outside the domain of an operation."""
    pass


@dataclass(frozen=True)
class PrimeTable:
    """
    Immutable table of the first `capacity` primes in increasing order.

    Attributes:
        primes: The primes p_1 < p_2 < ... as a tuple.
    """
    primes: Tuple[int, ...]
    _index: Dict[int, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.primes or self.primes[0] != 2:
            raise ArithmeticDomainError("A prime table must start at p_1 = 2")
        self._index.update({p: j for j, p in enumerate(self.primes, start=1)})

    @property
    def capacity(self) -> int:
        """Number of primes held by the table."""
        return len(self.primes)

    @property
    def largest(self) -> int:
        """The largest prime in the table."""
        return self.primes[-1]

    def prime(self, j: int) -> int:
        """
        Get the j-th prime, 1-based.

        Args:
            j: Prime index, 1 <= j <= capacity.

        Returns:
            int: p_j.
        """
        if j < 1 or j > self.capacity:
            raise ArithmeticDomainError(f"Prime index {j} outside table of size {self.capacity}")
        return self.primes[j - 1]

    def index_of(self, p: int) -> int:
        """1-based index of the prime p, or 0 if p is not in the table."""
        return self._index.get(p, 0)

    def primes_upto(self, bound: int) -> Tuple[int, ...]:
        """All primes in the table that are <= bound."""
        return self.primes[:bisect.bisect_right(self.primes, bound)]

    def __len__(self) -> int:
        return self.capacity


def _sieve_below(limit: int) -> np.ndarray:
    """Primes strictly below `limit` by the sieve of Eratosthenes."""
    is_prime = np.ones(max(limit, 2), dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime)


def _upper_bound_for_count(count: int) -> int:
    """Rosser's bound p_n < n(log n + log log n) for n >= 6."""
    if count < 6:
        return 15
    return int(count * (math.log(count) + math.log(math.log(count)))) + 1


def sieve_primes(count: int) -> PrimeTable:
    """
    Build a table of the first `count` primes.

    Args:
        count: Number of primes, >= 1.

    Returns:
        PrimeTable: The first `count` primes in increasing order.

    Raises:
        ArithmeticDomainError: If count < 1.
    """
    if count < 1:
        raise ArithmeticDomainError(f"Prime count must be positive, got {count}")
    found = _sieve_below(_upper_bound_for_count(count) + 1)
    return PrimeTable(primes=tuple(int(p) for p in found[:count]))


# Shared table, grown on demand
_table = None
_table_lock = threading.Lock()


def get_prime_table(min_count: int = DEFAULT_TABLE_SIZE, covering: int = 0) -> PrimeTable:
    """
    Get the shared prime table, growing it if necessary.

    Args:
        min_count: Minimum number of primes the table must hold.
        covering: The table must also contain every prime <= covering.

    Returns:
        PrimeTable: A table satisfying both requirements.
    """
    global _table
    table = _table
    if table is not None and table.capacity >= min_count and table.largest >= covering:
        return table
    with _table_lock:
        table = _table
        if table is None or table.capacity < min_count or table.largest < covering:
            count = max(min_count, table.capacity if table is not None else 0)
            while _upper_bound_for_count(count) < covering:
                count *= 2
            new_table = sieve_primes(count)
            while new_table.largest < covering:
                count *= 2
                new_table = sieve_primes(count)
            _logger.debug("Prime table grown to %d primes (largest %d)", new_table.capacity, new_table.largest)
            _table = new_table
            table = new_table
    return table


def _require_positive(n: int) -> None:
    if n < 1:
        raise ArithmeticDomainError(f"Expected a positive integer, got {n}")


@lru_cache(maxsize=None)
def factorize(n: int) -> MultiIndex:
    """
    Factorize n into its multi-index kappa(n), n = prod p_j^kappa_j.

    Trial division runs against the shared prime table; a leftover cofactor
    larger than sqrt(n) is prime and is located in the table.

    Args:
        n: A positive integer.

    Returns:
        MultiIndex: Exponent tuple, trailing zeros trimmed; () for n = 1.

    Raises:
        ArithmeticDomainError: If n < 1.
    """
    _require_positive(n)
    if n == 1:
        return ()
    table = get_prime_table()
    exponents: List[int] = []
    rest = n
    for p in table.primes:
        if p * p > rest:
            break
        k = 0
        while rest % p == 0:
            rest //= p
            k += 1
        exponents.append(k)
    if rest > 1:
        if rest > table.largest:
            table = get_prime_table(covering=rest)
        j = table.index_of(rest)
        if j == 0:
            raise ArithmeticDomainError(f"Cofactor {rest} of {n} is beyond the prime table")
        exponents.extend([0] * (j - len(exponents)))
        exponents[j - 1] += 1
    while exponents and exponents[-1] == 0:
        exponents.pop()
    return tuple(exponents)


def omega(n: int) -> int:
    """Omega(n): number of prime factors of n counted with multiplicity."""
    return sum(factorize(n))


def divisor_count(n: int) -> int:
    """d(n) = prod (kappa_j + 1)."""
    return math.prod(k + 1 for k in factorize(n))


def log_integer(n: int) -> float:
    """
    log n computed as sum kappa_j log p_j from the factorization.

    The terms log p_j are shared by every n, so log(mn) and log m + log n
    agree to the last rounding.
    """
    kappa = factorize(n)
    if not kappa:
        return 0.0
    table = get_prime_table()
    return math.fsum(k * math.log(table.primes[j]) for j, k in enumerate(kappa) if k)


def divisors(n: int) -> List[int]:
    """All divisors of n in increasing order, enumerated over the lattice of kappa(n)."""
    kappa = factorize(n)
    table = get_prime_table()
    found = []
    for exps in itertools.product(*(range(k + 1) for k in kappa)):
        found.append(math.prod(table.primes[j] ** e for j, e in enumerate(exps)))
    return sorted(found)


@lru_cache(maxsize=None)
def divisor_pairs(n: int, min_factor: int = 1) -> Tuple[Tuple[int, int], ...]:
    """
    Ordered factorizations n = m * (n/m) with both factors >= min_factor.

    Args:
        n: A positive integer.
        min_factor: 1 for all factorizations, 2 to exclude the trivial ones.

    Returns:
        tuple: Pairs (m, n // m) sorted by m.
    """
    _require_positive(n)
    if min_factor not in (1, 2):
        raise ArithmeticDomainError(f"min_factor must be 1 or 2, got {min_factor}")
    return tuple((m, n // m) for m in divisors(n) if m >= min_factor and n // m >= min_factor)


def bohr_lift(n: int) -> MultiIndex:
    """The Bohr lift n -> kappa(n)."""
    return factorize(n)


def bohr_drop(kappa: Sequence[int]) -> int:
    """
    Inverse of the Bohr lift: kappa -> prod p_j^kappa_j.

    Args:
        kappa: Finite sequence of non-negative exponents.

    Returns:
        int: The positive integer with multi-index kappa.

    Raises:
        ArithmeticDomainError: If an exponent is negative.
    """
    if any(k < 0 for k in kappa):
        raise ArithmeticDomainError(f"Multi-index entries must be non-negative: {tuple(kappa)}")
    table = get_prime_table(min_count=len(kappa))
    return math.prod(table.primes[j] ** k for j, k in enumerate(kappa) if k)


def trim(kappa: Sequence[int]) -> MultiIndex:
    """Normalize a multi-index by trimming trailing zeros."""
    exps = list(kappa)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def is_prime(n: int) -> bool:
    """Primality by trial division, used to verify prime tables."""
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))
