"""Actual dimension of plane systems by interpolation rank over a prime field.

Each multiple point of multiplicity m contributes one row per mixed partial
derivative of order < m, evaluated at a random point of the affine chart. The
projective dimension of the system is N - 1 - rank with N = (d+1)(d+2)/2.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from sympy import isprime

from .const import DEFAULT_JOBS, DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS, ORACLE_MAX_PRIME
from .exceptions import MalformedClassError, ModulusError
from .lattice import DivisorClass, virtual_dim
from .models import SystemSpec

_LOGGER = logging.getLogger(__name__)

Point = tuple[int, int]


@dataclass(frozen=True, slots=True)
class InterpolationProblem:
    """Degree, point multiplicities and the randomness used to place the points."""

    degree: int
    mults: tuple[int, ...]
    prime: int = DEFAULT_PRIME
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        """Validate the modulus and the system."""
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        if self.degree < 0:
            raise MalformedClassError(f"Degree must be >= 0, got {self.degree}")
        if any(m < 1 for m in self.mults):
            raise MalformedClassError(f"Point multiplicities must be >= 1, got {self.mults}")
        if not isprime(self.prime):
            raise ModulusError(f"Modulus {self.prime} is not prime")
        _check_modulus(self.prime, self.degree)
        if self.trials < 1:
            raise MalformedClassError(f"Trials must be positive, got {self.trials}")
        if self.seed < 0:
            raise MalformedClassError(f"Seed must be nonnegative, got {self.seed}")

    @classmethod
    def from_class(
        cls,
        system: DivisorClass,
        *,
        prime: int = DEFAULT_PRIME,
        trials: int = DEFAULT_TRIALS,
        seed: int = DEFAULT_SEED,
    ) -> InterpolationProblem:
        """Build a problem from (d; m_1..m_r), dropping zero multiplicities."""
        return cls(system.degree, tuple(m for m in system.mults if m), prime, trials, seed)

    @property
    def monomials(self) -> int:
        """Return N = (d+1)(d+2)/2."""
        return (self.degree + 1) * (self.degree + 2) // 2

    @property
    def conditions(self) -> int:
        """Return the number of linear conditions, sum m(m+1)/2."""
        return sum(m * (m + 1) // 2 for m in self.mults)


@dataclass(frozen=True, slots=True)
class RankResult:
    """Best rank over the trials and the dimension it gives."""

    rank: int
    adim: int
    per_trial: tuple[int, ...]
    prime: int = DEFAULT_PRIME


@dataclass(frozen=True, slots=True)
class MultiPrimeResult:
    """Results of the same problem under several moduli."""

    results: tuple[RankResult, ...]

    @property
    def agree(self) -> bool:
        """Return True when every modulus gives the same dimension."""
        return len({result.adim for result in self.results}) <= 1


def _check_modulus(prime: int, degree: int = 0) -> None:
    if prime <= degree:
        raise ModulusError(f"Modulus {prime} must exceed the degree {degree}")
    if prime >= ORACLE_MAX_PRIME:
        raise ModulusError(
            f"Modulus {prime} is too large for int64 elimination, use a prime below 2^31"
        )


def _exponents(degree: int) -> list[tuple[int, int]]:
    # by total degree, then x-power descending: 1, x, y, x^2, xy, y^2, ...
    return [(a, t - a) for t in range(degree + 1) for a in range(t, -1, -1)]


def _falling_factorials(top: int, prime: int) -> np.ndarray:
    table = np.zeros((top + 1, top + 1), dtype=np.int64)
    for n in range(top + 1):
        value = 1
        for k in range(n + 1):
            table[n, k] = value
            value = value * (n - k) % prime
    return table


def _powers(base: int, top: int, prime: int) -> np.ndarray:
    powers = np.ones(top + 1, dtype=np.int64)
    for e in range(1, top + 1):
        powers[e] = powers[e - 1] * base % prime
    return powers


def conditions_matrix(
    degree: int, points: Sequence[tuple[Point, int]], prime: int = DEFAULT_PRIME
) -> np.ndarray:
    """Return the derivative-conditions matrix mod p.

    Rows run over (point, (a, b)) with a + b <= m - 1; columns over monomials
    x^alpha y^beta of degree <= d. Entries are plain mixed partials with falling
    factorial coefficients, so d < p < 2^31 is required. Orders a + b > d
    annihilate every monomial and give zero rows.
    """
    _check_modulus(prime, degree)
    monomials = np.array(_exponents(degree), dtype=np.int64).reshape(-1, 2)
    alpha, beta = monomials[:, 0], monomials[:, 1]
    table = _falling_factorials(degree, prime)
    rows: list[np.ndarray] = []
    for (x, y), mult in points:
        x_powers = _powers(x % prime, degree, prime)
        y_powers = _powers(y % prime, degree, prime)
        for a, b in _exponents(mult - 1):
            if a + b > degree:
                rows.append(np.zeros(len(monomials), dtype=np.int64))
                continue
            live = (alpha >= a) & (beta >= b)
            row = np.zeros(len(monomials), dtype=np.int64)
            ea, eb = alpha[live], beta[live]
            coeff = table[ea, a] * table[eb, b] % prime
            coeff = coeff * x_powers[ea - a] % prime
            row[live] = coeff * y_powers[eb - b] % prime
            rows.append(row)
    if not rows:
        return np.zeros((0, len(monomials)), dtype=np.int64)
    return np.vstack(rows)


def rank_mod_p(matrix: np.ndarray, prime: int) -> int:
    """Return the rank of an integer matrix over F_p, pivoting on the first nonzero entry."""
    _check_modulus(prime)
    work = np.array(matrix, dtype=np.int64) % prime
    n_rows, n_cols = work.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.flatnonzero(work[rank:, col])
        if not nonzero.size:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        inverse = pow(int(work[rank, col]), -1, prime)
        work[rank] = work[rank] * inverse % prime
        below = work[rank + 1 :, col].copy()
        # entries stay below p < 2^31, so products stay below 2^62
        work[rank + 1 :] = (work[rank + 1 :] - np.outer(below, work[rank])) % prime
        rank += 1
    return rank


def _random_points(problem: InterpolationProblem, rng: np.random.Generator) -> list[Point]:
    points: list[Point] = []
    seen: set[Point] = set()
    while len(points) < len(problem.mults):
        x, y = (int(v) for v in rng.integers(0, problem.prime, size=2))
        if (x, y) in seen:
            continue
        seen.add((x, y))
        points.append((x, y))
    return points


def _trial_rank(problem: InterpolationProblem, seed_seq: np.random.SeedSequence) -> int:
    rng = np.random.default_rng(seed_seq)
    points = _random_points(problem, rng)
    matrix = conditions_matrix(problem.degree, list(zip(points, problem.mults, strict=True)),
                               problem.prime)
    return rank_mod_p(matrix, problem.prime)


def actual_dim(problem: InterpolationProblem, jobs: int = DEFAULT_JOBS) -> RankResult:
    """Return the actual dimension as N - 1 - (max rank over the trials).

    Each trial draws its points from its own child of the seed, so the result
    does not depend on ``jobs``.
    """
    children = np.random.SeedSequence(problem.seed).spawn(problem.trials)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            ranks = tuple(executor.map(lambda child: _trial_rank(problem, child), children))
    else:
        ranks = tuple(_trial_rank(problem, child) for child in children)

    for trial, rank in enumerate(ranks):
        _LOGGER.debug("Trial %d of (%d; %s) mod %d: rank %d",
                      trial, problem.degree, problem.mults, problem.prime, rank)
    if len(set(ranks)) > 1:
        _LOGGER.warning("Trials disagree for (%d; %s) mod %d: %s",
                        problem.degree, problem.mults, problem.prime, ranks)
    best = max(ranks)
    return RankResult(best, problem.monomials - 1 - best, ranks, problem.prime)


def actual_dim_multi(
    problem: InterpolationProblem, primes: Iterable[int], jobs: int = DEFAULT_JOBS
) -> MultiPrimeResult:
    """Run ``actual_dim`` once per modulus."""
    results = []
    for prime in primes:
        variant = InterpolationProblem(
            problem.degree, problem.mults, prime, problem.trials, problem.seed
        )
        results.append(actual_dim(variant, jobs))
    outcome = MultiPrimeResult(tuple(results))
    if not outcome.agree:
        _LOGGER.warning("Moduli disagree on (%d; %s): %s", problem.degree, problem.mults,
                        {r.prime: r.adim for r in outcome.results})
    return outcome


def dimension_pair(
    spec: SystemSpec,
    *,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> tuple[int, int]:
    """Return (vdim, adim) of a plane system; a negative degree gives adim -1."""
    cls = spec.full_class()
    vdim = virtual_dim(cls)
    if cls.degree < 0:
        return vdim, -1
    problem = InterpolationProblem.from_class(cls, prime=prime, trials=trials, seed=seed)
    return vdim, actual_dim(problem).adim
