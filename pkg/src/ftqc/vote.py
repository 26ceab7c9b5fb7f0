"""Majority-vote reliability for a binary computation repeated k times.

With per-run failure bound p' < 1/2, repeating the run an odd number of
times and taking the majority answer succeeds with probability

    sum_{j = (k+1)/2}^{k} C(k, j) (1 - p')**j p'**(k - j)

Small k (up to 64, so every odd k through 63) is evaluated in exact
rational arithmetic over the binary value of p' and converted to float
once at the end; larger k uses the regularized incomplete-beta tail of
the binomial distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.stats import binom as _binom

from .errors import (
    BadProbabilityError,
    CapExceededError,
    DomainError,
    EvenRepetitionsError,
    InfeasibleError,
)

# Largest k handled by the exact big-integer path.
EXACT_K_LIMIT = 64

# Ascending-search ceiling for min_repetitions.
REPETITION_CAP = 10 ** 5


def _check_repetitions(k: int) -> int:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"repetitions must be a positive integer, got {k!r}")
    if k % 2 == 0:
        raise EvenRepetitionsError(f"repetitions must be odd, got {k}")
    return k


def _majority_success_exact(p_prime: float, k: int) -> float:
    # exact dyadic arithmetic over the binary value of p_prime
    frac = Fraction(p_prime)
    num, den = frac.numerator, frac.denominator
    good = den - num
    m = (k + 1) // 2
    total = sum(
        math.comb(k, j) * good ** j * num ** (k - j) for j in range(m, k + 1)
    )
    return float(Fraction(total, den ** k))


def majority_success(p_prime: float, k: int) -> float:
    """Probability that the majority of k runs is correct.

    :param p_prime: per-run failure probability, in [0, 1].
    :param k: odd positive repetition count, at most 1e5 supported.
    """
    p = float(p_prime)
    if not (0.0 <= p <= 1.0):
        raise BadProbabilityError(f"p_prime = {p_prime} outside [0, 1]")
    k = _check_repetitions(k)
    if k <= EXACT_K_LIMIT:
        return _majority_success_exact(p, k)
    m = (k + 1) // 2
    val = float(_binom.sf(m - 1, k, 1.0 - p))
    return min(1.0, max(0.0, val))


def min_repetitions(p_prime: float, target: float) -> int:
    """Smallest odd k whose majority success reaches the target.

    Requires p' < 1/2; at or above one half more repetitions never help.
    """
    p = float(p_prime)
    if p < 0.0 or p > 1.0:
        raise BadProbabilityError(f"p_prime = {p_prime} outside [0, 1]")
    if p >= 0.5:
        raise InfeasibleError(
            f"p_prime = {p_prime} is not below 1/2; majority voting cannot converge"
        )
    t = float(target)
    if not (0.0 < t < 1.0):
        raise BadProbabilityError(f"target = {target} outside (0, 1)")
    k = 1
    while k <= REPETITION_CAP:
        if majority_success(p, k) >= t:
            return k
        k += 2
    raise CapExceededError(
        f"no odd k <= {REPETITION_CAP} reaches target {target} at p_prime {p_prime}"
    )


@dataclass(frozen=True)
class VotePlan:
    """A checked (p', k, success) triple; construction revalidates the math."""

    per_run_failure: float
    repetitions: int
    success_probability: float

    def __post_init__(self):
        p = float(self.per_run_failure)
        if not (0.0 <= p < 1.0):
            raise BadProbabilityError(f"per_run_failure = {p} outside [0, 1)")
        k = _check_repetitions(self.repetitions)
        s = float(self.success_probability)
        if not (0.0 <= s <= 1.0):
            raise BadProbabilityError(f"success_probability = {s} outside [0, 1]")
        expected = majority_success(p, k)
        if abs(s - expected) > 1e-12:
            raise DomainError(
                f"success_probability {s:.15g} inconsistent with the binomial "
                f"formula value {expected:.15g} (tolerance 1e-12)"
            )
        object.__setattr__(self, "per_run_failure", p)
        object.__setattr__(self, "repetitions", k)
        object.__setattr__(self, "success_probability", s)
