"""
Matroid Invariants

Valuative invariants of matroids: Tutte and characteristic polynomials,
beta invariants, CSM weights, the rank-jump G-invariant, the unique-basis
character and the volume polynomial.
"""

import logging
from collections import Counter
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Literal

from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from engines.services.algebra import (
    BI_RING,
    T_GEN,
    UNI_RING,
    X_GEN,
    Y_GEN,
    FormalSum,
    format_set,
    rational,
    sorted_labels,
    subsets,
)
from engines.services.matroid import Matroid
from engines.services.osp import OrderedSetPartition

logger = logging.getLogger(__name__)

BetaConvention = Literal["crapo", "paper"]


def tutte(matroid: Matroid) -> PolyElement:
    """
    Tutte polynomial by the corank-nullity expansion.

    T_M(x, y) = sum over A of (x-1)^{r(M) - r(A)} (y-1)^{|A| - r(A)}
    """
    full = matroid.rank()
    total = BI_RING.zero
    for subset in subsets(matroid.ground):
        r = matroid.rank(subset)
        total += (X_GEN - 1) ** (full - r) * (Y_GEN - 1) ** (len(subset) - r)
    return total


def mobius_on_flats(matroid: Matroid) -> dict[frozenset[str], int]:
    """mu(bottom, F) for every flat F, by the defining recursion."""
    values: dict[frozenset[str], int] = {}
    for flat in matroid.flats:
        below = [g for g in values if g < flat]
        values[flat] = 1 if not below else -sum(values[g] for g in below)
    return values


def char_poly(matroid: Matroid) -> PolyElement:
    """chi_M(t) = sum over flats F of mu(bottom, F) t^{r(M) - r(F)}; zero with a loop."""
    if matroid.loops():
        return UNI_RING.zero
    full = matroid.rank()
    total = UNI_RING.zero
    for flat, mu in mobius_on_flats(matroid).items():
        total += mu * T_GEN ** (full - matroid.rank(flat))
    return total


def reduced_char(matroid: Matroid) -> PolyElement:
    """chi_M(t) / (t - 1)."""
    if not matroid.loops() and matroid.rank() == 0:
        raise ValueError(
            f"The reduced characteristic polynomial is undefined for the rank-0 loopless matroid "
            f"on {{{format_set(matroid.ground)}}}"
        )
    chi = char_poly(matroid)
    try:
        return chi.exquo(T_GEN - 1)
    except ExactQuotientFailed:
        raise RuntimeError(f"t - 1 does not divide the characteristic polynomial of {matroid}")


def mu_i(matroid: Matroid, index: int) -> Fraction:
    """
    Unsigned i-th coefficient of the reduced characteristic polynomial,
    counted from the top: the coefficient of t^{r(M) - 1 - i}. mu^0 = 1 for
    loopless matroids of positive rank.
    """
    degree = matroid.rank() - 1 - index
    if degree < 0 or index < 0:
        return Fraction(0)
    return abs(rational(reduced_char(matroid).coeff(T_GEN**degree)))


def beta(matroid: Matroid, convention: BetaConvention = "crapo") -> Fraction:
    """
    Beta invariant.

    crapo: coefficient of x^1 y^0 in the Tutte polynomial.
    paper: unsigned constant coefficient of the reduced characteristic polynomial.
    """
    if convention == "crapo":
        return rational(tutte(matroid).coeff(X_GEN))
    if convention == "paper":
        if matroid.loops() or matroid.rank() == 0:
            return Fraction(0)
        return abs(rational(reduced_char(matroid).coeff(1)))
    raise ValueError(f"Unknown beta convention {convention!r}: use 'crapo' or 'paper'")


def csm_weight(
    matroid: Matroid, partition: OrderedSetPartition, convention: BetaConvention = "crapo"
) -> Fraction:
    """
    Chern-Schwartz-MacPherson weight of a cone of the braid fan.

    (-1)^{d-k} times the product of beta(M[F_i, F_{i+1}]) over consecutive
    prefixes F_0 = {} < F_1 < ... < F_k = I, with d = r(M). Vanishes when a
    prefix is not a flat.
    """
    if partition.ground != matroid.ground:
        raise ValueError(
            f"{partition} is not an ordered set partition of {{{format_set(matroid.ground)}}}"
        )
    prefixes = partition.prefixes()
    value = Fraction((-1) ** (matroid.rank() - len(partition)))
    for lower, upper in zip(prefixes, prefixes[1:], strict=False):
        value *= beta(matroid.minor(lower, upper), convention)
        if not value:
            break
    return value


def rank_jumps(matroid: Matroid, order: tuple[str, ...]) -> str:
    jumps = []
    prefix: frozenset[str] = frozenset()
    for label in order:
        extended = prefix | {label}
        jumps.append(str(matroid.rank(extended) - matroid.rank(prefix)))
        prefix = extended
    return "".join(jumps)


def g_invariant(matroid: Matroid) -> FormalSum[str]:
    """Histogram of rank-jump 0/1 sequences over all linear orders."""
    counts = Counter(
        rank_jumps(matroid, order) for order in permutations(sorted_labels(matroid.ground))
    )
    logger.debug(f"G-invariant: {len(counts)} jump sequences over {factorial(len(matroid.ground))} orders")
    return FormalSum(counts.items())


def bjr_character(matroid: Matroid) -> Fraction:
    """1 if the matroid has a unique basis, else 0."""
    return Fraction(1 if matroid.has_unique_basis else 0)


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    result = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            result.append((first, *rest))
    return result


def _flags_of_flats(matroid: Matroid) -> list[tuple[frozenset[str], ...]]:
    """Strict chains of nonempty proper flats, including the empty chain."""
    proper = [f for f in matroid.flats if f and f != matroid.ground]
    chains: list[tuple[frozenset[str], ...]] = [()]
    frontier: list[tuple[frozenset[str], ...]] = [()]
    while frontier:
        extended = []
        for chain in frontier:
            for flat in proper:
                if not chain or chain[-1] < flat:
                    extended.append((*chain, flat))
        chains.extend(extended)
        frontier = extended
    return chains


def _monomial(chain: tuple[frozenset[str], ...], exponents: tuple[int, ...]) -> str:
    factors = []
    for flat, power in zip(chain, exponents, strict=True):
        name = f"t[{format_set(flat)}]"
        factors.append(name if power == 1 else f"{name}^{power}")
    return "*".join(factors) or "1"


def volume_polynomial(matroid: Matroid) -> FormalSum[str]:
    """
    Volume polynomial in the variables t_F, F a nonempty proper flat.

    Algorithm:
    1. d = r(M) - 1; enumerate flags F_1 < ... < F_k of nonempty proper flats
       and compositions d_1 + ... + d_k = d, with F_0 = {} and F_{k+1} = I.
    2. Coefficient (-1)^{d-k} * multinomial(d; d_i) * prod over i of
       C(d_i - 1, D_i - r(F_i)) * mu^{D_i - r(F_i)}(M[F_i, F_{i+1}]),
       where D_i = d_1 + ... + d_i; negative indices contribute zero.
    3. The monomial is prod t_{F_i}^{d_i}.
    """
    if matroid.loops():
        raise ValueError(
            f"The volume polynomial needs a loopless matroid; loops: "
            f"{{{format_set(matroid.loops())}}}"
        )
    if matroid.rank() == 0:
        raise ValueError("The volume polynomial needs a matroid of positive rank")
    degree = matroid.rank() - 1
    terms: dict[str, Fraction] = {}
    for chain in _flags_of_flats(matroid):
        k = len(chain)
        upper = (*chain, matroid.ground)
        for exponents in _compositions(degree, k):
            coefficient = Fraction((-1) ** (degree - k) * factorial(degree))
            running = 0
            for i, d_i in enumerate(exponents):
                coefficient /= factorial(d_i)
                running += d_i
                index = running - matroid.rank(chain[i])
                if index < 0 or index > d_i - 1:
                    coefficient = Fraction(0)
                    break
                coefficient *= comb(d_i - 1, index) * mu_i(matroid.minor(chain[i], upper[i + 1]), index)
            if coefficient:
                key = _monomial(chain, exponents)
                terms[key] = terms.get(key, Fraction(0)) + coefficient
    return FormalSum(terms)


VP_ASSUMPTIONS = {
    "degree": "d = rk(M) - 1",
    "top_flat": "F_{k+1} = I",
    "mu_index": "mu^i is the unsigned coefficient of t^{rk-1-i} in the reduced characteristic polynomial",
}
