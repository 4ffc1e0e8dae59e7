"""Divisibility-chain witnesses and the descent measure.

For the non-ACCP families the library does not merely assert that the
ascending chain of principal ideals fails to stabilize: it constructs the
chain and attaches, to every step, an explicit coefficient combination of
generators summing exactly to the (strictly positive) difference.  Those
witnesses are verifiable by pure arithmetic, independently of any
membership oracle.

For the pairwise-coprime families, conversely, the pair

    (eta(q), sum_i zeta_i(q))

decreases strictly lexicographically along any strict divisibility chain,
which is why no such chain descends forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .decomposition import NotMember, atomic_decompose
from .errors import NotInMonoidError, UnsupportedFamilyError
from .monoids import Monoid, generator_value

MAX_CHAIN_STEPS = 64


@dataclass(frozen=True)
class ChainWitness:
    """Elements q_1 > q_2 > ... with, for each step, the coefficient map
    certifying q_k - q_{k+1} as a combination of generators."""

    elements: tuple[Fraction, ...]
    steps: tuple[dict[int, int], ...]


class StepCheck(NamedTuple):
    step: int
    difference: Fraction
    ok: bool
    detail: str


@dataclass(frozen=True)
class ChainVerification:
    ok: bool
    steps: tuple[StepCheck, ...]


class DescentMeasure(NamedTuple):
    eta: int
    zeta_sum: int


def _check_steps(n_steps: int, limit: int) -> None:
    if n_steps < 0:
        raise ValueError("step count must be >= 0")
    if n_steps > limit:
        raise ValueError(f"chains longer than {limit} steps are refused; raise the limit explicitly")


def grams_chain(desc: Monoid, n_steps: int, limit: int = MAX_CHAIN_STEPS) -> ChainWitness:
    """The chain 1/b, 1/b^2, ... with step k certified by
    (b-1) * p_{k+1} copies of generator k+1."""
    if desc.family != "grams" or desc.scale != 1:
        raise UnsupportedFamilyError("grams_chain needs an unscaled grams descriptor")
    _check_steps(n_steps, limit)
    b = desc.base
    seq = desc.prime_sequence
    elements = tuple(Fraction(1, b**k) for k in range(1, n_steps + 2))
    steps = tuple(
        {k + 1: (b - 1) * seq.term(k + 1)} for k in range(1, n_steps + 1)
    )
    return ChainWitness(elements, steps)


def gap_chain(desc: Monoid, n_steps: int, limit: int = MAX_CHAIN_STEPS) -> ChainWitness:
    """The chain 1/p_l, 1/p_2l, ... with step n certified by
    p_{l(n+1)} - p_{ln} copies of generator ln."""
    if desc.family != "gap" or desc.scale != 1:
        raise UnsupportedFamilyError("gap_chain needs an unscaled gap descriptor")
    _check_steps(n_steps, limit)
    ell = desc.ell
    seq = desc.prime_sequence
    elements = tuple(
        Fraction(1, seq.term(ell * n)) for n in range(1, n_steps + 2)
    )
    steps = tuple(
        {ell * n: seq.term(ell * (n + 1)) - seq.term(ell * n)}
        for n in range(1, n_steps + 1)
    )
    return ChainWitness(elements, steps)


def verify_chain(desc: Monoid, witness: ChainWitness) -> ChainVerification:
    """Re-evaluate every step certificate by plain arithmetic.

    A step passes when its difference is strictly positive and the
    certificate's nonnegative coefficients over valid generator indices sum
    to it exactly.
    """
    checks: list[StepCheck] = []
    ok = True
    if len(witness.steps) != max(0, len(witness.elements) - 1):
        return ChainVerification(False, (StepCheck(0, Fraction(0), False,
                                                   "step count does not match element count"),))
    for k, cert in enumerate(witness.steps, start=1):
        diff = witness.elements[k - 1] - witness.elements[k]
        if diff <= 0:
            checks.append(StepCheck(k, diff, False, "difference is not strictly positive"))
            ok = False
            continue
        total = Fraction(0)
        problem = ""
        for i, c in sorted(cert.items()):
            if c < 0:
                problem = f"negative coefficient {c} on generator {i}"
                break
            try:
                total += c * generator_value(desc, i)
            except ValueError:
                problem = f"generator index {i} does not exist"
                break
        if not problem and total != diff:
            problem = f"certificate sums to {total}, not {diff}"
        if problem:
            checks.append(StepCheck(k, diff, False, problem))
            ok = False
        else:
            checks.append(StepCheck(k, diff, True, "exact"))
    return ChainVerification(ok, tuple(checks))


def descent_measure(desc: Monoid, q: Fraction) -> DescentMeasure:
    """(eta(q), sum of zeta_i(q)) from the unique atomic decomposition.

    Along any strict divisibility chain this pair strictly decreases
    lexicographically, so the chain stops.  Unsupported on the families
    that produce the non-stabilizing chains above.
    """
    dec = atomic_decompose(desc, q)
    if isinstance(dec, NotMember):
        raise NotInMonoidError(f"{q} is not an element: {dec.detail}")
    return DescentMeasure(dec.eta, dec.coefficient_sum())
