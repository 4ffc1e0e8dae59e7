"""Factorizations, length sets, and atom certificates.

A factorization of x is a multiset of generators summing to x; its length
is the multiset size.  Full factorization sets are infinite in general
(already Z(1) in the prime-reciprocal monoid), so every enumeration here
carries an explicit completeness certificate:

    complete                the returned set is all of Z(x) / L(x)
    complete_up_to_bounds   exact within the stated window, silent beyond
    unknown                 a bounded search with no exactness claim

Fixed-length sets Z(x, l) ARE finite for families in which every index
carries its own controlling prime: a coefficient at an uncontrolled-by-d(x)
index must be a multiple of its prime, so indices whose prime exceeds the
length can never appear.  That truncation argument is what
``relevant_indices`` implements, as a sound over-approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import search
from .decomposition import Bounds, NotMember, atomic_decompose, has_unique_decomposition
from .errors import UnsupportedFamilyError
from .monoids import Monoid, generator, generator_value, index_set_for_prime
from .primes import factor


@dataclass(frozen=True)
class Completeness:
    kind: str  # "complete" | "complete_up_to_bounds" | "unknown"
    max_length: int | None = None
    max_index: int | None = None

    @classmethod
    def complete(cls) -> "Completeness":
        return cls("complete")

    @classmethod
    def windowed(cls, max_length: int | None, max_index: int | None = None) -> "Completeness":
        return cls("complete_up_to_bounds", max_length, max_index)


@dataclass(frozen=True)
class Factorization:
    """Sparse multiset of generator indices; length is the multiset size."""

    exponents: dict[int, int]
    length: int

    @classmethod
    def from_exponents(cls, exponents: dict[int, int]) -> "Factorization":
        pruned = {i: c for i, c in exponents.items() if c}
        return cls(pruned, sum(pruned.values()))

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.exponents.items())

    def evaluate(self, desc: Monoid) -> Fraction:
        return sum((c * generator_value(desc, i) for i, c in self.exponents.items()),
                   Fraction(0))


@dataclass(frozen=True)
class FactorizationSet:
    items: tuple[Factorization, ...]
    completeness: Completeness


@dataclass(frozen=True)
class LengthSet:
    lengths: tuple[int, ...]
    completeness: Completeness


@dataclass(frozen=True)
class AtomCertificate:
    index: int
    verdict: str  # "atom" | "not_atom" | "unknown"
    why: str
    witness: Factorization | None = None
    bounds: Bounds | None = None


# ---------------------------------------------------------------------------
# the controlled-family truncation

def _controlled(desc: Monoid) -> bool:
    """Every index has a controlling prime (no other denominator shares it)."""
    if desc.scale != 1:
        # scaling can strip controlling primes at the indices it meets
        return False
    if desc.family in ("prime_reciprocal", "mixed_5_2"):
        return True
    if desc.family == "grams":
        return all(
            desc.prime_sequence.index_of(p) is None for p in factor(desc.base)
        )
    if desc.family == "custom":
        return all(
            generator(desc, i).controlling_prime is not None
            for i in range(1, len(desc.terms) + 1)
        )
    return False


def relevant_indices(desc: Monoid, q: Fraction, length: int) -> list[int]:
    """Indices that can support a factorization of q with length <= length.

    An index whose controlling prime neither divides d(q) nor is <= length
    is impossible: its coefficient would have to be a positive multiple of
    a prime larger than the whole length.  The returned superset is sound;
    it need not be minimal.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    q = Fraction(q)
    if not _controlled(desc):
        raise UnsupportedFamilyError(
            f"family {desc.family!r} has no controlling-prime map"
        )
    keep: set[int] = set()
    d_primes = set(factor(q.denominator)) if q else set()
    hi = desc.max_index()
    i = 1
    while True:
        if hi is not None and i > hi:
            break
        ctrl = generator(desc, i).controlling_prime
        assert ctrl is not None
        if ctrl <= length or ctrl in d_primes:
            keep.add(i)
        elif hi is None and ctrl > length:
            # controlling primes increase along every builtin family, so
            # past this point only d(q)-indices remain
            break
        i += 1
    for p in d_primes:
        found = index_set_for_prime(desc, p, scan_bound=max(p, 10**7))
        if found.kind == "exact":
            keep.update(found.indices)
    return sorted(keep)


def _integerize(desc: Monoid, indices: list[int], q: Fraction) -> tuple[list[int], int, int]:
    atoms = [generator_value(desc, i) for i in indices]
    big_d = q.denominator
    for a in atoms:
        big_d = big_d * a.denominator // gcd(big_d, a.denominator)
    weights = [int(a * big_d) for a in atoms]
    return weights, int(q * big_d), big_d


def _dense_key(indices: list[int], f: Factorization) -> tuple[int, ...]:
    return tuple(f.exponents.get(i, 0) for i in indices)


def factorizations_of_length(desc: Monoid, q: Fraction, length: int) -> FactorizationSet:
    """The complete finite set Z(q, length) for controlled families."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("monoid elements are nonnegative")
    indices = relevant_indices(desc, q, length)
    if q == 0 or not indices:
        return FactorizationSet((), Completeness.complete())
    weights, target, _ = _integerize(desc, indices, q)
    found = search.solve(weights, target, exact_length=length)
    items = [
        Factorization.from_exponents(dict(zip(indices, coeffs)))
        for coeffs, _ in found
    ]
    items.sort(key=lambda f: _dense_key(indices, f))
    return FactorizationSet(tuple(items), Completeness.complete())


def _support_is_absolutely_bounded(desc: Monoid, q: Fraction) -> list[int] | None:
    """Indices that can appear in ANY factorization of q, length aside.

    At an index whose controlling prime misses d(q) the coefficient is a
    positive multiple of that prime, worth at least p_i * a_i; once
    p_i * a_i > q holds for the whole tail of the family, the support is
    absolutely finite.  Returns None when no such tail exists (e.g. q >= 1
    in the prime-reciprocal monoid, or any grams-like family)."""
    if not _controlled(desc):
        return None
    d_primes = set(factor(q.denominator)) if q else set()
    keep: set[int] = set()
    hi = desc.max_index()
    tail_closes = False
    if desc.family in ("prime_reciprocal", "mixed_5_2") and desc.scale == 1:
        # beyond the dyadic block p_i * a_i = 1, so the tail closes iff q < 1
        tail_closes = q < 1
    if hi is None and not tail_closes:
        return None
    i = 1
    while True:
        if hi is not None and i > hi:
            break
        term = generator(desc, i)
        ctrl = term.controlling_prime
        if ctrl in d_primes:
            keep.add(i)
        elif ctrl is not None and ctrl * term.value <= q:
            keep.add(i)
        elif hi is None and i > desc.k:
            break
        i += 1
    for p in d_primes:
        found = index_set_for_prime(desc, p, scan_bound=max(p, 10**7))
        if found.kind == "exact":
            keep.update(found.indices)
    return sorted(keep)


def length_set(desc: Monoid, q: Fraction, up_to: int) -> LengthSet:
    """Achievable factorization lengths of q within [1, up_to].

    Exact within the window; flagged fully complete when the support of
    every factorization of q is provably finite and too small to reach
    past the window.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("length sets are defined for positive elements")
    if up_to < 1:
        raise ValueError("window must be >= 1")
    lengths = []
    for ell in range(1, up_to + 1):
        indices = relevant_indices(desc, q, ell)
        if not indices:
            continue
        weights, target, _ = _integerize(desc, indices, q)
        if search.solve(weights, target, exact_length=ell, first_only=True):
            lengths.append(ell)
    support = _support_is_absolutely_bounded(desc, q)
    if support is not None:
        smallest = min((generator_value(desc, i) for i in support), default=None)
        if smallest is None:
            return LengthSet(tuple(lengths), Completeness.complete())
        if q / smallest <= up_to:
            return LengthSet(tuple(lengths), Completeness.complete())
    return LengthSet(tuple(lengths), Completeness.windowed(up_to))


def enumerate_factorizations(
    desc: Monoid, q: Fraction, max_length: int, max_index: int
) -> FactorizationSet:
    """Factorizations of q with length <= max_length.

    Controlled families get the exact per-length sets; others a bounded
    search over indices <= max_index.  When the unique-decomposition route
    shows eta(q) = 0 the single factorization is returned with the full
    completeness certificate, and a q outside the monoid yields the empty
    set, also complete.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("factorization enumeration needs a positive element")
    if max_length < 1 or max_index < 1:
        raise ValueError("bounds must be >= 1")
    if has_unique_decomposition(desc):
        dec = atomic_decompose(desc, q)
        if isinstance(dec, NotMember):
            return FactorizationSet((), Completeness.complete())
        if dec.eta == 0:
            # any factorization reduces coefficientwise to the unique
            # decomposition; with no integer part there is nothing to carry
            item = Factorization.from_exponents(dict(dec.zeta))
            return FactorizationSet((item,), Completeness.complete())
    if _controlled(desc):
        items: list[Factorization] = []
        for ell in range(1, max_length + 1):
            items.extend(factorizations_of_length(desc, q, ell).items)
        return FactorizationSet(tuple(items), Completeness.windowed(max_length, max_index))
    # bounded route for families without controlling primes
    lo = desc.min_index()
    hi = desc.max_index()
    top = max_index if hi is None else min(hi, max_index)
    indices = [i for i in range(lo, top + 1) if generator_value(desc, i) <= q]
    if not indices:
        return FactorizationSet((), Completeness.windowed(max_length, max_index))
    weights, target, _ = _integerize(desc, indices, q)
    found = search.solve(weights, target, max_length=max_length, min_length=1)
    items = [
        Factorization.from_exponents(dict(zip(indices, coeffs)))
        for coeffs, _ in found
    ]
    items.sort(key=lambda f: (f.length, _dense_key(indices, f)))
    return FactorizationSet(tuple(items), Completeness.windowed(max_length, max_index))


# ---------------------------------------------------------------------------
# atom certificates

def is_atom(desc: Monoid, n: int, bounds: Bounds = Bounds()) -> AtomCertificate:
    """Certify whether generator n is irreducible.

    Exact verdicts come from three finite arguments:

      * a prime dividing only this generator's denominator forces its own
        coefficient to 1 in any representation, leaving nothing over;
      * a prime shared with exactly one other, strictly larger generator
        (the gap families) forces that larger generator in, overshooting;
      * for b-power families the next generator times b is a witness.

    Finite lists are settled by complete search; anything else gets a
    bounded search and an honest unknown.
    """
    term = generator(desc, n)
    a_n = term.value

    for p in sorted(factor(a_n.denominator)):
        found = index_set_for_prime(desc, p, scan_bound=max(p, 10**7))
        if found.kind != "exact":
            continue
        others = [i for i in found.indices if i != n]
        if not others:
            return AtomCertificate(
                n, "atom",
                f"prime {p} divides only this denominator, forcing coefficient 1 "
                f"on the generator itself and 0 everywhere else",
            )
        if len(others) == 1 and generator_value(desc, others[0]) > a_n:
            return AtomCertificate(
                n, "atom",
                f"prime {p} would force generator {others[0]} (value "
                f"{generator_value(desc, others[0])} > {a_n}) into any other representation",
            )

    if desc.family in ("power_reciprocal", "geometric") and (
        desc.family == "power_reciprocal" or desc.ratio.numerator == 1
    ):
        nxt = generator_value(desc, n + 1)
        b = desc.base if desc.family == "power_reciprocal" else desc.ratio.denominator
        if b * nxt == a_n:
            witness = Factorization.from_exponents({n + 1: b})
            return AtomCertificate(
                n, "not_atom",
                f"the generator splits as {b} copies of generator {n + 1}",
                witness=witness,
            )

    # search for a witness among the other generators
    lo = desc.min_index()
    hi = desc.max_index()
    top = bounds.max_index if hi is None else min(hi, bounds.max_index)
    indices = [i for i in range(lo, top + 1) if i != n and generator_value(desc, i) <= a_n]
    capped = False
    if indices:
        weights, target, _ = _integerize(desc, indices, a_n)
        capped = any(a_n / generator_value(desc, i) > bounds.max_coeff for i in indices)
        found = search.solve(weights, target, min_length=2, first_only=True,
                             caps=[bounds.max_coeff] * len(indices))
        if found:
            coeffs, _ = found[0]
            witness = Factorization.from_exponents(dict(zip(indices, coeffs)))
            return AtomCertificate(
                n, "not_atom",
                "a combination of other generators reproduces it",
                witness=witness,
            )
    if desc.family == "custom" and top == hi and not capped:
        return AtomCertificate(
            n, "atom",
            "complete search over the finite generator list found no "
            "combination of the others reproducing it",
        )
    return AtomCertificate(
        n, "unknown",
        "no witness within bounds and no finite certificate applies",
        bounds=bounds,
    )
