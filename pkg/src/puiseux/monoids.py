"""Monoid descriptors: generator families, structural queries, classification.

A descriptor names a generating family of a Puiseux monoid (an additive
submonoid of the nonnegative rationals), either one of the builtin infinite
families or an explicit finite list.  Builtin families:

    prime_reciprocal      1/p_n          p_n = the primes 2, 3, 5, ...
    grams(b)              1/(b^n p_n)    p_n = the odd primes by default
    gap(l)                1/(p_n p_{n+l})
    geometric(q)          q^n            exponents from 0 (or 1)
    power_reciprocal(b)   1/b^n
    mixed_5_2(k)          1/(2^m p_m) for m <= k, then 1/p_n

Prime-indexed families accept an override sequence so tests can pin the
primes used.  Descriptors are immutable value objects; every query is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

from .errors import UnsupportedFamilyError
from .primes import PrimeSequence, factor, is_prime
from .rationals import make_rational, parse_rational

FAMILIES = (
    "prime_reciprocal",
    "grams",
    "gap",
    "geometric",
    "power_reciprocal",
    "mixed_5_2",
    "custom",
)

DEFAULT_SCAN_BOUND = 10**7


@dataclass(frozen=True)
class Monoid:
    """Immutable descriptor of a generator family.

    Only the fields relevant to ``family`` are meaningful; use the factory
    functions below rather than the raw constructor.  ``scale`` multiplies
    every generator and is how q*M descriptors are represented.
    """

    family: str
    base: int = 0
    ell: int = 0
    ratio: Fraction | None = None
    include_unit: bool = True
    k: int = 0
    terms: tuple[Fraction, ...] = ()
    primes: PrimeSequence | None = None
    scale: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.scale <= 0:
            raise ValueError("scale must be a positive rational")

    @property
    def prime_sequence(self) -> PrimeSequence:
        if self.primes is not None:
            return self.primes
        start = 3 if self.family in ("grams", "mixed_5_2") else 2
        return PrimeSequence(start=start)

    def min_index(self) -> int:
        if self.family == "geometric" and self.include_unit:
            return 0
        return 1

    def max_index(self) -> int | None:
        """Largest valid generator index, or None for infinite families."""
        return len(self.terms) if self.family == "custom" else None


class GeneratorTerm(NamedTuple):
    index: int
    value: Fraction
    controlling_prime: int | None


class Flag(NamedTuple):
    verdict: str  # "yes" | "no" | "unknown"
    why: str


_FLAG_NAMES = (
    "reciprocal",
    "weak_reciprocal",
    "almost_reciprocal",
    "strongly_bounded",
    "bounded",
    "atomic",
    "uad",
)

# yes upstream forces yes downstream
_CHAIN = ("reciprocal", "weak_reciprocal", "strongly_bounded", "bounded")


@dataclass(frozen=True)
class ClassificationReport:
    reciprocal: Flag
    weak_reciprocal: Flag
    almost_reciprocal: Flag
    strongly_bounded: Flag
    bounded: Flag
    atomic: Flag
    uad: Flag

    def __post_init__(self) -> None:
        for up, down in zip(_CHAIN, _CHAIN[1:]):
            if getattr(self, up).verdict == "yes" and getattr(self, down).verdict != "yes":
                raise ValueError(f"classification chain violated: {up} => {down}")

    def items(self) -> list[tuple[str, Flag]]:
        return [(name, getattr(self, name)) for name in _FLAG_NAMES]


# ---------------------------------------------------------------------------
# factories

def prime_reciprocal(primes: PrimeSequence | None = None) -> Monoid:
    return Monoid("prime_reciprocal", primes=primes)


def grams(base: int = 2, primes: PrimeSequence | None = None) -> Monoid:
    if base < 2:
        raise ValueError("grams base must be >= 2")
    return Monoid("grams", base=base, primes=primes)


def gap(ell: int, primes: PrimeSequence | None = None) -> Monoid:
    if ell < 1:
        raise ValueError("gap offset must be >= 1")
    return Monoid("gap", ell=ell, primes=primes)


def geometric(ratio: Fraction, include_unit: bool = True) -> Monoid:
    ratio = Fraction(ratio)
    if ratio <= 0:
        raise ValueError("geometric ratio must be positive")
    if ratio.denominator == 1:
        raise ValueError("geometric ratio must not be an integer")
    return Monoid("geometric", ratio=ratio, include_unit=include_unit)


def power_reciprocal(base: int) -> Monoid:
    if base < 2:
        raise ValueError("power_reciprocal base must be >= 2")
    return Monoid("power_reciprocal", base=base)


def mixed_5_2(k: int, primes: PrimeSequence | None = None) -> Monoid:
    """k dyadic generators 1/(2^m p_m), then plain reciprocals 1/p_n."""
    if k < 1:
        raise ValueError("mixed_5_2 block length must be >= 1")
    if primes is not None:
        for p in primes.prefix:
            if p == 2:
                raise ValueError("mixed_5_2 needs odd primes")
        if primes.start == 2 and not primes.prefix:
            raise ValueError("mixed_5_2 needs odd primes")
    return Monoid("mixed_5_2", k=k, primes=primes)


def custom(values) -> Monoid:
    """Explicit finite generator list; values are canonicalized fractions."""
    terms = tuple(Fraction(v) for v in values)
    if not terms:
        raise ValueError("custom generator list must be nonempty")
    for t in terms:
        if t <= 0:
            raise ValueError("custom generators must be positive")
    return Monoid("custom", terms=terms)


# ---------------------------------------------------------------------------
# generators

def _family_value(desc: Monoid, n: int) -> Fraction:
    fam = desc.family
    if fam == "custom":
        if not 1 <= n <= len(desc.terms):
            raise ValueError(f"index {n} out of range for a {len(desc.terms)}-term list")
        return desc.terms[n - 1]
    if fam == "geometric":
        lo = 0 if desc.include_unit else 1
        if n < lo:
            raise ValueError(f"geometric exponent must be >= {lo}")
        return desc.ratio ** n
    if n < 1:
        raise ValueError("generator index must be >= 1")
    seq = desc.prime_sequence
    if fam == "prime_reciprocal":
        return Fraction(1, seq.term(n))
    if fam == "grams":
        return Fraction(1, desc.base**n * seq.term(n))
    if fam == "gap":
        return Fraction(1, seq.term(n) * seq.term(n + desc.ell))
    if fam == "power_reciprocal":
        return Fraction(1, desc.base**n)
    if fam == "mixed_5_2":
        p = seq.term(n)
        return Fraction(1, 2**n * p) if n <= desc.k else Fraction(1, p)
    raise AssertionError(fam)


def _custom_controlling_prime(desc: Monoid, n: int) -> int | None:
    dens = [t.denominator for t in desc.terms]
    for p in sorted(factor(dens[n - 1])):
        if all(d % p != 0 for i, d in enumerate(dens, 1) if i != n):
            return p
    return None


def _family_controlling_prime(desc: Monoid, n: int) -> int | None:
    fam = desc.family
    if fam == "prime_reciprocal":
        return desc.prime_sequence.term(n)
    if fam == "grams":
        p = desc.prime_sequence.term(n)
        return None if desc.base % p == 0 else p
    if fam == "mixed_5_2":
        return desc.prime_sequence.term(n)
    if fam == "custom":
        return _custom_controlling_prime(desc, n)
    return None


def generator(desc: Monoid, n: int) -> GeneratorTerm:
    """The exact n-th generator, with its controlling prime when one exists."""
    value = _family_value(desc, n)
    ctrl = _family_controlling_prime(desc, n)
    if desc.scale != 1:
        value = value * desc.scale
        if ctrl is not None and (
            desc.scale.numerator % ctrl == 0 or desc.scale.denominator % ctrl == 0
        ):
            ctrl = None
    return GeneratorTerm(n, value, ctrl)


def generator_value(desc: Monoid, n: int) -> Fraction:
    return generator(desc, n).value


def generator_indices(desc: Monoid, count: int) -> list[int]:
    lo = desc.min_index()
    hi = desc.max_index()
    top = lo + count - 1 if hi is None else min(hi, lo + count - 1)
    return list(range(lo, top + 1))


# ---------------------------------------------------------------------------
# which indices a prime can touch

@dataclass(frozen=True)
class IndexSet:
    """Answer to "which generator denominators does p divide?".

    kind "exact" carries the full (possibly empty) index tuple; "all" means
    every index with a nontrivial denominator; "unknown" means the query
    would have required scanning past ``scan_bound``.
    """

    kind: str
    indices: tuple[int, ...] = ()
    scan_bound: int | None = None

    @classmethod
    def exact(cls, indices) -> "IndexSet":
        return cls("exact", tuple(sorted(indices)))

    @classmethod
    def all_indices(cls) -> "IndexSet":
        return cls("all")

    @classmethod
    def unknown(cls, scan_bound: int) -> "IndexSet":
        return cls("unknown", scan_bound=scan_bound)


def index_set_for_prime(desc: Monoid, p: int, scan_bound: int = DEFAULT_SCAN_BOUND) -> IndexSet:
    """Exactly which generator indices have p in their denominator."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > scan_bound and desc.family != "custom":
        return IndexSet.unknown(scan_bound)
    inner = _family_index_set(desc, p)
    if desc.scale == 1 or inner.kind == "unknown":
        return inner
    num, den = desc.scale.numerator, desc.scale.denominator
    if den % p == 0:
        if desc.family == "custom":
            return IndexSet.exact(
                i for i in range(1, len(desc.terms) + 1)
                if generator_value(desc, i).denominator % p == 0
            )
        if desc.family == "geometric":
            return IndexSet.unknown(scan_bound)
        # unit-numerator families cannot cancel a prime the scale introduces
        return IndexSet.all_indices()
    if num % p == 0:
        if inner.kind == "exact":
            return IndexSet.exact(
                i for i in inner.indices
                if generator_value(desc, i).denominator % p == 0
            )
        # "all" may overcount near small indices; callers treat it as a
        # no-obstruction signal only
        return inner
    return inner


def _family_index_set(desc: Monoid, p: int) -> IndexSet:
    fam = desc.family
    seq = desc.prime_sequence if fam in ("prime_reciprocal", "grams", "gap", "mixed_5_2") else None
    if fam == "prime_reciprocal":
        i = seq.index_of(p)
        return IndexSet.exact([i] if i else [])
    if fam == "grams":
        if desc.base % p == 0:
            return IndexSet.all_indices()
        i = seq.index_of(p)
        return IndexSet.exact([i] if i else [])
    if fam == "gap":
        i = seq.index_of(p)
        if i is None:
            return IndexSet.exact([])
        return IndexSet.exact([j for j in (i - desc.ell, i) if j >= 1])
    if fam == "power_reciprocal":
        return IndexSet.all_indices() if desc.base % p == 0 else IndexSet.exact([])
    if fam == "geometric":
        return IndexSet.all_indices() if desc.ratio.denominator % p == 0 else IndexSet.exact([])
    if fam == "mixed_5_2":
        if p == 2:
            return IndexSet.exact(range(1, desc.k + 1))
        i = seq.index_of(p)
        return IndexSet.exact([i] if i else [])
    if fam == "custom":
        return IndexSet.exact(
            i for i, t in enumerate(desc.terms, 1) if t.denominator % p == 0
        )
    raise AssertionError(fam)


# ---------------------------------------------------------------------------
# classification

def _pairwise_coprime(dens) -> tuple[bool, tuple[int, int] | None]:
    dens = list(dens)
    for i in range(len(dens)):
        for j in range(i + 1, len(dens)):
            if gcd(dens[i], dens[j]) != 1:
                return False, (dens[i], dens[j])
    return True, None


def _grams_degenerate(desc: Monoid) -> int | None:
    """A prime shared by the base and the prime sequence, if any."""
    for p in factor(desc.base):
        if desc.prime_sequence.index_of(p) is not None:
            return p
    return None


def _uad_witness(desc: Monoid, target: Fraction, max_index: int) -> str | None:
    """Two distinct decompositions of ``target`` rendered as a witness line."""
    from .decomposition import enumerate_decompositions, render_decomposition

    found = enumerate_decompositions(desc, target, max_index)
    if len(found) < 2:
        return None
    first, second = found[0], found[1]
    return (
        f"{render_decomposition(desc, first)} and "
        f"{render_decomposition(desc, second)}"
    )


def classify(desc: Monoid) -> ClassificationReport:
    """Structural flags with one-line justifications.

    Builtin infinite families are classified by family rules; explicit
    lists (and scaled builtins) are classified from the terms themselves
    and say so, since boundedness of an infinite set cannot be read off a
    prefix.
    """
    if desc.family == "custom" or desc.scale != 1:
        return _classify_terms(desc)
    fam = desc.family
    yes, no, unknown = "yes", "no", "unknown"

    if fam == "prime_reciprocal":
        return ClassificationReport(
            reciprocal=Flag(yes, "unit numerators over strictly increasing, pairwise coprime primes"),
            weak_reciprocal=Flag(yes, "unit numerators, strictly increasing denominators"),
            almost_reciprocal=Flag(yes, "pairwise coprime denominators, each coprime to its numerator"),
            strongly_bounded=Flag(yes, "numerator set is {1}"),
            bounded=Flag(yes, "all generators lie in (0, 1/2]"),
            atomic=Flag(yes, "each prime divides exactly one denominator, forcing coefficient 1 on its own generator"),
            uad=Flag(yes, "pairwise coprime denominators pin every coefficient to a single residue"),
        )
    if fam == "grams":
        shared = _grams_degenerate(desc)
        if shared is None:
            atomic = Flag(yes, "each p_n divides only its own denominator b^n p_n")
            witness = _uad_witness(desc, desc.scale * Fraction(1, desc.base), 2)
            uad = Flag(no, f"two decompositions: {witness}")
            recip = Flag(no, f"the atoms are the generators and all denominators share {desc.base}")
            almost = Flag(no, f"the atoms are the generators and all denominators share {desc.base}")
        else:
            atomic = Flag(unknown, f"prime {shared} divides both the base and the sequence; the controlling-prime rule does not apply")
            uad = Flag(unknown, "atomicity undetermined for this base/sequence overlap")
            recip = Flag(unknown, "atomicity undetermined for this base/sequence overlap")
            almost = Flag(unknown, "atomicity undetermined for this base/sequence overlap")
        return ClassificationReport(
            reciprocal=recip,
            weak_reciprocal=Flag(yes, "unit numerators, denominators b^n p_n strictly increasing"),
            almost_reciprocal=almost,
            strongly_bounded=Flag(yes, "numerator set is {1}"),
            bounded=Flag(yes, "generators decrease from 1/(b p_1)"),
            atomic=atomic,
            uad=uad,
        )
    if fam == "gap":
        seq = desc.prime_sequence
        first = seq.term(1 + desc.ell)
        witness = _uad_witness(desc, desc.scale * Fraction(1, first), 1 + desc.ell)
        return ClassificationReport(
            reciprocal=Flag(no, f"denominators at indices n and n+{desc.ell} share a prime and the atoms are the generators"),
            weak_reciprocal=Flag(yes, "unit numerators, denominators p_n p_{n+l} strictly increasing"),
            almost_reciprocal=Flag(no, f"denominators at indices n and n+{desc.ell} share a prime and the atoms are the generators"),
            strongly_bounded=Flag(yes, "numerator set is {1}"),
            bounded=Flag(yes, "generators decrease from the first term"),
            atomic=Flag(yes, "each generator is irreducible: its leading prime forces a strictly larger generator into any other representation"),
            uad=Flag(no, f"two decompositions: {witness}"),
        )
    if fam == "geometric":
        num = desc.ratio.numerator
        if num == 1:
            return _antimatter_report(
                weak_why="unit numerators, denominators d^n strictly increasing",
                atomic_why="each generator equals d times the next one",
                bounded=Flag(yes, "generators are at most 1"),
            )
        atomic = Flag(yes, "numerator >= 2: the powers of the ratio form an irreducible generating set")
        witness = _uad_witness(desc, desc.scale * Fraction(num), 4)
        uad = Flag(no, f"two decompositions: {witness}") if witness else Flag(unknown, "no collision found among small targets")
        if desc.ratio < 1:
            bounded = Flag(yes, "generators are at most 1")
        else:
            bounded = Flag(no, "the atoms q^n grow without bound")
        return ClassificationReport(
            reciprocal=Flag(no, "atoms are the powers of the ratio; consecutive denominators share every prime of d(q)"),
            weak_reciprocal=Flag(no, "numerators n(q)^n are not all 1 and the atoms are forced into every generating set"),
            almost_reciprocal=Flag(no, "consecutive denominators share every prime of d(q)"),
            strongly_bounded=Flag(no, "numerators n(q)^n grow without bound and the atoms are forced"),
            bounded=bounded,
            atomic=atomic,
            uad=uad,
        )
    if fam == "power_reciprocal":
        return _antimatter_report(
            weak_why="unit numerators, denominators b^n strictly increasing",
            atomic_why="each generator equals b times the next one",
            bounded=Flag(yes, "generators are at most 1/b"),
        )
    if fam == "mixed_5_2":
        if desc.k == 1:
            return ClassificationReport(
                reciprocal=Flag(yes, "unit numerators; 2 p_1 and the later odd primes are pairwise coprime"),
                weak_reciprocal=Flag(yes, "unit numerators, distinct denominators"),
                almost_reciprocal=Flag(yes, "pairwise coprime denominators"),
                strongly_bounded=Flag(yes, "numerator set is {1}"),
                bounded=Flag(yes, "generators are at most 1/(2 p_1)"),
                atomic=Flag(yes, "each index carries its own odd prime"),
                uad=Flag(yes, "pairwise coprime denominators pin every coefficient to a single residue"),
            )
        witness = _uad_witness(desc, desc.scale * Fraction(1, 2), 2)
        return ClassificationReport(
            reciprocal=Flag(no, "the first k denominators share 2 and the atoms are the generators"),
            weak_reciprocal=Flag(yes, "unit numerators, distinct denominators"),
            almost_reciprocal=Flag(no, "the first k denominators share 2 and the atoms are the generators"),
            strongly_bounded=Flag(yes, "numerator set is {1}"),
            bounded=Flag(yes, "generators are at most 1/(2 p_1)"),
            atomic=Flag(yes, "each index carries its own odd prime"),
            uad=Flag(no, f"two decompositions: {witness}"),
        )
    raise AssertionError(fam)


def _antimatter_report(weak_why: str, atomic_why: str, bounded: Flag) -> ClassificationReport:
    no, yes = "no", "yes"
    return ClassificationReport(
        reciprocal=Flag(no, "not atomic, and reciprocal monoids are atomic"),
        weak_reciprocal=Flag(yes, weak_why),
        almost_reciprocal=Flag(no, "not atomic, and almost reciprocal monoids are atomic"),
        strongly_bounded=Flag(yes, "numerator set is {1}"),
        bounded=bounded,
        atomic=Flag(no, atomic_why),
        uad=Flag(no, "not atomic"),
    )


_TRUNCATION_SCAN = 24
_UAD_COLLISION_BOX = 10**6


def _classify_terms(desc: Monoid) -> ClassificationReport:
    """Classification read off the terms themselves (finite lists, scaled
    prefixes); flags are labelled truncation-only where that matters."""
    if desc.family == "custom":
        indices = list(range(1, len(desc.terms) + 1))
        note = "truncation-only: finite list"
    else:
        hi = desc.min_index() + _TRUNCATION_SCAN - 1
        indices = list(range(desc.min_index(), hi + 1))
        note = f"truncation-only: scanned the first {len(indices)} scaled generators"
    values = [generator_value(desc, i) for i in indices]
    nums = [v.numerator for v in values]
    dens = [v.denominator for v in values]
    yes, no, unknown = "yes", "no", "unknown"

    unit = all(c == 1 for c in nums)
    distinct = len(set(dens)) == len(dens)
    coprime, bad_pair = _pairwise_coprime(dens)

    if unit and distinct and coprime:
        recip = Flag(yes, f"{note}; unit numerators, pairwise coprime distinct denominators")
    elif not unit:
        recip = Flag(no, f"{note}; numerator {max(nums)} is not 1")
    elif not coprime:
        recip = Flag(no, f"{note}; denominators {bad_pair[0]} and {bad_pair[1]} share a factor")
    else:
        recip = Flag(no, f"{note}; repeated denominator")
    weak = Flag(yes if unit and distinct else no,
                f"{note}; " + ("unit numerators, distinct denominators" if unit and distinct
                               else "requires unit numerators and distinct denominators"))
    almost = Flag(yes if coprime else no,
                  f"{note}; " + ("pairwise coprime denominators"
                                 if coprime else f"denominators {bad_pair[0]} and {bad_pair[1]} share a factor"))

    if desc.family == "custom":
        strongly = Flag(yes, f"finite list: numerators bounded by {max(nums)}")
        bounded = Flag(yes, f"finite list: generators bounded by {max(values)}")
        atomic = Flag(yes, "finitely generated submonoid of the nonnegative rationals; the minimal generators are atoms")
        if coprime:
            uad = Flag(yes, "pairwise coprime denominators pin every coefficient to a single residue")
        else:
            uad = _custom_uad_flag(desc, values)
    else:
        inner = classify(replace(desc, scale=Fraction(1)))
        strongly = _scaled_strongly(desc, inner)
        bounded = Flag(inner.bounded.verdict, f"scaling preserves boundedness; {inner.bounded.why}")
        atomic = Flag(inner.atomic.verdict, f"scaling is an isomorphism; {inner.atomic.why}")
        uad = _scaled_uad(desc, inner, coprime)

    # the chain may force weak upstream flags downstream
    if recip.verdict == "yes" and weak.verdict != "yes":
        weak = Flag(yes, recip.why)
    return ClassificationReport(
        reciprocal=recip,
        weak_reciprocal=weak,
        almost_reciprocal=almost,
        strongly_bounded=strongly,
        bounded=bounded,
        atomic=atomic,
        uad=uad,
    )


def _scaled_strongly(desc: Monoid, inner: ClassificationReport) -> Flag:
    if inner.strongly_bounded.verdict == "yes":
        return Flag("yes", f"scaling multiplies numerators by at most {desc.scale.numerator}")
    return Flag(inner.strongly_bounded.verdict, inner.strongly_bounded.why)


def _scaled_uad(desc: Monoid, inner: ClassificationReport, prefix_coprime: bool) -> Flag:
    if inner.uad.verdict == "yes" and desc.scale.denominator == 1 and prefix_coprime:
        return Flag("yes", "integer scaling keeps the denominators pairwise coprime")
    if inner.uad.verdict == "no":
        return Flag("no", f"scaling is an isomorphism of the generator family; {inner.uad.why}")
    return Flag("unknown", "scaled decomposition structure not determined")


def _custom_uad_flag(desc: Monoid, values: list[Fraction]) -> Flag:
    """Decide uniqueness of decompositions for a finite non-coprime list by
    searching the whole coefficient box for a fractional-part collision."""
    box = 1
    for v in values:
        box *= v.denominator
        if box > _UAD_COLLISION_BOX:
            return Flag("unknown", "coefficient box too large to search for a collision")
    from .decomposition import enumerate_decompositions, render_decomposition

    seen: dict[Fraction, Fraction] = {}
    # every coefficient pattern, recorded up to integer translation
    def walk(i: int, total: Fraction):
        if i == len(values):
            frac = total - int(total)
            if frac in seen and seen[frac] != total:
                return (min(total, seen[frac]), max(total, seen[frac]))
            if frac not in seen:
                seen[frac] = total
            return None
        v = values[i]
        for c in range(v.denominator):
            hit = walk(i + 1, total + c * v)
            if hit:
                return hit
        return None

    hit = walk(0, Fraction(0))
    if hit is None:
        return Flag("yes", "exhaustive coefficient-box search found no collision")
    low, high = hit
    target = high  # high = low + integer, so high has two decompositions
    found = enumerate_decompositions(desc, target, len(values))
    if len(found) >= 2:
        witness = (f"{render_decomposition(desc, found[0])} and "
                   f"{render_decomposition(desc, found[1])}")
        return Flag("no", f"two decompositions: {witness}")
    return Flag("unknown", "collision candidate did not verify")


# ---------------------------------------------------------------------------
# normalization and scaling

def normalize_strongly_bounded(desc: Monoid) -> tuple[int, Monoid]:
    """Divide out m = lcm of the numerator set, yielding a unit-numerator
    descriptor for the isomorphic monoid (1/m) M."""
    if desc.family == "custom":
        m = lcm(*[t.numerator for t in generatorwise_terms(desc)])
        scaled = custom([t / m for t in generatorwise_terms(desc)])
        return m, scaled
    if desc.scale != 1:
        raise UnsupportedFamilyError(
            "normalization of a scaled infinite family is not supported; "
            "materialize a finite truncation first"
        )
    if desc.family == "geometric" and desc.ratio.numerator != 1:
        raise UnsupportedFamilyError("geometric numerators grow without bound")
    # every other builtin already has unit numerators
    return 1, desc


def generatorwise_terms(desc: Monoid) -> tuple[Fraction, ...]:
    """The custom term list with any scale folded in."""
    return tuple(t * desc.scale for t in desc.terms)


def scale(desc: Monoid, q) -> Monoid:
    """Descriptor for q*M: every generator is multiplied by q exactly."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("scale factor must be a positive rational")
    if q == 1:
        return desc
    if desc.family == "custom":
        return custom([t * q for t in desc.terms])
    return replace(desc, scale=desc.scale * q)


# ---------------------------------------------------------------------------
# serialization

_COMMON_FIELDS = {"family", "scale"}
_FAMILY_FIELDS = {
    "prime_reciprocal": {"primes"},
    "grams": {"base", "primes"},
    "gap": {"ell", "primes"},
    "geometric": {"q", "include_unit"},
    "power_reciprocal": {"base"},
    "mixed_5_2": {"k", "primes"},
    "custom": {"numerators", "denominators"},
}


def descriptor_to_dict(desc: Monoid) -> dict:
    doc: dict = {"family": desc.family}
    if desc.family in ("grams", "power_reciprocal"):
        doc["base"] = desc.base
    if desc.family == "gap":
        doc["ell"] = desc.ell
    if desc.family == "geometric":
        doc["q"] = str(desc.ratio)
        doc["include_unit"] = desc.include_unit
    if desc.family == "mixed_5_2":
        doc["k"] = desc.k
    if desc.family == "custom":
        doc["numerators"] = [t.numerator for t in desc.terms]
        doc["denominators"] = [t.denominator for t in desc.terms]
    if desc.primes is not None and desc.primes.prefix:
        doc["primes"] = list(desc.primes.prefix)
    if desc.scale != 1:
        doc["scale"] = str(desc.scale)
    return doc


def _expect(doc: dict, key: str, kind, what: str):
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise ValueError(f"field {key!r} must be {what}")
    if not isinstance(value, kind):
        raise ValueError(f"field {key!r} must be {what}")
    return value


def descriptor_from_dict(doc: dict) -> Monoid:
    """Validate and build a descriptor from its document form.

    Unknown fields, missing family parameters, and malformed values are all
    rejected with a diagnostic naming the offending field.
    """
    if not isinstance(doc, dict):
        raise ValueError("descriptor document must be a mapping")
    if "family" not in doc:
        raise ValueError("descriptor is missing the 'family' field")
    family = doc["family"]
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    allowed = _COMMON_FIELDS | _FAMILY_FIELDS[family]
    extra = set(doc) - allowed
    if extra:
        raise ValueError(f"unknown field(s) for family {family}: {', '.join(sorted(extra))}")

    primes = None
    if "primes" in doc:
        arr = _expect(doc, "primes", list, "an integer array")
        if not all(isinstance(p, int) and not isinstance(p, bool) for p in arr):
            raise ValueError("field 'primes' must be an integer array")
        primes = PrimeSequence(prefix=tuple(arr))

    if family == "prime_reciprocal":
        desc = prime_reciprocal(primes=primes)
    elif family == "grams":
        desc = grams(_expect(doc, "base", int, "an integer") if "base" in doc else 2, primes=primes)
    elif family == "gap":
        if "ell" not in doc:
            raise ValueError("gap descriptor needs the 'ell' field")
        desc = gap(_expect(doc, "ell", int, "an integer"), primes=primes)
    elif family == "geometric":
        if "q" not in doc:
            raise ValueError("geometric descriptor needs the 'q' field")
        ratio = parse_rational(_expect(doc, "q", str, "a rational string"))
        include_unit = True
        if "include_unit" in doc:
            include_unit = _expect(doc, "include_unit", bool, "a boolean")
        desc = geometric(ratio, include_unit=include_unit)
    elif family == "power_reciprocal":
        if "base" not in doc:
            raise ValueError("power_reciprocal descriptor needs the 'base' field")
        desc = power_reciprocal(_expect(doc, "base", int, "an integer"))
    elif family == "mixed_5_2":
        if "k" not in doc:
            raise ValueError("mixed_5_2 descriptor needs the 'k' field")
        desc = mixed_5_2(_expect(doc, "k", int, "an integer"), primes=primes)
    else:  # custom
        for key in ("numerators", "denominators"):
            if key not in doc:
                raise ValueError(f"custom descriptor needs the {key!r} field")
            arr = _expect(doc, key, list, "an integer array")
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in arr):
                raise ValueError(f"field {key!r} must be an integer array")
        nums, dens = doc["numerators"], doc["denominators"]
        if len(nums) != len(dens):
            raise ValueError("numerators and denominators must have equal length")
        if not nums:
            raise ValueError("custom generator list must be nonempty")
        for c, d in zip(nums, dens):
            if c < 1 or d < 1:
                raise ValueError(f"custom term {c}/{d} is not a positive rational")
        desc = custom([make_rational(c, d) for c, d in zip(nums, dens)])

    if "scale" in doc:
        factor_ = parse_rational(_expect(doc, "scale", str, "a rational string"))
        if factor_ == 0:
            raise ValueError("scale must be positive")
        desc = scale(desc, factor_)
    return desc
