"""Atomic decompositions, membership, and divisibility.

An atomic decomposition of q writes

    q = eta + sum_i zeta_i * a_i,    eta >= 0,  0 <= zeta_i < d(a_i),

over the generator family.  For families whose denominators are pairwise
coprime every element of the monoid has exactly one such decomposition, and
it can be computed coefficient by coefficient: zeta_i is the unique residue
mod d_i solving a congruence (via the modular inverse of the numerator),
and the leftover must be a nonnegative integer, which becomes eta.  The
closed form is validated against the brute-force enumerator in the test
suite before anything trusts it.

Membership is three-valued: Member carries a coefficient certificate that
re-evaluates to the query, NotMember carries a machine-checkable
obstruction (a valuation or sign inequality), and Unknown carries the
bounds that were exhausted.  A false NotMember is never reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import search
from .errors import UnsupportedFamilyError
from .monoids import Monoid, generator_value, index_set_for_prime
from .primes import factor, multiplicity


@dataclass(frozen=True)
class Bounds:
    """Search limits for the exhaustive paths, echoed into every verdict."""

    max_index: int = 50
    max_coeff: int = 4096

    def describe(self) -> str:
        return f"max_index={self.max_index}, max_coeff={self.max_coeff}"


@dataclass(frozen=True)
class AtomicDecomposition:
    """q = eta + sum zeta[i] * a_i with 0 <= zeta[i] < d(a_i)."""

    eta: int
    zeta: dict[int, int]
    value: Fraction

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.zeta.items())

    def coefficient_sum(self) -> int:
        return sum(self.zeta.values())

    def verify(self, desc: Monoid) -> bool:
        if self.eta < 0:
            return False
        total = Fraction(self.eta)
        for i, z in self.zeta.items():
            a = generator_value(desc, i)
            if not 0 <= z < a.denominator:
                return False
            total += z * a
        return total == self.value


@dataclass(frozen=True)
class Member:
    """Membership certificate: coefficients on generators plus an integer
    part eta contributed by the generators themselves (eta = 0 unless the
    certificate came from an atomic decomposition)."""

    coefficients: dict[int, int]
    eta: int = 0
    note: str = ""

    def evaluate(self, desc: Monoid) -> Fraction:
        total = Fraction(self.eta)
        for i, c in self.coefficients.items():
            total += c * generator_value(desc, i)
        return total


@dataclass(frozen=True)
class NotMember:
    """reason is one of "denominator-support", "negative-remainder",
    "residue"; the structured fields make the obstruction re-checkable."""

    reason: str
    detail: str
    prime: int | None = None
    valuation: int | None = None
    allowed: int | None = None
    deficit: Fraction | None = None


@dataclass(frozen=True)
class Unknown:
    bounds: Bounds
    detail: str = ""


MembershipVerdict = Member | NotMember | Unknown


# ---------------------------------------------------------------------------
# closed-form decomposition for pairwise-coprime families

def has_unique_decomposition(desc: Monoid) -> bool:
    """Whether the closed-form decomposition applies: the generator
    denominators must be pairwise coprime (so every prime of a denominator
    pins exactly one index)."""
    if desc.family == "prime_reciprocal":
        return desc.scale.denominator == 1
    if desc.family == "mixed_5_2":
        return desc.k == 1 and desc.scale.denominator == 1
    if desc.family == "custom":
        dens = [t.denominator for t in desc.terms]
        return all(
            gcd(dens[i], dens[j]) == 1
            for i in range(len(dens))
            for j in range(i + 1, len(dens))
        )
    return False


def _require_uad(desc: Monoid, what: str) -> None:
    if not has_unique_decomposition(desc):
        raise UnsupportedFamilyError(
            f"{what} needs pairwise coprime generator denominators; "
            f"family {desc.family!r} does not provide them"
        )


def atomic_decompose(desc: Monoid, q: Fraction) -> AtomicDecomposition | NotMember:
    """The unique atomic decomposition of q, or the obstruction showing
    q is not in the monoid.

    Only the generators whose denominator meets d(q) can carry a nonzero
    coefficient, so the candidate index set comes from factoring d(q); each
    coefficient is then a single forced residue.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("monoid elements are nonnegative")
    _require_uad(desc, "atomic decomposition")
    if q == 0:
        return AtomicDecomposition(0, {}, q)

    indices: dict[int, Fraction] = {}
    for p, e in factor(q.denominator).items():
        found = index_set_for_prime(desc, p, scan_bound=max(p, 10**7))
        if found.kind != "exact" or len(found.indices) > 1:
            raise UnsupportedFamilyError(
                f"prime {p} does not pin a unique generator index"
            )
        if not found.indices:
            return NotMember(
                "denominator-support",
                f"prime {p} divides d(q) but no generator denominator",
                prime=p,
                valuation=-e,
                allowed=0,
            )
        i = found.indices[0]
        a = indices.setdefault(i, generator_value(desc, i))
        cap = multiplicity(a.denominator, p)
        if e > cap:
            return NotMember(
                "denominator-support",
                f"v_{p}(q) = -{e} but generator {i} only allows -{cap}",
                prime=p,
                valuation=-e,
                allowed=-cap,
            )

    order = sorted(indices)
    big_d = 1
    for i in order:
        big_d *= indices[i].denominator
    scaled = q * big_d
    assert scaled.denominator == 1
    total = int(scaled)
    zeta: dict[int, int] = {}
    rest = q
    for i in order:
        a = indices[i]
        d_i = a.denominator
        cofactor = (big_d // d_i) * a.numerator % d_i
        z = total * pow(cofactor, -1, d_i) % d_i
        if z:
            zeta[i] = z
            rest -= z * a
    if rest < 0:
        return NotMember(
            "negative-remainder",
            f"forced coefficients overshoot q by {-rest}",
            deficit=-rest,
        )
    assert rest.denominator == 1
    return AtomicDecomposition(int(rest), zeta, q)


def enumerate_decompositions(desc: Monoid, q: Fraction, max_index: int) -> list[AtomicDecomposition]:
    """Every atomic decomposition supported on generator indices up to
    max_index, by exhaustive search; the independent check for the closed
    form above.  Ordered by (eta, coefficient vector)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("monoid elements are nonnegative")
    if q == 0:
        return [AtomicDecomposition(0, {}, q)]
    lo = desc.min_index()
    hi = desc.max_index()
    top = max_index if hi is None else min(hi, max_index)
    indices = [i for i in range(lo, top + 1)]
    atoms = [generator_value(desc, i) for i in indices]

    big_d = q.denominator
    for a in atoms:
        big_d = big_d * a.denominator // gcd(big_d, a.denominator)
    weights = [int(a * big_d) for a in atoms]
    caps = [a.denominator - 1 for a in atoms]
    target = int(q * big_d)
    found = search.solve(weights, target, caps=caps, tail=big_d)

    out = []
    for coeffs, eta in found:
        zeta = {i: c for i, c in zip(indices, coeffs) if c}
        out.append(AtomicDecomposition(eta, zeta, q))
    dense = lambda dec: tuple(dec.zeta.get(i, 0) for i in indices)
    out.sort(key=lambda dec: (dec.eta, dense(dec)))
    return out


def render_decomposition(desc: Monoid, dec: AtomicDecomposition) -> str:
    """Human form "q = eta + z1*(a1) + ..." in index order."""
    parts = [str(dec.eta)]
    for i, z in dec.pairs():
        parts.append(f"{z}·({generator_value(desc, i)})")
    return f"{dec.value} = " + " + ".join(parts)


# ---------------------------------------------------------------------------
# membership

def _grams_closed_form_applies(desc: Monoid) -> bool:
    if desc.family != "grams" or desc.scale != 1:
        return False
    seq = desc.prime_sequence
    return all(seq.index_of(p) is None for p in factor(desc.base))


def _grams_member(desc: Monoid, q: Fraction) -> Member | NotMember:
    """Derived membership test for 1/(b^n p_n) families.

    Each controlled prime of d(q) forces one residue; what remains must be
    a nonnegative b-adic rational, every one of which the family contains.
    This criterion is implementer-derived and is validated against bounded
    exhaustive search in the acceptance suite.
    """
    base = desc.base
    seq = desc.prime_sequence
    base_primes = set(factor(base))
    coefficients: dict[int, int] = {}
    rest = q
    for p, e in sorted(factor(q.denominator).items()):
        if p in base_primes:
            continue
        n = seq.index_of(p)
        if n is None:
            return NotMember(
                "denominator-support",
                f"prime {p} divides d(q) but no generator denominator",
                prime=p,
                valuation=-e,
                allowed=0,
            )
        if e > 1:
            return NotMember(
                "denominator-support",
                f"v_{p}(q) = -{e} but generator {n} only allows -1",
                prime=p,
                valuation=-e,
                allowed=-1,
            )
        # rho * (1/(b^n p)) must absorb the p-part of q
        u = q.numerator % p
        v = (q.denominator // p) % p
        rho = u * pow(base, n, p) % p * pow(v, -1, p) % p
        if rho:
            coefficients[n] = rho
            rest -= rho * Fraction(1, base**n * p)
    if rest < 0:
        return NotMember(
            "negative-remainder",
            f"forced residues overshoot q by {-rest}",
            deficit=-rest,
        )
    if rest > 0:
        # rest is b-adic by construction: write it over a power of the base
        k = _base_power(rest.denominator, base)
        m = int(rest * base**k)
        if k >= 1:
            p_k = seq.term(k)
            coefficients[k] = coefficients.get(k, 0) + m * p_k
        else:
            p_1 = seq.term(1)
            coefficients[1] = coefficients.get(1, 0) + m * base * p_1
    return Member(dict(sorted(coefficients.items())),
                  note="residues at controlled primes plus a b-adic remainder")


def _base_power(den: int, base: int) -> int:
    """Smallest k with den | base**k (den's primes all divide base)."""
    k = 0
    power = 1
    while power % den:
        power *= base
        k += 1
    return k


def _obstruction_prescreen(desc: Monoid, q: Fraction) -> NotMember | None:
    """Exact valuation obstructions, where the index sets are exact."""
    for p, e in sorted(factor(q.denominator).items()):
        found = index_set_for_prime(desc, p, scan_bound=max(p, 10**7))
        if found.kind != "exact":
            continue
        if not found.indices:
            return NotMember(
                "denominator-support",
                f"prime {p} divides d(q) but no generator denominator",
                prime=p,
                valuation=-e,
                allowed=0,
            )
        cap = max(
            multiplicity(generator_value(desc, i).denominator, p)
            for i in found.indices
        )
        if e > cap:
            return NotMember(
                "denominator-support",
                f"v_{p}(q) = -{e} but the family only allows -{cap}",
                prime=p,
                valuation=-e,
                allowed=-cap,
            )
    return None


def _bounded_member_search(desc: Monoid, q: Fraction, bounds: Bounds) -> Member | NotMember | Unknown:
    lo = desc.min_index()
    hi = desc.max_index()
    top = bounds.max_index if hi is None else min(hi, bounds.max_index)
    indices = list(range(lo, top + 1))
    atoms = [generator_value(desc, i) for i in indices]
    big_d = q.denominator
    for a in atoms:
        big_d = big_d * a.denominator // gcd(big_d, a.denominator)
    weights = [int(a * big_d) for a in atoms]
    target = int(q * big_d)
    caps = [bounds.max_coeff] * len(indices)
    found = search.solve(weights, target, caps=caps, first_only=True)
    if found:
        coeffs, _ = found[0]
        cert = {i: c for i, c in zip(indices, coeffs) if c}
        return Member(cert, note=f"found by bounded search ({bounds.describe()})")
    if desc.family == "custom" and top == hi and all(
        q / a <= bounds.max_coeff for a in atoms
    ):
        # the whole finite list was searched with value-sufficient caps
        return NotMember(
            "negative-remainder",
            "complete search over the finite generator list: every branch "
            "either overshoots q or leaves a positive remainder",
        )
    return Unknown(bounds, detail="bounded search exhausted")


def member(desc: Monoid, q: Fraction, bounds: Bounds = Bounds()) -> MembershipVerdict:
    """Is q an element of the monoid?

    Pairwise-coprime families answer exactly through the decomposition;
    grams-like families through the derived residue test; everything else
    through valuation prescreens plus bounded search, with Unknown as the
    honest third answer.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("monoid elements are nonnegative")
    if q == 0:
        return Member({})
    if has_unique_decomposition(desc):
        result = atomic_decompose(desc, q)
        if isinstance(result, NotMember):
            return result
        return Member(dict(result.zeta), eta=result.eta,
                      note="unique atomic decomposition")
    if _grams_closed_form_applies(desc):
        return _grams_member(desc, q)
    hit = _obstruction_prescreen(desc, q)
    if hit is not None:
        return hit
    return _bounded_member_search(desc, q, bounds)


def divides(desc: Monoid, r: Fraction, q: Fraction, bounds: Bounds = Bounds()) -> MembershipVerdict:
    """Does r divide q in the monoid, i.e. is q - r an element?"""
    r, q = Fraction(r), Fraction(q)
    if r < 0 or q < 0:
        raise ValueError("monoid elements are nonnegative")
    if r > q:
        return NotMember(
            "negative-remainder",
            f"q - r = {q - r} is negative and the monoid has no negative elements",
            deficit=r - q,
        )
    return member(desc, q - r, bounds)
