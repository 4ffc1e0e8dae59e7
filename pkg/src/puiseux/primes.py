"""Deterministic prime machinery: sieve, factoring, prime sequences.

Everything is exact integer arithmetic and fully reproducible: the sieve is
deterministic, Miller-Rabin runs a fixed witness set (deterministic below
3.3e24), and Pollard/Brent rho sweeps a fixed parameter schedule instead of
drawing random seeds.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from math import gcd

# Fixed witnesses: deterministic primality for n < 3.317e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_TRIAL_BOUND = 10**6

_primes: list[int] = []
_limit = 0


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, served from a cached, growing sieve."""
    global _primes, _limit
    if limit > _limit:
        new_limit = max(limit, 2 * _limit, 1 << 10)
        sieve = bytearray(b"\x01") * (new_limit + 1)
        sieve[0:2] = b"\x00\x00"
        p = 2
        while p * p <= new_limit:
            if sieve[p]:
                start = p * p
                sieve[start::p] = b"\x00" * ((new_limit - start) // p + 1)
            p += 1
        _primes = [i for i, flag in enumerate(sieve) if flag]
        _limit = new_limit
    return _primes[: bisect_right(_primes, limit)]


def prime_count(n: int) -> int:
    """pi(n), the number of primes <= n."""
    if n < 2:
        return 0
    primes_up_to(n)
    return bisect_right(_primes, n)


def nth_prime(n: int) -> int:
    """The n-th prime (1-based)."""
    if n < 1:
        raise ValueError("prime index must be >= 1")
    limit = max(_limit, 1 << 10)
    while True:
        primes_up_to(limit)
        if len(_primes) >= n:
            return _primes[n - 1]
        limit *= 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    candidate = max(n + 1, 2)
    if candidate > 2 and candidate % 2 == 0:
        candidate += 1
    while not is_prime(candidate):
        candidate += 1 if candidate == 2 else 2
    return candidate


def multiplicity(n: int, p: int) -> int:
    """Exponent of p in n, for n >= 1."""
    if n < 1:
        raise ValueError("multiplicity is defined for positive integers")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _brent_rho(n: int) -> int:
    """Deterministic Brent cycle-finding split of a composite odd n."""
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise ValueError(f"failed to split {n}")


def factor(n: int, *, trial_bound: int = DEFAULT_TRIAL_BOUND,
           beyond_trial: bool = True) -> dict[int, int]:
    """Exact prime factorization of n >= 1 as {prime: exponent}.

    Trial division handles every factor up to ``trial_bound``; whatever is
    left is split with deterministic Miller-Rabin plus Brent's rho, or the
    call is rejected when ``beyond_trial`` is off.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out[p] = e
    d = 5
    while d <= trial_bound and d * d <= n:
        for p in (d, d + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out[p] = e
        d += 6
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1
        elif not beyond_trial:
            raise ValueError(f"cofactor {n} exceeds the trial bound {trial_bound}")
        else:
            stack = [n]
            while stack:
                m = stack.pop()
                if m == 1:
                    continue
                if is_prime(m):
                    out[m] = out.get(m, 0) + 1
                    continue
                g = _brent_rho(m)
                stack.append(g)
                stack.append(m // g)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class PrimeSequence:
    """A strictly increasing sequence of primes.

    An explicit pinned prefix may be given; past it the sequence continues
    with every prime greater than the last pinned term.  Without a prefix
    the sequence is every prime >= ``start``.
    """

    start: int = 2
    prefix: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.start < 2:
            raise ValueError("prime sequence start must be >= 2")
        last = 1
        for p in self.prefix:
            if not is_prime(p):
                raise ValueError(f"prime override contains non-prime {p}")
            if p <= last:
                raise ValueError("prime override must be strictly increasing")
            last = p

    def _base(self) -> int:
        # primes > _base() continue the sequence after the prefix
        return self.prefix[-1] if self.prefix else self.start - 1

    def term(self, n: int) -> int:
        if n < 1:
            raise ValueError("sequence index must be >= 1")
        k = len(self.prefix)
        if n <= k:
            return self.prefix[n - 1]
        return nth_prime(prime_count(self._base()) + (n - k))

    def index_of(self, p: int) -> int | None:
        """1-based position of p in the sequence, or None if absent."""
        if p in self.prefix:
            return self.prefix.index(p) + 1
        if not is_prime(p):
            return None
        base = self._base()
        if p <= base:
            return None
        return len(self.prefix) + prime_count(p) - prime_count(base)
