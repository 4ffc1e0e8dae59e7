"""Exhaustive search for nonnegative integer combinations, exactly.

Targets and weights are cleared-denominator integers, so every comparison
is exact.  The solver enumerates all (or the first) solutions of

    sum_i  a_i * w_i  (+ eta * tail)  =  target,   a_i >= 0 integers,

optionally with per-position caps and exact/max/min total-length
constraints (eta never counts toward length).  Three prunes keep the walk
fast without losing solutions:

  * positivity and value windows: a coefficient never overshoots the
    remaining target, and with an exact length the remaining copies must
    fit between the smallest and largest remaining weights;
  * suffix congruence: later contributions are all multiples of
    G = gcd(later weights, tail), so the current coefficient is confined
    to a single residue class mod G / gcd(w, G), found by modular inverse.

Positions are processed in descending weight order; solutions come back in
the caller's original position order.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence


def _coefficient_range(w: int, remaining: int, modulus: int, cap: int) -> range:
    """Admissible coefficients a in [0, cap] with a*w = remaining (mod
    modulus), largest first.  modulus 0 means nothing follows: a*w must
    equal the remaining target exactly."""
    if cap < 0:
        return range(0)
    if modulus == 0:
        a, rem = divmod(remaining, w)
        if rem == 0 and a <= cap:
            return range(a, a - 1, -1)
        return range(0)
    g = gcd(w, modulus)
    if remaining % g:
        return range(0)
    step = modulus // g
    if step == 1:
        return range(cap, -1, -1)
    a0 = (remaining // g) * pow(w // g, -1, step) % step
    if a0 > cap:
        return range(0)
    top = a0 + (cap - a0) // step * step
    return range(top, a0 - 1, -step)


def solve(
    weights: Sequence[int],
    target: int,
    *,
    caps: Sequence[int | None] | None = None,
    exact_length: int | None = None,
    max_length: int | None = None,
    min_length: int = 0,
    tail: int | None = None,
    first_only: bool = False,
) -> list[tuple[tuple[int, ...], int]]:
    """All solutions as (coefficients, eta) pairs.

    ``tail`` enables an unbounded trailing weight whose coefficient eta
    absorbs the leftover (which must then be a nonnegative multiple of it);
    without it the leftover must be zero.
    """
    n = len(weights)
    if any(wt <= 0 for wt in weights):
        raise ValueError("weights must be positive")
    if target < 0:
        return []
    order = sorted(range(n), key=lambda i: (-weights[i], i))
    w = [weights[i] for i in order]
    cap_list = [None] * n if caps is None else [caps[i] for i in order]

    suffix_mod = [0] * (n + 1)   # gcd of weights after position t, plus tail
    suffix_mod[n] = tail if tail else 0
    for t in range(n - 1, -1, -1):
        suffix_mod[t] = suffix_mod[t + 1] if t == n - 1 else gcd(w[t + 1], suffix_mod[t + 1])
    smallest = w[-1] if n else 0

    out: list[tuple[tuple[int, ...], int]] = []
    coeffs = [0] * n

    def emit(leftover: int, used: int) -> bool:
        if tail:
            eta, rem = divmod(leftover, tail)
            if rem:
                return False
        elif leftover:
            return False
        else:
            eta = 0
        if used < min_length or (exact_length is not None and used != exact_length):
            return False
        original = [0] * n
        for pos, c in zip(order, coeffs):
            original[pos] = c
        out.append((tuple(original), eta))
        return True

    def rec(t: int, remaining: int, used: int) -> bool:
        if t == n:
            return emit(remaining, used) and first_only
        top = remaining // w[t]
        if cap_list[t] is not None:
            top = min(top, cap_list[t])
        if exact_length is not None:
            budget = exact_length - used
            if budget < 0:
                return False
            if tail is None and (remaining > budget * w[t] or remaining < budget * smallest):
                return False
            top = min(top, budget)
        elif max_length is not None:
            top = min(top, max_length - used)
        for a in _coefficient_range(w[t], remaining, suffix_mod[t], top):
            coeffs[t] = a
            if rec(t + 1, remaining - a * w[t], used + a):
                coeffs[t] = 0
                return True
        coeffs[t] = 0
        return False

    rec(0, target, 0)
    return out
