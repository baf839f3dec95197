"""Binomials mod p via Lucas' theorem, and base-p digits."""

from math import comb
from typing import List

from .errors import DomainError
from .prime_field import FieldElement, check_prime


def base_p_digits(w: int, p: int, count: int) -> List[int]:
    """Least-significant-first base-p digits of w, padded to `count`.

    Digit 0 is the units digit, so digit k is the coefficient of p^k.
    """
    check_prime(p)
    if count < 1:
        raise DomainError("count must be at least 1")
    if w < 0:
        raise DomainError("w must be nonnegative")
    digits = []
    for _ in range(count):
        w, d = divmod(w, p)
        digits.append(d)
    return digits


def lucas_binomial(n: int, k: int, p: int) -> FieldElement:
    """C(n, k) mod p, one base-p digit pair at a time."""
    check_prime(p)
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be nonnegative")
    if k > n:
        return FieldElement(0, p)
    out = 1
    while k:
        n, nd = divmod(n, p)
        k, kd = divmod(k, p)
        if kd > nd:
            return FieldElement(0, p)
        out = (out * comb(nd, kd)) % p
    return FieldElement(out, p)
