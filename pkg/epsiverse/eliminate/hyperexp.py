"""Hyperexponentiation ``k_n^m`` with exact comparisons beyond machine magnitude.

``k_0^m = m`` and ``k_{n+1}^m = k^(k_n^m)``. Values up to ``cap_bits`` bits are
kept as integers. Larger values become a tower ``c * k^k^...^t`` of height ``h``
whose top ``t`` is exact and whose next level already exceeds the cap; that
normal form is unique, so towers of one base compare exactly.
"""

import functools
from typing import Optional, Union

from ..errors import PreconditionError

DEFAULT_CAP_BITS = 4096

Number = Union[int, "Hyperexp"]


def _fits(k: int, exponent: int, cap_bits: int) -> bool:
    if k <= 1 or exponent <= 0:
        return True
    # k^e < 2^(e * bit_length(k))
    return exponent * k.bit_length() <= cap_bits or (exponent <= cap_bits and (k**exponent).bit_length() <= cap_bits)


@functools.total_ordering
class Hyperexp:
    __slots__ = ("base", "height", "top", "coefficient", "cap_bits")

    def __init__(self, base: int, height: int, top: int, coefficient: int = 1, cap_bits: int = DEFAULT_CAP_BITS):
        self.base = base
        self.height = height
        self.top = top
        self.coefficient = coefficient
        self.cap_bits = cap_bits

    @property
    def exact(self) -> Optional[int]:
        """The integer value, or ``None`` for a symbolic tower."""
        if self.height == 0:
            return self.coefficient * self.top
        return None

    def __int__(self) -> int:
        value = self.exact
        if value is None:
            raise OverflowError(f"{self} exceeds {self.cap_bits} bits")
        return value

    def __mul__(self, other: int) -> "Hyperexp":
        if not isinstance(other, int) or other < 0:
            return NotImplemented
        if self.height == 0:
            return Hyperexp(self.base, 0, self.top * self.coefficient * other, 1, self.cap_bits)
        return Hyperexp(self.base, self.height, self.top, self.coefficient * other, self.cap_bits)

    __rmul__ = __mul__

    def _compare(self, other: Number) -> int:
        if isinstance(other, int):
            other = Hyperexp(self.base, 0, other, 1, self.cap_bits)
        a, b = self.exact, other.exact
        if a is not None and b is not None:
            return (a > b) - (a < b)
        if a is not None:
            return -other._against_int(a)
        if b is not None:
            return self._against_int(b)
        if self.base != other.base:
            raise PreconditionError(f"Cannot compare towers of bases {self.base} and {other.base}")
        if self.height != other.height:
            return 1 if self.height > other.height else -1
        if self.top == other.top:
            return (self.coefficient > other.coefficient) - (self.coefficient < other.coefficient)
        if self.height >= 2:
            return 1 if self.top > other.top else -1
        # c * k^t against c' * k^t'
        big, small, sign = (self, other, 1) if self.top > other.top else (other, self, -1)
        d = big.top - small.top
        if d > small.coefficient.bit_length():
            return sign
        lhs = big.coefficient * big.base**d
        return sign * ((lhs > small.coefficient) - (lhs < small.coefficient))

    def _against_int(self, n: int) -> int:
        """Sign of ``self - n`` for a symbolic ``self``."""
        if n.bit_length() <= self.cap_bits or self.height >= 2:
            return 1
        if self.top >= n.bit_length():
            return 1
        value = self.coefficient * self.base**self.top
        return (value > n) - (value < n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (int, Hyperexp)):
            return NotImplemented
        return self._compare(other) == 0

    def __lt__(self, other: Number) -> bool:
        if not isinstance(other, (int, Hyperexp)):
            return NotImplemented
        return self._compare(other) < 0

    def __hash__(self) -> int:
        return hash((self.base, self.height, self.top, self.coefficient))

    def __repr__(self) -> str:
        return f"Hyperexp({self})"

    def __str__(self) -> str:
        if self.height == 0:
            return str(self.coefficient * self.top)
        tower = f"{self.base}_{self.height}^{self.top}"
        return tower if self.coefficient == 1 else f"{self.coefficient}*{tower}"


def hyperexp(k: int, n: int, m: int, cap_bits: int = DEFAULT_CAP_BITS) -> Hyperexp:
    """``k_n^m``, exact below ``2^cap_bits`` and a normalized tower above."""
    if n < 0 or m < 0 or k < 0:
        raise PreconditionError(f"Hyperexponent arguments must be natural numbers, got ({k}, {n}, {m})")
    if k == 0 and n > 0:
        raise PreconditionError("Base 0 is undefined for a positive height")
    value = m
    for level in range(n):
        if k == 1:
            return Hyperexp(k, 0, 1, 1, cap_bits)
        if not _fits(k, value, cap_bits):
            return Hyperexp(k, n - level, value, 1, cap_bits)
        value = k**value
    return Hyperexp(k, 0, value, 1, cap_bits)


def within(actual: int, bound: Number) -> bool:
    if isinstance(bound, int):
        return actual <= bound
    return not bound < actual
