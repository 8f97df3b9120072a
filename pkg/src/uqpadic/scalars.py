"""Exact rational scalars with p-adic valuation, the q-specialization,
and quantum integers / binomials.

Scalars are plain :class:`fractions.Fraction` values; ``Fraction`` already
keeps lowest terms with a positive denominator, which is all the invariant
bookkeeping we need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

Scalar = Fraction

INF = math.inf

__all__ = [
    "Scalar",
    "INF",
    "QSpec",
    "as_scalar",
    "valuation",
    "qint",
    "qfactorial",
    "qbinom",
    "is_prime",
    "format_scalar",
    "parse_scalar",
    "format_valuation",
    "unit_part_mod",
]


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(x, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = as_scalar(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def format_valuation(v) -> int | str:
    return "inf" if v == INF else int(v)


def format_scalar(x) -> str:
    x = as_scalar(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text: str) -> Fraction:
    return Fraction(text.strip())


def unit_part_mod(x, p: int, a: int) -> int:
    """Residue of an element of Z_(p) modulo p**a, as an integer in [0, p**a)."""
    x = as_scalar(x)
    mod = p**a
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not p-integral for p={p}")
    return (x.numerator * pow(x.denominator, -1, mod)) % mod


def _check_t(t: Fraction) -> None:
    if t == 0 or t * t == 1:
        raise ValueError(f"degenerate quantum parameter t={t}")


@lru_cache(maxsize=None)
def _qint(n: int, t: Fraction) -> Fraction:
    return (t**n - t**-n) / (t - 1 / t)


def qint(n: int, t) -> Fraction:
    """Balanced quantum integer [n]_t = (t^n - t^-n)/(t - t^-1)."""
    t = as_scalar(t)
    _check_t(t)
    return _qint(int(n), t)


@lru_cache(maxsize=None)
def _qfact(n: int, t: Fraction) -> Fraction:
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= _qint(k, t)
    return out


def qfactorial(n: int, t) -> Fraction:
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    t = as_scalar(t)
    _check_t(t)
    return _qfact(int(n), t)


def qbinom(n: int, i: int, t) -> Fraction:
    if not 0 <= i <= n:
        raise ValueError(f"qbinom needs n >= i >= 0, got n={n}, i={i}")
    t = as_scalar(t)
    _check_t(t)
    return _qfact(n, t) / (_qfact(i, t) * _qfact(n - i, t))


@dataclass(frozen=True)
class QSpec:
    """The specialization of q: residue prime p and q' = q^(1/d).

    ``qprime`` defaults to ``1 + p``. Exponents of q' are always integers,
    so ``q^<lam, mu>`` is ``qpow(d * <lam, mu>)``.
    """

    p: int = 5
    d: int = 1
    qprime: Fraction = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.qprime is None:
            object.__setattr__(self, "qprime", Fraction(1 + self.p))
        else:
            object.__setattr__(self, "qprime", as_scalar(self.qprime))
        if not is_prime(self.p) or self.p <= 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.qprime in (1, -1, 0):
            raise ValueError("q' must not be 0 or +-1")
        if valuation(self.qprime - 1, self.p) < 1:
            raise ValueError("q' must be congruent to 1 modulo p")

    @property
    def q(self) -> Fraction:
        return self.qprime**self.d

    def qpow(self, k: int) -> Fraction:
        """q'^k for an integer exponent k."""
        return _qpow(self.qprime, int(k))

    def qi(self, di: int) -> Fraction:
        return self.qpow(self.d * di)

    def v(self, x):
        return valuation(x, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "qprime": format_scalar(self.qprime)}


@lru_cache(maxsize=4096)
def _qpow(qprime: Fraction, k: int) -> Fraction:
    return qprime**k
