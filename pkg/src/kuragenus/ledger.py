"""Closed-form bounds used by the planarization argument, evaluated exactly.

Everything here is arithmetic on the parameters k (excluded junction size),
xi (apex set size), K (per-piece nonplanarity) and k_prime (the face-cover
constant for 3-connected graphs, which is only known to exist and is kept as
a parameter). Logarithms are base two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal, localcontext

# integers with more digits than this are refused rather than built
DIGIT_LIMIT = 5000


def _guard(x: int) -> int:
    if x.bit_length() > DIGIT_LIMIT * 3.33:
        raise OverflowError("bound is too large to evaluate exactly")
    return x


def ceil_power(base: int, exponent: Decimal | int, factor: int = 1) -> int:
    """ceil(factor * base ** exponent) for a possibly non-integral exponent."""
    if isinstance(exponent, int) or exponent == exponent.to_integral_value():
        e = int(exponent)
        if e * max(base.bit_length(), 1) > DIGIT_LIMIT * 3.33:
            raise OverflowError("bound is too large to evaluate exactly")
        return factor * base**e
    with localcontext() as ctx:
        digits = float(exponent) * math.log10(max(base, 2)) + 10
        if digits > DIGIT_LIMIT:
            raise OverflowError("bound is too large to evaluate exactly")
        ctx.prec = int(digits) + 30
        val = Decimal(factor) * Decimal(base) ** exponent
        return int(val.to_integral_value(rounding=ROUND_CEILING))


def log2_exact(k: int) -> Decimal:
    """log2(k) as a Decimal, exact when k is a power of two."""
    if k > 0 and k & (k - 1) == 0:
        return Decimal(k.bit_length() - 1)
    with localcontext() as ctx:
        ctx.prec = 60
        return Decimal(k).ln() / Decimal(2).ln()


def tree_threshold(d: int, t: int, k: int) -> int:
    """ceil(3 * d^(t log 2k)): marks needed for k disjoint triples over t trees."""
    if d < 2 or k < 1 or t < 0:
        raise ValueError("need d >= 2, k >= 1, t >= 0")
    return ceil_power(d, Decimal(t) * log2_exact(2 * k), 3)


def f_tree(k: int, t: int) -> int:
    """f(k,0) = k and f(k,t) = ceil(3 f(k,t-1)^(1 + t log 2k))."""
    if t < 0 or k < 1:
        raise ValueError("need k >= 1, t >= 0")
    val = k
    for s in range(1, t + 1):
        val = ceil_power(val, 1 + Decimal(s) * log2_exact(2 * k), 3)
    return val


@dataclass(frozen=True)
class BoundLedger:
    k: int
    xi: int
    K: int = 1
    k_prime: int = 1

    def __post_init__(self):
        if self.k < 1 or self.xi < 0 or self.K < 1 or self.k_prime < 1:
            raise ValueError("parameters must be positive (xi may be zero)")

    # two-connected bounds
    def twist(self) -> int:
        return 3 * self.xi + 64 * self.xi**2

    def m1(self) -> int:
        return 4 * self.k * self.xi

    def m2(self) -> int:
        return 4 * self.k * math.comb(self.xi, 2)

    def m3_binomial(self) -> int:
        return 2 * self.k * math.comb(self.xi, 3)

    def m3_cubic(self) -> int:
        """The weaker cubic count 2k xi^3."""
        return 2 * self.k * self.xi**3

    def m_total(self) -> int:
        return self.m1() + self.m2() + self.m3_binomial()

    def m_total_bound(self) -> int:
        return 4 * self.k * self.xi**3

    def bigchain_sum(self) -> int:
        """|X| + (3K+64K^2)(4k|X|^3)|X| + (4k|X|^3+1)|X|, before rounding up."""
        K, k, x = self.K, self.k, self.xi
        return x + (3 * K + 64 * K * K) * (4 * k * x**3) * x + (4 * k * x**3 + 1) * x

    def bigchain(self) -> int:
        return 300 * self.k * self.K**2 * self.xi**4

    def parallel(self) -> int:
        return self.k * self.K * self.xi

    def ell(self) -> int:
        return 1204 * self.k**4 * self.k_prime**2 * self.xi**8

    def onesided(self) -> int:
        return self.ell() * self.K**2

    def face_regions(self) -> int:
        return self.k * self.k_prime**2 * self.xi

    # weightings
    def cost_max(self) -> int:
        return self.k**3 * self.xi**6

    def cost(self, alpha: int, beta_sum: int) -> int:
        return self.k**3 * self.xi**6 - self.k**2 * self.xi**5 * alpha - beta_sum

    def alpha_cap(self) -> int:
        return self.k * self.xi**3

    def beta_cap(self) -> int:
        return self.k * self.xi**2

    def f_two_connected(self, c: int) -> int:
        """f(0)=0, f(c) = max(ell f(c-1)^2, 90000 k^5 ell xi^11)."""
        ell = self.ell()
        floor = 90000 * self.k**5 * ell * self.xi**11
        val = 0
        for _ in range(c):
            val = _guard(max(ell * val * val, floor))
        return val

    def tau2(self) -> int:
        return self.f_two_connected(self.cost_max())

    def f_connected(self, c: int) -> int:
        """f(0)=0, f(c) = max(2 f(c-1), tau2 + k xi^2)."""
        base = self.tau2() + self.k * self.xi**2
        val = 0
        for _ in range(c):
            val = max(2 * val, base)
        return val

    def tau1(self) -> int:
        return self.f_connected(self.cost_max())

    def tau0(self, tau1: int | None = None) -> int:
        if tau1 is None:
            tau1 = self.tau1()
        return self.k * self.xi**3 * tau1

    def component_bound(self) -> int:
        """Components that survive deletion: at most k xi^3."""
        return self.k * self.xi**3

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "xi": self.xi,
            "K": self.K,
            "k_prime": self.k_prime,
            "twist": self.twist(),
            "M1": self.m1(),
            "M2": self.m2(),
            "M3_binomial": self.m3_binomial(),
            "M3_cubic": self.m3_cubic(),
            "M_bound": self.m_total_bound(),
            "bigchain": self.bigchain(),
            "parallel": self.parallel(),
            "ell": self.ell(),
            "onesided": self.onesided(),
            "cost_max": self.cost_max(),
        }
