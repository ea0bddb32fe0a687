"""Sufficient sample sizes for exact Chow-Liu recovery and the matching failure bounds.

Each regime pairs a bias term g(n) with the threshold I (clean or noisy):

    countable_c_lt2, noisy   g(n) = n ** ((1 - c) / c)
    finite_alphabet          g(n) = 1 / sqrt(n)
    countable_c_ge2          g(n) = ln(n) / sqrt(n)

Two forms are available. The ``theorem`` form requires

    I > C g(n)   and   n / log2(n)**2 >= 72 ln(p / delta) / (I - C g(n))**2

and the ``proof`` form keeps the union bound explicit:

    I > 3 C g(n) and   n / log2(n)**2 >= 2 ln(6 C(p, 2) / delta) / (I/3 - C g(n))**2.

With C taken as is in the theorem form and C/3 in the proof form, the theorem
form is the more conservative one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

REGIMES = ("countable_c_lt2", "finite_alphabet", "countable_c_ge2", "noisy")
FORMS = ("theorem", "proof")
N_MIN = 3
N_CAP = 2**60
# below this n the ratio n / log2(n)^2 is not yet increasing
_MONOTONE_FROM = 8


@dataclass(frozen=True)
class TailParams:
    """Power-law envelope c1 / k**c <= p_i(k) <= c2 / k**c of the node marginals."""

    c: float
    c1: float
    c2: float

    def __post_init__(self):
        if not self.c > 1:
            raise ValueError(f"tail exponent c must exceed 1, got {self.c}")
        if not 0 < self.c1 <= self.c2:
            raise ValueError(f"need 0 < c1 <= c2, got c1={self.c1}, c2={self.c2}")


def _tail_integral_closed(c: float, c1: float) -> float:
    # int_{c1}^inf u^(1/c - 2) ln(e u / c1) du = c1^(-b) (1/b + 1/b^2), b = 1 - 1/c
    b = 1.0 - 1.0 / c
    return c1 ** (-b) * (1.0 / b + 1.0 / b**2)


def _tail_integral_quad(c: float, c1: float) -> float:
    # u = c1 e^t turns the integrand into c1^(-b) e^(-b t) (1 + t) on [0, inf)
    b = 1.0 - 1.0 / c
    head, _ = integrate.quad(lambda t: math.exp(-b * t) * (1.0 + t), 0.0, 50.0 / b,
                             epsabs=0.0, epsrel=1e-13, limit=200)
    # analytic remainder beyond T = 50 / b
    T = 50.0 / b
    tail = math.exp(-b * T) * ((1.0 + T) / b + 1.0 / b**2)
    return c1 ** (-b) * (head + tail)


def bias_constant(tail: TailParams, method: str = "closed") -> float:
    """C = 3 c2 [c2^((1-c)/c) + (1/c) int_{c1}^inf u^(1/c-2) ln(e u / c1) du + 1/c1].

    Only defined for 1 < c < 2. ``method`` is ``closed`` or ``quad``.
    """
    c, c1, c2 = tail.c, tail.c1, tail.c2
    if not 1 < c < 2:
        raise ValueError(f"the bias constant formula needs 1 < c < 2, got c={c}")
    if method == "closed":
        integral = _tail_integral_closed(c, c1)
    elif method == "quad":
        integral = _tail_integral_quad(c, c1)
    else:
        raise ValueError(f"unknown method {method!r}")
    return 3.0 * c2 * (c2 ** ((1.0 - c) / c) + integral / c + 1.0 / c1)


@dataclass(frozen=True)
class BoundQuery:
    """Inputs to :func:`sufficient_n` and :func:`failure_probability_bound`.

    ``C`` may be given explicitly; otherwise it is derived from ``tail``
    (only possible in the c < 2 and noisy regimes).
    """

    threshold: float
    p: int
    delta: float
    regime: str = "finite_alphabet"
    tail: TailParams | None = None
    C: float | None = None
    form: str = "theorem"

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}; expected one of {REGIMES}")
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}; expected one of {FORMS}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")
        if self.p < 2:
            raise ValueError(f"p must be at least 2, got {self.p}")
        if self.C is None:
            if self.regime in ("finite_alphabet", "countable_c_ge2"):
                raise ValueError(f"regime {self.regime} needs an explicit C")
            if self.tail is None:
                raise ValueError("supply either C or tail parameters")
        elif not self.C > 0:
            raise ValueError(f"C must be positive, got {self.C}")
        if self.regime in ("countable_c_lt2", "noisy") and self.tail is None:
            raise ValueError(f"regime {self.regime} needs tail parameters for the exponent c")
        if self.regime == "countable_c_ge2" and self.tail is not None and self.tail.c < 2:
            raise ValueError("countable_c_ge2 regime needs c >= 2")

    @property
    def constant(self) -> float:
        return self.C if self.C is not None else bias_constant(self.tail)

    def bias(self, n: float) -> float:
        """g(n) for the query's regime."""
        if self.regime == "finite_alphabet":
            return 1.0 / math.sqrt(n)
        if self.regime == "countable_c_ge2":
            return math.log(n) / math.sqrt(n)
        c = self.tail.c
        return n ** ((1.0 - c) / c)


@dataclass(frozen=True)
class Residuals:
    """Slack of both inequalities at a given n; both nonnegative iff n is sufficient."""

    n: int
    side: float
    sample: float

    @property
    def holds(self) -> bool:
        return self.side > 0 and self.sample >= 0


def residuals(query: BoundQuery, n: int, form: str | None = None) -> Residuals:
    """Side-condition slack (I - kC g) and sample-condition slack (LHS - RHS)."""
    form = form or query.form
    C = query.constant
    g = query.bias(n)
    lhs = n / math.log2(n) ** 2
    if form == "theorem":
        gap = query.threshold - C * g
        side = gap
        rhs_num = 72.0 * math.log(query.p / query.delta)
    else:
        gap = query.threshold / 3.0 - C * g
        side = query.threshold - 3.0 * C * g
        rhs_num = 2.0 * math.log(6.0 * math.comb(query.p, 2) / query.delta)
    sample = lhs - rhs_num / gap**2 if side > 0 else -math.inf
    return Residuals(n, side, sample)


@dataclass(frozen=True)
class SufficientN:
    n: int | None
    reason: str = ""
    residuals: Residuals | None = None

    @property
    def feasible(self) -> bool:
        return self.n is not None


def sufficient_n(query: BoundQuery, form: str | None = None, cap: int = N_CAP) -> SufficientN:
    """Smallest n >= 3 satisfying both inequalities, or an infeasible result.

    n = 3..7 are scanned directly (the predicate need not be monotone there);
    from 8 on it is, so the answer is bracketed by doubling and then bisected.
    """
    form = form or query.form
    if query.threshold <= 0:
        return SufficientN(None, "threshold is not positive")

    def ok(n):
        return residuals(query, n, form).holds

    for n in range(N_MIN, _MONOTONE_FROM):
        if ok(n):
            return SufficientN(n, residuals=residuals(query, n, form))
    lo, hi = _MONOTONE_FROM - 1, _MONOTONE_FROM
    while not ok(hi):
        lo = hi
        hi *= 2
        if hi > cap:
            if ok(cap):
                hi = cap
                break
            return SufficientN(None, f"no n up to the cap 2^{cap.bit_length() - 1} works")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return SufficientN(hi, residuals=residuals(query, hi, form))


@dataclass(frozen=True)
class FailureBound:
    value: float
    vacuous: bool
    side_condition: bool


def failure_probability_bound(n: int, query: BoundQuery, form: str = "proof") -> FailureBound:
    """Upper bound on P(Chow-Liu tree != true tree) after n samples.

    proof form:   6 C(p,2) exp(-n (I/3 - C g(n))^2 / (2 log2(n)^2)), needs I > 3 C g(n)
    theorem form: 6 C(p,2) exp(-n (I - C g(n))^2 / (18 log2(n)^2)), needs I > C g(n)

    A failed side condition yields an infinite, vacuous bound.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    C = query.constant
    g = query.bias(n)
    I = query.threshold
    if form == "proof":
        gap, side, denom = I / 3.0 - C * g, I - 3.0 * C * g, 2.0
    elif form == "theorem":
        gap, side, denom = I - C * g, I - C * g, 18.0
    else:
        raise ValueError(f"unknown form {form!r}")
    if side <= 0:
        return FailureBound(math.inf, True, False)
    value = 6.0 * math.comb(query.p, 2) * math.exp(-n * gap**2 / (denom * math.log2(n) ** 2))
    return FailureBound(value, value >= 1.0, True)
