"""Closed-form gap-size models and the predictors built on them.

Two families of formulas live here:

* maximal-gap size models G(x): the pi-based form ``g_wolf``, its Gauss
  substitution ``g_gauss`` (pi ~ x/ln x), the Cramer form ln^2 x and the
  Granville variant 2 e^(-gamma) ln^2 x;
* first-occurrence models p_f(d) (``pf_wolf``, ``pf_shanks``) and the
  sqrt-difference predictors derived from them: ``r_kernel`` (the main
  prediction, maximal at d = 9), the Shanks counterpart ``r_shanks``
  (maximal at d = 16) and the closed Cramer form ``r_cramer_form``.

Everything is a pure function of floats.  Integer inputs above 2^53 are
rounded to the nearest double on entry; that relative error (<= 2^-53) is
far below every tolerance used downstream.

The twin-prime constant enters through c' = ln(C2).  Note the additive
constant in ``g_gauss`` is c' itself, not ln(c'): only that reading makes
the formula the exact algebraic image of ``g_wolf`` under pi = x/ln x and
makes the Cramer composition identity hold (both are asserted in the test
suite).  The ln(c') variant remains available behind ``log_c_prime=`` for
comparison, but nothing in the package uses it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from gaplab import sieve


class DomainError(ValueError):
    """An input lies outside a model's mathematical domain."""


EULER_GAMMA = 0.5772156649015329

# Twin-prime constant 2*prod_{p>2}(1 - 1/(p-1)^2) = 1.320323631693739148...,
# nearest double; recomputed and cross-checked by twin_constant() in tests.
TWIN_PRIME_C2 = 1.3203236316937392


@dataclass(frozen=True)
class HeuristicConstants:
    """The constants feeding every predictor, stored to full double precision."""

    C2: float = TWIN_PRIME_C2
    c_prime: float = math.log(TWIN_PRIME_C2)
    euler_gamma: float = EULER_GAMMA
    granville_coeff: float = 2.0 * math.exp(-EULER_GAMMA)

    @classmethod
    def from_c2(cls, c2: float) -> "HeuristicConstants":
        return cls(C2=c2, c_prime=math.log(c2))


DEFAULT_CONSTANTS = HeuristicConstants()


@dataclass(frozen=True)
class TwinConstantEstimate:
    value: float
    prime_limit: int
    tail_bound: float


def _truncation_tail_bound(prime_limit: int, value: float) -> float:
    """Upper bound on |value - C2| from cutting the product at prime_limit.

    Bounds sum_{p >= L} 1/(p-1)^2 by Abel summation against the classical
    pi(t) < 1.25506 t/ln t (Rosser & Schoenfeld), dropping the negative
    boundary term; primes below 17 are added explicitly when L is small.
    """
    explicit = sum(
        1.0 / (p - 1) ** 2 for p in (3, 5, 7, 11, 13) if p >= prime_limit
    )
    L = max(prime_limit, 17)
    sum_bound = explicit + 2 * 1.25506 / math.log(L) * (
        1.0 / (L - 1) + 0.5 / (L - 1) ** 2
    )
    # |ln(1-u)| <= u/(1-u_max); the largest omitted u = 1/(p-1)^2 is at most 1/4
    u_max = 0.25 if prime_limit <= 3 else 1.0 / (prime_limit - 1) ** 2
    return value * sum_bound / (1.0 - u_max)


def twin_constant(
    prime_limit: int,
    *,
    segment_length: int | None = None,
    threads: int = 1,
) -> TwinConstantEstimate:
    """Truncated twin-prime product 2*prod_{2<p<prime_limit}(1 - 1/(p-1)^2).

    Accumulated as a sum of log1p terms (direct multiplication of 78k
    factors just below 1 sheds digits), with a certified overestimate of
    the truncation error in ``tail_bound``.
    """
    if prime_limit < 3:
        raise ValueError("prime_limit must be >= 3")
    partial_sums = []
    for block in sieve.iter_prime_blocks(
        3, prime_limit, segment_length=segment_length, threads=threads
    ):
        pf = block.astype(np.float64)
        partial_sums.append(float(np.sum(np.log1p(-1.0 / (pf - 1.0) ** 2))))
    value = 2.0 * math.exp(math.fsum(partial_sums))
    return TwinConstantEstimate(
        value=value,
        prime_limit=prime_limit,
        tail_bound=_truncation_tail_bound(prime_limit, value),
    )


def g_wolf(
    x: float, pi_x: float, constants: HeuristicConstants = DEFAULT_CONSTANTS
) -> float:
    """Pi-based maximal-gap size: (x/pi(x)) * (2 ln pi(x) - ln x + c').

    ``pi_x`` is normally the exact ``prime_count(x)``; callers may supply
    an approximation (e.g. x/ln x) when exact counting is out of reach.
    """
    if pi_x < 1:
        raise DomainError(f"pi_x must be >= 1, got {pi_x}")
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    x = float(x)
    return x / pi_x * (2.0 * math.log(pi_x) - math.log(x) + constants.c_prime)


def g_gauss(
    x: float,
    constants: HeuristicConstants = DEFAULT_CONSTANTS,
    *,
    log_c_prime: bool = False,
) -> float:
    """Gauss-substituted gap size: ln x * (ln x - 2 ln ln x + c').

    ``log_c_prime=True`` switches the additive constant to ln(c'), kept
    only for comparison (see module docstring).
    """
    x = float(x)
    if x <= math.e:
        raise DomainError(f"g_gauss needs x > e, got {x}")
    c = math.log(constants.c_prime) if log_c_prime else constants.c_prime
    lx = math.log(x)
    return lx * (lx - 2.0 * math.log(lx) + c)


def g_cramer(x: float) -> float:
    """Cramer gap size ln^2 x."""
    x = float(x)
    if x < 1:
        raise DomainError(f"g_cramer needs x >= 1, got {x}")
    return math.log(x) ** 2


def granville_bound(
    p: float, constants: HeuristicConstants = DEFAULT_CONSTANTS
) -> float:
    """Granville's lower gap size for infinitely many pairs: 2 e^(-gamma) ln^2 p."""
    p = float(p)
    if p <= 1:
        raise DomainError(f"granville_bound needs p > 1, got {p}")
    return constants.granville_coeff * math.log(p) ** 2


def pf_wolf(d: float) -> float:
    """Predicted first-occurrence point of gap d: sqrt(d) * e^sqrt(d)."""
    d = float(d)
    if d <= 0:
        raise DomainError(f"pf_wolf needs d > 0, got {d}")
    rd = math.sqrt(d)
    return rd * math.exp(rd)


def pf_shanks(d: float) -> float:
    """Shanks' first-occurrence point: e^sqrt(d)."""
    d = float(d)
    if d < 0:
        raise DomainError(f"pf_shanks needs d >= 0, got {d}")
    return math.exp(math.sqrt(d))


def r_kernel(d: float) -> float:
    """Sqrt-difference at the predicted first occurrence: (1/2) d^(3/4) e^(-sqrt(d)/2)."""
    d = float(d)
    if d < 0:
        raise DomainError(f"r_kernel needs d >= 0, got {d}")
    return 0.5 * d**0.75 * math.exp(-0.5 * math.sqrt(d))


def r_shanks(d: float) -> float:
    """Kernel under Shanks' first-occurrence law: (1/2) d e^(-sqrt(d)/2)."""
    d = float(d)
    if d < 0:
        raise DomainError(f"r_shanks needs d >= 0, got {d}")
    return 0.5 * d * math.exp(-0.5 * math.sqrt(d))


def r_cramer_form(x: float) -> float:
    """Closed form of the main prediction under G = ln^2 x: ln^(3/2) x / (2 sqrt(x))."""
    x = float(x)
    if x < 1:
        raise DomainError(f"r_cramer_form needs x >= 1, got {x}")
    return math.log(x) ** 1.5 / (2.0 * math.sqrt(x))


class GapModelKind(Enum):
    WOLF_EXACT_PI = "wolf_exact_pi"
    WOLF_GAUSS = "wolf_gauss"
    CRAMER = "cramer"
    GRANVILLE = "granville"


@dataclass(frozen=True)
class GapModel:
    """A chosen G(x) form plus the constants it evaluates with."""

    kind: GapModelKind
    constants: HeuristicConstants = DEFAULT_CONSTANTS

    def evaluate(self, x: float, pi_x: float | None = None) -> float:
        if self.kind is GapModelKind.WOLF_EXACT_PI:
            if pi_x is None:
                raise DomainError("wolf_exact_pi requires pi_x")
            return g_wolf(x, pi_x, self.constants)
        if self.kind is GapModelKind.WOLF_GAUSS:
            return g_gauss(x, self.constants)
        if self.kind is GapModelKind.CRAMER:
            return g_cramer(x)
        return granville_bound(x, self.constants)

    def __call__(self, x: float, pi_x: float | None = None) -> float:
        return self.evaluate(x, pi_x)


class RModelKind(Enum):
    MAIN = "main"
    CRAMER_FORM = "cramer_form"
    SHANKS_FORM = "shanks_form"


@dataclass(frozen=True)
class RModel:
    """A sqrt-difference predictor R(x): the main kernel composition, its
    closed Cramer form, or the Shanks kernel over the Gauss gap size."""

    kind: RModelKind
    gap_model: GapModel = field(
        default_factory=lambda: GapModel(GapModelKind.WOLF_EXACT_PI)
    )

    def evaluate(self, x: float, pi_x: float | None = None) -> float:
        if self.kind is RModelKind.MAIN:
            return r_main(x, self.gap_model, pi_x)
        if self.kind is RModelKind.CRAMER_FORM:
            return r_cramer_form(x)
        return r_shanks(g_gauss(x, self.gap_model.constants))


def r_main(x: float, gap_model, pi_x: float | None = None) -> float:
    """Main prediction: the kernel applied to the modelled gap size G(x).

    ``gap_model`` is a :class:`GapModel` or any callable x -> G.  The
    model's own domain errors propagate; a negative modelled G (possible
    for degenerate small x) is rejected by ``r_kernel``.
    """
    if isinstance(gap_model, GapModel):
        g = gap_model.evaluate(x, pi_x)
    else:
        g = gap_model(x)
    return r_kernel(g)


# analytic d/dd of ln(kernel), for the argmax bisection
_LOG_DERIVATIVES = {
    r_kernel: lambda d: 0.75 / d - 0.25 / math.sqrt(d),
    r_shanks: lambda d: 1.0 / d - 0.25 / math.sqrt(d),
}

_KERNELS_BY_NAME = {"r_kernel": r_kernel, "r_shanks": r_shanks}


def kernel_argmax(kernel, bounds: tuple[float, float] = (0.0, 100.0)) -> tuple[float, float]:
    """Locate the maximum of a kernel by bisecting its log-derivative.

    Accepts ``r_kernel`` / ``r_shanks`` (or their names) and returns
    ``(x_star, value)`` with |x - x*| well below 1e-8.  If the derivative
    does not change sign inside ``bounds`` the better endpoint is returned
    (the kernels vanish at 0 and are increasing there, so a short interval
    like (0, 1) yields its right edge).
    """
    if isinstance(kernel, str):
        try:
            kernel = _KERNELS_BY_NAME[kernel]
        except KeyError:
            raise ValueError(f"unknown kernel {kernel!r}") from None
    try:
        deriv = _LOG_DERIVATIVES[kernel]
    except KeyError:
        raise ValueError("kernel_argmax supports r_kernel and r_shanks") from None
    lo, hi = bounds
    if not 0 <= lo < hi:
        raise ValueError(f"invalid bounds {bounds}")
    a = max(lo, 1e-12)
    b = hi
    if deriv(a) <= 0:
        return (lo, kernel(lo)) if kernel(lo) >= kernel(hi) else (hi, kernel(hi))
    if deriv(b) >= 0:
        return b, kernel(b)
    while b - a > 1e-10:
        mid = 0.5 * (a + b)
        s = deriv(mid)
        if s == 0.0:
            a = b = mid
            break
        if s > 0:
            a = mid
        else:
            b = mid
    x_star = 0.5 * (a + b)
    return x_star, kernel(x_star)
