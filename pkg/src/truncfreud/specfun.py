"""
Extended-precision scalar arithmetic and the gamma-family special functions.

All numbers handled by the package are ``mpf`` values belonging to a private
:class:`mpmath.ctx_mp.MPContext` owned by a :class:`PrecisionContext`.  The
global ``mpmath.mp`` context is never touched, so results do not depend on
whatever precision some other library left behind.

Mixing numbers from different contexts is allowed by mpmath but the result
inherits the context of the *left* operand; the helpers here always convert
inputs with :meth:`PrecisionContext.mpf` first.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import NamedTuple

from mpmath.ctx_mp import MPContext

from .errors import ConvergenceError, DomainError

_local = threading.local()


def _mp_context(bits: int) -> MPContext:
    # mpmath routines bump ``ctx.prec`` internally, so a context must never
    # be shared between threads.
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    mp = cache.get(bits)
    if mp is None:
        mp = MPContext()
        mp.prec = bits
        cache[bits] = mp
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and tolerances for one computation.

    Parameters
    ----------
    mantissa_bits : int
        Binary precision of every extended real (at least 64).
    series_tol : float or str, optional
        Relative truncation threshold for series tails.  Defaults to
        ``2**(8 - mantissa_bits)``.
    max_terms : int
        Hard cap on series length; hitting it raises ``ConvergenceError``.
    tol_identity : float or str, optional
        Normalized tolerance for identity residuals.  Defaults to
        ``2**(-ceil(83 * mantissa_bits / 256))``, i.e. 1e-25 at 256 bits.
    """

    mantissa_bits: int = 256
    series_tol: object = None
    max_terms: int = 10000
    tol_identity: object = None
    _resolved: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.mantissa_bits) != self.mantissa_bits or self.mantissa_bits < 64:
            raise DomainError(f"mantissa_bits must be an integer >= 64, got {self.mantissa_bits}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        mp = self.mp
        floor = mp.ldexp(1, 1 - self.mantissa_bits)
        tol = mp.ldexp(1, 8 - self.mantissa_bits) if self.series_tol is None else mp.mpf(self.series_tol)
        if not tol > 0 or tol < floor:
            raise DomainError(f"series_tol must be >= 2^(1-mantissa_bits), got {self.series_tol}")
        if self.tol_identity is None:
            ident = mp.ldexp(1, -((83 * self.mantissa_bits + 255) // 256))
        else:
            ident = mp.mpf(self.tol_identity)
            if not ident > 0:
                raise DomainError("tol_identity must be positive")
        self._resolved["series_tol"] = tol
        self._resolved["tol_identity"] = ident

    @property
    def mp(self) -> MPContext:
        return _mp_context(self.mantissa_bits)

    @property
    def tol(self):
        """Series truncation threshold as an extended real."""
        return self._resolved["series_tol"]

    @property
    def identity_tol(self):
        """Normalized identity tolerance as an extended real."""
        return self._resolved["tol_identity"]

    @property
    def eps(self):
        return self.mp.ldexp(1, 1 - self.mantissa_bits)

    def mpf(self, x):
        """Convert ``x`` (int, str, float, Fraction or mpf) into this context."""
        if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, int):
            return self.mp.mpf(x.numerator) / x.denominator
        return self.mp.mpf(x)

    def with_bits(self, bits: int) -> "PrecisionContext":
        """Same settings at a different precision (tolerances re-derived)."""
        return PrecisionContext(mantissa_bits=bits, max_terms=self.max_terms)


DEFAULT_CONTEXT = PrecisionContext()


class Residual(NamedTuple):
    """Signed residual of an identity together with the size of its terms."""

    value: object
    scale: object

    @property
    def normalized(self):
        if self.scale == 0:
            return abs(self.value)
        return abs(self.value) / self.scale


def residual(*terms) -> Residual:
    """Sum ``terms``; the scale is the largest term magnitude."""
    total = terms[0] * 0
    scale = abs(total)
    for t in terms:
        total += t
        if abs(t) > scale:
            scale = abs(t)
    return Residual(total, scale)


def lower_incomplete_gamma(a, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Lower incomplete gamma function by its power series.

    gamma(a, x) = x**a * exp(-x) / a * sum_k x**k / (a+1)_k

    Every term is positive, so the sum suffers no cancellation; the series is
    cut once a term falls below ``ctx.tol`` times the partial sum.  Because
    the term ratio ``x/(a+k)`` decreases past the peak, the neglected tail is
    bounded by ``term / (1 - ratio)`` and that bound is what is tested.
    """
    mp = ctx.mp
    a = ctx.mpf(a)
    x = ctx.mpf(x)
    if not a > 0:
        raise DomainError(f"lower_incomplete_gamma needs a > 0, got {a}")
    if x < 0:
        raise DomainError(f"lower_incomplete_gamma needs x >= 0, got {x}")
    if x == 0:
        return mp.zero
    q = 4 * a
    if q == int(q) and q < 1 << 20:
        return _lig_quarter(int(q), x, ctx)
    term = mp.one
    total = mp.one
    tol = ctx.tol
    for k in range(1, ctx.max_terms + 1):
        denom = a + k
        term = term * x / denom
        total += term
        ratio = x / (denom + 1)
        if ratio < 1 and term < tol * total * (1 - ratio):
            return mp.exp(a * mp.log(x) - x) / a * total
    raise ConvergenceError(
        f"incomplete gamma series did not converge in {ctx.max_terms} terms (a={a}, x={x})",
        last_term=term,
    )


_GUARD = 24


def _lig_quarter(p: int, x, ctx: PrecisionContext):
    # Same series for a = p/4, summed in fixed point: dividing by a + k is
    # multiplying by 4 and dividing by the integer p + 4k.  All terms are
    # positive and the sum is >= 1, so truncation error stays below
    # (number of terms) * 2^-wp relative.
    mp = ctx.mp
    wp = ctx.mantissa_bits + _GUARD
    one = 1 << wp
    X = int(mp.floor(mp.ldexp(x, wp)))
    tolf = int(mp.floor(mp.ldexp(ctx.tol, wp))) or 1
    T = S = one
    X4 = 4 * X
    for k in range(1, ctx.max_terms + 1):
        T = ((T * X) >> wp) * 4 // (p + 4 * k)
        S += T
        # neglected tail <= T * r / (1 - r) with r = 4x / (p + 4k + 4); demand r <= 1/2
        if T == 0 or (2 * X4 <= (p + 4 * k + 4) * one and 2 * T * one <= tolf * S):
            a = mp.mpf(p) / 4
            return mp.exp(a * mp.log(x) - x) / a * mp.ldexp(S, -wp)
    raise ConvergenceError(
        f"incomplete gamma series did not converge in {ctx.max_terms} terms (a={p}/4, x={x})",
        last_term=mp.ldexp(T, -wp),
    )


def complete_gamma(a, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Euler's Gamma function for real ``a > 0`` at working precision."""
    a = ctx.mpf(a)
    if not a > 0:
        raise DomainError(f"complete_gamma needs a > 0, got {a}")
    return ctx.mp.gamma(a)


def freud_gamma1(ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Gamma(3/4) / Gamma(1/4), the first recurrence coefficient on the whole line."""
    return complete_gamma(ctx.mpf(3) / 4, ctx) / complete_gamma(ctx.mpf(1) / 4, ctx)
