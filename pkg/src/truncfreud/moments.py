"""
Moments of the truncated quartic weight exp(-x^4) on [-z, z].

The even moments are

    u_{2m}(z) = int_{-z}^{z} x^{2m} exp(-x^4) dx = gamma((2m+1)/4, z^4) / 2,

and the odd moments vanish.  They are always evaluated directly from the
incomplete-gamma series; the linear recurrences they satisfy are used only
as checks, because running them forward amplifies rounding error.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import DomainError, SeriesDivergenceError
from .oracle import even_moment_quad, weighted_integral
from .specfun import DEFAULT_CONTEXT, PrecisionContext, Residual, lower_incomplete_gamma, residual

MomentSource = Literal["series", "oracle"]


def _check_z(z, ctx, allow_zero=False):
    z = ctx.mpf(z)
    if z < 0 or (z == 0 and not allow_zero):
        raise DomainError(f"truncation parameter z must be positive, got {z}")
    return z


def moment(n: int, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """The moment u_n(z); zero for odd ``n``."""
    if n < 0:
        raise DomainError(f"moment index must be non-negative, got {n}")
    z = _check_z(z, ctx)
    if n % 2:
        return ctx.mp.zero
    a = ctx.mpf(n + 1) / 4
    return lower_incomplete_gamma(a, z**4, ctx) / 2


def moment_oracle(n: int, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """u_n(z) by tanh-sinh quadrature of the defining integral."""
    if n < 0:
        raise DomainError(f"moment index must be non-negative, got {n}")
    return even_moment_quad(n, _check_z(z, ctx), ctx)


@dataclass(frozen=True)
class MomentTable:
    """Even moments ``u[m] = u_{2m}(z)`` for m = 0..N."""

    z: object
    u: tuple
    source: MomentSource
    ctx: PrecisionContext

    def __post_init__(self):
        if not self.z > 0:
            raise DomainError("MomentTable needs z > 0")
        if any(not v > 0 for v in self.u):
            raise DomainError("even moments of a positive weight must be positive")

    @property
    def N(self) -> int:
        return len(self.u) - 1

    def at(self, k: int):
        """u_k for any moment order k (odd orders give 0)."""
        if k % 2:
            return self.ctx.mp.zero
        m = k // 2
        if m > self.N:
            raise DomainError(f"moment u_{k} not in table (max u_{2 * self.N})")
        return self.u[m]

    def perturbed(self, m: int, delta) -> "MomentTable":
        """Copy with u_{2m} shifted by ``delta`` (for sensitivity tests)."""
        u = list(self.u)
        u[m] = u[m] + self.ctx.mpf(delta)
        return MomentTable(self.z, tuple(u), self.source, self.ctx)


def moment_table(z, N: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                 source: MomentSource = "series") -> MomentTable:
    """Table of u_0, u_2, ..., u_{2N}."""
    z = _check_z(z, ctx)
    if source == "series":
        f = moment
    elif source == "oracle":
        f = moment_oracle
    else:
        raise DomainError(f"unknown moment source {source!r}")
    return MomentTable(z, tuple(f(2 * m, z, ctx) for m in range(N + 1)), source, ctx)


def check_moment_recurrence(table: MomentTable) -> list[Residual]:
    """Residuals of the four-term recurrence

        4u_{2n+6} - 4z^2 u_{2n+4} - (2n+3)u_{2n+2} + (2n+1)z^2 u_{2n} = 0

    for every n the table supports.
    """
    if table.N < 3:
        raise DomainError("moment recurrence needs u_0 .. u_6 at least")
    z2 = table.z**2
    u = table.u
    return [
        residual(4 * u[n + 3], -4 * z2 * u[n + 2], -(2 * n + 3) * u[n + 1], (2 * n + 1) * z2 * u[n])
        for n in range(table.N - 2)
    ]


def check_moment_exp_recurrence(table: MomentTable) -> list[Residual]:
    """Residuals of 4u_{2n+4} - (2n+1)u_{2n} + 2z^{2n+1} exp(-z^4) = 0."""
    if table.N < 2:
        raise DomainError("need u_0 .. u_4 at least")
    mp = table.ctx.mp
    z = table.z
    ez = mp.exp(-z**4)
    u = table.u
    return [
        residual(4 * u[n + 2], -(2 * n + 1) * u[n], 2 * z**(2 * n + 1) * ez)
        for n in range(table.N - 1)
    ]


def moment_u4(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """u_4 = u_0/4 - z exp(-z^4)/2, i.e. the n = 0 case of the exponential recurrence."""
    z = _check_z(z, ctx)
    return moment(0, z, ctx) / 4 - z * ctx.mp.exp(-z**4) / 2


def moment_z_derivative(n: int, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """d/dz u_n(z) = 2 z^n exp(-z^4) for even n."""
    if n < 0 or n % 2:
        raise DomainError(f"z-derivative is defined here for even n >= 0, got {n}")
    z = _check_z(z, ctx, allow_zero=True)
    return 2 * z**n * ctx.mp.exp(-z**4)


def moment_z_derivative_recurrence(n: int, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """The same derivative expressed through moments: ((n+1)u_n - 4u_{n+4}) / z."""
    if n < 0 or n % 2:
        raise DomainError(f"z-derivative is defined here for even n >= 0, got {n}")
    z = _check_z(z, ctx)
    return ((n + 1) * moment(n, z, ctx) - 4 * moment(n + 4, z, ctx)) / z


def freud_moment_ratio_terms(n: int, z, K: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Terms of the large-z expansion of u_{2n}(z) / u^F_{2n}.

    Returns ``(terms, omitted)`` where ``terms[k]`` is the k-th correction
    ``exp(-z^4) z^{2(n-2k)-3} / Gamma((2n+1)/4 - k)`` (k = 0..K, stopping
    early once the Gamma argument is non-positive) and ``omitted`` is the
    first term left out.  Asymptotic series are cut before their terms start
    growing; a non-decreasing term therefore raises.
    """
    from .errors import ConvergenceError

    if n < 0 or K < 0:
        raise DomainError("need n >= 0 and K >= 0")
    mp = ctx.mp
    z = _check_z(z, ctx)
    a = ctx.mpf(2 * n + 1) / 4
    ez = mp.exp(-z**4)

    def term(k):
        return ez * z**(2 * (n - 2 * k) - 3) * mp.rgamma(a - k)

    terms = []
    k = 0
    while k <= K and a - k > 0:
        t = term(k)
        if terms and abs(t) >= abs(terms[-1]):
            raise ConvergenceError(
                f"asymptotic terms stopped decreasing at k={k}; z={z} too small", last_term=abs(t))
        terms.append(t)
        k += 1
    return terms, term(k)


def freud_moment_ratio(n: int, z, K: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Truncated expansion 1 - sum_k terms[k] of u_{2n}(z) / u^F_{2n}, u^F_{2n} = Gamma((2n+1)/4)/2."""
    terms, _ = freud_moment_ratio_terms(n, z, K, ctx)
    return 1 - ctx.mp.fsum(terms)


def freud_moment(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """u^F_{2n}: the moment of exp(-x^4) on the whole line."""
    return ctx.mp.gamma(ctx.mpf(2 * n + 1) / 4) / 2


def hankel_minors(table: MomentTable, size: int) -> list:
    """Leading principal minors det(u_{i+j})_{i,j<k} for k = 1..size."""
    if 2 * (size - 1) > 2 * table.N:
        raise DomainError("table too short for the requested Hankel size")
    mp = table.ctx.mp
    H = mp.matrix(size, size)
    for i in range(size):
        for j in range(size):
            H[i, j] = table.at(i + j)
    return [mp.det(H[:k, :k]) for k in range(1, size + 1)]


# Stieltjes function S(t; z) = sum_m u_{2m} / t^{2m+1}

@dataclass(frozen=True)
class StieltjesTruncation:
    """First N terms of the Stieltjes series; ``u`` holds u_0, u_2, ..., u_{2N-2}."""

    z: object
    N: int
    u: tuple
    ctx: PrecisionContext

    def __post_init__(self):
        if self.N < 1 or len(self.u) != self.N:
            raise DomainError("StieltjesTruncation needs N >= 1 coefficients")

    def _check_t(self, t):
        t = self.ctx.mpf(t)
        if t == 0 or abs(t) < 2 * self.z:
            raise SeriesDivergenceError(
                f"Stieltjes series is only used for |t| >= 2z (t={t}, z={self.z})")
        return t

    def value(self, t):
        t = self._check_t(t)
        return self.ctx.mp.fsum(self.u[m] / t**(2 * m + 1) for m in range(self.N))

    def t_derivative(self, t):
        t = self._check_t(t)
        return -self.ctx.mp.fsum((2 * m + 1) * self.u[m] / t**(2 * m + 2) for m in range(self.N))

    def z_derivative(self, t):
        t = self._check_t(t)
        ctx = self.ctx
        return ctx.mp.fsum(moment_z_derivative(2 * m, self.z, ctx) / t**(2 * m + 1) for m in range(self.N))

    def tail_bounds(self, t):
        """Bounds on the neglected tails of S, dS/dt and dS/dz.

        Uses u_{2m+2} < z^2 u_{2m}, so every tail is dominated by a geometric
        series with ratio at most (z/t)^2 (times a slowly varying factor for
        the t-derivative).
        """
        t = abs(self._check_t(t))
        ctx = self.ctx
        mp = ctx.mp
        z = self.z
        N = self.N
        if z == 0:
            return mp.zero, mp.zero, mp.zero
        q = (z / t)**2
        # u_{2N} <= z^2 u_{2N-2}
        uN = z**2 * self.u[-1]
        tail_s = uN / t**(2 * N + 1) / (1 - q)
        qd = q * (2 * N + 3) / (2 * N + 1)
        tail_dt = (2 * N + 1) * uN / t**(2 * N + 2) / (1 - qd)
        tail_dz = 2 * z**(2 * N) * mp.exp(-z**4) / t**(2 * N + 1) / (1 - q)
        return tail_s, tail_dt, tail_dz


def stieltjes_truncation(z, N: int = 60, ctx: PrecisionContext = DEFAULT_CONTEXT) -> StieltjesTruncation:
    z = _check_z(z, ctx, allow_zero=True)
    if z == 0:
        u = tuple(ctx.mp.zero for _ in range(N))
    else:
        u = moment_table(z, N - 1, ctx).u
    return StieltjesTruncation(z, N, u, ctx)


def stieltjes_value(t, trunc: StieltjesTruncation):
    return trunc.value(t)


def stieltjes_integral(t, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """S(t; z) = 2t int_0^z exp(-x^4) / (t^2 - x^2) dx by quadrature (|t| > z)."""
    t = ctx.mpf(t)
    z = _check_z(z, ctx, allow_zero=True)
    if abs(t) <= z:
        raise SeriesDivergenceError("integral representation needs |t| > z")
    if z == 0:
        return ctx.mp.zero
    # symmetric integrand, so int_{-z}^{z} f / (t - x) = 2t int_0^z f / (t^2 - x^2)
    return weighted_integral(lambda x: 1 / (t - x), z, ctx)


@dataclass(frozen=True)
class StieltjesCheck:
    r_t: Residual
    r_z: Residual
    bound_t: object
    bound_z: object

    @property
    def passed(self) -> bool:
        return abs(self.r_t.value) <= self.bound_t and abs(self.r_z.value) <= self.bound_z


def stieltjes_ode_residuals(t, z, ctx: PrecisionContext = DEFAULT_CONTEXT, N: int = 60,
                            rhs: Literal["full", "short"] = "full") -> StieltjesCheck:
    """Residuals of the two first-order ODEs satisfied by S(t; z).

    In t:  phi dS/dt + 4t^3 phi S = u_0(4t^4 - 1) + 4(u_2 t^2 + u_4) - 4z^2(u_0 t^2 + u_2)
    In z:  phi dS/dz = 2t exp(-z^4)

    with phi = t^2 - z^2.  ``rhs="short"`` drops the -4z^2(...) group from
    the first right-hand side; that variant does not hold for z > 0 and is
    kept so the discrepancy can be measured.

    The pass bounds are 100 times the propagated tail bound plus a rounding
    allowance of ``2^(16 - bits)`` times the residual scale.
    """
    trunc = stieltjes_truncation(z, N, ctx)
    z = trunc.z
    t = trunc._check_t(t)
    mp = ctx.mp
    phi = t**2 - z**2
    S = trunc.value(t)
    dS = trunc.t_derivative(t)
    dSz = trunc.z_derivative(t)
    if z == 0:
        u0 = u2 = u4 = mp.zero
    else:
        u0, u2, u4 = trunc.u[0], trunc.u[1], trunc.u[2]
    rhs_terms = [-u0 * (4 * t**4 - 1), -4 * (u2 * t**2 + u4)]
    if rhs == "full":
        rhs_terms.append(4 * z**2 * (u0 * t**2 + u2))
    elif rhs != "short":
        raise DomainError(f"unknown rhs variant {rhs!r}")
    r_t = residual(phi * dS, 4 * t**3 * phi * S, *rhs_terms)
    r_z = residual(phi * dSz, -2 * t * mp.exp(-z**4))
    ts, tdt, tdz = trunc.tail_bounds(t)
    rnd = mp.ldexp(1, 16 - ctx.mantissa_bits)
    bound_t = 100 * (abs(phi) * tdt + abs(4 * t**3 * phi) * ts) + rnd * r_t.scale
    bound_z = 100 * abs(phi) * tdz + rnd * r_z.scale
    return StieltjesCheck(r_t, r_z, bound_t, bound_z)
