"""
Recurrence coefficients of the monic polynomials orthogonal with respect to
exp(-x^4) on [-z, z]:

    x P_n = P_{n+1} + gamma_n P_{n-1},    h_n = <u, P_n^2>,   gamma_n = h_n / h_{n-1}.

Two independent constructions are provided:

* ``gamma_from_moments`` -- the Gram route, pairing monic coefficient
  vectors against the moment table.  This is the reference.
* ``gamma_laguerre_freud`` -- forward iteration of the coupled nonlinear
  system in (gamma_n, g_n).  It loses roughly one digit per step at z ~ 1
  and is therefore monitored rather than trusted.

The auxiliary sequence is g_n = n/2 - 2 gamma_n (gamma_{n+1} + gamma_n + gamma_{n-1}).
Indices below 1 follow the convention gamma_k = 0 for k <= 0.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Literal

from .errors import CancellationWarning, DomainError, PrecisionLossError
from .moments import moment, moment_table
from .specfun import DEFAULT_CONTEXT, PrecisionContext, Residual, residual

Route = Literal["from_moments", "laguerre_freud"]


@dataclass(frozen=True)
class GammaSequence:
    """gamma_0..gamma_N, g_0..g_M and h_0..h_N for a single z."""

    z: object
    gamma: tuple
    g: tuple
    h: tuple
    route: Route
    ctx: PrecisionContext
    diagnostic: str | None = field(default=None, compare=False)

    @property
    def N(self) -> int:
        return len(self.gamma) - 1

    def gamma_at(self, k: int):
        if k <= 0:
            return self.ctx.mp.zero
        if k > self.N:
            raise DomainError(f"gamma_{k} requested but sequence stops at {self.N}")
        return self.gamma[k]

    def g_at(self, k: int):
        """g_k from the defining combination of gamma's (needs gamma_{k+1})."""
        G = self.gamma_at
        return self.ctx.mpf(k) / 2 - 2 * G(k) * (G(k + 1) + G(k) + G(k - 1))

    def at_precision(self, ctx: PrecisionContext) -> "GammaSequence":
        """The same numbers rounded into another precision context."""
        conv = lambda seq: tuple(ctx.mpf(v) for v in seq)
        return GammaSequence(ctx.mpf(self.z), conv(self.gamma), conv(self.g), conv(self.h),
                             self.route, ctx, self.diagnostic)

    def truncated(self, N: int) -> "GammaSequence":
        return GammaSequence(self.z, self.gamma[:N + 1], self.g[:N], self.h[:N + 1],
                             self.route, self.ctx, self.diagnostic)


def _positive_z(z, ctx):
    z = ctx.mpf(z)
    if not z > 0:
        raise DomainError(f"z must be positive, got {z}")
    return z


def gamma_init(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(gamma_1, gamma_2) from u_0, u_2, u_4."""
    z = _positive_z(z, ctx)
    u0, u2, u4 = (moment(k, z, ctx) for k in (0, 2, 4))
    return u2 / u0, (u4 * u0 - u2**2) / (u0 * u2)


def gamma_laguerre_freud(z, N: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                         strict: bool = False, floor=None) -> GammaSequence:
    """Forward iteration of

        g_{k+1}      = z^2 g_k^2 / (gamma_k (g_k + g_{k-1})) - g_k
        gamma_{k+2}  = ((k+1)/2 - g_{k+1}) / (2 gamma_{k+1}) - gamma_{k+1} - gamma_k

    from gamma_0 = g_0 = 0, (gamma_1, gamma_2) = gamma_init and
    g_1 = 1/2 - 2 gamma_1 (gamma_2 + gamma_1).

    A denominator below ``floor`` (default 2^(-bits/2)) or a non-positive
    gamma marks precision exhaustion.  With ``strict`` the iteration raises
    ``PrecisionLossError``; otherwise the sequence is cut just before the
    failing index and the reason is stored in ``diagnostic``.
    """
    if N < 3:
        raise DomainError("the iteration needs N >= 3")
    z = _positive_z(z, ctx)
    mp = ctx.mp
    floor = mp.ldexp(1, -(ctx.mantissa_bits // 2)) if floor is None else ctx.mpf(floor)
    g1, g2 = gamma_init(z, ctx)
    gam = [mp.zero, g1, g2]
    g = [mp.zero, mp.one / 2 - 2 * g1 * (g2 + g1)]
    z2 = z**2
    diagnostic = None
    for k in range(1, N - 1):
        den = gam[k] * (g[k] + g[k - 1])
        if abs(den) < floor:
            diagnostic = f"unstable division at k={k}: |gamma_k (g_k + g_(k-1))| below floor"
            index = k
        else:
            g.append(z2 * g[k]**2 / den - g[k])
            nxt = (mp.mpf(k + 1) / 2 - g[k + 1]) / (2 * gam[k + 1]) - gam[k + 1] - gam[k]
            if nxt > 0:
                gam.append(nxt)
                continue
            g.pop()
            index = k + 2
            diagnostic = f"positivity lost: gamma_{k + 2} = {mp.nstr(nxt, 5)} <= 0"
        if strict:
            raise PrecisionLossError(diagnostic, index=index)
        break
    u0 = moment(0, z, ctx)
    h = [u0]
    for k in range(1, len(gam)):
        h.append(h[-1] * gam[k])
    # g has one entry fewer than gamma; drop any g beyond len(gam) - 1
    g = g[:len(gam) - 1]
    return GammaSequence(z, tuple(gam), tuple(g), tuple(h), "laguerre_freud", ctx, diagnostic)


def gram_polynomials(z, N: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Monic coefficient vectors of P_0..P_N together with gamma and h.

    Returns ``(vectors, gamma, h)`` where ``vectors[n][j]`` is the x^j
    coefficient of P_n.  Each h_n = sum_j P_n[j] u_{n+j} is computed from the
    moment table directly.
    """
    z = _positive_z(z, ctx)
    mp = ctx.mp
    table = moment_table(z, N, ctx)
    u = table.at
    P = [[mp.one], [mp.zero, mp.one]]
    gam = [mp.zero]
    h = [table.u[0]]
    for n in range(1, N + 1):
        hn = mp.fsum(P[n][j] * u(n + j) for j in range(n % 2, n + 1, 2))
        if not hn > 0:
            raise PrecisionLossError(
                f"h_{n} = {mp.nstr(hn, 5)} is not positive; raise mantissa_bits", index=n)
        gam.append(hn / h[-1])
        h.append(hn)
        if n < N:
            nxt = [mp.zero] + P[n]
            for j, c in enumerate(P[n - 1]):
                nxt[j] -= gam[n] * c
            P.append(nxt)
    return P[:N + 1], gam, h


def gamma_from_moments(z, N: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> GammaSequence:
    """Reference sequence gamma_0..gamma_N by the Gram route."""
    if N < 1:
        raise DomainError("need N >= 1")
    z = _positive_z(z, ctx)
    _, gam, h = gram_polynomials(z, N, ctx)
    seq = GammaSequence(z, tuple(gam), (), tuple(h), "from_moments", ctx)
    g = tuple(seq.g_at(k) for k in range(N))
    return GammaSequence(z, seq.gamma, g, seq.h, "from_moments", ctx)


def build_sequence(z, N: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                   route: Route = "from_moments", **kw) -> GammaSequence:
    if route == "from_moments":
        return gamma_from_moments(z, N, ctx)
    if route == "laguerre_freud":
        return gamma_laguerre_freud(z, N, ctx, **kw)
    raise DomainError(f"unknown route {route!r}")


def relative_deltas(a: GammaSequence, b: GammaSequence) -> list:
    """|a_n - b_n| / a_n for n = 1..min(N_a, N_b)."""
    N = min(a.N, b.N)
    return [abs(a.gamma[n] - b.gamma[n]) / a.gamma[n] for n in range(1, N + 1)]


def check_laguerre_freud(seq: GammaSequence, ns=None) -> dict[int, Residual]:
    """Residuals of the third-order Laguerre-Freud equation

        z^2/4 = gamma_n [gamma_{n-1}(gamma_{n-2}+gamma_{n-1}+gamma_n-z^2)
                        + gamma_n(gamma_{n+1}+gamma_n+gamma_{n-1}-z^2) + 1/4 - n/2]
              - gamma_{n+1} [gamma_{n+2}(gamma_{n+3}+gamma_{n+2}+gamma_{n+1}-z^2)
                        + gamma_{n+1}(gamma_{n+2}+gamma_{n+1}+gamma_n-z^2) - n/2 - 3/4]

    keyed by n (default: every n = 1..N-3).
    """
    G = seq.gamma_at
    z2 = seq.z**2
    q = seq.ctx.mpf(1) / 4
    ns = range(1, seq.N - 2) if ns is None else ns
    out = {}
    for n in ns:
        a = G(n) * G(n - 1) * (G(n - 2) + G(n - 1) + G(n) - z2)
        b = G(n)**2 * (G(n + 1) + G(n) + G(n - 1) - z2)
        c = G(n) * (q - seq.ctx.mpf(n) / 2)
        d = G(n + 1) * G(n + 2) * (G(n + 3) + G(n + 2) + G(n + 1) - z2)
        e = G(n + 1)**2 * (G(n + 2) + G(n + 1) + G(n) - z2)
        f = G(n + 1) * (seq.ctx.mpf(n) / 2 + 3 * q)
        out[n] = residual(-z2 * q, a, b, c, -d, -e, f)
    return out


def check_fifth_order(seq: GammaSequence, ns=None) -> dict[int, Residual]:
    """Residuals of z^2 g_n^2 = gamma_n (g_{n+1} + g_n)(g_n + g_{n-1}), n = 0..N-2."""
    ns = range(0, seq.N - 1) if ns is None else ns
    z2 = seq.z**2
    out = {}
    for n in ns:
        gm, g0, gp = seq.g_at(n - 1), seq.g_at(n), seq.g_at(n + 1)
        out[n] = residual(z2 * g0**2, -seq.gamma_at(n) * (gp + g0) * (g0 + gm))
    return out


def check_g_consistency(seq: GammaSequence) -> list:
    """|g_n (stored) - g_n (from gamma's)| for the stored g's."""
    return [abs(seq.g[k] - seq.g_at(k)) for k in range(min(len(seq.g), seq.N))]


def freud_string_residuals(seq: GammaSequence, nmax: int) -> list:
    """4 gamma_n (gamma_{n+1} + gamma_n + gamma_{n-1}) - n for n = 1..nmax (whole-line limit)."""
    G = seq.gamma_at
    return [4 * G(n) * (G(n + 1) + G(n) + G(n - 1)) - n for n in range(1, nmax + 1)]


def gamma_asymptotic(n, z, ctx: PrecisionContext = DEFAULT_CONTEXT,
                     variant: Literal["corrected", "published"] = "corrected"):
    """Large-n expansion of gamma_n(z) through n^-4.

    gamma_n ~ z^2/4 + (z^2/16) n^-2 + (3z^6/32) n^-3 + c_4 n^-4

    with c_4 = z^2 (27 z^8 + 4) / 256, which is what substituting the series
    into the recurrences gives.  ``variant="published"`` uses
    c_4 = z^2 (4 - 8 z^4 + 27 z^6) / 256 instead; that coefficient leaves an
    n^-4 error and is kept only so the difference can be measured.
    """
    if n < 1:
        raise DomainError("asymptotic expansion needs n >= 1")
    z = ctx.mpf(z)
    n = ctx.mpf(n)
    z2 = z**2
    if variant == "corrected":
        c4 = z2 * (27 * z**8 + 4) / 256
    elif variant == "published":
        c4 = z2 * (4 - 8 * z**4 + 27 * z**6) / 256
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return z2 / 4 + z2 / 16 / n**2 + 3 * z**6 / 32 / n**3 + c4 / n**4


def g_asymptotic(n, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """g_n ~ n/2 - 3z^4/8 - (3z^4/16) n^-2 - (9z^8/32) n^-3 - 3z^4 (22 + 27z^8)/256 n^-4."""
    if n < 1:
        raise DomainError("asymptotic expansion needs n >= 1")
    z = ctx.mpf(z)
    n = ctx.mpf(n)
    z4 = z**4
    return (n / 2 - 3 * z4 / 8 - 3 * z4 / 16 / n**2 - 9 * z4**2 / 32 / n**3
            - 3 * z4 * (22 + 27 * z4**2) / 256 / n**4)


@dataclass(frozen=True)
class TodaCheck:
    r_h: object
    r_gamma: object
    step: object


def toda_check(z, n: int, step="1e-6", ctx: PrecisionContext = DEFAULT_CONTEXT) -> TodaCheck:
    """Central-difference check of the z-flow of h_n and gamma_n.

    With theta = z d/dz:

        theta ln h_n     = 2n + 1 - 4[gamma_n(gamma_{n+1}+gamma_n+gamma_{n-1})
                                      + gamma_{n+1}(gamma_{n+2}+gamma_{n+1}+gamma_n)]
        theta ln gamma_n = 4[gamma_{n-1}(gamma_n+gamma_{n-1}+gamma_{n-2})
                             - gamma_{n+1}(gamma_{n+2}+gamma_{n+1}+gamma_n) + 1/2]

    Residuals are O(step^2).  A step below eps^(1/3) lets rounding dominate
    the difference quotient and triggers a ``CancellationWarning``.
    """
    if n < 1:
        raise DomainError("toda_check needs n >= 1")
    mp = ctx.mp
    z = _positive_z(z, ctx)
    s = ctx.mpf(step)
    if not s > 0 or z - s <= 0:
        raise DomainError("need 0 < step < z")
    if s < mp.cbrt(ctx.eps):
        warnings.warn(f"step {mp.nstr(s, 3)} is below eps^(1/3); rounding dominates",
                      CancellationWarning, stacklevel=2)
    lo = gamma_from_moments(z - s, n + 2, ctx)
    mid = gamma_from_moments(z, n + 2, ctx)
    hi = gamma_from_moments(z + s, n + 2, ctx)
    th_h = z * (mp.log(hi.h[n]) - mp.log(lo.h[n])) / (2 * s)
    th_g = z * (mp.log(hi.gamma[n]) - mp.log(lo.gamma[n])) / (2 * s)
    G = mid.gamma_at
    rhs_h = 2 * n + 1 - 4 * (G(n) * (G(n + 1) + G(n) + G(n - 1)) + G(n + 1) * (G(n + 2) + G(n + 1) + G(n)))
    rhs_g = 4 * (G(n - 1) * (G(n) + G(n - 1) + G(n - 2)) - G(n + 1) * (G(n + 2) + G(n + 1) + G(n)) + mp.one / 2)
    return TodaCheck(th_h - rhs_h, th_g - rhs_g, s)
