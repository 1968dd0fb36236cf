"""
Evaluation of P_n(x; z) and verification of the differential relations it
satisfies.

Values and the first two x-derivatives are produced by running the
three-term recurrence and its formal derivatives in lockstep, so no finite
differences enter any of the x-identities.  Every check returns a
:class:`~truncfreud.specfun.Residual` whose scale is the largest additive
term, which makes tolerances comparable across n, x and z.

Notation: phi = x^2 - z^2 and the ladder functions

    A_n(x) = x^4 + b_n x^2 + c_n
    B_n(x) = x [4 gamma_n (gamma_{n+1} + gamma_n + gamma_{n-1} + phi) - n]

with b_n = gamma_{n+1} + gamma_n - z^2 and
c_n = gamma_n (gamma_{n+1}+gamma_n+gamma_{n-1}-z^2)
      + gamma_{n+1} (gamma_{n+2}+gamma_{n+1}+gamma_n-z^2) - n/2 - 1/4.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import DomainError, PoleError
from .oracle import weighted_integral
from .recurrence import GammaSequence
from .specfun import Residual, residual


@dataclass(frozen=True)
class PolyEval:
    n: int
    x: object
    value: object
    dvalue: object
    d2value: object


def _table(n: int, x, seq: GammaSequence):
    """Lists P_k, P_k', P_k'' for k = 0..n at x."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    if n > seq.N + 1:
        raise DomainError(f"P_{n} needs gamma up to {n - 1}, sequence stops at {seq.N}")
    mp = seq.ctx.mp
    x = seq.ctx.mpf(x)
    p, dp, d2p = [mp.one], [mp.zero], [mp.zero]
    if n >= 1:
        p.append(x)
        dp.append(mp.one)
        d2p.append(mp.zero)
    for k in range(1, n):
        gk = seq.gamma[k]
        p.append(x * p[k] - gk * p[k - 1])
        dp.append(p[k] + x * dp[k] - gk * dp[k - 1])
        d2p.append(2 * dp[k] + x * d2p[k] - gk * d2p[k - 1])
    return p, dp, d2p


def evaluate(n: int, x, seq: GammaSequence) -> PolyEval:
    """P_n(x; z) and its first two x-derivatives by the recurrence."""
    p, dp, d2p = _table(n, x, seq)
    return PolyEval(n, seq.ctx.mpf(x), p[n], dp[n], d2p[n])


def evaluate_many(n: int, x, seq: GammaSequence) -> list:
    """[P_0(x), ..., P_n(x)]."""
    return _table(n, x, seq)[0]


def _P(p, k):
    return p[k] if k >= 0 else 0


def lambda_coefficient(n: int, seq: GammaSequence):
    """Coefficient of x^{n-2} in P_n, which telescopes to -(gamma_1 + ... + gamma_{n-1})."""
    if n < 2:
        raise DomainError("lambda_{n,n-2} is defined for n >= 2")
    return -seq.ctx.mp.fsum(seq.gamma_at(k) for k in range(1, n))


# structure relation: phi P'_{n+1} = (n+1) P_{n+2} + B_n P_n + C_n P_{n-2} + D_n P_{n-4}

@dataclass(frozen=True)
class StructureCoefficients:
    n: int
    B: object
    C: object
    D: object


def structure_coefficients(n: int, seq: GammaSequence) -> StructureCoefficients:
    if n < 0:
        raise DomainError("n must be non-negative")
    G = seq.gamma_at
    z2 = seq.z**2
    B = 4 * G(n + 1) * (G(n + 2) * (G(n + 3) + G(n + 2) + G(n + 1) + G(n) - z2)
                        + G(n + 1) * (G(n + 2) + G(n + 1) + G(n) - z2)
                        + G(n) * (G(n + 1) + G(n) + G(n - 1) - z2)
                        - seq.ctx.mpf(1) / 2 - seq.ctx.mpf(n) / 4)
    C = 4 * G(n + 1) * G(n) * G(n - 1) * (G(n + 2) + G(n + 1) + G(n) + G(n - 1) + G(n - 2) - z2)
    D = 4 * G(n + 1) * G(n) * G(n - 1) * G(n - 2) * G(n - 3)
    return StructureCoefficients(n, B, C, D)


def check_structure(n: int, x, seq: GammaSequence) -> Residual:
    """Residual of phi P'_{n+1} - [(n+1)P_{n+2} + B_n P_n + C_n P_{n-2} + D_n P_{n-4}]."""
    sc = structure_coefficients(n, seq)
    p, dp, _ = _table(n + 2, x, seq)
    x = seq.ctx.mpf(x)
    phi = x**2 - seq.z**2
    return residual(phi * dp[n + 1], -(n + 1) * p[n + 2], -sc.B * p[n],
                    -sc.C * _P(p, n - 2), -sc.D * _P(p, n - 4))


# ladder functions

@dataclass(frozen=True)
class LadderCoefficients:
    """A_n = x^4 + b x^2 + c together with the pieces of B_n."""

    n: int
    z: object
    b: object
    c: object
    gamma_n: object
    s: object  # gamma_{n+1} + gamma_n + gamma_{n-1}

    def A(self, x):
        x2 = x * x
        return x2 * x2 + self.b * x2 + self.c

    def dA(self, x):
        return 4 * x**3 + 2 * self.b * x

    def B(self, x):
        phi = x * x - self.z**2
        return x * (4 * self.gamma_n * (self.s + phi) - self.n)

    def dB(self, x):
        phi = x * x - self.z**2
        return 4 * self.gamma_n * (self.s + phi) - self.n + 8 * self.gamma_n * x * x


def ladder_coefficients(n: int, seq: GammaSequence) -> LadderCoefficients:
    if n < 0:
        raise DomainError("n must be non-negative")
    G = seq.gamma_at
    z2 = seq.z**2
    ctx = seq.ctx
    b = G(n + 1) + G(n) - z2
    c = (G(n) * (G(n + 1) + G(n) + G(n - 1) - z2)
         + G(n + 1) * (G(n + 2) + G(n + 1) + G(n) - z2)
         - ctx.mpf(n) / 2 - ctx.mpf(1) / 4)
    return LadderCoefficients(n, seq.z, b, c, G(n), G(n + 1) + G(n) + G(n - 1))


def ladder_check(n: int, x, seq: GammaSequence) -> tuple[Residual, Residual]:
    """(lowering, compatibility) residuals:

    phi P_n' - [4 gamma_n A_n P_{n-1} - B_n P_n]   and   B_n + B_{n+1} - 4x(A_n - x^2 phi).
    """
    if n < 1:
        raise DomainError("ladder relations are checked for n >= 1")
    L = ladder_coefficients(n, seq)
    L1 = ladder_coefficients(n + 1, seq)
    p, dp, _ = _table(n, x, seq)
    x = seq.ctx.mpf(x)
    phi = x**2 - seq.z**2
    A = L.A(x)
    Bn = L.B(x)
    r_lower = residual(phi * dp[n], -4 * L.gamma_n * A * p[n - 1], Bn * p[n])
    r_compat = residual(Bn, L1.B(x), -4 * x * A, 4 * x**3 * phi)
    return r_lower, r_compat


def raising_check(n: int, x, seq: GammaSequence) -> Residual:
    """(-phi d/dx + B_n + 4x^3 phi) P_{n-1} - 4 A_{n-1} P_n."""
    if n < 1:
        raise DomainError("raising relation is checked for n >= 1")
    p, dp, _ = _table(n, x, seq)
    x = seq.ctx.mpf(x)
    phi = x**2 - seq.z**2
    Bn = ladder_coefficients(n, seq).B(x)
    Am = ladder_coefficients(n - 1, seq).A(x)
    return residual(-phi * dp[n - 1], Bn * p[n - 1], 4 * x**3 * phi * p[n - 1], -4 * Am * p[n])


def _pole_guard(seq, x, phi, L: LadderCoefficients):
    mp = seq.ctx.mp
    thresh = mp.ldexp(1, -(seq.ctx.mantissa_bits // 2))
    x2 = x * x
    if abs(phi) <= thresh * max(x2, seq.z**2):
        raise PoleError(f"phi vanishes at x={mp.nstr(x, 10)}")
    A = L.A(x)
    scale = max(x2 * x2, abs(L.b) * x2, abs(L.c))
    if abs(A) <= thresh * scale:
        raise PoleError(f"A_{L.n} vanishes at x={mp.nstr(x, 10)}")
    return A


def holonomic_coefficients(n: int, x, seq: GammaSequence,
                           variant: Literal["corrected", "published"] = "corrected"):
    """(R, S) of P_n'' + R P_n' + S P_n = 0.

    R = -2x [(2x^2 phi - 1) A_n + phi (gamma_{n+1} + gamma_n + 2x^2 - z^2)] / (phi A_n)

    S = [ -A_n B_n (B_n + 4 phi x^3)
          - 2x B_n phi (2x^2 - z^2 + gamma_n + gamma_{n+1})
          + A_n phi (-n + 4 gamma_n (3x^2 - z^2 + gamma_{n-1} + gamma_n + gamma_{n+1}))
          + 16 gamma_n A_n^2 A_{n-1} ] / (phi^2 A_n)

    ``variant="published"`` flips the sign of the last group of S.  That
    version does not annihilate P_n and is retained for comparison.
    """
    if n < 1:
        raise DomainError("holonomic equation is checked for n >= 1")
    x = seq.ctx.mpf(x)
    z = seq.z
    L = ladder_coefficients(n, seq)
    phi = x**2 - z**2
    A = _pole_guard(seq, x, phi, L)
    Am = ladder_coefficients(n - 1, seq).A(x)
    B = L.B(x)
    G = seq.gamma_at
    gsum = G(n + 1) + G(n)
    R = -2 * x * ((2 * x**2 * phi - 1) * A + phi * (gsum + 2 * x**2 - z**2)) / (phi * A)
    if variant == "corrected":
        sign = 1
    elif variant == "published":
        sign = -1
    else:
        raise DomainError(f"unknown variant {variant!r}")
    core = (-A * B * (B + 4 * phi * x**3)
            - 2 * x * B * phi * (2 * x**2 - z**2 + gsum)
            + A * phi * (-n + 4 * G(n) * (3 * x**2 - z**2 + G(n - 1) + G(n) + G(n + 1)))
            + sign * 16 * G(n) * A**2 * Am)
    S = core / (phi**2 * A)
    return R, S


def holonomic_residual(n: int, x, seq: GammaSequence,
                       variant: Literal["corrected", "published"] = "corrected") -> Residual:
    R, S = holonomic_coefficients(n, x, seq, variant)
    e = evaluate(n, x, seq)
    return residual(e.d2value, R * e.dvalue, S * e.value)


def boundary_identities(n: int, seq: GammaSequence) -> tuple[Residual, Residual]:
    """Residuals of the two boundary-value identities at x = z:

    P_n(z) P_{n-1}(z) e^{-z^4} = g_n h_{n-1}
    P_n(z)^2 e^{-z^4} = h_n [(2n+1) - 4(gamma_{n+2}gamma_{n+1} + (gamma_n+gamma_{n+1})^2 + gamma_n gamma_{n-1})] / (2z)
    """
    if n < 1:
        raise DomainError("boundary identities are checked for n >= 1")
    z = seq.z
    mp = seq.ctx.mp
    G = seq.gamma_at
    p = evaluate_many(n, z, seq)
    ez = mp.exp(-z**4)
    r_prod = residual(p[n] * p[n - 1] * ez, -seq.g_at(n) * seq.h[n - 1])
    bracket = (2 * n + 1) - 4 * (G(n + 2) * G(n + 1) + (G(n) + G(n + 1))**2 + G(n) * G(n - 1))
    r_square = residual(p[n]**2 * ez, -seq.h[n] * bracket / (2 * z))
    return r_prod, r_square


def z_flow_check(n: int, x, z, step, ctx, builder=None) -> Residual:
    """Central-difference check of the z-derivative relation

    -n P_n + x P_n' + z dP_n/dz + 4 gamma_n (gamma_{n+1}+gamma_n+gamma_{n-1}+x^2) P_n
        = 4 gamma_n (gamma_{n+1} + gamma_n + x^2) x P_{n-1}.

    The residual is O(step^2) plus rounding amplified by 1/step.
    """
    from .recurrence import gamma_from_moments

    build = builder or (lambda zz: gamma_from_moments(zz, n + 2, ctx))
    z = ctx.mpf(z)
    s = ctx.mpf(step)
    x = ctx.mpf(x)
    mid = build(z)
    dz = (evaluate(n, x, build(z + s)).value - evaluate(n, x, build(z - s)).value) / (2 * s)
    p, dp, _ = _table(n, x, mid)
    G = mid.gamma_at
    return residual(-n * p[n], x * dp[n], z * dz,
                    4 * G(n) * (G(n + 1) + G(n) + G(n - 1) + x**2) * p[n],
                    -4 * G(n) * (G(n + 1) + G(n) + x**2) * x * p[n - 1])


# quadrature-based checks (independent of the recurrence identities)

def inner_product(n: int, m: int, seq: GammaSequence):
    """<u, P_n P_m> by tanh-sinh quadrature."""
    k = max(n, m)
    return weighted_integral(lambda x: (lambda p: p[n] * p[m])(evaluate_many(k, x, seq)), seq.z, seq.ctx)


def derivative_components(n: int, seq: GammaSequence) -> dict[int, object]:
    """Coefficients of P_n' - n P_{n-1} on P_{n-1}, P_{n-2}, P_{n-3} via quadrature."""
    if n < 3:
        raise DomainError("derivative expansion is examined for n >= 3")
    out = {}
    for k in (n - 1, n - 2, n - 3):
        def f(x, k=k):
            p, dp, _ = _table(n, x, seq)
            return (dp[n] - n * p[n - 1]) * p[k]
        out[k] = weighted_integral(f, seq.z, seq.ctx) / seq.h[k]
    return out


def derivative_component_formula(n: int, seq: GammaSequence):
    """Predicted P_{n-3} coefficient -(n gamma_{n-1} + 2 lambda_{n,n-2})."""
    return -(n * seq.gamma_at(n - 1) + 2 * lambda_coefficient(n, seq))
