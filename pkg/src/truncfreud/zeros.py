"""
Zeros of P_n(x; z), their electrostatic interpretation, and their motion in z.

Zeros come from the Jacobi matrix (zero diagonal, off-diagonal sqrt(gamma_k))
by Sturm-sequence bisection to half precision, followed by one Newton step
on the recurrence evaluator, which restores full precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

from .errors import DomainError, PrecisionLossError, SingularityError, StructureViolation
from .polyeval import evaluate, ladder_coefficients, LadderCoefficients
from .recurrence import GammaSequence, gamma_from_moments
from .specfun import DEFAULT_CONTEXT, PrecisionContext, Residual, residual


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal matrix with zero diagonal; ``sq[i] = gamma_{i+1}``."""

    n: int
    sq: tuple
    ctx: PrecisionContext

    @classmethod
    def from_sequence(cls, n: int, seq: GammaSequence) -> "JacobiMatrix":
        if n < 1:
            raise DomainError("matrix size must be positive")
        if n - 1 > seq.N:
            raise DomainError(f"size {n} needs gamma_1..gamma_{n - 1}")
        sq = tuple(seq.gamma[1:n])
        if any(not g > 0 for g in sq):
            raise PrecisionLossError("non-positive gamma; the Jacobi matrix is not real symmetric")
        return cls(n, sq, seq.ctx)

    @property
    def offdiag(self) -> tuple:
        mp = self.ctx.mp
        return tuple(mp.sqrt(g) for g in self.sq)

    def count_below(self, lam) -> int:
        """Number of eigenvalues strictly less than ``lam`` (Sturm count)."""
        mp = self.ctx.mp
        tiny = mp.ldexp(1, -2 * self.ctx.mantissa_bits)
        q = -lam
        count = 0
        for i in range(self.n):
            if i:
                q = -lam - self.sq[i - 1] / q
            if q == 0:
                q = -tiny
            if q < 0:
                count += 1
        return count

    def bound(self):
        """Gershgorin radius."""
        mp = self.ctx.mp
        off = (mp.zero,) + self.offdiag + (mp.zero,)
        return max(off[i] + off[i + 1] for i in range(self.n))

    def eigenvalue(self, j: int, tol):
        """The j-th smallest eigenvalue (0-based) by bisection to width ``tol``."""
        hi = self.bound() * (1 + self.ctx.eps * 16) + tol
        lo = -hi
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if self.count_below(mid) <= j:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


@dataclass(frozen=True)
class ZeroSet:
    n: int
    z: object
    x: tuple
    polish_shift: tuple
    ctx: PrecisionContext

    def inside(self) -> bool:
        return all(-self.z < v < self.z for v in self.x)

    def symmetric_defect(self):
        return max((abs(self.x[k] + self.x[self.n - 1 - k]) for k in range(self.n)),
                   default=self.ctx.mp.zero)

    def interlaces(self, lower: "ZeroSet") -> bool:
        """True if ``lower`` (degree n-1) strictly interlaces with this set."""
        if lower.n != self.n - 1:
            raise DomainError("interlacing compares consecutive degrees")
        return all(self.x[k] < lower.x[k] < self.x[k + 1] for k in range(lower.n))

    def largest(self, m: int = 2) -> tuple:
        return self.x[-m:]


def zeros(n: int, seq: GammaSequence, tol=None) -> ZeroSet:
    """Sorted zeros x_{n,1} < ... < x_{n,n} of P_n.

    ``tol`` is the bisection width before polishing (default
    2^(-bits/2) times the spectral bound).
    """
    if n < 1:
        raise DomainError("degree must be positive")
    ctx = seq.ctx
    mp = ctx.mp
    J = JacobiMatrix.from_sequence(n, seq)
    bound = J.bound()
    tol = bound * mp.ldexp(1, -(ctx.mantissa_bits // 2)) if tol is None else ctx.mpf(tol)
    half = n // 2
    pos, shifts = [], []
    for j in range(n - half, n):
        lam = J.eigenvalue(j, tol)
        e = evaluate(n, lam, seq)
        step = e.value / e.dvalue
        pos.append(lam - step)
        shifts.append(abs(step))
    neg = [-v for v in reversed(pos)]
    mid = [mp.zero] if n % 2 else []
    x = tuple(neg + mid + pos)
    shift = tuple(list(reversed(shifts)) + ([mp.zero] if n % 2 else []) + shifts)
    return ZeroSet(n, seq.z, x, shift, ctx)


# electrostatics

@dataclass(frozen=True)
class ElectrostaticModel:
    """Real charges at +-eta and imaginary charges at +-i*zeta_imag (the zeros of A_n)."""

    n: int
    z: object
    eta1: object
    eta2: object
    zeta_imag: object
    ladder: LadderCoefficients

    @property
    def zeta1(self):
        return self.zeta_imag.context.mpc(0, self.zeta_imag)

    def root_residuals(self) -> tuple[Residual, Residual]:
        """A_n at eta_1 and at i*zeta_imag, with the usual term scale."""
        L = self.ladder
        e2 = self.eta1**2
        z2 = -self.zeta_imag**2
        return (residual(e2 * e2, L.b * e2, L.c), residual(z2 * z2, L.b * z2, L.c))


def electrostatic_points(n: int, seq: GammaSequence) -> ElectrostaticModel:
    """Zeros of A_n(x) = x^4 + b x^2 + c as real pair +-eta and imaginary pair +-i zeta."""
    if n < 1:
        raise DomainError("electrostatic model is defined for n >= 1")
    mp = seq.ctx.mp
    L = ladder_coefficients(n, seq)
    disc = L.b**2 - 4 * L.c
    if not disc > 0:
        raise StructureViolation(f"b^2 - 4c = {mp.nstr(disc, 5)} <= 0 at n={n}: no real pair")
    r = mp.sqrt(disc)
    eta_sq = (r - L.b) / 2
    zeta_sq = (r + L.b) / 2
    if not eta_sq > 0:
        raise StructureViolation(f"eta^2 = {mp.nstr(eta_sq, 5)} <= 0 at n={n}")
    if not zeta_sq > 0:
        raise StructureViolation(f"zeta^2 = {mp.nstr(zeta_sq, 5)} <= 0 at n={n}")
    eta = mp.sqrt(eta_sq)
    return ElectrostaticModel(n, seq.z, eta, -eta, mp.sqrt(zeta_sq), L)


def potential_value(x, n: int, seq: GammaSequence):
    """(V, V_long, V_short) with V = x^4 + ln|A_n / phi|, V_long = x^4."""
    from .errors import PoleError

    mp = seq.ctx.mp
    x = seq.ctx.mpf(x)
    L = ladder_coefficients(n, seq)
    A = L.A(x)
    phi = x**2 - seq.z**2
    if A == 0 or phi == 0:
        raise PoleError(f"potential is singular at x={mp.nstr(x, 10)}")
    v_long = x**4
    v_short = mp.log(abs(A)) - mp.log(abs(phi))
    return v_long + v_short, v_long, v_short


def potential_derivative(x, L: LadderCoefficients):
    """V'(x) = 4x^3 + A_n'/A_n - phi'/phi."""
    phi = x * x - L.z**2
    return 4 * x**3 + L.dA(x) / L.A(x) - 2 * x / phi


def equilibrium_residual(zs: ZeroSet, seq: GammaSequence,
                         variant: Literal["gradient", "published"] = "gradient") -> list[Residual]:
    """Force balance at each zero.

    The default is the gradient of the energy,
    V'(x_k) - sum_{j != k} 2 / (x_k - x_j), which vanishes at the zeros
    because P''(x_k)/P'(x_k) = sum_{j != k} 2/(x_k - x_j) and the
    holonomic equation gives P''/P' = V' there.  ``variant="published"``
    adds the pair sum instead of subtracting it; that form is not zero and
    is kept only for comparison.
    """
    L = ladder_coefficients(zs.n, seq)
    sign = -1 if variant == "gradient" else 1
    if variant not in ("gradient", "published"):
        raise DomainError(f"unknown variant {variant!r}")
    out = []
    for k, xk in enumerate(zs.x):
        pair = [sign * 2 / (xk - xj) for j, xj in enumerate(zs.x) if j != k]
        phi = xk * xk - zs.z**2
        out.append(residual(4 * xk**3, L.dA(xk) / L.A(xk), -2 * xk / phi, *pair))
    return out


# motion of the zeros in z

@dataclass(frozen=True)
class Trajectory:
    n: int
    k: int
    z: tuple
    x: tuple

    @property
    def end(self):
        return self.x[-1]


def sequence_provider(n: int, ctx: PrecisionContext) -> Callable:
    """Cached z -> GammaSequence (Gram route, N = n + 2)."""
    cache = {}

    def get(z):
        key = z
        seq = cache.get(key)
        if seq is None:
            seq = cache[key] = gamma_from_moments(z, n + 2, ctx)
        return seq
    return get


def zero_dynamics_trace(n: int, k: int, z0, z1, steps: int = 2048,
                        ctx: PrecisionContext = DEFAULT_CONTEXT, provider=None) -> Trajectory:
    """Integrate dx/dz = (x/z) A_n(z; z) / A_n(x; z) from the k-th zero at z0.

    Classical fixed-step RK4; gamma-dependent coefficients are rebuilt at
    every stage abscissa.  ``k`` is 1-based in ascending order.
    """
    mp = ctx.mp
    z0, z1 = ctx.mpf(z0), ctx.mpf(z1)
    if not 0 < z0 < z1:
        raise DomainError("need 0 < z0 < z1")
    if not 1 <= k <= n:
        raise DomainError("k must lie in 1..n")
    if steps < 1:
        raise DomainError("steps must be positive")
    get = provider or sequence_provider(n, ctx)
    x = zeros(n, get(z0)).x[k - 1]
    thresh = mp.ldexp(1, -(ctx.mantissa_bits // 2))
    sign0 = None

    def rhs(zz, xx):
        nonlocal sign0
        L = ladder_coefficients(n, get(zz))
        a = L.A(xx)
        s = mp.sign(a)
        if sign0 is None:
            sign0 = s
        if abs(a) <= thresh * max(xx**4, abs(L.b) * xx**2, abs(L.c)) or s != sign0:
            raise SingularityError(f"A_n(x; z) vanishes near z={mp.nstr(zz, 10)}, x={mp.nstr(xx, 10)}",
                                   location=(zz, xx))
        return xx / zz * L.A(zz) / a

    h = (z1 - z0) / steps
    zs, xs = [z0], [x]
    zc = z0
    for i in range(steps):
        zm = z0 + (2 * i + 1) * h / 2
        zn = z0 + (i + 1) * h
        k1 = rhs(zc, x)
        k2 = rhs(zm, x + h * k1 / 2)
        k3 = rhs(zm, x + h * k2 / 2)
        k4 = rhs(zn, x + h * k3)
        x = x + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        zc = zn
        zs.append(zc)
        xs.append(x)
    return Trajectory(n, k, tuple(zs), tuple(xs))


def chebyshev_limit(n: int, k: int, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """z cos(k pi / (n + 1)): the small-z limit of the zeros (descending in k)."""
    if not 1 <= k <= n:
        raise DomainError("k must lie in 1..n")
    mp = ctx.mp
    if 2 * k == n + 1:
        return mp.zero
    return ctx.mpf(z) * mp.cos(k * mp.pi / (n + 1))


def chebyshev_deviation(zs: ZeroSet):
    """max_k |x_{n,k} - z cos(...)| after sorting both sets."""
    lim = sorted(chebyshev_limit(zs.n, k, zs.z, zs.ctx) for k in range(1, zs.n + 1))
    return max(abs(a - b) for a, b in zip(zs.x, lim))
