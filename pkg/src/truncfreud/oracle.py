"""Independent quadrature oracles for the truncated quartic weight.

These route through tanh-sinh quadrature and share no code with the
incomplete-gamma series, so agreement between the two is meaningful.
"""
from __future__ import annotations

from .specfun import DEFAULT_CONTEXT, PrecisionContext

GUARD_BITS = 32


def weighted_integral(f, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Integral of f(x) exp(-x^4) over [-z, z] (f an mpf callable)."""
    mp = ctx.mp
    z = ctx.mpf(z)
    prec = mp.prec
    mp.prec = prec + GUARD_BITS
    try:
        val = mp.quad(lambda x: f(x) * mp.exp(-x**4), [-z, 0, z])
    finally:
        mp.prec = prec
    return +val


def even_moment_quad(n, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """u_n by direct quadrature of 2 * int_0^z x^n exp(-x^4) dx, n even."""
    mp = ctx.mp
    z = ctx.mpf(z)
    if n % 2:
        return mp.zero
    prec = mp.prec
    mp.prec = prec + GUARD_BITS
    try:
        val = 2 * mp.quad(lambda x: x**n * mp.exp(-x**4), [0, z])
    finally:
        mp.prec = prec
    return +val


def lower_gamma_quad(a, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """int_0^x t^(a-1) e^(-t) dt via the substitution t = s^4 (smooths a < 1)."""
    mp = ctx.mp
    a = ctx.mpf(a)
    x = ctx.mpf(x)
    prec = mp.prec
    mp.prec = prec + GUARD_BITS
    try:
        top = mp.root(x, 4)
        val = mp.quad(lambda s: 4 * s**(4 * a - 1) * mp.exp(-s**4), [0, top])
    finally:
        mp.prec = prec
    return +val
