"""Seeded randomized verification of every identity the package implements.

Each identity is evaluated on at least ``samples`` randomly drawn points
(n, or (n, x)) per z and its normalized residual compared with ``tol``.
The random stream comes from :class:`random.Random(seed)`, so a given
configuration always checks the same points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .errors import PoleError
from .moments import check_moment_exp_recurrence, check_moment_recurrence, moment_table
from .polyeval import boundary_identities, check_structure, holonomic_residual, ladder_check
from .recurrence import check_fifth_order, check_laguerre_freud, gamma_from_moments
from .specfun import DEFAULT_CONTEXT, PrecisionContext
from .zeros import equilibrium_residual, zeros


@dataclass(frozen=True)
class IdentityResult:
    name: str
    z: object
    samples: int
    worst: object
    tol: object

    @property
    def passed(self) -> bool:
        return self.samples > 0 and self.worst <= self.tol


IDENTITIES = (
    "laguerre_freud", "fifth_order", "moment_recurrence", "moment_exp_recurrence",
    "structure", "ladder_lowering", "ladder_compat", "holonomic",
    "boundary_product", "boundary_square", "equilibrium",
)

PUBLISHED_VARIANTS = ("holonomic[published]", "equilibrium[published]")


def _x_draw(rng: random.Random, z, ctx):
    # points inside and somewhat outside the support; never exactly +-z
    return ctx.mpf(rng.uniform(-1.5, 1.5)) * z


def _sampler(name: str, z, nmax: int, seq, table, rng: random.Random, ctx) -> Callable[[], list]:
    """A zero-argument callable returning the normalized residuals of one draw."""
    lf = check_laguerre_freud(seq, range(1, nmax + 1))
    fo = check_fifth_order(seq, range(0, nmax + 1))
    mr = check_moment_recurrence(table)
    me = check_moment_exp_recurrence(table)
    zero_cache = {}

    def pick(lo, hi=nmax):
        return rng.randint(lo, hi)

    def draw():
        if name == "laguerre_freud":
            return [lf[pick(1)].normalized]
        if name == "fifth_order":
            return [fo[pick(0)].normalized]
        if name == "moment_recurrence":
            return [mr[rng.randrange(len(mr))].normalized]
        if name == "moment_exp_recurrence":
            return [me[rng.randrange(len(me))].normalized]
        if name == "structure":
            return [check_structure(pick(0), _x_draw(rng, z, ctx), seq).normalized]
        if name == "ladder_lowering":
            return [ladder_check(pick(1), _x_draw(rng, z, ctx), seq)[0].normalized]
        if name == "ladder_compat":
            return [ladder_check(pick(1), _x_draw(rng, z, ctx), seq)[1].normalized]
        if name.startswith("holonomic"):
            variant = "published" if name.endswith("[published]") else "corrected"
            n = pick(1)
            while True:
                try:
                    return [holonomic_residual(n, _x_draw(rng, z, ctx), seq, variant).normalized]
                except PoleError:
                    continue
        if name == "boundary_product":
            return [boundary_identities(pick(1), seq)[0].normalized]
        if name == "boundary_square":
            return [boundary_identities(pick(1), seq)[1].normalized]
        if name.startswith("equilibrium"):
            variant = "published" if name.endswith("[published]") else "gradient"
            n = pick(2)
            zs = zero_cache.get(n)
            if zs is None:
                zs = zero_cache[n] = zeros(n, seq)
            return [r.normalized for r in equilibrium_residual(zs, seq, variant)]
        raise KeyError(name)
    return draw


def run_identity(name: str, z, nmax: int, seed: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                 samples: int = 50, tol="1e-20") -> IdentityResult:
    """Draw ``samples`` points for one identity at one z and keep the worst residual."""
    z = ctx.mpf(z)
    tol = ctx.mpf(tol)
    rng = random.Random(f"{seed}:{name}:{z}")
    seq = gamma_from_moments(z, nmax + 6, ctx)
    table = moment_table(z, nmax + 4, ctx)
    draw = _sampler(name, z, nmax, seq, table, rng, ctx)
    worst = ctx.mp.zero
    count = 0
    while count < samples:
        vals = draw()
        count += len(vals)
        worst = max([worst] + vals)
    return IdentityResult(name, z, count, worst, tol)


def run_suite(zs=("0.5", "1", "2"), nmax: int = 15, seed: int = 0,
              ctx: PrecisionContext = DEFAULT_CONTEXT, samples: int = 50, tol="1e-20",
              names=IDENTITIES) -> list[IdentityResult]:
    return [run_identity(name, z, nmax, seed, ctx, samples, tol) for z in zs for name in names]
