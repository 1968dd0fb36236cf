"""Reference values published for the largest zeros and the charge locations.

Every entry is stored as a string exactly as printed, together with a
provenance label, so golden tests and the ``table`` command can report
|computed - published| without re-typing numbers.  ``None`` for z denotes the
untruncated (whole-line) weight; it is approximated by ``Z_INFINITY_PROXY``.
"""
from __future__ import annotations

from dataclasses import dataclass

PUBLISHED = "published"
RECOMPUTED = "recomputed"

Z_INFINITY_PROXY = "4"


@dataclass(frozen=True)
class ZeroRow:
    z: str | None
    second: str
    largest: str
    tol: str
    label: str = PUBLISHED


@dataclass(frozen=True)
class ChargeRow:
    n: int
    eta: str
    zeta: str
    tol: str
    label: str = PUBLISHED
    pinned: bool = True


# two largest zeros of P_5(x; z)
TABLE1 = (
    ZeroRow("0.2", "0.107685", "0.181230", "2e-6"),
    ZeroRow("0.4", "0.215105", "0.362271", "2e-6"),
    ZeroRow("0.6", "0.320950", "0.542169", "2e-6"),
    ZeroRow("0.9", "0.468896", "0.803263", "2e-6"),
    ZeroRow("1.2", "0.584567", "1.029070", "2e-6"),
    ZeroRow("1.4", "0.631505", "1.130200", "2e-6"),
    ZeroRow("1.5", "0.644491", "1.158470", "2e-6"),
    ZeroRow(None, "0.655248", "1.180460", "1e-4"),
)

# two largest zeros of P_6(x; z)
TABLE2 = (
    ZeroRow("0.3", "0.1982974", "0.2797096", "5e-7"),
    ZeroRow("0.4", "0.2642083", "0.3728558", "5e-7"),
    ZeroRow("0.65", "0.4266802", "0.6045856", "5e-7"),
    ZeroRow("0.9", "0.5795190", "0.8310874", "5e-7"),
    ZeroRow("1.2", "0.7308850", "1.0794365", "5e-7"),
    ZeroRow("1.4", "0.7984810", "1.2066653", "5e-7"),
    ZeroRow("1.5", "0.8196970", "1.2490734", "5e-7"),
    ZeroRow(None, "0.8415723", "1.2914650", "1e-4"),
)

TABLE3_Z = "1"

# eta_1(n, 1) and zeta_1(n, 1) / i; rows 16 and 17 are compared but not pinned
TABLE3 = (
    ChargeRow(1, "1.10947", "0.870003", "5e-4"),
    ChargeRow(2, "1.19659", "0.975701", "5e-4"),
    ChargeRow(3, "1.27583", "1.07093", "5e-4"),
    ChargeRow(4, "1.34277", "1.14612", "5e-4"),
    ChargeRow(5, "1.3997", "1.2106", "5e-4"),
    ChargeRow(6, "1.44951", "1.26696", "5e-4"),
    ChargeRow(7, "1.49408", "1.31726", "5e-4"),
    ChargeRow(8, "1.53462", "1.3628", "5e-4"),
    ChargeRow(9, "1.57192", "1.40449", "5e-4"),
    ChargeRow(10, "1.60653", "1.44302", "5e-4"),
    ChargeRow(11, "1.6389", "1.47888", "5e-4"),
    ChargeRow(12, "1.66932", "1.51246", "5e-4"),
    ChargeRow(13, "1.69806", "1.54408", "5e-4"),
    ChargeRow(14, "1.72533", "1.57404", "5e-4"),
    ChargeRow(15, "1.75127", "1.60162", "5e-4"),
    ChargeRow(16, "1.77603", "1.63848", "5e-4", pinned=False),
    ChargeRow(17, "1.79819", "1.55118", "5e-4", pinned=False),
)


@dataclass(frozen=True)
class ZeroComparison:
    z: str | None
    computed: tuple  # (second largest, largest)
    published: tuple
    delta: tuple
    tol: object

    @property
    def passed(self) -> bool:
        return all(d <= self.tol for d in self.delta)


@dataclass(frozen=True)
class ChargeComparison:
    n: int
    eta: object
    zeta: object
    d_eta: object
    d_zeta: object
    tol: object
    pinned: bool

    @property
    def passed(self) -> bool:
        return self.d_eta <= self.tol and self.d_zeta <= self.tol

    @property
    def status(self) -> str:
        if self.passed:
            return "ok"
        return "FAIL" if self.pinned else "DISCREPANT"


def compare_zero_table(which: int, ctx) -> list[ZeroComparison]:
    """Recompute Table 1 (degree 5) or Table 2 (degree 6) rows."""
    from .recurrence import gamma_from_moments
    from .zeros import zeros

    rows, n = {1: (TABLE1, 5), 2: (TABLE2, 6)}[which]
    out = []
    for row in rows:
        z = ctx.mpf(row.z if row.z is not None else Z_INFINITY_PROXY)
        zs = zeros(n, gamma_from_moments(z, n + 3, ctx))
        comp = zs.largest(2)
        pub = (ctx.mpf(row.second), ctx.mpf(row.largest))
        out.append(ZeroComparison(row.z, comp, pub, tuple(abs(a - b) for a, b in zip(comp, pub)),
                                  ctx.mpf(row.tol)))
    return out


def compare_charge_table(ctx) -> list[ChargeComparison]:
    from .recurrence import gamma_from_moments
    from .zeros import electrostatic_points

    nmax = max(r.n for r in TABLE3)
    seq = gamma_from_moments(ctx.mpf(TABLE3_Z), nmax + 3, ctx)
    out = []
    for row in TABLE3:
        em = electrostatic_points(row.n, seq)
        out.append(ChargeComparison(row.n, em.eta1, em.zeta_imag,
                                    abs(em.eta1 - ctx.mpf(row.eta)), abs(em.zeta_imag - ctx.mpf(row.zeta)),
                                    ctx.mpf(row.tol), row.pinned))
    return out
