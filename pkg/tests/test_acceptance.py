"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Where a printed reference value or a printed formula is off, the literal
check is kept and allowed to fail; a companion test pins the recomputed
quantity so the implementation itself is still covered.
"""
import pytest

from truncfreud.moments import (
    moment, moment_z_derivative, moment_z_derivative_recurrence, stieltjes_integral,
    stieltjes_ode_residuals, stieltjes_truncation, stieltjes_value,
)
from truncfreud.recurrence import (
    g_asymptotic, gamma_asymptotic, gamma_from_moments, gamma_laguerre_freud, relative_deltas, toda_check,
)
from truncfreud.specfun import PrecisionContext
from truncfreud.tables import compare_charge_table, compare_zero_table
from truncfreud.verify import IDENTITIES, PUBLISHED_VARIANTS, run_suite
from truncfreud.zeros import zero_dynamics_trace, zeros

CTX = PrecisionContext(256)
MP = CTX.mp
LINES = []

# recomputed charges at z = 1 (independent Hankel-determinant oracle, 400 bits)
CHARGES_16_17 = {
    16: ("1.77606814301723138576110965889", "1.62939403038243948950206419573"),
    17: ("1.79980128551344895307019809788", "1.65521372077095906544443955654"),
}
LARGEST_P5_AT_1_5 = "1.15846583733889429630450140321"


def record(tag, ok, detail):
    LINES.append(f"CRITERION {tag}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def n(x, d=3):
    return MP.nstr(x, d)


@pytest.fixture(scope="module")
def big():
    return gamma_from_moments(1, 202, PrecisionContext(1024))


def test_criterion_1_table1():
    rows = compare_zero_table(1, CTX)
    bad = [f"z={r.z} d={n(max(r.delta))}" for r in rows if not r.passed]
    record("1", not bad, "P_5 two largest zeros vs printed table; failing rows: " + (", ".join(bad) or "none"))


def test_criterion_1_recomputed_entries():
    # the two rows the printed table misses, checked by two independent routes
    worst = MP.zero
    for z in ("1.2", "1.5"):
        a = zeros(5, gamma_from_moments(z, 8, CTX)).largest(2)
        b = zeros(5, gamma_laguerre_freud(z, 8, CTX, strict=True)).largest(2)
        worst = max([worst] + [abs(x - y) for x, y in zip(a, b)])
    a15 = zeros(5, gamma_from_moments("1.5", 8, CTX)).x[-1]
    worst = max(worst, abs(a15 - CTX.mpf(LARGEST_P5_AT_1_5)))
    record("1-recomputed", worst < 1e-25, f"z=1.2,1.5 moment vs recurrence route and oracle, worst {n(worst)}")


def test_criterion_2_table2():
    rows = compare_zero_table(2, CTX)
    bad = [f"z={r.z} d={n(max(r.delta))}" for r in rows if not r.passed]
    worst = max(max(r.delta) for r in rows if r.z is not None)
    record("2", not bad, f"P_6 two largest zeros vs printed table, worst finite-z delta {n(worst)}")


def test_criterion_3_table3():
    rows = compare_charge_table(CTX)
    pinned = [r for r in rows if r.pinned]
    bad = [f"n={r.n} d_eta={n(r.d_eta)} d_zeta={n(r.d_zeta)}" for r in pinned if not r.passed]
    extra = "; ".join(f"n={r.n} zeta={n(r.zeta, 7)} d={n(r.d_zeta)} {r.status}" for r in rows if not r.pinned)
    record("3", not bad, "charges n<=15 vs printed table; failing: " + (", ".join(bad) or "none")
           + " | reported only: " + extra)


def test_criterion_3_recomputed_rows():
    rows = {r.n: r for r in compare_charge_table(CTX)}
    worst = max(max(abs(rows[k].eta - CTX.mpf(e)), abs(rows[k].zeta - CTX.mpf(z)))
                for k, (e, z) in CHARGES_16_17.items())
    mono = all(rows[k + 1].zeta > rows[k].zeta for k in range(1, 17))
    record("3-recomputed", worst < 1e-25 and mono,
           f"n=16,17 vs oracle worst {n(worst)}, zeta monotone in n: {mono}")


def test_criterion_4_cross_route():
    worst = MP.zero
    for z in ("0.2", "0.5", "1", "1.5", "2.5"):
        a = gamma_from_moments(z, 21, CTX)
        b = gamma_laguerre_freud(z, 21, CTX, strict=True)
        worst = max([worst] + relative_deltas(a, b)[:20])
    record("4", worst < 1e-25, f"max relative gamma delta n<=20, 5 z values: {n(worst)}")


def test_criterion_5_identity_suite():
    res = run_suite(("0.5", "1", "2"), 15, 0, CTX, 50, "1e-20")
    bad = [f"{r.name}@z={n(r.z)}" for r in res if not r.passed]
    worst = max(r.worst for r in res)
    few = min(r.samples for r in res)
    record("5", not bad and few >= 50 and len(res) == 3 * len(IDENTITIES),
           f"{len(IDENTITIES)} identities x 3 z, >= {few} samples each, worst {n(worst)}; failing: "
           + (", ".join(bad) or "none"))


def test_criterion_5_printed_forms():
    res = run_suite(("0.5", "1", "2"), 15, 0, CTX, 50, "1e-20", names=PUBLISHED_VARIANTS)
    bad = [f"{r.name}@z={n(r.z)} worst={n(r.worst)}" for r in res if not r.passed]
    record("5-printed", not bad, "holonomic S and equilibrium sum exactly as printed; failing: "
           + (", ".join(bad) or "none"))


def test_criterion_6_moment_flow():
    z = CTX.mpf("1.3")
    worst = MP.zero
    for k in range(16):
        d = moment_z_derivative(2 * k, z, CTX)
        worst = max(worst, abs(moment_z_derivative_recurrence(2 * k, z, CTX) - d) / d)
        d2 = moment_z_derivative(2 * k + 2, z, CTX)
        worst = max(worst, abs(d2 - z**2 * d) / d2)
        rec2 = moment_z_derivative_recurrence(2 * k + 2, z, CTX)
        worst = max(worst, abs(rec2 - z**2 * moment_z_derivative_recurrence(2 * k, z, CTX)) / d2)
    record("6", worst < 1e-28, f"z-derivative of u_2n, closed vs recurrence form, n<=15: {n(worst)}")


def test_criterion_7_toda():
    worst_ratio = None
    for k in range(1, 9):
        a = toda_check(1, k, "1e-6", CTX)
        b = toda_check(1, k, "5e-7", CTX)
        r = min(abs(a.r_h / b.r_h), abs(a.r_gamma / b.r_gamma))
        worst_ratio = r if worst_ratio is None else min(worst_ratio, r)
    record("7", worst_ratio >= 3.5, f"Toda residual reduction under halving, n<=8: min ratio {n(worst_ratio)}")


def _slopes(errs):
    return [MP.log(errs[i + 1] / errs[i]) / MP.log(2) for i in (0, 1)]


def test_criterion_8_printed_coefficients(big):
    ns = (50, 100, 200)
    sg = _slopes([abs(big.gamma[k] - gamma_asymptotic(k, 1, big.ctx, "published")) for k in ns])
    sh = _slopes([abs(big.g_at(k) - g_asymptotic(k, 1, big.ctx)) for k in ns])
    record("8", max(sg + sh) <= -4.5,
           f"slopes gamma {[n(s) for s in sg]}, g {[n(s) for s in sh]} (need <= -4.5)")


def test_criterion_8_corrected_coefficient(big):
    ns = (50, 100, 200)
    sg = _slopes([abs(big.gamma[k] - gamma_asymptotic(k, 1, big.ctx)) for k in ns])
    record("8-corrected", max(sg) <= -4.5, f"gamma slopes with rederived n^-4 term {[n(s) for s in sg]}")


@pytest.fixture(scope="module")
def trajectories():
    return {s: zero_dynamics_trace(5, 5, "0.2", "1.5", s, CTX).end for s in (512, 1024, 2048)}


def test_criterion_9_dynamics(trajectories):
    direct = zeros(5, gamma_from_moments("1.5", 8, CTX)).x[-1]
    e = {s: abs(x - direct) for s, x in trajectories.items()}
    ratios = [e[512] / e[1024], e[1024] / e[2048]]
    ok = e[2048] < 1e-8 and all(12 <= r <= 20 for r in ratios)
    record("9", ok, f"endpoint error {n(e[2048])} at 2048 steps, halving ratios {[n(r) for r in ratios]}")


def test_criterion_9_printed_value(trajectories):
    d = abs(trajectories[2048] - CTX.mpf("1.158470"))
    record("9-printed", d < 2e-6, f"|x_5,5(1.5) - 1.158470| = {n(d)} (need < 2e-6)")


def test_criterion_10_stieltjes():
    chk = stieltjes_ode_residuals(3, 1, CTX, N=60)
    trunc = stieltjes_truncation(1, 60, CTX)
    d_int = abs(stieltjes_value(3, trunc) - stieltjes_integral(3, 1, CTX))
    worst = max(abs(chk.r_t.value), abs(chk.r_z.value), d_int)
    record("10", chk.passed and worst < 1e-25,
           f"t=3, z=1, 60 terms: t-ODE {n(chk.r_t.value)}, z-ODE {n(chk.r_z.value)}, integral {n(d_int)}")


def test_criterion_10_printed_rhs():
    chk = stieltjes_ode_residuals(3, 1, CTX, N=60, rhs="short")
    record("10-printed", abs(chk.r_t.value) < 1e-25, f"t-ODE right-hand side as printed: residual {n(chk.r_t.value)}")


def test_moment_reference():
    # sanity anchor: u_0(1) = Gamma-hat(1/4, 1) / 2
    assert abs(moment(0, 1, CTX) - CTX.mpf("1.689677189514204801528093861399531932266")) < 1e-35
