import pytest
from hypothesis import given, strategies as st

from truncfreud.errors import DomainError, PoleError, SingularityError, StructureViolation
from truncfreud.polyeval import ladder_coefficients
from truncfreud.recurrence import GammaSequence, gamma_from_moments
from truncfreud.specfun import PrecisionContext
from truncfreud.zeros import (
    JacobiMatrix, chebyshev_deviation, chebyshev_limit, electrostatic_points,
    equilibrium_residual, potential_derivative, potential_value, zero_dynamics_trace, zeros,
)

# zeros of P_5 from eigsy on the Hankel-determinant Jacobi matrix (400-bit oracle)
P5_ZEROS = {
    "0.2": ("0.107685028958577985001925309342", "0.181229719462589024041692755858"),
    "1.5": ("0.644490863269932543135668246478", "1.15846583733889429630450140321"),
}
# eta_1, zeta_1/i at z = 1 for the rows whose published values break trend
CHARGES_16_17 = {
    16: ("1.77606814301723138576110965889", "1.62939403038243948950206419573"),
    17: ("1.79980128551344895307019809788", "1.65521372077095906544443955654"),
}
Z_GRID = ["0.2", "0.5", "1", "1.5", "2.5"]


@pytest.fixture(scope="module")
def seqs(ctx):
    return {z: gamma_from_moments(z, 24, ctx) for z in Z_GRID}


class TestJacobi:
    def test_count(self, ctx, seqs):
        J = JacobiMatrix.from_sequence(6, seqs["1"])
        assert J.count_below(-10) == 0 and J.count_below(10) == 6
        assert J.count_below(0) == 3

    def test_eigenvalues_match_library(self, ctx, mp, seqs):
        J = JacobiMatrix.from_sequence(7, seqs["1"])
        M = mp.matrix(7, 7)
        for i, b in enumerate(J.offdiag):
            M[i, i + 1] = M[i + 1, i] = b
        ref = sorted(mp.eigsy(M, eigvals_only=True))
        got = zeros(7, seqs["1"]).x
        assert max(abs(a - b) for a, b in zip(ref, got)) < 1e-60

    def test_rejects_bad_gamma(self, ctx, seqs):
        s = seqs["1"]
        g = list(s.gamma)
        g[2] = -g[2]
        bad = GammaSequence(s.z, tuple(g), s.g, s.h, s.route, ctx)
        with pytest.raises(Exception):
            JacobiMatrix.from_sequence(5, bad)


class TestZeros:
    @pytest.mark.parametrize("z", sorted(P5_ZEROS))
    def test_frozen(self, ctx, mp, z):
        zs = zeros(5, gamma_from_moments(z, 8, ctx))
        for got, ref in zip(zs.largest(2), P5_ZEROS[z]):
            assert abs(got - mp.mpf(ref)) < 1e-28

    def test_table_entry(self, ctx, mp):
        zs = zeros(5, gamma_from_moments("0.2", 8, ctx))
        assert abs(zs.x[-1] - mp.mpf("0.181230")) < 2e-6
        assert abs(zs.x[-2] - mp.mpf("0.107685")) < 2e-6

    def test_degree_one(self, seqs):
        assert zeros(1, seqs["1"]).x == (0,)

    def test_degree_two(self, mp, seqs):
        zs = zeros(2, seqs["1"])
        r = mp.sqrt(seqs["1"].gamma[1])
        assert abs(zs.x[1] - r) < 1e-70 and abs(zs.x[0] + r) < 1e-70

    @pytest.mark.parametrize("z", Z_GRID)
    def test_structure(self, seqs, z):
        prev = None
        for n in range(1, 21):
            zs = zeros(n, seqs[z])
            assert zs.inside()
            assert list(zs.x) == sorted(zs.x)
            assert zs.symmetric_defect() == 0
            if n % 2:
                assert zs.x[n // 2] == 0
            assert max(zs.polish_shift) < 1e-15
            if prev is not None:
                assert zs.interlaces(prev)
            prev = zs

    @pytest.mark.parametrize("z", Z_GRID)
    def test_equilibrium(self, seqs, z):
        for n in (2, 5, 9, 14):
            zs = zeros(n, seqs[z])
            assert all(r.normalized < 1e-20 for r in equilibrium_residual(zs, seqs[z]))

    def test_equilibrium_published_sum_fails(self, seqs):
        zs = zeros(5, seqs["1"])
        assert max(r.normalized for r in equilibrium_residual(zs, seqs["1"], "published")) > 0.1

    def test_equilibrium_perturbation(self, ctx, seqs):
        s = seqs["1"]
        zs = zeros(5, s)
        x = list(zs.x)
        x[4] += ctx.mpf("1e-8")
        moved = type(zs)(zs.n, zs.z, tuple(x), zs.polish_shift, ctx)
        res = equilibrium_residual(moved, s)
        assert abs(res[4].value) > 1e-9
        assert all(r.normalized < 1e-20 for r in equilibrium_residual(zs, s))

    def test_middle_zero_balance(self, seqs):
        zs = zeros(5, seqs["1"])
        assert equilibrium_residual(zs, seqs["1"])[2].value == 0


class TestElectrostatics:
    def test_n1(self, ctx, mp, seqs):
        em = electrostatic_points(1, seqs["1"])
        assert abs(em.eta1 - mp.mpf("1.10947")) < 5e-5
        assert abs(em.zeta_imag - mp.mpf("0.870003")) < 5e-5

    def test_n5(self, ctx, mp, seqs):
        em = electrostatic_points(5, seqs["1"])
        assert abs(em.eta1 - mp.mpf("1.3997")) < 5e-4
        assert abs(em.zeta_imag - mp.mpf("1.2106")) < 5e-4

    def test_roots(self, seqs):
        for n in range(1, 18):
            em = electrostatic_points(n, seqs["1"])
            assert em.eta2 == -em.eta1
            ra, rz = em.root_residuals()
            assert ra.normalized < 1e-25 and rz.normalized < 1e-25
            assert abs(em.ladder.A(em.zeta1)) < 1e-25 * abs(em.ladder.c)

    @pytest.mark.parametrize("n", [16, 17])
    def test_recomputed_rows(self, mp, seqs, n):
        em = electrostatic_points(n, seqs["1"])
        eta, zeta = CHARGES_16_17[n]
        assert abs(em.eta1 - mp.mpf(eta)) < 1e-28 and abs(em.zeta_imag - mp.mpf(zeta)) < 1e-28

    def test_zeta_monotone(self, seqs):
        vals = [electrostatic_points(n, seqs["1"]).zeta_imag for n in range(1, 18)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("z", Z_GRID)
    def test_remark_signs(self, seqs, z):
        for n in range(1, 20):
            electrostatic_points(n, seqs[z])

    def test_violation_reported(self, ctx, seqs):
        s = seqs["1"]
        g = list(s.gamma)
        g[3] = ctx.mpf(50)
        bad = GammaSequence(s.z, tuple(g), s.g, s.h, s.route, ctx)
        with pytest.raises(StructureViolation):
            electrostatic_points(2, bad)


class TestPotential:
    def test_split(self, ctx, seqs):
        v, vl, vs = potential_value("0.3", 5, seqs["1"])
        assert vl == ctx.mpf("0.3")**4 and abs(v - vl - vs) < 1e-70

    @given(st.floats(0.01, 3.0))
    def test_even(self, x):
        s = gamma_from_moments(1, 10, PrecisionContext())
        try:
            a = potential_value(x, 5, s)[0]
            b = potential_value(-x, 5, s)[0]
        except PoleError:
            return
        assert abs(a - b) < 1e-70

    def test_derivative(self, ctx, seqs):
        s = seqs["1"]
        h = ctx.mpf("1e-25")
        x = ctx.mpf("0.5")
        fd = (potential_value(x + h, 5, s)[0] - potential_value(x - h, 5, s)[0]) / (2 * h)
        assert abs(fd - potential_derivative(x, ladder_coefficients(5, s))) < 1e-40

    def test_pole(self, seqs):
        with pytest.raises(PoleError):
            potential_value(1, 5, seqs["1"])


class TestDynamics:
    def test_middle_zero_stays(self, ctx):
        tr = zero_dynamics_trace(5, 3, "0.5", "1", 8, ctx)
        assert all(x == 0 for x in tr.x)

    def test_endpoint_and_order(self, ctx):
        direct = zeros(4, gamma_from_moments("1.2", 8, ctx)).x[-1]
        e1 = abs(zero_dynamics_trace(4, 4, "0.5", "1.2", 64, ctx).end - direct)
        e2 = abs(zero_dynamics_trace(4, 4, "0.5", "1.2", 128, ctx).end - direct)
        assert e2 < 1e-8
        assert 12 < e1 / e2 < 20

    def test_domain(self, ctx):
        with pytest.raises(DomainError):
            zero_dynamics_trace(5, 6, "0.2", "1", 4, ctx)
        with pytest.raises(DomainError):
            zero_dynamics_trace(5, 5, "1", "0.2", 4, ctx)

    def test_singularity(self, ctx):
        # a provider whose A_n has a root on the path forces an abort
        real = gamma_from_moments("0.5", 8, ctx)

        def provider(z):
            s = gamma_from_moments(z, 8, ctx)
            if z > ctx.mpf("0.55"):
                g = list(s.gamma)
                g[6] = ctx.mpf(50)
                return GammaSequence(s.z, tuple(g), s.g, s.h, s.route, ctx)
            return s
        with pytest.raises(SingularityError) as exc:
            zero_dynamics_trace(5, 5, "0.5", "1", 16, ctx, provider=provider)
        assert exc.value.location is not None
        assert real.N == 8


class TestChebyshev:
    def test_n1(self, ctx):
        assert abs(chebyshev_limit(1, 1, 3, ctx)) < 1e-70

    def test_symmetric(self, ctx):
        vals = sorted(chebyshev_limit(6, k, 1, ctx) for k in range(1, 7))
        assert all(abs(a + b) < 1e-70 for a, b in zip(vals, reversed(vals)))

    @pytest.mark.slow
    def test_improves_with_n(self):
        big = gamma_from_moments(1, 200, PrecisionContext(1024))
        low = big.at_precision(PrecisionContext(128))
        devs = [chebyshev_deviation(zeros(n, low)) for n in (50, 100, 200)]
        assert devs[0] > devs[1] > devs[2]
