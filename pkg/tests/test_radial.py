"""Radial closed forms, residual oracles and the shooting integrator."""

import math

import numpy as np
import pytest

from pqatlas import radial as rd


class TestGroundState:
    def test_parameters_3_half(self):
        gs = rd.GroundState(3, 0.5)
        assert gs.K == pytest.approx(0.25)
        assert gs.p == pytest.approx(5.0)
        assert gs.u(0.0) == pytest.approx(4.0 ** (1.0 / 3.0))
        assert gs.u(1.0) == pytest.approx((5.0 / 4.0) ** (-1.0 / 3.0))

    def test_eval_fields(self):
        dq = rd.ground_state_eval(3, 0.5, 1.0)
        gs = rd.GroundState(3, 0.5)
        assert dq.u == pytest.approx(gs.u(1.0))
        assert dq.H == pytest.approx((gs.du(1.0) / gs.u(1.0)) ** 2)
        assert dq.Z == pytest.approx(dq.L / dq.H)
        assert dq.F > 0

    def test_monotone_decreasing_positive(self):
        gs = rd.GroundState(6, 0.25)
        for r in np.logspace(-2, 2, 30):
            assert gs.u(r) > 0
            assert gs.du(r) < 0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            rd.GroundState(2, 0.5)
        with pytest.raises(ValueError):
            rd.GroundState(3, 1.0)
        with pytest.raises(ValueError):
            rd.ground_state_eval(3, 0.5, -1.0)


class TestPdeResidual:
    @pytest.mark.parametrize("n,q", [(3, 0.5), (4, 1.0 / 3.0), (6, 0.25)])
    def test_ground_state_residual(self, n, q):
        gs = rd.GroundState(n, q)
        for r in np.logspace(-1, 1, 32):
            res = rd.pde_residual_radial(gs, float(r))
            scale = abs(gs.d2u(float(r))) + abs(gs.du(float(r))) + 1e-300
            assert abs(res) / scale <= 1e-10

    def test_analytic_cancellation_oracle(self):
        # For (3, 1/2) both sides reduce to r (K + r^3)^(-7/3) times (4K)
        # and (1), so the residual is (1 - 4K) times that prefactor.
        gs = rd.GroundState(3, 0.5)
        K = gs.K
        assert 1.0 - 4.0 * K == 0.0
        for r in (0.3, 1.0, 2.7):
            lap = gs.d2u(r) + 2.0 / r * gs.du(r)
            pref = r * (K + r**3) ** (-7.0 / 3.0)
            assert lap == pytest.approx(-4.0 * K * pref, rel=1e-12)
            nonlin = abs(gs.du(r)) ** 0.5 * gs.u(r) ** 5
            assert nonlin == pytest.approx(pref, rel=1e-12)

    def test_constant_solution(self):
        c = rd.ConstantSolution(5, 2.0, 0.7, 3.0)
        assert rd.pde_residual_radial(c, 1.7) == 0.0

    def test_singular_4_3_0(self):
        s = rd.make_singular(4, 3, 0)
        assert s.amplitude == pytest.approx(1.0)
        for r in (0.5, 2.0, 7.0):
            scale = abs(s.d2u(r)) + 1e-300
            assert abs(rd.pde_residual_radial(s, r)) / scale <= 1e-12

    def test_singular_3_5_0(self):
        s = rd.make_singular(3, 5, 0)
        assert s.amplitude == pytest.approx(2.0**-0.5)
        assert abs(rd.pde_residual_radial(s, 1.3)) <= 1e-12

    def test_singular_boundary_rejected(self):
        with pytest.raises(ValueError):
            rd.singular_amplitude(3, 2, 0.5)  # l = (2-q)/(n-2) exactly


class TestDeltaH:
    @pytest.mark.parametrize(
        "n,q,beta,sigma,r",
        [(3, 0.5, 0.0, 0.0, 1.0), (3, 0.5, 2.0, -1.0, 0.3), (6, 0.25, 0.5, 1.0 / 3.0, 2.0)],
    )
    def test_identity(self, n, q, beta, sigma, r):
        lhs, rhs = rd.deltaH_sides(n, q, beta, sigma, r)
        assert abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0) <= 1e-8

    def test_random_pairs(self):
        rng = np.random.default_rng(7)
        for n, q in ((3, 0.5), (4, 1.0 / 3.0), (6, 0.25)):
            for _ in range(20):
                beta, sigma = rng.uniform(-3, 3, size=2)
                r = float(rng.uniform(0.2, 5.0))
                lhs, rhs = rd.deltaH_sides(n, q, float(beta), float(sigma), r)
                assert abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0) <= 1e-8


class TestTensorDeviation:
    def test_vanishes_at_optimal_pair(self):
        for n, q in ((3, 0.5), (6, 0.25), (4, 1.0 / 3.0)):
            beta, sigma = rd.optimal_pair(n, q)
            for r in (0.2, 1.0, 5.0):
                dev = rd.tensor_deviation(n, q, beta, sigma, r)
                scale = rd.ground_state_eval(n, q, r).H ** 2 + 1e-300
                assert dev / scale <= 1e-10

    def test_positive_generic(self):
        assert rd.tensor_deviation(3, 0.5, 0.0, 0.0, 1.0) > 1e-3

    def test_nonnegative(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            beta, sigma = rng.uniform(-3, 3, size=2)
            r = float(rng.uniform(0.1, 10.0))
            assert rd.tensor_deviation(3, 0.5, float(beta), float(sigma), r) >= 0.0


class TestAuxF:
    @pytest.mark.parametrize("n,q", [(3, 0.5), (6, 0.25)])
    def test_constancy(self, n, q):
        rs = np.logspace(-1, 1, 16)
        F = np.array(rd.aux_F_profile(n, q, rs))
        assert (F.max() - F.min()) / F.mean() <= 1e-10
        # The constant is (n-2)^(2-q).
        assert F.mean() == pytest.approx((n - 2) ** (2 - q), rel=1e-12)

    def test_negative_control(self):
        rs = np.logspace(-1, 1, 16)
        F = np.array(rd.aux_F_profile(3, 0.5, rs, d_scale=1.1))
        assert (F.max() - F.min()) / F.mean() > 1e-3

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            rd.aux_F_profile(3, 0.5, [0.0, 1.0])


def _rk4_fixed(n, p, q, u0, r_end, h):
    """Independent dense fixed-step integrator (classical RK4)."""

    def f(r, u, v):
        return v, -(n - 1) / r * v - abs(v) ** q * u**p

    r = 1e-4
    if q == 0.0:
        u = u0 - u0**p * r * r / (2 * n)
        v = -(u0**p) * r / n
    else:
        c = (u0**p * (1 - q) / (n - (n - 1) * q)) ** (1 / (1 - q))
        mexp = (2 - q) / (1 - q)
        u = u0 - c * (1 - q) / (2 - q) * r**mexp
        v = -c * r ** (mexp - 1)
    while r < r_end - 1e-12:
        step = min(h, r_end - r)
        k1u, k1v = f(r, u, v)
        k2u, k2v = f(r + step / 2, u + step / 2 * k1u, v + step / 2 * k1v)
        k3u, k3v = f(r + step / 2, u + step / 2 * k2u, v + step / 2 * k2v)
        k4u, k4v = f(r + step, u + step * k3u, v + step * k3v)
        u += step / 6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v += step / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        r += step
    return u, v


class TestShoot:
    def test_subcritical_hits_zero(self):
        out = rd.shoot(3, 3, 0, 1.0, 50.0, 1e-10)
        assert out.status == rd.HITS_ZERO
        assert out.radius is not None and out.radius > 0

    def test_subcritical_matches_dense_oracle(self):
        # The crossing radius agrees with a fixed-step RK4 sign change.
        out = rd.shoot(3, 3, 0, 1.0, 50.0, 1e-10)
        lo, hi = out.radius - 0.05, out.radius + 0.05
        u_lo, _ = _rk4_fixed(3, 3, 0, 1.0, lo, 1e-4)
        u_hi, _ = _rk4_fixed(3, 3, 0, 1.0, hi, 1e-4)
        assert u_lo > 0 > u_hi

    def test_critical_exact_solution_value(self):
        # (3,5,0): u = (1 + r^2/3)^(-1/2); check u(1) to 1e-6.
        out = rd.shoot(3, 5, 0, 1.0, 50.0, 1e-10)
        assert out.status == rd.POSITIVE_GLOBAL
        u1, _ = _rk4_fixed(3, 5, 0, 1.0, 1.0, 1e-4)
        assert u1 == pytest.approx((4.0 / 3.0) ** -0.5, abs=1e-6)

    def test_supercritical_global(self):
        assert rd.shoot(3, 7, 0, 1.0, 50.0, 1e-10).status == rd.POSITIVE_GLOBAL

    def test_scaling_invariance(self):
        # u0 -> lambda^((2-q)/l) u0 rescales radii by 1/lambda.
        o1 = rd.shoot(3, 3, 0, 1.0, 50.0, 1e-10)
        o2 = rd.shoot(3, 3, 0, 2.0, 50.0, 1e-10)
        assert o1.status == o2.status == rd.HITS_ZERO
        assert o2.radius == pytest.approx(o1.radius / 2.0, rel=0.01)

    def test_q_above_one_undecided(self):
        out = rd.shoot(4, 2, 1.5, 1.0, 10.0, 1e-8)
        assert out.status == rd.UNDECIDED

    def test_bad_args(self):
        with pytest.raises(ValueError):
            rd.shoot(3, 3, 0, -1.0, 50.0, 1e-10)
        with pytest.raises(ValueError):
            rd.shoot(3, 3, 0, 1.0, 50.0, 0.0)


class TestThreshold:
    def test_lane_emden_n3(self):
        p_star = rd.existence_threshold(3, 0.0, 2.0, 8.0, 1e-3)
        assert p_star == pytest.approx(5.0, abs=0.1)

    def test_q_quarter(self):
        p_star = rd.existence_threshold(3, 0.25, 2.0, 9.0, 1e-3)
        from pqatlas.domains import curve_V

        assert p_star == pytest.approx(curve_V(3, 0.25) + 0.75, abs=0.15)

    def test_invalid_bracket(self):
        with pytest.raises(ValueError):
            rd.existence_threshold(3, 0.0, 6.0, 8.0, 1e-3)  # p_lo already global

    def test_q_domain(self):
        with pytest.raises(ValueError):
            rd.existence_threshold(3, 1.0, 2.0, 8.0, 1e-3)
