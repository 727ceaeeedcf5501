import math

import numpy as np
import pytest

from isocal import (
    CallablePath,
    EndpointError,
    Extremal,
    FoliationError,
    Lagrangian1D,
    LegendreError,
    SolutionFamily,
    action,
    el_residual,
    energy,
    family_from_shooting,
    get_problem,
    hamiltonian,
    impulsion,
    lagrangian_submanifold_check,
    legendre_inverse,
    mayer_slope,
    minimality_gap,
    null_lagrangian,
    path_independence_check,
    phase_lift,
    solve_el,
    weierstrass_gap,
)
from isocal import checks

FREE = get_problem("free")
OSC = get_problem("oscillator")
COSH = get_problem("cosh")

QUARTIC = Lagrangian1D(
    l=lambda t, q, qd: qd ** 4,
    dL_dq=lambda t, q, qd: 0.0,
    dL_dqdot=lambda t, q, qd: 4.0 * qd ** 3,
    d2L_dqdot2=lambda t, q, qd: 12.0 * qd ** 2,
    domain=(0.0, 1.0),
)


def corrupted_family() -> SolutionFamily:
    """Leaves that are not extremals of the oscillator Lagrangian."""
    return SolutionFamily(
        u=lambda s, t: s * math.sin(t) + 0.1 * s * s * t,
        s_interval=(0.01, 3.0), t_domain=(0.5, 2.5), s0=0.5,
        du_dt=lambda s, t: s * math.cos(t) + 0.1 * s * s,
    )


# ---------------------------------------------------------------------------
# Lagrangians and partials


def test_registry_partials_match_differences():
    for prob in (FREE, OSC, COSH):
        assert prob.lagrangian.partials_residual(200, seed=1) <= 1e-6


def test_registry_legendre_condition():
    rng = np.random.default_rng(2)
    for prob in (FREE, OSC, COSH):
        a, b = prob.lagrangian.domain
        vals = [prob.lagrangian.d2L_dqdot2(t, q, qd)
                for t, q, qd in zip(rng.uniform(a, b, 100),
                                    rng.uniform(-2, 2, 100),
                                    rng.uniform(-2, 2, 100))]
        assert min(vals) >= 0.0


def test_from_value_fn_builds_consistent_partials():
    L = Lagrangian1D.from_value_fn(lambda t, q, qd: 0.5 * (qd * qd - q * q),
                                   (0.5, 2.5))
    assert L.dL_dq(1.0, 0.7, 0.2) == pytest.approx(-0.7, abs=1e-8)
    assert L.dL_dqdot(1.0, 0.7, 0.2) == pytest.approx(0.2, abs=1e-8)
    assert L.d2L_dqdot2(1.0, 0.7, 0.2) == pytest.approx(1.0, abs=1e-5)


# ---------------------------------------------------------------------------
# Euler-Lagrange residuals and solving


def test_el_residual_free_line():
    path = CallablePath(f=lambda t: 1.0 + 2.0 * t, fdot=lambda t: 2.0)
    assert abs(el_residual(FREE.lagrangian, path, 0.5)) <= 1e-8


def test_el_residual_oscillator_sine():
    path = CallablePath(f=math.sin, fdot=math.cos)
    assert abs(el_residual(OSC.lagrangian, path, 1.3)) <= 1e-6


def test_el_residual_nonextremal():
    path = CallablePath(f=lambda t: t * t, fdot=lambda t: 2.0 * t)
    assert el_residual(FREE.lagrangian, path, 0.5) == pytest.approx(2.0, abs=1e-6)


def test_el_residual_outside_domain():
    path = CallablePath(f=math.sin, fdot=math.cos)
    with pytest.raises(ValueError):
        el_residual(OSC.lagrangian, path, 3.0)


def test_solve_el_free_particle():
    grid = np.linspace(0.0, 1.0, 101)
    f = solve_el(FREE.lagrangian, 0.0, 0.0, 1.0, grid)
    assert np.abs(f.values - grid).max() <= 1e-10
    assert np.abs(f.derivatives - 1.0).max() <= 1e-10


def test_solve_el_oscillator_sine():
    grid = np.arange(0.0, 2.0 + 1e-12, 1e-3)
    f = solve_el(OSC.lagrangian, 0.0, 0.0, 1.0, grid)
    assert np.abs(f.values - np.sin(grid)).max() <= 1e-8
    assert np.abs(f.derivatives - np.cos(grid)).max() <= 1e-8


def test_solve_el_residual_at_grid_points():
    # the measured residual is floored by the interpolant's O(grid^2)
    # second-derivative accuracy, not by the solver
    grid = np.arange(0.5, 2.5 + 1e-12, 1e-3)
    f = solve_el(OSC.lagrangian, 0.5, 0.3, 0.1, grid)
    for k in (300, 1000, 1700):
        assert abs(el_residual(OSC.lagrangian, f, float(f.grid[k]))) <= 1e-7


def test_solve_el_degenerate_legendre():
    grid = np.linspace(0.0, 1.0, 11)
    with pytest.raises(LegendreError):
        solve_el(QUARTIC, 0.0, 0.0, 0.0, grid)


def test_solve_el_blowup_guard():
    L = Lagrangian1D(
        l=lambda t, q, qd: 0.5 * qd * qd + 0.25 * q ** 4,
        dL_dq=lambda t, q, qd: q ** 3,
        dL_dqdot=lambda t, q, qd: qd,
        d2L_dqdot2=lambda t, q, qd: 1.0,
        domain=(0.0, 10.0),
    )
    with pytest.raises(OverflowError):
        solve_el(L, 0.0, 3.0, 3.0, np.linspace(0.0, 10.0, 2001))


def test_hamilton_equations_along_solution():
    L = OSC.lagrangian
    grid = np.arange(0.5, 2.5 + 1e-12, 1e-3)
    f = solve_el(L, 0.5, 0.4, 0.2, grid)
    h = 1e-5
    for t in (0.9, 1.6, 2.3):
        q, qd = f.value(t), f.derivative(t)
        g = impulsion(L, t, q, qd)
        dfdt = (f.value(t + h) - f.value(t - h)) / (2 * h)
        dgdt = (impulsion(L, t + h, f.value(t + h), f.derivative(t + h))
                - impulsion(L, t - h, f.value(t - h), f.derivative(t - h))) / (2 * h)
        dH_dp = (hamiltonian(L, t, q, g + h) - hamiltonian(L, t, q, g - h)) / (2 * h)
        dH_dq = (hamiltonian(L, t, q + h, g) - hamiltonian(L, t, q - h, g)) / (2 * h)
        assert dfdt == pytest.approx(dH_dp, abs=1e-5)
        assert dgdt == pytest.approx(-dH_dq, abs=1e-5)


# ---------------------------------------------------------------------------
# Legendre transform


def test_legendre_inverse_quadratic():
    assert legendre_inverse(FREE.lagrangian, 0.3, 1.0, 0.7) == pytest.approx(
        0.7, abs=1e-12)


def test_legendre_inverse_cosh():
    for p in (-2.0, -0.3, 0.0, 1.1, 5.0):
        got = legendre_inverse(COSH.lagrangian, 0.5, 0.0, p)
        assert got == pytest.approx(math.asinh(p), abs=1e-10)


def test_legendre_inverse_quartic_regular_point():
    # away from the flat point the quartic is invertible: 4 x^3 = 4 at x = 1
    assert legendre_inverse(QUARTIC, 0.0, 0.0, 4.0) == pytest.approx(1.0, abs=1e-9)


def test_legendre_inverse_degenerate():
    with pytest.raises(LegendreError):
        legendre_inverse(QUARTIC, 0.0, 0.0, 0.0)


def test_legendre_duality_roundtrip():
    rng = np.random.default_rng(3)
    for L in (OSC.lagrangian, COSH.lagrangian):
        for _ in range(50):
            t = rng.uniform(*L.domain)
            q = rng.uniform(-2, 2)
            qd = rng.uniform(-3, 3)
            p = impulsion(L, t, q, qd)
            assert legendre_inverse(L, t, q, p) == pytest.approx(qd, abs=1e-9)


def test_hamiltonian_free():
    assert hamiltonian(FREE.lagrangian, 0.1, 2.0, 0.8) == pytest.approx(
        0.32, abs=1e-12)


def test_hamiltonian_oscillator():
    for q, p in ((0.3, 0.7), (-1.2, 0.4), (0.0, 2.0)):
        assert hamiltonian(OSC.lagrangian, 1.0, q, p) == pytest.approx(
            0.5 * (p * p + q * q), abs=1e-10)


def test_hamiltonian_partial_identities():
    # dH/dp = qhat and dH/dq = -dL/dq at qhat
    rng = np.random.default_rng(4)
    h = 1e-5
    for L in (OSC.lagrangian, COSH.lagrangian):
        for _ in range(100):
            t = rng.uniform(*L.domain)
            q = rng.uniform(-1.5, 1.5)
            p = rng.uniform(-2, 2)
            qhat = legendre_inverse(L, t, q, p)
            dH_dp = (hamiltonian(L, t, q, p + h) - hamiltonian(L, t, q, p - h)) / (2 * h)
            dH_dq = (hamiltonian(L, t, q + h, p) - hamiltonian(L, t, q - h, p)) / (2 * h)
            assert dH_dp == pytest.approx(qhat, abs=1e-6)
            assert dH_dq == pytest.approx(-L.dL_dq(t, q, qhat), abs=1e-6)


# ---------------------------------------------------------------------------
# slope fields


def test_mayer_slope_free_family():
    for t, q in ((0.2, 0.5), (0.9, -2.0), (0.5, 3.0)):
        assert mayer_slope(FREE.family, t, q) == pytest.approx(1.0, abs=1e-12)


def test_mayer_slope_oscillator():
    rng = np.random.default_rng(5)
    for _ in range(50):
        t = rng.uniform(0.6, 2.4)
        q = rng.uniform(0.05, 2.0) * math.sin(t)
        assert mayer_slope(OSC.family, t, q) == pytest.approx(
            q / math.tan(t), abs=1e-8)


def test_mayer_slope_outside_region():
    with pytest.raises(FoliationError):
        mayer_slope(OSC.family, 1.0, 100.0)


def test_family_monotonicity_enforced():
    with pytest.raises(FoliationError):
        SolutionFamily(u=lambda s, t: s * s * math.sin(t),
                       s_interval=(-1.0, 1.0), t_domain=(0.5, 2.5), s0=0.0)


def test_family_direction_flip_detected():
    with pytest.raises(FoliationError):
        SolutionFamily(u=lambda s, t: s * math.cos(t),
                       s_interval=(0.1, 2.0), t_domain=(1.0, 2.2), s0=1.0)


def test_family_s0_inside_interval():
    with pytest.raises(FoliationError):
        SolutionFamily(u=lambda s, t: s + t, s_interval=(0.0, 1.0),
                       t_domain=(0.0, 1.0), s0=2.0)


# ---------------------------------------------------------------------------
# the null Lagrangian


def test_null_lagrangian_free_closed_form():
    nl = null_lagrangian(FREE.lagrangian, FREE.family)
    rng = np.random.default_rng(6)
    for _ in range(30):
        t = rng.uniform(0.05, 0.95)
        q = rng.uniform(-3, 3)
        qd = rng.uniform(-3, 3)
        assert nl.lam(t, q, qd) == pytest.approx(qd - 0.5, abs=1e-10)


def test_null_lagrangian_oscillator_closed_form():
    nl = null_lagrangian(OSC.lagrangian, OSC.family)
    rng = np.random.default_rng(7)
    for _ in range(30):
        t = rng.uniform(0.6, 2.4)
        q = rng.uniform(0.1, 2.0) * math.sin(t)
        qd = rng.uniform(-2, 2)
        want = q * qd / math.tan(t) - q * q / (2 * math.sin(t) ** 2)
        assert nl.lam(t, q, qd) == pytest.approx(want, abs=1e-8)


def test_null_lagrangian_is_total_derivative_of_potential():
    # along any in-region path, lam(t, f, f') equals d/dt of S(t, f(t)) with
    # S(t, q) = q^2 cot(t) / 2
    nl = null_lagrangian(OSC.lagrangian, OSC.family)

    def S(t, q):
        return 0.5 * q * q / math.tan(t)

    f = CallablePath(f=lambda t: 0.4 * math.sin(t) + 0.1 * math.sin(2 * t - 1.0),
                     fdot=lambda t: 0.4 * math.cos(t) + 0.2 * math.cos(2 * t - 1.0))
    h = 1e-6
    for t in np.linspace(0.7, 2.3, 9):
        t = float(t)
        dS = (S(t + h, f.value(t + h)) - S(t - h, f.value(t - h))) / (2 * h)
        assert nl.lam(t, f.value(t), f.derivative(t)) == pytest.approx(dS, abs=1e-6)


def test_equality_along_central_leaf():
    assert checks.field_equality_residual(OSC) <= 1e-8


def test_corrupted_family_rejected_by_validation():
    with pytest.raises(FoliationError):
        null_lagrangian(OSC.lagrangian, corrupted_family())


def test_weierstrass_gap_zero_on_field():
    rng = np.random.default_rng(8)
    for _ in range(20):
        t = rng.uniform(0.6, 2.4)
        s = rng.uniform(0.1, 2.5)
        q = OSC.family.u(s, t)
        psi = mayer_slope(OSC.family, t, q)
        assert abs(weierstrass_gap(OSC.lagrangian, OSC.family, t, q, psi)) <= 1e-10


def test_weierstrass_gap_free_closed_form():
    rng = np.random.default_rng(9)
    for _ in range(20):
        t, q, qd = rng.uniform(0.1, 0.9), rng.uniform(-2, 2), rng.uniform(-3, 3)
        assert weierstrass_gap(FREE.lagrangian, FREE.family, t, q, qd) == \
            pytest.approx(0.5 * (qd - 1.0) ** 2, abs=1e-12)


def test_weierstrass_gap_nonnegative_sweep():
    assert checks.dominance_minimum(OSC, 2000, seed=10) >= -1e-10
    assert checks.dominance_minimum(COSH, 500, seed=11) >= -1e-10


# ---------------------------------------------------------------------------
# endpoint dependence


def test_action_simpson_against_analytic():
    # L along the central oscillator leaf is 0.125 cos(2t)
    val = action(OSC.lagrangian, OSC.family.central_leaf)
    want = 0.0625 * (math.sin(5.0) - math.sin(1.0))
    assert val == pytest.approx(want, abs=1e-10)


def test_path_independence_leaf_vs_cubic():
    nl = null_lagrangian(OSC.lagrangian, OSC.family)
    a, b = 0.5, 2.5
    qa, qb = 0.3 * math.sin(a), 0.3 * math.sin(b)
    f1 = CallablePath(f=lambda t: 0.3 * math.sin(t), fdot=lambda t: 0.3 * math.cos(t))
    # Hermite cubic with the same endpoint values, different slopes
    m0, m1 = 0.5 * math.cos(a), 0.1 * math.cos(b)

    def cubic(t):
        s = (t - a) / (b - a)
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (h00 * qa + h10 * (b - a) * m0 + h01 * qb + h11 * (b - a) * m1)

    f2 = CallablePath(f=cubic)
    i1, i2 = path_independence_check(nl, f1, f2)
    assert i1 == pytest.approx(i2, abs=1e-6)
    # both equal the potential difference S(b, qb) - S(a, qa)
    want = 0.5 * qb * qb / math.tan(b) - 0.5 * qa * qa / math.tan(a)
    assert i1 == pytest.approx(want, abs=1e-6)
    assert i2 == pytest.approx(want, abs=1e-6)


def test_path_independence_identical_paths():
    nl = null_lagrangian(FREE.lagrangian, FREE.family)
    f = CallablePath(f=lambda t: t, fdot=lambda t: 1.0)
    i1, i2 = path_independence_check(nl, f, f)
    assert i1 == i2


def test_path_independence_endpoint_mismatch():
    nl = null_lagrangian(FREE.lagrangian, FREE.family)
    f1 = CallablePath(f=lambda t: t, fdot=lambda t: 1.0)
    f2 = CallablePath(f=lambda t: t + 0.1, fdot=lambda t: 1.0)
    with pytest.raises(EndpointError):
        path_independence_check(nl, f1, f2)


def test_null_lagrangian_el_property_on_arbitrary_paths():
    # every in-region path solves the Euler-Lagrange equation of lam
    nl = null_lagrangian(OSC.lagrangian, OSC.family)
    lam = nl.as_lagrangian()
    paths = [
        CallablePath(f=lambda t: 0.4 * math.sin(t) + 0.1 * math.cos(2 * t),
                     fdot=lambda t: 0.4 * math.cos(t) - 0.2 * math.sin(2 * t)),
        CallablePath(f=lambda t: 0.25 * math.sin(t) * (1.0 + 0.3 * t),
                     fdot=lambda t: 0.25 * math.cos(t) * (1.0 + 0.3 * t)
                     + 0.075 * math.sin(t)),
    ]
    for f in paths:
        for t in (0.8, 1.4, 2.1):
            assert abs(el_residual(lam, f, t)) <= 1e-6


def test_momentum_minus_energy_form_is_closed():
    # mixed partials of P dq - H dt with P = p_hat(t, q, psi)
    nl = null_lagrangian(OSC.lagrangian, OSC.family)
    h = 1e-4

    def P(t, q):
        return nl.p_hat(t, q, nl.psi(t, q))

    def Hq(t, q):
        return hamiltonian(OSC.lagrangian, t, q, P(t, q))

    rng = np.random.default_rng(12)
    for _ in range(10):
        t = rng.uniform(0.7, 2.3)
        q = rng.uniform(0.15, 1.5) * math.sin(t)
        dP_dt = (P(t + h, q) - P(t - h, q)) / (2 * h)
        dH_dq = (Hq(t, q + h) - Hq(t, q - h)) / (2 * h)
        assert dP_dt + dH_dq == pytest.approx(0.0, abs=1e-5)


# ---------------------------------------------------------------------------
# phase lift / symplectic pullback


def test_pullback_vanishes_free():
    assert abs(lagrangian_submanifold_check(
        FREE.lagrangian, FREE.family, 0.3, 0.5)) <= 1e-8


def test_pullback_vanishes_oscillator_sweep():
    assert checks.pullback_residual(OSC, 100, seed=13) <= 1e-5


def test_pullback_detects_corrupted_family():
    fam = corrupted_family()
    vals = [abs(lagrangian_submanifold_check(OSC.lagrangian, fam, s, t))
            for s in (0.7, 1.0, 1.4) for t in (0.9, 1.5, 2.1)]
    assert min(vals) > 0.01
    assert max(vals) > 0.1


def test_phase_lift_map_components():
    pl = phase_lift(OSC.lagrangian, OSC.family)
    t, u, w, v = pl.map(0.5, 1.2)
    assert t == 1.2
    assert u == pytest.approx(0.5 * math.sin(1.2), abs=1e-12)
    assert v == pytest.approx(0.5 * math.cos(1.2), abs=1e-12)
    assert w == pytest.approx(0.5 * (u * u + v * v), abs=1e-10)


def test_pullback_interior_domain_required():
    with pytest.raises(ValueError):
        lagrangian_submanifold_check(OSC.lagrangian, OSC.family, 5.0, 1.0)


def test_pullback_richardson_sanity():
    # centred differences: the nonzero coefficient of the corrupted family
    # converges as the step shrinks, so halving barely moves it
    fam = corrupted_family()
    vals = [lagrangian_submanifold_check(OSC.lagrangian, fam, 1.0, 1.5, h=h)
            for h in (2e-3, 1e-3, 5e-4)]
    assert abs(vals[0] - vals[1]) <= 1e-4
    assert abs(vals[1] - vals[2]) <= abs(vals[0] - vals[1]) + 1e-9


# ---------------------------------------------------------------------------
# minimality


def test_minimality_gap_of_bump():
    a, b = OSC.lagrangian.domain
    f = CallablePath(
        f=lambda t: 0.5 * math.sin(t) + 0.2 * math.sin(math.pi * (t - a) / (b - a)),
        fdot=lambda t: 0.5 * math.cos(t)
        + 0.2 * math.pi / (b - a) * math.cos(math.pi * (t - a) / (b - a)))
    assert minimality_gap(OSC.lagrangian, OSC.family, f) > 0.0


def test_minimality_gap_on_leaf_is_zero():
    assert minimality_gap(OSC.lagrangian, OSC.family, OSC.family.central_leaf) == 0.0


def test_minimality_random_perturbations():
    assert checks.minimality_minimum(OSC, 30, seed=14) >= -1e-8


def test_minimality_endpoint_mismatch():
    f = CallablePath(f=lambda t: 0.5 * math.sin(t) + 0.05,
                     fdot=lambda t: 0.5 * math.cos(t))
    with pytest.raises(EndpointError):
        minimality_gap(OSC.lagrangian, OSC.family, f)


def test_minimality_path_outside_region():
    a, b = OSC.lagrangian.domain
    f = CallablePath(
        f=lambda t: 0.5 * math.sin(t) + 2.9 * math.sin(math.pi * (t - a) / (b - a)),
        fdot=lambda t: 0.5 * math.cos(t)
        + 2.9 * math.pi / (b - a) * math.cos(math.pi * (t - a) / (b - a)))
    with pytest.raises(FoliationError):
        minimality_gap(OSC.lagrangian, OSC.family, f)


# ---------------------------------------------------------------------------
# shooting families and interpolation


def test_shooting_family_free_particle():
    fam = family_from_shooting(
        FREE.lagrangian, initial=lambda s: (s, 1.0),
        s_interval=(-2.0, 2.0), t_grid=np.linspace(0.0, 1.0, 101), s0=0.0)
    rng = np.random.default_rng(15)
    for _ in range(20):
        s, t = rng.uniform(-1.9, 1.9), rng.uniform(0.0, 1.0)
        assert fam.u(s, t) == pytest.approx(s + t, abs=1e-9)
    assert mayer_slope(fam, 0.5, 0.7) == pytest.approx(1.0, abs=1e-8)


def test_shooting_family_oscillator_matches_analytic():
    fam = family_from_shooting(
        OSC.lagrangian,
        initial=lambda s: (s * math.sin(0.5), s * math.cos(0.5)),
        s_interval=(0.05, 2.0), t_grid=np.arange(0.5, 2.5 + 1e-12, 2e-3),
        s0=0.5)
    rng = np.random.default_rng(16)
    for _ in range(20):
        s, t = rng.uniform(0.1, 1.9), rng.uniform(0.5, 2.5)
        assert fam.u(s, t) == pytest.approx(s * math.sin(t), abs=1e-6)
    q = 0.6 * math.sin(1.7)
    assert mayer_slope(fam, 1.7, q) == pytest.approx(
        q / math.tan(1.7), abs=1e-6)


def test_extremal_hermite_interpolation():
    grid = np.linspace(0.0, 2.0, 41)
    f = Extremal.from_callable(math.sin, math.cos, grid)
    for t in (0.33, 1.111, 1.97):
        assert f.value(t) == pytest.approx(math.sin(t), abs=1e-6)
        assert f.derivative(t) == pytest.approx(math.cos(t), abs=1e-4)


def test_energy_and_impulsion_definitions():
    L = COSH.lagrangian
    t, q, qd = 0.3, 0.1, 0.8
    assert impulsion(L, t, q, qd) == math.sinh(0.8)
    assert energy(L, t, q, qd) == pytest.approx(
        0.8 * math.sinh(0.8) - math.cosh(0.8), abs=1e-14)
