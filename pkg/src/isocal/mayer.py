"""One-dimensional variational machinery: Lagrangians, extremal solving,
foliations by extremals, Mayer slope fields, the Legendre transform, and the
null Lagrangian built from a slope field.

The central object is a family u(s, t) of extremal graphs covering a strip
diffeomorphically.  Differentiating the leaf through (t, q) in time yields
the slope field psi; combining psi with the impulsion and the energy gives a
Lagrangian that is affine in the velocity, bounded above by the original one,
and whose action depends on endpoint values only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

Scalar3 = Callable[[float, float, float], float]

# Below this the Legendre coefficient counts as degenerate: every downstream
# formula divides by it.
DEGENERATE_D2 = 1e-10
_FD_CROSS = 1e-6


class LegendreError(ValueError):
    """Degenerate or non-invertible Legendre transform."""


class FoliationError(ValueError):
    """Query outside the foliated region, or the family is not a foliation."""


class EndpointError(ValueError):
    """Paths do not share endpoints."""


@dataclass(frozen=True)
class Lagrangian1D:
    """Scalar Lagrangian L(t, q, qdot) with its first and second partials.

    The convexity coefficient d2L_dqdot2 must be nonnegative on the working
    domain; operations that invert the velocity require it strictly positive.
    """

    l: Scalar3
    dL_dq: Scalar3
    dL_dqdot: Scalar3
    d2L_dqdot2: Scalar3
    domain: tuple[float, float]

    @classmethod
    def from_value_fn(cls, l: Scalar3, domain, fd_step: float = 1e-5):
        """Build the partials from the value function by centred differences."""
        h = fd_step

        def dq(t, q, qd):
            return (l(t, q + h, qd) - l(t, q - h, qd)) / (2 * h)

        def dqd(t, q, qd):
            return (l(t, q, qd + h) - l(t, q, qd - h)) / (2 * h)

        def d2(t, q, qd):
            return (l(t, q, qd + h) - 2 * l(t, q, qd) + l(t, q, qd - h)) / (h * h)

        return cls(l, dq, dqd, d2, (float(domain[0]), float(domain[1])))

    def partials_residual(self, n: int = 200, seed: int = 0,
                          box: float = 2.0, fd_step: float = 1e-5) -> float:
        """Max relative deviation of the stated partials from differences."""
        rng = np.random.default_rng(seed)
        a, b = self.domain
        h = fd_step
        worst = 0.0
        for _ in range(n):
            t = rng.uniform(a + 1e-3, b - 1e-3)
            q = rng.uniform(-box, box)
            qd = rng.uniform(-box, box)
            fd_q = (self.l(t, q + h, qd) - self.l(t, q - h, qd)) / (2 * h)
            fd_qd = (self.l(t, q, qd + h) - self.l(t, q, qd - h)) / (2 * h)
            scale = 1.0 + abs(fd_q) + abs(fd_qd)
            worst = max(worst,
                        abs(fd_q - self.dL_dq(t, q, qd)) / scale,
                        abs(fd_qd - self.dL_dqdot(t, q, qd)) / scale)
        return worst


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class CallablePath:
    """Path backed by analytic callables."""

    f: Callable[[float], float]
    fdot: Optional[Callable[[float], float]] = None
    fd_step: float = 1e-6

    def value(self, t: float) -> float:
        return self.f(t)

    def derivative(self, t: float) -> float:
        if self.fdot is not None:
            return self.fdot(t)
        h = self.fd_step
        return (self.f(t + h) - self.f(t - h)) / (2 * h)


@dataclass(frozen=True, eq=False)
class Extremal:
    """Grid samples of a solution, with cubic Hermite evaluation between."""

    grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, float)
        v = np.asarray(self.values, float)
        d = np.asarray(self.derivatives, float)
        if not (g.ndim == 1 and g.shape == v.shape == d.shape and len(g) >= 2):
            raise ValueError("grid, values, derivatives must be equal-length 1d")
        if np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        for arr in (g, v, d):
            arr.flags.writeable = False
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "derivatives", d)

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.grid[0]), float(self.grid[-1])

    def _cell(self, t: float) -> int:
        i = int(np.searchsorted(self.grid, t, side="right") - 1)
        return min(max(i, 0), len(self.grid) - 2)

    def value(self, t: float) -> float:
        i = self._cell(t)
        h = self.grid[i + 1] - self.grid[i]
        s = (t - self.grid[i]) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return float(h00 * self.values[i] + h * h10 * self.derivatives[i]
                     + h01 * self.values[i + 1] + h * h11 * self.derivatives[i + 1])

    def derivative(self, t: float) -> float:
        i = self._cell(t)
        h = self.grid[i + 1] - self.grid[i]
        s = (t - self.grid[i]) / h
        d00 = 6 * s * (s - 1)
        d10 = (1 - s) * (1 - 3 * s)
        d01 = -d00
        d11 = s * (3 * s - 2)
        return float((d00 * self.values[i] + h * d10 * self.derivatives[i]
                      + d01 * self.values[i + 1] + h * d11 * self.derivatives[i + 1]) / h)

    @classmethod
    def from_callable(cls, f, fdot, grid) -> "Extremal":
        g = np.asarray(grid, float)
        return cls(g, np.array([f(t) for t in g]), np.array([fdot(t) for t in g]))


def solve_el(L: Lagrangian1D, t0: float, q0: float, qdot0: float,
             grid) -> Extremal:
    """Integrate the Euler-Lagrange equation by classical fixed-step RK4.

    The second-order equation is solved for the acceleration through the
    Legendre coefficient; cross-partials of dL_dqdot are taken by centred
    differences.  Degenerate Legendre coefficients and solution blow-up are
    hard errors.
    """
    g = np.asarray(grid, float)
    if len(g) < 2 or np.any(np.diff(g) <= 0):
        raise ValueError("grid must be strictly increasing with >= 2 points")
    if abs(g[0] - t0) > 1e-12 * max(1.0, abs(t0)):
        raise ValueError("grid must start at t0")

    fd = _FD_CROSS

    def acc(t, q, qd):
        m = L.d2L_dqdot2(t, q, qd)
        if abs(m) < DEGENERATE_D2:
            raise LegendreError(
                f"degenerate Legendre coefficient {m!r} at t={t}, q={q}, qdot={qd}")
        dpdt = (L.dL_dqdot(t + fd, q, qd) - L.dL_dqdot(t - fd, q, qd)) / (2 * fd)
        dpdq = (L.dL_dqdot(t, q + fd, qd) - L.dL_dqdot(t, q - fd, qd)) / (2 * fd)
        return (L.dL_dq(t, q, qd) - dpdt - dpdq * qd) / m

    qs = np.empty(len(g))
    ds = np.empty(len(g))
    q, qd = float(q0), float(qdot0)
    qs[0], ds[0] = q, qd
    for i in range(len(g) - 1):
        t, h = g[i], g[i + 1] - g[i]
        k1q, k1v = qd, acc(t, q, qd)
        k2q = qd + 0.5 * h * k1v
        k2v = acc(t + 0.5 * h, q + 0.5 * h * k1q, k2q)
        k3q = qd + 0.5 * h * k2v
        k3v = acc(t + 0.5 * h, q + 0.5 * h * k2q, k3q)
        k4q = qd + h * k3v
        k4v = acc(t + h, q + h * k3q, k4q)
        q += h / 6 * (k1q + 2 * k2q + 2 * k3q + k4q)
        qd += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if abs(q) > 1e8 or abs(qd) > 1e8:
            raise OverflowError(f"solution blew up near t={g[i + 1]}")
        qs[i + 1], ds[i + 1] = q, qd
    return Extremal(g, qs, ds)


def el_residual(L: Lagrangian1D, f, t: float, h: float = 1e-5) -> float:
    """d/dt [dL_dqdot along f] - dL_dq along f, by centred differences."""
    a, b = getattr(f, "domain", L.domain)
    if not a + h <= t <= b - h:
        raise ValueError(f"t={t} not interior to the path domain ({a}, {b})")

    def p(tt):
        return L.dL_dqdot(tt, f.value(tt), f.derivative(tt))

    return (p(t + h) - p(t - h)) / (2 * h) - L.dL_dq(t, f.value(t), f.derivative(t))


# ---------------------------------------------------------------------------
# foliations and the slope field


@dataclass(frozen=True)
class SolutionFamily:
    """Family u(s, t) of extremal graphs, strictly monotone in s per time.

    Monotonicity (the diffeomorphism half of the foliation condition) is
    verified on a sample grid at construction; being extremal is the other
    half and is checked against a Lagrangian by null_lagrangian.
    """

    u: Callable[[float, float], float]
    s_interval: tuple[float, float]
    t_domain: tuple[float, float]
    s0: float
    du_dt: Optional[Callable[[float, float], float]] = None
    fd_step: float = 1e-6
    _monotone_sign: int = field(init=False, default=0)

    def __post_init__(self):
        lo, hi = self.s_interval
        a, b = self.t_domain
        if not lo < hi or not a < b:
            raise ValueError("empty parameter or time interval")
        if not lo <= self.s0 <= hi:
            raise FoliationError(f"s0={self.s0} outside the parameter interval")
        ss = np.linspace(lo, hi, 33)
        sign = 0
        for t in np.linspace(a, b, 17):
            vals = np.array([self.u(s, t) for s in ss])
            d = np.diff(vals)
            if np.all(d > 0):
                here = 1
            elif np.all(d < 0):
                here = -1
            else:
                raise FoliationError(
                    f"family is not strictly monotone in s at t={t}")
            if sign == 0:
                sign = here
            elif sign != here:
                raise FoliationError("monotonicity direction flips with t")
        object.__setattr__(self, "_monotone_sign", sign)

    def time_slope(self, s: float, t: float) -> float:
        if self.du_dt is not None:
            return self.du_dt(s, t)
        h = self.fd_step
        return (self.u(s, t + h) - self.u(s, t - h)) / (2 * h)

    def leaf(self, s: float) -> CallablePath:
        return CallablePath(
            f=lambda t: self.u(s, t),
            fdot=(lambda t: self.du_dt(s, t)) if self.du_dt is not None else None,
            fd_step=self.fd_step,
        )

    @property
    def central_leaf(self) -> CallablePath:
        return self.leaf(self.s0)


def _locate_leaf(family: SolutionFamily, t: float, q: float,
                 s_tol: float = 1e-12) -> float:
    """Parameter of the leaf through (t, q): bisection then Newton polish."""
    lo, hi = family.s_interval
    glo = family.u(lo, t) - q
    ghi = family.u(hi, t) - q
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0:
        raise FoliationError(
            f"q={q} outside the foliated range at t={t} "
            f"([{min(glo + q, ghi + q)}, {max(glo + q, ghi + q)}])")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = family.u(mid, t) - q
        if gm == 0.0:
            return mid
        # sign comparison rather than a product: immune to underflow
        if (gm > 0.0) != (ghi > 0.0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
        if hi - lo <= s_tol:
            break
        if hi - lo < 1e-6:
            # Newton polish with a finite-difference slope
            h = max(1e-9, 1e-7 * (abs(mid) + 1))
            dg = (family.u(mid + h, t) - family.u(mid - h, t)) / (2 * h)
            if dg != 0.0:
                s_new = mid - gm / dg
                if lo < s_new < hi and abs(s_new - mid) <= s_tol:
                    return s_new
    return 0.5 * (lo + hi)


def mayer_slope(family: SolutionFamily, t: float, q: float) -> float:
    """Slope field psi(t, q): time derivative of the leaf through (t, q)."""
    s = _locate_leaf(family, t, q)
    return family.time_slope(s, t)


# ---------------------------------------------------------------------------
# Legendre transform and Hamiltonian


def impulsion(L: Lagrangian1D, t: float, q: float, qdot: float) -> float:
    """Conjugate momentum dL/dqdot."""
    return L.dL_dqdot(t, q, qdot)


def energy(L: Lagrangian1D, t: float, q: float, qdot: float) -> float:
    """qdot * dL/dqdot - L."""
    return qdot * L.dL_dqdot(t, q, qdot) - L.l(t, q, qdot)


def legendre_inverse(L: Lagrangian1D, t: float, q: float, p: float,
                     tol: float = 1e-10, max_range: float = 1e8) -> float:
    """Velocity qhat with dL_dqdot(t, q, qhat) = p, residual below tol.

    Expanding bracket plus safeguarded Newton.  Raises LegendreError when no
    bracket exists within max_range or when the Legendre coefficient at the
    solution is degenerate (the inverse is then ill-defined).
    """

    def g(x):
        return L.dL_dqdot(t, q, x) - p

    w = 1.0 + abs(p)
    lo, hi = -w, w
    while g(lo) > 0.0:
        lo *= 2.0
        if -lo > max_range:
            raise LegendreError(f"no lower bracket within {max_range}")
    while g(hi) < 0.0:
        hi *= 2.0
        if hi > max_range:
            raise LegendreError(f"no upper bracket within {max_range}")

    x = 0.5 * (lo + hi)
    gx = g(x)
    for _ in range(200):
        if abs(gx) <= tol:
            break
        if gx > 0:
            hi = x
        else:
            lo = x
        d2 = L.d2L_dqdot2(t, q, x)
        if d2 > DEGENERATE_D2:
            xn = x - gx / d2
            if not lo < xn < hi:
                xn = 0.5 * (lo + hi)
        else:
            xn = 0.5 * (lo + hi)
        x, gx = xn, g(xn)
    else:
        raise LegendreError("Legendre inversion did not converge")

    if L.d2L_dqdot2(t, q, x) < 1e-4:
        # suspiciously flat: drive the bracket down and recheck at the root
        for _ in range(200):
            if hi - lo <= 1e-12 * (1 + abs(x)):
                break
            mid = 0.5 * (lo + hi)
            if g(mid) > 0:
                hi = mid
            else:
                lo = mid
        x = 0.5 * (lo + hi)
        if L.d2L_dqdot2(t, q, x) < DEGENERATE_D2:
            raise LegendreError(
                f"degenerate Legendre coefficient at the solution qdot={x!r}")
    return x


def hamiltonian(L: Lagrangian1D, t: float, q: float, p: float) -> float:
    """H(t, q, p) = p qhat - L(t, q, qhat) with qhat = legendre_inverse."""
    qhat = legendre_inverse(L, t, q, p)
    return p * qhat - L.l(t, q, qhat)


# ---------------------------------------------------------------------------
# the null Lagrangian of a slope field


@dataclass(frozen=True)
class NullLagrangianField:
    """Slope field psi with the derived affine-in-velocity Lagrangian.

    lam(t, q, qdot) = p_hat(t, q, psi) qdot - energy_at(t, q, psi); it is
    dominated by the generating Lagrangian, agrees with it along the field,
    and its action depends only on path endpoints.
    """

    lagrangian: Lagrangian1D
    family: SolutionFamily
    fd_q: float = 1e-5

    def psi(self, t: float, q: float) -> float:
        return mayer_slope(self.family, t, q)

    def p_hat(self, t: float, q: float, qdot: float) -> float:
        return self.lagrangian.dL_dqdot(t, q, qdot)

    def energy_at(self, t: float, q: float, qdot: float) -> float:
        return energy(self.lagrangian, t, q, qdot)

    def lam(self, t: float, q: float, qdot: float) -> float:
        s = self.psi(t, q)
        return self.p_hat(t, q, s) * qdot - self.energy_at(t, q, s)

    def dlambda_dqdot(self, t: float, q: float, qdot: float = 0.0) -> float:
        # lam is affine in qdot, so this is exact
        return self.p_hat(t, q, self.psi(t, q))

    def dlambda_dq(self, t: float, q: float, qdot: float) -> float:
        h = self.fd_q
        return (self.lam(t, q + h, qdot) - self.lam(t, q - h, qdot)) / (2 * h)

    def as_lagrangian(self) -> Lagrangian1D:
        return Lagrangian1D(
            l=self.lam,
            dL_dq=self.dlambda_dq,
            dL_dqdot=self.dlambda_dqdot,
            d2L_dqdot2=lambda t, q, qd: 0.0,
            domain=self.lagrangian.domain,
        )


def null_lagrangian(L: Lagrangian1D, family: SolutionFamily,
                    validate: bool = True,
                    validate_tol: float = 1e-6) -> NullLagrangianField:
    """Build the null Lagrangian of the family's slope field.

    With validate=True a sample of leaves is checked to satisfy the
    Euler-Lagrange equation of L; a corrupted family fails here.
    """
    if validate:
        a, b = family.t_domain
        lo, hi = family.s_interval
        margin = 1e-3 * (b - a)
        for s in np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 5):
            leaf = family.leaf(float(s))
            for t in np.linspace(a + margin, b - margin, 7):
                r = el_residual(L, _with_domain(leaf, (a, b)), float(t))
                if abs(r) > validate_tol:
                    raise FoliationError(
                        f"leaf s={s} violates the Euler-Lagrange equation "
                        f"(residual {r:.3e} at t={t})")
    return NullLagrangianField(lagrangian=L, family=family)


def _with_domain(path: CallablePath, domain):
    class _P:
        def __init__(self):
            self.domain = domain
            self.value = path.value
            self.derivative = path.derivative
    return _P()


def weierstrass_gap(L: Lagrangian1D, family: SolutionFamily,
                    t: float, q: float, qdot: float) -> float:
    """Pointwise excess L - lam at (t, q, qdot); nonnegative under convexity,
    zero exactly when qdot equals the slope field."""
    s = mayer_slope(family, t, q)
    p = L.dL_dqdot(t, q, s)
    lam = p * qdot - (s * p - L.l(t, q, s))
    return L.l(t, q, qdot) - lam


# ---------------------------------------------------------------------------
# action integrals and the endpoint-dependence checks


def action(L: Lagrangian1D, path, a: float | None = None,
           b: float | None = None, n: int = 2000) -> float:
    """Composite-Simpson action integral of L along the path over (a, b)."""
    if a is None:
        a = L.domain[0]
    if b is None:
        b = L.domain[1]
    if n % 2:
        n += 1
    ts = np.linspace(a, b, n + 1)
    h = (b - a) / n
    vals = [L.l(t, path.value(t), path.derivative(t)) for t in ts]
    odd = math.fsum(vals[1:-1:2])
    even = math.fsum(vals[2:-1:2])
    return h / 3.0 * (vals[0] + vals[-1] + 4.0 * odd + 2.0 * even)


def path_independence_check(nl: NullLagrangianField, f1, f2,
                            n: int = 2000,
                            endpoint_tol: float = 1e-10) -> tuple[float, float]:
    """Action of the null Lagrangian along two paths with shared endpoints.

    Returns the two integrals; they agree up to quadrature tolerance.
    """
    a, b = nl.lagrangian.domain
    if abs(f1.value(a) - f2.value(a)) > endpoint_tol or \
       abs(f1.value(b) - f2.value(b)) > endpoint_tol:
        raise EndpointError("paths do not share endpoints")
    lam = nl.as_lagrangian()
    return action(lam, f1, n=n), action(lam, f2, n=n)


@dataclass(frozen=True)
class PhaseLift:
    """The map (s, t) -> (t, u, w, v) into (time, position, energy, momentum).

    v is the impulsion along the leaf and w the Hamiltonian there.  For a
    true foliation by extremals, the symplectic form dp^dq - de^dt pulls
    back to zero under this map.
    """

    lagrangian: Lagrangian1D
    family: SolutionFamily

    def u(self, s: float, t: float) -> float:
        return self.family.u(s, t)

    def v(self, s: float, t: float) -> float:
        return self.lagrangian.dL_dqdot(t, self.family.u(s, t),
                                        self.family.time_slope(s, t))

    def w(self, s: float, t: float) -> float:
        return hamiltonian(self.lagrangian, t, self.family.u(s, t), self.v(s, t))

    def map(self, s: float, t: float) -> tuple[float, float, float, float]:
        return (t, self.u(s, t), self.w(s, t), self.v(s, t))

    def pullback_coefficient(self, s: float, t: float, h: float = 1e-4) -> float:
        """Coefficient of dt^ds in the pulled-back symplectic form:
        dv/dt du/ds - dv/ds du/dt + dw/ds, by centred differences."""
        dv_dt = (self.v(s, t + h) - self.v(s, t - h)) / (2 * h)
        du_ds = (self.u(s + h, t) - self.u(s - h, t)) / (2 * h)
        dv_ds = (self.v(s + h, t) - self.v(s - h, t)) / (2 * h)
        du_dt = (self.u(s, t + h) - self.u(s, t - h)) / (2 * h)
        dw_ds = (self.w(s + h, t) - self.w(s - h, t)) / (2 * h)
        return dv_dt * du_ds - dv_ds * du_dt + dw_ds


def phase_lift(L: Lagrangian1D, family: SolutionFamily) -> PhaseLift:
    return PhaseLift(lagrangian=L, family=family)


def lagrangian_submanifold_check(L: Lagrangian1D, family: SolutionFamily,
                                 s: float, t: float, h: float = 1e-4) -> float:
    """Pullback coefficient of the symplectic form at (s, t); near zero for
    a genuine foliation by extremals, bounded away from zero otherwise."""
    a, b = family.t_domain
    lo, hi = family.s_interval
    if not (lo < s < hi and a < t < b):
        raise ValueError("(s, t) must be interior to the family's domain")
    return phase_lift(L, family).pullback_coefficient(s, t, h)


def minimality_gap(L: Lagrangian1D, family: SolutionFamily, f,
                   f_o=None, n: int = 2000,
                   endpoint_tol: float = 1e-10) -> float:
    """Action difference between a competitor path and the central leaf.

    The competitor must share endpoints with the leaf and stay inside the
    foliated region; the gap is nonnegative up to quadrature tolerance.
    """
    if f_o is None:
        f_o = family.central_leaf
    a, b = L.domain
    if abs(f.value(a) - f_o.value(a)) > endpoint_tol or \
       abs(f.value(b) - f_o.value(b)) > endpoint_tol:
        raise EndpointError("competitor does not share endpoints with the leaf")
    lo, hi = family.s_interval
    for t in np.linspace(a, b, 33):
        q = f.value(float(t))
        qlo, qhi = family.u(lo, float(t)), family.u(hi, float(t))
        if not min(qlo, qhi) <= q <= max(qlo, qhi):
            raise FoliationError(f"path leaves the foliated region at t={t}")
    return action(L, f, n=n) - action(L, f_o, n=n)


# ---------------------------------------------------------------------------
# shooting-generated families


def family_from_shooting(L: Lagrangian1D, initial, s_interval, t_grid,
                         s0: float, n_leaves: int = 33) -> SolutionFamily:
    """Foliate by integrating a line of initial conditions.

    `initial(s)` returns (q0, qdot0) at t_grid[0].  Leaves are solved on the
    grid and interpolated cubically in both s and t; monotonicity is then
    verified by the SolutionFamily constructor as usual.
    """
    g = np.asarray(t_grid, float)
    s_nodes = np.linspace(s_interval[0], s_interval[1], n_leaves)
    leaves = []
    for s in s_nodes:
        q0, qd0 = initial(float(s))
        leaves.append(solve_el(L, float(g[0]), q0, qd0, g))

    def _window(s: float) -> tuple[int, np.ndarray]:
        k = int(np.searchsorted(s_nodes, s)) - 1
        k = min(max(k - 1, 0), len(s_nodes) - 4)
        xs = s_nodes[k:k + 4]
        w = np.array([
            np.prod([(s - xs[j]) / (xs[i] - xs[j]) for j in range(4) if j != i])
            for i in range(4)
        ])
        return k, w

    def u(s: float, t: float) -> float:
        k, w = _window(s)
        return float(sum(w[i] * leaves[k + i].value(t) for i in range(4)))

    def du_dt(s: float, t: float) -> float:
        k, w = _window(s)
        return float(sum(w[i] * leaves[k + i].derivative(t) for i in range(4)))

    return SolutionFamily(
        u=u, s_interval=(float(s_interval[0]), float(s_interval[1])),
        t_domain=(float(g[0]), float(g[-1])), s0=float(s0), du_dt=du_dt,
    )


# ---------------------------------------------------------------------------
# built-in problems


@dataclass(frozen=True)
class MayerProblem:
    name: str
    lagrangian: Lagrangian1D
    family: SolutionFamily
    description: str


def _free() -> MayerProblem:
    L = Lagrangian1D(
        l=lambda t, q, qd: 0.5 * qd * qd,
        dL_dq=lambda t, q, qd: 0.0,
        dL_dqdot=lambda t, q, qd: qd,
        d2L_dqdot2=lambda t, q, qd: 1.0,
        domain=(0.0, 1.0),
    )
    fam = SolutionFamily(
        u=lambda s, t: s + t,
        s_interval=(-5.0, 5.0), t_domain=(0.0, 1.0), s0=0.0,
        du_dt=lambda s, t: 1.0,
    )
    return MayerProblem("free", L, fam, "free particle, unit-slope line field")


def _oscillator() -> MayerProblem:
    L = Lagrangian1D(
        l=lambda t, q, qd: 0.5 * (qd * qd - q * q),
        dL_dq=lambda t, q, qd: -q,
        dL_dqdot=lambda t, q, qd: qd,
        d2L_dqdot2=lambda t, q, qd: 1.0,
        domain=(0.5, 2.5),
    )
    fam = SolutionFamily(
        u=lambda s, t: s * math.sin(t),
        s_interval=(0.01, 3.0), t_domain=(0.5, 2.5), s0=0.5,
        du_dt=lambda s, t: s * math.cos(t),
    )
    return MayerProblem("oscillator", L, fam,
                        "harmonic oscillator on a sine-leaf foliation")


def _cosh() -> MayerProblem:
    c = 0.5
    L = Lagrangian1D(
        l=lambda t, q, qd: math.cosh(qd),
        dL_dq=lambda t, q, qd: 0.0,
        dL_dqdot=lambda t, q, qd: math.sinh(qd),
        d2L_dqdot2=lambda t, q, qd: math.cosh(qd),
        domain=(0.0, 1.0),
    )
    fam = SolutionFamily(
        u=lambda s, t: s + c * t,
        s_interval=(-5.0, 5.0), t_domain=(0.0, 1.0), s0=0.0,
        du_dt=lambda s, t: c,
    )
    return MayerProblem("cosh", L, fam,
                        "cosh velocity cost; extremals are straight lines")


_BUILDERS = {"free": _free, "oscillator": _oscillator, "cosh": _cosh}


def get_problem(name: str) -> MayerProblem:
    """Registry lookup for the built-in problems: free, oscillator, cosh."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; known: {sorted(_BUILDERS)}") from None


def problem_names() -> list[str]:
    return sorted(_BUILDERS)
