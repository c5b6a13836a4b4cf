"""Closed-form radial solutions, exact residual oracles and the shooting
integrator that locates the radial existence threshold.

The radial equation is u'' + (n-1)/r u' + |u'|^q u^p = 0.  The explicit
ground state u(r) = (K + r^m)^(-a) with m = (2-q)/(1-q),
a = (1-q)(n-2)/(2-q) and K = (1-q)(n-2)^(q-1)/(n-(n-1)q) solves it at the
critical exponent p = (2-q)^2/((1-q)(n-2)) + 1 - q; the oracles below check
the differential identities on it in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import solve_ivp

__all__ = [
    "GroundState",
    "SingularSolution",
    "ConstantSolution",
    "DerivedQuantities",
    "RadialOutcome",
    "ground_state_eval",
    "pde_residual_radial",
    "singular_amplitude",
    "make_singular",
    "deltaH_sides",
    "deltaH_residual",
    "tensor_deviation",
    "optimal_pair",
    "constancy_d",
    "aux_F_profile",
    "shoot",
    "existence_threshold",
    "POSITIVE_GLOBAL",
    "HITS_ZERO",
    "UNDECIDED",
]

POSITIVE_GLOBAL = "positive_global"
HITS_ZERO = "hits_zero"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class GroundState:
    """Explicit radial ground state on the critical curve (0 < q < 1)."""

    n: int
    q: float

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n >= 3 required")
        if not 0.0 < self.q < 1.0:
            raise ValueError("q in (0,1) required")
        if self.n - (self.n - 1) * self.q <= 0:
            raise ValueError("n - (n-1)q > 0 required")

    @property
    def m(self) -> float:  # inner exponent
        return (2.0 - self.q) / (1.0 - self.q)

    @property
    def alpha(self) -> float:  # outer exponent
        return (1.0 - self.q) * (self.n - 2) / (2.0 - self.q)

    @property
    def K(self) -> float:
        return (1.0 - self.q) * (self.n - 2) ** (self.q - 1.0) / (self.n - (self.n - 1) * self.q)

    @property
    def l(self) -> float:
        return (2.0 - self.q) ** 2 / ((1.0 - self.q) * (self.n - 2))

    @property
    def p(self) -> float:
        return self.l + 1.0 - self.q

    def _w(self, r: float):
        m = self.m
        w = self.K + r**m
        dw = m * r ** (m - 1.0) if r > 0 else 0.0
        d2w = m * (m - 1.0) * r ** (m - 2.0) if r > 0 else 0.0
        d3w = m * (m - 1.0) * (m - 2.0) * r ** (m - 3.0) if r > 0 else 0.0
        return w, dw, d2w, d3w

    def u(self, r: float) -> float:
        w, _, _, _ = self._w(r)
        return w**-self.alpha

    def du(self, r: float) -> float:
        a = self.alpha
        w, dw, _, _ = self._w(r)
        return -a * w ** (-a - 1.0) * dw

    def d2u(self, r: float) -> float:
        a = self.alpha
        w, dw, d2w, _ = self._w(r)
        return a * (a + 1.0) * w ** (-a - 2.0) * dw * dw - a * w ** (-a - 1.0) * d2w

    def d3u(self, r: float) -> float:
        a = self.alpha
        w, dw, d2w, d3w = self._w(r)
        return (
            -a * (a + 1.0) * (a + 2.0) * w ** (-a - 3.0) * dw**3
            + 3.0 * a * (a + 1.0) * w ** (-a - 2.0) * dw * d2w
            - a * w ** (-a - 1.0) * d3w
        )


@dataclass(frozen=True)
class SingularSolution:
    """Power-type solution on the punctured space, u(r) = amplitude * r^(-a)."""

    n: int
    p: float
    q: float
    amplitude: float

    @property
    def a(self) -> float:
        return (2.0 - self.q) / (self.p + self.q - 1.0)

    def u(self, r: float) -> float:
        return self.amplitude * r**-self.a

    def du(self, r: float) -> float:
        return -self.a * self.amplitude * r ** (-self.a - 1.0)

    def d2u(self, r: float) -> float:
        return self.a * (self.a + 1.0) * self.amplitude * r ** (-self.a - 2.0)


@dataclass(frozen=True)
class ConstantSolution:
    n: int
    p: float
    q: float
    value: float

    def u(self, r: float) -> float:
        return self.value

    def du(self, r: float) -> float:
        return 0.0

    def d2u(self, r: float) -> float:
        return 0.0


@dataclass(frozen=True)
class DerivedQuantities:
    r: float
    u: float
    du: float
    d2u: float
    H: float
    L: float
    Z: float
    F: float


def constancy_d(n: int, q: float) -> float:
    """The d making the auxiliary function constant on the ground state."""
    return (n - 2) * (1.0 - q) / (n - (n - 1) * q)


def optimal_pair(n: int, q: float) -> tuple:
    """(beta, sigma) killing the traceless tensor term on the ground state."""
    return 2.0 / (n - 2), -q / (n - (n - 1) * q)


def _HLZ(gs: GroundState, r: float) -> tuple:
    g = gs.du(r) / gs.u(r)
    H = g * g
    L = abs(g) ** gs.q * gs.u(r) ** gs.l
    Z = L / H if H > 0 else math.nan
    return H, L, Z


def _F_value(gs: GroundState, r: float, beta: float, d: float) -> float:
    q = gs.q
    u = gs.u(r)
    H, _, _ = _HLZ(gs, r)
    return u ** (-(1.0 - q / 2.0) * beta) * (H ** (1.0 - q / 2.0) + d * u**gs.l)


def ground_state_eval(n: int, q: float, r: float) -> DerivedQuantities:
    """All pointwise quantities of the ground state at radius r >= 0."""
    if r < 0:
        raise ValueError("r >= 0 required")
    gs = GroundState(n, q)
    u, du, d2u = gs.u(r), gs.du(r), gs.d2u(r)
    if r > 0:
        H, L, Z = _HLZ(gs, r)
        F = _F_value(gs, r, 2.0 / (n - 2), constancy_d(n, q))
    else:
        H, L, Z = 0.0, 0.0, math.nan
        F = u ** (-(1.0 - q / 2.0) * 2.0 / (n - 2)) * constancy_d(n, q) * u**gs.l
    return DerivedQuantities(r, u, du, d2u, H, L, Z, F)


def pde_residual_radial(form, r: float) -> float:
    """u'' + (n-1)/r u' + |u'|^q u^p at radius r > 0."""
    if r <= 0:
        raise ValueError("r > 0 required")
    n, p, q = form.n, form.p, form.q
    u, du, d2u = form.u(r), form.du(r), form.d2u(r)
    return d2u + (n - 1) / r * du + abs(du) ** q * u**p


def singular_amplitude(n: int, p: float, q: float) -> float:
    """Amplitude of the power-type solution, ((n-2-a) a^(1-q))^(1/l).

    The exponent matching (a+1)q + ap = a+2 holds identically for
    a = (2-q)/l; the amplitude exists iff a < n-2, i.e. l > (2-q)/(n-2).
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    if not 0.0 <= q < 2.0:
        raise ValueError("q in [0,2) required")
    l = p + q - 1.0
    if l <= (2.0 - q) / (n - 2):
        raise ValueError("l > (2-q)/(n-2) required for a positive amplitude")
    a = (2.0 - q) / l
    assert abs((a + 1.0) * q + a * p - (a + 2.0)) < 1e-12
    return ((n - 2.0 - a) * a ** (1.0 - q)) ** (1.0 / l)


def make_singular(n: int, p: float, q: float) -> SingularSolution:
    return SingularSolution(n, p, q, singular_amplitude(n, p, q))


def deltaH_sides(n: int, q: float, beta: float, sigma: float, r: float) -> tuple:
    """Both sides of the elliptic identity for H = |grad ln u|^2 on the
    ground state (flat space): LHS is the radial Laplacian of H, RHS the
    quadratic form in (H, L) plus gradient coupling plus twice the traceless
    tensor norm."""
    if r <= 0:
        raise ValueError("r > 0 required")
    gs = GroundState(n, q)
    u, du, d2u, d3u = gs.u(r), gs.du(r), gs.d2u(r), gs.d3u(r)
    g = du / u
    gp = d2u / u - g * g
    gpp = d3u / u - g * d2u / u - 2.0 * g * gp

    H = g * g
    Hp = 2.0 * g * gp
    Hpp = 2.0 * gp * gp + 2.0 * g * gpp
    lhs = Hpp + (n - 1) / r * Hp

    L = abs(g) ** q * u**gs.l
    Z = L / H
    A = lambda x: 2.0 / n * (1.0 + x) ** 2 - 2.0 * x * x
    B = lambda x, y: 4.0 / n * (1.0 + x) * (1.0 + y) - 4.0 * x * y - 2.0 * gs.l
    grad_coupling = g * (Hp / H)
    rhs = (
        A(beta) * H * H
        + A(sigma) * L * L
        + B(beta, sigma) * H * L
        + (2.0 * (beta - 1.0) * H + (2.0 * sigma - q) * L) * grad_coupling
        + 2.0 * tensor_deviation(n, q, beta, sigma, r)
    )
    return lhs, rhs


def deltaH_residual(n: int, q: float, beta: float, sigma: float, r: float) -> float:
    lhs, rhs = deltaH_sides(n, q, beta, sigma, r)
    return lhs - rhs


def tensor_deviation(n: int, q: float, beta: float, sigma: float, r: float) -> float:
    """Squared norm of the traceless part of the two-parameter tensor on the
    ground state: (n-1)/n (a_r - a_t)^2 with radial and tangential entries."""
    if r <= 0:
        raise ValueError("r > 0 required")
    gs = GroundState(n, q)
    u, du, d2u = gs.u(r), gs.du(r), gs.d2u(r)
    g = du / u
    H, L, Z = _HLZ(gs, r)
    c = (1.0 + beta) + sigma * Z
    a_r = d2u / u - c * g * g
    a_t = du / (r * u)
    return (n - 1) / n * (a_r - a_t) ** 2


def aux_F_profile(n: int, q: float, r_samples, d_scale: float = 1.0) -> list:
    """The auxiliary function along the ground state; constant at d_scale=1."""
    gs = GroundState(n, q)
    beta = 2.0 / (n - 2)
    d = constancy_d(n, q) * d_scale
    out = []
    for r in r_samples:
        if r <= 0:
            raise ValueError("r > 0 required in samples")
        out.append(_F_value(gs, r, beta, d))
    return out


# ---------------------------------------------------------------------------
# Shooting.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialOutcome:
    status: str
    radius: float | None
    steps: int
    final_r: float
    reason: str = ""
    samples: tuple = ()  # (r, u, u') triples at requested radii


def _series_start(n: int, p: float, q: float, u0: float, h: float) -> tuple:
    """Start values at r = h resolving the degenerate center.

    q = 0: u'' (0) = -u0^p/n from the radial mean.  0 < q < 1: the nontrivial
    branch leaves the constant solution with u' ~ -c r^(1/(1-q)), c from the
    leading-order balance.  q >= 1 admits no nontrivial branch from u'(0)=0.
    """
    if q == 0.0:
        return u0 - u0**p * h * h / (2.0 * n), -(u0**p) * h / n
    c = (u0**p * (1.0 - q) / (n - (n - 1) * q)) ** (1.0 / (1.0 - q))
    mexp = (2.0 - q) / (1.0 - q)
    return u0 - c * (1.0 - q) / (2.0 - q) * h**mexp, -c * h ** (mexp - 1.0)


def shoot(
    n: int, p: float, q: float, u0: float, r_max: float, tol: float, r_samples=None
) -> RadialOutcome:
    """Integrate the radial profile from the center and classify it.

    Returns hits_zero with the root-resolved crossing radius, positive_global
    when r_max is reached with u > 0, u' < 0 and the decay ratio r|u'|/u
    within the self-similar budget, else undecided with a reason.  Optional
    r_samples requests (r, u, u') values along the computed profile.
    """
    if u0 <= 0 or r_max <= 0:
        raise ValueError("u0 > 0 and r_max > 0 required")
    if not 0 < tol < 1e-2:
        raise ValueError("tol must lie in (0, 1e-2)")
    if q >= 1.0:
        return RadialOutcome(UNDECIDED, None, 0, 0.0, "no nontrivial branch for q >= 1")
    l = p + q - 1.0

    h0 = 1e-4
    y0 = _series_start(n, p, q, u0, h0)

    def rhs(r, y):
        u, v = y
        # Odd extension of u^p below zero keeps intermediate stages finite
        # while the crossing event is being located.
        up = math.copysign(abs(u) ** p, u)
        return (v, -(n - 1) / r * v - abs(v) ** q * up)

    def hit_zero(r, y):
        return y[0]

    hit_zero.terminal = True
    hit_zero.direction = -1.0

    sol = solve_ivp(
        rhs,
        (h0, r_max),
        y0,
        method="DOP853",
        rtol=tol,
        atol=tol,
        events=[hit_zero],
        dense_output=r_samples is not None,
    )
    steps = len(sol.t)
    samples = ()
    if r_samples is not None and sol.t.size:
        end = float(sol.t[-1])
        samples = tuple(
            (float(r), *map(float, sol.sol(r))) for r in r_samples if h0 <= r <= end
        )
    if not sol.success and sol.status != 1:
        return RadialOutcome(UNDECIDED, None, steps, float(sol.t[-1]), sol.message, samples)
    if sol.status == 1:  # event fired
        radius = float(sol.t_events[0][0])
        return RadialOutcome(HITS_ZERO, radius, steps, radius, "", samples)
    u_end, v_end = float(sol.y[0, -1]), float(sol.y[1, -1])
    if not (math.isfinite(u_end) and math.isfinite(v_end)):
        return RadialOutcome(UNDECIDED, None, steps, r_max, "non-finite state", samples)
    if u_end <= 0:
        return RadialOutcome(HITS_ZERO, r_max, steps, r_max, "", samples)
    if v_end >= 0:
        return RadialOutcome(UNDECIDED, None, steps, r_max, "non-decreasing tail", samples)
    decay_budget = 2.0 * (2.0 - q) / l + 1.0 if l > 0 else math.inf
    if r_max * abs(v_end) / u_end > decay_budget:
        return RadialOutcome(UNDECIDED, None, steps, r_max, "decay test failed", samples)
    return RadialOutcome(POSITIVE_GLOBAL, None, steps, r_max, "", samples)


_SHOOT_RMAX = 1e4
_SHOOT_TOL = 1e-10


def existence_threshold(n: int, q: float, p_lo: float, p_hi: float, p_tol: float) -> float:
    """Bisect on p between a zero-crossing profile and a globally positive
    one (u0 = 1 by scaling invariance); the threshold approximates the
    critical exponent of the radial existence region."""
    if not 0.0 <= q < 1.0:
        raise ValueError("q in [0,1) required")
    if p_tol <= 0:
        raise ValueError("p_tol > 0 required")

    def classify_p(p: float) -> str:
        out = shoot(n, p, q, 1.0, _SHOOT_RMAX, _SHOOT_TOL)
        if out.status == UNDECIDED:
            out = shoot(n, p, q, 1.0, _SHOOT_RMAX, _SHOOT_TOL / 100.0)
        if out.status == UNDECIDED:
            if out.reason == "decay test failed":
                # Slowly crossing beyond the horizon: the crossing side.
                return HITS_ZERO
            raise RuntimeError(f"undecided outcome at p={p}: {out.reason}")
        return out.status

    if classify_p(p_lo) != HITS_ZERO:
        raise ValueError(f"p_lo={p_lo} does not produce a zero-crossing profile")
    if classify_p(p_hi) != POSITIVE_GLOBAL:
        raise ValueError(f"p_hi={p_hi} does not produce a positive global profile")
    while p_hi - p_lo > p_tol:
        mid = 0.5 * (p_lo + p_hi)
        if classify_p(mid) == HITS_ZERO:
            p_lo = mid
        else:
            p_hi = mid
    return 0.5 * (p_lo + p_hi)
