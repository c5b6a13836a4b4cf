"""Separating curves, feasibility sets, suprema and region classification.

Everything here works in float64.  Strict inequalities from the region
definitions carry a 1e-12 guard band; membership tests against the computed
suprema carry a 1e-9 band, and points inside a band count as boundary
(non-members).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GUARD",
    "SUP_TOL",
    "ParamPoint",
    "SupResult",
    "Verdict",
    "RegionConflictError",
    "curve_V",
    "G_bgv",
    "G_roots",
    "H_mawu",
    "H_roots",
    "mawu_q_lower",
    "cond5_bound",
    "phi",
    "feasibility",
    "sup_phi",
    "clear_sup_memo",
    "in_admissible",
    "classify",
    "appendixB_check",
    "AppendixBReport",
]

GUARD = 1e-12
SUP_TOL = 1e-9
COARSE_STEP = 1e-3

LIOUVILLE = "liouville"
LIOUVILLE_BOUNDED = "liouville_bounded"
RADIAL = "radial_exists"
UNKNOWN = "unknown"


class RegionConflictError(Exception):
    """A point classified both Liouville and radial-solutions-exist."""


@dataclass(frozen=True)
class ParamPoint:
    n: int
    p: float
    q: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n >= 2 required")
        if self.q < 0:
            raise ValueError("q >= 0 required")

    @property
    def l(self) -> float:
        return self.p + self.q - 1.0


@dataclass(frozen=True)
class SupResult:
    value: float  # may be +inf (feasible y -> 2) or -inf (empty feasible set)
    argmax_y: float | None
    attained: bool
    grid_cells_feasible: int


@dataclass(frozen=True)
class Verdict:
    status: str
    criterion: str | None
    criteria_fired: tuple


def curve_V(n: int, q: float) -> float:
    """Critical threshold for l = p+q-1 below which no radial ground state exists."""
    if n < 3:
        raise ValueError("n >= 3 required")
    if not 0.0 <= q < 1.0:
        raise ValueError("q in [0,1) required")
    return (2.0 - q) ** 2 / ((1.0 - q) * (n - 2))


def G_bgv(n: int, p: float, q: float) -> float:
    if n < 3:
        raise ValueError("n >= 3 required")
    return (
        ((n - 1) ** 2 * q + n - 2) * p * p
        + p * (n * (n - 1) * q * q - (n * n + n - 1) * q - n - 2)
        - n * q * q
    )


def H_mawu(n: int, p: float, q: float) -> float:
    if n < 3:
        raise ValueError("n >= 3 required")
    return (
        p * p
        + ((n - 1) / (n - 2) * q - (n * n - 3) / (n - 2) ** 2) * p
        + (1 - (n - 1) * q) / (n - 2) ** 2
    )


def _quad_roots(a: float, b: float, c: float):
    if a == 0.0:
        if b == 0.0:
            return None
        return (-c / b, -c / b)
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return None
    s = math.sqrt(disc)
    return ((-b - s) / (2.0 * a), (-b + s) / (2.0 * a))


def G_roots(n: int, q: float):
    """p-roots of the first comparison quadratic, ordered (low, high)."""
    a = (n - 1) ** 2 * q + n - 2
    b = n * (n - 1) * q * q - (n * n + n - 1) * q - n - 2
    c = -n * q * q
    r = _quad_roots(a, b, c)
    return None if r is None else (min(r), max(r))


def H_roots(n: int, q: float):
    """p-roots of the second comparison quadratic, ordered (low, high)."""
    a = 1.0
    b = (n - 1) / (n - 2) * q - (n * n - 3) / (n - 2) ** 2
    c = (1 - (n - 1) * q) / (n - 2) ** 2
    r = _quad_roots(a, b, c)
    return None if r is None else (min(r), max(r))


def mawu_q_lower(n: int) -> float:
    return 1.0 - 1.0 / math.sqrt(n - 1)


def cond5_bound(n: int) -> float:
    return 3.0 * math.sqrt(n + 6) / (2.0 * (n - 2))


# ---------------------------------------------------------------------------
# Feasibility sets and suprema.
# ---------------------------------------------------------------------------


def _constraints(set_name: str, n: int, q: float, y):
    """Constraint triple; works elementwise on floats and numpy arrays."""
    x = (2.0 - n * y) / (2.0 * (n - 1))
    t1 = 2.0 * y * (1.0 / (math.sqrt(n) + 1.0) + x) + q * y * y
    c = 2.0 * (x + 1.0) ** 2 / n + y * (q - 2.0 * x - 1.0) - q * y * y / 2.0 - 2.0 * x * x
    if set_name == "D":
        t3 = 4.0 * c + t1 + (q - 1.0) * y * y
    elif set_name == "E":
        t3 = 4.0 * c + t1 + (1.5 * q - 2.0) * y * y
    else:
        raise ValueError("set must be 'D' or 'E'")
    return t1, c, t3


def feasibility(set_name: str, n: int, q: float, y: float) -> bool:
    if n < 3:
        raise ValueError("n >= 3 required")
    if not 0.0 < y < 2.0:
        raise ValueError("y in (0,2) required")
    t1, c, t3 = _constraints(set_name, n, q, y)
    return t1 > 0.0 and c > 0.0 and t3 > 0.0


def phi(n: int, q: float, y: float) -> float:
    """Objective of the suprema; strictly increasing in y on (0,2)."""
    return (2.0 - q) / (n - 2) + (y * (n - 2) + 2.0) / ((n - 2) * (2.0 - y))


_Q_RANGES = {"D": ("mawu", 1.5), "E": (1.0, 5.0 / 3.0)}

_SUP_MEMO: dict = {}


def clear_sup_memo():
    _SUP_MEMO.clear()


def sup_phi(set_name: str, n: int, q: float, tol: float, cache=None) -> SupResult:
    """Supremum of the objective over the feasible set.

    Located by a downward coarse scan (step 1e-3) followed by bisection of
    the upper feasibility frontier to width `tol`.  Value +inf flags feasible
    y arbitrarily close to 2; -inf flags an empty feasible set.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    if tol <= 0:
        raise ValueError("tol > 0 required")
    lo_q, hi_q = _Q_RANGES[set_name]
    lo_q = mawu_q_lower(n) if lo_q == "mawu" else lo_q
    if not lo_q < q < hi_q:
        raise ValueError(f"q outside the admissible range ({lo_q:.6f}, {hi_q:.6f}) for set {set_name}")

    key = (set_name, n, q, tol)
    if key in _SUP_MEMO:
        return _SUP_MEMO[key]
    if cache is not None:
        rec = cache.lookup(set_name, n, q, tol)
        if rec is not None:
            _SUP_MEMO[key] = rec
            return rec

    ys = np.arange(COARSE_STEP, 2.0, COARSE_STEP)
    t1, c, t3 = _constraints(set_name, n, q, ys)
    feasible = (t1 > 0.0) & (c > 0.0) & (t3 > 0.0)
    n_feasible = int(feasible.sum())
    if n_feasible == 0:
        result = SupResult(float("-inf"), None, False, 0)
    else:
        imax = int(np.nonzero(feasible)[0][-1])
        y_lo = float(ys[imax])
        if imax == len(ys) - 1 and feasibility(set_name, n, q, 2.0 - tol):
            # Feasible points persist arbitrarily close to 2: unbounded sup.
            result = SupResult(float("inf"), None, False, n_feasible)
        else:
            y_hi = float(ys[imax + 1]) if imax + 1 < len(ys) else 2.0 - tol
            while y_hi - y_lo > tol:
                mid = 0.5 * (y_lo + y_hi)
                if feasibility(set_name, n, q, mid):
                    y_lo = mid
                else:
                    y_hi = mid
            result = SupResult(phi(n, q, y_lo), y_lo, True, n_feasible)

    _SUP_MEMO[key] = result
    if cache is not None:
        cache.store(set_name, n, q, tol, result)
    return result


# ---------------------------------------------------------------------------
# Admissible sets and classification.
# ---------------------------------------------------------------------------


def _sup_bounds_l(set_name: str, n: int, q: float, cache) -> bool | None:
    """True/False for l < sup with the 1e-9 boundary band; None when the
    comparison is unresolvable (empty feasible set returns False)."""
    res = sup_phi(set_name, n, q, SUP_TOL, cache=cache)
    return res


def _in_A(point: ParamPoint, cache=None) -> bool:
    n, q = point.n, point.q
    if n < 3:
        return False
    if not (q > mawu_q_lower(n) + GUARD and q < 1.5 - GUARD):
        return False
    res = sup_phi("D", n, q, SUP_TOL, cache=cache)
    if math.isinf(res.value):
        return res.value > 0  # +inf: every l admissible; -inf: none
    return point.l < res.value - SUP_TOL


def _in_B(point: ParamPoint, cache=None) -> bool:
    n, q = point.n, point.q
    if n < 3:
        return False
    if not (q > 1.0 + GUARD and q < 5.0 / 3.0 - GUARD):
        return False
    res = sup_phi("E", n, q, SUP_TOL, cache=cache)
    if math.isinf(res.value):
        return res.value > 0
    return point.l < res.value - SUP_TOL


def _in_BL(point: ParamPoint, cache=None) -> bool:
    n, q = point.n, point.q
    if q >= 1.5:
        return True
    if _in_A(point, cache):
        return True
    if q <= mawu_q_lower(n) and q < 1.0:
        return point.l < curve_V(n, q) - GUARD
    return False


def _in_L(point: ParamPoint, cache=None) -> bool:
    q = point.q
    if q >= 5.0 / 3.0:
        return True
    if _in_B(point, cache):
        return True
    return q <= 1.0 and _in_BL(point, cache)


def in_admissible(set_name: str, point: ParamPoint, cache=None) -> bool:
    """Membership in one of the admissible sets A, B, BL, L (n >= 3)."""
    if point.n < 3:
        raise ValueError("n >= 3 required")
    try:
        fn = {"A": _in_A, "B": _in_B, "BL": _in_BL, "L": _in_L}[set_name]
    except KeyError:
        raise ValueError("set must be one of A, B, BL, L") from None
    return fn(point, cache)


def classify(point: ParamPoint, bounded: bool = False, cache=None) -> Verdict:
    """Classify a parameter point.

    Order: radial-solutions-exist, then the unconditional Liouville criteria
    (criteria_fired collects every one that holds), then the bounded-only
    criteria, else unknown.  A point firing both radial existence and any
    Liouville criterion raises RegionConflictError.
    """
    n, p, q = point.n, point.p, point.q
    l = point.l

    radial = n >= 3 and 0.0 <= q < 1.0 and l >= curve_V(n, q)

    fired = []
    if n == 2:
        fired.append("cond1")
    if q >= 5.0 / 3.0:
        fired.append("cond2")
    if n >= 3 and q <= mawu_q_lower(n) and l < curve_V(n, q) - GUARD:
        fired.append("cond3")
    if n >= 3 and q > GUARD and p + q <= (n + 2) / (n - 2):
        fired.append("cond4")
    if n >= 3 and p <= cond5_bound(n):
        fired.append("cond5")
    if n >= 3 and _in_L(point, cache):
        fired.append("setL")

    bounded_fired = []
    if bounded:
        if q >= 1.5:
            bounded_fired.append("q32")
        if n >= 3 and _in_BL(point, cache):
            bounded_fired.append("setBL")

    if radial and (fired or bounded_fired):
        raise RegionConflictError(
            f"point (n={n}, p={p}, q={q}) is both radial-exists and Liouville: "
            f"{fired + bounded_fired}"
        )

    if radial:
        return Verdict(RADIAL, None, ())
    if fired:
        return Verdict(LIOUVILLE, fired[0], tuple(fired))
    if bounded_fired:
        return Verdict(LIOUVILLE_BOUNDED, bounded_fired[0], tuple(bounded_fired))
    return Verdict(UNKNOWN, None, ())


# ---------------------------------------------------------------------------
# Appendix-style region cross-checks.
# ---------------------------------------------------------------------------


@dataclass
class BCheckEntry:
    name: str
    ok: bool
    worst_margin: float
    worst_at: tuple | None
    detail: str = ""


@dataclass
class AppendixBReport:
    n: int
    q_step: float
    entries: list

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_text(self) -> str:
        lines = [f"== region inequality checks, n={self.n}, q_step={self.q_step} =="]
        for e in self.entries:
            where = f" at {e.worst_at}" if e.worst_at is not None else ""
            lines.append(
                f"  [{'pass' if e.ok else 'FAIL'}] {e.name}: worst margin {e.worst_margin:.6g}{where} {e.detail}"
            )
        lines.append(f"  => {'OK' if self.ok else 'FAILED'}")
        return "\n".join(lines)


def _q_grid(q_step: float, lo: float, hi: float, include_hi: bool):
    """Integer multiples of q_step inside (lo, hi] or (lo, hi)."""
    k = int(math.floor(lo / q_step)) + 1
    out = []
    while True:
        q = k * q_step
        if q > hi + GUARD if include_hi else q >= hi - GUARD:
            break
        if q > lo + GUARD:
            out.append(q)
        k += 1
    return out


def appendixB_check(n: int, q_step: float, cache=None) -> AppendixBReport:
    """Sweep the bounding inequalities of the proven Liouville region.

    (a) for q in (1-1/sqrt(n-1), 1]:  sup_D + 1 - q > bound and sup_D > 4/(n-2);
    (b) for q in (1, 5/3):            sup_E + 1 - q > bound;
    (c) for q in (0, 1-1/sqrt(n-1)]:  bound + q - 1 < critical threshold;
    (d) n >= 4: every grid cell with the second comparison quadratic negative
        lies in the admissible set L.
    Failures are report entries, never exceptions.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    if q_step <= 0:
        raise ValueError("q_step > 0 required")
    bound = cond5_bound(n)
    q_low = mawu_q_lower(n)
    entries = []

    def sweep(name, qs, margin_fn):
        worst = math.inf
        worst_at = None
        for q in qs:
            m = margin_fn(q)
            if m < worst:
                worst, worst_at = m, q
        entries.append(BCheckEntry(name, worst > 0, worst, worst_at))

    qs_a = _q_grid(q_step, q_low, 1.0, include_hi=True)
    sup_d = {q: sup_phi("D", n, q, SUP_TOL, cache=cache).value for q in qs_a}
    sweep("B.1a: sup_D + 1 - q - bound > 0", qs_a, lambda q: sup_d[q] + 1.0 - q - bound)
    sweep("B.1a: sup_D - 4/(n-2) > 0", qs_a, lambda q: sup_d[q] - 4.0 / (n - 2))

    qs_b = _q_grid(q_step, 1.0, 5.0 / 3.0, include_hi=False)
    sup_e = {q: sup_phi("E", n, q, SUP_TOL, cache=cache).value for q in qs_b}
    sweep("B.1b: sup_E + 1 - q - bound > 0", qs_b, lambda q: sup_e[q] + 1.0 - q - bound)

    qs_c = _q_grid(q_step, 0.0, q_low, include_hi=True)
    sweep("B.1c: l_V - (bound + q - 1) > 0", qs_c, lambda q: curve_V(n, q) - (bound + q - 1.0))

    if n >= 4:
        grid_n = 100
        q_lo, q_hi = q_low, 5.0 / 3.0
        p_up = 0.0
        for j in range(grid_n):
            qj = q_lo + (j + 0.5) * (q_hi - q_lo) / grid_n
            r = H_roots(n, qj)
            if r is not None:
                p_up = max(p_up, r[1])
        p_up += 0.1
        bad = []
        tested = 0
        for j in range(grid_n):
            qj = q_lo + (j + 0.5) * (q_hi - q_lo) / grid_n
            for i in range(grid_n):
                pi = (i + 0.5) * p_up / grid_n
                if H_mawu(n, pi, qj) < 0.0:
                    tested += 1
                    if not _in_L(ParamPoint(n, pi, qj), cache):
                        bad.append((pi, qj))
        entries.append(
            BCheckEntry(
                "B.2: quadratic-negative cells inside set L",
                not bad,
                float(-len(bad)) if bad else float(tested),
                bad[0] if bad else None,
                detail=f"({tested} cells tested, {len(bad)} counterexamples)",
            )
        )
    return AppendixBReport(n, q_step, entries)
