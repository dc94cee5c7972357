"""Generalized elliptic sine sn_p and its complete integral K_p.

For p > 1 and modulus mu in [0, 1) the incomplete integral

    w_p(z) = integral_0^z (1 - s**p)**(-1/p) * (1 - mu**p s**p)**(-1/p) ds

is strictly increasing on [0, 1] with w_p(1) = K_p(mu), the complete
integral.  Its inverse on [0, K_p], extended to an odd 4 K_p-periodic
function of y, is sn_p(y, mu).  At p = 2 these reduce to the classical
incomplete/complete elliptic integrals and Jacobi sn with modulus mu (the
modulus k convention, not the parameter m = k**2).

Derivatives follow from the chain rule.  With A = 1 - s**p and
B = 1 - mu**p s**p at s = sn_p:

    sn_p'  = +/- (A * B)**(1/p)
    sn_p'' = -/+ s**(p-1) * (A * B)**(2/p - 1) * (B + mu**p * A)

For p > 2 the second derivative diverges at odd multiples of K_p but stays
locally integrable.

Evaluation inverts w_p.  The scalar path uses the generic bracketed root
finder on [0, 1]; the batch path runs a bracket-safeguarded Newton iteration
vectorized across all requested points, which the rest of the package uses
for grids.  Both reduce y modulo the period first and agree to inversion
tolerance (about 1e-12 on the value).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NonConvergence, SingularPoint, SlowConvergence
from .quadrature import (
    QuadratureResult,
    SingularIntegrand,
    bracketed_root,
    integrate_singular,
    _ts_levels,
    _H0,
)

__all__ = [
    "PModulus",
    "SnpValue",
    "kp",
    "kp_quadrature",
    "kp_via_2f1",
    "wp",
    "snp",
    "snp_value",
    "snp_many",
    "snp_deriv",
    "snp_deriv_many",
    "snp_second_deriv",
    "snp_second_deriv_many",
    "jordan_margins",
]

_EPS = float(np.finfo(float).eps)

_KP_TOL = 1e-13
# p > 2 only: margin around odd multiples of K_p inside which the second
# derivative is treated as singular.
_SING_MARGIN = 1e-6


def _validate_pmu(p: float, mu: float) -> None:
    if not (p > 1.0) or not math.isfinite(p):
        raise DomainError(f"p must be a finite real > 1, got {p}")
    if not (0.0 <= mu < 1.0):
        raise DomainError(f"mu must lie in [0, 1), got {mu}")


def _pow_ratio(e: np.ndarray, p: float) -> np.ndarray:
    """(1 - s**p) / (1 - s) for s = 1 - e, stable for all e in [0, 1].

    The direct quotient collapses to 0/0 as e underflows; below 1e-6 a
    three-term expansion around s = 1 carries full double precision.
    """
    e = np.asarray(e, dtype=float)
    out = np.empty_like(e)
    small = e < 1e-6
    big = ~small
    if np.any(big):
        with np.errstate(divide="ignore"):
            out[big] = -np.expm1(p * np.log1p(-e[big])) / e[big]
    if np.any(small):
        es = e[small]
        out[small] = p * (1.0 + (p - 1.0) * es * (-0.5 + (p - 2.0) * es / 6.0))
    return out


def _one_minus_mupsp(log_s: np.ndarray, p: float, mu: float) -> np.ndarray:
    """1 - mu**p * s**p from log(s), accurate when the product is near 1."""
    if mu == 0.0:
        return np.ones_like(log_s)
    return -np.expm1(p * (math.log(mu) + log_s))


def kp_quadrature(p: float, mu: float, tol: float = _KP_TOL) -> QuadratureResult:
    """The K_p integral with the engine's own error assessment attached.

    The second factor is expanded as 1 - mu**p s**p = eps + mu**p (1 - s**p)
    with eps = 1 - mu**p, so the boundary layer that forms as mu approaches 1
    is evaluated from the exact endpoint distance and the integral stays
    accurate even for 1 - mu of order 1e-15.

    For p close to 1 the endpoint exponent -1/p approaches -1 and the
    unresolvable tail below the double-precision node horizon grows; the
    engine then refuses tolerances it cannot certify and raises.
    """
    _validate_pmu(p, mu)
    eps = 1.0 if mu == 0.0 else -math.expm1(p * math.log(mu))
    mup = mu**p

    def smooth(s: np.ndarray, cs: np.ndarray) -> np.ndarray:
        ratio = _pow_ratio(cs, p)
        other = eps + mup * ratio * cs
        return (ratio * other) ** (-1.0 / p)

    f = SingularIntegrand(smooth_part=smooth, right_exponent=-1.0 / p)
    return integrate_singular(f, tol=tol)


def _f21(alpha: float, beta: float, gamma: float, y: float) -> float:
    """Gauss series 2F1(alpha, beta; gamma; y) for small positive y."""
    term = 1.0
    total = 1.0
    for n in range(500):
        term *= (alpha + n) * (beta + n) / ((gamma + n) * (1.0 + n)) * y
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total
    raise NonConvergence(f"2F1 series stalled at y={y}")


def _kp_near_one_2f1(p: float, mu: float) -> float:
    """K_p via the hypergeometric connection formula at the mu -> 1 end.

    Rewrites 2F1(1/p, 1/p; 1; mu**p) in terms of two series in
    y = 1 - mu**p, which converge in a handful of terms when y < 0.1.
    Only valid for p in (1, 2), where the gamma factors stay off their
    poles; that is exactly the regime in which the quadrature route runs
    out of double-precision headroom.
    """
    if not (1.0 < p < 2.0):
        raise NonConvergence(f"near-one series requires p in (1, 2), got {p}")
    a = 1.0 / p
    y = -math.expm1(p * math.log(mu))
    pref = math.pi / (p * math.sin(math.pi / p))
    coef_a = math.gamma(1.0 - 2.0 * a) / math.gamma(1.0 - a) ** 2
    coef_b = math.gamma(2.0 * a - 1.0) / math.gamma(a) ** 2
    f1 = _f21(a, a, 2.0 * a, y)
    f2 = _f21(1.0 - a, 1.0 - a, 2.0 - 2.0 * a, y)
    return pref * (coef_a * f1 + coef_b * y ** (1.0 - 2.0 * a) * f2)


@functools.lru_cache(maxsize=8192)
def kp(p: float, mu: float) -> float:
    """Complete integral K_p(mu) = w_p(1).

    Strictly increasing in mu, with K_p(0) = pi / (p sin(pi/p)).  Computed by
    tanh-sinh quadrature with the (1-s)**(-1/p) endpoint factor declared to
    the engine; absolute accuracy is about 1e-13.

    For p close to 1 the quadrature cannot certify that tolerance in double
    precision, so after a short tolerance ladder the value is taken from a
    hypergeometric series instead: the mu**p expansion when mu**p <= 0.9,
    else the connection-formula expansion around mu = 1.  Both keep relative
    accuracy near 1e-13.
    """
    last: Optional[NonConvergence] = None
    for tol in (_KP_TOL, 1e-12, 1e-11):
        try:
            return kp_quadrature(p, mu, tol=tol).value
        except NonConvergence as exc:
            last = exc
    x = mu**p
    if x <= 0.9:
        return kp_via_2f1(p, mu)
    try:
        return _kp_near_one_2f1(p, mu)
    except NonConvergence:
        raise last


def kp_via_2f1(p: float, mu: float, terms: int = 1000) -> float:
    """K_p(mu) through the Gauss hypergeometric representation.

    Sums (B(1/p, 1 - 1/p) / p) * 2F1(1/p, 1/p; 1; mu**p) directly; the Beta
    prefactor reduces to pi / (p sin(pi/p)) by reflection.  Independent of
    the quadrature route, so the two serve as mutual cross-checks.

    Raises
    ------
    SlowConvergence
        If mu**p > 0.9, where the series budget is not guaranteed.
    NonConvergence
        If ``terms`` is exhausted before the tail drops below 1e-17.
    """
    _validate_pmu(p, mu)
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    x = mu**p
    if x > 0.9:
        raise SlowConvergence(f"mu**p = {x:.6f} > 0.9; hypergeometric series too slow")
    pref = math.pi / (p * math.sin(math.pi / p))
    a = 1.0 / p
    term = 1.0
    total = 1.0
    for n in range(terms):
        term *= ((n + a) / (n + 1.0)) ** 2 * x
        total += term
        if term < 1e-17 * total:
            return pref * total
    raise NonConvergence(f"2F1 series did not settle within {terms} terms")


@dataclass(frozen=True)
class PModulus:
    """A (p, mu) pair with its complete integral computed at construction."""

    p: float
    mu: float
    kp_cached: Optional[float] = None

    def __post_init__(self) -> None:
        _validate_pmu(self.p, self.mu)
        if self.kp_cached is None:
            object.__setattr__(self, "kp_cached", kp(self.p, self.mu))


@dataclass(frozen=True)
class SnpValue:
    """A single sn_p evaluation: input y, value, and the index of the
    4 K_p period that y fell into during range reduction."""

    y: float
    value: float
    branch_period_index: int


class _SnpEngine:
    """Vectorized w_p evaluation and inversion for one (p, mu) pair.

    w_p is computed two ways depending on where z sits: below 0.6 the
    integral is scaled onto [0, 1] directly; above, the complementary tail
    integral (substituted so its singularity sits at the left endpoint) is
    subtracted from K_p, which also keeps K_p - w_p fully accurate where the
    inverse flattens out.
    """

    __slots__ = ("p", "mu", "K", "_mup", "_logmu")

    def __init__(self, p: float, mu: float):
        _validate_pmu(p, mu)
        self.p = p
        self.mu = mu
        self.K = kp(p, mu)
        self._mup = mu**p
        self._logmu = math.log(mu) if mu > 0.0 else None

    # -- integrand pieces -------------------------------------------------

    def _G(self, v: np.ndarray) -> np.ndarray:
        """w_p'(v) = (1 - v**p)**(-1/p) (1 - mu**p v**p)**(-1/p), v in [0, 1)."""
        p = self.p
        with np.errstate(divide="ignore"):
            log_v = np.log(v)
        one = -np.expm1(p * log_v)
        other = _one_minus_mupsp(log_v, p, self.mu)
        return (one * other) ** (-1.0 / p)

    # -- batched tanh-sinh driver -----------------------------------------

    def _batch_ts(self, F, ea: float, eb: float, tol: float) -> np.ndarray:
        """Integrate smooth F (batched) times s**(ea-1) (1-s)**(eb-1) on [0,1].

        F(x) maps a 1-D node array to a (batch, nodes) array.  Refines levels
        until every entry moves by less than tol relative to its magnitude;
        tail-branch raw values can be huge before their power-of-(1-z)
        rescaling, so an absolute test would sit below their noise floor.
        """
        center = np.pi * 0.5**ea * 0.5**eb * F(np.array([0.5]))[:, 0]
        sums = [center]
        prev = None
        for lev, L in enumerate(_ts_levels()):
            wr = L.picosh * L.s**ea * L.oms**eb
            wl = L.picosh * L.oms**ea * L.s**eb
            sums.append(F(L.s) @ wr + F(L.oms) @ wl)
            h = _H0 / 2.0**lev
            value = h * np.sum(np.stack(sums), axis=0)
            if lev >= 2 and prev is not None:
                if np.all(np.abs(value - prev) <= tol * np.maximum(1.0, np.abs(value))):
                    return value
            prev = value
        raise NonConvergence(
            f"batched tanh-sinh failed to reach {tol:.3e} for p={self.p}, mu={self.mu}"
        )

    def wp_many(self, z: np.ndarray) -> np.ndarray:
        """w_p at each z in [0, 1], vectorized."""
        z = np.asarray(z, dtype=float)
        out = np.empty_like(z)
        lo = z <= 0.6
        if np.any(lo):
            out[lo] = self._wp_direct(z[lo])
        if np.any(~lo):
            out[~lo] = self.K - self._wp_tail(z[~lo])
        return out

    def _wp_direct(self, z: np.ndarray) -> np.ndarray:
        if z.size == 0:
            return z
        tol = 5e-14 * (1.0 + self.K)

        def F(x: np.ndarray) -> np.ndarray:
            return self._G(np.multiply.outer(z, x))

        return z * self._batch_ts(F, 1.0, 1.0, tol)

    def _wp_tail(self, z: np.ndarray) -> np.ndarray:
        """integral_z^1 w_p' ds via s = 1 - (1-z) u; u**(-1/p) declared.

        1 - mu**p s**p is expanded as eps + mu**p (1 - s**p) with
        eps = 1 - mu**p, keeping the mu -> 1 boundary layer accurate.
        """
        if z.size == 0:
            return z
        p = self.p
        omz = 1.0 - z
        tol = 5e-14 * (1.0 + self.K)
        eps = 1.0 if self._logmu is None else -math.expm1(p * self._logmu)
        mup = self._mup

        def F(u: np.ndarray) -> np.ndarray:
            e = np.multiply.outer(omz, u)
            ratio = _pow_ratio(e, p)
            other = eps + mup * ratio * e
            return (ratio * other) ** (-1.0 / p)

        return omz ** (1.0 - 1.0 / p) * self._batch_ts(F, 1.0 - 1.0 / p, 1.0, tol)

    # -- inversion ---------------------------------------------------------

    def invert(self, t: np.ndarray) -> np.ndarray:
        """Solve w_p(z) = t for each t in [0, K], vectorized.

        Newton steps with the analytic derivative w_p' = G, confined to a
        per-point sign-change bracket; out-of-bracket or non-finite
        proposals fall back to bisection, so every iterate stays admissible.
        """
        t = np.asarray(t, dtype=float)
        z = np.clip(t / self.K, 0.0, 1.0)
        # endpoints are exact fixed points; skipping them keeps z bitwise 0/1
        at_edge = (t <= 0.0) | (t >= self.K)
        z[t <= 0.0] = 0.0
        z[t >= self.K] = 1.0
        z_lo = np.zeros_like(z)
        z_hi = np.ones_like(z)
        active = ~at_edge
        for _ in range(80):
            idx = np.nonzero(active)[0]
            if idx.size == 0:
                return z
            za = z[idx]
            f = self.wp_many(za) - t[idx]
            lo_upd = f < 0.0
            z_lo[idx[lo_upd]] = za[lo_upd]
            z_hi[idx[~lo_upd]] = za[~lo_upd]
            with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                step = f / self._G(za)
                z_new = za - step
            bad = ~np.isfinite(z_new) | (z_new <= z_lo[idx]) | (z_new >= z_hi[idx])
            z_new[bad] = 0.5 * (z_lo[idx][bad] + z_hi[idx][bad])
            done = (np.abs(z_new - za) <= 5e-15) | (z_hi[idx] - z_lo[idx] <= 1e-14)
            z[idx] = z_new
            active[idx[done]] = False
        raise NonConvergence(
            f"sn_p inversion stalled for p={self.p}, mu={self.mu}"
        )

    # -- periodic reduction and evaluation ---------------------------------

    def reduce(self, y: np.ndarray):
        """Fold y into the fundamental quarter.

        Returns (u, sign, quarter, period_index) with u in [0, K] such that
        |sn_p(y)| = sn_p(u) and sign = sgn(sn_p(y)); quarter in {0,1,2,3}
        locates y mod 4K for derivative signs.
        """
        y = np.asarray(y, dtype=float)
        fourk = 4.0 * self.K
        period = np.floor(y / fourk)
        r = y - period * fourk
        r = np.where(r < 0.0, 0.0, np.where(r >= fourk, 0.0, r))
        quarter = np.minimum(np.floor(r / self.K).astype(int), 3)
        sign = np.where(r <= 2.0 * self.K, 1.0, -1.0)
        u = np.where(r <= 2.0 * self.K, r, r - 2.0 * self.K)
        u = np.where(u > self.K, 2.0 * self.K - u, u)
        # folding r = y mod 4K rounds once, which can leave u one ulp off
        # the quarter point K; snap so endpoint evaluations stay exact
        u = np.where(np.abs(u - self.K) <= 8.0 * _EPS * self.K, self.K, u)
        return u, sign, quarter, period.astype(int)

    def value_many(self, y: np.ndarray) -> np.ndarray:
        u, sign, _, _ = self.reduce(y)
        return sign * self.invert(u)

    def deriv_many(self, y: np.ndarray) -> np.ndarray:
        u, _, quarter, _ = self.reduce(y)
        s = self.invert(u)
        m = self._deriv_mag(s)
        dsign = np.where((quarter == 0) | (quarter == 3), 1.0, -1.0)
        return dsign * m

    def _deriv_mag(self, s: np.ndarray) -> np.ndarray:
        p = self.p
        with np.errstate(divide="ignore"):
            log_s = np.log(s)
        A = -np.expm1(p * log_s)
        B = _one_minus_mupsp(log_s, p, self.mu)
        return (A * B) ** (1.0 / p)

    def second_many(self, y: np.ndarray) -> np.ndarray:
        u, _, quarter, _ = self.reduce(y)
        s = self.invert(u)
        h = self._second_signed(s)
        return np.where(quarter <= 1, h, -h)

    def _second_signed(self, s: np.ndarray) -> np.ndarray:
        """Chain-rule second derivative on the rising quarter (negative there)."""
        p = self.p
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            log_s = np.log(s)
            A = -np.expm1(p * log_s)
            B = _one_minus_mupsp(log_s, p, self.mu)
            return -(s ** (p - 1.0)) * (A * B) ** (2.0 / p - 1.0) * (B + self._mup * A)


@functools.lru_cache(maxsize=256)
def _engine(p: float, mu: float) -> _SnpEngine:
    return _SnpEngine(p, mu)


def wp(p: float, mu: float, z: float) -> float:
    """Incomplete integral w_p(z) for z in [0, 1]."""
    _validate_pmu(p, mu)
    if not (0.0 <= z <= 1.0):
        raise DomainError(f"z must lie in [0, 1], got {z}")
    if z == 0.0:
        return 0.0
    eng = _engine(p, mu)
    if z == 1.0:
        return eng.K
    return float(eng.wp_many(np.array([z]))[0])


def _reduce_scalar(p: float, mu: float, y: float):
    eng = _engine(p, mu)
    u, sign, quarter, period = eng.reduce(np.array([y]))
    return eng, float(u[0]), float(sign[0]), int(quarter[0]), int(period[0])


def snp(p: float, mu: float, y: float) -> float:
    """sn_p(y, mu): odd, 4 K_p-periodic, equal to the inverse of w_p on
    [0, K_p].  Scalar path: range reduction, then bracketed inversion of
    w_p on [0, 1] to tolerance 1e-13 on the value."""
    _validate_pmu(p, mu)
    if not math.isfinite(y):
        raise DomainError(f"y must be finite, got {y}")
    eng, u, sign, _, _ = _reduce_scalar(p, mu, y)
    if u == 0.0:
        return 0.0
    if u >= eng.K:
        return sign * 1.0
    z = bracketed_root(
        lambda zz: float(eng.wp_many(np.array([zz]))[0]) - u, 0.0, 1.0, tol=1e-13
    )
    return sign * z


def snp_value(p: float, mu: float, y: float) -> SnpValue:
    """sn_p evaluation bundled with the period index used in reduction."""
    eng, _, _, _, period = _reduce_scalar(p, mu, y)
    return SnpValue(y=y, value=snp(p, mu, y), branch_period_index=period)


def snp_many(p: float, mu: float, y) -> np.ndarray:
    """Vectorized sn_p over an array of y; same reduction as :func:`snp`
    with a batched safeguarded-Newton inversion."""
    _validate_pmu(p, mu)
    return _engine(p, mu).value_many(np.asarray(y, dtype=float))


def snp_deriv(p: float, mu: float, y: float) -> float:
    """d/dy sn_p(y, mu) = sgn * ((1 - s**p)(1 - mu**p s**p))**(1/p) with
    s = |sn_p(y)|; vanishes at odd multiples of K_p."""
    _validate_pmu(p, mu)
    return float(snp_deriv_many(p, mu, np.array([y]))[0])


def snp_deriv_many(p: float, mu: float, y) -> np.ndarray:
    """Vectorized first derivative."""
    _validate_pmu(p, mu)
    return _engine(p, mu).deriv_many(np.asarray(y, dtype=float))


def snp_second_deriv(p: float, mu: float, y: float) -> float:
    """Second derivative of sn_p at y.

    Negative on (0, 2 K_p) and positive on (2 K_p, 4 K_p) by the odd
    periodic symmetry.  For p > 2 it diverges at odd multiples of K_p;
    evaluation within 1e-6 of such a point raises :class:`SingularPoint`.
    """
    _validate_pmu(p, mu)
    eng, u, _, _, _ = _reduce_scalar(p, mu, y)
    if p > 2.0 and abs(u - eng.K) < _SING_MARGIN:
        raise SingularPoint(
            f"sn_p'' is singular at odd multiples of K_p for p = {p} "
            f"(y within {_SING_MARGIN} of one)"
        )
    return float(snp_second_deriv_many(p, mu, np.array([y]))[0])


def snp_second_deriv_many(p: float, mu: float, y) -> np.ndarray:
    """Vectorized second derivative; caller keeps p > 2 grids away from odd
    multiples of K_p."""
    _validate_pmu(p, mu)
    return _engine(p, mu).second_many(np.asarray(y, dtype=float))


def jordan_margins(p: float, mu: float, y: float) -> tuple[float, float]:
    """Slack in the two-sided bound 1/K_p <= sn_p(y)/y <= 1 on (0, K_p).

    Returns (sn_p(y)/y - 1/K_p, 1 - sn_p(y)/y); both are nonnegative up to
    evaluation tolerance.
    """
    _validate_pmu(p, mu)
    eng = _engine(p, mu)
    if not (0.0 < y < eng.K):
        raise DomainError(f"y must lie in (0, K_p) = (0, {eng.K}), got {y}")
    ratio = float(eng.value_many(np.array([y]))[0]) / y
    return ratio - 1.0 / eng.K, 1.0 - ratio
