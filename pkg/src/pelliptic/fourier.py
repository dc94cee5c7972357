"""Sine Fourier coefficients of generalized sine profiles.

tau_k = sqrt(2) * integral_0^1 sn_p(2 K_p(mu) x, mu) sin(k pi x) dx are the
coordinates of the first eigenfunction profile in the orthonormal basis
sqrt(2) sin(k pi x).  The integral is split at x = 1/2 and each half is
mapped to [0, 1], which parks the lone interior derivative singularity of
sn_p (present for p > 2) at an endpoint where the double-exponential
transform absorbs it.  Both halves are computed independently, so the
even-k coefficients vanish only through genuine numerical cancellation of
the two pieces, not by construction.

sn_p evaluations are the expensive part and depend only on (p, mu), never
on k, so each profile caches them per refinement level and every tau_k
reuses the cache; only the sine factors are recomputed per k.

The module also carries the explicit p = 2 expansion: coefficient ratios
rho_j(q) = (1-q) q^j / (1 - q^(2j+1)) and the series
g(x) = (1-q) sum_j q^j/(1-q^(2j+1)) sqrt(2) sin((2j+1) pi x), with a
geometric bound for its truncation tail.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .elliptic import kp, snp_many
from .errors import DomainError, NonConvergence
from .quadrature import _H0, _ts_levels

__all__ = [
    "FourierProfile",
    "fourier_profile",
    "tau_k",
    "tau1_margin",
    "tau_tail_bound",
    "rho_coeff",
    "g_eval",
    "g_tail_bound",
]

# Step-2 lower bound for tau_1, 4 sqrt(2) / pi^2
_TAU1_FLOOR = 4.0 * math.sqrt(2.0) / math.pi**2

_TAU_TOL = 1e-11
_MIN_LEVEL = 3
_CAP_LEVEL = 10


@dataclass(frozen=True)
class FourierProfile:
    """Coefficients tau_k, k = 1..K_max, for one (p, mu) profile.

    ``tail_bound`` dominates sum of |tau_k| over odd k > K_max.
    """

    p: float
    mu: float
    coefficients: tuple
    K_max: int
    tail_bound: float


class _TauProfile:
    """Cached sn_p values at the transform nodes of both half-intervals.

    For the half-interval variable u, piece A needs sn_p(K u) and piece B
    needs sn_p(K (1 + u)); each refinement level stores both at the
    level's right-cluster nodes (u = s) and left-cluster nodes (u = 1-s).
    """

    def __init__(self, p: float, mu: float):
        self.p = p
        self.mu = mu
        self.K = kp(p, mu)
        center = snp_many(p, mu, np.array([0.5 * self.K, 1.5 * self.K]))
        self.snA_c = float(center[0])
        self.snB_c = float(center[1])
        self._levels: list[tuple] = []

    def level(self, lev: int):
        tables = _ts_levels()
        while len(self._levels) <= lev:
            L = tables[len(self._levels)]
            u = np.concatenate([L.s, L.oms])
            y = self.K * np.concatenate([u, 1.0 + u])
            v = snp_many(self.p, self.mu, y)
            m = L.s.size
            self._levels.append(
                (L, v[:m], v[m : 2 * m], v[2 * m : 3 * m], v[3 * m :])
            )
        return self._levels[lev]


@functools.lru_cache(maxsize=64)
def _profile(p: float, mu: float) -> _TauProfile:
    return _TauProfile(p, mu)


def _validate_pmu(p: float, mu: float) -> None:
    if not (p > 1.0) or not math.isfinite(p):
        raise DomainError(f"p must be > 1, got {p}")
    if not (0.0 <= mu < 1.0):
        raise DomainError(f"mu must lie in [0, 1), got {mu}")


def tau_k(p: float, mu: float, k: int) -> float:
    """k-th sine coefficient sqrt(2) int_0^1 sn_p(2 K_p x, mu) sin(k pi x) dx.

    Adaptive refinement on the shared node cache until two successive
    levels agree to 1e-11 absolute.
    """
    _validate_pmu(p, mu)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    prof = _profile(float(p), float(mu))
    kh = 0.5 * k * math.pi
    center = 0.25 * math.pi * (
        prof.snA_c * math.sin(0.5 * kh) + prof.snB_c * math.sin(1.5 * kh)
    )
    level_sums: list[float] = []
    prev = math.nan
    best = math.inf
    for lev in range(_CAP_LEVEL + 1):
        L, ar, al, br, bl = prof.level(lev)
        w_r = L.picosh * L.s * L.oms
        right = w_r * (ar * np.sin(kh * L.s) + br * np.sin(kh * (1.0 + L.s)))
        left = w_r * (al * np.sin(kh * L.oms) + bl * np.sin(kh * (1.0 + L.oms)))
        level_sums.append(math.fsum(right) + math.fsum(left))
        h = _H0 / 2.0**lev
        value = h * (center + math.fsum(level_sums))
        if lev >= _MIN_LEVEL:
            best = min(best, abs(value - prev))
            if best <= _TAU_TOL:
                return math.sqrt(2.0) * 0.5 * value
        prev = value
    raise NonConvergence(
        f"tau_{k} refinement stalled at error {best:.3e} for p={p}, mu={mu}"
    )


def fourier_profile(p: float, mu: float, K_max: int = 201) -> FourierProfile:
    """All coefficients tau_1..tau_K_max plus a bound on the remaining tail.

    The tail bound covers odd indices above K_max using the profile's own
    K_p value as the sup.
    """
    _validate_pmu(p, mu)
    if not isinstance(K_max, (int, np.integer)) or K_max < 1:
        raise DomainError(f"K_max must be a positive integer, got {K_max}")
    coeffs = tuple(tau_k(p, mu, k) for k in range(1, K_max + 1))
    start = K_max + 1 if K_max % 2 == 0 else K_max + 2
    tail = tau_tail_bound(p, kp(p, mu), start) if start >= 3 else math.inf
    return FourierProfile(
        p=p, mu=mu, coefficients=coeffs, K_max=int(K_max), tail_bound=tail
    )


def tau1_margin(p: float, mu: float) -> float:
    """tau_1 minus its universal floor 4 sqrt(2)/pi^2."""
    return tau_k(p, mu, 1) - _TAU1_FLOOR


def _sn_l2(p: float, mu: float) -> float:
    """integral_0^1 sn_p(2 K_p x, mu)^2 dx on the shared node cache.

    Split at x = 1/2 like tau_k, since the integrand is only C^1 there
    for p > 2.
    """
    _validate_pmu(p, mu)
    prof = _profile(float(p), float(mu))
    center = 0.25 * math.pi * (prof.snA_c**2 + prof.snB_c**2)
    level_sums: list[float] = []
    prev = math.nan
    best = math.inf
    for lev in range(_CAP_LEVEL + 1):
        L, ar, al, br, bl = prof.level(lev)
        w = L.picosh * L.s * L.oms
        level_sums.append(
            math.fsum(w * (ar**2 + br**2)) + math.fsum(w * (al**2 + bl**2))
        )
        h = _H0 / 2.0**lev
        value = h * (center + math.fsum(level_sums))
        if lev >= _MIN_LEVEL:
            best = min(best, abs(value - prev))
            if best <= 1e-12:
                return 0.5 * value
        prev = value
    raise NonConvergence(
        f"profile L2 refinement stalled at error {best:.3e} for p={p}, mu={mu}"
    )


def tau_tail_bound(p: float, sup_kp: float, K: int) -> float:
    """Bound on sum of sup|tau_k| over odd k >= K.

    Uses |tau_k| <= 4 sqrt(2) sup_kp / (pi^2 k^2) together with the
    majorant T(K) = 1/(2(K-2)) for sum of k^-2 over odd k >= K.  The
    majorant holds for odd K >= 3: by convexity of t^-2, each term
    (K + 2j)^-2 is below the average of t^-2 over [K+2j-1, K+2j+1], so
    the sum is below (1/2) int_{K-1}^inf t^-2 dt = 1/(2(K-2)) with a full
    unit of slack in the lower limit.
    """
    if not (p > 1.0) or not math.isfinite(p):
        raise DomainError(f"p must be > 1, got {p}")
    if not isinstance(K, (int, np.integer)) or K < 3 or K % 2 == 0:
        raise DomainError(f"K must be an odd integer >= 3, got {K}")
    if not (sup_kp > 0.0) or not math.isfinite(sup_kp):
        raise DomainError(f"sup_kp must be positive and finite, got {sup_kp}")
    return 4.0 * math.sqrt(2.0) * sup_kp / math.pi**2 / (2.0 * (K - 2.0))


def rho_coeff(q: float, j: int) -> float:
    """Coefficient ratio rho_j(q) = (1-q) q^j / (1 - q^(2j+1)).

    Equals tau_(2j+1)/tau_1 for the p = 2 profile whose modulus has nome
    q; rho_0 is identically 1.
    """
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not isinstance(j, (int, np.integer)) or j < 0:
        raise DomainError(f"j must be a nonnegative integer, got {j}")
    return (1.0 - q) * q**j / (1.0 - q ** (2 * j + 1))


def g_eval(q: float, x: float, terms: int = 200) -> float:
    """Partial sum of (1-q) sum_j q^j/(1-q^(2j+1)) sqrt(2) sin((2j+1) pi x).

    The truncation error is bounded by :func:`g_tail_bound` for the same
    (q, terms).
    """
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not isinstance(terms, (int, np.integer)) or terms < 1:
        raise DomainError(f"terms must be a positive integer, got {terms}")
    js = np.arange(terms)
    coeff = q**js / (1.0 - q ** (2 * js + 1))
    sines = np.sin((2 * js + 1) * math.pi * x)
    return (1.0 - q) * math.sqrt(2.0) * math.fsum(coeff * sines)


def g_tail_bound(q: float, terms: int = 200) -> float:
    """Geometric bound sqrt(2) q^terms / (1 - q^(2 terms + 1)) on the
    truncation error of :func:`g_eval`."""
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not isinstance(terms, (int, np.integer)) or terms < 1:
        raise DomainError(f"terms must be a positive integer, got {terms}")
    return math.sqrt(2.0) * q**terms / (1.0 - q ** (2 * terms + 1))
