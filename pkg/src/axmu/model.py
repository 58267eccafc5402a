"""Saturation throughput model for an AP plus ``n`` stations.

The AP and the stations are two classes of EDCA contenders whose per-slot
transmission probabilities are found by a fixed point. Slot outcomes are then
split into the four success types (DL-SU, UL-SU, DL-MU, UL-MU), the empty
slot, and four collision types, and renewal-reward gives DL/UL throughput.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import ConfigError, ConvergenceError, NumericalError
from .frames import ExchangeDurations

log = logging.getLogger(__name__)

# Half-width around p_c = 1/2 where the closed form loses precision to cancellation
_SINGULAR_BAND = 1e-4


@dataclass(frozen=True)
class ContentionParams:
    n: int = 16
    cw_min_ap: int = 15
    cw_min_sta: int = 15
    m_ap_stages: int = 6
    m_sta_stages: int = 6
    alpha: float = 0.2
    beta: float = 0.8
    ap_only: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ConfigError(f"station count must be >= 0, got {self.n}")
        if min(self.cw_min_ap, self.cw_min_sta) < 0:
            raise ConfigError("CW_min must be >= 0")
        if min(self.m_ap_stages, self.m_sta_stages) < 0:
            raise ConfigError("backoff stage counts must be >= 0")
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise ConfigError(f"alpha and beta must lie in [0, 1], got {self.alpha}, {self.beta}")


@dataclass(frozen=True)
class FixedPointSolution:
    tau_ap: float
    tau_sta: float
    pc_ap: float
    pc_sta: float
    iterations: int = 0
    residual: float = 0.0


@dataclass(frozen=True)
class SlotDistribution:
    a1: float
    a2: float
    a3: float
    a4: float
    b1: float
    c1: float
    c2: float
    c3: float
    c4: float

    def as_tuple(self):
        return (self.a1, self.a2, self.a3, self.a4, self.b1, self.c1, self.c2, self.c3, self.c4)

    def total(self) -> float:
        return math.fsum(self.as_tuple())


@dataclass(frozen=True)
class ThroughputReport:
    s_d: float
    s_u: float
    e_d_d: float
    e_d_u: float
    slot_dist: SlotDistribution
    fixed_point: FixedPointSolution | None
    csi_factor: float
    durations: ExchangeDurations | None = None
    v_u: int = 0


def expected_backoff_slots(cw_min: float, m: int, p_c: float) -> float:
    """Mean number of backoff slots drawn per attempt before a success.

    Stage ``i`` draws a mean of ``2**i * cw_min / 2`` slots; stages beyond
    ``m`` stay at stage ``m`` with unlimited retries.
    """
    if not 0 <= p_c <= 1:
        raise ValueError(f"collision probability must lie in [0, 1], got {p_c}")
    if cw_min == 0:
        return 0.0
    if abs(p_c - 0.5) < _SINGULAR_BAND:
        # finite-sum form, exact everywhere and free of the 0/0 at 1/2
        head = (1 - p_c) * math.fsum((2 * p_c) ** i for i in range(m + 1))
        tail = 2 ** m * p_c ** (m + 1)
        return (head + tail) * cw_min / 2
    return (1 - p_c - p_c * (2 * p_c) ** m) / (1 - 2 * p_c) * cw_min / 2


def _tau(cw_min, m, p_c):
    return 1.0 / (expected_backoff_slots(cw_min, m, p_c) + 1.0)


def _collision_probs(params, tau_ap, tau_sta):
    pc_ap = 1 - (1 - tau_sta) ** params.n
    pc_sta = 1 - (1 - tau_ap) * (1 - tau_sta) ** (params.n - 1) if params.n else 0.0
    return pc_ap, pc_sta


def _solution(params, tau_sta, iterations, residual):
    pc_ap, _ = _collision_probs(params, 0.0, tau_sta)
    tau_ap = _tau(params.cw_min_ap, params.m_ap_stages, pc_ap)
    _, pc_sta = _collision_probs(params, tau_ap, tau_sta)
    return FixedPointSolution(tau_ap, tau_sta, pc_ap, pc_sta, iterations, residual)


def _bisect_reduced(params, tol, max_iter):
    """Solve the system as one equation in ``tau_sta`` by bisection."""

    def excess(tau_sta):
        pc_ap = 1 - (1 - tau_sta) ** params.n
        tau_ap = _tau(params.cw_min_ap, params.m_ap_stages, pc_ap)
        pc_sta = 1 - (1 - tau_ap) * (1 - tau_sta) ** (params.n - 1)
        return _tau(params.cw_min_sta, params.m_sta_stages, pc_sta) - tau_sta

    lo, hi = 0.0, 1.0 - 1e-12
    if excess(hi) >= 0:
        raise ConvergenceError("reduced system has no interior root", excess(hi), hi)
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return _solution(params, 0.5 * (lo + hi), it, hi - lo)


def solve_fixed_point(params: ContentionParams, tol: float = 1e-10,
                      max_iter: int = 10_000, damping: float = 0.5) -> FixedPointSolution:
    """Damped fixed-point iteration on (tau_ap, tau_sta).

    Falls back to bisection on the reduced scalar equation when the damped
    iteration stalls.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if params.n == 0 or params.ap_only:
        return _solution(params, 0.0, 0, 0.0)

    tau_ap = _tau(params.cw_min_ap, params.m_ap_stages, 0.0)
    tau_sta = _tau(params.cw_min_sta, params.m_sta_stages, 0.0)
    checkpoint = math.inf
    residual = math.inf
    for it in range(1, max_iter + 1):
        pc_ap, pc_sta = _collision_probs(params, tau_ap, tau_sta)
        new_ap = _tau(params.cw_min_ap, params.m_ap_stages, pc_ap)
        new_sta = _tau(params.cw_min_sta, params.m_sta_stages, pc_sta)
        residual = max(abs(new_ap - tau_ap), abs(new_sta - tau_sta))
        if residual < tol:
            return _solution(params, new_sta, it, residual)
        tau_ap += damping * (new_ap - tau_ap)
        tau_sta += damping * (new_sta - tau_sta)
        if it % 100 == 0:
            if residual > 0.9 * checkpoint:
                log.debug("damped iteration stalled at %d (residual %.3e); bisecting", it, residual)
                return _bisect_reduced(params, tol, max_iter)
            checkpoint = residual
    raise ConvergenceError("fixed point did not converge", residual, (tau_ap, tau_sta))


def slot_distribution(fp: FixedPointSolution, params: ContentionParams) -> SlotDistribution:
    ta, ts, n = fp.tau_ap, fp.tau_sta, params.n
    alpha, beta = params.alpha, params.beta
    none_sta = (1 - ts) ** n
    some_sta = 1 - none_sta
    values = dict(
        a1=alpha * ta * none_sta,
        a2=n * ts * (1 - ta) * (1 - ts) ** (n - 1) if n else 0.0,
        a3=(1 - alpha) * beta * ta * none_sta,
        a4=(1 - alpha) * (1 - beta) * ta * none_sta,
        b1=(1 - ta) * none_sta,
        c1=alpha * ta * some_sta,
        c2=(1 - alpha) * beta * ta * some_sta,
        c3=(1 - alpha) * (1 - beta) * ta * some_sta,
    )
    values["c4"] = 1 - math.fsum(values.values())
    for name, value in values.items():
        if not -1e-12 <= value <= 1 + 1e-12:
            raise NumericalError(f"slot probability {name}={value!r} outside [0, 1]")
        values[name] = min(max(value, 0.0), 1.0)
    return SlotDistribution(**values)


def throughput(dist: SlotDistribution, durs: ExchangeDurations, t_e: float, l_d: int,
               v_u: int, csi_factor: float = 1.0,
               fixed_point: FixedPointSolution | None = None) -> ThroughputReport:
    """DL and UL throughput in Mb/s (bits per microsecond).

    Every success and collision slot also carries one empty slot ``t_e``. The
    aggregation sizes per exchange kind are taken from ``durs``.
    """
    if not 0 < csi_factor <= 1:
        raise ValueError(f"csi_factor must lie in (0, 1], got {csi_factor}")
    t_e = float(t_e)
    t_su, t_mu_d, t_mu_u = float(durs.t_su), float(durs.t_mu_d), float(durs.t_mu_u)
    t_c_su, t_c_mu = float(durs.t_c_su), float(durs.t_c_mu)
    if min(t_su, t_mu_d, t_mu_u, t_c_su, t_c_mu, t_e) <= 0:
        raise ConfigError("exchange durations must be positive")
    mean_slot = math.fsum([
        dist.b1 * t_e,
        dist.a1 * (t_su + t_e), dist.a2 * (t_su + t_e),
        dist.a3 * (t_mu_d + t_e), dist.a4 * (t_mu_u + t_e),
        dist.c1 * (t_c_su + t_e), dist.c4 * (t_c_su + t_e),
        dist.c2 * (t_c_mu + t_e), dist.c3 * (t_c_mu + t_e),
    ])
    if mean_slot <= 0:
        raise ConfigError("degenerate configuration: zero mean slot duration")
    dl_bits = dist.a1 * durs.na_su * l_d + dist.a3 * v_u * durs.na_mu_d * l_d
    ul_bits = dist.a2 * durs.na_su * l_d + dist.a4 * v_u * durs.na_mu_u * l_d
    s_d = csi_factor * dl_bits / mean_slot
    s_u = csi_factor * ul_bits / mean_slot
    return ThroughputReport(
        s_d=s_d, s_u=s_u,
        e_d_d=l_d / s_d if s_d > 0 else math.inf,
        e_d_u=l_d / s_u if s_u > 0 else math.inf,
        slot_dist=dist, fixed_point=fixed_point, csi_factor=csi_factor,
        durations=durs, v_u=v_u,
    )
