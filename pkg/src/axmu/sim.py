"""Slotted Monte Carlo simulator of the AP-initiated SU/MU MAC.

Time advances in backoff slots. Every slot, nodes whose counter is zero
transmit and the others decrement by one; a busy slot lasts the exchange (or
collision) duration plus one empty slot. Channel sounding preempts the
channel at the first slot boundary at or after its due time.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .config import Scenario, WlanConfig, derive
from .errors import ConfigError
from .scheduler import pick_stations

SLOT_CLASSES = ("a1", "a2", "a3", "a4", "b1", "c1", "c2", "c3", "c4")
AIRTIME_KEYS = ("empty", "success", "collision", "sounding")


@dataclass(frozen=True)
class SimConfig:
    wlan: WlanConfig = field(default_factory=WlanConfig)
    seed: int = 0
    sim_time_s: float = 10.0
    replications: int = 20
    jobs: int = 1

    def __post_init__(self):
        if self.sim_time_s <= 0:
            raise ConfigError(f"sim_time_s must be positive, got {self.sim_time_s}")
        if self.replications < 1:
            raise ConfigError(f"replications must be >= 1, got {self.replications}")


@dataclass
class SimResult:
    s_d_mean: float
    s_u_mean: float
    s_d_std: float
    s_u_std: float
    event_counts: dict
    airtime_us: dict
    sim_time_us: float
    attempts: dict = field(default_factory=dict)
    s_d_runs: list = field(default_factory=list)
    s_u_runs: list = field(default_factory=list)
    served_frames: np.ndarray | None = None

    @property
    def slots(self) -> int:
        return sum(self.event_counts[k] for k in SLOT_CLASSES)

    @property
    def tau_ap(self) -> float:
        return self.attempts["ap"] / self.slots

    @property
    def tau_sta(self) -> float:
        n = self.attempts["n_sta"]
        return self.attempts["sta"] / (n * self.slots) if n else 0.0

    @property
    def pc_ap(self) -> float:
        return self.attempts["ap_collided"] / max(self.attempts["ap"], 1)

    @property
    def pc_sta(self) -> float:
        return self.attempts["sta_collided"] / max(self.attempts["sta"], 1)


def run(config: SimConfig, seed=None) -> SimResult:
    """One replication of ``config.sim_time_s`` seconds."""
    scen = derive(config.wlan)
    rng = np.random.default_rng(config.seed if seed is None else seed)
    return _simulate(scen, rng, config.sim_time_s * 1e6)


def _simulate(scen: Scenario, rng: np.random.Generator, t_end: float) -> SimResult:
    cfg, cp, d = scen.config, scen.contention, scen.durations
    n, v_u, l_d = cfg.n, scen.v_u, cfg.l_d
    t_e = float(cfg.t_e_us)
    t_su, t_mu_d, t_mu_u = float(d.t_su), float(d.t_mu_d), float(d.t_mu_u)
    t_c_su, t_c_mu = float(d.t_c_su), float(d.t_c_mu)
    bits_su = d.na_su * l_d

    # node 0 is the AP; stations only contend outside AP-only mode
    contenders = 1 if cp.ap_only else n + 1
    cw_min = np.full(contenders, cp.cw_min_sta, dtype=np.int64)
    cw_min[0] = cp.cw_min_ap
    max_stage = np.full(contenders, cp.m_sta_stages, dtype=np.int64)
    max_stage[0] = cp.m_ap_stages
    stage = np.zeros(contenders, dtype=np.int64)
    counter = rng.integers(0, cw_min + 1)

    csi_on = scen.t_csi_us > 0
    t_csi = float(scen.t_csi_us)
    period = 1e6 / cfg.lambda_csi if csi_on else math.inf
    next_csi = 0.0 if csi_on else math.inf

    counts = dict.fromkeys(SLOT_CLASSES, 0)
    counts["sounding"] = 0
    air = dict.fromkeys(AIRTIME_KEYS, 0.0)
    attempts = dict(ap=0, sta=0, ap_collided=0, sta_collided=0, n_sta=0 if cp.ap_only else n)
    served = np.zeros(n + 1, dtype=np.int64)
    dl_bits = ul_bits = 0
    t = 0.0

    while t < t_end:
        if t >= next_csi:
            t += t_csi
            air["sounding"] += t_csi
            counts["sounding"] += 1
            next_csi += period
            continue
        k = int(counter.min())
        if k > 0:
            if next_csi < t + k * t_e:
                k = math.ceil((next_csi - t) / t_e)
            counter -= k
            t += k * t_e
            air["empty"] += k * t_e
            counts["b1"] += k
            continue

        tx = counter == 0
        n_tx = int(tx.sum())
        ap_tx = bool(tx[0])
        if ap_tx:
            u = rng.random()
            if u < cp.alpha:
                kind = "su"
            elif rng.random() < cp.beta:
                kind = "mu_d"
            else:
                kind = "mu_u"
        sta_tx = n_tx - ap_tx
        attempts["ap"] += ap_tx
        attempts["sta"] += sta_tx

        if n_tx == 1:
            if not ap_tx:
                label, busy = "a2", t_su
                ul_bits += bits_su
                served[int(np.flatnonzero(tx)[0])] += d.na_su
            elif kind == "su":
                label, busy = "a1", t_su
                dl_bits += bits_su
            else:
                ids = list(pick_stations(n, v_u, rng))
                if kind == "mu_d":
                    label, busy, na = "a3", t_mu_d, d.na_mu_d
                    dl_bits += v_u * na * l_d
                else:
                    label, busy, na = "a4", t_mu_u, d.na_mu_u
                    ul_bits += v_u * na * l_d
                served[ids] += na
            stage[tx] = 0
            air["success"] += busy + t_e
        else:
            if ap_tx:
                label = {"su": "c1", "mu_d": "c2", "mu_u": "c3"}[kind]
                busy = t_c_su if kind == "su" else t_c_mu
                attempts["ap_collided"] += 1
            else:
                label, busy = "c4", t_c_su
            attempts["sta_collided"] += sta_tx
            stage[tx] = np.minimum(stage[tx] + 1, max_stage[tx])
            air["collision"] += busy + t_e

        counts[label] += 1
        counter -= 1
        counter[tx] = rng.integers(0, (cw_min[tx] << stage[tx]) + 1)
        t += busy + t_e

    s_d, s_u = dl_bits / t, ul_bits / t
    return SimResult(s_d, s_u, 0.0, 0.0, counts, air, t, attempts, [s_d], [s_u], served)


def _run_child(args):
    config, seed = args
    return run(config, seed)


def run_replicated(config: SimConfig) -> SimResult:
    """Independent replications with seeds spawned from ``config.seed``."""
    seeds = np.random.SeedSequence(config.seed).spawn(config.replications)
    jobs = [(config, s) for s in seeds]
    if config.jobs > 1 and config.replications > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            runs = list(pool.map(_run_child, jobs))
    else:
        runs = [_run_child(j) for j in jobs]
    return aggregate(runs)


def aggregate(runs: list[SimResult]) -> SimResult:
    s_d = np.array([r.s_d_mean for r in runs])
    s_u = np.array([r.s_u_mean for r in runs])
    ddof = 1 if len(runs) > 1 else 0
    counts = {k: sum(r.event_counts[k] for r in runs) for k in runs[0].event_counts}
    air = {k: sum(r.airtime_us[k] for r in runs) for k in AIRTIME_KEYS}
    attempts = {k: sum(r.attempts[k] for r in runs) for k in ("ap", "sta", "ap_collided", "sta_collided")}
    attempts["n_sta"] = runs[0].attempts["n_sta"]
    return SimResult(
        s_d_mean=float(s_d.mean()), s_u_mean=float(s_u.mean()),
        s_d_std=float(s_d.std(ddof=ddof)), s_u_std=float(s_u.std(ddof=ddof)),
        event_counts=counts, airtime_us=air,
        sim_time_us=sum(r.sim_time_us for r in runs), attempts=attempts,
        s_d_runs=s_d.tolist(), s_u_runs=s_u.tolist(),
        served_frames=sum(r.served_frames for r in runs),
    )
