"""Airtime of the explicit channel sounding procedure (NDPA, NDP, BRP/report rounds)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError
from .frames import (DEFAULT_FRAMES, DEFAULT_PHY, DEFAULT_TIMING, FrameConstants, PpduKind,
                     TimingConstants, he_duration, legacy_frame_duration)
from .phy import Mcs, PhyProfile
from .scheduler import RU_COUNTS


@dataclass(frozen=True)
class SoundingParams:
    lambda_csi: float = 20.0
    k_groups: int = 1
    n_ang: int = 56
    b_psi: int = 8
    b_phi: int = 8
    n_sg: int = 16

    def __post_init__(self):
        if self.lambda_csi < 0:
            raise ConfigError(f"lambda_csi must be >= 0, got {self.lambda_csi}")
        if self.k_groups < 1:
            raise ConfigError(f"k_groups must be >= 1, got {self.k_groups}")
        if self.n_sg < 1 or self.n_ang < 0 or self.b_psi < 0 or self.b_phi < 0:
            raise ConfigError("invalid CSI quantization parameters")


def breport_len(b: int, p: SoundingParams, phy: PhyProfile = DEFAULT_PHY) -> int:
    """Compressed beamforming report size in bits; partial subcarrier groups round up."""
    groups = math.ceil(Fraction(phy.data_subcarriers(b), p.n_sg))
    return 64 + math.ceil(p.n_ang * Fraction(p.b_psi + p.b_phi, 2) * groups)


@dataclass(frozen=True)
class ReportPlan:
    rounds: int
    reporters_per_round: int
    b_report_ru: int


def plan_reports(n: int, b: int, k_groups: int, per_ru: int, ofdma: bool = True) -> ReportPlan:
    """Split ``n`` reporters into trigger rounds of simultaneous UL MU reports.

    Each round serves at most ``per_ru`` stations per RU on up to ``b/20`` RUs;
    extra rounds are added when ``k_groups`` rounds cannot hold everyone. The
    RU count is the smallest admissible one that fits a round.
    """
    max_ru = b // 20 if ofdma else 1
    rounds = max(k_groups, math.ceil(n / (per_ru * max_ru)))
    group = math.ceil(n / rounds)
    n_ru = min(k for k in RU_COUNTS if k <= max_ru and (k * per_ru >= group or k == max_ru))
    return ReportPlan(rounds, group, b // n_ru)


def t_csi(n: int, b: int, p: SoundingParams, mcs: Mcs, *, per_ru: int = 8, ofdma: bool = True,
          poll_users: int | None = None, phy: PhyProfile = DEFAULT_PHY,
          timing: TimingConstants = DEFAULT_TIMING, fc: FrameConstants = DEFAULT_FRAMES) -> Fraction:
    """Duration of one sounding of ``n`` stations on a ``b`` MHz channel (us).

    Each report round is solicited by a BRP trigger carrying ``poll_users``
    user fields, all ``n`` stations by default; 802.11ac-style sequential
    polling passes 1.
    """
    if n < 1:
        raise ValueError(f"sounding needs at least one station, got n={n}")
    plan = plan_reports(n, b, p.k_groups, per_ru, ofdma)
    sifs = timing.sifs_us
    t_ndpa = legacy_frame_duration(fc.ndpa_len(n), phy, fc)
    t_brp = legacy_frame_duration(fc.brp_trigger_len(n if poll_users is None else poll_users), phy, fc)
    report_bits = fc.l_sf + fc.l_mh + breport_len(b, p, phy) + fc.l_tb
    t_report = he_duration(PpduKind.TB, report_bits,
                           phy.bits_per_symbol(mcs, 1, plan.b_report_ru), phy)
    round_time = sifs + t_brp + sifs + t_report
    return t_ndpa + sifs + phy.t_ndp_us + plan.rounds * round_time + timing.aifs_csi_us


def csi_airtime_factor(lambda_csi: float, t_csi_us: float) -> float:
    """Fraction of airtime left for data when sounding ``lambda_csi`` times a second."""
    if lambda_csi == 0:
        return 1.0
    period_us = 1e6 / lambda_csi
    if t_csi_us >= period_us:
        raise ConfigError(
            f"sounding starves data airtime: T_csi={float(t_csi_us):.1f} us >= "
            f"period {period_us:.1f} us")
    return (period_us - float(t_csi_us)) / period_us
