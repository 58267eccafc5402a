"""Frame lengths and airtime of control frames, data PPDUs and whole exchanges.

All durations are exact ``Fraction`` microseconds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .phy import Mcs, PhyProfile
from .scheduler import RuAllocation


class PpduKind(enum.Enum):
    SU = "su"
    MU_DL = "mu_dl"
    TB = "tb"


@dataclass(frozen=True)
class FrameConstants:
    l_sf: int = 16
    l_md: int = 32
    l_mh: int = 320
    l_tb: int = 18
    l_rts: int = 160
    l_cts: int = 112
    l_back: int = 256
    l_d: int = 12000

    def __post_init__(self):
        for name, value in vars(self).items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")

    @staticmethod
    def mu_rts_len(v_u: int) -> int:
        return 224 + 40 * v_u

    @staticmethod
    def basic_trigger_len(v_u: int) -> int:
        return 224 + 48 * v_u

    @staticmethod
    def brp_trigger_len(v_u: int) -> int:
        return 224 + 48 * v_u

    @staticmethod
    def ms_back_len(v_u: int) -> int:
        return 176 + 288 * v_u

    @staticmethod
    def ndpa_len(n: int) -> int:
        return 168 + 32 * n


@dataclass(frozen=True)
class TimingConstants:
    sifs_us: Fraction = Fraction(16)
    aifs_us: Fraction = Fraction(34)
    aifs_csi_us: Fraction = Fraction(25)
    t_empty_slot_us: Fraction = Fraction(9)
    max_ppdu_us: Fraction = Fraction(5484)

    def __post_init__(self):
        for name in ("sifs_us", "aifs_us", "aifs_csi_us", "t_empty_slot_us", "max_ppdu_us"):
            value = Fraction(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)


DEFAULT_PHY = PhyProfile()
DEFAULT_FRAMES = FrameConstants()
DEFAULT_TIMING = TimingConstants()


def legacy_frame_duration(len_bits: int, phy: PhyProfile = DEFAULT_PHY,
                          fc: FrameConstants = DEFAULT_FRAMES) -> Fraction:
    """Airtime of a control frame sent in non-HT duplicate mode at 6 Mb/s."""
    if len_bits < 0:
        raise ValueError(f"negative frame length {len_bits}")
    n_sym = math.ceil(Fraction(fc.l_sf + len_bits + fc.l_tb, phy.r_legacy_bits_per_symbol))
    return phy.t_phy_legacy_us + n_sym * phy.sigma_legacy_us


def ampdu_bits(n_a: int, fc: FrameConstants = DEFAULT_FRAMES) -> int:
    """PSDU bits of an A-MPDU with ``n_a`` frames; a lone MPDU has no delimiter."""
    if n_a < 1:
        raise ValueError(f"an A-MPDU carries at least one frame, got n_a={n_a}")
    if n_a == 1:
        body = fc.l_mh + fc.l_d
    else:
        body = n_a * (fc.l_md + fc.l_mh + fc.l_d)
    return fc.l_sf + body + fc.l_tb


def preamble(kind: PpduKind, phy: PhyProfile = DEFAULT_PHY) -> Fraction:
    return {
        PpduKind.SU: phy.t_phy_he_su_us,
        PpduKind.MU_DL: phy.t_phy_he_mu_us,
        PpduKind.TB: phy.t_phy_he_tb_us,
    }[kind]


def he_duration(kind: PpduKind, payload_bits: int, rate: Fraction,
                phy: PhyProfile = DEFAULT_PHY) -> Fraction:
    return preamble(kind, phy) + math.ceil(payload_bits / Fraction(rate)) * phy.sigma_us


def data_ppdu_duration(kind: PpduKind, n_a: int, v_s: int, b_ru: int, mcs: Mcs,
                       phy: PhyProfile = DEFAULT_PHY,
                       fc: FrameConstants = DEFAULT_FRAMES) -> Fraction:
    return he_duration(kind, ampdu_bits(n_a, fc), phy.bits_per_symbol(mcs, v_s, b_ru), phy)


def tb_back_duration(v_s: int, b_ru: int, mcs: Mcs, phy: PhyProfile = DEFAULT_PHY,
                     fc: FrameConstants = DEFAULT_FRAMES) -> Fraction:
    """Block ACK returned in a trigger-based PPDU (not used by the default exchanges)."""
    bits = fc.l_sf + fc.l_back + fc.l_tb
    return he_duration(PpduKind.TB, bits, phy.bits_per_symbol(mcs, v_s, b_ru), phy)


class Aggregation(NamedTuple):
    n_a: int
    over_limit: bool


def max_aggregation(kind: PpduKind, v_s: int, b_ru: int, mcs: Mcs, n_a_limit: int,
                    phy: PhyProfile = DEFAULT_PHY, fc: FrameConstants = DEFAULT_FRAMES,
                    timing: TimingConstants = DEFAULT_TIMING) -> Aggregation:
    """Largest A-MPDU size not exceeding ``n_a_limit`` that fits the PPDU limit.

    Never returns fewer than one frame; ``over_limit`` is set when even a
    single frame exceeds the maximum PPDU duration.
    """
    if n_a_limit < 1:
        raise ValueError(f"n_a_limit must be >= 1, got {n_a_limit}")
    rate = phy.bits_per_symbol(mcs, v_s, b_ru)
    n_sym = math.floor((timing.max_ppdu_us - preamble(kind, phy)) / phy.sigma_us)
    budget = n_sym * rate
    n_a = math.floor((budget - fc.l_sf - fc.l_tb) / (fc.l_md + fc.l_mh + fc.l_d))
    n_a = max(1, min(n_a, n_a_limit))

    def fits(k):
        return data_ppdu_duration(kind, k, v_s, b_ru, mcs, phy, fc) <= timing.max_ppdu_us

    while n_a > 1 and not fits(n_a):
        n_a -= 1
    return Aggregation(n_a, not fits(n_a))


@dataclass(frozen=True)
class ExchangeDurations:
    t_su: Fraction
    t_mu_d: Fraction
    t_mu_u: Fraction
    t_c_su: Fraction
    t_c_mu: Fraction
    na_su: int
    na_mu_d: int
    na_mu_u: int
    over_limit: bool = False


def exchange_durations(alloc: RuAllocation, n_a: int, mcs: Mcs, *, v_s_su: int,
                       b: int, phy: PhyProfile = DEFAULT_PHY,
                       timing: TimingConstants = DEFAULT_TIMING,
                       fc: FrameConstants = DEFAULT_FRAMES,
                       cap_ppdu: bool = True) -> ExchangeDurations:
    """Busy time of every successful exchange and collision type.

    ``n_a`` is the A-MPDU size limit; with ``cap_ppdu`` each exchange kind uses
    the largest aggregation that fits the maximum PPDU duration.
    """
    if n_a < 1:
        raise ValueError(f"n_a must be >= 1, got {n_a}")

    def agg(kind, v_s, width):
        if cap_ppdu:
            return max_aggregation(kind, v_s, width, mcs, n_a, phy, fc, timing)
        return Aggregation(n_a, False)

    su = agg(PpduKind.SU, v_s_su, b)
    mu_d = agg(PpduKind.MU_DL, alloc.v_s, alloc.b_ru_mhz)
    mu_u = agg(PpduKind.TB, alloc.v_s, alloc.b_ru_mhz)

    sifs, aifs = timing.sifs_us, timing.aifs_us
    t_rts = legacy_frame_duration(fc.l_rts, phy, fc)
    t_cts = legacy_frame_duration(fc.l_cts, phy, fc)
    t_back = legacy_frame_duration(fc.l_back, phy, fc)
    t_mu_rts = legacy_frame_duration(fc.mu_rts_len(alloc.v_u), phy, fc)
    t_trigger = legacy_frame_duration(fc.basic_trigger_len(alloc.v_u), phy, fc)
    t_ms_back = legacy_frame_duration(fc.ms_back_len(alloc.v_u), phy, fc)

    d_su = data_ppdu_duration(PpduKind.SU, su.n_a, v_s_su, b, mcs, phy, fc)
    d_mu_d = data_ppdu_duration(PpduKind.MU_DL, mu_d.n_a, alloc.v_s, alloc.b_ru_mhz, mcs, phy, fc)
    d_mu_u = data_ppdu_duration(PpduKind.TB, mu_u.n_a, alloc.v_s, alloc.b_ru_mhz, mcs, phy, fc)

    t_su = t_rts + sifs + t_cts + sifs + d_su + sifs + t_back + aifs
    t_mu_d = t_mu_rts + sifs + t_cts + sifs + d_mu_d + sifs + t_back + aifs
    t_mu_u = (t_mu_rts + sifs + t_cts + sifs + t_trigger + sifs
              + d_mu_u + sifs + t_ms_back + aifs)
    # ACK timeout = CTS + AIFS
    t_c_su = t_rts + sifs + t_cts + aifs
    t_c_mu = t_mu_rts + sifs + t_cts + aifs

    return ExchangeDurations(
        t_su=t_su, t_mu_d=t_mu_d, t_mu_u=t_mu_u, t_c_su=t_c_su, t_c_mu=t_c_mu,
        na_su=su.n_a, na_mu_d=mu_d.n_a, na_mu_u=mu_u.n_a,
        over_limit=su.over_limit or mu_d.over_limit or mu_u.over_limit,
    )
