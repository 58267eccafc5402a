"""AP resource allocation for SU and MU (OFDMA + MU-MIMO) transmissions."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .phy import check_width

# RU counts that split the channel into supported widths
RU_COUNTS = (1, 2, 4, 8)


@dataclass(frozen=True)
class AntennaConfig:
    m_ap: int = 8
    m_sta: int = 4

    def __post_init__(self):
        if self.m_ap < 1 or self.m_sta < 1:
            raise ConfigError(f"antenna counts must be >= 1, got {self.m_ap}/{self.m_sta}")
        if self.m_ap > 8 or self.m_sta > self.m_ap:
            warnings.warn(
                f"antenna config m_ap={self.m_ap}, m_sta={self.m_sta} is outside the "
                "usual 1 <= m_sta <= m_ap <= 8 profile", stacklevel=2)


@dataclass(frozen=True)
class RuAllocation:
    v_u: int
    n_ru: int
    b_ru_mhz: int
    v_m: int
    v_s: int

    @property
    def channel_width_mhz(self) -> int:
        return self.b_ru_mhz * self.n_ru


def allocate_mu(n: int, ant: AntennaConfig, b: int, *, max_mu_mimo: int | None = None,
                ofdma: bool = True) -> RuAllocation:
    """Pick the MU group size and split the channel evenly among the stations.

    With fewer stations than AP antennas every station is served on a single
    full-width RU. Otherwise the group is the largest multiple of the MU-MIMO
    capacity that fits an admissible RU count.

    ``max_mu_mimo`` caps the stations per RU below ``m_ap`` and ``ofdma=False``
    forbids splitting the channel; both are used to emulate 802.11ac.
    """
    if n < 1:
        raise ValueError(f"MU allocation needs at least one station, got n={n}")
    check_width(b)
    per_ru = ant.m_ap if max_mu_mimo is None else min(ant.m_ap, max_mu_mimo)
    if n < per_ru:
        v_m, n_ru = n, 1
    else:
        v_m = per_ru
        max_ru = b // 20 if ofdma else 1
        n_ru = max(k for k in RU_COUNTS if k <= max_ru and per_ru * k <= n)
    v_s = min(ant.m_sta, ant.m_ap // v_m)
    return RuAllocation(v_u=v_m * n_ru, n_ru=n_ru, b_ru_mhz=b // n_ru, v_m=v_m, v_s=v_s)


def su_streams(ant: AntennaConfig) -> int:
    return min(ant.m_sta, ant.m_ap)


def pick_stations(n: int, v_u: int, rng: np.random.Generator) -> frozenset:
    """Uniformly random ``v_u``-subset of station ids ``1..n``."""
    if not 0 <= v_u <= n:
        raise ValueError(f"cannot pick {v_u} stations out of {n}")
    if v_u == n:
        return frozenset(range(1, n + 1))
    return frozenset(int(i) + 1 for i in rng.choice(n, size=v_u, replace=False))
