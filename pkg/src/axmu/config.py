"""WLAN configuration shared by the analytical model and the simulator.

Config files are flat ``key = value`` text; ``#`` starts a comment. Keys are
exactly the :class:`WlanConfig` field names and unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError
from .frames import ExchangeDurations, FrameConstants, TimingConstants, exchange_durations
from .model import ContentionParams
from .phy import MAX_MCS, SUBCARRIERS, Mcs, PhyProfile, get_mcs
from .scheduler import AntennaConfig, RuAllocation, allocate_mu, su_streams
from .sounding import SoundingParams, csi_airtime_factor, t_csi

AMENDMENTS = ("ax", "ac")

# 802.11ac limits used in comparison runs
AC_MAX_AMPDU = 64
AC_MAX_MU_USERS = 4


@dataclass(frozen=True)
class WlanConfig:
    # traffic and aggregation
    l_d: int = 12000
    max_ampdu: int = 256
    max_ppdu_us: float = 5484.0
    # EDCA, best effort
    cw_min_ap: int = 15
    cw_min_sta: int = 15
    cw_max_ap: int = 1023
    cw_max_sta: int = 1023
    m_ap_stages: int = -1  # -1: floor(log2(cw_max / cw_min))
    m_sta_stages: int = -1
    aifs_us: float = 34.0
    aifs_csi_us: float = 25.0
    sifs_us: float = 16.0
    t_e_us: float = 9.0
    # antennas, channel, PHY
    m_ap: int = 8
    m_sta: int = 4
    b: int = 160
    sigma_us: float = 16.0
    sigma_legacy_us: float = 4.0
    mcs: int = 6
    dcm: bool = False
    # channel sounding
    lambda_csi: float = 20.0
    k_groups: int = 1
    n_ang: int = 56
    b_psi: int = 8
    b_phi: int = 8
    n_sg: int = 16
    # scenario
    n: int = 16
    alpha: float = 0.2
    beta: float = 0.8
    amendment: str = "ax"
    ap_only: bool = False

    def __post_init__(self):
        if self.amendment not in AMENDMENTS:
            raise ConfigError(f"amendment must be one of {AMENDMENTS}, got {self.amendment!r}")
        if self.n < 0:
            raise ConfigError(f"n must be >= 0, got {self.n}")
        if self.max_ampdu < 1:
            raise ConfigError(f"max_ampdu must be >= 1, got {self.max_ampdu}")
        if self.l_d < 1:
            raise ConfigError(f"l_d must be >= 1, got {self.l_d}")
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise ConfigError(f"alpha and beta must lie in [0, 1], got {self.alpha}, {self.beta}")
        if self.b not in SUBCARRIERS[self.amendment]:
            raise ConfigError(f"unsupported channel width {self.b} MHz")
        if self.mcs > MAX_MCS[self.amendment]:
            raise ConfigError(f"MCS {self.mcs} not defined for 802.11{self.amendment}")
        get_mcs(self.mcs, self.dcm)
        if min(self.cw_min_ap, self.cw_min_sta) < 0 or min(self.cw_max_ap, self.cw_max_sta) < 0:
            raise ConfigError("contention windows must be >= 0")
        for name in ("max_ppdu_us", "aifs_us", "aifs_csi_us", "sifs_us", "t_e_us",
                     "sigma_us", "sigma_legacy_us"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.amendment == "ac":
            if self.beta != 1:
                raise ConfigError("802.11ac has no UL MU transmissions: beta must be 1")
            if self.max_ampdu > AC_MAX_AMPDU:
                raise ConfigError(f"802.11ac allows at most {AC_MAX_AMPDU} MPDUs per A-MPDU")

    # derived pieces -------------------------------------------------------

    @property
    def stages_ap(self) -> int:
        return self.m_ap_stages if self.m_ap_stages >= 0 else backoff_stages(self.cw_min_ap, self.cw_max_ap)

    @property
    def stages_sta(self) -> int:
        return self.m_sta_stages if self.m_sta_stages >= 0 else backoff_stages(self.cw_min_sta, self.cw_max_sta)

    def phy(self) -> PhyProfile:
        return PhyProfile(channel_width_mhz=self.b, sigma_us=Fraction(str(self.sigma_us)),
                          sigma_legacy_us=Fraction(str(self.sigma_legacy_us)),
                          amendment=self.amendment)

    def timing(self) -> TimingConstants:
        return TimingConstants(sifs_us=Fraction(str(self.sifs_us)), aifs_us=Fraction(str(self.aifs_us)),
                               aifs_csi_us=Fraction(str(self.aifs_csi_us)),
                               t_empty_slot_us=Fraction(str(self.t_e_us)),
                               max_ppdu_us=Fraction(str(self.max_ppdu_us)))

    def frames(self) -> FrameConstants:
        return FrameConstants(l_d=self.l_d)

    def antennas(self) -> AntennaConfig:
        return AntennaConfig(self.m_ap, self.m_sta)

    def mcs_row(self) -> Mcs:
        return get_mcs(self.mcs, self.dcm)

    def sounding(self) -> SoundingParams:
        return SoundingParams(self.lambda_csi, self.k_groups, self.n_ang, self.b_psi,
                              self.b_phi, self.n_sg)

    def replace(self, **changes) -> "WlanConfig":
        unknown = set(changes) - FIELD_NAMES
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}; valid keys: {sorted(FIELD_NAMES)}")
        return dataclasses.replace(self, **changes)


FIELD_NAMES = frozenset(f.name for f in fields(WlanConfig))
_FIELD_TYPES = {f.name: type(f.default) for f in fields(WlanConfig)}


def backoff_stages(cw_min: int, cw_max: int) -> int:
    if cw_min <= 0 or cw_max <= cw_min:
        return 0
    return int(math.floor(math.log2(cw_max / cw_min) + 1e-12))


def ac_profile(**overrides) -> WlanConfig:
    """802.11ac comparison profile: 4 us symbols, 64-frame A-MPDUs, DL-only MU."""
    base = dict(amendment="ac", beta=1.0, max_ampdu=AC_MAX_AMPDU, sigma_us=4.0)
    base.update(overrides)
    return WlanConfig(**base)


# parsing / serialization ----------------------------------------------------

def parse_value(key: str, text: str):
    if key not in FIELD_NAMES:
        raise ConfigError(f"unknown config key {key!r}; valid keys: {', '.join(sorted(FIELD_NAMES))}")
    kind = _FIELD_TYPES[key]
    text = text.strip()
    try:
        if kind is bool:
            lowered = text.lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if kind is int:
            value = float(text)
            if not value.is_integer():
                raise ValueError(text)
            return int(value)
        if kind is float:
            return float(text)
        return text
    except ValueError:
        raise ConfigError(f"bad value for {key}: {text!r}") from None


def parse_overrides(pairs) -> dict:
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ConfigError(f"override must look like key=value, got {pair!r}")
        out[key.strip()] = parse_value(key.strip(), value)
    return out


def loads(text: str) -> WlanConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key = key.strip()
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = parse_value(key, value)
    return WlanConfig(**values)


def dumps(config: WlanConfig) -> str:
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def load(path) -> WlanConfig:
    try:
        return loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


# derived scenario -----------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    """Everything both engines need, derived once from a :class:`WlanConfig`."""

    config: WlanConfig
    contention: ContentionParams
    allocation: RuAllocation | None
    durations: ExchangeDurations
    v_s_su: int
    t_csi_us: Fraction
    csi_factor: float

    @property
    def v_u(self) -> int:
        return self.allocation.v_u if self.allocation else 0


def derive(config: WlanConfig) -> Scenario:
    ant = config.antennas()
    phy = config.phy()
    mcs = config.mcs_row()
    ac = config.amendment == "ac"
    mu_kwargs = dict(max_mu_mimo=AC_MAX_MU_USERS, ofdma=False) if ac else {}

    alloc = allocate_mu(config.n, ant, config.b, **mu_kwargs) if config.n else None
    # with no stations the AP only sends SU frames; MU durations are never weighted
    alpha = config.alpha if config.n else 1.0
    v_s_su = su_streams(ant)
    durs = exchange_durations(alloc or allocate_mu(1, ant, config.b), config.max_ampdu, mcs,
                              v_s_su=v_s_su, b=config.b, phy=phy, timing=config.timing(),
                              fc=config.frames())

    if config.n and config.lambda_csi > 0:
        per_ru = 1 if ac else ant.m_ap
        t = t_csi(config.n, config.b, config.sounding(), mcs, per_ru=per_ru, ofdma=not ac,
                  poll_users=1 if ac else None, phy=phy, timing=config.timing(), fc=config.frames())
        factor = csi_airtime_factor(config.lambda_csi, t)
    else:
        t, factor = Fraction(0), 1.0

    contention = ContentionParams(
        n=config.n, cw_min_ap=config.cw_min_ap, cw_min_sta=config.cw_min_sta,
        m_ap_stages=config.stages_ap, m_sta_stages=config.stages_sta,
        alpha=alpha, beta=config.beta, ap_only=config.ap_only)
    return Scenario(config, contention, alloc, durs, v_s_su, t, factor)
