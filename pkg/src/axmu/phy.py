"""PHY tables: MCS definitions, data subcarriers, symbol and preamble durations.

Rates are carried as exact ``Fraction`` bits per OFDM symbol; Mb/s values are
only produced by :func:`phy_rate_mbps`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError

WIDTHS_MHZ = (20, 40, 80, 160)

# Data subcarriers per channel width and amendment. The 11ax values reproduce
# the published HE rate table (e.g. 20 MHz MCS0 = 234 * 1/2 / 16 us = 7.3 Mb/s).
SUBCARRIERS = {
    "ax": {20: 234, 40: 468, 80: 980, 160: 1960},
    "ac": {20: 52, 40: 108, 80: 234, 160: 468},
    "a": {20: 48},
}

SYMBOL_US = {"ax": Fraction(16), "ac": Fraction(4), "a": Fraction(4)}


@dataclass(frozen=True)
class Mcs:
    index: int
    y_m: int
    y_c: Fraction
    dcm: bool = False

    @property
    def modulation(self) -> str:
        return _MODULATION[self.y_m]


_MODULATION = {1: "BPSK", 2: "QPSK", 4: "16-QAM", 6: "64-QAM", 8: "256-QAM", 10: "1024-QAM"}

_MCS_ROWS = [
    (0, 1, Fraction(1, 2)),
    (1, 2, Fraction(1, 2)),
    (2, 2, Fraction(3, 4)),
    (3, 4, Fraction(1, 2)),
    (4, 4, Fraction(3, 4)),
    (5, 6, Fraction(2, 3)),
    (6, 6, Fraction(3, 4)),
    (7, 6, Fraction(5, 6)),
    (8, 8, Fraction(3, 4)),
    (9, 8, Fraction(5, 6)),
    (10, 10, Fraction(3, 4)),
    (11, 10, Fraction(5, 6)),
]
# DCM halves the effective coding rate; only these indices allow it
_DCM_ROWS = [
    (0, 1, Fraction(1, 4)),
    (1, 2, Fraction(1, 4)),
    (3, 4, Fraction(1, 4)),
    (4, 4, Fraction(3, 8)),
]

MCS_TABLE = {(i, False): Mcs(i, ym, yc) for i, ym, yc in _MCS_ROWS}
MCS_TABLE.update({(i, True): Mcs(i, ym, yc, dcm=True) for i, ym, yc in _DCM_ROWS})

# Highest MCS index defined per amendment
MAX_MCS = {"ax": 11, "ac": 9, "a": 6}


def get_mcs(index: int, dcm: bool = False) -> Mcs:
    try:
        return MCS_TABLE[(index, dcm)]
    except KeyError:
        raise ConfigError(f"no MCS row for index={index} dcm={dcm}") from None


@dataclass(frozen=True)
class PhyProfile:
    """Symbol clock and preamble durations (microseconds)."""

    channel_width_mhz: int = 160
    sigma_us: Fraction = Fraction(16)
    sigma_legacy_us: Fraction = Fraction(4)
    t_phy_legacy_us: Fraction = Fraction(20)
    t_phy_he_su_us: Fraction = Fraction(164)
    t_phy_he_mu_us: Fraction = Fraction(168)
    t_phy_he_tb_us: Fraction = Fraction(228)
    t_ndp_us: Fraction = Fraction(168)
    r_legacy_bits_per_symbol: int = 24
    amendment: str = "ax"
    subcarriers: dict = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("sigma_us", "sigma_legacy_us", "t_phy_legacy_us", "t_phy_he_su_us",
                     "t_phy_he_mu_us", "t_phy_he_tb_us", "t_ndp_us"):
            value = Fraction(getattr(self, name))
            if value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        if self.r_legacy_bits_per_symbol <= 0:
            raise ConfigError("r_legacy_bits_per_symbol must be positive")
        if self.amendment not in SUBCARRIERS:
            raise ConfigError(f"unknown amendment {self.amendment!r}")
        if self.subcarriers is None:
            object.__setattr__(self, "subcarriers", dict(SUBCARRIERS[self.amendment]))
        check_width(self.channel_width_mhz, self.subcarriers)

    def data_subcarriers(self, width: int) -> int:
        return data_subcarriers(width, self.subcarriers)

    def bits_per_symbol(self, mcs: Mcs, v_s: int, width: int) -> Fraction:
        return bits_per_symbol(mcs, v_s, width, self.subcarriers)


def check_width(width, table=None):
    table = SUBCARRIERS["ax"] if table is None else table
    if width not in table:
        raise ConfigError(
            f"unsupported channel width {width} MHz (supported: {sorted(table)})")


def data_subcarriers(width: int, table: dict | None = None) -> int:
    table = SUBCARRIERS["ax"] if table is None else table
    check_width(width, table)
    return table[width]


def bits_per_symbol(mcs: Mcs, v_s: int, width: int, table: dict | None = None) -> Fraction:
    """Exact bits carried by one OFDM symbol: ``V_s * Y_m * Y_c * Y_sc(width)``."""
    if v_s < 1:
        raise ValueError(f"need at least one spatial stream, got {v_s}")
    return v_s * mcs.y_m * mcs.y_c * data_subcarriers(width, table)


def phy_rate_mbps(mcs: Mcs, v_s: int, width: int, amendment: str = "ax") -> float:
    rate = bits_per_symbol(mcs, v_s, width, SUBCARRIERS[amendment])
    return float(rate / SYMBOL_US[amendment])
