import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from axmu.errors import ConfigError
from axmu.scheduler import RU_COUNTS, AntennaConfig, allocate_mu, pick_stations, su_streams

WIDTHS = (20, 40, 80, 160)


def quiet_antennas(m_ap, m_sta):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return AntennaConfig(m_ap, m_sta)


def test_golden_case():
    a = allocate_mu(40, AntennaConfig(6, 4), 160)
    assert (a.v_u, a.n_ru, a.b_ru_mhz, a.v_m, a.v_s) == (24, 4, 40, 6, 1)


@pytest.mark.parametrize("n,expected", [
    (1, (1, 1, 160, 1, 4)),
    (3, (3, 1, 160, 3, 2)),
    (8, (8, 1, 160, 8, 1)),
    (16, (16, 2, 80, 8, 1)),
    (64, (64, 8, 20, 8, 1)),
    (200, (64, 8, 20, 8, 1)),
])
def test_default_antennas(n, expected):
    a = allocate_mu(n, AntennaConfig(), 160)
    assert (a.v_u, a.n_ru, a.b_ru_mhz, a.v_m, a.v_s) == expected


@given(n=st.integers(1, 256), m_ap=st.integers(1, 8), m_sta=st.integers(1, 4),
       b=st.sampled_from(WIDTHS))
def test_allocation_invariants(n, m_ap, m_sta, b):
    a = allocate_mu(n, quiet_antennas(m_ap, m_sta), b)
    assert 1 <= a.v_u <= n
    assert a.v_u == a.v_m * a.n_ru
    assert a.v_m <= m_ap
    assert a.n_ru in RU_COUNTS and a.n_ru <= b // 20
    assert a.b_ru_mhz * a.n_ru == b and a.b_ru_mhz >= 20
    assert 1 <= a.v_s <= m_sta and a.v_m * a.v_s <= m_ap
    if n >= m_ap:
        # no admissible RU count would serve more full MU-MIMO groups
        assert a.v_m == m_ap
        better = [k for k in RU_COUNTS if a.n_ru < k <= b // 20 and k * m_ap <= n]
        assert not better
    else:
        assert (a.v_u, a.n_ru) == (n, 1)


def test_no_ofdma_and_user_cap():
    a = allocate_mu(64, AntennaConfig(), 160, max_mu_mimo=4, ofdma=False)
    assert (a.v_u, a.n_ru, a.b_ru_mhz, a.v_m, a.v_s) == (4, 1, 160, 4, 2)


def test_errors_and_warnings():
    with pytest.raises(ValueError):
        allocate_mu(0, AntennaConfig(), 160)
    with pytest.raises(ConfigError):
        allocate_mu(4, AntennaConfig(), 60)
    with pytest.raises(ConfigError):
        AntennaConfig(0, 1)
    with pytest.warns(UserWarning):
        AntennaConfig(2, 4)
    assert su_streams(AntennaConfig()) == 4
    assert su_streams(quiet_antennas(2, 4)) == 2


@given(n=st.integers(1, 64), data=st.data())
def test_pick_stations(n, data):
    v_u = data.draw(st.integers(0, n))
    ids = pick_stations(n, v_u, np.random.default_rng(data.draw(st.integers(0, 1000))))
    assert len(ids) == v_u and ids <= set(range(1, n + 1))


def test_pick_stations_uniform():
    rng = np.random.default_rng(1)
    hits = np.zeros(9)
    for _ in range(4000):
        for i in pick_stations(8, 2, rng):
            hits[i] += 1
    assert hits[0] == 0
    assert np.allclose(hits[1:] / 4000, 0.25, atol=0.03)
    with pytest.raises(ValueError):
        pick_stations(3, 4, rng)
