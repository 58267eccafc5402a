from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axmu.frames import (FrameConstants, PpduKind, TimingConstants, ampdu_bits,
                         data_ppdu_duration, exchange_durations, legacy_frame_duration,
                         max_aggregation, tb_back_duration)
from axmu.phy import PhyProfile, get_mcs
from axmu.scheduler import AntennaConfig, allocate_mu

WIDTHS = (20, 40, 80, 160)


def ceil_div(a, b):
    return -(-a // b)


def sheet_data_duration(preamble, n_a, ym, yc_num, yc_den, v_s, y_sc):
    """Integer-only evaluation of the A-MPDU airtime formula."""
    bits = 16 + (320 + 12000 if n_a == 1 else n_a * (32 + 320 + 12000)) + 18
    # bits / (v_s*ym*yc*y_sc) symbols, rate = v_s*ym*yc_num*y_sc / yc_den
    return preamble + 16 * ceil_div(bits * yc_den, v_s * ym * yc_num * y_sc)


@pytest.mark.parametrize("bits,expected", [(160, 56), (112, 48), (0, 28), (256, 72)])
def test_legacy_frames(bits, expected):
    assert legacy_frame_duration(bits) == expected


def test_data_ppdu_examples():
    assert data_ppdu_duration(PpduKind.SU, 1, 4, 160, get_mcs(9)) == 180
    assert data_ppdu_duration(PpduKind.TB, 1, 1, 20, get_mcs(6)) == 420
    assert data_ppdu_duration(PpduKind.SU, 1, 1, 20, get_mcs(0)) == 1860
    with pytest.raises(ValueError):
        data_ppdu_duration(PpduKind.SU, 0, 1, 20, get_mcs(0))


@given(n_a=st.integers(1, 300), v_s=st.integers(1, 4), idx=st.integers(0, 11),
       width=st.sampled_from(WIDTHS), kind=st.sampled_from(list(PpduKind)))
def test_data_ppdu_matches_integer_sheet(n_a, v_s, idx, width, kind):
    mcs = get_mcs(idx)
    pre = {PpduKind.SU: 164, PpduKind.MU_DL: 168, PpduKind.TB: 228}[kind]
    y_sc = {20: 234, 40: 468, 80: 980, 160: 1960}[width]
    expected = sheet_data_duration(pre, n_a, mcs.y_m, mcs.y_c.numerator, mcs.y_c.denominator, v_s, y_sc)
    assert data_ppdu_duration(kind, n_a, v_s, width, mcs) == expected


def test_single_mpdu_has_no_delimiter():
    assert ampdu_bits(1) == 16 + 320 + 12000 + 18
    assert ampdu_bits(2) == 16 + 2 * (32 + 320 + 12000) + 18


def brute_force_aggregation(kind, v_s, width, mcs, limit):
    for n_a in range(limit, 0, -1):
        if data_ppdu_duration(kind, n_a, v_s, width, mcs) <= Fraction(5484):
            return n_a
    return 1


def test_max_aggregation_examples():
    assert max_aggregation(PpduKind.TB, 1, 20, get_mcs(6), 256).n_a == 27
    assert max_aggregation(PpduKind.SU, 4, 160, get_mcs(11), 256) == (256, False)
    assert data_ppdu_duration(PpduKind.SU, 256, 4, 160, get_mcs(11)) <= Fraction(5484)
    assert max_aggregation(PpduKind.TB, 1, 20, get_mcs(0), 1) == (1, False)


@settings(max_examples=60)
@given(v_s=st.integers(1, 4), idx=st.integers(0, 11), width=st.sampled_from(WIDTHS),
       kind=st.sampled_from(list(PpduKind)), limit=st.integers(1, 256))
def test_max_aggregation_brute_force(v_s, idx, width, kind, limit):
    mcs = get_mcs(idx)
    assert max_aggregation(kind, v_s, width, mcs, limit).n_a == brute_force_aggregation(kind, v_s, width, mcs, limit)


def test_over_limit_single_frame_is_flagged():
    # a 1 MHz-equivalent crawl: huge frames at MCS0 on 20 MHz
    fc = FrameConstants(l_d=700_000)
    agg = max_aggregation(PpduKind.SU, 1, 20, get_mcs(0), 64, fc=fc)
    assert agg == (1, True)


def test_exchange_defaults():
    alloc = allocate_mu(64, AntennaConfig(), 160)
    d = exchange_durations(alloc, 1, get_mcs(9), v_s_su=4, b=160)
    assert d.t_c_su == 154
    assert d.t_su == 56 + 16 + 48 + 16 + 180 + 16 + 72 + 34 == 438
    assert d.t_c_mu >= d.t_c_su


def test_exchange_assembly_mu():
    alloc = allocate_mu(16, AntennaConfig(), 160)
    d = exchange_durations(alloc, 256, get_mcs(6), v_s_su=4, b=160)
    mu_rts = legacy_frame_duration(224 + 40 * 16)
    trig = legacy_frame_duration(224 + 48 * 16)
    ms_back = legacy_frame_duration(176 + 288 * 16)
    data_d = data_ppdu_duration(PpduKind.MU_DL, d.na_mu_d, alloc.v_s, alloc.b_ru_mhz, get_mcs(6))
    data_u = data_ppdu_duration(PpduKind.TB, d.na_mu_u, alloc.v_s, alloc.b_ru_mhz, get_mcs(6))
    assert d.t_mu_d == mu_rts + 16 + 48 + 16 + data_d + 16 + 72 + 34
    assert d.t_mu_u == mu_rts + 16 + 48 + 16 + trig + 16 + data_u + 16 + ms_back + 34
    assert d.t_c_mu == mu_rts + 16 + 48 + 34
    assert (d.na_su, d.na_mu_d, d.na_mu_u) == (256, 118, 117)


def test_tb_back():
    # 290 bits at 1053 bits/symbol -> one symbol
    assert tb_back_duration(1, 20, get_mcs(6)) == 228 + 16


@given(n=st.integers(1, 256), limit=st.integers(1, 256), idx=st.integers(0, 11),
       width=st.sampled_from(WIDTHS), m_ap=st.integers(1, 8))
def test_collisions_cheaper_than_successes(n, limit, idx, width, m_ap):
    alloc = allocate_mu(n, AntennaConfig(m_ap, 1), width)
    d = exchange_durations(alloc, limit, get_mcs(idx), v_s_su=1, b=width)
    assert d.t_c_su < d.t_su
    assert d.t_c_mu < min(d.t_mu_d, d.t_mu_u)


@given(kind=st.sampled_from(list(PpduKind)), n_a=st.integers(1, 255), v_s=st.integers(1, 3),
       idx=st.integers(0, 11), w=st.sampled_from(WIDTHS[:-1]))
def test_duration_monotonicity(kind, n_a, v_s, idx, w):
    mcs = get_mcs(idx)
    base = data_ppdu_duration(kind, n_a, v_s, w, mcs)
    assert data_ppdu_duration(kind, n_a + 1, v_s, w, mcs) >= base
    assert data_ppdu_duration(kind, n_a, v_s + 1, w, mcs) <= base
    assert data_ppdu_duration(kind, n_a, v_s, 2 * w, mcs) <= base


@given(v=st.integers(0, 128))
def test_parametric_lengths_increase(v):
    fc = FrameConstants()
    for length in (fc.mu_rts_len, fc.basic_trigger_len, fc.brp_trigger_len, fc.ms_back_len, fc.ndpa_len):
        assert length(v + 1) > length(v) > 0
        assert legacy_frame_duration(length(v + 1)) >= legacy_frame_duration(length(v))


@given(bits=st.integers(0, 20000))
def test_ceil_boundary(bits):
    step = legacy_frame_duration(bits + 1) - legacy_frame_duration(bits)
    assert step in (0, 4)
    phy = PhyProfile()
    rate = Fraction(1053)
    from axmu.frames import he_duration
    step = he_duration(PpduKind.TB, bits + 1, rate, phy) - he_duration(PpduKind.TB, bits, rate, phy)
    assert step in (0, 16)


def test_timing_defaults():
    t = TimingConstants()
    assert t.sifs_us < t.aifs_csi_us < t.aifs_us
    assert t.max_ppdu_us == Fraction(5484)
