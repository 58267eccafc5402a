"""Published single-stream PHY rates (Mb/s), transcribed for test comparison."""

WIDTHS = (20, 40, 80, 160)

# (mcs, dcm) -> rates at 20/40/80/160 MHz, HE with 3.2 us GI (16 us symbols)
AX = {
    (0, True): (3.6, 7.3, 15.3, 30.6),
    (0, False): (7.3, 14.6, 30.6, 61.3),
    (1, True): (7.3, 14.6, 30.6, 61.3),
    (1, False): (14.6, 29.3, 61.3, 122.5),
    (2, False): (21.9, 43.9, 91.9, 183.8),
    (3, True): (14.6, 29.3, 61.3, 122.5),
    (3, False): (29.3, 58.5, 122.5, 245.0),
    (4, True): (21.9, 43.9, 91.9, 183.8),
    (4, False): (43.9, 87.8, 183.8, 367.5),
    (5, False): (58.5, 117.0, 245.0, 490.0),
    (6, False): (65.8, 131.6, 275.6, 551.3),
    (7, False): (73.1, 146.3, 306.3, 612.5),
    (8, False): (87.8, 175.5, 367.5, 735.0),
    (9, False): (97.5, 195.0, 408.3, 816.6),
    (10, False): (109.7, 219.4, 459.4, 918.8),
    (11, False): (121.9, 243.8, 510.4, 1020.8),
}

# VHT with 0.8 us GI (4 us symbols); None where the rate is not defined
AC = {
    0: (6.5, 13.5, 29.3, 58.5),
    1: (13.0, 27.0, 58.5, 117.0),
    2: (19.5, 40.5, 87.8, 175.5),
    3: (26.0, 54.0, 117.0, 234.0),
    4: (39.0, 81.0, 175.5, 351.0),
    5: (52.0, 108.0, 234.0, 468.0),
    6: (58.5, 121.5, 263.3, 526.5),
    7: (65.0, 135.0, 292.5, 585.0),
    8: (78.0, 162.0, 351.0, 702.0),
    9: (None, 180.0, 390.0, 780.0),
}

LEGACY_20 = {0: 6.0, 1: 12.0, 2: 18.0, 3: 24.0, 4: 36.0, 5: 48.0, 6: 54.0}
