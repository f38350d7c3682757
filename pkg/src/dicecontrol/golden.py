"""Published reference values used by ``dicecontrol verify`` and the test suite.

Each power grid is indexed ``[panel][row][column]`` with rows n = 100, 200, 500,
1000 and columns matching :data:`dicecontrol.power.RECIP7_ETAS` (table 1) or
:data:`dicecontrol.power.GAIN_ETAS` (tables 2 and 3).  Panel order is
lbar SS, lbar WS, then the proportion test(s) as in
:func:`dicecontrol.power.emit_power_table`.
"""

from fractions import Fraction

POWER_TABLES = {
    1: (
        ((0.0823, 0.1258, 0.2452, 0.5470, 0.9209),
         (0.0967, 0.1658, 0.3618, 0.7701, 0.9936),
         (0.1308, 0.2666, 0.6230, 0.9757, 1.0000),
         (0.1782, 0.4086, 0.8565, 0.9996, 1.0000)),
        ((0.0839, 0.1302, 0.2576, 0.5742, 0.9358),
         (0.0995, 0.1735, 0.3835, 0.7995, 0.9960),
         (0.1364, 0.2833, 0.6580, 0.9836, 1.0000),
         (0.1881, 0.4368, 0.8848, 0.9998, 1.0000)),
        ((0.0762, 0.1117, 0.2138, 0.5192, 0.9563),
         (0.0907, 0.1517, 0.3380, 0.7864, 0.9993),
         (0.1252, 0.2560, 0.6280, 0.9885, 1.0000),
         (0.1740, 0.4073, 0.8781, 1.0000, 1.0000)),
    ),
    2: (
        ((0.0661, 0.1034, 0.1532, 0.2899, 0.6358),
         (0.0726, 0.1296, 0.2106, 0.4326, 0.8530),
         (0.0869, 0.1945, 0.3556, 0.7231, 0.9927),
         (0.1056, 0.2874, 0.5473, 0.9266, 1.0000)),
        ((0.0848, 0.1835, 0.3291, 0.6715, 0.9816),
         (0.1009, 0.2620, 0.4946, 0.8827, 0.9997),
         (0.1391, 0.4554, 0.7987, 0.9962, 1.0000),
         (0.1927, 0.6844, 0.9637, 1.0000, 1.0000)),
        ((0.0779, 0.1542, 0.2698, 0.5843, 0.9750),
         (0.0924, 0.2240, 0.4265, 0.8379, 0.9997),
         (0.1269, 0.4038, 0.7467, 0.9941, 1.0000),
         (0.1756, 0.6320, 0.9475, 1.0000, 1.0000)),
        ((0.0780, 0.1560, 0.2764, 0.6099, 0.9869),
         (0.0926, 0.2271, 0.4376, 0.8598, 0.9999),
         (0.1274, 0.4101, 0.7607, 0.9962, 1.0000),
         (0.1764, 0.6406, 0.9539, 1.0000, 1.0000)),
    ),
    3: (
        ((0.0500, 0.0810, 0.1239, 0.2480, 0.5916),
         (0.0500, 0.0948, 0.1626, 0.3664, 0.8141),
         (0.0500, 0.1271, 0.2603, 0.6301, 0.9863),
         (0.0500, 0.1719, 0.3982, 0.8624, 0.9999)),
        ((0.0500, 0.1225, 0.2445, 0.5852, 0.9712),
         (0.0500, 0.1609, 0.3623, 0.8101, 0.9992),
         (0.0500, 0.2580, 0.6261, 0.9859, 1.0000),
         (0.0500, 0.3954, 0.8602, 0.9999, 1.0000)),
        ((0.0500, 0.1066, 0.2001, 0.4926, 0.9572),
         (0.0500, 0.1402, 0.3059, 0.7449, 0.9991),
         (0.0500, 0.2266, 0.5614, 0.9774, 1.0000),
         (0.0500, 0.3523, 0.8161, 0.9998, 1.0000)),
        ((0.0500, 0.1074, 0.2044, 0.5158, 0.9754),
         (0.0500, 0.1417, 0.3136, 0.7706, 0.9997),
         (0.0500, 0.2297, 0.5750, 0.9835, 1.0000),
         (0.0500, 0.3577, 0.8289, 0.9999, 1.0000)),
    ),
}

# exact moments of the hand length at theta = 0 and theta = 1
MEAN_0 = Fraction(1671, 196)
VAR_0 = Fraction(1768701, 38416)
MEAN_1 = {"ss": Fraction(296, 27), "ws": Fraction(306, 13)}
VAR_1 = {"ss": Fraction(63880, 729), "ws": Fraction(79506, 169)}
GAMMA_0 = Fraction(495, 196)

BREAK_EVEN_THETA = {"ss": 0.0445299, "ws": 0.0313088}
BREAK_EVEN_RECIP7 = {"ss": 6.06755, "ws": 6.12790}

# eigenvalues and coefficients at theta = 0 (shared by both models), as printed
EIGEN_0 = ("0.862473751659322030", "0.741708271459795977", "0.709206775794379015",
           "0.186611201086502979")
COEFF_0 = ("1.211844812464518572", "-0.006375542263784777", "-0.004042671248651503",
           "-0.201426598952082292")

# reciprocal tail probability of a hand of at least 154 rolls
TAIL_154 = (
    ("ss", Fraction(0), 5.590e9),
    ("ss", Fraction(4, 7), 148.8e6),
    ("ss", Fraction(1), 11.31e6),
    ("ws", Fraction(0), 5.590e9),
    ("ws", Fraction(3, 14), 167.9e6),
    ("ws", Fraction(3, 8), 13.07e6),
)

# large-x bound constants: (min c_i e_i', min c_i' e_i) for i = 1..4, then ratios
BOUNDS = {
    "ss": {"c_de": (0.0394, -0.0000464, -0.0000793, 0.0142),
           "dc_e": (-0.0966, 0.0, -0.00413, 0.00437),
           "max_ratio": (0.860, 0.823, None), "min_ratio": (None, None, 0.0754)},
    "ws": {"c_de": (0.0967, -0.000575, -0.000489, -0.0104),
           "dc_e": (-0.141, 0.0, -0.00297, 0.0281),
           "max_ratio": (0.873, 0.843, 0.252), "min_ratio": (None, None, None)},
}

WS_MONOTONICITY_EXCEPTIONS = (3, 6, 7, 8, 9)

# simulated LR power, n = 500, alpha = 0.05: (gain, theta, approx lbar power, power, s.e.)
LR_POWER_TABLE = {
    "ss": ((0.0, 0.0445299, 0.0869, 0.0441, 0.0021),
           (0.025, 0.122583, 0.1945, 0.1156, 0.0032),
           (0.05, 0.199803, 0.3556, 0.2450, 0.0043),
           (0.1, 0.351832, 0.7231, 0.6118, 0.0049),
           (0.2, 0.646824, 0.9927, 0.9868, 0.0011)),
    "ws": ((0.0, 0.0313088, 0.1391, 0.0733, 0.0026),
           (0.025, 0.0859974, 0.4554, 0.3206, 0.0047),
           (0.05, 0.139835, 0.7987, 0.6855, 0.0046),
           (0.1, 0.244931, 0.9962, 0.9932, 0.0008),
           (0.2, 0.444642, 1.0000, 1.0000, 0.0000)),
}

WORKED_EXAMPLE = {
    "counts": (45, 64, 41, 43, 30, 35, 38, 31, 18, 22, 22, 11, 11, 15, 12, 10, 7, 7, 7,
               2, 5, 3, 1, 2, 2, 2, 2, 1, 1, 0, 2, 0, 2, 0, 2, 1, 1, 1, 0, 0, 0, 1),
    "theta_hat": 0.231991,
    "scaled_lik_hat": 0.000146516,
    "scaled_lik_null": 0.0000507253,
    "statistic": 2.12142,
    "scale": 20,
}
