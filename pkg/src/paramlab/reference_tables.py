"""Published reference values used by ``lab tables`` and the tests."""

# chi -> (lower, upper) coefficient of n^2 for which chi is the unique peak
TABLE1 = {
    1.6: (0.721118, 0.772075),
    1.7: (0.641006, 0.720843),
    1.8: (0.573546, 0.640714),
    1.9: (0.516208, 0.573238),
    2.0: (0.467064, 0.515884),
    2.1: (0.424623, 0.466723),
    2.2: (0.387720, 0.424266),
    2.3: (0.355431, 0.387346),
    2.4: (0.327018, 0.355040),
    2.5: (0.301885, 0.326611),
    2.6: (0.279545, 0.301461),
    2.7: (0.259600, 0.279105),
    2.8: (0.241720, 0.259143),
    2.9: (0.225628, 0.241246),
    3.0: (0.000030, 0.225138),
}

# (a, b) -> remains-ahead quantity times 100000, one decimal
TABLE2 = {
    (0.2, 0.1): 0.0,
    (0.3, 0.1): 0.0,
    (0.3, 0.2): 0.2,
    (0.4, 0.1): 0.0,
    (0.4, 0.2): 0.1,
    (0.4, 0.3): 0.4,
    (0.5, 0.1): 0.0,
    (0.5, 0.2): 0.1,
    (0.5, 0.3): 0.2,
    (0.5, 0.4): 0.4,
    (0.6, 0.1): 0.0,
    (0.6, 0.2): 0.1,
    (0.6, 0.3): 0.2,
    (0.6, 0.4): 0.3,
    (0.6, 0.5): 0.8,
    (0.7, 0.1): 0.0,
    (0.7, 0.2): 0.1,
    (0.7, 0.3): 0.1,
    (0.7, 0.4): 0.3,
    (0.7, 0.5): 0.5,
    (0.7, 0.6): 1.1,
    (0.8, 0.1): 0.0,
    (0.8, 0.2): 0.1,
    (0.8, 0.3): 0.2,
    (0.8, 0.4): 0.3,
    (0.8, 0.5): 0.5,
    (0.8, 0.6): 0.9,
    (0.8, 0.7): 2.2,
    (0.9, 0.1): 0.0,
    (0.9, 0.2): 0.1,
    (0.9, 0.3): 0.2,
    (0.9, 0.4): 0.3,
    (0.9, 0.5): 0.4,
    (0.9, 0.6): 0.7,
    (0.9, 0.7): 1.2,
    (0.9, 0.8): 2.9,
    (1.0, 0.1): 0.1,
    (1.0, 0.2): 0.1,
    (1.0, 0.3): 0.2,
    (1.0, 0.4): 0.3,
    (1.0, 0.5): 0.5,
    (1.0, 0.6): 0.8,
    (1.0, 0.7): 1.3,
    (1.0, 0.8): 2.2,
    (1.0, 0.9): 5.2,
    (1.1, 0.1): 0.1,
    (1.1, 0.2): 0.1,
    (1.1, 0.3): 0.2,
    (1.1, 0.4): 0.3,
    (1.1, 0.5): 0.5,
    (1.1, 0.6): 0.8,
    (1.1, 0.7): 1.1,
    (1.1, 0.8): 1.8,
    (1.1, 0.9): 3.1,
    (1.1, 1.0): 7.3,
    (1.2, 0.1): 0.1,
    (1.2, 0.2): 0.2,
    (1.2, 0.3): 0.3,
    (1.2, 0.4): 0.4,
    (1.2, 0.5): 0.6,
    (1.2, 0.6): 0.9,
    (1.2, 0.7): 1.3,
    (1.2, 0.8): 2.0,
    (1.2, 0.9): 3.1,
    (1.2, 1.0): 5.5,
    (1.2, 1.1): 12.9,
    (1.3, 0.1): 0.1,
    (1.3, 0.2): 0.1,
    (1.3, 0.3): 0.3,
    (1.3, 0.4): 0.4,
    (1.3, 0.5): 0.6,
    (1.3, 0.6): 0.8,
    (1.3, 0.7): 1.2,
    (1.3, 0.8): 1.7,
    (1.3, 0.9): 2.6,
    (1.3, 1.0): 4.1,
    (1.3, 1.1): 7.3,
    (1.3, 1.2): 17.5,
    (1.4, 0.1): 0.1,
    (1.4, 0.2): 0.2,
    (1.4, 0.3): 0.3,
    (1.4, 0.4): 0.4,
    (1.4, 0.5): 0.7,
    (1.4, 0.6): 0.9,
    (1.4, 0.7): 1.3,
    (1.4, 0.8): 1.8,
    (1.4, 0.9): 2.7,
    (1.4, 1.0): 4.0,
    (1.4, 1.1): 6.5,
    (1.4, 1.2): 12.0,
    (1.4, 1.3): 30.1,
    (1.5, 0.1): 0.1,
    (1.5, 0.2): 0.2,
    (1.5, 0.3): 0.4,
    (1.5, 0.4): 0.6,
    (1.5, 0.5): 0.9,
    (1.5, 0.6): 1.3,
    (1.5, 0.7): 1.8,
    (1.5, 0.8): 2.5,
    (1.5, 0.9): 3.6,
    (1.5, 1.0): 5.3,
    (1.5, 1.1): 8.3,
    (1.5, 1.2): 14.0,
    (1.5, 1.3): 27.8,
    (1.5, 1.4): 78.0,
    (1.6, 0.1): 0.1,
    (1.6, 0.2): 0.3,
    (1.6, 0.3): 0.4,
    (1.6, 0.4): 0.7,
    (1.6, 0.5): 1.0,
    (1.6, 0.6): 1.4,
    (1.6, 0.7): 2.0,
    (1.6, 0.8): 2.7,
    (1.6, 0.9): 3.9,
    (1.6, 1.0): 5.7,
    (1.6, 1.1): 8.8,
    (1.6, 1.2): 14.5,
    (1.6, 1.3): 27.4,
    (1.6, 1.4): 65.9,
    (1.6, 1.5): 294.9,
    (1.6, 1.7): 245.3,
    (1.6, 1.8): 67.0,
    (1.6, 1.9): 31.3,
    (1.6, 2.0): 18.3,
    (1.6, 2.1): 12.1,
    (1.6, 2.2): 8.7,
    (1.6, 2.3): 6.6,
    (1.6, 2.4): 5.2,
    (1.6, 2.5): 4.2,
    (1.6, 2.6): 3.5,
    (1.6, 2.7): 2.9,
    (1.6, 2.8): 2.5,
    (1.6, 2.9): 2.2,
    (1.6, 3.0): 1.9,
    (1.7, 1.8): 95.3,
    (1.7, 1.9): 37.1,
    (1.7, 2.0): 20.5,
    (1.7, 2.1): 13.2,
    (1.7, 2.2): 9.3,
    (1.7, 2.3): 7.0,
    (1.7, 2.4): 5.5,
    (1.7, 2.5): 4.4,
    (1.7, 2.6): 3.6,
    (1.7, 2.7): 3.1,
    (1.7, 2.8): 2.6,
    (1.7, 2.9): 2.3,
    (1.7, 3.0): 2.0,
    (1.8, 1.9): 69.8,
    (1.8, 2.0): 29.9,
    (1.8, 2.1): 17.6,
    (1.8, 2.2): 11.8,
    (1.8, 2.3): 8.6,
    (1.8, 2.4): 6.6,
    (1.8, 2.5): 5.3,
    (1.8, 2.6): 4.3,
    (1.8, 2.7): 3.6,
    (1.8, 2.8): 3.1,
    (1.8, 2.9): 2.7,
    (1.8, 3.0): 2.4,
    (1.9, 2.0): 52.0,
    (1.9, 2.1): 23.3,
    (1.9, 2.2): 14.2,
    (1.9, 2.3): 9.8,
    (1.9, 2.4): 7.3,
    (1.9, 2.5): 5.7,
    (1.9, 2.6): 4.6,
    (1.9, 2.7): 3.8,
    (1.9, 2.8): 3.2,
    (1.9, 2.9): 2.8,
    (1.9, 3.0): 2.4,
    (2.0, 2.1): 46.6,
    (2.0, 2.2): 21.4,
    (2.0, 2.3): 13.3,
    (2.0, 2.4): 9.3,
    (2.0, 2.5): 7.0,
    (2.0, 2.6): 5.6,
    (2.0, 2.7): 4.5,
    (2.0, 2.8): 3.8,
    (2.0, 2.9): 3.2,
    (2.0, 3.0): 2.8,
    (2.1, 2.2): 49.0,
    (2.1, 2.3): 22.9,
    (2.1, 2.4): 14.4,
    (2.1, 2.5): 10.2,
    (2.1, 2.6): 7.8,
    (2.1, 2.7): 6.2,
    (2.1, 2.8): 5.1,
    (2.1, 2.9): 4.3,
    (2.1, 3.0): 3.7,
    (2.2, 2.3): 43.4,
    (2.2, 2.4): 20.5,
    (2.2, 2.5): 13.0,
    (2.2, 2.6): 9.3,
    (2.2, 2.7): 7.2,
    (2.2, 2.8): 5.7,
    (2.2, 2.9): 4.7,
    (2.2, 3.0): 4.0,
    (2.3, 2.4): 42.8,
    (2.3, 2.5): 20.4,
    (2.3, 2.6): 13.0,
    (2.3, 2.7): 9.4,
    (2.3, 2.8): 7.2,
    (2.3, 2.9): 5.8,
    (2.3, 3.0): 4.8,
    (2.4, 2.5): 42.2,
    (2.4, 2.6): 20.3,
    (2.4, 2.7): 13.0,
    (2.4, 2.8): 9.4,
    (2.4, 2.9): 7.3,
    (2.4, 3.0): 5.9,
    (2.5, 2.6): 42.6,
    (2.5, 2.7): 20.5,
    (2.5, 2.8): 13.3,
    (2.5, 2.9): 9.6,
    (2.5, 3.0): 7.5,
    (2.6, 2.7): 44.8,
    (2.6, 2.8): 21.7,
    (2.6, 2.9): 14.1,
    (2.6, 3.0): 10.3,
    (2.7, 2.8): 43.6,
    (2.7, 2.9): 21.2,
    (2.7, 3.0): 13.8,
    (2.8, 2.9): 45.9,
    (2.8, 3.0): 22.4,
    (2.9, 3.0): 46.0,
}
