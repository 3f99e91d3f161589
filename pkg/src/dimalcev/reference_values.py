"""Published values that the named runs are checked against.

Keys are stable; bump ``VERSION`` whenever a value changes.
"""

VERSION = 1

# association type counts, one-operation (K_n) and 0-dialgebra (Z_n), n = 1..6
CATALAN = (1, 1, 2, 5, 14, 42)
DIALGEBRA_TYPES = (1, 2, 6, 20, 70, 252)
FD_DIMENSION = {3: 36, 4: 480}

# number of lifted alternative dialgebra identities
ALTERNATIVE_COUNT = {3: 3, 4: 30, 5: 360, 6: 5040}
# lifted di-Malcev identities
MALCEV_CONSEQUENCES = {5: 6, 6: 42}
# skew-symmetries of right anticommutative types (products of two variables)
SKEW_SYMMETRIES = {3: 1, 4: 3, 5: 10, 6: 28}
# right anticommutative association types as printed; degree 6 is not
# reproduced by the straightening rule, which gives 20
RAC_TYPES_PRINTED = {3: 2, 4: 4, 5: 9, 6: 23}

DEGREE3 = {
    "shape": (30, 48),
    "A_shape": (18, 36),
    "E_shape": (12, 36),
    "new_identities": 3,
    "denominator_lcm": 6,
}

DEGREE4 = {
    "shape": (780, 540),
    "A_shape": (720, 480),
    "E_shape": (60, 480),
    "rac_basis": 60,
    "new_identities": 20,
    "malcev_orbit_rank": 20,
}

# multiplicities of new identities per partition (partitions in
# lexicographically decreasing order)
MULTIPLICITIES = {
    3: (1, 1, 0),
    4: (3, 8, 5, 6, 1),
    5: (8, 31, 38, 43, 35, 25, 5),
    6: (19, 94, 169, 185, 94, 294, 179, 90, 159, 84, 15),
}

FREE_RAC = {"k": 2, "n": 3, "dimension": 10, "leibniz": 8}

TRIPLE3 = {"shape": (12, 18), "rank": 9, "new_identities": 0}

TRIPLE5 = {
    "shape": (4680, 2040),
    "rank": 1820,
    "new_identities": 240,
    "progression": ((1, 60), (41, 140), (71, 160), (111, 160), (141, 200), (143, 240)),
    "generators": (141, 143),
    "span": 240,
    "prime": 101,
}
