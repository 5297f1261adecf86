"""Reference values used as test oracles."""

# rows in canonical world order (a,b,c,d), (a,b,c,!d), ...: (minPi, minN, avg)
TABLE2 = [
    (1, 0.2, 0.2),
    (0.5, 0.3, 0.15),
    (0.5, 0.1, 0.05),
    (0.3, 0.3, 0.09),
    (0.5, 0.2, 0.1),
    (0.5, 0.1, 0.05),
    (0.5, 0.1, 0.05),
    (0.5, 0.1, 0.05),
    (0.5, 0.1, 0.05),
    (0.5, 0.1, 0.05),
    (0.4, 0.1, 0.04),
    (0.3, 0.1, 0.03),
    (0.3, 0, 0),
    (0.3, 0, 0),
    (0.3, 0, 0),
    (0.3, 0, 0),
]

# Conditional tables of table1.pnet as plain dictionaries: value -> (pi, n), keyed by parent values.
TABLE1_A = {True: (1, 0.6), False: (0.5, 0.1)}
TABLE1_B = {  # (b, a)
    (True, True): (1, 0.5), (False, True): (0.5, 0.25),
    (True, False): (0.75, 0.2), (False, False): (0.3, 0),
}
TABLE1_C = {  # (c, a)
    (True, True): (1, 0.3), (False, True): (0.6, 0.1),
    (True, False): (0.7, 0.2), (False, False): (0.4, 0.1),
}


def table1_d(d, b, c):
    if b and c:
        return (1, 0.2) if d else (0.5, 0.4)
    if b and not c:
        return (0.5, 0.1) if d else (0.3, 0.1)
    return (1, 0.3) if d else (0.7, 0.2)


# Compiled local bases: variable -> list of (literals, alpha, beta, combined).
# Literals are label strings. The B formula (b | a) has a single listed
# weight 0.7, meaning alpha = 0.7 and beta = 1.
SIGMA = {
    "A": [(("a",), 0.5, 0.9, 0.45)],
    "B": [(("b", "a"), 0.7, 1.0, 0.7),
          (("b", "!a"), 0.5, 0.75, 0.375),
          (("!b", "a"), 0.25, 0.8, 0.2)],
    "C": [(("c", "a"), 0.6, 0.9, 0.54),
          (("c", "!a"), 0.4, 0.9, 0.36),
          (("!c", "a"), 0.3, 0.8, 0.24)],
    "D": [(("d", "b", "c"), 0.3, 0.8, 0.24),
          (("d", "b", "!c"), 0.3, 0.8, 0.24),
          (("d", "!b", "c"), 0.7, 0.9, 0.63),
          (("d", "!b", "!c"), 0.5, 0.6, 0.3),
          (("!d", "!b", "c"), 0.5, 0.9, 0.45)],
}
