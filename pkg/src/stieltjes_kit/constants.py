"""Published numerical constants used by the bound and zero-free checks.

Kept as strings so they enter mpmath exactly as printed.
"""

# admissible range of the explicit bound
MIN_N = 2

# prior bound |gamma_n| <= 1e-4 exp(n log log n), valid for n >= 10
MATSUOKA_SCALE = "1e-4"
MATSUOKA_MIN_N = 10
# radius of the prior zero-free disk is sqrt(2)

# q = 1 tail chain, for n >= 12
TAIL_START_N = 12
TAIL_EXPONENT = TAIL_START_N + 1  # first power T^{n+1} in the tail
THETA_FLOOR_Q1 = "5.1513"
D_CEILING_Q1 = "0.0209"
M_THRESHOLD = "8.2760"
LOG_SLOPE = "0.1728"
TAIL_FACTOR = "2.8876"

# Taylor-truncation chain, q >= 150 and n + 1 >= 4 log q
THETA_FLOOR_TAYLOR = "1.65"
D_CEILING_TAYLOR = "0.65"
H_THRESHOLD = "1.45"

# number of explicitly summed terms in the zero-free minorant (1 <= n <= 11)
HEAD_TERMS = 11

# reported values at T = 2.2093
REPORTED_T0 = "2.2093"
REPORTED_HEAD = "0.000941198"
REPORTED_TAIL = "0.000924993"
# reported crossover of the explicit bound against the prior one
REPORTED_CROSSOVER = 11
