"""Reference curves shared by the numeric tests."""

import math

# x2^2 = x1^3 - x1 and x2^2 = x1^5 - 5 x1^3 + 4 x1
G1_LAMBDAS = {"2:(1,0)": -1}
G2_LAMBDAS = {"2:(3,0)": -5, "2:(1,0)": 4}
G2_P1 = (3.0, math.sqrt(120))
G2_P2 = (4.0, math.sqrt(720))
