"""Fixed instance corpus for oracle-equivalence and theorem runs. Changing it changes recorded results."""

ALPHAS = (-2, -1, 0, 1, 2, 3)
POLY_SPECS = ("x+1", "x+2", "x^2+1", "x^2+x+1", "x^3+x+1")
P_MIN, P_MAX = 5, 200
