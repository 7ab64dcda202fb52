"""Counting functions of the lattice-union zero family, computed with mpmath.

Z = union over m = 1..6 of {r_m * n : n != 0, |r_m n| <= 1e4} with
r_m = m + 1/2 + sqrt(2)/10^m.  For each radius r prints n(r) = #{|z| < r}
and N(r) = sum over |z| < r of log(r/|z|).
"""
from mpmath import mp, mpf, log, sqrt

mp.dps = 30
moduli = []
for m in range(1, 7):
    rm = m + mpf(1) / 2 + sqrt(2) / mpf(10) ** m
    k = 1
    while rm * k <= 10 ** 4:
        moduli += [rm * k, rm * k]  # +n and -n
        k += 1
print("zeros", len(moduli))
for r in (100, 200, 500, 1000, 2000, 5000, 10000):
    inside = [a for a in moduli if a < r]
    N = sum(log(mpf(r) / a) for a in inside)
    print(r, len(inside), mp.nstr(N, 17))
