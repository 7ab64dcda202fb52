"""Reference L1 norms for the divergence demo, computed with numpy.

phi(z) = exp(z^2), so a_{2m} = 1/m! and odd coefficients vanish.  The input
is the bump exp(-1/(1-x^2)) low-passed at |omega| <= 40 on 4096 points of
[-8, 8).  f_K is the inverse transform of sum_{k<=K} a_k (i omega)^k times
the low-passed spectrum; the norm is the trapezoid rule over x in [-2, 2].
"""
import math

import numpy as np

N, A, B, CUTOFF = 4096, -8.0, 8.0, 40.0
dx = (B - A) / N
x = A + dx * np.arange(N)
bump = np.zeros(N)
inside = np.abs(x) < 1
bump[inside] = np.exp(-1.0 / (1.0 - x[inside] ** 2))
omega = 2 * np.pi * np.fft.fftfreq(N, d=dx)
keep = np.abs(omega) <= CUTOFF
spectrum = np.fft.fft(bump) * keep
surrogate = np.fft.ifft(spectrum)

for K in (5, 10, 15, 20):
    mult = np.zeros(N, dtype=complex)
    for m in range(K // 2 + 1):
        mult += (1j * omega) ** (2 * m) / math.factorial(m)
    fK = np.fft.ifft(np.fft.fft(surrogate) * mult * keep)
    sel = (x >= -2 - 1e-12) & (x <= 2 + 1e-12)
    v = np.abs(fK[sel])
    l1 = float(np.sum(0.5 * (v[1:] + v[:-1])) * dx)
    print(f"{K} {l1:.17g}")
