"""Regenerates bounds_reference.csv with 40-digit arithmetic.

Run from this directory: python3 bounds_reference.py > bounds_reference.csv
"""
import random

from mpmath import mp, mpf, e, exp, expm1, log, sqrt, cbrt

mp.dps = 40
rng = random.Random(20240601)
rows = []


def emit(name, args, value):
    rows.append(",".join([name] + [repr(a) for a in args] + [mp.nstr(value, 25)]))


for _ in range(20):
    d = rng.uniform(1e-6, 1 / 800)
    emit("lower_tail", [d], 2 * e * mpf(d) ** mpf("0.25"))

for _ in range(20):
    a, lam, zeta, eta = rng.uniform(0.1, 20), rng.uniform(-3, 3), rng.uniform(1, 3e7), rng.uniform(0.01, 0.1)
    emit("upper_tail", [a, lam, zeta, eta], zeta * exp(-eta * mpf(a) ** mpf(1.5) + max(lam, 0) * mpf(a)))

for _ in range(20):
    d, lam, n = rng.uniform(1e-4, 0.2), rng.uniform(-3, 3), rng.randrange(2, 10**9)
    d_, lam_ = mpf(d), mpf(lam)
    factor = exp(2 * sqrt(d_) * lam_) if lam >= 0 else exp(d_ * lam_)
    pre = log(4 / d_) / 2
    quad = 23328 * e**2 * d_**2
    emit("janson_literal", [d, lam, n], factor * pre * (expm1(432 * d_ ** mpf(1.5)) + quad))
    emit("janson_corrected", [d, lam, n], factor * pre * (expm1(432 * d_ ** mpf(1.5)) + quad * mpf(n) ** (mpf(-2) / 3)))

for _ in range(20):
    d, lam = rng.uniform(1e-3, 0.9), rng.uniform(-3, 3)
    d_, lam_ = mpf(d), mpf(lam)
    factor = exp(lam_ * d_ / 2) if lam >= 0 else exp(2 * sqrt(d_) * lam_)
    emit("janson_mu", [d, lam, 10**18], factor * log(1 / d_) / 2)

for _ in range(20):
    n = rng.randrange(10**4, 10**9)
    c = rng.uniform(0.05, 1.41)
    coef = (2 - c * c) ** 2 / (8 * c)
    # Keep the exponent below 600 so the double result does not underflow.
    m_max = min(n, int((600 * n**0.5 / coef) ** (2 / 3)))
    m = rng.randrange(1, m_max)
    coef = (2 - mpf(c) ** 2) ** 2 / (8 * mpf(c))
    emit("tau1", [m, n, c], 2 * exp(-coef * mpf(m) ** mpf(1.5) / sqrt(mpf(n))))

for _ in range(20):
    x, p = rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99)
    if abs(x - p) < 0.05:
        x = (p + 0.3) % 0.98 + 0.01
    x_, p_ = mpf(x), mpf(p)
    emit("chernoff", [x, p], x_ * log(x_ / p_) + (1 - x_) * log((1 - x_) / (1 - p_)))

for _ in range(20):
    n, m = rng.randrange(100, 10**7), rng.randrange(2, 60)
    p = rng.uniform(0.2, 2.0) / n
    prod = mpf(1)
    for i in range(m):
        prod *= (n - i) * mpf(p)
    emit("cycles_of_length", [n, p, m], prod / m)

for _ in range(20):
    a, gamma, lam = rng.uniform(0.5, 30), rng.uniform(0.01, 0.2), rng.uniform(-2, 2)
    beta, c = rng.uniform(2, 200), rng.uniform(1, 5000)
    if lam > 0:
        v = 10 * mpf(beta) * c / (3 * mpf(gamma)) * exp(-mpf(gamma) / 2 * mpf(a) ** mpf(1.5) + lam * mpf(a))
    else:
        v = 8 * mpf(beta) * c / (3 * mpf(gamma)) * exp(-mpf(gamma) / 2 * mpf(a) ** mpf(1.5))
    emit("large_closed", [a, lam, beta, gamma, c], v)

for _ in range(20):
    n, lam = rng.uniform(3, 1e15), rng.uniform(-2, 2)
    ln = log(mpf(n))
    v = 2 * ln ** (lam + 1) if lam > 0 else min(ln / 3 + log(log(ln)) + 1, ln) if ln > 1 else None
    if v is not None:
        emit("harmonic", [n, lam], v)

print("\n".join(rows))
