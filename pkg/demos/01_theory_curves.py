"""
The growth law and the bounded power-law moments
================================================

A day with P active users whose activities follow the bounded power law
n(f) = (f/f_max)^(-beta) on [C, f_max] produces total activity F. When
the daily cutoff f_max is coupled to the population, F scales as P^gamma
with gamma = 2/beta below beta = 2 and gamma = 1 above. This script
walks the closed forms: the law itself, the exact moments, the
single-term approximations and their error, and the population-to-cutoff
inversion.
"""

import numpy as np

from growthlab import (
    approx_moments,
    cutoff_for_population,
    exact_moments,
    gamma_of_beta,
    iid_sum_exponent,
    theta_of_gamma,
)

# The exponent map. Heterogeneity rises as beta falls toward 1, and with
# it the superlinearity of growth; above 2 the distribution is tame
# enough that activity just tracks headcount.
print("growth exponent gamma(beta) and friends")
print("beta    gamma   theta   iid-sum exponent")
for beta in (1.2, 1.41, 1.58, 1.8, 2.0, 2.5, 3.0, 5.0):
    gamma = gamma_of_beta(beta)
    print(f"{beta:4.2f}   {gamma:5.3f}   {theta_of_gamma(gamma):5.3f}"
          f"   {iid_sum_exponent(beta):5.3f}")

# Moments of one day. exact_moments integrates n(f) and f*n(f) in closed
# form; approx_moments keeps only the dominant endpoint term, which is
# what makes the gamma = 2/beta arithmetic one line long.
print()
print("one synthetic day at f_max = 10^4")
print("beta    P exact      P approx     F exact      F approx")
for beta in (1.41, 1.58, 2.5):
    exact = exact_moments(1e4, beta)
    approx = approx_moments(1e4, beta)
    print(f"{beta:4.2f}   {exact.population:11.4g}  {approx.population:11.4g}"
          f"  {exact.total_activity:11.4g}  {approx.total_activity:11.4g}")

# The approximation error is not statistical: it has its own closed
# form. For the population moment the relative error is exactly
# 1/(f_max^(beta-1) - 1), so it dies with the cutoff but blows up as
# beta approaches 1.
print()
print("relative error of the single-term population moment")
print("f_max      beta=1.1   beta=1.5   beta=2.5")
for f_max in (1e3, 1e4, 1e5):
    row = []
    for beta in (1.1, 1.5, 2.5):
        exact = exact_moments(f_max, beta)
        approx = approx_moments(f_max, beta)
        err = abs(approx.population - exact.population) / exact.population
        identity = 1.0 / (f_max ** (beta - 1.0) - 1.0)
        assert abs(err - identity) < 1e-9
        row.append(f"{err:9.2%}")
    print(f"1e{int(np.log10(f_max))}       " + "  ".join(row))

# Inverting the population moment gives the coupled cutoff: the f_max a
# day of P users must have for the distribution to close at n(f_max) = 1.
print()
print("coupled cutoff f_max(P) at beta = 1.5")
for population in (1e3, 2e6):
    cutoff = cutoff_for_population(population, 1.5)
    recovered = approx_moments(cutoff, 1.5).population
    print(f"P = {population:8.3g} -> f_max = {cutoff:10.4f}"
          f"   (approx moment recovers P = {recovered:.6g})")
