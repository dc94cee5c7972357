"""Eigenpairs of the p-Laplacian problem on (0, 1).

Each eigenfunction is a scaled, compressed copy of sn_p; the eigenvalue
scales exactly like n**p and the amplitude like n.  Two residuals check
the construction end to end: the first integral (an energy identity) and
the differential equation itself, the latter exercising the full
derivative chain of sn_p.
"""

import numpy as np

import pelliptic as pl

p, mu = 3.0, 0.6
print(f"p = {p}, mu = {mu}")
print()
print(" n      lambda          amplitude      lambda / n^p")
for n in (1, 2, 3, 4):
    e = pl.eigenpair(p, mu, n)
    print(f"  {n}   {e.lam:14.8f}   {e.amplitude:12.8f}   {e.lam / n**p:14.8f}")

print()
e = pl.eigenpair(p, mu, 2)
grid = np.linspace(0.0, 1.0, 401)
fi = pl.first_integral_residual(e, grid)
ode = pl.ode_residual(e, grid)
print(f"first-integral residual: {fi.max_abs_residual:.3e} "
      f"({fi.grid_size} points, {fi.excluded_points} excluded near the peaks)")
print(f"ODE residual:            {ode.max_abs_residual:.3e} "
      f"(lambda^2 = {e.lam**2:.3e} for scale)")
print(f"boundary values: phi(0) = {pl.eigenfunction_eval(e, 0.0):.1e}, "
      f"phi(1) = {pl.eigenfunction_eval(e, 1.0):.1e}")

print()
print("p = 2 closed form: lambda_n = 4 n^2 (1 + mu^2) K^2")
for n in (1, 3):
    e2 = pl.eigenpair(2.0, 0.5, n)
    K = pl.kp(2.0, 0.5)
    closed = 4.0 * n * n * (1.0 + 0.25) * K * K
    print(f"  n = {n}: lambda = {e2.lam:.12f}   closed form = {closed:.12f}")
