"""Fourier coefficients of the normalized profile and the certificates.

tau_k is the k-th sine coefficient of sn_p(2 K_p x) on (0, 1).  Even
coefficients vanish by symmetry, tau_1 stays above the universal floor
4 sqrt(2)/pi^2, and the odd tail obeys an explicit 1/k^2 bound.  The
certificates turn these facts into machine-checked verdicts.
"""

import math

import pelliptic as pl

p, mu = 3.0, 0.6
print(f"p = {p}, mu = {mu}: first coefficients")
prof = pl.fourier_profile(p, mu, K_max=9)
for k, c in enumerate(prof.coefficients, start=1):
    note = "(even: symmetry zero)" if k % 2 == 0 else ""
    print(f"  tau_{k} = {c:+.12e}  {note}")
print(f"  tail bound above k = {prof.K_max}: {prof.tail_bound:.3e}")
floor = 4.0 * math.sqrt(2.0) / math.pi**2
print(f"  tau_1 floor 4 sqrt(2)/pi^2 = {floor:.12f}, margin {pl.tau1_margin(p, mu):.6f}")

print()
print("K_p test (threshold 8/(pi^2 - 8)):")
for mu_test in (0.5, 0.9909, 0.9995):
    rep = pl.certify_firstcond(2.0, pl.ModulusSet.constant(mu_test))
    print(f"  mu = {mu_test}: sup K = {rep.lhs:.6f} vs {rep.rhs:.6f} -> {rep.verdict}")

print()
print("coefficient test (explicit sum + rigorous tail):")
ms = pl.ModulusSet.grid(0.1, 0.9, 5)
rep = pl.certify_invertibility(2.0, ms, K=21)
print(f"  odd-sum {rep.lhs:.6f} + tail {rep.tail_bound:.6f} vs tau_1 inf "
      f"{rep.rhs:.6f} -> {rep.verdict}")
print(f"  caveats: {rep.caveats}")

print()
print("sharp p = 2 test (threshold mu_0, with the rho-sum diagnostic):")
for mu_test in (0.9909, 0.9995):
    rep = pl.certify_p2_sharp(pl.ModulusSet.constant(mu_test))
    print(f"  mu = {mu_test}: margin {rep.margin:.3e} -> {rep.verdict}  [{rep.caveats}]")

print()
print("boundary of the K_p test at p = 2:")
b = pl.firstcond_boundary(2.0)
print(f"  modulus {b:.12f}, squared {b * b:.12f}, nome {pl.nome_from_modulus(b):.12f}")
