"""p_n(z) from a cycle type, checked against a real permutation matrix."""
# %%
import numpy as np

from ewens_charpoly import (ThetaSequence, eval_charpoly, sample_cycle_type,
                            secular_coeffs, traces)

sample = sample_cycle_type(ThetaSequence.ewens(1.5), 12, rng_seed=7)
ct = sample.cycle_type
print("cycle lengths:", ct.lengths())

perm = ct.permutation()
A = np.zeros((ct.n, ct.n))
A[perm, np.arange(ct.n)] = 1
z = 0.4 - 0.3j
print("product formula:", eval_charpoly(ct, z).value)
print("det(I - zA)    :", np.linalg.det(np.eye(ct.n) - z * A))

# %%
# Traces of powers count fixed points of sigma^k; the secular coefficients follow
print("Tr A^k, k=1..6:", traces(ct, 6))
xi = secular_coeffs(ct, ct.n)
print("coefficients of p_n:", np.real(xi).astype(int))
print("polyval check  :", np.polyval(xi[::-1], z))
