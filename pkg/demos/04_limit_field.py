"""The Poisson limit field: mean, covariance and truncation."""
# %%
import numpy as np

from ewens_charpoly import (ThetaSequence, cov_f, covariance_test, limit_mean_test,
                            sample_limit, truncation_depth)

seq = ThetaSequence.ewens(1.0)
for delta, eps in ((0.5, 1e-8), (0.9, 1e-8), (0.98, 1e-6)):
    print(f"delta={delta}, eps={eps:g}: K = {truncation_depth(seq, delta, eps)}")

s = sample_limit(seq, 0.5, 1e-8, rng_seed=4)
print("one draw, nonzero Y_l:", {l: y for l, y in enumerate(s.y, 1) if y})

# %%
for theta in (1.0, 2.0):
    rep = limit_mean_test(ThetaSequence.ewens(theta), 0.5, 200_000, seed=1)
    print(f"E F(0.5), theta={theta}: {rep.estimate.real:.4f} +- {rep.std_error:.4f}"
          f"  target {rep.target.real:.4f}")

# %%
for z, w in ((0.5, 0.5), (0.4, 0.2), (0.3 + 0.3j, 0.5j)):
    rep = covariance_test(seq, z, w, 200_000, seed=2)
    print(f"Cov(f({z}), f({w})): MC {rep.estimate:.4f}  closed form {cov_f(seq, z, w):.4f}"
          f"  ({rep.z_sigma:.2f} se)")
