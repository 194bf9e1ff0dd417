"""How fast p_n(z) approaches the limit field F(z) in law, and E|p_n|^2 in n."""
# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ewens_charpoly import (ThetaSequence, charpoly_vs_limit_test, second_moment_exact,
                            second_moment_limit)

seq, z = ThetaSequence.ewens(2.0), 0.3 + 0.4j
sizes = [2, 5, 10, 20, 50, 100, 500, 2000]
ks = [charpoly_vs_limit_test(seq, n, z, 10_000, seed=5).ks_log_abs for n in sizes]
for n, d in zip(sizes, ks):
    print(f"n={n:5d}  KS(log|p_n|, log|F|) = {d:.4f}")

# %%
ns = np.arange(1, 301)
m2 = [second_moment_exact(seq, 0.8, n) for n in ns]
fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
a.semilogx(sizes, ks, "o-")
a.axhline(1.36 * np.sqrt(2 / 10_000), ls=":", c="k")
a.set_xlabel("n"); a.set_ylabel("KS distance")
b.plot(ns, m2)
b.axhline(second_moment_limit(seq, 0.8), ls="--", c="k")
b.set_xlabel("n"); b.set_ylabel("E|p_n(0.8)|^2")
fig.tight_layout()
fig.savefig("convergence.png", dpi=120)
print("wrote convergence.png")
