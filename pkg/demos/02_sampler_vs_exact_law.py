"""The cycle-type sampler against the exact law, and cycle counts against Poisson."""
# %%
import numpy as np

from ewens_charpoly import (ThetaSequence, cycle_type_prob, enumerate_types,
                            sample_cycle_types, trace_distribution_test)

seq = ThetaSequence.ewens(2.0)
N = 200_000
ens = sample_cycle_types(seq, 4, N, seed=1)
keys = [tuple(r) for r in ens.counts(4)]
print(f"{'type':>14s} {'exact':>9s} {'empirical':>9s} {'z':>6s}")
for ct in enumerate_types(4):
    p = cycle_type_prob(seq, ct)
    f = sum(k == tuple(ct.counts) for k in keys) / N
    print(f"{str(ct.lengths()):>14s} {p:9.5f} {f:9.5f} {(f - p) / np.sqrt(p * (1 - p) / N):6.2f}")

# %%
# Small cycles of a large permutation are nearly independent Poissons
for text in ("ewens:1", "scaled:2:2"):
    rep = trace_distribution_test(ThetaSequence.parse(text), 5000, 4, 50_000, seed=3)
    print(text, "joint TV %.4f" % rep.joint_tv, "marginals", np.round(rep.marginal_tv, 4))
