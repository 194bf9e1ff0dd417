"""Phase portraits of p_n and of the limit field, side by side."""
# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ewens_charpoly import ThetaSequence, sample_cycle_types, sample_limit
from ewens_charpoly.portrait import HALF_WIDTH, render

seq = ThetaSequence.ewens(100.0)
ct = sample_cycle_types(seq, 10_000, 1, seed=2024).cycle_type(0)
print("number of cycles:", sum(ct.support().values()))
finite, *_ = render(ct.support(), 400)

lim = sample_limit(seq, HALF_WIDTH, 1e-6, rng_seed=2024)
limit, *_ = render({l: y for l, y in enumerate(lim.y, 1) if y}, 400)

# %%
fig, axes = plt.subplots(1, 2, figsize=(10, 5))
ext = [-HALF_WIDTH, HALF_WIDTH, -HALF_WIDTH, HALF_WIDTH]
for ax, img, title in zip(axes, (finite, limit), ("p_n, n = 10000", "limit field F")):
    ax.imshow(img, extent=ext)
    ax.set_title(title)
fig.tight_layout()
fig.savefig("portraits.png", dpi=120)
print("wrote portraits.png")
