"""Weight families, their generating functions and the normalizing constants h_n."""
# %%
import numpy as np
from scipy.special import binom

from ewens_charpoly import ThetaSequence, g_eval, big_g_eval, h_coeffs

fams = [ThetaSequence.ewens(2.0), ThetaSequence.scaled(2.0, 2.0),
        ThetaSequence.parse("custom:3,0.5|1.5:1.25")]
for seq in fams:
    print(f"{str(seq):28s} r={seq.r:<5} gamma={seq.gamma:<4} K={seq.K_const:+.4f}",
          "theta_1..5 =", np.round(seq.thetas(5), 4))

# %%
# g against a plain partial sum of theta_k z^k / k
seq, z = fams[1], 1.0 + 0.5j
k = np.arange(1, 400)
print("g closed form :", g_eval(seq, z))
print("g partial sum :", np.sum(seq.thetas(399) / k * z**k))
print("G(0.5) for Ewens(2):", big_g_eval(fams[0], 0.5), "(exactly 4)")

# %%
# For Ewens(theta), h_n is a rising factorial over n!
n = np.arange(0, 201)
for theta in (0.5, 1.0, 2.0):
    h = h_coeffs(ThetaSequence.ewens(theta), 200).h
    print(f"theta={theta}: max rel err vs binomial = "
          f"{np.max(np.abs(h / binom(theta + n - 1, n) - 1)):.1e}")
