# %%
# One parameter point, start to finish: derived rates, drift matrix,
# stability, covariance, then the three log-negativities.
import math
from dataclasses import replace

import numpy as np

from magnonlm import PhysicalParams, derive
from magnonlm.dynamics import BASIS, build_matrices, check_stability, steady_state
from magnonlm.entanglement import all_pairs

MHZ = 2 * math.pi * 1e6

# %%
p = replace(PhysicalParams(), delta_a=8 * MHZ, delta_b=-8 * MHZ)
dp = derive(p)
print(f"g_ma/2pi    = {dp.g_ma / (2 * math.pi):.2f} Hz")
print(f"photons     = {dp.n_pump:.3e}")
print(f"G_ma/2pi    = {dp.G_ma / MHZ:.3f} MHz")
print(f"kappa_a/2pi = {dp.kappa_a / MHZ:.3f} MHz")
print(f"N_m, N_b    = {dp.N_m:.2e}, {dp.N_b:.2e}")

# %%
# everything inside A is in units of 2pi x 1 MHz
m = build_matrices(dp, p)
np.set_printoptions(precision=3, suppress=True, linewidth=100)
print("basis:", BASIS)
print(m.a)

stable, max_re = check_stability(m)
print("stable:", stable, " slowest decay rate:", -max_re)

# %%
ss = steady_state(m)
print(ss.v)
print("relative Lyapunov residual:", ss.residual)

for pair, r in all_pairs(ss.v).items():
    print(f"{pair:17s} E_N = {r.e_n:.4f}   eta- = {r.eta_minus:.4f}")
