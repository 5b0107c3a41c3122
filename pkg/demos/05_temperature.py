# %%
# Delta-optimized light-microwave E_N against temperature.
# A coarse 20 x 161 grid keeps this under a minute; the preset is 100 x 401.
from dataclasses import replace

import numpy as np

from magnonlm import PhysicalParams
from magnonlm.params import G_BASE
from magnonlm.sweep import Axis, SweepSpec, optimized_sweep

outer = Axis("temperature", 10e-3, 2.0, 20, scale="log")
curves = {}
for k in (1, 2, 4, 8):
    base = replace(PhysicalParams(), g_mb=k * G_BASE)
    inner = SweepSpec(base, (Axis("delta_a", -20e6, 20e6, 161),), link=True)
    curves[k] = optimized_sweep(outer, inner, "light_microwave")

# %%
temps = outer.values
print("T (K)   " + "  ".join(f"{k}x g_base" for k in curves))
for i, t in enumerate(temps):
    print(f"{t:6.3f}  " + "  ".join(f"{np.nan_to_num(c.en('light_microwave'))[i]:10.4f}" for c in curves.values()))

# %%
# larger g_mb keeps the entanglement alive to higher T
for k, c in curves.items():
    en = np.nan_to_num(c.en("light_microwave"))
    below = np.flatnonzero(en < 0.1 * en[0])
    print(f"{k}x: drops below 10% of its 10 mK value at",
          f"{temps[below[0]]:.3f} K" if below.size else "> 2 K")
