# %%
# Sweep g_mb over 1, 2, 4, 8 x 2pi x 3.4 MHz. The light-magnon squeezing gets
# swapped into the microwave through the beam splitter; too much g_mb and the
# light-microwave peak falls again.
import numpy as np

from magnonlm.sweep import best_row, figure_dataset

data = figure_dataset("fig4")

# %%
for name, res in data.items():
    lm = res.rows[best_row(res, "light_microwave")].en["light_microwave"]
    la = np.nanmax(res.en("light_magnon"))
    mm = np.nanmax(res.en("microwave_magnon"))
    print(f"{name:13s} light-microwave {lm:.4f}  light-magnon {la:.4f}  "
          f"microwave-magnon {mm:.1f}  unstable points {int((~res.stable()).sum())}")

# %%
# the weakest coupling has a hole around resonance where nothing is stable
res = data["fig4_gmb_1x"]
d = res.axis(0)[~res.stable()] / 1e6
print(f"unstable for delta/2pi in [{d.min():.1f}, {d.max():.1f}] MHz")
