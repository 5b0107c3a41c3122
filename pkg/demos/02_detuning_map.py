# %%
# Light-microwave E_N over the (delta_a, delta_b) plane.
# The full 201x201 preset takes a few seconds per 10k points, so this uses a
# coarser grid; pass --full for the preset.
import sys
from dataclasses import replace

import numpy as np

from magnonlm import PhysicalParams
from magnonlm.sweep import Axis, SweepSpec, best_row, figure_dataset, run_sweep

if "--full" in sys.argv:
    res = figure_dataset("fig2a")["fig2a"]
    n = 201
else:
    n = 61
    base = replace(PhysicalParams(), Q_optical=2e7)
    axes = (Axis("delta_a", -20e6, 20e6, n), Axis("delta_b", -20e6, 20e6, n))
    res = run_sweep(SweepSpec(base, axes))

# %%
en = res.en("light_microwave").reshape(n, n)  # rows: delta_a, cols: delta_b
print("stable fraction:", res.stable().mean())
i = best_row(res, "light_microwave")
da, db = res.rows[i].values
print(f"max E_N = {res.rows[i].en['light_microwave']:.4f} at delta_a/2pi = {da/1e6:.1f} MHz, "
      f"delta_b/2pi = {db/1e6:.1f} MHz")

# opposite signs win; how close to the anti-diagonal is it?
print("||da| - |db|| / |da| =", abs(abs(da) - abs(db)) / abs(da))

# %%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    d = np.linspace(-20, 20, n)
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.pcolormesh(d, d, en.T, shading="auto")
    ax.plot(d, -d, "w--", lw=0.8)
    ax.set_xlabel(r"$\Delta_a/2\pi$ (MHz)")
    ax.set_ylabel(r"$\Delta_b/2\pi$ (MHz)")
    fig.colorbar(im, label=r"$E_N$")
    fig.savefig("detuning_map.png", dpi=120, bbox_inches="tight")
    print("saved detuning_map.png")
