# %%
# How the optical Q changes the light-microwave E_N(delta) curve.
import numpy as np

from magnonlm.sweep import best_row, figure_dataset

data = figure_dataset("fig3")
for name, res in data.items():
    i = best_row(res, "light_microwave")
    print(f"{name:12s} peak {res.rows[i].en['light_microwave']:.4f} "
          f"at delta/2pi = {res.rows[i].values[0] / 1e6:+.1f} MHz")

# %%
# at fixed pump power the photon number scales with Q, so G_ma grows as
# sqrt(Q) while the optical linewidth shrinks as 1/Q.
# For the two low-Q curves the optimum sits on the -20 MHz grid edge.
from magnonlm import PhysicalParams, derive
from dataclasses import replace

for q in (5e6, 1e7, 5e7):
    dp = derive(replace(PhysicalParams(), Q_optical=q))
    print(f"Q = {q:.0e}: G_ma/2pi = {dp.G_ma / 2 / np.pi / 1e6:.2f} MHz, "
          f"kappa_a/2pi = {dp.kappa_a / 2 / np.pi / 1e6:.1f} MHz")

# %%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    for name, res in data.items():
        ax.plot(res.axis(0) / 1e6, np.nan_to_num(res.en("light_microwave")), label=name)
    ax.set_xlabel(r"$\Delta/2\pi$ (MHz)")
    ax.set_ylabel(r"$E_N$ light-microwave")
    ax.legend()
    fig.savefig("quality_factor.png", dpi=120)
except ImportError:
    pass
