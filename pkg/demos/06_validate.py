# %%
# Cross-check the direct Lyapunov solve against brute-force relaxation of
# dV/dt = A V + V A^T + D, and the closed-form eta- against the spectrum of
# i Omega V~.
from magnonlm.cli import validate
from magnonlm.config import parse_config

cfg = parse_config("delta_over_2pi_hz = 8e6\n")
report = validate(cfg)
print("relative difference:", report["relative_difference"])
for pair, (formula, oracle) in report["eta"].items():
    print(f"{pair:17s} {formula:.12f} {oracle:.12f}")
print("PASS" if report["passed"] else "FAIL")

# %%
# same thing from the shell:
#   magnonlm validate --config my.cfg
