# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Full-duplex rates
#
# Both users transmit at 500 mW into -80 dBm noise. The downlink user also
# hears the uplink user through the RIS, and the base station hears its own
# signal looped back.

# %%
import dataclasses

import matplotlib.pyplot as plt
import numpy as np

from bdris import ScenarioConfig, build_channels, rates, run_sweep
from bdris.optimizers import nonreciprocal_design
from bdris.scenario import PRESETS

cfg = ScenarioConfig()

# %%
res = {name: run_sweep(cfg, name) for name in ("fig9", "fig10a", "fig11a")}
fig, axes = plt.subplots(1, 3, figsize=(13, 3.5), constrained_layout=True)
for ax, (name, sweep) in zip(axes, res.items()):
    for r in sweep:
        ax.plot(np.degrees(r.column("phi_itu")), r.column("r_u"), label=f"{r.scheme} UL")
        ax.plot(np.degrees(r.column("phi_itu")), r.column("r_d"), label=f"{r.scheme} DL", ls=":")
    ax.set_title(name)
    ax.set_xlabel("uplink user angle [deg]")
axes[0].set_ylabel("rate [bit/s/Hz]")
axes[0].legend(fontsize=7)

# %% [markdown]
# When the uplink user is behind the base station, the downlink user receives
# the uplink signal through the same beam as its own. The uplink path is six
# times shorter, so the interference is 36 times stronger than the signal.

# %%
c = dataclasses.replace(PRESETS["fig9"].apply(cfg), phi_itu=np.pi / 6)
ch = build_channels(c)
lm = rates(ch, nonreciprocal_design(ch, False).theta, c, False)
print("interference/signal", 1 / lm.sir_d, "downlink rate", lm.r_d)
