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
# # Multiport channel models
#
# A transmitter, an RIS and a receiver are treated as one big multiport
# network. This notebook checks that the general channel (all terminations
# explicit) agrees with the two reduced expressions the rest of the package
# relies on, and shows what the reduced model with direct coupling between
# base-station antennas adds.

# %%
import numpy as np

from bdris import network
from bdris.oracles import make_rng, model_consistency_check

rng = make_rng(0)
layout = network.PortLayout(n_tb=1, n_tu=1, n_i=4, n_rb=1, n_rd=1)

# %% [markdown]
# ## Impedance to scattering
#
# A purely imaginary, symmetric impedance matrix is lossless and reciprocal,
# so its scattering matrix is unitary and symmetric.

# %%
b = rng.standard_normal((6, 6))
s = network.z_to_s(1j * 50 * (b + b.T))
print("unitarity error", np.linalg.norm(s.conj().T @ s - np.eye(6)))
print("symmetry error ", np.linalg.norm(s - s.T))

# %% [markdown]
# ## General channel vs reduced models
#
# Draw weakly coupled impedance blocks, pick a random lossless RIS and compare
# channels. Without transmitter-receiver coupling both reduced models agree
# with the general solve to rounding error.

# %%
zb = network.random_impedance_blocks(layout, rng, self_interference=False)
theta = network.random_unitary(layout.n_i, rng)
h = network.general_channel(network.z_to_s(zb.full()), network.TerminationSpec.matched(layout, theta), layout)
h2 = network.simplified_channel_result2(*network.channel_blocks(zb), theta)
print(np.abs(h - h2).max())

# %%
for n_i in (2, 4, 8):
    rep = model_consistency_check(network.PortLayout(1, 1, n_i, 1, 1), seed=n_i, trials=100)
    print(n_i, f"{rep.best_value:.2e}", rep.best["skipped"])

# %% [markdown]
# With the base station's transmit and receive antennas coupled, only the
# model that keeps that coupling tracks the general channel. The simpler
# mutual-impedance model misses it by an amount that grows with the coupling.

# %%
for coupling in (1e-3, 1e-2, 1e-1):
    rep = model_consistency_check(layout, seed=1, trials=50, self_interference=True, coupling=coupling)
    print(f"{coupling:.0e}  with coupling {rep.best['result1_rel']:.1e}   without {rep.best['result2_rel']:.1e}")
