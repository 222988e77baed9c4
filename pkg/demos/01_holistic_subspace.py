"""
The holistic subspace of two rebits
===================================

Two rebits live in a 10-dimensional joint space, but local measurements
only see 9 of those directions.  This script builds the split into a
product part and a holistic part and applies it to a few states.
"""

# %%
# Dimensions
# ----------
import numpy as np

from gpt_tomo import classify, decompose, resolve_theory
from gpt_tomo.theories import named_states

comp = resolve_theory("two-rebit")
dec = decompose(comp)
print("dimensions:", dec.dims)

# %%
# The holistic direction is spanned by the YY coordinate.
print("holistic state basis:", np.round(dec.h_state.basis, 12))

# %%
# Projecting named states
# -----------------------
# The pair omega+/omega- differs only along YY, so both project to the
# maximally mixed state.
states = named_states("two-rebit")
for name in ("omega-plus", "omega-minus", "phi-plus", "product-00"):
    tl, tnl = dec.tl_part(states[name]), dec.tnl_part(states[name])
    print(f"{name:12s} product part {np.round(tl, 3)}  holistic YY {tnl[-1]:+.2f}")

# %%
# Classification
# --------------
# Phi+ carries both kinds of entanglement: its product part is not even a
# state.  omega+ is entangled only through its holistic part.
for name in ("omega-plus", "phi-plus", "product-00"):
    report = classify(comp, states[name], dec)
    print(f"{name:12s} kinds={sorted(report.kinds)} separable={report.separable}")

rho_tl = dec.tl_part(states["phi-plus"])
print("product part of Phi+ as coordinates:", np.round(rho_tl, 3))
