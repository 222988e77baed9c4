"""
What the holistic part cannot do
================================

A state whose product part is separable gives local statistics that a
local model reproduces, whatever its holistic part.  This script checks
Bell tables, steering assemblages and teleportation for omega+.
"""

# %%
import numpy as np

from gpt_tomo import resolve_theory
from gpt_tomo.protocols import (
    bell_table,
    binary_measurement,
    default_measurements,
    lhs_check,
    lhv_membership,
    steering_assemblage,
    teleportage_constancy,
)
from gpt_tomo.theories import named_states, rebit_state

comp = resolve_theory("two-rebit")
states = named_states("two-rebit")
chsh_a = [binary_measurement(0.0), binary_measurement(np.pi / 2)]
chsh_b = [binary_measurement(np.pi / 4), binary_measurement(-np.pi / 4)]

# %%
# Bell tables
# -----------
# Phi+ violates CHSH; omega+ yields uniform statistics.
for name in ("phi-plus", "omega-plus"):
    table = bell_table(states[name], chsh_a, chsh_b, comp)
    print(f"{name:10s} local model exists: {lhv_membership(table).feasible}")

# %%
# Steering
# --------
# The separable decomposition of the product part is itself the local
# hidden state model.
omega = states["omega-plus"]
meas = default_measurements(comp.sys_a, seed=1)
verdict = lhs_check(steering_assemblage(omega, meas, comp), omega, comp)
print("LHS model residual:", verdict.residual)

# %%
# Teleportation
# -------------
# Bob's vector after any Bell-effect outcome is fixed by the product part,
# so it cannot depend on the input beyond a weight.
inputs = np.array([rebit_state(t) for t in np.linspace(0, 2 * np.pi, 10, endpoint=False)])
tele = teleportage_constancy(omega, comp.measurements["bell"], inputs, comp)
print("holistic contribution:", tele.holistic_norm, "local model matches:", tele.passed)
