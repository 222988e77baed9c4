"""
Deciding separability of two rebits
===================================

A two-rebit state is separable exactly when it has no YY part and its
complex embedding has a positive partial transpose.  This script compares
that test with explicit product decompositions, and shows the complex
view of the product projector.
"""

# %%
import numpy as np

from gpt_tomo import decompose, resolve_theory
from gpt_tomo.entanglement import concurrence_certificate
from gpt_tomo.theories import iota_coords, iota_embed, ppt_separable_2x2, swirl_operator
from gpt_tomo.theories.sampling import random_real_state, yy_range

comp = resolve_theory("two-rebit")
rng = np.random.default_rng(7)

# %%
# Predicate against certificates
# ------------------------------
agree = 0
for _ in range(200):
    omega = random_real_state(rng, rank=int(rng.integers(1, 5)))
    if rng.random() < 0.5:
        low, high = yy_range(omega)
        omega = omega.copy()
        omega[-1] += np.clip(-omega[-1], low, high)
    predicate = abs(omega[-1]) <= 1e-9 and ppt_separable_2x2(iota_embed(omega))
    agree += predicate == (concurrence_certificate(comp, omega) is not None)
print("agreement on 200 states:", agree)

# %%
# A certificate
# -------------
# Mixing with the maximally mixed state leaves room to remove the YY part.
omega = 0.5 * random_real_state(rng) + 0.5 * np.eye(10)[0]
omega[-1] = 0.0
cert = concurrence_certificate(comp, omega)
print("weights", np.round(cert.weights, 4))
print("reconstruction error", np.abs(cert.vector(comp) - omega).max())

# %%
# The product projector seen from two qubits
# ------------------------------------------
# Averaging over local complex conjugations removes every Pauli string with
# a Y, which is exactly what the product projector does after embedding.
dec = decompose(comp)
omega = random_real_state(rng)
print(np.abs(iota_coords(dec.tl_part(omega)) - swirl_operator() @ iota_coords(omega)).max())
